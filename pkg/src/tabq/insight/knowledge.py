"""Lexical retrieval over a newline-delimited snippet store.

Scoring is term-frequency overlap with inverse-document weighting; the
vector-embedding backend named in docs/api.md implements the same
retrieve() contract and can be swapped in without spec change.
"""

from __future__ import annotations

import json
import math
import re
from dataclasses import dataclass, field
from pathlib import Path

_TOKEN_RE = re.compile(r"[a-z0-9]+")


def _tokenize(text: str) -> list[str]:
    return _TOKEN_RE.findall(text.casefold())


@dataclass
class KnowledgeSnippet:
    snippet_id: str
    text: str
    source: str = ""

    def to_dict(self) -> dict:
        return {"snippet_id": self.snippet_id, "text": self.text, "source": self.source}

    @classmethod
    def from_dict(cls, doc: dict) -> "KnowledgeSnippet":
        return cls(doc["snippet_id"], doc["text"], doc.get("source", ""))


@dataclass
class RetrievalResult:
    snippets: list[KnowledgeSnippet]
    store_empty: bool = False


@dataclass
class KnowledgeStore:
    snippets: list[KnowledgeSnippet] = field(default_factory=list)

    def __post_init__(self):
        self._rebuild_index()

    def _rebuild_index(self) -> None:
        self._tokens = [_tokenize(s.text) for s in self.snippets]
        self._df: dict[str, int] = {}
        for tokens in self._tokens:
            for term in set(tokens):
                self._df[term] = self._df.get(term, 0) + 1

    def add(self, snippet: KnowledgeSnippet) -> None:
        if not snippet.text.strip():
            raise ValueError("snippet text must be non-empty")
        self.snippets.append(snippet)
        self._rebuild_index()

    @classmethod
    def load(cls, path: str | Path) -> "KnowledgeStore":
        snippets = []
        path = Path(path)
        if path.is_file():
            for line in path.read_text(encoding="utf-8").splitlines():
                if line.strip():
                    snippets.append(KnowledgeSnippet.from_dict(json.loads(line)))
        return cls(snippets)

    def save(self, path: str | Path) -> None:
        lines = [json.dumps(s.to_dict(), sort_keys=True) for s in self.snippets]
        Path(path).write_text("\n".join(lines) + ("\n" if lines else ""), encoding="utf-8")

    def retrieve(self, query: str, k: int = 3) -> RetrievalResult:
        """Top-k snippets by tf-idf overlap; deterministic ties by id."""
        if not self.snippets:
            return RetrievalResult([], store_empty=True)
        n = len(self.snippets)
        query_terms = set(_tokenize(query))
        scored: list[tuple[float, str, KnowledgeSnippet]] = []
        for snippet, tokens in zip(self.snippets, self._tokens):
            counts: dict[str, int] = {}
            for t in tokens:
                counts[t] = counts.get(t, 0) + 1
            total = 0.0
            for term in query_terms:
                tf = counts.get(term, 0)
                if tf:
                    idf = math.log((n + 1) / (self._df.get(term, 0) + 1)) + 1.0
                    total += tf * idf
            if total > 0.0:
                scored.append((total, snippet.snippet_id, snippet))
        scored.sort(key=lambda item: (-item[0], item[1]))
        return RetrievalResult([s for _, _, s in scored[:k]], store_empty=False)

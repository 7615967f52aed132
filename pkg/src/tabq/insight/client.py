"""Pluggable text-generation clients.

The bundled TemplateClient is deterministic and keeps every language
surface golden-testable; the remote client is opt-in, marked
non-deterministic, and excluded from golden tests.
"""

from __future__ import annotations

import os
from typing import Protocol, runtime_checkable

import httpx

# Environment variables configuring the remote client.
ENV_BASE_URL = "TABQ_MODEL_BASE_URL"
ENV_API_KEY = "TABQ_MODEL_API_KEY"


@runtime_checkable
class ModelClient(Protocol):
    name: str
    deterministic: bool

    def complete(self, prompt: str, params: dict | None = None) -> str:
        ...


class TemplateClient:
    """Identity paraphraser: returns the payload of the prompt unchanged.

    Prompts carry their renderable payload after a ``TEXT:`` marker; with no
    marker the whole prompt is echoed. Deterministic by construction.
    """

    name = "template"
    deterministic = True

    MARKER = "TEXT:\n"

    def complete(self, prompt: str, params: dict | None = None) -> str:
        if self.MARKER in prompt:
            return prompt.split(self.MARKER, 1)[1]
        return prompt


class RemoteClient:
    """HTTP client for an OpenAI-style completion endpoint.

    Configured via TABQ_MODEL_BASE_URL / TABQ_MODEL_API_KEY; complete() is a
    time-limited request (default 30 s) so callers can treat it as
    cancellable.
    """

    name = "remote"
    deterministic = False

    def __init__(
        self,
        base_url: str | None = None,
        api_key: str | None = None,
        timeout: float = 30.0,
    ):
        self.base_url = (base_url or os.environ.get(ENV_BASE_URL, "")).rstrip("/")
        self.api_key = api_key or os.environ.get(ENV_API_KEY, "")
        self.timeout = timeout
        if not self.base_url:
            raise ValueError(f"remote client needs {ENV_BASE_URL} or an explicit base_url")

    def complete(self, prompt: str, params: dict | None = None) -> str:
        payload = {"prompt": prompt}
        payload.update(params or {})
        headers = {}
        if self.api_key:
            headers["Authorization"] = f"Bearer {self.api_key}"
        response = httpx.post(
            f"{self.base_url}/complete", json=payload, headers=headers, timeout=self.timeout
        )
        response.raise_for_status()
        return response.json()["text"]

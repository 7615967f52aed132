"""Service configuration: one JSON file, environment overrides."""

from __future__ import annotations

import json
import os
from dataclasses import dataclass
from pathlib import Path

ENV_PORT = "TABQ_PORT"
ENV_DATA_DIR = "TABQ_DATA_DIR"
ENV_MODEL_BASE_URL = "TABQ_MODEL_BASE_URL"
ENV_STATIC_DIR = "TABQ_STATIC_DIR"


@dataclass
class ServiceConfig:
    port: int = 8321
    data_dir: str = "./tabq-data"
    model_base_url: str = ""
    static_dir: str = ""
    seed: int = 7

    @classmethod
    def load(cls, path: str | Path | None = None) -> "ServiceConfig":
        doc: dict = {}
        if path:
            doc = json.loads(Path(path).read_text(encoding="utf-8"))
        config = cls(
            port=int(doc.get("port", cls.port)),
            data_dir=str(doc.get("data_dir", cls.data_dir)),
            model_base_url=str(doc.get("model_base_url", "")),
            static_dir=str(doc.get("static_dir", "")),
            seed=int(doc.get("seed", cls.seed)),
        )
        if os.environ.get(ENV_PORT):
            config.port = int(os.environ[ENV_PORT])
        if os.environ.get(ENV_DATA_DIR):
            config.data_dir = os.environ[ENV_DATA_DIR]
        if os.environ.get(ENV_MODEL_BASE_URL):
            config.model_base_url = os.environ[ENV_MODEL_BASE_URL]
        if os.environ.get(ENV_STATIC_DIR):
            config.static_dir = os.environ[ENV_STATIC_DIR]
        return config

"""Dump the service's OpenAPI schema to docs/openapi.json."""

from __future__ import annotations

import json
import tempfile
from pathlib import Path

from tabq.service import ServiceConfig, create_app


def main() -> None:
    with tempfile.TemporaryDirectory() as tmp:
        app = create_app(ServiceConfig(data_dir=tmp))
        schema = app.openapi()
    out = Path(__file__).resolve().parent.parent / "docs" / "openapi.json"
    out.write_text(json.dumps(schema, indent=2, sort_keys=True) + "\n", encoding="utf-8")
    print(f"wrote {out}")


if __name__ == "__main__":
    main()

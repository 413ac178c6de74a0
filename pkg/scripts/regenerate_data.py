#!/usr/bin/env python3
"""Rebuild the bundled sample document from the scenario builder.

The JSON under src/isd/data is generated, not hand-edited; run this
after changing the scenario and commit the result.
"""

from __future__ import annotations

import pathlib

from isd.document import save_document
from isd.scenario import build_news_pipeline

OUT = pathlib.Path(__file__).resolve().parent.parent / "src" / "isd" / "data" / "news_pipeline.json"


def main() -> None:
    OUT.parent.mkdir(parents=True, exist_ok=True)
    save_document(build_news_pipeline(), str(OUT))
    print(f"wrote {OUT}")


if __name__ == "__main__":
    main()

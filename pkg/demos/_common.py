"""Shared helpers for the demo scripts: where plots go."""

from pathlib import Path

OUT = Path(__file__).resolve().parent / "out"


def out_path(name: str) -> Path:
    OUT.mkdir(exist_ok=True)
    return OUT / name

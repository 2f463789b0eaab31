"""Access to the bundled example graphs."""

from __future__ import annotations

from importlib import resources

from .gogfile import parse
from .graphs import GraphOfGroups


def corpus_names() -> list[str]:
    root = resources.files(__package__) / "corpus"
    return sorted(p.name for p in root.iterdir() if p.name.endswith(".gog"))


def corpus_text(name: str) -> str:
    if not name.endswith(".gog"):
        name += ".gog"
    return (resources.files(__package__) / "corpus" / name).read_text()


def load(name: str) -> GraphOfGroups:
    return parse(corpus_text(name))

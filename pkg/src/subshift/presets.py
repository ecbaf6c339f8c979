"""Built-in presentations used by the tests, the suites and the CLI."""

from __future__ import annotations

from .shift import Presentation, load_presentation

PRESETS = {
    "golden-mean": {"kind": "sft", "name": "golden-mean", "alphabet": ["0", "1"], "forbidden": ["11"]},
    "full2": {"kind": "sft", "name": "full2", "alphabet": ["0", "1"], "forbidden": []},
    "singleton": {"kind": "sft", "name": "singleton", "alphabet": ["a"], "forbidden": []},
    "two-headed-ray": {
        "kind": "graph-ray",
        "name": "two-headed-ray",
        "sporadic": ["a", "b"],
        "edges": [["a", "r:0"], ["b", "r:0"]],
        "rays": ["r"],
    },
}

_cache: dict = {}


def preset(name: str) -> Presentation:
    """The named presentation (one shared instance per name)."""
    if name not in PRESETS:
        raise KeyError(f"unknown preset {name!r}; choose from {', '.join(PRESETS)}")
    if name not in _cache:
        _cache[name] = load_presentation(PRESETS[name])
    return _cache[name]

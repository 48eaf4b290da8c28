"""The built-in test corpus of small complexes."""
from __future__ import annotations

from .simplicial import SimplicialComplex, build_complex

_MAXIMAL = {
    "point": [["1"]],
    "two-points": [["1"], ["2"]],
    "edge": [["1", "2"]],
    "triangle": [["1", "2", "3"]],
    "triangle-boundary": [["1", "2"], ["1", "3"], ["2", "3"]],
    "tetrahedron-boundary": [["1", "2", "3"], ["1", "2", "4"], ["1", "3", "4"], ["2", "3", "4"]],
    "two-triangles": [["1", "2", "3"], ["2", "3", "4"]],
    "wedge": [["1", "2"], ["1", "3"], ["2", "3"], ["3", "4"], ["3", "5"], ["4", "5"]],
}

# Simplicial Betti numbers in degrees 0, 1, 2, computed by hand.
EXPECTED_BETTI = {
    "point": [1, 0, 0],
    "two-points": [2, 0, 0],
    "edge": [1, 0, 0],
    "triangle": [1, 0, 0],
    "triangle-boundary": [1, 1, 0],
    "tetrahedron-boundary": [1, 0, 1],
    "two-triangles": [1, 0, 0],
    "wedge": [1, 2, 0],
}

NAMES = tuple(_MAXIMAL)


def builtin(name: str) -> SimplicialComplex:
    try:
        maximal = _MAXIMAL[name]
    except KeyError:
        raise KeyError(f"unknown built-in complex {name!r}; choose from {', '.join(NAMES)}") from None
    vertices = sorted({v for s in maximal for v in s}, key=int)
    return build_complex(maximal, vertices, name)


def corpus() -> list[SimplicialComplex]:
    return [builtin(name) for name in NAMES]

"""Finite simplicial complexes, vertex tuples and stars."""
from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence


class ComplexError(ValueError):
    pass


def _closure(simplices: Iterable[frozenset]) -> frozenset:
    out = set()
    for s in simplices:
        s = tuple(s)
        for k in range(1, len(s) + 1):
            out.update(frozenset(c) for c in itertools.combinations(s, k))
    return frozenset(out)


@dataclass(frozen=True)
class SimplicialComplex:
    """A downward closed family of non-empty vertex sets.

    ``vertices`` fixes the total order used for every sign and every
    increasing tuple.
    """

    vertices: tuple[str, ...]
    simplices: frozenset
    name: str = ""
    _index: dict = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        if len(set(self.vertices)) != len(self.vertices):
            raise ComplexError(f"duplicate vertex labels in {self.vertices}")
        object.__setattr__(self, "_index", {v: i for i, v in enumerate(self.vertices)})
        for s in self.simplices:
            if not s:
                raise ComplexError("empty simplex")
            for v in s:
                if v not in self._index:
                    raise ComplexError(f"vertex {v!r} is not declared")
            if len(s) > 1:
                for v in s:
                    if s - {v} not in self.simplices:
                        raise ComplexError(f"not downward closed at {sorted(s)}")
        for v in self.vertices:
            if frozenset([v]) not in self.simplices:
                raise ComplexError(f"vertex {v!r} is not a simplex")

    def index(self, v: str) -> int:
        return self._index[v]

    def sort(self, vs: Iterable[str]) -> tuple[str, ...]:
        return tuple(sorted(vs, key=self._index.__getitem__))

    def __len__(self):
        return len(self.simplices)

    def __contains__(self, s):
        return frozenset(s) in self.simplices

    @property
    def dimension(self) -> int:
        return max((len(s) - 1 for s in self.simplices), default=-1)

    def maximal_simplices(self) -> list[tuple[str, ...]]:
        """Maximal simplices as increasing tuples, in a fixed order."""
        out = [s for s in self.simplices if not any(s < t for t in self.simplices)]
        return sorted((self.sort(s) for s in out), key=self._tuple_key)

    def simplices_of_dim(self, m: int) -> list[tuple[str, ...]]:
        out = [self.sort(s) for s in self.simplices if len(s) == m + 1]
        return sorted(out, key=self._tuple_key)

    def _tuple_key(self, t):
        return (len(t), [self._index[v] for v in t])

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "vertices": list(self.vertices),
            "maximal_simplices": [list(s) for s in self.maximal_simplices()],
        }


def build_complex(maximal: Sequence[Sequence], vertices: Sequence | None = None, name: str = "") -> SimplicialComplex:
    """Downward closure of ``maximal``.

    Vertices default to first-appearance order in ``maximal``; an explicitly
    listed vertex that lies in no simplex becomes an isolated point.
    """
    maximal = [[str(v) for v in s] for s in maximal]
    for s in maximal:
        if not s:
            raise ComplexError("empty subset among maximal simplices")
    if vertices is None:
        vertices = list(dict.fromkeys(v for s in maximal for v in s))
    vertices = tuple(str(v) for v in vertices)
    if len(set(vertices)) != len(vertices):
        raise ComplexError(f"duplicate vertex labels in {vertices}")
    known = set(vertices)
    for s in maximal:
        if len(set(s)) != len(s):
            raise ComplexError(f"repeated vertex in simplex {s}")
        for v in s:
            if v not in known:
                raise ComplexError(f"simplex {s} uses undeclared vertex {v!r}")
    simplices = _closure(frozenset(s) for s in maximal) | {frozenset([v]) for v in vertices}
    return SimplicialComplex(vertices, frozenset(simplices), name)


def parse_complex(data: dict | str) -> SimplicialComplex:
    if isinstance(data, str):
        try:
            data = json.loads(data)
        except json.JSONDecodeError as exc:
            raise ComplexError(f"line {exc.lineno} column {exc.colno}: {exc.msg}") from None
    if not isinstance(data, dict):
        raise ComplexError("expected a JSON object")
    try:
        return build_complex(data["maximal_simplices"], data["vertices"], data.get("name", ""))
    except KeyError as exc:
        raise ComplexError(f"missing field {exc.args[0]!r}") from None


@dataclass(frozen=True)
class Subcomplex:
    """A downward closed subfamily of a parent complex's simplices."""

    parent: SimplicialComplex
    simplices: frozenset

    @property
    def vertices(self) -> tuple[str, ...]:
        present = {v for s in self.simplices for v in s}
        return tuple(v for v in self.parent.vertices if v in present)

    def is_empty(self) -> bool:
        return not self.simplices

    def maximal_simplices(self) -> list[tuple[str, ...]]:
        out = [s for s in self.simplices if not any(s < t for t in self.simplices)]
        return sorted((self.parent.sort(s) for s in out), key=self.parent._tuple_key)

    def __contains__(self, s):
        return frozenset(s) in self.simplices

    def __le__(self, other: "Subcomplex") -> bool:
        return self.simplices <= other.simplices

    def as_complex(self) -> SimplicialComplex:
        return SimplicialComplex(self.vertices, self.simplices)


def whole(X: SimplicialComplex) -> Subcomplex:
    return Subcomplex(X, X.simplices)


def subcomplex(X: SimplicialComplex, maximal: Iterable[Iterable[str]]) -> Subcomplex:
    simplices = _closure(frozenset(s) for s in maximal)
    if not simplices <= X.simplices:
        raise ComplexError("not a subcomplex")
    return Subcomplex(X, simplices)


def _star(parent: SimplicialComplex, simplices: frozenset, u: Sequence[str]) -> Subcomplex:
    span = frozenset(u)
    if not span:
        return Subcomplex(parent, simplices)
    if span not in simplices:
        return Subcomplex(parent, frozenset())
    return Subcomplex(parent, _closure(s for s in simplices if span <= s))


def star(X: SimplicialComplex, u: Sequence[str]) -> Subcomplex:
    """Smallest subcomplex containing every simplex that contains all of ``u``."""
    for v in u:
        if v not in X._index:
            raise ComplexError(f"{v!r} is not a vertex")
    return _star(X, X.simplices, u)


def star_in(Y: Subcomplex, u: Sequence[str]) -> Subcomplex:
    return _star(Y.parent, Y.simplices, u)


def minimal_nonfaces(X: SimplicialComplex | Subcomplex) -> list[tuple[str, ...]]:
    """Inclusion-minimal vertex sets that are not simplices, over the complex's own vertices."""
    if isinstance(X, Subcomplex):
        order, verts, faces = X.parent, X.vertices, X.simplices
    else:
        order, verts, faces = X, X.vertices, X.simplices
    out = []
    for k in range(2, len(verts) + 1):
        found = False
        for c in itertools.combinations(verts, k):
            s = frozenset(c)
            if s in faces:
                found = True
                continue
            if all(s - {v} in faces for v in s):
                out.append(order.sort(s))
        if not found:
            # larger minimal non-faces would need k-element faces
            break
    return out


def increasing_tuples(X: SimplicialComplex, p: int) -> list[tuple[str, ...]]:
    if p < -1:
        return []
    return list(itertools.combinations(X.vertices, p + 1))


def sort_with_sign(X: SimplicialComplex, u: Sequence[str]) -> tuple[int, tuple[str, ...]]:
    """Sort ``u`` into vertex order; sign 0 when an entry repeats."""
    idx = [X.index(v) for v in u]
    if len(set(idx)) != len(idx):
        return 0, ()
    sign = 1
    for i in range(len(idx)):
        for j in range(i + 1, len(idx)):
            if idx[i] > idx[j]:
                sign = -sign
    return sign, X.sort(u)


def face(u: Sequence[str], i: int) -> tuple[str, ...]:
    return tuple(u[:i]) + tuple(u[i + 1:])


def cone(v: str, u: Sequence[str]) -> tuple[str, ...]:
    return (v,) + tuple(u)


def _rank(rows: list[list[int]]) -> int:
    rows = [[Fraction(x) for x in r] for r in rows if any(r)]
    rank = 0
    ncols = len(rows[0]) if rows else 0
    for c in range(ncols):
        piv = next((i for i in range(rank, len(rows)) if rows[i][c]), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        pr = rows[rank]
        for i in range(rank + 1, len(rows)):
            f = rows[i][c] / pr[c]
            if f:
                rows[i] = [a - f * b for a, b in zip(rows[i], pr)]
        rank += 1
    return rank


def simplicial_betti(X: SimplicialComplex, q_max: int) -> list[int]:
    """Betti numbers of ordered simplicial cochains over Q, degrees 0..q_max.

    Kept deliberately independent of the rest of the engine: plain Fraction
    Gaussian elimination on dense coboundary matrices.
    """
    cells = [X.simplices_of_dim(q) for q in range(q_max + 2)]
    ranks = []
    for q in range(q_max + 1):
        src, tgt = cells[q], cells[q + 1]
        pos = {s: i for i, s in enumerate(src)}
        rows = []
        for t in tgt:
            row = [0] * len(src)
            for i in range(len(t)):
                row[pos[face(t, i)]] += (-1) ** i
            rows.append(row)
        ranks.append(_rank(rows))
    return [len(cells[q]) - ranks[q] - (ranks[q - 1] if q else 0) for q in range(q_max + 1)]

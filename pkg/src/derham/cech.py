"""Cech double complexes over stars and their contracting homotopies.

Families are stored on strictly increasing vertex tuples only; an element is
a dict ``tuple -> form`` holding the non-zero components.  Forms are
:class:`PolyForm` normal forms on the Omega side and compatible families on
the Sullivan side.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable

from .exactla import RationalMatrix, rank_of_columns
from .kaehler import extend_form, omega_presentation, omega_truncated, partition_of_unity
from .polyalg import PolyForm
from .simplicial import SimplicialComplex, Subcomplex, face, increasing_tuples, star
from .sullivan import (a_truncated, extend_family, family_add, family_d, family_mul, family_restrict,
                       family_scale, family_zero, function_on, is_zero_family)


class OmegaSide:
    name = "omega"

    def __init__(self, X: SimplicialComplex, strategy: str = "reinterpret"):
        self.X = X
        self.n = len(X.vertices)
        self.strategy = strategy
        pu = partition_of_unity(X)
        self.N = pu.N
        self.weights = pu.rho

    def zero(self, Z):
        return PolyForm(self.n)

    def is_zero(self, f) -> bool:
        return f.is_zero()

    def add(self, f, g):
        return f + g

    def scale(self, f, c):
        return f.scale(c)

    def restrict(self, f, Z: Subcomplex):
        return omega_presentation(Z).normal_form(f)

    def extend(self, f, Y: Subcomplex, Z: Subcomplex):
        return extend_form(f, Y, Z, self.strategy)

    def multiply(self, g: PolyForm, f, Z: Subcomplex):
        return omega_presentation(Z).normal_form(g.wedge(f))

    def d(self, f, Z: Subcomplex):
        return omega_presentation(Z).normal_form(f.d())

    def basis(self, Z: Subcomplex, q: int, D: int) -> list:
        tr = omega_truncated(Z, q, D)
        return [tr.element(i) for i in range(tr.dim)]

    def coords(self, f, Z: Subcomplex, q: int, D: int) -> tuple[int, dict]:
        tr = omega_truncated(Z, q, D)
        return tr.dim, tr.to_coords(f, reduce=False)

    basis_coords = coords


class SullivanSide:
    name = "sullivan"

    def __init__(self, X: SimplicialComplex):
        self.X = X
        self.n = len(X.vertices)
        self.N = 1
        self.weights = {v: PolyForm.var(self.n, i) for i, v in enumerate(X.vertices)}

    def zero(self, Z):
        return family_zero(Z)

    def is_zero(self, f) -> bool:
        return is_zero_family(f)

    def add(self, f, g):
        return family_add(f, g)

    def scale(self, f, c):
        return family_scale(f, c)

    def restrict(self, f, Z: Subcomplex):
        return family_restrict(f, Z)

    def extend(self, f, Y: Subcomplex, Z: Subcomplex):
        return extend_family(f, Y, Z)

    def multiply(self, g: PolyForm, f, Z: Subcomplex):
        return family_mul(function_on(Z, g), f)

    def d(self, f, Z: Subcomplex):
        return family_d(f)

    def basis(self, Z: Subcomplex, q: int, D: int) -> list:
        tr = a_truncated(Z, q, D)
        return [tr.element(i) for i in range(tr.dim)]

    def coords(self, f, Z: Subcomplex, q: int, D: int) -> tuple[int, dict]:
        tr = a_truncated(Z, q, D)
        return tr.ambient_dim, tr.to_coords(f)

    def basis_coords(self, f, Z: Subcomplex, q: int, D: int) -> tuple[int, dict]:
        tr = a_truncated(Z, q, D)
        return tr.dim, tr.basis_coords(f)


def make_side(X: SimplicialComplex, side: str, strategy: str = "reinterpret"):
    if side == "omega":
        return OmegaSide(X, strategy)
    if side == "sullivan":
        return SullivanSide(X)
    raise ValueError(f"unknown side {side!r}")


@dataclass
class CechSpace:
    side: str
    p: int
    q: int
    D: int
    tuples: list
    stars: dict
    basis: list          # (tuple, form) pairs

    @property
    def dim(self) -> int:
        return len(self.basis)


class CechComplex:
    """One row (fixed form degree) machinery for both Cech double complexes."""

    def __init__(self, X: SimplicialComplex, side: str, strategy: str = "reinterpret"):
        self.X = X
        self.side = make_side(X, side, strategy)
        self._stars: dict = {}

    def star(self, u: tuple) -> Subcomplex:
        if u not in self._stars:
            self._stars[u] = star(self.X, u)
        return self._stars[u]

    def space(self, p: int, q: int, D: int) -> CechSpace:
        if p < -1:
            return CechSpace(self.side.name, p, q, D, [], {}, [])
        tuples = increasing_tuples(self.X, p)
        stars = {u: self.star(u) for u in tuples}
        basis = [(u, f) for u in tuples if not stars[u].is_empty()
                 for f in self.side.basis(stars[u], q, D)]
        return CechSpace(self.side.name, p, q, D, tuples, stars, basis)

    # element operations -------------------------------------------------

    def _accumulate(self, out: dict, u: tuple, f):
        if self.side.is_zero(f):
            return
        if u in out:
            s = self.side.add(out[u], f)
            if self.side.is_zero(s):
                del out[u]
            else:
                out[u] = s
        else:
            out[u] = f

    def delta(self, elem: dict, p: int) -> dict:
        """``(delta w)_s = sum_i (-1)^i w_{d_i s}|St s`` on increasing ``s``."""
        out: dict = {}
        order = self.X.index
        for u, f in elem.items():
            for v in self.X.vertices:
                if v in u:
                    continue
                s = tuple(sorted(u + (v,), key=order))
                St = self.star(s)
                if St.is_empty():
                    continue
                i = s.index(v)
                g = self.side.restrict(f, St)
                if i & 1:
                    g = self.side.scale(g, -1)
                self._accumulate(out, s, g)
        return out

    def homotopy(self, elem: dict, p: int) -> dict:
        """``(K w)_w' = sum_v rho_v [w_{v*w'}]|St w'``; zero on the ``p = -1`` column."""
        if p < 0:
            return {}
        out: dict = {}
        side = self.side
        for u, f in elem.items():
            Su = self.star(u)
            for i, v in enumerate(u):
                w = face(u, i)
                Sw = self.star(w)
                if Sw.is_empty():
                    continue
                # v*w is u permuted by a cycle of sign (-1)^i
                g = side.multiply(side.weights[v], side.extend(f, Su, Sw), Sw)
                if i & 1:
                    g = side.scale(g, -1)
                self._accumulate(out, w, g)
        return out

    def d(self, elem: dict) -> dict:
        out = {}
        for u, f in elem.items():
            self._accumulate(out, u, self.side.d(f, self.star(u)))
        return out

    def equal(self, a: dict, b: dict) -> bool:
        keys = set(a) | set(b)
        for u in keys:
            fa, fb = a.get(u), b.get(u)
            if fa is None:
                if not self.side.is_zero(fb):
                    return False
            elif fb is None:
                if not self.side.is_zero(fa):
                    return False
            elif not self.side.is_zero(self.side.add(fa, self.side.scale(fb, -1))):
                return False
        return True

    # matrices -------------------------------------------------------------

    def coords(self, elem: dict, p: int, q: int, D: int, in_basis: bool = False) -> tuple[int, dict]:
        """Concatenated component coordinates at weight ``<= D``.

        Sullivan components use ambient product coordinates unless
        ``in_basis``, which expresses them in the compatible basis so that
        matrices compose.
        """
        out, off = {}, 0
        coords = self.side.basis_coords if in_basis else self.side.coords
        for u in increasing_tuples(self.X, p):
            St = self.star(u)
            if St.is_empty():
                continue
            dim, c = coords(elem[u], St, q, D) if u in elem else (coords(
                self.side.zero(St), St, q, D)[0], {})
            for i, x in c.items():
                out[off + i] = x
            off += dim
        return off, out

    def _matrix(self, columns: Iterable[dict], p: int, q: int, D: int, in_basis: bool = False) -> RationalMatrix:
        cols, nrows = [], 0
        for e in columns:
            nrows, c = self.coords(e, p, q, D, in_basis)
            cols.append(c)
        if not cols:
            nrows = self.coords({}, p, q, D, in_basis)[0]
        return RationalMatrix.from_columns(cols, nrows)

    def delta_matrix(self, p: int, q: int, D: int, in_basis: bool = False) -> RationalMatrix:
        sp = self.space(p, q, D)
        return self._matrix((self.delta({u: f}, p) for u, f in sp.basis), p + 1, q, D, in_basis)

    def homotopy_matrix(self, p: int, q: int, D: int, in_basis: bool = False) -> RationalMatrix:
        sp = self.space(p, q, D)
        return self._matrix((self.homotopy({u: f}, p) for u, f in sp.basis), p - 1, q, D + self.side.N,
                            in_basis)

    def inclusion_matrix(self, p: int, q: int, D: int, D2: int, in_basis: bool = False) -> RationalMatrix:
        """The inclusion of the weight ``<= D`` space into the weight ``<= D2`` one."""
        sp = self.space(p, q, D)
        return self._matrix(({u: f} for u, f in sp.basis), p, q, D2, in_basis)

    def identity_defect(self, p: int, q: int, D: int) -> list[int]:
        """Indices of basis elements where ``(delta K + K delta) b != b``."""
        bad = []
        for k, (u, f) in enumerate(self.space(p, q, D).basis):
            b = {u: f}
            lhs = self.delta(self.homotopy(b, p), p - 1)
            for s, g in self.homotopy(self.delta(b, p), p + 1).items():
                self._accumulate(lhs, s, g)
            if not self.equal(lhs, b):
                bad.append(k)
        return bad

    def homotopy_identity_matrices(self, p: int, q: int, D: int) -> tuple[RationalMatrix, RationalMatrix]:
        """``delta K + K delta`` and the inclusion into weight ``D + N``, as matrices."""
        sp = self.space(p, q, D)
        Dp = D + self.side.N
        lhs = []
        for u, f in sp.basis:
            b = {u: f}
            e = self.delta(self.homotopy(b, p), p - 1)
            for s, g in self.homotopy(self.delta(b, p), p + 1).items():
                self._accumulate(e, s, g)
            lhs.append(e)
        return (self._matrix(lhs, p, q, Dp),
                self._matrix(({u: f} for u, f in sp.basis), p, q, Dp))


@lru_cache(maxsize=None)
def cech_complex(X: SimplicialComplex, side: str, strategy: str = "reinterpret") -> CechComplex:
    return CechComplex(X, side, strategy)


def cech_space(X: SimplicialComplex, side: str, p: int, q: int, D: int) -> CechSpace:
    return cech_complex(X, side).space(p, q, D)


def cech_delta(X: SimplicialComplex, side: str, p: int, q: int, D: int, in_basis: bool = False) -> RationalMatrix:
    return cech_complex(X, side).delta_matrix(p, q, D, in_basis)


def homotopy_K(X: SimplicialComplex, side: str, p: int, q: int, D: int, strategy: str = "reinterpret",
               in_basis: bool = False) -> RationalMatrix:
    return cech_complex(X, side, strategy).homotopy_matrix(p, q, D, in_basis)


def check_double_complex(X: SimplicialComplex, side: str, q: int, D: int, p_max: int = 2) -> dict:
    """delta^2 = 0 and d delta = delta d on every basis element, p = -1..p_max."""
    cc = cech_complex(X, side)
    failures = []
    for p in range(-1, p_max + 1):
        for k, (u, f) in enumerate(cc.space(p, q, D).basis):
            b = {u: f}
            db = cc.delta(b, p)
            if cc.delta(db, p + 1):
                failures.append({"p": p, "index": k, "identity": "delta^2"})
            if not cc.equal(cc.d(db), cc.delta(cc.d(b), p)):
                failures.append({"p": p, "index": k, "identity": "d delta"})
    return {"check": "double_complex", "side": side, "q": q, "D": D, "failures": failures,
            "status": "pass" if not failures else "fail"}


def certify_row_exactness(X: SimplicialComplex, side: str, q: int, D: int, p_max: int = 2) -> dict:
    """Certify ``delta K + K delta = 1`` for ``-1 <= p <= p_max`` and injectivity at ``p = -1``."""
    cc = cech_complex(X, side)
    rows = []
    for p in range(-1, p_max + 1):
        bad = cc.identity_defect(p, q, D)
        rows.append({"p": p, "dim": cc.space(p, q, D).dim, "defects": bad})
    sp = cc.space(-1, q, D)
    cols = [cc.coords(cc.delta({u: f}, -1), 0, q, D)[1] for u, f in sp.basis]
    injective = rank_of_columns(cols) == sp.dim
    ok = injective and all(not r["defects"] for r in rows)
    return {"check": "row_exactness", "side": side, "q": q, "D": D, "p_max": p_max,
            "rows": rows, "delta_injective": injective, "status": "pass" if ok else "fail"}


def homotopy_independent_of_extension(X: SimplicialComplex, q: int, D: int, p_max: int = 2) -> dict:
    """K built from the two extension rules agrees as a matrix (Omega side)."""
    a = cech_complex(X, "omega", "reinterpret")
    b = cech_complex(X, "omega", "solve")
    mismatches = []
    for p in range(0, p_max + 1):
        if a.homotopy_matrix(p, q, D) != b.homotopy_matrix(p, q, D):
            mismatches.append(p)
    return {"check": "extension_independence", "q": q, "D": D, "mismatched_p": mismatches,
            "status": "pass" if not mismatches else "fail"}

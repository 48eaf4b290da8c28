"""The algebraic de Rham complex of the algebra of polynomial functions.

``A^0(Y)`` is presented as ``Q[t_v : v in V(Y)] / (sum t_v - 1, t^F for minimal
non-faces F)`` and ``Omega^q(Y)`` as the free module on ``dt_S`` modulo
``I dt_S`` and ``dI ^ dt_T``.  Every subcomplex of the ambient complex uses
the ambient variable universe; variables outside ``V(Y)`` are simply zero,
which makes restriction a normal form computation.
"""
from __future__ import annotations

import itertools
import random
from math import comb
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .exactla import Q, RankDeficient, RationalMatrix, Solver, kernel_of_columns, rank_of_columns
from .polyalg import PolyForm, Term, groebner, weight_basis
from .simplicial import SimplicialComplex, Subcomplex, minimal_nonfaces, star_in, whole


def as_sub(Y: SimplicialComplex | Subcomplex) -> Subcomplex:
    return whole(Y) if isinstance(Y, SimplicialComplex) else Y


class OmegaPresentation:
    """Presentation of ``Omega^*(Y)`` with lazily built Groebner bases per form degree."""

    def __init__(self, Y: Subcomplex):
        self.complex = Y
        X = Y.parent
        self.nvars = n = len(X.vertices)
        self.active = tuple(X.index(v) for v in Y.vertices)
        self._inactive = frozenset(range(n)) - frozenset(self.active)
        self.is_zero = Y.is_empty()
        if self.is_zero:
            self.ring_relations = [PolyForm.const(n, -1)]
        else:
            rels = [sum((PolyForm.var(n, i) for i in self.active), PolyForm.const(n, -1))]
            for F in minimal_nonfaces(Y):
                e = [0] * n
                for v in F:
                    e[X.index(v)] = 1
                rels.append(PolyForm(n, {(tuple(e), ()): 1}))
            self.ring_relations = rels
        self.ring_gb = None if self.is_zero else groebner(self.ring_relations, n)
        self._module_gb = {0: self.ring_gb}
        self._truncations: dict = {}

    def module_gb(self, q: int):
        if self.is_zero or q > len(self.active):
            return None
        if q not in self._module_gb:
            n = self.nvars
            gens = []
            for S in itertools.combinations(self.active, q):
                dS = PolyForm(n, {((0,) * n, S): 1})
                gens += [g.wedge(dS) for g in self.ring_gb.generators]
            for T in itertools.combinations(self.active, q - 1):
                dT = PolyForm(n, {((0,) * n, T): 1})
                for r in self.ring_relations:
                    gens.append(r.d().wedge(dT))
            self._module_gb[q] = groebner(gens, n)
        return self._module_gb[q]

    def kill_inactive(self, f: PolyForm) -> PolyForm:
        if not self._inactive:
            return f
        out = PolyForm(self.nvars)
        dead = self._inactive
        out.terms = {(m, S): c for (m, S), c in f.terms.items()
                     if not any(m[i] for i in dead) and not dead.intersection(S)}
        return out

    def normal_form(self, f: PolyForm) -> PolyForm:
        """Canonical representative; restriction from any larger complex."""
        if self.is_zero or not f:
            return PolyForm(self.nvars)
        f = self.kill_inactive(f)
        by_q: dict = {}
        for t, c in f.terms.items():
            by_q.setdefault(len(t[1]), {})[t] = c
        out = PolyForm(self.nvars)
        for q, terms in by_q.items():
            gb = self.module_gb(q)
            if gb is not None:
                out.terms.update(gb.reduce_terms(terms))
        return out

    nf = normal_form

    def truncation(self, q: int, D: int) -> "OmegaTruncation":
        key = (q, D)
        if key not in self._truncations:
            self._truncations[key] = OmegaTruncation(self, q, D)
        return self._truncations[key]


@lru_cache(maxsize=None)
def _presentation(X: SimplicialComplex, simplices: frozenset) -> OmegaPresentation:
    return OmegaPresentation(Subcomplex(X, simplices))


def omega_presentation(Y: SimplicialComplex | Subcomplex) -> OmegaPresentation:
    Y = as_sub(Y)
    return _presentation(Y.parent, Y.simplices)


class OmegaTruncation:
    """Weight-at-most-``D`` piece of ``Omega^q(Y)``, coordinatized by standard terms."""

    def __init__(self, presentation: OmegaPresentation, q: int, D: int):
        if q < 0:
            raise ValueError("negative form degree")
        self.presentation = presentation
        self.q, self.D = q, D
        gb = presentation.module_gb(q)
        if gb is None or D < q:
            self.basis: list[Term] = []
        else:
            cand = weight_basis(presentation.active, q, D, presentation.nvars)
            self.basis = [t for t in cand if gb.is_standard(t)]
        self.index = {t: i for i, t in enumerate(self.basis)}

    @property
    def dim(self) -> int:
        return len(self.basis)

    def to_coords(self, f: PolyForm, reduce: bool = True) -> dict[int, Fraction]:
        if reduce:
            f = self.presentation.normal_form(f)
        try:
            return {self.index[t]: c for t, c in f.terms.items()}
        except KeyError as exc:
            raise ValueError(f"term {exc.args[0]} is outside the weight-{self.D} piece") from None

    def from_coords(self, v) -> PolyForm:
        if not isinstance(v, dict):
            v = {i: x for i, x in enumerate(v) if x}
        return PolyForm(self.presentation.nvars, {self.basis[i]: c for i, c in v.items()})

    def element(self, i: int) -> PolyForm:
        return PolyForm(self.presentation.nvars, {self.basis[i]: 1})


def omega_truncated(Y, q: int, D: int) -> OmegaTruncation:
    return omega_presentation(Y).truncation(q, D)


def omega_d(trunc: OmegaTruncation) -> RationalMatrix:
    """Matrix of d from the (q, D) piece to the (q+1, D) piece."""
    pres = trunc.presentation
    target = pres.truncation(trunc.q + 1, max(trunc.D, trunc.q + 1))
    cols = [target.to_coords(trunc.element(i).d()) for i in range(trunc.dim)]
    return RationalMatrix.from_columns(cols, target.dim)


def omega_restrict(X, Y, q: int, D: int, check: bool = True) -> RationalMatrix:
    src = omega_truncated(X, q, D)
    tgt = omega_truncated(Y, q, D)
    cols = [tgt.to_coords(src.element(i)) for i in range(src.dim)]
    if check:
        r = rank_of_columns(cols, tgt.dim)
        if r != tgt.dim:
            raise RankDeficient(f"restriction has rank {r}, target dimension {tgt.dim}")
    return RationalMatrix.from_columns(cols, tgt.dim)


@lru_cache(maxsize=None)
def _extension_solver(X: Subcomplex, Y: Subcomplex, q: int, D: int):
    src = omega_truncated(X, q, D)
    tgt = omega_truncated(Y, q, D)
    cols = [tgt.to_coords(src.element(i)) for i in range(src.dim)]
    rows = [dict() for _ in range(tgt.dim)]
    for j, col in enumerate(cols):
        for i, x in col.items():
            rows[i][j] = x
    return Solver(rows, ncols=src.dim)


def extend_form(omega: PolyForm, Y, X, strategy: str = "reinterpret", D: int | None = None) -> PolyForm:
    """Distinguished extension of an ``Omega(Y)`` form to ``Omega(X)``.

    ``reinterpret`` reads the normal form representative as a form on ``X``;
    ``solve`` picks the free-variables-zero solution of the restriction system.
    """
    X, Y = as_sub(X), as_sub(Y)
    px = omega_presentation(X)
    if strategy == "reinterpret":
        return px.normal_form(omega)
    if strategy != "solve":
        raise ValueError(f"unknown extension strategy {strategy!r}")
    if not omega:
        return PolyForm(px.nvars)
    q = omega.degree
    D = max(omega.weight(), q) if D is None else D
    tgt = omega_truncated(Y, q, D)
    x = _extension_solver(X, Y, q, D).solve(tgt.to_coords(omega))
    return omega_truncated(X, q, D).from_coords(x)


def omega_extend(X, Y, q: int, D: int, omega, strategy: str = "reinterpret") -> dict[int, Fraction]:
    """Coordinates version of :func:`extend_form` on the (q, D) pieces."""
    src = omega_truncated(Y, q, D)
    form = src.from_coords(omega)
    ext = extend_form(form, Y, X, strategy, D)
    return omega_truncated(X, q, D).to_coords(ext)


@dataclass(frozen=True)
class PartitionOfUnity:
    N: int
    p: dict
    rho: dict


@lru_cache(maxsize=None)
def partition_of_unity(X: SimplicialComplex) -> PartitionOfUnity:
    """``rho_v = p_v t_v^2`` from the expansion of ``(sum t_v)^N``, ``N = |V|+1``.

    Each monomial of the expansion has an exponent >= 2 (pigeonhole) and is
    charged to the first such vertex.
    """
    n = len(X.vertices)
    N = n + 1
    p = {v: PolyForm(n) for v in X.vertices}
    for combo in itertools.combinations_with_replacement(range(n), N):
        e = [0] * n
        for i in combo:
            e[i] += 1
        coef = _multinomial(N, e)
        v = next(i for i in range(n) if e[i] >= 2)
        e[v] -= 2
        t = (tuple(e), ())
        p[X.vertices[v]].terms[t] = p[X.vertices[v]].terms.get(t, 0) + coef
    rho = {}
    for i, v in enumerate(X.vertices):
        e = [0] * n
        e[i] = 2
        rho[v] = p[v].wedge(PolyForm(n, {(tuple(e), ()): 1}))
    return PartitionOfUnity(N, p, rho)


def _multinomial(N: int, exps: Sequence[int]) -> int:
    out, left = 1, N
    for e in exps:
        out *= comb(left, e)
        left -= e
    return out


def partition_sum_is_one(X: SimplicialComplex) -> bool:
    pu = partition_of_unity(X)
    total = sum(pu.rho.values(), PolyForm(len(X.vertices)))
    return omega_presentation(X).normal_form(total - 1).is_zero()


# ---------------------------------------------------------------- lemma checks

def _random_combination(rng: random.Random, vectors: list[dict], spread: int = 3) -> dict:
    out: dict = {}
    for vec in vectors:
        c = rng.randint(-spread, spread)
        if not c:
            continue
        for i, x in vec.items():
            v = out.get(i, 0) + c * x
            if v:
                out[i] = v
            else:
                out.pop(i, None)
    return out


def verify_tv_annihilation(X: SimplicialComplex, Y, v: str, trials: int, D: int,
                           qs: Sequence[int] = (0, 1, 2), seed: int = 0) -> dict:
    """Sample forms on ``Y`` that vanish on ``St_Y(v)`` and check ``t_v^2`` kills them."""
    Y = as_sub(Y)
    rng = random.Random(seed)
    n = len(X.vertices)
    e = [0] * n
    e[X.index(v)] = 2
    tv2 = PolyForm(n, {(tuple(e), ()): 1})
    pres = omega_presentation(Y)
    local = star_in(Y, (v,))
    failures = []
    done = 0
    for q in qs:
        if D < q:
            continue
        src = omega_truncated(Y, q, D)
        if v not in Y.vertices:
            # t_v restricts to zero on Y
            ok = pres.normal_form(tv2).is_zero()
            done += trials
            if not ok:
                failures.append({"q": q, "reason": "t_v does not vanish on Y"})
            continue
        tgt = omega_truncated(local, q, D)
        cols = [tgt.to_coords(src.element(i)) for i in range(src.dim)]
        kernel = kernel_of_columns(cols, tgt.dim)
        for _ in range(trials):
            coords = _random_combination(rng, kernel)
            omega = src.from_coords(coords)
            done += 1
            if not pres.normal_form(tv2.wedge(omega)).is_zero():
                failures.append({"q": q, "coords": {str(k): str(x) for k, x in coords.items()}})
    return {"check": "tv_annihilation", "vertex": v, "trials": done, "failures": failures,
            "status": "pass" if not failures else "fail"}


def verify_extres(X: SimplicialComplex, Y, q: int, D: int, trials: int, seed: int = 0) -> dict:
    """Check ``sum_v rho_v [omega|St_Y(v)]|_Y == omega`` on random forms of ``Y``."""
    Y = as_sub(Y)
    Xs = whole(X)
    rng = random.Random(seed)
    pres = omega_presentation(Y)
    pu = partition_of_unity(X)
    src = omega_truncated(Y, q, D)
    failures = []
    for _ in range(trials):
        coords = {i: Q(rng.randint(-3, 3)) for i in range(src.dim)}
        omega = src.from_coords(coords)
        total = PolyForm(pres.nvars)
        for v in X.vertices:
            local = star_in(Y, (v,))
            piece = omega_presentation(local).normal_form(omega)
            ext = extend_form(piece, local, Xs)
            total = total + pres.normal_form(pu.rho[v].wedge(ext))
        if total != omega:
            failures.append({"coords": {str(k): str(x) for k, x in coords.items() if x}})
    return {"check": "extres", "q": q, "D": D, "trials": trials, "failures": failures,
            "status": "pass" if not failures else "fail"}


def verify_presentation_deg0(X: SimplicialComplex, D: int) -> dict:
    """The presented ring injects into the product of the simplex algebras at weight <= D."""
    from .sullivan import simplex_reduce

    trunc = omega_truncated(X, 0, D)
    maximal = [tuple(X.index(v) for v in a) for a in X.maximal_simplices()]
    coords: dict = {}
    cols = []
    for i in range(trunc.dim):
        f = trunc.element(i)
        col = {}
        for k, a in enumerate(maximal):
            for t, c in simplex_reduce(f, a).terms.items():
                col[coords.setdefault((k, t), len(coords))] = c
        cols.append(col)
    r = rank_of_columns(cols, len(coords))
    return {"check": "presentation_deg0", "D": D, "domain_dim": trunc.dim, "rank": r,
            "status": "pass" if r == trunc.dim else "fail"}

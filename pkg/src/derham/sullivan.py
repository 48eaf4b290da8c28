"""Sullivan's polynomial forms as compatible families over maximal simplices.

On a simplex ``a`` the relations ``sum t_v = 1`` and ``sum dt_v = 0`` are used
to eliminate the largest vertex of ``a``; what remains is a free polynomial
form in the other ``|a| - 1`` variables, so every ``A(a)`` element has a
canonical reduced representative and degree never grows.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Mapping, Sequence

from .exactla import RankDeficient, RationalMatrix, Solver, echelon_of_rows, rank_of_columns
from .kaehler import as_sub, omega_truncated
from .polyalg import PolyForm, Term, weight_basis
from .simplicial import Subcomplex

Simplex = tuple  # increasing tuple of variable indices


class CompatibilityViolation(AssertionError):
    pass


@lru_cache(maxsize=None)
def _elimination(nvars: int, a: Simplex) -> tuple[PolyForm, PolyForm]:
    rest = a[:-1]
    t = PolyForm.const(nvars)
    dt = PolyForm(nvars)
    for i in rest:
        t = t - PolyForm.var(nvars, i)
        dt = dt - PolyForm.dvar(nvars, i)
    return t, dt


def simplex_reduce(f: PolyForm, a: Simplex) -> PolyForm:
    """Image of ``f`` in ``A(a)``: kill variables outside ``a``, eliminate ``max(a)``."""
    n = f.nvars
    keep = frozenset(a)
    terms = {(m, S): c for (m, S), c in f.terms.items()
             if keep.issuperset(S) and all(not e or i in keep for i, e in enumerate(m))}
    if not terms:
        return PolyForm(n)
    top = a[-1]
    if not any(m[top] or top in S for m, S in terms):
        return PolyForm(n, terms)
    t_top, dt_top = _elimination(n, a)
    return PolyForm(n, terms).substitute({top: t_top}, {top: dt_top})


class SimplexFormSpace:
    """Reduced weight-``<= D`` basis of ``A^q(a)``."""

    def __init__(self, a: Simplex, q: int, D: int, nvars: int):
        self.simplex, self.q, self.D, self.nvars = a, q, D, nvars
        self.reduced = a[:-1]
        self.basis: list[Term] = weight_basis(self.reduced, q, D, nvars) if D >= q else []
        self.index = {t: i for i, t in enumerate(self.basis)}

    @property
    def dim(self) -> int:
        return len(self.basis)

    def to_coords(self, f: PolyForm) -> dict[int, Fraction]:
        return {self.index[t]: c for t, c in f.terms.items()}

    def from_coords(self, v: Mapping[int, Fraction]) -> PolyForm:
        return PolyForm(self.nvars, {self.basis[i]: c for i, c in v.items()})


@lru_cache(maxsize=None)
def simplex_space(a: Simplex, q: int, D: int, nvars: int) -> SimplexFormSpace:
    return SimplexFormSpace(tuple(a), q, D, nvars)


def simplex_restrict(a: Simplex, b: Simplex, q: int, D: int, nvars: int) -> RationalMatrix:
    if not set(b) <= set(a):
        raise ValueError("b is not a face of a")
    src, tgt = simplex_space(a, q, D, nvars), simplex_space(b, q, D, nvars)
    cols = [tgt.to_coords(simplex_reduce(src.from_coords({i: 1}), b)) for i in range(src.dim)]
    return RationalMatrix.from_columns(cols, tgt.dim)


def maximal_index_simplices(Y: Subcomplex) -> list[Simplex]:
    X = Y.parent
    return [tuple(X.index(v) for v in s) for s in Y.maximal_simplices()]


# a family is a dict: maximal simplex (index tuple) -> reduced PolyForm

def family_zero(Y: Subcomplex) -> dict:
    n = len(Y.parent.vertices)
    return {a: PolyForm(n) for a in maximal_index_simplices(Y)}


def family_restrict(fam: Mapping[Simplex, PolyForm], Y: Subcomplex) -> dict:
    out = {}
    for b in maximal_index_simplices(Y):
        sb = set(b)
        src = next((a for a in fam if sb <= set(a)), None)
        if src is None:
            raise ValueError(f"simplex {b} is not covered by the family's domain")
        out[b] = simplex_reduce(fam[src], b) if src != b else fam[src]
    return out


def family_d(fam: Mapping[Simplex, PolyForm]) -> dict:
    return {a: f.d() for a, f in fam.items()}


def family_add(f: Mapping, g: Mapping) -> dict:
    return {a: f[a] + g[a] for a in f}


def family_scale(f: Mapping, c) -> dict:
    return {a: x.scale(c) for a, x in f.items()}


def family_mul(f: Mapping, g: Mapping) -> dict:
    # reduced representatives multiply within the reduced variables
    return {a: f[a].wedge(g[a]) for a in f}


def function_on(Y: Subcomplex, f: PolyForm) -> dict:
    """A polynomial in the ambient variables as a family on ``Y``."""
    return {a: simplex_reduce(f, a) for a in maximal_index_simplices(Y)}


def is_zero_family(f: Mapping) -> bool:
    return all(x.is_zero() for x in f.values())


def check_compatible(fam: Mapping[Simplex, PolyForm]) -> bool:
    keys = list(fam)
    for i, a in enumerate(keys):
        for b in keys[i + 1:]:
            c = tuple(sorted(set(a) & set(b)))
            if c and simplex_reduce(fam[a], c) != simplex_reduce(fam[b], c):
                return False
    return True


class ATruncation:
    """Compatible families whose components all have weight ``<= D``.

    Coordinates are the concatenated reduced bases of the maximal simplices
    (the ambient product); ``basis`` spans the compatible subspace.
    """

    def __init__(self, Y: Subcomplex, q: int, D: int):
        self.complex, self.q, self.D = Y, q, D
        self.nvars = n = len(Y.parent.vertices)
        self.maximal = maximal_index_simplices(Y)
        self.blocks = [simplex_space(a, q, D, n) for a in self.maximal]
        self.offsets = []
        off = 0
        for sp in self.blocks:
            self.offsets.append(off)
            off += sp.dim
        self.ambient_dim = off
        self.basis = self._solve_constraints()
        self._basis_solver = None

    def _solve_constraints(self) -> list[dict[int, Fraction]]:
        rows: list[dict] = []
        n = self.nvars
        for i, a in enumerate(self.maximal):
            for j in range(i + 1, len(self.maximal)):
                b = self.maximal[j]
                c = tuple(sorted(set(a) & set(b)))
                if not c:
                    continue
                face = simplex_space(c, self.q, self.D, n)
                block_rows = [dict() for _ in range(face.dim)]
                for k, off, sign in ((i, self.offsets[i], 1), (j, self.offsets[j], -1)):
                    sp = self.blocks[k]
                    for col in range(sp.dim):
                        img = simplex_reduce(sp.from_coords({col: 1}), c)
                        for t, x in img.terms.items():
                            block_rows[face.index[t]][off + col] = sign * x
                rows.extend(r for r in block_rows if r)
        return echelon_of_rows(rows, self.ambient_dim).kernel()

    @property
    def dim(self) -> int:
        return len(self.basis)

    def to_family(self, v: Mapping[int, Fraction]) -> dict:
        fam = {}
        for a, sp, off in zip(self.maximal, self.blocks, self.offsets):
            fam[a] = sp.from_coords({i - off: x for i, x in v.items() if off <= i < off + sp.dim})
        return fam

    def to_coords(self, fam: Mapping[Simplex, PolyForm]) -> dict[int, Fraction]:
        out = {}
        for a, sp, off in zip(self.maximal, self.blocks, self.offsets):
            f = fam.get(a)
            if f is None:
                continue
            for t, c in f.terms.items():
                if t not in sp.index:
                    raise ValueError(f"term {t} is outside the weight-{self.D} piece")
                out[off + sp.index[t]] = c
        return out

    def element(self, i: int) -> dict:
        return self.to_family(self.basis[i])

    def basis_coords(self, fam: Mapping[Simplex, PolyForm]) -> dict[int, Fraction]:
        """Coordinates of a compatible family with respect to ``basis``."""
        if self._basis_solver is None:
            rows = [dict() for _ in range(self.ambient_dim)]
            for j, v in enumerate(self.basis):
                for i, x in v.items():
                    rows[i][j] = x
            self._basis_solver = Solver(rows, ncols=self.dim)
        return self._basis_solver.solve(self.to_coords(fam))


@lru_cache(maxsize=None)
def _a_truncated(Y: Subcomplex, q: int, D: int) -> ATruncation:
    return ATruncation(Y, q, D)


def a_truncated(Y, q: int, D: int) -> ATruncation:
    if q < 0:
        raise ValueError("negative form degree")
    return _a_truncated(as_sub(Y), q, D)


def a_d(Y, q: int, D: int) -> RationalMatrix:
    """Ambient matrix of d from the (q, D) product to the (q+1, D) product."""
    src = a_truncated(Y, q, D)
    tgt = a_truncated(Y, q + 1, max(D, q + 1))
    cols = []
    for i in range(src.ambient_dim):
        cols.append(tgt.to_coords(family_d(src.to_family({i: 1}))))
    return RationalMatrix.from_columns(cols, tgt.ambient_dim)


def a_restrict(X, Y, q: int, D: int, check: bool = True) -> RationalMatrix:
    """Ambient restriction matrix; with ``check`` certify surjectivity on compatible families."""
    src, tgt = a_truncated(X, q, D), a_truncated(Y, q, D)
    cols = [tgt.to_coords(family_restrict(src.to_family({i: 1}), tgt.complex)) for i in range(src.ambient_dim)]
    M = RationalMatrix.from_columns(cols, tgt.ambient_dim)
    if check:
        imgs = [_apply_cols(cols, v) for v in src.basis]
        r = rank_of_columns(imgs, tgt.ambient_dim)
        if r != tgt.dim:
            raise RankDeficient(f"restriction has rank {r}, target dimension {tgt.dim}")
    return M


def _apply_cols(cols: Sequence[dict], v: Mapping[int, Fraction]) -> dict:
    out: dict = {}
    for j, x in v.items():
        for i, y in cols[j].items():
            s = out.get(i, 0) + x * y
            if s:
                out[i] = s
            else:
                out.pop(i, None)
    return out


@lru_cache(maxsize=None)
def _a_extension_solver(X: Subcomplex, Y: Subcomplex, q: int, D: int):
    src, tgt = a_truncated(X, q, D), a_truncated(Y, q, D)
    imgs = [tgt.to_coords(family_restrict(src.to_family(v), tgt.complex)) for v in src.basis]
    rows = [dict() for _ in range(tgt.ambient_dim)]
    for j, col in enumerate(imgs):
        for i, x in col.items():
            rows[i][j] = x
    return Solver(rows, ncols=src.dim)


def extend_family(fam: Mapping[Simplex, PolyForm], Y, X, D: int | None = None) -> dict:
    """Free-variables-zero lift of a compatible family on ``Y`` to ``X``."""
    X, Y = as_sub(X), as_sub(Y)
    if X.simplices == Y.simplices:
        return dict(fam)
    weights = [f.weight() for f in fam.values() if f]
    if not weights:
        return family_zero(X)
    q = next(f for f in fam.values() if f).degree
    D = max(max(weights), q) if D is None else D
    src = a_truncated(X, q, D)
    x = _a_extension_solver(X, Y, q, D).solve(a_truncated(Y, q, D).to_coords(fam))
    v: dict = {}
    for j, c in x.items():
        for i, y in src.basis[j].items():
            s = v.get(i, 0) + c * y
            if s:
                v[i] = s
            else:
                v.pop(i, None)
    return src.to_family(v)


def a_extend(X, Y, q: int, D: int, omega: Mapping[int, Fraction]) -> dict[int, Fraction]:
    tgt = a_truncated(Y, q, D)
    fam = extend_family(tgt.to_family(omega), Y, X, D)
    return a_truncated(X, q, D).to_coords(fam)


def eval_P_form(X, f: PolyForm, check: bool = False) -> dict:
    """Image of an Omega-representative as a family on ``X``."""
    X = as_sub(X)
    fam = function_on(X, f)
    if check and not check_compatible(fam):
        raise CompatibilityViolation("P produced an incompatible family")
    return fam


def eval_P(X, q: int, D: int, omega: Mapping[int, Fraction]) -> dict:
    trunc = omega_truncated(X, q, D)
    return eval_P_form(X, trunc.from_coords(omega), check=True)


def eval_P_matrix(X, q: int, D: int) -> RationalMatrix:
    """P from the Omega (q, D) piece into the ambient A (q, D) coordinates."""
    src, tgt = omega_truncated(X, q, D), a_truncated(X, q, D)
    cols = [tgt.to_coords(eval_P_form(tgt.complex, src.element(i))) for i in range(src.dim)]
    return RationalMatrix.from_columns(cols, tgt.ambient_dim)

"""Polynomial differential forms over Q and Groebner normal forms.

A :class:`PolyForm` is a finite sum ``c * t^a * dt_S`` where ``a`` is an
exponent vector over a fixed variable universe and ``S`` a strictly
increasing tuple of variable indices.  The same representation serves as an
element of the free module with basis ``dt_S`` over ``Q[t]``, which is what
the module Groebner code works with.

Monomial order: graded reverse lexicographic with the *last* variable
largest; on module terms the monomial is compared first and the position
``S`` second (sets containing larger variables are larger).
"""
from __future__ import annotations

import heapq
import itertools
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from . import _kernels
from ._kernels import NUMBER, Rational as Q

Term = tuple  # (exponents, dt-index tuple)


def _merge_sign(a: tuple, b: tuple) -> int:
    """Sign of the shuffle sorting ``a + b``; 0 if they share an index."""
    inv = 0
    for x in a:
        for y in b:
            if x == y:
                return 0
            if x > y:
                inv += 1
    return -1 if inv & 1 else 1


class PolyForm:
    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: Mapping | None = None):
        self.nvars = nvars
        self.terms: dict[Term, Fraction] = {}
        if terms:
            for t, c in terms.items():
                if c:
                    self.terms[t] = Q(c)

    # constructors
    @classmethod
    def const(cls, nvars: int, c=1) -> "PolyForm":
        return cls(nvars, {((0,) * nvars, ()): c})

    @classmethod
    def var(cls, nvars: int, i: int) -> "PolyForm":
        e = [0] * nvars
        e[i] = 1
        return cls(nvars, {(tuple(e), ()): 1})

    @classmethod
    def dvar(cls, nvars: int, i: int) -> "PolyForm":
        return cls(nvars, {((0,) * nvars, (i,)): 1})

    @classmethod
    def monomial(cls, nvars: int, exps: Sequence[int], dts: Sequence[int] = (), c=1) -> "PolyForm":
        dts = tuple(dts)
        if len(set(dts)) != len(dts):
            return cls(nvars)
        order = sorted(range(len(dts)), key=dts.__getitem__)
        sign = 1
        for i in range(len(order)):
            for j in range(i + 1, len(order)):
                if order[i] > order[j]:
                    sign = -sign
        return cls(nvars, {(tuple(exps), tuple(sorted(dts))): sign * Q(c)})

    def copy(self) -> "PolyForm":
        p = PolyForm(self.nvars)
        p.terms = dict(self.terms)
        return p

    # inspection
    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        if isinstance(other, NUMBER):
            other = PolyForm.const(self.nvars, other)
        if not isinstance(other, PolyForm):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def form_degrees(self) -> set[int]:
        return {len(S) for _, S in self.terms}

    @property
    def degree(self) -> int:
        """Form degree; the zero form reports 0."""
        ds = self.form_degrees()
        if len(ds) > 1:
            raise ValueError("form is not homogeneous in form degree")
        return ds.pop() if ds else 0

    def weight(self) -> int:
        """Maximal term weight (monomial degree plus form degree); -1 for zero."""
        return max((sum(m) + len(S) for m, S in self.terms), default=-1)

    # arithmetic
    def _check(self, other):
        if self.nvars != other.nvars:
            raise ValueError("variable universes differ")

    def __add__(self, other):
        if isinstance(other, NUMBER):
            other = PolyForm.const(self.nvars, other)
        self._check(other)
        out = dict(self.terms)
        for t, c in other.terms.items():
            v = out.get(t, 0) + c
            if v:
                out[t] = v
            else:
                out.pop(t, None)
        p = PolyForm(self.nvars)
        p.terms = out
        return p

    __radd__ = __add__

    def __neg__(self):
        p = PolyForm(self.nvars)
        p.terms = {t: -c for t, c in self.terms.items()}
        return p

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "PolyForm":
        c = Q(c)
        p = PolyForm(self.nvars)
        if c:
            p.terms = {t: c * x for t, x in self.terms.items()}
        return p

    def __mul__(self, other):
        if isinstance(other, NUMBER):
            return self.scale(other)
        return self.wedge(other)

    def __rmul__(self, other):
        if isinstance(other, NUMBER):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, k: int):
        out = PolyForm.const(self.nvars)
        for _ in range(k):
            out = out.wedge(self)
        return out

    def wedge(self, other: "PolyForm") -> "PolyForm":
        """Graded-commutative product; colliding ``dt`` indices annihilate."""
        self._check(other)
        out: dict = {}
        for (m1, S1), c1 in self.terms.items():
            for (m2, S2), c2 in other.terms.items():
                sign = _merge_sign(S1, S2) if S1 and S2 else 1
                if not sign:
                    continue
                t = (tuple(a + b for a, b in zip(m1, m2)), tuple(sorted(S1 + S2)) if S1 and S2 else S1 or S2)
                v = out.get(t, 0) + sign * c1 * c2
                if v:
                    out[t] = v
                else:
                    out.pop(t, None)
        p = PolyForm(self.nvars)
        p.terms = out
        return p

    def d(self) -> "PolyForm":
        return kaehler_d(self)

    def substitute(self, assignment: Mapping[int, "PolyForm"], dt_assignment: Mapping[int, "PolyForm"] | None = None):
        return substitute(self, assignment, dt_assignment)

    def to_str(self, labels: Sequence[str] | None = None) -> str:
        if not self.terms:
            return "0"
        labels = labels or [str(i + 1) for i in range(self.nvars)]
        parts = []
        for (m, S), c in sorted(self.terms.items(), key=lambda tc: order_key(tc[0]), reverse=True):
            factors = []
            for i, e in enumerate(m):
                if e:
                    factors.append(f"t{labels[i]}" + (f"^{e}" if e > 1 else ""))
            factors += [f"dt{labels[i]}" for i in S]
            body = "*".join(factors)
            if not body:
                parts.append(str(c))
            elif c == 1:
                parts.append(body)
            elif c == -1:
                parts.append("-" + body)
            else:
                parts.append(f"{c}*{body}")
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self):
        return f"PolyForm({self.to_str()})"


def kaehler_d(a: PolyForm) -> PolyForm:
    """Leibniz differential with ``d t_v = dt_v``; raises form degree, keeps weight."""
    out: dict = {}
    n = a.nvars
    for (m, S), c in a.terms.items():
        for v in range(n):
            e = m[v]
            if not e or v in S:
                continue
            # dt_v moves in front of dt_S: sign from the position it lands at
            pos = sum(1 for s in S if s < v)
            sign = -1 if pos & 1 else 1
            nm = m[:v] + (e - 1,) + m[v + 1:]
            t = (nm, tuple(sorted(S + (v,))))
            val = out.get(t, 0) + sign * e * c
            if val:
                out[t] = val
            else:
                out.pop(t, None)
    p = PolyForm(n)
    p.terms = out
    return p


def substitute(a: PolyForm, assignment: Mapping[int, PolyForm],
               dt_assignment: Mapping[int, PolyForm] | None = None) -> PolyForm:
    """Algebra homomorphism ``t_v -> assignment[v]``, ``dt_v -> dt_assignment[v]``.

    Unassigned variables are left alone.  When ``dt_assignment`` is omitted the
    differentials follow the chain rule (``dt_v -> d assignment[v]``).
    """
    n = a.nvars
    if dt_assignment is None:
        dt_assignment = {v: kaehler_d(f) for v, f in assignment.items()}
    powers: dict = {}

    def power(v, e):
        key = (v, e)
        if key not in powers:
            base = assignment[v] if v in assignment else PolyForm.var(n, v)
            powers[key] = base if e == 1 else power(v, e - 1).wedge(base)
        return powers[key]

    dts = {v: dt_assignment[v] if v in dt_assignment else PolyForm.dvar(n, v) for v in range(n)}
    total = PolyForm(n)
    for (m, S), c in a.terms.items():
        kept = [0] * n
        factor = PolyForm(n, {((0,) * n, ()): c})
        for v, e in enumerate(m):
            if not e:
                continue
            if v in assignment:
                factor = factor.wedge(power(v, e))
                if not factor:
                    break
            else:
                kept[v] = e
        if not factor:
            continue
        if any(kept):
            factor = factor.wedge(PolyForm(n, {(tuple(kept), ()): 1}))
        for s in S:
            factor = factor.wedge(dts[s])
            if not factor:
                break
        total = total + factor
    return total


# ---------------------------------------------------------------- ordering

def order_key(t: Term) -> tuple:
    """Ascending key of the term order (graded revlex, then position)."""
    m, S = t
    return (sum(m),) + tuple(-e for e in m) + tuple(reversed(S))


def _heap_key(t: Term) -> tuple:
    m, S = t
    return (-sum(m),) + m + tuple(-s for s in reversed(S))


def leading_term(f: Mapping[Term, Fraction]) -> Term:
    return min(f, key=_heap_key)


def weight_basis(variables: Sequence[int] | int, q: int, D: int, nvars: int | None = None) -> list[Term]:
    """All terms of form degree ``q`` and weight at most ``D``.

    ``variables`` is either a count (all of ``0..n-1``) or a list of indices
    inside a universe of ``nvars`` variables.  Ordered by weight, then
    position, then monomial (earlier variables first).
    """
    if isinstance(variables, int):
        nvars = variables if nvars is None else nvars
        variables = list(range(variables))
    elif nvars is None:
        nvars = max(variables, default=-1) + 1
    variables = sorted(variables)
    out = []
    for S in itertools.combinations(variables, q):
        for k in range(0, D - q + 1):
            for combo in itertools.combinations_with_replacement(variables, k):
                e = [0] * nvars
                for v in combo:
                    e[v] += 1
                out.append((tuple(e), S))
    out.sort(key=lambda t: (sum(t[0]) + len(t[1]), t[1], tuple(-x for x in t[0])))
    return out


# ---------------------------------------------------------------- Groebner

class GroebnerLimit(RuntimeError):
    pass


class _Elem:
    __slots__ = ("lm", "pos", "tail", "terms")

    def __init__(self, terms: dict):
        lt = leading_term(terms)
        lc = terms[lt]
        self.terms = {t: c / lc for t, c in terms.items()}
        self.lm, self.pos = lt
        self.tail = [(t, c) for t, c in self.terms.items() if t != lt]


def _divides(a: tuple, b: tuple) -> bool:
    for x, y in zip(a, b):
        if x > y:
            return False
    return True


def _reduce(f: Mapping[Term, Fraction], index: Mapping[tuple, list]) -> dict:
    """Full normal form of ``f``; ``index`` maps a position to ``(lm, tail)`` pairs."""
    return _kernels.reduce_terms(f, index)


class GroebnerBasis:
    """Reduced Groebner basis of an ideal (form degree 0) or a submodule of
    the free module on ``dt_S`` (all generators of one form degree)."""

    order = "grevlex-top"

    def __init__(self, nvars: int, elements: list[_Elem], q: int):
        self.nvars = nvars
        self.q = q
        self._elems = sorted(elements, key=lambda e: _heap_key((e.lm, e.pos)))
        self._index: dict = {}
        for e in self._elems:
            self._index.setdefault(e.pos, []).append((e.lm, e.tail))

    @property
    def generators(self) -> list[PolyForm]:
        return [PolyForm(self.nvars, e.terms) for e in self._elems]

    def leading_terms(self) -> list[Term]:
        return [(e.lm, e.pos) for e in self._elems]

    def reduce_terms(self, f: Mapping[Term, Fraction]) -> dict:
        return _reduce(f, self._index)

    def normal_form(self, f: PolyForm) -> PolyForm:
        p = PolyForm(self.nvars)
        p.terms = _reduce(f.terms, self._index)
        return p

    def contains(self, f: PolyForm) -> bool:
        return not _reduce(f.terms, self._index)

    def is_standard(self, t: Term) -> bool:
        m, S = t
        return not any(_divides(lm, m) for lm, _ in self._index.get(S, ()))

    def __len__(self):
        return len(self._elems)


def _lcm(a, b):
    return tuple(max(x, y) for x, y in zip(a, b))


def _shifted(elem: _Elem, shift: tuple, coef) -> dict:
    return {(tuple(a + b for a, b in zip(m, shift)), S): coef * c for (m, S), c in elem.terms.items()}


def groebner(generators: Iterable[PolyForm], nvars: int | None = None, pair_limit: int = 200000) -> GroebnerBasis:
    """Buchberger with the product (ideal case only) and chain criteria."""
    gens = [g for g in generators if g]
    if nvars is None:
        if not gens:
            raise ValueError("cannot infer the variable count from no generators")
        nvars = gens[0].nvars
    qs = {q for g in gens for q in g.form_degrees()}
    if len(qs) > 1:
        raise ValueError("generators mix form degrees")
    q = qs.pop() if qs else 0
    ideal = q == 0

    G: list[_Elem] = []
    index: dict = {}
    pairs: list = []
    pending: set = set()

    def add(terms):
        e = _Elem(terms)
        k = len(G)
        G.append(e)
        for i, f in enumerate(G[:-1]):
            if f is None or f.pos != e.pos:
                continue
            if ideal and all(not (x and y) for x, y in zip(f.lm, e.lm)):
                continue
            L = _lcm(f.lm, e.lm)
            heapq.heappush(pairs, ((sum(L),) + tuple(-x for x in L), i, k))
            pending.add((i, k))
        index.setdefault(e.pos, []).append((e.lm, e.tail))

    for g in gens:
        h = _reduce(g.terms, index)
        if h:
            add(h)

    done = 0
    while pairs:
        _, i, j = heapq.heappop(pairs)
        pending.discard((i, j))
        fi, fj = G[i], G[j]
        L = _lcm(fi.lm, fj.lm)
        if any(k not in (i, j) and G[k].pos == fi.pos and _divides(G[k].lm, L)
               and (min(i, k), max(i, k)) not in pending and (min(j, k), max(j, k)) not in pending
               for k in range(len(G))):
            continue
        done += 1
        if done > pair_limit:
            raise GroebnerLimit(f"more than {pair_limit} S-pairs processed; aborting")
        s = _shifted(fi, tuple(a - b for a, b in zip(L, fi.lm)), 1)
        for t, c in _shifted(fj, tuple(a - b for a, b in zip(L, fj.lm)), -1).items():
            v = s.get(t, 0) + c
            if v:
                s[t] = v
            else:
                s.pop(t, None)
        h = _reduce(s, index)
        if h:
            add(h)

    # interreduce: drop elements whose leading term is divisible by another's
    keep = []
    for k, e in enumerate(G):
        redundant = False
        for j, f in enumerate(G):
            if j == k or f.pos != e.pos or not _divides(f.lm, e.lm):
                continue
            if f.lm != e.lm or j < k:
                redundant = True
                break
        if not redundant:
            keep.append(e)
    reduced = []
    for e in keep:
        others: dict = {}
        for f in keep:
            if f is not e:
                others.setdefault(f.pos, []).append((f.lm, f.tail))
        lt = (e.lm, e.pos)
        tail = _reduce({t: c for t, c in e.terms.items() if t != lt}, others)
        tail[lt] = Q(1)
        reduced.append(_Elem(tail))
    return GroebnerBasis(nvars, reduced, q)

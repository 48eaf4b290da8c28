"""Truncated cohomology of both sides and the map induced by P."""
from __future__ import annotations

from dataclasses import dataclass

from .exactla import Echelon, kernel_of_columns, rank_of_columns
from .kaehler import as_sub, omega_truncated
from .polyalg import PolyForm
from .simplicial import SimplicialComplex, increasing_tuples, star
from .sullivan import a_truncated, eval_P_form, family_d

SIDES = ("omega", "sullivan")


class NotStabilized(RuntimeError):
    pass


@dataclass
class TruncatedComplex:
    """Weight-``<= D`` pieces in degrees ``0..q_max+1`` with the images of d.

    ``images[q][i]`` is d of the i-th basis vector of degree q, in the
    coordinates of degree q+1: standard terms on the Omega side, the ambient
    simplex product on the Sullivan side (where ``dims`` are the dimensions of
    the compatible subspaces).
    """

    side: str
    q_max: int
    D: int
    truncations: list
    dims: list
    images: list
    augmentation: dict

    def apply_d(self, q: int, v: dict) -> dict:
        src, tgt = self.truncations[q], self.truncations[q + 1]
        if self.side == "omega":
            return tgt.to_coords(src.from_coords(v).d())
        return tgt.to_coords(family_d(src.to_family(v)))

    def d_squared_is_zero(self) -> bool:
        return all(not self.apply_d(q + 1, v) for q in range(self.q_max) for v in self.images[q])


def truncated_complex(Y, side: str, q_max: int, D: int) -> TruncatedComplex:
    Y = as_sub(Y)
    one = PolyForm.const(len(Y.parent.vertices))
    if side == "omega":
        truncs = [omega_truncated(Y, q, D) for q in range(q_max + 2)]
        vectors = [[{i: 1} for i in range(t.dim)] for t in truncs]
        aug = truncs[0].to_coords(one)
    elif side == "sullivan":
        truncs = [a_truncated(Y, q, D) for q in range(q_max + 2)]
        vectors = [t.basis for t in truncs]
        aug = truncs[0].to_coords(eval_P_form(Y, one))
    else:
        raise ValueError(f"unknown side {side!r}")
    tc = TruncatedComplex(side, q_max, D, truncs, [len(v) for v in vectors], [], aug)
    tc.images = [[tc.apply_d(q, v) for v in vectors[q]] for q in range(q_max + 1)]
    return tc


def truncated_betti(tc: TruncatedComplex) -> list[int]:
    ranks = [rank_of_columns(imgs) for imgs in tc.images]
    return [tc.dims[q] - ranks[q] - (ranks[q - 1] if q else 0) for q in range(tc.q_max + 1)]


def betti_at(Y, side: str, q_max: int, D: int) -> list[int]:
    return truncated_betti(truncated_complex(Y, side, q_max, D))


@dataclass
class BettiReport:
    side: str
    values: dict           # D -> list of ranks
    window: int
    stabilized: list       # per degree
    stable: list           # last value per degree
    D0: list               # per degree: first D of the final constant run

    @property
    def all_stabilized(self) -> bool:
        return all(self.stabilized)

    def to_json(self) -> dict:
        return {"side": self.side, "values": {str(D): v for D, v in self.values.items()},
                "window": self.window, "stabilized": self.stabilized, "betti": self.stable, "D0": self.D0}


def stabilized_betti(Y, side: str, q_max: int, D_min: int, D_max: int, window: int = 2) -> BettiReport:
    if window < 2:
        raise ValueError("window must be at least 2")
    if D_max < D_min:
        raise ValueError("D_max < D_min")
    values = {D: betti_at(Y, side, q_max, D) for D in range(D_min, D_max + 1)}
    Ds = sorted(values)
    stable, flags, D0 = [], [], []
    for q in range(q_max + 1):
        seq = [values[D][q] for D in Ds]
        last = seq[-1]
        k = len(seq) - 1
        while k > 0 and seq[k - 1] == last:
            k -= 1
        stable.append(last)
        flags.append(len(seq) - k >= window)
        D0.append(Ds[k])
    return BettiReport(side, values, window, flags, stable, D0)


def induced_P_on_H(X, q_max: int, D: int) -> list[dict]:
    """Per degree: rank of the map ``H(Omega_D) -> H(A_D)`` induced by P.

    Cocycles are taken from the kernel basis of d; the rank is measured modulo
    the Sullivan coboundaries.  Also records whether P sends Omega
    coboundaries into Sullivan coboundaries.
    """
    X = as_sub(X)
    om = truncated_complex(X, "omega", q_max, D)
    sv = truncated_complex(X, "sullivan", q_max, D)
    out = []
    for q in range(q_max + 1):
        o_trunc = omega_truncated(X, q, D)
        a_trunc = a_truncated(X, q, D)
        cocycles = kernel_of_columns(om.images[q], om.dims[q + 1])
        p_cocycles = [a_trunc.to_coords(eval_P_form(X, o_trunc.from_coords(z))) for z in cocycles]
        coboundaries_a = sv.images[q - 1] if q else []
        ech = Echelon(a_trunc.ambient_dim)
        for v in coboundaries_a:
            ech.add(v)
        rank_b = ech.rank
        well_defined = True
        if q:
            prev = omega_truncated(X, q - 1, D)
            for i in range(prev.dim):
                img = a_trunc.to_coords(eval_P_form(X, prev.element(i).d()))
                if ech.reduce(img):
                    well_defined = False
                    break
        for v in p_cocycles:
            ech.add(v)
        rank = ech.rank - rank_b
        h_omega = len(cocycles) - rank_of_columns(om.images[q - 1]) if q else len(cocycles)
        h_a = truncated_betti(sv)[q]
        out.append({"degree": q, "rank": rank, "h_omega": h_omega, "h_sullivan": h_a,
                    "well_defined": well_defined,
                    "iso": well_defined and rank == h_omega == h_a})
    return out


def _include(tc: TruncatedComplex, big: TruncatedComplex, q: int, v: dict) -> dict:
    src, tgt = tc.truncations[q], big.truncations[q]
    if tc.side == "omega":
        return tgt.to_coords(src.from_coords(v), reduce=False)
    return tgt.to_coords(src.to_family(v))


def inclusion_consistency(Y, side: str, q_max: int, D: int, D2: int) -> dict:
    """Including weight ``<= D`` into weight ``<= D2`` keeps cocycles and coboundaries."""
    if D2 < D:
        raise ValueError("D2 < D")
    small = truncated_complex(Y, side, q_max, D)
    big = truncated_complex(Y, side, q_max, D2)
    failures = []
    for q in range(q_max + 1):
        vectors = ([{i: 1} for i in range(small.dims[q])] if side == "omega"
                   else small.truncations[q].basis)
        cocycles = kernel_of_columns(small.images[q], len(small.truncations[q + 1].basis)
                                     if side == "omega" else small.truncations[q + 1].ambient_dim)
        for z in cocycles:
            v: dict = {}
            for j, c in z.items():
                for i, x in vectors[j].items():
                    v[i] = v.get(i, 0) + c * x
            if big.apply_d(q, _include(small, big, q, {i: x for i, x in v.items() if x})):
                failures.append({"degree": q, "kind": "cocycle"})
                break
        if q < q_max:
            ech = Echelon(big.truncations[q + 1].dim if side == "omega" else big.truncations[q + 1].ambient_dim)
            for w in big.images[q]:
                ech.add(w)
            for w in small.images[q]:
                if ech.reduce(_include(small, big, q + 1, w)):
                    failures.append({"degree": q + 1, "kind": "coboundary"})
                    break
    return {"check": "inclusion_consistency", "side": side, "D": D, "D2": D2, "failures": failures,
            "status": "pass" if not failures else "fail"}


def augmentation_report(Y, side: str, D: int) -> dict:
    """The constant 1 is a cocycle and, when h^0 >= 1, a non-zero class."""
    tc = truncated_complex(Y, side, 0, D)
    closed = not tc.apply_d(0, tc.augmentation)
    return {"side": side, "closed": closed, "nonzero": bool(tc.augmentation),
            "status": "pass" if closed and tc.augmentation else "fail"}


def star_acyclicity_report(X: SimplicialComplex, q_max: int, D_max: int, p_max: int = 2,
                           window: int = 2, D_min: int | None = None) -> dict:
    D_min = q_max + 2 if D_min is None else D_min
    D_min = min(D_min, D_max - window + 1)
    expected = [1] + [0] * q_max
    rows = []
    tuples = [u for p in range(0, p_max + 1) for u in increasing_tuples(X, p)]
    whole_is_star = any(star(X, (v,)).simplices == X.simplices for v in X.vertices)
    if whole_is_star:
        tuples.insert(0, ())
    for u in tuples:
        St = star(X, u)
        if St.is_empty():
            continue
        entry = {"tuple": list(u)}
        ok = True
        for side in ("omega", "sullivan"):
            rep = stabilized_betti(St, side, q_max, D_min, D_max, window)
            entry[side] = rep.stable
            entry[side + "_stabilized"] = rep.all_stabilized
            ok = ok and rep.all_stabilized and rep.stable == expected
        entry["status"] = "pass" if ok else "fail"
        rows.append(entry)
    return {"check": "star_acyclicity", "stars": rows,
            "status": "pass" if all(r["status"] == "pass" for r in rows) else "fail"}

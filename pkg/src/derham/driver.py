"""Command line entry point: runs the checks and writes a JSON report.

Reports hold only deterministic content, so two runs with the same
configuration produce byte-identical files.  Wall-clock timings and the
kernel backend go to the human summary on standard output.
"""
from __future__ import annotations

import argparse
import json
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field

from . import __version__
from ._kernels import BACKEND, RATIONAL_BACKEND
from .cech import certify_row_exactness, check_double_complex
from .cohomology import induced_P_on_H, stabilized_betti, star_acyclicity_report
from .corpus import NAMES, builtin, corpus
from .exactla import RankDeficient
from .kaehler import (omega_presentation, omega_restrict, partition_sum_is_one, verify_extres,
                      verify_presentation_deg0, verify_tv_annihilation)
from .polyalg import PolyForm
from .simplicial import ComplexError, SimplicialComplex, build_complex, parse_complex, simplicial_betti, star, subcomplex, whole
from .sullivan import a_restrict, eval_P_form, is_zero_family

SCHEMA = "derham-report/1"
STATUSES = ("pass", "fail", "not-stabilized", "skipped")
COMMANDS = ("betti", "verify-quasi-iso", "verify-lemmas", "gomez")


@dataclass
class RunConfig:
    command: str
    input: str | None = None
    q_max: int = 2
    d_max: int = 8
    p_max: int = 2
    window: int = 2
    seed: int = 0
    tv_trials: int = 100
    extres_trials: int = 50
    d_cech: int = 4
    d_lemma: int = 4
    side: str = "all"
    jobs: int = 1
    out: str | None = None

    def validate(self):
        if self.command not in COMMANDS:
            raise ValueError(f"unknown command {self.command!r}")
        if self.q_max < 0:
            raise ValueError("q_max must be >= 0")
        if self.d_max < self.q_max:
            raise ValueError("d_max must be >= q_max")
        if self.window < 2:
            raise ValueError("window must be >= 2")
        if self.p_max < -1:
            raise ValueError("p_max must be >= -1")
        if self.side not in ("omega", "sullivan", "simplicial", "all"):
            raise ValueError(f"unknown side {self.side!r}")

    def echo(self) -> dict:
        """The part of the configuration that determines the report."""
        d = asdict(self)
        for key in ("out", "jobs"):
            d.pop(key)
        return d


@dataclass
class Check:
    name: str
    complex: str
    status: str
    data: dict = field(default_factory=dict)
    seconds: float = 0.0

    def to_json(self) -> dict:
        return {"name": self.name, "complex": self.complex, "status": self.status, "data": self.data}


def _status(ok: bool) -> str:
    return "pass" if ok else "fail"


def load_complexes(source: str | None) -> list[SimplicialComplex]:
    """A built-in name, a JSON file holding one complex or a list, or the whole corpus."""
    if source is None:
        return corpus()
    if source in NAMES:
        return [builtin(source)]
    try:
        with open(source) as fh:
            text = fh.read()
    except OSError as exc:
        raise ComplexError(f"{source}: {exc.strerror}; not a file or a built-in ({', '.join(NAMES)})") from None
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ComplexError(f"{source}: line {exc.lineno} column {exc.colno}: {exc.msg}") from None
    items = data if isinstance(data, list) else [data]
    out = []
    for k, item in enumerate(items):
        try:
            out.append(parse_complex(item))
        except ComplexError as exc:
            raise ComplexError(f"{source}: complex {k}: {exc}") from None
    return out


# -- individual checks -------------------------------------------------------

def _timed(fn, *args) -> Check:
    t0 = time.perf_counter()
    check = fn(*args)
    check.seconds = time.perf_counter() - t0
    return check


def betti_checks(X: SimplicialComplex, cfg: RunConfig) -> list[Check]:
    sides = ("omega", "sullivan", "simplicial") if cfg.side == "all" else (cfg.side,)
    checks = []
    reports = {}
    for side in sides:
        t0 = time.perf_counter()
        if side == "simplicial":
            values = simplicial_betti(X, cfg.q_max)
            chk = Check("betti/simplicial", X.name, "pass", {"betti": values})
        else:
            rep = stabilized_betti(X, side, cfg.q_max, 0, cfg.d_max, cfg.window)
            reports[side] = rep
            chk = Check(f"betti/{side}", X.name, "pass" if rep.all_stabilized else "not-stabilized",
                        rep.to_json())
        chk.seconds = time.perf_counter() - t0
        checks.append(chk)
    if cfg.side == "all":
        oracle = checks[-1].data["betti"]
        data = {"simplicial": oracle, "D0": {s: r.D0 for s, r in reports.items()}}
        if not all(r.all_stabilized for r in reports.values()):
            status = "not-stabilized"
        else:
            status = _status(all(r.stable == oracle for r in reports.values()))
        checks.append(Check("betti/agreement", X.name, status, data))
    return checks


def quasi_iso_checks(X: SimplicialComplex, cfg: RunConfig) -> list[Check]:
    checks = betti_checks(X, RunConfig(**{**cfg.echo(), "command": "betti", "side": "all"}))
    agreement = checks[-1]
    t0 = time.perf_counter()
    rows = induced_P_on_H(X, cfg.q_max, cfg.d_max)
    oracle = agreement.data["simplicial"]
    if agreement.status == "not-stabilized":
        status = "not-stabilized"
    else:
        status = _status(all(r["iso"] and r["rank"] == oracle[r["degree"]] for r in rows))
    checks.append(Check("induced_P", X.name, status, {"D": cfg.d_max, "degrees": rows},
                        time.perf_counter() - t0))
    t0 = time.perf_counter()
    rep = star_acyclicity_report(X, cfg.q_max, cfg.d_max, cfg.p_max, cfg.window)
    checks.append(Check("star_acyclicity", X.name, rep["status"], rep, time.perf_counter() - t0))
    checks += row_exactness_checks(X, cfg)
    return checks


def row_exactness_checks(X: SimplicialComplex, cfg: RunConfig) -> list[Check]:
    checks = []
    for side in ("omega", "sullivan"):
        for q in range(cfg.q_max + 1):
            t0 = time.perf_counter()
            rep = certify_row_exactness(X, side, q, cfg.d_cech, cfg.p_max)
            checks.append(Check(f"row_exactness/{side}/q{q}", X.name, rep["status"], rep,
                                time.perf_counter() - t0))
    return checks


def lemma_subcomplexes(X: SimplicialComplex) -> list:
    """X itself followed by the vertex stars."""
    out = [("X", whole(X))]
    out += [(f"St({v})", star(X, (v,))) for v in X.vertices]
    return out


def restriction_targets(X: SimplicialComplex) -> list:
    """Vertex stars, edges and vertices of X, as (label, subcomplex)."""
    out = [(f"St({v})", star(X, (v,))) for v in X.vertices]
    out += [("-".join(e), subcomplex(X, [e])) for e in X.simplices_of_dim(1)]
    out += [(v, subcomplex(X, [(v,)])) for v in X.vertices]
    return out


def surjectivity_check(X: SimplicialComplex, q_max: int, D_max: int) -> Check:
    failures = []
    count = 0
    for label, Y in restriction_targets(X):
        for q in range(q_max + 1):
            for D in range(q, D_max + 1):
                for side, fn in (("omega", omega_restrict), ("sullivan", a_restrict)):
                    count += 1
                    try:
                        fn(X, Y, q, D, check=True)
                    except RankDeficient:
                        failures.append({"target": label, "side": side, "q": q, "D": D})
    return Check("restriction_surjective", X.name, _status(not failures),
                 {"D_max": D_max, "q_max": q_max, "maps": count, "failures": failures})


def lemma_checks(X: SimplicialComplex, cfg: RunConfig) -> list[Check]:
    checks = [_timed(lambda: Check("partition_of_unity", X.name, _status(partition_sum_is_one(X))))]
    D = cfg.d_lemma
    for label, Y in lemma_subcomplexes(X):
        t0 = time.perf_counter()
        rows = [verify_tv_annihilation(X, Y, v, cfg.tv_trials, D, tuple(range(cfg.q_max + 1)), cfg.seed)
                for v in X.vertices]
        checks.append(Check(f"tv_annihilation/{label}", X.name,
                            _status(all(r["status"] == "pass" for r in rows)),
                            {"D": D, "vertices": rows}, time.perf_counter() - t0))
        t0 = time.perf_counter()
        rows = [verify_extres(X, Y, q, D, cfg.extres_trials, cfg.seed) for q in range(cfg.q_max + 1)]
        checks.append(Check(f"extres/{label}", X.name, _status(all(r["status"] == "pass" for r in rows)),
                            {"degrees": rows}, time.perf_counter() - t0))
    t0 = time.perf_counter()
    rep = verify_presentation_deg0(X, min(6, cfg.d_max))
    checks.append(Check("presentation_deg0", X.name, rep["status"], rep, time.perf_counter() - t0))
    checks.append(_timed(surjectivity_check, X, cfg.q_max, min(6, cfg.d_max)))
    for side in ("omega", "sullivan"):
        for q in range(cfg.q_max + 1):
            t0 = time.perf_counter()
            rep = check_double_complex(X, side, q, cfg.d_cech, cfg.p_max)
            checks.append(Check(f"double_complex/{side}/q{q}", X.name, rep["status"], rep,
                                time.perf_counter() - t0))
    checks += row_exactness_checks(X, cfg)
    return checks


def gomez_check() -> Check:
    """t1^2 t2^2 dt3 vanishes in the Kähler forms of the triangle boundary.

    Certified through the two steps: d(t1 t2 t3) = 0, then multiplying by
    t1 t2 leaves t1^2 t2^2 dt3 plus terms divisible by t1 t2 t3.
    """
    X = build_complex([["1", "2"], ["1", "3"], ["2", "3"]], ["1", "2", "3"], "triangle-boundary")
    pres = omega_presentation(X)
    n = 3
    t = [PolyForm.var(n, i) for i in range(n)]
    dt = [PolyForm.dvar(n, i) for i in range(n)]
    prod = t[0] * t[1] * t[2]
    target = t[0] * t[0] * t[1] * t[1] * dt[2]
    step1 = prod.d()
    step2 = t[0] * t[1] * step1
    leftover = step2 - target
    certs = {
        "product_vanishes": pres.nf(prod).is_zero(),
        "d_of_product_vanishes": pres.nf(step1).is_zero(),
        "multiplied_identity_vanishes": pres.nf(step2).is_zero(),
        "leftover_in_ideal": pres.nf(leftover).is_zero()
        and all(m[0] >= 1 and m[1] >= 1 and m[2] >= 1 for m, _ in leftover.terms),
        "target_vanishes": pres.nf(target).is_zero(),
        "P_image_is_zero": is_zero_family(eval_P_form(X, target)),
        "control_degree0_nonzero": not pres.nf(t[0] * t[0] * t[1] * t[1]).is_zero(),
    }
    data = {"complex": X.to_json(), "form": target.to_str(list(X.vertices)),
            "expansion": step2.to_str(list(X.vertices)), "certificates": certs}
    return Check("gomez", X.name, _status(all(certs.values())), data)


# -- commands ------------------------------------------------------------------

_PER_COMPLEX = {
    "betti": betti_checks,
    "verify-quasi-iso": quasi_iso_checks,
    "verify-lemmas": lemma_checks,
}


def _run_one(args):
    command, X, cfg = args
    return _PER_COMPLEX[command](X, cfg)


def run(cfg: RunConfig) -> tuple[dict, list[Check]]:
    cfg.validate()
    if cfg.command == "gomez":
        complexes = []
        checks = [_timed(gomez_check)]
    else:
        complexes = load_complexes(cfg.input)
        jobs = [(cfg.command, X, cfg) for X in complexes]
        if cfg.jobs > 1 and len(jobs) > 1:
            with ProcessPoolExecutor(max_workers=cfg.jobs) as pool:
                results = list(pool.map(_run_one, jobs))
        else:
            results = [_run_one(j) for j in jobs]
        checks = [c for r in results for c in r]
    failed = any(c.status == "fail" for c in checks)
    if failed:
        overall = "fail"
    elif any(c.status == "not-stabilized" for c in checks):
        overall = "not-stabilized"
    else:
        overall = "pass"
    report = {
        "schema": SCHEMA,
        "engine": {"name": "derham", "version": __version__},
        "command": cfg.command,
        "config": cfg.echo(),
        "complexes": [X.to_json() for X in complexes],
        "checks": [c.to_json() for c in checks],
        "status": overall,
    }
    return report, checks


def dumps(report: dict) -> str:
    return json.dumps(report, indent=2, sort_keys=False) + "\n"


def summarize(checks: list[Check], report: dict, out=None):
    out = sys.stdout if out is None else out
    width = max((len(c.name) for c in checks), default=0)
    for c in checks:
        print(f"[{c.status:>14}] {c.complex:<22} {c.name:<{width}}  {c.seconds:8.2f} s", file=out)
    total = sum(c.seconds for c in checks)
    print(f"{report['command']}: {report['status']}  ({len(checks)} checks, {total:.2f} s, "
          f"kernels={BACKEND}, rationals={RATIONAL_BACKEND})", file=out)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="derham", description="Compare Kähler and Sullivan forms on simplicial complexes, exactly.")
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("--input", help="complex JSON file or built-in name; default: whole corpus")
    p.add_argument("--q-max", type=int, default=2)
    p.add_argument("--d-max", type=int, default=8, help="largest weight for Betti stabilization")
    p.add_argument("--p-max", type=int, default=2)
    p.add_argument("--window", type=int, default=2, help="constant run length that counts as stable")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--tv-trials", type=int, default=100)
    p.add_argument("--extres-trials", type=int, default=50)
    p.add_argument("--d-cech", type=int, default=4, help="weight for the Čech homotopy certificates")
    p.add_argument("--d-lemma", type=int, default=4, help="weight for the randomized lemma checks")
    p.add_argument("--side", choices=("omega", "sullivan", "simplicial", "all"), default="all")
    p.add_argument("--jobs", type=int, default=1, help="worker processes, one complex each")
    p.add_argument("--out", help="write the JSON report here")
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    cfg = RunConfig(**{k: v for k, v in vars(args).items()})
    try:
        report, checks = run(cfg)
    except (ComplexError, ValueError, KeyError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) else str(exc)
        print(f"derham: error: {msg}", file=sys.stderr)
        return 2
    text = dumps(report)
    if cfg.out:
        with open(cfg.out, "w") as fh:
            fh.write(text)
    summarize(checks, report)
    return 1 if report["status"] == "fail" else 0


if __name__ == "__main__":
    sys.exit(main())

"""Compare the compiled kernels with the pure-Python fallback.

Two measurements:

* micro: ``reduce_terms`` from both implementations on the same inputs, in
  one process, so only the kernel differs;
* end to end: a row-exactness certificate on the tetrahedron boundary, run
  in a subprocess with and without ``DERHAM_PURE=1``.

Usage: python3 benchmarks/bench_kernels.py [--repeat N]
"""
import argparse
import os
import subprocess
import sys
import time

WORKLOAD = """
import time
from derham import _kernels
from derham.cech import certify_row_exactness
from derham.corpus import builtin
X = builtin("tetrahedron-boundary")
t0 = time.perf_counter()
rep = certify_row_exactness(X, "omega", 1, 4, 2)
print(_kernels.BACKEND, _kernels.RATIONAL_BACKEND, rep["status"], time.perf_counter() - t0)
"""


def micro(repeat):
    from derham import _nf_py
    from derham.corpus import builtin
    from derham.kaehler import omega_presentation, omega_truncated

    try:
        from derham import _ckernels
    except ImportError:
        print("micro: compiled kernels not built, skipping")
        return
    X = builtin("tetrahedron-boundary")
    pres = omega_presentation(X)
    gb = pres.module_gb(1)
    # unreduced products of basis elements give realistic reduction work
    basis = [omega_truncated(X, 1, 3).element(i) for i in range(omega_truncated(X, 1, 3).dim)]
    funcs = [omega_truncated(X, 0, 3).element(i) for i in range(omega_truncated(X, 0, 3).dim)]
    inputs = [dict((f * g).terms) for f in funcs for g in basis]
    inputs = [f for f in inputs if f]
    results = {}
    for name, fn in (("python", _nf_py.reduce_terms), ("cython", _ckernels.reduce_terms)):
        best = float("inf")
        for _ in range(repeat):
            t0 = time.perf_counter()
            out = [fn(f, gb._index) for f in inputs]
            best = min(best, time.perf_counter() - t0)
        results[name] = (best, out)
    same = results["python"][1] == results["cython"][1]
    print(f"micro reduce_terms on {len(inputs)} products (best of {repeat}):")
    for name, (t, _) in results.items():
        print(f"  {name:7s} {t:8.3f} s")
    print(f"  speedup {results['python'][0] / results['cython'][0]:.1f}x, identical output: {same}")



def end_to_end():
    print("end to end, row exactness on the tetrahedron boundary (q=1, D=4):")
    rows = []
    for label, env in (("default", {}), ("DERHAM_PURE=1", {"DERHAM_PURE": "1"})):
        proc = subprocess.run([sys.executable, "-c", WORKLOAD], env={**os.environ, **env},
                              capture_output=True, text=True, check=True)
        backend, rationals, status, secs = proc.stdout.split()
        rows.append(float(secs))
        print(f"  {label:14s} kernels={backend:7s} rationals={rationals:9s} {status}  {float(secs):8.2f} s")
    print(f"  speedup {rows[1] / rows[0]:.1f}x")


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    micro(args.repeat)
    end_to_end()


if __name__ == "__main__":
    main()

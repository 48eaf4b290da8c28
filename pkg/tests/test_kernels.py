"""The compiled and pure kernels must agree term for term."""
import importlib

import pytest

from derham import _elim_py, _kernels, _nf_py
from derham.corpus import builtin
from derham.kaehler import omega_presentation, omega_truncated

ckernels = pytest.importorskip("derham._ckernels")


def test_backend_recorded():
    assert _kernels.BACKEND in ("cython", "python")
    assert _kernels.RATIONAL_BACKEND in ("gmpy2", "fractions")


def test_reduce_terms_parity():
    X = builtin("tetrahedron-boundary")
    gb = omega_presentation(X).module_gb(1)
    src = omega_truncated(X, 1, 3)
    funcs = omega_truncated(X, 0, 2)
    for i in range(funcs.dim):
        for j in range(0, src.dim, 3):
            f = dict((funcs.element(i) * src.element(j)).terms)
            assert ckernels.reduce_terms(f, gb._index) == _nf_py.reduce_terms(f, gb._index)


def test_elimination_parity():
    rows = [{0: 4, 2: -6, 3: 2}, {0: 6, 1: 3, 3: 9}, {1: -2, 2: 5}]
    for mod in (_elim_py, ckernels):
        assert mod.primitive({1: -4, 3: 6}) == {1: 2, 3: -3}
    piv = _elim_py.primitive(rows[0])
    assert ckernels.eliminate(rows[1], piv, 0) == _elim_py.eliminate(rows[1], piv, 0)
    pivots = {0: piv, 1: _elim_py.primitive(rows[2])}
    assert ckernels.reduce_against(dict(rows[1]), pivots) == _elim_py.reduce_against(dict(rows[1]), pivots)


def test_pure_switch(monkeypatch):
    monkeypatch.setenv("DERHAM_PURE", "1")
    mod = importlib.reload(_kernels)
    try:
        assert mod.BACKEND == "python" and mod.RATIONAL_BACKEND == "fractions"
    finally:
        monkeypatch.delenv("DERHAM_PURE")
        importlib.reload(_kernels)


def test_pure_and_compiled_reports_identical(tmp_path):
    import os
    import subprocess
    import sys

    outs = []
    for k, env in enumerate(({}, {"DERHAM_PURE": "1"})):
        out = tmp_path / f"r{k}.json"
        subprocess.run([sys.executable, "-m", "derham.driver", "betti", "--d-max", "6", "--out", str(out)],
                       env={**os.environ, **env}, check=True, capture_output=True)
        outs.append(out.read_bytes())
    assert outs[0] == outs[1]

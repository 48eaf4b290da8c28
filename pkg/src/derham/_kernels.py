"""Backend selection, done once at import.

* Elimination and normal-form kernels: the compiled ``_ckernels`` extension
  when it has been built, else the pure-Python ``_elim_py``/``_nf_py``.
* Rational coefficients: ``gmpy2.mpq`` when available, else ``Fraction``.

Setting ``DERHAM_PURE=1`` forces the pure-Python kernels and ``Fraction``.
"""
import os
from fractions import Fraction

_pure = os.environ.get("DERHAM_PURE", "") not in ("", "0")

Rational = Fraction
NUMBER = (int, Fraction)
RATIONAL_BACKEND = "fractions"
BACKEND = "python"

if not _pure:
    try:
        import gmpy2

        Rational = gmpy2.mpq
        NUMBER = (int, Fraction, type(gmpy2.mpq()), type(gmpy2.mpz()))
        RATIONAL_BACKEND = "gmpy2"
    except ImportError:  # pragma: no cover
        pass

if not _pure:
    try:
        from ._ckernels import eliminate, primitive, reduce_against, reduce_terms
        BACKEND = "cython"
    except ImportError:  # pragma: no cover - depends on the build
        pass
if BACKEND == "python":
    from ._elim_py import eliminate, primitive, reduce_against
    from ._nf_py import reduce_terms

__all__ = ["eliminate", "primitive", "reduce_against", "reduce_terms",
           "Rational", "NUMBER", "BACKEND", "RATIONAL_BACKEND"]

"""Hot inner loops, backed by the compiled extension when it is importable.

The compiled module ``mcinv._ckernels`` is built from Cython at install time.
If it is missing (no compiler, or a source checkout that was never built) the
pure-Python module ``mcinv._kernels_py`` is used instead.  Both expose the
same five functions; see ``_kernels_py`` for the data layout.

``use_backend`` switches the active implementation for the whole process and
exists for benchmarks and for running the test suite against both backends.
"""

from __future__ import annotations

from types import ModuleType

from . import _kernels_py

try:
    from . import _ckernels
except ImportError:  # pragma: no cover - depends on the build
    _ckernels = None

__all__ = [
    "available_backends",
    "backend",
    "use_backend",
    "mono_mul",
    "poly_mul",
    "apply_derivation",
    "rank_int",
    "rref",
]

_active: ModuleType = _ckernels if _ckernels is not None else _kernels_py


def available_backends() -> list[str]:
    out = ["python"]
    if _ckernels is not None:
        out.insert(0, "compiled")
    return out


def backend() -> str:
    return _active.BACKEND


def use_backend(name: str) -> str:
    """Select ``"compiled"`` or ``"python"``; returns the previous backend name."""
    global _active
    previous = _active.BACKEND
    if name == "python":
        _active = _kernels_py
    elif name == "compiled":
        if _ckernels is None:
            raise RuntimeError("compiled kernels are not built; run `pip install -e .`")
        _active = _ckernels
    else:
        raise ValueError(f"unknown kernel backend {name!r}")
    return previous


def mono_mul(a, b):
    return _active.mono_mul(a, b)


def poly_mul(a, b):
    return _active.poly_mul(a, b)


def apply_derivation(terms, images):
    return _active.apply_derivation(terms, images)


def rank_int(rows):
    return _active.rank_int(rows)


def rref(rows):
    return _active.rref(rows)

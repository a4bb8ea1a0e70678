"""Dense complex matrix kernels shared by the rest of the package.

Matrices are plain ``numpy.ndarray`` objects of dtype ``complex128``.  No
function here mutates its arguments; every result is a fresh array.
"""

from __future__ import annotations

import enum
import os
from dataclasses import dataclass, fields, replace

import numpy as np

from .errors import ShapeError, Singular

__all__ = [
    "NormKind",
    "Tolerances",
    "ShapeError",
    "Singular",
    "as_matrix",
    "identity",
    "add",
    "sub",
    "mul",
    "scale",
    "conjugate",
    "arith",
    "norm",
    "rank",
    "inverse",
    "matpow",
    "nilpotency_index",
    "is_zero",
    "scaled_residual",
]


class NormKind(str, enum.Enum):
    """Submultiplicative matrix norms.

    ``ENTRYWISE_L1`` (sum of entry moduli) is the default everywhere: it is
    the norm under which the 4x4 commutative-perturbation example evaluates
    to 13/12 with bound 4.  That choice is inferred from the worked
    numbers, the source never names its norm.
    """

    ENTRYWISE_L1 = "entrywise-l1"
    OPERATOR_1 = "operator-1"
    OPERATOR_INF = "operator-inf"
    FROBENIUS = "frobenius"

    @classmethod
    def parse(cls, value: "NormKind | str") -> "NormKind":
        if isinstance(value, cls):
            return value
        try:
            return cls(str(value).lower())
        except ValueError:
            names = ", ".join(k.value for k in cls)
            raise ValueError(f"unknown norm {value!r}; expected one of {names}") from None


@dataclass(frozen=True)
class Tolerances:
    """Relative thresholds used for rank decisions, zero tests and equalities.

    ``GENINV_TOL`` in the environment overrides the defaults, either as a
    single float applied to every field or as ``key=value`` pairs separated
    by commas, e.g. ``GENINV_TOL="rank_rel=1e-11,zero_rel=1e-8"``.
    """

    rank_rel: float = 1e-10
    zero_rel: float = 1e-9
    equality_rel: float = 1e-9

    def __post_init__(self):
        for f in fields(self):
            v = getattr(self, f.name)
            if not (0.0 < v < 1.0):
                raise ValueError(f"{f.name} must lie in (0, 1), got {v!r}")

    @classmethod
    def from_env(cls, var: str = "GENINV_TOL") -> "Tolerances":
        raw = os.environ.get(var, "").strip()
        if not raw:
            return cls()
        if "=" not in raw:
            v = float(raw)
            return cls(v, v, v)
        kwargs = {}
        known = {f.name for f in fields(cls)}
        for item in raw.split(","):
            key, _, val = item.partition("=")
            key = key.strip()
            if key not in known:
                raise ValueError(f"{var}: unknown tolerance {key!r}")
            kwargs[key] = float(val)
        return replace(cls(), **kwargs)


DEFAULT_TOL = Tolerances()


def as_matrix(m) -> np.ndarray:
    """Coerce ``m`` to a finite 2-D complex array (always a copy)."""
    arr = np.array(m, dtype=np.complex128)
    if arr.ndim == 0:
        arr = arr.reshape(1, 1)
    if arr.ndim != 2:
        raise ShapeError(f"expected a 2-D matrix, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValueError("matrix has non-finite entries")
    return arr


def _square(m: np.ndarray) -> int:
    if m.shape[0] != m.shape[1]:
        raise ShapeError(f"square matrix required, got shape {m.shape}")
    return m.shape[0]


def identity(n: int) -> np.ndarray:
    return np.eye(n, dtype=np.complex128)


def add(x, y) -> np.ndarray:
    x, y = as_matrix(x), as_matrix(y)
    if x.shape != y.shape:
        raise ShapeError(f"cannot add shapes {x.shape} and {y.shape}")
    return x + y


def sub(x, y) -> np.ndarray:
    x, y = as_matrix(x), as_matrix(y)
    if x.shape != y.shape:
        raise ShapeError(f"cannot subtract shapes {x.shape} and {y.shape}")
    return x - y


def mul(*ms) -> np.ndarray:
    """Left-to-right matrix product of one or more operands."""
    if not ms:
        raise ShapeError("mul needs at least one operand")
    out = as_matrix(ms[0])
    for m in ms[1:]:
        m = as_matrix(m)
        if out.shape[1] != m.shape[0]:
            raise ShapeError(f"cannot multiply shapes {out.shape} and {m.shape}")
        out = out @ m
    return out


def scale(c: complex, m) -> np.ndarray:
    return complex(c) * as_matrix(m)


def conjugate(m, s, tol: Tolerances = DEFAULT_TOL) -> np.ndarray:
    """Return ``s @ m @ inv(s)``; raises :class:`Singular` for singular ``s``."""
    m, s = as_matrix(m), as_matrix(s)
    n = _square(m)
    if s.shape != (n, n):
        raise ShapeError(f"similarity of shape {s.shape} does not match {m.shape}")
    return s @ m @ inverse(s, tol)


def arith(kind: str, *operands, tol: Tolerances = DEFAULT_TOL) -> np.ndarray:
    """Dispatch by name: ``add``, ``sub``, ``mul``, ``scale`` or ``conjugate``."""
    ops = {"add": add, "sub": sub, "mul": mul, "scale": scale}
    if kind == "conjugate":
        return conjugate(*operands, tol=tol)
    try:
        return ops[kind](*operands)
    except KeyError:
        raise ValueError(f"unknown arithmetic kind {kind!r}") from None


def norm(m, kind: NormKind | str = NormKind.ENTRYWISE_L1) -> float:
    m = np.asarray(m)
    kind = NormKind.parse(kind)
    if m.size == 0:
        return 0.0
    a = np.abs(m)
    if kind is NormKind.ENTRYWISE_L1:
        return float(a.sum())
    if kind is NormKind.OPERATOR_1:
        return float(a.sum(axis=0).max())
    if kind is NormKind.OPERATOR_INF:
        return float(a.sum(axis=1).max())
    return float(np.sqrt((a * a).sum()))


def _singular_values(m: np.ndarray) -> np.ndarray:
    if m.size == 0:
        return np.zeros(0)
    return np.linalg.svd(m, compute_uv=False)


def rank(m, tol: Tolerances = DEFAULT_TOL, scale: float | None = None) -> int:
    """Numerical rank.

    A singular value counts when it exceeds ``rank_rel * max(rows, cols) *
    scale``; ``scale`` defaults to the spectral norm of ``m``.  Callers that
    factor residual pieces of a larger matrix pass that matrix's norm so the
    threshold stays absolute across the recursion.
    """
    m = np.asarray(m)
    sv = _singular_values(m)
    if sv.size == 0:
        return 0
    ref = sv[0] if scale is None else scale
    if ref == 0.0:
        return 0
    return int(np.count_nonzero(sv > tol.rank_rel * max(m.shape) * ref))


def inverse(m, tol: Tolerances = DEFAULT_TOL) -> np.ndarray:
    m = as_matrix(m)
    n = _square(m)
    if n == 0:
        return m.copy()
    if rank(m, tol) < n:
        raise Singular(f"{n}x{n} matrix is numerically singular")
    return np.linalg.inv(m)


def matpow(m: np.ndarray, k: int) -> np.ndarray:
    return np.linalg.matrix_power(m, k)


def nilpotency_index(m, tol: Tolerances = DEFAULT_TOL) -> int | None:
    """Smallest ``k`` with ``m**k`` numerically zero, or ``None``.

    ``m**k`` is zero when its entrywise-l1 norm is at most
    ``zero_rel * max(1, |m|)**k``.  The zero matrix has index 1 and the empty
    0x0 matrix index 0.
    """
    m = as_matrix(m)
    n = _square(m)
    if n == 0:
        return 0
    base = max(1.0, norm(m))
    p = m
    for k in range(1, n + 1):
        if norm(p) <= tol.zero_rel * base**k:
            return k
        p = p @ m
    return None


def is_zero(m, ref: float = 1.0, tol: Tolerances = DEFAULT_TOL) -> bool:
    return norm(m) <= tol.zero_rel * max(ref, 1e-300)


def scaled_residual(r, ref: float, kind: NormKind | str = NormKind.ENTRYWISE_L1) -> float:
    """``|r| / ref``, where ``ref`` is the product of the factor norms that built ``r``."""
    num = norm(r, kind)
    if num == 0.0:
        return 0.0
    return num / (ref + np.finfo(float).tiny)

"""Drazin, group and corner inverses of square complex matrices.

For finite matrices every quasinilpotent element is nilpotent, so the
generalized Drazin inverse ``a^d`` coincides with the ordinary Drazin inverse
``a^D``.  This module computes the latter and the rest of the package uses it
wherever ``a^d`` is meant.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import CornerSingular, NotGroupInvertible, NumericFailure, PreconditionViolated, Singular
from .matcore import DEFAULT_TOL, Tolerances, as_matrix, identity, inverse, norm, rank, _square

__all__ = [
    "DrazinResult",
    "SplitCheck",
    "drazin",
    "dinv",
    "spectral_idempotent",
    "drazin_residuals",
    "drazin_via_powers",
    "index_by_rank",
    "group_inverse",
    "corner_inverse",
    "split_check",
    "cline_check",
    "is_idempotent",
    "close",
]

# Identity residuals above equality_rel * _ACCEPT_FACTOR are a NumericFailure.
_ACCEPT_FACTOR = 1e3


@dataclass(frozen=True)
class DrazinResult:
    inverse: np.ndarray
    index: int
    spectral_idempotent: np.ndarray
    core_part: np.ndarray
    nil_part: np.ndarray

    @property
    def group_invertible(self) -> bool:
        return self.index <= 1


def _spectral(m) -> float:
    return float(np.linalg.norm(m, 2)) if m.size else 0.0


def close(x, y, rtol: float) -> bool:
    """Entrywise-l1 closeness relative to ``max(1, |x|, |y|)``."""
    return norm(x - y) <= rtol * max(1.0, norm(x), norm(y))


def is_idempotent(p, tol: Tolerances = DEFAULT_TOL) -> bool:
    p = np.asarray(p)
    return norm(p @ p - p) <= tol.zero_rel * max(1.0, norm(p) ** 2)


def _full_rank_factor(m: np.ndarray, r: int) -> tuple[np.ndarray, np.ndarray]:
    u, s, vh = np.linalg.svd(m)
    return u[:, :r] * s[:r], vh[:r, :]


def _cline(a: np.ndarray, tol: Tolerances, scale: float | None = None) -> tuple[np.ndarray, int]:
    """Drazin inverse and index by repeated full-rank factorization.

    With ``a = B1 C1`` and ``C_j B_j = B_{j+1} C_{j+1}``, stop at the first
    ``k`` where ``C_k B_k`` is nonsingular (a 0x0 block counts); then
    ``a^D = B1..Bk (C_k B_k)^{-(k+1)} C_k..C1`` and ``ind(a) = k``.
    """
    n = a.shape[0]
    ref = float(np.linalg.norm(a, 2)) if n else 0.0
    if scale is not None:
        ref = max(ref, scale)
    if n == 0:
        return a.copy(), 0
    if rank(a, tol, scale=ref) == n:
        return np.linalg.inv(a), 0
    bs, cs = [], []
    m = a
    k = 0
    while True:
        k += 1
        r = rank(m, tol, scale=ref)
        if r == 0:
            return np.zeros_like(a), k
        b, c = _full_rank_factor(m, r)
        bs.append(b)
        cs.append(c)
        m = c @ b
        if rank(m, tol, scale=ref) == r:
            break
    left = bs[0]
    for b in bs[1:]:
        left = left @ b
    right = cs[-1]
    for c in reversed(cs[:-1]):
        right = right @ c
    mid = np.linalg.matrix_power(np.linalg.inv(m), k + 1)
    return left @ mid @ right, k


def drazin_residuals(a, x, index: int, scale: float | None = None) -> dict[str, float]:
    """Relative residuals of the three Drazin identities for candidate ``x``.

    ``scale`` raises the magnitude assumed for ``a``, as in :func:`drazin`.
    """
    a, x = np.asarray(a), np.asarray(x)
    na, nx = max(norm(a), scale or 0.0), norm(x)
    ak = np.linalg.matrix_power(a, index)
    out = {}
    out["ax=xa"] = norm(a @ x - x @ a) / max(na * nx, 1e-300)
    out["xax=x"] = norm(x @ a @ x - x) / max(nx * na * nx, nx, 1e-300)
    out["a^(k+1)x=a^k"] = norm(a @ ak @ x - ak) / max(na ** (index + 1) * nx, na**index, 1e-300)
    return {k: (0.0 if v < 1e-300 else v) for k, v in out.items()}


def drazin(a, tol: Tolerances = DEFAULT_TOL, scale: float | None = None) -> DrazinResult:
    """Drazin inverse together with its index and spectral idempotent.

    Rank decisions are relative to the spectral norm of ``a``, or to
    ``scale`` when that is larger.  Pass the magnitude of the operands when
    ``a`` is a computed product that may be pure roundoff, e.g. ``a^pi b``.

    Raises :class:`NumericFailure` when the computed inverse misses one of
    ``ax = xa``, ``xax = x``, ``a^(k+1) x = a^k`` by more than
    ``1e3 * equality_rel`` (relative).
    """
    a = as_matrix(a)
    n = _square(a)
    x, k = _cline(a, tol, scale)
    res = drazin_residuals(a, x, k, scale)
    worst = max(res.values(), default=0.0)
    if worst > tol.equality_rel * _ACCEPT_FACTOR:
        raise NumericFailure(f"Drazin identities violated, worst relative residual {worst:.3e}")
    ax = a @ x
    api = identity(n) - ax
    return DrazinResult(
        inverse=x,
        index=k,
        spectral_idempotent=api,
        core_part=a @ ax,
        nil_part=a @ api,
    )


def dinv(a, tol: Tolerances = DEFAULT_TOL, scale: float | None = None) -> np.ndarray:
    """Shorthand for ``drazin(a, tol, scale).inverse``."""
    return drazin(a, tol, scale).inverse


def spectral_idempotent(a, tol: Tolerances = DEFAULT_TOL) -> np.ndarray:
    return drazin(a, tol).spectral_idempotent


def _power_rank(m: np.ndarray, k: int, ref: float, tol: Tolerances) -> int:
    # roundoff in a^k scales like |a|^k; genuine core content does not
    own = float(np.linalg.norm(m, 2)) if m.size else 0.0
    return rank(m, tol, scale=max(own, 1e-4 * ref**k))


def index_by_rank(a, tol: Tolerances = DEFAULT_TOL) -> int:
    """Least ``k`` with ``rank(a^k) == rank(a^(k+1))``."""
    a = as_matrix(a)
    n = _square(a)
    ref = _spectral(a)
    prev_rank, p = n, identity(n)
    for k in range(n + 1):
        nxt = p @ a
        r = _power_rank(nxt, k + 1, ref, tol)
        if r == prev_rank:
            return k
        prev_rank, p = r, nxt
    return n


def drazin_via_powers(a, index: int, tol: Tolerances = DEFAULT_TOL) -> np.ndarray:
    """Independent route ``a^D = a^k (a^(2k+1))^+ a^k`` for any ``k >= ind(a)``.

    The pseudo-inverse is restricted to the rank ``r`` of ``a^k`` (measured
    as in :func:`index_by_rank`).  With ``a^k = U S V*`` truncated to rank
    ``r`` the expression collapses to ``U (V* a U)^-1 V*``, which is what is
    evaluated; ``a^(2k+1)`` itself is never formed.
    """
    a = as_matrix(a)
    n = _square(a)
    if index == 0:
        return inverse(a, tol)
    k = max(index, 1)
    ak = np.linalg.matrix_power(a, k)
    r = _power_rank(ak, k, _spectral(a), tol)
    if r == 0:
        return np.zeros_like(a)
    u, _, vh = np.linalg.svd(ak)
    u, vh = u[:, :r], vh[:r]
    return u @ np.linalg.solve(vh @ a @ u, vh)


def group_inverse(a, tol: Tolerances = DEFAULT_TOL) -> np.ndarray:
    res = drazin(a, tol)
    if res.index > 1:
        raise NotGroupInvertible(res.index)
    return res.inverse


def corner_inverse(p, m, tol: Tolerances = DEFAULT_TOL) -> np.ndarray:
    """Inverse of ``p m p`` inside the corner algebra ``pAp``.

    Solved through the invertible completion ``M = pmp + (1 - p)``; the
    result is ``p M^{-1} p`` and satisfies ``y (pmp) = (pmp) y = p``.
    """
    p, m = as_matrix(p), as_matrix(m)
    n = _square(p)
    if m.shape != p.shape:
        raise PreconditionViolated(f"corner operand shape {m.shape} does not match idempotent {p.shape}")
    if not is_idempotent(p, tol):
        raise PreconditionViolated("p is not idempotent", norm(p @ p - p))
    q = identity(n) - p
    completion = p @ m @ p + q
    try:
        minv = inverse(completion, tol)
    except Singular:
        raise CornerSingular("p m p is not invertible in the corner algebra pAp") from None
    return p @ minv @ p


@dataclass(frozen=True)
class SplitCheck:
    holds: bool
    lhs_d: np.ndarray
    rhs: np.ndarray
    lhs_d_complement: np.ndarray
    rhs_complement: np.ndarray


def split_check(e, a, tol: Tolerances = DEFAULT_TOL) -> SplitCheck:
    """Check ``(ea)^D = e a^D`` and ``(a(1-e))^D = a^D (1-e)`` when ``e a (1-e) = 0``."""
    e, a = as_matrix(e), as_matrix(a)
    n = _square(e)
    if not is_idempotent(e, tol):
        raise PreconditionViolated("e is not idempotent", norm(e @ e - e))
    f = identity(n) - e
    off = norm(e @ a @ f) / max(norm(e) * norm(a) * norm(f), 1e-300)
    if off > tol.zero_rel:
        raise PreconditionViolated("e a (1 - e) is not zero", off)
    ad = dinv(a, tol)
    sa = _spectral(a)
    lhs, rhs = dinv(e @ a, tol, _spectral(e) * sa), e @ ad
    lhs_c, rhs_c = dinv(a @ f, tol, sa * _spectral(f)), ad @ f
    holds = close(lhs, rhs, tol.equality_rel) and close(lhs_c, rhs_c, tol.equality_rel)
    return SplitCheck(holds, lhs, rhs, lhs_c, rhs_c)


def cline_check(x, y, tol: Tolerances = DEFAULT_TOL) -> bool:
    """Whether ``(xy)^D = x ((yx)^D)^2 y`` holds numerically."""
    x, y = as_matrix(x), as_matrix(y)
    if x.shape != y.shape:
        raise PreconditionViolated(f"shapes {x.shape} and {y.shape} differ")
    scale = _spectral(x) * _spectral(y)
    lhs = dinv(x @ y, tol, scale)
    yxd = dinv(y @ x, tol, scale)
    rhs = x @ yxd @ yxd @ y
    return close(lhs, rhs, tol.equality_rel)

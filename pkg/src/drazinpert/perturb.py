"""Additive perturbation of the group inverse: hypotheses, formulas, bounds.

Two families of conditions on a pair ``(a, b)`` are handled, both relative
to the Peirce decomposition along ``p = a a^d``:

* orthogonal type ("T2.3"): ``|a^d b a a^d| < 1``, ``a^pi b a^2 = 0`` and
  ``a^pi b a b = 0``.  Then ``a + b`` is block upper triangular and its
  group inverse exists iff ``a^pi (a + b)`` is group invertible.
* commutative type ("T3.2"): ``|a^d b a a^d| < 1``,
  ``a^2 b a^pi = a^pi a b a`` and ``a^pi b^2 a = b a b a^pi``.  Then
  ``a + b`` is block lower triangular and its group inverse exists iff
  ``(a + b) a^pi`` is group invertible.

"C3.4" is the stronger commuting condition ``a^pi b a = a b a^pi``.

All infinite series in the formulas carry a power of a nilpotent factor, so
they are summed exactly up to its nilpotency index.  The scalar bound
series are summed in closed form and reported as ``math.inf`` when their
ratio is not contractive.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import (
    BlockViolation,
    HypothesisFailed,
    NormNotContractive,
    NumericFailure,
    PreconditionViolated,
)
from .geninv import DrazinResult, _spectral, corner_inverse, dinv, drazin, is_idempotent
from .matcore import (
    DEFAULT_TOL,
    NormKind,
    Tolerances,
    as_matrix,
    identity,
    nilpotency_index,
    norm,
    scaled_residual,
)

__all__ = [
    "ConditionReport",
    "BoundBreakdown",
    "PerturbResult",
    "check_t23",
    "check_t32",
    "check_c34",
    "sum_group_t23",
    "sum_group_t32",
    "lemma21_block_drazin",
    "qnil_plus_sum_yangliu",
    "lemma31_qnil_sum",
    "neumann_corner",
    "bound_t23",
    "bound_c24",
    "bound_t32",
    "bound_c33",
    "bound_c34",
]

MODES = ("block", "literal")

# An extra series term beyond the nilpotency index must be this small
# relative to the partial sum.
_SERIES_EXTRA_REL = 1e-6


@dataclass
class ConditionReport:
    """Hypotheses of one theorem evaluated on a concrete pair.

    ``residuals`` are scaled by the product of the factor norms and are what
    ``all_hold`` is decided on; ``raw`` holds the same residuals unscaled.
    """

    theorem: str
    norm_value: float
    norm_ok: bool
    residuals: dict[str, float]
    all_hold: bool
    raw: dict[str, float] = field(default_factory=dict)
    aux: dict[str, float] = field(default_factory=dict)
    norm_kind: NormKind = NormKind.ENTRYWISE_L1

    def to_dict(self) -> dict:
        return {
            "theorem": self.theorem,
            "norm_kind": self.norm_kind.value,
            "norm_value": self.norm_value,
            "norm_ok": self.norm_ok,
            "residuals": dict(self.residuals),
            "raw": dict(self.raw),
            "aux": dict(self.aux),
            "all_hold": self.all_hold,
        }


@dataclass
class BoundBreakdown:
    terms: list[tuple[str, float]]
    total: float
    norm_kind: NormKind
    scalar_ratios: dict[str, float] = field(default_factory=dict)

    @property
    def divergent(self) -> bool:
        return math.isinf(self.total)

    def values(self) -> list[float]:
        return [v for _, v in self.terms]

    def to_dict(self) -> dict:
        return {
            "terms": [[k, _jsonable(v)] for k, v in self.terms],
            "total": _jsonable(self.total),
            "norm_kind": self.norm_kind.value,
            "scalar_ratios": {k: _jsonable(v) for k, v in self.scalar_ratios.items()},
        }


def _jsonable(v: float):
    return "Divergent" if math.isinf(v) else v


@dataclass
class PerturbResult:
    """Group inverse of ``a + b`` assembled from its block pieces.

    ``group_inv`` is ``None`` when ``exists`` is false.  ``tail_index`` is
    the Drazin index of the tail element whose group invertibility decides
    existence; ``sum_index`` is the directly measured index of ``a + b``.
    """

    group_inv: np.ndarray | None
    exists: bool
    corner_term: np.ndarray
    z_term: np.ndarray | None
    tail_term: np.ndarray
    mode: str
    tail_index: int
    sum_index: int

    @property
    def equivalence_holds(self) -> bool:
        return self.exists == (self.sum_index <= 1)


class _Parts:
    """Drazin data of ``a`` and ``b`` shared by checks, formulas and bounds."""

    def __init__(self, a, b, tol: Tolerances):
        self.a = as_matrix(a)
        self.b = as_matrix(b)
        if self.a.shape != self.b.shape or self.a.shape[0] != self.a.shape[1]:
            raise PreconditionViolated(f"need square matrices of equal size, got {self.a.shape} and {self.b.shape}")
        self.n = self.a.shape[0]
        self.tol = tol
        self.one = identity(self.n)
        self.ad = dinv(self.a, tol)
        self.p = self.a @ self.ad
        self.api = self.one - self.p
        # magnitude of products built from a, b and a^pi; their rank is judged against it
        self.scale = _spectral(self.api) * (_spectral(self.a) + _spectral(self.b))
        self._bd = None

    def drazin(self, m) -> DrazinResult:
        return drazin(m, self.tol, self.scale)

    def dinv(self, m) -> np.ndarray:
        return drazin(m, self.tol, self.scale).inverse

    @property
    def bd(self) -> np.ndarray:
        if self._bd is None:
            self._bd = dinv(self.b, self.tol)
        return self._bd

    def contraction(self, kind: NormKind) -> float:
        a, b, ad = self.a, self.b, self.ad
        return norm(ad @ b @ a @ ad, kind)


def _report(theorem, parts, kind, residuals, raw, aux) -> ConditionReport:
    tol = parts.tol
    nv = parts.contraction(kind)
    norm_ok = nv < 1.0
    all_hold = norm_ok and all(r <= tol.zero_rel for r in residuals.values())
    return ConditionReport(theorem, nv, norm_ok, residuals, all_hold, raw, aux, kind)


def check_t23(a, b, norm_kind: NormKind | str = NormKind.ENTRYWISE_L1, tol: Tolerances = DEFAULT_TOL) -> ConditionReport:
    """Evaluate ``|a^d b a a^d| < 1``, ``a^pi b a^2 = 0``, ``a^pi b a b = 0``."""
    kind = NormKind.parse(norm_kind)
    s = _Parts(a, b, tol)
    a, b, api = s.a, s.b, s.api
    na, nb, npi = norm(a, kind), norm(b, kind), norm(api, kind)
    r1 = api @ b @ a @ a
    r2 = api @ b @ a @ b
    raw = {"a^pi.b.a2": norm(r1, kind), "a^pi.b.a.b": norm(r2, kind)}
    residuals = {
        "a^pi.b.a2": scaled_residual(r1, npi * nb * na * na, kind),
        "a^pi.b.a.b": scaled_residual(r2, npi * nb * na * nb, kind),
    }
    beta, gamma = norm(api @ a, kind), norm(api @ s.bd, kind)
    aux = {
        "|a^pi.a|": beta,
        "|a^pi.b^d|": gamma,
        "beta*gamma": beta * gamma,
        "|a^d.b|": norm(s.ad @ b, kind),
        # nonzero here means the pair lies outside the a^pi b a = 0 case
        "|a^pi.b.a|": norm(api @ b @ a, kind),
    }
    return _report("T2.3", s, kind, residuals, raw, aux)


def check_t32(a, b, norm_kind: NormKind | str = NormKind.ENTRYWISE_L1, tol: Tolerances = DEFAULT_TOL) -> ConditionReport:
    """Evaluate ``|a^d b a a^d| < 1``, ``a^2 b a^pi = a^pi a b a``, ``a^pi b^2 a = b a b a^pi``."""
    kind = NormKind.parse(norm_kind)
    s = _Parts(a, b, tol)
    a, b, api = s.a, s.b, s.api
    na, nb, npi = norm(a, kind), norm(b, kind), norm(api, kind)
    r1 = a @ a @ b @ api - api @ a @ b @ a
    r2 = api @ b @ b @ a - b @ a @ b @ api
    raw = {"a2.b.a^pi=a^pi.a.b.a": norm(r1, kind), "a^pi.b2.a=b.a.b.a^pi": norm(r2, kind)}
    residuals = {
        "a2.b.a^pi=a^pi.a.b.a": scaled_residual(r1, npi * na * na * nb, kind),
        "a^pi.b2.a=b.a.b.a^pi": scaled_residual(r2, npi * nb * nb * na, kind),
    }
    mu, nu = norm(s.bd @ api, kind), norm(a @ api, kind)
    aux = {
        "|a^d.b|": norm(s.ad @ b, kind),
        "|b^d.a^pi|": mu,
        "|a.a^pi|": nu,
        "mu*nu": mu * nu,
        "|a^pi.b.a-a.b.a^pi|": norm(api @ b @ a - a @ b @ api, kind),
    }
    return _report("T3.2", s, kind, residuals, raw, aux)


def check_c34(a, b, norm_kind: NormKind | str = NormKind.ENTRYWISE_L1, tol: Tolerances = DEFAULT_TOL) -> ConditionReport:
    """Evaluate ``|a^d b a a^d| < 1`` and ``a^pi b a = a b a^pi``."""
    kind = NormKind.parse(norm_kind)
    s = _Parts(a, b, tol)
    a, b, api = s.a, s.b, s.api
    r = api @ b @ a - a @ b @ api
    ref = norm(api, kind) * norm(b, kind) * norm(a, kind)
    raw = {"a^pi.b.a=a.b.a^pi": norm(r, kind)}
    residuals = {"a^pi.b.a=a.b.a^pi": scaled_residual(r, ref, kind)}
    aux = {
        "|a^d.b|": norm(s.ad @ b, kind),
        "|b^d|.|a|": norm(s.bd, kind) * norm(a, kind),
        "|a^pi.b.a|": norm(api @ b @ a, kind),
        "|a.b.a^pi|": norm(a @ b @ api, kind),
    }
    return _report("C3.4", s, kind, residuals, raw, aux)


def _require(report: ConditionReport):
    if report.all_hold:
        return
    why = []
    if not report.norm_ok:
        why.append(f"|a^d b a a^d| = {report.norm_value:.6g} >= 1")
    why += [f"{k} residual {v:.3e}" for k, v in report.residuals.items() if v > 0.0]
    raise HypothesisFailed(f"{report.theorem} hypotheses fail: " + "; ".join(why), report)


# ----------------------------------------------------------------------
# exact series over nilpotent factors


def _nil_index(m: np.ndarray, tol: Tolerances, what: str) -> int:
    k = nilpotency_index(m, tol)
    if k is None:
        raise NumericFailure(f"{what} is expected to be nilpotent")
    return k


def _powers(m: np.ndarray, upto: int) -> list[np.ndarray]:
    out = [identity(m.shape[0])]
    for _ in range(upto):
        out.append(out[-1] @ m)
    return out


def _exact_sum(term, k: int, what: str) -> np.ndarray:
    total = term(0)
    for i in range(1, k):
        total = total + term(i)
    extra = term(k)
    if norm(extra) > _SERIES_EXTRA_REL * max(1.0, norm(total)):
        raise NumericFailure(f"{what}: series term {k} is not negligible ({norm(extra):.3e})")
    return total


def _qnil_series(nil: np.ndarray, bd: np.ndarray, tol: Tolerances) -> np.ndarray:
    """``sum nil^n bd^(n+1) + sum nil^n bd^(n+2) nil`` over the nilpotency index of ``nil``."""
    k = _nil_index(nil, tol, "nilpotent summand")
    np_, bp = _powers(nil, k), _powers(bd, k + 3)
    first = _exact_sum(lambda i: np_[i] @ bp[i + 1], k, "first sum")
    second = _exact_sum(lambda i: np_[i] @ bp[i + 2] @ nil, k, "second sum")
    return first + second


def _commuting_series(nil: np.ndarray, bd: np.ndarray, bpi: np.ndarray, tol: Tolerances) -> np.ndarray:
    """``sum bd^(n+1) (-nil)^n + bpi nil sum (-1)^n (n+1) bd^(n+2) nil^n``."""
    k = _nil_index(nil, tol, "nilpotent summand")
    np_, bp = _powers(nil, k), _powers(bd, k + 3)
    first = _exact_sum(lambda i: (-1) ** i * bp[i + 1] @ np_[i], k, "first sum")
    second = _exact_sum(lambda i: (-1) ** i * (i + 1) * bp[i + 2] @ np_[i], k, "second sum")
    return first + bpi @ nil @ second


def _check_zero(r, ref, tol, what):
    res = norm(r) / max(ref, 1e-300) if norm(r) > 0 else 0.0
    if res > tol.zero_rel:
        raise PreconditionViolated(f"{what} does not vanish", res)


def qnil_plus_sum_yangliu(a2, b4, tol: Tolerances = DEFAULT_TOL) -> np.ndarray:
    """Drazin inverse of ``a2 + b4`` for nilpotent ``a2`` with ``b4 a2^2 = 0``, ``b4 a2 b4 = 0``."""
    a2, b4 = as_matrix(a2), as_matrix(b4)
    if nilpotency_index(a2, tol) is None:
        raise PreconditionViolated("a2 is not nilpotent")
    na, nb = norm(a2), norm(b4)
    _check_zero(b4 @ a2 @ a2, nb * na * na, tol, "b4 a2^2")
    _check_zero(b4 @ a2 @ b4, nb * na * nb, tol, "b4 a2 b4")
    return _qnil_series(a2, dinv(b4, tol), tol)


def lemma31_qnil_sum(a, b, tol: Tolerances = DEFAULT_TOL) -> np.ndarray:
    """Drazin inverse of ``a + b`` for nilpotent ``a`` with ``a^2 b = a b a``, ``b^2 a = b a b``."""
    a, b = as_matrix(a), as_matrix(b)
    if nilpotency_index(a, tol) is None:
        raise PreconditionViolated("a is not nilpotent")
    na, nb = norm(a), norm(b)
    _check_zero(a @ a @ b - a @ b @ a, na * na * nb, tol, "a^2 b - a b a")
    _check_zero(b @ b @ a - b @ a @ b, nb * nb * na, tol, "b^2 a - b a b")
    bd = dinv(b, tol)
    bpi = identity(b.shape[0]) - b @ bd
    return _commuting_series(a, bd, bpi, tol)


def lemma21_block_drazin(p, a, b, c, orientation: str = "lower", tol: Tolerances = DEFAULT_TOL) -> np.ndarray:
    """Drazin inverse of a block-triangular ``x = a + b + c`` relative to ``p``.

    ``orientation="lower"``: ``a`` in ``pAp``, ``b`` in ``(1-p)A(1-p)``, ``c``
    in ``(1-p)Ap``.  ``orientation="upper"``: ``b`` in ``pAp``, ``a`` in
    ``(1-p)A(1-p)``, ``c`` in ``pA(1-p)``.  Either way

        x^D = a^D + b^D + z,
        z = (b^D)^2 (sum (b^D)^i c a^i) a^pi + b^pi (sum b^i c (a^D)^i) (a^D)^2 - b^D c a^D,

    with ``a^pi`` and ``b^pi`` the spectral idempotents inside each corner.
    """
    p, a, b, c = (as_matrix(m) for m in (p, a, b, c))
    if not is_idempotent(p, tol):
        raise BlockViolation("p is not idempotent", norm(p @ p - p))
    q = identity(p.shape[0]) - p
    if orientation == "lower":
        ea, eb, left, right = p, q, q, p
    elif orientation == "upper":
        ea, eb, left, right = q, p, p, q
    else:
        raise ValueError(f"orientation must be 'lower' or 'upper', got {orientation!r}")
    for name, m, l, r in (("a", a, ea, ea), ("b", b, eb, eb), ("c", c, left, right)):
        off = norm(m - l @ m @ r)
        if off > tol.zero_rel * max(1.0, norm(m)):
            raise BlockViolation(f"{name} does not lie in its declared corner", off)
    ad, bd = dinv(a, tol), dinv(b, tol)
    api = ea - a @ ad
    bpi = eb - b @ bd
    ka = _nil_index(a @ api, tol, "nil part of a")
    kb = _nil_index(b @ bpi, tol, "nil part of b")
    ap, bdp = _powers(a, ka), _powers(bd, ka + 1)
    s1 = _exact_sum(lambda i: bdp[i] @ c @ ap[i] @ api, ka, "z first sum")
    bp, adp = _powers(b, kb), _powers(ad, kb + 1)
    s2 = _exact_sum(lambda i: bpi @ bp[i] @ c @ adp[i], kb, "z second sum")
    z = bd @ bd @ s1 + s2 @ ad @ ad - bd @ c @ ad
    return ad + bd + z


# ----------------------------------------------------------------------
# group inverse of a + b


def _mode(mode: str) -> str:
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}, got {mode!r}")
    return mode


def sum_group_t23(a, b, mode: str = "block", tol: Tolerances = DEFAULT_TOL) -> PerturbResult:
    """Group inverse of ``a + b`` under the orthogonal-type hypotheses.

    ``(a+b)^# = X + z + T`` where ``X`` is the corner inverse of ``a + b``
    in ``pAp``, ``T`` is the group inverse of the tail ``a^pi (a + b)``, and
    ``z = X^2 b2 T^pi - X b2 T`` with ``b2 = p b a^pi``.  ``mode`` selects
    ``a^pi b^D`` ("literal") or ``(a^pi b)^D`` ("block") inside ``T``.
    """
    mode = _mode(mode)
    _require(check_t23(a, b, tol=tol))
    s = _Parts(a, b, tol)
    a, b, p, api = s.a, s.b, s.p, s.api
    total = a + b
    tail = api @ total
    tail_index = s.drazin(tail).index
    sum_index = drazin(total, tol).index
    corner = corner_inverse(p, total, tol)
    a2 = a @ api
    beta = api @ s.bd if mode == "literal" else s.dinv(api @ b)
    tail_term = _qnil_series(a2, beta, tol)
    if tail_index > 1:
        return PerturbResult(None, False, corner, None, tail_term, mode, tail_index, sum_index)
    b2 = p @ b @ api
    tail_pi = api - tail @ tail_term
    z = corner @ corner @ b2 @ tail_pi - corner @ b2 @ tail_term
    return PerturbResult(corner + z + tail_term, True, corner, z, tail_term, mode, tail_index, sum_index)


def sum_group_t32(a, b, mode: str = "block", tol: Tolerances = DEFAULT_TOL) -> PerturbResult:
    """Group inverse of ``a + b`` under the commutative-type hypotheses.

    With ``X`` the corner inverse, ``b4 = a^pi b p`` and ``T`` the group
    inverse of ``(a + b) a^pi``:  ``(a+b)^# = X + T^pi b4 X^2 - T b4 X + T``.
    ``mode`` selects ``b^D a^pi`` ("literal") or ``(b a^pi)^D`` ("block")
    inside ``T``.
    """
    mode = _mode(mode)
    _require(check_t32(a, b, tol=tol))
    s = _Parts(a, b, tol)
    a, b, p, api = s.a, s.b, s.p, s.api
    total = a + b
    tail = total @ api
    tail_index = s.drazin(tail).index
    sum_index = drazin(total, tol).index
    corner = corner_inverse(p, total, tol)
    a2 = a @ api
    if mode == "literal":
        gamma = s.bd @ api
        bpi = s.one - b @ s.bd
    else:
        b2 = b @ api
        gamma = s.dinv(b2)
        bpi = api - b2 @ gamma
    tail_term = _commuting_series(a2, gamma, bpi, tol)
    if tail_index > 1:
        return PerturbResult(None, False, corner, None, tail_term, mode, tail_index, sum_index)
    b4 = api @ b @ p
    tail_pi = api - tail_term @ tail
    z = tail_pi @ b4 @ corner @ corner - tail_term @ b4 @ corner
    return PerturbResult(corner + z + tail_term, True, corner, z, tail_term, mode, tail_index, sum_index)


def neumann_corner(a, b, tol: Tolerances = DEFAULT_TOL, step_tol: float = 1e-12, max_terms: int = 100_000):
    """Partial sums of ``sum (-1)^n (a^d b)^n a^d`` until the increment is below ``step_tol``.

    Returns ``(matrix, terms_used)``.  Converges to the corner inverse of
    ``a + b`` along ``p = a a^d`` whenever ``|a^d b a a^d| < 1``.
    """
    s = _Parts(a, b, tol)
    step = s.ad @ s.b
    term = s.ad
    total = term.copy()
    for n in range(1, max_terms):
        term = -step @ term
        total = total + term
        if norm(term) <= step_tol * max(1.0, norm(total)):
            return total, n + 1
    raise NumericFailure(f"Neumann series did not settle within {max_terms} terms")


# ----------------------------------------------------------------------
# bounds on |(a+b)^# - a^d|


def _geom(ratio: float) -> float:
    """``1 / (1 - ratio)``, or ``inf`` when the ratio does not contract."""
    return math.inf if ratio >= 1.0 else 1.0 / (1.0 - ratio)


def _prod(*xs: float) -> float:
    # 0 * inf stays divergent: a zero prefactor does not rescue a divergent series
    if any(math.isinf(x) for x in xs):
        return math.inf
    return math.prod(xs)


def _t23_breakdown(s: _Parts, kind: NormKind, strict: bool) -> BoundBreakdown:
    a, b, ad, api, bd = s.a, s.b, s.ad, s.api, s.bd
    kappa = s.contraction(kind)
    nad = norm(ad, kind)
    alpha = nad / (1.0 - kappa)
    beta, gamma = norm(api @ a, kind), norm(api @ bd, kind)
    r = beta * gamma
    if strict and r >= 1.0:
        raise HypothesisFailed(f"|a^pi a| |a^pi b^d| = {r:.6g} >= 1")
    g = _geom(r)
    bracket = norm(api, kind) + _prod(r, g) + _prod(r * r, g) + gamma * (beta + norm(api @ b, kind))
    first = _prod(alpha * alpha * norm(b @ api, kind), bracket)
    second = _prod(1.0 + norm(ad @ b, kind) / (1.0 - kappa), nad + _prod(gamma, g) + _prod(beta * gamma * gamma, g))
    terms = [("tail_coupling", first), ("corner_and_tail", second)]
    total = math.inf if math.isinf(g) else first + second
    return BoundBreakdown(terms, total, kind, {"kappa": kappa, "alpha": alpha, "beta*gamma": r})


def bound_t23(a, b, norm_kind: NormKind | str = NormKind.ENTRYWISE_L1, tol: Tolerances = DEFAULT_TOL) -> BoundBreakdown:
    """Upper bound on ``|(a+b)^# - a^d|`` under the orthogonal-type hypotheses.

    The two terms are ``alpha^2 |b a^pi| (|a^pi| + S1 + S2 + gamma (beta + |a^pi b|))``
    and ``(1 + |a^d b| / (1 - kappa)) (|a^d| + S3 + S4)`` with
    ``kappa = |a^d b a a^d|``, ``alpha = |a^d| / (1 - kappa)``,
    ``beta = |a^pi a|``, ``gamma = |a^pi b^d|`` and ``S1..S4`` the geometric
    series in ``beta*gamma``.  The total is ``inf`` when ``beta*gamma >= 1``.
    """
    kind = NormKind.parse(norm_kind)
    _require(check_t23(a, b, kind, tol))
    return _t23_breakdown(_Parts(a, b, tol), kind, strict=False)


def bound_c24(a, b, norm_kind: NormKind | str = NormKind.ENTRYWISE_L1, tol: Tolerances = DEFAULT_TOL) -> BoundBreakdown:
    """Closed-form variant of :func:`bound_t23` that requires ``beta*gamma < 1``."""
    kind = NormKind.parse(norm_kind)
    _require(check_t23(a, b, kind, tol))
    return _t23_breakdown(_Parts(a, b, tol), kind, strict=True)


def _t32_breakdown(s: _Parts, kind: NormKind, strict: bool) -> BoundBreakdown:
    a, b, ad, api, bd, p = s.a, s.b, s.ad, s.api, s.bd, s.p
    nadb = norm(ad @ b, kind)
    if nadb >= 1.0:
        raise NormNotContractive(f"|a^d b| = {nadb:.6g} >= 1")
    nad = norm(ad, kind)
    delta = nad / (1.0 - nadb)
    mu, nu = norm(bd @ api, kind), norm(a @ api, kind)
    r = mu * nu
    if strict and r >= 1.0:
        raise HypothesisFailed(f"|a a^pi| |b^d a^pi| = {r:.6g} >= 1")
    g = _geom(r)
    s1 = _prod(mu, g)
    s2 = _prod(mu * mu, g, g)
    n_lower = norm(api @ b @ p, kind)
    n_coupled = norm((a + b) @ api @ b @ p, kind)
    n_bpi = norm((s.one - b @ bd) @ a @ api, kind)
    terms = [
        ("t1", nadb * nad / (1.0 - nadb)),
        ("t2", n_lower * delta * delta),
        ("t3", _prod(n_coupled, delta * delta, s1)),
        ("t4", _prod(n_bpi, n_coupled, s2, delta * delta)),
        ("t5", s1),
        ("t6", _prod(n_lower, delta, s1)),
        ("t7", _prod(n_bpi, s2)),
        ("t8", _prod(n_bpi, n_lower, delta, s2)),
    ]
    total = math.inf if math.isinf(g) else sum(v for _, v in terms)
    return BoundBreakdown(terms, total, kind, {"|a^d.b|": nadb, "delta": delta, "mu*nu": r})


def bound_t32(a, b, norm_kind: NormKind | str = NormKind.ENTRYWISE_L1, tol: Tolerances = DEFAULT_TOL) -> BoundBreakdown:
    """Eight-term upper bound on ``|(a+b)^# - a^d|`` under the commutative-type hypotheses.

    With ``delta = |a^d| / (1 - |a^d b|)``, ``mu = |b^d a^pi|``,
    ``nu = |a a^pi|``, ``S1 = mu / (1 - mu nu)`` and ``S2 = S1^2``::

        t1 = |a^d b| |a^d| / (1 - |a^d b|)        t5 = S1
        t2 = |a^pi b a a^d| delta^2                t6 = |a^pi b a a^d| delta S1
        t3 = |(a+b) a^pi b a a^d| delta^2 S1       t7 = |b^pi a a^pi| S2
        t4 = |b^pi a a^pi| |(a+b) a^pi b a a^d| S2 delta^2
        t8 = |b^pi a a^pi| |a^pi b a a^d| delta S2

    Raises :class:`NormNotContractive` if ``|a^d b| >= 1``; the total is
    ``inf`` when ``mu nu >= 1``.
    """
    kind = NormKind.parse(norm_kind)
    _require(check_t32(a, b, kind, tol))
    return _t32_breakdown(_Parts(a, b, tol), kind, strict=False)


def bound_c33(a, b, norm_kind: NormKind | str = NormKind.ENTRYWISE_L1, tol: Tolerances = DEFAULT_TOL) -> BoundBreakdown:
    """Closed-form variant of :func:`bound_t32` that requires ``mu nu < 1``."""
    kind = NormKind.parse(norm_kind)
    _require(check_t32(a, b, kind, tol))
    return _t32_breakdown(_Parts(a, b, tol), kind, strict=True)


def bound_c34(a, b, norm_kind: NormKind | str = NormKind.ENTRYWISE_L1, tol: Tolerances = DEFAULT_TOL) -> BoundBreakdown:
    """Bound ``|a^d b||a^d|/(1-|a^d b|) + |a^pi| |b^d| / (1 - |b^d||a|)`` when ``a^pi b a = a b a^pi``."""
    kind = NormKind.parse(norm_kind)
    _require(check_c34(a, b, kind, tol))
    s = _Parts(a, b, tol)
    nadb = norm(s.ad @ s.b, kind)
    if nadb >= 1.0:
        raise NormNotContractive(f"|a^d b| = {nadb:.6g} >= 1")
    nbd, na = norm(s.bd, kind), norm(s.a, kind)
    g = _geom(nbd * na)
    terms = [
        ("corner", nadb * norm(s.ad, kind) / (1.0 - nadb)),
        ("tail", _prod(norm(s.api, kind), nbd, g)),
    ]
    total = math.inf if math.isinf(terms[1][1]) else terms[0][1] + terms[1][1]
    return BoundBreakdown(terms, total, kind, {"|a^d.b|": nadb, "|b^d|*|a|": nbd * na})

"""Random pairs ``(a, b)`` that satisfy one of the perturbation hypotheses.

Pairs are built in block coordinates along ``p = diag(I_core, 0)``:
``a = diag(a1, a2)`` with ``a1`` invertible and ``a2`` nilpotent, and ``b``
chosen block by block so the target identities hold exactly.  Both are then
optionally conjugated by one random similarity with condition number at
most 50, and the corner block of ``b`` is rescaled so that
``|a^d b a a^d|`` lands in ``(0.05, 0.9)`` in the entrywise-l1 norm.

Orthogonal type (``T2.3``), with ``b = [[b1, b2], [0, b4]]``, needs
``b4 a2^2 = 0`` and ``b4 a2 b4 = 0``.  Commutative type (``T3.2``), with
``b = [[b1, 0], [b4, b2]]``, needs

    a2 b4 = 0,  b4 b1 = -b2 b4,  a2^2 b2 = a2 b2 a2,  b2^2 a2 = b2 a2 b2.

Families
--------
``b4zero``
    T2.3: ``b4 = 0``, so ``a2`` must vanish for existence.  T3.2: ``b4 = 0``
    and ``b2`` a polynomial in Jordan blocks ``a2`` (commuting tail).
``shift``
    T2.3: 3x3 shift blocks with ``b4 = -a2`` so ``a^pi b a != 0``.
    T3.2: ``a2^2 = 0`` and ``b2 a2 = 0``, the pattern of the 4x4 worked pair.
``general``
    T2.3: a shift block plus a block where ``b4`` annihilates ``range(a2)``.
    The second block leaves ``a2 + b4`` of index 2 in roughly one draw in
    six, so this family also yields unplanted non-invertible sums.
    T3.2: a commuting or shift tail plus an isolated coordinate ``u`` where
    ``b2 = lam`` and ``b4 = e_u w*`` with ``w* b1 = -lam w*``.
``worked``
    The two fixed pairs of :mod:`drazinpert.harness.worked`, when the
    dimensions match.

Draws are rejected and redrawn when ``|b|_2 |b^D|_2`` exceeds 1e4, since
the formulas' literal reading goes through the Drazin inverse of the whole
perturbation.

``plant_index2`` adds a 2x2 nilpotent summand to the tail element, so the
sum is *not* group invertible; it needs at least two tail dimensions.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass

import numpy as np
from scipy.linalg import block_diag
from scipy.stats import unitary_group

from ..errors import GenerationFailed, NumericFailure
from ..geninv import dinv
from ..matcore import Tolerances
from ..perturb import check_t23, check_t32
from . import worked

THEOREMS = ("T2.3", "T3.2")
FAMILIES = ("b4zero", "shift", "general", "worked")
MAX_COND = 50.0
MAX_RETRIES = 25
# draws with |b| |b^D| above this are redrawn: a^pi b^D then cancels most digits
MAX_DRAZIN_COND = 1e4


@dataclass(frozen=True)
class GenSpec:
    theorem: str = "T2.3"
    dim: int = 4
    core_dim: int = 2
    seed: int = 0
    conjugate: bool = True
    family: str = "general"
    plant_index2: bool = False

    def __post_init__(self):
        if self.theorem not in THEOREMS:
            raise ValueError(f"theorem must be one of {THEOREMS}")
        if self.family not in FAMILIES:
            raise ValueError(f"family must be one of {FAMILIES}")
        if not 2 <= self.dim <= 16:
            raise ValueError("dim must lie in 2..16")
        if not 1 <= self.core_dim < self.dim:
            raise ValueError("core_dim must satisfy 1 <= core_dim < dim")
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must be a 64-bit unsigned integer")
        if self.plant_index2 and self.dim - self.core_dim < 2:
            raise ValueError("plant_index2 needs at least two tail dimensions")

    @property
    def tail_dim(self) -> int:
        return self.dim - self.core_dim

    def to_dict(self) -> dict:
        return asdict(self)


def _cgauss(rng, m, n=None):
    shape = (m, m) if n is None else (m, n)
    return (rng.standard_normal(shape) + 1j * rng.standard_normal(shape)) / np.sqrt(2)


def _unitary(rng, n):
    if n == 1:
        return np.array([[np.exp(2j * np.pi * rng.random())]])
    return unitary_group.rvs(n, random_state=rng)


def _well_conditioned(rng, n, cond):
    """Random complex ``n x n`` matrix with singular values spanning ``[1, cond]``."""
    sv = np.exp(rng.uniform(0.0, np.log(cond), n))
    sv[0], sv[-1] = 1.0, cond
    return (_unitary(rng, n) * sv) @ _unitary(rng, n)


def _phase(rng, lo=0.3, hi=1.5):
    return rng.uniform(lo, hi) * np.exp(2j * np.pi * rng.random())


def _shift(m, sup):
    j = np.zeros((m, m), complex)
    for i, v in enumerate(sup):
        j[i, i + 1] = v
    return j


def _split(rng, t, sizes):
    """Random composition of ``t`` into parts drawn from ``sizes``."""
    parts = []
    while t > 0:
        choices = [s for s in sizes if s <= t]
        s = int(rng.choice(choices))
        parts.append(s)
        t -= s
    return parts


def _annihilator(x):
    """``I - x x^+``: its product with ``x`` vanishes."""
    m = x.shape[0]
    return np.eye(m) - x @ np.linalg.pinv(x, rcond=1e-12)


# ----------------------------------------------------------------------
# orthogonal-type tails:  (a2, b4) with b4 a2^2 = 0, b4 a2 b4 = 0


def _t23_shift_block(rng, m, plant):
    if m == 1:
        return np.zeros((1, 1), complex), np.array([[_phase(rng)]])
    j = _shift(m, [_phase(rng) for _ in range(m - 1)])
    d = np.zeros((m, m), complex)
    if m == 2:
        # -j + [[0, x], [0, y]]:  the sum is [[0, x], [0, y]]
        d[0, 1] = _phase(rng)
        if not plant:
            d[1, 1] = _phase(rng)
    elif plant:
        # d j = 0 and j^2 d = 0 keep the identities; d^2 = 0, d != 0
        d[0, 2], d[1, 2] = _phase(rng), _phase(rng)
    return j, -j + d


def _t23_kill_block(rng, m):
    n = np.triu(_cgauss(rng, m), 1)
    if m > 1:
        s = _well_conditioned(rng, m, 3.0)
        n = s @ n @ np.linalg.inv(s)
    b4 = _cgauss(rng, m) @ _annihilator(n)
    return n, b4


def _t23_tail(rng, family, t, plant):
    blocks = []
    if plant:
        if family == "shift":
            k = 3 if t >= 3 else 2
            blocks.append(_t23_shift_block(rng, k, plant=True))
        else:
            blocks.append((_shift(2, [_phase(rng)]), np.zeros((2, 2), complex)))
        t -= blocks[-1][0].shape[0]
    if family == "b4zero":
        if t:
            blocks.append((np.zeros((t, t), complex), np.zeros((t, t), complex)))
    elif family == "shift":
        for m in _split(rng, t, (3, 3, 2, 1)):
            blocks.append(_t23_shift_block(rng, m, plant=False))
    else:
        if t >= 4 or (t == 3 and rng.random() < 0.5):
            blocks.append(_t23_shift_block(rng, 3, plant=False))
            t -= 3
        if t:
            blocks.append(_t23_kill_block(rng, t))
    a2 = block_diag(*[x for x, _ in blocks]).astype(complex)
    b4 = block_diag(*[y for _, y in blocks]).astype(complex)
    return a2, b4


def _t23_blocks(rng, spec):
    c, t = spec.core_dim, spec.tail_dim
    a1 = _well_conditioned(rng, c, rng.uniform(1.0, 4.0)) * rng.uniform(0.5, 2.0)
    a2, b4 = _t23_tail(rng, spec.family, t, spec.plant_index2)
    b1 = _well_conditioned(rng, c, rng.uniform(1.0, 4.0))
    b2 = _cgauss(rng, c, t) * rng.uniform(0.1, 1.0)
    a = block_diag(a1, a2).astype(complex)
    fixed = np.block([[np.zeros((c, c)), b2], [np.zeros((t, c)), b4]]).astype(complex)
    scaled = block_diag(b1, np.zeros((t, t))).astype(complex)
    return a, fixed, scaled


# ----------------------------------------------------------------------
# commutative-type tails:  (a2, b2) with a2^2 b2 = a2 b2 a2, b2^2 a2 = b2 a2 b2


def _t32_commuting_tail(rng, t):
    a_blocks, b_blocks = [], []
    for m in _split(rng, t, (1, 2, 3)):
        j = _shift(m, [_phase(rng) for _ in range(m - 1)])
        coeffs = [_phase(rng)] + [rng.standard_normal() + 1j * rng.standard_normal() for _ in range(m - 1)]
        poly = sum(ck * np.linalg.matrix_power(j, k) for k, ck in enumerate(coeffs))
        a_blocks.append(j)
        b_blocks.append(poly)
    return block_diag(*a_blocks).astype(complex), block_diag(*b_blocks).astype(complex)


def _t32_shift_tail(rng, t):
    r = int(rng.integers(0, t // 2 + 1))
    a2 = np.zeros((t, t), complex)
    for i in range(r):
        a2[2 * i, 2 * i + 1] = _phase(rng)
    if t > 1:
        s = _well_conditioned(rng, t, 3.0)
        a2 = s @ a2 @ np.linalg.inv(s)
    b2 = _cgauss(rng, t) @ _annihilator(a2)
    return a2, b2


def _t32_blocks(rng, spec):
    c, t = spec.core_dim, spec.tail_dim
    a1 = _well_conditioned(rng, c, rng.uniform(1.0, 4.0)) * rng.uniform(0.5, 2.0)
    b1 = _well_conditioned(rng, c, rng.uniform(1.0, 4.0))
    extra_a, extra_b = [], []
    if spec.plant_index2:
        extra_a.append(_shift(2, [_phase(rng)]))
        extra_b.append(np.zeros((2, 2), complex))
        t -= 2
    family = spec.family
    use_u = family == "general" and t >= 1
    main = t - 1 if use_u else t
    if main:
        if family == "b4zero" or (family == "general" and rng.random() < 0.5):
            a2, b2 = _t32_commuting_tail(rng, main)
        else:
            a2, b2 = _t32_shift_tail(rng, main)
        extra_a.insert(0, a2)
        extra_b.insert(0, b2)
    tail_a = block_diag(*extra_a).astype(complex) if extra_a else np.zeros((0, 0), complex)
    tail_b = block_diag(*extra_b).astype(complex) if extra_b else np.zeros((0, 0), complex)
    td = spec.tail_dim
    a = block_diag(a1, tail_a if not use_u else block_diag(tail_a, np.zeros((1, 1)))).astype(complex)
    fixed = np.zeros((c + td, c + td), complex)
    scaled = np.zeros((c + td, c + td), complex)
    if use_u:
        # u is the last coordinate: a2 e_u = 0, b2 e_u = lam e_u, b4 = e_u w*, w* b1 = -lam w*
        lam = _phase(rng)
        w = _cgauss(rng, 1, c)[0]
        proj = np.eye(c) - np.outer(w, w.conj()) / np.vdot(w, w)
        b1 = -lam * np.eye(c) + proj @ b1
        fixed[c : c + td - 1, c : c + td - 1] = tail_b
        fixed[-1, :c] = w.conj() * rng.uniform(0.3, 1.5)
        scaled[-1, -1] = lam
    else:
        fixed[c:, c:] = tail_b
    scaled[:c, :c] = b1
    return a, fixed, scaled


# ----------------------------------------------------------------------


def _checker(theorem):
    return check_t23 if theorem == "T2.3" else check_t32


def _draw(rng, spec: GenSpec):
    """``(a_core, a_tail, fixed, scaled)``; ``a = a_core + a_tail``, ``b = fixed + scaled``."""
    if spec.theorem == "T2.3":
        a, fixed, scaled = _t23_blocks(rng, spec)
    else:
        a, fixed, scaled = _t32_blocks(rng, spec)
    c = spec.core_dim
    a_core = np.zeros_like(a)
    a_core[:c, :c] = a[:c, :c]
    parts = (a_core, a - a_core, fixed, scaled)
    if spec.conjugate:
        s = _well_conditioned(rng, spec.dim, np.exp(rng.uniform(np.log(1.5), np.log(MAX_COND))))
        sinv = np.linalg.inv(s)
        parts = tuple(s @ m @ sinv for m in parts)
    return parts


def _contraction(a, scaled, tol):
    # |a^d b a a^d| depends on b only through its scaled corner block
    ad = dinv(a, tol)
    return float(np.abs(ad @ scaled @ a @ ad).sum())


def _drazin_cond(b, tol):
    return float(np.linalg.norm(b, 2) * np.linalg.norm(dinv(b, tol), 2))


def generate_with_retries(spec: GenSpec, tol: Tolerances | None = None, stats: dict | None = None):
    """Like :func:`generate_pair` but also returns the number of rejected draws.

    When ``stats`` is given, rejections are tallied in it under ``"check"``
    (hypothesis check failed) and ``"conditioning"`` (Drazin condition cap).
    """
    tol = tol or Tolerances()
    stats = {} if stats is None else stats
    if spec.family == "worked":
        a, b = worked.pair_for(spec)
        return a, b, 0
    rng = np.random.default_rng(np.random.SeedSequence(spec.seed))
    check = _checker(spec.theorem)
    for attempt in range(MAX_RETRIES):
        a_core, a_tail, fixed, scaled = _draw(rng, spec)
        target = rng.uniform(0.05, 0.9)
        try:
            kappa = _contraction(a_core + a_tail, scaled, tol)
        except NumericFailure:
            stats["check"] = stats.get("check", 0) + 1
            continue
        # the contraction is |a1^-1 b1| in block coordinates: grow a1 and shrink
        # b1 by the same factor so neither b^D nor a^d becomes badly scaled
        theta = target / kappa if kappa > 1e-12 else 1.0
        root = np.sqrt(theta)
        a = a_tail + a_core / root
        b = fixed + root * scaled
        try:
            ok = check(a, b, tol=tol).all_hold
        except NumericFailure:
            ok = False
        if not ok:
            stats["check"] = stats.get("check", 0) + 1
            continue
        try:
            cond = _drazin_cond(b, tol)
        except NumericFailure:
            cond = math.inf
        if cond > MAX_DRAZIN_COND:
            stats["conditioning"] = stats.get("conditioning", 0) + 1
            continue
        return a, b, attempt
    raise GenerationFailed(f"no admissible pair for {spec} after {MAX_RETRIES} draws")


def generate_pair(spec: GenSpec, tol: Tolerances | None = None) -> tuple[np.ndarray, np.ndarray]:
    """Deterministic random pair for ``spec`` passing the matching hypothesis check."""
    a, b, _ = generate_with_retries(spec, tol)
    return a, b


# ----------------------------------------------------------------------
# single-matrix and lemma instances


def _rng(seed):
    return np.random.default_rng(np.random.SeedSequence(seed))


def _nilpotent_of_index(rng, t, k):
    """``t x t`` nilpotent with largest Jordan block exactly ``k`` (``k = 0`` only for ``t = 0``)."""
    if t == 0:
        return np.zeros((0, 0), complex)
    sizes = [k]
    rest = t - k
    while rest > 0:
        s = int(rng.integers(1, min(k, rest) + 1))
        sizes.append(s)
        rest -= s
    return block_diag(*[_shift(m, [_phase(rng) for _ in range(m - 1)]) for m in sizes]).astype(complex)


def _conj(rng, n, cond, *ms):
    s = _well_conditioned(rng, n, cond)
    sinv = np.linalg.inv(s)
    return tuple(s @ m @ sinv for m in ms)


def planted_index_matrix(n: int, index: int, seed: int, core_dim: int | None = None, cond: float = 20.0):
    """Random ``n x n`` matrix ``S diag(C, N) S^-1`` with Drazin index exactly ``index``.

    ``C`` is invertible with singular values in ``[0.5, 2]``, ``N`` nilpotent
    with largest Jordan block ``index``.  Returns ``(matrix, core_dim)``.
    """
    rng = _rng(seed)
    if index == 0:
        core_dim = n
    elif core_dim is None:
        core_dim = int(rng.integers(0, n - index + 1))
    if index > n - core_dim or (index == 0) != (core_dim == n):
        raise ValueError(f"cannot plant index {index} with core {core_dim} in dimension {n}")
    core = _well_conditioned(rng, core_dim, 4.0) * 0.5 if core_dim else np.zeros((0, 0), complex)
    m = block_diag(core, _nilpotent_of_index(rng, n - core_dim, index)).astype(complex)
    (m,) = _conj(rng, n, cond, m)
    return m, core_dim


def _random_drazin_block(rng, m):
    """Square block of size ``m`` with a random index (possibly singular)."""
    if m == 0:
        return np.zeros((0, 0), complex)
    t = int(rng.integers(0, m + 1))
    k = int(rng.integers(1, t + 1)) if t else 0
    core = _well_conditioned(rng, m - t, 4.0) if m > t else np.zeros((0, 0), complex)
    blk = block_diag(core, _nilpotent_of_index(rng, t, k)).astype(complex)
    if m > 1:
        (blk,) = _conj(rng, m, 3.0, blk)
    return blk


def block_triangular_instance(n: int, seed: int, orientation: str = "lower"):
    """``(p, a, b, c)``: idempotent ``p`` and corner pieces for a block-triangular sum.

    ``lower``: ``a`` in ``pAp``, ``b`` in ``(1-p)A(1-p)``, ``c`` in ``(1-p)Ap``.
    ``upper``: ``b`` in ``pAp``, ``a`` in ``(1-p)A(1-p)``, ``c`` in ``pA(1-p)``.
    """
    rng = _rng(seed)
    r = int(rng.integers(1, n))
    top, bottom = _random_drazin_block(rng, r), _random_drazin_block(rng, n - r)
    z = np.zeros((n, n), complex)
    p, a, b, c = z.copy(), z.copy(), z.copy(), z.copy()
    p[:r, :r] = np.eye(r)
    if orientation == "lower":
        a[:r, :r], b[r:, r:], c[r:, :r] = top, bottom, _cgauss(rng, n - r, r)
    elif orientation == "upper":
        b[:r, :r], a[r:, r:], c[:r, r:] = top, bottom, _cgauss(rng, r, n - r)
    else:
        raise ValueError(f"orientation must be 'lower' or 'upper', got {orientation!r}")
    return _conj(rng, n, 10.0, p, a, b, c)


def nilpotent_sum_instance(n: int, seed: int, kind: str = "orthogonal"):
    """Nilpotent ``a`` and ``b`` in dimension ``n`` for the two nilpotent-sum formulas.

    ``orthogonal``: ``b a^2 = 0`` and ``b a b = 0``.
    ``commuting``: ``a^2 b = a b a`` and ``b^2 a = b a b``.
    """
    rng = _rng(seed)
    if kind == "orthogonal":
        a, b = _t23_tail(rng, str(rng.choice(["shift", "general"])), n, plant=False)
    elif kind == "commuting":
        a, b = (_t32_commuting_tail if rng.random() < 0.5 else _t32_shift_tail)(rng, n)
    else:
        raise ValueError(f"kind must be 'orthogonal' or 'commuting', got {kind!r}")
    return _conj(rng, n, 10.0, a, b)


def split_instance(n: int, seed: int):
    """Idempotent ``e`` and ``a`` with ``e a (1 - e) = 0``."""
    rng = _rng(seed)
    r = int(rng.integers(1, n))
    a = np.zeros((n, n), complex)
    a[:r, :r] = _random_drazin_block(rng, r)
    a[r:, r:] = _random_drazin_block(rng, n - r)
    a[r:, :r] = _cgauss(rng, n - r, r)
    e = np.zeros((n, n), complex)
    e[:r, :r] = np.eye(r)
    return _conj(rng, n, 10.0, e, a)


def product_instance(n: int, seed: int):
    """Square ``x``, ``y`` of random rank whose products are usually singular."""
    rng = _rng(seed)
    rx, ry = int(rng.integers(1, n + 1)), int(rng.integers(1, n + 1))
    x = _cgauss(rng, n, rx) @ _cgauss(rng, rx, n)
    y = _cgauss(rng, n, ry) @ _cgauss(rng, ry, n)
    return x, y

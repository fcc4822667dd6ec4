"""Level-dependent interpolatory Hermite subdivision (order d = 2).

The family refines Hermite data (value, first and second derivative) by
inserting midpoint vectors obtained from a local two-point Hermite
interpolation problem, solved in the six-dimensional space

    W_mu = span{1, x^3, x^4, x^5, e^{mu x}, e^{-mu x}},  mu = 2^-n lam,

over each unit interval at level ``n``.  The polynomial part ``span{x^3,
x^4, x^5}`` is exactly the subspace of ``W_mu`` with a triple zero at the
origin, which makes the backward mask tap ``A_-1`` a frequency-free
constant; the exponential pair makes the scheme reproduce ``{1, e^{+-lam
x}}`` across levels (the V_{0,L}-spectral condition).  As ``mu -> 0``
the space tends to the full quintics and the masks to the stationary
quintic Hermite scheme.

All signals are in v-coordinates (see :mod:`hermwave.signal`), in which
one subdivision step is plain stencil application: even outputs are
``D @ input`` (exact, since ``D`` is a power-of-two diagonal) and odd
outputs come from the two neighbor taps.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .annihilator import SpaceSpec, dilation_matrix
from .laurent import Mask, MatLaurent
from .signal import HermiteSignal, exponential, monomial, sample_function, v_vector

#: The constant backward tap shared by every level and frequency.
A_MINUS_1 = np.array(
    [[32.0, -10.0, 1.0], [60.0, -14.0, 1.0], [0.0, 24.0, -4.0]]
) / 64.0

#: Condition-number bound above which mask derivation reports failure.
COND_LIMIT = 1e12


@dataclass(frozen=True)
class DilationWeights:
    """The diagonal dilation weight matrix ``D = diag(1, 1/2, ..., 2^-d)``."""

    d: int

    @property
    def matrix(self) -> np.ndarray:
        return dilation_matrix(self.d)

    @property
    def inverse(self) -> np.ndarray:
        return np.diag([2.0**j for j in range(self.d + 1)])


@dataclass(frozen=True)
class LevelMask:
    """The level-``n`` subdivision mask, support ``{-1, 0, 1}``.

    Invariants: interpolatory (``tap(0) == D``, no other even taps) and
    ``tap(-1)`` equal to the constant :data:`A_MINUS_1` at every level.
    """

    level: int
    spec: SpaceSpec
    mask: Mask

    def tap(self, k: int) -> np.ndarray:
        return self.mask.tap(k)

    @property
    def symbol(self) -> MatLaurent:
        return self.mask.symbol

    @property
    def dim(self) -> int:
        return self.mask.dim


@dataclass(frozen=True)
class LimitFunctionTable:
    """Dyadic samples of the basic limit matrix ``F``.

    ``values[t, i, j]`` is the ``i``-th derivative of component ``phi_j``
    at ``grid[t]``; the first row of ``F`` is the multi-scaling vector.
    """

    depth: int
    grid: np.ndarray = field(repr=False)
    values: np.ndarray = field(repr=False)

    def component(self, j: int, derivative: int = 0) -> np.ndarray:
        return self.values[:, derivative, j]


def _local_basis(mu: float):
    """The six local basis functions on [0, 1] with two derivatives each.

    Returns callables ``f(t, j)``.  The hyperbolic pair is taken in the
    cancellation-free combinations ``sinh(mu t)/mu`` and
    ``(cosh(mu t) - 1)/mu^2`` (same span), whose ``mu -> 0`` limits are
    ``t`` and ``t^2/2``; this keeps the interpolation system uniformly
    well conditioned down to the stationary case.
    """

    def sinh_scaled(t, j):
        if mu == 0.0:
            return (t, 1.0, 0.0)[j]
        return (math.sinh(mu * t) / mu, math.cosh(mu * t), mu * math.sinh(mu * t))[j]

    def cosh_scaled(t, j):
        if mu == 0.0:
            return (t * t / 2.0, t, 1.0)[j]
        if j == 0:
            s = math.sinh(mu * t / 2.0)
            return 2.0 * s * s / (mu * mu)
        return (math.sinh(mu * t) / mu, math.cosh(mu * t))[j - 1]

    return [
        lambda t, j: (1.0, 0.0, 0.0)[j] if j <= 2 else 0.0,
        monomial(3),
        monomial(4),
        monomial(5),
        sinh_scaled,
        cosh_scaled,
    ]


def _derivs(f, t: float) -> np.ndarray:
    return np.array([f(t, j) for j in range(3)])


def derive_mask_from_interpolation(spec: SpaceSpec, level: int) -> LevelMask:
    """Derive the level-``level`` mask from midpoint Hermite interpolation.

    Solves, rowwise, the 6x6 linear system expressing

        A_1 g(0) + A_-1 g(1) = D g(1/2)

    for the Hermite data vectors ``g = (f, f', f'')`` of all six local
    basis functions ``f``, then assembles taps ``{-1, 0, 1}`` with
    ``tap(0) = D``.

    Raises
    ------
    ValueError
        If the spec is outside the implemented family or the
        interpolation system is ill conditioned.
    """
    if spec.p != 0 or spec.lam is None:
        raise ValueError(
            "mask derivation implements the (p=0, one frequency pair) family; "
            f"got p={spec.p}, lambda={spec.lam}"
        )
    a1, am1 = _solve_mask_system(spec.frequency_at(level))
    d = dilation_matrix(2)
    mask = Mask.from_taps(3, {-1: am1, 0: d, 1: a1})
    return LevelMask(level, spec, mask)


@lru_cache(maxsize=256)
def _solve_mask_system(mu: float) -> tuple[np.ndarray, np.ndarray]:
    basis = _local_basis(mu)
    d = dilation_matrix(2)
    m = np.zeros((6, 6))
    rhs = np.zeros((6, 3))
    for r, f in enumerate(basis):
        m[r, :3] = _derivs(f, 0.0)
        m[r, 3:] = _derivs(f, 1.0)
        rhs[r] = d @ _derivs(f, 0.5)
    if np.linalg.cond(m) > COND_LIMIT:
        raise ValueError(
            f"interpolation system ill conditioned at scaled frequency {mu}"
        )
    sol = np.linalg.solve(m, rhs)
    a1 = sol[:3].T.copy()
    am1 = sol[3:].T.copy()
    a1.setflags(write=False)
    am1.setflags(write=False)
    return a1, am1


def make_mask(spec: SpaceSpec, level: int) -> LevelMask:
    """The authoritative mask constructor.

    Returns :func:`derive_mask_from_interpolation` after asserting the
    structural identities ``tap(0) == D`` and ``tap(-1) == A_MINUS_1``.
    """
    lm = derive_mask_from_interpolation(spec, level)
    if np.max(np.abs(lm.tap(0) - dilation_matrix(2))) > 1e-12:
        raise AssertionError("derived mask violates tap(0) == D")
    if np.max(np.abs(lm.tap(-1) - A_MINUS_1)) > 1e-11:
        raise AssertionError("derived mask violates the constant backward tap")
    return lm


def interpolatory_residual(symbol: MatLaurent, points: int = 32) -> float:
    """Max residual of ``A(z) + A(-z) - 2D`` on unit-circle samples."""
    from .laurent import unit_circle_points

    two_d = 2.0 * dilation_matrix(symbol.dim - 1)
    neg = symbol.negate_arg()
    return max(
        float(np.max(np.abs(symbol.eval(z) + neg.eval(z) - two_d)))
        for z in unit_circle_points(points)
    )


# ----------------------------------------------------------------------
# subdivision operator
# ----------------------------------------------------------------------

def subdivide(mask: LevelMask, signal: HermiteSignal) -> HermiteSignal:
    """One refinement step: ``output_j = sum_k A_{j-2k} input_k``.

    Input nodes ``start .. start+N-1`` (zero extension outside); output
    nodes ``2*start-1 .. 2*(start+N-1)+1`` at level ``n+1``.  Even
    outputs are ``D @ input`` exactly (raw Hermite data is copied; the
    ``D`` factor is the v-coordinate reweighting, exact in binary
    floating point).
    """
    if signal.level != mask.level:
        raise ValueError(f"level mismatch: signal {signal.level} vs mask {mask.level}")
    if signal.dim != mask.dim:
        raise ValueError(f"dimension mismatch: signal {signal.dim} vs mask {mask.dim}")
    c = signal.data
    n_in = len(c)
    out = np.zeros((2 * n_in + 1, mask.dim))
    d = mask.tap(0)
    a1 = mask.tap(1)
    am1 = mask.tap(-1)
    out[1::2] = c @ d.T
    # odd output 2(start+m)+1 (array position 2m+2) = A_1 c_m + A_-1 c_{m+1}
    out[2::2] = c @ a1.T
    out[2 : 2 * n_in - 1 : 2] += c[1:] @ am1.T
    out[0] = am1 @ c[0]
    return HermiteSignal(signal.level + 1, out, 2 * signal.start - 1)


def subdivide_periodic(mask: LevelMask, signal: HermiteSignal) -> HermiteSignal:
    """One refinement step with periodic extension (length doubles)."""
    if signal.level != mask.level:
        raise ValueError(f"level mismatch: signal {signal.level} vs mask {mask.level}")
    c = signal.data
    out = np.zeros((2 * len(c), mask.dim))
    out[0::2] = c @ mask.tap(0).T
    out[1::2] = c @ mask.tap(1).T + np.roll(c, -1, axis=0) @ mask.tap(-1).T
    return HermiteSignal(signal.level + 1, out, 2 * signal.start)


def check_spectral_condition(
    spec: SpaceSpec,
    level: int,
    depth: int,
    functions: dict | None = None,
    halfwidth: float = 3.0,
) -> dict[str, float]:
    """Deviation of iterated subdivision from exact v-samples.

    For each named function, exact samples over ``|x| <= halfwidth`` at
    ``level`` are refined ``depth`` times and compared with exact samples
    at ``level + depth`` on the region unaffected by the finite window.
    Returns ``{name: max deviation}``.
    """
    if functions is None:
        lam = spec.lam if spec.lam else 1.0
        functions = {
            "1": monomial(0),
            "x": monomial(1),
            "x^2": monomial(2),
            "x^3": monomial(3),
            "exp(+)": exponential(lam),
            "exp(-)": exponential(-lam),
        }
    m = max(2, math.ceil(halfwidth * 2**level))
    report = {}
    for name, f in functions.items():
        sig = sample_function(f, level, -m, 2 * m + 1, dim=3)
        for step in range(depth):
            sig = subdivide(make_mask(spec, level + step), sig)
        # dependency cone: nodes within 2^depth - 1 of the window edge are
        # contaminated by the zero extension
        margin = 2**depth - 1
        nodes = sig.nodes()
        valid = (nodes >= nodes[0] + 2 * margin) & (nodes <= nodes[-1] - 2 * margin)
        exact = np.array(
            [v_vector(f, sig.level, k, 3) for k in nodes[valid]]
        )
        report[name] = float(np.max(np.abs(sig.data[valid] - exact)))
    return report


# ----------------------------------------------------------------------
# basic limit functions
# ----------------------------------------------------------------------

def render_basic_limit(
    spec: SpaceSpec, depth: int, base_level: int = 0
) -> LimitFunctionTable:
    """Cascade rendering of the basic limit matrix ``F`` at ``base_level``.

    Starts from delta data at level ``base_level`` and subdivides
    ``depth`` times with the level-dependent masks; interpolation makes
    the dyadic samples exact, so row ``i`` of ``F`` at ``x = 2^-depth k``
    is ``2^{depth * i}`` times component ``i`` of the refined data.
    """
    if depth < 1:
        raise ValueError("depth must be >= 1")
    tables = []
    for j in range(3):
        data = np.zeros((5, 3))
        data[2, j] = 1.0
        sig = HermiteSignal(base_level, data, start=-2)
        for step in range(depth):
            sig = subdivide(make_mask(spec, base_level + step), sig)
        tables.append(sig)
    nodes = tables[0].nodes()
    keep = np.abs(nodes) <= 2**depth
    grid = nodes[keep] * 2.0**-depth
    scale = np.array([2.0 ** (depth * i) for i in range(3)])
    values = np.zeros((keep.sum(), 3, 3))
    for j, sig in enumerate(tables):
        values[:, :, j] = sig.data[keep] * scale
    return LimitFunctionTable(depth, grid, values)


@lru_cache(maxsize=64)
def _piece_coeffs(mu: float, j: int) -> tuple[np.ndarray, np.ndarray]:
    """Local-space coefficients of the two pieces of ``phi_j``.

    Right piece on [0, 1]: the unique element of the six-dimensional
    local space with Hermite data ``e_j`` at 0 and zero data at 1.  Left
    piece on [-1, 0]: the unique combination of ``(x+1)^{3,4,5}`` (the
    triple-zero subspace, frequency-free) with data ``e_j`` at 0.
    """
    basis = _local_basis(mu)
    m = np.zeros((6, 6))
    for c, f in enumerate(basis):
        m[:3, c] = _derivs(f, 0.0)
        m[3:, c] = _derivs(f, 1.0)
    rhs = np.zeros(6)
    rhs[j] = 1.0
    right = np.linalg.solve(m, rhs)
    left_basis = [monomial(q) for q in (3, 4, 5)]
    ml = np.zeros((3, 3))
    for c, f in enumerate(left_basis):
        ml[:, c] = _derivs(f, 1.0)
    rl = np.zeros(3)
    rl[j] = 1.0
    left = np.linalg.solve(ml, rl)
    right.setflags(write=False)
    left.setflags(write=False)
    return left, right


def closed_form_phi(
    spec: SpaceSpec, j: int, x: float, level: int = 0, derivative: int = 0
) -> float:
    """Closed-form evaluation of component ``phi_j`` at ``x``.

    The two polynomial/hyperbolic pieces are the solutions of the local
    Hermite problems that define the scheme (level ``level`` via the
    substitution ``lam -> 2^-level lam``); outside ``[-1, 1]`` the value
    is 0 (compact support).

    Note: these closed forms satisfy the Hermite end conditions exactly
    but are *not* exactly refinable, so they agree with the cascade limit
    only to about 1e-5 at lam = 2 (see the rendering comparison tools).
    """
    if j not in (0, 1, 2):
        raise ValueError("component must be one of 0, 1, 2")
    if not -1.0 <= x <= 1.0:
        return 0.0
    mu = spec.frequency_at(level)
    left, right = _piece_coeffs(mu, j)
    if x >= 0.0:
        basis = _local_basis(mu)
        return float(sum(c * f(x, derivative) for c, f in zip(right, basis)))
    t = x + 1.0
    basis = [monomial(q) for q in (3, 4, 5)]
    return float(sum(c * f(t, derivative) for c, f in zip(left, basis)))


def compare_cascade_closed_form(
    spec: SpaceSpec, depth: int = 7, base_level: int = 0
) -> dict[int, float]:
    """Max grid deviation between cascade and closed forms, per component."""
    table = render_basic_limit(spec, depth, base_level)
    out = {}
    for j in range(3):
        ref = np.array(
            [closed_form_phi(spec, j, x, level=base_level) for x in table.grid]
        )
        out[j] = float(np.max(np.abs(table.component(j) - ref)))
    return out


def check_refinement_equation(spec: SpaceSpec, level: int, depth: int) -> float:
    """Max residual of the two-scale relation between consecutive levels:

    ``F[n-1](x) = sum_k D^-1 F[n](2x - k) A[n-1]_k``  (n = ``level``),
    with both sides rendered by cascade on a common dyadic grid.
    """
    coarse = render_basic_limit(spec, depth, base_level=level - 1)
    fine = render_basic_limit(spec, depth, base_level=level)
    mask = make_mask(spec, level - 1)
    dinv = np.diag([1.0, 2.0, 4.0])
    half = 2**depth
    fine_at = {int(round(g * half)): fine.values[t] for t, g in enumerate(fine.grid)}

    def fmat(idx: int) -> np.ndarray:
        return fine_at.get(idx, np.zeros((3, 3)))

    res = 0.0
    for t, x in enumerate(coarse.grid):
        idx2 = int(round(2 * x * half))
        rhs = sum(dinv @ fmat(idx2 - k * half) @ mask.tap(k) for k in (-1, 0, 1))
        res = max(res, float(np.max(np.abs(coarse.values[t] - rhs))))
    return res

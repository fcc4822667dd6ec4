"""Matrix-valued Laurent polynomial (symbol) algebra.

A symbol is a finitely supported sequence of real ``r x r`` matrices
``P_k`` identified with the Laurent polynomial ``P(z) = sum_k P_k z^k``.
Symbols are the universal algebra object of this package: masks, filter
banks, annihilators and all factorization identities live here.

Conventions
-----------
* Coefficients are double-precision reals; evaluation may be complex.
* A tap whose max-abs entry is below :data:`TRIM_TOL` counts as zero and
  is trimmed from the support window.
* Two symbols are equal when their trimmed supports coincide and the
  coefficients agree entrywise within :data:`EQ_TOL`.

All instances are immutable after construction and all operations are
pure functions, so symbols are safe to share across threads.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

#: Max-abs threshold below which a coefficient matrix counts as zero.
TRIM_TOL = 1e-14

#: Entrywise tolerance for symbol equality.
EQ_TOL = 1e-12

#: Default residual acceptance threshold for :func:`divide_right`.
DIVIDE_TOL = 1e-10


class DivisionError(ValueError):
    """Raised when a symbol is not divisible: spectral condition violated."""


@dataclass(frozen=True)
class MatLaurent:
    """A matrix Laurent polynomial with explicit support window.

    Attributes
    ----------
    dim : int
        Matrix size ``r`` (coefficients are ``r x r``).
    lo, hi : int
        Support window: coefficients are attached to powers
        ``z^lo, ..., z^hi``.
    coeffs : numpy.ndarray
        Array of shape ``(hi - lo + 1, dim, dim)``; ``coeffs[i]`` is the
        coefficient of ``z^(lo + i)``.

    The zero symbol is normalized to ``lo == hi == 0`` with a single zero
    coefficient.  For any other symbol the first and last coefficients are
    nonzero after trimming.
    """

    dim: int
    lo: int
    hi: int
    coeffs: np.ndarray = field(repr=False)

    def __post_init__(self):
        c = np.asarray(self.coeffs, dtype=float)
        if c.shape != (self.hi - self.lo + 1, self.dim, self.dim):
            raise ValueError(
                f"coefficient array shape {c.shape} inconsistent with "
                f"window [{self.lo}, {self.hi}] and dim {self.dim}"
            )
        c = c.copy()
        c.setflags(write=False)
        object.__setattr__(self, "coeffs", c)

    # ------------------------------------------------------------------
    # constructors
    # ------------------------------------------------------------------

    @staticmethod
    def from_taps(dim: int, taps: dict[int, np.ndarray]) -> "MatLaurent":
        """Build a symbol from a ``{power: matrix}`` map (trimmed)."""
        kept = {
            k: np.asarray(m, dtype=float)
            for k, m in taps.items()
            if np.max(np.abs(m)) >= TRIM_TOL
        }
        if not kept:
            return MatLaurent.zero(dim)
        lo, hi = min(kept), max(kept)
        coeffs = np.zeros((hi - lo + 1, dim, dim))
        for k, m in kept.items():
            if m.shape != (dim, dim):
                raise ValueError(f"tap {k} has shape {m.shape}, expected {(dim, dim)}")
            coeffs[k - lo] = m
        return MatLaurent(dim, lo, hi, coeffs)

    @staticmethod
    def zero(dim: int) -> "MatLaurent":
        """The zero symbol."""
        return MatLaurent(dim, 0, 0, np.zeros((1, dim, dim)))

    @staticmethod
    def identity(dim: int, power: int = 0) -> "MatLaurent":
        """The symbol ``z^power * I``."""
        return MatLaurent.from_taps(dim, {power: np.eye(dim)})

    # ------------------------------------------------------------------
    # accessors
    # ------------------------------------------------------------------

    def tap(self, k: int) -> np.ndarray:
        """Coefficient of ``z^k`` (a zero matrix outside the window)."""
        if self.lo <= k <= self.hi:
            return self.coeffs[k - self.lo]
        return np.zeros((self.dim, self.dim))

    def taps(self) -> dict[int, np.ndarray]:
        """Nonzero coefficients as a ``{power: matrix}`` map."""
        return {
            self.lo + i: self.coeffs[i]
            for i in range(len(self.coeffs))
            if np.max(np.abs(self.coeffs[i])) >= TRIM_TOL
        }

    @property
    def is_zero(self) -> bool:
        return np.max(np.abs(self.coeffs)) < TRIM_TOL

    def __eq__(self, other) -> bool:
        if not isinstance(other, MatLaurent):
            return NotImplemented
        if self.dim != other.dim:
            return False
        lo = min(self.lo, other.lo)
        hi = max(self.hi, other.hi)
        return all(
            np.max(np.abs(self.tap(k) - other.tap(k))) <= EQ_TOL
            for k in range(lo, hi + 1)
        )

    # ------------------------------------------------------------------
    # algebra
    # ------------------------------------------------------------------

    def add(self, other: "MatLaurent") -> "MatLaurent":
        """Coefficientwise sum; support is the trimmed union window."""
        if self.dim != other.dim:
            raise ValueError(f"dimension mismatch: {self.dim} vs {other.dim}")
        lo = min(self.lo, other.lo)
        hi = max(self.hi, other.hi)
        return MatLaurent.from_taps(
            self.dim, {k: self.tap(k) + other.tap(k) for k in range(lo, hi + 1)}
        )

    def __add__(self, other):
        return self.add(other)

    def __neg__(self):
        return MatLaurent.from_taps(self.dim, {k: -m for k, m in self.taps().items()})

    def __sub__(self, other):
        return self.add(-other)

    def mul(self, other: "MatLaurent") -> "MatLaurent":
        """Cauchy product; the matrix product order is preserved."""
        if self.dim != other.dim:
            raise ValueError(f"dimension mismatch: {self.dim} vs {other.dim}")
        out: dict[int, np.ndarray] = {}
        for i, a in self.taps().items():
            for j, b in other.taps().items():
                out[i + j] = out.get(i + j, 0) + a @ b
        return MatLaurent.from_taps(self.dim, out)

    def __matmul__(self, other):
        return self.mul(other)

    def scale(self, s: float) -> "MatLaurent":
        """Scalar multiple ``s * P(z)``."""
        return MatLaurent.from_taps(self.dim, {k: s * m for k, m in self.taps().items()})

    def involution(self) -> "MatLaurent":
        """The conjugate symbol ``P#(z) = P(z^-1)^T``: taps ``k -> P_{-k}^T``."""
        return MatLaurent.from_taps(self.dim, {-k: m.T for k, m in self.taps().items()})

    def negate_arg(self) -> "MatLaurent":
        """The substitution ``z -> -z``: taps ``k -> (-1)^k P_k``."""
        return MatLaurent.from_taps(
            self.dim, {k: ((-1) ** k) * m for k, m in self.taps().items()}
        )

    def upsample(self) -> "MatLaurent":
        """The substitution ``z -> z^2``: tap ``k`` moves to position ``2k``."""
        return MatLaurent.from_taps(self.dim, {2 * k: m for k, m in self.taps().items()})

    def eval(self, z: complex) -> np.ndarray:
        """Evaluate ``sum_k P_k z^k`` at a nonzero scalar ``z`` (Horner)."""
        if z == 0:
            raise ValueError("cannot evaluate a Laurent polynomial at z = 0")
        acc = np.zeros((self.dim, self.dim), dtype=complex)
        for c in self.coeffs[::-1]:
            acc = acc * z + c
        return acc * (z ** self.lo)

    # ------------------------------------------------------------------
    # division
    # ------------------------------------------------------------------

    def divide_right(self, divisor: "MatLaurent", tol: float = DIVIDE_TOL) -> "MatLaurent":
        """Solve ``self = R * divisor`` for ``R`` by coefficient matching.

        The unknown support of ``R`` is forced by the windows:
        ``[self.lo - divisor.lo, self.hi - divisor.hi]``.  One dense
        least-squares system over all unknown taps of ``R`` is assembled
        (supports are tiny, so robustness beats speed) and the result is
        accepted only if the max coefficient residual of ``R * divisor -
        self`` is below ``tol``.

        Raises
        ------
        DivisionError
            If the windows admit no quotient or the residual exceeds
            ``tol`` ("not divisible: spectral condition violated").
        """
        if self.dim != divisor.dim:
            raise ValueError(f"dimension mismatch: {self.dim} vs {divisor.dim}")
        if divisor.is_zero:
            raise DivisionError("division by the zero symbol")
        r = self.dim
        lo_q, hi_q = self.lo - divisor.lo, self.hi - divisor.hi
        if lo_q > hi_q:
            raise DivisionError(
                "not divisible: spectral condition violated (empty quotient window)"
            )
        q_taps = list(range(lo_q, hi_q + 1))
        out_taps = list(range(lo_q + divisor.lo, hi_q + divisor.hi + 1))
        # For each output tap t:  sum_j R_j D_{t-j} = L_t, i.e. transposed,
        # L_t^T = [D_{t-j}^T]_j stacked against Y = [R_j^T]_j.
        rows, rhs = [], []
        for t in out_taps:
            rows.append(np.hstack([divisor.tap(t - j).T for j in q_taps]))
            rhs.append(self.tap(t).T)
        sol, *_ = np.linalg.lstsq(np.vstack(rows), np.vstack(rhs), rcond=None)
        quotient = MatLaurent.from_taps(
            r, {j: sol[i * r : (i + 1) * r].T for i, j in enumerate(q_taps)}
        )
        residual = max_coeff_dev(quotient.mul(divisor), self)
        if residual > tol:
            raise DivisionError(
                f"not divisible: spectral condition violated (residual {residual:.3e})"
            )
        return quotient

    # ------------------------------------------------------------------
    # serialization
    # ------------------------------------------------------------------

    def to_json_dict(self) -> dict:
        """JSON-ready representation ``{dim, taps: [{k, matrix}]}``."""
        return {
            "dim": self.dim,
            "taps": [
                {"k": k, "matrix": [float(x) for x in m.reshape(-1)]}
                for k, m in sorted(self.taps().items())
            ],
        }

    @staticmethod
    def from_json_dict(d: dict) -> "MatLaurent":
        dim = int(d["dim"])
        taps = {
            int(t["k"]): np.asarray(t["matrix"], dtype=float).reshape(dim, dim)
            for t in d["taps"]
        }
        return MatLaurent.from_taps(dim, taps)

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict())

    @staticmethod
    def from_json(s: str) -> "MatLaurent":
        return MatLaurent.from_json_dict(json.loads(s))


@dataclass(frozen=True)
class Mask:
    """A finitely supported matrix coefficient sequence.

    Bijective with :class:`MatLaurent` via ``index k <-> power z^k``;
    kept as a named type because masks carry subdivision semantics
    (stencil application) while symbols carry algebra.
    """

    dim: int
    symbol: MatLaurent

    @staticmethod
    def from_taps(dim: int, taps: dict[int, np.ndarray]) -> "Mask":
        return Mask(dim, MatLaurent.from_taps(dim, taps))

    def tap(self, k: int) -> np.ndarray:
        return self.symbol.tap(k)

    def taps(self) -> dict[int, np.ndarray]:
        return self.symbol.taps()

    @property
    def support(self) -> range:
        return range(self.symbol.lo, self.symbol.hi + 1)

    def to_json_dict(self) -> dict:
        return self.symbol.to_json_dict()

    @staticmethod
    def from_json_dict(d: dict) -> "Mask":
        sym = MatLaurent.from_json_dict(d)
        return Mask(sym.dim, sym)


def max_coeff_dev(P: MatLaurent, Q: MatLaurent) -> float:
    """Max-abs entrywise deviation between two symbols over the union window."""
    lo = min(P.lo, Q.lo)
    hi = max(P.hi, Q.hi)
    return max(
        float(np.max(np.abs(P.tap(k) - Q.tap(k)))) for k in range(lo, hi + 1)
    )


def unit_circle_points(count: int, seed: int | None = None) -> np.ndarray:
    """``count`` points on the unit circle.

    Deterministic equispaced points when ``seed`` is None (offset to avoid
    the trivial ``z = 1``), otherwise uniformly random phases.
    """
    if seed is None:
        theta = 2 * np.pi * (np.arange(count) + 0.37) / count
    else:
        theta = np.random.default_rng(seed).uniform(0, 2 * np.pi, count)
    return np.exp(1j * theta)

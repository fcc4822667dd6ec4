"""Hermite data model: level-tagged value/derivative samples and file I/O.

A Hermite signal at level ``n`` stores, per node ``k``, the vector

    v_k = [f(2^-n k), 2^-n f'(2^-n k), ..., 2^-nd f^(d)(2^-n k)]

("v-coordinates": derivative ``j`` pre-scaled by ``2^-nj``).  These are
the natural coordinates in which the subdivision stencil applies without
explicit diagonal rescaling at runtime.

Boundary policy: periodic extension is the single supported policy for
finite-signal convolutions; signal lengths must be divisible by ``2^L``
before a depth-``L`` transform.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np


@dataclass(frozen=True)
class HermiteSignal:
    """A finite sequence of Hermite vectors in v-coordinates.

    Attributes
    ----------
    level : int
        The scale level ``n``; node ``k`` sits at ``x = 2^-n (start+k)``.
    data : numpy.ndarray
        Shape ``(N, dim)``; row ``k`` is the v-vector at node ``start+k``.
    start : int
        Integer index of the first node (0 for periodic transform data).
    """

    level: int
    data: np.ndarray = field(repr=False)
    start: int = 0

    def __post_init__(self):
        d = np.asarray(self.data, dtype=float)
        if d.ndim != 2:
            raise ValueError(f"signal data must be 2-D, got shape {d.shape}")
        d = d.copy()
        d.setflags(write=False)
        object.__setattr__(self, "data", d)

    @property
    def dim(self) -> int:
        return self.data.shape[1]

    def __len__(self) -> int:
        return self.data.shape[0]

    def nodes(self) -> np.ndarray:
        """Integer node indices."""
        return self.start + np.arange(len(self))

    def grid(self) -> np.ndarray:
        """Physical positions ``2^-level * node``."""
        return self.nodes() * 2.0 ** (-self.level)


@dataclass(frozen=True)
class DetailSignal:
    """Downsampled detail vectors of one analysis step.

    The fine-grid details of an interpolatory bank vanish at even
    indices, so only ``d_hat[k] = d[2k+1]`` is stored; the length equals
    half the parent approximation length.
    """

    level: int
    data: np.ndarray = field(repr=False)

    def __post_init__(self):
        d = np.asarray(self.data, dtype=float)
        d = d.copy()
        d.setflags(write=False)
        object.__setattr__(self, "data", d)

    @property
    def dim(self) -> int:
        return self.data.shape[1]

    def __len__(self) -> int:
        return self.data.shape[0]


# ----------------------------------------------------------------------
# exact sampling
# ----------------------------------------------------------------------

def monomial(q: int):
    """The function ``x^q`` with all derivatives, as ``f(x, j)``."""

    def f(x: float, j: int) -> float:
        if j > q:
            return 0.0
        return math.perm(q, j) * x ** (q - j)

    return f


def exponential(a: float):
    """The function ``e^{a x}`` with all derivatives, as ``f(x, j)``."""

    def f(x: float, j: int) -> float:
        return a**j * math.exp(a * x)

    return f


def hyperbolic_cosine(lam: float):
    """``cosh(lam x)`` with all derivatives, as ``f(x, j)``."""

    def f(x: float, j: int) -> float:
        g = math.cosh if j % 2 == 0 else math.sinh
        return lam**j * g(lam * x)

    return f


def sine(omega: float):
    """``sin(omega x)`` with all derivatives, as ``f(x, j)``."""

    def f(x: float, j: int) -> float:
        g = (math.sin, math.cos, lambda t: -math.sin(t), lambda t: -math.cos(t))
        return omega**j * g[j % 4](omega * x)

    return f


def v_vector(f, level: int, k: int, dim: int) -> np.ndarray:
    """The v-coordinate vector of ``f`` at level ``level``, node ``k``."""
    x = 2.0 ** (-level) * k
    return np.array([2.0 ** (-level * j) * f(x, j) for j in range(dim)])


def sample_function(f, level: int, start: int, count: int, dim: int = 3) -> HermiteSignal:
    """Exact v-coordinate samples of ``f`` on ``count`` consecutive nodes.

    ``f(x, j)`` must return the ``j``-th derivative at ``x`` for
    ``j < dim``; tabulated data should be wrapped in such a callable (a
    missing derivative column is the caller's error to surface).
    """
    data = np.array([v_vector(f, level, start + k, dim) for k in range(count)])
    return HermiteSignal(level, data, start)


def norms(signal: HermiteSignal) -> tuple[float, float]:
    """``(max-abs, sum-of-squares energy)`` of the signal entries."""
    if signal.data.size == 0:
        return 0.0, 0.0
    return float(np.max(np.abs(signal.data))), float(np.sum(signal.data**2))


# ----------------------------------------------------------------------
# CSV I/O
# ----------------------------------------------------------------------

class SignalFormatError(ValueError):
    """Raised for malformed signal files; the message names the line."""


def write_signal(signal: HermiteSignal, path) -> None:
    """Write CSV: metadata line, header ``k,f0,...,fd``, one row per node.

    Numbers use shortest round-trip decimal representation (17
    significant digits), so write/read is lossless.
    """
    cols = ",".join(f"f{j}" for j in range(signal.dim))
    with open(path, "w") as fh:
        fh.write(f"# level={signal.level} dim={signal.dim}\n")
        fh.write(f"k,{cols}\n")
        for k, row in zip(signal.nodes(), signal.data):
            fh.write(f"{k}," + ",".join(repr(float(x)) for x in row) + "\n")


def read_signal(path) -> HermiteSignal:
    """Read the CSV format of :func:`write_signal`."""
    with open(path) as fh:
        lines = [ln.rstrip("\n") for ln in fh]
    if not lines or not lines[0].startswith("# "):
        raise SignalFormatError(
            f"{path}: line 1: missing metadata line '# level=n dim=d+1'"
        )
    meta = {}
    for tok in lines[0][2:].split():
        if "=" not in tok:
            raise SignalFormatError(f"{path}: line 1: malformed metadata token {tok!r}")
        key, val = tok.split("=", 1)
        meta[key] = val
    try:
        level, dim = int(meta["level"]), int(meta["dim"])
    except (KeyError, ValueError) as exc:
        raise SignalFormatError(f"{path}: line 1: need integer level= and dim=") from exc
    expect = "k," + ",".join(f"f{j}" for j in range(dim))
    if len(lines) < 2 or lines[1] != expect:
        raise SignalFormatError(
            f"{path}: line 2: expected header {expect!r}, got {lines[1] if len(lines) > 1 else ''!r}"
        )
    nodes, rows = [], []
    for i, ln in enumerate(lines[2:], start=3):
        if not ln.strip():
            continue
        cells = ln.split(",")
        if len(cells) != dim + 1:
            raise SignalFormatError(
                f"{path}: line {i}: expected {dim + 1} cells, got {len(cells)}"
            )
        try:
            nodes.append(int(cells[0]))
            rows.append([float(c) for c in cells[1:]])
        except ValueError as exc:
            raise SignalFormatError(f"{path}: line {i}: non-numeric cell") from exc
    if not rows:
        raise SignalFormatError(f"{path}: no data rows")
    nodes_arr = np.asarray(nodes)
    if np.any(np.diff(nodes_arr) != 1):
        raise SignalFormatError(f"{path}: node indices must be consecutive")
    return HermiteSignal(level, np.asarray(rows), start=int(nodes_arr[0]))

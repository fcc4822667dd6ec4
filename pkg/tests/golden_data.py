"""Reference matrices for the stationary (frequency -> 0) quintic scheme.

All entries are rational; symbols are given as tap maps ``{power: matrix}``.
The high-pass reference is recorded in its conjugate display ``B~#(z)``
(taps -2..0), which is how the reflected-index form is usually written.
"""

import numpy as np

D = np.diag([1.0, 0.5, 0.25])

#: Stationary mask taps of A(z).
A_TAPS = {
    -1: np.array([[32, -10, 1], [60, -14, 1], [0, 24, -4]]) / 64.0,
    0: D,
    1: np.array([[32, 10, 1], [-60, -14, -1], [0, -24, -4]]) / 64.0,
}

#: Taylor operator T(z) taps (order 2).
T_TAPS = {
    -1: np.eye(3),
    0: np.array([[-1.0, -1.0, -0.5], [0.0, -1.0, -1.0], [0.0, 0.0, -1.0]]),
}

#: Subdivision quotient R(z) of T(z) A(z) = R(z) T(z^2).
R_TAPS = {
    0: np.array([[32, -10, 1], [60, -14, 1], [0, 24, -4]]) / 64.0,
    1: np.array([[-28, 12, 0], [-60, 22, 3], [0, -24, 20]]) / 64.0,
}

#: Conjugate high-pass display B~#(z) = (1/(16 z^2)) [...] as taps -2..0.
B_TILDE_SHARP_TAPS = {
    -2: np.array([[-8, 5, -1], [-15, 7, -1], [0, -12, 4]]) / 16.0,
    -1: np.eye(3),
    0: np.array([[-8, -5, -1], [15, 7, 1], [0, 12, 4]]) / 16.0,
}

#: Wavelet quotient S(z) of B~#(z) = S(z) T(z).
S_TAPS = {
    -1: np.array([[-16, 10, -2], [-30, 14, -2], [0, -24, 8]]) / 32.0,
    0: np.array([[16, -6, 0], [-30, 16, -3], [0, -24, 16]]) / 32.0,
}


def max_tap_dev(symbol, taps: dict) -> float:
    """Max entrywise deviation of a MatLaurent from a golden tap map."""
    keys = set(taps) | set(symbol.taps())
    return max(
        float(np.max(np.abs(symbol.tap(k) - taps.get(k, np.zeros((3, 3))))))
        for k in keys
    )

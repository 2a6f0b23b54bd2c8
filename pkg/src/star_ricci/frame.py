"""Pointwise linear algebra in the adapted frame (e1, e2 = phi e1, xi).

Vectors are length-3 float arrays of frame coefficients and operators are
3x3 arrays whose column ``j`` is the image of frame vector ``j``.  The frame
is orthonormal, so the metric is the Euclidean dot product and ``eta`` reads
off the last coefficient.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

DEFAULT_EPS = 1e-9

E1 = np.array([1.0, 0.0, 0.0])
E2 = np.array([0.0, 1.0, 0.0])
XI = np.array([0.0, 0.0, 1.0])
FRAME = (E1, E2, XI)
FRAME_NAMES = ("e1", "e2", "xi")

_PHI = np.array(
    [
        [0.0, -1.0, 0.0],
        [1.0, 0.0, 0.0],
        [0.0, 0.0, 0.0],
    ]
)


@dataclass(frozen=True)
class AmbientSpace:
    """Non-flat complex space form of constant holomorphic sectional curvature ``c``."""

    c: float

    def __post_init__(self) -> None:
        if self.c == 0:
            raise ValueError("ambient curvature c must be nonzero")

    @classmethod
    def projective(cls) -> AmbientSpace:
        return cls(4.0)

    @classmethod
    def hyperbolic(cls) -> AmbientSpace:
        return cls(-4.0)

    @classmethod
    def from_name(cls, name: str) -> AmbientSpace:
        key = name.lower()
        if key in SPACE_ALIASES:
            return cls(SPACE_ALIASES[key])
        raise ValueError(f"unknown space {name!r}; expected one of {sorted(SPACE_ALIASES)}")

    @property
    def is_hyperbolic(self) -> bool:
        return self.c < 0

    @property
    def name(self) -> str:
        if self.c == 4.0:
            return "cp2"
        if self.c == -4.0:
            return "ch2"
        return f"c={self.c:g}"


SPACE_ALIASES = {"cp2": 4.0, "cpp2": 4.0, "ch2": -4.0, "chh2": -4.0}


def vector(a: float, b: float, c: float) -> np.ndarray:
    return np.array([a, b, c], dtype=float)


def g(x: np.ndarray, y: np.ndarray) -> float:
    """Metric; the frame is orthonormal."""
    return float(np.dot(x, y))


def eta(x: np.ndarray) -> float:
    return float(x[2])


def phi_operator() -> np.ndarray:
    """Structure tensor: e1 -> e2, e2 -> -e1, xi -> 0."""
    return _PHI.copy()


def identity() -> np.ndarray:
    return np.eye(3)


def eta_xi() -> np.ndarray:
    """The operator X -> eta(X) xi."""
    return np.outer(XI, XI)


def wedge(x: np.ndarray, y: np.ndarray, z: np.ndarray) -> np.ndarray:
    """(X ^ Y)Z = g(Y,Z)X - g(X,Z)Y."""
    return g(y, z) * x - g(x, z) * y


def apply(op: np.ndarray, x: np.ndarray) -> np.ndarray:
    return op @ x


def compose(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """a after b."""
    return a @ b


def subtract(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return a - b


def operator_norm(op: np.ndarray) -> float:
    """Max absolute entry, used for every residual threshold in the package."""
    op = np.asarray(op, dtype=float)
    if op.size == 0:
        return 0.0
    return float(np.max(np.abs(op)))


def is_symmetric(op: np.ndarray, eps: float = DEFAULT_EPS) -> bool:
    return operator_norm(op - op.T) < eps

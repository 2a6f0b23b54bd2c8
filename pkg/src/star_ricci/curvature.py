"""Gauss-equation curvature, the *-Ricci operator and the structure Jacobi operator."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .frame import FRAME, XI, AmbientSpace, g, phi_operator
from .models import HopfModel, NonHopfFrameData


@dataclass(frozen=True)
class CurvatureTensor:
    """``data[i, j]`` is the operator Z -> R(e_i, e_j)Z in frame columns."""

    data: np.ndarray

    def operator(self, i: int, j: int) -> np.ndarray:
        return self.data[i, j]

    def apply(self, x: np.ndarray, y: np.ndarray, z: np.ndarray) -> np.ndarray:
        """R(X, Y)Z for arbitrary frame vectors, by multilinearity."""
        return np.einsum("i,j,ijak,k->a", x, y, self.data, z)


def gauss_equation(a: np.ndarray, c: float, x: np.ndarray, y: np.ndarray, z: np.ndarray) -> np.ndarray:
    """R(X,Y)Z for a single triple, term by term."""
    phi = phi_operator()
    px, py, pz = phi @ x, phi @ y, phi @ z
    ambient = g(y, z) * x - g(x, z) * y + g(py, z) * px - g(px, z) * py - 2.0 * g(px, y) * pz
    return 0.25 * c * ambient + g(a @ y, z) * (a @ x) - g(a @ x, z) * (a @ y)


def riemann(a: np.ndarray, space: AmbientSpace) -> CurvatureTensor:
    """Evaluate the Gauss equation on every frame triple at once.

    ``data[i, j, :, k]`` is R(e_i, e_j)e_k; frame orthonormality turns each
    metric pairing into a matrix entry.
    """
    eye = np.eye(3)
    phi = phi_operator()
    a = np.asarray(a, dtype=float)
    ambient = (
        np.einsum("jk,ai->ijak", eye, eye)
        - np.einsum("ik,aj->ijak", eye, eye)
        + np.einsum("kj,ai->ijak", phi, phi)
        - np.einsum("ki,aj->ijak", phi, phi)
        - 2.0 * np.einsum("ji,ak->ijak", phi, phi)
    )
    shape = np.einsum("kj,ai->ijak", a, a) - np.einsum("ki,aj->ijak", a, a)
    return CurvatureTensor(0.25 * space.c * ambient + shape)


def star_ricci(a: np.ndarray, space: AmbientSpace) -> np.ndarray:
    """S* = -(c phi^2 + (phi A)^2).  Not symmetric in general; never symmetrized."""
    phi = phi_operator()
    pa = phi @ a
    return -(space.c * (phi @ phi) + pa @ pa)


def star_ricci_hopf_closed(alpha: float, lam: float, nu: float, c: float) -> np.ndarray:
    """S* xi = 0 and S* = (c + lambda nu) on the holomorphic plane."""
    k = c + lam * nu
    return np.diag([k, k, 0.0])


def star_ricci_nonhopf_closed(d: NonHopfFrameData, c: float) -> np.ndarray:
    """S* xi = beta mu U - beta delta phiU, S* = (c + gamma mu - delta^2) on U, phiU."""
    k = c + d.gamma * d.mu - d.delta**2
    return np.array(
        [
            [k, 0.0, d.beta * d.mu],
            [0.0, k, -d.beta * d.delta],
            [0.0, 0.0, 0.0],
        ]
    )


def star_ricci_model(m: HopfModel) -> np.ndarray:
    return star_ricci(np.diag([m.lam, m.nu, m.alpha]), m.space)


def structure_jacobi(a: np.ndarray, space: AmbientSpace) -> np.ndarray:
    """l X = R(X, xi) xi, read off the full curvature tensor."""
    r = riemann(a, space)
    return np.column_stack([r.apply(e, XI, XI) for e in FRAME])


def structure_jacobi_closed(a: np.ndarray, space: AmbientSpace) -> np.ndarray:
    """Closed form (c/4)(I - eta x xi) + alpha A - (A xi)(A xi)^T with alpha = g(A xi, xi).

    Independent of :func:`riemann`; the two are cross-checked.
    """
    axi = a[:, 2]
    alpha = axi[2]
    return 0.25 * space.c * (np.eye(3) - np.outer(XI, XI)) + alpha * a - np.outer(axi, axi)


def structure_jacobi_nonhopf_closed(d: NonHopfFrameData, c: float) -> np.ndarray:
    """Entries written directly from the frame scalars."""
    return np.array(
        [
            [c / 4 + d.alpha * d.gamma - d.beta**2, d.alpha * d.delta, 0.0],
            [d.alpha * d.delta, c / 4 + d.alpha * d.mu, 0.0],
            [0.0, 0.0, 0.0],
        ]
    )


def curvature_defects(r: CurvatureTensor) -> dict[str, float]:
    """Max violation of antisymmetry, metric antisymmetry and first Bianchi."""
    t = r.data  # t[i, j, a, k] = g(R(e_i, e_j) e_k, e_a)
    antisym = np.max(np.abs(t + t.transpose(1, 0, 2, 3)))
    metric = np.max(np.abs(t + t.transpose(0, 1, 3, 2)))
    # R(e_i,e_j)e_k + R(e_j,e_k)e_i + R(e_k,e_i)e_j, indexed [i, j, k, a]
    v = np.einsum("ijak->ijka", t)
    bianchi = np.max(np.abs(v + v.transpose(1, 2, 0, 3) + v.transpose(2, 0, 1, 3)))
    return {"antisymmetry": float(antisym), "metric": float(metric), "bianchi": float(bianchi)}

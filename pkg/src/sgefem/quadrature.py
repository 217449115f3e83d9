"""Quadrature rules on reference simplices in barycentric coordinates.

Rules are built by collapsed tensor products of 1D Gauss(-Jacobi) rules, so
weights may be asymmetric but exactness to the declared degree is guaranteed.
Points are stored barycentrically, which makes the same rule usable on a
physical cell, on an edge, or on a face embedded in a higher dimension.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import factorial

import numpy as np
from scipy.special import roots_jacobi, roots_legendre

MAX_EDGE_DEGREE = 31
MAX_CELL_DEGREE = 20


def simplex_measure(verts: np.ndarray) -> float:
    """k-dimensional measure of a k-simplex, possibly embedded in R^d."""
    verts = np.asarray(verts, dtype=float)
    k = verts.shape[0] - 1
    if k == 0:
        return 1.0
    E = verts[1:] - verts[0]
    gram = E @ E.T
    return float(np.sqrt(max(np.linalg.det(gram), 0.0)) / factorial(k))


@dataclass(frozen=True)
class QuadratureRule:
    """Barycentric points and weights on a reference k-simplex.

    Weights sum to the reference measure 1/k!.
    """

    points: np.ndarray   # (npts, k+1)
    weights: np.ndarray  # (npts,)
    degree: int

    @property
    def npoints(self) -> int:
        return self.weights.shape[0]

    @property
    def ref_measure(self) -> float:
        return 1.0 / factorial(self.points.shape[1] - 1)

    def physical(self, verts):
        """Map the rule onto a physical simplex given by its vertices.

        Returns (points, weights) with points of shape (npts, d_embed) and
        weights scaled so that sum(weights) equals the simplex measure.
        """
        verts = np.asarray(verts, dtype=float)
        pts = self.points @ verts
        scale = simplex_measure(verts) / self.ref_measure
        return pts, self.weights * scale


def _gauss01(n):
    x, w = roots_legendre(n)
    return (x + 1.0) / 2.0, w / 2.0


def _jacobi01(n, alpha):
    # weight (1-x)^alpha on [0, 1]
    x, w = roots_jacobi(n, alpha, 0.0)
    return (x + 1.0) / 2.0, w / 2.0 ** (alpha + 1)


@lru_cache(maxsize=None)
def edge_rule(degree: int) -> QuadratureRule:
    """Gauss rule on a segment, exact for polynomials up to `degree`."""
    if not 0 <= degree <= MAX_EDGE_DEGREE:
        raise ValueError(f"edge rule degree must be in [0, {MAX_EDGE_DEGREE}]")
    n = max((degree + 2) // 2, 1)
    x, w = _gauss01(n)
    pts = np.stack([1.0 - x, x], axis=1)
    return QuadratureRule(pts, w, degree)


@lru_cache(maxsize=None)
def triangle_rule(degree: int) -> QuadratureRule:
    """Collapsed tensor rule on the reference triangle, exact to `degree`."""
    if not 0 <= degree <= MAX_CELL_DEGREE:
        raise ValueError(f"triangle rule degree must be in [0, {MAX_CELL_DEGREE}]")
    n = max((degree + 2) // 2, 1)
    u, wu = _jacobi01(n, 1.0)       # absorbs the (1-u) jacobian
    s, ws = _gauss01(n)
    U, S = np.meshgrid(u, s, indexing="ij")
    W = np.outer(wu, ws)
    lam1 = U
    lam2 = (1.0 - U) * S
    lam0 = 1.0 - lam1 - lam2
    pts = np.stack([lam0.ravel(), lam1.ravel(), lam2.ravel()], axis=1)
    return QuadratureRule(pts, W.ravel(), degree)


@lru_cache(maxsize=None)
def tetrahedron_rule(degree: int) -> QuadratureRule:
    """Collapsed tensor rule on the reference tetrahedron, exact to `degree`."""
    if not 0 <= degree <= MAX_CELL_DEGREE:
        raise ValueError(f"tetrahedron rule degree must be in [0, {MAX_CELL_DEGREE}]")
    n = max((degree + 2) // 2, 1)
    u, wu = _jacobi01(n, 2.0)
    s, ws = _jacobi01(n, 1.0)
    t, wt = _gauss01(n)
    U, S, T = np.meshgrid(u, s, t, indexing="ij")
    W = np.einsum("i,j,k->ijk", wu, ws, wt)
    lam1 = U
    lam2 = (1.0 - U) * S
    lam3 = (1.0 - U) * (1.0 - S) * T
    lam0 = 1.0 - lam1 - lam2 - lam3
    pts = np.stack([lam0.ravel(), lam1.ravel(), lam2.ravel(), lam3.ravel()], axis=1)
    return QuadratureRule(pts, W.ravel(), degree)


def simplex_rule(nvert: int, degree: int) -> QuadratureRule:
    """Rule for a simplex with `nvert` vertices (segment/triangle/tet)."""
    if nvert == 2:
        return edge_rule(degree)
    if nvert == 3:
        return triangle_rule(degree)
    if nvert == 4:
        return tetrahedron_rule(degree)
    raise ValueError("only segments, triangles and tetrahedra are supported")


def barycentric_monomial_integral(exponents) -> float:
    """Exact integral of prod(lambda_i^a_i) over the reference simplex.

    Classic factorial formula; the reference k-simplex has measure 1/k!.
    """
    a = [int(e) for e in exponents]
    k = len(a) - 1
    num = 1.0
    for ai in a:
        num *= factorial(ai)
    return num * factorial(k) / factorial(sum(a) + k) / factorial(k)

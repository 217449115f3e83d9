"""Polynomial fields on simplices in barycentric monomial form.

A polynomial of degree n on a d-simplex is stored as coefficients over the
homogeneous barycentric monomials lambda^alpha with |alpha| = n (any
polynomial of degree <= n can be written this way because sum(lambda) = 1).
Fields may be scalar or carry an arbitrary leading component shape;
derivatives are exact since the barycentric coordinates are affine.
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np


@lru_cache(maxsize=None)
def monomial_exponents(nvars: int, degree: int) -> np.ndarray:
    """All multi-indices alpha with len(alpha) = nvars and |alpha| = degree.

    Returned as an int array of shape (nmono, nvars) in a fixed
    lexicographic order.
    """
    if nvars == 1:
        return np.array([[degree]], dtype=int)
    rows = []
    for k in range(degree, -1, -1):
        tail = monomial_exponents(nvars - 1, degree - k)
        head = np.full((tail.shape[0], 1), k, dtype=int)
        rows.append(np.hstack([head, tail]))
    out = np.vstack(rows)
    out.setflags(write=False)
    return out


@lru_cache(maxsize=None)
def _monomial_index(nvars: int, degree: int) -> dict:
    exps = monomial_exponents(nvars, degree)
    return {tuple(e): i for i, e in enumerate(exps)}


@lru_cache(maxsize=None)
def _product_map(nvars: int, deg1: int, deg2: int) -> np.ndarray:
    """Index map: monomial i (deg1) * monomial j (deg2) -> monomial (deg1+deg2)."""
    e1 = monomial_exponents(nvars, deg1)
    e2 = monomial_exponents(nvars, deg2)
    lookup = _monomial_index(nvars, deg1 + deg2)
    out = np.empty((e1.shape[0], e2.shape[0]), dtype=int)
    for i, a in enumerate(e1):
        for j, b in enumerate(e2):
            out[i, j] = lookup[tuple(a + b)]
    out.setflags(write=False)
    return out


@lru_cache(maxsize=None)
def _raise_map(nvars: int, degree: int) -> np.ndarray:
    """Matrix R with c_raised = c @ R.T expressing multiplication by sum(lambda).

    Maps degree-`degree` coefficients to degree-`degree+1` coefficients of the
    same polynomial.
    """
    exps = monomial_exponents(nvars, degree)
    lookup = _monomial_index(nvars, degree + 1)
    nout = len(lookup)
    R = np.zeros((nout, exps.shape[0]))
    for j, a in enumerate(exps):
        for i in range(nvars):
            b = a.copy()
            b[i] += 1
            R[lookup[tuple(b)], j] += 1.0
    R.setflags(write=False)
    return R


@lru_cache(maxsize=None)
def _diff_maps(nvars: int, degree: int) -> np.ndarray:
    """Barycentric-direction derivative maps, shape (nvars, nmono_out, nmono_in).

    Map i sends lambda^alpha to alpha_i * lambda^(alpha - e_i); the spatial
    gradient is then sum_i grad(lambda_i) * map_i.
    """
    if degree == 0:
        return np.zeros((nvars, 1, 1))
    exps = monomial_exponents(nvars, degree)
    lookup = _monomial_index(nvars, degree - 1)
    nout = len(lookup)
    D = np.zeros((nvars, nout, exps.shape[0]))
    for j, a in enumerate(exps):
        for i in range(nvars):
            if a[i] > 0:
                b = a.copy()
                b[i] -= 1
                D[i, lookup[tuple(b)], j] = a[i]
    D.setflags(write=False)
    return D


def barycentric_maps(verts: np.ndarray):
    """Affine barycentric transform for a nondegenerate simplex.

    Returns (B, grads) where lambda(x) = B @ [1, x] and grads[i] = grad
    lambda_i (constant vectors, shape (nvert, d)).
    """
    verts = np.asarray(verts, dtype=float)
    nvert, d = verts.shape
    if nvert != d + 1:
        raise ValueError("simplex needs d+1 vertices")
    A = np.vstack([np.ones(nvert), verts.T])
    B = np.linalg.inv(A)
    return B, B[:, 1:].copy()


def barycentric_coords(verts: np.ndarray, points: np.ndarray) -> np.ndarray:
    """Barycentric coordinates of physical points, shape (npts, nvert)."""
    B, _ = barycentric_maps(verts)
    pts = np.atleast_2d(np.asarray(points, dtype=float))
    rhs = np.hstack([np.ones((pts.shape[0], 1)), pts])
    return rhs @ B.T


def monomial_tables(nvars, degree, lam, grads, orders=(0, 1, 2)):
    """Values/derivatives of all degree-`degree` barycentric monomials.

    lam: (npts, nvars) barycentric coordinates, grads: (nvars, d) constant
    gradients. Returns dict with keys 0 -> (npts, nmono), 1 -> (npts, nmono, d),
    2 -> (npts, nmono, d, d) for the requested orders.
    """
    exps = monomial_exponents(nvars, degree)
    lam = np.asarray(lam, dtype=float)
    npts = lam.shape[0]
    nm = exps.shape[0]
    d = grads.shape[1]
    out = {}
    if 0 in orders:
        out[0] = np.prod(lam[:, None, :] ** exps[None, :, :], axis=2)
    if 1 in orders:
        grad = np.zeros((npts, nm, d))
        for i in range(nvars):
            red = exps.copy()
            red[:, i] = np.maximum(red[:, i] - 1, 0)
            P = np.prod(lam[:, None, :] ** red[None, :, :], axis=2)
            grad += (exps[None, :, i] * P)[:, :, None] * grads[i][None, None, :]
        out[1] = grad
    if 2 in orders:
        hess = np.zeros((npts, nm, d, d))
        for i in range(nvars):
            for k in range(nvars):
                coef = exps[:, k] * (exps[:, i] - (1 if i == k else 0))
                if not np.any(coef):
                    continue
                red = exps.copy()
                red[:, i] -= 1
                red[:, k] -= 1
                red = np.maximum(red, 0)
                P = np.prod(lam[:, None, :] ** red[None, :, :], axis=2)
                hess += (coef[None, :] * P)[:, :, None, None] * np.outer(
                    grads[i], grads[k]
                )[None, None, :, :]
        out[2] = hess
    return out


class PolyField:
    """Scalar/vector/tensor polynomial on one simplex.

    coeffs has shape (*compshape, nmono); compshape () means a scalar field.
    """

    def __init__(self, verts, degree, coeffs):
        self.verts = np.asarray(verts, dtype=float)
        self.nvert = self.verts.shape[0]
        self.dim = self.verts.shape[1]
        self.degree = int(degree)
        coeffs = np.asarray(coeffs, dtype=float)
        nm = monomial_exponents(self.nvert, self.degree).shape[0]
        if coeffs.shape[-1] != nm:
            raise ValueError("coefficient count does not match degree")
        self.coeffs = coeffs
        self.compshape = coeffs.shape[:-1]
        _, self.lam_grads = barycentric_maps(self.verts)

    # ------------------------------------------------------------------
    # constructors
    @classmethod
    def zeros(cls, verts, degree, compshape=()):
        nvert = np.asarray(verts).shape[0]
        nm = monomial_exponents(nvert, degree).shape[0]
        return cls(verts, degree, np.zeros(compshape + (nm,)))

    @classmethod
    def barycentric(cls, verts, i):
        """The barycentric coordinate lambda_i as a degree-1 scalar field."""
        nvert = np.asarray(verts).shape[0]
        c = np.zeros(nvert)
        exps = monomial_exponents(nvert, 1)
        for m, a in enumerate(exps):
            if a[i] == 1:
                c[m] = 1.0
        return cls(verts, 1, c)

    @classmethod
    def constant(cls, verts, value):
        value = np.asarray(value, dtype=float)
        return cls(verts, 0, value[..., None])

    # ------------------------------------------------------------------
    # algebra
    def raised(self, degree):
        """Same polynomial re-expressed at a higher homogeneous degree."""
        if degree < self.degree:
            raise ValueError("cannot lower the degree")
        c = self.coeffs
        for k in range(self.degree, degree):
            R = _raise_map(self.nvert, k)
            c = c @ R.T
        return PolyField(self.verts, degree, c)

    def __add__(self, other):
        deg = max(self.degree, other.degree)
        a = self.raised(deg).coeffs
        b = other.raised(deg).coeffs
        return PolyField(self.verts, deg, a + b)

    def __sub__(self, other):
        return self + other * (-1.0)

    def __mul__(self, other):
        if isinstance(other, PolyField):
            M = _product_map(self.nvert, self.degree, other.degree)
            # outer product of coefficients, scattered onto combined monomials
            nm_out = monomial_exponents(self.nvert, self.degree + other.degree).shape[0]
            prod = self.coeffs[..., :, None] * other.coeffs[..., None, :]
            # broadcasting of component shapes follows numpy rules
            out = np.zeros(prod.shape[:-2] + (nm_out,))
            np.add.at(out, (..., M), prod)
            return PolyField(self.verts, self.degree + other.degree, out)
        return PolyField(self.verts, self.degree, self.coeffs * float(other))

    __rmul__ = __mul__

    def outer(self, vector):
        """Multiply a scalar field by a constant vector: components v * p."""
        vector = np.asarray(vector, dtype=float)
        if self.compshape != ():
            raise ValueError("outer() expects a scalar field")
        return PolyField(self.verts, self.degree,
                         vector[:, None] * self.coeffs[None, :])

    # ------------------------------------------------------------------
    # calculus
    def derivative(self):
        """Gradient: appends one axis of length d to the component shape."""
        if self.degree == 0:
            return PolyField.zeros(self.verts, 0, self.compshape + (self.dim,))
        D = _diff_maps(self.nvert, self.degree)
        # coeffs_out[..., a, m'] = sum_i G[i, a] (D_i @ c)[..., m']
        tmp = np.einsum("iom,...m->...io", D, self.coeffs)
        out = np.einsum("ia,...io->...ao", self.lam_grads, tmp)
        return PolyField(self.verts, self.degree - 1, out)

    def divergence(self):
        """Contract the leading component axis with the gradient axis."""
        if len(self.compshape) != 1 or self.compshape[0] != self.dim:
            raise ValueError("divergence expects a d-vector field")
        g = self.derivative()  # (d, d, nmono)
        return PolyField(self.verts, g.degree, np.trace(g.coeffs, axis1=0, axis2=1))

    def curl2d(self):
        """(d v/d x2, -d v/d x1) of a scalar field in two dimensions."""
        if self.dim != 2 or self.compshape != ():
            raise ValueError("curl2d expects a 2D scalar field")
        g = self.derivative()  # (2, nmono)
        return PolyField(self.verts, g.degree,
                         np.stack([g.coeffs[1], -g.coeffs[0]]))

    def rot2d(self):
        """d v2/d x1 - d v1/d x2 of a 2D vector field."""
        if self.dim != 2 or self.compshape != (2,):
            raise ValueError("rot2d expects a 2D vector field")
        g = self.derivative()  # (2, 2, nmono)
        return PolyField(self.verts, g.degree, g.coeffs[1, 0] - g.coeffs[0, 1])

    # ------------------------------------------------------------------
    # evaluation
    def _tables(self, points, orders):
        lam = barycentric_coords(self.verts, points)
        return monomial_tables(self.nvert, self.degree, lam, self.lam_grads,
                               orders=orders)

    def value(self, points):
        t = self._tables(points, (0,))
        return np.einsum("...m,pm->p...", self.coeffs, t[0])

    def grad(self, points):
        t = self._tables(points, (1,))
        return np.einsum("...m,pma->p...a", self.coeffs, t[1])

    def hess(self, points):
        t = self._tables(points, (2,))
        return np.einsum("...m,pmab->p...ab", self.coeffs, t[2])

    def div_value(self, points):
        g = self.grad(points)  # (npts, d, d)
        return np.trace(g, axis1=1, axis2=2)

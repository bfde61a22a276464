"""Shared random generators and small oracles for the test suite."""

import itertools
import math

import numpy as np

from certicube.field import ScalarField
from certicube.geometry import Simplex
from certicube.qform import QuadraticForm


def rand_simplex(rng, n, scale=1.0):
    """Random non-degenerate simplex with vertices in [-scale, scale]^n."""
    while True:
        vertices = rng.uniform(-scale, scale, size=(n + 1, n))
        edges = vertices[1:] - vertices[0]
        max_edge = max(np.linalg.norm(vertices[i] - vertices[j])
                       for i in range(n + 1) for j in range(i + 1, n + 1))
        if abs(np.linalg.det(edges)) > 0.05 * max_edge ** n:
            return Simplex(vertices)


def rand_symmetric_form(rng, n, scale=1.0):
    a = rng.uniform(-scale, scale, size=(n, n))
    return QuadraticForm(0.5 * (a + a.T))


def rand_psd_form(rng, n, scale=1.0):
    a = rng.uniform(-scale, scale, size=(n, n))
    return QuadraticForm(a @ a.T)


def quadratic_field(c, b, phi):
    """c + b.x + x^T A x with its constant analytic Hessian."""
    b = np.asarray(b, dtype=float)
    n = b.shape[0]
    a = phi.coeffs if phi is not None else np.zeros((n, n))
    hess = QuadraticForm(2.0 * a)
    return ScalarField(
        dimension=n,
        evaluator=lambda x: c + np.asarray(x) @ b
        + np.sum((np.asarray(x) @ a) * np.asarray(x), axis=-1),
        hessian=lambda u: hess,
        supports_batch=True)


def rand_convex_quadratic(rng, n):
    """(field, (c, b, phi)) with phi positive semi-definite."""
    c = float(rng.uniform(-1, 1))
    b = rng.uniform(-1, 1, size=n)
    phi = rand_psd_form(rng, n)
    return quadratic_field(c, b, phi), (c, b, phi)


class PolynomialField:
    """Multivariate polynomial from a {multi-index: coefficient} dict,
    with the analytic Hessian differentiated term by term."""

    def __init__(self, n, terms):
        self.dimension = n
        self.terms = dict(terms)

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        total = 0.0
        for alpha, coef in self.terms.items():
            term = coef
            for i, power in enumerate(alpha):
                if power:
                    term = term * x[..., i] ** power
            total = total + term
        return total

    def hessian_coeffs(self, u):
        u = np.asarray(u, dtype=float)
        n = self.dimension
        h = np.zeros((n, n))
        for alpha, coef in self.terms.items():
            for i in range(n):
                for j in range(n):
                    beta = list(alpha)
                    factor = coef * beta[i]
                    if factor == 0:
                        continue
                    beta[i] -= 1
                    factor *= beta[j]
                    if factor == 0:
                        continue
                    beta[j] -= 1
                    term = factor
                    for k, power in enumerate(beta):
                        if power:
                            term *= u[k] ** power
                    h[i, j] += term
        return h


def rand_polynomial_field(rng, n, max_degree=4):
    """Random dense polynomial of total degree <= max_degree."""
    terms = {}
    for degree in range(max_degree + 1):
        for combo in itertools.combinations_with_replacement(range(n), degree):
            alpha = [0] * n
            for axis in combo:
                alpha[axis] += 1
            terms[tuple(alpha)] = float(rng.uniform(-1, 1))
    poly = PolynomialField(n, terms)
    return ScalarField(
        dimension=n, evaluator=poly,
        hessian=lambda u: QuadraticForm(poly.hessian_coeffs(u)),
        supports_batch=True)


def vertices_plus_barycenter_rule(n):
    """Positive degree-2 exact rule in any dimension: the n+1 vertices
    with weight 1/((n+1)(n+2)) plus the barycenter with (n+1)/(n+2)."""
    from fractions import Fraction

    from certicube.cubature import CubatureRule

    lam_v = Fraction(1, (n + 1) * (n + 2))
    lam_c = Fraction(n + 1, n + 2)
    nodes = [[1.0 if j == i else 0.0 for j in range(n + 1)]
             for i in range(n + 1)]
    nodes.append([1.0 / (n + 1)] * (n + 1))
    weights = [float(lam_v)] * (n + 1) + [float(lam_c)]
    return CubatureRule(dimension=n, nodes=np.array(nodes),
                        weights=np.array(weights),
                        provenance=f"vertices+barycenter-{n}d")


def mc_integral(rng, s, func, samples):
    """Plain Monte Carlo oracle, independent of the package's sampler."""
    gaps = rng.standard_exponential((samples, s.dimension + 1))
    bary = gaps / gaps.sum(axis=1, keepdims=True)
    points = bary @ s.vertices
    values = func(points)
    edges = s.vertices[1:] - s.vertices[0]
    vol = abs(np.linalg.det(edges)) / math.factorial(s.dimension)
    mean = vol * float(values.mean())
    se = vol * float(values.std(ddof=1)) / math.sqrt(samples)
    return mean, se

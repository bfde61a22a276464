"""Closed-form monomial moments on the unit simplex and derived quantities.

All values come from the factorial formula
int_{S1} x^alpha dx = (prod alpha_i!) / (n + |alpha|)!
evaluated exactly in integers, plus the second central moment
int_S ||x - pbar||^2 dx pushed through the affine chart.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import geometry
from .errors import UnsupportedDegree, UnsupportedDimension

# Exact 64-bit factorials require n + 2 <= 20.
MAX_DIMENSION = 18


def _check_dimension(n):
    if n < 1:
        raise UnsupportedDimension(f"dimension must be >= 1, got {n}")
    if n > MAX_DIMENSION:
        raise UnsupportedDimension(
            f"dimension {n} exceeds {MAX_DIMENSION} (64-bit factorials)")


def monomial_moment_exact(n, alpha):
    """int_{S1} x^alpha dx as an exact Fraction, |alpha| <= 2."""
    _check_dimension(n)
    alpha = tuple(int(a) for a in alpha)
    if len(alpha) != n or any(a < 0 for a in alpha):
        raise UnsupportedDegree(f"multi-index {alpha} invalid for n={n}")
    degree = sum(alpha)
    if degree > 2:
        raise UnsupportedDegree(f"total degree {degree} > 2")
    num = math.prod(math.factorial(a) for a in alpha)
    return Fraction(num, math.factorial(n + degree))


def monomial_moment(n, alpha):
    return float(monomial_moment_exact(n, alpha))


def central_second_moment_unit_exact(n):
    """int_{S1} ||x - pbar||^2 dx = n^2 / ((n+2)! (n+1))."""
    _check_dimension(n)
    return Fraction(n * n, math.factorial(n + 2) * (n + 1))


def central_second_moment_unit(n):
    return float(central_second_moment_unit_exact(n))


def central_matrix_exact(n):
    """M = int_{S1} (u - ubar)(u - ubar)^T du, entrywise exact.

    Diagonal: 2/(n+2)! - 2/((n+1)(n+1)!) + 1/((n+1)^2 n!).
    Off-diagonal: 1/(n+2)! - 2/((n+1)(n+1)!) + 1/((n+1)^2 n!).
    """
    _check_dimension(n)
    common = (-Fraction(2, (n + 1) * math.factorial(n + 1))
              + Fraction(1, (n + 1) ** 2 * math.factorial(n)))
    diag = Fraction(2, math.factorial(n + 2)) + common
    offd = Fraction(1, math.factorial(n + 2)) + common
    return [[diag if i == j else offd for j in range(n)] for i in range(n)]


def central_matrix(n):
    return np.array(central_matrix_exact(n), dtype=float)


def central_second_moment(s):
    """int_S ||x - pbar||^2 dx = |det E| trace(E^T E M)."""
    ch = geometry.chart(s)
    e = ch.matrix
    m = central_matrix(s.dimension)
    return float(ch.abs_det * np.trace(e.T @ e @ m))


@dataclass(frozen=True)
class MomentTable:
    """The unit-simplex moment constants for one dimension."""

    dimension: int
    first: Fraction
    square: Fraction
    mixed: Fraction
    volume: Fraction
    central_scalar: Fraction
    central_matrix: tuple


def moment_table(n):
    _check_dimension(n)
    alpha1 = (1,) + (0,) * (n - 1)
    alpha2 = (2,) + (0,) * (n - 1)
    mixed = (Fraction(1, math.factorial(n + 2)) if n >= 2
             else Fraction(0))
    return MomentTable(
        dimension=n,
        first=monomial_moment_exact(n, alpha1),
        square=monomial_moment_exact(n, alpha2),
        mixed=mixed,
        volume=Fraction(1, math.factorial(n)),
        central_scalar=central_second_moment_unit_exact(n),
        central_matrix=tuple(tuple(row) for row in central_matrix_exact(n)),
    )


def integrate_poly2(q, s):
    """Exact integral over s of q(x) = c + b.x + x^T A x, degree <= 2.

    ``q`` is a (constant, linear vector or None, QuadraticForm or None)
    triple. Expansion through the affine chart onto reference monomials;
    no numerical quadrature is involved.
    """
    c, b, phi = q
    n = s.dimension
    _check_dimension(n)
    ch = geometry.chart(s)
    e, p0 = ch.matrix, ch.origin
    b = np.zeros(n) if b is None else np.asarray(b, dtype=float)
    a = np.zeros((n, n)) if phi is None else phi.coeffs

    const = float(c) + b @ p0 + p0 @ a @ p0
    lin = e.T @ b + 2.0 * (e.T @ (a @ p0))
    quad = e.T @ a @ e

    m1 = 1.0 / math.factorial(n + 1)
    m2 = 2.0 / math.factorial(n + 2)
    m11 = 1.0 / math.factorial(n + 2)
    vol_ref = 1.0 / math.factorial(n)

    total = const * vol_ref + float(np.sum(lin)) * m1
    total += float(np.trace(quad)) * m2
    total += float(np.sum(quad) - np.trace(quad)) * m11
    return ch.abs_det * total

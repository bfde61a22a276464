"""C^2 integrands: evaluation, Hessians, curvature estimates, convexifying.

A ScalarField wraps a pointwise evaluator plus an optional analytic
Hessian; without one, second derivatives come from central finite
differences with an absolute step h. The sup-norm of the second
differential over a simplex is estimated on a barycentric lattice and is
flagged as uncertified unless the caller overrides it with a known
constant.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, NamedTuple, Optional

import numpy as np

from . import expr as expr_mod
from . import geometry, qform
from .errors import EvaluationFailure, NegativeGauge
from .qform import QuadraticForm

FD_STEP = 1e-4
DEFAULT_LATTICE_RESOLUTION = 20


@dataclass(frozen=True)
class ScalarField:
    """An integrand on R^n.

    ``evaluator`` maps a point (n,) to a float; when ``supports_batch``
    it also accepts an (m, n) array and returns (m,) values. ``hessian``
    (if given) returns the analytic second differential as a
    QuadraticForm; otherwise finite differences with step ``fd_step``
    are used, so the evaluator must tolerate +-h excursions per axis.
    """

    dimension: int
    evaluator: Callable
    hessian: Optional[Callable] = None
    fd_step: float = FD_STEP
    supports_batch: bool = False


def evaluate(f, x):
    value = float(f.evaluator(np.asarray(x, dtype=float)))
    if not np.isfinite(value):
        raise EvaluationFailure(f"integrand non-finite at {x}")
    return value


def evaluate_batch(f, points):
    points = np.asarray(points, dtype=float)
    if f.supports_batch:
        values = np.asarray(f.evaluator(points), dtype=float)
        values = np.broadcast_to(values, points.shape[:-1]).astype(float)
    else:
        values = np.array([float(f.evaluator(p)) for p in points])
    if not np.all(np.isfinite(values)):
        raise EvaluationFailure("integrand non-finite on a batch point")
    return values


def hessian_at(f, u):
    """Second differential at u as a QuadraticForm; FD is O(h^2)."""
    u = np.asarray(u, dtype=float)
    if f.hessian is not None:
        form = f.hessian(u)
        if not isinstance(form, QuadraticForm):
            form = QuadraticForm(form)
        return form
    n = f.dimension
    h = f.fd_step
    coeffs = np.empty((n, n))
    center = evaluate(f, u)
    for i in range(n):
        ei = np.zeros(n)
        ei[i] = h
        coeffs[i, i] = (evaluate(f, u + ei) - 2.0 * center
                        + evaluate(f, u - ei)) / (h * h)
        for j in range(i + 1, n):
            ej = np.zeros(n)
            ej[j] = h
            coeffs[i, j] = coeffs[j, i] = (
                evaluate(f, u + ei + ej) - evaluate(f, u + ei - ej)
                - evaluate(f, u - ei + ej) + evaluate(f, u - ei - ej)
            ) / (4.0 * h * h)
    return QuadraticForm(coeffs)


class SupNormEstimate(NamedTuple):
    value: float
    certified: bool


def d2f_sup_norm(f, s, resolution=DEFAULT_LATTICE_RESOLUTION, override=None):
    """Estimate sup over the simplex of the Hessian operator norm.

    Lattice sampling only: certified is False unless ``override``
    supplies a known analytic constant, which is returned as-is.
    """
    if override is not None:
        return SupNormEstimate(float(override), True)
    if resolution < 1:
        raise ValueError(f"resolution must be >= 1, got {resolution}")
    best = 0.0
    for point in geometry.lattice_points(s, resolution):
        best = max(best, qform.operator_norm(hessian_at(f, point)))
    return SupNormEstimate(best, False)


def convexify(f, gauge):
    """Fields g+f and g-f with g(x) = (gauge/2) ||x||^2.

    For gauge >= the sup Hessian norm of f, both outputs are convex and
    their Hessians are bounded by 2*gauge in operator norm. Each output
    carries the combined Hessian gauge*I +- H_f analytically (through
    hessian_at, so FD-backed fields still work).
    """
    if gauge < 0:
        raise NegativeGauge(f"gauge {gauge} < 0")
    n = f.dimension
    identity = np.eye(n)

    def make(sign):
        def evaluator(x):
            x = np.asarray(x, dtype=float)
            quad = 0.5 * gauge * np.sum(x * x, axis=-1)
            if x.ndim == 1:
                return quad + sign * evaluate(f, x)
            return quad + sign * evaluate_batch(f, x)

        def hessian(u):
            return QuadraticForm(
                gauge * identity + sign * hessian_at(f, u).coeffs)

        return ScalarField(dimension=n, evaluator=evaluator,
                           hessian=hessian, fd_step=f.fd_step,
                           supports_batch=True)

    return make(+1.0), make(-1.0)


def parse_expr(text, n):
    """Textual integrand over x1..xn; finite-difference Hessian mode."""
    tree = expr_mod.parse(text, n)

    def evaluator(point):
        return expr_mod.evaluate(tree, np.asarray(point, dtype=float))

    return ScalarField(dimension=n, evaluator=evaluator,
                       supports_batch=True)


def from_quadratic(c, b, phi):
    """Polynomial field c + b.x + x^T A x with its constant Hessian."""
    b = np.asarray(b, dtype=float)
    n = b.shape[0]
    a = phi.coeffs if phi is not None else np.zeros((n, n))
    hess = QuadraticForm(2.0 * a)

    def evaluator(x):
        x = np.asarray(x, dtype=float)
        return c + x @ b + np.sum((x @ a) * x, axis=-1)

    return ScalarField(dimension=n, evaluator=evaluator,
                       hessian=lambda u: hess, supports_batch=True)

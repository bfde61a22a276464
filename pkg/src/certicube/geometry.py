"""Simplices in R^n: barycenters, volumes, affine charts, bisection."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateSimplex, DimensionMismatch, ParseError

# Scale-aware degeneracy threshold on |det E|: eps * (max edge length)^n.
EPS_GEOM = 1e-13


def _lu_factor(a):
    """LU with partial pivoting (hand-rolled; n is small).

    Returns (lu, piv, det) where lu packs L (unit diagonal) and U.
    """
    lu = np.array(a, dtype=float)
    n = lu.shape[0]
    piv = np.arange(n)
    det = 1.0
    for k in range(n):
        p = k + int(np.argmax(np.abs(lu[k:, k])))
        if lu[p, k] == 0.0:
            return lu, piv, 0.0
        if p != k:
            lu[[k, p]] = lu[[p, k]]
            piv[[k, p]] = piv[[p, k]]
            det = -det
        det *= lu[k, k]
        lu[k + 1:, k] /= lu[k, k]
        lu[k + 1:, k + 1:] -= np.outer(lu[k + 1:, k], lu[k, k + 1:])
    return lu, piv, det


def _lu_solve(lu, piv, b):
    n = lu.shape[0]
    x = np.asarray(b, dtype=float)[piv]
    for k in range(n):          # forward, unit lower triangle
        x[k + 1:] -= lu[k + 1:, k] * x[k]
    for k in range(n - 1, -1, -1):  # backward
        x[k] -= lu[k, k + 1:] @ x[k + 1:]
        x[k] /= lu[k, k]
    return x


def det_matrix(a):
    """Determinant via LU with partial pivoting."""
    return _lu_factor(a)[2]


@dataclass(frozen=True)
class Simplex:
    """n+1 vertices in R^n, stored in construction order as rows."""

    vertices: np.ndarray

    def __post_init__(self):
        v = np.array(self.vertices, dtype=float)
        if v.ndim != 2 or v.shape[0] != v.shape[1] + 1 or v.shape[1] < 1:
            raise DimensionMismatch(
                f"need n+1 vertices of length n >= 1, got shape {v.shape}")
        if not np.all(np.isfinite(v)):
            raise DimensionMismatch("non-finite vertex coordinate")
        v.setflags(write=False)
        object.__setattr__(self, "vertices", v)

    @property
    def dimension(self):
        return self.vertices.shape[1]

    def max_edge_length(self):
        v = self.vertices
        return max(float(np.linalg.norm(v[i] - v[j]))
                   for i, j in itertools.combinations(range(len(v)), 2))


def unit_simplex(n):
    """Vertices at the origin and the standard basis vectors."""
    v = np.zeros((n + 1, n))
    v[1:] = np.eye(n)
    return Simplex(v)


def edge_matrix(s):
    """Columns p_i - p_0, i = 1..n."""
    v = s.vertices
    return (v[1:] - v[0]).T


def barycenter(s):
    return s.vertices.mean(axis=0)


def _checked_det(s):
    d = det_matrix(edge_matrix(s))
    if abs(d) <= EPS_GEOM * s.max_edge_length() ** s.dimension:
        raise DegenerateSimplex(f"|det E| = {abs(d):g} below threshold")
    return d


def volume(s):
    """|det E| / n!, strictly positive for non-degenerate input."""
    return abs(_checked_det(s)) / math.factorial(s.dimension)


@dataclass(frozen=True)
class AffineChart:
    """x = origin + E u maps the unit simplex onto the physical one."""

    origin: np.ndarray
    matrix: np.ndarray
    _lu: np.ndarray
    _piv: np.ndarray
    abs_det: float

    def to_physical(self, u):
        return self.origin + self.matrix @ np.asarray(u, dtype=float)

    def to_reference(self, x):
        return _lu_solve(self._lu, self._piv,
                         np.asarray(x, dtype=float) - self.origin)


def chart(s):
    e = edge_matrix(s)
    lu, piv, d = _lu_factor(e)
    if abs(d) <= EPS_GEOM * s.max_edge_length() ** s.dimension:
        raise DegenerateSimplex(f"|det E| = {abs(d):g} below threshold")
    return AffineChart(origin=s.vertices[0].copy(), matrix=e,
                       _lu=lu, _piv=piv, abs_det=abs(d))


def longest_edge(s):
    """Vertex index pair (i, j), i < j, of a longest edge.

    Ties break to the lexicographically lowest pair.
    """
    v = s.vertices
    best = None
    best_len = -1.0
    for i, j in itertools.combinations(range(len(v)), 2):
        length = float(np.linalg.norm(v[i] - v[j]))
        if length > best_len:
            best_len = length
            best = (i, j)
    return best


def bisect(s):
    """Split at the midpoint of a longest edge; children keep vertex order."""
    _checked_det(s)
    i, j = longest_edge(s)
    mid = 0.5 * (s.vertices[i] + s.vertices[j])
    left = s.vertices.copy()
    left[j] = mid
    right = s.vertices.copy()
    right[i] = mid
    return Simplex(left), Simplex(right)


def barycentric_lattice(n, resolution):
    """All barycentric weight vectors with coordinates k/resolution.

    Yields arrays of length n+1 covering the mesh-1/resolution lattice of
    an n-simplex, vertices and faces included.
    """
    for comp in _compositions(resolution, n + 1):
        yield np.array(comp, dtype=float) / resolution


def _compositions(total, parts):
    if parts == 1:
        yield (total,)
        return
    for head in range(total + 1):
        for tail in _compositions(total - head, parts - 1):
            yield (head,) + tail


def lattice_points(s, resolution):
    """Physical lattice points of mesh 1/resolution on the simplex."""
    weights = np.array(list(barycentric_lattice(s.dimension, resolution)))
    return weights @ s.vertices


def load_simplex(path):
    """One vertex per line, whitespace-separated decimals."""
    rows = []
    with open(path) as fh:
        for lineno, line in enumerate(fh, start=1):
            text = line.split("#", 1)[0].strip()
            if not text:
                continue
            try:
                rows.append([float(tok) for tok in text.split()])
            except ValueError as exc:
                raise ParseError(f"bad vertex line: {exc}", line=lineno)
    if not rows:
        raise ParseError("empty simplex file", line=1)
    n = len(rows[0])
    if any(len(r) != n for r in rows) or len(rows) != n + 1:
        raise ParseError(
            f"expected {n + 1} vertices of {n} coordinates", line=len(rows))
    return Simplex(np.array(rows))

"""Certified adaptive integration by longest-edge bisection.

Each cell carries a rigorous radius K_cell * moment (times 1/2 for the
single-point midpoint rule); both the integral and the bound are
additive over a partition, so refining the max-radius cell until the
summed radius meets the tolerance yields a certificate for the whole
simplex. Summation runs in a fixed canonical order (cell creation
order) with compensated accumulation, so results do not depend on
execution interleaving.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass, field as dataclass_field
from typing import Optional, Union

import numpy as np

from . import cubature as cubature_mod
from . import field as field_mod
from . import geometry, moments, qform
from .bounds import CertifiedResult
from .cubature import CubatureRule
from .errors import BudgetExhausted, RuleNotApplicable


@dataclass(frozen=True)
class Cell:
    """One leaf of the refinement tree."""

    simplex: geometry.Simplex
    estimate: float
    radius: float
    K_local: float
    depth: int


@dataclass(frozen=True)
class AdaptiveConfig:
    tolerance: float
    max_cells: int = 10 ** 6
    max_depth: int = 60
    rule: Union[CubatureRule, str] = "midpoint"
    k_mode: str = "per-cell"  # or "global"
    k_resolution: int = 4
    k_override: Optional[float] = None  # analytic constant; certified
    global_resolution: int = 20

    def __post_init__(self):
        if not self.tolerance > 0:
            raise ValueError(f"tolerance must be > 0, got {self.tolerance}")
        if self.k_mode not in ("per-cell", "global"):
            raise ValueError(f"unknown k_mode {self.k_mode!r}")
        if isinstance(self.rule, str) and self.rule != "midpoint":
            raise ValueError(f"rule must be a CubatureRule or 'midpoint'")


def kahan_sum(values):
    total = 0.0
    comp = 0.0
    for value in values:
        y = value - comp
        t = total + y
        comp = (t - total) - y
        total = t
    return total


@dataclass
class RunDiagnostics:
    cells: int = 0
    depth_histogram: dict = dataclass_field(default_factory=dict)
    k_min: float = math.inf
    k_max: float = 0.0
    collect_cells: bool = False
    leaves: list = dataclass_field(default_factory=list)


def _longest_edge(verts):
    """verts: list of coordinate lists; squared lengths suffice."""
    best = None
    best_len = -1.0
    count = len(verts)
    for i in range(count - 1):
        vi = verts[i]
        for j in range(i + 1, count):
            vj = verts[j]
            length = sum((a - b) ** 2 for a, b in zip(vi, vj))
            if length > best_len:
                best_len = length
                best = (i, j)
    return best


def _det_inplace(a):
    """Determinant of a small list-of-lists matrix, LU with pivoting."""
    n = len(a)
    det = 1.0
    for k in range(n):
        p = max(range(k, n), key=lambda r: abs(a[r][k]))
        pivot = a[p][k]
        if pivot == 0.0:
            return 0.0
        if p != k:
            a[k], a[p] = a[p], a[k]
            det = -det
        det *= a[k][k]
        row_k = a[k]
        inv = 1.0 / a[k][k]
        for r in range(k + 1, n):
            row = a[r]
            factor = row[k] * inv
            if factor != 0.0:
                for c in range(k + 1, n):
                    row[c] -= factor * row_k[c]
    return det


def integrate_adaptive(f, s, cfg, diagnostics=None):
    """Integrate f over s to the requested certified radius.

    Raises BudgetExhausted (carrying the best partial result) when
    max_cells or max_depth is reached first; the partial bound is still
    valid, just larger than requested.
    """
    n = s.dimension
    nfact = math.factorial(n)
    central = moments.central_matrix(n)
    # M has constant diagonal d and off-diagonal o, so
    # tr(E^T E M) = (d - o) sum_i |e_i|^2 + o |sum_i e_i|^2.
    m_diag = float(central[0, 0])
    m_off = float(central[0, 1]) if n >= 2 else 0.0
    factor = 0.5 if cfg.rule == "midpoint" else 1.0

    rule_nodes = None
    rule_weights = None
    if isinstance(cfg.rule, CubatureRule):
        report = cubature_mod.verify(cfg.rule)
        if not report.thm2_applicable:
            raise RuleNotApplicable(
                f"rule {cfg.rule.provenance!r} is not positive degree-2 "
                f"exact", report=report)
        rule_nodes = cfg.rule.nodes
        rule_weights = cfg.rule.weights

    k_certified = cfg.k_override is not None
    global_k = None
    if cfg.k_override is not None:
        global_k = float(cfg.k_override)
    elif cfg.k_mode == "global":
        global_k = field_mod.d2f_sup_norm(
            f, s, resolution=cfg.global_resolution).value
    k_lattice = None
    if global_k is None:
        k_lattice = np.array(list(
            geometry.barycentric_lattice(n, cfg.k_resolution)))

    def local_k(vertices):
        if global_k is not None:
            return global_k
        best = 0.0
        for point in k_lattice @ vertices:
            best = max(best,
                       qform.operator_norm(field_mod.hessian_at(f, point)))
        return best

    inv_np1 = 1.0 / (n + 1)

    def make_cell(vertices, depth):
        verts = vertices.tolist()
        origin = verts[0]
        edges = [[v[i] - origin[i] for i in range(n)] for v in verts[1:]]
        # |det E| from the edge rows (det is transpose-invariant).
        absdet = abs(_det_inplace([row[:] for row in edges]))
        vol = absdet / nfact
        sum_sq = sum(c * c for row in edges for c in row)
        edge_sum = [sum(row[i] for row in edges) for i in range(n)]
        csm = absdet * ((m_diag - m_off) * sum_sq
                        + m_off * sum(c * c for c in edge_sum))
        k_cell = local_k(vertices)
        if rule_nodes is None:
            mid = np.array([sum(v[i] for v in verts) * inv_np1
                            for i in range(n)])
            estimate = vol * field_mod.evaluate(f, mid)
        else:
            values = field_mod.evaluate_batch(f, rule_nodes @ vertices)
            estimate = vol * kahan_sum(rule_weights * values)
        return (vertices, depth, estimate, factor * k_cell * csm, k_cell,
                verts)

    geometry.volume(s)  # reject degenerate roots up front
    cells = {}
    heap = []  # (-radius, insertion index)
    created = 0

    def push(vertices, depth):
        nonlocal created
        cell = make_cell(vertices, depth)
        cells[created] = cell
        heapq.heappush(heap, (-cell[3], created))
        created += 1

    push(np.array(s.vertices), 0)
    running = cells[0][3]

    def finish():
        order = sorted(cells)
        estimate = kahan_sum(cells[i][2] for i in order)
        radius = kahan_sum(cells[i][3] for i in order)
        if diagnostics is not None:
            diagnostics.cells = len(cells)
            hist = {}
            for i in order:
                depth = cells[i][1]
                hist[depth] = hist.get(depth, 0) + 1
            diagnostics.depth_histogram = hist
            diagnostics.k_min = min(cells[i][4] for i in order)
            diagnostics.k_max = max(cells[i][4] for i in order)
            if diagnostics.collect_cells:
                diagnostics.leaves = [
                    Cell(simplex=geometry.Simplex(cells[i][0]),
                         estimate=cells[i][2], radius=cells[i][3],
                         K_local=cells[i][4], depth=cells[i][1])
                    for i in order]
        return CertifiedResult(estimate=estimate, radius=radius,
                               K_used=max(cells[i][4] for i in order),
                               K_certified=k_certified, cells=len(cells))

    while True:
        if running <= cfg.tolerance:
            # Re-sum in canonical order to rule out running-total drift.
            exact = kahan_sum(cells[i][3] for i in sorted(cells))
            if exact <= cfg.tolerance:
                return finish()
            running = exact
        neg_radius, index = heap[0]
        vertices, depth, _, radius, _, verts = cells[index]
        if depth >= cfg.max_depth:
            raise BudgetExhausted(
                f"max_depth {cfg.max_depth} reached with radius "
                f"{running:g} > tolerance {cfg.tolerance:g}",
                result=finish())
        if len(cells) + 1 > cfg.max_cells:
            raise BudgetExhausted(
                f"max_cells {cfg.max_cells} reached with radius "
                f"{running:g} > tolerance {cfg.tolerance:g}",
                result=finish())
        heapq.heappop(heap)
        del cells[index]
        i, j = _longest_edge(verts)
        mid = 0.5 * (vertices[i] + vertices[j])
        left = vertices.copy()
        left[j] = mid
        right = vertices.copy()
        right[i] = mid
        push(left, depth + 1)
        push(right, depth + 1)
        running += cells[created - 2][3] + cells[created - 1][3] - radius


def refine_steps(f, s, cfg, steps, diagnostics=None):
    """Run exactly ``steps`` bisections and return the partial result.

    Test hook for partition-additivity and monotonicity properties: the
    tolerance is made unreachable and the cell budget caps the run.
    """
    capped = AdaptiveConfig(
        tolerance=np.finfo(float).tiny, max_cells=steps + 1,
        max_depth=cfg.max_depth, rule=cfg.rule, k_mode=cfg.k_mode,
        k_resolution=cfg.k_resolution, k_override=cfg.k_override,
        global_resolution=cfg.global_resolution)
    try:
        integrate_adaptive(f, s, capped, diagnostics=diagnostics)
    except BudgetExhausted as exc:
        return exc.result
    raise AssertionError("capped run should exhaust its budget")


def oracle_integrate(f, s, samples, seed=0):
    """Monte Carlo integral with uniform simplex sampling.

    Barycentric weights come from normalized exponential spacings, so
    points are uniform on the simplex; returns (mean, standard error).
    """
    if samples < 1:
        raise ValueError(f"samples must be >= 1, got {samples}")
    rng = np.random.default_rng(seed)
    gaps = rng.standard_exponential((samples, s.dimension + 1))
    weights = gaps / gaps.sum(axis=1, keepdims=True)
    points = weights @ s.vertices
    values = field_mod.evaluate_batch(f, points)
    vol = geometry.volume(s)
    mean = vol * float(values.mean())
    if samples == 1:
        return mean, 0.0
    se = vol * float(values.std(ddof=1)) / math.sqrt(samples)
    return mean, se

"""Degree-theoretic and curvature integrals.

Winding numbers, Stokes-obstruction certificates, mapping degree by
integration, the Gauss map / shape operator / Gauss curvature of parametric
surfaces, Gauss-Bonnet, hypersurface area via the contracted volume form,
and the Gauss linking integral.

The shape operator is computed numerically (central differences of the unit
normal, projected to the tangent frame through the first fundamental form);
its determinant is the Gauss curvature, which is orientation-independent.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from .cells import Cell, Chain, quad_points
from .errors import (
    DegreeError,
    DimensionMismatch,
    RankDeficientError,
    SingularityError,
)
from .forms import DifferentialForm, angular_form
from .integrate import _axis_rule, boundary, integrate, integrate_cell
from .maps import SmoothMap, compose, pullback
from .scalar import variable


@dataclass(frozen=True)
class Loop:
    """A closed parametrized curve: a 1-cell whose endpoints coincide."""

    cell: Cell
    closure_tol: float = 1e-12

    def __post_init__(self):
        if self.cell.k != 1:
            raise DegreeError("a loop is a 1-cell")
        (a, b), = self.cell.box
        pa = self.cell.mapping([a])
        pb = self.cell.mapping([b])
        gap = max(abs(x - y) for x, y in zip(pa, pb))
        if gap > self.closure_tol:
            raise ValueError(f"endpoints differ by {gap:.3e}; not a closed loop")

    @property
    def ambient(self):
        return self.cell.ambient

    def reversed(self) -> "Loop":
        return Loop(self.cell.flipped(), self.closure_tol)

    def sample(self, count: int) -> np.ndarray:
        (a, b), = self.cell.box
        fns = [c.compiled() for c in self.cell.mapping.components]
        ts = np.linspace(a, b, count, endpoint=False)
        return np.array([[f([t]) for f in fns] for t in ts])


_GUARD_SAMPLES = 1024


def winding_number(loop: Loop, spec=32, min_distance_factor=1e-3):
    """Winding of a loop in R^2 minus the origin.

    Returns (value, nearest integer); value is the loop integral of the
    angular form divided by 2 pi.  Loops coming within
    min_distance_factor * extent of the origin (sampled densely) are
    rejected rather than integrated.
    """
    if loop.ambient != 2:
        raise DimensionMismatch("winding numbers live in R^2")
    pts = loop.sample(_GUARD_SAMPLES)
    extent = max(1.0, _loop_extent(pts))
    dist = np.sqrt(np.sum(pts * pts, axis=1))
    if dist.min() < min_distance_factor * extent:
        raise SingularityError(
            f"loop comes within {dist.min():.3e} of the origin"
        )
    value = integrate_cell(angular_form(), loop.cell, spec) / (2 * math.pi)
    return value, round(value)


def nonexactness_certificate(form, chain, spec=16, tol=1e-6):
    """Integrate a closed form over a closed chain.

    A nonzero period certifies that the form is not exact on any domain
    containing the chain (Stokes obstruction).  Returns (integral, verdict).
    """
    value = integrate(form, chain, spec)
    if abs(value) > tol:
        return value, "not exact on this domain"
    return value, "inconclusive"


def mapping_degree(f: SmoothMap, domain, codomain, testform, spec=16):
    """Degree of f as the ratio of periods of a test form.

    domain and codomain are closed chains of equal dimension; the test form
    must have nonzero integral over the codomain.
    """
    denom = integrate(testform, codomain, spec)
    if abs(denom) < 1e-12:
        raise ZeroDivisionError("test form integrates to zero over the codomain")
    if isinstance(domain, Cell):
        domain = Chain.of(domain)
    # integrating the test form over the cells remapped by f is exactly the
    # integral of f*(testform) over the original domain
    remapped = Chain(
        [(w, Cell(c.box, compose(f, c.mapping), c.orientation)) for w, c in domain]
    )
    value = integrate(testform, remapped, spec) / denom
    return value, round(value)


def local_degree_sign(f: SmoothMap, cell: Cell, params, codomain_cell: Cell, codomain_params):
    """Sign of det(df) at a point, measured between outward-oriented surfaces.

    The domain tangent frame is pushed through the Jacobian of f and compared
    with the codomain orientation; used to pin expected mapping degrees.
    """
    tangents = np.array(cell.mapping.jacobian_at(list(params)))  # 3 x 2
    pushed = np.array(f.jacobian_at(cell.mapping(list(params)))) @ tangents
    n_dom = _unit_normal_from_jacobian(tangents) * cell.orientation
    dom_det = np.linalg.det(np.column_stack([n_dom, tangents[:, 0], tangents[:, 1]]))
    cod_tangents = np.array(codomain_cell.mapping.jacobian_at(list(codomain_params)))
    n_cod = _unit_normal_from_jacobian(cod_tangents) * codomain_cell.orientation
    img_det = np.linalg.det(np.column_stack([n_cod, pushed[:, 0], pushed[:, 1]]))
    return int(np.sign(dom_det * img_det))


# ---------------------------------------------------------------------------
# Curvature


def _unit_normal_from_jacobian(jac: np.ndarray) -> np.ndarray:
    cross = np.cross(jac[:, 0], jac[:, 1])
    norm = np.linalg.norm(cross)
    if norm < 1e-12:
        raise RankDeficientError("parametrization is rank-deficient here")
    return cross / norm


def gauss_map(cell: Cell, params) -> np.ndarray:
    """Outward unit normal of an oriented surface cell at parameter values."""
    if cell.k != 2 or cell.ambient != 3:
        raise DimensionMismatch("Gauss map needs a surface cell in R^3")
    jac = np.array(cell.mapping.jacobian_at(list(params)))
    return _unit_normal_from_jacobian(jac) * cell.orientation


def shape_operator(cell: Cell, params, step=1e-5) -> np.ndarray:
    """The derivative of the Gauss map in the tangent frame (2x2 matrix)."""
    s, t = params
    jac = np.array(cell.mapping.jacobian_at([s, t]))
    t_s, t_t = jac[:, 0], jac[:, 1]
    dn_s = (gauss_map(cell, (s + step, t)) - gauss_map(cell, (s - step, t))) / (
        2 * step
    )
    dn_t = (gauss_map(cell, (s, t + step)) - gauss_map(cell, (s, t - step))) / (
        2 * step
    )
    gram = np.array([[t_s @ t_s, t_s @ t_t], [t_t @ t_s, t_t @ t_t]])
    mixed = np.array([[t_s @ dn_s, t_s @ dn_t], [t_t @ dn_s, t_t @ dn_t]])
    return np.linalg.solve(gram, mixed)


def gauss_curvature(cell: Cell, params, step=1e-5) -> float:
    """det of the shape operator; independent of the chosen orientation."""
    return float(np.linalg.det(shape_operator(cell, params, step)))


@dataclass
class Surface:
    """A closed oriented surface given by parametric cells plus its declared
    Euler characteristic."""

    cells: list
    chi: int
    seam_tol: float = 1e-6

    def __post_init__(self):
        for c in self.cells:
            if c.k != 2 or c.ambient != 3:
                raise DimensionMismatch("surface cells are 2-cells in R^3")

    def validate_closed(self, spec=16):
        """Integrate a fixed 1-form over the total boundary; near zero for a
        closed surface (seams cancel)."""
        from .scalar import variable as v

        x, y, z = v(0), v(1), v(2)
        # includes a circulation term (x dy) so open equatorial seams register
        probe = DifferentialForm(
            3, 1, {(0,): y * z + x, (1,): x * z - y * y + x, (2,): x * y * z}
        )
        total = 0.0
        for c in self.cells:
            total += integrate(probe, boundary(c), spec)
        if abs(total) > self.seam_tol:
            raise ValueError(
                f"surface seams do not cancel: probe boundary integral {total:.3e}"
            )
        return total


def _surface_nodes(cell: Cell, q: int):
    rules = [_axis_rule(a, b, q) for a, b in cell.box]
    return itertools.product(*rules)


def gauss_bonnet_check(surface: Surface, spec=24, step=1e-5):
    """Quadrature of K dA over the surface against 2 pi chi.

    Returns (integral, expected, residual).
    """
    q = quad_points(spec)
    total = 0.0
    for cell in surface.cells:
        for combo in _surface_nodes(cell, q):
            (s, ws), (t, wt) = combo
            jac = np.array(cell.mapping.jacobian_at([s, t]))
            area = np.linalg.norm(np.cross(jac[:, 0], jac[:, 1]))
            if area < 1e-12:
                raise RankDeficientError(f"rank-deficient node ({s}, {t})")
            k = gauss_curvature(cell, (s, t), step)
            total += ws * wt * k * area
    expected = 2 * math.pi * surface.chi
    return total, expected, abs(total - expected)


def area_form_evaluator(cell: Cell):
    """Pointwise evaluator of the hypersurface volume form.

    Returns f(params) = dV(n, d psi/ds, d psi/dt), the coefficient of the
    area form pulled back to the parameter box; integrating it over the box
    gives the (oriented) surface area.
    """

    def evaluate(params):
        jac = np.array(cell.mapping.jacobian_at(list(params)))
        n = gauss_map(cell, params)
        return float(
            np.linalg.det(np.column_stack([n, jac[:, 0], jac[:, 1]]))
        )

    return evaluate


def surface_area(surface: Surface, spec=24) -> float:
    """Total area: integral of the contracted volume form over all cells."""
    q = quad_points(spec)
    total = 0.0
    for cell in surface.cells:
        f = area_form_evaluator(cell)
        for combo in _surface_nodes(cell, q):
            (s, ws), (t, wt) = combo
            total += ws * wt * f((s, t)) * cell.orientation
    return total


def gauss_map_area_pullback(surface: Surface, spec=24, step=1e-5) -> float:
    """Integral over the surface of the Gauss-map pullback of the sphere
    area form; equals the total curvature integral."""
    q = quad_points(spec)
    total = 0.0
    for cell in surface.cells:
        for combo in _surface_nodes(cell, q):
            (s, ws), (t, wt) = combo
            n = gauss_map(cell, (s, t))
            dn_s = (
                gauss_map(cell, (s + step, t)) - gauss_map(cell, (s - step, t))
            ) / (2 * step)
            dn_t = (
                gauss_map(cell, (s, t + step)) - gauss_map(cell, (s, t - step))
            ) / (2 * step)
            total += ws * wt * np.linalg.det(np.column_stack([n, dn_s, dn_t]))
    return total


# ---------------------------------------------------------------------------
# Linking


def linking_number(loop1: Loop, loop2: Loop, spec=32, min_distance_factor=1e-3):
    """Gauss linking integral of two disjoint loops in R^3.

    The kernel det[g1'(s), g2'(t), g1(s) - g2(t)] / |g1(s) - g2(t)|^3 is the
    coefficient of the pullback of the solid-angle form through
    (s, t) -> (g2(t) - g1(s)) / |...|, frozen here and cross-checked against
    the generic symbolic pullback in the test suite.  Returns
    (value, nearest integer).
    """
    if loop1.ambient != 3 or loop2.ambient != 3:
        raise DimensionMismatch("linking numbers live in R^3")
    q = quad_points(spec)
    guard1 = loop1.sample(_GUARD_SAMPLES)
    guard2 = loop2.sample(_GUARD_SAMPLES)
    scale = max(_loop_extent(guard1), _loop_extent(guard2))
    gaps = guard1[:, None, :] - guard2[None, :, :]
    min_gap = float(np.sqrt(np.min(np.sum(gaps * gaps, axis=2))))
    if min_gap < min_distance_factor * scale:
        raise SingularityError(
            f"loops come within {min_gap:.3e} of each other; "
            "the linking integrand is nearly singular"
        )
    pos1, vel1 = _loop_tables(loop1, q)
    pos2, vel2 = _loop_tables(loop2, q)
    diff = pos1[:, None, :] - pos2[None, :, :]
    dist = np.sqrt(np.sum(diff * diff, axis=2))
    total = 0.0
    w1 = loop1.cell.orientation
    w2 = loop2.cell.orientation
    for i in range(q):
        for j in range(q):
            kern = np.linalg.det(
                np.column_stack([vel1[i][1], vel2[j][1], diff[i, j]])
            ) / dist[i, j] ** 3
            total += vel1[i][0] * vel2[j][0] * kern
    value = float(w1 * w2 * total / (4 * math.pi))
    return value, round(value)


def _loop_tables(loop: Loop, q: int):
    (a, b), = loop.cell.box
    comps = loop.cell.mapping.components
    fns = [c.compiled() for c in comps]
    dfns = [c.differentiate(0).compiled() for c in comps]
    rule = _axis_rule(a, b, q)
    pos = np.array([[f([t]) for f in fns] for t, _ in rule])
    vel = [(w, np.array([df([t]) for df in dfns])) for t, w in rule]
    return pos, vel


def _loop_extent(points: np.ndarray) -> float:
    return float(np.max(points.max(axis=0) - points.min(axis=0)))


def linking_integrand_symbolic(loop1: Loop, loop2: Loop) -> DifferentialForm:
    """The pullback of the solid-angle form through the difference map,
    as a symbolic 2-form in the two loop parameters (s = axis 0, t = axis 1).

    This is the generic route the frozen kernel is checked against.
    """
    from .forms import solid_angle_form

    s_comps = [c.substitute([variable(0)]) for c in loop1.cell.mapping.components]
    t_comps = [c.substitute([variable(1)]) for c in loop2.cell.mapping.components]
    g = SmoothMap(2, 3, [tc - sc for sc, tc in zip(s_comps, t_comps)])
    return pullback(g, solid_angle_form())

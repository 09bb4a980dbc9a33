"""Ready-made cells for the standard test geometries.

All spherical-style charts use parameter order (polar angle, azimuth) so that
the parametrization is positively oriented with respect to the outward
normal; see the individual builders.
"""

from __future__ import annotations

import math

from fractions import Fraction

from .cells import Cell, Chain
from .maps import SmoothMap
from .scalar import cos, sin, variable
from .scalar import as_expr as _as_expr

TWO_PI = 2.0 * math.pi


def as_expr(x):
    """Like scalar.as_expr but converts floats exactly through Fraction."""
    if isinstance(x, float):
        return _as_expr(Fraction(x))
    return _as_expr(x)


def interval_cell(a=0.0, b=1.0, mapping=None) -> Cell:
    """A 1-cell over [a, b]; identity map into R^1 by default."""
    if mapping is None:
        mapping = SmoothMap(1, 1, [variable(0)])
    return Cell(((a, b),), mapping)


def square_cell() -> Cell:
    """The unit square in R^2 with the identity chart."""
    return Cell(((0.0, 1.0), (0.0, 1.0)), SmoothMap.identity(2))


def box_cell(*intervals) -> Cell:
    """An axis-aligned box in R^k with the identity chart."""
    k = len(intervals)
    return Cell(tuple(intervals), SmoothMap.identity(k))


def circle_cell(radius=1, center=(0, 0), k=1) -> Cell:
    """theta in [0, 2pi] -> center + radius*(cos k theta, sin k theta)."""
    th = variable(0)
    r = as_expr(radius)
    comps = [
        as_expr(center[0]) + r * cos(k * th),
        as_expr(center[1]) + r * sin(k * th),
    ]
    return Cell(((0.0, TWO_PI),), SmoothMap(1, 2, comps))


def ellipse_cell(a=2, b=1) -> Cell:
    th = variable(0)
    return Cell(
        ((0.0, TWO_PI),),
        SmoothMap(1, 2, [as_expr(a) * cos(th), as_expr(b) * sin(th)]),
    )


def disk_cell(radius=1.0) -> Cell:
    """(r, theta) polar chart of the disk in R^2; positively oriented."""
    r, th = variable(0), variable(1)
    return Cell(
        ((0.0, float(radius)), (0.0, TWO_PI)),
        SmoothMap(2, 2, [r * cos(th), r * sin(th)]),
    )


def _spherical_components(radii=(1, 1, 1)):
    """(phi, theta) -> (a sin phi cos theta, b sin phi sin theta, c cos phi)."""
    phi, th = variable(0), variable(1)
    return [
        as_expr(radii[0]) * sin(phi) * cos(th),
        as_expr(radii[1]) * sin(phi) * sin(th),
        as_expr(radii[2]) * cos(phi),
    ]


def sphere_cell(radius=1) -> Cell:
    """Unit-style sphere chart, outward oriented: (phi, theta), phi in [0, pi]."""
    comps = _spherical_components((radius, radius, radius))
    return Cell(((0.0, math.pi), (0.0, TWO_PI)), SmoothMap(2, 3, comps))


def ellipsoid_cell(a=1.5, b=1.0, c=0.75) -> Cell:
    comps = _spherical_components((a, b, c))
    return Cell(((0.0, math.pi), (0.0, TWO_PI)), SmoothMap(2, 3, comps))


def hemisphere_cell() -> Cell:
    """Upper unit hemisphere, outward (upward) oriented."""
    comps = _spherical_components()
    return Cell(((0.0, math.pi / 2), (0.0, TWO_PI)), SmoothMap(2, 3, comps))


def equatorial_disk_cell() -> Cell:
    """Unit disk in the plane z = 0, oriented with upward normal."""
    r, th = variable(0), variable(1)
    comps = [r * cos(th), r * sin(th), as_expr(0)]
    return Cell(((0.0, 1.0), (0.0, TWO_PI)), SmoothMap(2, 3, comps))


def half_ball_cell() -> Cell:
    """Upper half of the unit ball, (rho, phi, theta), positively oriented."""
    rho, phi, th = variable(0), variable(1), variable(2)
    comps = [
        rho * sin(phi) * cos(th),
        rho * sin(phi) * sin(th),
        rho * cos(phi),
    ]
    return Cell(
        ((0.0, 1.0), (0.0, math.pi / 2), (0.0, TWO_PI)),
        SmoothMap(3, 3, comps),
    )


def torus_cell(big_radius=2, small_radius=1) -> Cell:
    """Torus of revolution about the z axis, outward oriented: (u, v)."""
    u, v = variable(0), variable(1)
    ring = as_expr(big_radius) + as_expr(small_radius) * cos(v)
    comps = [
        ring * cos(u),
        ring * sin(u),
        as_expr(small_radius) * sin(v),
    ]
    return Cell(((0.0, TWO_PI), (0.0, TWO_PI)), SmoothMap(2, 3, comps))


def flat_square_cell() -> Cell:
    """Unit square embedded in the plane z = 0 of R^3."""
    u, v = variable(0), variable(1)
    return Cell(
        ((0.0, 1.0), (0.0, 1.0)),
        SmoothMap(2, 3, [u, v, as_expr(0)]),
    )


def sphere_chain(radius=1) -> Chain:
    return Chain.of(sphere_cell(radius))


def circle_chain(radius=1, center=(0, 0)) -> Chain:
    return Chain.of(circle_cell(radius, center))

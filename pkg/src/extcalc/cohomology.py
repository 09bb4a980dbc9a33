"""Desk-scale de Rham cohomology.

Good covers are encoded combinatorially: a Nerve records which finite
intersections of cover elements are nonempty (and hence contractible).  Its
Cech complex over Q computes the Betti numbers; ranks are found by exact
fraction-free elimination, never by floating point.

The Mayer-Vietoris solver propagates rank-nullity bookkeeping through a long
exact sequence: at every interior slot, dim = rank(incoming) + rank(outgoing).
Under-determined data is reported, never guessed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .cells import Cell
from .errors import InconsistentSequenceError
from .forms import DifferentialForm
from .maps import SmoothMap
from .scalar import ScalarExpr, sin, variable


# ---------------------------------------------------------------------------
# Exact linear algebra


def rank_exact(rows) -> int:
    """Rank of a matrix with int/Fraction entries, by fraction-free
    (Bareiss) elimination over the integers."""
    if not rows:
        return 0
    work = []
    for row in rows:
        denom = 1
        for x in row:
            if isinstance(x, Fraction):
                denom = denom * x.denominator // math.gcd(denom, x.denominator)
        work.append([int(x * denom) if isinstance(x, Fraction) else int(x) * denom for x in row])
    m = len(work)
    n = len(work[0])
    rank = 0
    prev = 1
    row = 0
    for col in range(n):
        piv = None
        for r in range(row, m):
            if work[r][col] != 0:
                piv = r
                break
        if piv is None:
            continue
        work[row], work[piv] = work[piv], work[row]
        pivot = work[row][col]
        for r in range(row + 1, m):
            factor = work[r][col]
            if factor == 0 and prev == 1:
                continue
            for c in range(col, n):
                work[r][c] = (work[r][c] * pivot - factor * work[row][c]) // prev
        prev = pivot
        row += 1
        rank += 1
        if row == m:
            break
    return rank


# ---------------------------------------------------------------------------
# Nerves and Cech cohomology


class Nerve:
    """Downward-closed family of nonempty-intersection index sets."""

    __slots__ = ("vertices", "simplices")

    def __init__(self, vertices: int, simplices):
        if vertices < 1:
            raise ValueError("a nerve needs at least one vertex")
        closed = set()
        for s in simplices:
            s = frozenset(s)
            if not s:
                continue
            if any(not 0 <= v < vertices for v in s):
                raise ValueError(f"simplex {sorted(s)} mentions a missing vertex")
            closed.add(s)
        # complete downward closure and singletons
        stack = list(closed)
        while stack:
            s = stack.pop()
            if len(s) <= 1:
                continue
            for v in s:
                face = s - {v}
                if face not in closed:
                    closed.add(face)
                    stack.append(face)
        for v in range(vertices):
            closed.add(frozenset((v,)))
        self.vertices = vertices
        self.simplices = closed

    def simplices_of_dimension(self, k: int):
        return sorted(
            tuple(sorted(s)) for s in self.simplices if len(s) == k + 1
        )

    @property
    def dimension(self) -> int:
        return max(len(s) for s in self.simplices) - 1

    def euler_characteristic(self) -> int:
        chi = 0
        for k in range(self.dimension + 1):
            chi += (-1) ** k * len(self.simplices_of_dimension(k))
        return chi

    @staticmethod
    def from_json(data) -> "Nerve":
        return Nerve(data["vertices"], data.get("simplices", []))


@dataclass
class CochainComplex:
    """Dimensions and coboundary matrices delta_k : C^k -> C^{k+1} over Q."""

    dims: list
    deltas: list  # deltas[k] has shape (dims[k+1], dims[k]); last entry empty

    def __post_init__(self):
        for k in range(len(self.deltas) - 1):
            a, b = self.deltas[k + 1], self.deltas[k]
            if not a or not b:
                continue
            for i in range(len(a)):
                for j in range(len(b[0])):
                    s = sum(a[i][l] * b[l][j] for l in range(len(b)))
                    if s != 0:
                        raise ValueError("coboundary squared is nonzero")

    def betti(self):
        out = []
        prev_rank = 0
        for k, dim in enumerate(self.dims):
            rank = rank_exact(self.deltas[k]) if k < len(self.deltas) else 0
            out.append(dim - rank - prev_rank)
            prev_rank = rank
        return out


def cech_complex(nerve: Nerve) -> CochainComplex:
    top = nerve.dimension
    levels = [nerve.simplices_of_dimension(k) for k in range(top + 1)]
    dims = [len(level) for level in levels]
    deltas = []
    for k in range(top):
        lower_index = {s: i for i, s in enumerate(levels[k])}
        rows = []
        for s in levels[k + 1]:
            row = [0] * dims[k]
            for i in range(len(s)):
                face = s[:i] + s[i + 1:]
                row[lower_index[face]] += (-1) ** i
            rows.append(row)
        deltas.append(rows)
    deltas.append([])
    return CochainComplex(dims, deltas)


def cech_betti(nerve: Nerve):
    """Betti numbers of the nerve, one entry per dimension 0..dim."""
    return cech_complex(nerve).betti()


# Standard nerves used by tests and the Mayer-Vietoris pipeline


def point_nerve() -> Nerve:
    return Nerve(1, [])


def two_points_nerve() -> Nerve:
    return Nerve(2, [])


def cycle_nerve(m: int = 4) -> Nerve:
    """An m-gon; the nerve of an m-arc good cover of the circle (m >= 3)."""
    if m < 3:
        raise ValueError("a simplicial circle needs at least 3 vertices")
    return Nerve(m, [(i, (i + 1) % m) for i in range(m)])


def sphere_nerve(n: int) -> Nerve:
    """Boundary of the (n+1)-simplex: the minimal triangulation of S^n."""
    if n < 1:
        raise ValueError("n >= 1")
    verts = n + 2
    full = tuple(range(verts))
    faces = [full[:i] + full[i + 1:] for i in range(verts)]
    return Nerve(verts, faces)


def _grid_triangles(wrap_vertical):
    """3x3 grid triangulation with horizontal wrap and the given vertical
    gluing rule wrap_vertical(i) for row 3 -> row 0."""
    size = 3

    def vert(i, j):
        i %= size
        if j < size:
            return j * size + i
        return wrap_vertical(i)

    triangles = []
    for j in range(size):
        for i in range(size):
            a = vert(i, j)
            b = vert(i + 1, j)
            c = vert(i + 1, j + 1)
            d = vert(i, j + 1)
            triangles.append((a, b, c))
            triangles.append((a, d, c))
    return triangles


def torus_nerve() -> Nerve:
    """Nerve of a 3x3 grid of patches on the flat torus."""
    return Nerve(9, _grid_triangles(lambda i: i % 3))


def klein_nerve() -> Nerve:
    """Like the torus grid, but the vertical gluing reverses orientation."""
    return Nerve(9, _grid_triangles(lambda i: (-i) % 3))


# ---------------------------------------------------------------------------
# Exact-sequence solver


@dataclass
class ExactSequenceProblem:
    """An exact sequence of vector spaces, fenced by zero slots.

    ``dims[i]`` is the dimension of slot i (None when unknown) and
    ``ranks[j]`` the rank of the map from slot j to slot j+1 (None unknown).
    """

    dims: list
    ranks: list = None

    def __post_init__(self):
        if self.ranks is None:
            self.ranks = [None] * (len(self.dims) - 1)
        if len(self.ranks) != len(self.dims) - 1:
            raise ValueError("need exactly one map between consecutive slots")
        if len(self.dims) < 2:
            raise ValueError("sequence too short")
        for end in (0, -1):
            if self.dims[end] not in (None, 0):
                raise InconsistentSequenceError(
                    "sequence must start and end at zero-dimensional slots"
                )

    @staticmethod
    def from_json(data) -> "ExactSequenceProblem":
        dims = [slot.get("dim") for slot in data["slots"]]
        ranks = [m.get("rank") for m in data.get("maps", [{}] * (len(dims) - 1))]
        return ExactSequenceProblem(dims, ranks)


@dataclass
class MVSolution:
    dims: list
    ranks: list
    determined: bool
    unknown_slots: list = field(default_factory=list)

    def __str__(self):
        if self.determined:
            return f"dims = {self.dims}"
        return f"under-determined; unknown slots {self.unknown_slots}"


def mv_solve(problem: ExactSequenceProblem) -> MVSolution:
    """Solve for all slot dimensions, or report under-determination.

    Raises InconsistentSequenceError when the data admits no solution.
    """
    dims = list(problem.dims)
    ranks = list(problem.ranks)
    m = len(dims)
    dims[0] = 0
    dims[-1] = 0

    def set_dim(i, v):
        if v < 0:
            raise InconsistentSequenceError(f"slot {i} would need dimension {v}")
        if dims[i] is None:
            dims[i] = v
            return True
        if dims[i] != v:
            raise InconsistentSequenceError(
                f"slot {i}: {dims[i]} conflicts with derived value {v}"
            )
        return False

    def set_rank(j, v):
        if v < 0:
            raise InconsistentSequenceError(f"map {j} would need rank {v}")
        if ranks[j] is None:
            ranks[j] = v
            return True
        if ranks[j] != v:
            raise InconsistentSequenceError(
                f"map {j}: rank {ranks[j]} conflicts with derived value {v}"
            )
        return False

    changed = True
    while changed:
        changed = False
        for j in range(m - 1):
            if dims[j] == 0 or dims[j + 1] == 0:
                if ranks[j] != 0:
                    changed |= set_rank(j, 0)
            if ranks[j] is not None:
                if dims[j] is not None and ranks[j] > dims[j]:
                    raise InconsistentSequenceError(
                        f"map {j} rank exceeds source dimension"
                    )
                if dims[j + 1] is not None and ranks[j] > dims[j + 1]:
                    raise InconsistentSequenceError(
                        f"map {j} rank exceeds target dimension"
                    )
        for i in range(1, m - 1):
            known = [x is not None for x in (dims[i], ranks[i - 1], ranks[i])]
            if all(known):
                if dims[i] != ranks[i - 1] + ranks[i]:
                    raise InconsistentSequenceError(
                        f"exactness fails at slot {i}"
                    )
            elif known == [False, True, True]:
                changed |= set_dim(i, ranks[i - 1] + ranks[i])
            elif known == [True, False, True]:
                changed |= set_rank(i - 1, dims[i] - ranks[i])
            elif known == [True, True, False]:
                changed |= set_rank(i, dims[i] - ranks[i - 1])
    unknown = [i for i, v in enumerate(dims) if v is None]
    return MVSolution(dims, ranks, not unknown, unknown)


# ---------------------------------------------------------------------------
# Spheres via the Mayer-Vietoris recursion


def _betti_entry(betti, k):
    return betti[k] if k < len(betti) else 0


def sphere_sequence_problem(n: int, intersection_betti) -> ExactSequenceProblem:
    """The long exact sequence for S^n = (cap) u (cap), overlap ~ S^{n-1}.

    Knowns: H^0(S^n) = 1 (connected), both caps are contractible, and the
    overlap has the given Betti numbers.  Slots for H^k(S^n), k >= 1, are
    left unknown.
    """
    dims = [0, 1]  # leading zero, then H^0(X) = 1 since S^n is connected
    for k in range(n + 1):
        caps = 2 if k == 0 else 0
        dims.append(caps)
        if k < n:
            dims.append(_betti_entry(intersection_betti, k))
            dims.append(None)  # H^{k+1}(X)
    dims.append(0)
    return ExactSequenceProblem(dims)


def sphere_betti(n: int):
    """Betti numbers of S^n computed by the Mayer-Vietoris recursion."""
    if n < 1:
        raise ValueError("n >= 1")
    intersection = [2]  # two disjoint intervals for the circle's overlap
    betti = None
    for dim in range(1, n + 1):
        problem = sphere_sequence_problem(dim, intersection)
        solution = mv_solve(problem)
        if not solution.determined:
            raise InconsistentSequenceError("sphere recursion under-determined")
        betti = [1] + [solution.dims[1 + 3 * k + 3] for k in range(dim)]
        intersection = betti
    return betti


def poincare_duality_check(betti, orientable: bool = True) -> bool:
    """Palindrome test b_k == b_{n-k}; meaningful for compact orientable X."""
    if not orientable:
        raise ValueError("duality pairing requires an orientable manifold")
    return list(betti) == list(reversed(list(betti)))


# ---------------------------------------------------------------------------
# Known-value tables


def compact_support_euclidean_betti(n: int):
    """Compactly supported cohomology of R^n: one dimension in top degree."""
    if n < 0:
        raise ValueError("n >= 0")
    return [0] * n + [1]


def known_cohomology_tables() -> dict:
    return {
        "H0_connected": 1,
        "top_compact_connected_orientable": 1,
        "top_compact_connected_nonorientable": 0,
        "compact_support_euclidean": {
            n: compact_support_euclidean_betti(n) for n in range(7)
        },
        "spheres": {n: sphere_betti(n) for n in range(1, 7)},
    }


# ---------------------------------------------------------------------------
# The explicit connecting-map generator on the circle


@dataclass
class CircleGenerator:
    """A bump 1-form on the circle produced by the connecting construction.

    The circle is covered by the arcs U = {y < 1/2} and V = {y > -1/2}; the
    overlap has an x > 0 component and an x < 0 component.  The partition of
    unity is the cubic smoothstep in y (C^1, not C-infinity; the construction
    only needs its derivative to be integrable).  For an input class
    (a, b) in H^0(U n V), the resulting form is a d(rho_V) on the x > 0
    component and b d(rho_V) on the x < 0 component, and integrates to a - b.

    ``arc_u`` and ``arc_v`` give the two cover arcs as angle intervals; the
    coefficient is expressed in the angle coordinate shared by both charts.
    """

    klass: tuple
    coefficient: ScalarExpr  # d/dtheta of rho_V(sin theta), per unit class
    rho_v: ScalarExpr  # smoothstep in y, valid on the transition band
    arc_u: tuple  # theta interval of the arc {y < 1/2}
    arc_v: tuple  # theta interval of the arc {y > -1/2}
    support_positive_x: tuple  # theta interval carrying the x > 0 bump
    support_negative_x: tuple
    integral: float
    notes: str = (
        "partition of unity is a C^1 cubic smoothstep in y; "
        "the transition band is |y| <= 1/10"
    )


def circle_connecting_generator(klass=(1, 0), spec=32) -> CircleGenerator:
    from .integrate import integrate_cell

    a, b = klass
    y = variable(0)
    u = 5 * y + Fraction(1, 2)  # rescales y in [-1/10, 1/10] to [0, 1]
    rho_v = 3 * u**2 - 2 * u**3
    theta = variable(0)
    coeff = rho_v.substitute([sin(theta)]).differentiate(0)
    half_band = math.asin(0.1)
    total = 0.0
    for weight, (lo, hi) in (
        (a, (-half_band, half_band)),
        (b, (math.pi - half_band, math.pi + half_band)),
    ):
        if weight == 0:
            continue
        form = DifferentialForm(1, 1, {(0,): coeff * weight})
        cell = Cell(((lo, hi),), SmoothMap(1, 1, [variable(0)]))
        total += integrate_cell(form, cell, spec)
    sixth = math.asin(0.5)
    return CircleGenerator(
        klass=(a, b),
        coefficient=coeff,
        rho_v=rho_v,
        arc_u=(math.pi - sixth, 2 * math.pi + sixth),  # y < 1/2, wrapped
        arc_v=(-sixth, math.pi + sixth),  # y > -1/2
        support_positive_x=(-half_band, half_band),
        support_negative_x=(math.pi - half_band, math.pi + half_band),
        integral=total,
    )

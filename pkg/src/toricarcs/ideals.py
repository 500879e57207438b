"""Invariant monomial ideals and contact loci on an affine toric chart.

The order function of a monomial ideal at a lattice point of the cone is
the minimum pairing against the ideal's exponents; it is piecewise linear
on the subdivision of the cone dual to the Newton polytope.  Irreducible
components of the p-th contact locus correspond to the cone-order-minimal
lattice points with order exactly p, each carrying a divisorial valuation
through its primitive decomposition.  The same machinery locates the
components of the arc-space fiber over the singular locus directly from the
relative interiors of the singular faces.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .arcs import OrbitLabel
from .cones import (
    Cone,
    FaceRef,
    dual_generators,
    is_smooth,
    lattice_points_where,
    polyhedron_vertices,
)
from .lattice import (
    INF,
    M_SIDE,
    N_SIDE,
    LatticeVector,
    ext_min,
    is_finite,
    pairing,
    primitive_part,
)

__all__ = [
    "MonomialIdeal",
    "monomial_ideal",
    "NewtonData",
    "PolarData",
    "ContactComponent",
    "ToricValuation",
    "order_function",
    "newton_polytope",
    "dual_fan",
    "polar_polytope",
    "compact_face_lattice_points",
    "is_minimal_in_contact",
    "contact_components",
    "singular_faces",
    "sing_components",
    "lift_to_open_stratum",
    "toric_valuation",
    "toric_valuation_eval",
]


@dataclass(frozen=True)
class MonomialIdeal:
    """An invariant monomial ideal: reduced exponent list on a chart cone."""

    chart: Cone
    generators: tuple[LatticeVector, ...]
    discarded: tuple[LatticeVector, ...]


def _in_dual(chart: Cone, u: LatticeVector) -> bool:
    return all(pairing(r, u) >= 0 for r in chart.rays)


def monomial_ideal(chart: Cone, exponents: Iterable) -> MonomialIdeal:
    """Validate and reduce a generator list for an invariant monomial ideal.

    A generator is discarded when it lies in another generator plus the dual
    cone (its monomial is a multiple of the other's); the discarded list is
    kept for reporting.
    """
    gens: list[LatticeVector] = []
    for e in exponents:
        u = e if isinstance(e, LatticeVector) else LatticeVector(tuple(int(x) for x in e), M_SIDE)
        if u.side != M_SIDE:
            raise ValueError("ideal exponents are M-side vectors")
        if u.dim != chart.dim_ambient:
            raise ValueError("exponent dimension mismatch")
        if not _in_dual(chart, u):
            raise ValueError(f"exponent {u.coords} is outside the dual semigroup")
        if u not in gens:
            gens.append(u)
    if not gens:
        raise ValueError("a monomial ideal needs at least one generator")
    gens.sort(key=lambda u: u.coords)
    kept: list[LatticeVector] = []
    discarded: list[LatticeVector] = []
    for i, u in enumerate(gens):
        redundant = False
        for j, w in enumerate(gens):
            if i == j:
                continue
            if _in_dual(chart, u - w):
                # mutual domination only happens along dual lineality; keep
                # the lexicographically smaller representative
                if _in_dual(chart, w - u) and j > i:
                    continue
                redundant = True
                break
        (discarded if redundant else kept).append(u)
    return MonomialIdeal(chart, tuple(kept), tuple(discarded))


def order_function(a: MonomialIdeal, v) -> int:
    """Minimal order of the ideal along arcs with order data v.

    v may be a lattice point of the chart cone, or an orbit label whose
    extended order function assigns INF to characters off the stratum's
    annihilator.  Homogeneous of degree one and monotone along the cone.
    """
    if isinstance(v, OrbitLabel):
        q = v.quotient
        vals = []
        for u in a.generators:
            if all(pairing(r, u) == 0 for r in v.face.rays):
                vals.append(pairing(v.point_vector, q.push_dual(u)))
            else:
                vals.append(INF)
        return ext_min(vals)
    if not isinstance(v, LatticeVector):
        v = LatticeVector(tuple(int(x) for x in v), N_SIDE)
    if not a.chart.contains(v):
        raise ValueError(f"{tuple(v.coords)} is not in the chart cone")
    return min(pairing(v, u) for u in a.generators)


# ---------------------------------------------------------------------------
# Newton polytope, dual fan, polar polytope
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class NewtonData:
    """Vertices of the Newton polytope with the dual subdivision of the cone."""

    vertices: tuple[LatticeVector, ...]
    redundant: tuple[LatticeVector, ...]
    dual_fan_cones: tuple[Cone, ...]


@dataclass(frozen=True)
class PolarData:
    """Exact vertex data of {v in the cone : order >= p}.

    compact_faces lists the bounded faces of the level set as tuples of
    vertex indices; every lattice point on one of them has order exactly p.
    """

    level: int
    vertices: tuple[tuple[Fraction, ...], ...]
    compact_faces: tuple[tuple[int, ...], ...]
    recession_rays: tuple[tuple[int, ...], ...]


def _require_full_dim(a: MonomialIdeal) -> None:
    if not a.chart.is_full_dimensional():
        raise ValueError("Newton polytope machinery needs a full-dimensional chart")


def _vertex_cell(a: MonomialIdeal, u: LatticeVector) -> Cone | None:
    """Region of the cone where u attains the minimum; None if not full-dim."""
    n = a.chart.dim_ambient
    constraints = [normal for normal, _ in a.chart.halfspace_data()]
    for w in a.generators:
        if w != u:
            constraints.append((w - u).coords)
    rays, lin = dual_generators(constraints, n)
    if lin:
        raise ValueError("dual-fan cell acquired a line; chart is degenerate")
    cell = Cone(rays, n)
    if cell.dim == n:
        return cell
    return None


def newton_polytope(a: MonomialIdeal) -> NewtonData:
    """Vertices of conv(generators) + dual cone; non-vertex generators flagged."""
    _require_full_dim(a)
    vertices = []
    redundant = []
    cells = []
    for u in a.generators:
        cell = _vertex_cell(a, u)
        if cell is None:
            redundant.append(u)
        else:
            vertices.append(u)
            cells.append(cell)
    order = sorted(range(len(vertices)), key=lambda i: vertices[i].coords)
    return NewtonData(
        vertices=tuple(vertices[i] for i in order),
        redundant=tuple(sorted(redundant, key=lambda u: u.coords)),
        dual_fan_cones=tuple(cells[i] for i in order),
    )


def dual_fan(a: MonomialIdeal) -> tuple[Cone, ...]:
    """Subdivision of the chart cone into the linearity regions of the order."""
    data = newton_polytope(a)
    return tuple(sorted(data.dual_fan_cones, key=lambda c: c.key))


def polar_polytope(a: MonomialIdeal, p: int) -> PolarData:
    """Vertices and compact faces of the level-p polytope of the order function."""
    _require_full_dim(a)
    if not isinstance(p, int) or p < 1:
        raise ValueError("the level p must be a positive integer")
    n = a.chart.dim_ambient
    constraints = [(u.coords, p) for u in a.generators]
    constraints += [(normal, 0) for normal, _ in a.chart.halfspace_data()]
    vertices, recession, homog = polyhedron_vertices(constraints, n)
    vertex_index = {}
    for i, r in enumerate(homog.rays):
        s = r.coords[-1]
        if s > 0:
            coords = tuple(Fraction(x, s) for x in r.coords[:-1])
            vertex_index[i] = vertices.index(coords)
    compact = set()
    for face in homog.faces():
        if not face.indices:
            continue
        if all(i in vertex_index for i in face.indices):
            compact.add(tuple(sorted(vertex_index[i] for i in face.indices)))
    return PolarData(
        level=p,
        vertices=vertices,
        compact_faces=tuple(sorted(compact)),
        recession_rays=recession,
    )


def compact_face_lattice_points(a: MonomialIdeal, p: int) -> tuple[tuple[int, ...], ...]:
    """All lattice points on compact faces of the level-p set, sorted."""
    data = polar_polytope(a, p)
    all_constraints = [(u.coords, p) for u in a.generators] + [
        (normal, 0) for normal, _ in a.chart.halfspace_data()
    ]
    found = set()
    for face in data.compact_faces:
        verts = [data.vertices[i] for i in face]
        lo = [min(v[j] for v in verts) for j in range(a.chart.dim_ambient)]
        hi = [max(v[j] for v in verts) for j in range(a.chart.dim_ambient)]
        lo = [math.floor(x) for x in lo]
        hi = [math.ceil(x) for x in hi]
        tight = [
            (c, b)
            for c, b in all_constraints
            if all(sum(x * y for x, y in zip(c, v)) == b for v in verts)
        ]
        for pt in lattice_points_where(all_constraints, lo, hi):
            if all(sum(x * y for x, y in zip(c, pt)) == b for c, b in tight):
                found.add(pt)
    return tuple(sorted(found))


# ---------------------------------------------------------------------------
# contact components
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ContactComponent:
    """A cone-order-minimal lattice point with its primitive decomposition.

    The attached divisorial valuation is e times the prime-divisor valuation
    of the primitive vector v0; level is the contact order, or None for
    components over the singular locus.
    """

    point: tuple[int, ...]
    e: int
    v0: tuple[int, ...]
    level: int | None


def _component(point: tuple[int, ...], level: int | None) -> ContactComponent:
    e, v0 = primitive_part(LatticeVector(point, N_SIDE))
    return ContactComponent(point=point, e=e, v0=v0.coords, level=level)


def is_minimal_in_contact(a: MonomialIdeal, p: int, v) -> bool:
    """Local minimality test: no single Hilbert-basis step stays at order p.

    Equivalent to global minimality among lattice points of order p because
    the order function is monotone along the cone, so any descent can be
    taken one Hilbert step at a time without leaving the level set.
    """
    vec = v if isinstance(v, LatticeVector) else LatticeVector(tuple(int(x) for x in v), N_SIDE)
    if not a.chart.contains(vec):
        raise ValueError(f"{tuple(vec.coords)} is not in the chart cone")
    if order_function(a, vec) != p:
        raise ValueError(f"order of {tuple(vec.coords)} is not {p}")
    for w in a.chart.hilbert_basis():
        prev = vec - w
        if a.chart.contains(prev) and order_function(a, prev) >= p:
            return False
    return True


def contact_components(a: MonomialIdeal, p: int) -> tuple[ContactComponent, ...]:
    """Minimal lattice points of order exactly p, with primitive decompositions.

    Candidates are enumerated in the bounding box of the compact faces of
    the level-p set, inflated by the longest Hilbert-basis vector of the
    chart semigroup; the run is repeated with a doubled margin and the two
    results must agree, which pins down the enumeration at desk scale.
    """
    if not isinstance(p, int) or p < 1:
        raise ValueError("contact loci are indexed by positive integers p")
    _require_full_dim(a)
    data = polar_polytope(a, p)
    n = a.chart.dim_ambient
    if not data.vertices:
        return ()
    lo0 = [math.floor(min(v[j] for v in data.vertices)) for j in range(n)]
    hi0 = [math.ceil(max(v[j] for v in data.vertices)) for j in range(n)]
    margin = max(
        (w.sup_norm() for w in a.chart.hilbert_basis()), default=1
    )

    def run(m: int) -> tuple[tuple[int, ...], ...]:
        lo = [x - m for x in lo0]
        hi = [x + m for x in hi0]
        out = []
        for pt in lattice_points_where(a.chart.halfspace_data(), lo, hi):
            vec = LatticeVector(pt, N_SIDE)
            if order_function(a, vec) != p:
                continue
            if is_minimal_in_contact(a, p, vec):
                out.append(pt)
        return tuple(sorted(out))

    first = run(margin)
    second = run(2 * margin)
    if first != second:
        raise RuntimeError(
            "minimal-element enumeration did not stabilize; inflate the margin"
        )
    return tuple(_component(pt, p) for pt in first)


# ---------------------------------------------------------------------------
# components over the singular locus
# ---------------------------------------------------------------------------


def singular_faces(c: Cone) -> tuple[FaceRef, ...]:
    """Faces whose primitive rays do not extend to a lattice basis."""
    return tuple(f for f in c.faces() if not is_smooth(f.as_cone()))


def _union_relint_member(singular_cones: Sequence[Cone], v: LatticeVector) -> bool:
    return any(fc.relint_contains(v) for fc in singular_cones)


def sing_components(c: Cone) -> tuple[ContactComponent, ...]:
    """Labels of the components of the arc fiber over the singular locus.

    These are the cone-order-minimal lattice points in the union of the
    relative interiors of the singular faces.  A relative-interior point
    with a repeated Hilbert summand descends by that summand and stays in
    the relative interior, so every minimal point is a 0/1 combination of
    its face's Hilbert basis; minimality is then certified globally by
    enumerating the (bounded) set of lattice points below v in the order.
    """
    sing = singular_faces(c)
    if not sing:
        return ()
    sing_cones = [f.as_cone() for f in sing]
    candidates: set[tuple[int, ...]] = set()
    for fc in sing_cones:
        basis = fc.hilbert_basis()
        for size in range(1, len(basis) + 1):
            for subset in itertools.combinations(basis, size):
                total = subset[0]
                for w in subset[1:]:
                    total = total + w
                if fc.relint_contains(total):
                    candidates.add(total.coords)
    minimal = []
    for pt in sorted(candidates):
        vec = LatticeVector(pt, N_SIDE)
        below = [(normal, 0) for normal, _ in c.halfspace_data()]
        below += [
            (tuple(-x for x in normal), -sum(a * b for a, b in zip(normal, pt)))
            for normal, _ in c.halfspace_data()
        ]
        verts, recession, _ = polyhedron_vertices(below, c.dim_ambient)
        assert not recession, "order interval is unbounded; cone not strongly convex?"
        lo = [math.floor(min(v[j] for v in verts)) for j in range(c.dim_ambient)]
        hi = [math.ceil(max(v[j] for v in verts)) for j in range(c.dim_ambient)]
        dominated = False
        for w in lattice_points_where(below, lo, hi):
            if w == pt:
                continue
            if _union_relint_member(sing_cones, LatticeVector(w, N_SIDE)):
                dominated = True
                break
        if not dominated:
            minimal.append(pt)
    return tuple(_component(pt, None) for pt in sorted(minimal))


# ---------------------------------------------------------------------------
# lifting contact orbits to the open stratum
# ---------------------------------------------------------------------------


def lift_to_open_stratum(a: MonomialIdeal, o: OrbitLabel) -> LatticeVector:
    """A lattice point of the cone with the same projection and the same order.

    For an orbit in a nonzero stratum meeting the contact locus at level p,
    adds a large multiple of a relative-interior point of the stratum face
    to a section lift, which fixes all pairings on the stratum's annihilator
    and pushes every other pairing above p.
    """
    p = order_function(a, o)
    if not is_finite(p):
        raise ValueError("orbit meets no contact locus: order is infinite")
    if o.face.is_zero:
        return o.point_vector
    chart = a.chart
    q = o.quotient
    w = q.lift(o.point)
    v1 = o.face.rays[0]
    for r in o.face.rays[1:]:
        v1 = v1 + r
    off_perp = [
        u for u in chart.dual_generator_list() if any(pairing(r, u) != 0 for r in o.face.rays)
    ]
    k = 0
    for u in off_perp:
        num = -pairing(w, u)
        den = pairing(v1, u)
        if den <= 0:
            raise RuntimeError("interior point pairs nonpositively off the annihilator")
        if num > 0:
            k = max(k, -(-num // den))
    v0 = w + k * v1
    m = p + 1
    lifted = v0 + m * v1
    assert chart.contains(lifted)
    assert q.project(lifted).coords == o.point
    assert order_function(a, lifted) == p
    return lifted


# ---------------------------------------------------------------------------
# toric valuations
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ToricValuation:
    """The divisorial valuation attached to a nonzero lattice point of the cone."""

    chart: Cone
    point: tuple[int, ...]
    e: int
    v0: tuple[int, ...]


def toric_valuation(chart: Cone, v) -> ToricValuation:
    vec = v if isinstance(v, LatticeVector) else LatticeVector(tuple(int(x) for x in v), N_SIDE)
    if vec.is_zero():
        raise ValueError("the zero vector defines no valuation")
    if not chart.contains(vec):
        raise ValueError(f"{tuple(vec.coords)} is not in the chart cone")
    e, v0 = primitive_part(vec)
    return ToricValuation(chart=chart, point=vec.coords, e=e, v0=v0.coords)


def toric_valuation_eval(val: ToricValuation, f: Sequence[tuple]) -> int:
    """Value of the valuation on a polynomial given by (coefficient, exponent) pairs."""
    if not f:
        raise ValueError("empty support: the zero polynomial has no finite order")
    v = LatticeVector(val.point, N_SIDE)
    orders = []
    for coeff, exponent in f:
        if isinstance(coeff, Fraction):
            nonzero = coeff != 0
        else:
            nonzero = coeff != 0
        if not nonzero:
            raise ValueError("support coefficients must be nonzero")
        u = (
            exponent
            if isinstance(exponent, LatticeVector)
            else LatticeVector(tuple(int(x) for x in exponent), M_SIDE)
        )
        if not _in_dual(val.chart, u):
            raise ValueError(f"exponent {u.coords} is outside the dual semigroup")
        orders.append(pairing(v, u))
    return min(orders)

"""Orbit calculus on the arc space of a toric variety.

Orbits of the arc-torus action are labelled by a stratum face tau together
with a lattice point of the quotient lattice N_tau lying in the image of a
chart cone.  Equivalently, an orbit is a semigroup homomorphism from the
chart's dual semigroup to the extended nonnegative integers; this module
converts between the two pictures, realizes labels as explicit monomial
arcs, decides dominance (orbit-closure containment) through the cone order
on lattice points, enumerates bounded dominance posets, and certifies
dominating pairs with explicit one-parameter deformation families verified
by truncated power-series arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Mapping, Sequence

from .cones import (
    Cone,
    FaceRef,
    Fan,
    hilbert_basis_dual,
    is_face_of,
    is_smooth,
    lattice_points_where,
    quotient_by_face,
)
from .lattice import (
    INF,
    M_SIDE,
    N_SIDE,
    Infinite,
    LatticeVector,
    QuotientLattice,
    is_finite,
    pairing,
    quotient_lattice,
    row_hermite,
    solve_linear,
)
from .series import TruncatedSeries

__all__ = [
    "SemigroupHom",
    "OrbitLabel",
    "orbit_label",
    "classify_hom",
    "hom_from_label",
    "monomial_arc",
    "cylinder_level",
    "dominates",
    "OrbitPoset",
    "orbit_poset",
    "WitnessEntry",
    "DominanceWitness",
    "dominance_witness",
]


@dataclass(frozen=True)
class SemigroupHom:
    """Values of an additive map from the dual Hilbert generators to Z>=0 or INF."""

    cone: Cone
    values: tuple

    def __post_init__(self):
        gens = hilbert_basis_dual(self.cone)
        vals = tuple(self.values)
        if len(vals) != len(gens):
            raise ValueError("one value per dual Hilbert generator is required")
        for v in vals:
            if isinstance(v, Infinite):
                continue
            if not isinstance(v, int) or v < 0:
                raise ValueError("values must be nonnegative integers or INF")
        object.__setattr__(self, "values", vals)

    @property
    def generators(self) -> tuple[LatticeVector, ...]:
        return hilbert_basis_dual(self.cone)

    def as_dict(self) -> dict[tuple[int, ...], object]:
        return {g.coords: v for g, v in zip(self.generators, self.values)}


@lru_cache(maxsize=None)
def _stratum_quotient(ambient_dim: int, face_key: tuple) -> QuotientLattice:
    gens = [LatticeVector(coords, N_SIDE) for coords in face_key]
    return quotient_lattice(ambient_dim, gens)


def _maximal_cones(ambient) -> tuple[Cone, ...]:
    if isinstance(ambient, Cone):
        return (ambient,)
    if isinstance(ambient, Fan):
        return ambient.maximal_cones
    raise TypeError("ambient must be a Cone or a Fan")


def _strata(ambient) -> tuple[FaceRef, ...]:
    if isinstance(ambient, Cone):
        return ambient.faces()
    if isinstance(ambient, Fan):
        return ambient.strata()
    raise TypeError("ambient must be a Cone or a Fan")


def _charts_over(ambient, face: FaceRef) -> tuple[Cone, ...]:
    return tuple(
        c for c in _maximal_cones(ambient) if all(c.contains(r) for r in face.rays)
    )


def _face_in_chart(chart: Cone, face: FaceRef) -> FaceRef:
    if not face.rays:
        return chart.zero_face()
    return chart.smallest_face_containing(list(face.rays))


@dataclass(frozen=True)
class OrbitLabel:
    """An arc-space orbit: a stratum face and a point of the quotient lattice."""

    ambient: object
    face: FaceRef
    point: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "point", tuple(int(x) for x in self.point))

    @property
    def quotient(self) -> QuotientLattice:
        dim = self.face.parent.dim_ambient
        return _stratum_quotient(dim, self.face.key)

    @property
    def point_vector(self) -> LatticeVector:
        return LatticeVector(self.point, N_SIDE)

    def sort_key(self):
        return (len(self.face.key), self.face.key, self.point)

    def __repr__(self) -> str:
        return f"OrbitLabel(stratum={[list(r) for r in self.face.key]}, v={list(self.point)})"


def orbit_label(ambient, face: FaceRef, point: Sequence[int]) -> OrbitLabel:
    """Validated orbit label: the point must land in some chart's image cone."""
    label = OrbitLabel(ambient, face, tuple(point))
    q = label.quotient
    if len(label.point) != q.quotient_dim:
        raise ValueError(
            f"point has {len(label.point)} coordinates, expected {q.quotient_dim}"
        )
    for chart in _charts_over(ambient, face):
        image = quotient_by_face(chart, _face_in_chart(chart, face)).image_cone
        if image.contains(label.point_vector):
            return label
    raise ValueError("point lies in no chart's image cone for this stratum")


# ---------------------------------------------------------------------------
# semigroup homomorphisms <-> labels
# ---------------------------------------------------------------------------


def classify_hom(c: Cone, h: SemigroupHom | Mapping | Sequence) -> OrbitLabel:
    """Stratum face and lattice point realizing a consistent semigroup hom.

    The finiteness locus of a semigroup homomorphism to Z>=0 + INF is cut out
    by a unique face of the cone; the finite values then determine a unique
    point of the quotient lattice by exact linear solving.  Value assignments
    violating an additive relation among the generators are rejected.
    """
    gens = hilbert_basis_dual(c)
    if isinstance(h, SemigroupHom):
        if h.cone != c:
            raise ValueError("homomorphism belongs to a different cone")
        values = h.values
    elif isinstance(h, Mapping):
        lookup = {}
        for key, val in h.items():
            coords = tuple(key.coords) if isinstance(key, LatticeVector) else tuple(key)
            lookup[coords] = val
        try:
            values = tuple(lookup[g.coords] for g in gens)
        except KeyError as missing:
            raise ValueError(f"no value for dual generator {missing}") from None
        values = SemigroupHom(c, values).values
    else:
        values = SemigroupHom(c, tuple(h)).values

    finite = [(g, v) for g, v in zip(gens, values) if is_finite(v)]
    finite_sum = None
    for g, _ in finite:
        finite_sum = g if finite_sum is None else finite_sum + g
    if finite_sum is None:
        tight = tuple(range(len(c.rays)))
    else:
        tight = c.tight_ray_indices(finite_sum)
    tau = c.face_from_indices(tight)

    # every generator inside the finiteness face must carry a finite value
    for g, v in zip(gens, values):
        if is_finite(v):
            continue
        if all(pairing(r, g) == 0 for r in tau.rays):
            raise ValueError(
                f"inconsistent values: generator {g.coords} lies in the "
                "finiteness face but is assigned INF"
            )

    q = _stratum_quotient(c.dim_ambient, tau.key)
    rows = [q.push_dual(g).coords for g, _ in finite]
    rhs = [v for _, v in finite]
    solution = solve_linear(rows, rhs)
    if solution is None:
        raise ValueError("values violate an additive relation among the generators")
    point = []
    for x in solution:
        if x.denominator != 1:
            raise ValueError("values violate an additive relation among the generators")
        point.append(int(x))
    return orbit_label(c, tau, tuple(point))


def hom_from_label(o: OrbitLabel, chart: Cone | None = None) -> SemigroupHom:
    """The extended order function of an orbit on a chart's dual generators."""
    if chart is None:
        if not isinstance(o.ambient, Cone):
            raise ValueError("a chart cone is required for labels over a fan")
        chart = o.ambient
    gens = hilbert_basis_dual(chart)
    q = o.quotient
    values = []
    for g in gens:
        if all(pairing(r, g) == 0 for r in o.face.rays):
            values.append(pairing(o.point_vector, q.push_dual(g)))
        else:
            values.append(INF)
    return SemigroupHom(chart, tuple(values))


def monomial_arc(
    o: OrbitLabel, precision: int | None = None
) -> dict[LatticeVector, TruncatedSeries]:
    """The monomial arc of a label: each dual generator goes to a power of t.

    Generators with infinite order map to the zero series; the assignment
    satisfies every additive relation of the dual semigroup exactly, so all
    binomial relations of the chart hold on the nose.  The series are exact
    through t-degree `precision`, which must be at least the largest finite
    order (the label's cylinder level on the open stratum).
    """
    hom = hom_from_label(o)
    finite_vals = [v for v in hom.values if is_finite(v)]
    level = max(finite_vals, default=0)
    if precision is None:
        precision = level
    if precision < level:
        raise ValueError(f"precision must be at least the largest order {level}")
    cutoff = precision + 1
    out = {}
    for g, v in zip(hom.generators, hom.values):
        if is_finite(v):
            out[g] = TruncatedSeries.monomial(v, 0, 1, t_precision=cutoff)
        else:
            out[g] = TruncatedSeries.zero(cutoff)
    return out


def cylinder_level(o: OrbitLabel) -> int:
    """Truncation level at which the orbit is a cylinder (open stratum only)."""
    if not o.face.is_zero:
        raise ValueError("cylinder level is defined on the open stratum only")
    if not isinstance(o.ambient, Cone):
        raise ValueError("cylinder level requires an affine chart")
    hom = hom_from_label(o)
    return max((v for v in hom.values if is_finite(v)), default=0)


# ---------------------------------------------------------------------------
# dominance
# ---------------------------------------------------------------------------


def _project_between(
    o1: OrbitLabel, o2_face: FaceRef
) -> LatticeVector:
    """Image of o1's point under the projection N_tau -> N_gamma."""
    q_tau = o1.quotient
    q_gamma = _stratum_quotient(o1.face.parent.dim_ambient, o2_face.key)
    lifted = q_tau.lift(o1.point)
    return q_gamma.project(lifted)


def _dominance_charts(o1: OrbitLabel, o2: OrbitLabel):
    """Charts where the lattice criterion for dominance can be evaluated.

    Yields (chart, projected_point, image_cone_mod_gamma, holds) for every
    maximal cone containing both orbits' strata.
    """
    if o1.ambient != o2.ambient:
        raise ValueError("orbit labels live over different ambients")
    tau, gamma = o1.face, o2.face
    if not is_face_of(tau, gamma):
        return
    rho_v = _project_between(o1, gamma)
    for chart in _charts_over(o1.ambient, gamma):
        f_tau = _face_in_chart(chart, tau)
        f_gamma = _face_in_chart(chart, gamma)
        image_tau = quotient_by_face(chart, f_tau).image_cone
        image_gamma = quotient_by_face(chart, f_gamma).image_cone
        if not image_tau.contains(o1.point_vector):
            continue
        if not image_gamma.contains(o2.point_vector):
            continue
        holds = image_gamma.contains(o2.point_vector - rho_v)
        yield chart, rho_v, image_gamma, holds


def dominates(o1: OrbitLabel, o2: OrbitLabel) -> bool:
    """Orbit-closure containment, decided by the lattice criterion.

    True iff o1's stratum face is a face of o2's, some maximal cone contains
    both orbits' charts, and the projected point of o1 precedes o2's point in
    the image cone's order.  Labels over charts sharing no maximal cone are
    never comparable.
    """
    return any(holds for _, _, _, holds in _dominance_charts(o1, o2))


@dataclass(frozen=True)
class OrbitPoset:
    """Bounded slice of the dominance order: nodes, full order, cover edges."""

    nodes: tuple[OrbitLabel, ...]
    relation: frozenset
    covers: tuple[tuple[int, int], ...]


def orbit_poset(ambient, bound: int) -> OrbitPoset:
    """All orbit labels with sup-norm at most `bound`, ordered by dominance.

    Nodes are deterministic: strata in face order, points lexicographic.
    Cover edges are the transitive reduction of dominance restricted to the
    node set.
    """
    if bound < 0:
        raise ValueError("bound must be nonnegative")
    nodes: list[OrbitLabel] = []
    for face in _strata(ambient):
        q = _stratum_quotient(face.parent.dim_ambient, face.key)
        dim = q.quotient_dim
        points = set()
        for chart in _charts_over(ambient, face):
            image = quotient_by_face(chart, _face_in_chart(chart, face)).image_cone
            if dim == 0:
                points.add(())
                continue
            lo = [-bound] * dim
            hi = [bound] * dim
            for p in lattice_points_where(image.halfspace_data(), lo, hi):
                points.add(p)
        for p in sorted(points):
            nodes.append(OrbitLabel(ambient, face, p))
    relation = set()
    for i, a in enumerate(nodes):
        for j, b in enumerate(nodes):
            if i != j and dominates(a, b):
                relation.add((i, j))
    covers = []
    for i, j in sorted(relation):
        if not any((i, k) in relation and (k, j) in relation for k in range(len(nodes))):
            covers.append((i, j))
    return OrbitPoset(tuple(nodes), frozenset(relation), tuple(covers))


# ---------------------------------------------------------------------------
# deformation witnesses
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class WitnessEntry:
    """Verification record for one dual generator of the witness chart."""

    character: tuple[int, ...]
    in_ring: bool
    order_generic: int | None
    order_at_zero: int | None
    expected_generic: object
    expected_at_zero: object
    ok: bool


@dataclass(frozen=True)
class DominanceWitness:
    """Explicit one-parameter family interpolating between two orbits."""

    chart: Cone
    precision: int
    family: tuple[tuple[tuple[int, ...], TruncatedSeries], ...]
    entries: tuple[WitnessEntry, ...]
    verified: bool


def _invert_unit_upper(T):
    """Inverse of a unit upper-triangular integer matrix."""
    d = len(T)
    inv = [[1 if i == j else 0 for j in range(d)] for i in range(d)]
    for i in range(d - 1, -1, -1):
        for j in range(i + 1, d):
            f = sum(T[i][k] * inv[k][j] for k in range(i + 1, d))
            inv[i][j] = -f
    return inv


def _adapted_dual_basis(rays: Sequence[tuple[int, ...]], dim: int):
    """Dual basis rows for a smooth cone: first block dual to the rays.

    Returns a unimodular dim x dim matrix whose i-th row pairs to delta_ij
    with the j-th ray for i, j below the cone dimension; the remaining rows
    complete the basis (characters of the torus factor).
    """
    d = len(rays)
    if d == 0:
        return [[1 if i == j else 0 for j in range(dim)] for i in range(dim)]
    A = [[rays[j][i] for j in range(d)] for i in range(dim)]
    H, U, _, rank = row_hermite(A)
    if rank != d or any(H[i][i] != 1 for i in range(d)):
        raise ValueError("rays do not extend to a lattice basis (cone not smooth)")
    Tinv = _invert_unit_upper([row[:d] for row in H[:d]])
    top = [
        [sum(Tinv[i][k] * U[k][j] for k in range(d)) for j in range(dim)]
        for i in range(d)
    ]
    return top + [list(U[i]) for i in range(d, dim)]


def dominance_witness(
    o1: OrbitLabel, o2: OrbitLabel, t_precision: int | None = None
) -> DominanceWitness:
    """Deformation family certifying that o1's orbit closure contains o2's.

    On a smooth chart, each basis character is sent to t^b + lambda*t^a
    (a, b the pairings against o1 and o2) when the target order b is finite,
    and to lambda*t^a when the character is infinite on the target stratum;
    torus-factor characters go to 1 + lambda, their inverses to the unit
    inverse (expanded to the same depth in lambda).  The verification report
    checks that every image lies in the power-series ring, that generic
    lambda recovers o1's orders, and that lambda = 0 recovers o2's.
    """
    found = None
    for chart, rho_v, image_gamma, holds in _dominance_charts(o1, o2):
        if holds and is_smooth(chart):
            found = (chart, rho_v)
            break
    if found is None:
        if dominates(o1, o2):
            raise ValueError(
                "no smooth chart realizes this domination; witness unsupported"
            )
        raise ValueError("lattice criterion fails: o1 does not dominate o2")
    chart, rho_v = found

    f_tau = _face_in_chart(chart, o1.face)
    fq_tau = quotient_by_face(chart, f_tau)
    sigma_bar = fq_tau.image_cone
    if not is_smooth(sigma_bar):
        raise ValueError("image cone of the smooth chart failed the smoothness test")
    nbar = fq_tau.lattice.quotient_dim
    rays = [r.coords for r in sigma_bar.rays]
    d = len(rays)
    basis_rows = _adapted_dual_basis(rays, nbar)

    q_gamma = _stratum_quotient(chart.dim_ambient, o2.face.key)
    v1 = o1.point_vector

    pair_data = []  # (character ambient coords, a_i, b_i) per basis row
    for i, row in enumerate(basis_rows):
        e_i = LatticeVector(tuple(row), M_SIDE)
        a_i = pairing(v1, e_i)
        u_i = fq_tau.lattice.pull_dual(e_i)
        if all(pairing(r, u_i) == 0 for r in o2.face.rays):
            b_i = pairing(o2.point_vector, q_gamma.push_dual(u_i))
        else:
            b_i = INF
        pair_data.append((u_i.coords, a_i, b_i))

    finite_orders = [a for _, a, _ in pair_data] + [
        b for _, _, b in pair_data if is_finite(b)
    ]
    max_order = max(finite_orders, default=0)
    if t_precision is None:
        t_precision = 2 * max_order + 1
    if t_precision <= 2 * max_order:
        raise ValueError(
            f"t_precision must exceed twice the largest order ({2 * max_order})"
        )

    family = []
    entries = []

    def record(char, series, expected_a, expected_b):
        og = series.t_order_generic()
        oz = series.t_order_at_zero()
        ok = og == expected_a and (
            oz == expected_b if is_finite(expected_b) else series.vanishes_at_zero()
        )
        family.append((char, series))
        entries.append(
            WitnessEntry(
                character=char,
                in_ring=True,
                order_generic=og,
                order_at_zero=oz if is_finite(expected_b) else None,
                expected_generic=expected_a,
                expected_at_zero=expected_b if is_finite(expected_b) else None,
                ok=ok,
            )
        )

    for i in range(d):
        char, a_i, b_i = pair_data[i]
        if is_finite(b_i):
            series = TruncatedSeries.monomial(
                b_i, 0, 1, t_precision=t_precision
            ) + TruncatedSeries.monomial(a_i, 1, 1, t_precision=t_precision)
        else:
            series = TruncatedSeries.monomial(a_i, 1, 1, t_precision=t_precision)
        record(char, series, a_i, b_i)
    for i in range(d, nbar):
        char, a_i, b_i = pair_data[i]
        assert a_i == 0 and b_i == 0
        unit = TruncatedSeries.monomial(0, 0, 1, t_precision=t_precision) + (
            TruncatedSeries.monomial(0, 1, 1, t_precision=t_precision)
        )
        record(char, unit, 0, 0)
        inverse = TruncatedSeries(
            {(0, k): (-1) ** k for k in range(t_precision)}, t_precision
        )
        neg_char = tuple(-x for x in char)
        record(neg_char, inverse, 0, 0)

    verified = all(e.ok for e in entries)
    return DominanceWitness(
        chart=chart,
        precision=t_precision,
        family=tuple(family),
        entries=tuple(entries),
        verified=verified,
    )

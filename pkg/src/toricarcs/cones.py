"""Strongly convex rational polyhedral cones and fans.

Cones are given by primitive integer ray generators.  Dual descriptions are
computed by an incremental double-description pass over exact integers:
halfspaces are inserted one at a time, first consuming the lineality space,
then combining adjacent rays across the new wall.  Adjacency and extremality
use the exact rank criterion on tight constraint sets, so the generator list
stays minimal after every insertion.

On top of that sit face lattices, the smoothness test, Hilbert bases of
pointed lattice semigroups, cone-order comparisons, quotients by faces, and
exact vertex enumeration for the polyhedra the ideal machinery needs.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Iterator, Sequence

from .lattice import (
    M_SIDE,
    N_SIDE,
    LatticeVector,
    QuotientLattice,
    pairing,
    primitive_tuple,
    quotient_lattice,
    rank_of,
    smith_diagonal,
)

__all__ = [
    "Cone",
    "FaceRef",
    "Fan",
    "FaceQuotient",
    "dual_cone",
    "faces",
    "is_smooth",
    "hilbert_basis_dual",
    "hilbert_basis_points",
    "contains",
    "leq_sigma",
    "quotient_by_face",
    "intersect_cones",
    "is_face_of",
    "polyhedron_vertices",
    "lattice_points_where",
    "dual_generators",
]


def _dot(a: Sequence[int], b: Sequence[int]) -> int:
    return sum(x * y for x, y in zip(a, b))


def _neg(a: Sequence[int]) -> tuple[int, ...]:
    return tuple(-x for x in a)


def _canonical_sign(vec: Sequence[int]) -> tuple[int, ...]:
    """Primitive representative of a line: first nonzero coordinate positive."""
    _, prim = primitive_tuple(vec)
    for c in prim:
        if c != 0:
            return prim if c > 0 else _neg(prim)
    raise ValueError("zero vector")


def dual_generators(
    constraints: Sequence[Sequence[int]], dim: int
) -> tuple[tuple[tuple[int, ...], ...], tuple[tuple[int, ...], ...]]:
    """Generator description of {x in R^dim : c . x >= 0 for all c}.

    Returns (rays, lineality_basis) as primitive integer tuples, each sorted.
    Rays hold one representative per extreme ray modulo the lineality space,
    reduced canonically modulo that space.
    """
    if dim == 0:
        return (), ()
    lin: list[tuple[int, ...]] = [
        tuple(1 if i == j else 0 for j in range(dim)) for i in range(dim)
    ]
    rays: list[tuple[int, ...]] = []
    processed: list[tuple[int, ...]] = []

    def canonicalized(ray_list):
        if not lin:
            out = [primitive_tuple(r)[1] for r in ray_list]
        else:
            q = quotient_lattice(dim, [LatticeVector(l, N_SIDE) for l in lin])
            out = []
            for r in ray_list:
                image = q.project(LatticeVector(r, N_SIDE))
                _, prim = primitive_tuple(image.coords)
                out.append(q.lift(prim).coords)
        deduped = []
        for r in out:
            if r not in deduped:
                deduped.append(r)
        return deduped

    for raw in constraints:
        a = tuple(int(x) for x in raw)
        if all(x == 0 for x in a):
            continue
        hit = next((i for i, l in enumerate(lin) if _dot(a, l) != 0), None)
        if hit is not None:
            l0 = lin[hit]
            if _dot(a, l0) < 0:
                l0 = _neg(l0)
            d0 = _dot(a, l0)
            new_lin = []
            for i, l in enumerate(lin):
                if i == hit:
                    continue
                dl = _dot(a, l)
                combo = tuple(d0 * x - dl * y for x, y in zip(l, l0))
                new_lin.append(_canonical_sign(combo))
            adjusted = []
            for r in rays:
                dr = _dot(a, r)
                combo = tuple(d0 * x - dr * y for x, y in zip(r, l0))
                adjusted.append(primitive_tuple(combo)[1])
            lin = new_lin
            processed.append(a)
            rays = canonicalized(adjusted + [primitive_tuple(l0)[1]])
            continue
        values = [_dot(a, r) for r in rays]
        plus = [r for r, v in zip(rays, values) if v > 0]
        zero = [r for r, v in zip(rays, values) if v == 0]
        minus = [r for r, v in zip(rays, values) if v < 0]
        if not minus:
            processed.append(a)
            continue
        target = dim - len(lin) - 2
        new_rays = plus + zero
        if target >= 0:
            for rp, rm in itertools.product(plus, minus):
                common = [
                    c for c in processed if _dot(c, rp) == 0 and _dot(c, rm) == 0
                ]
                if rank_of(common) != target:
                    continue
                vp, vm = _dot(a, rp), _dot(a, rm)
                combo = tuple(vp * x - vm * y for x, y in zip(rm, rp))
                new_rays.append(primitive_tuple(combo)[1])
        processed.append(a)
        rays = canonicalized(new_rays)
    return tuple(sorted(canonicalized(rays))), tuple(sorted(lin))


class Cone:
    """A strongly convex rational polyhedral cone, canonicalized.

    Input generators are scaled to primitive vectors, deduplicated, and
    reduced to the extreme rays; the stored ray list is sorted.  The dual
    description (extreme rays of the dual plus, for lower-dimensional cones,
    a basis of the annihilator of the span) is computed at construction and
    cached, so all later membership tests are pure integer arithmetic.
    """

    __slots__ = ("dim_ambient", "rays", "dual_rays", "span_normals", "_faces", "_hilbert")

    def __init__(self, rays: Iterable, dim_ambient: int | None = None):
        ray_tuples: list[tuple[int, ...]] = []
        for r in rays:
            coords = tuple(r.coords) if isinstance(r, LatticeVector) else tuple(int(x) for x in r)
            if dim_ambient is None:
                dim_ambient = len(coords)
            if len(coords) != dim_ambient:
                raise ValueError("ray dimension mismatch")
            if all(c == 0 for c in coords):
                continue
            ray_tuples.append(primitive_tuple(coords)[1])
        if dim_ambient is None:
            raise ValueError("ambient dimension required for a cone with no rays")
        ray_tuples = sorted(set(ray_tuples))

        dual_rays, dual_lin = dual_generators(ray_tuples, dim_ambient)
        normals = list(dual_rays) + list(dual_lin)
        if dim_ambient > 0 and rank_of(normals) != dim_ambient:
            raise ValueError("cone is not strongly convex (contains a line)")

        # keep only generators on extreme rays: tight normals must span a hyperplane
        extreme = []
        for r in ray_tuples:
            tight = list(dual_lin) + [u for u in dual_rays if _dot(r, u) == 0]
            if rank_of(tight) == dim_ambient - 1:
                extreme.append(r)

        object.__setattr__(self, "dim_ambient", dim_ambient)
        object.__setattr__(self, "rays", tuple(LatticeVector(r, N_SIDE) for r in sorted(extreme)))
        object.__setattr__(self, "dual_rays", tuple(LatticeVector(u, M_SIDE) for u in dual_rays))
        object.__setattr__(self, "span_normals", tuple(LatticeVector(l, M_SIDE) for l in dual_lin))
        object.__setattr__(self, "_faces", None)
        object.__setattr__(self, "_hilbert", None)

    def __setattr__(self, name, value):
        raise AttributeError("Cone instances are immutable")

    # -- identity ---------------------------------------------------------

    @property
    def key(self) -> tuple:
        return tuple(r.coords for r in self.rays)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Cone)
            and self.dim_ambient == other.dim_ambient
            and self.key == other.key
        )

    def __hash__(self) -> int:
        return hash((self.dim_ambient, self.key))

    def __repr__(self) -> str:
        return f"Cone({[list(r.coords) for r in self.rays]}, dim={self.dim_ambient})"

    # -- basic geometry -----------------------------------------------------

    @property
    def dim(self) -> int:
        if not self.rays:
            return 0
        return rank_of([r.coords for r in self.rays])

    def is_full_dimensional(self) -> bool:
        return self.dim == self.dim_ambient

    def dual_generator_list(self) -> tuple[LatticeVector, ...]:
        """Generators of the dual cone; lineality contributes +/- pairs."""
        gens = list(self.dual_rays) + [
            LatticeVector(s, M_SIDE)
            for l in self.span_normals
            for s in (l.coords, _neg(l.coords))
        ]
        return tuple(sorted(gens, key=lambda u: u.coords))

    def halfspace_data(self) -> tuple[tuple[tuple[int, ...], int], ...]:
        """(normal, 0) pairs cutting out the cone, for point enumeration."""
        out = [(u.coords, 0) for u in self.dual_rays]
        for l in self.span_normals:
            out.append((l.coords, 0))
            out.append((_neg(l.coords), 0))
        return tuple(out)

    def contains(self, v: LatticeVector) -> bool:
        if v.side != N_SIDE:
            raise ValueError("cone membership is for N-side vectors")
        if v.dim != self.dim_ambient:
            raise ValueError("dimension mismatch")
        return all(pairing(v, u) >= 0 for u in self.dual_rays) and all(
            pairing(v, l) == 0 for l in self.span_normals
        )

    def relint_contains(self, v: LatticeVector) -> bool:
        """Membership in the relative interior: inside, and on no proper face."""
        if not self.contains(v):
            return False
        return all(pairing(v, u) > 0 for u in self.dual_rays)

    def tight_ray_indices(self, u: LatticeVector) -> tuple[int, ...]:
        return tuple(i for i, r in enumerate(self.rays) if pairing(r, u) == 0)

    # -- faces --------------------------------------------------------------

    def faces(self) -> tuple["FaceRef", ...]:
        if self._faces is None:
            nrays = len(self.rays)
            keys = {frozenset(range(nrays))}
            for u in self.dual_rays:
                keys.add(frozenset(self.tight_ray_indices(u)))
            changed = True
            while changed:
                changed = False
                for a, b in itertools.combinations(list(keys), 2):
                    c = a & b
                    if c not in keys:
                        keys.add(c)
                        changed = True
            refs = tuple(
                FaceRef(self, tuple(sorted(k)))
                for k in sorted(keys, key=lambda k: (len(k), tuple(sorted(k))))
            )
            object.__setattr__(self, "_faces", refs)
        return self._faces

    def face_from_indices(self, indices: Sequence[int]) -> "FaceRef":
        wanted = tuple(sorted(indices))
        for f in self.faces():
            if f.indices == wanted:
                return f
        raise ValueError(f"ray subset {list(wanted)} does not span a face")

    def zero_face(self) -> "FaceRef":
        return self.faces()[0]

    def full_face(self) -> "FaceRef":
        return self.face_from_indices(range(len(self.rays)))

    def smallest_face_containing(self, vectors: Sequence[LatticeVector]) -> "FaceRef":
        for v in vectors:
            if not self.contains(v):
                raise ValueError("vector outside the cone has no containing face")
        tight = [u for u in self.dual_rays if all(pairing(v, u) == 0 for v in vectors)]
        indices = tuple(
            i for i, r in enumerate(self.rays) if all(pairing(r, u) == 0 for u in tight)
        )
        return self.face_from_indices(indices)

    # -- Hilbert basis of the cone's own semigroup ----------------------------

    def hilbert_basis(self) -> tuple[LatticeVector, ...]:
        if self._hilbert is None:
            basis = _hilbert_of_pointed(
                [r.coords for r in self.rays], self.dim_ambient, self.halfspace_data()
            )
            object.__setattr__(
                self, "_hilbert", tuple(LatticeVector(b, N_SIDE) for b in basis)
            )
        return self._hilbert


@dataclass(frozen=True)
class FaceRef:
    """A face of a parent cone, addressed by the spanning ray indices."""

    parent: Cone
    indices: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "indices", tuple(sorted(int(i) for i in self.indices)))

    @property
    def rays(self) -> tuple[LatticeVector, ...]:
        return tuple(self.parent.rays[i] for i in self.indices)

    @property
    def key(self) -> tuple:
        return tuple(r.coords for r in self.rays)

    def as_cone(self) -> Cone:
        return Cone(self.rays, self.parent.dim_ambient)

    @property
    def is_zero(self) -> bool:
        return not self.indices

    def __repr__(self) -> str:
        return f"FaceRef(indices={list(self.indices)})"


def _interval_bounds(coeffs, lo, hi):
    """Exact min/max of sum(c*x) over the integer box lo..hi."""
    mn = mx = 0
    for c, a, b in zip(coeffs, lo, hi):
        if c >= 0:
            mn += c * a
            mx += c * b
        else:
            mn += c * b
            mx += c * a
    return mn, mx


def lattice_points_where(
    constraints: Sequence[tuple[Sequence[int], int]],
    lo: Sequence[int],
    hi: Sequence[int],
) -> Iterator[tuple[int, ...]]:
    """Integer points of a box satisfying a . x >= b for every (a, b).

    Enumerates coordinate by coordinate with exact interval pruning, which
    keeps desk-scale cone/box intersections cheap.
    """
    dim = len(lo)

    def rec(prefix):
        k = len(prefix)
        for a, b in constraints:
            fixed = sum(a[i] * prefix[i] for i in range(k))
            _, mx = _interval_bounds(a[k:], lo[k:], hi[k:])
            if fixed + mx < b:
                return
        if k == dim:
            yield tuple(prefix)
            return
        for x in range(lo[k], hi[k] + 1):
            yield from rec(prefix + [x])

    if any(a > b for a, b in zip(lo, hi)):
        return
    yield from rec([])


def _hilbert_of_pointed(gens, dim, halfspaces) -> tuple[tuple[int, ...], ...]:
    """Minimal generating set of (pointed cone given by halfspaces) cap Z^dim.

    Every irreducible element lies in the zonotope of the extreme rays, so
    candidates are enumerated in the zonotope's bounding box and pruned by
    decomposability against irreducibles found earlier in increasing order
    of a functional that is strictly positive on the cone minus the origin.
    """
    if not gens:
        return ()
    lo = [sum(min(0, g[j]) for g in gens) for j in range(dim)]
    hi = [sum(max(0, g[j]) for g in gens) for j in range(dim)]

    def member(p):
        return all(_dot(a, p) >= b for a, b in halfspaces)

    candidates = [p for p in lattice_points_where(halfspaces, lo, hi) if any(p)]
    positive = [a for a, b in halfspaces]
    ell = tuple(sum(col) for col in zip(*positive))
    candidates.sort(key=lambda p: (_dot(ell, p), p))
    irreducible: list[tuple[int, ...]] = []
    for p in candidates:
        decomposable = False
        for q in irreducible:
            diff = tuple(a - b for a, b in zip(p, q))
            if not any(diff) or member(diff):
                decomposable = True
                break
        if not decomposable:
            irreducible.append(p)
    return tuple(sorted(irreducible))


# ---------------------------------------------------------------------------
# module-level operation surface
# ---------------------------------------------------------------------------


def dual_cone(c: Cone) -> tuple[LatticeVector, ...]:
    """Generators of the dual cone, lineality included as +/- pairs."""
    return c.dual_generator_list()


def faces(c: Cone) -> tuple[FaceRef, ...]:
    return c.faces()


def is_smooth(c: Cone) -> bool:
    """True iff the primitive rays extend to a basis of the ambient lattice."""
    if not c.rays:
        return True
    matrix = [r.coords for r in c.rays]
    if rank_of(matrix) != len(c.rays):
        return False
    return all(d == 1 for d in smith_diagonal(matrix))


@lru_cache(maxsize=None)
def hilbert_basis_dual(c: Cone) -> tuple[LatticeVector, ...]:
    """Minimal generating set of the dual semigroup (full-dimensional cones)."""
    if not c.is_full_dimensional():
        raise ValueError(
            "dual semigroup of a lower-dimensional cone is not pointed; "
            "Hilbert basis is unsupported"
        )
    gens = [u.coords for u in c.dual_rays]
    halfspaces = tuple((r.coords, 0) for r in c.rays)
    basis = _hilbert_of_pointed(gens, c.dim_ambient, halfspaces)
    return tuple(LatticeVector(b, M_SIDE) for b in basis)


def hilbert_basis_points(c: Cone) -> tuple[LatticeVector, ...]:
    """Minimal generating set of the cone's own lattice semigroup."""
    return c.hilbert_basis()


def contains(c: Cone, v: LatticeVector) -> bool:
    return c.contains(v)


def leq_sigma(c: Cone, v: LatticeVector, v2: LatticeVector) -> bool:
    """The cone order: v <= v2 iff v2 - v lies in the cone."""
    if not c.contains(v):
        raise ValueError(f"{tuple(v.coords)} is not in the cone")
    if not c.contains(v2):
        raise ValueError(f"{tuple(v2.coords)} is not in the cone")
    return c.contains(v2 - v)


@dataclass(frozen=True)
class FaceQuotient:
    """Quotient data for a cone modulo the span of one of its faces."""

    lattice: QuotientLattice
    image_cone: Cone

    def project(self, v: LatticeVector) -> LatticeVector:
        return self.lattice.project(v)


@lru_cache(maxsize=None)
def _face_quotient_cached(parent: Cone, face_key: tuple) -> FaceQuotient:
    gens = [LatticeVector(coords, N_SIDE) for coords in face_key]
    q = quotient_lattice(parent.dim_ambient, gens)
    image = Cone((q.project(r).coords for r in parent.rays), q.quotient_dim)
    return FaceQuotient(q, image)


def quotient_by_face(c: Cone, f: FaceRef) -> FaceQuotient:
    """Quotient lattice and image cone of c modulo the span of the face f."""
    if f.parent != c:
        face_rays = list(f.rays)
        probe = c.smallest_face_containing(face_rays) if face_rays else c.zero_face()
        if probe.key != f.key:
            raise ValueError("not a face of the given cone")
    return _face_quotient_cached(c, f.key)


def intersect_cones(c1: Cone, c2: Cone) -> Cone:
    if c1.dim_ambient != c2.dim_ambient:
        raise ValueError("ambient dimension mismatch")
    constraints = [u.coords for u in c1.dual_generator_list()] + [
        u.coords for u in c2.dual_generator_list()
    ]
    rays, lin = dual_generators(constraints, c1.dim_ambient)
    if lin:
        raise ValueError("intersection of strongly convex cones acquired a line")
    return Cone(rays, c1.dim_ambient)


def polyhedron_vertices(
    constraints: Sequence[tuple[Sequence[int], int]], dim: int
) -> tuple[tuple[tuple[Fraction, ...], ...], tuple[tuple[int, ...], ...], Cone]:
    """V-representation of {x : a . x >= b for all (a, b)} via homogenization.

    Returns (vertices, recession_rays, homogenized_cone); vertices carry
    exact rational coordinates.  The polyhedron must not contain a line.
    """
    homog = [tuple(a) + (-int(b),) for a, b in constraints]
    homog.append((0,) * dim + (1,))
    rays, lin = dual_generators(homog, dim + 1)
    if lin:
        raise ValueError("polyhedron contains a line")
    cone = Cone(rays, dim + 1)
    vertices = []
    recession = []
    for r in cone.rays:
        s = r.coords[-1]
        if s > 0:
            vertices.append(tuple(Fraction(x, s) for x in r.coords[:-1]))
        else:
            recession.append(r.coords[:-1])
    return tuple(sorted(vertices)), tuple(sorted(recession)), cone


class Fan:
    """A finite fan: face-closed, intersection-compatible strongly convex cones."""

    __slots__ = ("dim_ambient", "maximal_cones", "all_cones")

    def __init__(self, maximal_cones: Sequence[Cone]):
        cones = sorted(set(maximal_cones), key=lambda c: c.key)
        if not cones:
            raise ValueError("a fan needs at least one cone")
        dim = cones[0].dim_ambient
        for c in cones:
            if c.dim_ambient != dim:
                raise ValueError("all cones of a fan share one ambient lattice")
        kept = [
            c
            for c in cones
            if not any(d != c and _is_face_of_cone(c, d) for d in cones)
        ]
        for c1, c2 in itertools.combinations(kept, 2):
            meet = intersect_cones(c1, c2)
            if not _is_face_of_cone(meet, c1) or not _is_face_of_cone(meet, c2):
                raise ValueError("cones do not intersect in a common face; not a valid fan")
        all_cones = {}
        for c in kept:
            for f in c.faces():
                all_cones.setdefault(f.key, f.as_cone())
        object.__setattr__(self, "dim_ambient", dim)
        object.__setattr__(self, "maximal_cones", tuple(kept))
        object.__setattr__(
            self,
            "all_cones",
            tuple(all_cones[k] for k in sorted(all_cones, key=lambda k: (len(k), k))),
        )

    def __setattr__(self, name, value):
        raise AttributeError("Fan instances are immutable")

    def __eq__(self, other) -> bool:
        return isinstance(other, Fan) and self.maximal_cones == other.maximal_cones

    def __hash__(self) -> int:
        return hash(tuple(c.key for c in self.maximal_cones))

    def strata(self) -> tuple[FaceRef, ...]:
        """One canonical FaceRef per cone of the fan, deterministically."""
        seen: dict[tuple, FaceRef] = {}
        for c in self.maximal_cones:
            for f in c.faces():
                seen.setdefault(f.key, f)
        return tuple(seen[k] for k in sorted(seen, key=lambda k: (len(k), k)))

    def charts_containing(self, face: FaceRef) -> tuple[Cone, ...]:
        return tuple(
            c for c in self.maximal_cones if all(c.contains(r) for r in face.rays)
        )

    def contains(self, v: LatticeVector) -> bool:
        return any(c.contains(v) for c in self.maximal_cones)


def _is_face_of_cone(sub: Cone, parent: Cone) -> bool:
    ray_set = {r.coords for r in parent.rays}
    if not all(r.coords in ray_set for r in sub.rays):
        return False
    if not sub.rays:
        return True
    smallest = parent.smallest_face_containing(list(sub.rays))
    return smallest.key == sub.key


def is_face_of(sub: FaceRef, sup: FaceRef) -> bool:
    """Face relation between two cones of a common fan (allows equality)."""
    sup_cone = sup.as_cone()
    if not all(sup_cone.contains(r) for r in sub.rays):
        return False
    if not sub.rays:
        return True
    return sup_cone.smallest_face_containing(list(sub.rays)).key == sub.key

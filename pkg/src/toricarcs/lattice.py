"""Exact lattice arithmetic.

Vectors live in one of two mutually dual integer lattices, tagged "N"
(one-parameter subgroups) and "M" (characters), with the canonical pairing
defined only between opposite sides.  Everything is computed over Python's
arbitrary-precision integers, with fractions.Fraction for intermediate
rational steps; no floating point anywhere.

The module also provides the small amount of integer linear algebra the
rest of the package needs: Hermite-style row reduction with a tracked
unimodular transform, Smith elementary divisors, exact rank, and exact
linear solving.  Quotient lattices by a saturated subspace are built from
the Hermite transform so that projections are reproducible across runs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Sequence

N_SIDE = "N"
M_SIDE = "M"

__all__ = [
    "N_SIDE",
    "M_SIDE",
    "INF",
    "Infinite",
    "ext_min",
    "is_finite",
    "LatticeVector",
    "nvec",
    "mvec",
    "pairing",
    "primitive_part",
    "primitive_tuple",
    "QuotientLattice",
    "quotient_lattice",
    "row_hermite",
    "smith_diagonal",
    "rank_of",
    "solve_linear",
]


class Infinite:
    """The absorbing value +oo of extended semigroup arithmetic.

    Addition with anything yields INF, positive integer scaling yields INF,
    and INF compares strictly greater than every integer.
    """

    _singleton = None

    def __new__(cls) -> "Infinite":
        if cls._singleton is None:
            cls._singleton = super().__new__(cls)
        return cls._singleton

    def __repr__(self) -> str:
        return "INF"

    def __add__(self, other):
        if isinstance(other, (int, Infinite)):
            return self
        return NotImplemented

    __radd__ = __add__

    def __rmul__(self, k):
        if isinstance(k, int) and k > 0:
            return self
        raise ValueError("INF may only be scaled by a positive integer")

    __mul__ = __rmul__

    def __eq__(self, other) -> bool:
        return isinstance(other, Infinite)

    def __hash__(self) -> int:
        return hash("toricarcs-INF")

    def __lt__(self, other) -> bool:
        return False

    def __le__(self, other) -> bool:
        return isinstance(other, Infinite)

    def __gt__(self, other) -> bool:
        if isinstance(other, Infinite):
            return False
        if isinstance(other, int):
            return True
        return NotImplemented

    def __ge__(self, other) -> bool:
        if isinstance(other, (int, Infinite)):
            return True
        return NotImplemented


INF = Infinite()


def is_finite(value) -> bool:
    return not isinstance(value, Infinite)


def ext_min(values):
    """Minimum of a nonempty iterable of ints and INF."""
    best = None
    for v in values:
        if best is None or v < best:
            best = v
    if best is None:
        raise ValueError("ext_min of empty iterable")
    return best


@dataclass(frozen=True)
class LatticeVector:
    """An integer vector tagged with the lattice it belongs to."""

    coords: tuple[int, ...]
    side: str

    def __post_init__(self):
        if self.side not in (N_SIDE, M_SIDE):
            raise ValueError(f"side must be {N_SIDE!r} or {M_SIDE!r}, got {self.side!r}")
        coords = tuple(int(c) for c in self.coords)
        object.__setattr__(self, "coords", coords)

    @property
    def dim(self) -> int:
        return len(self.coords)

    def __len__(self) -> int:
        return len(self.coords)

    def __iter__(self) -> Iterator[int]:
        return iter(self.coords)

    def __getitem__(self, i: int) -> int:
        return self.coords[i]

    def _check_compatible(self, other: "LatticeVector") -> None:
        if not isinstance(other, LatticeVector):
            raise TypeError("expected a LatticeVector")
        if other.side != self.side:
            raise ValueError("cannot combine vectors from opposite lattices")
        if other.dim != self.dim:
            raise ValueError(f"dimension mismatch: {self.dim} vs {other.dim}")

    def __add__(self, other: "LatticeVector") -> "LatticeVector":
        self._check_compatible(other)
        return LatticeVector(tuple(a + b for a, b in zip(self.coords, other.coords)), self.side)

    def __sub__(self, other: "LatticeVector") -> "LatticeVector":
        self._check_compatible(other)
        return LatticeVector(tuple(a - b for a, b in zip(self.coords, other.coords)), self.side)

    def __neg__(self) -> "LatticeVector":
        return LatticeVector(tuple(-a for a in self.coords), self.side)

    def __rmul__(self, k: int) -> "LatticeVector":
        if not isinstance(k, int):
            raise TypeError("scaling factor must be an integer")
        return LatticeVector(tuple(k * a for a in self.coords), self.side)

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coords)

    def sup_norm(self) -> int:
        return max((abs(c) for c in self.coords), default=0)


def nvec(*coords: int) -> LatticeVector:
    return LatticeVector(tuple(coords), N_SIDE)


def mvec(*coords: int) -> LatticeVector:
    return LatticeVector(tuple(coords), M_SIDE)


def pairing(v: LatticeVector, u: LatticeVector) -> int:
    """Canonical pairing of an N-side with an M-side vector, exactly."""
    if not isinstance(v, LatticeVector) or not isinstance(u, LatticeVector):
        raise TypeError("pairing expects two LatticeVectors")
    if v.side == u.side:
        raise ValueError("pairing requires one N-side and one M-side vector")
    if v.dim != u.dim:
        raise ValueError(f"dimension mismatch: {v.dim} vs {u.dim}")
    return sum(a * b for a, b in zip(v.coords, u.coords))


def primitive_tuple(coords: Sequence[int]) -> tuple[int, int, ...]:
    """(gcd, primitive coords) of a nonzero integer tuple; gcd is positive."""
    g = 0
    for c in coords:
        g = math.gcd(g, c)
    if g == 0:
        raise ValueError("zero vector has no primitive part")
    return g, tuple(c // g for c in coords)


def primitive_part(v: LatticeVector) -> tuple[int, LatticeVector]:
    """Write v = e * v0 with e >= 1 and v0 primitive (coprime coordinates)."""
    g, coords = primitive_tuple(v.coords)
    return g, LatticeVector(coords, v.side)


# ---------------------------------------------------------------------------
# integer matrices, stored as tuples of row tuples
# ---------------------------------------------------------------------------


def _identity(n: int) -> list[list[int]]:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def row_hermite(matrix: Sequence[Sequence[int]]):
    """Row echelon form over the integers with a tracked unimodular transform.

    Returns (H, U, Uinv, rank) with U @ matrix == H, U unimodular, the first
    `rank` rows of H in echelon position and the rest zero.  Pivot choice is
    deterministic: the row of smallest absolute pivot value, lowest index
    first, which makes every downstream basis choice reproducible.
    """
    H = [list(map(int, row)) for row in matrix]
    m = len(H)
    ncols = len(H[0]) if m else 0
    U = _identity(m)
    Uinv = _identity(m)

    def swap(i, j):
        if i == j:
            return
        H[i], H[j] = H[j], H[i]
        U[i], U[j] = U[j], U[i]
        for row in Uinv:
            row[i], row[j] = row[j], row[i]

    def addmul(i, j, q):
        # row_i -= q * row_j ; inverse column op on Uinv
        if q == 0:
            return
        H[i] = [a - q * b for a, b in zip(H[i], H[j])]
        U[i] = [a - q * b for a, b in zip(U[i], U[j])]
        for row in Uinv:
            row[j] += q * row[i]

    def negate(i):
        H[i] = [-a for a in H[i]]
        U[i] = [-a for a in U[i]]
        for row in Uinv:
            row[i] = -row[i]

    rank = 0
    for col in range(ncols):
        if rank == m:
            break
        while True:
            pivots = [(abs(H[i][col]), i) for i in range(rank, m) if H[i][col] != 0]
            if not pivots:
                break
            _, ip = min(pivots)
            swap(rank, ip)
            done = True
            for i in range(rank + 1, m):
                if H[i][col] != 0:
                    q = H[i][col] // H[rank][col]
                    addmul(i, rank, q)
                    if H[i][col] != 0:
                        done = False
            if done:
                break
        if rank < m and H[rank][col] != 0:
            if H[rank][col] < 0:
                negate(rank)
            rank += 1

    to_t = lambda rows: tuple(tuple(r) for r in rows)
    return to_t(H), to_t(U), to_t(Uinv), rank


def smith_diagonal(matrix: Sequence[Sequence[int]]) -> tuple[int, ...]:
    """Elementary divisors of an integer matrix (nonnegative, divisibility chain)."""
    A = [list(map(int, row)) for row in matrix]
    m = len(A)
    n = len(A[0]) if m else 0
    if m == 0 or n == 0:
        return ()

    def reduce_from(k):
        while True:
            # move a minimal nonzero entry of the trailing block to (k, k)
            entries = [
                (abs(A[i][j]), i, j)
                for i in range(k, m)
                for j in range(k, n)
                if A[i][j] != 0
            ]
            if not entries:
                return False
            _, pi, pj = min(entries)
            A[k], A[pi] = A[pi], A[k]
            for row in A:
                row[k], row[pj] = row[pj], row[k]
            clean = True
            for i in range(k + 1, m):
                q = A[i][k] // A[k][k]
                if q:
                    A[i] = [a - q * b for a, b in zip(A[i], A[k])]
                if A[i][k] != 0:
                    clean = False
            for j in range(k + 1, n):
                q = A[k][j] // A[k][k]
                if q:
                    for row in A:
                        row[j] -= q * row[k]
                if A[k][j] != 0:
                    clean = False
            if clean:
                return True

    diag = []
    for k in range(min(m, n)):
        if not reduce_from(k):
            break
        diag.append(abs(A[k][k]))
    # enforce the divisibility chain
    changed = True
    while changed:
        changed = False
        for i in range(len(diag) - 1):
            a, b = diag[i], diag[i + 1]
            if b % a != 0:
                g = math.gcd(a, b)
                diag[i], diag[i + 1] = g, a * b // g
                changed = True
        diag.sort()
    return tuple(diag)


def rank_of(matrix: Sequence[Sequence[int]]) -> int:
    """Rank over the rationals, computed exactly."""
    rows = [[Fraction(x) for x in row] for row in matrix if any(row)]
    rank = 0
    ncols = len(rows[0]) if rows else 0
    for col in range(ncols):
        pivot = next((i for i in range(rank, len(rows)) if rows[i][col] != 0), None)
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        prow = rows[rank]
        inv = 1 / prow[col]
        rows[rank] = [x * inv for x in prow]
        for i in range(len(rows)):
            if i != rank and rows[i][col] != 0:
                f = rows[i][col]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[rank])]
        rank += 1
        if rank == len(rows):
            break
    return rank


def solve_linear(matrix: Sequence[Sequence[int]], rhs: Sequence) -> tuple[Fraction, ...] | None:
    """Solve matrix @ x = rhs exactly; None if inconsistent.

    Requires the solution to be unique (full column rank); raises otherwise.
    """
    m = len(matrix)
    ncols = len(matrix[0]) if m else 0
    aug = [[Fraction(x) for x in row] + [Fraction(rhs[i])] for i, row in enumerate(matrix)]
    rank = 0
    pivot_cols = []
    for col in range(ncols):
        pivot = next((i for i in range(rank, m) if aug[i][col] != 0), None)
        if pivot is None:
            continue
        aug[rank], aug[pivot] = aug[pivot], aug[rank]
        inv = 1 / aug[rank][col]
        aug[rank] = [x * inv for x in aug[rank]]
        for i in range(m):
            if i != rank and aug[i][col] != 0:
                f = aug[i][col]
                aug[i] = [a - f * b for a, b in zip(aug[i], aug[rank])]
        pivot_cols.append(col)
        rank += 1
    for i in range(rank, m):
        if aug[i][ncols] != 0:
            return None
    if rank < ncols:
        raise ValueError("underdetermined system: solution is not unique")
    solution = [Fraction(0)] * ncols
    for r, col in enumerate(pivot_cols):
        solution[col] = aug[r][ncols]
    return tuple(solution)


# ---------------------------------------------------------------------------
# quotient lattices
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class QuotientLattice:
    """The image lattice of Z^n under quotient by a saturated subspace.

    projection_matrix maps N onto Z^q (q = ambient - rank of the span) with
    kernel the saturation of the subspace basis; section_matrix is a right
    inverse, so projection . section = identity on the quotient.
    """

    ambient_dim: int
    subspace_basis: tuple[LatticeVector, ...]
    projection_matrix: tuple[tuple[int, ...], ...]
    section_matrix: tuple[tuple[int, ...], ...]

    @property
    def quotient_dim(self) -> int:
        return len(self.projection_matrix)

    def project(self, v: LatticeVector) -> LatticeVector:
        if v.side != N_SIDE:
            raise ValueError("only N-side vectors live in the quotient lattice")
        if v.dim != self.ambient_dim:
            raise ValueError("dimension mismatch")
        coords = tuple(sum(r * c for r, c in zip(row, v.coords)) for row in self.projection_matrix)
        return LatticeVector(coords, N_SIDE)

    def lift(self, w) -> LatticeVector:
        coords = tuple(w.coords) if isinstance(w, LatticeVector) else tuple(int(c) for c in w)
        if len(coords) != self.quotient_dim:
            raise ValueError("dimension mismatch")
        out = tuple(
            sum(self.section_matrix[i][j] * coords[j] for j in range(self.quotient_dim))
            for i in range(self.ambient_dim)
        )
        return LatticeVector(out, N_SIDE)

    def push_dual(self, u: LatticeVector) -> LatticeVector:
        """Coordinates of a character orthogonal to the subspace, downstairs."""
        if u.side != M_SIDE:
            raise ValueError("push_dual expects an M-side vector")
        if u.dim != self.ambient_dim:
            raise ValueError("dimension mismatch")
        for b in self.subspace_basis:
            if pairing(b, u) != 0:
                raise ValueError("character does not vanish on the subspace")
        coords = tuple(
            sum(self.section_matrix[i][j] * u.coords[i] for i in range(self.ambient_dim))
            for j in range(self.quotient_dim)
        )
        return LatticeVector(coords, M_SIDE)

    def pull_dual(self, w: LatticeVector) -> LatticeVector:
        """Ambient character representing a quotient character."""
        if w.side != M_SIDE:
            raise ValueError("pull_dual expects an M-side vector")
        if w.dim != self.quotient_dim:
            raise ValueError("dimension mismatch")
        coords = tuple(
            sum(self.projection_matrix[j][i] * w.coords[j] for j in range(self.quotient_dim))
            for i in range(self.ambient_dim)
        )
        return LatticeVector(coords, M_SIDE)


def quotient_lattice(ambient_dim: int, generators: Sequence[LatticeVector]) -> QuotientLattice:
    """Quotient of Z^ambient_dim by the saturated span of the generators.

    The generators must be linearly independent over the rationals.  The
    kernel of the projection is the saturation of their span, so the
    quotient is torsion-free.
    """
    gens = tuple(generators)
    for g in gens:
        if g.side != N_SIDE:
            raise ValueError("subspace generators must be N-side vectors")
        if g.dim != ambient_dim:
            raise ValueError("generator dimension mismatch")
    r = len(gens)
    if r == 0:
        eye = tuple(map(tuple, _identity(ambient_dim)))
        return QuotientLattice(ambient_dim, gens, eye, eye)
    if rank_of([g.coords for g in gens]) != r:
        raise ValueError("subspace generators are linearly dependent")
    # columns of A are the generators; U @ A has its last rows zero
    A = [[g.coords[i] for g in gens] for i in range(ambient_dim)]
    _, U, Uinv, rank = row_hermite(A)
    assert rank == r
    projection = tuple(U[i] for i in range(r, ambient_dim))
    section = tuple(tuple(Uinv[i][j] for j in range(r, ambient_dim)) for i in range(ambient_dim))
    return QuotientLattice(ambient_dim, gens, projection, section)

"""Finite-dimensional weighted (semi-)normed modules and bounded maps.

A weighted space fixes a basis and a weight per basis vector; the norm of
a vector is the max of ``|coordinate| * weight``.  Weight zero encodes a
semi-normed null direction.  Every construction below is exact.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from . import linalg
from .errors import InvariantViolation, NotComposable, UnboundedError
from .scalars import MAG_ONE, MAG_ZERO, Magnitude, ValuedField


@dataclass(frozen=True)
class WeightedSpace:
    field: ValuedField
    weights: tuple[Magnitude, ...]
    label: Optional[str] = None

    @property
    def dim(self) -> int:
        return len(self.weights)

    def is_null(self, i: int) -> bool:
        return self.weights[i].is_zero

    @property
    def null_indices(self) -> tuple[int, ...]:
        return tuple(i for i, w in enumerate(self.weights) if w.is_zero)

    def __repr__(self) -> str:
        tag = self.label or "space"
        return f"{tag}(dim={self.dim})"


def rank_one(field: ValuedField, delta: Magnitude, label: Optional[str] = None) -> WeightedSpace:
    """The free rank-one module with its single weight ``delta``."""
    return WeightedSpace(field, (delta,), label)


@dataclass(frozen=True)
class Vector:
    space: WeightedSpace
    coords: tuple

    def __post_init__(self):
        if len(self.coords) != self.space.dim:
            raise InvariantViolation(
                f"vector has {len(self.coords)} coordinates in a "
                f"{self.space.dim}-dimensional space"
            )

    @property
    def is_zero(self) -> bool:
        F = self.space.field
        return all(F.is_zero(c) for c in self.coords)


def vector(space: WeightedSpace, coords) -> Vector:
    return Vector(space, tuple(coords))


def zero_vector(space: WeightedSpace) -> Vector:
    return Vector(space, (space.field.zero,) * space.dim)


def basis_vector(space: WeightedSpace, i: int) -> Vector:
    F = space.field
    return Vector(space, tuple(F.one if j == i else F.zero for j in range(space.dim)))


def norm(v: Vector) -> Magnitude:
    """max over coordinates of |coordinate| * weight; zero for the zero vector."""
    F = v.space.field
    best = MAG_ZERO
    for c, w in zip(v.coords, v.space.weights):
        term = F.abs_value(c) * w
        if term > best:
            best = term
    return best


def add_vectors(u: Vector, v: Vector) -> Vector:
    F = u.space.field
    return Vector(u.space, tuple(F.add(a, b) for a, b in zip(u.coords, v.coords)))


def scale_vector(a, v: Vector) -> Vector:
    F = v.space.field
    return Vector(v.space, tuple(F.mul(a, c) for c in v.coords))


# ---------------------------------------------------------------------------
# Bounded maps
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class BoundedMap:
    """Module map as an exact matrix (codomain.dim rows x domain.dim columns).

    Construction checks well-definedness on null directions: a basis vector
    of weight zero must land on a vector of norm zero, otherwise no finite
    operator norm exists.
    """

    domain: WeightedSpace
    codomain: WeightedSpace
    matrix: tuple[tuple, ...]
    check: bool = field(default=True, repr=False, compare=False)

    def __post_init__(self):
        if self.domain.field != self.codomain.field:
            raise InvariantViolation("domain and codomain live over different fields")
        if len(self.matrix) != self.codomain.dim:
            raise InvariantViolation(
                f"matrix has {len(self.matrix)} rows, codomain dimension is {self.codomain.dim}"
            )
        for i, row in enumerate(self.matrix):
            if len(row) != self.domain.dim:
                raise InvariantViolation(
                    f"matrix row {i} has {len(row)} entries, domain dimension is {self.domain.dim}"
                )
        if self.check:
            for j in self.domain.null_indices:
                if not norm(self.column(j)).is_zero:
                    raise InvariantViolation(
                        f"null direction at basis index {j} has a non-null image"
                    )

    def column(self, j: int) -> Vector:
        return Vector(self.codomain, tuple(row[j] for row in self.matrix))

    def apply(self, v: Vector) -> Vector:
        if v.space != self.domain:
            raise InvariantViolation("vector does not belong to the domain")
        F = self.domain.field
        coords = linalg.mat_vec(F, self.matrix, v.coords)
        return Vector(self.codomain, tuple(coords))

    def rows(self):
        return [list(r) for r in self.matrix]


def bounded_map(domain: WeightedSpace, codomain: WeightedSpace, rows, check: bool = True) -> BoundedMap:
    return BoundedMap(domain, codomain, tuple(tuple(r) for r in rows), check)


def identity_map(space: WeightedSpace) -> BoundedMap:
    return bounded_map(space, space, linalg.identity(space.field, space.dim), check=False)


def identity_between(domain: WeightedSpace, codomain: WeightedSpace) -> BoundedMap:
    """Identity matrix between two spaces on the same underlying module."""
    if domain.dim != codomain.dim or domain.field != codomain.field:
        raise InvariantViolation("identity requires equal dimension over one field")
    return bounded_map(domain, codomain, linalg.identity(domain.field, domain.dim))


def zero_map(domain: WeightedSpace, codomain: WeightedSpace) -> BoundedMap:
    F = domain.field
    return bounded_map(
        domain, codomain, [[F.zero] * domain.dim for _ in range(codomain.dim)], check=False
    )


def compose(g: BoundedMap, f: BoundedMap) -> BoundedMap:
    """g after f; shapes are taken from the spaces so empty matrices are safe."""
    if f.codomain != g.domain:
        raise NotComposable("codomain of the first map must equal domain of the second")
    F = f.domain.field
    prod = [[F.zero] * f.domain.dim for _ in range(g.codomain.dim)]
    for i in range(g.codomain.dim):
        for k in range(g.domain.dim):
            gik = g.matrix[i][k]
            if F.is_zero(gik):
                continue
            frow = f.matrix[k]
            for j in range(f.domain.dim):
                prod[i][j] = F.add(prod[i][j], F.mul(gik, frow[j]))
    return bounded_map(f.domain, g.codomain, prod, check=False)


def operator_norm(f: BoundedMap) -> Magnitude:
    """max over non-null basis directions of ||f(e_i)|| / weight_i.

    Equals the sup of ||f(x)|| / ||x|| because the standard basis is
    orthogonal for the max norm.
    """
    best = MAG_ZERO
    for i, w in enumerate(f.domain.weights):
        col_norm = norm(f.column(i))
        if w.is_zero:
            if not col_norm.is_zero:
                raise UnboundedError(f"null direction at basis index {i} has a non-null image")
            continue
        ratio = col_norm / w
        if ratio > best:
            best = ratio
    return best


def is_nonexpanding(f: BoundedMap) -> bool:
    return operator_norm(f) <= MAG_ONE


# ---------------------------------------------------------------------------
# Rescaling, separation, biproducts
# ---------------------------------------------------------------------------


def rescale(space: WeightedSpace, delta: Magnitude) -> WeightedSpace:
    """Same module, every weight multiplied by a non-zero magnitude."""
    if delta.is_zero:
        raise InvariantViolation("rescaling factor must be non-zero")
    return WeightedSpace(space.field, tuple(w * delta for w in space.weights), space.label)


def separation(space: WeightedSpace) -> tuple[WeightedSpace, BoundedMap]:
    """Quotient by the null directions; returns the space and the projection."""
    keep = [i for i in range(space.dim) if not space.is_null(i)]
    sep = WeightedSpace(space.field, tuple(space.weights[i] for i in keep), space.label)
    F = space.field
    rows = [[F.one if j == i else F.zero for j in range(space.dim)] for i in keep]
    return sep, bounded_map(space, sep, rows, check=False)


@dataclass(frozen=True)
class Biproduct:
    space: WeightedSpace
    injections: tuple[BoundedMap, ...]
    projections: tuple[BoundedMap, ...]


def biproduct(spaces: list[WeightedSpace]) -> Biproduct:
    """Concatenated weights with the max norm; coproduct and product at once."""
    if not spaces:
        raise InvariantViolation("biproduct needs at least one factor; use a zero space")
    F = spaces[0].field
    if any(s.field != F for s in spaces):
        raise InvariantViolation("biproduct factors must share the base field")
    weights: tuple[Magnitude, ...] = ()
    offsets = []
    for s in spaces:
        offsets.append(len(weights))
        weights = weights + s.weights
    total = WeightedSpace(F, weights)
    injections = []
    projections = []
    n = len(weights)
    for s, off in zip(spaces, offsets):
        inj = [[F.one if (i == off + j) else F.zero for j in range(s.dim)] for i in range(n)]
        proj = [[F.one if (j == off + i) else F.zero for j in range(n)] for i in range(s.dim)]
        injections.append(bounded_map(s, total, inj, check=False))
        projections.append(bounded_map(total, s, proj, check=False))
    return Biproduct(total, tuple(injections), tuple(projections))

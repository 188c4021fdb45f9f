"""Flat torus quotients: dual-lattice orbit counting and spectral relations.

A flat torus eigenbasis is indexed by dual-lattice vectors; the eigenvalue
of the mode at lambda is a lattice-dependent positive multiple of the
integer norm-form value of lambda, so spectra are reported against that
normalized integer (the physical scale factor cancels inside every
within-family relation and cross-family comparisons are rejected).

A rotation quotient's functions are the rotation-invariant functions on
the torus, and rotations about the origin permute the Fourier modes with
no phase factor, so the quotient's multiplicity at n is the number of
rotation orbits on the modes of norm n.  Only the origin is fixed by a
nontrivial lattice rotation, giving

    mult_k(n) = (census(n) + (k - 1) * [n == 0]) / k,

an exact integer because the order-k rotation acts freely off the origin.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Dict, List, Tuple

from .errors import IncompatibleRotation, MalformedRelation


class LatticeKind(Enum):
    """The two planar lattices with extra rotational symmetry."""

    SQUARE = "square"
    HEXAGONAL = "hexagonal"

    def norm(self, x: int, y: int) -> int:
        if self is LatticeKind.SQUARE:
            return x * x + y * y
        return x * x + x * y + y * y

    @property
    def rotation_orders(self) -> Tuple[int, ...]:
        if self is LatticeKind.SQUARE:
            return (1, 2, 4)
        return (1, 2, 3, 6)

    def rotation(self, order: int) -> Tuple[Tuple[int, int], Tuple[int, int]]:
        """Integer matrix of the minimal rotation of the given order.

        Rows act on column vectors of lattice coordinates; each matrix
        preserves the lattice's norm form.
        """
        if order not in self.rotation_orders:
            raise IncompatibleRotation(f"order {order} does not act on {self.value} lattice")
        if order == 1:
            return ((1, 0), (0, 1))
        if order == 2:
            return ((-1, 0), (0, -1))
        if self is LatticeKind.SQUARE:  # order 4: quarter turn
            return ((0, -1), (1, 0))
        if order == 6:  # sixth turn on the hexagonal lattice
            return ((0, -1), (1, 1))
        return ((-1, -1), (1, 0))  # order 3


def _apply(m: Tuple[Tuple[int, int], Tuple[int, int]], v: Tuple[int, int]) -> Tuple[int, int]:
    return (m[0][0] * v[0] + m[0][1] * v[1], m[1][0] * v[0] + m[1][1] * v[1])


def norm_census(lattice: LatticeKind, max_norm: int) -> List[int]:
    """census[n] = number of lattice vectors with norm-form value n.

    Exhaustive integer-pair enumeration over a bounding box; exact.
    """
    if max_norm < 0:
        raise ValueError(f"max_norm must be >= 0, got {max_norm}")
    census = [0] * (max_norm + 1)
    if lattice is LatticeKind.SQUARE:
        m = math.isqrt(max_norm)
        for x in range(-m, m + 1):
            for y in range(-m, m + 1):
                v = x * x + y * y
                if v <= max_norm:
                    census[v] += 1
    else:
        # a^2 + ab + b^2 >= (a^2 + b^2)/2 bounds the box
        m = math.isqrt(2 * max_norm) + 1
        for x in range(-m, m + 1):
            for y in range(-m, m + 1):
                v = x * x + x * y + y * y
                if v <= max_norm:
                    census[v] += 1
    return census


def vectors_with_norm(lattice: LatticeKind, n: int) -> List[Tuple[int, int]]:
    """All lattice vectors of norm exactly n, by per-coordinate solving."""
    if n < 0:
        raise ValueError(f"norm must be >= 0, got {n}")
    if n == 0:
        return [(0, 0)]
    out = []
    if lattice is LatticeKind.SQUARE:
        m = math.isqrt(n)
        for x in range(-m, m + 1):
            rest = n - x * x
            s = math.isqrt(rest)
            if s * s == rest:
                out.append((x, s))
                if s != 0:
                    out.append((x, -s))
    else:
        # solve y^2 + xy + (x^2 - n) = 0: y = (-x +- sqrt(4n - 3x^2)) / 2
        m = math.isqrt(4 * n // 3)
        for x in range(-m - 1, m + 2):
            disc = 4 * n - 3 * x * x
            if disc < 0:
                continue
            s = math.isqrt(disc)
            if s * s != disc or (s - x) % 2 != 0:
                continue
            out.append((x, (-x + s) // 2))
            if s != 0:
                out.append((x, (-x - s) // 2))
    return sorted(out)


def orbit_multiplicity(lattice: LatticeKind, order: int, n: int) -> int:
    """Orbits of the order-k rotation group on the modes of norm n.

    Equals the normalized-eigenvalue-n multiplicity of the quotient
    orbifold.  Off the origin the rotation acts freely, so the count is
    census(n)/k, exactly divisible.
    """
    if order not in lattice.rotation_orders:
        raise IncompatibleRotation(f"order {order} does not act on {lattice.value} lattice")
    if n == 0:
        return 1
    census = len(vectors_with_norm(lattice, n))
    if census % order != 0:
        raise ArithmeticError(f"census {census} at n={n} not divisible by {order}")
    return census // order


def orbit_multiplicity_oracle(lattice: LatticeKind, order: int, n: int) -> int:
    """Independent orbit count: explicit partition under repeated rotation."""
    if order not in lattice.rotation_orders:
        raise IncompatibleRotation(f"order {order} does not act on {lattice.value} lattice")
    rot = lattice.rotation(order)
    remaining = set(vectors_with_norm(lattice, n))
    orbits = 0
    while remaining:
        v = remaining.pop()
        orbits += 1
        w = _apply(rot, v)
        while w != v:
            remaining.discard(w)
            w = _apply(rot, w)
    return orbits


class OrbifoldId(Enum):
    """Square-family (S*) and hexagonal-family (H*) tori and quotients.

    The integer suffix is the rotation order of the quotient: S1/H1 are
    the tori themselves; S2/H2 are 2222 orbifolds, S4 a 244, H3 a 333,
    and H6 a 236.
    """

    S1 = ("S1", LatticeKind.SQUARE, 1)
    S2 = ("S2", LatticeKind.SQUARE, 2)
    S4 = ("S4", LatticeKind.SQUARE, 4)
    H1 = ("H1", LatticeKind.HEXAGONAL, 1)
    H2 = ("H2", LatticeKind.HEXAGONAL, 2)
    H3 = ("H3", LatticeKind.HEXAGONAL, 3)
    H6 = ("H6", LatticeKind.HEXAGONAL, 6)

    def __init__(self, label: str, lattice: LatticeKind, order: int):
        self.label = label
        self.lattice = lattice
        self.order = order

    def __str__(self) -> str:  # pragma: no cover - cosmetic
        return self.label


@dataclass(frozen=True)
class OrbifoldSpectrum:
    """Normalized eigenvalue -> multiplicity, up to a cutoff."""

    orbifold: OrbifoldId
    max_norm: int
    multiplicities: Dict[int, int]

    def mult_at(self, n: int) -> int:
        return self.multiplicities.get(n, 0)


def orbifold_spectrum(orbifold: OrbifoldId, max_norm: int) -> OrbifoldSpectrum:
    """Quotient spectrum via one census pass; zero multiplicities omitted."""
    census = norm_census(orbifold.lattice, max_norm)
    mult: Dict[int, int] = {0: 1}
    k = orbifold.order
    for n in range(1, max_norm + 1):
        if census[n]:
            if census[n] % k != 0:
                raise ArithmeticError(f"census {census[n]} at n={n} not divisible by {k}")
            mult[n] = census[n] // k
    return OrbifoldSpectrum(orbifold=orbifold, max_norm=max_norm, multiplicities=mult)


@dataclass(frozen=True)
class SpectralRelation:
    """left = right as formal positive-integer sums of orbifolds."""

    left: Tuple[Tuple[int, OrbifoldId], ...]
    right: Tuple[Tuple[int, OrbifoldId], ...]

    def __post_init__(self):
        if not self.left or not self.right:
            raise MalformedRelation("both sides must be nonempty")
        for coeff, _ in self.left + self.right:
            if coeff < 1:
                raise MalformedRelation(f"coefficients must be positive, got {coeff}")
        families = {oid.lattice for _, oid in self.left + self.right}
        if len(families) > 1:
            raise MalformedRelation("relation mixes lattice families")

    @property
    def lattice(self) -> LatticeKind:
        return self.left[0][1].lattice

    def __str__(self) -> str:
        def side(terms):
            return "+".join(
                (f"{c}{oid.label}" if c != 1 else oid.label) for c, oid in terms
            )

        return f"{side(self.left)}={side(self.right)}"


def parse_relation(text: str) -> SpectralRelation:
    """Parse e.g. "S1+2S4=3S2" into a SpectralRelation."""
    ids = {oid.label: oid for oid in OrbifoldId}

    def parse_side(side: str) -> Tuple[Tuple[int, OrbifoldId], ...]:
        terms = []
        for raw in side.split("+"):
            token = raw.strip().replace(" ", "").replace("*", "")
            if not token:
                raise MalformedRelation(f"empty term in {text!r}")
            i = 0
            while i < len(token) and token[i].isdigit():
                i += 1
            coeff = int(token[:i]) if i else 1
            name = token[i:].upper()
            if name not in ids:
                raise MalformedRelation(f"unknown orbifold {token[i:]!r} in {text!r}")
            terms.append((coeff, ids[name]))
        return tuple(terms)

    parts = text.split("=")
    if len(parts) != 2:
        raise MalformedRelation(f"relation needs exactly one '=': {text!r}")
    return SpectralRelation(left=parse_side(parts[0]), right=parse_side(parts[1]))


@dataclass(frozen=True)
class RelationWitness:
    """First normalized eigenvalue where the two sides disagree."""

    n: int
    left_total: int
    right_total: int


def verify_relation(
    rel: SpectralRelation, max_norm: int
) -> Tuple[bool, RelationWitness | None]:
    """Check coefficient-weighted multiplicity equality for every n <= cutoff."""
    spectra: Dict[OrbifoldId, OrbifoldSpectrum] = {}
    for _, oid in rel.left + rel.right:
        if oid not in spectra:
            spectra[oid] = orbifold_spectrum(oid, max_norm)
    for n in range(0, max_norm + 1):
        lhs = sum(c * spectra[oid].mult_at(n) for c, oid in rel.left)
        rhs = sum(c * spectra[oid].mult_at(n) for c, oid in rel.right)
        if lhs != rhs:
            return False, RelationWitness(n=n, left_total=lhs, right_total=rhs)
    return True, None


ISOSPECTRAL_RELATIONS: Tuple[SpectralRelation, ...] = tuple(
    parse_relation(s)
    for s in (
        "S1+2S4=3S2",
        "H2+H6=2H3",
        "H1+H3+H6=3H2",
        "H1+3H3=4H2",
        "H1+4H6=5H3",
        "2H1+3H6=5H2",
    )
)


def relations_for_family(lattice: LatticeKind) -> Tuple[SpectralRelation, ...]:
    return tuple(r for r in ISOSPECTRAL_RELATIONS if r.lattice is lattice)

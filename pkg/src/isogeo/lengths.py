"""Two-tier geodesic length values.

Every length in this package is either

* ``Exact(base=q, mult=r)`` meaning ``l = r * log(q)`` with ``q >= 2`` an
  integer and ``r`` a positive rational, or
* ``Numeric(value=x)`` meaning a positive float, compared within an
  absolute tolerance.

Divisibility questions (is ``m`` an integer multiple of ``l``?) are only
answered for Exact values; they are undecidable in floating point.  Exact
bases are normalised to their canonical root (``Exact(4, r)`` becomes
``Exact(2, 2r)``) so that lengths on commensurable grids compare exactly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, List, Sequence, Union

DEFAULT_TOLERANCE = 1e-9

RationalLike = Union[int, str, Fraction]


def canonical_power_root(q: int) -> tuple[int, int]:
    """Return ``(g, e)`` with ``q == g**e`` and ``g`` not a perfect power."""
    if q < 2:
        raise ValueError(f"base must be an integer >= 2, got {q}")
    for e in range(q.bit_length(), 1, -1):
        g = round(q ** (1.0 / e))
        for cand in (g - 1, g, g + 1):
            if cand >= 2 and cand**e == q:
                root, inner = canonical_power_root(cand)
                return root, inner * e
    return q, 1


@dataclass(frozen=True)
class Exact:
    """Length ``mult * log(base)``, held in exact rational arithmetic."""

    base: int
    mult: Fraction

    def __init__(self, base: int, mult: RationalLike):
        if isinstance(mult, float):
            # Fraction(0.1) is the exact binary expansion, never what was meant
            raise TypeError("exact multiplier must be int, str, or Fraction, not float")
        r = Fraction(mult)
        if r <= 0:
            raise ValueError(f"length multiplier must be positive, got {r}")
        g, e = canonical_power_root(int(base))
        object.__setattr__(self, "base", g)
        object.__setattr__(self, "mult", r * e)

    def approx(self) -> float:
        return float(self.mult) * math.log(self.base)

    def integer_mult(self) -> int | None:
        """The integer n with self = n*log(base), or None if fractional."""
        return int(self.mult) if self.mult.denominator == 1 else None

    def scaled(self, k: RationalLike) -> "Exact":
        if isinstance(k, float):
            raise TypeError("scale factor must be int, str, or Fraction, not float")
        return Exact(self.base, self.mult * Fraction(k))

    def __str__(self) -> str:
        r = self.mult
        coeff = str(r.numerator) if r.denominator == 1 else f"{r.numerator}/{r.denominator}"
        return f"{coeff}*log({self.base})"


@dataclass(frozen=True)
class Numeric:
    """Length as a positive float, compared within an absolute tolerance."""

    value: float

    def __init__(self, value: float):
        v = float(value)
        if not math.isfinite(v) or v <= 0:
            raise ValueError(f"numeric length must be positive and finite, got {value}")
        object.__setattr__(self, "value", v)

    def approx(self) -> float:
        return self.value

    def __str__(self) -> str:
        return repr(self.value)


LengthValue = Union[Exact, Numeric]


def as_length(x: "LengthValue | float | int") -> LengthValue:
    """Coerce a bare number to Numeric; pass length values through."""
    if isinstance(x, (Exact, Numeric)):
        return x
    return Numeric(float(x))


def lengths_equal(a: LengthValue, b: LengthValue, tol: float = DEFAULT_TOLERANCE) -> bool:
    if isinstance(a, Exact) and isinstance(b, Exact) and a.base == b.base:
        return a.mult == b.mult
    return abs(a.approx() - b.approx()) <= tol


def length_le(a: LengthValue, b: LengthValue, tol: float = DEFAULT_TOLERANCE) -> bool:
    """a <= b, exact on a common grid, within tol otherwise."""
    if isinstance(a, Exact) and isinstance(b, Exact) and a.base == b.base:
        return a.mult <= b.mult
    return a.approx() <= b.approx() + tol


def exact_ratio(a: LengthValue, b: LengthValue) -> Fraction | None:
    """a/b as an exact rational, or None when not decidable exactly."""
    if isinstance(a, Exact) and isinstance(b, Exact) and a.base == b.base:
        return a.mult / b.mult
    return None


def integer_ratio(a: LengthValue, b: LengthValue) -> int | None:
    """The positive integer k with a == k*b, if one exists exactly."""
    r = exact_ratio(a, b)
    if r is not None and r.denominator == 1 and r >= 1:
        return int(r)
    return None


def tanh_half(l: LengthValue) -> Fraction | float:
    """tanh(l/2); exact (q**n - 1)/(q**n + 1) when l = n*log(q), n integer."""
    if isinstance(l, Exact):
        n = l.integer_mult()
        if n is not None:
            qn = l.base**n
            return Fraction(qn - 1, qn + 1)
    return math.tanh(l.approx() / 2.0)


def _sort_key(l: LengthValue) -> tuple:
    if isinstance(l, Exact):
        return (l.approx(), 0, l.base, l.mult)
    return (l.approx(), 1, 0, l.value)


def cluster_lengths(
    values: Iterable[LengthValue], tol: float = DEFAULT_TOLERANCE
) -> List[List[LengthValue]]:
    """Group length values whose chained gaps are within tol.

    Deterministic sorted sweep: values are ordered by magnitude and a new
    cluster starts whenever the gap to the previous value exceeds tol
    (equivalent to union-find with links between eps-close neighbours).
    """
    ordered = sorted(values, key=_sort_key)
    clusters: List[List[LengthValue]] = []
    prev: float | None = None
    for v in ordered:
        x = v.approx()
        if prev is None or x - prev > tol:
            clusters.append([v])
        else:
            clusters[-1].append(v)
        prev = x
    return clusters


def representative(cluster: Sequence[LengthValue]) -> LengthValue:
    """Canonical member of a cluster: its first Exact value, else its first."""
    for v in cluster:
        if isinstance(v, Exact):
            return v
    return cluster[0]

"""The explicit counterexample-scenario family and its exact verification.

Fix an integer q >= 2 and put all discrepancy mass on the grid of
multiples of l0 = log q, where tanh(n*l0/2) = (q**n - 1)/(q**n + 1) is an
exact rational.  The assignments

    a(l0) = q - 1,   b(l0) = q + 1,   a(2*l0) = 1,   b(2*l0) = 0,
    a(n*l0) = b(n*l0) = c_n   for odd n >= 3,
    a(n*l0) = b(n*l0) = 0     for even n >= 4,

with c_n the necklace count (1/n) * sum_{j|n} mu(n/j) q**j, satisfy the
weight-equality constraint system at every grid length.  The catch is the
growth: for odd n the values are asymptotic to q**n / n, which is what
rules the family out as an actual pair of surfaces.

Everything here is exact integer/rational arithmetic; the brute-force
necklace oracle is the independent cross-check for c_n.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Tuple

from .errors import BeyondHorizon, TooLarge
from .lengths import Exact
from .spectrum import (
    DiscrepancyTable,
    GeodesicEntry,
    LengthTwistSpectrum,
    Orientation,
)

ORACLE_CAP = 10**7


def mobius(n: int) -> int:
    """(-1)**k when n is a product of k distinct primes, 0 otherwise."""
    if n < 1:
        raise ValueError(f"mobius is defined on positive integers, got {n}")
    result = 1
    d = 2
    while d * d <= n:
        if n % d == 0:
            n //= d
            if n % d == 0:
                return 0
            result = -result
        d += 1
    if n > 1:
        result = -result
    return result


def _divisors(n: int) -> List[int]:
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d != n // d:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def necklace_count(q: int, n: int) -> int:
    """Number of aperiodic length-n cyclic strings over q symbols.

    Exact arbitrary-precision evaluation of (1/n) sum_{j|n} mu(n/j) q**j,
    with the integrality of the divisor sum enforced.
    """
    if q < 2:
        raise ValueError(f"alphabet size must be >= 2, got {q}")
    if n < 1:
        raise ValueError(f"string length must be >= 1, got {n}")
    total = sum(mobius(n // j) * q**j for j in _divisors(n))
    if total % n != 0:
        raise ArithmeticError(f"divisor sum {total} not divisible by {n}")
    return total // n


def necklace_count_oracle(q: int, n: int) -> int:
    """Brute-force necklace count: enumerate all q**n strings.

    Counts the strings that are aperiodic (all n rotations distinct) and
    lexicographically minimal among their rotations, which picks exactly
    one representative per cyclic class.
    """
    if q**n > ORACLE_CAP:
        raise TooLarge(f"q**n = {q**n} exceeds enumeration cap {ORACLE_CAP}")
    count = 0
    for s in itertools.product(range(q), repeat=n):
        rotations = [s[i:] + s[:i] for i in range(n)]
        if len(set(rotations)) == n and s == min(rotations):
            count += 1
    return count


@dataclass(frozen=True)
class ScenarioSolution:
    """Discrepancy assignments on the log-q grid, up to n = horizon."""

    q: int
    horizon: int
    a: Dict[int, int]
    b: Dict[int, int]

    def a_at(self, n: int) -> int:
        return self.a.get(n, 0)

    def b_at(self, n: int) -> int:
        return self.b.get(n, 0)

    def grid_length(self, n: int) -> Exact:
        """The length n*l0 as an exact value."""
        return Exact(self.q, n)


def build_scenario(q: int, horizon: int) -> ScenarioSolution:
    """The explicit solution family, truncated at n = horizon."""
    if q < 2:
        raise ValueError(f"q must be >= 2, got {q}")
    if horizon < 1:
        raise ValueError(f"horizon must be >= 1, got {horizon}")
    a: Dict[int, int] = {1: q - 1}
    b: Dict[int, int] = {1: q + 1}
    if horizon >= 2:
        a[2] = 1
    for n in range(3, horizon + 1, 2):
        c = necklace_count(q, n)
        a[n] = c
        b[n] = c
    return ScenarioSolution(q=q, horizon=horizon, a=a, b=b)


def verify_constraint(sol: ScenarioSolution, n: int) -> Fraction:
    """Exact residual of the weight-equality constraint at grid length n*l0.

    A geodesic of length n*l0 with imprimitivity k comes from a primitive
    of length (n/k)*l0, and its weight carries tanh of *its own* length,
    so the reversing side is damped by tanh(n*l0/2) for every odd k while
    even powers of reversing primitives count as preserving:

        sum_{k|n} (1/k) a(n/k)
          = tanh(n*l0/2) * sum_{k|n, k odd} (1/k) b(n/k)
            + sum_{k|n, k even} (1/k) b(n/k)

    Returns LHS - RHS as an exact rational; 0 for every n <= horizon when
    sol came from build_scenario.
    """
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    if n > sol.horizon:
        raise BeyondHorizon(f"n={n} exceeds scenario horizon {sol.horizon}")
    qn = sol.q**n
    t = Fraction(qn - 1, qn + 1)
    lhs = Fraction(0)
    rhs = Fraction(0)
    for k in _divisors(n):
        m = n // k
        lhs += Fraction(sol.a_at(m), k)
        if k % 2 == 1:
            rhs += t * Fraction(sol.b_at(m), k)
        else:
            rhs += Fraction(sol.b_at(m), k)
    return lhs - rhs


def asymptotic_ratio(q: int, n: int) -> Fraction:
    """c_n * n / q**n for odd n >= 3; tends to 1 as n grows."""
    if n < 3 or n % 2 == 0:
        raise ValueError(f"need odd n >= 3, got {n}")
    return Fraction(necklace_count(q, n) * n, q**n)


def to_discrepancy(sol: ScenarioSolution) -> DiscrepancyTable:
    """The scenario as a DiscrepancyTable keyed by exact grid lengths."""
    a = {sol.grid_length(n): v for n, v in sol.a.items()}
    b = {sol.grid_length(n): v for n, v in sol.b.items()}
    return DiscrepancyTable(a, b, sol.grid_length(sol.horizon))


def to_spectra(sol: ScenarioSolution) -> Tuple[LengthTwistSpectrum, LengthTwistSpectrum]:
    """Synthetic spectrum pair realizing the scenario's discrepancies.

    Positive a(n) becomes extra preserving primitives in the first
    spectrum, negative in the second; b(n) the same with the spectra
    swapped (matching the sign convention under which the second spectrum
    holds the extra reversing mass).  Powers of every added primitive are
    materialized up to the horizon, with even powers of reversing
    primitives flipped to preserving, so the pair's total weight
    functions agree at every grid length.  These spectra are synthetic:
    oriented multiplicities need not be even, so surface validation
    does not apply.
    """
    horizon = sol.grid_length(sol.horizon)
    first: List[GeodesicEntry] = []
    second: List[GeodesicEntry] = []

    def add_with_powers(target: List[GeodesicEntry], n: int, orientation: Orientation, count: int):
        for k in range(1, sol.horizon // n + 1):
            if orientation is Orientation.REVERSING and k % 2 == 0:
                power_orientation = Orientation.PRESERVING
            else:
                power_orientation = orientation
            target.append(
                GeodesicEntry(sol.grid_length(n * k), power_orientation, nu=k, multiplicity=count)
            )

    for n, v in sorted(sol.a.items()):
        target = first if v > 0 else second
        add_with_powers(target, n, Orientation.PRESERVING, abs(v))
    for n, v in sorted(sol.b.items()):
        target = second if v > 0 else first
        add_with_powers(target, n, Orientation.REVERSING, abs(v))

    return (
        LengthTwistSpectrum(first, horizon),
        LengthTwistSpectrum(second, horizon),
    )


@dataclass(frozen=True)
class ScenarioRow:
    """One grid length of the scenario report."""

    n: int
    c_n: int
    a: int
    b: int
    residual_num: int
    residual_den: int


def scenario_rows(sol: ScenarioSolution) -> List[ScenarioRow]:
    """Per-n table: necklace count, assignments, and constraint residual."""
    rows = []
    for n in range(1, sol.horizon + 1):
        res = verify_constraint(sol, n)
        rows.append(
            ScenarioRow(
                n=n,
                c_n=necklace_count(sol.q, n),
                a=sol.a_at(n),
                b=sol.b_at(n),
                residual_num=res.numerator,
                residual_den=res.denominator,
            )
        )
    return rows

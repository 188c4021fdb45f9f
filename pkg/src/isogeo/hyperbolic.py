"""Hyperbolic-plane isometries and geodesic enumeration from generators.

Isometries are 2x2 real matrices with determinant +-1, identified up to
global sign: det +1 acts on the upper half-plane directly, det -1 with a
conjugation, so the determinant sign is exactly the orientation type of
the corresponding closed geodesic.  Word enumeration over a generator set
produces desk-scale length-twist spectra for feeding the comparison
machinery; it is test-data tooling, not a rigorous conjugacy decision
procedure (see enumerate_geodesics for the precise caveats).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Dict, Iterable, List, Sequence, Tuple

from .errors import EmptyGenerators, NotTranslating
from .lengths import Numeric
from .spectrum import GeodesicEntry, LengthTwistSpectrum, Orientation

DET_TOLERANCE = 1e-12
CLASSIFY_TOLERANCE = 1e-9


@dataclass(frozen=True)
class Isometry:
    """2x2 real matrix with |det| = 1, up to global sign."""

    a: float
    b: float
    c: float
    d: float

    def __post_init__(self):
        det = self.a * self.d - self.b * self.c
        # ad - bc cannot be resolved below ~eps * (sum of squares): at large
        # entry magnitude the 1e-12 check must widen to the cancellation floor
        scale = self.a**2 + self.b**2 + self.c**2 + self.d**2
        tol = max(DET_TOLERANCE, 16 * 2.220446049250313e-16 * scale)
        if abs(abs(det) - 1.0) > tol:
            raise ValueError(f"|det| must be 1 within {tol:g}, got det={det}")

    @classmethod
    def from_matrix(cls, rows: Sequence[Sequence[float]]) -> "Isometry":
        (a, b), (c, d) = rows
        return cls(float(a), float(b), float(c), float(d))

    @classmethod
    def diag(cls, x: float, y: float) -> "Isometry":
        return cls(float(x), 0.0, 0.0, float(y))

    @classmethod
    def identity(cls) -> "Isometry":
        return cls(1.0, 0.0, 0.0, 1.0)

    def det(self) -> float:
        return self.a * self.d - self.b * self.c

    def trace(self) -> float:
        return self.a + self.d

    def __matmul__(self, other: "Isometry") -> "Isometry":
        return Isometry(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    def inverse(self) -> "Isometry":
        det = self.det()
        return Isometry(self.d / det, -self.b / det, -self.c / det, self.a / det)

    def power(self, k: int) -> "Isometry":
        if k < 0:
            return self.inverse().power(-k)
        result = Isometry.identity()
        base = self
        while k:
            if k & 1:
                result = result @ base
            base = base @ base
            k >>= 1
        return result

    def rows(self) -> Tuple[Tuple[float, float], Tuple[float, float]]:
        return ((self.a, self.b), (self.c, self.d))


class IsometryClass(Enum):
    IDENTITY = "identity"
    ELLIPTIC = "elliptic"
    PARABOLIC = "parabolic"
    HYPERBOLIC = "hyperbolic"
    REFLECTION = "reflection"
    GLIDE_REFLECTION = "glide_reflection"


def classify(g: Isometry, tol: float = CLASSIFY_TOLERANCE) -> IsometryClass:
    """Trace/determinant classification, with tolerance at the boundaries."""
    if g.det() > 0:
        t = abs(g.trace())
        if abs(t - 2.0) <= tol:
            is_id = (
                abs(abs(g.a) - 1.0) <= tol
                and abs(abs(g.d) - 1.0) <= tol
                and abs(g.b) <= tol
                and abs(g.c) <= tol
            )
            return IsometryClass.IDENTITY if is_id else IsometryClass.PARABOLIC
        return IsometryClass.ELLIPTIC if t < 2.0 else IsometryClass.HYPERBOLIC
    t = g.trace()
    return IsometryClass.REFLECTION if abs(t) <= tol else IsometryClass.GLIDE_REFLECTION


def translation_length(g: Isometry, tol: float = CLASSIFY_TOLERANCE) -> float:
    """Translation length along the axis of a hyperbolic or glide isometry.

    Hyperbolic: 2*arccosh(|tr|/2).  Glide reflection: half the length of
    the square, where g^2 = tr(g)*g + I for det g = -1, so the square's
    trace is tr(g)^2 + 2.
    """
    kind = classify(g, tol)
    if kind is IsometryClass.HYPERBOLIC:
        return 2.0 * math.acosh(abs(g.trace()) / 2.0)
    if kind is IsometryClass.GLIDE_REFLECTION:
        square_trace = g.trace() ** 2 + 2.0
        return math.acosh(square_trace / 2.0)
    raise NotTranslating(f"{kind.value} isometry has no translation length")


@dataclass(frozen=True)
class EnumConfig:
    """Knobs for word enumeration."""

    max_word_length: int
    length_cutoff: float
    dedup_tolerance: float = 1e-9
    include_reversing: bool = True

    def __post_init__(self):
        if self.max_word_length < 1:
            raise ValueError("max_word_length must be >= 1")
        if self.length_cutoff <= 0:
            raise ValueError("length_cutoff must be positive")
        if self.dedup_tolerance <= 0:
            raise ValueError("dedup_tolerance must be positive")


@dataclass(frozen=True)
class EnumerationResult:
    """Spectrum plus the torsion side channel from one enumeration run."""

    spectrum: LengthTwistSpectrum
    elliptic: Tuple[Tuple[Tuple[int, ...], Isometry], ...]
    dropped: int


Mat4 = Tuple[float, float, float, float]


def _mul4(m: Mat4, n: Mat4) -> Mat4:
    a, b, c, d = m
    e, f, g, h = n
    return (a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h)


def _canonical_cyclic(word: Tuple[int, ...]) -> bool:
    first = word[0]
    if any(x < first for x in word):
        return False
    return all(word <= word[i:] + word[:i] for i in range(1, len(word)))


def _iterate_canonical_words(
    letter_mats: Dict[int, Mat4], max_len: int
) -> Iterable[Tuple[Tuple[int, ...], Mat4]]:
    """All cyclically reduced words up to max_len, one per cyclic class.

    Words are tuples of letters (+i for generator i, -i for its inverse);
    the class representative is the lexicographically minimal rotation.
    Matrices are carried along the depth-first walk, one multiply per
    extension.
    """
    letters = sorted(letter_mats)
    stack: List[Tuple[Tuple[int, ...], Mat4]] = [((l,), letter_mats[l]) for l in letters]
    while stack:
        word, mat = stack.pop()
        cyclically_reduced = len(word) == 1 or word[0] != -word[-1]
        if cyclically_reduced and _canonical_cyclic(word):
            yield word, mat
        if len(word) < max_len:
            last = word[-1]
            for nl in letters:
                if nl != -last:
                    stack.append((word + (nl,), _mul4(mat, letter_mats[nl])))


def enumerate_geodesics(
    generators: Sequence[Isometry], config: EnumConfig
) -> EnumerationResult:
    """Length-twist spectrum of the group generated by the given matrices.

    Enumerates reduced words up to max_word_length, one representative
    per cyclic rotation class (exact conjugacy dedup for free groups),
    keeps translating elements with length <= length_cutoff, and emits
    oriented counts: a word and its inverse are distinct canonical words,
    so each unoriented geodesic contributes twice.

    Deduplication beyond cyclic rotation is heuristic: identical matrices
    (up to sign, on a dedup_tolerance grid) collapse, and surviving words
    aggregate into entries keyed by (length within tolerance, determinant
    sign, nu), which may merge genuinely distinct geodesics of equal
    length.  Discreteness of the group is the caller's responsibility;
    elliptic and reflection words land in the side channel, identity and
    parabolic words are counted as dropped.

    The imprimitivity index is detected by length ratios: nu = k when a
    previously seen primitive of length l/k (within tolerance) has
    consistent determinant parity and the trace matches the power
    relation |tr| = 2*cosh(k*l/2) (det +1) or 2*sinh(k*l/2) (det -1);
    ties break toward the largest k.
    """
    if not generators:
        raise EmptyGenerators("need at least one generator")
    tol = config.dedup_tolerance

    letter_mats: Dict[int, Mat4] = {}
    for i, g in enumerate(generators, start=1):
        letter_mats[i] = (g.a, g.b, g.c, g.d)
        inv = g.inverse()
        letter_mats[-i] = (inv.a, inv.b, inv.c, inv.d)

    seen_matrices = set()
    records: List[Tuple[float, int, float, Tuple[int, ...]]] = []
    elliptic: List[Tuple[Tuple[int, ...], Isometry]] = []
    dropped = 0

    for word, mat in _iterate_canonical_words(letter_mats, config.max_word_length):
        a, b, c, d = mat
        for x in (a, b, c, d):
            if abs(x) > tol:
                if x < 0:
                    a, b, c, d = -a, -b, -c, -d
                break
        key = (round(a / tol), round(b / tol), round(c / tol), round(d / tol))
        if key in seen_matrices:
            continue
        seen_matrices.add(key)

        g = Isometry(a, b, c, d)
        kind = classify(g, tol)
        if kind in (IsometryClass.ELLIPTIC, IsometryClass.REFLECTION):
            elliptic.append((word, g))
            continue
        if kind in (IsometryClass.IDENTITY, IsometryClass.PARABOLIC):
            dropped += 1
            continue
        length = translation_length(g, tol)
        if length > config.length_cutoff + tol:
            continue
        det_sign = 1 if g.det() > 0 else -1
        if det_sign < 0 and not config.include_reversing:
            continue
        records.append((length, det_sign, abs(g.trace()), word))

    records.sort(key=lambda r: (r[0], r[1], r[3]))
    primitives: List[Tuple[float, int]] = []
    assigned: List[Tuple[float, int, int]] = []
    min_len = records[0][0] if records else 0.0

    def power_trace(k: int, base_len: float, base_det: int) -> float:
        half = k * base_len / 2.0
        return 2.0 * math.cosh(half) if base_det**k > 0 else 2.0 * math.sinh(half)

    for length, det_sign, trace_abs, _word in records:
        nu = 1
        kmax = int(length / max(min_len, tol) + 0.5) if min_len > 0 else 1
        for k in range(kmax, 1, -1):
            target = length / k
            hit = False
            for base_len, base_det in primitives:
                if abs(base_len - target) > tol:
                    continue
                if base_det**k != det_sign:
                    continue
                expected = power_trace(k, base_len, base_det)
                if abs(trace_abs - expected) <= 1e-7 * max(1.0, expected):
                    hit = True
                    break
            if hit:
                nu = k
                break
        if nu == 1:
            primitives.append((length, det_sign))
        assigned.append((length, det_sign, nu))

    buckets: Dict[Tuple[int, int, int], List[float]] = {}
    cluster_count = 0
    prev_length = None
    for length, det_sign, nu in sorted(assigned):
        if prev_length is None or length - prev_length > tol:
            cluster_count += 1
        prev_length = length
        buckets.setdefault((cluster_count - 1, det_sign, nu), []).append(length)

    entries = []
    for (idx, det_sign, nu), lengths in buckets.items():
        orientation = Orientation.PRESERVING if det_sign > 0 else Orientation.REVERSING
        entries.append(
            GeodesicEntry(
                Numeric(min(lengths)), orientation, nu=nu, multiplicity=len(lengths)
            )
        )

    spectrum = LengthTwistSpectrum(
        entries, horizon=Numeric(config.length_cutoff), tolerance=tol
    )
    return EnumerationResult(
        spectrum=spectrum, elliptic=tuple(elliptic), dropped=dropped
    )

"""Spectral Dirichlet series partial sums and their normal-bundle Q-factors.

The series attaches to each geodesic the term

    wt * l * (cosh l / (cosh l - 1))**(1/2) * cosh(l)**(-s),

where the square-root factor is the d=2 orientation-preserving Q-factor;
the reversing case differs by exactly the tanh(l/2) already inside the
weight.  The general Q-factor for twist data A in O(d-1) is

    Q(l, A) = |det(I - (1/cosh l) * (A + A^T)/2)| ** (-(d-1)/2).

Only truncated evaluation in (or out of) the convergence half-plane
sigma > d-1 is provided; partial sums over finite spectra are finite
everywhere, so leaving the half-plane is a warning, not an error.
"""

from __future__ import annotations

import cmath
import math
import warnings
from dataclasses import dataclass
from typing import Sequence, Tuple, Union

import numpy as np

from .lengths import cluster_lengths, representative
from .spectrum import LengthTwistSpectrum, _clustered_weights, weight

ORTHOGONALITY_TOLERANCE = 1e-12


class ConvergenceWarning(UserWarning):
    """Evaluation point is outside the series' convergence half-plane."""


@dataclass(frozen=True)
class SeriesPoint:
    """Evaluation point s = sigma + i*t."""

    sigma: float
    t: float = 0.0

    @property
    def s(self) -> complex:
        return complex(self.sigma, self.t)


@dataclass(frozen=True)
class TwistData:
    """Holonomy twist: an orthogonal (d-1)x(d-1) matrix, d >= 2.

    For surfaces (d=2) the matrix is the 1x1 [1] or [-1]; higher d takes
    any orthogonal matrix representing the action on the normal bundle.
    """

    dimension: int
    matrix: Tuple[Tuple[float, ...], ...]

    def __post_init__(self):
        d = self.dimension
        if d < 2:
            raise ValueError(f"dimension must be >= 2, got {d}")
        m = np.asarray(self.matrix, dtype=float)
        if m.shape != (d - 1, d - 1):
            raise ValueError(f"twist matrix must be {(d-1, d-1)}, got {m.shape}")
        if not np.allclose(m.T @ m, np.eye(d - 1), rtol=0.0, atol=ORTHOGONALITY_TOLERANCE):
            raise ValueError("twist matrix is not orthogonal within 1e-12")
        if d == 2 and self.matrix[0][0] not in (1.0, -1.0):
            raise ValueError("surface twist must be exactly [1] or [-1]")

    @classmethod
    def from_matrix(cls, matrix: Sequence[Sequence[float]]) -> "TwistData":
        rows = tuple(tuple(float(x) for x in row) for row in matrix)
        return cls(dimension=len(rows) + 1, matrix=rows)

    @classmethod
    def preserving(cls) -> "TwistData":
        return cls(dimension=2, matrix=((1.0,),))

    @classmethod
    def reversing(cls) -> "TwistData":
        return cls(dimension=2, matrix=((-1.0,),))


def q_factor(l: float, twist: TwistData) -> float:
    """Q(l, A): determinant weight of the twist on the normal bundle.

    Specializes at d=2 to (cosh l/(cosh l - 1))**(1/2) for twist [1] and
    (cosh l/(cosh l + 1))**(1/2) for twist [-1]; their ratio is tanh(l/2).
    """
    if l <= 0:
        raise ValueError(f"length must be positive, got {l}")
    d = twist.dimension
    a = np.asarray(twist.matrix, dtype=float)
    sym = (a + a.T) / 2.0
    det = float(np.linalg.det(np.eye(d - 1) - sym / math.cosh(l)))
    return abs(det) ** (-(d - 1) / 2.0)


def _as_complex(s: Union[SeriesPoint, complex, float]) -> complex:
    if isinstance(s, SeriesPoint):
        return s.s
    return complex(s)


def _warn_if_diverging(s: complex, dimension: int = 2):
    if s.real <= dimension - 1:
        warnings.warn(
            f"partial sum evaluated at sigma={s.real}, outside the "
            f"convergence half-plane sigma > {dimension - 1}",
            ConvergenceWarning,
            stacklevel=3,
        )


def _series_term(l: float, s: complex) -> complex:
    c = math.cosh(l)
    return l * math.sqrt(c / (c - 1.0)) * cmath.exp(-s * cmath.log(c))


def dirichlet_partial_sum(
    spec: LengthTwistSpectrum, s: Union[SeriesPoint, complex, float]
) -> complex:
    """Per-geodesic partial sum of the spectral Dirichlet series.

    Sums multiplicity * wt * l * (cosh l/(cosh l-1))**(1/2) * cosh(l)**-s
    over all entries, in canonical entry order (ascending length, then
    orientation, then nu) for run-to-run bit stability.
    """
    z = _as_complex(s)
    _warn_if_diverging(z)
    acc = 0j
    for e in spec.entries:
        l = e.length.approx()
        acc += e.multiplicity * float(weight(e)) * _series_term(l, z)
    return acc


def dirichlet_partial_sum_grouped(
    spec: LengthTwistSpectrum, s: Union[SeriesPoint, complex, float]
) -> complex:
    """Partial sum computed through the total weight function.

    Groups entries by length cluster and sums W(l) * l * Q * cosh(l)**-s;
    agrees with the per-geodesic form to floating-point accuracy.
    """
    z = _as_complex(s)
    _warn_if_diverging(z)
    clusters = cluster_lengths([e.length for e in spec.entries], spec.tolerance)
    weights = _clustered_weights(spec, clusters, spec.tolerance)
    acc = 0j
    for c, w in zip(clusters, weights):
        acc += float(w) * _series_term(representative(c).approx(), z)
    return acc

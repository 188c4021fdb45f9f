import math
import random
import warnings

import pytest

from isogeo.dirichlet import (
    ConvergenceWarning,
    SeriesPoint,
    TwistData,
    dirichlet_partial_sum,
    dirichlet_partial_sum_grouped,
    q_factor,
)
from isogeo.lengths import Numeric
from isogeo.scenario import build_scenario, to_spectra
from isogeo.spectrum import GeodesicEntry, LengthTwistSpectrum, Orientation

P = Orientation.PRESERVING
R = Orientation.REVERSING


def test_twist_validation():
    with pytest.raises(ValueError):
        TwistData(dimension=2, matrix=((0.5,),))
    with pytest.raises(ValueError):
        TwistData.from_matrix([[1.0, 0.1], [0.0, 1.0]])
    with pytest.raises(ValueError):
        TwistData(dimension=3, matrix=((1.0,),))
    TwistData.from_matrix([[0.0, -1.0], [1.0, 0.0]])


def test_q_factor_surface_cases():
    l = math.acosh(2.0)
    assert q_factor(l, TwistData.preserving()) == pytest.approx(math.sqrt(2), abs=1e-12)
    assert q_factor(l, TwistData.reversing()) == pytest.approx(
        math.sqrt(2.0 / 3.0), abs=1e-12
    )
    with pytest.raises(ValueError):
        q_factor(0.0, TwistData.preserving())


def test_q_factor_quarter_turn_is_unit():
    rot = TwistData.from_matrix([[0.0, -1.0], [1.0, 0.0]])
    for l in (0.5, 1.0, 3.0):
        assert q_factor(l, rot) == pytest.approx(1.0, abs=1e-15)


def test_q_factor_ratio_is_tanh():
    for l in (0.5, 1.0, 5.0):
        ratio = q_factor(l, TwistData.reversing()) / q_factor(l, TwistData.preserving())
        assert ratio == pytest.approx(math.tanh(l / 2.0), abs=1e-12)


def test_q_factor_ordering_and_limit():
    for l in (0.3, 1.0, 4.0):
        assert q_factor(l, TwistData.preserving()) > q_factor(l, TwistData.reversing())
    assert q_factor(40.0, TwistData.preserving()) == pytest.approx(1.0, abs=1e-12)
    assert q_factor(40.0, TwistData.reversing()) == pytest.approx(1.0, abs=1e-12)


def test_partial_sum_empty():
    spec = LengthTwistSpectrum([], Numeric(5.0))
    assert dirichlet_partial_sum(spec, 2.0) == 0


def test_partial_sum_single_entry_closed_form():
    l = math.acosh(2.0)
    spec = LengthTwistSpectrum([GeodesicEntry(Numeric(l), P)], Numeric(5.0))
    expected = l * math.sqrt(2.0) / 4.0
    got = dirichlet_partial_sum(spec, 2.0)
    assert got.real == pytest.approx(expected, abs=1e-14)
    assert got.imag == 0.0


def test_partial_sum_accepts_series_point():
    spec = LengthTwistSpectrum([GeodesicEntry(Numeric(1.0), P)], Numeric(5.0))
    a = dirichlet_partial_sum(spec, SeriesPoint(2.0, 5.0))
    b = dirichlet_partial_sum(spec, complex(2.0, 5.0))
    assert a == b


def test_partial_sum_warns_outside_half_plane():
    spec = LengthTwistSpectrum([GeodesicEntry(Numeric(1.0), P)], Numeric(5.0))
    with pytest.warns(ConvergenceWarning):
        dirichlet_partial_sum(spec, 0.5)
    with pytest.warns(ConvergenceWarning):
        dirichlet_partial_sum_grouped(spec, 1.0)
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        dirichlet_partial_sum(spec, 1.0 + 1e-9)


def _random_spectrum(rng):
    entries = [
        GeodesicEntry(
            Numeric(rng.uniform(0.3, 8.0)),
            rng.choice([P, R]),
            nu=rng.randint(1, 4),
            multiplicity=rng.randint(1, 5),
        )
        for _ in range(rng.randint(1, 15))
    ]
    return LengthTwistSpectrum(entries, Numeric(10.0))


def test_two_forms_agree_on_random_spectra():
    rng = random.Random(2024)
    for _ in range(30):
        spec = _random_spectrum(rng)
        for s in (2.0, complex(2.0, 5.0)):
            a = dirichlet_partial_sum(spec, s)
            b = dirichlet_partial_sum_grouped(spec, s)
            assert abs(a - b) <= 1e-12, (spec, s)


def test_equal_weight_profiles_give_equal_sums():
    a, b = to_spectra(build_scenario(2, 10))
    for s in (2.0, complex(3.0, 1.0)):
        da = dirichlet_partial_sum(a, s)
        db = dirichlet_partial_sum(b, s)
        assert abs(da - db) <= 1e-12


def test_partial_sum_deterministic_order():
    rng = random.Random(7)
    spec = _random_spectrum(rng)
    v1 = dirichlet_partial_sum(spec, complex(2.5, -1.0))
    v2 = dirichlet_partial_sum(spec, complex(2.5, -1.0))
    assert v1 == v2


def test_term_decay_in_sigma():
    # larger sigma shrinks the tail: |D(3)| <= |D(2)| for positive spectra
    spec = LengthTwistSpectrum(
        [GeodesicEntry(Numeric(1.0), P), GeodesicEntry(Numeric(2.0), P)], Numeric(5.0)
    )
    assert abs(dirichlet_partial_sum(spec, 3.0)) < abs(dirichlet_partial_sum(spec, 2.0))

import math
import random

import pytest

from isogeo.errors import EmptyGenerators, NotTranslating
from isogeo.hyperbolic import (
    EnumConfig,
    Isometry,
    IsometryClass,
    classify,
    enumerate_geodesics,
    translation_length,
)
from isogeo.spectrum import CountingFunction, Orientation, pgt_jump_report


def rotation(theta):
    c, s = math.cos(theta), math.sin(theta)
    return Isometry(c, -s, s, c)


def random_hyperbolic(rng):
    lam = rng.uniform(1.2, 4.0)
    g = Isometry.diag(lam, 1 / lam)
    return conjugate(g, random_conjugator(rng))


def random_glide(rng):
    lam = rng.uniform(1.2, 4.0)
    g = Isometry.diag(lam, -1 / lam)
    return conjugate(g, random_conjugator(rng))


def random_conjugator(rng):
    while True:
        a, b, c, d = (rng.uniform(-2, 2) for _ in range(4))
        det = a * d - b * c
        if abs(det) > 0.1:
            s = 1 / math.sqrt(abs(det))
            return Isometry(a * s, b * s, c * s, d * s)


def conjugate(g, h):
    return h @ g @ h.inverse()


def test_isometry_validation():
    with pytest.raises(ValueError):
        Isometry(2.0, 0.0, 0.0, 2.0)
    Isometry.diag(2.0, 0.5)
    Isometry.diag(2.0, -0.5)


def test_inverse_and_power():
    g = Isometry(2.0, 1.0, 1.0, 1.0)
    gi = g.inverse()
    prod = g @ gi
    assert prod.a == pytest.approx(1.0) and prod.d == pytest.approx(1.0)
    assert abs(prod.b) < 1e-12 and abs(prod.c) < 1e-12
    g3 = g.power(3)
    assert g3.a == pytest.approx((g @ g @ g).a, abs=1e-12)


def test_classify_examples():
    assert classify(Isometry.identity()) is IsometryClass.IDENTITY
    assert classify(Isometry(-1.0, 0.0, 0.0, -1.0)) is IsometryClass.IDENTITY
    assert classify(Isometry.diag(2.0, 0.5)) is IsometryClass.HYPERBOLIC
    assert classify(Isometry.diag(2.0, -0.5)) is IsometryClass.GLIDE_REFLECTION
    assert classify(Isometry(1.0, 1.0, 0.0, 1.0)) is IsometryClass.PARABOLIC
    assert classify(rotation(0.3)) is IsometryClass.ELLIPTIC
    assert classify(Isometry(0.0, 1.0, 1.0, 0.0)) is IsometryClass.REFLECTION


def test_translation_length_examples():
    assert translation_length(Isometry.diag(2.0, 0.5)) == pytest.approx(
        2 * math.log(2), abs=1e-12
    )
    # glide: half the square's length
    assert translation_length(Isometry.diag(2.0, -0.5)) == pytest.approx(
        2 * math.log(2), abs=1e-12
    )
    for bad in (Isometry.identity(), rotation(0.5), Isometry(1.0, 1.0, 0.0, 1.0)):
        with pytest.raises(NotTranslating):
            translation_length(bad)


def test_translation_length_conjugation_invariant():
    rng = random.Random(11)
    g = Isometry.diag(2.0, 0.5)
    base = translation_length(g)
    for _ in range(50):
        h = random_conjugator(rng)
        assert translation_length(conjugate(g, h)) == pytest.approx(base, abs=1e-9)


def test_power_length_scaling():
    rng = random.Random(23)
    for _ in range(20):
        g = random_hyperbolic(rng)
        l = translation_length(g)
        for k in range(2, 11):
            assert translation_length(g.power(k)) == pytest.approx(k * l, abs=1e-9)


def test_glide_square_law_and_parity():
    rng = random.Random(31)
    for _ in range(20):
        g = random_glide(rng)
        l = translation_length(g)
        assert translation_length(g.power(2)) / 2 == pytest.approx(l, abs=1e-9)
        for k in range(1, 7):
            gk = g.power(k)
            det = gk.det()
            assert (det < 0) == (k % 2 == 1)
            expected = (
                IsometryClass.GLIDE_REFLECTION if k % 2 == 1 else IsometryClass.HYPERBOLIC
            )
            assert classify(gk) is expected


def test_enumerate_single_generator():
    g = Isometry.diag(2.0, 0.5)
    res = enumerate_geodesics([g], EnumConfig(max_word_length=3, length_cutoff=10.0))
    entries = res.spectrum.entries
    assert len(entries) == 3
    l = 2 * math.log(2)
    for e, (k, expected_len) in zip(entries, [(1, l), (2, 2 * l), (3, 3 * l)]):
        assert e.nu == k
        assert e.length.approx() == pytest.approx(expected_len, abs=1e-9)
        assert e.orientation is Orientation.PRESERVING
        assert e.multiplicity == 2


def test_enumerate_reversing_filter():
    gens = [Isometry.diag(2.0, 0.5), Isometry.diag(3.0, -1 / 3.0)]
    with_rev = enumerate_geodesics(gens, EnumConfig(2, 12.0))
    assert any(e.orientation is Orientation.REVERSING for e in with_rev.spectrum.entries)
    without = enumerate_geodesics(gens, EnumConfig(2, 12.0, include_reversing=False))
    assert all(e.orientation is Orientation.PRESERVING for e in without.spectrum.entries)


def test_enumerate_glide_powers_alternate():
    g = Isometry.diag(2.0, -0.5)
    res = enumerate_geodesics([g], EnumConfig(4, 12.0))
    by_nu = {e.nu: e for e in res.spectrum.entries}
    assert by_nu[1].orientation is Orientation.REVERSING
    assert by_nu[2].orientation is Orientation.PRESERVING
    assert by_nu[3].orientation is Orientation.REVERSING
    assert by_nu[4].orientation is Orientation.PRESERVING


def test_enumerate_elliptic_side_channel():
    res = enumerate_geodesics(
        [Isometry.diag(2.0, 0.5), rotation(math.pi / 5)], EnumConfig(2, 8.0)
    )
    assert res.elliptic
    words = {w for w, _ in res.elliptic}
    assert (2,) in words


def test_enumerate_empty_generators():
    with pytest.raises(EmptyGenerators):
        enumerate_geodesics([], EnumConfig(3, 5.0))


def schottky_pair():
    a = Isometry.diag(3.0, 1 / 3.0)
    t = Isometry(1.0, 2.0, 0.0, 1.0)
    return [a, conjugate(a, t)]


def test_enumerate_schottky_structural():
    res = enumerate_geodesics(schottky_pair(), EnumConfig(4, 4.0))
    spec = res.spectrum
    assert len(spec) > 0
    counting = CountingFunction(spec)
    total = counting.total()
    assert total == spec.total_multiplicity()
    assert sum(f for _, f in counting.jumps()) == total
    assert all(f <= total for _, f in counting.jumps())
    # oriented pairs: every jump even
    assert all(f % 2 == 0 for _, f in counting.jumps())


def test_enumerate_passes_generous_envelope():
    res = enumerate_geodesics(schottky_pair(), EnumConfig(5, 5.0))
    report = pgt_jump_report(res.spectrum, 50.0)
    assert report.violations == ()

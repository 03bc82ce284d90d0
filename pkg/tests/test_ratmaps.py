import random
from fractions import Fraction

import pytest

from conftest import rand_mobius
from hkmoduli.errors import ValidationError
from hkmoduli.gaussian import GR
from hkmoduli.poly import HomogeneousForm, Polynomial, homogenize, integrate_from_zero
from hkmoduli.projective import INF, MobiusMap, ProjPoint, pt
from hkmoduli.ratmaps import (
    RationalMap,
    WeightedConfig,
    critical_divisor,
    critical_divisor_float,
    hurwitz_check,
    postcompose,
    precompose,
    wronskian,
)

t = Polynomial.x()
Z2 = RationalMap.from_coeffs([0, 0, 1], [1, 0, 0])  # z -> z^2
C = WeightedConfig.of


def family_n1() -> RationalMap:
    p = integrate_from_zero(t**2 * (t - 1) ** 3 * (t - 2))
    return RationalMap(homogenize(p, 7), HomogeneousForm(7, [1] + [0] * 7))


def random_map(rng: random.Random, deg: int) -> RationalMap:
    while True:
        num = [GR(rng.randint(-5, 5), rng.randint(-2, 2)) for _ in range(deg + 1)]
        den = [GR(rng.randint(-5, 5), rng.randint(-2, 2)) for _ in range(deg + 1)]
        try:
            return RationalMap.from_coeffs(num, den)
        except ValidationError:
            continue


def test_rejects_non_reduced_and_constant():
    with pytest.raises(ValidationError):
        RationalMap.from_coeffs([0, 1, 1], [0, 1, 0])  # common factor z1
    with pytest.raises(ValidationError):
        RationalMap.from_coeffs([0, 2, 0], [0, 1, 0])
    with pytest.raises(ValidationError):
        RationalMap.from_coeffs([1], [1])


def test_wronskian_examples():
    assert wronskian(Z2) == HomogeneousForm(2, [0, 4, 0])
    ident = RationalMap.from_coeffs([0, 1], [1, 0])
    assert wronskian(ident) == HomogeneousForm(0, [1])
    w = wronskian(family_n1())
    assert w.degree == 12
    assert critical_divisor(family_n1()) == C({0: 2, 1: 3, 2: 1, "inf": 6})


def test_critical_divisor_examples():
    z3 = RationalMap.from_coeffs([0, 0, 0, 1], [1, 0, 0, 0])
    assert critical_divisor(z3) == C({0: 2, "inf": 2})
    zsq_plus_1 = RationalMap.from_coeffs([1, 0, 1], [1, 0, 0])
    assert critical_divisor(zsq_plus_1) == C({0: 1, "inf": 1})
    assert critical_divisor(RationalMap.from_coeffs([0, 1], [1, 0])) == C({})


def test_irrational_critical_points_are_flagged():
    # z^3 - 6z is critical at +-sqrt(2)
    f = RationalMap(homogenize(t**3 - 6 * t, 3), HomogeneousForm(3, [1, 0, 0, 0]))
    cfg = critical_divisor(f)
    assert not cfg.certified
    assert cfg.mult(INF) == 2
    affine = sorted((p.z1.real for p, _ in cfg if not p.is_infinity))
    assert affine == pytest.approx([-2**0.5, 2**0.5], abs=1e-12)
    assert cfg.total_weight == 4


def test_hurwitz_examples(rng):
    assert hurwitz_check(Z2)
    fam3 = RationalMap(
        homogenize(integrate_from_zero(t**2 * (t - 1) ** 3 * (t - 2) * (t - 4) * (t - 6)), 9),
        HomogeneousForm(9, [1] + [0] * 9),
    )
    cfg = critical_divisor(fam3)
    assert sorted(m for _, m in cfg) == [1, 1, 1, 2, 3, 8]
    assert hurwitz_check(fam3, cfg)
    for deg in range(1, 5):
        assert hurwitz_check(random_map(rng, deg))


def test_precompose_examples():
    assert precompose(Z2, MobiusMap.identity()) == Z2
    shifted = precompose(Z2, MobiusMap(1, 1, 0, 1))
    assert critical_divisor(shifted) == C({-1: 1, "inf": 1})
    inv = MobiusMap(0, 1, 1, 0)
    moved = critical_divisor(precompose(family_n1(), inv))
    assert moved.mult(pt(0)) == 6
    assert moved == C({"inf": 2, 1: 3, Fraction(1, 2): 1, 0: 6})


def test_precompose_transports_divisor(rng):
    for _ in range(15):
        f = random_map(rng, rng.randint(2, 4))
        m = rand_mobius(rng)
        base = critical_divisor(f)
        moved = critical_divisor(precompose(f, m))
        assert moved.multiplicities() == base.multiplicities()
        if base.certified:
            assert moved == base.transform(m.inverse())
    f = family_n1()
    for _ in range(10):
        m = rand_mobius(rng)
        assert critical_divisor(precompose(f, m)) == critical_divisor(f).transform(m.inverse())


def test_postcompose_keeps_critical_points(rng):
    f = family_n1()
    base = critical_divisor(f)
    for _ in range(10):
        assert critical_divisor(postcompose(rand_mobius(rng), f)) == base


def test_evaluation():
    f = family_n1()
    assert f(INF) == INF
    assert f(pt(0)) == pt(0)
    assert Z2(pt(GR(1, 1))) == pt(GR(0, 2))


def test_float_critical_divisor_is_heuristic():
    cfg = critical_divisor_float(family_n1())
    assert not cfg.certified
    assert sorted(m for _, m in cfg) == [1, 2, 3, 6]


def test_weighted_config_validation_and_json():
    with pytest.raises(ValidationError):
        WeightedConfig([(pt(1), 1), (ProjPoint(GR(2), GR(2)), 2)])
    with pytest.raises(ValidationError):
        C({1: 0})
    cfg = C({"inf": 6, 2: 1, 0: 2, 1: 3})
    assert [p for p, _ in cfg][-1] == INF
    assert [m for _, m in cfg] == [1, 2, 3, 6]
    assert WeightedConfig.from_json(cfg.to_json()) == cfg
    assert cfg.to_json()["points"][0] == {"point": {"z": {"re": "2", "im": "0"}}, "mult": 1}


def test_rational_map_json():
    f = family_n1()
    obj = f.to_json()
    assert obj["degree"] == 7 and len(obj["num"]) == 8
    assert RationalMap.from_json(obj) == f
    with pytest.raises(ValidationError):
        RationalMap.from_json({"degree": 2, "num": obj["num"], "den": obj["den"]})

from fractions import Fraction

import pytest

from conftest import rand_gr, rand_mobius
from hkmoduli.gaussian import GR
from hkmoduli.projective import (
    INF,
    ONE,
    ZERO,
    MobiusMap,
    ProjPoint,
    apply,
    cross_ratio,
    mobius_from_triples,
    pt,
)


def test_projective_equality_and_canonical_form():
    assert ProjPoint(GR(2), GR(4)) == ProjPoint(GR(1), GR(2)) == pt(Fraction(1, 2))
    assert ProjPoint(GR(3, 1), GR(0)) == INF
    assert INF.affine is None
    assert (INF.z1, INF.z2) == (GR(1), GR(0))
    with pytest.raises(ValueError):
        ProjPoint(0, 0)


def test_point_json():
    assert INF.to_json() == "inf"
    assert pt(GR(Fraction(-5, 6), 1)).to_json() == {"z": {"re": "-5/6", "im": "1"}}
    for p in (INF, pt(3), pt(GR(0, Fraction(1, 7)))):
        assert ProjPoint.from_json(p.to_json()) == p


def test_cross_ratio_examples():
    z = pt(GR(7, 2))
    assert cross_ratio(z, ZERO, ONE, INF) == z
    # ((3-1)(2-4)) / ((3-4)(2-1)) = 4
    assert cross_ratio(pt(3), pt(1), pt(2), pt(4)) == pt(4)
    p, q, r = pt(5), pt(GR(0, 1)), pt(-2)
    assert cross_ratio(p, p, q, r) == ZERO
    assert cross_ratio(r, p, q, r) == INF


def test_cross_ratio_degenerate_rejected():
    with pytest.raises(ValueError):
        cross_ratio(pt(3), pt(1), pt(1), pt(4))


def test_mobius_from_triples_examples():
    assert mobius_from_triples(ZERO, ONE, INF, ZERO, ONE, INF) == MobiusMap.identity()
    m = mobius_from_triples(ZERO, ONE, INF, ONE, ZERO, INF)
    assert m == MobiusMap(-1, 1, 0, 1)
    assert [m(p) for p in (ZERO, ONE, INF)] == [ONE, ZERO, INF]
    assert mobius_from_triples(pt(1), pt(2), pt(4), ZERO, ONE, INF)(pt(3)) == pt(4)


def test_apply_examples():
    p = pt(GR(3, -1))
    assert apply(MobiusMap.identity(), p) == p
    assert apply(MobiusMap(0, 1, 1, 0), ZERO) == INF
    assert apply(MobiusMap(-1, 1, 0, 1), pt(3)) == pt(-2)


def test_canonical_scaling():
    m = MobiusMap(2, 4, 6, 10)
    assert (m.a, m.b, m.c, m.d) == (GR(1), GR(2), GR(3), GR(5))
    assert MobiusMap(0, 3, -3, 6).matrix == ((0, 1), (-1, 2))
    assert MobiusMap.from_json(m.to_json()) == m
    with pytest.raises(ValueError):
        MobiusMap(1, 2, 2, 4)


def test_cross_ratio_invariance(rng):
    for _ in range(100):
        m = rand_mobius(rng)
        pts = set()
        while len(pts) < 4:
            pts.add(pt(rand_gr(rng)) if rng.random() > 0.1 else INF)
        z, p, q, r = list(pts)
        assert cross_ratio(m(z), m(p), m(q), m(r)) == cross_ratio(z, p, q, r)


def test_from_triples_hits_targets(rng):
    for _ in range(50):
        src, dst = set(), set()
        while len(src) < 3:
            src.add(pt(rand_gr(rng)))
        while len(dst) < 3:
            dst.add(pt(rand_gr(rng)) if rng.random() > 0.2 else INF)
        src, dst = list(src), list(dst)
        m = mobius_from_triples(*src, *dst)
        assert [m(p) for p in src] == dst


def test_group_laws(rng):
    for _ in range(50):
        a, b, c = rand_mobius(rng), rand_mobius(rng), rand_mobius(rng)
        p = pt(rand_gr(rng))
        assert (a @ b) @ c == a @ (b @ c)
        assert apply(a @ b, p) == apply(a, apply(b, p))
        assert a @ a.inverse() == MobiusMap.identity()


def test_float_points_and_maps():
    m = MobiusMap(1, 1, 0, 1)
    q = apply(m, pt(0.5 + 0.25j))
    assert not q.exact and abs(q.z1 - (1.5 + 0.25j)) < 1e-15
    assert apply(MobiusMap(0, 1, 1, 0), pt(0j)).is_infinity

import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from hkmoduli.gaussian import GR
from hkmoduli.poly import (
    HomogeneousForm,
    Polynomial,
    derivative,
    exact_roots,
    float_roots,
    gcd,
    homogenize,
    integrate_from_zero,
    poly_divmod,
    resultant,
    squarefree_decomposition,
)

from oracles import sympy_sqf, to_sympy

t = Polynomial.x()
F = Fraction

# t^2 (t-1)^3 (t-2) and its antiderivative, expanded with sympy
P_DERIV = Polynomial([0, 0, 2, -7, 9, -5, 1])
P_INT = Polynomial([0, 0, 0, F(2, 3), F(-7, 4), F(9, 5), F(-5, 6), F(1, 7)])

small = st.fractions(min_value=-10, max_value=10, max_denominator=6)
gauss = st.builds(GR, small, small)
polys = st.lists(gauss, max_size=8).map(Polynomial)
nonzero_polys = polys.filter(lambda p: not p.is_zero)


def test_zero_polynomial_has_no_degree():
    assert Polynomial([]).degree is None
    assert Polynomial([0, 0]).degree is None
    assert Polynomial([0, 0]).is_zero


def test_trailing_zeros_stripped():
    assert Polynomial([1, 2, 0, 0]).coeffs == (GR(1), GR(2))


def test_product_matches_hand_expansion():
    assert t**2 * (t - 1) ** 3 * (t - 2) == P_DERIV


def test_derivative_examples():
    assert derivative(P_INT) == P_DERIV
    assert derivative(Polynomial([5])).is_zero
    assert derivative(t) == Polynomial([1])


def test_integrate_examples():
    assert integrate_from_zero(P_DERIV) == P_INT
    assert integrate_from_zero(Polynomial([])).is_zero
    assert integrate_from_zero(Polynomial([1])) == t


def test_integrate_rejects_float_backend():
    with pytest.raises(ValueError):
        integrate_from_zero(P_DERIV.to_float())


@given(polys)
def test_derivative_inverts_integration(p):
    assert derivative(integrate_from_zero(p)) == p


@given(nonzero_polys)
def test_derivative_drops_degree_by_one(p):
    d = derivative(p)
    if p.degree == 0:
        assert d.is_zero
    else:
        assert d.degree == p.degree - 1


def test_gcd_examples():
    assert gcd(t**2 * (t - 1), t * (t - 1) ** 2) == t**2 - t
    p = 3 * t**2 + 6
    assert gcd(p, Polynomial([])) == p.monic()
    assert gcd(t - 1, t - 2) == Polynomial([1])
    with pytest.raises(ValueError):
        gcd(Polynomial([]), Polynomial([]))


@given(nonzero_polys, nonzero_polys, nonzero_polys)
def test_gcd_divides_and_matches_sympy(a, b, c):
    p, q = a * c, b * c
    g = gcd(p, q)
    assert poly_divmod(p, g)[1].is_zero
    assert poly_divmod(q, g)[1].is_zero
    assert to_sympy(g) == to_sympy(p).gcd(to_sympy(q)).monic()


def test_squarefree_examples():
    assert squarefree_decomposition(P_DERIV) == [(t - 2, 1), (t, 2), (t - 1, 3)]
    assert squarefree_decomposition(t - 5) == [(t - 5, 1)]
    assert squarefree_decomposition((t**2 + 1) ** 2) == [(t**2 + 1, 2)]
    with pytest.raises(ValueError):
        squarefree_decomposition(Polynomial([]))


@given(st.lists(st.tuples(gauss, st.integers(1, 4)), min_size=1, max_size=4), gauss.filter(bool))
def test_squarefree_reexpands_and_matches_sympy(factors, lead):
    p = Polynomial([lead])
    for r, m in factors:
        p = p * (t - r) ** m
    dec = squarefree_decomposition(p)
    rebuilt = Polynomial([p.leading_coefficient])
    for s, m in dec:
        rebuilt = rebuilt * s**m
    assert rebuilt == p
    mults = [m for _, m in dec]
    assert mults == sorted(set(mults))
    for i, (s, _) in enumerate(dec):
        assert gcd(s, derivative(s)) == Polynomial([1])
        for s2, _ in dec[i + 1:]:
            assert gcd(s, s2) == Polynomial([1])
    assert dec == sympy_sqf(p)


def test_homogenize_examples():
    assert homogenize(t**3 + 2, 3) == HomogeneousForm(3, [2, 0, 0, 1])
    assert homogenize(t, 3) == HomogeneousForm(3, [0, 1, 0, 0])
    f = homogenize(P_INT, 7)
    assert f(GR(1), GR(0)) == F(1, 7)
    for z1, z2 in [(GR(2), GR(3)), (GR(1, 1), GR(-1, 2)), (GR(F(1, 2)), GR(5))]:
        assert f(z1, z2) == z2**7 * P_INT(z1 / z2)
    with pytest.raises(ValueError):
        homogenize(t**4, 3)


@given(polys, st.integers(0, 3), gauss, gauss, gauss)
def test_homogeneous_scaling(p, extra, lam, z1, z2):
    d = (p.degree or 0) + extra
    f = homogenize(p, d)
    assert f(lam * z1, lam * z2) == lam**d * f(z1, z2)
    assert f.dehomogenize() == p


def test_form_partials():
    f = HomogeneousForm(2, [0, 0, 1])  # z1^2
    assert f.d1() == HomogeneousForm(1, [0, 2])
    assert f.d2() == HomogeneousForm(1, [0, 0])


def test_substitute_matches_pointwise():
    f = HomogeneousForm(3, [1, -2, 0, GR(1, 1)])
    a, b, c, d = GR(1), GR(2), GR(0, 1), GR(-1)
    g = f.substitute(a, b, c, d)
    for z1, z2 in [(GR(1), GR(1)), (GR(2, 1), GR(F(1, 3)))]:
        assert g(z1, z2) == f(a * z1 + b * z2, c * z1 + d * z2)


def test_resultant_detects_common_roots():
    z1sq = HomogeneousForm(2, [0, 0, 1])
    z2sq = HomogeneousForm(2, [1, 0, 0])
    assert resultant(z1sq, z2sq) != 0
    # both vanish at infinity
    assert resultant(HomogeneousForm(2, [1, 1, 0]), HomogeneousForm(2, [0, 1, 0])) == 0
    # both vanish at 1
    assert resultant(homogenize((t - 1) * (t + 2), 2), homogenize((t - 1) * t, 2)) == 0


def test_resultant_of_linear_forms_is_determinant():
    f = HomogeneousForm(1, [3, 5])  # 5 z1 + 3 z2
    g = HomogeneousForm(1, [7, 2])
    assert resultant(f, g) == 5 * 7 - 3 * 2


def test_exact_roots_finds_gaussian_rationals():
    roots = [GR(F(1, 3)), GR(F(2, 5), F(-7, 5)), GR(F(12345, 9871), F(-678, 9871))]
    p = Polynomial.from_roots(roots) * (t**2 - 2)
    found, residual = exact_roots(p)
    assert set(found) == set(roots)
    assert residual == t**2 - 2


def test_exact_roots_uses_hints():
    r = GR(F(10**20 + 1, 10**19 + 7))
    found, residual = exact_roots(Polynomial.from_roots([r, GR(1)]), hints=[r])
    assert set(found) == {r, GR(1)}
    assert residual.degree == 0


def test_float_roots_companion():
    z = sorted(float_roots((t - 1) * (t - 2) * (t + 3)), key=lambda w: w.real)
    assert [round(w.real, 12) for w in z] == [-3, 1, 2]


def test_float_and_exact_backends_agree():
    rng = random.Random(7)
    for _ in range(50):
        def rp():
            deg = rng.randint(0, 10)
            return Polynomial([GR(F(rng.randint(-100, 100), rng.randint(1, 10)), F(rng.randint(-100, 100), rng.randint(1, 10))) for _ in range(deg + 1)])
        p, q = rp(), rp()
        x = GR(F(rng.randint(-20, 20), 7), F(rng.randint(-20, 20), 9))
        for exact_val, float_val in [
            ((p * q)(x), (p.to_float() * q.to_float())(complex(x))),
            ((p + q)(x), (p.to_float() + q.to_float())(complex(x))),
            (derivative(p)(x), derivative(p.to_float())(complex(x))),
        ]:
            e = complex(exact_val)
            assert abs(e - float_val) <= 1e-10 * max(1.0, abs(e))


def test_json_round_trip():
    obj = P_INT.to_json()
    assert obj["coeffs"][3] == {"re": "2/3", "im": "0"}
    assert Polynomial.from_json(obj) == P_INT
    with pytest.raises(ValueError):
        Polynomial.from_json({"coeffs": [{"re": "1", "im": "0"}, {"re": "0", "im": "0"}]})

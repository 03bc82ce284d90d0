"""Univariate polynomials and binary forms over Q(i), with a complex-float twin.

Coefficient lists are ascending in the power of the variable. A
:class:`Polynomial` carries a backend tag: ``exact=True`` stores
:class:`~hkmoduli.gaussian.GaussianRational` coefficients, ``exact=False``
stores Python ``complex``. The zero polynomial has ``degree is None``.

A :class:`HomogeneousForm` of degree ``d`` stores ``d + 1`` coefficients, the
``j``-th one multiplying ``z1**j * z2**(d - j)``; dehomogenizing at ``z2 = 1``
therefore reads the coefficient list as an ordinary polynomial in ``z1``.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

import mpmath
import numpy as np

from .gaussian import GR, GaussianRational
from .linalg import determinant

__all__ = [
    "Polynomial",
    "HomogeneousForm",
    "derivative",
    "integrate_from_zero",
    "poly_divmod",
    "gcd",
    "squarefree_decomposition",
    "homogenize",
    "resultant",
    "exact_roots",
    "float_roots",
]


def _coerce(c, exact: bool):
    if exact:
        return GaussianRational.coerce(c)
    return complex(c)


class Polynomial:
    __slots__ = ("coeffs", "exact")

    def __init__(self, coeffs: Iterable = (), exact: bool = True):
        cs = [_coerce(c, exact) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs: tuple = tuple(cs)
        self.exact = exact

    @classmethod
    def x(cls, exact: bool = True) -> "Polynomial":
        return cls([0, 1], exact=exact)

    @classmethod
    def constant(cls, c, exact: bool = True) -> "Polynomial":
        return cls([c], exact=exact)

    @classmethod
    def from_roots(cls, roots: Iterable, exact: bool = True) -> "Polynomial":
        p = cls([1], exact=exact)
        for r in roots:
            p = p * cls([-r, 1], exact=exact)
        return p

    # basic structure -------------------------------------------------------

    @property
    def degree(self) -> int | None:
        return len(self.coeffs) - 1 if self.coeffs else None

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def leading_coefficient(self):
        if not self.coeffs:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def _like(self, coeffs) -> "Polynomial":
        return Polynomial(coeffs, exact=self.exact)

    def _check(self, other: "Polynomial"):
        if self.exact != other.exact:
            raise TypeError("cannot mix exact and float polynomials")

    def to_float(self) -> "Polynomial":
        return Polynomial([complex(c) for c in self.coeffs], exact=False)

    def monic(self) -> "Polynomial":
        lc = self.leading_coefficient
        return self._like([c / lc for c in self.coeffs])

    # ring operations -------------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, Polynomial):
            other = self._like([other])
        self._check(other)
        n = max(len(self.coeffs), len(other.coeffs))
        zero = _coerce(0, self.exact)
        a = self.coeffs + (zero,) * (n - len(self.coeffs))
        b = other.coeffs + (zero,) * (n - len(other.coeffs))
        return self._like([x + y for x, y in zip(a, b)])

    __radd__ = __add__

    def __neg__(self):
        return self._like([-c for c in self.coeffs])

    def __sub__(self, other):
        if not isinstance(other, Polynomial):
            other = self._like([other])
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            other = _coerce(other, self.exact)
            return self._like([c * other for c in self.coeffs])
        self._check(other)
        if self.is_zero or other.is_zero:
            return self._like([])
        zero = _coerce(0, self.exact)
        out = [zero] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] = out[i + j] + a * b
        return self._like(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        result = self._like([1])
        for _ in range(n):
            result = result * self
        return result

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.exact == other.exact and self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self):
        return hash((self.exact, self.coeffs))

    def __repr__(self):
        tag = "" if self.exact else ", exact=False"
        return f"Polynomial({list(self.coeffs)!r}{tag})"

    def __str__(self):
        if self.is_zero:
            return "0"
        terms = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            mono = "" if i == 0 else ("t" if i == 1 else f"t^{i}")
            coef = str(c)
            if mono and c == 1:
                coef = ""
            terms.append(coef + ("*" if coef and mono else "") + mono)
        return " + ".join(reversed(terms))

    # serialization ---------------------------------------------------------

    def to_json(self) -> dict:
        if not self.exact:
            raise ValueError("only exact polynomials have a canonical JSON form")
        return {"coeffs": [c.to_json() for c in self.coeffs]}

    @classmethod
    def from_json(cls, obj) -> "Polynomial":
        raw = [GR.from_json(c) for c in obj["coeffs"]]
        if raw and raw[-1] == 0:
            raise ValueError("non-canonical polynomial: trailing zero coefficient")
        return cls(raw)


def derivative(p: Polynomial) -> Polynomial:
    return p._like([i * c for i, c in enumerate(p.coeffs)][1:])


def integrate_from_zero(p: Polynomial) -> Polynomial:
    if not p.exact:
        raise ValueError("integrate_from_zero needs the exact backend")
    if p.is_zero:
        return p
    return p._like([0] + [c / (i + 1) for i, c in enumerate(p.coeffs)])


def poly_divmod(a: Polynomial, b: Polynomial) -> tuple[Polynomial, Polynomial]:
    a._check(b)
    if b.is_zero:
        raise ZeroDivisionError("polynomial division by zero")
    rem = list(a.coeffs)
    db = b.degree
    lc = b.leading_coefficient
    zero = _coerce(0, a.exact)
    quot = [zero] * max(len(rem) - db, 0)
    for k in range(len(rem) - 1 - db, -1, -1):
        q = rem[k + db] / lc
        quot[k] = q
        if q != 0:
            for j, c in enumerate(b.coeffs):
                rem[k + j] = rem[k + j] - q * c
    return a._like(quot), a._like(rem[:db])


def gcd(p: Polynomial, q: Polynomial) -> Polynomial:
    """Monic gcd by the Euclidean algorithm over Q(i)."""
    if not (p.exact and q.exact):
        raise ValueError("gcd needs the exact backend")
    if p.is_zero and q.is_zero:
        raise ValueError("gcd(0, 0) is undefined")
    while not q.is_zero:
        p, q = q, poly_divmod(p, q)[1]
    return p.monic()


def squarefree_decomposition(p: Polynomial) -> list[tuple[Polynomial, int]]:
    """Yun's algorithm.

    Returns monic, squarefree, pairwise coprime ``(s_i, m_i)`` with ``m_i``
    strictly increasing and ``p == lc(p) * prod(s_i ** m_i)``. Constant
    factors are dropped, so a constant ``p`` yields ``[]``.
    """
    if not p.exact:
        raise ValueError("squarefree_decomposition needs the exact backend")
    if p.is_zero:
        raise ValueError("the zero polynomial has no squarefree decomposition")
    if p.degree == 0:
        return []
    dp = derivative(p)
    g = gcd(p, dp)
    b = poly_divmod(p, g)[0]
    c = poly_divmod(dp, g)[0]
    d = c - derivative(b)
    out = []
    m = 1
    while b.degree and b.degree > 0:
        a = gcd(b, d)
        if a.degree > 0:
            out.append((a, m))
        b = poly_divmod(b, a)[0]
        c = poly_divmod(d, a)[0]
        d = c - derivative(b)
        m += 1
    return out


class HomogeneousForm:
    __slots__ = ("degree", "coeffs", "exact")

    def __init__(self, degree: int, coeffs: Sequence, exact: bool = True):
        if degree < 0:
            raise ValueError("form degree must be non-negative")
        if len(coeffs) != degree + 1:
            raise ValueError(f"a degree-{degree} form needs {degree + 1} coefficients")
        self.degree = degree
        self.coeffs = tuple(_coerce(c, exact) for c in coeffs)
        self.exact = exact

    def _like(self, degree, coeffs) -> "HomogeneousForm":
        return HomogeneousForm(degree, coeffs, exact=self.exact)

    @property
    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def __call__(self, z1, z2):
        acc = 0
        for j, c in enumerate(self.coeffs):
            if c != 0:
                acc = acc + c * z1**j * z2 ** (self.degree - j)
        return acc

    def dehomogenize(self) -> Polynomial:
        return Polynomial(self.coeffs, exact=self.exact)

    def order_at_infinity(self) -> int:
        """Vanishing order at [1:0], i.e. the power of z2 dividing the form."""
        p = self.dehomogenize()
        if p.is_zero:
            raise ValueError("the zero form vanishes identically")
        return self.degree - p.degree

    def d1(self) -> "HomogeneousForm":
        if self.degree == 0:
            return self._like(0, [0])
        return self._like(self.degree - 1, [j * c for j, c in enumerate(self.coeffs)][1:])

    def d2(self) -> "HomogeneousForm":
        d = self.degree
        if d == 0:
            return self._like(0, [0])
        return self._like(d - 1, [(d - j) * c for j, c in enumerate(self.coeffs)][:-1])

    def __add__(self, other: "HomogeneousForm"):
        if other.degree != self.degree:
            raise ValueError("can only add forms of equal degree")
        return self._like(self.degree, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    def __neg__(self):
        return self._like(self.degree, [-c for c in self.coeffs])

    def __sub__(self, other: "HomogeneousForm"):
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, HomogeneousForm):
            other = _coerce(other, self.exact)
            return self._like(self.degree, [c * other for c in self.coeffs])
        prod = self.dehomogenize() * other.dehomogenize()
        d = self.degree + other.degree
        cs = list(prod.coeffs) + [0] * (d + 1 - len(prod.coeffs))
        return self._like(d, cs)

    __rmul__ = __mul__

    def substitute(self, a, b, c, d) -> "HomogeneousForm":
        """The form (z1, z2) -> F(a z1 + b z2, c z1 + d z2)."""
        n = self.degree
        l1 = self._like(1, [b, a])
        l2 = self._like(1, [d, c])
        l1_pows = [self._like(0, [1])]
        l2_pows = [self._like(0, [1])]
        for _ in range(n):
            l1_pows.append(l1_pows[-1] * l1)
            l2_pows.append(l2_pows[-1] * l2)
        out = self._like(n, [0] * (n + 1))
        for j, coef in enumerate(self.coeffs):
            if coef != 0:
                out = out + (l1_pows[j] * l2_pows[n - j]) * coef
        return out

    def to_float(self) -> "HomogeneousForm":
        return HomogeneousForm(self.degree, [complex(c) for c in self.coeffs], exact=False)

    def __eq__(self, other):
        if isinstance(other, HomogeneousForm):
            return (self.degree, self.exact, self.coeffs) == (other.degree, other.exact, other.coeffs)
        return NotImplemented

    def __hash__(self):
        return hash((self.degree, self.exact, self.coeffs))

    def __repr__(self):
        return f"HomogeneousForm({self.degree}, {list(self.coeffs)!r})"

    def coeffs_json(self) -> list:
        return [c.to_json() for c in self.coeffs]


def homogenize(p: Polynomial, d: int) -> HomogeneousForm:
    deg = -1 if p.degree is None else p.degree
    if d < deg:
        raise ValueError(f"cannot homogenize a degree-{deg} polynomial to degree {d}")
    zero = _coerce(0, p.exact)
    return HomogeneousForm(d, list(p.coeffs) + [zero] * (d + 1 - len(p.coeffs)), exact=p.exact)


def resultant(f: HomogeneousForm, g: HomogeneousForm):
    """Resultant of two binary forms via the Sylvester determinant.

    Vanishes exactly when ``f`` and ``g`` share a root on the projective line,
    the point at infinity included.
    """
    m, n = f.degree, g.degree
    size = m + n
    if size == 0:
        return f.coeffs[0] ** 0
    fd = list(reversed(f.coeffs))
    gd = list(reversed(g.coeffs))
    zero = _coerce(0, f.exact)
    rows = []
    for i in range(n):
        rows.append([zero] * i + fd + [zero] * (size - m - 1 - i))
    for i in range(m):
        rows.append([zero] * i + gd + [zero] * (size - n - 1 - i))
    return determinant(rows)


# root extraction -----------------------------------------------------------

_ROOT_DPS = 60
_DENOM_BOUNDS = [10**k for k in range(0, 16)]


def _to_mpc(c: GaussianRational):
    return mpmath.mpc(
        mpmath.mpf(c.re.numerator) / c.re.denominator,
        mpmath.mpf(c.im.numerator) / c.im.denominator,
    )


def _mpf_fraction(x) -> Fraction:
    sign, man, exp, _ = mpmath.mpf(x)._mpf_
    value = Fraction(man) * (Fraction(2) ** exp)
    return -value if sign else value


def _approx_roots_mp(p: Polynomial) -> list:
    with mpmath.workdps(_ROOT_DPS):
        coeffs = [_to_mpc(c) for c in reversed(p.coeffs)]
        try:
            return list(mpmath.polyroots(coeffs, maxsteps=400, extraprec=4 * _ROOT_DPS))
        except mpmath.libmp.libhyper.NoConvergence:
            return [mpmath.mpc(z) for z in float_roots(p.to_float())]


def _rationalize(z) -> list[GaussianRational]:
    re, im = _mpf_fraction(z.real), _mpf_fraction(z.imag)
    seen, out = set(), []
    for bound in _DENOM_BOUNDS:
        cand = GaussianRational(re.limit_denominator(bound), im.limit_denominator(bound))
        if cand not in seen:
            seen.add(cand)
            out.append(cand)
    return out


def _deflate(p: Polynomial, r: GaussianRational) -> Polynomial:
    q, rem = poly_divmod(p, Polynomial([-r, 1]))
    assert rem.is_zero
    return q


def exact_roots(p: Polynomial, hints: Iterable = ()) -> tuple[list[GaussianRational], Polynomial]:
    """Split off every Q(i)-rational root of a squarefree exact polynomial.

    Candidates come from the caller's ``hints`` and from rationalizing
    high-precision numerical roots at increasing denominator bounds; each
    candidate is accepted only after exact evaluation to zero. Returns the
    roots found and the monic residual factor carrying no such root.
    """
    if not p.exact or p.is_zero:
        raise ValueError("exact_roots needs a nonzero exact polynomial")
    p = p.monic()
    roots: list[GaussianRational] = []
    for h in hints:
        if p.degree == 0:
            break
        h = GaussianRational.coerce(h)
        if h not in roots and p(h) == 0:
            roots.append(h)
            p = _deflate(p, h)
    while p.degree and p.coeffs[0] == 0:
        roots.append(GR(0))
        p = _deflate(p, GR(0))
    if p.degree == 1:
        roots.append(-p.coeffs[0])
        return roots, Polynomial([1])
    if p.degree and p.degree > 1:
        for z in _approx_roots_mp(p):
            if p.degree == 0:
                break
            for cand in _rationalize(z):
                if p(cand) == 0:
                    roots.append(cand)
                    p = _deflate(p, cand)
                    break
            if p.degree == 1:
                roots.append(-p.coeffs[0])
                p = Polynomial([1])
    return roots, p


def float_roots(p: Polynomial) -> list[complex]:
    """Roots by companion-matrix eigenvalues (numpy)."""
    if p.is_zero:
        raise ValueError("the zero polynomial has no finite root set")
    cs = np.array([complex(c) for c in p.coeffs], dtype=complex)
    if len(cs) <= 1:
        return []
    return [complex(z) for z in np.polynomial.polynomial.polyroots(cs)]

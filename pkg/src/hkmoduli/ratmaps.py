"""Rational self-maps of the projective line and their critical divisors.

A map of degree ``l`` is a pair of coprime binary forms ``[P : Q]`` of degree
``l``. Its critical points are the zeros of the Wronskian
``W = dP/dz1 * dQ/dz2 - dP/dz2 * dQ/dz1``, a form of degree ``2l - 2``.

Multiplicity convention: the multiplicity of a critical point is the vanishing
order of ``W`` there, which is the ramification index minus one. A polynomial
map of degree ``n`` thus has multiplicity ``n - 1`` at infinity.
"""

from __future__ import annotations

from collections import Counter
from typing import Iterable, Iterator, Mapping

from .errors import ValidationError
from .gaussian import GR
from .poly import (
    HomogeneousForm,
    Polynomial,
    exact_roots,
    float_roots,
    resultant,
    squarefree_decomposition,
)
from .projective import INF, MobiusMap, ProjPoint, apply, pt

__all__ = [
    "RationalMap",
    "WeightedConfig",
    "point_sort_key",
    "wronskian",
    "critical_divisor",
    "critical_divisor_float",
    "hurwitz_check",
    "precompose",
    "postcompose",
]


class RationalMap:
    __slots__ = ("num", "den")

    def __init__(self, num: HomogeneousForm, den: HomogeneousForm):
        if num.degree != den.degree:
            raise ValidationError("numerator and denominator must have the same degree")
        if num.degree < 1:
            raise ValidationError("a rational map must have degree at least 1")
        if num.exact != den.exact:
            raise ValidationError("cannot mix exact and float forms")
        if resultant(num, den) == 0:
            raise ValidationError("numerator and denominator share a root (map is not reduced)")
        self.num = num
        self.den = den

    @classmethod
    def from_coeffs(cls, num: Iterable, den: Iterable, exact: bool = True) -> "RationalMap":
        num, den = list(num), list(den)
        return cls(HomogeneousForm(len(num) - 1, num, exact), HomogeneousForm(len(den) - 1, den, exact))

    @property
    def degree(self) -> int:
        return self.num.degree

    @property
    def exact(self) -> bool:
        return self.num.exact

    def __call__(self, p: ProjPoint) -> ProjPoint:
        return ProjPoint(self.num(p.z1, p.z2), self.den(p.z1, p.z2))

    def to_float(self) -> "RationalMap":
        return RationalMap(self.num.to_float(), self.den.to_float())

    def __eq__(self, other):
        if isinstance(other, RationalMap):
            return self.num == other.num and self.den == other.den
        return NotImplemented

    def __hash__(self):
        return hash((self.num, self.den))

    def __repr__(self):
        return f"RationalMap(num={list(self.num.coeffs)!r}, den={list(self.den.coeffs)!r})"

    def to_json(self) -> dict:
        return {"degree": self.degree, "num": self.num.coeffs_json(), "den": self.den.coeffs_json()}

    @classmethod
    def from_json(cls, obj) -> "RationalMap":
        try:
            d = obj["degree"]
            num = [GR.from_json(c) for c in obj["num"]]
            den = [GR.from_json(c) for c in obj["den"]]
        except (KeyError, TypeError, ValueError) as exc:
            raise ValidationError(f"malformed rational map: {exc}") from exc
        if not isinstance(d, int) or len(num) != d + 1 or len(den) != d + 1:
            raise ValidationError("coefficient lists must have length degree + 1")
        return cls(HomogeneousForm(d, num), HomogeneousForm(d, den))


def point_sort_key(point: ProjPoint, mult: int) -> tuple:
    """Canonical ordering: affine points by (multiplicity, re, im), infinity last."""
    if point.is_infinity:
        return (1, mult)
    z = point.z1
    if point.exact:
        return (0, mult, z.re, z.im)
    return (0, mult, z.real, z.imag)


class WeightedConfig:
    """Finitely many distinct points of the sphere with positive multiplicities.

    ``certified`` is False when some points are only float approximations;
    the multiplicities are exact either way.
    """

    __slots__ = ("entries", "certified", "_index")

    def __init__(self, items: Mapping[ProjPoint, int] | Iterable[tuple[ProjPoint, int]], certified: bool = True):
        pairs = list(items.items()) if isinstance(items, Mapping) else list(items)
        index: dict[ProjPoint, int] = {}
        for p, m in pairs:
            if not isinstance(p, ProjPoint):
                raise ValidationError(f"not a ProjPoint: {p!r}")
            if not isinstance(m, int) or isinstance(m, bool) or m < 1:
                raise ValidationError(f"multiplicity must be a positive integer, got {m!r}")
            if p in index:
                raise ValidationError(f"point {p!r} listed twice")
            index[p] = m
        self.entries: tuple[tuple[ProjPoint, int], ...] = tuple(
            sorted(index.items(), key=lambda e: point_sort_key(*e))
        )
        self.certified = certified and all(p.exact for p in index)
        self._index = index

    @classmethod
    def of(cls, spec: Mapping, certified: bool = True) -> "WeightedConfig":
        """Build from ``{value_or_"inf": mult}``."""
        return cls({pt(k): v for k, v in spec.items()}, certified)

    def __iter__(self) -> Iterator[tuple[ProjPoint, int]]:
        return iter(self.entries)

    def __len__(self):
        return len(self.entries)

    def __contains__(self, p):
        return p in self._index

    def mult(self, p: ProjPoint) -> int:
        return self._index.get(p, 0)

    @property
    def points(self) -> list[ProjPoint]:
        return [p for p, _ in self.entries]

    @property
    def total_weight(self) -> int:
        return sum(m for _, m in self.entries)

    def multiplicities(self) -> Counter:
        return Counter(m for _, m in self.entries)

    def transform(self, m: MobiusMap) -> "WeightedConfig":
        return WeightedConfig([(apply(m, p), k) for p, k in self.entries], self.certified)

    def __eq__(self, other):
        if isinstance(other, WeightedConfig):
            return self.entries == other.entries
        return NotImplemented

    def __hash__(self):
        return hash(self.entries)

    def __repr__(self):
        body = ", ".join(f"{'inf' if p.is_infinity else p.z1}: {m}" for p, m in self.entries)
        flag = "" if self.certified else ", certified=False"
        return f"WeightedConfig({{{body}}}{flag})"

    def to_json(self) -> dict:
        return {
            "points": [{"point": p.to_json(), "mult": m} for p, m in self.entries],
            "certified": self.certified,
        }

    @classmethod
    def from_json(cls, obj) -> "WeightedConfig":
        try:
            pairs = [(ProjPoint.from_json(e["point"]), e["mult"]) for e in obj["points"]]
            certified = obj.get("certified", True)
        except (KeyError, TypeError, ValueError) as exc:
            raise ValidationError(f"malformed configuration: {exc}") from exc
        if not isinstance(certified, bool):
            raise ValidationError("'certified' must be a boolean")
        return cls(pairs, certified)


def wronskian(f: RationalMap) -> HomogeneousForm:
    p, q = f.num, f.den
    w = p.d1() * q.d2() - p.d2() * q.d1()
    if w.is_zero:
        raise ValidationError("identically zero Wronskian: the map is constant or not reduced")
    return w


def critical_divisor(f: RationalMap, hints: Iterable = ()) -> WeightedConfig:
    """Critical points of ``f`` with multiplicities, exact where possible.

    Roots of the Wronskian are split into multiplicity strata exactly
    (squarefree decomposition). Within each stratum, Q(i)-rational roots are
    extracted exactly (``hints`` are tried first); any remaining factor is
    solved in floating point and the result is flagged non-certified.
    """
    if not f.exact:
        raise ValidationError("critical_divisor needs an exact map; see critical_divisor_float")
    hints = list(hints)
    w = wronskian(f)
    points: dict[ProjPoint, int] = {}
    certified = True
    inf_order = w.order_at_infinity()
    if inf_order:
        points[INF] = inf_order
    affine = w.dehomogenize()
    if affine.degree:
        for stratum, mult in squarefree_decomposition(affine):
            roots, residual = exact_roots(stratum, hints)
            for r in roots:
                points[ProjPoint(r)] = mult
            if residual.degree:
                certified = False
                for z in float_roots(residual.to_float()):
                    points[ProjPoint(z, 1.0)] = mult
    return WeightedConfig(points, certified)


def critical_divisor_float(f: RationalMap, cluster_tol: float = 1e-4, zero_tol: float = 1e-12) -> WeightedConfig:
    """Heuristic float-only critical divisor.

    Wronskian roots come from companion-matrix eigenvalues and are clustered
    greedily within ``cluster_tol`` to estimate multiplicities. Always
    non-certified.
    """
    w = wronskian(f).to_float() if f.exact else wronskian(f)
    coeffs = list(w.coeffs)
    scale = max(abs(c) for c in coeffs)
    while coeffs and abs(coeffs[-1]) <= zero_tol * scale:
        coeffs.pop()
    points: dict[ProjPoint, int] = {}
    inf_order = w.degree - (len(coeffs) - 1)
    if inf_order:
        points[ProjPoint(1.0, 0.0)] = inf_order
    clusters: list[list[complex]] = []
    for z in float_roots(Polynomial(coeffs, exact=False)):
        for cl in clusters:
            if abs(z - sum(cl) / len(cl)) <= cluster_tol * max(1.0, abs(z)):
                cl.append(z)
                break
        else:
            clusters.append([z])
    for cl in clusters:
        centre = ProjPoint(sum(cl) / len(cl), 1.0)
        points[centre] = points.get(centre, 0) + len(cl)
    return WeightedConfig(points, certified=False)


def hurwitz_check(f: RationalMap, config: WeightedConfig | None = None) -> bool:
    """Total critical weight equals ``2 * deg - 2``."""
    if config is None:
        config = critical_divisor(f)
    return config.total_weight == 2 * f.degree - 2


def precompose(f: RationalMap, m: MobiusMap) -> RationalMap:
    """The map ``f o m``."""
    a, b, c, d = m.a, m.b, m.c, m.d
    if f.exact and not m.exact:
        f = f.to_float()
    return RationalMap(f.num.substitute(a, b, c, d), f.den.substitute(a, b, c, d))


def postcompose(m: MobiusMap, f: RationalMap) -> RationalMap:
    """The map ``m o f``."""
    return RationalMap(f.num * m.a + f.den * m.b, f.num * m.c + f.den * m.d)

"""Points of the Riemann sphere and Möbius transformations.

Points are homogeneous pairs ``[z1 : z2]``. On construction they are scaled to
the canonical representative ``[z : 1]`` or ``[1 : 0]`` (the point at
infinity), so equality and hashing are plain tuple comparisons. The affine
versus infinity split only shows up in :meth:`ProjPoint.to_json`.

Cross-ratio convention: ``cross_ratio(z, p, q, r)`` is the image of ``z`` under
the Möbius map sending ``p, q, r`` to ``0, 1, inf``, i.e.
``((z-p)(q-r)) / ((z-r)(q-p))``.
"""

from __future__ import annotations

from typing import Sequence

from .gaussian import GR, GaussianRational

__all__ = [
    "ProjPoint",
    "MobiusMap",
    "INF",
    "ZERO",
    "ONE",
    "pt",
    "cross_ratio",
    "normalizing_map",
    "mobius_from_triples",
    "apply",
]

# |z2| below this fraction of |z1| is read as the point at infinity (float only).
FLOAT_INF_RTOL = 1e-14


def _is_zero(x) -> bool:
    return x == 0


class ProjPoint:
    __slots__ = ("z1", "z2")

    def __init__(self, z1, z2=1):
        if isinstance(z1, (float, complex)) or isinstance(z2, (float, complex)):
            z1, z2 = complex(z1), complex(z2)
            if z1 == 0 and z2 == 0:
                raise ValueError("[0:0] is not a point of the projective line")
            if abs(z2) <= FLOAT_INF_RTOL * abs(z1):
                self.z1, self.z2 = complex(1), complex(0)
            else:
                self.z1, self.z2 = z1 / z2, complex(1)
            return
        z1, z2 = GaussianRational.coerce(z1), GaussianRational.coerce(z2)
        if _is_zero(z2):
            if _is_zero(z1):
                raise ValueError("[0:0] is not a point of the projective line")
            self.z1, self.z2 = GR(1), GR(0)
        else:
            self.z1, self.z2 = z1 / z2, GR(1)

    @property
    def is_infinity(self) -> bool:
        return self.z2 == 0

    @property
    def exact(self) -> bool:
        return isinstance(self.z1, GaussianRational)

    @property
    def affine(self):
        """The coordinate z1/z2, or None at infinity."""
        return None if self.is_infinity else self.z1

    def to_float(self) -> "ProjPoint":
        if self.is_infinity:
            return ProjPoint(1.0, 0.0)
        return ProjPoint(complex(self.z1), 1.0)

    def __eq__(self, other):
        if isinstance(other, ProjPoint):
            return self.z1 == other.z1 and self.z2 == other.z2
        return NotImplemented

    def __hash__(self):
        return hash((self.z1, self.z2))

    def __repr__(self):
        return "ProjPoint(inf)" if self.is_infinity else f"ProjPoint({self.z1!r})"

    def to_json(self):
        if self.is_infinity:
            return "inf"
        if self.exact:
            return {"z": self.z1.to_json()}
        return {"z": {"re": self.z1.real, "im": self.z1.imag}}

    @classmethod
    def from_json(cls, obj) -> "ProjPoint":
        if obj == "inf":
            return INF
        if not isinstance(obj, dict) or set(obj) != {"z"}:
            raise ValueError(f"malformed point {obj!r}")
        z = obj["z"]
        if isinstance(z, dict) and isinstance(z.get("re"), (int, float)) and not isinstance(z.get("re"), bool):
            return cls(complex(z["re"], z["im"]), 1.0)
        return cls(GR.from_json(z))


INF = ProjPoint(1, 0)
ZERO = ProjPoint(0)
ONE = ProjPoint(1)


def pt(value) -> ProjPoint:
    """Shorthand: ``pt("inf")`` or ``pt(number)``."""
    if isinstance(value, ProjPoint):
        return value
    if value == "inf" or value is None:
        return INF
    if isinstance(value, (float, complex)):
        return ProjPoint(complex(value), 1.0)
    return ProjPoint(value)


def _bracket(p: ProjPoint, q: ProjPoint):
    return p.z1 * q.z2 - p.z2 * q.z1


class MobiusMap:
    """An invertible 2x2 matrix up to scale, acting by ``z -> (az+b)/(cz+d)``.

    Stored scaled so that the first nonzero entry in row-major order is 1.
    """

    __slots__ = ("a", "b", "c", "d")

    def __init__(self, a, b, c, d):
        entries = [a, b, c, d]
        if any(isinstance(x, (float, complex)) for x in entries):
            entries = [complex(x) for x in entries]
        else:
            entries = [GaussianRational.coerce(x) for x in entries]
        a, b, c, d = entries
        if a * d - b * c == 0:
            raise ValueError("Möbius matrix must have nonzero determinant")
        lead = next(x for x in entries if x != 0)
        self.a, self.b, self.c, self.d = (x / lead for x in entries)

    @classmethod
    def identity(cls) -> "MobiusMap":
        return cls(1, 0, 0, 1)

    @classmethod
    def from_matrix(cls, m: Sequence[Sequence]) -> "MobiusMap":
        (a, b), (c, d) = m
        return cls(a, b, c, d)

    @property
    def matrix(self):
        return ((self.a, self.b), (self.c, self.d))

    @property
    def exact(self) -> bool:
        return isinstance(self.a, GaussianRational)

    def det(self):
        return self.a * self.d - self.b * self.c

    def __call__(self, p: ProjPoint) -> ProjPoint:
        return apply(self, p)

    def __matmul__(self, other: "MobiusMap") -> "MobiusMap":
        """Composition: ``(self @ other)(p) == self(other(p))``."""
        return MobiusMap(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    def inverse(self) -> "MobiusMap":
        return MobiusMap(self.d, -self.b, -self.c, self.a)

    def __eq__(self, other):
        if isinstance(other, MobiusMap):
            return self.matrix == other.matrix
        return NotImplemented

    def __hash__(self):
        return hash(self.matrix)

    def __repr__(self):
        return f"MobiusMap([[{self.a!r}, {self.b!r}], [{self.c!r}, {self.d!r}]])"

    def to_json(self) -> dict:
        if not self.exact:
            return {"m": [[{"re": x.real, "im": x.imag} for x in row] for row in self.matrix]}
        return {"m": [[x.to_json() for x in row] for row in self.matrix]}

    @classmethod
    def from_json(cls, obj) -> "MobiusMap":
        rows = obj["m"]
        if len(rows) != 2 or any(len(r) != 2 for r in rows):
            raise ValueError("Möbius matrix must be 2x2")
        return cls.from_matrix([[GR.from_json(x) for x in r] for r in rows])


def apply(m: MobiusMap, p: ProjPoint) -> ProjPoint:
    if m.exact and not p.exact:
        m = MobiusMap(*(complex(x) for x in (m.a, m.b, m.c, m.d)))
    elif p.exact and not m.exact:
        p = p.to_float()
    return ProjPoint(m.a * p.z1 + m.b * p.z2, m.c * p.z1 + m.d * p.z2)


def _check_triple(p: ProjPoint, q: ProjPoint, r: ProjPoint):
    if p == q or q == r or p == r:
        raise ValueError("degenerate triple: points must be pairwise distinct")


def normalizing_map(p: ProjPoint, q: ProjPoint, r: ProjPoint) -> MobiusMap:
    """The Möbius map sending ``(p, q, r)`` to ``(0, 1, inf)``."""
    _check_triple(p, q, r)
    # z -> [z,p][q,r] / ([z,r][q,p]) with [u,v] = u1 v2 - u2 v1
    c1 = _bracket(q, r)
    c3 = _bracket(q, p)
    return MobiusMap(p.z2 * c1, -p.z1 * c1, r.z2 * c3, -r.z1 * c3)


def cross_ratio(z: ProjPoint, p: ProjPoint, q: ProjPoint, r: ProjPoint) -> ProjPoint:
    return apply(normalizing_map(p, q, r), z)


def mobius_from_triples(p1, p2, p3, q1, q2, q3) -> MobiusMap:
    """The unique Möbius map with ``m(p_i) = q_i``."""
    return normalizing_map(q1, q2, q3).inverse() @ normalizing_map(p1, p2, p3)

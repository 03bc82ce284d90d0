"""Möbius equivalence of weighted point configurations.

Two configurations are equivalent when some Möbius map carries one onto the
other, points and multiplicities both. Because the Möbius group acts sharply
3-transitively, a candidate map is pinned down by where it sends any three
distinct points, so the decision reduces to a finite search over ordered
triples of the target.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass

from .errors import ValidationError
from .gaussian import GR
from .projective import INF, ONE, ZERO, MobiusMap, ProjPoint, apply, mobius_from_triples, normalizing_map
from .ratmaps import WeightedConfig, point_sort_key

__all__ = [
    "FLOAT_TOL",
    "EquivalenceResult",
    "find_equivalence",
    "are_equivalent",
    "verify_witness",
    "canonical_fingerprint",
]

FLOAT_TOL = 1e-9

# Points tried, in order, when a configuration has too few points to pin a map.
_AUX = [ZERO, ONE, INF] + [ProjPoint(GR(k)) for k in (2, -1, 3, -2)]


@dataclass(frozen=True)
class EquivalenceResult:
    witness: MobiusMap | None
    triples_tested: int
    mode: str

    @property
    def equivalent(self) -> bool:
        return self.witness is not None

    def to_json(self) -> dict:
        return {
            "equivalent": self.equivalent,
            "witness": None if self.witness is None else self.witness.to_json(),
            "mode": self.mode,
        }


def _float_config(c: WeightedConfig) -> WeightedConfig:
    return WeightedConfig([(p.to_float(), m) for p, m in c], certified=False)


def _close(p: ProjPoint, q: ProjPoint, tol: float) -> bool:
    if p.is_infinity or q.is_infinity:
        return p.is_infinity and q.is_infinity
    return abs(complex(p.z1) - complex(q.z1)) <= tol


def _lookup_float(d: WeightedConfig, p: ProjPoint, tol: float) -> int:
    for q, m in d:
        if _close(p, q, tol):
            return m
    return 0


def verify_witness(m: MobiusMap, c: WeightedConfig, d: WeightedConfig, tol: float | None = None) -> bool:
    """True iff ``m`` maps ``c`` onto ``d`` with multiplicities preserved.

    Exact by default; pass ``tol`` to compare float points.
    """
    if len(c) != len(d):
        return False
    for p, mult in c:
        image = apply(m, p)
        got = d.mult(image) if tol is None else _lookup_float(d, image, tol)
        if got != mult:
            return False
    return True


def _aux_points(avoid: list[ProjPoint], n: int) -> list[ProjPoint]:
    out = [p for p in _AUX if p not in avoid]
    return out[:n]


def _small_witness(c: WeightedConfig, d: WeightedConfig) -> MobiusMap:
    # one or two points; multiplicity multisets already agree
    cs, ds = c.points, d.points
    if len(cs) == 0:
        return MobiusMap.identity()
    if len(cs) == 2 and c.mult(cs[0]) != d.mult(ds[0]):
        ds = [ds[1], ds[0]]
    src = cs + _aux_points(cs, 3 - len(cs))
    dst = ds + _aux_points(ds, 3 - len(ds))
    return mobius_from_triples(*src, *dst)


def find_equivalence(c: WeightedConfig, d: WeightedConfig, mode: str = "exact") -> EquivalenceResult:
    """Search for a Möbius map carrying ``c`` onto ``d``.

    The first three points of ``c`` in canonical order are held fixed; every
    ordered triple of distinct points of ``d`` with matching multiplicities
    yields one candidate, which is accepted only if it maps all of ``c`` onto
    ``d``. In ``"float"`` mode points are compared within ``FLOAT_TOL`` and
    the answer is heuristic.
    """
    if mode not in ("exact", "float"):
        raise ValidationError(f"unknown mode {mode!r}")
    if mode == "exact":
        if not (c.certified and d.certified):
            raise ValidationError("exact equivalence needs certified (exact) configurations")
        tol = None
    else:
        c, d = _float_config(c), _float_config(d)
        tol = FLOAT_TOL

    if c.multiplicities() != d.multiplicities():
        return EquivalenceResult(None, 0, mode)
    if len(c) <= 2:
        return EquivalenceResult(_small_witness(c, d), 0, mode)

    (p1, m1), (p2, m2), (p3, m3) = c.entries[:3]
    by_mult: dict[int, list[ProjPoint]] = {}
    for q, m in d:
        by_mult.setdefault(m, []).append(q)
    tested = 0
    for q1 in by_mult.get(m1, ()):
        for q2 in by_mult.get(m2, ()):
            if q2 == q1:
                continue
            for q3 in by_mult.get(m3, ()):
                if q3 == q1 or q3 == q2:
                    continue
                tested += 1
                cand = mobius_from_triples(p1, p2, p3, q1, q2, q3)
                if verify_witness(cand, c, d, tol):
                    return EquivalenceResult(cand, tested, mode)
    return EquivalenceResult(None, tested, mode)


def are_equivalent(c: WeightedConfig, d: WeightedConfig, mode: str = "exact") -> MobiusMap | None:
    return find_equivalence(c, d, mode).witness


def _key_json(entries) -> list:
    return [{"point": p.to_json(), "mult": m} for p, m in entries]


def canonical_fingerprint(c: WeightedConfig) -> str:
    """A string that two configurations share iff they are Möbius equivalent.

    Every ordered triple of distinct points whose multiplicities are the three
    smallest of the configuration (in order) is sent to ``(0, 1, inf)``; the
    normalized configuration with the least canonical sort key wins and is
    serialized. With at most two points only the multiplicities survive.
    """
    if not c.certified:
        raise ValidationError("fingerprints are only defined for certified configurations")
    mults = sorted(m for _, m in c)
    if len(c) <= 2:
        return json.dumps({"mults": mults}, separators=(",", ":"))
    target = mults[:3]
    pools = [[p for p, m in c if m == t] for t in target]
    best_key = best_entries = None
    for p, q, r in itertools.product(*pools):
        if p == q or q == r or p == r:
            continue
        norm = normalizing_map(p, q, r)
        entries = sorted(((apply(norm, x), m) for x, m in c), key=lambda e: point_sort_key(*e))
        key = [point_sort_key(*e) for e in entries]
        if best_key is None or key < best_key:
            best_key, best_entries = key, entries
    return json.dumps({"points": _key_json(best_entries)}, separators=(",", ":"), sort_keys=True)

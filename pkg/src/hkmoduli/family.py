"""The polynomial families ``P_a(z) = int_0^z t^2 (t-1)^3 (t-a_1)...(t-a_N) dt``.

Each parameter tuple ``a`` with ``|a_j - 2j| < 1`` gives a degree ``N + 6``
polynomial self-map of the sphere fixing infinity. Its critical points are
``0`` (multiplicity 2), ``1`` (3), infinity (``N + 5``) and each ``a_j`` (1).
Since 0, 1 and infinity carry distinct multiplicities, any Möbius map between
two such critical configurations fixes all three and is therefore the
identity; distinct parameter tuples give inequivalent configurations.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Sequence

from .configs import find_equivalence, verify_witness
from .errors import InvariantViolation, ValidationError
from .gaussian import GR, GaussianRational
from .poly import HomogeneousForm, Polynomial, homogenize, integrate_from_zero
from .projective import INF, ProjPoint
from .ratmaps import RationalMap, WeightedConfig, critical_divisor

__all__ = [
    "ParamError",
    "FamilyParams",
    "PolydiskPoint",
    "FamilyDerivative",
    "family_derivative",
    "family_map",
    "family_config",
    "phi",
    "distinguish",
    "distinguish_configs",
]


class ParamError(ValidationError):
    def __init__(self, message: str, index: int | None = None):
        super().__init__(message)
        self.index = index


@dataclass(frozen=True)
class FamilyParams:
    N: int
    a: tuple[GaussianRational, ...]

    def __init__(self, N: int, a: Sequence = ()):
        a = tuple(GaussianRational.coerce(x) for x in a)
        if not isinstance(N, int) or isinstance(N, bool) or N < 0:
            raise ParamError(f"N must be a non-negative integer, got {N!r}")
        if len(a) != N:
            raise ParamError(f"expected {N} parameters, got {len(a)}")
        for j, aj in enumerate(a, start=1):
            if (aj - 2 * j).norm_sq() >= 1:
                raise ParamError(f"|a_{j} - {2 * j}| < 1 violated by a_{j} = {aj}", index=j)
        # implied by the disk constraints; checked anyway since certificates lean on it
        pts = [GR(0), GR(1), *a]
        if len(set(pts)) != len(pts):
            raise InvariantViolation("0, 1, a_1..a_N are not pairwise distinct")
        object.__setattr__(self, "N", N)
        object.__setattr__(self, "a", a)

    def to_json(self) -> dict:
        return {"N": self.N, "a": [x.to_json() for x in self.a]}

    @classmethod
    def from_json(cls, obj) -> "FamilyParams":
        try:
            return cls(obj["N"], [GR.from_json(x) for x in obj["a"]])
        except (KeyError, TypeError) as exc:
            raise ParamError(f"malformed family parameters: {exc}") from exc
        except ValueError as exc:
            if isinstance(exc, ValidationError):
                raise
            raise ParamError(str(exc)) from exc


@dataclass(frozen=True)
class PolydiskPoint:
    u: tuple[GaussianRational, ...]

    def __init__(self, u: Sequence):
        u = tuple(GaussianRational.coerce(x) for x in u)
        for j, uj in enumerate(u, start=1):
            if uj.norm_sq() >= 1:
                raise ParamError(f"|u_{j}| < 1 violated by u_{j} = {uj}", index=j)
        object.__setattr__(self, "u", u)


@dataclass(frozen=True)
class FamilyDerivative:
    poly: Polynomial
    factors: tuple[tuple[GaussianRational, int], ...] = field(default=())


def family_derivative(params: FamilyParams) -> FamilyDerivative:
    """``t^2 (t-1)^3 prod (t - a_j)``, expanded and in factored form."""
    factors = [(GR(0), 2), (GR(1), 3)] + [(aj, 1) for aj in params.a]
    t = Polynomial.x()
    p = Polynomial([1])
    for root, mult in factors:
        p = p * (t - root) ** mult
    return FamilyDerivative(p, tuple(factors))


def family_map(params: FamilyParams) -> RationalMap:
    n = params.N + 6
    num = homogenize(integrate_from_zero(family_derivative(params).poly), n)
    den = HomogeneousForm(n, [1] + [0] * n)
    return RationalMap(num, den)


def family_config(params: FamilyParams) -> WeightedConfig:
    """Critical configuration from the factored derivative, cross-checked
    against the Wronskian of the homogenized map."""
    deriv = family_derivative(params)
    expected = WeightedConfig(
        [(ProjPoint(r), m) for r, m in deriv.factors] + [(INF, params.N + 5)]
    )
    f = family_map(params)
    computed = critical_divisor(f)
    if not computed.certified:
        computed = critical_divisor(f, hints=[r for r, _ in deriv.factors])
    if computed != expected:
        raise InvariantViolation(
            f"factored-form and Wronskian critical divisors disagree: {expected!r} vs {computed!r}"
        )
    return expected


def phi(u: PolydiskPoint) -> FamilyParams:
    """Polydisk coordinates to parameters: ``a_j = u_j + 2j``."""
    return FamilyParams(len(u.u), [uj + 2 * j for j, uj in enumerate(u.u, start=1)])


def _forced_identity_reason(n: int) -> str:
    return (
        f"0, 1 and inf carry the unique multiplicities 2, 3 and {n + 5}; "
        "a witness must fix them and hence be the identity"
    )


def distinguish_configs(configs: Sequence[WeightedConfig], workers: int = 1, reasons: Sequence[str] | None = None) -> dict:
    """Pairwise exact equivalence tests; the output order never depends on ``workers``."""
    pairs = [(i, j) for i in range(len(configs)) for j in range(i + 1, len(configs))]

    def run(ij):
        i, j = ij
        res = find_equivalence(configs[i], configs[j])
        entry = {"i": i, "j": j, "equivalent": res.equivalent, "triples_tested": res.triples_tested}
        if res.equivalent:
            if not verify_witness(res.witness, configs[i], configs[j]):
                raise InvariantViolation(f"witness for pair ({i}, {j}) does not verify")
            entry["witness"] = res.witness.to_json()
        elif reasons is not None:
            entry["reason"] = reasons[i] if reasons[i] == reasons[j] else "multiplicity multisets differ"
        return entry

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(run, pairs))
    else:
        results = [run(ij) for ij in pairs]
    return {
        "n_params": len(configs),
        "pairs": results,
        "all_distinct": not any(r["equivalent"] for r in results),
    }


def distinguish(params_list: Sequence[FamilyParams], workers: int = 1) -> dict:
    """Certificate that the family members are pairwise inequivalent (or a witness that two are not)."""
    ns = {p.N for p in params_list}
    if len(ns) > 1:
        raise ValidationError(f"all parameter tuples must share N, got {sorted(ns)}")
    configs = [family_config(p) for p in params_list]
    reasons = [_forced_identity_reason(p.N) for p in params_list]
    cert = distinguish_configs(configs, workers=workers, reasons=reasons)
    cert["N"] = ns.pop() if ns else None
    return cert

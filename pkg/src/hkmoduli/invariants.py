"""Degree bookkeeping for pulled-back twistor families.

For a hyper-Kähler ``X`` of real dimension ``4k`` and a degree-``l`` map
``f`` of the sphere, the pulled-back family over the sphere has canonical
bundle equal to the pullback of ``O(-2kl - 2)``: the branch divisor
contributes ``2l - 2`` and the pullback of ``K_Z = O(-2k - 2)`` contributes
``l(-2k - 2)``.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import InvariantViolation, ValidationError

__all__ = [
    "TwistorData",
    "CanonicalDegree",
    "canonical_degree",
    "root_exponent",
    "anticanonical_root_sections",
    "ahat_irreducible",
    "chern_c1_ahat",
    "component_separation",
    "summary",
]


def _positive(name: str, v) -> int:
    if not isinstance(v, int) or isinstance(v, bool) or v < 1:
        raise ValidationError(f"{name} must be a positive integer, got {v!r}")
    return v


@dataclass(frozen=True)
class TwistorData:
    k: int
    ell: int
    irreducible: bool = True

    def __post_init__(self):
        _positive("k", self.k)
        _positive("ell", self.ell)


@dataclass(frozen=True)
class CanonicalDegree:
    value: int
    branch: int
    pullback: int
    k: int
    ell: int

    @property
    def derivation(self) -> str:
        k, ell = self.k, self.ell
        return (
            f"(2*{ell}-2) + {ell}*(-2*{k}-2) = {self.branch} + ({self.pullback}) "
            f"= {self.value} = -2*{k}*{ell}-2"
        )


def canonical_degree(d: TwistorData) -> CanonicalDegree:
    k, ell = d.k, d.ell
    branch = 2 * ell - 2
    pullback = ell * (-2 * k - 2)
    value = -2 * k * ell - 2
    if branch + pullback != value:
        raise InvariantViolation(f"degree audit failed for k={k}, ell={ell}")
    return CanonicalDegree(value, branch, pullback, k, ell)


def root_exponent(d: TwistorData) -> int:
    """Power of the pulled-back O(1) that gives the anticanonical bundle."""
    return 2 * d.k * d.ell + 2


def anticanonical_root_sections(d: TwistorData) -> int:
    # sections of the root are pulled back from O(1) on the sphere
    return 2


def ahat_irreducible(k: int) -> int:
    return _positive("k", k) + 1


def chern_c1_ahat(d: TwistorData) -> int:
    """``c1 * Ahat`` evaluated on the pulled-back family: ``2(kl + 1)(k + 1)``."""
    if not d.irreducible:
        raise ValidationError("Ahat(X) is only known here for irreducible X")
    return root_exponent(d) * ahat_irreducible(d.k)


def component_separation(d1: TwistorData, d2: TwistorData) -> bool:
    if d1.k != d2.k:
        raise ValidationError("comparison needs equal k")
    return chern_c1_ahat(d1) != chern_c1_ahat(d2)


def summary(d: TwistorData) -> dict:
    cd = canonical_degree(d)
    return {
        "canonical_degree": cd.value,
        "derivation": cd.derivation,
        "root_exponent": root_exponent(d),
        "h0_root": anticanonical_root_sections(d),
        "c1_ahat": chern_c1_ahat(d),
        "ahat": ahat_irreducible(d.k),
    }

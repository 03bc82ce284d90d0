"""Pointwise hyper-Kähler linear algebra on the model space H^k = R^{4k}.

Conventions
-----------
* ``J1, J2, J3`` are LEFT multiplication by ``i, j, k`` on column quaternions
  in the real basis ``(1, i, j, k)`` of each quaternionic coordinate, so
  ``J1 @ J2 == J3`` and all matrices are integer.
* ``g`` is the standard inner product and ``omega_a(u, v) = g(J_a u, v)``,
  stored as the matrix ``Omega_a`` with ``omega_a(u, v) = u^T Omega_a v``.
* Complexified vectors are pairs of real vectors (:class:`CVec`), which keeps
  the exact backend inside rational arithmetic. ``g`` and the ``omega_a``
  extend complex-bilinearly.
* Contraction ``w ⌟ beta`` inserts ``w`` into the FIRST slot of ``beta``; a
  1-form ``u -> sum_i c_i u_i`` is stored as its coefficient vector ``c``.
* ``v^{0,1} = (v + i J1 v) / 2`` and ``P^{1,0} w = (w - i J1 w) / 2``.

All matrices are numpy arrays: ``dtype=object`` holding ``Fraction`` for the
exact backend, ``float`` otherwise.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple

import numpy as np

from .errors import InvariantViolation, ValidationError
from .gaussian import GaussianRational
from .linalg import rank as exact_rank

__all__ = [
    "CONVENTIONS",
    "CVec",
    "HKFrame",
    "SpherePoint",
    "build_frame",
    "structure_at",
    "inverse_stereographic",
    "stereographic_coordinate",
    "stereographic_structure",
    "ks_representative",
    "FDCheck",
    "ks_finite_difference_check",
    "fd_convergence_order",
    "ContractionCheck",
    "contraction_identity",
    "twozero_nondegeneracy",
    "top_power_coefficient",
    "quaternion_relations_hold",
]

CONVENTIONS = {
    "quaternion_action": "left",
    "omega": "omega_a(u,v) = g(J_a u, v)",
    "contraction": "first slot",
    "v01": "(v + i J1 v)/2",
}

# left multiplication by i, j, k on (x0, x1, x2, x3) = x0 + x1 i + x2 j + x3 k
_QI = [[0, -1, 0, 0], [1, 0, 0, 0], [0, 0, 0, -1], [0, 0, 1, 0]]
_QJ = [[0, 0, -1, 0], [0, 0, 0, 1], [1, 0, 0, 0], [0, -1, 0, 0]]
_QK = [[0, 0, 0, -1], [0, 0, -1, 0], [0, 1, 0, 0], [1, 0, 0, 0]]


class CVec(NamedTuple):
    """Complexified vector ``re + i * im``."""

    re: np.ndarray
    im: np.ndarray

    def __add__(self, other):
        return CVec(self.re + other.re, self.im + other.im)

    def __sub__(self, other):
        return CVec(self.re - other.re, self.im - other.im)

    def __neg__(self):
        return CVec(-self.re, -self.im)

    def times(self, x, y=0) -> "CVec":
        """Multiply by the scalar ``x + i y``."""
        return CVec(x * self.re - y * self.im, x * self.im + y * self.re)

    def times_i(self) -> "CVec":
        return CVec(-self.im, self.re)

    def apply(self, a: np.ndarray) -> "CVec":
        if a.dtype == object:
            return CVec(_exact_matvec(a, self.re), _exact_matvec(a, self.im))
        return CVec(a @ self.re, a @ self.im)

    def is_zero(self) -> bool:
        return not (np.any(self.re != 0) or np.any(self.im != 0))

    def max_abs(self) -> float:
        return float(max(np.max(np.abs(self.re.astype(float))), np.max(np.abs(self.im.astype(float)))))

    def as_exact(self) -> list[GaussianRational]:
        return [GaussianRational(r, i) for r, i in zip(self.re, self.im)]

    def as_complex(self) -> np.ndarray:
        return self.re.astype(float) + 1j * self.im.astype(float)


def _exact_matvec(a: np.ndarray, x: np.ndarray) -> np.ndarray:
    # the structure matrices are mostly zeros and +-1; skipping those avoids
    # most Fraction arithmetic
    out = np.empty(a.shape[0], dtype=object)
    for i, row in enumerate(a):
        acc = Fraction(0)
        for aij, xj in zip(row, x):
            if aij == 0:
                continue
            if aij == 1:
                acc += xj
            elif aij == -1:
                acc -= xj
            else:
                acc += aij * xj
        out[i] = acc
    return out


def _frac_array(rows) -> np.ndarray:
    return np.array([[Fraction(x) for x in r] for r in rows], dtype=object)


def _block_diag(block, k: int, exact: bool) -> np.ndarray:
    m = np.kron(np.eye(k, dtype=int), np.array(block, dtype=int))
    return _frac_array(m.tolist()) if exact else m.astype(float)


def _identity(n: int, exact: bool) -> np.ndarray:
    return _frac_array(np.eye(n, dtype=int).tolist()) if exact else np.eye(n)


@dataclass(frozen=True, eq=False)
class HKFrame:
    k: int
    exact: bool
    J1: np.ndarray
    J2: np.ndarray
    J3: np.ndarray
    g: np.ndarray
    omega1: np.ndarray
    omega2: np.ndarray
    omega3: np.ndarray

    @property
    def dim(self) -> int:
        return 4 * self.k

    @property
    def identity(self) -> np.ndarray:
        return _identity(self.dim, self.exact)

    def J(self, alpha: int) -> np.ndarray:
        return (self.J1, self.J2, self.J3)[alpha - 1]

    def omega(self, alpha: int) -> np.ndarray:
        return (self.omega1, self.omega2, self.omega3)[alpha - 1]

    def cvec(self, v) -> CVec:
        """Embed a real or Gaussian-rational/complex vector into the complexification."""
        if isinstance(v, CVec):
            return v
        v = list(v)
        if len(v) != self.dim:
            raise ValidationError(f"expected a vector of length {self.dim}, got {len(v)}")
        if self.exact:
            zs = [GaussianRational.coerce(x) for x in v]
            return CVec(np.array([z.re for z in zs], dtype=object), np.array([z.im for z in zs], dtype=object))
        zs = np.asarray(v, dtype=complex)
        return CVec(zs.real.copy(), zs.imag.copy())


def build_frame(k: int, exact: bool = True) -> HKFrame:
    if not isinstance(k, int) or k < 1:
        raise ValidationError(f"k must be a positive integer, got {k!r}")
    j1, j2, j3 = (_block_diag(q, k, exact) for q in (_QI, _QJ, _QK))
    g = _identity(4 * k, exact)
    # omega(u, v) = (J u)^T g v, so Omega = J^T g
    om = [j.T @ g for j in (j1, j2, j3)]
    frame = HKFrame(k, exact, j1, j2, j3, g, *om)
    if exact and not quaternion_relations_hold(frame):
        raise InvariantViolation("quaternion relations failed for the constructed frame")
    return frame


def quaternion_relations_hold(frame: HKFrame) -> bool:
    """``J_a J_b = eps_abc J_c - delta_ab I``, orthogonality, antisymmetry of omega."""
    eye = frame.identity
    js = [frame.J1, frame.J2, frame.J3]

    def same(a, b):
        return bool(np.all(a == b)) if frame.exact else bool(np.allclose(a, b, atol=1e-12))

    for a in range(3):
        for b in range(3):
            prod = js[a] @ js[b]
            if a == b:
                want = -eye
            else:
                c = 3 - a - b
                sign = 1 if (b - a) % 3 == 1 else -1
                want = sign * js[c]
            if not same(prod, want):
                return False
    for a in range(3):
        if not same(js[a].T @ frame.g @ js[a], frame.g):
            return False
        om = frame.omega(a + 1)
        if not same(om.T, -om):
            return False
    return True


@dataclass(frozen=True)
class SpherePoint:
    a: object
    b: object
    c: object

    def __post_init__(self):
        vals = (self.a, self.b, self.c)
        if all(isinstance(x, (int, Fraction)) for x in vals):
            if sum(Fraction(x) ** 2 for x in vals) != 1:
                raise ValidationError(f"{vals} is not on the unit sphere")
        elif abs(sum(float(x) ** 2 for x in vals) - 1.0) > 1e-12:
            raise ValidationError(f"{vals} is not on the unit sphere")


def structure_at(frame: HKFrame, s: SpherePoint) -> np.ndarray:
    """The complex structure ``a J1 + b J2 + c J3``."""
    if frame.exact:
        a, b, c = (Fraction(x) for x in (s.a, s.b, s.c))
    else:
        a, b, c = (float(x) for x in (s.a, s.b, s.c))
    return a * frame.J1 + b * frame.J2 + c * frame.J3


def inverse_stereographic(zeta) -> SpherePoint:
    """Sphere point with ``(b + i c) / (a + 1) == zeta``; ``None`` means infinity."""
    if zeta is None:
        return SpherePoint(-1, 0, 0)
    if isinstance(zeta, GaussianRational):
        xi, eta = zeta.re, zeta.im
    elif isinstance(zeta, (int, Fraction)):
        xi, eta = Fraction(zeta), Fraction(0)
    else:
        zeta = complex(zeta)
        xi, eta = zeta.real, zeta.imag
    r2 = xi * xi + eta * eta
    return SpherePoint((1 - r2) / (1 + r2), 2 * xi / (1 + r2), 2 * eta / (1 + r2))


def stereographic_coordinate(s: SpherePoint):
    """``(b + i c) / (a + 1)``, or ``None`` at ``(-1, 0, 0)``."""
    if s.a == -1:
        return None
    if all(isinstance(x, (int, Fraction)) for x in (s.a, s.b, s.c)):
        return GaussianRational(s.b, s.c) / (Fraction(s.a) + 1)
    return complex(s.b, s.c) / (s.a + 1)


def stereographic_structure(frame: HKFrame, zeta) -> np.ndarray:
    return structure_at(frame, inverse_stereographic(zeta))


def _half(frame: HKFrame):
    return Fraction(1, 2) if frame.exact else 0.5


def v01(frame: HKFrame, v) -> CVec:
    w = frame.cvec(v)
    return (w + w.apply(frame.J1).times_i()).times(_half(frame))


def proj10(frame: HKFrame, w: CVec) -> CVec:
    return (w - w.apply(frame.J1).times_i()).times(_half(frame))


def _same(frame: HKFrame, x: CVec, y: CVec, tol: float = 1e-12) -> bool:
    d = x - y
    return d.is_zero() if frame.exact else d.max_abs() <= tol


def ks_representative(frame: HKFrame, v) -> CVec:
    """``phi(v) = [ (1/2)(J2 - i J3) v^{0,1} ]^{1,0}``, checked against ``J2 v^{0,1}``."""
    w = v01(frame, v)
    closed = w.apply(frame.J2)
    direct = proj10(frame, (w.apply(frame.J2) - w.apply(frame.J3).times_i()).times(_half(frame)))
    via_j2j1 = proj10(frame, (w.apply(frame.J2) + w.apply(frame.J2 @ frame.J1).times_i()).times(_half(frame)))
    if not (_same(frame, closed, direct) and _same(frame, closed, via_j2j1)):
        raise InvariantViolation("Kodaira-Spencer representative: routes disagree")
    return closed


@dataclass(frozen=True)
class ContractionCheck:
    lhs: CVec
    rhs: CVec
    steps: tuple[CVec, ...]
    max_residual: object

    @property
    def ok(self) -> bool:
        return self.max_residual == 0


def _form_first_slot(omega: np.ndarray, w: CVec) -> CVec:
    # coefficients of u -> omega(w, u)
    return w.apply(omega.T)


def _form_second_slot(omega: np.ndarray, w: CVec) -> CVec:
    # coefficients of u -> omega(u, w)
    return w.apply(omega)


def _residual(frame: HKFrame, x: CVec, y: CVec):
    d = x - y
    if frame.exact:
        vals = [abs(z) for z in list(d.re) + list(d.im)]
        return max(vals) if vals else Fraction(0)
    return d.max_abs()


def contraction_identity(frame: HKFrame, v) -> ContractionCheck:
    """``phi(v) ⌟ (omega2 + i omega3)`` against ``2i omega1(., v^{0,1})``, step by step.

    The intermediate 1-forms are, in order::

        g([J2 + i J3] phi, .)
        g([J2 + i J1 J2] J2 v01, .)
        g(-[I + i J1] v01, .)
        -2i omega1(v01, .)
        2i omega1(., v01)
    """
    w = v01(frame, v)
    phi = ks_representative(frame, v)
    lhs = _form_first_slot(frame.omega2, phi) + _form_first_slot(frame.omega3, phi).times_i()
    g = frame.g
    s1 = (phi.apply(frame.J2) + phi.apply(frame.J3).times_i()).apply(g.T)
    j2w = w.apply(frame.J2)
    s2 = (j2w.apply(frame.J2) + j2w.apply(frame.J1 @ frame.J2).times_i()).apply(g.T)
    s3 = -(w + w.apply(frame.J1).times_i()).apply(g.T)
    s4 = _form_first_slot(frame.omega1, w).times(0, -2)
    rhs = _form_second_slot(frame.omega1, w).times(0, 2)
    chain = (lhs, s1, s2, s3, s4, rhs)
    res = max(_residual(frame, a, b) for a, b in zip(chain, chain[1:]))
    res = max(res, _residual(frame, lhs, rhs))
    if frame.exact and res != 0:
        raise InvariantViolation(f"contraction identity failed with residual {res}")
    return ContractionCheck(lhs, rhs, (s1, s2, s3, s4), res)


def _complex_rank(frame: HKFrame, vecs: list[CVec]) -> int:
    if frame.exact:
        return exact_rank([v.as_exact() for v in vecs])
    return int(np.linalg.matrix_rank(np.array([v.as_complex() for v in vecs]), tol=1e-9))


def twozero_nondegeneracy(frame: HKFrame) -> dict:
    """Type (2,0) and nondegeneracy of ``omega2 + i omega3`` with respect to ``J1``."""
    n = frame.dim
    basis = [frame.cvec([1 if i == j else 0 for i in range(n)]) for j in range(n)]

    def contract(u: CVec) -> CVec:
        return _form_first_slot(frame.omega2, u) + _form_first_slot(frame.omega3, u).times_i()

    zero_on_01 = all(contract(v01(frame, e)).is_zero() if frame.exact
                     else contract(v01(frame, e)).max_abs() < 1e-12 for e in basis)
    ten = [proj10(frame, e) for e in basis]
    image_rank = _complex_rank(frame, [contract(u) for u in ten])
    space_rank = _complex_rank(frame, ten)
    return {
        "annihilates_01": zero_on_01,
        "rank": image_rank,
        "dim_10": space_rank,
        "nondegenerate": zero_on_01 and image_rank == space_rank == 2 * frame.k,
    }


def _perm_sign(seq) -> int:
    sign = 1
    s = list(seq)
    for i in range(len(s)):
        for j in range(i + 1, len(s)):
            if s[i] > s[j]:
                sign = -sign
    return sign


def top_power_coefficient(omega: np.ndarray, power: int | None = None):
    """Coefficient of ``e^0 ∧ ... ∧ e^{n-1}`` in the wedge power ``omega^{∧ power}``.

    ``omega`` is the antisymmetric matrix of a 2-form; ``power`` defaults to
    ``n / 2``. Computed by direct expansion of wedge products.
    """
    n = omega.shape[0]
    power = n // 2 if power is None else power
    two_form = {(i, j): omega[i, j] for i in range(n) for j in range(i + 1, n) if omega[i, j] != 0}
    acc = {(): 1}
    for _ in range(power):
        nxt: dict[tuple, object] = {}
        for idx, c in acc.items():
            used = set(idx)
            for (i, j), w in two_form.items():
                if i in used or j in used:
                    continue
                raw = idx + (i, j)
                key = tuple(sorted(raw))
                nxt[key] = nxt.get(key, 0) + _perm_sign(raw) * c * w
        acc = {key: c for key, c in nxt.items() if c != 0}
    return acc.get(tuple(range(n)), 0)


@dataclass(frozen=True)
class FDCheck:
    """Central differences of the stereographic family of structures at ``zeta = 0``.

    ``error`` compares against ``(J2, J3)``; ``error_vs_2j`` against
    ``(2 J2, 2 J3)``, the exact derivatives in this chart.
    """

    h: float
    d_xi: np.ndarray
    d_eta: np.ndarray
    error: float
    error_vs_2j: float
    scale: float


def ks_finite_difference_check(frame: HKFrame, h: float) -> FDCheck:
    if not 0 < h < 1:
        raise ValidationError("step size must lie in (0, 1)")
    ff = frame if not frame.exact else build_frame(frame.k, exact=False)
    d_xi = (stereographic_structure(ff, complex(h, 0)) - stereographic_structure(ff, complex(-h, 0))) / (2 * h)
    d_eta = (stereographic_structure(ff, complex(0, h)) - stereographic_structure(ff, complex(0, -h))) / (2 * h)
    j2, j3 = ff.J2, ff.J3
    err = max(np.max(np.abs(d_xi - j2)), np.max(np.abs(d_eta - j3)))
    err2 = max(np.max(np.abs(d_xi - 2 * j2)), np.max(np.abs(d_eta - 2 * j3)))
    scale = float((np.sum(d_xi * j2) + np.sum(d_eta * j3)) / (np.sum(j2 * j2) + np.sum(j3 * j3)))
    return FDCheck(h, d_xi, d_eta, float(err), float(err2), scale)


def fd_convergence_order(frame: HKFrame, h: float, against: str = "J") -> float:
    """``log2(err(h) / err(h/2))`` for the chosen reference (``"J"`` or ``"2J"``)."""
    attr = "error" if against == "J" else "error_vs_2j"
    e1 = getattr(ks_finite_difference_check(frame, h), attr)
    e2 = getattr(ks_finite_difference_check(frame, h / 2), attr)
    if e1 == 0 or e2 == 0:
        return math.inf
    return math.log2(e1 / e2)

"""Singular ends: the model connection d + Θ_α and its invariants.

A singular end of weight α in [0, 1) is modelled on the punctured disc by
Θ_α = -diag(α, -α) dz/z, so the two covariant derivatives act on a pair
of meromorphic functions (f, g) by

    ∇_α (f, g) = (f' - α f / z,  g' + α g / z).

Applying this columnwise to a frame A = (s | t) and wedging gives the
quadratic form Ω_α = ∇s ∧ ∇t, a Laurent polynomial when A is.  Its pole
at the puncture is controlled by the frame order n = max pole order of
the entries of A: for n >= 1 the pole order of Ω_α is at most 2n + 1 when
α > 0 and at most 2n when α = 0.  (At n = 0 the bound fails: the identity
frame already gives Ω_α = -α² z^{-2}.)

The compatibility of a frame with the end is measured by two residuals,
computed along deliberately independent routes:

    r1 = s ∧ t - 1                    (unit determinant)
    r2 = z²(a'd' - b'c') + z α (a'd - a d' + b c' - b'c) - α²

where A = [[a, b], [c, d]].  When r1 = 0 the identity
r2 - z² Ω_α = α² r1 forces r2 = z² Ω_α exactly, so r2 doubles as an
expanded form of the wedge; keeping the two expressions separate is the
point of the check.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .connection import HiggsField, model_end_field
from .defaults import DEFAULTS
from .errors import HypothesisViolated, NotSpecial, NotUnitary, TrivialHolonomy
from .series import GaussianRational, LaurentMatrix, LaurentPoly

_ONE = LaurentPoly.one()


@dataclass(frozen=True)
class SingularEnd:
    """A puncture with rational weight α in [0, 1)."""

    alpha: Fraction

    def __post_init__(self):
        a = Fraction(self.alpha)
        if not 0 <= a < 1:
            raise ValueError(f"weight must lie in [0, 1), got {a}")
        object.__setattr__(self, "alpha", a)

    def as_higgs(self) -> HiggsField:
        return model_end_field(self.alpha)

    def residue(self) -> LaurentMatrix:
        """The residue matrix Γ_α = diag(α, -α) of -Θ_α."""
        a = GaussianRational.coerce(self.alpha)
        return LaurentMatrix.diagonal(LaurentPoly.constant(a),
                                      LaurentPoly.constant(-a))


def nabla_alpha(end: SingularEnd,
                pair: tuple[LaurentPoly, LaurentPoly]) -> tuple[LaurentPoly, LaurentPoly]:
    """∇_α applied to a section written in the model gauge."""
    f, g = pair
    a = GaussianRational.coerce(end.alpha)
    return (f.derivative() - f.scale(a).shift(-1),
            g.derivative() + g.scale(a).shift(-1))


@dataclass(frozen=True)
class MeromorphicFramePair:
    """The two column sections s = (a, c), t = (b, d) of a frame."""

    s: tuple[LaurentPoly, LaurentPoly]
    t: tuple[LaurentPoly, LaurentPoly]

    @classmethod
    def from_matrix(cls, matrix: LaurentMatrix) -> "MeromorphicFramePair":
        return cls(s=(matrix.a, matrix.c), t=(matrix.b, matrix.d))

    def as_matrix(self) -> LaurentMatrix:
        return LaurentMatrix(self.s[0], self.t[0], self.s[1], self.t[1])

    @property
    def order(self) -> int:
        return self.as_matrix().max_pole_order()

    def wedge(self) -> LaurentPoly:
        return self.s[0] * self.t[1] - self.s[1] * self.t[0]


def _wedge(u: tuple[LaurentPoly, LaurentPoly],
           v: tuple[LaurentPoly, LaurentPoly]) -> LaurentPoly:
    return u[0] * v[1] - u[1] * v[0]


def omega_alpha(end: SingularEnd, pair: MeromorphicFramePair) -> LaurentPoly:
    """Ω_α = ∇_α s ∧ ∇_α t."""
    return _wedge(nabla_alpha(end, pair.s), nabla_alpha(end, pair.t))


def stareq_residuals(end: SingularEnd,
                     pair: MeromorphicFramePair) -> tuple[LaurentPoly, LaurentPoly]:
    """(r1, r2) for the end equations; both vanish iff the pair solves them.

    r2 is expanded from the matrix entries directly, not derived from
    omega_alpha, so the two agree only when the algebra is right.
    """
    a, b = pair.s[0], pair.t[0]
    c, d = pair.s[1], pair.t[1]
    da, db, dc, dd = a.derivative(), b.derivative(), c.derivative(), d.derivative()
    al = GaussianRational.coerce(end.alpha)
    r1 = pair.wedge() - _ONE
    r2 = ((da * dd - db * dc).shift(2)
          + (da * d - a * dd + b * dc - db * c).scale(al).shift(1)
          - LaurentPoly.constant(al * al))
    return r1, r2


@dataclass(frozen=True)
class PoloReport:
    """Pole-order bound check for Ω_α at a singular end of order n >= 1."""

    order_n: int
    pole_order: int
    bound: int
    passes: bool

    def to_json(self) -> dict:
        return {"order_n": self.order_n, "pole_order": self.pole_order,
                "bound": self.bound, "passes": self.passes}


def polo_bound_check(end: SingularEnd, pair: MeromorphicFramePair) -> PoloReport:
    """Check pole(Ω_α) <= 2n + 1 (α > 0) or <= 2n (α = 0), n = frame order.

    Only stated for n >= 1; the n = 0 case is rejected because constant
    frames already violate it for α > 0.
    """
    n = pair.order
    if n < 1:
        raise HypothesisViolated("the pole bound assumes frame order n >= 1")
    if pair.wedge().pole_order() > 0:
        raise HypothesisViolated("s ∧ t must be pole-free at the puncture")
    omega = omega_alpha(end, pair)
    pole = omega.pole_order()
    bound = 2 * n + 1 if end.alpha > 0 else 2 * n
    return PoloReport(order_n=n, pole_order=pole, bound=bound,
                      passes=pole <= bound)


def weight_from_holonomy(u: np.ndarray, su2_tol: float = DEFAULTS.su2_tol,
                         max_denominator: int = 10 ** 6,
                         reconstruction_tol: float = 1e-9) -> Fraction | float:
    """Recover the weight α in [0, 1) from a transport matrix.

    The matrix must be unitary within tolerance; its eigenvalue on the
    eigenvector closest to e1 (the flag line of the model end) is
    e^{2πiα}, which pins down α without folding α and 1 - α together.
    Returns an exact Fraction when a rational with denominator at most
    max_denominator reproduces the angle to reconstruction_tol, else the
    raw float (the return type is the flag).
    """
    u = np.asarray(u, dtype=complex)
    defect = float(np.linalg.norm(u @ u.conj().T - np.eye(2)))
    if defect > su2_tol:
        raise NotUnitary(f"unitary defect {defect:.3e} exceeds {su2_tol:.3e}")
    vals, vecs = np.linalg.eig(u)
    first = max(range(len(vals)), key=lambda i: abs(vecs[0, i]))
    value = cmath.phase(vals[first]) % (2 * math.pi) / (2 * math.pi)
    alpha = Fraction(value).limit_denominator(max_denominator)
    if alpha == 1:
        alpha = Fraction(0)
        value = value - 1.0
    if abs(float(alpha) - value) > reconstruction_tol:
        return value % 1.0
    return alpha


@dataclass(frozen=True)
class LocalParabolicStructure:
    """Weight and flag line that a singular end induces on its fiber."""

    weight: Fraction
    flag: tuple[complex, complex]

    def to_json(self) -> dict:
        return {"weight": [self.weight.numerator, self.weight.denominator],
                "flag": [[self.flag[0].real, self.flag[0].imag],
                         [self.flag[1].real, self.flag[1].imag]]}


def local_parabolic(end: SingularEnd) -> LocalParabolicStructure:
    """The model end fixes the flag e1 with weight α; trivial at α = 0."""
    if end.alpha == 0:
        raise TrivialHolonomy("weight 0 induces no parabolic structure")
    return LocalParabolicStructure(weight=end.alpha, flag=(1 + 0j, 0j))


def residue_parabolic(gamma: np.ndarray,
                      tol: float = 1e-10) -> LocalParabolicStructure:
    """Parabolic structure of a diagonalizable residue matrix Γ.

    Eigenvalues must be ±α real; the flag is the eigenvector of +α.
    """
    gamma = np.asarray(gamma, dtype=complex)
    vals, vecs = np.linalg.eig(gamma)
    if abs(vals[0] + vals[1]) > tol:
        raise ValueError("residue is not trace-free")
    if max(abs(vals[0].imag), abs(vals[1].imag)) > tol:
        raise ValueError("residue eigenvalues are not real")
    alpha = max(vals[0].real, vals[1].real)
    if alpha <= tol:
        raise TrivialHolonomy("residue has no positive eigenvalue")
    idx = 0 if vals[0].real >= vals[1].real else 1
    v = vecs[:, idx]
    v = v / np.linalg.norm(v)
    # rotate the largest entry onto the positive real axis
    lead = v[0] if abs(v[0]) >= abs(v[1]) else v[1]
    v = v * (abs(lead) / lead)
    return LocalParabolicStructure(
        weight=Fraction(float(alpha)).limit_denominator(10 ** 6),
        flag=(complex(v[0]), complex(v[1])))


def hermitian_pairing(end: SingularEnd,
                      pair1: tuple[LaurentPoly, LaurentPoly],
                      pair2: tuple[LaurentPoly, LaurentPoly],
                      z: complex) -> complex:
    """The singular Hermitian metric |z|^{2α}f p̄ + |z|^{-2α}g q̄ at z.

    Flat for ∇_α-parallel sections; the weight shows up as the growth
    rate of the two summands at the puncture.
    """
    f, g = pair1
    p, q = pair2
    w = abs(z) ** 2
    if w == 0:
        raise ZeroDivisionError("the pairing is singular at the puncture")
    a = float(end.alpha)
    return (w ** a) * f(z) * p(z).conjugate() + (w ** -a) * g(z) * q(z).conjugate()


def end_report(end: SingularEnd, pair: MeromorphicFramePair) -> dict:
    """One-stop summary used by the CLI's end subcommand."""
    r1, r2 = stareq_residuals(end, pair)
    omega = omega_alpha(end, pair)
    try:
        polo = polo_bound_check(end, pair).to_json()
    except HypothesisViolated as exc:
        polo = {"skipped": str(exc)}
    out = {
        "alpha": [end.alpha.numerator, end.alpha.denominator],
        "order_n": pair.order,
        "omega_pole_order": omega.pole_order(),
        "polo_bound": polo,
        "r1": r1.to_json(),
        "r2": r2.to_json(),
        "stareq_pass": r1.is_zero and r2.is_zero,
        "r2_matches_omega": r2 == omega.shift(2),
    }
    if end.alpha != 0:
        out["parabolic"] = local_parabolic(end).to_json()
    return out

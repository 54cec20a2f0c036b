"""Curve descriptors: a-invariants, signatures (c4, c6, Delta),
p-signatures, scaling transformations, quadratic twists.

The canonical internal object is the signature; a-invariants are an
input/oracle convenience.  All constructors check the defining identity
c4^3 - c6^2 = 1728*Delta.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .exactnum import RatLike, is_squarefree, vp


@dataclass(frozen=True)
class AInvariants:
    a1: Fraction
    a2: Fraction
    a3: Fraction
    a4: Fraction
    a6: Fraction

    @classmethod
    def of(cls, a1: RatLike, a2: RatLike, a3: RatLike, a4: RatLike, a6: RatLike) -> "AInvariants":
        return cls(Fraction(a1), Fraction(a2), Fraction(a3), Fraction(a4), Fraction(a6))


@dataclass(frozen=True)
class Signature:
    c4: Fraction
    c6: Fraction
    delta: Fraction

    def __post_init__(self) -> None:
        for field in ("c4", "c6", "delta"):
            v = getattr(self, field)
            if not isinstance(v, Fraction):
                object.__setattr__(self, field, Fraction(v))
        if self.delta == 0:
            raise ValueError("singular: Delta = 0")
        if self.c4**3 - self.c6**2 != 1728 * self.delta:
            raise ValueError("c4^3 - c6^2 != 1728*Delta")

    @classmethod
    def of(cls, c4: RatLike, c6: RatLike, delta: RatLike) -> "Signature":
        return cls(Fraction(c4), Fraction(c6), Fraction(delta))


@dataclass(frozen=True)
class PSignature:
    vc4: float  # int, or inf when c4 = 0
    vc6: float
    vdelta: int

    def as_tuple(self):
        return (self.vc4, self.vc6, self.vdelta)


def signature_of(a: AInvariants) -> Signature:
    """(c4, c6, Delta) via the standard b-invariant formulas."""
    b2 = a.a1**2 + 4 * a.a2
    b4 = 2 * a.a4 + a.a1 * a.a3
    b6 = a.a3**2 + 4 * a.a6
    b8 = a.a1**2 * a.a6 + 4 * a.a2 * a.a6 - a.a1 * a.a3 * a.a4 + a.a2 * a.a3**2 - a.a4**2
    c4 = b2**2 - 24 * b4
    c6 = -(b2**3) + 36 * b2 * b4 - 216 * b6
    delta = -(b2**2) * b8 - 8 * b4**3 - 27 * b6**2 + 9 * b2 * b4 * b6
    return Signature(c4, c6, delta)


def p_signature(s: Signature, p: int) -> PSignature:
    return PSignature(vp(s.c4, p), vp(s.c6, p), vp(s.delta, p))


def transform(s: Signature, u: RatLike) -> Signature:
    """Weierstrass rescaling: u^4 c4' = c4 etc."""
    u = Fraction(u)
    if u == 0:
        raise ValueError("u must be nonzero")
    return Signature(s.c4 / u**4, s.c6 / u**6, s.delta / u**12)


def twist_sig(s: Signature, d: int) -> Signature:
    """Signature of the quadratic twist by Q(sqrt(d))."""
    if d == 0 or not is_squarefree(d):
        raise ValueError(f"d = {d} is not square-free")
    return Signature(d**2 * s.c4, d**3 * s.c6, d**6 * s.delta)


def j_invariant(s: Signature) -> Fraction:
    return s.c4**3 / s.delta


def short_model(s: Signature) -> AInvariants:
    """y^2 = x^3 + Ax + B with A = -c4/48, B = -c6/864."""
    return AInvariants.of(0, 0, 0, -s.c4 / 48, -s.c6 / 864)

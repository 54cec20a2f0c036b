"""Per-prime reduction engine.

Covers: realizability of a (c4, c6) pair by a p-integral Weierstrass model
(Kraus-style congruence search at p = 2, 3), the minimal-model scale u_p
and Kodaira symbol via the signature classification tables for p >= 5,
p = 3 and p = 2, and the per-prime twist rescaling values u_p(E^d).

The tables are stored as literal row data.  Rows are matched top to
bottom; a "loop" outcome means the model is not p-minimal, the signature
is rescaled by u = p, and the search restarts.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional

from .exactnum import is_squarefree, unit_residue, vp
from .weierstrass import PSignature, Signature, p_signature, transform


class TableMissError(Exception):
    """No classification row matched: internal bug or malformed input."""


@dataclass(frozen=True)
class KodairaSymbol:
    kind: str  # one of I0, In, II, III, IV, I0*, In*, IV*, III*, II*
    n: int = 0

    def __post_init__(self) -> None:
        if self.kind == "In" and self.n < 1:
            raise ValueError("In requires n >= 1")
        if self.kind == "In*" and self.n < 0:
            raise ValueError("In* requires n >= 0")

    @property
    def starred(self) -> bool:
        return self.kind.endswith("*")

    def __str__(self) -> str:
        if self.kind == "In":
            return f"I{self.n}"
        if self.kind == "In*":
            return f"I{self.n}*"
        return self.kind


@dataclass(frozen=True)
class LocalClassification:
    p: int
    u_p: Fraction  # p^k, k in Z
    minimal_psig: PSignature
    kodaira: KodairaSymbol
    conditions_fired: frozenset = field(default_factory=frozenset)
    minimal_sig: Optional[Signature] = None
    # the matched table row's printed u_p(E^d) columns, as a callable of
    # (minimal signature, d); cross-checked against pal_u in the tests
    _row_pal: Optional[Callable] = None


# ---------------------------------------------------------------------------
# residue helpers (rationals with p-free denominators)

def _res(x, p: int, k: int) -> int:
    """Residue mod p^k of a p-integral rational (0 if v_p(x) >= k)."""
    x = Fraction(x)
    if x == 0:
        return 0
    v = vp(x, p)
    if v < 0:
        raise ValueError("not p-integral")
    if v >= k:
        return 0
    return (p**v * unit_residue(x, p, k)) % p**k


# ---------------------------------------------------------------------------
# extra conditions distinguishing Kodaira symbols at p = 3 and p = 2

def cond_3a(s: Signature) -> bool:
    return _res((s.c6 / 27) ** 2 + 2 - 3 * (s.c4 / 9), 3, 2) == 0


def cond_3b(s: Signature) -> bool:
    return _res((s.c6 / 3**6) ** 2 + 2 - 3 * (s.c4 / 3**4), 3, 2) == 0


def _AB(s: Signature):
    return -s.c4 / 48, -s.c6 / 864


def _psi2(r, A, B):
    return r**3 + A * r + B


def _psi3(r, A, B):
    return 3 * r**4 + 6 * A * r**2 + 12 * B * r - A**2


def cond_2a(s: Signature) -> bool:
    A, B = _AB(s)
    a, b = _res(A, 2, 2), _res(B, 2, 2)
    return (a == 1 and b in (0, 1)) or (a != 1 and b in (2, 3))


def cond_2b(s: Signature) -> bool:
    A, B = _AB(s)
    return _res(_psi3(A, A, B), 2, 3) != 0


def _psi3_roots_mod32(s: Signature):
    A, B = _AB(s)
    return [r for r in range(32) if _res(_psi3(r, A, B), 2, 5) == 0]


def cond_2c(s: Signature) -> bool:
    # no root of Psi3 mod 32, or every root r has Psi2(r) in {1,8,9,12} mod 16
    A, B = _AB(s)
    return all(_res(_psi2(r, A, B), 2, 4) in (1, 8, 9, 12) for r in _psi3_roots_mod32(s))


def cond_2d(s: Signature) -> bool:
    return all(r % 4 in (1, 2) for r in _psi3_roots_mod32(s))


def cond_2e(s: Signature) -> bool:
    return _res(s.c4 / 2**6, 2, 2) == 3


def cond_2f(s: Signature) -> bool:
    return _res(s.c6 / 2**6, 2, 2) == 1


def cond_2g(s: Signature) -> bool:
    return _res(s.c6 / 2**9, 2, 2) == 3


_CONDITIONS = {
    "3a": cond_3a, "3b": cond_3b,
    "2a": cond_2a, "2b": cond_2b, "2c": cond_2c, "2d": cond_2d,
    "2e": cond_2e, "2f": cond_2f, "2g": cond_2g,
}


# ---------------------------------------------------------------------------
# realizability by an integral model (Kraus)

def realizable(s: Signature, p: int) -> bool:
    """Does the p-integral pair (c4, c6) come from a p-integral model?"""
    if any(v < 0 for v in p_signature(s, p).as_tuple() if v != math.inf):
        raise ValueError("signature not p-integral")
    if p >= 5:
        return True
    if p == 3:
        for b2 in range(81):
            b4 = (Fraction(b2) ** 2 - s.c4) / 24
            if vp(b4, 3) < 0:
                continue
            b6 = (-(Fraction(b2) ** 3) + 36 * b2 * b4 - s.c6) / 216
            if vp(b6, 3) >= 0:
                return True
        return False
    # p = 2: search a1, a3 in {0,1} and b2 = a1^2 mod 4 (window mod 2^7)
    for a1 in (0, 1):
        for a3 in (0, 1):
            for b2 in range(a1 * a1, 128, 4):
                b4 = (Fraction(b2) ** 2 - s.c4) / 24
                if vp(b4, 2) < 0 or _res(b4, 2, 1) != a1 * a3 % 2:
                    continue
                b6 = (-(Fraction(b2) ** 3) + 36 * b2 * b4 - s.c6) / 216
                if vp(b6, 2) >= 0 and _res(b6, 2, 2) == a3 * a3 % 4:
                    return True
    return False


# ---------------------------------------------------------------------------
# classification tables
#
# Row format: (pattern, outcome, pal)
#   pattern: component patterns for (v(c4), v(c6), v(Delta));
#            ("e", k) exact, ("g", k) at least k
#   outcome: list of (condition label or None, symbol factory) tried in
#            order -- factories take v(Delta) of the scaled signature, so
#            "6+n"-style rows recover n; "loop" forces a u = p rescaling
#   pal:     printed u_p(E^d) columns: for p != 2 a pair of exponents of p
#            for (d = 0 mod p, d != 0 mod p); for p = 2 a value triple
#            keyed on d mod 4 (entries may be callables of (sig, d))

def _fix(kind, n=0):
    sym = KodairaSymbol(kind, n)
    return lambda vd: sym


def _In(shift=0):
    return lambda vd: KodairaSymbol("In", vd + shift) if vd + shift else KodairaSymbol("I0")


def _Instar(shift):
    return lambda vd: KodairaSymbol("In*", vd + shift)


TABLE_P_GE5 = [
    ((("e", 0), ("g", 0), ("e", 0)), [(None, _fix("I0"))], (0, 0)),
    ((("g", 0), ("e", 0), ("e", 0)), [(None, _fix("I0"))], (0, 0)),
    ((("g", 0), ("e", 0), ("g", 1)), [(None, _In())], (0, 0)),
    ((("g", 1), ("e", 1), ("e", 2)), [(None, _fix("II"))], (0, 0)),
    ((("e", 1), ("g", 2), ("e", 3)), [(None, _fix("III"))], (0, 0)),
    ((("g", 2), ("e", 2), ("e", 4)), [(None, _fix("IV"))], (0, 0)),
    ((("e", 2), ("g", 3), ("e", 6)), [(None, _fix("In*", 0))], (1, 0)),
    ((("g", 2), ("e", 3), ("e", 6)), [(None, _fix("In*", 0))], (1, 0)),
    ((("e", 2), ("e", 3), ("g", 6)), [(None, _Instar(-6))], (1, 0)),
    ((("g", 3), ("e", 4), ("e", 8)), [(None, _fix("IV*"))], (1, 0)),
    ((("e", 3), ("g", 5), ("e", 9)), [(None, _fix("III*"))], (1, 0)),
    ((("g", 4), ("e", 5), ("e", 10)), [(None, _fix("II*"))], (1, 0)),
    ((("g", 4), ("g", 6), ("g", 12)), "loop", None),
]

TABLE_P3 = [
    ((("e", 0), ("e", 0), ("g", 0)), [(None, _In())], (0, 0)),
    ((("e", 1), ("g", 3), ("e", 0)), [(None, _fix("I0"))], (0, 0)),
    ((("g", 2), ("e", 3), ("e", 3)), [("3a", _fix("III")), (None, _fix("II"))], (0, 0)),
    ((("e", 2), ("e", 3), ("e", 4)), [(None, _fix("II"))], (0, 0)),
    ((("e", 2), ("e", 3), ("e", 5)), [(None, _fix("IV"))], (0, 0)),
    ((("e", 2), ("e", 3), ("g", 6)), [(None, _Instar(-6))], (1, 0)),
    ((("e", 2), ("e", 4), ("e", 3)), [(None, _fix("II"))], (0, 0)),
    ((("e", 2), ("g", 5), ("e", 3)), [(None, _fix("III"))], (0, 0)),
    ((("g", 3), ("e", 4), ("e", 5)), [(None, _fix("II"))], (0, 0)),
    ((("e", 3), ("e", 5), ("e", 6)), [(None, _fix("IV"))], (0, 0)),
    ((("e", 3), ("g", 6), ("e", 6)), [(None, _fix("In*", 0))], (1, 0)),
    ((("g", 4), ("e", 5), ("e", 7)), [(None, _fix("IV"))], (0, 0)),
    ((("g", 4), ("e", 6), ("e", 9)), [("3b", _fix("III*")), (None, _fix("IV*"))], (1, 0)),
    ((("e", 4), ("e", 6), ("e", 10)), [(None, _fix("IV*"))], (1, 0)),
    ((("e", 4), ("e", 6), ("e", 11)), [(None, _fix("II*"))], (1, 0)),
    ((("e", 4), ("e", 6), ("g", 12)), "loop", None),
    ((("e", 4), ("e", 7), ("e", 9)), [(None, _fix("IV*"))], (1, 0)),
    ((("e", 4), ("g", 8), ("e", 9)), [(None, _fix("III*"))], (1, 0)),
    ((("g", 5), ("e", 7), ("e", 11)), [(None, _fix("IV*"))], (1, 0)),
    ((("e", 5), ("e", 8), ("e", 12)), [(None, _fix("II*"))], (1, 0)),
    ((("e", 5), ("g", 9), ("e", 12)), "loop", None),
    ((("g", 6), ("e", 8), ("e", 13)), [(None, _fix("II*"))], (1, 0)),
    ((("g", 6), ("g", 9), ("g", 15)), "loop", None),
]


def _pal_666(sig: Signature, d: int) -> Fraction:
    # sig_2 = (>=6, 6, 6), d = 2 mod 4: keyed on c6/2^6 vs d/2 mod 4
    return Fraction(1) if _res(sig.c6 / 2**6, 2, 2) != (d // 2) % 4 else Fraction(2)


def _pal_6918(sig: Signature, d: int) -> Fraction:
    # sig_2 = (6, 9, >=18), d = 2 mod 4: keyed on c6/2^9 vs d/2 mod 4
    return Fraction(4) if _res(sig.c6 / 2**9, 2, 2) != (d // 2) % 4 else Fraction(2)


_H = Fraction(1, 2)

TABLE_P2 = [
    ((("e", 0), ("e", 0), ("g", 0)), [(None, _In())], (1, _H, _H)),
    ((("g", 4), ("e", 3), ("e", 0)), [(None, _fix("I0"))], (1, 1, _H)),
    ((("e", 4), ("e", 5), ("e", 4)),
     [("2a", _fix("II")), ("2b", _fix("III")), (None, _fix("IV"))], (1, 1, 1)),
    ((("e", 4), ("g", 6), ("e", 6)), [("2a", _fix("II")), (None, _fix("III"))], (1, 1, 1)),
    ((("e", 4), ("e", 6), ("e", 7)), [(None, _fix("II"))], (1, 1, 1)),
    ((("e", 4), ("e", 6), ("e", 8)),
     [("2c", _fix("In*", 0)), ("2d", _fix("In*", 1)), (None, _fix("IV*"))], (1, 1, 1)),
    ((("e", 4), ("e", 6), ("e", 9)), [(None, _fix("In*", 0))], (1, 1, 1)),
    ((("e", 4), ("e", 6), ("e", 10)), [("2d", _fix("In*", 2)), (None, _fix("III*"))], (1, 1, 1)),
    ((("e", 4), ("e", 6), ("e", 11)), [("2d", _fix("In*", 3)), (None, _fix("II*"))], (1, 1, 1)),
    ((("e", 4), ("e", 6), ("g", 12)), [("2f", _Instar(-8)), (None, "loop")], (1, 1, 2)),
    ((("e", 5), ("e", 5), ("e", 4)), [("2a", _fix("II")), (None, _fix("III"))], (1, 1, 1)),
    ((("e", 5), ("e", 6), ("e", 6)), [(None, _fix("II"))], (1, 1, 1)),
    ((("g", 6), ("e", 6), ("e", 6)), [(None, _fix("II"))], (1, _pal_666, 1)),
    ((("e", 5), ("e", 7), ("e", 8)), [(None, _fix("III"))], (1, 1, 1)),
    ((("e", 5), ("g", 8), ("e", 9)), [(None, _fix("III"))], (1, 1, 1)),
    ((("g", 6), ("e", 5), ("e", 4)), [("2a", _fix("II")), (None, _fix("IV"))], (1, 1, 1)),
    ((("e", 6), ("e", 7), ("e", 8)), [("2c", _fix("In*", 0)), (None, _fix("In*", 1))], (1, 1, 1)),
    ((("g", 6), ("e", 8), ("e", 10)), [(None, _fix("In*", 0))], (1, 2, 1)),
    ((("e", 6), ("e", 9), ("e", 13)), [(None, _fix("In*", 2))], (1, 2, 1)),
    ((("e", 6), ("e", 9), ("e", 14)), [(None, _Instar(-10))], (1, 2, 1)),  # (6,9,14+n), n<4
    ((("e", 6), ("e", 9), ("e", 15)), [(None, _Instar(-10))], (1, 2, 1)),
    ((("e", 6), ("e", 9), ("e", 16)), [(None, _Instar(-10))], (1, 2, 1)),
    ((("e", 6), ("e", 9), ("e", 17)), [(None, _Instar(-10))], (1, 2, 1)),
    ((("e", 6), ("e", 9), ("g", 18)), [(None, _Instar(-10))], (1, _pal_6918, 1)),
    ((("e", 6), ("g", 9), ("e", 12)), [("2e", _fix("In*", 2)), (None, _fix("In*", 3))], (1, 2, 1)),
    ((("g", 7), ("e", 7), ("e", 8)), [("2c", _fix("In*", 0)), (None, _fix("IV*"))], (1, 1, 1)),
    ((("e", 7), ("e", 9), ("e", 12)), [(None, _fix("III*"))], (1, 2, 1)),
    ((("e", 7), ("e", 10), ("e", 14)), [(None, _fix("III*"))], (1, 2, 1)),
    ((("e", 7), ("g", 11), ("e", 15)), [(None, _fix("III*"))], (1, 2, 1)),
    ((("g", 8), ("e", 9), ("e", 12)), [("2g", _fix("II*")), (None, "loop")], (1, 2, 2)),
    ((("g", 8), ("e", 10), ("e", 14)), [(None, _fix("II*"))], (1, 2, 1)),
    ((("g", 8), ("g", 11), ("g", 16)), "loop", None),
]


def _match_component(pattern, v) -> bool:
    op, k = pattern
    return v == k if op == "e" else v >= k


def _match_row(table, psig: PSignature):
    for row in table:
        if all(_match_component(pat, v) for pat, v in zip(row[0], psig.as_tuple())):
            return row
    return None


def _table_for(p: int):
    return TABLE_P2 if p == 2 else TABLE_P3 if p == 3 else TABLE_P_GE5


# ---------------------------------------------------------------------------

def classify(s: Signature, p: int) -> LocalClassification:
    """Minimal-model scale u_p = p^k, Kodaira symbol, and condition trace.

    Starts from the largest k keeping transform(s, p^k) p-integral, backs
    off while the scaled pair is not realizable by an integral model, then
    matches the table; rescaling rows bump k by one (each pass strictly
    drops v_p(Delta) by 12, so the loop is bounded).
    """
    vals = p_signature(s, p).as_tuple()
    k = min(
        v // (4, 6, 12)[i]
        for i, v in enumerate(vals)
        if v != math.inf
    )
    sk = transform(s, Fraction(p) ** k)
    for _ in range(8):  # in practice one step of scaling up suffices
        if realizable(sk, p):
            break
        k -= 1
        sk = transform(s, Fraction(p) ** k)
    else:
        raise TableMissError(f"no realizable rescaling at p={p}")

    table = _table_for(p)
    fired: set[str] = set()
    cap = 2 + int(vp(sk.delta, p)) // 12
    for _ in range(cap):
        psig = p_signature(sk, p)
        row = _match_row(table, psig)
        if row is None:
            raise TableMissError(f"p={p}: no row for sig_p = {psig.as_tuple()}")
        outcome = "loop"
        if row[1] != "loop":
            for label, sym in row[1]:
                if label is None or _CONDITIONS[label](sk):
                    if label is not None:
                        fired.add(label)
                    outcome = sym
                    break
                fired.add(label)
        if outcome == "loop":
            k += 1
            sk = transform(s, Fraction(p) ** k)
            assert realizable(sk, p), "rescaled model must stay realizable"
            continue
        return LocalClassification(
            p=p,
            u_p=Fraction(p) ** k,
            minimal_psig=psig,
            kodaira=outcome(int(psig.vdelta)),
            conditions_fired=frozenset(fired),
            minimal_sig=sk,
            _row_pal=_make_row_pal(row, p),
        )
    raise TableMissError(f"p={p}: rescaling loop did not terminate")


def _make_row_pal(row, p: int):
    pal = row[2]

    def row_pal(sig: Signature, d: int) -> Fraction:
        if p != 2:
            return Fraction(p) ** (pal[0] if d % p == 0 else pal[1])
        entry = pal[{1: 0, 2: 1, 3: 2}[d % 4]]
        if callable(entry):
            return entry(sig, d)
        return Fraction(entry)

    return row_pal


def row_pal_value(c: LocalClassification, d: int) -> Fraction:
    """The matched table row's printed u_p(E^d) entry for this d."""
    assert c._row_pal is not None and c.minimal_sig is not None
    return c._row_pal(c.minimal_sig, d)


def global_minimal(s: Signature) -> tuple[Signature, Fraction]:
    """(minimal signature, u) with u the product of the per-prime scales."""
    from sympy import factorint

    # 2 and 3 always: a pair coprime to p can still fail realizability
    # there, forcing a scale-up (e.g. odd c4 with c6 = 1 mod 4)
    primes: set[int] = {2, 3}
    for x in (s.c4, s.c6, s.delta):
        if x != 0:
            primes |= set(factorint(abs(x.numerator)).keys())
            primes |= set(factorint(x.denominator).keys())
    u = Fraction(1)
    for p in sorted(primes):
        u *= classify(s, p).u_p
    return transform(s, u), u


def pal_u(c: LocalClassification, minimal_sig: Signature, d: int) -> Fraction:
    """Twist rescaling value u_p(E^d) of the minimal model, at p = c.p."""
    if d == 0 or not is_squarefree(d):
        raise ValueError(f"d = {d} is not square-free")
    p = c.p
    if p != 2:
        if d % p == 0 and c.kodaira.starred:
            return Fraction(p)
        return Fraction(1)
    vc4, vc6, vd = p_signature(minimal_sig, 2).as_tuple()
    c6 = minimal_sig.c6
    if d % 4 == 1:
        return Fraction(1)
    if d % 4 == 2:  # square-free even d; d/2 is an odd integer
        if (vc4, vc6) == (0, 0):
            return Fraction(1, 2)
        if (vc4, vc6) == (6, 9) and vd >= 18 and _res(c6 * d / 2**10, 2, 2) == 3:
            return Fraction(4)
        if vc4 in (4, 5):
            return Fraction(1)
        if vc6 in (3, 5, 7):
            return Fraction(1)
        if vc4 >= 6 and (vc6, vd) == (6, 6) and _res(c6 * d / 2**7, 2, 2) == 3:
            return Fraction(1)
        return Fraction(2)
    # d = 3 mod 4
    if (vc4, vc6) == (0, 0) or (vc4 >= 4 and (vc6, vd) == (3, 0)):
        return Fraction(1, 2)
    if (vc4 == 4 and vc6 == 6 and vd >= 12) or (vc4 >= 8 and (vc6, vd) == (9, 12)):
        return Fraction(2)
    return Fraction(1)


def global_pal(minimal_sig: Signature, d: int) -> Fraction:
    """u(E^d): product of pal_u over primes dividing 2, d, and Delta."""
    from sympy import factorint

    if d == 0 or not is_squarefree(d):
        raise ValueError(f"d = {d} is not square-free")
    primes = {2} | set(factorint(abs(d)).keys())
    primes |= set(factorint(abs(minimal_sig.delta.numerator)).keys())
    u = Fraction(1)
    for p in sorted(primes):
        u *= pal_u(classify(minimal_sig, p), minimal_sig, d)
    return u

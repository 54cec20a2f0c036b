"""Independent numeric verification of the exact decision machinery:
period-lattice volumes (AGM / Carlson symmetric integrals), Néron
volumes and Faltings heights, argmin cross-checks against the rule
tables, and sieved density / probability estimates.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

import mpmath as mp
import numpy as np

from . import families, graphs
from .exactnum import RatLike
from .localdata import global_minimal
from .weierstrass import Signature, twist_sig


@dataclass(frozen=True)
class LatticeApprox:
    volume: mp.mpf
    claimed_error: mp.mpf


@dataclass(frozen=True)
class VertexHeight:
    label: str
    neron_volume: mp.mpf
    faltings_height: mp.mpf


@dataclass(frozen=True)
class HeightReport:
    vertices: tuple  # of VertexHeight
    argmin_label: str
    theorem_label: str
    match: bool


def _mpf_of(x: Fraction) -> mp.mpf:
    x = Fraction(x)
    return mp.mpf(x.numerator) / mp.mpf(x.denominator)


def _volume_once(s: Signature) -> mp.mpf:
    """Fundamental-domain area of the period lattice of dx/(2y) on
    y^2 = x^3 + Ax + B with A = -c4/48, B = -c6/864."""
    A = _mpf_of(-s.c4 / 48)
    B = _mpf_of(-s.c6 / 864)
    roots = mp.polyroots([mp.mpf(1), mp.mpf(0), A, B], extraprec=mp.mp.prec)
    if s.delta > 0:
        e1, e2, e3 = sorted((mp.re(r) for r in roots), reverse=True)
        om_re = mp.pi / mp.agm(mp.sqrt(e1 - e3), mp.sqrt(e1 - e2))
        om_im = mp.pi / mp.agm(mp.sqrt(e1 - e3), mp.sqrt(e2 - e3))
        return om_re * om_im
    # one real root r and a conjugate pair e2, e3
    r = max(roots, key=lambda z: -abs(mp.im(z)))
    e2, e3 = [z for z in roots if z != r]
    om1 = mp.re(2 * mp.elliprf(0, r - e2, r - e3))
    half = 2 * mp.elliprf(0, e2 - e3, e2 - r)  # = +-(om1/2 - i vol/om1)
    return om1 * abs(mp.im(half))


def lattice_volume(s: Signature, precision_bits: int = 128) -> LatticeApprox:
    with mp.workprec(2 * precision_bits + 30):
        check = _volume_once(s)
    with mp.workprec(precision_bits + 30):
        vol = _volume_once(s)
        err = abs(mp.mpf(check) - vol)
        return LatticeApprox(vol, err)


def neron_volume(s: Signature, precision_bits: int = 128) -> mp.mpf:
    """Volume of the minimal-model (Néron) lattice: u(E)^2 * vol(Lambda)."""
    minimal, _u = global_minimal(s)
    return lattice_volume(minimal, precision_bits).volume


def faltings_height(s: Signature, precision_bits: int = 128) -> mp.mpf:
    with mp.workprec(precision_bits + 30):
        return -mp.log(neron_volume(s, precision_bits)) / 2


def _class_signatures(kind: str, t: Optional[RatLike], variant: str):
    if kind == "L3_9":
        sigs = families.l39_signatures(t)
        return list(zip(("E_1", "E_3", "E_9"), sigs))
    if kind == "L2_11":
        cls = families.l211_class(variant)
        return [("E_1", cls.curves[0].sig), ("E_11", cls.curves[1].sig)]
    raise ValueError(
        f"no model-level family for {kind}; pass explicit signatures")


def verify_class(kind: str, t: Optional[RatLike], d: int,
                 precision_bits: int = 128, variant: str = "a",
                 signatures=None) -> HeightReport:
    """Numeric argmin of Faltings heights over the twisted class vs the
    closed-form decision."""
    labelled = signatures or _class_signatures(kind, t, variant)
    rows = []
    for label, sig in labelled:
        tw = twist_sig(sig, d)
        vol = neron_volume(tw, precision_bits)
        with mp.workprec(precision_bits + 30):
            h = -mp.log(vol) / 2
        rows.append(VertexHeight(label, vol, h))
    argmin = min(rows, key=lambda r: r.faltings_height).label
    theorem = graphs.faltings_by_theorem(kind, t, d).vertex
    return HeightReport(tuple(rows), argmin, theorem, argmin == theorem)


# ---------------------------------------------------------------------------
# sieved densities

def _squarefree_mask(n: int) -> np.ndarray:
    """mask[i] for i in 0..n: i is square-free (mask[0] False)."""
    mask = np.ones(n + 1, dtype=bool)
    mask[0] = False
    k = 2
    while k * k <= n:
        mask[k * k:: k * k] = False
        k += 1
    return mask


@dataclass(frozen=True)
class DensityReport:
    p: int
    bound: int
    divisible_fraction: float
    squarefree_density: float


def squarefree_density(p: int, bound: int) -> DensityReport:
    """Among square-free n <= bound: fraction divisible by p, plus the
    overall square-free density (expected 1/(1+p) and 6/pi^2)."""
    if bound < 10**4:
        raise ValueError("bound must be at least 10^4")
    mask = _squarefree_mask(bound)
    total_sf = int(mask.sum())
    div = int(mask[p::p].sum())
    return DensityReport(p, bound, div / total_sf, total_sf / bound)


def empirical_prob(kind: str, t: Optional[RatLike], bound: int) -> dict:
    """Frequencies, over square-free |d| <= bound, of the vertex chosen
    by the closed-form decision.

    The decision depends on d only through divisibility by the table's
    primes, so each branch is counted with one sieve pass; counting
    positive d suffices because every condition is sign-blind.
    """
    mask = _squarefree_mask(bound)
    total = int(mask.sum())
    freq: dict = {}
    for row in graphs.prob_table(kind, t):
        cond = row.d_condition
        if cond == "all":
            count = total
        else:
            p = int(cond.split("(")[1].rstrip(")"))
            div = int(mask[p::p].sum())
            count = div if cond.startswith("d=0") else total - div
        freq[row.vertex] = freq.get(row.vertex, 0.0) + count / total
    return freq

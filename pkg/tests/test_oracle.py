from fractions import Fraction

import pytest
from mpmath import mp

from qtwist.oracle import (
    empirical_prob,
    faltings_height,
    lattice_volume,
    neron_volume,
    squarefree_density,
    verify_class,
)
from qtwist.graphs import prob_table
from qtwist.weierstrass import AInvariants, Signature, signature_of, transform

S11 = signature_of(AInvariants(0, -1, 1, -10, -20))   # Delta < 0
S32 = Signature.of(48, 0, 64)                          # y^2 = x^3 - x, Delta > 0
S27 = Signature.of(0, -864, -432)                      # y^2 = x^3 + 1, Delta < 0


def quad_volume(s):
    """Lattice covolume by direct numerical period integrals."""
    A = mp.mpf(Fraction(-s.c4, 48).numerator) / mp.mpf(Fraction(-s.c4, 48).denominator)
    B = mp.mpf(Fraction(-s.c6, 864).numerator) / mp.mpf(Fraction(-s.c6, 864).denominator)
    f = lambda x: x**3 + A * x + B
    roots = mp.polyroots([1, 0, A, B])
    if s.delta > 0:
        e1, e2, e3 = sorted((mp.re(r) for r in roots), reverse=True)
        om_re = mp.quad(lambda x: 1 / mp.sqrt(f(x)), [e1, mp.inf])
        om_im = mp.quad(lambda x: 1 / mp.sqrt(-f(x)), [e2, e1])
        return om_re * om_im
    r = min(roots, key=lambda z: abs(mp.im(z)))
    r = mp.re(r)
    om_re = mp.quad(lambda x: 1 / mp.sqrt(f(x)), [r, mp.inf])
    nu = mp.quad(lambda x: 1 / mp.sqrt(-f(x)), [-mp.inf, r])
    return om_re * nu / 2


class TestLatticeVolume:
    def test_against_quadrature(self):
        mp.prec = 80
        for s in (S32, S11, S27):
            got = lattice_volume(s, 80).volume
            want = quad_volume(s)
            assert abs(got - want) < mp.mpf(10) ** -10, s

    def test_lemniscatic_closed_form(self):
        # y^2 = x^3 - x has a square period lattice; the covolume is
        # (Gamma(1/4) Gamma(1/2) / (2 Gamma(3/4)))^2
        with mp.workprec(100):
            om = mp.gamma(0.25) * mp.sqrt(mp.pi) / (2 * mp.gamma(0.75))
            got = lattice_volume(S32, 96).volume
            assert abs(got - om**2) < mp.mpf(2) ** -80

    def test_claimed_error(self):
        la = lattice_volume(S11, 128)
        assert la.claimed_error < mp.mpf(2) ** -120

    def test_scaling_law(self):
        base = lattice_volume(S11, 128).volume
        for u in (Fraction(2), Fraction(1, 3), Fraction(7, 5)):
            scaled = lattice_volume(transform(S11, u), 128).volume
            ratio = scaled / base
            assert abs(ratio - mp.mpf(u.numerator) ** 2 / mp.mpf(u.denominator) ** 2) \
                < mp.mpf(2) ** -100


class TestNeronVolume:
    def test_model_independence(self):
        v0 = neron_volume(S11, 96)
        v1 = neron_volume(transform(S11, Fraction(5, 7)), 96)
        assert abs(v0 - v1) < mp.mpf(2) ** -80

    def test_faltings_height_definition(self):
        h = faltings_height(S11, 96)
        v = neron_volume(S11, 96)
        assert abs(h + mp.log(v) / 2) < mp.mpf(2) ** -80


class TestVerifyClass:
    def test_l39(self):
        for t, d in ((45, 3), (45, 5), (3, 1), (9, -2), (Fraction(3, 4), 7)):
            rep = verify_class("L3_9", t, d, precision_bits=96)
            assert rep.match, (t, d, rep)

    def test_l211_both_variants(self):
        for variant in ("a", "b"):
            for d in (1, -1, 2, 11, -11, 33):
                rep = verify_class("L2_11", None, d, precision_bits=96,
                                   variant=variant)
                assert rep.match, (variant, d)

    def test_volume_margin(self):
        # winner beats runner-up by at least the isogeny-degree factor
        rep = verify_class("L3_9", 45, 3, precision_bits=96)
        vols = sorted((v.neron_volume for v in rep.vertices), reverse=True)
        assert vols[0] / vols[1] > 3 - 1e-6

    def test_no_family(self):
        with pytest.raises(ValueError):
            verify_class("T4", 8, 1)


class TestDensities:
    def test_squarefree_density(self):
        rep = squarefree_density(3, 10**4)
        assert abs(rep.divisible_fraction - 0.25) < 0.01
        assert abs(rep.squarefree_density - 6 / mp.pi**2) < 0.01

    def test_bound_floor(self):
        with pytest.raises(ValueError):
            squarefree_density(3, 100)

    def test_empirical_matches_exact(self):
        freqs = empirical_prob("L3_9", 3, 10**4)
        assert abs(sum(freqs.values()) - 1) < 1e-12
        for row in prob_table("L3_9", 3):
            assert abs(freqs[row.vertex] - float(row.probability)) < 0.01

from fractions import Fraction

import pytest

from qtwist.localdata import (
    KodairaSymbol,
    classify,
    global_minimal,
    global_pal,
    pal_u,
    row_pal_value,
)
from qtwist.weierstrass import AInvariants, Signature, signature_of, transform, twist_sig

S11 = signature_of(AInvariants(0, -1, 1, -10, -20))       # conductor 11, I5 at 11
S121A2 = signature_of(AInvariants(1, 1, 1, -30, -76))     # II at 11
S121A1 = signature_of(AInvariants(1, 1, 1, -305, 7888))   # II* at 11
S121B2 = signature_of(AInvariants(0, -1, 1, -7, 10))      # III at 11
S121B1 = signature_of(AInvariants(0, -1, 1, -887, -10143))  # III* at 11
S32 = signature_of(AInvariants(0, 0, 0, -1, 0))           # y^2 = x^3 - x, III at 2


class TestKodairaSymbol:
    def test_str(self):
        assert str(KodairaSymbol("I0")) == "I0"
        assert str(KodairaSymbol("In", 5)) == "I5"
        assert str(KodairaSymbol("In*", 3)) == "I3*"
        assert str(KodairaSymbol("II*")) == "II*"

    def test_starred(self):
        assert KodairaSymbol("In*", 2).starred
        assert KodairaSymbol("IV*").starred
        assert not KodairaSymbol("III").starred


class TestClassifyKnownCurves:
    def test_multiplicative(self):
        c = classify(S11, 11)
        assert str(c.kodaira) == "I5"
        assert c.u_p == 1
        assert c.minimal_psig.as_tuple() == (0, 0, 5)

    def test_additive_at_11(self):
        expected = {
            "II": (S121A2, (1, 1, 2)),
            "II*": (S121A1, (4, 5, 10)),
            "III": (S121B2, (1, 2, 3)),
            "III*": (S121B1, (3, 5, 9)),
        }
        for sym, (s, psig) in expected.items():
            c = classify(s, 11)
            assert str(c.kodaira) == sym, sym
            assert c.minimal_psig.as_tuple() == psig
            assert c.u_p == 1

    def test_ramified_twist_of_multiplicative(self):
        # twisting I_n by a d ramified at p yields I_n*
        c = classify(twist_sig(S11, -11), 11)
        assert str(c.kodaira) == "I5*"

    def test_additive_at_2(self):
        c = classify(S32, 2)
        assert str(c.kodaira) == "III"
        assert c.u_p == 1

    def test_good_reduction(self):
        c = classify(S11, 7)
        assert str(c.kodaira) == "I0"
        assert c.minimal_psig.vdelta == 0


class TestClassifyScaling:
    def test_non_minimal_input(self):
        s = transform(S11, Fraction(1, 6))  # blow up by u = 1/6
        c2, c3 = classify(s, 2), classify(s, 3)
        assert c2.u_p == 2 and c3.u_p == 3
        assert str(c2.kodaira) == str(classify(S11, 2).kodaira)

    def test_global_minimal(self):
        s = transform(S11, Fraction(1, 6))
        mini, u = global_minimal(s)
        assert u == 6
        assert mini == S11

    def test_minimal_is_fixed_point(self):
        for s in (S11, S121A2, S121B1, S32):
            mini, u = global_minimal(s)
            assert u == 1 and mini == s

    def test_idempotence(self):
        for s in (S11, S121A2, S32):
            for p in (2, 3, 11):
                c = classify(s, p)
                again = classify(c.minimal_sig, p)
                assert again.u_p == 1
                assert str(again.kodaira) == str(c.kodaira)

    def test_denominator_scale(self):
        # s with p-denominators classifies via a negative power of p
        s = transform(S11, 5)
        c = classify(s, 5)
        assert c.u_p == Fraction(1, 5)
        assert str(c.kodaira) == str(classify(S11, 5).kodaira)


class TestPal:
    def test_rejects_bad_d(self):
        c = classify(S11, 11)
        with pytest.raises(ValueError):
            pal_u(c, S11, 12)
        with pytest.raises(ValueError):
            pal_u(c, S11, 0)

    def test_odd_p_values(self):
        c = classify(S121A2, 11)  # II, unstarred
        assert pal_u(c, S121A2, 11) == 1
        assert pal_u(c, S121A2, 5) == 1
        cstar = classify(S121A1, 11)  # II*, starred
        assert pal_u(cstar, S121A1, 11) == 11
        assert pal_u(cstar, S121A1, 5) == 1

    def test_predicts_minimality_scale_of_twist(self):
        # global_pal(s, d) must be exactly the rescaling that minimizes
        # the twisted signature, for minimal s
        curves = (S11, S121A2, S121B2, S32)
        ds = (-1, 2, -2, 3, -3, 5, 6, -7, 10, 11, -11, 13, -15)
        for s in curves:
            for d in ds:
                mini, u = global_minimal(twist_sig(s, d))
                assert global_pal(s, d) == u, (s, d)

    def test_row_pal_matches_table_one(self):
        for s in (S11, S121A2, S121B1, S32):
            for p in (2, 3, 11):
                c = classify(s, p)
                for d in (1, -1, 2, 3, -5, 6, 11, -11):
                    assert row_pal_value(c, d) == pal_u(c, c.minimal_sig, d), (s, p, d)

from fractions import Fraction
from math import gcd

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lensdinv.lens import (LensSpace, lens_d, lens_d_multiset, lens_d_q1,
                           self_conjugate_labels)

F = Fraction


def unrolled_d_7_3_1():
    # Independent hand unrolling of the recursion for d(L(7,3), 1):
    #   d(7,3,1) = -1/4 + (2+1-7-3)^2/84 - d(3,1,1)
    #   d(3,1,1) = -1/4 + (2+1-3-1)^2/12 - d(1,0,0) = -1/4 + 1/12
    d311 = F(-1, 4) + F(1, 12)
    return F(-1, 4) + F(49, 84) - d311


class TestLensD:
    def test_sphere(self):
        assert lens_d(1, 1, 0) == 0

    def test_l51_label0(self):
        assert lens_d(5, 1, 0) == 1  # -1/4 + 25/20

    def test_l73_label1(self):
        assert lens_d(7, 3, 1) == F(1, 2)
        assert lens_d(7, 3, 1) == unrolled_d_7_3_1()

    def test_non_coprime_raises(self):
        with pytest.raises(ValueError):
            lens_d(4, 2, 0)

    def test_label_and_q_normalised(self):
        assert lens_d(7, 10, 8) == lens_d(7, 3, 1)


class TestClosedForm:
    def test_examples(self):
        assert lens_d_q1(5, 0) == 1
        assert lens_d_q1(5, 2) == F(-1, 5)
        assert lens_d_q1(2, 1) == F(-1, 4)

    def test_recursion_matches_closed_form(self):
        for n in range(1, 61):
            for i in range(n):
                assert lens_d(n, 1, i) == lens_d_q1(n, i)


class TestSelfConjugateLabels:
    def test_examples(self):
        assert self_conjugate_labels(5, 1) == {0}
        assert self_conjugate_labels(10, 1) == {0, 5}
        assert self_conjugate_labels(7, 3) == {1}

    def test_odd_n_label_zero(self):
        for n in range(3, 30, 2):
            assert self_conjugate_labels(n, 1) == {0}

    def test_count_matches_parity_of_p(self):
        for p in range(2, 40):
            for q in range(1, p):
                if gcd(p, q) != 1:
                    continue
                labels = self_conjugate_labels(p, q)
                assert len(labels) == (2 if p % 2 == 0 else 1)


class TestMultisets:
    def test_examples(self):
        assert lens_d_multiset(3, 1) == tuple(sorted([F(1, 2), F(-1, 6), F(-1, 6)]))
        assert lens_d_multiset(3, 2) == tuple(sorted([F(-1, 2), F(1, 6), F(1, 6)]))
        assert lens_d_multiset(2, 1) == (F(-1, 4), F(1, 4))

    def test_orientation_reversal_small(self):
        for p in range(2, 26):
            for q in range(1, p):
                if gcd(p, q) != 1:
                    continue
                flipped = tuple(sorted(-v for v in lens_d_multiset(p, p - q)))
                assert lens_d_multiset(p, q) == flipped


@st.composite
def lens_params(draw):
    p = draw(st.integers(2, 80))
    q = draw(st.integers(1, p - 1).filter(lambda q: gcd(p, q) == 1))
    i = draw(st.integers(0, p - 1))
    return p, q, i


@settings(max_examples=150, deadline=None)
@given(lens_params())
def test_conjugation_symmetry(params):
    # Spin^c conjugation sends label i to p+q-1-i mod p and preserves d.
    p, q, i = params
    assert lens_d(p, q, i) == lens_d(p, q, (p + q - 1 - i) % p)


@settings(max_examples=150, deadline=None)
@given(lens_params())
def test_denominator_divides_4pq(params):
    p, q, i = params
    assert (4 * p * q) % lens_d(p, q, i).denominator == 0


class TestLensSpace:
    def test_normalisation(self):
        assert LensSpace(7, 10).q == 3
        assert LensSpace(7, -4).q == 3

    def test_sphere_special_case(self):
        assert LensSpace(1, 5).d(0) == 0

    def test_bad_input(self):
        with pytest.raises(ValueError):
            LensSpace(6, 3)
        with pytest.raises(ValueError):
            LensSpace(0, 1)
        with pytest.raises(ValueError):
            LensSpace(5, 0)

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lensdinv.exactlin import (CharVector, IntersectionForm, SingularFormError,
                               SpincClass, class_key, initial_char_vectors,
                               invert_exact, is_negative_definite,
                               same_spinc_class)

F = Fraction


def form(rows):
    return IntersectionForm(rows)


MINUS2 = form([[-2]])
CHAIN2 = form([[-2, 1], [1, -2]])


class TestInvertExact:
    def test_single_vertex(self):
        assert invert_exact(MINUS2) == ((F(-1, 2),),)

    def test_two_chain(self):
        expected = ((F(-2, 3), F(-1, 3)), (F(-1, 3), F(-2, 3)))
        assert invert_exact(CHAIN2) == expected

    def test_identity(self):
        eye = form([[1, 0], [0, 1]])
        assert invert_exact(eye) == ((F(1), F(0)), (F(0), F(1)))

    def test_singular_raises(self):
        with pytest.raises(SingularFormError):
            invert_exact(form([[1, 1], [1, 1]]))

    def test_zero_matrix_raises(self):
        with pytest.raises(SingularFormError):
            invert_exact(form([[0]]))


@st.composite
def symmetric_forms(draw, max_size=5):
    n = draw(st.integers(1, max_size))
    entries = st.integers(-6, 6)
    rows = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            rows[i][j] = rows[j][i] = draw(entries)
    return form(rows)


@settings(max_examples=120, deadline=None)
@given(symmetric_forms())
def test_inverse_multiplies_back_to_identity(q):
    try:
        inv = q.inverse()
    except SingularFormError:
        assert q.det() == 0
        return
    n = q.size
    for i in range(n):
        for j in range(n):
            entry = sum(F(q.rows[i][k2]) * inv[k2][j] for k2 in range(n))
            assert entry == F(int(i == j))


class TestNegativeDefinite:
    def test_examples(self):
        assert is_negative_definite(MINUS2)
        assert is_negative_definite(CHAIN2)  # minors -2, 3
        assert not is_negative_definite(form([[2]]))

    def test_semidefinite_rejected(self):
        assert not is_negative_definite(form([[-1, 1], [1, -1]]))

    def test_indefinite_rejected(self):
        assert not is_negative_definite(form([[-2, 3], [3, -2]]))


@settings(max_examples=60, deadline=None)
@given(symmetric_forms(max_size=4), st.integers(1, 4))
def test_minus_gram_matrices_are_negative_definite(q, seed):
    # -A^T A - I is negative definite for any integer A.
    import random

    rng = random.Random(seed + q.size)
    n = q.size
    a = [[rng.randint(-3, 3) for _ in range(n)] for _ in range(n)]
    gram = [[-sum(a[k2][i] * a[k2][j] for k2 in range(n)) - int(i == j)
             for j in range(n)] for i in range(n)]
    assert is_negative_definite(form(gram))


class TestInitialCharVectors:
    def test_single_minus2(self):
        assert {tuple(w) for w in initial_char_vectors(MINUS2)} == {(0,), (2,)}

    def test_single_minus3(self):
        vs = {tuple(w) for w in initial_char_vectors(form([[-3]]))}
        assert vs == {(-1,), (1,), (3,)}

    def test_two_chain_is_product_of_boxes(self):
        vs = {tuple(w) for w in initial_char_vectors(CHAIN2)}
        assert vs == {(a, b) for a in (0, 2) for b in (0, 2)}

    def test_lexicographic_order(self):
        vs = [tuple(w) for w in initial_char_vectors(CHAIN2)]
        assert vs == sorted(vs)

    def test_all_characteristic(self):
        q = form([[-3, 1, 0], [1, -2, 1], [0, 1, -4]])
        for w in initial_char_vectors(q):
            CharVector(w, q)  # construction asserts the parity invariant


class TestCharVector:
    def test_parity_enforced(self):
        with pytest.raises(ValueError):
            CharVector((1,), MINUS2)
        assert tuple(CharVector((4,), MINUS2)) == (4,)

    def test_length_enforced(self):
        with pytest.raises(ValueError):
            CharVector((0, 0), MINUS2)


class TestSpincClasses:
    def test_reflexive(self):
        assert same_spinc_class((0,), (0,), MINUS2)

    def test_single_vertex_two_classes(self):
        # Q^{-1}(0 - 2) = (1), odd, so the classes differ; |det| = 2.
        assert not same_spinc_class((0,), (2,), MINUS2)

    def test_two_chain_example(self):
        assert not same_spinc_class((2, 0), (0, 2), CHAIN2)

    def test_dimension_mismatch(self):
        with pytest.raises(ValueError):
            same_spinc_class((0,), (0, 0), MINUS2)

    def test_shift_by_2q_stays_in_class(self):
        for j in range(CHAIN2.size):
            for w in initial_char_vectors(CHAIN2):
                shifted = [x + 2 * CHAIN2.rows[j][i] for i, x in enumerate(w)]
                assert same_spinc_class(w, shifted, CHAIN2)

    @pytest.mark.parametrize("q", [MINUS2, CHAIN2,
                                   form([[-2, 1, 0], [1, -2, 1], [0, 1, -2]]),
                                   form([[-3, 1], [1, -4]])])
    def test_box_partition_never_exceeds_det(self, q):
        vs = list(initial_char_vectors(q))
        keys = {class_key(q, w) for w in vs}
        assert len(keys) <= abs(q.det())
        # the direct pairwise test agrees with the canonical keys
        for w in vs:
            for w2 in vs:
                assert same_spinc_class(w, w2, q) == (
                    class_key(q, w) == class_key(q, w2))

    def test_spinc_class_equality_and_hash(self):
        a = SpincClass((0, 0), CHAIN2)
        shifted = [0 + 2 * CHAIN2.rows[0][i] for i in range(2)]
        b = SpincClass(shifted, CHAIN2)
        c = SpincClass((2, 0), CHAIN2)
        assert a == b and hash(a) == hash(b)
        assert a != c
        assert {a: "x"}[b] == "x"

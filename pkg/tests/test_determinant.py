import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import M, matrices, matrix_pairs, special
from supertrop import determinant as det
from supertrop.determinant import Singularity
from supertrop.errors import DomainError
from supertrop.matrix import GenPerm, Matrix, identity, mat_mul, permutation_matrix, transpose
from supertrop.oracle import brute_force_per
from supertrop.random_gen import random_gen_perm
from supertrop.semiring import ONE, ZERO, SymPair, TropElem, add, ghost_surpass, mul, sym_mul, sym_surpass
import random

T = TropElem.tangible
G = TropElem.ghost_of

INTRO = M("0 0 _; _ 0 0; 0 _ 0")
BL1 = M("1 0; 2 4")


def test_bl1_permanents():
    assert det.per(mat_mul(BL1, transpose(BL1))) == T(10)
    assert det.per(mat_mul(transpose(BL1), BL1)) == G(12)
    assert det.per_assignment(mat_mul(BL1, transpose(BL1))) == T(10)


def test_identity():
    for n in range(1, 6):
        assert det.per(identity(n)) == ONE
        b = det.bid(identity(n))
        assert (b.per_plus, b.per_minus) == (ONE, ZERO)
        assert det.classify_singularity(identity(n)) is Singularity.NONSINGULAR


def test_intro_matrix_singular_but_not_symmetrically():
    b = det.bid(INTRO)
    assert (b.per_plus, b.per_minus) == (G(0), ZERO)
    assert det.classify_singularity(INTRO) is Singularity.SINGULAR


def test_bid_two_by_two():
    b = det.bid(M("0 -1; -1 0"))
    assert (b.per_plus, b.per_minus) == (T(0), T(-2))


def test_bl1_symmetric_singularity():
    assert det.classify_singularity(mat_mul(transpose(BL1), BL1)) is Singularity.SYMMETRICALLY_SINGULAR
    assert det.classify_singularity(mat_mul(BL1, transpose(BL1))) is Singularity.NONSINGULAR


def test_dominance_examples():
    p = (2, 0, 1)
    assert det.dominance(permutation_matrix(p)).uniformly_dominant == p
    r = det.dominance(M("0 0; _ 0"))
    assert r.dominant == ((0, 1),)
    assert r.strictly_dominant == (0, 1)
    assert r.uniformly_dominant is None
    assert det.dominance(M("0 _; _ 0")).uniformly_dominant == (0, 1)


def test_dominance_of_zero_permanent_is_empty():
    r = det.dominance(M("0 _; 0 _"))
    assert r.value == ZERO and r.dominant == () and r.strictly_dominant is None


def test_dominance_ties():
    r = det.dominance(M("0 0; 0 0"))
    assert set(r.dominant) == {(0, 1), (1, 0)}
    assert r.strictly_dominant is None


def test_per_assignment_edge_cases():
    assert det.per_assignment(M("1 2; _ _")) == ZERO
    assert det.per_assignment(M("1 2; 3 4")) == G(5)
    assert det.per_assignment(M("1/2 0; 0 1/3")) == T(__import__("fractions").Fraction(5, 6))


def test_per_assignment_beyond_enumeration_bound():
    n = 12
    a = Matrix([[0 if i == j else -1 for j in range(n)] for i in range(n)])
    assert det.per_assignment(a) == ONE
    with pytest.raises(DomainError):
        det.per(a)
    with pytest.raises(DomainError):
        det.bid(a)


def test_per_values_and_track_product():
    a = M("1 2; 3 4")
    assert det.per_values(a) == [T(5), T(5)]
    assert det.track_product(a, (1, 0)) == T(5)


def test_is_definite():
    assert det.is_definite(M("0 -1; -2 0"))
    assert not det.is_definite(M("0 1; 0 0"))  # the swap ties at 1 > 0
    assert not det.is_definite(M("0 0; 0 0"))
    assert not det.is_definite(M("1 _; _ -1"))


# -- cross-checks against the enumeration oracle --------------------------


@given(matrices(max_n=5))
def test_per_and_bid_match_oracle(a):
    bf = brute_force_per(a)
    b = det.bid(a)
    assert det.per(a) == bf.per == b.per
    assert (b.per_plus, b.per_minus) == bf.bid
    assert frozenset(det.dominance(a).dominant) == bf.dominant


@given(matrices(max_n=6))
def test_assignment_matches_enumeration(a):
    assert det.per_assignment(a) == det.per(a)


@given(matrices(max_n=5))
def test_classification_consistent(a):
    s = det.classify_singularity(a)
    assert (s is Singularity.NONSINGULAR) == det.per(a).is_tangible
    assert (s is Singularity.SYMMETRICALLY_SINGULAR) == det.is_symmetrically_singular(a)
    r = det.dominance(a)
    assert (r.strictly_dominant is not None) == (len(r.dominant) == 1)
    if r.uniformly_dominant is not None:
        assert r.uniformly_dominant == r.strictly_dominant


# -- invariants -----------------------------------------------------------


@given(matrix_pairs(max_n=4))
def test_per_product_surpasses(ab):
    a, b = ab
    assert ghost_surpass(det.per(mat_mul(a, b)), mul(det.per(a), det.per(b)))


@given(matrix_pairs(max_n=4))
def test_bid_product_surpasses(ab):
    a, b = ab
    lhs = det.bid(mat_mul(a, b)).pair
    assert sym_surpass(lhs, sym_mul(det.bid(a).pair, det.bid(b).pair))


@given(matrices(max_n=4), st.integers(0, 2**32))
def test_per_multiplicative_against_gen_perm(a, seed):
    p = random_gen_perm(random.Random(seed), a.n).matrix
    expect = mul(det.per(a), det.per(p))
    assert det.per(mat_mul(a, p)) == expect == det.per(mat_mul(p, a))


@given(matrices(max_n=5))
def test_per_transpose(a):
    assert det.per(transpose(a)) == det.per(a)


@given(st.lists(special("SL1", 2, 2), min_size=2, max_size=3), st.integers(-3, 3))
def test_uniform_dominance_composes(mats, c):
    # SL^1 samples are permuted strictly normal matrices: uniformly dominant tracks
    prod = mats[0]
    pi = det.dominance(mats[0]).uniformly_dominant
    for m in mats[1:]:
        prod = mat_mul(prod, m)
        pi = tuple(det.dominance(m).uniformly_dominant[pi[i]] for i in range(2))
    assert det.is_uniformly_dominant(prod, pi)
    assert det.per(prod) == ONE

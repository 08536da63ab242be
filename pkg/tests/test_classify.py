import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import M, matrices, special
from supertrop import classify as cl
from supertrop import determinant as det
from supertrop.errors import SingularityError, WitnessError
from supertrop.matrix import GenPerm, elementary, identity, mat_mul, permutation_matrix, transpose
from supertrop.nabla import nabla
from supertrop.semiring import ONE, TropElem

SINGSQ3 = M("_ 5 0; 0 _ _; _ 0 _")
GENMON1 = M("0 0 _ _; _ 0 0 _; _ _ 0 0; 0 _ _ 0")


# -- shape classes --------------------------------------------------------


@pytest.mark.parametrize("a, strict", [(-1, True), ("-1/2", True), (0, False), (3, False)])
def test_gaussians_are_definite(a, strict):
    e = elementary(3, 0, 2, a)
    s = cl.shape_class(e)
    assert s.definite
    assert s.strictly_normal == strict


def test_shape_examples():
    assert cl.shape_class(identity(3)) == cl.ShapeClass(True, True, True)
    assert cl.shape_class(M("0 0; _ 0")) == cl.ShapeClass(True, True, False)
    assert cl.shape_class(M("0 1; -5 0")) == cl.ShapeClass(True, False, False)
    assert cl.shape_class(M("1 _; _ -1")) == cl.ShapeClass(False, False, False)


# -- group membership -----------------------------------------------------


def test_badprod_membership():
    prod = mat_mul(M("0 1; _ 0"), M("0 _; 1 0"))
    assert prod == M("2 1; 1 0")
    assert det.per(prod) == TropElem.ghost_of(2)
    m = cl.group_membership(prod)
    assert m.in_BQSL and not m.in_SL and not m.in_QSL_circ


def test_membership_examples():
    assert cl.group_membership(identity(3)) == cl.Membership(True, True, True)
    g = GenPerm((1, 2, 0), (TropElem.tangible(3), TropElem.tangible(-1), TropElem.tangible(-2))).matrix
    assert cl.group_membership(g).in_SL
    assert not cl.group_membership(M("1 _; _ 0")).in_BQSL


def test_qsl_circ_literal_reading():
    # bid = (0v, -2): the ghost one sits strictly above the odd slot
    a = M("0v -3; 1 0")
    b = det.bid(a)
    assert (b.per_plus, b.per_minus) == (TropElem.ghost_of(0), TropElem.tangible(-2))
    m = cl.group_membership(a)
    assert m.in_QSL_circ and m.in_BQSL and not m.in_SL


def test_genmon1_witness():
    m = cl.group_membership(GENMON1)
    assert det.per(GENMON1) == TropElem.ghost_of(0)
    assert m.in_BQSL and not m.in_SL
    assert cl.nonfact_pattern(GENMON1)
    assert cl.two_track_decomposition(GENMON1) == ((0, 1, 2, 3), (1, 2, 3, 0), 1)


def test_nonfact_examples():
    assert not cl.nonfact_pattern(identity(4))
    assert cl.nonfact_pattern(M("1 2 _; _ 3 4; 5 _ 6"))
    # a ghost on the support disqualifies the pattern
    assert not cl.nonfact_pattern(M("1 2v _; _ 3 4; 5 _ 6"))
    # n = 2 admits no 0 < t < 1
    assert not cl.nonfact_pattern(M("0 0; 0 0"))


def test_in_sl1_examples():
    for p in itertools.permutations(range(3)):
        assert cl.in_SL1(permutation_matrix(p))
    assert cl.in_SL1(M("0 -1; -2 0"))
    assert not cl.in_SL1(M("0 0; _ 0"))


# -- factor-out -----------------------------------------------------------


def test_factor_out_examples():
    a = M("0 -1; -3 0")
    p, a1 = cl.factor_out(a)
    assert p.is_identity() and a1 == a
    pm = permutation_matrix((2, 0, 1))
    p, a1 = cl.factor_out(pm)
    assert p.matrix == pm and a1 == identity(3)


def test_factor_out_singsq3():
    p, a1 = cl.factor_out(SINGSQ3)
    assert p.perm == (2, 0, 1)
    assert mat_mul(p.matrix, a1) == SINGSQ3
    assert det.is_definite(a1)
    q, a2 = cl.factor_out(SINGSQ3, cl.Side.RIGHT)
    assert mat_mul(a2, q.matrix) == SINGSQ3 and det.is_definite(a2)


def test_factor_out_rejects_singular():
    with pytest.raises(SingularityError):
        cl.factor_out(M("1 1; 1 1"))


@given(special("nonsingular", 1, 4))
def test_factor_out_random(a):
    for side in cl.Side:
        p, part = cl.factor_out(a, side)
        rebuilt = mat_mul(p.matrix, part) if side is cl.Side.LEFT else mat_mul(part, p.matrix)
        assert rebuilt == a and det.is_definite(part)


@given(special("SL", 1, 4))
def test_factor_out_stays_in_sl(a):
    p, _ = cl.factor_out(a)
    assert p.per() == ONE


# -- perij witnesses ------------------------------------------------------


def _verify(m, w):
    prod = mat_mul(mat_mul(m, w.u), m) if w.mode is cl.WitnessMode.MUM else mat_mul(mat_mul(transpose(w.u), m), w.u)
    assert prod == w.product
    assert cl.in_SL1(w.u)
    assert det.classify_singularity(prod) is det.Singularity.SYMMETRICALLY_SINGULAR


def test_perij_permutation_witness():
    m = M("0 0; -1 0")
    w = cl.perij_witness(m)
    assert w.mode is cl.WitnessMode.MUM
    _verify(m, w)


def test_perij_gaussian_witness():
    m = M("-1 _; _ 1")
    w = cl.perij_witness(m)
    assert w.mode is cl.WitnessMode.UtMU
    assert cl.is_strictly_normal(w.u)
    _verify(m, w)


def test_perij_errors():
    with pytest.raises(WitnessError):
        cl.perij_witness(identity(3))
    with pytest.raises(WitnessError):
        cl.perij_witness(M("1 _; _ 0"))


@given(special("SL", 2, 3))
def test_perij_random(m):
    if cl.in_SL1(m):
        return
    _verify(m, cl.perij_witness(m))


# -- monoid closure -------------------------------------------------------


@given(st.integers(2, 4).flatmap(lambda n: st.tuples(special("SL1", n, n), special("SL1", n, n))))
def test_sl1_closed(ab):
    a, b = ab
    assert cl.in_SL1(mat_mul(a, b))
    assert cl.in_SL1(nabla(a))


@given(st.integers(1, 4).flatmap(lambda n: st.tuples(special("strictly_normal", n, n), special("strictly_normal", n, n))))
def test_strictly_normal_monoid(ab):
    a, b = ab
    prod = mat_mul(a, b)
    assert cl.is_strictly_normal(prod) and det.per(prod) == ONE
    assert cl.is_strictly_normal(nabla(a)) and cl.is_strictly_normal(transpose(a))


@given(st.integers(-8, 8), st.integers(-8, 8), st.integers(-8, 8))
def test_bqsl2_two_factor_generation(u, u2, v):
    v2 = u2 + v - u  # pairing u v' = u' v
    if not u + v2 > 0:
        return
    left = M(f"0 _; {v - u} 0")
    right = M(f"{u} {u2}; _ {-u}")
    assert det.per(left) == ONE and det.per(right) == ONE
    target = mat_mul(left, right)
    assert target == M(f"{u} {u2}; {v} {v2}")
    assert cl.in_BQSL(target)


# -- report ---------------------------------------------------------------


def test_classify_record():
    r = cl.classify(M("1 2; 3 4")).to_json()
    assert r["per"] == "5v"
    assert r["bid"] == ["5", "5"]
    assert r["singularity"] == "symmetrically_singular"
    assert r["in_BQSL"] and not r["in_SL"]  # a ghost above one still surpasses one


@given(matrices(max_n=4))
def test_class_implications(a):
    r = cl.classify(a)
    assert not r.strictly_normal or r.normal
    assert not r.normal or r.definite
    assert not r.definite or r.in_SL
    assert not r.in_SL or r.in_QSL_circ
    assert not r.in_QSL_circ or r.in_BQSL
    assert not r.in_SL1 or r.in_SL

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import M, matrices, special
from supertrop import determinant as det
from supertrop import monoid as mo
from supertrop import nabla as nb
from supertrop.classify import is_strictly_normal
from supertrop.errors import ShapeError, SingularityError
from supertrop.matrix import identity, mat_mul, mat_prod
from supertrop.semiring import ZERO, TropElem

SINGSQ = M("-1 -1; 0 1")
SINGSQ3 = M("_ 5 0; 0 _ _; _ 0 _")


def test_left_quasi_identity_is_left_member():
    q = nb.quasi_pack(SINGSQ)
    r = mo.semigroup_membership(SINGSQ, q.left)
    assert r.in_S_left


def test_nabla_regular_matrix_is_in_both_one_sided_semigroups():
    a = nb.nabla_closure(SINGSQ)
    assert nb.is_nabla_regular(a)
    r = mo.semigroup_membership(a, a)
    assert r.in_S_left and r.in_S_right


def test_reversible_unit_member():
    q = nb.quasi_pack(SINGSQ3)
    assert q.reversible
    assert mo.two_sided_unit(SINGSQ3) == q.core
    assert mo.semigroup_membership(SINGSQ3, q.core).in_S_A


def test_unit_times_a_is_not_fixed_on_the_right():
    # I_A A is fixed by I_A on the left only: entry (1, 2) of (I_A A) I_A is
    # 10v + 10v = 20v while I_A A has 5v there
    q = nb.quasi_pack(SINGSQ3)
    b = mat_mul(q.core, SINGSQ3)
    assert b == mat_prod(q.core, SINGSQ3, q.nabla, SINGSQ3) == M("10v 5v 0; 0 _ _; 5v 0 _")
    assert b != mat_prod(SINGSQ3, q.nabla, SINGSQ3)
    assert mat_mul(b, q.core)[0, 1] == TropElem.ghost_of(20)
    r = mo.semigroup_membership(SINGSQ3, b)
    assert (r.in_S_left, r.in_S_right, r.in_S_A) == (True, True, False)


def test_membership_outside_bqsl_is_false():
    r = mo.semigroup_membership(SINGSQ, M("1 _; _ 0"))
    assert r.as_tuple() == (False, False, False)


def test_membership_errors():
    with pytest.raises(SingularityError):
        mo.semigroup_membership(M("0 _; 0 _"), identity(2))
    with pytest.raises(ShapeError):
        mo.semigroup_membership(identity(2), identity(3))


def test_ghost_permanent_is_flagged():
    r = mo.semigroup_membership(M("0 0; 0 0"), identity(2))
    assert r.extended


def test_conjugate_identity_gives_right_quasi_identity():
    assert mo.conjugate(SINGSQ, identity(2)) == nb.quasi_pack(SINGSQ).right
    assert mo.identity_conjugate(SINGSQ) == nb.quasi_pack(SINGSQ).right


def test_singsq41_product_is_singular():
    b = M("0 _; 1 0")
    a = M("0 5v; _ 0")
    assert nb.is_quasi_identity(a)
    bab = mat_prod(b, a, b)
    assert bab == M("6v 5v; 7v 6v")
    assert not det.per(bab).is_tangible


def test_two_by_two_conjugate_family_is_singular():
    # alpha = beta = -1, x = 2, y = -2, z = w = -5
    a = M("-1 0; 0 -1")
    b = M("2 -5; -5 -2")
    assert det.per(a).is_tangible and det.per(b) == TropElem.tangible(0)
    c = mo.conjugate(a, b)
    assert c == M("0 1; 1 2")
    assert det.per(c) == TropElem.ghost_of(2)


def test_conjugate_errors():
    with pytest.raises(SingularityError):
        mo.conjugate(M("1 2; 3 4"), identity(2))
    with pytest.raises(ShapeError):
        mo.conjugate(identity(2), identity(3))


def test_v_space_columns_and_projection():
    left = nb.quasi_pack(SINGSQ).left
    for j in range(2):
        assert mo.v_space(SINGSQ, mo.column(left, j))
    v = mo.project_to_v_space(SINGSQ, [3, ZERO])
    assert mo.v_space(SINGSQ, v)
    assert not mo.v_space(SINGSQ, [0, 5])
    with pytest.raises(ShapeError):
        mo.v_space(SINGSQ, [0])


# -- invariants -----------------------------------------------------------


@given(st.integers(1, 4).flatmap(lambda n: st.tuples(special("nonsingular", n, n), matrices(n=n), matrices(n=n))))
def test_left_semigroup_closed_under_right_multiplication(data):
    a, x, y = data
    left = nb.quasi_pack(a).left
    b = mat_mul(left, x)  # always a member of S^l
    assert mat_mul(left, b) == b
    assert mat_mul(left, mat_mul(b, y)) == mat_mul(b, y)


@given(special("nonsingular", 1, 4), matrices(max_n=4))
def test_reversible_core_is_two_sided_unit(a, x):
    q = nb.quasi_pack(a)
    if not q.reversible or x.n != a.n:
        return
    b = mat_prod(q.core, x, q.core)
    assert mat_mul(q.core, b) == b and mat_mul(b, q.core) == b


@given(st.integers(1, 4).flatmap(lambda n: st.tuples(special("nonsingular", n, n), special("strictly_normal", n, n), special("strictly_normal", n, n))))
def test_conjugated_strictly_normal_closed(data):
    a, j1, j2 = data
    if not is_strictly_normal(nb.quasi_pack(a).left):
        return
    prod = mat_mul(mo.conjugate(a, j1), mo.conjugate(a, j2))
    assert prod == mo.conjugate(a, mat_prod(j1, mat_mul(a, nb.nabla(a)), j2))


@given(st.integers(1, 4).flatmap(lambda n: st.tuples(special("nonsingular", n, n), matrices(n=n), st.lists(st.integers(-5, 5), min_size=n, max_size=n))))
def test_intertwining(data):
    a, x, raw = data
    an = nb.nabla(a)
    b = mat_mul(mat_mul(a, an), x)
    v = mo.project_to_v_space(a, raw)
    w = mo.nabla_map(a, v)
    assert mo.v_space(a, v) and mo.v_space(an, w)
    assert mo.conjugate(a, b).apply(w) == an.apply(b.apply(v))

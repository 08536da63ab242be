"""The semigroups S_A^l, S_A^r, S_A, conjugation by A and the fixed space V_A."""

from dataclasses import dataclass
from typing import Sequence, Tuple

from .classify import in_BQSL
from .determinant import per
from .errors import ShapeError, SingularityError
from .matrix import Matrix, identity, mat_mul
from .nabla import nabla, quasi_pack
from .semiring import TropElem, elem

Vector = Tuple[TropElem, ...]


def vector(xs: Sequence) -> Vector:
    return tuple(elem(x) for x in xs)


def _tangible_nabla(a: Matrix) -> Matrix:
    p = per(a)
    if not p.is_tangible:
        raise SingularityError(f"per(A) = {p}; A^nabla needs a tangible nonzero permanent")
    return nabla(a)


@dataclass(frozen=True)
class SemigroupMembership:
    in_S_left: bool
    in_S_right: bool
    in_S_A: bool
    extended: bool = False  # per(A) was ghost, so A^nabla used the ghost inverse

    def as_tuple(self):
        return self.in_S_left, self.in_S_right, self.in_S_A


def semigroup_membership(a: Matrix, b: Matrix) -> SemigroupMembership:
    """``B`` in ``S_A^l`` (``I^l_A B = B``), ``S_A^r`` (``B I^r_A = B``) and ``S_A``.

    ``S_A`` asks for ``I_A B = B I_A = B`` with ``I_A = I^l_A I^r_A I^l_A``.
    Candidates outside BQSL are not members of any of the three.
    """
    if a.n != b.n:
        raise ShapeError("A and B must have the same size")
    p = per(a)
    if p.value is None:
        raise SingularityError("per(A) is zero")
    if not in_BQSL(b):
        return SemigroupMembership(False, False, False, p.ghost)
    pack = quasi_pack(a, allow_ghost=True)
    unit = pack.core
    left = mat_mul(pack.left, b) == b
    right = mat_mul(b, pack.right) == b
    both = mat_mul(unit, b) == b and mat_mul(b, unit) == b
    return SemigroupMembership(left, right, both, p.ghost)


def two_sided_unit(a: Matrix) -> Matrix:
    """``I_A = I^l_A I^r_A I^l_A``."""
    return quasi_pack(a).core


def conjugate(a: Matrix, b: Matrix) -> Matrix:
    """``B^A = A^nabla B A``."""
    if a.n != b.n:
        raise ShapeError("A and B must have the same size")
    return mat_mul(mat_mul(_tangible_nabla(a), b), a)


def nabla_map(a: Matrix, v: Sequence) -> Vector:
    """``v -> A^nabla v``, which sends ``V_A`` into ``V_{A^nabla}``."""
    return _tangible_nabla(a).apply(vector(v))


def v_space(a: Matrix, v: Sequence) -> bool:
    """Membership of ``v`` in ``V_A = {v : I^l_A v = v}``."""
    v = vector(v)
    if len(v) != a.n:
        raise ShapeError(f"vector of length {len(v)} for a {a.n}x{a.n} matrix")
    left = mat_mul(a, _tangible_nabla(a))
    return left.apply(v) == v


def project_to_v_space(a: Matrix, v: Sequence) -> Vector:
    """``I^l_A v``, always in ``V_A``."""
    return mat_mul(a, _tangible_nabla(a)).apply(vector(v))


def column(m: Matrix, j: int) -> Vector:
    return tuple(m.rows[i][j] for i in range(m.n))


def identity_conjugate(a: Matrix) -> Matrix:
    return conjugate(a, identity(a.n))

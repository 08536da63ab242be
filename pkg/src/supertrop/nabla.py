"""Adjoints, the quasi-inverse ``A^nabla`` and quasi-identities."""

from dataclasses import dataclass
from typing import Optional

from .determinant import _per_layers, per
from .errors import DomainError, ShapeError, SingularityError
from .matrix import Matrix, _mk, identity, mat_mul, scalar_mul
from .semiring import ONE, ZERO, TropElem, inv, sqrt


def adj(a: Matrix) -> Matrix:
    """Adjoint: entry ``(i, j)`` is the permanent of ``A`` without row ``j`` and column ``i``."""
    n = a.n
    if n == 1:
        return identity(1)
    full = (1 << n) - 1
    out = [[ZERO] * n for _ in range(n)]
    for r in range(n):
        # one DP with row r removed yields every minor (r, c) at once
        layer = _per_layers(a.rows, skip_row=r)
        for c in range(n):
            hit = layer.get(full ^ (1 << c))
            if hit is not None:
                out[c][r] = _mk(*hit)
    return Matrix._raw(tuple(tuple(r) for r in out))


def nabla(a: Matrix, allow_ghost: bool = False) -> Matrix:
    """``per(A)^{-1} adj(A)``.

    Defined for tangible permanents.  With ``allow_ghost=True`` a ghost
    permanent is inverted as a ghost, which makes every entry of the
    result ghost.
    """
    p = per(a)
    if p.value is None:
        raise SingularityError("per(A) is zero, so A^nabla is undefined")
    if p.ghost and not allow_ghost:
        raise SingularityError(f"per(A) = {p} is ghost; pass allow_ghost=True for the ghost-inverse extension")
    return scalar_mul(inv(p), adj(a))


def nabla2(a: Matrix, allow_ghost: bool = False) -> Matrix:
    return nabla(nabla(a, allow_ghost), allow_ghost)


def is_idempotent(e: Matrix) -> bool:
    return mat_mul(e, e) == e


def is_quasi_identity(e: Matrix) -> bool:
    """Nonsingular idempotent."""
    return per(e).is_tangible and is_idempotent(e)


def left_quasi_identity(a: Matrix, allow_ghost=False) -> Matrix:
    return mat_mul(a, nabla(a, allow_ghost))


def right_quasi_identity(a: Matrix, allow_ghost=False) -> Matrix:
    return mat_mul(nabla(a, allow_ghost), a)


@dataclass(frozen=True)
class QuasiPack:
    """``left = A A^nabla``, ``right = A^nabla A`` and their two triple products."""

    nabla: Matrix
    left: Matrix
    right: Matrix
    core: Matrix
    core_tilde: Matrix

    @property
    def reversible(self) -> bool:
        return self.core == self.core_tilde

    @property
    def commuting(self) -> bool:
        return mat_mul(self.left, self.right) == mat_mul(self.right, self.left)


def quasi_pack(a: Matrix, allow_ghost: bool = False) -> QuasiPack:
    an = nabla(a, allow_ghost)
    left = mat_mul(a, an)
    right = mat_mul(an, a)
    lr = mat_mul(left, right)
    core = mat_mul(lr, left)
    core_tilde = mat_mul(right, mat_mul(left, right))
    return QuasiPack(an, left, right, core, core_tilde)


def is_reversible(a: Matrix) -> bool:
    return quasi_pack(a).reversible


def is_nabla_regular(a: Matrix) -> bool:
    """``A == A A^nabla A``."""
    return a == mat_mul(mat_mul(a, nabla(a)), a)


def nabla_closure(a: Matrix) -> Matrix:
    """``A A^nabla A``, which is always nabla-regular."""
    return mat_mul(mat_mul(a, nabla(a)), a)


# -- 2x2 paired quasi-identities ------------------------------------------


def _quasi_2x2_params(q: Matrix):
    if q.n != 2:
        raise ShapeError("paired quasi-identities are 2x2")
    if q[0, 0] != ONE or q[1, 1] != ONE:
        raise DomainError("expected a 2x2 quasi-identity with a diagonal of ones")
    u, v = q[0, 1], q[1, 0]
    if u.is_tangible or v.is_tangible:
        raise DomainError("off-diagonal entries of a quasi-identity are ghost or zero")
    return u, v


def is_paired(q1: Matrix, q2: Matrix) -> bool:
    """``u v == u' v'`` on nu-values (log-sums, zero absorbing)."""
    u, v = _quasi_2x2_params(q1)
    u2, v2 = _quasi_2x2_params(q2)

    def prod(x, y):
        return None if x.value is None or y.value is None else x.value + y.value

    return prod(u, v) == prod(u2, v2)


def paired_2x2(q1: Matrix, q2: Matrix) -> Optional[Matrix]:
    """A matrix ``A`` of permanent one with ``A A^nabla = q1`` and ``A^nabla A = q2``.

    Uses ``b = sqrt(u u')``, ``c = sqrt(v v')`` and ``a = sqrt(u / u')``
    (or ``sqrt(v' / v)`` when ``u`` vanishes).  The candidate is checked
    exactly; ``None`` is returned when the pair is not paired or when a
    zero pattern admits no reconstruction.
    """
    if not is_paired(q1, q2):
        return None
    u, v = (TropElem(x.value, False) if x.value is not None else ZERO for x in _quasi_2x2_params(q1))
    u2, v2 = (TropElem(x.value, False) if x.value is not None else ZERO for x in _quasi_2x2_params(q2))
    if u.value is not None and u2.value is not None:
        a = sqrt(TropElem(u.value - u2.value))
    elif v.value is not None and v2.value is not None:
        a = sqrt(TropElem(v2.value - v.value))
    else:
        a = ONE
    b = sqrt(u * u2)
    c = sqrt(v * v2)
    cand = Matrix([[a, b], [c, inv(a)]])
    if per(cand) != ONE:
        return None
    pack = quasi_pack(cand)
    if pack.left != q1 or pack.right != q2:
        return None
    return cand

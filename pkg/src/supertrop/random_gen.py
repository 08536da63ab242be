"""Seeded random scalars and matrices of the special classes.

Log-values are uniform integers in ``[-radius, radius]``; zeros and ghosts
appear often so that ties, which drive the interesting ghost behaviour,
are frequent.
"""

import random
from dataclasses import dataclass

from .determinant import is_definite, per
from .errors import DomainError, InternalError
from .matrix import GenPerm, Matrix, mat_mul, permutation_matrix
from .semiring import ONE, ZERO, TropElem

KINDS = (
    "general",
    "tangible",
    "nonsingular",
    "SL",
    "definite",
    "strictly_normal",
    "SL1",
    "gen_perm",
)


@dataclass(frozen=True)
class ScalarDist:
    radius: int = 8
    ghost_p: float = 0.2
    zero_p: float = 0.15


DEFAULT_DIST = ScalarDist()


def random_scalar(rng: random.Random, dist: ScalarDist = DEFAULT_DIST, *, ghosts=True, zeros=True, hi=None):
    if zeros and rng.random() < dist.zero_p:
        return ZERO
    top = dist.radius if hi is None else hi
    v = rng.randint(-dist.radius, top)
    return TropElem(v, ghosts and rng.random() < dist.ghost_p)


def random_matrix(rng, n, dist=DEFAULT_DIST, *, ghosts=True, zeros=True) -> Matrix:
    return Matrix._raw(
        tuple(tuple(random_scalar(rng, dist, ghosts=ghosts, zeros=zeros) for _ in range(n)) for _ in range(n))
    )


def random_gen_perm(rng, n, dist=DEFAULT_DIST, *, per_one=False) -> GenPerm:
    perm = list(range(n))
    rng.shuffle(perm)
    w = [rng.randint(-dist.radius, dist.radius) for _ in range(n)]
    if per_one:
        w[-1] -= sum(w)
    return GenPerm(tuple(perm), tuple(TropElem(x) for x in w))


def _with_diag_one(rows):
    n = len(rows)
    return Matrix._raw(tuple(tuple(ONE if i == j else rows[i][j] for j in range(n)) for i in range(n)))


def random_definite(rng, n, dist=DEFAULT_DIST) -> Matrix:
    """Rejection-sample the off-diagonal; lower it if the samples keep failing."""
    rows = None
    for _ in range(4):
        rows = [[random_scalar(rng, dist) for _ in range(n)] for _ in range(n)]
        a = _with_diag_one(rows)
        if is_definite(a):
            return a
    shift = 1
    while True:
        a = _with_diag_one(
            [[x if x.value is None else TropElem(x.value - shift, x.ghost) for x in r] for r in rows]
        )
        if is_definite(a):
            return a
        shift *= 2


def random_strictly_normal(rng, n, dist=DEFAULT_DIST) -> Matrix:
    rows = [[random_scalar(rng, dist, hi=-1) for _ in range(n)] for _ in range(n)]
    return _with_diag_one(rows)


def random_special(seed, n: int, kind: str = "general", dist: ScalarDist = DEFAULT_DIST) -> Matrix:
    """A random matrix of the requested class, deterministic in ``seed``.

    ``seed`` may be an int, a string or a ``random.Random`` instance.
    Class membership is asserted after construction.
    """
    if n < 1:
        raise DomainError("n must be positive")
    rng = seed if isinstance(seed, random.Random) else random.Random(seed)
    if kind == "general":
        return random_matrix(rng, n, dist)
    if kind == "tangible":
        return random_matrix(rng, n, dist, ghosts=False)
    if kind == "nonsingular":
        for _ in range(30):
            a = random_matrix(rng, n, dist)
            if per(a).is_tangible:
                return a
        a = mat_mul(random_gen_perm(rng, n, dist).matrix, random_definite(rng, n, dist))
        _expect(per(a).is_tangible, kind)
        return a
    if kind == "definite":
        return random_definite(rng, n, dist)
    if kind == "strictly_normal":
        return random_strictly_normal(rng, n, dist)
    if kind == "SL":
        p = random_gen_perm(rng, n, dist, per_one=True).matrix
        d = random_definite(rng, n, dist)
        a = mat_mul(p, d) if rng.random() < 0.5 else mat_mul(d, p)
        _expect(per(a) == ONE, kind)
        return a
    if kind == "SL1":
        p = list(range(n))
        q = list(range(n))
        rng.shuffle(p)
        rng.shuffle(q)
        j = random_strictly_normal(rng, n, dist)
        return mat_mul(mat_mul(permutation_matrix(p), j), permutation_matrix(q))
    if kind == "gen_perm":
        return random_gen_perm(rng, n, dist).matrix
    raise DomainError(f"unknown matrix kind {kind!r}; expected one of {', '.join(KINDS)}")


def _expect(ok, kind):
    if not ok:
        raise InternalError(f"random_special produced a matrix outside class {kind!r}")

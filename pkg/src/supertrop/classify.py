"""Shape classes, SL-family membership, factor-out and the perij witnesses."""

import enum
import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Optional, Tuple

from .determinant import (
    DominanceReport,
    Singularity,
    bid,
    classify_singularity,
    dominance,
    dominant_permutation,
    is_definite,
    per,
)
from .errors import InternalError, SingularityError, WitnessError
from .matrix import GenPerm, Matrix, Perm, elementary, mat_mul, permutation_matrix, transpose
from .semiring import ONE, ONE_GHOST, ZERO, TropElem, format_scalar, ghost_surpass, nu_le, nu_lt


# -- shape classes --------------------------------------------------------


@dataclass(frozen=True)
class ShapeClass:
    definite: bool
    normal: bool
    strictly_normal: bool


def shape_class(a: Matrix) -> ShapeClass:
    if not is_definite(a):
        return ShapeClass(False, False, False)
    off = [a.rows[i][j] for i in range(a.n) for j in range(a.n) if i != j]
    normal = all(nu_le(x, ONE) for x in off)
    strict = all(nu_lt(x, ONE) for x in off)
    return ShapeClass(True, normal, strict)


def is_strictly_normal(a: Matrix) -> bool:
    # strict off-diagonal bound already forces the identity to dominate
    if any(a.rows[i][i] != ONE for i in range(a.n)):
        return False
    return all(nu_lt(a.rows[i][j], ONE) for i in range(a.n) for j in range(a.n) if i != j)


# -- SL family ------------------------------------------------------------


@dataclass(frozen=True)
class Membership:
    in_SL: bool
    in_BQSL: bool
    in_QSL_circ: bool


def group_membership(a: Matrix) -> Membership:
    """Membership in SL (per == one), BQSL (per |= one) and the symmetrized QSL_o.

    QSL_o takes the literal reading: one slot of the bideterminant equals
    the ghost one and is strictly nu-above the other slot.
    """
    b = bid(a)
    p = b.per
    in_sl = p == ONE
    in_bq = ghost_surpass(p, ONE)
    alpha, beta = b.per_plus, b.per_minus
    circ = in_bq and ((alpha == ONE_GHOST and nu_lt(beta, alpha)) or (beta == ONE_GHOST and nu_lt(alpha, beta)))
    return Membership(in_sl, in_bq, in_sl or circ)


def in_SL(a: Matrix) -> bool:
    return per(a) == ONE


def in_BQSL(a: Matrix) -> bool:
    return ghost_surpass(per(a), ONE)


def in_SL1(a: Matrix, report: Optional[DominanceReport] = None) -> bool:
    """Uniformly dominant permutation whose entries are all one."""
    report = report or dominance(a)
    pi = report.uniformly_dominant
    return pi is not None and all(a.rows[i][pi[i]] == ONE for i in range(a.n))


@dataclass(frozen=True)
class ClassReport:
    singularity: Singularity
    definite: bool
    normal: bool
    strictly_normal: bool
    in_SL: bool
    in_BQSL: bool
    in_QSL_circ: bool
    in_SL1: bool
    dominance: DominanceReport
    per: TropElem
    per_plus: TropElem
    per_minus: TropElem

    def to_json(self) -> dict:
        def perm1(p):
            return None if p is None else [k + 1 for k in p]

        return {
            "per": format_scalar(self.per),
            "bid": [format_scalar(self.per_plus), format_scalar(self.per_minus)],
            "singularity": self.singularity.value,
            "definite": self.definite,
            "normal": self.normal,
            "strictly_normal": self.strictly_normal,
            "in_SL": self.in_SL,
            "in_BQSL": self.in_BQSL,
            "in_QSL_circ": self.in_QSL_circ,
            "in_SL1": self.in_SL1,
            "dominance": {
                "value": format_scalar(self.dominance.value),
                "dominant": [perm1(p) for p in self.dominance.dominant],
                "strictly_dominant": perm1(self.dominance.strictly_dominant),
                "uniformly_dominant": perm1(self.dominance.uniformly_dominant),
            },
        }


def classify(a: Matrix) -> ClassReport:
    dom = dominance(a)
    shape = shape_class(a)
    mem = group_membership(a)
    b = bid(a)
    return ClassReport(
        singularity=classify_singularity(a),
        definite=shape.definite,
        normal=shape.normal,
        strictly_normal=shape.strictly_normal,
        in_SL=mem.in_SL,
        in_BQSL=mem.in_BQSL,
        in_QSL_circ=mem.in_QSL_circ,
        in_SL1=in_SL1(a, dom),
        dominance=dom,
        per=b.per,
        per_plus=b.per_plus,
        per_minus=b.per_minus,
    )


# -- factor-out -----------------------------------------------------------


class Side(enum.Enum):
    LEFT = "left"
    RIGHT = "right"


def factor_out(a: Matrix, side: Side = Side.LEFT) -> Tuple[GenPerm, Matrix]:
    """Split a nonsingular ``A`` into a generalized permutation and a definite part.

    ``LEFT`` gives ``A = P A1``, ``RIGHT`` gives ``A = A2 Q``.  In both cases
    the generalized permutation carries the dominant track of ``A`` itself,
    so it lies in SL whenever ``A`` does.
    """
    if not per(a).is_tangible:
        raise SingularityError("factor_out needs a nonsingular matrix")
    pi = dominant_permutation(a)
    p = GenPerm(pi, tuple(a.rows[i][pi[i]] for i in range(a.n)))
    pinv = p.inverse().matrix
    part = mat_mul(pinv, a) if side is Side.LEFT else mat_mul(a, pinv)
    rebuilt = mat_mul(p.matrix, part) if side is Side.LEFT else mat_mul(part, p.matrix)
    if rebuilt != a or not is_definite(part):
        raise InternalError("factor_out produced an inexact or non-definite factor")
    return p, part


# -- nonfactorizable two-track pattern ------------------------------------


def two_track_decomposition(a: Matrix):
    """Find ``(sigma, pi, t)`` with support ``= sigma u pi`` and ``pi = sigma + t (mod n)``.

    Only ``0 < t < n/2`` is searched and all support entries must be
    tangible.  Returns ``None`` when no such decomposition exists.
    """
    n = a.n
    support = []
    for row in a.rows:
        cols = [j for j, x in enumerate(row) if x.value is not None]
        if len(cols) != 2 or any(row[j].ghost for j in cols):
            return None
        support.append(cols)
    for t in range(1, n):
        if not 2 * t < n:
            break
        sigma = []
        for cols in support:
            opts = [c for c in cols if (c + t) % n in cols and (c + t) % n != c]
            if len(opts) != 1:
                break
            sigma.append(opts[0])
        else:
            if sorted(sigma) == list(range(n)):
                pi = tuple((s + t) % n for s in sigma)
                return tuple(sigma), pi, t
    return None


def nonfact_pattern(a: Matrix) -> bool:
    return two_track_decomposition(a) is not None


# -- perij witnesses ------------------------------------------------------


class WitnessMode(enum.Enum):
    MUM = "MUM"
    UtMU = "UtMU"


@dataclass(frozen=True)
class PerijWitness:
    u: Matrix
    mode: WitnessMode
    product: Matrix


def _transposition_witness_candidates(m: Matrix, pi: Perm):
    """Permutation matrices ``U``, the transposition suggested by the track first."""
    n = m.n
    seen = set()
    for i, j in itertools.permutations(range(n), 2):
        if nu_le(ONE, m.rows[i][pi[j]]):
            # U sends column pi(i) to row j and pi(j) to row i
            sig = list(range(n))
            for k in range(n):
                sig[pi[k]] = k
            sig[pi[i]], sig[pi[j]] = j, i
            key = tuple(sig)
            if key not in seen:
                seen.add(key)
                yield permutation_matrix(key)
    for p in itertools.permutations(range(n)):
        if p not in seen:
            seen.add(p)
            yield permutation_matrix(p)


def _midpoint_u(a_val, d_val):
    """A log-value ``u`` with ``a < u < 0`` and ``d + 2u > a`` (the midpoint choice)."""
    lo = max(Fraction(a_val), Fraction(a_val - d_val) / 2)
    return lo / 2


def _gaussian_witness_candidates(m: Matrix, pi: Perm):
    n = m.n
    track = [m.rows[i][pi[i]].value for i in range(n)]
    lows = [i for i in range(n) if track[i] < 0]
    highs = [j for j in range(n) if track[j] > 0]
    tried = set()
    for i in lows:
        for j in highs:
            u = _midpoint_u(track[i], track[j])
            for x, y in ((pi[j], pi[i]), (pi[i], pi[j]), (j, i), (i, j)):
                if x != y and (x, y, u) not in tried:
                    tried.add((x, y, u))
                    yield elementary(n, x, y, TropElem.tangible(u))


def _near_one_candidates(m: Matrix, max_support=3):
    """Strictly normal ``U`` whose few off-diagonal entries sit just below one.

    ``delta`` is finer than any gap between track sums of ``M``, so the
    perturbation only breaks or creates ties rather than reordering tracks.
    """
    n = m.n
    dens = [x.value.denominator for r in m.rows for x in r if isinstance(x.value, Fraction)]
    delta = Fraction(1, 8 * (lcm(*dens) if dens else 1))
    off = [(i, j) for i in range(n) for j in range(n) if i != j]
    entry = TropElem.tangible(-delta)
    for k in range(1, min(max_support, len(off)) + 1):
        for support in itertools.combinations(off, k):
            rows = [[ONE if i == j else ZERO for j in range(n)] for i in range(n)]
            for i, j in support:
                rows[i][j] = entry
            yield Matrix(rows)


def perij_witness(m: Matrix) -> PerijWitness:
    """A certificate that ``M`` cannot join the SL^1 monoid while staying nonsingular.

    For ``M`` in SL but not in SL^1, returns ``U`` in SL^1 with either
    ``M U M`` (``U`` a permutation matrix) or ``U^t M U`` (``U`` a strictly
    normal matrix) symmetrically singular.  The transposition / Gaussian
    recipe is tried first; it only embeds cleanly when the dominant track
    fixes the chosen indices, so a search over permutation matrices and
    small-support strictly normal matrices follows.  Every returned witness
    is verified.
    """
    if per(m) != ONE:
        raise WitnessError("perij_witness needs a matrix in SL_n")
    if in_SL1(m):
        raise WitnessError("matrix already lies in SL_n^1")
    pi = dominant_permutation(m)
    track = [m.rows[i][pi[i]] for i in range(m.n)]
    if all(t == ONE for t in track):
        order = [
            (WitnessMode.MUM, _transposition_witness_candidates(m, pi)),
            (WitnessMode.UtMU, _near_one_candidates(m)),
        ]
    else:
        order = [
            (WitnessMode.UtMU, _gaussian_witness_candidates(m, pi)),
            (WitnessMode.UtMU, _near_one_candidates(m)),
            (WitnessMode.MUM, _transposition_witness_candidates(m, pi)),
        ]
    for mode, candidates in order:
        for u in candidates:
            if mode is WitnessMode.MUM:
                prod = mat_mul(mat_mul(m, u), m)
            else:
                prod = mat_mul(mat_mul(transpose(u), m), u)
            if classify_singularity(prod) is Singularity.SYMMETRICALLY_SINGULAR:
                return PerijWitness(u, mode, prod)
    raise InternalError("no perij witness found; the maximality argument guarantees one")

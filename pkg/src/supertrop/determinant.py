"""Permanent (tropical determinant), bideterminant and dominance analysis.

``per`` and ``bid`` run a dynamic program over column subsets, evaluated
directly in the supertropical (resp. symmetrized) semiring.  Because the
semiring is distributive the DP sum equals the sum over all permutations,
ghosts from ties included, in ``O(n 2^n)`` instead of ``O(n!)``.
"""

import enum
import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import List, Optional, Tuple

import numpy as np
from scipy.optimize import linear_sum_assignment

from .errors import DomainError
from .matrix import Matrix, Perm, _mk
from .semiring import ONE, ZERO, SymPair, TropElem, add, nu_lt, tprod

ENUMERATION_BOUND = 10


def _check_bound(a: Matrix):
    if a.n > ENUMERATION_BOUND:
        raise DomainError(
            f"n = {a.n} exceeds the exact bound {ENUMERATION_BOUND}; use per_assignment for the permanent"
        )


def _per_layers(rows, skip_row=None):
    """Run the subset DP over ``rows`` (optionally skipping one row).

    Returns the final layer ``{column mask: (value, ghost)}``.
    """
    layer = {0: (0, False)}
    for k, row in enumerate(rows):
        if k == skip_row:
            continue
        entries = [(1 << c, e.value, e.ghost) for c, e in enumerate(row) if e.value is not None]
        nxt = {}
        get = nxt.get
        for mask, (v, g) in layer.items():
            for bit, ev, eg in entries:
                if mask & bit:
                    continue
                w = v + ev
                m2 = mask | bit
                cur = get(m2)
                if cur is None or w > cur[0]:
                    nxt[m2] = (w, g or eg)
                elif w == cur[0]:
                    nxt[m2] = (w, True)
        layer = nxt
        if not layer:
            break
    return layer


def per(a: Matrix) -> TropElem:
    """The permanent: supertropical sum over all permutations of the track products."""
    _check_bound(a)
    full = (1 << a.n) - 1
    hit = _per_layers(a.rows).get(full)
    return ZERO if hit is None else _mk(*hit)


@dataclass(frozen=True)
class BidResult:
    per_plus: TropElem
    per_minus: TropElem

    @property
    def per(self) -> TropElem:
        return add(self.per_plus, self.per_minus)

    @property
    def pair(self) -> SymPair:
        return SymPair(self.per_plus, self.per_minus)


def bid(a: Matrix) -> BidResult:
    """Bideterminant ``(per+, per-)``: sums over even and odd permutations.

    The DP tracks inversion parity: placing row ``k`` in column ``c`` adds
    one inversion per already-used column to the right of ``c``.
    """
    _check_bound(a)
    n = a.n
    # state: mask -> [(v, g) or None for even, same for odd]
    layer = {0: ((0, False), None)}
    for row in a.rows:
        nxt = {}
        for mask, slots in layer.items():
            for c in range(n):
                if mask >> c & 1:
                    continue
                e = row[c]
                if e.value is None:
                    continue
                flip = bin(mask >> (c + 1)).count("1") & 1
                m2 = mask | (1 << c)
                cur = nxt.get(m2)
                cur = [None, None] if cur is None else list(cur)
                for parity in (0, 1):
                    s = slots[parity]
                    if s is None:
                        continue
                    w = s[0] + e.value
                    h = s[1] or e.ghost
                    tgt = parity ^ flip
                    old = cur[tgt]
                    if old is None or w > old[0]:
                        cur[tgt] = (w, h)
                    elif w == old[0]:
                        cur[tgt] = (w, True)
                nxt[m2] = tuple(cur)
        layer = nxt
    slots = layer.get((1 << n) - 1, (None, None))
    even, odd = (ZERO if s is None else _mk(*s) for s in slots)
    return BidResult(even, odd)


class Singularity(enum.Enum):
    NONSINGULAR = "nonsingular"
    SINGULAR = "singular"
    SYMMETRICALLY_SINGULAR = "symmetrically_singular"


def is_symmetrically_singular(a: Matrix) -> bool:
    b = bid(a)
    return b.per_plus.value == b.per_minus.value


def classify_singularity(a: Matrix) -> Singularity:
    """Most specific class; symmetric singularity implies singularity."""
    b = bid(a)
    if b.per_plus.value == b.per_minus.value:
        return Singularity.SYMMETRICALLY_SINGULAR
    if b.per.is_tangible:
        return Singularity.NONSINGULAR
    return Singularity.SINGULAR


def is_nonsingular(a: Matrix) -> bool:
    return per(a).is_tangible


# -- dominance ------------------------------------------------------------


def track_product(a: Matrix, perm: Perm) -> TropElem:
    return tprod(a.rows[i][perm[i]] for i in range(a.n))


@dataclass(frozen=True)
class DominanceReport:
    value: TropElem
    dominant: Tuple[Perm, ...]
    strictly_dominant: Optional[Perm]
    uniformly_dominant: Optional[Perm]


def is_uniformly_dominant(a: Matrix, perm: Perm) -> bool:
    """Equal entries along ``perm`` and every other entry of each row nu-below it.

    Strict dominance follows from the row condition, so it is not
    re-checked separately.
    """
    track = [a.rows[i][perm[i]] for i in range(a.n)]
    if track[0].value is None or any(t != track[0] for t in track):
        return False
    for i, row in enumerate(a.rows):
        for j, x in enumerate(row):
            if j != perm[i] and not nu_lt(x, track[i]):
                return False
    return True


def _track_values(a: Matrix):
    """Yield ``(perm, log-value)`` for every permutation with a nonzero track."""
    vals = [[x.value for x in r] for r in a.rows]
    n = a.n
    for p in itertools.permutations(range(n)):
        s = 0
        for i in range(n):
            v = vals[i][p[i]]
            if v is None:
                break
            s += v
        else:
            yield p, s


def dominance(a: Matrix) -> DominanceReport:
    """Enumerate all permutations and report the dominant ones.

    A permutation is dominant when its track product is nu-equal to a
    nonzero permanent.  This is a diagnostic and enumerates ``n!``
    permutations.
    """
    _check_bound(a)
    tracks = list(_track_values(a))
    if not tracks:
        return DominanceReport(ZERO, (), None, None)
    top = max(v for _, v in tracks)
    dominant = tuple(p for p, v in tracks if v == top)
    strict = dominant[0] if len(dominant) == 1 else None
    uniform = strict if strict is not None and is_uniformly_dominant(a, strict) else None
    return DominanceReport(TropElem.ghost_of(top), dominant, strict, uniform)


def dominant_permutation(a: Matrix) -> Optional[Perm]:
    """Lexicographically least dominant permutation, ``None`` if ``per`` is zero."""
    best = best_perm = None
    for p, v in _track_values(a):
        if best is None or v > best:
            best, best_perm = v, p
    return best_perm


# -- assignment fast path -------------------------------------------------


def _scaled(a: Matrix):
    dens = [x.value.denominator for r in a.rows for x in r if type(x.value) is Fraction]
    scale = lcm(*dens) if dens else 1
    w = np.full((a.n, a.n), -np.inf)
    for i, r in enumerate(a.rows):
        for j, x in enumerate(r):
            if x.value is not None:
                w[i, j] = float(x.value * scale)
    return w


def _solve(w):
    try:
        rows, cols = linear_sum_assignment(w, maximize=True)
    except ValueError:
        return None
    return tuple(int(c) for c in cols[np.argsort(rows)])


def _assignment(a: Matrix):
    w = _scaled(a)
    perm = _solve(w)
    if perm is None:
        return None
    return w, perm


def per_assignment(a: Matrix) -> TropElem:
    """Permanent via a maximum-weight assignment solver.

    The value is exact (recomputed from the chosen entries); tangibility
    needs a unique optimum, tested by forbidding each chosen edge in turn
    and re-solving, and tangible entries along it.
    """
    res = _assignment(a)
    if res is None:
        return ZERO
    w, perm = res
    value = tprod(a.rows[i][perm[i]] for i in range(a.n))
    ghost = value.ghost
    if not ghost:
        best = sum(w[i, perm[i]] for i in range(a.n))
        for i in range(a.n):
            w2 = w.copy()
            w2[i, perm[i]] = -np.inf
            alt = _solve(w2)
            if alt is not None and sum(w2[k, alt[k]] for k in range(a.n)) == best:
                ghost = True
                break
    return TropElem(value.value, ghost)


def is_definite(a: Matrix) -> bool:
    """Identity is the unique dominant permutation and the diagonal is one.

    With a diagonal of ones this is exactly ``per(A) == one``: the identity
    attains ``one`` and a tangible permanent rules out ties and larger tracks.
    """
    if any(a.rows[i][i] != ONE for i in range(a.n)):
        return False
    return per(a) == ONE


def per_values(a: Matrix) -> List[TropElem]:
    """All ``n!`` track products in ``itertools.permutations`` order."""
    return [track_product(a, p) for p in itertools.permutations(range(a.n))]

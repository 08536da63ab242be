"""Brute-force references, the property registry and the seeded property harness.

Every property draws its inputs from ``random.Random(f"{pid}:{seed}:{trial}")``
so a failing trial replays from its seed string alone.  Properties return
``None`` on success, a message on failure, or :data:`VACUOUS` when the
sampled instance misses the property's hypothesis.
"""

import itertools
import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, FrozenSet, List, Optional, Tuple

from . import classify as cl
from . import determinant as det
from . import elementary as el
from . import monoid as mo
from . import nabla as nb
from .errors import DomainError
from .matrix import (
    GenPerm,
    Matrix,
    format_matrix,
    identity,
    inverse_perm,
    mat_add,
    mat_ghost_surpass,
    mat_mul,
    mat_nu_eq,
    mat_nu_leq,
    parse_matrix,
    permutation_matrix,
    transpose,
    compose,
)
from .random_gen import DEFAULT_DIST, random_gen_perm, random_matrix, random_scalar, random_special
from .semiring import (
    ONE,
    ONE_GHOST,
    ZERO,
    SymPair,
    TropElem,
    add,
    collapse,
    format_scalar,
    ghost_surpass,
    in_circ,
    inv,
    mul,
    nu,
    nu_eq,
    nu_le,
    nu_lt,
    parse_scalar,
    sym_mul,
    sym_surpass,
)

BRUTE_BOUND = 10
VACUOUS = object()


# -- brute force ----------------------------------------------------------


@dataclass(frozen=True)
class BruteForce:
    per: TropElem
    bid: Tuple[TropElem, TropElem]
    dominant: FrozenSet[Tuple[int, ...]]


def _parity(p) -> int:
    seen = [False] * len(p)
    cycles = 0
    for s in range(len(p)):
        if not seen[s]:
            cycles += 1
            k = s
            while not seen[k]:
                seen[k] = True
                k = p[k]
    return (len(p) - cycles) & 1


def _best(terms):
    """Max of ``(value, ghost)`` terms with tie counting; ``ZERO`` when empty."""
    if not terms:
        return ZERO
    top = max(v for v, _ in terms)
    hits = [g for v, g in terms if v == top]
    return TropElem(top, len(hits) > 1 or any(hits))


def brute_force_per(a: Matrix) -> BruteForce:
    """Enumerate all ``n!`` permutations directly on raw values."""
    n = a.n
    if n > BRUTE_BOUND:
        raise DomainError(f"brute force is limited to n <= {BRUTE_BOUND}")
    terms = {0: [], 1: []}
    tracks = []
    for p in itertools.permutations(range(n)):
        vals = [a.rows[i][p[i]] for i in range(n)]
        if any(x.value is None for x in vals):
            continue
        v = sum(x.value for x in vals)
        g = any(x.ghost for x in vals)
        terms[_parity(p)].append((v, g))
        tracks.append((p, v))
    even, odd = _best(terms[0]), _best(terms[1])
    total = _best(terms[0] + terms[1])
    dom = frozenset(p for p, v in tracks if v == total.value) if tracks else frozenset()
    return BruteForce(total, (even, odd), dom)


def brute_force_adj(a: Matrix) -> Matrix:
    n = a.n
    if n == 1:
        return identity(1)
    out = []
    for i in range(n):
        row = []
        for j in range(n):
            minor = [[a.rows[r][c] for c in range(n) if c != i] for r in range(n) if r != j]
            row.append(brute_force_per(Matrix(minor)).per)
        out.append(row)
    return Matrix(out)


# -- samplers -------------------------------------------------------------


def _n(rng, lo=2, hi=5):
    return rng.randint(lo, hi)


def _scalar(rng, **kw):
    return random_scalar(rng, DEFAULT_DIST, **kw)


def _sym(rng):
    return SymPair(_scalar(rng), _scalar(rng))


def _ghost_matrix(rng, n):
    return Matrix._raw(
        tuple(tuple(ZERO if rng.random() < 0.5 else TropElem(rng.randint(-8, 8), True) for _ in range(n)) for _ in range(n))
    )


def _nonsingular(rng, n):
    return random_special(rng, n, "nonsingular")


def _uniform(rng, n):
    """A scaled permuted strictly normal matrix, so its permutation is uniformly dominant."""
    base = random_special(rng, n, "strictly_normal")
    perm = list(range(n))
    rng.shuffle(perm)
    c = rng.randint(-4, 4)
    rows = [[TropElem(x.value + c, x.ghost) if x.value is not None else ZERO for x in r] for r in base.rows]
    return mat_mul(Matrix(rows), permutation_matrix(perm))


# -- properties -----------------------------------------------------------


def _fail(cond, msg):
    return None if cond else msg


def p_add_mul_laws(rng):
    a, b, c = (_scalar(rng) for _ in range(3))
    checks = [
        add(add(a, b), c) == add(a, add(b, c)),
        mul(mul(a, b), c) == mul(a, mul(b, c)),
        add(a, b) == add(b, a),
        mul(a, b) == mul(b, a),
        mul(a, add(b, c)) == add(mul(a, b), mul(a, c)),
        mul(add(a, b), c) == add(mul(a, c), mul(b, c)),
    ]
    return _fail(all(checks), f"laws {checks} at {a}, {b}, {c}")


def p_nu_hom(rng):
    a, b = _scalar(rng), _scalar(rng)
    ok = nu(mul(a, b)) == mul(nu(a), nu(b)) and nu(nu(a)) == nu(a) and nu_le(add(nu(a), nu(b)), nu(add(a, b)))
    return _fail(ok, f"ghost map at {a}, {b}")


def _surpassing(rng, b):
    """Some ``a`` with ``a |= b``: ``b`` plus a ghost or zero."""
    g = ZERO if rng.random() < 0.3 else TropElem(rng.randint(-8, 8), True)
    return add(b, g)


def p_surpass_order(rng):
    a = _scalar(rng)
    b = _surpassing(rng, a)
    c = _surpassing(rng, b)
    x, y = _scalar(rng, ghosts=False), _scalar(rng, ghosts=False)
    ok = (
        ghost_surpass(a, a)
        and ghost_surpass(b, a)
        and ghost_surpass(c, a)
        and (not (ghost_surpass(x, y) and ghost_surpass(y, x)) or x == y)
    )
    return _fail(ok, f"order at {a}, {b}, {c}, {x}, {y}")


def p_surpass_compat(rng):
    b, d = _scalar(rng), _scalar(rng)
    a, c = _surpassing(rng, b), _surpassing(rng, d)
    ok = ghost_surpass(add(a, c), add(b, d)) and ghost_surpass(mul(a, c), mul(b, d))
    return _fail(ok, f"compatibility at {a} |= {b}, {c} |= {d}")


def p_collapse_hom(rng):
    p, q = _sym(rng), _sym(rng)
    ok = collapse(sym_mul(p, q)) == mul(collapse(p), collapse(q)) and collapse(p + q) == add(collapse(p), collapse(q))
    return _fail(ok, f"collapse at {p}, {q}")


def p_passghost(rng):
    q = _sym(rng)
    if rng.random() < 0.5:
        v = rng.randint(-8, 8)
        c = SymPair(TropElem(v, rng.random() < 0.5), TropElem(v, rng.random() < 0.5))
        p = q + c
    else:
        p = _sym(rng)
    if not sym_surpass(p, q):
        return VACUOUS
    return _fail(ghost_surpass(collapse(p), collapse(q)), f"{p} >=o {q} but collapse fails")


def p_mat_assoc_distrib(rng):
    n = _n(rng, 1)
    a, b, c = (random_matrix(rng, n) for _ in range(3))
    ok = mat_mul(mat_mul(a, b), c) == mat_mul(a, mat_mul(b, c)) and mat_mul(a, mat_add(b, c)) == mat_add(
        mat_mul(a, b), mat_mul(a, c)
    )
    return _fail(ok, f"associativity/distributivity at n={n}")


def p_order_unit(rng):
    n = _n(rng, 1)
    a = random_matrix(rng, n)
    rows = [[TropElem(rng.randint(0, 3), rng.random() < 0.2) if i == j else _scalar(rng) for j in range(n)] for i in range(n)]
    b = Matrix(rows)
    ok = mat_nu_leq(a, mat_mul(a, b)) and mat_nu_leq(a, mat_mul(b, a))
    return _fail(ok, f"B >=nu I but products drop below A at n={n}")


def p_mat_surpass_mul(rng):
    n = _n(rng, 1)
    a2, b2 = random_matrix(rng, n), random_matrix(rng, n)
    a1, b1 = mat_add(a2, _ghost_matrix(rng, n)), mat_add(b2, _ghost_matrix(rng, n))
    ok = mat_ghost_surpass(a1, a2) and mat_ghost_surpass(mat_mul(a1, b1), mat_mul(a2, b2))
    return _fail(ok, f"matrix surpass not multiplicative at n={n}")


def p_perm_inverse(rng):
    n = _n(rng, 1, 6)
    p = list(range(n))
    rng.shuffle(p)
    ok = mat_mul(permutation_matrix(p), permutation_matrix(inverse_perm(p))) == identity(n)
    return _fail(ok, f"P P^-1 != I for {p}")


def p_per_mul_surpass(rng):
    n = _n(rng, 1)
    a, b = random_matrix(rng, n), random_matrix(rng, n)
    lhs, rhs = det.per(mat_mul(a, b)), mul(det.per(a), det.per(b))
    return _fail(ghost_surpass(lhs, rhs), f"per(AB) = {lhs} does not surpass {rhs}")


def p_per_genperm(rng):
    n = _n(rng, 1)
    a = random_matrix(rng, n)
    p = random_gen_perm(rng, n).matrix
    pa = mul(det.per(a), det.per(p))
    ok = det.per(mat_mul(a, p)) == pa == det.per(mat_mul(p, a))
    return _fail(ok, "per not multiplicative against a generalized permutation")


def p_bid_mul_surpass(rng):
    n = _n(rng, 1)
    a, b = random_matrix(rng, n), random_matrix(rng, n)
    lhs = det.bid(mat_mul(a, b)).pair
    rhs = sym_mul(det.bid(a).pair, det.bid(b).pair)
    return _fail(sym_surpass(lhs, rhs), f"bid(AB) = {lhs} not >=o {rhs}")


def p_uniform_dominance_product(rng):
    n = _n(rng)
    mats = [_uniform(rng, n) for _ in range(rng.randint(2, 3))]
    prod = mats[0]
    pi = det.dominance(mats[0]).uniformly_dominant
    total = det.per(mats[0])
    for m in mats[1:]:
        prod = mat_mul(prod, m)
        pi = compose(det.dominance(m).uniformly_dominant, pi)
        total = mul(total, det.per(m))
    ok = det.is_uniformly_dominant(prod, pi) and det.per(prod) == total
    return _fail(ok, f"uniform dominance lost in a product of {len(mats)}")


def p_per_transpose(rng):
    a = random_matrix(rng, _n(rng, 1))
    return _fail(det.per(transpose(a)) == det.per(a), "per(A^t) != per(A)")


def p_adj_mul_surpass(rng):
    n = _n(rng, 1)
    a, b = random_matrix(rng, n), random_matrix(rng, n)
    ok = mat_ghost_surpass(nb.adj(mat_mul(a, b)), mat_mul(nb.adj(b), nb.adj(a)))
    return _fail(ok, "adj(AB) does not surpass adj(B) adj(A)")


def p_adj_genperm(rng):
    n = _n(rng, 1)
    a = random_matrix(rng, n)
    p = random_gen_perm(rng, n).matrix
    ok = nb.adj(mat_mul(a, p)) == mat_mul(nb.adj(p), nb.adj(a)) and nb.adj(mat_mul(p, a)) == mat_mul(
        nb.adj(a), nb.adj(p)
    )
    return _fail(ok, "adj not anti-multiplicative against a generalized permutation")


def _lr(a):
    """``(A^nabla, I^l, I^r)`` without the triple products of a full pack."""
    an = nb.nabla(a)
    return an, mat_mul(a, an), mat_mul(an, a)


def p_quasi_idempotent(rng):
    _, left, right = _lr(_nonsingular(rng, _n(rng, 1)))
    return _fail(nb.is_idempotent(left) and nb.is_idempotent(right), "I^l or I^r not idempotent")


def p_quasi_per_one(rng):
    _, left, right = _lr(_nonsingular(rng, _n(rng, 1)))
    ok = nu_eq(det.per(left), ONE) and nu_eq(det.per(right), ONE)
    return _fail(ok, f"per(I^l) = {det.per(left)}, per(I^r) = {det.per(right)}")


def p_quasi_swap(rng):
    a = _nonsingular(rng, _n(rng, 1))
    an, left, right = _lr(a)
    ann = nb.nabla(an)
    ok = mat_mul(an, ann) == right and mat_mul(ann, an) == left
    return _fail(ok, "quasi-identities of A and A^nabla do not swap")


def p_nabla_sandwich(rng):
    a = _nonsingular(rng, _n(rng, 1))
    an = nb.nabla(a)
    mid = mat_mul(mat_mul(an, a), an)
    ok = mat_nu_leq(mid, an) and mat_nu_leq(an, mid) and mat_nu_eq(an, mid)
    return _fail(ok, "A^nabla not nu-equivalent to A^nabla A A^nabla")


def p_nabla2_surpass(rng):
    a = _nonsingular(rng, _n(rng, 1))
    return _fail(mat_ghost_surpass(nb.nabla2(a), a), "nabla2(A) does not surpass A")


def p_nabla_preserves_shape(rng):
    n = _n(rng, 1)
    kind = "definite" if rng.random() < 0.5 else "strictly_normal"
    a = random_special(rng, n, kind)
    an = nb.nabla(a)
    ok = det.is_definite(an) if kind == "definite" else cl.is_strictly_normal(an)
    return _fail(ok, f"nabla of a {kind} matrix is not {kind}")


def p_definite_quasi_equal(rng):
    _, left, right = _lr(random_special(rng, _n(rng, 1), "definite"))
    return _fail(left == right, "definite A with I^l != I^r")


def p_reversible_quasi_identity(rng):
    a = _nonsingular(rng, _n(rng, 1, 4))
    q = nb.quasi_pack(a)
    if not q.reversible or not det.per(q.core).is_tangible:
        return VACUOUS
    return _fail(nb.is_quasi_identity(q.core), "reversible A with nonsingular I_A but I_A not a quasi-identity")


def p_tilde_unit(rng):
    a = _nonsingular(rng, _n(rng, 1))
    return _fail(nb.quasi_pack(a).core_tilde == nb.quasi_pack(nb.nabla(a)).core, "tilde I_A != I_{A^nabla}")


def p_reversible_2x2(rng):
    a = random_special(rng, 2, "SL")
    q = nb.quasi_pack(a)
    if not det.per(mat_mul(q.left, q.right)).is_tangible:
        return VACUOUS
    return _fail(q.reversible, "2x2 SL matrix with nonsingular I^l I^r is not reversible")


def p_sl1_closure(rng):
    n = _n(rng)
    a, b = random_special(rng, n, "SL1"), random_special(rng, n, "SL1")
    ok = cl.in_SL1(mat_mul(a, b)) and cl.in_SL1(nb.nabla(a))
    return _fail(ok, "SL^1 not closed under product or nabla")


def p_strictly_normal_monoid(rng):
    n = _n(rng)
    j1, j2 = random_special(rng, n, "strictly_normal"), random_special(rng, n, "strictly_normal")
    prod = mat_mul(j1, j2)
    ok = (
        cl.is_strictly_normal(prod)
        and det.per(prod) == ONE
        and cl.is_strictly_normal(nb.nabla(j1))
        and cl.is_strictly_normal(transpose(j1))
    )
    return _fail(ok, "strictly normal matrices not closed")


def p_perij_maximality(rng):
    m = random_special(rng, _n(rng, 2, 4), "SL")
    if cl.in_SL1(m):
        return VACUOUS
    w = cl.perij_witness(m)
    prod = mat_mul(mat_mul(m, w.u), m) if w.mode is cl.WitnessMode.MUM else mat_mul(mat_mul(transpose(w.u), m), w.u)
    ok = cl.in_SL1(w.u) and prod == w.product and det.classify_singularity(prod) is det.Singularity.SYMMETRICALLY_SINGULAR
    return _fail(ok, "perij witness failed re-verification")


def p_bqsl2_generation(rng):
    u, u2, v = (rng.randint(-8, 8) for _ in range(3))
    v2 = Fraction(u2 + v - u)
    if not u + v2 > 0:
        return VACUOUS  # the two-factor product only reproduces [[u,u'],[v,v']] above one
    a, b, c, d = ONE, TropElem(v - u), TropElem(u), TropElem(u2)
    left = Matrix([[a, ZERO], [b, inv(a)]])
    right = Matrix([[c, d], [ZERO, inv(c)]])
    target = Matrix([[TropElem(u), TropElem(u2)], [TropElem(v), TropElem(v2)]])
    ok = det.per(left) == ONE and det.per(right) == ONE and mat_mul(left, right) == target and cl.in_BQSL(target)
    return _fail(ok, f"two-factor construction failed at u={u}, u'={u2}, v={v}")


def p_genmon1_witness(rng):
    n = 4
    sigma = list(range(n))
    rng.shuffle(sigma)
    pi = [(s + 1) % n for s in sigma]
    sv = [rng.randint(-5, 5) for _ in range(n)]
    pv = [rng.randint(-5, 5) for _ in range(n)]
    c = rng.randint(0, 3)
    sv[-1] += c - sum(sv)
    pv[-1] += c - sum(pv)
    rows = [[ZERO] * n for _ in range(n)]
    for i in range(n):
        rows[i][sigma[i]] = TropElem(sv[i])
        rows[i][pi[i]] = TropElem(pv[i])
    a = Matrix(rows)
    mem = cl.group_membership(a)
    ok = mem.in_BQSL and not mem.in_SL and not mem.in_QSL_circ and cl.nonfact_pattern(a)
    return _fail(ok, f"two-track matrix misclassified: {mem}")


def _in_S_left(pack, b):
    return mat_mul(pack.left, b) == b


def p_left_closure(rng):
    n = _n(rng, 1, 4)
    a = _nonsingular(rng, n)
    pack = nb.quasi_pack(a)
    b1 = mat_mul(pack.left, random_special(rng, n, "SL"))
    b2 = mat_mul(pack.left, random_special(rng, n, "SL"))
    r1 = mat_mul(random_special(rng, n, "SL"), pack.right)
    x = random_matrix(rng, n)
    ok = (
        _in_S_left(pack, mat_mul(b1, x))
        and _in_S_left(pack, mat_mul(b1, b2))
        and mat_mul(mat_mul(x, r1), pack.right) == mat_mul(x, r1)
    )
    if ok and cl.in_BQSL(b1) and cl.in_BQSL(b2):
        ok = cl.in_BQSL(mat_mul(b1, b2))
    return _fail(ok, "S_A^l not closed under right multiplication")


def p_reversible_unit(rng):
    n = _n(rng, 1, 4)
    a = _nonsingular(rng, n)
    pack = nb.quasi_pack(a)
    if not pack.reversible:
        return VACUOUS
    unit = pack.core
    b = mat_mul(mat_mul(unit, random_matrix(rng, n)), unit)
    ok = (
        nb.is_idempotent(unit)
        and mat_mul(unit, b) == b == mat_mul(b, unit)
        and mat_mul(pack.left, unit) == unit == mat_mul(unit, pack.left)
    )
    return _fail(ok, "I_A is not a two-sided unit for reversible A")


def p_conjugated_strictly_normal(rng):
    n = _n(rng, 2, 4)
    a = random_special(rng, n, "SL1") if rng.random() < 0.7 else _nonsingular(rng, n)
    pack = nb.quasi_pack(a)
    if not cl.is_strictly_normal(pack.left):
        return VACUOUS
    an = pack.nabla
    j1, j2 = random_special(rng, n, "strictly_normal"), random_special(rng, n, "strictly_normal")
    c1 = mat_mul(mat_mul(an, j1), a)
    c2 = mat_mul(mat_mul(an, j2), a)
    j3 = mat_mul(mat_mul(j1, pack.left), j2)
    ok = cl.is_strictly_normal(j3) and mat_mul(c1, c2) == mat_mul(mat_mul(an, j3), a)
    return _fail(ok, "conjugated strictly normal matrices not product-closed")


def _rand_param(rng):
    return TropElem(rng.randint(-8, 8), rng.random() < 0.2)


def p_steinberg_relations(rng):
    n = _n(rng, 3, 5)
    i, j, k = rng.sample(range(n), 3)
    a, b = _rand_param(rng), _rand_param(rng)
    G = el.Gaussian

    def prod(*gs):
        return el.word_product(el.ElemWord(gs), n)

    kind = rng.randrange(4)
    if kind == 0:
        k, l = rng.choice([(x, y) for x in range(n) for y in range(n) if x != y and x != j and y != i])
        ok = prod(G(i, j, a), G(k, l, b)) == prod(G(k, l, b), G(i, j, a))
    elif kind == 1:
        swapped = prod(G(i, j, a), G(j, i, b)) == prod(G(j, i, b), G(i, j, a))
        ok = swapped == nu_lt(mul(a, b), ONE)
    else:
        lhs = prod(G(i, j, a), G(j, k, b))
        if kind == 2:
            ok = lhs == prod(G(i, k, mul(a, b)), G(j, k, b), G(i, j, a))
        else:
            ok = lhs == prod(G(j, k, b), G(i, j, a), G(i, k, mul(a, b)))
    return _fail(ok, f"relation {kind} failed at n={n}, ({i},{j},{k}), a={a}, b={b}")


def p_ed_exact(rng):
    a = random_special(rng, _n(rng, 2, 4), "SL")
    f = el.ed_factor(a)
    ok = mat_mul(el.word_product(f.word, a.n), f.definite) == nb.nabla2(f.definite) and mat_mul(
        el.word_product(f.conjugated, a.n), a
    ) == nb.nabla2(a)
    return _fail(ok, "ED word inexact")


def p_sns_flip(rng):
    a = random_special(rng, _n(rng, 2, 4), "SL")
    if el.is_invertible(a):
        return VACUOUS
    r = el.sns_detail(a)
    ok = (
        det.classify_singularity(r.definite) is det.Singularity.NONSINGULAR
        and det.classify_singularity(r.product) is not det.Singularity.NONSINGULAR
        and det.per(r.product) == ONE_GHOST
    )
    return _fail(ok, f"singularizing Gaussian gave per {det.per(r.product)}")


def p_bridge_exact(rng):
    n = _n(rng, 2, 4)
    a, b = _nonsingular(rng, n), _nonsingular(rng, n)
    r = el.bridge(a, b)
    lhs = mat_mul(mat_mul(el.word_product(r.e1, n), a), r.e2)
    rhs = mat_mul(mat_mul(r.e3, b), el.word_product(r.e4, n))
    return _fail(lhs == rhs, "bridge equation failed")


def p_oracle_per(rng):
    a = random_matrix(rng, _n(rng, 1, 6))
    bf = brute_force_per(a)
    b = det.bid(a)
    ok = bf.per == det.per(a) and bf.bid == (b.per_plus, b.per_minus) and bf.dominant == frozenset(det.dominance(a).dominant)
    return _fail(ok, f"oracle disagreement on\n{format_matrix(a)}")


def p_oracle_adj(rng):
    a = random_matrix(rng, _n(rng, 1, 5))
    return _fail(brute_force_adj(a) == nb.adj(a), f"adjoint disagreement on\n{format_matrix(a)}")


def p_registry_complete(rng):
    missing = registry_gaps()
    return _fail(not missing, f"uncovered invariants: {missing}")


def p_token_roundtrip(rng):
    x = _scalar(rng)
    if rng.random() < 0.3 and x.value is not None:
        x = TropElem(Fraction(x.value, rng.randint(1, 4)), x.ghost)
    a = random_matrix(rng, _n(rng, 1))
    ok = parse_scalar(format_scalar(x)) == x and parse_matrix(format_matrix(a)) == a
    return _fail(ok, f"round trip failed for {x}")


def p_per_assignment(rng):
    a = random_matrix(rng, _n(rng, 1, 6))
    return _fail(det.per_assignment(a) == det.per(a), f"assignment permanent disagrees on\n{format_matrix(a)}")


def p_intertwining(rng):
    n = _n(rng, 1, 4)
    a = _nonsingular(rng, n)
    an = nb.nabla(a)
    left = mat_mul(a, an)
    b = mat_mul(left, random_matrix(rng, n))
    v = mo.project_to_v_space(a, [_scalar(rng) for _ in range(n)])
    w = an.apply(v)
    ok = mo.v_space(a, v) and mo.v_space(an, w) and mo.conjugate(a, b).apply(w) == an.apply(b.apply(v))
    return _fail(ok, "nabla map does not intertwine conjugation")


def p_class_report(rng):
    n = _n(rng, 1, 4)
    kind = rng.choice(["general", "SL", "definite", "strictly_normal", "SL1"])
    r = cl.classify(random_special(rng, n, kind))
    ok = (
        (not r.strictly_normal or r.normal)
        and (not r.normal or r.definite)
        and (not r.in_SL or r.in_QSL_circ)
        and (not r.in_QSL_circ or r.in_BQSL)
        and (not r.in_SL1 or r.in_SL)
        and (r.singularity is det.Singularity.NONSINGULAR) == r.per.is_tangible
        and (not r.definite or r.in_SL)
    )
    return _fail(ok, f"inconsistent class report for a {kind} matrix")


# -- registry -------------------------------------------------------------

# One entry per invariant of each module; properties point at these slots.
INVARIANTS: Dict[str, Tuple[str, ...]] = {
    "semiring": (
        "add and mul associative, commutative, distributive",
        "ghost map multiplicative and monotone for addition",
        "ghost surpass is an order compatible with + and *",
        "collapse is a homomorphism",
        "symmetrized surpass passes to ghost surpass under collapse",
    ),
    "matrix": (
        "matrix product associative and distributive",
        "B >=nu I gives AB, BA >=nu A",
        "ghost surpass is multiplicative on matrices",
        "permutation matrix times its inverse is I",
    ),
    "determinant": (
        "per(AB) |= per(A) per(B)",
        "per multiplicative against generalized permutations",
        "bid(AB) >=o bid(A) bid(B)",
        "uniformly dominant permutations compose",
        "per(A^t) = per(A)",
    ),
    "nabla": (
        "adj(AB) |= adj(B) adj(A)",
        "adj anti-multiplicative against generalized permutations",
        "I^l and I^r idempotent",
        "per(I^l), per(I^r) nu-equal one",
        "I^l of A^nabla is I^r of A and vice versa",
        "A^nabla nu-equals A^nabla A A^nabla",
        "nabla2 surpasses A; nabla keeps definite and strictly normal",
        "reversible with nonsingular I_A gives a quasi-identity",
        "tilde I_A equals I of A^nabla",
        "2x2 with nonsingular I^l I^r is reversible",
    ),
    "classify": (
        "SL^1 closed under product and nabla",
        "strictly normal matrices form a nabla- and transpose-closed monoid",
        "every M in SL minus SL^1 has a perij witness",
        "BQSL_2 two-factor construction",
        "n = 4 two-track matrix in BQSL minus SL, not factorizable",
    ),
    "monoid": (
        "S_A^l closed under right multiplication",
        "I_A is the two-sided unit for reversible A",
        "conjugated strictly normal matrices closed when I^l_A is strictly normal",
    ),
    "elementary": (
        "Steinberg relations hold, commutation only below one",
        "ED postcondition is exact",
        "singularizing Gaussian lands on the ghost one",
        "bridge equation is exact",
    ),
    "oracle": (
        "oracle agrees with per, bid, adj",
        "registry covers every invariant",
    ),
    "cli": ("scalar and matrix tokens round-trip",),
}

# operation-level checks that are not module invariants
OPERATION_CHECKS = {
    ("determinant", "per_assignment"),
    ("monoid", "nabla_map"),
    ("nabla", "quasi_pack"),
    ("classify", "classify"),
}


@dataclass(frozen=True)
class Property:
    pid: str
    module: str
    covers: object  # invariant index or operation name
    fn: Callable
    evidence: bool = True  # sampled, so evidence rather than proof


PROPERTIES: Dict[str, Property] = {}


def _reg(pid, module, covers, fn):
    PROPERTIES[pid] = Property(pid, module, covers, fn)


for _pid, _mod, _cov, _fn in (
    ("add_mul_laws", "semiring", 0, p_add_mul_laws),
    ("nu_hom", "semiring", 1, p_nu_hom),
    ("surpass_order", "semiring", 2, p_surpass_order),
    ("surpass_compat", "semiring", 2, p_surpass_compat),
    ("collapse_hom", "semiring", 3, p_collapse_hom),
    ("passghost", "semiring", 4, p_passghost),
    ("mat_assoc_distrib", "matrix", 0, p_mat_assoc_distrib),
    ("order_unit", "matrix", 1, p_order_unit),
    ("mat_surpass_mul", "matrix", 2, p_mat_surpass_mul),
    ("perm_inverse", "matrix", 3, p_perm_inverse),
    ("per_mul_surpass", "determinant", 0, p_per_mul_surpass),
    ("per_genperm", "determinant", 1, p_per_genperm),
    ("bid_mul_surpass", "determinant", 2, p_bid_mul_surpass),
    ("uniform_dominance_product", "determinant", 3, p_uniform_dominance_product),
    ("per_transpose", "determinant", 4, p_per_transpose),
    ("adj_mul_surpass", "nabla", 0, p_adj_mul_surpass),
    ("adj_genperm", "nabla", 1, p_adj_genperm),
    ("quasi_idempotent", "nabla", 2, p_quasi_idempotent),
    ("quasi_per_one", "nabla", 3, p_quasi_per_one),
    ("quasi_swap", "nabla", 4, p_quasi_swap),
    ("nabla_sandwich", "nabla", 5, p_nabla_sandwich),
    ("nabla2_surpass", "nabla", 6, p_nabla2_surpass),
    ("nabla_preserves_shape", "nabla", 6, p_nabla_preserves_shape),
    ("reversible_quasi_identity", "nabla", 7, p_reversible_quasi_identity),
    ("tilde_unit", "nabla", 8, p_tilde_unit),
    ("reversible_2x2", "nabla", 9, p_reversible_2x2),
    ("sl1_closure", "classify", 0, p_sl1_closure),
    ("strictly_normal_monoid", "classify", 1, p_strictly_normal_monoid),
    ("perij_maximality", "classify", 2, p_perij_maximality),
    ("bqsl2_generation", "classify", 3, p_bqsl2_generation),
    ("genmon1_witness", "classify", 4, p_genmon1_witness),
    ("left_closure", "monoid", 0, p_left_closure),
    ("reversible_unit", "monoid", 1, p_reversible_unit),
    ("conjugated_strictly_normal", "monoid", 2, p_conjugated_strictly_normal),
    ("steinberg_relations", "elementary", 0, p_steinberg_relations),
    ("ed_exact", "elementary", 1, p_ed_exact),
    ("sns_flip", "elementary", 2, p_sns_flip),
    ("bridge_exact", "elementary", 3, p_bridge_exact),
    ("oracle_per", "oracle", 0, p_oracle_per),
    ("oracle_adj", "oracle", 0, p_oracle_adj),
    ("registry_complete", "oracle", 1, p_registry_complete),
    ("token_roundtrip", "cli", 0, p_token_roundtrip),
    ("per_assignment", "determinant", "per_assignment", p_per_assignment),
    ("intertwining", "monoid", "nabla_map", p_intertwining),
    ("definite_quasi_equal", "nabla", "quasi_pack", p_definite_quasi_equal),
    ("class_report", "classify", "classify", p_class_report),
):
    _reg(_pid, _mod, _cov, _fn)


def registry_gaps() -> List[str]:
    """Invariant slots with no property, plus properties pointing nowhere."""
    covered = {(p.module, p.covers) for p in PROPERTIES.values()}
    gaps = [f"{m}[{k}]" for m, inv_ in INVARIANTS.items() for k in range(len(inv_)) if (m, k) not in covered]
    for p in PROPERTIES.values():
        ok = (
            isinstance(p.covers, int) and 0 <= p.covers < len(INVARIANTS.get(p.module, ()))
        ) or (p.module, p.covers) in OPERATION_CHECKS
        if not ok:
            gaps.append(f"orphan property {p.pid}")
    return gaps


# -- harness --------------------------------------------------------------


@dataclass
class Failure:
    trial: int
    seed: str
    message: str


@dataclass
class PropertyReport:
    property_id: str
    trials: int
    seed: int
    failures: List[Failure] = field(default_factory=list)
    vacuous: int = 0
    elapsed: float = 0.0

    @property
    def status(self) -> str:
        return "pass" if not self.failures else "fail"

    def to_json(self) -> dict:
        return {
            "property": self.property_id,
            "trials": self.trials,
            "seed": self.seed,
            "vacuous": self.vacuous,
            "status": self.status,
            "evidence": "sampled",
            "failures": [{"trial": f.trial, "seed": f.seed, "message": f.message} for f in self.failures],
        }


def trial_seed(pid: str, seed: int, trial: int) -> str:
    return f"{pid}:{seed}:{trial}"


def run_trial(pid: str, seed_str: str):
    """Run one trial from its seed string; returns ``None``, ``VACUOUS`` or a message."""
    prop = _lookup(pid)
    try:
        return prop.fn(random.Random(seed_str))
    except Exception as e:  # a crash inside a property is a failure with a replay seed
        return f"{type(e).__name__}: {e}"


def _lookup(pid):
    if pid not in PROPERTIES:
        raise DomainError(f"unknown property {pid!r}; known: {', '.join(sorted(PROPERTIES))}")
    return PROPERTIES[pid]


def property_run(pid: str, trials: int = 1000, seed: int = 0, max_failures: int = 20) -> PropertyReport:
    _lookup(pid)
    report = PropertyReport(pid, trials, seed)
    t0 = time.perf_counter()
    for t in range(trials):
        s = trial_seed(pid, seed, t)
        out = run_trial(pid, s)
        if out is VACUOUS:
            report.vacuous += 1
        elif out is not None:
            report.failures.append(Failure(t, s, out))
            if len(report.failures) >= max_failures:
                break
    report.elapsed = time.perf_counter() - t0
    return report


def run_all(trials: int = 1000, seed: int = 0) -> List[PropertyReport]:
    return [property_run(pid, trials, seed) for pid in sorted(PROPERTIES)]


# -- conjecture search ----------------------------------------------------


@dataclass(frozen=True)
class ConjectureCandidate:
    matrix: Matrix
    seed: str
    lower: el.ElemWord
    upper: el.ElemWord


def _random_triangular_word(rng, n, lower, length):
    gens = []
    for _ in range(length):
        i, j = rng.sample(range(n), 2)
        if (i > j) != lower:
            i, j = j, i
        gens.append(el.Gaussian(i, j, TropElem(rng.randint(-8, -1))))
    return el.ElemWord(tuple(gens))


def is_nabla_image(m: Matrix) -> bool:
    """Whether ``m = A^nabla`` for ``A = m^nabla`` in SL (a sufficient test only)."""
    if not det.per(m).is_tangible:
        return False
    a = nb.nabla(m)
    return det.per(a) == ONE and nb.nabla(a) == m


def conjecture_search(trials: int = 200, seed: int = 0, n: int = 3) -> List[ConjectureCandidate]:
    """Definite, non-triangular products in T^l T^u that fail the nabla-image test.

    Only the preimage ``m^nabla`` is tried, so a candidate is not a proof
    that ``m`` lies outside the image.
    """
    out = []
    for t in range(trials):
        s = trial_seed("conjecture", seed, t)
        rng = random.Random(s)
        lo = _random_triangular_word(rng, n, True, rng.randint(1, n))
        up = _random_triangular_word(rng, n, False, rng.randint(1, n))
        m = el.word_product(lo + up, n)
        if not det.is_definite(m) or el.triangular_word(m) is not None:
            continue
        if not is_nabla_image(m):
            out.append(ConjectureCandidate(m, s, lo, up))
    return out

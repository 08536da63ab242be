"""Elementary generator words and the factorization algorithms built on them.

Generators use 0-based indices internally; the text format is 1-based:
one generator per line, ``T i j`` | ``D i a`` | ``G i j a``.
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple, Union

from .classify import Side, factor_out
from .determinant import is_definite, per
from .errors import DomainError, InternalError, ParseError, ShapeError, SingularityError, WitnessError
from .matrix import (
    GenPerm,
    Matrix,
    diagonal,
    elementary,
    identity,
    inverse_perm,
    is_invertible,
    mat_mul,
    transpose,
    transposition,
)
from .nabla import nabla2
from .semiring import ONE, ZERO, TropElem, elem, format_scalar, inv, mul, nu_lt, parse_scalar

# -- generators -----------------------------------------------------------


def _check_index(n, *idx):
    for k in idx:
        if not 0 <= k < n:
            raise ShapeError(f"generator index {k + 1} outside 1..{n}")


@dataclass(frozen=True)
class Transposition:
    i: int
    j: int

    def matrix(self, n: int) -> Matrix:
        _check_index(n, self.i, self.j)
        return transposition(n, self.i, self.j)

    def transpose(self):
        return self

    def to_text(self):
        return f"T {self.i + 1} {self.j + 1}"


@dataclass(frozen=True)
class DiagMult:
    i: int
    a: TropElem

    def __post_init__(self):
        object.__setattr__(self, "a", elem(self.a))
        if not self.a.is_tangible:
            raise DomainError("a diagonal multiplier needs a tangible nonzero scalar")

    def matrix(self, n: int) -> Matrix:
        _check_index(n, self.i)
        return diagonal([self.a if k == self.i else ONE for k in range(n)])

    def transpose(self):
        return self

    def to_text(self):
        return f"D {self.i + 1} {format_scalar(self.a)}"


@dataclass(frozen=True)
class Gaussian:
    """``E_{i,j}(a) = I + a e_{i,j}``."""

    i: int
    j: int
    a: TropElem

    def __post_init__(self):
        object.__setattr__(self, "a", elem(self.a))
        if self.i == self.j:
            raise DomainError("a Gaussian generator needs i != j")

    @property
    def lower(self) -> bool:
        return self.i > self.j

    def matrix(self, n: int) -> Matrix:
        _check_index(n, self.i, self.j)
        return elementary(n, self.i, self.j, self.a)

    def transpose(self):
        return Gaussian(self.j, self.i, self.a)

    def conjugate_by(self, p: GenPerm) -> "Gaussian":
        """``P E P^{-1}``, again a Gaussian generator."""
        pinv = inverse_perm(p.perm)
        i0, j0 = pinv[self.i], pinv[self.j]
        return Gaussian(i0, j0, mul(mul(self.a, p.weights[i0]), inv(p.weights[j0])))

    def to_text(self):
        return f"G {self.i + 1} {self.j + 1} {format_scalar(self.a)}"


ElemGen = Union[Transposition, DiagMult, Gaussian]


@dataclass(frozen=True)
class ElemWord:
    gens: Tuple[ElemGen, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "gens", tuple(self.gens))

    def __len__(self):
        return len(self.gens)

    def __iter__(self):
        return iter(self.gens)

    def __add__(self, other: "ElemWord") -> "ElemWord":
        return ElemWord(self.gens + tuple(other.gens))

    def product(self, n: int) -> Matrix:
        return word_product(self, n)

    def transpose(self) -> "ElemWord":
        """Word whose product is the transpose of this word's product."""
        return ElemWord(tuple(g.transpose() for g in reversed(self.gens)))

    def conjugate_by(self, p: GenPerm) -> "ElemWord":
        if any(not isinstance(g, Gaussian) for g in self.gens):
            raise DomainError("only Gaussian words are conjugated")
        return ElemWord(tuple(g.conjugate_by(p) for g in self.gens))

    def is_gaussian(self) -> bool:
        return all(isinstance(g, Gaussian) for g in self.gens)

    def to_text(self) -> str:
        return "".join(g.to_text() + "\n" for g in self.gens)

    def to_json(self):
        return [g.to_text() for g in self.gens]


def word_product(w: Union[ElemWord, Sequence[ElemGen]], n: int) -> Matrix:
    """Left-to-right product of the generator expansions; the empty word gives ``I``."""
    out = identity(n)
    for g in w:
        out = mat_mul(out, g.matrix(n))
    return out


def _int_index(tok, lineno, col):
    try:
        k = int(tok)
    except ValueError:
        raise ParseError(f"expected an index, got {tok!r}", lineno, col) from None
    if k < 1:
        raise ShapeError(f"line {lineno}: indices are 1-based, got {k}")
    return k - 1


def parse_word(text: str, n: Optional[int] = None) -> ElemWord:
    """Read the one-generator-per-line text format; ``#`` starts a comment."""
    gens: List[ElemGen] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0]
        toks = line.split()
        if not toks:
            continue
        cols = [raw.index(t) + 1 for t in toks]
        kind = toks[0].upper()
        arity = {"T": 3, "D": 3, "G": 4}.get(kind)
        if arity is None:
            raise ParseError(f"unknown generator {toks[0]!r}; expected T, D or G", lineno, cols[0])
        if len(toks) != arity:
            raise ParseError(f"{kind} takes {arity - 1} arguments, got {len(toks) - 1}", lineno, cols[0])
        try:
            if kind == "T":
                g = Transposition(_int_index(toks[1], lineno, cols[1]), _int_index(toks[2], lineno, cols[2]))
            elif kind == "D":
                g = DiagMult(_int_index(toks[1], lineno, cols[1]), parse_scalar(toks[2]))
            else:
                g = Gaussian(
                    _int_index(toks[1], lineno, cols[1]),
                    _int_index(toks[2], lineno, cols[2]),
                    parse_scalar(toks[3]),
                )
        except ParseError as e:
            if e.line is None:
                raise ParseError(str(e), lineno, cols[-1]) from None
            raise
        if n is not None:
            g.matrix(n)
        gens.append(g)
    return ElemWord(tuple(gens))


# -- Steinberg rewriting --------------------------------------------------


def _rewrite_pair(x: Gaussian, y: Gaussian):
    """Rewrite an adjacent (upper, lower) pair, or return ``None`` if no relation applies."""
    i, j, a = x.i, x.j, x.a
    k, l, b = y.i, y.j, y.a
    if i != l and j != k:
        return (y, x)
    if j == k and i == l:
        # commutation is only valid below one
        return (y, x) if nu_lt(mul(a, b), ONE) else None
    if j == k:
        ab = mul(a, b)
        if l < i:
            return (Gaussian(i, l, ab), y, x)
        return (y, x, Gaussian(i, l, ab))
    return None


@dataclass(frozen=True)
class SteinbergTrace:
    lower: Optional[ElemWord]
    upper: Optional[ElemWord]
    steps: int
    status: str  # "ok", "stuck" or "bound"
    stuck_at: Optional[Tuple[ElemGen, ElemGen]] = None


def steinberg_rewrite(w: ElemWord, n: int) -> SteinbergTrace:
    """Move upper Gaussians right of lower ones, verifying the product after every step."""
    gens = list(w.gens)
    if any(not isinstance(g, Gaussian) for g in gens):
        raise DomainError("Steinberg rewriting takes Gaussian generators only")
    target = word_product(gens, n)
    if per(target) != ONE:
        raise DomainError("the word's product must lie in SL_n")
    passes = n * n * max(len(gens), 1)
    steps = 0
    for _ in range(passes):
        pos = next((p for p in range(len(gens) - 1) if not gens[p].lower and gens[p + 1].lower), None)
        if pos is None:
            cut = next((p for p, g in enumerate(gens) if not g.lower), len(gens))
            return SteinbergTrace(ElemWord(gens[:cut]), ElemWord(gens[cut:]), steps, "ok")
        repl = _rewrite_pair(gens[pos], gens[pos + 1])
        if repl is None:
            return SteinbergTrace(None, None, steps, "stuck", (gens[pos], gens[pos + 1]))
        gens[pos : pos + 2] = repl
        steps += 1
        if word_product(gens, n) != target:
            raise InternalError(f"rewrite step {steps} changed the product")
    return SteinbergTrace(None, None, steps, "bound")


def steinberg_normal_form(w: ElemWord, n: int) -> Optional[Tuple[ElemWord, ElemWord]]:
    """``(lower, upper)`` with the same product as ``w``, or ``None`` when no rule sequence is found."""
    t = steinberg_rewrite(w, n)
    return (t.lower, t.upper) if t.status == "ok" else None


# -- singularizing Gaussian -----------------------------------------------


def _best_paths(a: Matrix):
    """Max path weight between every ordered pair on nu-values (cycles are negative)."""
    n = a.n
    d = [[a.rows[i][j].value if i != j else None for j in range(n)] for i in range(n)]
    for m in range(n):
        for i in range(n):
            if d[i][m] is None:
                continue
            for j in range(n):
                if i != j and d[m][j] is not None:
                    w = d[i][m] + d[m][j]
                    if d[i][j] is None or w > d[i][j]:
                        d[i][j] = w
    return d


@dataclass(frozen=True)
class SnsResult:
    gen: Gaussian
    gen_perm: GenPerm
    definite: Matrix
    product: Matrix  # E A1
    conjugated: Gaussian  # acts on A itself


def sns_detail(a: Matrix) -> SnsResult:
    if per(a) != ONE:
        raise DomainError("sns_witness needs a matrix in SL_n")
    if is_invertible(a):
        raise WitnessError("A is a generalized permutation matrix; every E A stays nonsingular")
    p, a1 = factor_out(a, Side.LEFT)
    best = _best_paths(a1)
    n = a.n
    # an entry that is itself a heaviest path keeps the competing track at one exactly
    pick = next(
        (i, j)
        for i in range(n)
        for j in range(n)
        if i != j and a1.rows[i][j].value is not None and a1.rows[i][j].value == best[i][j]
    )
    i, j = pick
    g = Gaussian(j, i, inv(a1.rows[i][j]))
    prod = mat_mul(g.matrix(n), a1)
    if per(prod) != TropElem(0, True):
        raise InternalError(f"singularizing Gaussian gave per {per(prod)}")
    return SnsResult(g, p, a1, prod, g.conjugate_by(p))


def sns_witness(a: Matrix) -> Gaussian:
    """A Gaussian ``E`` with ``E A1`` singular, ``A1`` the definite part of ``A``."""
    return sns_detail(a).gen


# -- ED factorization -----------------------------------------------------


@dataclass(frozen=True)
class EDFactorization:
    word: ElemWord  # word_product(word) A1 == closure
    conjugated: ElemWord  # word_product(conjugated) A == A^nabla-nabla
    gen_perm: GenPerm
    definite: Matrix
    closure: Matrix


def ed_factor(a: Matrix) -> EDFactorization:
    """Gaussian words taking ``A1`` to ``A1^{nabla nabla}`` and ``A`` to ``A^{nabla nabla}``.

    Upper entries act first and lower entries later, each block in
    lexicographic order; as a left-to-right word that is the lower block
    followed by the upper block.
    """
    if not per(a).is_tangible:
        raise SingularityError("ed_factor needs a nonsingular matrix")
    p, a1 = factor_out(a, Side.LEFT)
    d = nabla2(a1)
    n = a.n
    diff = [(i, j) for i in range(n) for j in range(n) if i != j and d.rows[i][j] != a1.rows[i][j]]
    lower = [Gaussian(i, j, d.rows[i][j]) for i, j in diff if i > j]
    upper = [Gaussian(i, j, d.rows[i][j]) for i, j in diff if i < j]
    word = ElemWord(tuple(lower + upper))
    if mat_mul(word_product(word, n), a1) != d:
        raise InternalError("ED word does not reproduce nabla2 of the definite part")
    conj = word.conjugate_by(p)
    if mat_mul(word_product(conj, n), a) != nabla2(a):
        raise InternalError("conjugated ED word does not reproduce nabla2(A)")
    return EDFactorization(word, conj, p, a1, d)


# -- triangular words and LU ----------------------------------------------


def genperm_word(p: GenPerm) -> ElemWord:
    """Transpositions and diagonal multipliers whose product is ``P``."""
    n = p.n
    gens: List[ElemGen] = [DiagMult(i, w) for i, w in enumerate(p.weights) if w != ONE]
    perm = list(p.perm)
    for i in range(n):
        if perm[i] != i:
            r = perm.index(i)
            gens.append(Transposition(i, r))
            perm[i], perm[r] = perm[r], perm[i]
    word = ElemWord(tuple(gens))
    if word_product(word, n) != p.matrix:
        raise InternalError("generalized permutation word is inexact")
    return word


def triangular_word(m: Matrix) -> Optional[ElemWord]:
    """Gaussian word for a unit lower or unit upper triangular matrix, else ``None``."""
    n = m.n
    if any(m.rows[i][i] != ONE for i in range(n)):
        return None
    lower_nz = any(m.rows[i][j] != ZERO for i in range(n) for j in range(i))
    upper_nz = any(m.rows[i][j] != ZERO for i in range(n) for j in range(i + 1, n))
    if lower_nz and upper_nz:
        return None
    if upper_nz:
        w = triangular_word(transpose(m))
        return None if w is None else w.transpose()
    # columns left to right: products e_{i,j} e_{k,l} with l > j never meet
    gens = [Gaussian(i, j, m.rows[i][j]) for j in range(n) for i in range(j + 1, n) if m.rows[i][j] != ZERO]
    word = ElemWord(tuple(gens))
    if word_product(word, n) != m:
        raise InternalError("triangular word is inexact")
    return word


def lu_attempt(m: Matrix) -> Optional[Tuple[Matrix, Matrix]]:
    """Split a definite ``M`` into its unit triangular halves if they multiply back to ``M``."""
    if not is_definite(m):
        return None
    n = m.n
    lo = Matrix._raw(
        tuple(tuple(m.rows[i][j] if j < i else (ONE if i == j else ZERO) for j in range(n)) for i in range(n))
    )
    up = Matrix._raw(
        tuple(tuple(m.rows[i][j] if j > i else (ONE if i == j else ZERO) for j in range(n)) for i in range(n))
    )
    if mat_mul(lo, up) != m:
        return None
    return lo, up


def elementary_decomposition(m: Matrix) -> Optional[ElemWord]:
    """``P L U`` as one word when the definite part of ``m`` splits triangularly."""
    if not per(m).is_tangible:
        return None
    p, part = factor_out(m, Side.LEFT)
    lu = lu_attempt(part)
    if lu is None:
        return None
    word = genperm_word(p) + triangular_word(lu[0]) + triangular_word(lu[1])
    if word_product(word, m.n) != m:
        raise InternalError("elementary decomposition is inexact")
    return word


# -- the four-matrix bridge -----------------------------------------------


@dataclass(frozen=True)
class Bridge:
    e1: ElemWord
    e2: Matrix
    e3: Matrix
    e4: ElemWord
    e2_word: Optional[ElemWord]
    e3_word: Optional[ElemWord]

    @property
    def fully_elementary(self) -> bool:
        return self.e2_word is not None and self.e3_word is not None


def bridge(a: Matrix, b: Matrix) -> Bridge:
    """``E1 A E2 = E3 B E4`` with ``E2 = B^{nabla nabla}`` and ``E3 = A^{nabla nabla}``.

    ``E1 A = A^{nabla nabla}`` comes from :func:`ed_factor`; ``B E4 = B^{nabla nabla}``
    from the transposed ED word of ``B^t``, since nabla commutes with transpose.
    """
    if a.n != b.n:
        raise ShapeError("bridge needs matrices of the same size")
    for name, x in (("A", a), ("B", b)):
        if not per(x).is_tangible:
            raise SingularityError(f"{name} must be nonsingular")
    n = a.n
    e1 = ed_factor(a).conjugated
    e4 = ed_factor(transpose(b)).conjugated.transpose()
    e2, e3 = nabla2(b), nabla2(a)
    lhs = mat_mul(mat_mul(word_product(e1, n), a), e2)
    rhs = mat_mul(mat_mul(e3, b), word_product(e4, n))
    if lhs != rhs:
        raise InternalError("bridge equation failed")
    return Bridge(e1, e2, e3, e4, elementary_decomposition(e2), elementary_decomposition(e3))

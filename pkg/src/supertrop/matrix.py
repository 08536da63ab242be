"""Dense square matrices over the supertropical semifield.

Indices are 0-based in code.  The text and JSON formats (and the CLI) use
the matrix layout only, so no index translation happens there; generator
words in :mod:`supertrop.elementary` are 1-based on the wire.
"""

import json
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Tuple

from .errors import DomainError, ParseError, ShapeError
from .semiring import (
    ONE,
    ZERO,
    TropElem,
    add,
    elem,
    format_scalar,
    ghost_surpass,
    inv,
    mul,
    nu_eq,
    nu_le,
    parse_scalar,
    tprod,
)

Perm = Tuple[int, ...]


def _mk(v, g):
    if type(v) is Fraction and v.denominator == 1:
        v = v.numerator
    return TropElem(v, g)


class Matrix:
    """An immutable ``n x n`` matrix of :class:`TropElem` entries."""

    __slots__ = ("rows", "n", "_hash")

    def __init__(self, rows):
        rows = tuple(tuple(elem(x) for x in row) for row in rows)
        n = len(rows)
        if n == 0:
            raise ShapeError("matrices must be at least 1x1")
        for r in rows:
            if len(r) != n:
                raise ShapeError(f"expected a square matrix, got a row of length {len(r)} in a {n}-row matrix")
        self.rows = rows
        self.n = n
        self._hash = None

    @classmethod
    def _raw(cls, rows):
        # trusted constructor: rows is already a tuple of tuples of TropElem
        m = object.__new__(cls)
        m.rows = rows
        m.n = len(rows)
        m._hash = None
        return m

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.rows == other.rows

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.rows)
        return self._hash

    def __repr__(self):
        body = "; ".join(" ".join(format_scalar(x) for x in r) for r in self.rows)
        return f"Matrix([{body}])"

    def __str__(self):
        return format_matrix(self)

    def __iter__(self):
        return iter(self.rows)

    # -- arithmetic -------------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        _check_same(self, other)
        return Matrix._raw(
            tuple(tuple(add(a, b) for a, b in zip(r, s)) for r, s in zip(self.rows, other.rows))
        )

    def __matmul__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return mat_mul(self, other)

    def apply(self, v):
        """Matrix-vector product."""
        if len(v) != self.n:
            raise ShapeError(f"vector of length {len(v)} for a {self.n}x{self.n} matrix")
        v = tuple(elem(x) for x in v)
        out = []
        for row in self.rows:
            best = None
            ghost = False
            for a, b in zip(row, v):
                if a.value is None or b.value is None:
                    continue
                s = a.value + b.value
                if best is None or s > best:
                    best, ghost = s, a.ghost or b.ghost
                elif s == best:
                    ghost = True
            out.append(ZERO if best is None else _mk(best, ghost))
        return tuple(out)

    @property
    def T(self):
        return transpose(self)

    def diagonal(self):
        return tuple(self.rows[i][i] for i in range(self.n))

    def is_tangible(self):
        return all(not x.ghost for r in self.rows for x in r)


def _check_same(a: Matrix, b: Matrix):
    if a.n != b.n:
        raise ShapeError(f"dimension mismatch: {a.n}x{a.n} vs {b.n}x{b.n}")


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    _check_same(a, b)
    cols = list(zip(*b.rows))
    out = []
    for row in a.rows:
        new_row = []
        for col in cols:
            best = None
            ghost = False
            for x, y in zip(row, col):
                xv = x.value
                if xv is None:
                    continue
                yv = y.value
                if yv is None:
                    continue
                s = xv + yv
                if best is None or s > best:
                    best = s
                    ghost = x.ghost or y.ghost
                elif s == best:
                    ghost = True
            new_row.append(ZERO if best is None else _mk(best, ghost))
        out.append(tuple(new_row))
    return Matrix._raw(tuple(out))


def mat_add(a: Matrix, b: Matrix) -> Matrix:
    return a + b


def mat_prod(*ms: Matrix) -> Matrix:
    if not ms:
        raise ShapeError("empty product needs a dimension; use identity(n)")
    out = ms[0]
    for m in ms[1:]:
        out = mat_mul(out, m)
    return out


def transpose(a: Matrix) -> Matrix:
    return Matrix._raw(tuple(zip(*a.rows)))


def scalar_mul(c, a: Matrix) -> Matrix:
    c = elem(c)
    return Matrix._raw(tuple(tuple(mul(c, x) for x in r) for r in a.rows))


def mat_nu(a: Matrix) -> Matrix:
    """Apply the ghost map entrywise."""
    return Matrix._raw(tuple(tuple(TropElem(x.value, x.value is not None) for x in r) for r in a.rows))


# -- relations ------------------------------------------------------------


def mat_ghost_surpass(a: Matrix, b: Matrix) -> bool:
    """``A |= B``: ``A = B + G`` for a ghost matrix ``G``."""
    _check_same(a, b)
    return all(ghost_surpass(x, y) for r, s in zip(a.rows, b.rows) for x, y in zip(r, s))


def mat_nu_leq(a: Matrix, b: Matrix) -> bool:
    """``A <=_nu B`` entrywise."""
    _check_same(a, b)
    return all(nu_le(x, y) for r, s in zip(a.rows, b.rows) for x, y in zip(r, s))


def mat_nu_eq(a: Matrix, b: Matrix) -> bool:
    _check_same(a, b)
    return all(nu_eq(x, y) for r, s in zip(a.rows, b.rows) for x, y in zip(r, s))


# -- special matrices -----------------------------------------------------


def identity(n: int) -> Matrix:
    return Matrix._raw(tuple(tuple(ONE if i == j else ZERO for j in range(n)) for i in range(n)))


def zero_matrix(n: int) -> Matrix:
    return Matrix._raw(tuple((ZERO,) * n for _ in range(n)))


def permutation_matrix(perm: Sequence[int]) -> Matrix:
    """``P_pi`` with ``one`` at ``(i, perm[i])``."""
    n = len(perm)
    if sorted(perm) != list(range(n)):
        raise DomainError(f"not a permutation of 0..{n - 1}: {tuple(perm)}")
    return Matrix._raw(tuple(tuple(ONE if j == perm[i] else ZERO for j in range(n)) for i in range(n)))


def diagonal(weights) -> Matrix:
    w = [elem(x) for x in weights]
    n = len(w)
    return Matrix._raw(tuple(tuple(w[i] if i == j else ZERO for j in range(n)) for i in range(n)))


def elementary(n: int, i: int, j: int, a) -> Matrix:
    """The Gaussian matrix ``E_{i,j}(a) = I + a e_{i,j}`` (0-based)."""
    if i == j:
        raise DomainError("a Gaussian matrix needs i != j")
    if not (0 <= i < n and 0 <= j < n):
        raise ShapeError(f"index ({i}, {j}) outside a {n}x{n} matrix")
    a = elem(a)
    rows = [list(r) for r in identity(n).rows]
    rows[i][j] = a
    return Matrix._raw(tuple(tuple(r) for r in rows))


def transposition(n: int, i: int, j: int) -> Matrix:
    """The permutation matrix swapping rows (or columns) ``i`` and ``j``."""
    if not (0 <= i < n and 0 <= j < n):
        raise ShapeError(f"index ({i}, {j}) outside a {n}x{n} matrix")
    perm = list(range(n))
    perm[i], perm[j] = perm[j], perm[i]
    return permutation_matrix(perm)


def inverse_perm(perm: Sequence[int]) -> Perm:
    out = [0] * len(perm)
    for i, p in enumerate(perm):
        out[p] = i
    return tuple(out)


def compose(outer: Sequence[int], inner: Sequence[int]) -> Perm:
    """``outer o inner``."""
    return tuple(outer[inner[i]] for i in range(len(inner)))


@dataclass(frozen=True)
class GenPerm:
    """A generalized permutation matrix: ``weights[i]`` sits at ``(i, perm[i])``."""

    perm: Perm
    weights: Tuple[TropElem, ...]

    def __post_init__(self):
        object.__setattr__(self, "perm", tuple(self.perm))
        object.__setattr__(self, "weights", tuple(elem(w) for w in self.weights))
        n = len(self.perm)
        if sorted(self.perm) != list(range(n)) or len(self.weights) != n:
            raise DomainError("GenPerm needs a permutation and one weight per row")
        if any(not w.is_tangible for w in self.weights):
            raise DomainError("GenPerm weights must be tangible and nonzero")

    @classmethod
    def of_perm(cls, perm):
        return cls(tuple(perm), (ONE,) * len(perm))

    @property
    def n(self):
        return len(self.perm)

    @property
    def matrix(self) -> Matrix:
        n = self.n
        return Matrix._raw(
            tuple(tuple(self.weights[i] if j == self.perm[i] else ZERO for j in range(n)) for i in range(n))
        )

    def inverse(self) -> "GenPerm":
        pinv = inverse_perm(self.perm)
        return GenPerm(pinv, tuple(inv(self.weights[pinv[k]]) for k in range(self.n)))

    def per(self) -> TropElem:
        return tprod(self.weights)

    def is_identity(self) -> bool:
        return self.perm == tuple(range(self.n)) and all(w == ONE for w in self.weights)


def as_gen_perm(a: Matrix):
    """Return ``a`` as a :class:`GenPerm`, or ``None`` if it is not one."""
    perm = []
    weights = []
    for row in a.rows:
        nz = [j for j, x in enumerate(row) if x.value is not None]
        if len(nz) != 1 or row[nz[0]].ghost:
            return None
        perm.append(nz[0])
        weights.append(row[nz[0]])
    if sorted(perm) != list(range(a.n)):
        return None
    return GenPerm(tuple(perm), tuple(weights))


def is_invertible(a: Matrix) -> bool:
    return as_gen_perm(a) is not None


def build_special(kind: str, n: int = None, **params) -> Matrix:
    """Named constructor dispatch used by the CLI and the oracle.

    ``kind`` is one of ``identity``, ``permutation`` (``perm``),
    ``gen_perm`` (``perm``, ``weights``), ``diagonal`` (``weights``),
    ``elementary`` (``i``, ``j``, ``a``) or ``transposition`` (``i``, ``j``).
    """
    if kind == "identity":
        return identity(n)
    if kind == "permutation":
        return permutation_matrix(params["perm"])
    if kind == "gen_perm":
        return GenPerm(tuple(params["perm"]), tuple(params["weights"])).matrix
    if kind == "diagonal":
        return diagonal(params["weights"])
    if kind == "elementary":
        return elementary(n, params["i"], params["j"], params["a"])
    if kind == "transposition":
        return transposition(n, params["i"], params["j"])
    raise DomainError(f"unknown special matrix kind {kind!r}")


# -- text and JSON --------------------------------------------------------


def parse_matrix(text: str) -> Matrix:
    """Parse ``n`` lines of ``n`` scalar tokens, or the JSON object form.

    Rows may also be separated by ``;`` so that small matrices fit on one
    command line.  Blank lines and ``#`` comments are ignored.
    """
    stripped = text.strip()
    if stripped.startswith("{"):
        return matrix_from_json(stripped)
    rows = []
    for lineno, line in enumerate(text.replace(";", "\n").splitlines(), start=1):
        line = line.split("#", 1)[0]
        if not line.strip():
            continue
        row = []
        for m in re.finditer(r"\S+", line):
            try:
                row.append(parse_scalar(m.group()))
            except ParseError as exc:
                raise ParseError(str(exc), lineno, m.start() + 1) from None
        if rows and len(row) != len(rows[0]):
            raise ParseError(f"expected {len(rows[0])} entries, found {len(row)}", lineno)
        rows.append(row)
    if not rows:
        raise ParseError("empty matrix")
    if len(rows) != len(rows[0]):
        raise ParseError(f"matrix has {len(rows)} rows of length {len(rows[0])}; it must be square")
    return Matrix(rows)


def format_matrix(a: Matrix) -> str:
    cells = [[format_scalar(x) for x in r] for r in a.rows]
    width = max(len(c) for r in cells for c in r)
    return "\n".join(" ".join(c.rjust(width) for c in r) for r in cells)


def matrix_to_json(a: Matrix) -> dict:
    return {"n": a.n, "rows": [[format_scalar(x) for x in r] for r in a.rows]}


def matrix_from_json(obj) -> Matrix:
    if isinstance(obj, str):
        try:
            obj = json.loads(obj)
        except json.JSONDecodeError as exc:
            raise ParseError(f"invalid JSON: {exc.msg}", exc.lineno, exc.colno) from None
    try:
        n = obj["n"]
        rows = obj["rows"]
    except (KeyError, TypeError):
        raise ParseError('JSON matrix needs "n" and "rows"') from None
    if len(rows) != n or any(len(r) != n for r in rows):
        raise ParseError(f'"rows" is not an {n}x{n} grid')
    return Matrix([[parse_scalar(str(t)) for t in r] for r in rows])


def mat(rows) -> Matrix:
    """Shorthand: build from nested lists of tokens/numbers, or parse a string."""
    if isinstance(rows, str):
        return parse_matrix(rows)
    return Matrix(rows)

"""Exact scalar arithmetic over prime fields and the rationals, plus dense
linear algebra (RREF, kernels, solving) used by every other module.

Scalars are kept in canonical form throughout: residues in ``[0, p)`` as
plain ints over F_p, ``fractions.Fraction`` in lowest terms over Q.  All
matrix routines return fresh values; nothing here mutates its arguments.
"""
from __future__ import annotations

from fractions import Fraction

_PRIME_BOUND = 1 << 31


class DivisionByZero(ZeroDivisionError):
    pass


class DimensionMismatch(ValueError):
    pass


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


class Field:
    """A prime field F_p (``char == p``) or the rationals (``char == 0``)."""

    __slots__ = ("char",)

    def __init__(self, char: int):
        if char != 0:
            if char > _PRIME_BOUND or not _is_prime(char):
                raise ValueError(f"characteristic must be 0 or a prime <= 2^31, got {char}")
        self.char = char

    def __eq__(self, other):
        return isinstance(other, Field) and self.char == other.char

    def __hash__(self):
        return hash(("Field", self.char))

    def __repr__(self):
        return "QQ" if self.char == 0 else f"GF({self.char})"

    # -- canonical construction -------------------------------------------
    def of(self, n):
        """Canonical scalar from an int or Fraction."""
        if self.char == 0:
            return Fraction(n)
        return int(n) % self.char

    @property
    def zero(self):
        return Fraction(0) if self.char == 0 else 0

    @property
    def one(self):
        return Fraction(1) if self.char == 0 else 1

    # -- arithmetic --------------------------------------------------------
    def add(self, a, b):
        return a + b if self.char == 0 else (a + b) % self.char

    def sub(self, a, b):
        return a - b if self.char == 0 else (a - b) % self.char

    def mul(self, a, b):
        return a * b if self.char == 0 else (a * b) % self.char

    def neg(self, a):
        return -a if self.char == 0 else (-a) % self.char

    def inv(self, a):
        if not a:
            raise DivisionByZero("inverse of zero")
        if self.char == 0:
            return 1 / Fraction(a)
        return pow(a, -1, self.char)

    def div(self, a, b):
        return self.mul(a, self.inv(b))


QQ = Field(0)


def GF(p: int) -> Field:
    return Field(p)


# ---------------------------------------------------------------------------
# Dense matrices: lists of rows of canonical scalars.
# ---------------------------------------------------------------------------

def zeros(rows: int, cols: int, field: Field):
    z = field.zero
    return [[z] * cols for _ in range(rows)]


def identity(n: int, field: Field):
    m = zeros(n, n, field)
    for i in range(n):
        m[i][i] = field.one
    return m


def transpose(mat):
    if not mat:
        return []
    return [list(col) for col in zip(*mat)]


def mat_mul(field: Field, a, b):
    if a and b and len(a[0]) != len(b):
        raise DimensionMismatch(f"{len(a[0])} != {len(b)}")
    if not a or not b:
        return [[field.zero] * (len(b[0]) if b else 0) for _ in a]
    bt = transpose(b)
    out = []
    for row in a:
        out_row = []
        for col in bt:
            s = field.zero
            for x, y in zip(row, col):
                if x and y:
                    s = field.add(s, field.mul(x, y))
            out_row.append(s)
        out.append(out_row)
    return out


def mat_vec(field: Field, a, v):
    if a and len(a[0]) != len(v):
        raise DimensionMismatch(f"{len(a[0])} != {len(v)}")
    out = []
    for row in a:
        s = field.zero
        for x, y in zip(row, v):
            if x and y:
                s = field.add(s, field.mul(x, y))
        out.append(s)
    return out


def mat_add(field: Field, a, b):
    return [[field.add(x, y) for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_scale(field: Field, c, a):
    return [[field.mul(c, x) for x in row] for row in a]


def mat_eq(a, b) -> bool:
    return a == b


def kronecker(field: Field, a, b):
    """Kronecker product a (x) b."""
    if not a or not b:
        return []
    br, bc = len(b), len(b[0])
    out = []
    for ra in a:
        for i in range(br):
            row = []
            for x in ra:
                row.extend(field.mul(x, y) if x else field.zero for y in b[i])
            out.append(row)
    return out


def rref(field: Field, mat):
    """Reduced row-echelon form.

    Returns ``(reduced, rank, pivot_cols)``.  The reduced form is the unique
    RREF, so re-running on the output is the identity.
    """
    m = [list(row) for row in mat]
    rows = len(m)
    cols = len(m[0]) if rows else 0
    pivots = []
    r = 0
    for c in range(cols):
        pivot = None
        for i in range(r, rows):
            if m[i][c]:
                pivot = i
                break
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        inv = field.inv(m[r][c])
        if inv != field.one:
            m[r] = [field.mul(inv, x) for x in m[r]]
        for i in range(rows):
            if i != r and m[i][c]:
                f = m[i][c]
                row_r = m[r]
                m[i] = [field.sub(x, field.mul(f, y)) for x, y in zip(m[i], row_r)]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return m, r, pivots


def rank(field: Field, mat) -> int:
    return rref(field, mat)[1]


def kernel_basis(field: Field, mat):
    """Canonical basis of the right kernel {v : mat . v = 0}.

    Each basis vector carries a leading 1 in a distinct non-pivot coordinate.
    Vectors are returned as column vectors (plain lists), one per free column.
    """
    rows = len(mat)
    cols = len(mat[0]) if rows else 0
    if cols == 0:
        return []
    red, rk, pivots = rref(field, mat)
    pivot_set = set(pivots)
    basis = []
    for free in range(cols):
        if free in pivot_set:
            continue
        v = [field.zero] * cols
        v[free] = field.one
        for r, pc in enumerate(pivots):
            v[pc] = field.neg(red[r][free])
        basis.append(v)
    return basis


def solve(field: Field, mat, b):
    """A particular solution of ``mat . x = b`` (free coordinates set to 0),
    or None when the system is inconsistent."""
    rows = len(mat)
    if len(b) != rows:
        raise DimensionMismatch(f"rhs length {len(b)} != {rows} rows")
    cols = len(mat[0]) if rows else 0
    aug = [list(row) + [bv] for row, bv in zip(mat, b)]
    if rows == 0:
        return [field.zero] * cols
    red, rk, pivots = rref(field, aug)
    if cols in pivots:
        return None
    x = [field.zero] * cols
    for r, pc in enumerate(pivots):
        x[pc] = red[r][cols]
    return x


def solve_matrix(field: Field, mat, rhs):
    """Columnwise solve: X with mat . X = rhs, or None if any column fails."""
    cols = len(rhs[0]) if rhs else 0
    xs = []
    for j in range(cols):
        x = solve(field, mat, [row[j] for row in rhs])
        if x is None:
            return None
        xs.append(x)
    return transpose(xs)


def column_space_contains(field: Field, mat, v) -> bool:
    return solve(field, mat, v) is not None


def vstack(*mats):
    out = []
    for m in mats:
        out.extend(m)
    return out


def hstack(*mats):
    mats = [m for m in mats if m]
    if not mats:
        return []
    rows = len(mats[0])
    return [sum((m[i] for m in mats), []) for i in range(rows)]

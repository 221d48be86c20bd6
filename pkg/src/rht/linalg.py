"""Exact linear algebra over the rationals.

Everything here runs on arbitrary-precision ``fractions.Fraction``; there is
no floating point anywhere in this package.  The pivot order is fixed (columns
left to right, first available row within a column), so echelon forms, kernel
bases and solution vectors are deterministic and safe to freeze in tests.
"""

from fractions import Fraction

QZERO = Fraction(0)
QONE = Fraction(1)


class RatMatrix:
    """Sparse rows x cols matrix over Q.  Zero entries are never stored."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, rows, cols, entries=None):
        if rows < 0 or cols < 0:
            raise ValueError("matrix dimensions must be nonnegative")
        self.rows = rows
        self.cols = cols
        self.entries = {}
        if entries:
            for (i, j), v in entries.items():
                self.set(i, j, v)

    @classmethod
    def from_rows(cls, rowlists, cols=None):
        if cols is None:
            cols = len(rowlists[0]) if rowlists else 0
        m = cls(len(rowlists), cols)
        for i, row in enumerate(rowlists):
            if len(row) != cols:
                raise ValueError("ragged rows")
            for j, v in enumerate(row):
                m.set(i, j, v)
        return m

    @classmethod
    def from_columns(cls, collists, rows=None):
        if rows is None:
            rows = len(collists[0]) if collists else 0
        m = cls(rows, len(collists))
        for j, col in enumerate(collists):
            if len(col) != rows:
                raise ValueError("ragged columns")
            for i, v in enumerate(col):
                m.set(i, j, v)
        return m

    @classmethod
    def identity(cls, n):
        m = cls(n, n)
        for i in range(n):
            m.entries[(i, i)] = QONE
        return m

    def get(self, i, j):
        return self.entries.get((i, j), QZERO)

    def set(self, i, j, value):
        if not (0 <= i < self.rows and 0 <= j < self.cols):
            raise IndexError((i, j))
        value = Fraction(value)
        if value:
            self.entries[(i, j)] = value
        else:
            self.entries.pop((i, j), None)

    def to_rows(self):
        out = [[QZERO] * self.cols for _ in range(self.rows)]
        for (i, j), v in self.entries.items():
            out[i][j] = v
        return out

    def column(self, j):
        return [self.get(i, j) for i in range(self.rows)]

    def transpose(self):
        t = RatMatrix(self.cols, self.rows)
        for (i, j), v in self.entries.items():
            t.entries[(j, i)] = v
        return t

    def matvec(self, vec):
        if len(vec) != self.cols:
            raise ValueError("dimension mismatch in matvec")
        out = [QZERO] * self.rows
        for (i, j), v in self.entries.items():
            c = vec[j]
            if c:
                out[i] += v * c
        return out

    def matmul(self, other):
        if self.cols != other.rows:
            raise ValueError("dimension mismatch in matmul")
        out = RatMatrix(self.rows, other.cols)
        cols_of = {}
        for (i, j), v in other.entries.items():
            cols_of.setdefault(i, []).append((j, v))
        for (i, k), v in self.entries.items():
            for j, w in cols_of.get(k, ()):
                out.set(i, j, out.get(i, j) + v * w)
        return out

    def is_zero(self):
        return not self.entries

    def __eq__(self, other):
        return (isinstance(other, RatMatrix) and self.rows == other.rows
                and self.cols == other.cols and self.entries == other.entries)

    def __repr__(self):
        return "RatMatrix(%d, %d, %d nonzero)" % (self.rows, self.cols, len(self.entries))


def row_echelon(rowlists, reduce=True):
    """Row-echelon form of a list of dense rows (copies; inputs untouched).

    Returns (rows, pivot_cols).  Pivot choice: scan columns left to right, take
    the first remaining row with a nonzero entry; with reduce=True pivots are
    scaled to 1 and cleared above as well (RREF).
    """
    rows = [list(map(Fraction, r)) for r in rowlists]
    if not rows:
        return [], []
    ncols = len(rows[0])
    pivots = []
    r = 0
    for c in range(ncols):
        pr = None
        for i in range(r, len(rows)):
            if rows[i][c]:
                pr = i
                break
        if pr is None:
            continue
        if pr != r:
            rows[r], rows[pr] = rows[pr], rows[r]
        piv = rows[r][c]
        if reduce and piv != 1:
            rows[r] = [x / piv for x in rows[r]]
            piv = QONE
        lo = 0 if reduce else r + 1
        for i in range(lo, len(rows)):
            if i == r:
                continue
            f = rows[i][c]
            if f:
                ratio = f / piv
                ri, rr = rows[i], rows[r]
                for k in range(c, ncols):
                    if rr[k]:
                        ri[k] -= ratio * rr[k]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows, pivots


def rank(m):
    """Rank over Q via exact elimination."""
    _, pivots = row_echelon(m.to_rows(), reduce=False)
    return len(pivots)


def kernel_basis(m):
    """Basis of {v : m.v = 0}, returned as dense Fraction vectors.

    The basis is put in reduced row-echelon form, so it is deterministic and
    has size cols - rank(m).
    """
    if m.cols == 0:
        return []
    red, pivots = row_echelon(m.to_rows(), reduce=True)
    pivset = set(pivots)
    free = [c for c in range(m.cols) if c not in pivset]
    vecs = []
    for f in free:
        v = [QZERO] * m.cols
        v[f] = QONE
        for r, pc in enumerate(pivots):
            v[pc] = -red[r][f]
        vecs.append(v)
    if not vecs:
        return []
    canon, _ = row_echelon(vecs, reduce=True)
    return canon[:len(vecs)]


def solve(m, b):
    """Some x with m.x = b, or None if inconsistent.

    Deterministic: free variables are set to 0 under the fixed pivot order.
    """
    if len(b) != m.rows:
        raise ValueError("dimension mismatch: len(b) != rows")
    aug = m.to_rows()
    for i, r in enumerate(aug):
        r.append(Fraction(b[i]))
    red, pivots = row_echelon(aug, reduce=True)
    if m.cols in pivots:
        return None
    x = [QZERO] * m.cols
    for r, pc in enumerate(pivots):
        x[pc] = red[r][m.cols]
    return x


def cokernel_rank(sub, amb_dim):
    """amb_dim minus the rank of the column span of sub (rows must match)."""
    if sub.rows != amb_dim:
        raise ValueError("subspace matrix must have amb_dim rows")
    return amb_dim - rank(sub)


def reduce_against(echelon_rows, pivots, vec):
    """Reduce vec against RREF rows in place-free style; returns the remainder."""
    v = list(vec)
    for r, pc in enumerate(pivots):
        if v[pc]:
            f = v[pc]
            row = echelon_rows[r]
            for k in range(len(v)):
                if row[k]:
                    v[k] -= f * row[k]
    return v


class EchelonSpan:
    """Incrementally maintained RREF span, used for deterministic basis picks."""

    def __init__(self, dim):
        self.dim = dim
        self.rows = []
        self.pivots = []

    def residue(self, vec):
        return reduce_against(self.rows, self.pivots, vec)

    def contains(self, vec):
        return not any(self.residue(vec))

    def add(self, vec):
        """Insert vec; returns True if it enlarged the span."""
        v = self.residue(vec)
        lead = None
        for i, x in enumerate(v):
            if x:
                lead = i
                break
        if lead is None:
            return False
        inv = v[lead]
        v = [x / inv for x in v]
        for r in range(len(self.rows)):
            f = self.rows[r][lead]
            if f:
                self.rows[r] = [a - f * b for a, b in zip(self.rows[r], v)]
        at = 0
        while at < len(self.pivots) and self.pivots[at] < lead:
            at += 1
        self.rows.insert(at, v)
        self.pivots.insert(at, lead)
        return True

    def rank(self):
        return len(self.rows)

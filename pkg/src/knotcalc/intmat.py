"""Exact integer matrices: determinants, Smith normal form, cokernels.

Everything here is plain Python integers (arbitrary precision), stored
row-major in lists.  The Smith normal form keeps both unimodular
transforms U, W with U*M*W diagonal, chooses minimal-absolute-value
pivots to limit coefficient growth, and re-verifies the factorization
exactly before returning.
"""

from __future__ import annotations

from fractions import Fraction


class IntegerMatrix:
    """An immutable-by-convention integer matrix."""

    __slots__ = ("rows", "cols", "data")

    def __init__(self, data):
        self.data = [[int(x) for x in row] for row in data]
        self.rows = len(self.data)
        self.cols = len(self.data[0]) if self.data else 0
        if any(len(row) != self.cols for row in self.data):
            raise ValueError("ragged rows")

    @classmethod
    def zero(cls, rows, cols):
        return cls([[0] * cols for _ in range(rows)])

    @classmethod
    def identity(cls, n):
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def diagonal(cls, entries):
        n = len(entries)
        m = cls.zero(n, n)
        for i, d in enumerate(entries):
            m.data[i][i] = int(d)
        return m

    def __getitem__(self, ij):
        i, j = ij
        return self.data[i][j]

    def __eq__(self, other):
        return (
            isinstance(other, IntegerMatrix)
            and self.rows == other.rows
            and self.cols == other.cols
            and self.data == other.data
        )

    def __hash__(self):
        return hash(tuple(tuple(r) for r in self.data))

    def __repr__(self):
        return f"IntegerMatrix({self.data})"

    def copy(self):
        return IntegerMatrix(self.data)

    def transpose(self):
        return IntegerMatrix([[self.data[i][j] for i in range(self.rows)]
                              for j in range(self.cols)])

    def __add__(self, other):
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch")
        return IntegerMatrix([[a + b for a, b in zip(ra, rb)]
                              for ra, rb in zip(self.data, other.data)])

    def __sub__(self, other):
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch")
        return IntegerMatrix([[a - b for a, b in zip(ra, rb)]
                              for ra, rb in zip(self.data, other.data)])

    def __neg__(self):
        return IntegerMatrix([[-a for a in row] for row in self.data])

    def __mul__(self, other):
        if isinstance(other, int):
            return IntegerMatrix([[a * other for a in row] for row in self.data])
        if self.cols != other.rows:
            raise ValueError("shape mismatch")
        bt = other.transpose().data
        return IntegerMatrix([[sum(a * b for a, b in zip(row, col)) for col in bt]
                              for row in self.data])

    __rmul__ = lambda self, other: self * other  # noqa: E731  (int scaling only)

    def mul_vector(self, v):
        if len(v) != self.cols:
            raise ValueError("shape mismatch")
        return [sum(a * b for a, b in zip(row, v)) for row in self.data]

    def is_symmetric(self):
        return self.rows == self.cols and all(
            self.data[i][j] == self.data[j][i]
            for i in range(self.rows) for j in range(i))

    def block_sum(self, other):
        n = self.rows + other.rows
        m = self.cols + other.cols
        out = IntegerMatrix.zero(n, m)
        for i in range(self.rows):
            for j in range(self.cols):
                out.data[i][j] = self.data[i][j]
        for i in range(other.rows):
            for j in range(other.cols):
                out.data[self.rows + i][self.cols + j] = other.data[i][j]
        return out

    @classmethod
    def kronecker(cls, a, b):
        out = cls.zero(a.rows * b.rows, a.cols * b.cols)
        for i in range(a.rows):
            for j in range(a.cols):
                aij = a.data[i][j]
                if aij == 0:
                    continue
                for k in range(b.rows):
                    for l in range(b.cols):
                        out.data[i * b.rows + k][j * b.cols + l] = aij * b.data[k][l]
        return out

    def det(self):
        """Exact determinant by fraction-free Bareiss elimination."""
        if self.rows != self.cols:
            raise ValueError("determinant of a nonsquare matrix")
        n = self.rows
        if n == 0:
            return 1
        m = [row[:] for row in self.data]
        sign = 1
        prev = 1
        for k in range(n - 1):
            if m[k][k] == 0:
                for i in range(k + 1, n):
                    if m[i][k] != 0:
                        m[k], m[i] = m[i], m[k]
                        sign = -sign
                        break
                else:
                    return 0
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
                m[i][k] = 0
            prev = m[k][k]
        return sign * m[n - 1][n - 1]

    def solve(self, rhs):
        """Solve self * x = rhs exactly over Q; raises if singular."""
        if self.rows != self.cols:
            raise ValueError("solve needs a square matrix")
        n = self.rows
        m = [[Fraction(x) for x in row] + [Fraction(rhs[i])]
             for i, row in enumerate(self.data)]
        for k in range(n):
            piv = next((i for i in range(k, n) if m[i][k] != 0), None)
            if piv is None:
                raise ValueError("singular matrix")
            m[k], m[piv] = m[piv], m[k]
            pivval = m[k][k]
            for i in range(n):
                if i != k and m[i][k] != 0:
                    f = m[i][k] / pivval
                    for j in range(k, n + 1):
                        m[i][j] -= f * m[k][j]
        return [m[i][n] / m[i][i] for i in range(n)]

    def inverse_fractions(self):
        """Exact inverse as a list of Fraction rows; raises if singular."""
        n = self.rows
        cols = []
        for j in range(n):
            rhs = [1 if i == j else 0 for i in range(n)]
            cols.append(self.solve(rhs))
        return [[cols[j][i] for j in range(n)] for i in range(n)]

    def unimodular_inverse(self):
        """Exact integer inverse; raises if the matrix is not unimodular."""
        inv = self.inverse_fractions()
        data = []
        for row in inv:
            out = []
            for x in row:
                if x.denominator != 1:
                    raise ValueError("matrix is not unimodular")
                out.append(int(x))
            data.append(out)
        return IntegerMatrix(data)


class SmithDecomposition:
    """U * M * W = diag(d1, .., dk) with d1 | d2 | .. and U, W unimodular."""

    __slots__ = ("matrix", "diagonal", "U", "W")

    def __init__(self, matrix, diagonal, U, W):
        self.matrix = matrix
        self.diagonal = diagonal
        self.U = U
        self.W = W

    @property
    def nonzero_diagonal(self):
        return [d for d in self.diagonal if d != 0]

    @property
    def free_rank(self):
        """Rank of the free part of coker(M) = Z^rows / column-span(M)."""
        return self.matrix.rows - len(self.nonzero_diagonal)

    def torsion(self):
        """Nontrivial torsion orders of coker(M), smallest first."""
        return [d for d in self.nonzero_diagonal if d != 1]

    def group_order(self):
        """Order of coker(M); None when infinite."""
        if self.free_rank > 0:
            return None
        order = 1
        for d in self.nonzero_diagonal:
            order *= d
        return order

    def verify(self):
        n, m = self.matrix.rows, self.matrix.cols
        d = IntegerMatrix.zero(n, m)
        for i, val in enumerate(self.diagonal):
            d.data[i][i] = val
        if self.U * self.matrix * self.W != d:
            raise AssertionError("U*M*W is not the stated diagonal")
        if abs(self.U.det()) != 1 or abs(self.W.det()) != 1:
            raise AssertionError("transforms are not unimodular")
        for a, b in zip(self.diagonal, self.diagonal[1:]):
            if a == 0 and b != 0:
                raise AssertionError("zero diagonal entry before a nonzero one")
            if a != 0 and b % a != 0:
                raise AssertionError("divisibility chain broken")
        return True


def smith_normal_form(matrix):
    """Smith normal form with unimodular transforms.

    Pivots are chosen with minimal absolute value over the remaining
    block, which keeps intermediate entries small for the block
    presentations arising from branched covers.
    """
    m = [row[:] for row in matrix.data]
    rows, cols = matrix.rows, matrix.cols
    U = [[1 if i == j else 0 for j in range(rows)] for i in range(rows)]
    W = [[1 if i == j else 0 for j in range(cols)] for i in range(cols)]

    def swap_rows(i, j):
        m[i], m[j] = m[j], m[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in m:
            row[i], row[j] = row[j], row[i]
        for row in W:
            row[i], row[j] = row[j], row[i]

    def addmul_row(dst, src, k):
        mrow, srow = m[dst], m[src]
        for j in range(cols):
            mrow[j] += k * srow[j]
        urow, usrc = U[dst], U[src]
        for j in range(rows):
            urow[j] += k * usrc[j]

    def addmul_col(dst, src, k):
        for row in m:
            row[dst] += k * row[src]
        for row in W:
            row[dst] += k * row[src]

    def negate_row(i):
        m[i] = [-x for x in m[i]]
        U[i] = [-x for x in U[i]]

    t = 0
    while t < min(rows, cols):
        # minimal-absolute-value pivot in the trailing block
        piv = None
        best = None
        for i in range(t, rows):
            for j in range(t, cols):
                v = abs(m[i][j])
                if v and (best is None or v < best):
                    best, piv = v, (i, j)
        if piv is None:
            break
        swap_rows(t, piv[0])
        swap_cols(t, piv[1])
        if m[t][t] < 0:
            negate_row(t)

        dirty = False
        for i in range(t + 1, rows):
            if m[i][t]:
                q = m[i][t] // m[t][t]
                addmul_row(i, t, -q)
                if m[i][t]:
                    dirty = True
        for j in range(t + 1, cols):
            if m[t][j]:
                q = m[t][j] // m[t][t]
                addmul_col(j, t, -q)
                if m[t][j]:
                    dirty = True
        if dirty:
            continue  # re-pick a smaller pivot from the leftovers

        # pivot must divide the rest of the block for the SNF chain
        offender = None
        for i in range(t + 1, rows):
            for j in range(t + 1, cols):
                if m[i][j] % m[t][t] != 0:
                    offender = i
                    break
            if offender is not None:
                break
        if offender is not None:
            addmul_row(t, offender, 1)
            continue
        t += 1

    diagonal = [m[i][i] for i in range(min(rows, cols))]
    snf = SmithDecomposition(matrix.copy(), diagonal,
                             IntegerMatrix(U), IntegerMatrix(W))
    snf.verify()
    return snf


def cokernel_structure(matrix):
    """Torsion orders and free rank of Z^rows / column-span(matrix)."""
    snf = smith_normal_form(matrix)
    torsion = snf.torsion()
    free = matrix.rows - len(snf.nonzero_diagonal)
    return torsion, free


def in_row_span(rows, target):
    """Exact membership of an integer vector in the Z-span of the rows."""
    if not any(target):
        return True
    if not rows:
        return False
    B = IntegerMatrix(rows)
    snf = smith_normal_form(B)
    # y*B = target  <=>  (y U^-1) D = target W
    tw = IntegerMatrix([list(target)]) * snf.W
    d = snf.diagonal
    for j in range(B.cols):
        val = tw.data[0][j]
        dj = d[j] if j < len(d) else 0
        if dj == 0:
            if val != 0:
                return False
        elif val % dj != 0:
            return False
    return True

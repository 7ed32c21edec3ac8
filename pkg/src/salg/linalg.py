"""Sparse exact linear algebra over a number field.

Vectors are plain dicts {index: FieldElem} holding nonzero entries only.
Morphisms store sparse columns; the workloads downstream are dominated by
monomial matrices, so composition and application stay near-linear.
"""

from __future__ import annotations

from .scalars import NumberField, FieldElem


def vec_add(a: dict, b: dict) -> dict:
    out = dict(a)
    for k, v in b.items():
        w = out.get(k)
        if w is None:
            out[k] = v
        else:
            s = w + v
            if s:
                out[k] = s
            else:
                del out[k]
    return out


def vec_sub(a: dict, b: dict) -> dict:
    out = dict(a)
    for k, v in b.items():
        w = out.get(k)
        s = (w - v) if w is not None else -v
        if s:
            out[k] = s
        elif w is not None:
            del out[k]
    return out


def vec_scale(a: dict, c) -> dict:
    if not c:
        return {}
    return {k: v * c for k, v in a.items()}


def vec_addmul(acc: dict, a: dict, c) -> None:
    """In place: acc += c * a."""
    if not c:
        return
    for k, v in a.items():
        w = acc.get(k)
        s = (w + v * c) if w is not None else v * c
        if s:
            acc[k] = s
        elif w is not None:
            del acc[k]


def vec_eq(a: dict, b: dict) -> bool:
    if len(a) != len(b):
        return False
    for k, v in a.items():
        if b.get(k) != v:
            return False
    return True


class Mor:
    """Sparse linear map, stored columnwise: cols[j] = image of basis j."""

    __slots__ = ("field", "src_dim", "tgt_dim", "cols")

    def __init__(self, field: NumberField, src_dim: int, tgt_dim: int, cols=None):
        self.field = field
        self.src_dim = src_dim
        self.tgt_dim = tgt_dim
        self.cols = cols if cols is not None else {}

    @classmethod
    def identity(cls, field, dim):
        one = field.one
        return cls(field, dim, dim, {j: {j: one} for j in range(dim)})

    @classmethod
    def zero(cls, field, src_dim, tgt_dim):
        return cls(field, src_dim, tgt_dim, {})

    @classmethod
    def from_entries(cls, field, src_dim, tgt_dim, entries):
        """entries: iterable of (row, col, scalar)."""
        cols: dict = {}
        for i, j, c in entries:
            if c:
                cols.setdefault(j, {})
                cur = cols[j].get(i)
                s = c if cur is None else cur + c
                if s:
                    cols[j][i] = s
                elif cur is not None:
                    del cols[j][i]
        return cls(field, src_dim, tgt_dim, cols)

    @classmethod
    def from_permutation(cls, field, perm, signs=None):
        """perm[j] = image index of basis j; optional scalar per column."""
        one = field.one
        cols = {}
        for j, i in enumerate(perm):
            c = one if signs is None else signs[j]
            if c:
                cols[j] = {i: c}
        return cls(field, len(perm), len(perm), cols)

    def set_col(self, j: int, vec: dict):
        v = {i: c for i, c in vec.items() if c}
        if v:
            self.cols[j] = v
        else:
            self.cols.pop(j, None)

    def col(self, j: int) -> dict:
        return self.cols.get(j, {})

    def entry(self, i: int, j: int):
        c = self.cols.get(j, {}).get(i)
        return c if c is not None else self.field.zero

    def apply(self, vec: dict) -> dict:
        out: dict = {}
        for j, c in vec.items():
            col = self.cols.get(j)
            if col:
                vec_addmul(out, col, c)
        return out

    def compose(self, other: "Mor") -> "Mor":
        """self after other."""
        assert other.tgt_dim == self.src_dim
        cols = {}
        for j, col in other.cols.items():
            v = self.apply(col)
            if v:
                cols[j] = v
        return Mor(self.field, other.src_dim, self.tgt_dim, cols)

    def __mul__(self, other):
        if isinstance(other, Mor):
            return self.compose(other)
        return self.scale(other)

    def scale(self, c) -> "Mor":
        if not c:
            return Mor.zero(self.field, self.src_dim, self.tgt_dim)
        return Mor(
            self.field,
            self.src_dim,
            self.tgt_dim,
            {j: {i: v * c for i, v in col.items()} for j, col in self.cols.items()},
        )

    def __neg__(self):
        return self.scale(self.field(-1))

    def __add__(self, other: "Mor") -> "Mor":
        assert (self.src_dim, self.tgt_dim) == (other.src_dim, other.tgt_dim)
        cols = {j: dict(col) for j, col in self.cols.items()}
        for j, col in other.cols.items():
            if j in cols:
                cols[j] = vec_add(cols[j], col)
                if not cols[j]:
                    del cols[j]
            else:
                cols[j] = dict(col)
        return Mor(self.field, self.src_dim, self.tgt_dim, cols)

    def __sub__(self, other: "Mor") -> "Mor":
        return self + (-other)

    def tensor(self, other: "Mor") -> "Mor":
        """Kronecker product; indices are (left * other_dim + right)."""
        cols = {}
        for j1, col1 in self.cols.items():
            for j2, col2 in other.cols.items():
                j = j1 * other.src_dim + j2
                col = {}
                for i1, c1 in col1.items():
                    for i2, c2 in col2.items():
                        col[i1 * other.tgt_dim + i2] = c1 * c2
                cols[j] = col
        return Mor(
            self.field,
            self.src_dim * other.src_dim,
            self.tgt_dim * other.tgt_dim,
            cols,
        )

    def __eq__(self, other):
        if not isinstance(other, Mor):
            return NotImplemented
        if (self.src_dim, self.tgt_dim) != (other.src_dim, other.tgt_dim):
            return False
        keys = set(self.cols) | set(other.cols)
        for j in keys:
            if not vec_eq(self.cols.get(j, {}), other.cols.get(j, {})):
                return False
        return True

    def is_identity(self) -> bool:
        if self.src_dim != self.tgt_dim:
            return False
        one = self.field.one
        for j in range(self.src_dim):
            col = self.cols.get(j, {})
            if len(col) != 1 or col.get(j) != one:
                return False
        return True

    def transpose(self) -> "Mor":
        cols: dict = {}
        for j, col in self.cols.items():
            for i, c in col.items():
                cols.setdefault(i, {})[j] = c
        return Mor(self.field, self.tgt_dim, self.src_dim, cols)

    def rank(self) -> int:
        ech = RowEchelon(self.field, self.tgt_dim)
        for col in self.cols.values():
            ech.add(col)
        return ech.rank

    def is_invertible(self) -> bool:
        return self.src_dim == self.tgt_dim and self.rank() == self.src_dim

    def inverse(self) -> "Mor":
        """Dense Gauss-Jordan inverse; intended for moderate dimensions."""
        assert self.src_dim == self.tgt_dim
        n = self.src_dim
        F = self.field
        zero, one = F.zero, F.one
        a = [[self.entry(i, j) for j in range(n)] for i in range(n)]
        inv = [[one if i == j else zero for j in range(n)] for i in range(n)]
        for col in range(n):
            piv = next((r for r in range(col, n) if a[r][col]), None)
            assert piv is not None, "matrix not invertible"
            a[col], a[piv] = a[piv], a[col]
            inv[col], inv[piv] = inv[piv], inv[col]
            f = a[col][col].inverse()
            a[col] = [x * f for x in a[col]]
            inv[col] = [x * f for x in inv[col]]
            for r in range(n):
                if r != col and a[r][col]:
                    f = a[r][col]
                    a[r] = [x - f * y for x, y in zip(a[r], a[col])]
                    inv[r] = [x - f * y for x, y in zip(inv[r], inv[col])]
        return Mor.from_entries(
            F, n, n, ((i, j, inv[i][j]) for i in range(n) for j in range(n) if inv[i][j])
        )

    def trace(self):
        out = self.field.zero
        for j, col in self.cols.items():
            c = col.get(j)
            if c is not None:
                out = out + c
        return out

    def __repr__(self):
        return f"Mor({self.src_dim}->{self.tgt_dim}, nnz={sum(len(c) for c in self.cols.values())})"


class RowEchelon:
    """Incremental sparse row echelon form over a field.

    Rows are dicts {column: scalar}.  Supports rank, membership residuals and
    nullspace extraction; rows are reduced against existing pivots on entry.
    """

    def __init__(self, field: NumberField, ncols: int):
        self.field = field
        self.ncols = ncols
        self.pivots: dict = {}  # pivot column -> normalized row
        self.rank = 0

    def reduce(self, row: dict) -> dict:
        row = {k: v for k, v in row.items() if v}
        while row:
            c = min(row)
            piv = self.pivots.get(c)
            if piv is None:
                return row
            f = row[c]
            # row -= f * piv
            for k, v in piv.items():
                w = row.get(k)
                s = (w - f * v) if w is not None else -(f * v)
                if s:
                    row[k] = s
                elif w is not None:
                    del row[k]
        return row

    def add(self, row: dict) -> bool:
        """Insert a row; returns True if it increased the rank."""
        row = self.reduce(row)
        if not row:
            return False
        c = min(row)
        inv = row[c].inverse()
        self.pivots[c] = {k: v * inv for k, v in row.items()}
        self.rank += 1
        return True

    def contains(self, row: dict) -> bool:
        return not self.reduce(row)

    def _rref(self):
        cols = sorted(self.pivots)
        for idx in range(len(cols) - 1, -1, -1):
            c = cols[idx]
            row = self.pivots[c]
            for c2 in cols[idx + 1 :]:
                f = row.get(c2)
                if f:
                    piv2 = self.pivots[c2]
                    for k, v in piv2.items():
                        w = row.get(k)
                        s = (w - f * v) if w is not None else -(f * v)
                        if s:
                            row[k] = s
                        elif w is not None:
                            del row[k]
        return cols

    def nullspace(self) -> list:
        """Basis of the solution space of (rows) . x = 0, as sparse dicts."""
        piv_cols = self._rref()
        piv_set = set(piv_cols)
        one = self.field.one
        out = []
        for j in range(self.ncols):
            if j in piv_set:
                continue
            v = {j: one}
            for c in piv_cols:
                coeff = self.pivots[c].get(j)
                if coeff:
                    v[c] = -coeff
            out.append(v)
        return out


def solve_linear(field, ncols, rows_with_rhs):
    """One exact solution x of the affine system, or None if inconsistent.

    rows_with_rhs: iterable of (sparse row dict, rhs scalar).  Free variables
    are set to zero.
    """
    RHS = ncols  # sentinel column for the right-hand side
    ech = RowEchelon(field, ncols + 1)
    for row, rhs in rows_with_rhs:
        r = dict(row)
        if rhs:
            r[RHS] = -rhs
        ech.add(r)
    if RHS in ech.pivots:
        return None  # 0 = 1 row => inconsistent
    piv_cols = ech._rref()
    # RREF rows read x_c + sum_{free j} a_j x_j + a_RHS = 0; frees at zero.
    x = {}
    for c in piv_cols:
        a = ech.pivots[c].get(RHS)
        if a:
            x[c] = -a
    return x


class SpanSolver:
    """RREF basis of a span with O(1) coordinate extraction.

    Basis vectors are the RREF pivot rows, so a member's coordinates are its
    entries at the pivot columns.
    """

    def __init__(self, field, ncols):
        self.field = field
        self.ech = RowEchelon(field, ncols)
        self._basis = None

    def add(self, v: dict) -> bool:
        assert self._basis is None, "span is frozen once a basis is requested"
        return self.ech.add(v)

    def basis(self) -> list:
        if self._basis is None:
            self.pivot_cols = self.ech._rref()
            self._basis = [self.ech.pivots[c] for c in self.pivot_cols]
        return self._basis

    @property
    def dim(self):
        return self.ech.rank

    def coordinates(self, v: dict):
        """Exact coordinates of v in the basis, or None if v not in span."""
        basis = self.basis()
        coords = [v.get(c, self.field.zero) for c in self.pivot_cols]
        resid = dict(v)
        for c, b in zip(coords, basis):
            if c:
                for k, bv in b.items():
                    w = resid.get(k)
                    s = (w - c * bv) if w is not None else -(c * bv)
                    if s:
                        resid[k] = s
                    elif w is not None:
                        del resid[k]
        if resid:
            return None
        return coords


def intertwiner_space(field, src_maps, tgt_maps, src_dim, tgt_dim):
    """Basis of {f : f . src_maps[k] == tgt_maps[k] . f} as sparse Mors.

    Unknown f has tgt_dim x src_dim entries, indexed i * src_dim + j.
    """
    assert len(src_maps) == len(tgt_maps)
    ech = RowEchelon(field, src_dim * tgt_dim)
    for a, b in zip(src_maps, tgt_maps):
        # equation per (i, j): sum_l f[i,l] a[l,j] - sum_l b[i,l] f[l,j] = 0
        acols = {j: a.col(j) for j in range(src_dim)}
        brows: dict = {}
        for j, col in b.cols.items():
            for i, c in col.items():
                brows.setdefault(i, {})[j] = c
        for i in range(tgt_dim):
            browi = brows.get(i, {})
            for j in range(src_dim):
                row = {}
                for l, c in acols[j].items():
                    row[i * src_dim + l] = row.get(i * src_dim + l, field.zero) + c
                for l, c in browi.items():
                    key = l * src_dim + j
                    cur = row.get(key)
                    row[key] = (cur - c) if cur is not None else -c
                row = {k: v for k, v in row.items() if v}
                if row:
                    ech.add(row)
    basis = ech.nullspace()
    out = []
    for v in basis:
        m = Mor(field, src_dim, tgt_dim)
        cols: dict = {}
        for key, c in v.items():
            i, j = divmod(key, src_dim)
            cols.setdefault(j, {})[i] = c
        m.cols = cols
        out.append(m)
    return out

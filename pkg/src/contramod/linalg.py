"""Exact Gaussian elimination, kernels, images, equalizers and coequalizers.

Two echelon engines share one interface: a generic one whose rows are sparse
dicts of field scalars, and a GF(2) one whose rows are Python ints used as
bitmasks.  Both keep rows fully reduced on demand (Jordan form), which makes
kernels, particular solutions and canonical subspace bases read off directly.

The engines are incremental: rows are fed one at a time, so very wide or very
tall sparse systems (the Cohom coequalizers over the 512-dimensional
coalgebras) never materialize densely.
"""

from __future__ import annotations

from dataclasses import dataclass

from .fields import FieldSpec
from .matrix import Mat


class _EchelonGeneric:
    """Row echelon accumulator over an arbitrary exact field.

    Rows are sparse dicts; the pivot of a row is its smallest column, and
    pivot entries are normalized to 1 on insertion.
    """

    def __init__(self, field: FieldSpec, ncols: int):
        self.field = field
        self.ncols = ncols
        self.rows: dict[int, dict] = {}  # pivot column -> row
        self._jordan = True

    def rank(self) -> int:
        return len(self.rows)

    def add_row(self, row: dict) -> bool:
        f = self.field
        row = {j: v for j, v in row.items() if v != 0}
        while row:
            piv = min(row)
            existing = self.rows.get(piv)
            if existing is None:
                inv = f.invert(row[piv])
                row = {j: f.mul(inv, v) for j, v in row.items()}
                self.rows[piv] = row
                self._jordan = False
                return True
            c = row[piv]
            for j, v in existing.items():
                s = f.sub(row.get(j, f.zero()), f.mul(c, v))
                if s == 0:
                    row.pop(j, None)
                else:
                    row[j] = s
        return False

    def finalize(self):
        """Back-eliminate so every pivot column appears in one row only."""
        if self._jordan:
            return
        f = self.field
        for piv in sorted(self.rows, reverse=True):
            row = self.rows[piv]
            hits = [j for j in row if j != piv and j in self.rows]
            while hits:
                for j in hits:
                    c = row.get(j)
                    if c is None or c == 0:
                        continue
                    for jj, v in self.rows[j].items():
                        s = f.sub(row.get(jj, f.zero()), f.mul(c, v))
                        if s == 0:
                            row.pop(jj, None)
                        else:
                            row[jj] = s
                hits = [j for j in row if j != piv and j in self.rows]
        self._jordan = True

    def reduce_vector(self, row: dict) -> dict:
        """Residual of a vector after full reduction (no insertion)."""
        f = self.field
        row = {j: v for j, v in row.items() if v != 0}
        changed = True
        while changed:
            changed = False
            for j in sorted(row):
                existing = self.rows.get(j)
                if existing is None:
                    continue
                c = row[j]
                for jj, v in existing.items():
                    s = f.sub(row.get(jj, f.zero()), f.mul(c, v))
                    if s == 0:
                        row.pop(jj, None)
                    else:
                        row[jj] = s
                changed = True
                break
        return row

    def row_items(self):
        return [(piv, dict(r)) for piv, r in sorted(self.rows.items())]


class _EchelonGF2:
    """Bitmask echelon over GF(2); rows are ints, bit j = column j."""

    def __init__(self, field: FieldSpec, ncols: int):
        self.field = field
        self.ncols = ncols
        self.rows: dict[int, int] = {}
        self._jordan = True

    def rank(self) -> int:
        return len(self.rows)

    @staticmethod
    def _pack(row: dict) -> int:
        r = 0
        for j, v in row.items():
            if v & 1:
                r |= 1 << j
        return r

    def add_row(self, row) -> bool:
        r = row if isinstance(row, int) else self._pack(row)
        rows = self.rows
        while r:
            piv = (r & -r).bit_length() - 1
            existing = rows.get(piv)
            if existing is None:
                rows[piv] = r
                self._jordan = False
                return True
            r ^= existing
        return False

    def finalize(self):
        if self._jordan:
            return
        rows = self.rows
        for piv in sorted(rows, reverse=True):
            r = rows[piv]
            own = 1 << piv
            t = r ^ own
            while t:
                low = t & -t
                j = low.bit_length() - 1
                if j in rows and j != piv:
                    r ^= rows[j]
                    t = (r ^ own) & ~((low << 1) - 1)
                else:
                    t &= ~low
            rows[piv] = r
        self._jordan = True

    def reduce_vector(self, row) -> dict:
        r = row if isinstance(row, int) else self._pack(row)
        rows = self.rows
        out = 0
        while r:
            low = r & -r
            j = low.bit_length() - 1
            existing = rows.get(j)
            if existing is None:
                out |= low
                r ^= low
            else:
                r ^= existing
        one = self.field.one()
        return {j: one for j in _bits(out)}

    def row_items(self):
        one = self.field.one()
        return [
            (piv, {j: one for j in _bits(r)})
            for piv, r in sorted(self.rows.items())
        ]


def _bits(x: int):
    while x:
        low = x & -x
        yield low.bit_length() - 1
        x ^= low


def make_echelon(field: FieldSpec, ncols: int):
    if field.characteristic == 2:
        return _EchelonGF2(field, ncols)
    return _EchelonGeneric(field, ncols)


# -- subspaces ---------------------------------------------------------------


class Subspace:
    """Subspace of k^ambient with a canonical reduced column-echelon basis.

    ``basis`` has one column per basis vector; ``pivots[t]`` is the leading
    row of column t, and every pivot row meets exactly one basis column with
    entry 1.  Canonicity makes equality a plain comparison.
    """

    __slots__ = ("ambient", "field", "basis", "pivots")

    def __init__(self, ambient: int, field: FieldSpec, basis: Mat, pivots: list):
        self.ambient = ambient
        self.field = field
        self.basis = basis
        self.pivots = pivots

    @classmethod
    def from_columns(cls, ambient: int, field: FieldSpec, columns) -> "Subspace":
        """Span of sparse column dicts (need not be independent)."""
        ech = make_echelon(field, ambient)
        for col in columns:
            ech.add_row(col)
        ech.finalize()
        items = ech.row_items()
        pivots = [p for p, _ in items]
        entries = [(i, t, v) for t, (_, vec) in enumerate(items) for i, v in vec.items()]
        basis = Mat.from_entries(ambient, len(items), field, entries)
        return cls(ambient, field, basis, pivots)

    @classmethod
    def zero(cls, ambient: int, field: FieldSpec) -> "Subspace":
        return cls(ambient, field, Mat.zeros(ambient, 0, field), [])

    @classmethod
    def full(cls, ambient: int, field: FieldSpec) -> "Subspace":
        return cls(
            ambient, field, Mat.identity(ambient, field), list(range(ambient))
        )

    @property
    def dim(self) -> int:
        return len(self.pivots)

    def basis_columns(self) -> list[dict]:
        cols = self.basis.columns()
        return [cols.get(t, {}) for t in range(self.dim)]

    def contains(self, vec: dict) -> bool:
        ech = make_echelon(self.field, self.ambient)
        for col in self.basis_columns():
            ech.add_row(col)
        return not ech.reduce_vector(vec)

    def contains_matrix(self, m: Mat) -> bool:
        """True iff every column of m lies in the subspace."""
        ech = make_echelon(self.field, self.ambient)
        for col in self.basis_columns():
            ech.add_row(col)
        return all(not ech.reduce_vector(col) for col in m.columns().values())

    def coords(self, vec: dict) -> dict | None:
        """Coordinates of vec in the canonical basis, or None if outside."""
        f = self.field
        coeffs = {}
        residual = dict(vec)
        for t, p in enumerate(self.pivots):
            c = residual.get(p)
            if c is None or c == 0:
                continue
            coeffs[t] = c
            for i, v in self.basis.col(t).items():
                s = f.sub(residual.get(i, f.zero()), f.mul(c, v))
                if s == 0:
                    residual.pop(i, None)
                else:
                    residual[i] = s
        if any(v != 0 for v in residual.values()):
            return None
        return coeffs

    def intersect(self, other: "Subspace") -> "Subspace":
        if self.ambient != other.ambient:
            raise ValueError("ambient mismatch")
        stacked = self.basis.hstack(other.basis)
        ker = kernel(stacked)
        cols = []
        for kcol in ker.basis_columns():
            part = {i: v for i, v in kcol.items() if i < self.dim}
            vec = self.basis.apply(part)
            cols.append(vec)
        return Subspace.from_columns(self.ambient, self.field, cols)

    def add(self, other: "Subspace") -> "Subspace":
        if self.ambient != other.ambient:
            raise ValueError("ambient mismatch")
        return Subspace.from_columns(
            self.ambient, self.field,
            self.basis_columns() + other.basis_columns(),
        )

    def __eq__(self, other):
        return (
            isinstance(other, Subspace)
            and self.ambient == other.ambient
            and self.pivots == other.pivots
            and self.basis == other.basis
        )

    def __repr__(self):
        return f"Subspace(dim={self.dim} in k^{self.ambient} over {self.field})"


# -- derived operations --------------------------------------------------------


def row_echelon(mat: Mat):
    ech = make_echelon(mat.field, mat.cols)
    for row in mat.row_groups().values():
        ech.add_row(row)
    return ech


def rank(mat: Mat) -> int:
    # eliminate in the cheaper orientation; rank is symmetric
    if mat.cols <= mat.rows:
        return row_echelon(mat).rank()
    ech = make_echelon(mat.field, mat.rows)
    for col in mat.columns().values():
        ech.add_row(col)
    return ech.rank()


def kernel(mat: Mat) -> Subspace:
    """Right kernel {x : mat @ x = 0} as a canonical subspace of k^cols."""
    f = mat.field
    ech = row_echelon(mat)
    ech.finalize()
    items = ech.row_items()
    pivot_set = {p for p, _ in items}
    free_cols = [j for j in range(mat.cols) if j not in pivot_set]
    cols = []
    one = f.one()
    for j in free_cols:
        vec = {j: one}
        for p, row in items:
            c = row.get(j)
            if c is not None and c != 0:
                vec[p] = f.neg(c)
        cols.append(vec)
    return Subspace.from_columns(mat.cols, f, cols)


def image(mat: Mat) -> Subspace:
    """Column space as a canonical subspace of k^rows."""
    return Subspace.from_columns(mat.rows, mat.field, mat.columns().values())


def solve(mat: Mat, rhs: dict) -> dict | None:
    """One solution x of mat @ x = rhs, or None.  Free variables are 0."""
    f = mat.field
    aug_col = mat.cols
    ech = make_echelon(f, mat.cols + 1)
    rows = mat.row_groups()
    for i in range(mat.rows):
        row = dict(rows.get(i, {}))
        b = rhs.get(i)
        if b is not None and b != 0:
            row[aug_col] = b
        if row:
            ech.add_row(row)
    if aug_col in ech.rows:
        return None
    ech.finalize()
    x = {}
    for p, row in ech.row_items():
        c = row.get(aug_col)
        if c is not None and c != 0:
            x[p] = c
    return x


def solve_matrix(mat: Mat, rhs: Mat) -> Mat | None:
    """X with mat @ X = rhs, or None if any column is unsolvable."""
    cols = rhs.columns()
    entries = []
    for j in range(rhs.cols):
        x = solve(mat, cols.get(j, {}))
        if x is None:
            return None
        entries.extend((i, j, v) for i, v in x.items())
    return Mat.from_entries(mat.cols, rhs.cols, mat.field, entries)


@dataclass
class Coequalizer:
    """Quotient of k^ambient by a column span: surjection, dim, and a section
    picking the coset representatives supported on non-pivot rows."""

    quotient_map: Mat
    dim: int
    section: Mat
    image_subspace: Subspace


def quotient_by_image(sub: Subspace) -> Coequalizer:
    f = sub.field
    ambient = sub.ambient
    pivot_rows = sub.pivots
    nonpivot = [i for i in range(ambient) if i not in set(pivot_rows)]
    qdim = len(nonpivot)
    basis_cols = sub.basis_columns()
    q_entries = []
    for t, i in enumerate(nonpivot):
        q_entries.append((t, i, f.one()))
        # subtract the echelon combination hitting pivot rows
        for s, col in enumerate(basis_cols):
            c = col.get(i)
            if c is not None and c != 0:
                q_entries.append((t, pivot_rows[s], f.neg(c)))
    quotient_map = Mat.from_entries(qdim, ambient, f, q_entries)
    section = Mat.from_entries(
        ambient, qdim, f, [(i, t, f.one()) for t, i in enumerate(nonpivot)]
    )
    return Coequalizer(quotient_map, qdim, section, sub)


def equalizer(f: Mat, g: Mat) -> Subspace:
    """Kernel of f - g; f and g must have identical shapes."""
    if f.rows != g.rows or f.cols != g.cols:
        raise ValueError(
            f"equalizer shape mismatch: {f.rows}x{f.cols} vs {g.rows}x{g.cols}"
        )
    return kernel(f - g)


def coequalizer(f: Mat, g: Mat) -> Coequalizer:
    """Quotient of the common codomain by Im(f - g)."""
    if f.rows != g.rows or f.cols != g.cols:
        raise ValueError(
            f"coequalizer shape mismatch: {f.rows}x{f.cols} vs {g.rows}x{g.cols}"
        )
    return quotient_by_image(image(f - g))

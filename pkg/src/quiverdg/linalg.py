"""Exact sparse linear algebra over a ground field.

Vectors are dicts {index: scalar} with no stored zeros; matrices act on
column vectors, so a matrix with shape (rows, cols) is a map k^cols -> k^rows.
Everything is plain fraction/residue arithmetic - no floats, no pivoting by
magnitude, just leftmost-nonzero pivoting, which is exact.
"""

from __future__ import annotations


class DSquaredNonzero(Exception):
    """Raised when consecutive differentials fail to compose to zero."""

    def __init__(self, degree, witness):
        self.degree = degree
        self.witness = witness
        super().__init__(
            "d o d is nonzero out of degree %s (witness column %s)" % (degree, witness)
        )


def vec_add(u, v):
    out = dict(u)
    for i, c in v.items():
        s = out.get(i)
        s = c if s is None else s + c
        if s:
            out[i] = s
        else:
            out.pop(i, None)
    return out


def vec_scale(u, c):
    if not c:
        return {}
    return {i: c * x for i, x in u.items()}


def vec_axpy(out, coeff, vec):
    """In-place out += coeff * vec."""
    for j, v in vec.items():
        s = out.get(j)
        s = coeff * v if s is None else s + coeff * v
        if s:
            out[j] = s
        else:
            out.pop(j, None)


class SparseMatrix:
    """A rows-by-cols matrix storing only nonzero entries."""

    def __init__(self, rows, cols, entries=None):
        self.rows = rows
        self.cols = cols
        self.entries = {}
        if entries:
            for (r, c), v in entries.items():
                self.set(r, c, v)

    def set(self, r, c, v):
        if not (0 <= r < self.rows and 0 <= c < self.cols):
            raise IndexError("entry (%d, %d) outside %dx%d" % (r, c, self.rows, self.cols))
        if v:
            self.entries[(r, c)] = v
        else:
            self.entries.pop((r, c), None)

    def get(self, r, c):
        return self.entries.get((r, c))

    def column(self, c):
        return {r: v for (r, cc), v in self.entries.items() if cc == c}

    def columns(self):
        cols = [dict() for _ in range(self.cols)]
        for (r, c), v in self.entries.items():
            cols[c][r] = v
        return cols

    def apply(self, vec):
        """Matrix times column vector."""
        out = {}
        for (r, c), v in self.entries.items():
            x = vec.get(c)
            if x is None:
                continue
            s = out.get(r)
            s = v * x if s is None else s + v * x
            if s:
                out[r] = s
            else:
                out.pop(r, None)
        return out

    def compose(self, other):
        """self o other: first apply other, then self."""
        if other.rows != self.cols:
            raise ValueError("shape mismatch: %dx%d after %dx%d"
                             % (self.rows, self.cols, other.rows, other.cols))
        result = SparseMatrix(self.rows, other.cols)
        for c, col in enumerate(other.columns()):
            if not col:
                continue
            for r, v in self.apply(col).items():
                result.set(r, c, v)
        return result

    def is_zero(self):
        return not self.entries

    def transpose(self):
        out = SparseMatrix(self.cols, self.rows)
        for (r, c), v in self.entries.items():
            out.set(c, r, v)
        return out


class RowSpace:
    """Incrementally row-reduced span of vectors, pivoted on smallest index.

    Rows are kept fully reduced: each pivot index occurs in exactly one row,
    with coefficient one, and in no other row.  Callers choose the pivot
    preference by how they number coordinates (index 0 is most preferred).
    """

    def __init__(self):
        self.rows = []
        self.pivot_index = {}

    @property
    def rank(self):
        return len(self.rows)

    def reduce(self, vec):
        """Return vec minus its projection onto the stored span."""
        out = dict(vec)
        while True:
            hit = None
            for i in out:
                row_no = self.pivot_index.get(i)
                if row_no is not None and (hit is None or i < hit[0]):
                    hit = (i, row_no)
            if hit is None:
                return out
            i, row_no = hit
            vec_axpy(out, -out[i], self.rows[row_no])

    def add(self, vec):
        """Insert vec; return the new pivot index, or None if dependent."""
        residue = self.reduce(vec)
        if not residue:
            return None
        pivot = min(residue)
        lead = residue[pivot]
        normalized = {j: v / lead for j, v in residue.items()}
        for row in self.rows:
            c = row.get(pivot)
            if c is not None:
                vec_axpy(row, -c, normalized)
        self.rows.append(normalized)
        self.pivot_index[pivot] = len(self.rows) - 1
        return pivot

    def contains(self, vec):
        return not self.reduce(vec)


class SpanSolver:
    """Expresses vectors as exact combinations of a generating list.

    Each stored reduced row remembers the input combination that produced it,
    so membership tests come with explicit coefficients.
    """

    def __init__(self):
        self._rows = []  # pairs (reduced vector, {input index: coeff})
        self._pivot = {}
        self._count = 0

    def add(self, vec):
        """Register a generator; returns its input index."""
        index = self._count
        self._count += 1
        residue, comb = self._reduce(vec)
        comb[index] = comb.get(index, 0) + 1
        if residue:
            pivot = min(residue)
            lead = residue[pivot]
            residue = {j: v / lead for j, v in residue.items()}
            comb = {j: v / lead for j, v in comb.items() if v}
            self._rows.append((residue, comb))
            self._pivot[pivot] = len(self._rows) - 1
        return index

    def _reduce(self, vec):
        out = dict(vec)
        comb = {}
        while True:
            hit = None
            for i in out:
                row_no = self._pivot.get(i)
                if row_no is not None and (hit is None or i < hit[0]):
                    hit = (i, row_no)
            if hit is None:
                return out, comb
            i, row_no = hit
            coeff = out[i]
            row, row_comb = self._rows[row_no]
            vec_axpy(out, -coeff, row)
            vec_axpy(comb, -coeff, row_comb)

    def express(self, target):
        """Return {input_index: coeff} with sum(coeff * input_i) == target, or None."""
        residue, comb = self._reduce(target)
        if residue:
            return None
        return {j: -v for j, v in comb.items() if v}


def kernel_image(matrix, field):
    """Exact kernel basis and rank of a sparse matrix.

    Returns (kernel_basis, rank) where kernel_basis is a list of column
    vectors spanning the null space.  rank + len(kernel_basis) == cols.
    """
    space = RowSpace()
    rows_by_index = {}
    for (r, c), v in matrix.entries.items():
        rows_by_index.setdefault(r, {})[c] = v
    for r in sorted(rows_by_index):
        space.add(rows_by_index[r])
    pivot_set = set(space.pivot_index)
    one = field.one()
    kernel = []
    for j in range(matrix.cols):
        if j in pivot_set:
            continue
        vec = {j: one}
        for pivot, row_no in space.pivot_index.items():
            c = space.rows[row_no].get(j)
            if c:
                vec[pivot] = -c
        kernel.append(vec)
    return kernel, len(pivot_set)


def image_basis(matrix):
    """A reduced basis of the column space, as vectors in k^rows."""
    space = RowSpace()
    for col in matrix.columns():
        if col:
            space.add(col)
    return [dict(row) for row in space.rows]


class GradedVectorSpace:
    """Finite-dimensional graded vector space: labeled basis per degree."""

    def __init__(self, basis_by_degree=None):
        self.basis = {d: list(labels) for d, labels in (basis_by_degree or {}).items() if labels}

    def dim(self, degree):
        return len(self.basis.get(degree, ())) if degree in self.basis else 0

    def dims(self):
        return {d: len(labels) for d, labels in sorted(self.basis.items())}

    def degrees(self):
        return sorted(self.basis)

    def shift(self, amount=1):
        """Degree shift by [amount]: an element of degree i lands in degree i - amount."""
        return GradedVectorSpace({d - amount: labels for d, labels in self.basis.items()})

    def total_dim(self):
        return sum(len(labels) for labels in self.basis.values())


def cohomology_of_complex(dims, differentials, window, field, verify=True):
    """Cohomology of a complex from per-degree dimensions and differentials.

    dims: {degree: dimension}; differentials: {i: SparseMatrix from degree i
    to i+1}.  Degrees absent from dims are zero.  With verify=True every
    composition touching the window is checked to vanish (DSquaredNonzero
    otherwise); callers that have already certified d*d themselves pass
    verify=False.  Returns {degree: (dim H, representative cocycles)} for
    degrees in window.
    """
    lo, hi = window
    if lo > hi:
        raise ValueError("empty window [%s, %s]" % (lo, hi))
    if verify:
        for i in range(lo - 1, hi + 1):
            d_i = differentials.get(i)
            d_next = differentials.get(i + 1)
            if d_i is None or d_next is None:
                continue
            comp = d_next.compose(d_i)
            if not comp.is_zero():
                witness = min(c for (_, c) in comp.entries)
                raise DSquaredNonzero(i, witness)
    one = field.one()
    result = {}
    for i in range(lo, hi + 1):
        n = dims.get(i, 0)
        if n == 0:
            result[i] = (0, [])
            continue
        d_i = differentials.get(i)
        if d_i is not None:
            kernel, _ = kernel_image(d_i, field)
        else:
            kernel = [{j: one} for j in range(n)]
        image = RowSpace()
        d_prev = differentials.get(i - 1)
        if d_prev is not None:
            for col in d_prev.columns():
                if col:
                    image.add(col)
        reps = []
        chosen = RowSpace()
        for vec in kernel:
            residue = chosen.reduce(image.reduce(vec))
            if residue:
                chosen.add(residue)
                reps.append(residue)
        result[i] = (len(reps), reps)
    return result

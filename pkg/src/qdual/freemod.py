"""Free Q(q)-modules on labeled bases and exact linear algebra.

Vectors are finitely supported maps label -> scalar; operators are rules
label -> vector with lazily cached columns.  Linear systems are solved by
sparse fraction-free elimination on the Laurent-polynomial level (rows are
stripped of their polynomial content after every combination step), with a
dense Bareiss routine and a naive rational-function Gaussian as reference
implementations for cross-checks.  Commutant dimensions can be computed
exactly over Q(q) or at a rational specialization of q.
"""

from __future__ import annotations

import json

from .errors import BasisMismatch, NotDiagonal, SpecializationSingular
from .qscalar import (
    LaurentPoly,
    R_ONE,
    R_ZERO,
    RatScalar,
    poly_exact_div,
    poly_gcd,
    qfact,
    _content_free,
)


class SparseVector:
    """A finitely supported Q(q)-combination of basis labels."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = {}
        if terms:
            for label, c in terms.items():
                if c:
                    self.terms[label] = c

    @staticmethod
    def unit(label):
        v = SparseVector()
        v.terms[label] = R_ONE
        return v

    @property
    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if not isinstance(other, SparseVector):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def coeff(self, label):
        return self.terms.get(label, R_ZERO)

    def support(self):
        return set(self.terms)

    def copy(self):
        v = SparseVector()
        v.terms = dict(self.terms)
        return v

    def add_term(self, label, c):
        if not c:
            return
        s = self.terms.get(label)
        s = c if s is None else s + c
        if s:
            self.terms[label] = s
        else:
            del self.terms[label]

    def add_scaled(self, other, c=R_ONE):
        if not c:
            return self
        for label, v in other.terms.items():
            self.add_term(label, v * c)
        return self

    def __add__(self, other):
        return self.copy().add_scaled(other)

    def __sub__(self, other):
        return self.copy().add_scaled(other, -R_ONE)

    def __neg__(self):
        return self.scale(-R_ONE)

    def scale(self, c):
        if not c:
            return SparseVector()
        out = SparseVector()
        out.terms = {label: v * c for label, v in self.terms.items()}
        return out

    def __rmul__(self, c):
        return self.scale(c if isinstance(c, RatScalar) else RatScalar(c))

    def map_labels(self, fn):
        out = SparseVector()
        for label, c in self.terms.items():
            out.add_term(fn(label), c)
        return out

    def render(self, key=None):
        if not self.terms:
            return "0"
        labels = sorted(self.terms, key=key) if key else list(self.terms)
        return "  +  ".join(f"({self.terms[l].render()}) * {l}" for l in labels)

    def __repr__(self):
        return f"SparseVector({self.render()})"


ZERO_VECTOR = SparseVector()


class LinearOperator:
    """A linear map given by its action on basis labels.

    ``space`` is an optional basis-family tag used to trap accidental
    mixing of operators living on different bases; relabeling maps carry
    space=None and are exempt.  Columns are cached on first use; caching
    never changes results because rules are pure.
    """

    __slots__ = ("rule", "space", "_cache")

    def __init__(self, rule, space=None):
        self.rule = rule
        self.space = space
        self._cache = {}

    @staticmethod
    def identity(space=None):
        return LinearOperator(SparseVector.unit, space)

    @staticmethod
    def zero(space=None):
        return LinearOperator(lambda label: SparseVector(), space)

    @staticmethod
    def from_columns(columns, space=None):
        return LinearOperator(lambda label: columns.get(label, ZERO_VECTOR), space)

    def apply_label(self, label) -> SparseVector:
        v = self._cache.get(label)
        if v is None:
            v = self.rule(label)
            self._cache[label] = v
        return v

    def __call__(self, v):
        if not isinstance(v, SparseVector):
            return self.apply_label(v)
        out = SparseVector()
        for label, c in v.terms.items():
            out.add_scaled(self.apply_label(label), c)
        return out

    def _check(self, other):
        if (self.space is not None and other.space is not None
                and self.space != other.space):
            raise BasisMismatch(f"{self.space} vs {other.space}")
        return self.space if self.space is not None else other.space

    def __matmul__(self, other):
        """Composition self after other."""
        space = self._check(other)
        return LinearOperator(lambda label: self(other.apply_label(label)), space)

    def __add__(self, other):
        space = self._check(other)
        return LinearOperator(
            lambda label: self.apply_label(label) + other.apply_label(label), space)

    def __sub__(self, other):
        space = self._check(other)
        return LinearOperator(
            lambda label: self.apply_label(label) - other.apply_label(label), space)

    def scale(self, c):
        return LinearOperator(lambda label: self.apply_label(label).scale(c),
                              self.space)

    def __rmul__(self, c):
        return self.scale(c if isinstance(c, RatScalar) else RatScalar(c))

    def __pow__(self, n):
        out = LinearOperator.identity(self.space)
        for _ in range(n):
            out = self @ out
        return out

    def divided_power(self, n):
        """self^n / [n]!; exact in Q(q).  n = 0 gives the identity."""
        return (self**n).scale(qfact(n).inv())

    def equals_on(self, other, basis):
        return all(self.apply_label(l) == other.apply_label(l) for l in basis)

    def is_zero_on(self, basis):
        return all(self.apply_label(l).is_zero for l in basis)

    def dense(self, basis):
        """Matrix M with M[i][j] = coefficient of basis[i] in self(basis[j])."""
        idx = {label: i for i, label in enumerate(basis)}
        n = len(basis)
        mat = [[R_ZERO] * n for _ in range(n)]
        for j, label in enumerate(basis):
            for out_label, c in self.apply_label(label).terms.items():
                mat[idx[out_label]][j] = c
        return mat

    def dense_json(self, basis):
        """Row-major JSON dump of the dense matrix, entries as strings."""
        return json.dumps([[c.render() for c in row] for row in self.dense(basis)])


def commutator(a: LinearOperator, b: LinearOperator) -> LinearOperator:
    return a @ b - b @ a


def q_commutator(a: LinearOperator, b: LinearOperator, exp: int) -> LinearOperator:
    """[a, b]_{q^exp} = a b - q^exp b a."""
    from .qscalar import q_power

    return a @ b - (b @ a).scale(q_power(exp))


# -- weight machinery ----------------------------------------------------


def diagonal_eigenvalue(op: LinearOperator, label) -> RatScalar:
    v = op.apply_label(label)
    if len(v.terms) > 1 or (v.terms and label not in v.terms):
        raise NotDiagonal(f"operator moves {label}")
    return v.terms.get(label, R_ZERO)


def weight_split(diagonals, basis):
    """Partition a basis into simultaneous eigenspaces of diagonal operators.

    Returns an ordered list of (eigenvalue tuple, labels); eigenvalues are
    canonical scalar strings so they can key dictionaries.
    """
    parts = {}
    order = []
    for label in basis:
        key = tuple(diagonal_eigenvalue(d, label).render() for d in diagonals)
        if key not in parts:
            parts[key] = []
            order.append(key)
        parts[key].append(label)
    return [(key, parts[key]) for key in order]


# -- exact elimination engines -------------------------------------------


def _strip_content(row):
    """Divide a sparse Laurent row by the gcd of its entries (and q-shift)."""
    if not row:
        return row
    g = None
    for p in row.values():
        g = _content_free(p)[0] if g is None else poly_gcd(g, p)
        if g.is_one:
            break
    shift = min(p.min_exp() for p in row.values())
    out = {}
    for k, p in row.items():
        p = p.shifted(-shift)
        if not g.is_one:
            p = poly_exact_div(p, g)
        out[k] = p
    return out


def sparse_rank_laurent(rows):
    """Rank of a sparse system with LaurentPoly entries, fraction-free.

    ``rows`` is a list of dicts column -> LaurentPoly.  The input rows are
    not modified.
    """
    work = []
    for r in rows:
        r = {k: p for k, p in r.items() if not p.is_zero}
        if r:
            work.append(_strip_content(r))
    col_rows = {}
    for i, r in enumerate(work):
        for c in r:
            col_rows.setdefault(c, set()).add(i)
    active = [True] * len(work)
    rank = 0
    while True:
        # choose the pivot column with the fewest active rows, then the
        # shortest row in it (Markowitz-lite)
        best = None
        for c, rows_of_c in col_rows.items():
            live = [i for i in rows_of_c if active[i] and c in work[i]]
            col_rows[c] = set(live)
            if not live:
                continue
            size = len(live)
            if best is None or size < best[1]:
                best = (c, size, live)
                if size == 1:
                    break
        if best is None:
            return rank
        col, _, live = best
        piv = min(live, key=lambda i: len(work[i]))
        rank += 1
        active[piv] = False
        prow = work[piv]
        pval = prow[col]
        pval_is_one = pval.is_one
        for i in live:
            if i == piv or not active[i]:
                continue
            row = work[i]
            f = row.pop(col)
            # row := row * pval - f * prow (fraction-free combination)
            if not pval_is_one:
                for c2 in row:
                    row[c2] = row[c2] * pval
            for c2, p in prow.items():
                if c2 == col:
                    continue
                cur = row.get(c2)
                nxt = (cur - p * f) if cur is not None else -(p * f)
                if nxt.is_zero:
                    row.pop(c2, None)
                else:
                    row[c2] = nxt
                    col_rows.setdefault(c2, set()).add(i)
            if row:
                stripped = _strip_content(row)
                row.clear()
                row.update(stripped)
            else:
                active[i] = False
        col_rows.pop(col, None)


def sparse_rank_rational(rows):
    """Rank of a sparse system with rational entries (specialized q)."""
    work = []
    for r in rows:
        r = {k: v for k, v in r.items() if v}
        if r:
            work.append(r)
    col_rows = {}
    for i, r in enumerate(work):
        for c in r:
            col_rows.setdefault(c, set()).add(i)
    active = [True] * len(work)
    rank = 0
    while True:
        best = None
        for c, rows_of_c in col_rows.items():
            live = [i for i in rows_of_c if active[i] and c in work[i]]
            col_rows[c] = set(live)
            if not live:
                continue
            if best is None or len(live) < best[1]:
                best = (c, len(live), live)
                if len(live) == 1:
                    break
        if best is None:
            return rank
        col, _, live = best
        piv = min(live, key=lambda i: len(work[i]))
        rank += 1
        active[piv] = False
        prow = work[piv]
        pval = prow[col]
        for i in live:
            if i == piv or not active[i]:
                continue
            row = work[i]
            f = row.pop(col) / pval
            for c2, p in prow.items():
                if c2 == col:
                    continue
                cur = row.get(c2, 0)
                nxt = cur - p * f
                if nxt:
                    row[c2] = nxt
                    col_rows.setdefault(c2, set()).add(i)
                else:
                    row.pop(c2, None)
            if not row:
                active[i] = False
        col_rows.pop(col, None)


def bareiss_rank(matrix):
    """Rank of a dense matrix of LaurentPoly via Bareiss exact division."""
    m = [[p for p in row] for row in matrix]
    nrows = len(m)
    if not nrows:
        return 0
    ncols = len(m[0])
    prev = LaurentPoly.one()
    rank = 0
    row = 0
    for col in range(ncols):
        piv = None
        for r in range(row, nrows):
            if not m[r][col].is_zero:
                piv = r
                break
        if piv is None:
            continue
        m[row], m[piv] = m[piv], m[row]
        pval = m[row][col]
        for r in range(row + 1, nrows):
            if m[r][col].is_zero and pval.is_one:
                continue
            for c in range(col + 1, ncols):
                num = m[r][c] * pval - m[row][c] * m[r][col]
                m[r][c] = poly_exact_div(num, prev)
            m[r][col] = LaurentPoly.zero()
        prev = pval
        rank += 1
        row += 1
        if row == nrows:
            break
    return rank


def gauss_rank_rational_functions(matrix):
    """Rank of a dense matrix of RatScalar by naive Gaussian elimination."""
    m = [[c for c in row] for row in matrix]
    nrows = len(m)
    if not nrows:
        return 0
    ncols = len(m[0])
    rank = 0
    row = 0
    for col in range(ncols):
        piv = None
        for r in range(row, nrows):
            if m[r][col]:
                piv = r
                break
        if piv is None:
            continue
        m[row], m[piv] = m[piv], m[row]
        pval = m[row][col]
        for r in range(row + 1, nrows):
            if not m[r][col]:
                continue
            f = m[r][col] / pval
            for c in range(col, ncols):
                m[r][c] = m[r][c] - f * m[row][c]
        rank += 1
        row += 1
        if row == nrows:
            break
    return rank


def solve_dense(rows, rhs):
    """Solve a dense RatScalar system; returns (solution, nullity).

    ``rows`` is a list of lists, ``rhs`` the right-hand column.  Raises
    Inconsistent when no solution exists.  Free variables are set to zero.
    """
    from .errors import Inconsistent

    m = [list(r) + [b] for r, b in zip(rows, rhs)]
    nrows = len(m)
    ncols = len(rows[0]) if nrows else 0
    pivots = []
    row = 0
    for col in range(ncols):
        piv = None
        for r in range(row, nrows):
            if m[r][col]:
                piv = r
                break
        if piv is None:
            continue
        m[row], m[piv] = m[piv], m[row]
        pval = m[row][col]
        m[row] = [c / pval for c in m[row]]
        for r in range(nrows):
            if r != row and m[r][col]:
                f = m[r][col]
                m[r] = [a - f * b for a, b in zip(m[r], m[row])]
        pivots.append(col)
        row += 1
        if row == nrows:
            break
    for r in range(row, nrows):
        if m[r][ncols]:
            raise Inconsistent("linear system has no solution")
    sol = [R_ZERO] * ncols
    for r, col in enumerate(pivots):
        sol[col] = m[r][ncols]
    return sol, ncols - len(pivots)


# -- commutant dimension ---------------------------------------------------


def _operator_entries(op, basis, idx):
    """Column-sparse entries {(i, j): scalar} of op over an ordered basis."""
    out = {}
    for j, label in enumerate(basis):
        for out_label, c in op.apply_label(label).terms.items():
            out[(idx[out_label], j)] = c
    return out


def commutant_dimension(generators, basis, specialize=None):
    """Dimension of {Y : [Y, X] = 0 for every generator X} over the scalars.

    With ``specialize`` set to a nonzero rational, every entry is evaluated
    at q = that value and the dimension is computed over Q; that value is an
    upper bound for the generic dimension only up to rank deficiency at the
    point, hence a certificate requires agreement at two points.  Exact mode
    works over Q(q) with fraction-free elimination.

    Diagonal generators are used to cut Y into blocks first; this changes
    nothing mathematically and keeps the unknown count small.
    """
    basis = list(basis)
    idx = {label: i for i, label in enumerate(basis)}
    diagonals, movers = [], []
    for g in generators:
        try:
            for label in basis:
                diagonal_eigenvalue(g, label)
        except NotDiagonal:
            movers.append(g)
        else:
            diagonals.append(g)

    block_of = {}
    for key, labels in weight_split(diagonals, basis):
        for label in labels:
            block_of[idx[label]] = key

    nvars = 0
    var_id = {}
    n = len(basis)
    for i in range(n):
        for j in range(n):
            if block_of[i] == block_of[j]:
                var_id[(i, j)] = nvars
                nvars += 1

    rows = []
    for g in movers:
        entries = _operator_entries(g, basis, idx)
        by_row = {}
        by_col = {}
        for (i, j), c in entries.items():
            by_row.setdefault(i, []).append((j, c))
            by_col.setdefault(j, []).append((i, c))
        # commutator cell (i, j): sum_k Y[i,k] X[k,j] - X[i,k] Y[k,j] = 0
        for i in range(n):
            for j in range(n):
                row = {}
                for k, c in by_col.get(j, ()):
                    v = var_id.get((i, k))
                    if v is not None:
                        row[v] = row.get(v, R_ZERO) + c
                for k, c in by_row.get(i, ()):
                    v = var_id.get((k, j))
                    if v is not None:
                        row[v] = row.get(v, R_ZERO) - c
                row = {v: c for v, c in row.items() if c}
                if row:
                    rows.append(row)

    if specialize is not None:
        qval = specialize
        num_rows = []
        for row in rows:
            out = {}
            for v, c in row.items():
                val = c.specialize(qval)
                if val:
                    out[v] = val
            if out:
                num_rows.append(out)
        rank = sparse_rank_rational(num_rows)
        return nvars - rank

    poly_rows = []
    for row in rows:
        dens = [c.den for c in row.values() if not c.is_polynomial]
        if dens:
            clear = LaurentPoly.one()
            for d in dens:
                clear = poly_exact_div(clear * d, poly_gcd(clear, d))
            out = {v: (c * RatScalar(clear)).as_laurent() for v, c in row.items()}
        else:
            out = {v: c.num for v, c in row.items()}
        poly_rows.append(out)
    rank = sparse_rank_laurent(poly_rows)
    return nvars - rank


def operator_span_rank(operators, basis):
    """Rank of a family of operators as vectors over the dense entry grid."""
    idx = {label: i for i, label in enumerate(basis)}
    rows = []
    for op in operators:
        row = {}
        for (i, j), c in _operator_entries(op, basis, idx).items():
            if not c.is_polynomial:
                raise SpecializationSingular(
                    "operator entries must be Laurent polynomials here")
            row[i * len(basis) + j] = c.num
        rows.append(row)
    return sparse_rank_laurent(rows)

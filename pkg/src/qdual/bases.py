"""Combinatorial basis labels and their enumerations.

All row/column indices and tuple components are stored as DOUBLED
integers so half-integer and integer index conventions coexist exactly:
a half-integer index i is stored as 2i (odd), an integer one as 2i
(even).  JSON serialization uses the doubled integers as well.

Label order is lexicographic on a documented flattening: entries read
rows ascending then columns ascending.  All label types are immutable
and hashable.
"""

from __future__ import annotations

from math import comb

from .errors import (
    ComponentOutOfRange,
    InvalidArgument,
    InvariantViolation,
    NotInRhoSubset,
    SizeLimit,
)

DEFAULT_ENUMERATION_CAP = 10**6


def index_range(big_n):
    """Doubled indices of I_{big_n}, ascending."""
    return list(range(1 - big_n, big_n, 2))


class ThetaMatrix:
    """A centro-symmetric nonnegative matrix label.

    Family 'i': rows in doubled I_{2m}, columns in doubled I_{2n}, total
    entry sum 2d.  Family 'j': rows in doubled I_{2m+1} (even), columns in
    doubled I_{2n+1}, total sum 2d+1 with the central entry odd and >= 1.
    Always a[r, c] == a[-r, -c].
    """

    __slots__ = ("family", "m", "n", "entries", "_key", "_hash")

    def __init__(self, family, m, n, entries):
        if family not in ("i", "j"):
            raise InvalidArgument(f"unknown family {family!r}")
        self.family = family
        self.m = m
        self.n = n
        clean = {}
        rows = set(self.row_indices(family, m))
        cols = set(self.col_indices(family, n))
        for (r, c), a in entries.items():
            if a < 0:
                raise InvariantViolation(f"negative entry at ({r}, {c})")
            if a == 0:
                continue
            if r not in rows or c not in cols:
                raise InvariantViolation(f"index ({r}, {c}) outside the grid")
            clean[(r, c)] = int(a)
        for (r, c), a in clean.items():
            if clean.get((-r, -c), 0) != a:
                raise InvariantViolation(f"not centro-symmetric at ({r}, {c})")
        total = sum(clean.values())
        if family == "i":
            if total % 2:
                raise InvariantViolation("odd total in the even family")
        else:
            center = clean.get((0, 0), 0)
            if total % 2 == 0 or center % 2 == 0 or center < 1:
                raise InvariantViolation(
                    "odd-family label needs odd total and odd central entry")
        self.entries = clean
        self._key = tuple(
            clean.get((r, c), 0)
            for r in self.row_indices(family, m)
            for c in self.col_indices(family, n))
        self._hash = hash(("theta", family, m, n, self._key))

    @staticmethod
    def row_indices(family, m):
        return index_range(2 * m) if family == "i" else index_range(2 * m + 1)

    @staticmethod
    def col_indices(family, n):
        return index_range(2 * n) if family == "i" else index_range(2 * n + 1)

    def entry(self, r, c):
        return self.entries.get((r, c), 0)

    def row_sum(self, r):
        return sum(a for (rr, _), a in self.entries.items() if rr == r)

    def col_sum(self, c):
        return sum(a for (_, cc), a in self.entries.items() if cc == c)

    @property
    def total(self):
        return sum(self.entries.values())

    @property
    def degree(self):
        return self.total // 2

    def theta_shift(self, add, sub):
        """The label for this matrix + E^theta_add - E^theta_sub."""
        entries = dict(self.entries)
        for (r, c), delta in ((add, 1), (sub, -1)):
            for rr, cc in ((r, c), (-r, -c)):
                entries[(rr, cc)] = entries.get((rr, cc), 0) + delta
        return ThetaMatrix(self.family, self.m, self.n, entries)

    def __eq__(self, other):
        return (isinstance(other, ThetaMatrix)
                and self._hash == other._hash
                and self.family == other.family
                and self.m == other.m and self.n == other.n
                and self._key == other._key)

    def __hash__(self):
        return self._hash

    def sort_key(self):
        return (0, self.family, self.m, self.n, self._key)

    def __lt__(self, other):
        return self.sort_key() < other.sort_key()

    def __repr__(self):
        cells = ",".join(f"({r},{c}):{a}" for (r, c), a in sorted(self.entries.items()))
        return f"Theta[{self.family};{self.m}|{self.n};{cells}]"

    def to_json(self):
        return {"type": "theta", "family": self.family, "m": self.m,
                "n": self.n,
                "entries": sorted([r, c, a] for (r, c), a in self.entries.items())}


class ColumnMatrix:
    """A nonnegative matrix with rows in doubled I_M, columns 1..n doubled odd."""

    __slots__ = ("M", "n", "entries", "_key", "_hash")

    def __init__(self, M, n, entries):
        self.M = M
        self.n = n
        clean = {}
        rows = set(index_range(M))
        cols = set(range(1, 2 * n, 2))
        for (r, c), a in entries.items():
            if a < 0:
                raise InvariantViolation(f"negative entry at ({r}, {c})")
            if a == 0:
                continue
            if r not in rows or c not in cols:
                raise InvariantViolation(f"index ({r}, {c}) outside the grid")
            clean[(r, c)] = int(a)
        self.entries = clean
        self._key = tuple(clean.get((r, c), 0)
                          for r in index_range(M) for c in range(1, 2 * n, 2))
        self._hash = hash(("col", M, n, self._key))

    def entry(self, r, c):
        return self.entries.get((r, c), 0)

    def row_sum(self, r):
        return sum(a for (rr, _), a in self.entries.items() if rr == r)

    def col_sum(self, c):
        return sum(a for (_, cc), a in self.entries.items() if cc == c)

    @property
    def degree(self):
        return sum(self.entries.values())

    def shift(self, add, sub):
        entries = dict(self.entries)
        entries[add] = entries.get(add, 0) + 1
        entries[sub] = entries.get(sub, 0) - 1
        return ColumnMatrix(self.M, self.n, entries)

    def __eq__(self, other):
        return (isinstance(other, ColumnMatrix) and self._hash == other._hash
                and self.M == other.M and self.n == other.n
                and self._key == other._key)

    def __hash__(self):
        return self._hash

    def sort_key(self):
        return (1, self.M, self.n, self._key)

    def __lt__(self, other):
        return self.sort_key() < other.sort_key()

    def __repr__(self):
        cells = ",".join(f"({r},{c}):{a}" for (r, c), a in sorted(self.entries.items()))
        return f"Col[{self.M}|{self.n};{cells}]"

    def to_json(self):
        return {"type": "column", "M": self.M, "n": self.n,
                "entries": sorted([r, c, a] for (r, c), a in self.entries.items())}


class TupleLabel:
    """A basis label of the n-fold tensor power of the natural module."""

    __slots__ = ("M", "components", "_hash")

    def __init__(self, M, components):
        legal = set(index_range(M))
        comps = tuple(int(c) for c in components)
        for c in comps:
            if c not in legal:
                raise ComponentOutOfRange(f"component {c}/2 outside I_{M}")
        self.M = M
        self.components = comps
        self._hash = hash(("tuple", M, comps))

    def replace(self, pos, value):
        comps = list(self.components)
        comps[pos] = value
        return TupleLabel(self.M, comps)

    def __eq__(self, other):
        return (isinstance(other, TupleLabel) and self.M == other.M
                and self.components == other.components)

    def __hash__(self):
        return self._hash

    def sort_key(self):
        return (2, self.M, self.components)

    def __lt__(self, other):
        return self.sort_key() < other.sort_key()

    def __repr__(self):
        comps = ",".join(str(c) + "/2" if c % 2 else str(c // 2)
                         for c in self.components)
        return f"v({comps})"

    def to_json(self):
        return {"type": "tuple", "M": self.M, "components": list(self.components)}


class RankOne:
    """The k-th vector of the (d+1)-dimensional irreducible rank-one module."""

    __slots__ = ("d", "k", "_hash")

    def __init__(self, d, k):
        if not 0 <= k <= d:
            raise ComponentOutOfRange(f"rank-one index {k} outside 0..{d}")
        self.d = d
        self.k = k
        self._hash = hash(("rank1", d, k))

    def __eq__(self, other):
        return isinstance(other, RankOne) and (self.d, self.k) == (other.d, other.k)

    def __hash__(self):
        return self._hash

    def sort_key(self):
        return (3, self.d, self.k)

    def __lt__(self, other):
        return self.sort_key() < other.sort_key()

    def __repr__(self):
        return f"w[{self.k};{self.d}]"

    def to_json(self):
        return {"type": "rank1", "d": self.d, "k": self.k}


def label_key(label):
    return label.sort_key()


def label_from_json(obj):
    kind = obj["type"]
    if kind == "theta":
        return ThetaMatrix(obj["family"], obj["m"], obj["n"],
                           {(r, c): a for r, c, a in obj["entries"]})
    if kind == "column":
        return ColumnMatrix(obj["M"], obj["n"],
                            {(r, c): a for r, c, a in obj["entries"]})
    if kind == "tuple":
        return TupleLabel(obj["M"], obj["components"])
    if kind == "rank1":
        return RankOne(obj["d"], obj["k"])
    raise InvalidArgument(f"unknown label type {kind!r}")


# -- enumeration -----------------------------------------------------------


def _compositions(total, cells):
    """All ways to write ``total`` as an ordered sum over ``cells`` slots."""
    if cells == 0:
        if total == 0:
            yield ()
        return
    if cells == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, cells - 1):
            yield (first,) + rest


def _orbit_pairs(family, m, n):
    """Cells (r, c) representing the two-element symmetry orbits."""
    rows = ThetaMatrix.row_indices(family, m)
    cols = ThetaMatrix.col_indices(family, n)
    return [(r, c) for r in rows for c in cols if (r, c) > (-r, -c)]


def count_basis(space, m=None, n=None, d=None, M=None):
    """Cardinality of an index set, without materializing it."""
    if space == "Xi_i":
        cells = 2 * m * n
        return comb(d + cells - 1, cells - 1)
    if space == "Xi_j":
        pairs = ((2 * m + 1) * (2 * n + 1) - 1) // 2
        return sum(comb((d - c) + pairs - 1, pairs - 1) for c in range(d + 1))
    if space == "Xi_MN":
        cells = M * n
        return comb(d + cells - 1, cells - 1)
    if space == "Tuples":
        return M**n
    raise InvalidArgument(f"unknown space {space!r}")


def enumerate_basis(space, m=None, n=None, d=None, M=None,
                    cap=DEFAULT_ENUMERATION_CAP):
    """Complete, duplicate-free, ordered list of labels of one index set.

    ``space`` is 'Xi_i', 'Xi_j' (Theta matrices of degree d), 'Xi_MN'
    (column matrices of total d) or 'Tuples'.  Raises SizeLimit when the
    count exceeds ``cap``.
    """
    count = count_basis(space, m=m, n=n, d=d, M=M)
    if count > cap:
        raise SizeLimit(f"{space} would have {count} labels (cap {cap})")

    out = []
    if space in ("Xi_i", "Xi_j"):
        family = "i" if space == "Xi_i" else "j"
        pairs = _orbit_pairs(family, m, n)
        if family == "i":
            for combo in _compositions(d, len(pairs)):
                entries = {cell: a for cell, a in zip(pairs, combo) if a}
                out.append(ThetaMatrix(family, m, n, _symmetrize(entries)))
        else:
            for c in range(d + 1):
                for combo in _compositions(d - c, len(pairs)):
                    entries = {cell: a for cell, a in zip(pairs, combo) if a}
                    entries = _symmetrize(entries)
                    entries[(0, 0)] = 2 * c + 1
                    out.append(ThetaMatrix(family, m, n, entries))
    elif space == "Xi_MN":
        cells = [(r, c) for r in index_range(M) for c in range(1, 2 * n, 2)]
        for combo in _compositions(d, len(cells)):
            out.append(ColumnMatrix(M, n,
                                    {cell: a for cell, a in zip(cells, combo)}))
    elif space == "Tuples":
        comps = [()]
        for _ in range(n):
            comps = [t + (c,) for t in comps for c in index_range(M)]
        out = [TupleLabel(M, t) for t in comps]
    else:
        raise InvalidArgument(f"unknown space {space!r}")
    out.sort(key=label_key)
    return out


def _symmetrize(entries):
    sym = {}
    for (r, c), a in entries.items():
        sym[(r, c)] = a
        sym[(-r, -c)] = a
    return sym


# -- the unit-column-sum subset and its tuple parameterization ---------------


def tuple_to_matrix(family, lam: TupleLabel) -> ThetaMatrix:
    """The unit-column matrix attached to a tuple.

    Positive column k (doubled 2k-1 for family 'i', 2k for 'j') carries the
    unit vector of row lam_k; negative columns mirror it; family 'j' places
    one extra unit at the center.
    """
    n = len(lam.components)
    m = lam.M // 2
    entries = {}
    for k, comp in enumerate(lam.components, start=1):
        col = 2 * k - 1 if family == "i" else 2 * k
        entries[(comp, col)] = entries.get((comp, col), 0) + 1
        entries[(-comp, -col)] = entries.get((-comp, -col), 0) + 1
    if family == "j":
        entries[(0, 0)] = entries.get((0, 0), 0) + 1
    return ThetaMatrix(family, m, n, entries)


def matrix_to_tuple(A: ThetaMatrix) -> TupleLabel:
    """Inverse of tuple_to_matrix on the unit-column-sum subset."""
    big_m = 2 * A.m if A.family == "i" else 2 * A.m + 1
    comps = []
    for k in range(1, A.n + 1):
        col = 2 * k - 1 if A.family == "i" else 2 * k
        hits = [r for (r, c) in A.entries if c == col]
        if len(hits) != 1 or A.entry(hits[0], col) != 1:
            raise NotInRhoSubset(f"column {col} of {A!r} is not a unit column")
        comps.append(hits[0])
    if A.family == "j" and A.entry(0, 0) != 1:
        raise NotInRhoSubset(f"central entry of {A!r} is not 1")
    return TupleLabel(big_m, comps)


def rho_weight_subset(family, m, n):
    """Labels with unit column sums (and central entry 1 for family 'j').

    This is the degree-n slice singled out by the distinguished relative
    weight; its cardinality is (2m)^n for family 'i' and (2m+1)^n for 'j'.
    """
    big_m = 2 * m if family == "i" else 2 * m + 1
    tuples = enumerate_basis("Tuples", M=big_m, n=n)
    out = [tuple_to_matrix(family, t) for t in tuples]
    out.sort(key=label_key)
    return out


# -- the column-forgetting bijection ----------------------------------------


def omega_forget(A: ThetaMatrix) -> ColumnMatrix:
    """Restrict an even-family matrix to its positive columns."""
    if A.family != "i":
        raise InvalidArgument("omega is defined on the even family")
    entries = {(r, c): a for (r, c), a in A.entries.items() if c > 0}
    return ColumnMatrix(2 * A.m, A.n, entries)


def omega_unforget(B: ColumnMatrix) -> ThetaMatrix:
    """Inverse of omega_forget."""
    if B.M % 2:
        raise InvalidArgument("the even family needs an even row count")
    entries = {}
    for (r, c), a in B.entries.items():
        entries[(r, c)] = a
        entries[(-r, -c)] = a
    return ThetaMatrix("i", B.M // 2, B.n, entries)

"""Relative braid group operators on distinguished-weight spaces and on
rank-one integrable modules, plus the Hecke-image operator map.

Every operator here is a truncating series in right-action generators:

* index i > 0, even family:  sum_p (-q)^-p B_i^(p) B_{-i}^(p)
* index i > 0, odd family:   sum_p (-q)^-p B_{i+1/2}^(p) B_{-i-1/2}^(p)
* index 0, even family:      sum_p (-q)^-p  (parity-0 idivided power 2p)
* index 0, odd family:       the (t, l) double sum
      sum (-1)^{t+l} q^{-(t-l)(t-l+1)/2 - t - l} B_{-1/2}^(t) B_{1/2}^(t+l) B_{-1/2}^(l)

applied to vectors of the distinguished weight (unit column sums).  On a
rank-one module the fixed-node series uses the parity-0 powers 2p when the
highest weight d is odd and the parity-1 powers 2p+1 when d is even.

Series evaluation stops at the first index whose term kills the vector;
the remaining terms up to a hard cap (module dimension + 2) are verified
to vanish as well, and TruncationCapExceeded fires if any survives.  For
these modules the divided-power factors nest, so vanishing is monotone.
"""

from __future__ import annotations

from .actions import build_howe_action
from .bases import rho_weight_subset
from .errors import IndexOutOfRange, TruncationCapExceeded
from .freemod import LinearOperator, SparseVector
from .qscalar import R_ONE, q_power, qfact
from .uqalg import apply_idivided_power


def _series_sum(term_at, cap, what):
    """Sum term_at(p) for p = 0, 1, ... with the documented stop rule."""
    total = SparseVector()
    p = 0
    first_zero = None
    while p <= cap:
        t = term_at(p)
        if t.is_zero:
            first_zero = p
            break
        total.add_scaled(t)
        p += 1
    if first_zero is None:
        raise TruncationCapExceeded(f"{what}: no zero term up to p = {cap}")
    for extra in range(first_zero + 1, cap + 1):
        if not term_at(extra).is_zero:
            raise TruncationCapExceeded(
                f"{what}: term {extra} revives after zero at {first_zero}")
    return total


def braid_T_on_rho(action, i, v, cap=None):
    """Apply the index-i braid operator to a distinguished-weight vector.

    ``action`` is a HoweActionI/HoweActionJ; ``i`` indexes 0..n-1; ``v``
    must lie in the unit-column-sum span (checked by the caller or by the
    weight machinery).  Right action: the vector meets the left factor of
    each monomial first.
    """
    if not 0 <= i <= action.n - 1:
        raise IndexOutOfRange(f"braid index {i} outside 0..{action.n - 1}")
    if cap is None:
        cap = len(action.basis()) + 2
    if v.is_zero:
        return SparseVector()

    if i > 0:
        if action.family == "i":
            b_plus = action.right_B(2 * i)
            b_minus = action.right_B(-2 * i)
        else:
            b_plus = action.right_B(2 * i + 1)
            b_minus = action.right_B(-2 * i - 1)

        def term_at(p):
            w = v
            for _ in range(p):
                w = b_plus(w)
            if w.is_zero:
                return w
            for _ in range(p):
                w = b_minus(w)
            if w.is_zero:
                return w
            return w.scale((qfact(p).inv() ** 2)
                           * (-R_ONE if p % 2 else R_ONE) * q_power(-p))

        return _series_sum(term_at, cap, f"T_{i} series")

    if action.family == "i":
        b0 = action.right_B0()
        return _fixed_node_series(lambda w: b0(w), 0, v, cap, even_orders=True)

    # odd family, index 0: the (t, l) double sum
    b_plus = action.right_B(1)
    b_minus = action.right_B(-1)

    def diagonal_at(s):
        total = SparseVector()
        for t in range(s + 1):
            l = s - t
            w = v
            for _ in range(t):
                w = b_minus(w)
            for _ in range(t + l):
                w = b_plus(w)
            for _ in range(l):
                w = b_minus(w)
            if w.is_zero:
                continue
            expo = -((t - l) * (t - l + 1)) // 2 - t - l
            assert ((t - l) * (t - l + 1)) % 2 == 0
            coef = (qfact(t).inv() * qfact(t + l).inv() * qfact(l).inv()
                    * (-R_ONE if (t + l) % 2 else R_ONE) * q_power(expo))
            total.add_scaled(w, coef)
        return total

    return _series_sum(diagonal_at, cap, "T_0 double series")


def _fixed_node_series(b0_apply, parity, v, cap, even_orders):
    """sum_p (-q)^-p (idivided power of order 2p or 2p+1) applied to v.

    ``even_orders`` True uses orders 2p with the given parity; False uses
    orders 2p+1.
    """
    def term_at(p):
        order = 2 * p if even_orders else 2 * p + 1
        w = apply_idivided_power(b0_apply, parity, order, v)
        if w.is_zero:
            return w
        return w.scale((-R_ONE if p % 2 else R_ONE) * q_power(-p))

    return _series_sum(term_at, cap, "fixed-node series")


def braid_T0_rank1(b0_op, d, v, cap=None):
    """The fixed-node braid operator on a rank-one module of highest
    weight d: parity-0 even orders for odd d, parity-1 odd orders for
    even d."""
    if cap is None:
        cap = d + 3
    if d % 2:
        return _fixed_node_series(lambda w: b0_op(w), 0, v, cap, even_orders=True)
    return _fixed_node_series(lambda w: b0_op(w), 1, v, cap, even_orders=False)


# -- operator-level wrappers on the distinguished-weight space ----------------


class RhoSpace:
    """The unit-column-sum span of a Howe action, with its braid operators."""

    def __init__(self, family, m, n):
        self.family = family
        self.m = m
        self.n = n
        self.action = build_howe_action(family, m, n, n)
        self.basis = rho_weight_subset(family, m, n)
        self.space = ("rho", family, m, n)

    def braid_operator(self, i) -> LinearOperator:
        return LinearOperator(
            lambda label: braid_T_on_rho(self.action, i, SparseVector.unit(label)),
            self.action.space)

    def minus_q_braid_operator(self, i) -> LinearOperator:
        return self.braid_operator(i).scale(-q_power(1))

    def hecke_image_operator(self, word) -> LinearOperator:
        """The image of a Hecke word: the composition of (-q T_i) along it.

        An empty word gives the identity; words act like right actions, so
        the first letter is applied first.
        """
        ops = [self.minus_q_braid_operator(i) for i in word]

        def rule(label):
            v = SparseVector.unit(label)
            for op in ops:
                v = op(v)
            return v

        return LinearOperator(rule, self.action.space)

    def check_in_span(self, v):
        support = set(v.terms)
        return support <= set(self.basis)


def type_b_group_words(n):
    """A word for every element of the rank-n type-B Weyl group.

    Elements are modeled as signed permutations of 1..n; generator 0 flips
    the sign of the first letter, generator i swaps letters i, i+1.
    """
    start = tuple(range(1, n + 1))
    words = {start: ()}
    frontier = [start]
    while frontier:
        nxt = []
        for elem in frontier:
            base = words[elem]
            for i in range(n):
                if i == 0:
                    new = (-elem[0],) + elem[1:]
                else:
                    new = list(elem)
                    new[i - 1], new[i] = new[i], new[i - 1]
                    new = tuple(new)
                if new not in words:
                    words[new] = base + (i,)
                    nxt.append(new)
        frontier = nxt
    return sorted(words.values(), key=lambda w: (len(w), w))


# -- unequal parameter measurements -------------------------------------------


def b0s_block_matrix(m, s, j):
    """The 2x2 matrix of the s-deformed right fixed-node generator on the
    block {v_j, v_{-j}} of the degree-1 space, rows = images of (v_j, v_-j)."""
    from .bases import TupleLabel, tuple_to_matrix

    act = build_howe_action("i", m, 1, 1)
    vj = tuple_to_matrix("i", TupleLabel(2 * m, [j]))
    vmj = tuple_to_matrix("i", TupleLabel(2 * m, [-j]))
    op = act.right_B0(s=s)
    rows = []
    for lab in (vj, vmj):
        img = op.apply_label(lab)
        rows.append((img.coeff(vj), img.coeff(vmj)))
        assert set(img.terms) <= {vj, vmj}
    return rows


def measure_unequal_parameter(m, s, cap=16):
    """Measured data of the s-deformed fixed-node braid operator.

    Returns a dict per 2-dimensional block with the operator matrix, the
    exact eigenvalue pair, which of the two sign conventions it matches,
    and the scalar renormalizing the quadratic to (T + q^-2s)(T - 1) = 0.

    The series uses parity-0 even orders for odd s and parity-1 odd orders
    for even s; only that choice truncates, because the deformed generator
    has eigenvalues [s+1] and [s-1] on each block.
    """
    from .bases import TupleLabel, tuple_to_matrix

    act = build_howe_action("i", m, 1, 1)
    op = act.right_B0(s=s)
    odd_s = s % 2 == 1

    def t0_apply(v):
        if odd_s:
            return _fixed_node_series(lambda w: op(w), 0, v, cap, even_orders=True)
        return _fixed_node_series(lambda w: op(w), 1, v, cap, even_orders=False)

    # the quadratic (T + c1)(T + c2) = 0 in the as-displayed convention has
    # roots -c1, -c2; the competing convention flips the sign of both roots
    if odd_s:
        r = (s + 1) // 2
        c1 = (-R_ONE if r % 2 else R_ONE) * q_power(-2 * r * r)
        c2 = (R_ONE if r % 2 else -R_ONE) * q_power(-2 * (r - 1) ** 2)
    else:
        r = s // 2
        c1 = (-R_ONE if r % 2 else R_ONE) * q_power(-2 * r * (r + 1))
        c2 = (R_ONE if r % 2 else -R_ONE) * q_power(-2 * r * (r - 1))
    displayed = [-c1, -c2]
    negated = [c1, c2]

    results = []
    for j in range(1, 2 * m, 2):
        vj = tuple_to_matrix("i", TupleLabel(2 * m, [j]))
        vmj = tuple_to_matrix("i", TupleLabel(2 * m, [-j]))
        block = [SparseVector.unit(vj), SparseVector.unit(vmj)]

        def annihilates(pair):
            for v in block:
                w = t0_apply(t0_apply(v))
                w.add_scaled(t0_apply(v), -(pair[0] + pair[1]))
                w.add_scaled(v, pair[0] * pair[1])
                if not w.is_zero:
                    return False
            return True

        match_displayed = annihilates(displayed)
        match_negated = annihilates(negated)
        if match_displayed == match_negated:
            convention = "ambiguous"
            scalar = None
        else:
            convention = "as-displayed" if match_displayed else "negated"
            roots = displayed if match_displayed else negated
            # the renormalizing scalar c sends the root pair to {-q^-2s, 1}
            scalar = None
            for a, b in (roots, roots[::-1]):
                if b and a / b == -q_power(-2 * s):
                    scalar = b.inv()
                    break
        t0_matrix = []
        for v in block:
            img = t0_apply(v)
            t0_matrix.append((img.coeff(vj), img.coeff(vmj)))
        results.append({
            "j": j,
            "b0s_matrix": b0s_block_matrix(m, s, j),
            "t0_matrix": t0_matrix,
            "convention": convention,
            "renormalizer": scalar,
            "displayed_roots": displayed,
        })
    return results

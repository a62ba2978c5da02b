"""The quasi K-matrix, the weight function g, the longest-word braid
symmetry, the composite K operator, and the rank-one certification suite.

Braid symmetry convention.  On a vector m of i-weight n the rank-one
symmetry used throughout this module is the divided-power triple sum

    T_i(m) = sum_{a,c >= 0, b = n+a+c} (-1)^b q^{ac-b} E_i^(a) F_i^(b) E_i^(c) m,

applied right-to-left.  On a string of highest weight d with basis
xi_k = F^(k) xi_0 it acts by xi_k -> (-1)^{d-k} q^{-(d-k)(k+1)} xi_{d-k};
in particular it satisfies the braid relations, maps the mu weight space
onto the s_i(mu) one, and on weight-0 vectors reduces to
sum_p (-q)^{-p} F^(p) E^(p).

Weight function.  Two recursions are provided on each root-lattice coset,
both normalized to 1 on the distinguished ray d*eps_{m-1/2}:

* ``recursion``:    g(mu) = g(mu - alpha_i) * q^{<alpha_{tau i} - alpha_i, mu> + 1 - delta_{i, tau i}}
* ``equivariant``:  the same times an extra factor (-q^-1) per simple step.

Only the equivariant variant makes the composite K = Upsilon g T_{w0}
commute with the embedded coideal algebra (the tests check both facts);
the two differ by the character (-q^-1)^height on each coset.
"""

from __future__ import annotations

from .actions import GlSlAction
from .bases import ColumnMatrix, RankOne, label_key
from .braid import braid_T0_rank1
from .errors import (
    Inconsistent,
    IndexOutOfRange,
    NonUniqueSolution,
    NotWeightHomogeneous,
    UnreachableCoset,
)
from .freemod import LinearOperator, SparseVector, solve_dense
from .qscalar import R_ONE, R_ZERO, q_power, qint
from .uqalg import chevalley_range, diagonal_range, expand_igenerator, involution_word


# -- Lusztig-style braid symmetry on weight vectors ---------------------------


def _i_weight(mu, di):
    """<mu, alpha_i> for a weight dict over doubled diagonal indices."""
    return mu.get(di - 1, 0) - mu.get(di + 1, 0)


def lusztig_symmetry(action: GlSlAction, di, v: SparseVector) -> SparseVector:
    """Apply the rank-one braid symmetry at Chevalley index di (doubled)."""
    if di not in chevalley_range(action.M):
        raise IndexOutOfRange(f"braid index {di}/2 for rank {action.M}")
    if v.is_zero:
        return SparseVector()
    mu = action.weight_of_vector(v)  # raises NotWeightHomogeneous
    n = _i_weight(mu, di)
    E = action.left_E(di)
    F = action.left_F(di)
    dim = len(action.basis())
    out = SparseVector()
    for c in range(dim + 1):
        vc = v
        for _ in range(c):
            vc = E(vc)
        if vc.is_zero:
            break
        vc = vc.scale(_inv_fact(c))
        for a in range(dim + 1):
            b = n + a + c
            if b < 0:
                continue
            w = vc
            for _ in range(b):
                w = F(w)
            if w.is_zero and b > 0:
                break  # powers of F only die harder as b grows
            w = w.scale(_inv_fact(b))
            for _ in range(a):
                w = E(w)
            if w.is_zero:
                continue
            w = w.scale(_inv_fact(a))
            sign = -R_ONE if b % 2 else R_ONE
            out.add_scaled(w, sign * q_power(a * c - b))
    return out


def _inv_fact(k):
    from .qscalar import qfact

    return qfact(k).inv()


def w0_reduced_word(M, variant=0):
    """A reduced word for the longest permutation, in doubled indices.

    variant 0 is the ascending bubble-sort word, variant 1 the descending
    one; both are reduced words for the same element.
    """
    letters = chevalley_range(M)
    if variant:
        letters = letters[::-1]
    word = []
    for k in range(len(letters)):
        word.extend(letters[: k + 1][::-1])
    return word


def lusztig_w0(action: GlSlAction, v: SparseVector, word=None) -> SparseVector:
    """The composite symmetry along a reduced word of the longest element.

    The word is applied right-to-left; the result is independent of the
    chosen reduced word (tested, not assumed).
    """
    if word is None:
        word = w0_reduced_word(action.M)
    for di in reversed(word):
        v = lusztig_symmetry(action, di, v)
    return v


# -- the weight function ------------------------------------------------------


class WeightFunctionG:
    """Values of a multiplicative weight function on one coset.

    ``variant`` selects the recursion; values are cached and every revisit
    re-checks path-independence.
    """

    def __init__(self, M, variant="recursion"):
        if variant not in ("recursion", "equivariant"):
            raise ValueError(f"unknown variant {variant!r}")
        self.M = M
        self.variant = variant
        self.cache = {}

    @staticmethod
    def _alpha(di):
        return {di - 1: 1, di + 1: -1}

    def _pair(self, x, mu):
        return sum(c * mu.get(k, 0) for k, c in x.items())

    def _step_ratio(self, di, mu):
        """g(mu) / g(mu - alpha_i)."""
        tau_di = -di
        diff = dict(self._alpha(tau_di))
        for k, c in self._alpha(di).items():
            diff[k] = diff.get(k, 0) - c
        delta = 1 if di == 0 else 0
        ratio = q_power(self._pair(diff, mu) + 1 - delta)
        if self.variant == "equivariant":
            ratio = ratio * (-q_power(-1))
        return ratio

    def base_weight(self, d):
        if d < 0:
            raise UnreachableCoset(f"no distinguished ray for total {d}")
        return {self.M - 1: d}

    def value(self, mu):
        """g(mu); mu maps doubled diagonal indices to integers.

        The coset representative is determined by the coordinate total of
        mu, which must be nonnegative.
        """
        mu = {k: v for k, v in mu.items() if v}
        key = tuple(sorted(mu.items()))
        if key in self.cache:
            return self.cache[key]
        d = sum(mu.values())
        base = self.base_weight(d)
        base_key = tuple(sorted(base.items()))
        if base_key not in self.cache:
            self.cache[base_key] = R_ONE
        # walk from mu to the base along simple-root steps, greedily
        # reducing the coordinate distance, then read the value backwards
        path = []
        cur = dict(mu)
        guard = 0
        while tuple(sorted((k, v) for k, v in cur.items() if v)) != base_key:
            guard += 1
            if guard > 10000:
                raise UnreachableCoset(f"no path from {mu} to the base ray")
            moved = False
            diag = diagonal_range(self.M)
            # positive prefix sums of (cur - base) over ascending diagonal
            # indices tell which simple step reduces the distance
            run = 0
            for pos, da in enumerate(diag[:-1]):
                run += cur.get(da, 0) - base.get(da, 0)
                di = da + 1
                if run > 0:
                    # subtract alpha_i
                    path.append((di, -1, dict(cur)))
                    cur[da] = cur.get(da, 0) - 1
                    cur[diag[pos + 1]] = cur.get(diag[pos + 1], 0) + 1
                    moved = True
                    break
                if run < 0:
                    path.append((di, +1, None))
                    cur[da] = cur.get(da, 0) + 1
                    cur[diag[pos + 1]] = cur.get(diag[pos + 1], 0) - 1
                    path[-1] = (di, +1, dict(cur))
                    moved = True
                    break
            if not moved:
                raise UnreachableCoset(f"{mu} is not in the coset of {base}")
        value = self.cache[base_key]
        for di, direction, point in reversed(path):
            if direction == -1:
                # point = cur before subtracting alpha_i: g(point) = ratio * g(point - alpha)
                value = value * self._step_ratio(di, point)
            else:
                value = value / self._step_ratio(di, point)
        known = self.cache.get(key)
        if known is not None and known != value:
            raise Inconsistent(f"path-dependent weight function at {mu}")
        self.cache[key] = value
        return value

    def check_path_independence(self, weights):
        """Verify the defining relation on every edge inside a weight set."""
        wset = [dict(w) for w in weights]
        keys = {tuple(sorted((k, v) for k, v in w.items() if v)) for w in wset}
        for w in wset:
            for di in chevalley_range(self.M):
                lower = dict(w)
                lower[di - 1] = lower.get(di - 1, 0) - 1
                lower[di + 1] = lower.get(di + 1, 0) + 1
                lkey = tuple(sorted((k, v) for k, v in lower.items() if v))
                if lkey in keys:
                    lhs = self.value(w)
                    rhs = self.value(lower) * self._step_ratio(di, w)
                    if lhs != rhs:
                        raise Inconsistent(
                            f"recursion fails at {w} along step {di}")
        return True


def g_weight_factor(mu, M, variant="recursion"):
    """Convenience wrapper: the weight-function value at one weight."""
    return WeightFunctionG(M, variant).value(mu)


# -- the quasi K operator -----------------------------------------------------


def _root_coords(mu, M):
    """Coordinates of a root-lattice element over the simple roots.

    Returns None when mu is not in the root lattice span (nonzero total)
    or has a negative coordinate.
    """
    diag = diagonal_range(M)
    coords = []
    run = 0
    for da in diag[:-1]:
        run += mu.get(da, 0)
        coords.append(run)
    run += mu.get(diag[-1], 0)
    if run != 0:
        return None
    return coords


class QuasiKOperator:
    """Weight-graded components of the quasi K operator on one module.

    ``components`` maps a positive root-lattice coordinate tuple to a
    LinearOperator raising the module weight by the matching amount; the
    degree-0 part is the identity and is kept implicit.
    """

    def __init__(self, action, components, nullities):
        self.action = action
        self.components = components
        self.nullities = nullities

    def __call__(self, v: SparseVector) -> SparseVector:
        out = v.copy()
        for op in self.components.values():
            out.add_scaled(op(v))
        return out

    def as_operator(self) -> LinearOperator:
        return LinearOperator(lambda label: self(SparseVector.unit(label)),
                              self.action.space)


def solve_quasi_K(action: GlSlAction) -> QuasiKOperator:
    """Solve the intertwining equations for the quasi K operator.

    For every Chevalley index the embedded generator B and its image under
    the principal anti-involution satisfy B U = U sigma(B), and U commutes
    with every embedded Cartan element k.  Writing U = 1 + sum of
    weight-raising components U^mu and splitting B into its lowering,
    diagonal and raising graded parts X-, X0, X+ (X0 occurs only at the
    fixed node), the slice of the B-equation whose top unknown is U^mu is

        [X-, U^mu] = U^{mu-a} X0~ - X0 U^{mu-a}
                     + U^{mu-a-a'} X+~ - X+ U^{mu-a-a'}

    with a the simple root of B, a' the one of its raising part, and ~ the
    sigma-image parts.  The system is solved degree by degree; every degree
    must be uniquely solvable (nullity 0) or NonUniqueSolution is raised;
    an unsolvable slice raises Inconsistent.
    """
    basis = action.basis()
    by_weight = {}
    for lab in basis:
        key = tuple(sorted(action.weight(lab).items()))
        by_weight.setdefault(key, []).append(lab)
    for labs in by_weight.values():
        labs.sort(key=label_key)
    weights = {key: dict(key) for key in by_weight}

    # candidate raising degrees: differences of module weights inside the
    # nonnegative simple-root cone
    degree_of = {}
    for k1, w1 in weights.items():
        for k2, w2 in weights.items():
            diff = dict(w2)
            for k, c in w1.items():
                diff[k] = diff.get(k, 0) - c
            coords = _root_coords(diff, action.M)
            if coords is None or all(c == 0 for c in coords):
                continue
            if any(c < 0 for c in coords):
                continue
            degree_of[tuple(coords)] = diff
    degrees = sorted(degree_of, key=lambda t: (sum(t), t))

    # generator word operators, split into graded parts
    chev = chevalley_range(action.M)
    parts = {}
    for di in chev:
        b_word = _embedded_b_word(di, action.M)
        sigma_word = involution_word(b_word, "sigma")
        parts[di] = {
            "minus": action.left_F(di),
            "plus": _word_operator_component(action, b_word, raising=True),
            "zero": _word_operator_component(action, b_word, raising=None),
            "splus": _word_operator_component(action, sigma_word, raising=True),
            "szero": _word_operator_component(action, sigma_word, raising=None),
        }

    alpha_coords = {}
    for di in chev:
        alpha_coords[di] = tuple(_root_coords({di - 1: 1, di + 1: -1}, action.M))

    def kappa(di, w):
        """Exponent of the embedded Cartan element k_i on weight w."""
        return (w.get(di - 1, 0) - w.get(di + 1, 0)
                - w.get(-di - 1, 0) + w.get(-di + 1, 0))

    components = {}
    nullities = {}

    def component(coords):
        if all(c == 0 for c in coords):
            return LinearOperator.identity(action.space)
        return components.get(coords, LinearOperator.zero(action.space))

    weight_key = {lab: tuple(sorted(action.weight(lab).items()))
                  for lab in basis}

    for coords in degrees:
        mu = degree_of[coords]
        var_id = {}
        targets = {}
        for key in by_weight:
            shifted = dict(weights[key])
            for k, c in mu.items():
                shifted[k] = shifted.get(k, 0) + c
            tkey = tuple(sorted((k, c) for k, c in shifted.items() if c))
            if tkey in by_weight:
                targets[key] = by_weight[tkey]
                for src in by_weight[key]:
                    for dst in by_weight[tkey]:
                        var_id[(src, dst)] = len(var_id)

        rows = []
        rhs = []

        # Cartan commutation: entries between weights with different k_i
        # eigenvalues are forced to vanish
        for (src, dst), var in var_id.items():
            for di in chev:
                gap = kappa(di, dict(weight_key[dst])) - kappa(di, dict(weight_key[src]))
                if gap:
                    rows.append({var: q_power(gap) - R_ONE})
                    rhs.append(R_ZERO)
                    break

        for di in chev:
            p = parts[di]
            a_i = alpha_coords[di]
            a_t = alpha_coords[-di]
            lower1 = tuple(c - x for c, x in zip(coords, a_i))
            lower2 = tuple(c - x - y for c, x, y in zip(coords, a_i, a_t))
            op_lower1 = (component(lower1)
                         if all(c >= 0 for c in lower1) else None)
            op_lower2 = (component(lower2)
                         if all(c >= 0 for c in lower2) else None)
            for src in basis:
                src_w = weight_key[src]
                row = {}
                # [F, U^mu](src): F circ U^mu minus U^mu circ F
                if src_w in targets:
                    for dst in targets[src_w]:
                        for lab2, c in p["minus"].apply_label(dst).terms.items():
                            _accumulate(row, (var_id[(src, dst)], lab2), c)
                for fl, fc in p["minus"].apply_label(src).terms.items():
                    fw = weight_key[fl]
                    if fw in targets:
                        for dst in targets[fw]:
                            _accumulate(row, (var_id[(fl, dst)], dst), -fc)
                # known right-hand side from lower components
                rhs_vec = SparseVector()
                if p["zero"] is not None and op_lower1 is not None:
                    for zl, zc in p["szero"].apply_label(src).terms.items():
                        rhs_vec.add_scaled(op_lower1.apply_label(zl), zc)
                    for ll, lc in op_lower1.apply_label(src).terms.items():
                        rhs_vec.add_scaled(p["zero"].apply_label(ll), -lc)
                if op_lower2 is not None:
                    for sl, sc in p["splus"].apply_label(src).terms.items():
                        rhs_vec.add_scaled(op_lower2.apply_label(sl), sc)
                    for ll, lc in op_lower2.apply_label(src).terms.items():
                        rhs_vec.add_scaled(p["plus"].apply_label(ll), -lc)
                out_labels = {lab for (_, lab) in row} | set(rhs_vec.terms)
                for lab2 in out_labels:
                    eq = {}
                    for (var, lab3), c in row.items():
                        if lab3 == lab2:
                            eq[var] = eq.get(var, R_ZERO) + c
                    eq = {v: c for v, c in eq.items() if c}
                    b = rhs_vec.coeff(lab2)
                    if eq:
                        rows.append(eq)
                        rhs.append(b)
                    elif b:
                        raise Inconsistent(
                            f"degree {coords}: unforced slice is nonzero")

        if not var_id:
            nullities[coords] = 0
            continue
        nvars = len(var_id)
        dense = [[row.get(v, R_ZERO) for v in range(nvars)] for row in rows]
        sol, nullity = solve_dense(dense, rhs)
        nullities[coords] = nullity
        if nullity:
            raise NonUniqueSolution(
                f"degree {coords}: solution space has dimension {nullity}")
        cols = {}
        for (src, dst), var in var_id.items():
            if sol[var]:
                cols.setdefault(src, SparseVector()).add_term(dst, sol[var])
        if cols:
            components[coords] = LinearOperator.from_columns(cols, action.space)

    return QuasiKOperator(action, components, nullities)


def _accumulate(row, key, c):
    cur = row.get(key)
    cur = c if cur is None else cur + c
    if cur:
        row[key] = cur
    else:
        row.pop(key, None)


def _embedded_b_word(di, M):
    """The embedded coideal generator at Chevalley index di of rank M."""
    if di == 0:
        return expand_igenerator("B0", "i", M // 2)
    return expand_igenerator("Bi", "i", M // 2, index=di)


def _word_operator_component(action, word, raising):
    """The graded part of a word operator: raising=True keeps the terms that
    raise the module weight, raising=None the diagonal ones."""
    from .uqalg import AlgebraWord

    terms = {}
    for syms, coef in word.terms.items():
        net = 0
        has_ef = False
        for sym in syms:
            if sym[0] == "E":
                net += 1
                has_ef = True
            elif sym[0] == "F":
                net -= 1
                has_ef = True
        if raising is True and net > 0:
            terms[syms] = coef
        elif raising is None and not has_ef:
            terms[syms] = coef
    if not terms:
        return None if raising is None else LinearOperator.zero(action.space)
    return action.word_operator(AlgebraWord(terms))


# -- the composite K operator -------------------------------------------------


def k_matrix_operator(action: GlSlAction, variant="equivariant",
                      quasi=None) -> LinearOperator:
    """K = (quasi K) o (weight factor) o (longest-word symmetry)."""
    g = WeightFunctionG(action.M, variant)
    if quasi is None:
        quasi = solve_quasi_K(action)

    def rule(label):
        v = lusztig_w0(action, SparseVector.unit(label))
        out = SparseVector()
        for lab, c in v.terms.items():
            out.add_term(lab, c * g.value(action.weight(lab)))
        return quasi(out)

    return LinearOperator(rule, action.space)


# -- rank-one module ----------------------------------------------------------


class RankOneModule:
    """The (d+1)-dimensional irreducible right module over the rank-two
    general linear group, with its fixed-node coideal generator."""

    def __init__(self, d):
        self.d = d
        self.space = ("rank1", d)
        self.basis = [RankOne(d, k) for k in range(d + 1)]

    def _shift(self, label, delta, coeff_fn):
        out = SparseVector()
        k = label.k
        c = coeff_fn(k)
        if c:
            kk = k + delta
            if 0 <= kk <= self.d:
                out.add_term(RankOne(self.d, kk), c)
        return out

    def right_E(self):
        return LinearOperator(
            lambda l: self._shift(l, -1, lambda k: qint(k)), self.space)

    def right_F(self):
        return LinearOperator(
            lambda l: self._shift(l, +1, lambda k: qint(self.d - k)), self.space)

    def right_K(self, s=1):
        return LinearOperator(
            lambda l: SparseVector({l: q_power(s * (2 * l.k - self.d))}),
            self.space)

    def right_B0(self):
        d = self.d

        def rule(l):
            k = l.k
            out = SparseVector()
            out.add_term(l, q_power(d - 2 * k))
            if k + 1 <= d:
                out.add_term(RankOne(d, k + 1), qint(d - k))
            if k - 1 >= 0:
                out.add_term(RankOne(d, k - 1), q_power(d - 2 * k + 1) * qint(k))
            return out

        return LinearOperator(rule, self.space)

    def braid_T0(self) -> LinearOperator:
        b0 = self.right_B0()
        return LinearOperator(
            lambda l: braid_T0_rank1(b0, self.d, SparseVector.unit(l)),
            self.space)


# -- certification helpers ----------------------------------------------------


def embedded_coideal_generators(action: GlSlAction):
    """Word operators of the rank-m coideal algebra inside rank M = 2m."""
    m = action.M // 2
    gens = {}
    for di in chevalley_range(action.M):
        gens[("B", di)] = action.word_operator(_embedded_b_word(di, action.M))
    for dr in range(1, action.M, 2):
        word = expand_igenerator("dr", "i", m, index=dr)
        gens[("d", dr)] = action.word_operator(word)
    return gens


def right_b0_transport(action: GlSlAction) -> LinearOperator:
    """The right fixed-node generator of the rank-1 side, transported to
    the one-sided matrix space along the column-forgetting bijection."""
    from .actions import build_howe_action, omega_tilde, omega_tilde_inv

    if action.n != 1:
        raise IndexOutOfRange("the transported generator lives at n = 1")
    howe = build_howe_action("i", action.M // 2, 1, action.d)
    inner = howe.right_B0()

    def rule(label):
        return omega_tilde(inner(omega_tilde_inv(SparseVector.unit(label))))

    return LinearOperator(rule, action.space)


def braid_T0_on_glsl(action: GlSlAction) -> LinearOperator:
    """The fixed-node braid operator on the degree-d one-sided space."""
    b0 = right_b0_transport(action)
    return LinearOperator(
        lambda label: braid_T0_rank1(b0, action.d, SparseVector.unit(label)),
        action.space)


def lowest_weight_label(action: GlSlAction) -> ColumnMatrix:
    return ColumnMatrix(action.M, 1, {(action.M - 1, 1): action.d})


def highest_weight_label(action: GlSlAction) -> ColumnMatrix:
    return ColumnMatrix(action.M, 1, {(1 - action.M, 1): action.d})

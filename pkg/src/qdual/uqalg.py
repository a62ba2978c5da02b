"""Formal words in quantum general linear group generators.

All half-integer indices are stored DOUBLED: a generator index i becomes
di = 2i, a row value a becomes da = 2a.  For ambient rank N the Chevalley
indices live in 2*I_{N-1} = {1-N+2k}... i.e. doubled indices of the set
[-(N-2)/2, (N-2)/2], and the diagonal indices in doubled I_N.  An even
ambient rank therefore has odd doubled diagonal indices and even doubled
Chevalley indices, and conversely.

A word is a tuple of symbols, evaluated right-to-left on left modules:

    ('E', di)          Chevalley raising generator
    ('F', di)          Chevalley lowering generator
    ('D', da, s)       diagonal generator to the power s = +1 or -1
    ('KB', dword)      (k - k^-1)/(q - q^-1) for the diagonal word dword;
                       legal only on vectors where the word acts by a
                       power of q, where it evaluates to a quantum integer

An AlgebraWord is a finite Q(q)-combination of words; products concatenate
(bilinearly), so evaluation against any module action is an algebra map.
"""

from __future__ import annotations

from .errors import IndexOutOfRange, InvalidArgument, OddRank
from .qscalar import R_ONE, RatScalar, q_power, qfact, qint


def chevalley_range(big_n):
    """Doubled indices of I_{big_n - 1} (the E/F index set for rank big_n)."""
    return list(range(2 - big_n, big_n - 1, 2))


def diagonal_range(big_n):
    """Doubled indices of I_{big_n} (the D index set)."""
    return list(range(1 - big_n, big_n, 2))


class AlgebraWord:
    """A formal Q(q)-combination of generator words."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = {}
        if terms:
            for w, c in terms.items():
                if c:
                    self.terms[tuple(w)] = c

    @staticmethod
    def one():
        return AlgebraWord({(): R_ONE})

    @staticmethod
    def generator(sym, coeff=R_ONE):
        return AlgebraWord({(sym,): coeff})

    @staticmethod
    def monomial(syms, coeff=R_ONE):
        return AlgebraWord({tuple(syms): coeff})

    @property
    def is_zero(self):
        return not self.terms

    def __eq__(self, other):
        if not isinstance(other, AlgebraWord):
            return NotImplemented
        return self.terms == other.terms

    def __add__(self, other):
        out = dict(self.terms)
        for w, c in other.terms.items():
            s = out.get(w, None)
            s = c if s is None else s + c
            if s:
                out[w] = s
            else:
                out.pop(w, None)
        return AlgebraWord(out) if out else AlgebraWord()

    def __sub__(self, other):
        return self + other.scale(-R_ONE)

    def __neg__(self):
        return self.scale(-R_ONE)

    def scale(self, c):
        if not c:
            return AlgebraWord()
        return AlgebraWord({w: v * c for w, v in self.terms.items()})

    def __rmul__(self, c):
        return self.scale(c if isinstance(c, RatScalar) else RatScalar(c))

    def __mul__(self, other):
        """Concatenation product, extended bilinearly."""
        if not isinstance(other, AlgebraWord):
            return self.scale(RatScalar(other))
        out = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                w = w1 + w2
                s = out.get(w, None)
                c = c1 * c2
                s = c if s is None else s + c
                if s:
                    out[w] = s
                else:
                    out.pop(w, None)
        return AlgebraWord(out)

    def q_bracket(self, other, exp):
        """[self, other]_{q^exp} = self*other - q^exp * other*self."""
        return self * other - (other * self).scale(q_power(exp))

    def render(self):
        if not self.terms:
            return "0"
        def sym_str(s):
            if s[0] == "E":
                return f"E({_half(s[1])})"
            if s[0] == "F":
                return f"F({_half(s[1])})"
            if s[0] == "D":
                return (f"D({_half(s[1])})" if s[2] == 1
                        else f"Dinv({_half(s[1])})")
            if s[0] == "KB":
                inner = "*".join(sym_str(t) for t in s[1])
                return f"[({inner}) - inv]/(q - q^-1)"
            raise InvalidArgument(f"unknown symbol {s}")

        parts = []
        for w in sorted(self.terms, key=lambda t: (len(t), t)):
            c = self.terms[w]
            body = "*".join(sym_str(s) for s in w) if w else "1"
            parts.append(f"({c.render()})*{body}")
        return " + ".join(parts)

    def __repr__(self):
        return f"AlgebraWord({self.render()})"


def _half(d):
    return str(d // 2) if d % 2 == 0 else f"{d}/2"


# -- generator words ------------------------------------------------------


def _k_word(di):
    """K_i = D_{i-1/2} D_{i+1/2}^{-1} as a symbol tuple, doubled index di."""
    return (("D", di - 1, 1), ("D", di + 1, -1))


def _k_inv_word(di):
    return (("D", di + 1, 1), ("D", di - 1, -1))


def k_i_word(di, big_n):
    """k_i = K_i K_{-i}^{-1} as an AlgebraWord for ambient rank big_n."""
    if di not in chevalley_range(big_n):
        raise IndexOutOfRange(f"k index {di}/2 outside rank {big_n}")
    return AlgebraWord.monomial(_k_word(di) + _k_inv_word(-di))


def expand_igenerator(which, family, n, index=None, s=None):
    """The defining word of an embedded generator.

    ``family`` is 'i' (ambient rank 2n) or 'j' (ambient rank 2n+1);
    ``which`` is one of 'Bi', 'B0', 'B0s', 'dr', 'ki', 't0'.  Indices are
    doubled.  The returned AlgebraWord lives in the ambient quantum group.
    """
    if family not in ("i", "j"):
        raise InvalidArgument(f"unknown family {family!r}")
    big_n = 2 * n if family == "i" else 2 * n + 1

    if which == "Bi":
        di = index
        if di is None or di == 0 or di not in chevalley_range(big_n):
            raise IndexOutOfRange(f"B index {index} for family {family}, n={n}")
        if family == "i" or di > 0:
            # B_i = F_i + E_{-i} K_i^{-1}
            return (AlgebraWord.generator(("F", di))
                    + AlgebraWord.monomial((("E", -di),) + _k_inv_word(di)))
        # j family, negative index: B_{-i} = F_{-i} + K_{-i}^{-1} E_i
        return (AlgebraWord.generator(("F", di))
                + AlgebraWord.monomial(_k_inv_word(di) + (("E", -di),)))

    if which == "B0":
        if family != "i":
            raise IndexOutOfRange("B0 exists only in the even-rank family")
        return (AlgebraWord.generator(("F", 0))
                + AlgebraWord.monomial((("E", 0),) + _k_inv_word(0),
                                       q_power(-1))
                + AlgebraWord.monomial(_k_inv_word(0)))

    if which == "B0s":
        if family != "i":
            raise IndexOutOfRange("B0s exists only in the even-rank family")
        if s is None:
            raise InvalidArgument("B0s needs the integer parameter s")
        return (AlgebraWord.generator(("E", 0))
                + AlgebraWord.monomial((("F", 0),) + _k_inv_word(0), q_power(1))
                + AlgebraWord.monomial(_k_inv_word(0), qint(s)))

    if which == "dr":
        dr = index
        if family == "i":
            if dr is None or dr not in diagonal_range(big_n) or dr <= 0:
                raise IndexOutOfRange(f"d index {index} for family i, n={n}")
            return AlgebraWord.monomial((("D", dr, 1), ("D", -dr, 1)))
        if dr == 0:
            return AlgebraWord.generator(("D", 0, 1))
        if dr is None or dr not in diagonal_range(big_n) or dr < 0:
            raise IndexOutOfRange(f"d index {index} for family j, n={n}")
        return AlgebraWord.monomial((("D", dr, 1), ("D", -dr, 1)))

    if which == "ki":
        return k_i_word(index, big_n)

    if which == "t0":
        if family != "j":
            raise IndexOutOfRange("t0 exists only in the odd-rank family")
        b_plus = expand_igenerator("Bi", "j", n, index=1)
        b_minus = expand_igenerator("Bi", "j", n, index=-1)
        k_half = _k_word(1) + _k_inv_word(-1)
        return (b_plus.q_bracket(b_minus, 1)
                - AlgebraWord.generator(("KB", k_half)))

    raise InvalidArgument(f"unknown generator kind {which!r}")


# -- involutions ----------------------------------------------------------


def _sigma_symbol(sym):
    kind = sym[0]
    if kind in ("E", "F"):
        return sym, R_ONE
    if kind == "D":
        return ("D", sym[1], -sym[2]), R_ONE
    if kind == "KB":
        # sigma inverts the diagonal word, so (k - k^-1) flips sign
        return sym, -R_ONE
    raise InvalidArgument(f"unknown symbol {sym}")


def _omega_symbol(sym):
    kind = sym[0]
    if kind == "E":
        return ("F", sym[1]), R_ONE
    if kind == "F":
        return ("E", sym[1]), R_ONE
    if kind == "D":
        return ("D", sym[1], -sym[2]), R_ONE
    if kind == "KB":
        return sym, -R_ONE
    raise InvalidArgument(f"unknown symbol {sym}")


def involution_word(word: AlgebraWord, which: str) -> AlgebraWord:
    """Apply the anti-involution sigma or the involution omega to a word.

    sigma reverses each word and maps E -> E, F -> F, D -> D^-1;
    omega keeps the order and maps E -> F, F -> E, D -> D^-1.
    """
    if which == "sigma":
        mapper, reverse = _sigma_symbol, True
    elif which == "omega":
        mapper, reverse = _omega_symbol, False
    else:
        raise InvalidArgument(f"unknown involution {which!r}")
    out = AlgebraWord()
    for w, c in word.terms.items():
        syms = []
        coeff = c
        for sym in (reversed(w) if reverse else w):
            new_sym, sign = mapper(sym)
            syms.append(new_sym)
            coeff = coeff * sign
        out = out + AlgebraWord.monomial(tuple(syms), coeff)
    return out


# -- idivided powers -------------------------------------------------------


def idivided_power_polynomial(parity: int, m: int):
    """The renormalized m-th power of the fixed-node generator.

    Returned as {degree: coefficient} for a polynomial in an abstract
    symbol B.  ``parity`` 0 uses even quantum integers in the quadratic
    factors, parity 1 odd ones; the 1/[m]! prefactor is exact.

        parity 0:  B * prod_{r=1..k} (B^2 - [2r]^2)     if m = 2k+1
                   prod_{r=1..k} (B^2 - [2r-2]^2)       if m = 2k
        parity 1:  B * prod_{r=1..k} (B^2 - [2r-1]^2)   if m = 2k+1
                   prod_{r=1..k} (B^2 - [2r-1]^2)       if m = 2k
    """
    if m < 0:
        raise InvalidArgument("negative idivided power")
    if parity not in (0, 1):
        raise InvalidArgument(f"parity must be 0 or 1, got {parity}")
    k, odd = divmod(m, 2)
    poly = {1: R_ONE} if odd else {0: R_ONE}
    for r in range(1, k + 1):
        if parity == 0:
            root = qint(2 * r) if odd else qint(2 * r - 2)
        else:
            root = qint(2 * r - 1)
        c = root * root
        nxt = {}
        for deg, coeff in poly.items():
            nxt[deg + 2] = nxt.get(deg + 2, RatScalar(0)) + coeff
            low = nxt.get(deg, RatScalar(0)) - coeff * c
            if low:
                nxt[deg] = low
            elif deg in nxt and not nxt[deg]:
                del nxt[deg]
        poly = {d: c2 for d, c2 in nxt.items() if c2}
    inv_fact = qfact(m).inv()
    return {d: c2 * inv_fact for d, c2 in poly.items()}


def apply_idivided_power(op_apply, parity: int, m: int, v):
    """Evaluate the idivided power polynomial on a vector.

    ``op_apply`` maps vector -> vector.  The quadratic factors nest, so the
    product is evaluated factor by factor; a vector killed by an inner
    factor stays zero.
    """
    from .freemod import SparseVector

    if m == 0:
        return v
    k, odd = divmod(m, 2)
    w = v
    for r in range(1, k + 1):
        if parity == 0:
            root = qint(2 * r) if odd else qint(2 * r - 2)
        else:
            root = qint(2 * r - 1)
        c = root * root
        w = op_apply(op_apply(w)) - w.scale(c)
        if w.is_zero:
            return SparseVector()
    if odd:
        w = op_apply(w)
    return w.scale(qfact(m).inv())


# -- weight parity ----------------------------------------------------------


def weight_parity(mu, big_n: int) -> int:
    """The class of mu_{-1/2} + mu_{1/2} + 1 mod 2; needs even ambient rank.

    ``mu`` maps doubled diagonal indices to integers.
    """
    if big_n % 2:
        raise OddRank("weight parity is only defined for even ambient rank")
    return (mu.get(-1, 0) + mu.get(1, 0) + 1) % 2

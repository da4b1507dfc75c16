"""m-fold derivations, their Leibniz extensions, and cyclic normal forms.

A ``MultiDerivation`` sends the algebra into its m-th tensor power and obeys
D(ab) = a D(b) + D(a) b with the outer bimodule action.  It is stored by its
values on generator letters; the differential-polynomial partial derivatives
and total derivative are available as built-ins with unbounded alphabets.
"""

from __future__ import annotations

from .presentation import Presentation, idem, is_idem
from .tensors import (NCPoly, TensorElem, _add_term, insert_at, mult_all,
                      star_left, star_right)


class MultiDerivation:
    """An m-fold derivation given by a rule on generator letters."""

    __slots__ = ("pres", "arity", "rule", "_cache")

    def __init__(self, pres, arity, rule):
        self.pres = pres
        self.arity = arity
        self.rule = rule  # letter -> TensorElem(arity) (or zero)
        self._cache = {}

    @staticmethod
    def from_table(pres, arity, table):
        """Derivation from a dict {letter: TensorElem(arity)}; absent letters map to 0."""
        def rule(g):
            val = table.get(g)
            if val is None:
                return TensorElem.zero(pres, arity)
            return val
        return MultiDerivation(pres, arity, rule)

    def on_letter(self, g):
        val = self._cache.get(g)
        if val is None:
            val = self.rule(g)
            if val.arity != self.arity:
                raise ValueError("derivation rule has wrong arity")
            self._cache[g] = val
        return val

    def on_monomial(self, mono):
        """Leibniz expansion: sum over letters of prefix . D(letter) . suffix."""
        pres = self.pres
        if is_idem(mono):
            return TensorElem.zero(pres, self.arity)
        out = TensorElem.zero(pres, self.arity)
        for k, g in enumerate(mono):
            val = self.on_letter(g)
            if not val:
                continue
            pre, suf = mono[:k], mono[k + 1:]
            term = val
            if pre:
                term = star_left(NCPoly.monomial(pres, pre), 0, term)
            if suf:
                term = star_right(term, 0, NCPoly.monomial(pres, suf))
            out.iadd(term)
        return out

    def __call__(self, a):
        """Apply to an NCPoly."""
        out = TensorElem.zero(self.pres, self.arity)
        for mono, c in a.terms.items():
            out.iadd(self.on_monomial(mono).scale(c))
        return out

    def at_slot(self, t, i):
        """D_(i): act on slot i (1-based) of a tensor, splicing the result in."""
        n = t.arity
        if not (1 <= i <= n):
            raise ValueError(f"slot {i} out of range for arity {n}")
        pres = self.pres
        out = TensorElem.zero(pres, n + self.arity - 1)
        for key, c in t.terms.items():
            mid = self.on_monomial(key[i - 1])
            if not mid:
                continue
            head, tail = key[:i - 1], key[i:]
            for mk, mc in mid.terms.items():
                _add_term(out.terms, head + mk + tail, c * mc)
        return out

    def extend(self, t):
        """Sum of the slot actions: the canonical extension to tensor powers."""
        out = TensorElem.zero(self.pres, t.arity + self.arity - 1)
        for i in range(1, t.arity + 1):
            out.iadd(self.at_slot(t, i))
        return out

    def as_derivation(self):
        """mult o D, an ordinary derivation of the algebra."""
        pres = self.pres

        def rule(g):
            return mult_all(self.on_letter(g)).to_tensor()
        return MultiDerivation(pres, 1, rule)


def extend_derivation(D, t, slot=None):
    """Spec entry point: slot action when ``slot`` is given, else all slots."""
    if slot is None:
        return D.extend(t)
    return D.at_slot(t, slot)


def derivation_from_values(pres, values):
    """1-fold derivation from {letter: NCPoly}."""
    table = {g: v.to_tensor() for g, v in values.items()}
    return MultiDerivation.from_table(pres, 1, table)


def partial_derivative(pres, i, p=None):
    """The double derivation d/du_i^(p) on a diffpoly presentation.

    With p=None and a free/quiver presentation, the double derivation
    sending generator i to 1 (x) 1 and the others to 0.
    """
    if pres.kind == "diffpoly":
        if p is None:
            p = 0
        letter = pres.diff_letter(i, p)
    else:
        letter = i
    one = TensorElem.from_monomials(pres, (idem(0), idem(0)))

    def rule(g):
        if g == letter:
            return one
        return TensorElem.zero(pres, 2)
    return MultiDerivation(pres, 2, rule)


def quiver_partial(pres, i):
    """d/du_i on a path algebra: u_j -> delta_ij e_t(i) (x) e_h(i)."""
    val = TensorElem.from_monomials(
        pres, (idem(pres.source[i]), idem(pres.target[i])))

    def rule(g):
        if g == i:
            return val
        return TensorElem.zero(pres, 2)
    return MultiDerivation(pres, 2, rule)


def total_derivative(pres):
    """The derivation of a diffpoly algebra raising superscripts by one."""
    if pres.kind != "diffpoly":
        raise ValueError("total derivative needs a diffpoly presentation")
    ell = pres.base_count

    def rule(g):
        return TensorElem.from_monomials(pres, ((g + ell,),))
    return MultiDerivation(pres, 1, rule)


def gauge_element(pres, s):
    """The double derivation a -> a e_s (x) e_s - e_s (x) e_s a."""
    es = idem(s)

    def rule(g):
        out = TensorElem.zero(pres, 2)
        m1 = pres.mono_mul((g,), es)
        if m1 is not None:
            out.iadd(TensorElem(pres, 2, {(m1, es): 1}))
        m2 = pres.mono_mul(es, (g,))
        if m2 is not None:
            out.iadd(TensorElem(pres, 2, {(es, m2): -1}))
        return out
    return MultiDerivation(pres, 2, rule)


def euler_derivation(pres):
    """E(f) = sum_i mult(u_i * df/du_i); multiplies homogeneous f by deg f."""
    def rule(g):
        if g < 0:
            return TensorElem.zero(pres, 1)
        return TensorElem.from_monomials(pres, ((g,),))
    return MultiDerivation(pres, 1, rule)


# -- cyclic classes ----------------------------------------------------------


def cyclic_representative(pres, mono):
    """Least composable rotation of a closed word; None if the class dies."""
    if is_idem(mono):
        return mono
    if pres.mono_source(mono) != pres.mono_target(mono):
        return None  # an open path is a commutator
    # every rotation of a closed composable word is again composable
    n = len(mono)
    best = mono
    for r in range(1, n):
        rot = mono[r:] + mono[:r]
        if rot < best:
            best = rot
    return best


def cyclic_normal_form(a):
    """Image of an NCPoly in A/[A,A] as {representative monomial: coefficient}."""
    pres = a.pres
    out = {}
    for mono, c in a.terms.items():
        rep = cyclic_representative(pres, mono)
        if rep is not None:
            _add_term(out, rep, c)
    return out


def in_commutator_space(a):
    """True if the element vanishes in A/[A,A]."""
    return not cyclic_normal_form(a)

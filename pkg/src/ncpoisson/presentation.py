"""Algebra presentations: free algebras, path algebras of quivers, and
algebras of noncommutative differential polynomials.

A presentation fixes the generator alphabet, the vertex data (for path
algebras) and a finite set of forbidden words (monomial relations).
Monomials are tuples of integer letters; the idempotent e_s of a path
algebra is encoded as the one-letter word ``(-1 - s,)``.

For differential polynomial algebras the letter ``i + ell * p`` stands for
the p-th derivative of the i-th variable; the alphabet is unbounded but
every stored element only touches finitely many letters.
"""

from __future__ import annotations

from dataclasses import dataclass, field

Monomial = tuple  # tuple of int letters; (-1 - s,) encodes the idempotent e_s


def idem(s):
    """The idempotent monomial e_s."""
    return (-1 - s,)


def is_idem(mono):
    return len(mono) == 1 and mono[0] < 0


def idem_vertex(mono):
    return -1 - mono[0]


@dataclass(frozen=True)
class Presentation:
    """A free, quiver (path) or differential-polynomial algebra presentation."""

    kind: str  # "free" | "quiver" | "diffpoly"
    gen_names: tuple
    source: tuple  # per-generator tail vertex (all 0 unless quiver)
    target: tuple  # per-generator head vertex
    nvertices: int = 1
    relations: frozenset = field(default_factory=frozenset)
    base_count: int = 0  # number of base variables (diffpoly only)

    def __post_init__(self):
        if self.kind not in ("free", "quiver", "diffpoly"):
            raise ValueError(f"unknown presentation kind {self.kind!r}")
        if self.kind == "diffpoly" and self.relations:
            raise ValueError("diffpoly presentations admit no relations")
        for rel in self.relations:
            if not rel or any(g < 0 for g in rel):
                raise ValueError("relations must be nonempty words in generators")
        for g in range(len(self.source)):
            if not (0 <= self.source[g] < self.nvertices
                    and 0 <= self.target[g] < self.nvertices):
                raise ValueError("generator endpoints outside vertex set")

    # -- letters ------------------------------------------------------------

    @property
    def ngens(self):
        return len(self.gen_names)

    def letter_source(self, g):
        if g < 0:
            return -1 - g
        if self.kind == "quiver":
            return self.source[g]
        return 0

    def letter_target(self, g):
        if g < 0:
            return -1 - g
        if self.kind == "quiver":
            return self.target[g]
        return 0

    def letter_name(self, g):
        if g < 0:
            return f"e{-1 - g}"
        if self.kind == "diffpoly":
            i, p = g % self.base_count, g // self.base_count
            base = self.gen_names[i]
            return base if p == 0 else f"{base}({p})"
        return self.gen_names[g]

    def diff_letter(self, i, p):
        """Letter for the p-th derivative of base variable i (diffpoly)."""
        if self.kind != "diffpoly":
            raise ValueError("diff_letter only makes sense for diffpoly")
        if not (0 <= i < self.base_count) or p < 0:
            raise ValueError("bad diffpoly letter")
        return i + self.base_count * p

    def split_diff_letter(self, g):
        return g % self.base_count, g // self.base_count

    # -- monomials ----------------------------------------------------------

    def mono_source(self, mono):
        return self.letter_source(mono[0]) if mono else 0

    def mono_target(self, mono):
        return self.letter_target(mono[-1]) if mono else 0

    def composable(self, mono):
        """Consecutive letters compose head-to-tail."""
        if is_idem(mono):
            return True
        for a, b in zip(mono, mono[1:]):
            if self.letter_target(a) != self.letter_source(b):
                return False
        return True

    def is_normal(self, mono):
        """No forbidden subword occurs."""
        if not self.relations or is_idem(mono):
            return True
        n = len(mono)
        for rel in self.relations:
            k = len(rel)
            if k <= n:
                for i in range(n - k + 1):
                    if mono[i:i + k] == rel:
                        return False
        return True

    def mono_mul(self, m1, m2):
        """Product of two monomials; None when it is zero."""
        if is_idem(m1):
            s = idem_vertex(m1)
            if is_idem(m2):
                return m1 if s == idem_vertex(m2) else None
            return m2 if self.mono_source(m2) == s else None
        if is_idem(m2):
            return m1 if self.mono_target(m1) == idem_vertex(m2) else None
        if self.mono_target(m1) != self.mono_source(m2):
            return None
        prod = m1 + m2
        if self.relations and not self._normal_across(prod, len(m1)):
            return None
        return prod

    def _normal_across(self, mono, cut):
        # only subwords overlapping the junction can be newly forbidden
        for rel in self.relations:
            k = len(rel)
            lo = max(0, cut - k + 1)
            hi = min(len(mono) - k, cut)
            for i in range(lo, hi + 1):
                if mono[i:i + k] == rel:
                    return False
        return True

    def mono_degree(self, mono):
        return 0 if is_idem(mono) else len(mono)

    def mono_weight(self, mono):
        """Total derivative order of a diffpoly monomial."""
        if is_idem(mono):
            return 0
        if self.kind != "diffpoly":
            return 0
        ell = self.base_count
        return sum(g // ell for g in mono)

    def mono_str(self, mono):
        if not mono:
            return "1"
        return ".".join(self.letter_name(g) for g in mono)

    def unit_monomials(self):
        """Monomials summing to the unit (the idempotents; just e_0 when |S|=1)."""
        return [idem(s) for s in range(self.nvertices)]

    def sort_key(self, mono):
        return (self.mono_degree(mono), mono)


def free_presentation(names):
    names = tuple(names)
    n = len(names)
    return Presentation("free", names, (0,) * n, (0,) * n, 1)


def quotient_presentation(names, relations):
    """Free algebra modulo monomial relations, given as words of letter indices."""
    names = tuple(names)
    n = len(names)
    return Presentation("free", names, (0,) * n, (0,) * n, 1,
                        frozenset(tuple(r) for r in relations))


def quiver_presentation(names, source, target, nvertices, relations=()):
    return Presentation("quiver", tuple(names), tuple(source), tuple(target),
                        nvertices, frozenset(tuple(r) for r in relations))


def diffpoly_presentation(base_names):
    base_names = tuple(base_names)
    return Presentation("diffpoly", base_names, (), (), 1,
                        base_count=len(base_names))


def double_quiver_presentation(arrow_names, source, target, nvertices):
    """The double of a quiver: one reversed arrow appended per original arrow."""
    names = tuple(arrow_names) + tuple(a + "*" for a in arrow_names)
    return quiver_presentation(names, tuple(source) + tuple(target),
                               tuple(target) + tuple(source), nvertices)

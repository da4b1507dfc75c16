"""Exact arithmetic in an algebra and its tensor powers.

``NCPoly`` is a sparse rational combination of monomials, ``TensorElem`` a
sparse combination of n-tuples of monomials (an element of the n-fold tensor
power).  All coefficients are exact: Python ints or ``fractions.Fraction``.

Slot operations follow the usual conventions:

* product of tensors is slotwise,
* ``bullet`` multiplies two 2-tensors as (a'@a'')(b'@b'') = a'b' @ b''a'',
* ``star_left(b, j, t)`` multiplies slot j+1 of t on the left by b,
  ``star_right(t, j, b)`` multiplies slot n-j on the right,
* ``insert_at(t, i, C)`` splices C between slots n-i and n-i+1,
* ``contract_at(t, i)`` multiplies slots i and i+1 together.
"""

from __future__ import annotations

from .presentation import Presentation, idem, is_idem


class PresentationMismatch(ValueError):
    pass


def _check_same(p1, p2):
    if p1 is not p2 and p1 != p2:
        raise PresentationMismatch("operands live over different presentations")


def _add_term(terms, key, coeff):
    c = terms.get(key)
    if c is None:
        if coeff:
            terms[key] = coeff
    else:
        c = c + coeff
        if c:
            terms[key] = c
        else:
            del terms[key]


class NCPoly:
    """Sparse scalar combination of monomials over a presentation."""

    __slots__ = ("pres", "terms")

    def __init__(self, pres, terms=None):
        self.pres = pres
        self.terms = {} if terms is None else terms

    # -- constructors ---------------------------------------------------

    @staticmethod
    def zero(pres):
        return NCPoly(pres)

    @staticmethod
    def one(pres):
        t = {}
        for m in pres.unit_monomials():
            t[m] = 1
        return NCPoly(pres, t)

    @staticmethod
    def gen(pres, g):
        return NCPoly(pres, {(g,): 1})

    @staticmethod
    def idempotent(pres, s):
        return NCPoly(pres, {idem(s): 1})

    @staticmethod
    def monomial(pres, mono, coeff=1):
        if not pres.composable(mono) or not pres.is_normal(mono):
            return NCPoly(pres)
        return NCPoly(pres, {tuple(mono): coeff} if coeff else {})

    @staticmethod
    def word(pres, letters, coeff=1):
        """Product of the given generator letters (zero if not composable)."""
        return NCPoly.monomial(pres, tuple(letters), coeff)

    # -- arithmetic -------------------------------------------------------

    def __add__(self, other):
        _check_same(self.pres, other.pres)
        t = dict(self.terms)
        for k, c in other.terms.items():
            _add_term(t, k, c)
        return NCPoly(self.pres, t)

    def __sub__(self, other):
        _check_same(self.pres, other.pres)
        t = dict(self.terms)
        for k, c in other.terms.items():
            _add_term(t, k, -c)
        return NCPoly(self.pres, t)

    def __neg__(self):
        return NCPoly(self.pres, {k: -c for k, c in self.terms.items()})

    def scale(self, c):
        if not c:
            return NCPoly(self.pres)
        return NCPoly(self.pres, {k: c * v for k, v in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, NCPoly):
            return self.scale(other)
        _check_same(self.pres, other.pres)
        pres = self.pres
        mono_mul = pres.mono_mul
        out = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = mono_mul(m1, m2)
                if m is not None:
                    _add_term(out, m, c1 * c2)
        return NCPoly(pres, out)

    __rmul__ = scale

    def __eq__(self, other):
        return (isinstance(other, NCPoly) and self.pres == other.pres
                and self.terms == other.terms)

    def __hash__(self):
        return hash((self.pres, frozenset(self.terms.items())))

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def degree(self):
        if not self.terms:
            return -1
        return max(self.pres.mono_degree(m) for m in self.terms)

    def homogeneous_parts(self):
        parts = {}
        for m, c in self.terms.items():
            parts.setdefault(self.pres.mono_degree(m), {})[m] = c
        return {d: NCPoly(self.pres, t) for d, t in sorted(parts.items())}

    def __repr__(self):
        if not self.terms:
            return "0"
        bits = []
        for m in sorted(self.terms, key=self.pres.sort_key):
            c = self.terms[m]
            bits.append(f"{c}*{self.pres.mono_str(m)}" if c != 1
                        else self.pres.mono_str(m))
        return " + ".join(bits)

    def to_tensor(self):
        return TensorElem(self.pres, 1, {(m,): c for m, c in self.terms.items()})


class TensorElem:
    """Sparse element of the n-th tensor power of the algebra."""

    __slots__ = ("pres", "arity", "terms")

    def __init__(self, pres, arity, terms=None):
        self.pres = pres
        self.arity = arity
        self.terms = {} if terms is None else terms

    @staticmethod
    def zero(pres, arity):
        return TensorElem(pres, arity)

    @staticmethod
    def scalar(pres, c):
        return TensorElem(pres, 0, {(): c} if c else {})

    @staticmethod
    def from_monomials(pres, monos, coeff=1):
        monos = tuple(tuple(m) for m in monos)
        for m in monos:
            if not pres.composable(m) or not pres.is_normal(m):
                return TensorElem(pres, len(monos))
        return TensorElem(pres, len(monos), {monos: coeff} if coeff else {})

    @staticmethod
    def from_polys(*polys):
        """Tensor product of NCPoly factors."""
        pres = polys[0].pres
        out = TensorElem(pres, 0, {(): 1})
        for p in polys:
            _check_same(pres, p.pres)
            t = {}
            for key, c in out.terms.items():
                for m, c2 in p.terms.items():
                    t[key + (m,)] = c * c2
            out = TensorElem(pres, out.arity + 1, t)
        return out

    # -- linear structure -------------------------------------------------

    def _assert_compat(self, other):
        _check_same(self.pres, other.pres)
        if self.arity != other.arity:
            raise ValueError(f"arity mismatch: {self.arity} vs {other.arity}")

    def __add__(self, other):
        self._assert_compat(other)
        t = dict(self.terms)
        for k, c in other.terms.items():
            _add_term(t, k, c)
        return TensorElem(self.pres, self.arity, t)

    def __sub__(self, other):
        self._assert_compat(other)
        t = dict(self.terms)
        for k, c in other.terms.items():
            _add_term(t, k, -c)
        return TensorElem(self.pres, self.arity, t)

    def __neg__(self):
        return TensorElem(self.pres, self.arity,
                          {k: -c for k, c in self.terms.items()})

    def scale(self, c):
        if not c:
            return TensorElem(self.pres, self.arity)
        return TensorElem(self.pres, self.arity,
                          {k: c * v for k, v in self.terms.items()})

    __rmul__ = scale

    def iadd(self, other):
        """In-place accumulation (other must be compatible)."""
        self._assert_compat(other)
        t = self.terms
        for k, c in other.terms.items():
            _add_term(t, k, c)
        return self

    def __eq__(self, other):
        return (isinstance(other, TensorElem) and self.pres == other.pres
                and self.arity == other.arity and self.terms == other.terms)

    def __hash__(self):
        return hash((self.arity, frozenset(self.terms.items())))

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    # -- multiplicative structure ------------------------------------------

    def __mul__(self, other):
        """Slotwise product on equal arities; scalar scaling otherwise."""
        if not isinstance(other, TensorElem):
            return self.scale(other)
        self._assert_compat(other)
        pres = self.pres
        mono_mul = pres.mono_mul
        n = self.arity
        out = {}
        for k1, c1 in self.terms.items():
            for k2, c2 in other.terms.items():
                key = []
                for i in range(n):
                    m = mono_mul(k1[i], k2[i])
                    if m is None:
                        break
                    key.append(m)
                else:
                    _add_term(out, tuple(key), c1 * c2)
        return TensorElem(pres, n, out)

    def tensor(self, other):
        _check_same(self.pres, other.pres)
        out = {}
        for k1, c1 in self.terms.items():
            for k2, c2 in other.terms.items():
                _add_term(out, k1 + k2, c1 * c2)
        return TensorElem(self.pres, self.arity + other.arity, out)

    def degree(self):
        if not self.terms:
            return -1
        dg = self.pres.mono_degree
        return max(sum(dg(m) for m in k) for k in self.terms)

    def homogeneous_parts(self):
        dg = self.pres.mono_degree
        parts = {}
        for k, c in self.terms.items():
            parts.setdefault(sum(dg(m) for m in k), {})[k] = c
        return {d: TensorElem(self.pres, self.arity, t)
                for d, t in sorted(parts.items())}

    def __repr__(self):
        if not self.terms:
            return "0"
        ms = self.pres.mono_str
        bits = []
        for k in sorted(self.terms, key=lambda key: tuple(map(self.pres.sort_key, key))):
            c = self.terms[k]
            body = "|".join(ms(m) for m in k) if k else "1"
            bits.append(body if c == 1 else f"{c}*{body}")
        return " + ".join(bits)


# -- slot operations --------------------------------------------------------


def tensor_permute(t, tau):
    """Permutation action: slot i of the input lands in slot tau[i]."""
    n = t.arity
    if len(tau) != n or sorted(tau) != list(range(n)):
        raise ValueError("tau is not a permutation of the slot set")
    out = {}
    for key, c in t.terms.items():
        new = [None] * n
        for i, m in enumerate(key):
            new[tau[i]] = m
        _add_term(out, tuple(new), c)
    return TensorElem(t.pres, n, out)


def sigma_pow(t, k):
    """Power of the cyclic rotation sending slot i to slot i+1."""
    n = t.arity
    if n == 0:
        return t
    k %= n
    if k == 0:
        return t
    out = {}
    for key, c in t.terms.items():
        _add_term(out, key[-k:] + key[:-k], c)
    return TensorElem(t.pres, n, out)


def bullet(c1, c2):
    """(a'@a'') . (b'@b'') = a'b' @ b''a'' on 2-tensors."""
    if c1.arity != 2 or c2.arity != 2:
        raise ValueError("bullet product needs two 2-tensors")
    pres = c1.pres
    mono_mul = pres.mono_mul
    out = {}
    for (a1, a2), x in c1.terms.items():
        for (b1, b2), y in c2.terms.items():
            m1 = mono_mul(a1, b1)
            if m1 is None:
                continue
            m2 = mono_mul(b2, a2)
            if m2 is None:
                continue
            _add_term(out, (m1, m2), x * y)
    return TensorElem(pres, 2, out)


def bullet_at(t, i, C, side="right"):
    """Bullet action of a 2-tensor C on t.

    side="right": act in slots (i, i+1), 1 <= i <= n-1:
        a_1 @ ... @ a_i c' @ c'' a_{i+1} @ ... @ a_n.
    side="left": C . t = c' a_1 @ ... @ a_n c''  (i ignored).
    """
    pres = t.pres
    _check_same(pres, C.pres)
    if C.arity != 2:
        raise ValueError("bullet action needs a 2-tensor")
    n = t.arity
    mono_mul = pres.mono_mul
    out = {}
    if side == "left":
        if n == 0:
            raise ValueError("left bullet action needs arity >= 1")
        for key, x in t.terms.items():
            for (c1, c2), y in C.terms.items():
                first = mono_mul(c1, key[0])
                if first is None:
                    continue
                if n == 1:
                    m = mono_mul(first, c2)
                    if m is not None:
                        _add_term(out, (m,), x * y)
                else:
                    last = mono_mul(key[-1], c2)
                    if last is not None:
                        _add_term(out, (first,) + key[1:-1] + (last,), x * y)
        return TensorElem(pres, n, out)
    if not (1 <= i <= n - 1):
        raise ValueError(f"bullet position {i} out of range for arity {n}")
    for key, x in t.terms.items():
        for (c1, c2), y in C.terms.items():
            mi = mono_mul(key[i - 1], c1)
            if mi is None:
                continue
            mj = mono_mul(c2, key[i])
            if mj is None:
                continue
            _add_term(out, key[:i - 1] + (mi, mj) + key[i + 1:], x * y)
    return TensorElem(pres, n, out)


def star_left(b, j, t):
    """b *_j t: multiply slot j+1 on the left by b, 0 <= j <= n-1."""
    _check_same(b.pres, t.pres)
    n = t.arity
    if not (0 <= j <= n - 1):
        raise ValueError(f"star position {j} out of range for arity {n}")
    mono_mul = t.pres.mono_mul
    out = {}
    for key, x in t.terms.items():
        for m, y in b.terms.items():
            mj = mono_mul(m, key[j])
            if mj is not None:
                _add_term(out, key[:j] + (mj,) + key[j + 1:], x * y)
    return TensorElem(t.pres, n, out)


def star_right(t, j, b):
    """t *_j b: multiply slot n-j on the right by b, 0 <= j <= n-1."""
    _check_same(b.pres, t.pres)
    n = t.arity
    if not (0 <= j <= n - 1):
        raise ValueError(f"star position {j} out of range for arity {n}")
    pos = n - j - 1  # 0-indexed slot n-j
    mono_mul = t.pres.mono_mul
    out = {}
    for key, x in t.terms.items():
        for m, y in b.terms.items():
            mj = mono_mul(key[pos], m)
            if mj is not None:
                _add_term(out, key[:pos] + (mj,) + key[pos + 1:], x * y)
    return TensorElem(t.pres, n, out)


def star_at(t, j, b, side):
    """Star module action; side="left" is b *_j t, side="right" is t *_j b."""
    if side == "left":
        return star_left(b, j, t)
    if side == "right":
        return star_right(t, j, b)
    raise ValueError("side must be 'left' or 'right'")


def outer(a, t, b):
    """Outer bimodule action a t b = (a *_0 t) *_0 b."""
    return star_right(star_left(a, 0, t), 0, b)


def insert_at(t, i, C):
    """(a_1 @ ... @ a_n) @_i C: splice C between slots n-i and n-i+1."""
    _check_same(t.pres, C.pres)
    n = t.arity
    if not (0 <= i <= n):
        raise ValueError(f"insertion index {i} out of range for arity {n}")
    cut = n - i
    out = {}
    for key, x in t.terms.items():
        head, tail = key[:cut], key[cut:]
        for ck, y in C.terms.items():
            _add_term(out, head + ck + tail, x * y)
    return TensorElem(t.pres, n + C.arity, out)


def contract_at(t, i):
    """mult_{(i,i+1)}: multiply slots i and i+1, 1 <= i <= n-1."""
    n = t.arity
    if not (1 <= i <= n - 1):
        raise ValueError(f"contraction index {i} out of range for arity {n}")
    mono_mul = t.pres.mono_mul
    out = {}
    for key, x in t.terms.items():
        m = mono_mul(key[i - 1], key[i])
        if m is not None:
            _add_term(out, key[:i - 1] + (m,) + key[i + 1:], x)
    return TensorElem(t.pres, n - 1, out)


def mult_all(t):
    """Multiply all slots together, landing in the algebra."""
    out = t
    while out.arity > 1:
        out = contract_at(out, 1)
    pres = t.pres
    if out.arity == 1:
        return NCPoly(pres, {k[0]: c for k, c in out.terms.items()})
    # arity 0: scalar times the unit
    c = out.terms.get((), 0)
    return NCPoly.one(pres).scale(c)

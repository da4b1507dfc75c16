"""n-brackets on associative algebras.

An n-bracket is a linear map from the n-th tensor power to itself that is
cyclically skewsymmetric and a derivation in each slot; it is stored by its
values on generator n-tuples and evaluated by Leibniz expansion.  The module
also provides the map turning words of double derivations into brackets, the
triple bracket measuring the failure of the Jacobi identity, the
Poisson/quasi-Poisson classification, and the differential of the completed
cohomology complex together with its square-zero check.
"""

from __future__ import annotations

from fractions import Fraction

from .derivations import cyclic_normal_form
from .presentation import idem, is_idem
from .tensors import (NCPoly, TensorElem, _add_term, insert_at, mult_all,
                      sigma_pow, star_left, star_right, tensor_permute)


class BracketError(ValueError):
    pass


class NBracket:
    """A B-linear n-bracket stored by its generator table."""

    __slots__ = ("pres", "arity", "table", "_eval_cache")

    def __init__(self, pres, arity, table):
        self.pres = pres
        self.arity = arity
        self.table = table  # {tuple of letters: TensorElem(arity)}
        self._eval_cache = {}

    # -- construction -------------------------------------------------------

    @staticmethod
    def zero(pres, arity):
        return NBracket(pres, arity, {})

    def copy_scaled(self, c):
        return NBracket(self.pres, self.arity,
                        {k: v.scale(c) for k, v in self.table.items()})

    def __add__(self, other):
        if self.arity != other.arity:
            raise BracketError("arity mismatch")
        table = {k: v for k, v in self.table.items()}
        for k, v in other.table.items():
            cur = table.get(k)
            table[k] = v if cur is None else cur + v
        return NBracket(self.pres, self.arity,
                        {k: v for k, v in table.items() if v})

    def __sub__(self, other):
        return self + other.copy_scaled(-1)

    def is_zero(self):
        return all(v.is_zero() for v in self.table.values())

    def entry(self, gens):
        val = self.table.get(tuple(gens))
        if val is None:
            return TensorElem.zero(self.pres, self.arity)
        return val

    # -- evaluation ---------------------------------------------------------

    def eval_monomials(self, monos):
        """Value on a tuple of monomials, by cyclic rotation + Leibniz."""
        key = tuple(monos)
        cached = self._eval_cache.get(key)
        if cached is not None:
            return cached
        pres = self.pres
        n = self.arity
        zero = TensorElem.zero(pres, n)
        # B-linearity: vanish when any slot is an idempotent
        for m in key:
            if is_idem(m):
                self._eval_cache[key] = zero
                return zero
        if all(len(m) == 1 for m in key):
            out = self.entry(tuple(m[0] for m in key))
            self._eval_cache[key] = out
            return out
        # rotate the rightmost longest slot into the last position; after the
        # rotation that slot is last, so the next call takes the Leibniz path
        j = max(range(n), key=lambda i: (len(key[i]), i))  # 0-based
        if j != n - 1:
            t = j + 1  # rotation count bringing slot j+1 (1-based) last
            rotated = key[t:] + key[:t]
            sign = -1 if ((n - 1) * t) % 2 else 1
            inner = self.eval_monomials(rotated)
            out = sigma_pow(inner, t).scale(sign)
            self._eval_cache[key] = out
            return out
        # Leibniz in the last slot: B(..., g w) = g B(..., w) + B(..., g) w
        w = key[-1]
        g, rest = w[:1], w[1:]
        head = key[:-1]
        left = self.eval_monomials(head + (rest,))
        gp = NCPoly.monomial(pres, g)
        out = star_left(gp, 0, left)
        right = self.eval_monomials(head + (g,))
        out = out + star_right(right, 0, NCPoly.monomial(pres, rest))
        self._eval_cache[key] = out
        return out

    def eval(self, *args):
        """Multilinear evaluation on NCPoly arguments."""
        if len(args) != self.arity:
            raise BracketError(
                f"expected {self.arity} arguments, got {len(args)}")
        pres = self.pres
        for a in args:
            if a.pres != pres:
                raise BracketError("presentation mismatch")
        out = TensorElem.zero(pres, self.arity)
        items = [list(a.terms.items()) for a in args]
        def rec(i, monos, coeff):
            if i == len(items):
                out.iadd(self.eval_monomials(tuple(monos)).scale(coeff))
                return
            for m, c in items[i]:
                rec(i + 1, monos + [m], coeff * c)
        rec(0, [], 1)
        return out

    # -- structure ----------------------------------------------------------

    def cyclic_defect(self):
        """Largest violation of table(g2..gn,g1) = (-1)^(n-1) sigma^{-1} table(g1..gn)."""
        n = self.arity
        sign = -1 if (n - 1) % 2 else 1
        for gens, val in self.table.items():
            rot = gens[1:] + gens[:1]
            expected = sigma_pow(val, -1).scale(sign)
            got = self.entry(rot)
            if got != expected:
                return gens, got - expected
        return None

    def weight_parts(self):
        """Split the table into entry-degree homogeneous brackets."""
        parts = {}
        for gens, val in self.table.items():
            for d, piece in val.homogeneous_parts().items():
                parts.setdefault(d, {})[gens] = piece
        return {d: NBracket(self.pres, self.arity, t)
                for d, t in sorted(parts.items())}


def make_nbracket(pres, arity, table, complete=True):
    """Build and validate an n-bracket from (part of) its generator table.

    The table is completed along cyclic orbits using the skewsymmetry rule;
    inconsistent assignments raise ``BracketError``.
    """
    n = arity
    sign = -1 if (n - 1) % 2 else 1
    full = {}
    for gens, val in table.items():
        gens = tuple(gens)
        if val.arity != n:
            raise BracketError("table entry has wrong arity")
        cur, v = gens, val
        for _ in range(n):
            if cur in full:
                if full[cur] != v:
                    raise BracketError(
                        f"cyclic-consistency violation at {cur}")
            else:
                if v:
                    full[cur] = v
            cur = cur[1:] + cur[:1]
            v = sigma_pow(v, -1).scale(sign)
    br = NBracket(pres, n, full)
    defect = br.cyclic_defect() if complete else None
    if defect is not None:
        raise BracketError(f"cyclic skewsymmetry fails at {defect[0]}")
    _check_endpoints(br)
    return br


def _check_endpoints(br):
    """Entries must respect path-composability slot by slot.

    Checking the outer boundary e_t(g_n) . value . e_h(g_n) on every table
    entry suffices: combined with the cyclic completion each slot boundary
    appears as the outer one of some rotation.
    """
    pres = br.pres
    if pres.kind != "quiver":
        return
    for gens, val in br.table.items():
        lead = NCPoly.idempotent(pres, pres.source[gens[br.arity - 1]])
        trail = NCPoly.idempotent(pres, pres.target[gens[br.arity - 1]])
        projected = star_right(star_left(lead, 0, val), 0, trail)
        if projected != val:
            raise BracketError(
                f"entry at {gens} has endpoint-incompatible terms")


def bracket_from_word(pres, word, coefficients=None):
    """The n-bracket of a word of double derivations with interleaved
    coefficients: [c0, D1, c1, D2, ..., Dn, cn] with NCPoly ci.

    ``word`` is a list of MultiDerivation (each of arity 2); coefficients, if
    given, has length n+1.  The trailing coefficient is rotated to the front
    (the construction only depends on the word modulo graded commutators).
    """
    n = len(word)
    if n < 1:
        raise BracketError("need at least one double derivation")
    if coefficients is None:
        coefficients = [None] * (n + 1)
    cs = list(coefficients)
    # absorb the trailing coefficient cyclically into the front one
    front = cs[0]
    if cs[n] is not None:
        front = cs[n] if front is None else cs[n] * front
    mods = []
    for i, delta in enumerate(word):
        coef = front if i == 0 else cs[i]
        mods.append(_inner_scaled(delta, coef))

    table = {}
    gens = range(pres.ngens)
    import itertools
    for tup in itertools.product(gens, repeat=n):
        base = _mu_tilde(pres, mods, tup)
        total = TensorElem.zero(pres, n)
        for i in range(n):
            rot = tup[i:] + tup[:i]
            val = _mu_tilde(pres, mods, rot)
            sign = -1 if ((n - 1) * i) % 2 else 1
            total.iadd(sigma_pow(val, i).scale(sign))
        if total:
            table[tup] = total
    return make_nbracket(pres, n, table)


def _inner_scaled(delta, coef):
    """The double derivation x -> delta(x)' (x) coef * delta(x)''  (inner
    left multiplication by the absorbed coefficient)."""
    if coef is None:
        return delta
    pres = delta.pres
    from .derivations import MultiDerivation

    def rule(g):
        val = delta.on_letter(g)
        return star_left(coef, 1, val)
    return MultiDerivation(pres, 2, rule)


def _mu_tilde(pres, deltas, gens):
    """d_n(a_n)' d_1(a_1)'' (x) d_1(a_1)' d_2(a_2)'' (x) ... (x)
    d_{n-1}(a_{n-1})' d_n(a_n)''."""
    import itertools
    n = len(deltas)
    vals = [deltas[i].on_monomial((gens[i],)) for i in range(n)]
    if any(not v for v in vals):
        return TensorElem.zero(pres, n)
    mono_mul = pres.mono_mul
    out = {}
    for combo in itertools.product(*[list(v.terms.items()) for v in vals]):
        coeff = 1
        picked = []
        for key, c in combo:
            coeff *= c
            picked.append(key)  # (first, second) factors of delta_i(a_i)
        slots = []
        for j in range(n):
            # 0-based slot j carries delta_{j-1}(a_{j-1})' * delta_j(a_j)''
            m = mono_mul(picked[(j - 1) % n][0], picked[j][1])
            if m is None:
                break
            slots.append(m)
        else:
            _add_term(out, tuple(slots), coeff)
    return TensorElem(pres, n, out)


# -- triple bracket and classification ---------------------------------------


def bracket_left_extension(br2, a, tensor):
    """<<a, X>>_L: apply the double bracket to the first slot of X."""
    pres = br2.pres
    n = tensor.arity
    out = TensorElem.zero(pres, n + 1)
    for key, c in tensor.terms.items():
        val = TensorElem.zero(pres, 2)
        for am, ac in a.terms.items():
            val.iadd(br2.eval_monomials((am, key[0])).scale(ac))
        if not val:
            continue
        tail = key[1:]
        for vk, vc in val.terms.items():
            _add_term(out.terms, vk + tail, c * vc)
    return out


def triple_bracket(br2, a, b, c):
    """<<a, <<b,c>> >>_L + sigma <<b, <<c,a>> >>_L + sigma^2 <<c, <<a,b>> >>_L."""
    if br2.arity != 2:
        raise BracketError("triple bracket needs a double bracket")
    t1 = bracket_left_extension(br2, a, br2.eval(b, c))
    t2 = sigma_pow(bracket_left_extension(br2, b, br2.eval(c, a)), 1)
    t3 = sigma_pow(bracket_left_extension(br2, c, br2.eval(a, b)), 2)
    return t1 + t2 + t3


def triple_bracket_table(br2):
    """Generator table of the triple bracket (a 3-bracket)."""
    import itertools
    pres = br2.pres
    table = {}
    gens = [NCPoly.gen(pres, g) for g in range(pres.ngens)]
    for i, j, k in itertools.product(range(pres.ngens), repeat=3):
        val = triple_bracket(br2, gens[i], gens[j], gens[k])
        if val:
            table[(i, j, k)] = val
    return table


def quasi_poisson_tensor(pres, s, a, b, c):
    """The idempotent-built 3-tensor multiplying q_s/4 in the quasi condition.

    c e_s a (x) e_s b (x) e_s  - c e_s a (x) e_s (x) b e_s
    - c e_s (x) a e_s b (x) e_s + c e_s (x) a e_s (x) b e_s
    - e_s a (x) e_s b (x) e_s c + e_s a (x) e_s (x) b e_s c
    + e_s (x) a e_s b (x) e_s c - e_s (x) a e_s (x) b e_s c
    """
    es = NCPoly.idempotent(pres, s)
    one = TensorElem.scalar(pres, 1)

    def tp(x, y, z):
        return TensorElem.from_polys(x, y, z)

    ca, esb, esc, aes, bes, ces, esa = (c * es * a, es * b, es * c, a * es,
                                        b * es, c * es, es * a)
    aesb = a * es * b
    besc = b * es * c
    out = tp(ca, esb, es)
    out = out - tp(ca, es, bes)
    out = out - tp(ces, aesb, es)
    out = out + tp(ces, aes, bes)
    out = out - tp(esa, esb, esc)
    out = out + tp(esa, es, besc)
    out = out + tp(es, aesb, esc)
    out = out - tp(es, aes, besc)
    return out


class JacobiReport:
    """Outcome of the Poisson / quasi-Poisson classification."""

    __slots__ = ("kind", "q", "witness", "residual")

    def __init__(self, kind, q=None, witness=None, residual=None):
        self.kind = kind          # "poisson" | "quasi-poisson" | "neither"
        self.q = q                # per-vertex scalars when quasi
        self.witness = witness    # offending generator triple when neither
        self.residual = residual  # leftover tensor on the witness

    def __repr__(self):
        if self.kind == "quasi-poisson":
            return f"JacobiReport(quasi-poisson, q={self.q})"
        if self.kind == "neither":
            return f"JacobiReport(neither, witness={self.witness})"
        return "JacobiReport(poisson)"


def classify_poisson(br2):
    """Classify a double bracket as poisson / quasi-poisson / neither."""
    import itertools
    pres = br2.pres
    table = triple_bracket_table(br2)
    if not table:
        return JacobiReport("poisson")
    gens = [NCPoly.gen(pres, g) for g in range(pres.ngens)]
    # extract candidate q_s from the coefficient of c e_s a (x) e_s b (x) e_s
    qs = {}
    es_polys = [NCPoly.idempotent(pres, s) for s in range(pres.nvertices)]
    for s in range(pres.nvertices):
        found = None
        for (i, j, k), val in sorted(table.items()):
            ref = quasi_poisson_tensor(pres, s, gens[i], gens[j], gens[k])
            probe = (gens[k] * es_polys[s] * gens[i]).terms
            if not probe:
                continue
            lead = next(iter(probe))
            key = (lead, next(iter((es_polys[s] * gens[j]).terms)),
                   (-1 - s,))
            denom = ref.terms.get(key)
            if denom:
                found = Fraction(4) * Fraction(val.terms.get(key, 0)) / denom
                break
        qs[s] = found if found is not None else Fraction(0)
    # verify globally
    for (i, j, k), val in sorted(table.items()):
        expect = TensorElem.zero(pres, 3)
        for s in range(pres.nvertices):
            if qs[s]:
                expect.iadd(quasi_poisson_tensor(
                    pres, s, gens[i], gens[j], gens[k]).scale(qs[s] / 4))
        if val != expect:
            return JacobiReport("neither", witness=(i, j, k),
                                residual=val - expect)
    if all(not q for q in qs.values()):
        return JacobiReport("poisson")
    return JacobiReport("quasi-poisson",
                        q=tuple(qs[s] for s in range(pres.nvertices)))


# -- the differential of the completed complex --------------------------------


def differential(ambient, arg):
    """The coboundary of the completed complex for a fixed ambient double
    bracket (Poisson or quasi-Poisson); degree-0 inputs are NCPoly lifts.

    Implemented through the explicit cyclic-sum formula; the operator form
    is available separately for cross-checking.
    """
    pres = ambient.pres
    if isinstance(arg, NCPoly):
        table = {}
        for g in range(pres.ngens):
            val = mult_all(ambient.eval(arg, NCPoly.gen(pres, g))).scale(-1)
            if val:
                table[(g,)] = val.to_tensor()
        return make_nbracket(pres, 1, table)
    br = arg
    n = br.arity
    import itertools
    table = {}
    gens = [NCPoly.gen(pres, g) for g in range(pres.ngens)]
    for tup in itertools.product(range(pres.ngens), repeat=n + 1):
        total = TensorElem.zero(pres, n + 1)
        for i in range(1, n + 2):
            sign = -1 if (n * i) % 2 else 1
            # indices mod n+1, 1-based positions i-1, i
            prev = tup[(i - 2) % (n + 1)]
            cur = tup[(i - 1) % (n + 1)]
            C = ambient.entry((prev, cur))
            rest = [tup[(i + t - 1) % (n + 1)] for t in range(1, n)]
            if C:
                term1 = TensorElem.zero(pres, n + 1)
                for (c1, c2), cc in C.terms.items():
                    inner = br.eval_monomials(tuple((g,) for g in rest) + (c1,))
                    if not inner:
                        continue
                    for ik, ic in inner.terms.items():
                        _add_term(term1.terms, ik + (c2,), cc * ic)
                total.iadd(sigma_pow(term1, i).scale(sign))
            X = br.eval_monomials(
                tuple((tup[(i + t - 1) % (n + 1)],) for t in range(1, n + 1)))
            if X:
                term2 = TensorElem.zero(pres, n + 1)
                ai = (cur,)
                for xk, xc in X.terms.items():
                    val = ambient.eval_monomials((ai, xk[0]))
                    if not val:
                        continue
                    tail = xk[1:]
                    for vk, vc in val.terms.items():
                        _add_term(term2.terms, vk + tail, xc * vc)
                total.iadd(sigma_pow(term2, i - 1).scale(sign))
        if total:
            table[tup] = total
    return make_nbracket(pres, n + 1, table)


def differential_operator_form(ambient, br, args):
    """Alternative formula: sum of conjugated (B (x) Id)(Id^(n-1) (x) [[ ]])
    and (-1)^n ([[ ]] (x) Id^(n-1))(Id (x) B) over cyclic shifts; used as a
    cross-check of the cyclic-sum implementation on explicit arguments."""
    pres = ambient.pres
    n = br.arity
    t = TensorElem.from_polys(*args)
    out = TensorElem.zero(pres, n + 1)
    for s in range(n + 1):
        shifted = sigma_pow(t, -s)
        # Id^(n-1) (x) [[ , ]] then B (x) Id
        mid1 = _apply_map_last_two(ambient, shifted)
        out.iadd(sigma_pow(_apply_bracket_first_n(br, mid1), s).scale(
            (-1) ** ((n * s) % 2)))
        mid2 = _apply_bracket_next_n(br, shifted)
        term = _apply_map_first_two(ambient, mid2)
        sgn = (-1) ** ((n * s + n) % 2)
        out.iadd(sigma_pow(term, s).scale(sgn))
    return out


def _apply_map_last_two(br2, t):
    pres = br2.pres
    out = TensorElem.zero(pres, t.arity)
    for key, c in t.terms.items():
        val = br2.eval_monomials((key[-2], key[-1]))
        for vk, vc in val.terms.items():
            _add_term(out.terms, key[:-2] + vk, c * vc)
    return out


def _apply_map_first_two(br2, t):
    pres = br2.pres
    out = TensorElem.zero(pres, t.arity)
    for key, c in t.terms.items():
        val = br2.eval_monomials((key[0], key[1]))
        for vk, vc in val.terms.items():
            _add_term(out.terms, vk + key[2:], c * vc)
    return out


def _apply_bracket_first_n(br, t):
    """B on the first n slots, identity on the rest."""
    pres = br.pres
    n = br.arity
    out = TensorElem.zero(pres, t.arity)
    for key, c in t.terms.items():
        val = br.eval_monomials(key[:n])
        for vk, vc in val.terms.items():
            _add_term(out.terms, vk + key[n:], c * vc)
    return out


def _apply_bracket_next_n(br, t):
    """Identity on slot 1, B on slots 2..n+1, identity on the rest."""
    pres = br.pres
    n = br.arity
    out = TensorElem.zero(pres, t.arity)
    for key, c in t.terms.items():
        val = br.eval_monomials(key[1:n + 1])
        for vk, vc in val.terms.items():
            _add_term(out.terms, key[:1] + vk + key[n + 1:], c * vc)
    return out


def check_d_squared(ambient, br):
    """(True, None) when the differential squares to zero on br, else a
    witness tuple and residual."""
    d1 = differential(ambient, br)
    d2 = differential(ambient, d1)
    for gens, val in sorted(d2.table.items()):
        if val:
            return False, (gens, val)
    return True, None


def descends_to_quotient(br, quotient_pres):
    """Does a bracket on the free cover induce one on the monomial quotient?

    Checks that the last-slot evaluation at every relation word lies in the
    slotwise tensor ideal (i.e. dies under slotwise normal form); the other
    slots follow by cyclic skewsymmetry.
    """
    pres = br.pres
    for rel in quotient_pres.relations:
        if any(g < 0 for g in rel):
            raise BracketError("relations must be monomial words")
    import itertools
    n = br.arity
    for rel in sorted(quotient_pres.relations):
        for head in itertools.product(range(pres.ngens), repeat=n - 1):
            val = br.eval_monomials(tuple((g,) for g in head) + (tuple(rel),))
            for key in val.terms:
                if all(quotient_pres.is_normal(m) for m in key):
                    return False
    return True


def restrict_to_quotient(br, quotient_pres):
    """Push a descending bracket down to the monomial quotient."""
    table = {}
    for gens, val in br.table.items():
        t = {k: c for k, c in val.terms.items()
             if all(quotient_pres.is_normal(m) for m in k)}
        if t:
            table[gens] = TensorElem(quotient_pres, br.arity, t)
    return make_nbracket(quotient_pres, br.arity, table)

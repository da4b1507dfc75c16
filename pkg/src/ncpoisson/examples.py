"""The example zoo: standard presentations and double brackets used across
the test and acceptance suites."""

from __future__ import annotations

from fractions import Fraction

from .brackets import NBracket, make_nbracket
from .presentation import (diffpoly_presentation, double_quiver_presentation,
                           free_presentation, quiver_presentation,
                           quotient_presentation)
from .tensors import NCPoly, TensorElem

KX = free_presentation(["x"])
KUV = free_presentation(["u", "v"])


def kx_power_bracket(a, b, pres=KX):
    """{{x,x}} = x^a (x) x^b - x^b (x) x^a on one generator."""
    def pw(k):
        return (0,) * k if k else (-1,)
    val = (TensorElem.from_monomials(pres, (pw(a), pw(b)))
           - TensorElem.from_monomials(pres, (pw(b), pw(a))))
    return make_nbracket(pres, 2, {(0, 0): val})


def kx_family(lam, mu, nu, pres=KX):
    """{{x,x}} = nu(x^2@x - x@x^2) + mu(x^2@1 - 1@x^2) + lam(x@1 - 1@x)."""
    def pw(k):
        return (0,) * k if k else (-1,)
    terms = {}
    for coef, (i, j) in ((nu, (2, 1)), (mu, (2, 0)), (lam, (1, 0))):
        if coef:
            t = (TensorElem.from_monomials(pres, (pw(i), pw(j)))
                 - TensorElem.from_monomials(pres, (pw(j), pw(i)))).scale(coef)
            terms[(0, 0)] = terms.get(
                (0, 0), TensorElem.zero(pres, 2)) + t
    return make_nbracket(pres, 2, terms)


def quartic_bracket(pres=KUV):
    """{{u,v}} = vu (x) uv with {{u,u}} = {{v,v}} = 0."""
    val = TensorElem.from_monomials(pres, ((1, 0), (0, 1)))
    return make_nbracket(pres, 2, {(0, 1): val})


def quiver_constant_bracket(pres, C):
    """{{u_i, u_j}} = C_ij e_t(j) (x) e_h(j) for a skew invertible matrix C
    supported on opposite arrow pairs."""
    ngen = pres.ngens
    table = {}
    for i in range(ngen):
        for j in range(ngen):
            c = C[i][j]
            if not c:
                continue
            if pres.kind == "quiver":
                if (pres.source[i] != pres.target[j]
                        or pres.target[i] != pres.source[j]):
                    raise ValueError(
                        f"C[{i}][{j}] nonzero on non-opposite arrows")
                val = TensorElem.from_monomials(
                    pres, ((-1 - pres.source[j],), (-1 - pres.target[j],)))
            else:
                val = TensorElem.from_monomials(pres, ((-1,), (-1,)))
            table[(i, j)] = val.scale(c)
    return make_nbracket(pres, 2, table)


SYMPLECTIC2 = ((0, 1), (-1, 0))

TWO_LOOPS = free_presentation(["a", "b"])
DOUBLE_ARROW = double_quiver_presentation(["a"], [0], [1], 2)

KX_MOD = {r: quotient_presentation(["x"], [(0,) * r]) for r in (2, 3, 4)}
KUV_TRUNC = quotient_presentation(["u", "v"], [(0, 0), (1, 1)])


def zero_bracket(pres):
    return NBracket.zero(pres, 2)

import random

import pytest

from ncpoisson.presentation import (diffpoly_presentation,
                                    double_quiver_presentation,
                                    free_presentation, quotient_presentation)


@pytest.fixture
def kx():
    return free_presentation(["x"])


@pytest.fixture
def kxy():
    return free_presentation(["x", "y"])


@pytest.fixture
def kuv():
    return free_presentation(["u", "v"])


@pytest.fixture
def kx_mod3():
    return quotient_presentation(["x"], [(0, 0, 0)])


@pytest.fixture
def kuv_trunc():
    return quotient_presentation(["u", "v"], [(0, 0), (1, 1)])


@pytest.fixture
def two_loops():
    return free_presentation(["a", "b"])


@pytest.fixture
def double_arrow():
    # one arrow 0 -> 1 and its reverse
    return double_quiver_presentation(["a"], [0], [1], 2)


@pytest.fixture
def diff1():
    return diffpoly_presentation(["u"])


@pytest.fixture
def diff2():
    return diffpoly_presentation(["u", "v"])


@pytest.fixture
def rng():
    return random.Random(20260809)


def random_poly(pres, rng, max_deg=3, nterms=3, max_super=2):
    """Random sparse polynomial with small integer coefficients."""
    from ncpoisson.tensors import NCPoly
    out = NCPoly.zero(pres)
    for _ in range(nterms):
        d = rng.randrange(0, max_deg + 1)
        if d == 0:
            mono = (-1 - rng.randrange(pres.nvertices),)
        else:
            if pres.kind == "diffpoly":
                letters = tuple(
                    pres.diff_letter(rng.randrange(pres.base_count),
                                     rng.randrange(max_super + 1))
                    for _ in range(d))
            else:
                letters = tuple(rng.randrange(pres.ngens) for _ in range(d))
            mono = letters
        c = rng.choice([-2, -1, 1, 2, 3])
        out = out + NCPoly.monomial(pres, mono, c)
    return out


def random_tensor(pres, rng, arity, max_deg=2, nterms=3, max_super=1):
    from ncpoisson.tensors import TensorElem
    out = TensorElem.zero(pres, arity)
    for _ in range(nterms):
        polys = [random_poly(pres, rng, max_deg, 1, max_super) for _ in range(arity)]
        if any(p.is_zero() for p in polys):
            continue
        term = TensorElem.from_polys(*polys) if arity else TensorElem.scalar(
            pres, rng.choice([-1, 1, 2]))
        out = out + term
    return out

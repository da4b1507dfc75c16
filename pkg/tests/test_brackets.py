"""Double and n-brackets: construction, evaluation, the word-to-bracket map,
the Jacobiator, classification, and the cohomology differential."""

from fractions import Fraction

import pytest

from ncpoisson.brackets import (BracketError, NBracket, bracket_from_word,
                                check_d_squared, classify_poisson,
                                descends_to_quotient, differential,
                                differential_operator_form, make_nbracket,
                                restrict_to_quotient, triple_bracket,
                                triple_bracket_table)
from ncpoisson.derivations import partial_derivative
from ncpoisson.examples import (DOUBLE_ARROW, KUV, KUV_TRUNC, KX, KX_MOD,
                                SYMPLECTIC2, TWO_LOOPS, kx_family,
                                kx_power_bracket, quartic_bracket,
                                quiver_constant_bracket, zero_bracket)
from ncpoisson.presentation import idem
from ncpoisson.tensors import NCPoly, TensorElem, mult_all, sigma_pow

from conftest import random_poly


def x_pow(k, pres=KX):
    return NCPoly.monomial(pres, (0,) * k if k else (-1,))


def tens(pres, *ws):
    return TensorElem.from_monomials(pres, ws)


# ---------------------------------------------------------------------------
# construction


def test_make_power_bracket_accepted():
    br = kx_power_bracket(2, 0)
    assert br.entry((0, 0)) == tens(KX, (0, 0), (-1,)) - tens(KX, (-1,), (0, 0))


def test_quartic_autofills_by_skew():
    br = quartic_bracket()
    # {{v,u}} = -sigma{{u,v}} = -(uv (x) vu)
    assert br.entry((1, 0)) == tens(KUV, (0, 1), (1, 0)).scale(-1)
    assert br.entry((0, 0)).is_zero()


def test_skew_violation_rejected():
    bad = tens(KX, (0,), (-1,))  # x (x) 1 is not skew-completable
    with pytest.raises(BracketError):
        make_nbracket(KX, 2, {(0, 0): bad})


def test_endpoint_violation_rejected():
    p = DOUBLE_ARROW
    bad = TensorElem.from_monomials(p, (idem(0), idem(0)))
    with pytest.raises(BracketError):
        make_nbracket(p, 2, {(0, 0): bad})


# ---------------------------------------------------------------------------
# evaluation


def test_eval_leibniz_square():
    br = kx_power_bracket(1, 0)
    got = br.eval(x_pow(1), x_pow(2))
    assert got == tens(KX, (0, 0), (-1,)) - tens(KX, (-1,), (0, 0))


def test_eval_vanishes_on_idempotents():
    p = DOUBLE_ARROW
    br = quiver_constant_bracket(p, SYMPLECTIC2)
    e0 = NCPoly.idempotent(p, 0)
    a = NCPoly.gen(p, 0)
    assert br.eval(e0, a).is_zero()


def test_zero_bracket_eval():
    br = zero_bracket(KX)
    assert br.eval(x_pow(2), x_pow(3)).is_zero()


def test_slot_order_independence(rng):
    """Evaluating via rotation of any slot into the Leibniz position agrees."""
    br = kx_family(1, 2, 1)
    quart = quartic_bracket()
    cases = [(br, KX), (quart, KUV)]
    for b, pres in cases:
        for _ in range(150):
            args = [random_poly(pres, rng, max_deg=3, nterms=2)
                    for _ in range(2)]
            base = b.eval(*args)
            # independent route: skew + evaluation in the other order
            flipped = b.eval(args[1], args[0])
            assert base == sigma_pow(flipped, 1).scale(-1)


# ---------------------------------------------------------------------------
# word-of-double-derivations map


def test_word_reproduces_power_bracket():
    for a, b in ((1, 0), (2, 0), (2, 1), (3, 2)):
        word = [partial_derivative(KX, 0), partial_derivative(KX, 0)]
        coeffs = [x_pow(a), x_pow(b), None]
        br = bracket_from_word(KX, word, coeffs)
        assert br.entry((0, 0)) == kx_power_bracket(a, b).entry((0, 0))


def test_word_reproduces_quartic():
    u = NCPoly.gen(KUV, 0)
    v = NCPoly.gen(KUV, 1)
    word = [partial_derivative(KUV, 0), partial_derivative(KUV, 1)]
    coeffs = [u, u * v, v]
    br = bracket_from_word(KUV, word, coeffs)
    ref = quartic_bracket()
    for key in ((0, 0), (0, 1), (1, 0), (1, 1)):
        assert br.entry(key) == ref.entry(key)


def test_single_derivation_gives_mult():
    word = [partial_derivative(KX, 0)]
    br = bracket_from_word(KX, word, [x_pow(2), None])
    # mu_1(x^2 d) (x) = mult(1 (x) x^2) = x^2, spec: mu_1(delta)(a) = mult o delta(a)
    got = br.eval(x_pow(1))
    assert mult_all(got) == x_pow(2)


def test_word_graded_commutator_sign():
    d1 = partial_derivative(KUV, 0)
    d2 = partial_derivative(KUV, 1)
    b12 = bracket_from_word(KUV, [d1, d2])
    b21 = bracket_from_word(KUV, [d2, d1])
    for key in ((0, 1), (1, 0), (0, 0), (1, 1)):
        assert b12.entry(key) == b21.entry(key).scale(-1)


# ---------------------------------------------------------------------------
# triple bracket / classification


def test_triple_bracket_kx_explicit():
    lam, mu, nu = 2, 3, 1
    br = kx_family(lam, mu, nu)
    x = x_pow(1)
    got = triple_bracket(br, x, x, x)
    base = tens(KX, (0, 0), (0,), (-1,)) - tens(KX, (-1,), (0,), (0, 0))
    expected = TensorElem.zero(KX, 3)
    for s in range(3):
        expected = expected + sigma_pow(base, s)
    expected = expected.scale(mu * mu - lam * nu)
    assert got == expected


def test_triple_bracket_zero_bracket():
    br = zero_bracket(KX)
    assert triple_bracket(br, x_pow(1), x_pow(2), x_pow(1)).is_zero()


def test_quartic_is_poisson_everywhere():
    br = quartic_bracket()
    u = NCPoly.gen(KUV, 0)
    v = NCPoly.gen(KUV, 1)
    assert triple_bracket(br, u, v, u).is_zero()
    assert not triple_bracket_table(br)
    assert classify_poisson(br).kind == "poisson"


def test_triple_bracket_is_three_bracket():
    br = kx_family(1, 1, 1)
    table = triple_bracket_table(br)
    make_nbracket(KX, 3, table)  # raises if not cyclically skew


def test_classification_grid():
    for lam in range(-2, 3):
        for nu in range(-2, 3):
            mu = 1
            rep = classify_poisson(kx_family(lam, mu, nu))
            if lam * nu - mu * mu == 0:
                assert rep.kind == "poisson"
            else:
                assert rep.kind == "quasi-poisson"
                assert rep.q == (Fraction(4 * (mu * mu - lam * nu)),)


def test_classification_neither():
    table = {(0, 0): tens(KX, (0, 0, 0), (-1,)) - tens(KX, (-1,), (0, 0, 0))}
    br = make_nbracket(KX, 2, table)
    rep = classify_poisson(br)
    assert rep.kind == "neither"
    assert rep.witness == (0, 0, 0)
    assert rep.residual


# ---------------------------------------------------------------------------
# the differential


def theta(ell, pres=KX):
    """Derivation x -> x^ell as a 1-bracket."""
    table = {(0,): x_pow(ell, pres).to_tensor()}
    return make_nbracket(pres, 1, table)


def test_degree_zero_classes_are_closed():
    br = kx_family(1, 1, 1)
    for r in range(6):
        assert differential(br, x_pow(r)).is_zero()


def test_differential_theta_matches_paper():
    lam, mu, nu = 2, 3, 1
    br = kx_family(lam, mu, nu)
    for ell in range(0, 5):
        d = differential(br, theta(ell))
        xl = (0,) * ell if ell else (-1,)
        expected = (
            (tens(KX, (0, 0), xl) - tens(KX, xl, (0, 0))).scale(nu)
            + (tens(KX, (0,), xl) - tens(KX, xl, (0,))).scale(2 * mu)
            + (tens(KX, (-1,), xl) - tens(KX, xl, (-1,))).scale(lam))
        assert d.entry((0, 0)) == expected


def test_zero_ambient_differential_vanishes():
    br = zero_bracket(KX)
    assert differential(br, theta(3)).is_zero()
    assert differential(br, kx_power_bracket(2, 1)).is_zero()


def test_differential_against_operator_form(rng):
    ambient = kx_family(1, 0, 1)   # quasi-Poisson ambient exercises signs too
    quart = quartic_bracket()
    for amb, br, pres in ((ambient, kx_power_bracket(2, 1), KX),
                          (quart, quartic_bracket(), KUV)):
        d = differential(amb, br)
        for _ in range(25):
            args = [random_poly(pres, rng, max_deg=2, nterms=2)
                    for _ in range(3)]
            got = d.eval(*args)
            ref = differential_operator_form(amb, br, args)
            assert got == ref


def test_degree_zero_lift_independence():
    br = quartic_bracket()
    u = NCPoly.gen(KUV, 0)
    v = NCPoly.gen(KUV, 1)
    a = u * v * u
    commutator = u * v - v * u
    d1 = differential(br, a)
    d2 = differential(br, a + commutator * u - u * commutator)
    # lifts differing by commutators give the same derivation? they differ by
    # d of a commutator class, which is zero in A_sharp; check equal tables
    for g in range(2):
        assert d1.entry((g,)) == d2.entry((g,))


def test_check_d_squared_examples(rng):
    lam_only = kx_family(1, 0, 0)
    ok, _ = check_d_squared(lam_only, theta(5))
    assert ok
    quart = quartic_bracket()
    br = kx_power_bracket(2, 1)  # reused table shape on KUV? build one there:
    table = {(0, 1): tens(KUV, (0, 1), (1, 0)),
             (0, 0): tens(KUV, (0, 0), (1, 1)) - tens(KUV, (1, 1), (0, 0))}
    b2 = make_nbracket(KUV, 2, table)
    ok, _ = check_d_squared(quart, b2)
    assert ok


def test_check_d_squared_detects_non_poisson():
    # {{x,x}} = x^3 @ 1 - 1 @ x^3 is neither Poisson nor quasi-Poisson;
    # the square of the differential survives on derivations (witness search:
    # degree-0 inputs happen to be annihilated, theta_0 is not)
    table = {(0, 0): tens(KX, (0, 0, 0), (-1,)) - tens(KX, (-1,), (0, 0, 0))}
    bad_ambient = make_nbracket(KX, 2, table)
    assert classify_poisson(bad_ambient).kind == "neither"
    ok, _ = check_d_squared(bad_ambient, x_pow(1))
    assert ok  # degree-0 obstruction vanishes for this shape of bracket
    ok, witness = check_d_squared(bad_ambient, theta(0))
    assert not ok and witness is not None and witness[0] == (0, 0, 0)


# ---------------------------------------------------------------------------
# descent to monomial quotients


def test_power_brackets_descend():
    for (a, b) in ((1, 0), (2, 0), (2, 1)):
        assert descends_to_quotient(kx_power_bracket(a, b), KX_MOD[3])


def test_quartic_descends():
    assert descends_to_quotient(quartic_bracket(), KUV_TRUNC)


def test_word_bracket_on_kx_descends():
    # mu_2(d_x x d_x) equals -{{-,-}}_{1,0}, which does descend; the bivector
    # itself has no quotient counterpart but that is not what is tested here
    word = [partial_derivative(KX, 0), partial_derivative(KX, 0)]
    br = bracket_from_word(KX, word, [None, x_pow(1), None])
    assert br.entry((0, 0)) == kx_power_bracket(1, 0).entry((0, 0)).scale(-1)
    assert descends_to_quotient(br, KX_MOD[3])


def test_non_descending_bracket_detected():
    table = {(0, 1): tens(KUV, (-1,), (-1,))}
    br = make_nbracket(KUV, 2, table)
    assert not descends_to_quotient(br, KUV_TRUNC)


def test_restrict_to_quotient_roundtrip():
    br = restrict_to_quotient(quartic_bracket(), KUV_TRUNC)
    assert br.entry((0, 1)) == TensorElem.from_monomials(
        KUV_TRUNC, ((1, 0), (0, 1)))

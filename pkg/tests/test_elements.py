import random
from fractions import Fraction

import pytest

from ftrees.elements import (
    GroupElement,
    NotInF,
    NotUnitary,
    Side,
    TargetNotARefinement,
    Term,
    abelianization,
    height,
    in_commutator_subgroup,
    inverse,
    is_cyclic_order_preserving,
    is_order_preserving,
    multiply,
    multiply_terms,
    parity_split,
    reduce,
    refine,
    validate_unitary,
)
from ftrees.generators import gen_x, generator_ball
from ftrees.words import CompleteCode, uniform_code

from oracles import compose_values, eval_element, pl_equal

X0 = gen_x(0)

# the worked-product golden pair: u = x0 composed with this w
W_TERMS = [
    ("111", "11"),
    ("112", "121"),
    ("12", "122"),
    ("211", "21"),
    ("212", "221"),
    ("22", "222"),
]
W = GroupElement.from_terms(W_TERMS)

REFINED_U = [
    ("1111", "111"),
    ("1112", "112"),
    ("1121", "121"),
    ("1122", "122"),
    ("121", "211"),
    ("122", "212"),
    ("21", "221"),
    ("22", "222"),
]
REFINED_W = [
    ("111", "11"),
    ("112", "121"),
    ("121", "1221"),
    ("122", "1222"),
    ("211", "21"),
    ("212", "221"),
    ("221", "2221"),
    ("222", "2222"),
]
PRODUCT_DISPLAY = [
    ("1111", "11"),
    ("1112", "121"),
    ("1121", "1221"),
    ("1122", "1222"),
    ("121", "21"),
    ("122", "221"),
    ("21", "2221"),
    ("22", "2222"),
]


def test_validate_unitary_golden():
    assert X0.terms == (Term("11", "1"), Term("12", "21"), Term("2", "22"))
    assert GroupElement.from_terms([("", "")]).is_identity()


def test_validate_unitary_rejects_incomplete():
    with pytest.raises(NotUnitary):
        validate_unitary([Term("11", "1"), Term("12", "21")])
    with pytest.raises(NotUnitary):
        validate_unitary([])
    with pytest.raises(NotUnitary):
        validate_unitary([Term("1", "1"), Term("2", "21"), Term("21", "2")])


def test_refine_worked_example():
    got = refine(X0, uniform_code(3), Side.DOMAIN)
    assert [(t.alpha, t.beta) for t in got] == REFINED_U
    got_w = refine(W, uniform_code(3), Side.RANGE)
    assert [(t.alpha, t.beta) for t in got_w] == REFINED_W


def test_refine_trivial_cases():
    assert refine(GroupElement.identity(), CompleteCode(["1", "2"]), Side.DOMAIN) == [
        Term("1", "1"),
        Term("2", "2"),
    ]
    assert refine(X0, CompleteCode(["1", "21", "22"]), Side.DOMAIN) == list(X0.terms)
    with pytest.raises(TargetNotARefinement):
        refine(X0, CompleteCode(["1", "2"]), Side.DOMAIN)


def test_refine_preserves_degrees_and_round_trips():
    random.seed(2)
    ball = generator_ball(3)
    deeper = uniform_code(5)
    for f in random.sample(ball, 20):
        for side in (Side.DOMAIN, Side.RANGE):
            terms = refine(f, deeper, side)
            assert set(t.degree for t in terms) == set(t.degree for t in f.terms)
            assert reduce(terms).terms == f.terms


def test_multiply_worked_product():
    got = multiply_terms(X0, W, uniform_code(3))
    assert [(t.alpha, t.beta) for t in got] == PRODUCT_DISPLAY
    # the displayed sum is not sibling-reduced; canonically it has 6 terms
    assert multiply(X0, W).terms == validate_unitary(
        [Term(a, b) for a, b in PRODUCT_DISPLAY]
    ).terms
    assert len(multiply(X0, W).terms) == 6


def test_multiply_identity_and_inverse():
    e = GroupElement.identity()
    ball = generator_ball(2)
    for f in ball:
        assert multiply(f, e).terms == f.terms
        assert multiply(e, f).terms == f.terms
        assert multiply(f, inverse(f)).is_identity()
        assert multiply(inverse(f), f).is_identity()
        assert inverse(inverse(f)).terms == f.terms


def test_inverse_golden():
    assert [(t.alpha, t.beta) for t in inverse(X0).terms] == [
        ("1", "11"),
        ("21", "12"),
        ("22", "2"),
    ]


def test_multiply_associative_on_ball():
    random.seed(3)
    ball = generator_ball(3)
    for _ in range(60):
        f, g, h = (random.choice(ball) for _ in range(3))
        assert multiply(multiply(f, g), h).terms == multiply(f, multiply(g, h)).terms


def test_multiply_against_pl_oracle():
    random.seed(4)
    ball = generator_ball(3)
    for _ in range(40):
        u, w = random.choice(ball), random.choice(ball)
        prod = multiply(u, w)
        grid = 1 + max(
            max(max(len(t.alpha), len(t.beta)) for t in e.terms)
            for e in (u, w, prod)
        )
        assert pl_equal(prod, compose_values(u, w, grid), grid)


def test_reduce_examples():
    got = reduce(
        [
            Term("111", "11"),
            Term("112", "12"),
            Term("12", "21"),
            Term("21", "221"),
            Term("22", "222"),
        ]
    )
    assert got.terms == X0.terms
    assert reduce(list(X0.terms)).terms == X0.terms


def test_canonical_form_unique_under_random_refinement():
    random.seed(5)
    ball = generator_ball(3)
    for _ in range(40):
        f = random.choice(ball)
        # refine the domain against a random code, then reduce back
        other = random.choice(ball).domain_code()
        from ftrees.words import common_refinement

        target = common_refinement(f.domain_code(), other)
        assert reduce(refine(f, target, Side.DOMAIN)).terms == f.terms


def test_order_preserving_examples():
    assert is_order_preserving(X0)
    assert is_cyclic_order_preserving(X0)
    t_gen = GroupElement.from_terms([("22", "1"), ("1", "21"), ("21", "22")])
    assert not is_order_preserving(t_gen)
    assert is_cyclic_order_preserving(t_gen)
    crossing = GroupElement.from_terms([("21", "1"), ("22", "21"), ("1", "22")])
    assert not is_order_preserving(crossing)


def test_products_of_order_preserving_stay_in_f():
    ball = generator_ball(2)
    for f in ball:
        for g in ball:
            assert is_order_preserving(multiply(f, g))
            assert is_order_preserving(inverse(f))


def test_parity_split_examples():
    even, odd = parity_split(X0)
    assert even == (Term("12", "21"),)
    assert odd == (Term("11", "1"), Term("2", "22"))
    even_e, odd_e = parity_split(GroupElement.identity())
    assert even_e == (Term("", ""),) and odd_e == ()
    h = GroupElement.from_terms(
        [("1", "111"), ("211", "112"), ("2121", "12"), ("2122", "21"), ("22", "22")]
    )
    even_h, odd_h = parity_split(h)
    assert len(even_h) == 5 and odd_h == ()


def test_gauge_grading_of_products():
    # (fg)_0 terms arise exactly from even*even and odd*odd matchings
    from ftrees.words import common_refinement

    random.seed(6)
    ball = generator_ball(2)
    for _ in range(40):
        f, g = random.choice(ball), random.choice(ball)
        fg = multiply(f, g)
        via = common_refinement(f.domain_code(), g.range_code())
        ru_by_beta = {t.beta: t for t in refine(f, via, Side.DOMAIN)}
        even_support = []
        for w_term in refine(g, via, Side.RANGE):
            u_term = ru_by_beta[w_term.alpha]
            product = Term(u_term.alpha, w_term.beta)
            assert product.degree == u_term.degree + w_term.degree
            if u_term.degree % 2 == w_term.degree % 2:
                even_support.append(product)
        # the even part of fg is the reduction of exactly these matchings
        even_fg, _ = parity_split(fg)
        got = sorted(t for t in reduce_partial(even_support))
        assert got == sorted(even_fg)


def reduce_partial(terms):
    """Sibling-merge a term list that need not be unitary."""
    stack = []
    for t in sorted(terms):
        stack.append(t)
        while len(stack) >= 2:
            a, b = stack[-2], stack[-1]
            if (
                a.alpha.endswith("1")
                and a.beta.endswith("1")
                and b.alpha == a.alpha[:-1] + "2"
                and b.beta == a.beta[:-1] + "2"
            ):
                stack[-2:] = [Term(a.alpha[:-1], a.beta[:-1])]
            else:
                break
    return stack


def test_height_examples():
    assert height(X0) == 1
    assert height(GroupElement.identity()) == 0
    h = GroupElement.from_terms(
        [("1", "111"), ("211", "112"), ("2121", "12"), ("2122", "21"), ("22", "22")]
    )
    assert height(h) == 2


def test_abelianization_examples():
    assert abelianization(X0) == (-1, 1)
    assert abelianization(GroupElement.identity()) == (0, 0)
    assert in_commutator_subgroup(GroupElement.identity())
    # homomorphism into Z^2, checked against the direct product
    x1 = gen_x(1)
    assert abelianization(x1) == (0, 1)
    prod = multiply(X0, x1)
    assert abelianization(prod) == (-1, 2)


def test_abelianization_is_homomorphism():
    random.seed(7)
    ball = generator_ball(3)
    for _ in range(60):
        f, g = random.choice(ball), random.choice(ball)
        af, ag = abelianization(f), abelianization(g)
        afg = abelianization(multiply(f, g))
        assert afg == (af[0] + ag[0], af[1] + ag[1])


def test_abelianization_slope_matches_pl_model():
    # slope of the PL map at 0 is 2^a, at 1 is 2^b
    random.seed(8)
    for f in random.sample(generator_ball(3), 25):
        a, b = abelianization(f)
        eps = Fraction(1, 2 ** 12)
        assert eval_element(f, eps) == eval_element(f, Fraction(0)) + eps * Fraction(
            2
        ) ** a
        assert 1 - eval_element(f, 1 - eps) == eps * Fraction(2) ** b


def test_abelianization_requires_f():
    t_gen = GroupElement.from_terms([("22", "1"), ("1", "21"), ("21", "22")])
    with pytest.raises(NotInF):
        abelianization(t_gen)


def test_t_membership_closed_under_products():
    c = GroupElement.from_terms([("22", "1"), ("1", "21"), ("21", "22")])
    gens = [X0, gen_x(1), c, inverse(X0), inverse(gen_x(1)), inverse(c)]
    rng = random.Random(17)
    for _ in range(150):
        f = GroupElement.identity()
        for _ in range(rng.randint(0, 6)):
            f = multiply(f, rng.choice(gens))
        assert is_cyclic_order_preserving(f)
    swap = GroupElement.from_terms([("12", "11"), ("11", "12"), ("2", "2")])
    assert not is_cyclic_order_preserving(swap)


def test_every_valid_sum_is_in_v():
    # V membership is just validity; arbitrary pairings pass
    perm = GroupElement.from_terms([("11", "21"), ("12", "22"), ("21", "11"), ("22", "12")])
    assert not is_order_preserving(perm)
    assert perm.terms == (Term("1", "2"), Term("2", "1"))

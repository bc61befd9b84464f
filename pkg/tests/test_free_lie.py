import itertools
import random
from fractions import Fraction

import pytest

from nilmult.exactla import is_zero_vector
from nilmult.free_lie import (
    BracketExpr,
    FreeLieElement,
    NotALieElement,
    _lyndonize,
    br,
    evaluate_in,
    expand_to_lyndon,
    free_nilpotent,
    gen,
    is_lyndon,
    left_normed,
    lemma31_expression,
    lemma31_term_pairs,
    lyndon_bracketing,
    lyndon_words,
    right_normed,
    std_factorization,
    tensor_expansion,
    verify_lemma31,
)
from nilmult.lie_core import LieAlgebra, series_profile


def test_left_normed_shapes():
    assert left_normed([1]) == gen(1)
    assert left_normed([1, 2, 3]) == br(br(gen(1), gen(2)), gen(3))
    assert left_normed([1, 2, 3, 4]) == br(br(br(gen(1), gen(2)), gen(3)), gen(4))


def test_right_normed_shapes():
    assert right_normed([1]) == gen(1)
    assert right_normed([1, 2, 3]) == br(gen(1), br(gen(2), gen(3)))
    assert right_normed([2, 3, 4, 5]) == br(gen(2), br(gen(3), br(gen(4), gen(5))))


def test_normed_empty_rejected():
    with pytest.raises(ValueError):
        left_normed([])
    with pytest.raises(ValueError):
        right_normed([])


def test_expand_alternating():
    assert expand_to_lyndon(br(gen(1), gen(1))).is_zero


def test_expand_antisymmetry_on_pair():
    e = expand_to_lyndon(br(gen(2), gen(1)))
    assert e.as_dict() == {(1, 2): Fraction(-1)}


def test_expand_jacobi_cyclic_sum():
    x, y, z = gen(1), gen(2), gen(3)
    total = [(Fraction(1), br(br(x, y), z)),
             (Fraction(1), br(br(y, z), x)),
             (Fraction(1), br(br(z, x), y))]
    assert expand_to_lyndon(total).is_zero


def _random_tree(rng, degree, alphabet=3):
    if degree == 1:
        return gen(rng.randint(1, alphabet))
    split = rng.randint(1, degree - 1)
    return br(_random_tree(rng, split, alphabet),
              _random_tree(rng, degree - split, alphabet))


def test_expand_antisymmetry_random_trees():
    rng = random.Random(11)
    for _ in range(30):
        e = _random_tree(rng, rng.randint(1, 3))
        f = _random_tree(rng, rng.randint(1, 3))
        left = expand_to_lyndon(br(e, f)).as_dict()
        right = expand_to_lyndon(br(f, e)).as_dict()
        assert left == {w: -c for w, c in right.items()}


def test_expand_jacobi_random_trees():
    rng = random.Random(13)
    for _ in range(25):
        e = _random_tree(rng, rng.randint(1, 2))
        f = _random_tree(rng, rng.randint(1, 2))
        g = _random_tree(rng, rng.randint(1, 2))
        total = [(Fraction(1), br(br(e, f), g)),
                 (Fraction(1), br(br(f, g), e)),
                 (Fraction(1), br(br(g, e), f))]
        assert expand_to_lyndon(total).is_zero


def test_expansion_is_linear_in_brackets():
    # [e, f] expands to ef - fe for single letters
    t = tensor_expansion(br(gen(1), gen(2)))
    assert t == {(1, 2): Fraction(1), (2, 1): Fraction(-1)}


def _brute_lyndon(word):
    rotations = [word[k:] + word[:k] for k in range(1, len(word))]
    return all(word < r for r in rotations)


def _witt(d, k):
    # necklace count by direct divisor sum with a brute Moebius function
    def moebius(n):
        factors = []
        p = 2
        while p * p <= n:
            if n % p == 0:
                n //= p
                if n % p == 0:
                    return 0
                factors.append(p)
            else:
                p += 1
        if n > 1:
            factors.append(n)
        return (-1) ** len(factors)

    return sum(moebius(k // e) * d ** e for e in range(1, k + 1) if k % e == 0) // k


@pytest.mark.parametrize("d", [1, 2, 3])
def test_lyndon_counts_match_witt(d):
    words = lyndon_words(d, 6)
    for k in range(1, 7):
        of_degree = [w for w in words if len(w) == k]
        brute = [w for w in itertools.product(range(1, d + 1), repeat=k)
                 if _brute_lyndon(w)]
        assert sorted(of_degree) == sorted(brute)
        assert len(of_degree) == _witt(d, k)


def test_lyndon_word_example_2_3():
    assert lyndon_words(2, 3) == [(1,), (2,), (1, 2), (1, 1, 2), (1, 2, 2)]


def test_is_lyndon_basic():
    assert is_lyndon((1, 1, 2))
    assert not is_lyndon((2, 1))
    assert not is_lyndon((1, 2, 1, 2))


def test_std_factorization():
    assert std_factorization((1, 2)) == ((1,), (2,))
    assert std_factorization((1, 1, 2)) == ((1,), (1, 2))
    assert std_factorization((1, 2, 2)) == ((1, 2), (2,))
    assert std_factorization((1, 1, 2, 1, 2)) == ((1, 1, 2), (1, 2))


def test_lyndon_bracketing_triangular():
    # P_w = w + lexicographically larger words of the same degree
    for w in lyndon_words(3, 5):
        t = tensor_expansion(lyndon_bracketing(w))
        assert t[w] == 1
        assert all(u >= w for u in t)


def test_lyndonize_rejects_non_lie_input():
    with pytest.raises(NotALieElement):
        _lyndonize({(1, 1): Fraction(1)})


def test_expand_round_trips_lyndon_basis():
    for w in lyndon_words(2, 5):
        e = expand_to_lyndon(lyndon_bracketing(w))
        assert e.as_dict() == {w: Fraction(1)}


def test_element_rendering():
    zero = FreeLieElement(())
    assert str(zero) == "0"
    e = expand_to_lyndon([(Fraction(2), br(gen(1), gen(2)))])
    assert str(e) == "2*[x1x2]"


def test_term_pairs_arity_two_is_jacobi():
    pairs = lemma31_term_pairs(2)
    rendered = [(str(w), t) for w, t in pairs]
    assert rendered == [("[x1, x2]", 3), ("[x3, x1]", 2), ("[x2, x3]", 1)]


def test_expression_arity_three_matches_written_form():
    terms = [str(expr) for _, expr in lemma31_expression(3)]
    assert terms == [
        "[[[x1, x2], x3], x4]",
        "[[x4, [x1, x2]], x3]",
        "[[[x3, x4], x1], x2]",
        "[[x2, [x3, x4]], x1]",
    ]


@pytest.mark.parametrize("i", [3, 4, 5, 6])
def test_expression_term_count(i):
    assert len(lemma31_expression(i)) == i + 1
    for coeff, expr in lemma31_expression(i):
        assert coeff == 1
        assert expr.degree == i + 1


def test_expression_arity_below_three_rejected():
    with pytest.raises(ValueError):
        lemma31_expression(2)
    with pytest.raises(ValueError):
        lemma31_term_pairs(1)


@pytest.mark.parametrize("i", [3, 4, 5, 6])
def test_identity_holds(i):
    residual = verify_lemma31(i)
    assert residual.is_zero
    assert str(residual) == "0"


@pytest.mark.parametrize("i", [2, 3])
def test_identity_numerically_in_concrete_algebra(i):
    # independent route: substitute concrete vectors for the generators
    # and evaluate the terms with the algebra bracket
    L = free_nilpotent(2, i + 1)
    rng = random.Random(5)
    values = {}
    for k in range(1, i + 2):
        values[k] = tuple(Fraction(rng.randint(-2, 2)) for _ in range(L.dim))
    total = [Fraction(0)] * L.dim
    for w_expr, t_sym in lemma31_term_pairs(i):
        w_val = evaluate_in(w_expr, L.bracket, values)
        term = L.bracket(w_val, values[t_sym])
        total = [a + b for a, b in zip(total, term)]
    assert is_zero_vector(total)


def test_evaluate_in_substitution():
    L = LieAlgebra(3, {(0, 1): {2: 1}})
    values = {1: (Fraction(1), Fraction(0), Fraction(0)),
              2: (Fraction(0), Fraction(1), Fraction(0))}
    result = evaluate_in(br(gen(1), gen(2)), L.bracket, values)
    assert result == (Fraction(0), Fraction(0), Fraction(1))


def test_free_nilpotent_2_2_is_heisenberg():
    L = free_nilpotent(2, 2)
    assert L.dim == 3
    assert L.table == {(0, 1): {2: Fraction(1)}}


def test_free_nilpotent_2_3():
    L = free_nilpotent(2, 3)
    prof = series_profile(L)
    assert L.dim == 5
    assert prof.derived_dim == 3
    assert prof.nilpotency_class == 3
    assert prof.gen_count == 2


def test_free_nilpotent_3_2():
    L = free_nilpotent(3, 2)
    prof = series_profile(L)
    assert L.dim == 6
    assert prof.derived_dim == 3


@pytest.mark.parametrize("d,c", [(2, 2), (2, 3), (2, 4), (3, 2), (3, 3)])
def test_free_nilpotent_profiles(d, c):
    L = free_nilpotent(d, c)  # construction itself validates the table
    prof = series_profile(L)
    assert prof.nilpotency_class == c
    assert prof.gen_count == d
    layer_dims = [prof.gamma(i).dim - prof.gamma(i + 1).dim
                  for i in range(1, c + 1)]
    words = lyndon_words(d, c)
    assert layer_dims == [sum(1 for w in words if len(w) == i)
                          for i in range(1, c + 1)]


def test_bracket_expr_guards():
    with pytest.raises(ValueError):
        BracketExpr(symbol=1, left=gen(1), right=gen(2))
    with pytest.raises(ValueError):
        BracketExpr(symbol=None, left=gen(1), right=None)

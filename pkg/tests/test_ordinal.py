"""Tests for Cantor-normal-form ordinals."""

import numpy as np
import pytest

from src.errors import OrdinalDomainError, OrdinalParseError
from src.ordinal import (
    OMEGA,
    ONE,
    ZERO,
    Ordering,
    Ordinal,
    add,
    compare,
    format_ordinal,
    is_limit,
    is_successor,
    mul_nat,
    normalize,
    parse_ordinal,
    pred,
)


def w(text: str) -> Ordinal:
    return parse_ordinal(text)


def random_ordinal(rng: np.random.Generator, depth: int) -> Ordinal:
    """Random term list, summed in order, with exponent nesting up to ``depth``."""
    terms = []
    for _ in range(int(rng.integers(0, 4))):
        exponent = random_ordinal(rng, depth - 1) if depth > 0 else Ordinal.nat(int(rng.integers(0, 3)))
        terms.append((exponent, int(rng.integers(1, 10))))
    return normalize(terms)


def as_tree(a: Ordinal) -> tuple:
    return tuple((as_tree(exponent), coefficient) for exponent, coefficient in a.terms)


def tree_compare(x: tuple, y: tuple) -> int:
    """Reference comparison on nested term tuples, independent of ``compare``."""
    for (ex, cx), (ey, cy) in zip(x, y):
        order = tree_compare(ex, ey)
        if order:
            return order
        if cx != cy:
            return -1 if cx < cy else 1
    return (len(x) > len(y)) - (len(x) < len(y))


def tree_add(x: tuple, y: tuple) -> tuple:
    """Reference sum: drop every term of ``x`` below the lead of ``y``, merge an equal one."""
    if not y:
        return x
    (ey, cy), rest = y[0], y[1:]
    head = [term for term in x if tree_compare(term[0], ey) > 0]
    same = [c for e, c in x if tree_compare(e, ey) == 0]
    return tuple(head) + ((ey, cy + sum(same)),) + rest


class TestCompare:
    """Tests for the three-way ordinal comparison."""

    def test_equal(self) -> None:
        assert compare(OMEGA, OMEGA) is Ordering.EQUAL

    def test_successor_of_omega_below_omega_times_two(self) -> None:
        assert compare(w("w + 1"), w("w*2")) is Ordering.LESS

    def test_omega_to_omega_dominates(self) -> None:
        assert compare(w("w^w"), w("w^3*5 + w")) is Ordering.GREATER

    def test_operators_accept_ints(self) -> None:
        assert Ordinal.nat(3) < OMEGA
        assert OMEGA > 1000
        assert sorted([OMEGA, ONE, ZERO]) == [ZERO, ONE, OMEGA]

    def test_matches_reference_on_random_pairs(self) -> None:
        rng = np.random.default_rng(0)
        for _ in range(300):
            a, b = random_ordinal(rng, 2), random_ordinal(rng, 2)
            assert compare(a, b).value == tree_compare(as_tree(a), as_tree(b))


class TestAdd:
    """Tests for ordinal addition."""

    def test_left_absorption(self) -> None:
        assert add(ONE, OMEGA) == OMEGA

    def test_successor(self) -> None:
        assert add(OMEGA, ONE) == w("w + 1")

    def test_merges_equal_exponents(self) -> None:
        assert add(w("w^2 + w"), w("w^2")) == w("w^2*2")

    def test_operator_and_int_coercion(self) -> None:
        assert OMEGA + 1 == w("w + 1")
        assert 1 + OMEGA == OMEGA

    def test_matches_reference_on_random_pairs(self) -> None:
        rng = np.random.default_rng(1)
        for _ in range(300):
            a, b = random_ordinal(rng, 2), random_ordinal(rng, 2)
            assert as_tree(add(a, b)) == tree_add(as_tree(a), as_tree(b))

    def test_associative_on_random_triples(self) -> None:
        rng = np.random.default_rng(2)
        for _ in range(200):
            a, b, c = (random_ordinal(rng, 3) for _ in range(3))
            assert add(add(a, b), c) == add(a, add(b, c))


class TestTotalOrder:
    """compare is antisymmetric and transitive."""

    def setup_method(self) -> None:
        rng = np.random.default_rng(3)
        self.samples = [random_ordinal(rng, 3) for _ in range(40)]

    def test_antisymmetric(self) -> None:
        for a in self.samples:
            for b in self.samples:
                assert compare(a, b).value == -compare(b, a).value
                assert (compare(a, b) is Ordering.EQUAL) == (a == b)

    def test_transitive(self) -> None:
        for a in self.samples:
            for b in self.samples:
                for c in self.samples[:10]:
                    if a <= b and b <= c:
                        assert a <= c


class TestSuccessorLimit:
    """Tests for is_successor, is_limit and pred."""

    def test_successor_and_pred(self) -> None:
        assert is_successor(w("w + 1")) is True
        assert pred(w("w + 1")) == OMEGA

    def test_pred_strips_one_unit(self) -> None:
        assert pred(w("w^2 + 3")) == w("w^2 + 2")
        assert pred(ONE) == ZERO

    def test_limit(self) -> None:
        assert is_limit(w("w^w")) is True
        assert is_limit(w("w^2*3 + w")) is True

    def test_zero_is_neither(self) -> None:
        assert is_limit(ZERO) is False
        assert is_successor(ZERO) is False

    def test_pred_of_zero_raises(self) -> None:
        with pytest.raises(OrdinalDomainError, match="undefined on 0"):
            pred(ZERO)

    def test_pred_of_limit_raises(self) -> None:
        with pytest.raises(OrdinalDomainError, match="limit ordinal"):
            pred(OMEGA)

    def test_exactly_one_kind(self) -> None:
        rng = np.random.default_rng(4)
        for _ in range(200):
            a = random_ordinal(rng, 3)
            assert [a.is_zero, is_successor(a), is_limit(a)].count(True) == 1


class TestMulNatAndNormalize:
    """Tests for mul_nat and normalize."""

    def test_mul_nat_scales_leading_coefficient(self) -> None:
        assert mul_nat(w("w^2 + w + 1"), 3) == w("w^2*3 + w + 1")

    def test_mul_nat_of_zero(self) -> None:
        assert mul_nat(ZERO, 5) == ZERO

    def test_mul_nat_rejects_non_positive(self) -> None:
        with pytest.raises(OrdinalDomainError, match="positive"):
            mul_nat(OMEGA, 0)

    def test_normalize_term_list(self) -> None:
        assert normalize([(0, 5), (1, 1), (0, 2)]) == w("w + 2")
        assert normalize([(2, 1), (2, 1)]) == w("w^2*2")

    def test_normalize_idempotent(self) -> None:
        rng = np.random.default_rng(5)
        for _ in range(100):
            a = random_ordinal(rng, 3)
            assert normalize(normalize(a)) == normalize(a)

    def test_rejects_increasing_exponents(self) -> None:
        with pytest.raises(ValueError, match="strictly decreasing"):
            Ordinal(((ONE, 1), (Ordinal.nat(2), 1)))

    def test_rejects_zero_coefficient(self) -> None:
        with pytest.raises(ValueError, match="positive integer"):
            Ordinal(((ONE, 0),))


class TestText:
    """Tests for the text syntax."""

    @pytest.mark.parametrize("text", ["0", "7", "w", "w + 1", "w^2*3 + w + 1", "w^w*2 + 1", "w^{w + 1}*2 + 5", "w^{w^w}"])
    def test_round_trip(self, text: str) -> None:
        assert format_ordinal(parse_ordinal(text)) == text

    def test_accepts_omega_symbol_and_tight_spacing(self) -> None:
        assert parse_ordinal("ω^2+ω") == w("w^2 + w")
        assert parse_ordinal("w^1*1+1") == w("w + 1")

    def test_parses_unnormalized_sums(self) -> None:
        assert parse_ordinal("3 + w") == OMEGA

    def test_repr(self) -> None:
        assert repr(w("w + 1")) == "Ordinal('w + 1')"

    def test_random_round_trip(self) -> None:
        rng = np.random.default_rng(6)
        for _ in range(100):
            a = random_ordinal(rng, 3)
            assert parse_ordinal(format_ordinal(a)) == a

    @pytest.mark.parametrize("text", ["", "w^", "w*0", "w + x", "w^{2", "2 3"])
    def test_malformed_raises(self, text: str) -> None:
        with pytest.raises(OrdinalParseError):
            parse_ordinal(text)

"""Ordinals below epsilon_0 in Cantor normal form.

An ordinal is a finite, strictly decreasing list of terms
``w^{exponent} * coefficient`` whose exponents are again ordinals of this
kind. The empty list is 0. Only the operations needed to name
Cantor-Bendixson ranks are provided: comparison, addition, right
multiplication by a natural number and the successor/limit split.

Text syntax::

    w^2*3 + w + 1        w^{w + 1}*2 + 5        w^w*2 + 1

Exponents that are natural numbers or exactly ``w`` print without braces,
every other exponent is wrapped in ``{...}``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from enum import Enum
from functools import total_ordering
from typing import Iterable

from .errors import OrdinalDomainError, OrdinalParseError


class Ordering(Enum):
    """Result of a three-way comparison."""
    LESS    = -1
    EQUAL   = 0
    GREATER = 1


@total_ordering
@dataclass(frozen=True, repr=False)
class Ordinal:
    """An ordinal below epsilon_0, stored as Cantor-normal-form terms."""

    terms: tuple[tuple[Ordinal, int], ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "terms", tuple(tuple(term) for term in self.terms))
        previous: Ordinal | None = None
        for exponent, coefficient in self.terms:
            if not isinstance(exponent, Ordinal):
                raise TypeError(f"Exponent must be an Ordinal, got {type(exponent).__name__}")
            if isinstance(coefficient, bool) or not isinstance(coefficient, int) or coefficient < 1:
                raise ValueError(f"Coefficient must be a positive integer, got {coefficient!r}")
            if previous is not None and compare(exponent, previous) is not Ordering.LESS:
                raise ValueError("Exponents must be strictly decreasing")
            previous = exponent

    @classmethod
    def nat(cls, n: int) -> Ordinal:
        """Return the finite ordinal ``n``."""
        if n < 0:
            raise OrdinalDomainError(f"Negative ordinal: {n}")
        return cls() if n == 0 else cls(((cls(), n),))

    @classmethod
    def omega_power(cls, exponent: Ordinal | int, coefficient: int = 1) -> Ordinal:
        """Return ``w^exponent * coefficient``."""
        if isinstance(exponent, int):
            exponent = cls.nat(exponent)
        return cls(((exponent, coefficient),))

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def is_finite(self) -> bool:
        return all(exponent.is_zero for exponent, _ in self.terms)

    def as_int(self) -> int:
        """Return the value of a finite ordinal.

        Raises:
            OrdinalDomainError: If the ordinal is infinite.
        """
        if not self.is_finite:
            raise OrdinalDomainError(f"{self} is not finite")
        return self.terms[0][1] if self.terms else 0

    @property
    def leading_exponent(self) -> Ordinal:
        if not self.terms:
            raise OrdinalDomainError("0 has no leading term")
        return self.terms[0][0]

    @property
    def leading_coefficient(self) -> int:
        if not self.terms:
            raise OrdinalDomainError("0 has no leading term")
        return self.terms[0][1]

    def __add__(self, other: Ordinal | int) -> Ordinal:
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return add(self, other)

    def __radd__(self, other: int) -> Ordinal:
        coerced = _coerce(other)
        if coerced is None:
            return NotImplemented
        return add(coerced, self)

    def __lt__(self, other: Ordinal | int) -> bool:
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return compare(self, other) is Ordering.LESS

    def __str__(self) -> str:
        return format_ordinal(self)

    def __repr__(self) -> str:
        return f"Ordinal('{format_ordinal(self)}')"


def _coerce(value: object) -> Ordinal | None:
    if isinstance(value, Ordinal):
        return value
    if isinstance(value, int) and not isinstance(value, bool):
        return Ordinal.nat(value)
    return None


ZERO = Ordinal()
ONE = Ordinal.nat(1)
OMEGA = Ordinal.omega_power(ONE)


def compare(a: Ordinal, b: Ordinal) -> Ordering:
    """Three-way comparison of two normalized ordinals.

    Terms are compared left to right, exponent first and coefficient second;
    a proper prefix is the smaller ordinal.
    """
    for (exp_a, coef_a), (exp_b, coef_b) in zip(a.terms, b.terms):
        order = compare(exp_a, exp_b)
        if order is not Ordering.EQUAL:
            return order
        if coef_a != coef_b:
            return Ordering.LESS if coef_a < coef_b else Ordering.GREATER
    if len(a.terms) == len(b.terms):
        return Ordering.EQUAL
    return Ordering.LESS if len(a.terms) < len(b.terms) else Ordering.GREATER


def add(a: Ordinal, b: Ordinal) -> Ordinal:
    """Ordinal sum ``a + b``.

    Terms of ``a`` below the leading exponent of ``b`` are absorbed; a term
    with the same exponent has its coefficient merged.
    """
    if b.is_zero:
        return a
    lead_exponent, lead_coefficient = b.terms[0]
    kept: list[tuple[Ordinal, int]] = []
    for exponent, coefficient in a.terms:
        order = compare(exponent, lead_exponent)
        if order is Ordering.GREATER:
            kept.append((exponent, coefficient))
        elif order is Ordering.EQUAL:
            kept.append((exponent, coefficient + lead_coefficient))
            return Ordinal(tuple(kept) + b.terms[1:])
        else:
            break
    return Ordinal(tuple(kept) + b.terms)


def mul_nat(a: Ordinal, k: int) -> Ordinal:
    """Right multiplication ``a * k`` by a positive integer.

    Raises:
        OrdinalDomainError: If ``k`` is not positive.
    """
    if k < 1:
        raise OrdinalDomainError(f"Multiplier must be positive, got {k}")
    if a.is_zero:
        return a
    (exponent, coefficient), *rest = a.terms
    return Ordinal(((exponent, coefficient * k), *rest))


def is_successor(a: Ordinal) -> bool:
    """True iff the last CNF term has exponent 0."""
    return bool(a.terms) and a.terms[-1][0].is_zero


def is_limit(a: Ordinal) -> bool:
    """True iff ``a`` is non-zero and not a successor."""
    return bool(a.terms) and not is_successor(a)


def pred(a: Ordinal) -> Ordinal:
    """Return the predecessor of a successor ordinal.

    Raises:
        OrdinalDomainError: If ``a`` is 0 or a limit ordinal.
    """
    if not is_successor(a):
        kind = "0" if a.is_zero else "a limit ordinal"
        raise OrdinalDomainError(f"pred is undefined on {kind}: {a}")
    *head, (exponent, coefficient) = a.terms
    if coefficient > 1:
        head.append((exponent, coefficient - 1))
    return Ordinal(tuple(head))


def normalize(value: Ordinal | Iterable[tuple[Ordinal | int, int]]) -> Ordinal:
    """Bring an ordinal or an arbitrary list of terms into Cantor normal form.

    A term list is read as the ordinal sum of its monomials in the given
    order; zero coefficients are dropped.
    """
    if isinstance(value, Ordinal):
        return value
    total = ZERO
    for exponent, coefficient in value:
        if coefficient == 0:
            continue
        total = add(total, Ordinal.omega_power(normalize_exponent(exponent), coefficient))
    return total


def normalize_exponent(exponent: Ordinal | int) -> Ordinal:
    return Ordinal.nat(exponent) if isinstance(exponent, int) else exponent


def format_ordinal(a: Ordinal) -> str:
    """Render an ordinal in the `w^{..}*n + ...` syntax."""
    if a.is_zero:
        return "0"
    return " + ".join(_format_term(exponent, coefficient) for exponent, coefficient in a.terms)


def _format_term(exponent: Ordinal, coefficient: int) -> str:
    if exponent.is_zero:
        return str(coefficient)
    if exponent == ONE:
        base = "w"
    elif exponent.is_finite or exponent == OMEGA:
        base = f"w^{format_ordinal(exponent)}"
    else:
        base = f"w^{{{format_ordinal(exponent)}}}"
    return base if coefficient == 1 else f"{base}*{coefficient}"


_TOKEN = re.compile(r"\d+|\S")
_SYMBOLS = frozenset({"w", "^", "*", "+", "{", "}"})


class _OrdinalParser:
    """Recursive-descent parser for the ordinal text syntax."""

    def __init__(self, text: str) -> None:
        self.text = text
        self.tokens = [
            "w" if token == "ω" else token for token in _TOKEN.findall(text)
        ]
        self.position = 0
        for token in self.tokens:
            if not token.isdigit() and token not in _SYMBOLS:
                raise OrdinalParseError(f"Unexpected character {token!r} in ordinal {text!r}")

    def parse(self) -> Ordinal:
        if not self.tokens:
            raise OrdinalParseError("Empty ordinal string")
        result = self._sum()
        if self.position != len(self.tokens):
            raise OrdinalParseError(
                f"Trailing input {' '.join(self.tokens[self.position:])!r} in ordinal {self.text!r}"
            )
        return result

    def _peek(self) -> str | None:
        return self.tokens[self.position] if self.position < len(self.tokens) else None

    def _next(self) -> str:
        token = self._peek()
        if token is None:
            raise OrdinalParseError(f"Unexpected end of ordinal {self.text!r}")
        self.position += 1
        return token

    def _sum(self) -> Ordinal:
        total = self._term()
        while self._peek() == "+":
            self._next()
            total = add(total, self._term())
        return total

    def _term(self) -> Ordinal:
        token = self._next()
        if token.isdigit():
            return Ordinal.nat(int(token))
        if token != "w":
            raise OrdinalParseError(f"Expected a number or 'w', got {token!r} in {self.text!r}")
        exponent = ONE
        if self._peek() == "^":
            self._next()
            exponent = self._exponent()
        coefficient = 1
        if self._peek() == "*":
            self._next()
            token = self._next()
            if not token.isdigit() or int(token) < 1:
                raise OrdinalParseError(f"Coefficient must be a positive integer in {self.text!r}")
            coefficient = int(token)
        if exponent.is_zero:
            return Ordinal.nat(coefficient)
        return Ordinal.omega_power(exponent, coefficient)

    def _exponent(self) -> Ordinal:
        token = self._next()
        if token.isdigit():
            return Ordinal.nat(int(token))
        if token == "w":
            return OMEGA
        if token == "{":
            inner = self._sum()
            if self._next() != "}":
                raise OrdinalParseError(f"Missing '}}' in {self.text!r}")
            return inner
        raise OrdinalParseError(f"Bad exponent {token!r} in {self.text!r}")


def parse_ordinal(text: str) -> Ordinal:
    """Parse the `w^{..}*n + ...` syntax into a normalized ordinal.

    Raises:
        OrdinalParseError: On malformed input.
    """
    return _OrdinalParser(text).parse()

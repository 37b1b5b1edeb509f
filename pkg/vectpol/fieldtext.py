"""Text form of polynomial vector fields.

The grammar, whitespace insensitive:

  field := '0' | ['+'|'-'] term (('+'|'-') term)*
  term  := [coeff '*'] (var ['^' nat] '*')* 'd' nat
  var   := 'x' nat
  coeff := integer ['/' positive-integer]
         | gaussian, in gaussian mode only: '(' a ('+'|'-') b 'i' ')',
           b 'i', or 'i', where a and b are rationals

Example: 2*x1^2*x2*d1 - 1/3*d2

A Gaussian coefficient with both parts goes in parentheses, as in
(1+2i)*d1.  Written bare, 1+2i*d1 stops at position 1, where the '*'
after the coefficient 1 is expected.

Indices are 1-based.  format_field() emits terms in canonical order with
signs pulled out of the coefficients, so parse_field(format_field(x)) == x.
"""

from __future__ import annotations

import re
import typing

from vectpol import exact
from vectpol import polyfield

_TOKEN = re.compile(
    r'(?P<number>\d+)|(?P<op>[-+*/^()])|(?P<name>[xdi])|(?P<space>\s+)'
)


class Error(Exception):
    """Base module exception."""


class ParseError(Error):
    """The text does not follow the grammar."""

    def __init__(self, message: str, position: int, line: int | None = None):
        self.message = message
        self.position = position
        self.line = line
        where = f'position {position}'
        if line is not None:
            where = f'line {line}, {where}'
        super().__init__(f'{message} at {where}')


class IndexOutOfRange(ParseError):
    """A variable or direction index is not in 1..n."""


class _Token(typing.NamedTuple):
    kind: str
    text: str
    position: int


def _tokenize(text: str) -> list[_Token]:
    tokens = list()
    position = 0
    while position < len(text):
        match = _TOKEN.match(text, position)
        if not match:
            raise ParseError(f'unexpected character {text[position]!r}',
                             position)
        kind = match.lastgroup
        assert kind is not None
        if kind != 'space':
            tokens.append(_Token(kind, match.group(), position))
        position = match.end()
    tokens.append(_Token('end', '', len(text)))
    return tokens


class _Parser:
    """Recursive descent over the token list."""

    def __init__(self, text: str, space: polyfield.SpaceDescriptor):
        self._tokens = _tokenize(text)
        self._index = 0
        self._space = space
        self._domain = space.domain

    def _peek(self) -> _Token:
        return self._tokens[self._index]

    def _next(self) -> _Token:
        token = self._tokens[self._index]
        if token.kind != 'end':
            self._index += 1
        return token

    def _at(self, text: str) -> bool:
        token = self._peek()
        return token.kind in ('op', 'name') and token.text == text

    def _expect(self, text: str) -> _Token:
        token = self._next()
        if token.text != text or token.kind not in ('op', 'name'):
            found = token.text or 'end of input'
            raise ParseError(f'expected {text!r}, found {found!r}',
                             token.position)
        return token

    def _natural(self) -> tuple[int, int]:
        token = self._next()
        if token.kind != 'number':
            found = token.text or 'end of input'
            raise ParseError(f'expected a number, found {found!r}',
                             token.position)
        return int(token.text), token.position

    def _index_in_range(self) -> int:
        value, position = self._natural()
        if not 1 <= value <= self._space.n:
            raise IndexOutOfRange(
                f'index {value} outside 1..{self._space.n}', position
            )
        return value - 1

    def _rational(self) -> exact.Scalar:
        numerator, _ = self._natural()
        denominator = 1
        if self._at('/'):
            self._next()
            denominator, position = self._natural()
            if not denominator:
                raise ParseError('zero denominator', position)
        return exact.scalar(numerator, denominator, self._domain)

    def _imaginary_unit(self) -> exact.Scalar:
        token = self._expect('i')
        if not self._space.is_gaussian:
            raise ParseError('imaginary unit outside gaussian mode',
                             token.position)
        return exact.gaussian(0, 1)

    def _real_or_imaginary(self) -> exact.Scalar:
        """A rational, optionally followed by i, or a bare i."""
        if self._at('i'):
            return self._imaginary_unit()
        value = self._rational()
        if self._at('i'):
            value = value * self._imaginary_unit()
        return value

    def _signed_sum(self) -> exact.Scalar:
        """[sign] a [sign b], as in "-1/2+3i"."""
        negative = False
        if self._at('+') or self._at('-'):
            negative = self._next().text == '-'
        value = self._real_or_imaginary()
        if negative:
            value = -value
        if self._at('+') or self._at('-'):
            negative = self._next().text == '-'
            extra = self._real_or_imaginary()
            value = value - extra if negative else value + extra
        return value

    def _parenthesized(self) -> exact.Scalar:
        self._expect('(')
        value = self._signed_sum()
        self._expect(')')
        return value

    def _coefficient(self) -> exact.Scalar:
        if self._at('('):
            return self._parenthesized()
        return self._real_or_imaginary()

    def _term(self) -> tuple[exact.Scalar, tuple[int, ...], int]:
        coeff = self._domain.one
        token = self._peek()
        if token.kind == 'number' or self._at('(') or self._at('i'):
            coeff = self._coefficient()
            self._expect('*')
        exponents = [0] * self._space.n
        while True:
            token = self._peek()
            if self._at('x'):
                self._next()
                variable = self._index_in_range()
                power = 1
                if self._at('^'):
                    self._next()
                    power, _ = self._natural()
                exponents[variable] += power
                self._expect('*')
            elif self._at('d'):
                self._next()
                direction = self._index_in_range()
                return coeff, tuple(exponents), direction
            else:
                found = token.text or 'end of input'
                raise ParseError(f"expected 'x' or 'd', found {found!r}",
                                 token.position)

    def parse(self) -> polyfield.PolyVectorField:
        """Parse the whole text."""
        space = self._space
        tokens = self._tokens
        if (
            len(tokens) == 2 and tokens[0].kind == 'number'
            and int(tokens[0].text) == 0
        ):
            return polyfield.PolyVectorField.zero(space)
        if tokens[0].kind == 'end':
            raise ParseError('empty field', 0)
        terms: dict[polyfield.Key, exact.Scalar] = dict()
        negative = False
        if self._at('+') or self._at('-'):
            negative = self._next().text == '-'
        while True:
            coeff, exponents, direction = self._term()
            if negative:
                coeff = -coeff
            key = (exponents, direction)
            terms[key] = terms.get(key, self._domain.zero) + coeff
            token = self._next()
            if token.kind == 'end':
                break
            if token.text not in ('+', '-'):
                raise ParseError(f"expected '+' or '-', found {token.text!r}",
                                 token.position)
            negative = token.text == '-'
        return polyfield.PolyVectorField.from_terms(space, terms)

    def scalar(self) -> exact.Scalar:
        """Parse the whole text as one signed coefficient."""
        value = self._signed_sum()
        token = self._next()
        if token.kind != 'end':
            raise ParseError(f'unexpected {token.text!r}', token.position)
        return value


def parse_field(
    text: str, space: polyfield.SpaceDescriptor
) -> polyfield.PolyVectorField:
    """Parse one field.

    Raises:
      ParseError: With the offending character position.
      IndexOutOfRange: An x or d index is not in 1..n.
    """
    return _Parser(text, space).parse()


def parse_lines(
    lines: typing.Iterable[str], space: polyfield.SpaceDescriptor
) -> list[polyfield.PolyVectorField]:
    """Parse a basis file: one field per line, '#' starts a comment."""
    fields = list()
    for number, line in enumerate(lines, start=1):
        content = line.split('#', 1)[0]
        if not content.strip():
            continue
        try:
            fields.append(parse_field(content, space))
        except ParseError as err:
            raise type(err)(err.message, err.position, number) from err
    return fields


def parse_scalar(text: str, space: polyfield.SpaceDescriptor) -> exact.Scalar:
    """Parse a coefficient the way exact.format_scalar() writes it.

    Examples: "3", "-1/2", "1/2-3i", "-i".

    Raises:
      ParseError: With the offending character position.
    """
    if not text.strip():
        raise ParseError('empty scalar', 0)
    return _Parser(text, space).scalar()


def _split_coefficient(coeff: exact.Scalar) -> tuple[bool, str]:
    """(negative, magnitude text) with '' for a unit magnitude."""
    real = exact.real_part(coeff)
    imag = exact.imag_part(coeff)
    if not imag:
        negative = real < 0
        magnitude = -real if negative else real
        return negative, '' if magnitude == 1 else exact.format_rational(
            magnitude
        )
    if not real:
        negative = imag < 0
        magnitude = -imag if negative else imag
        if magnitude == 1:
            return negative, 'i'
        return negative, f'{exact.format_rational(magnitude)}i'
    return False, f'({exact.format_scalar(coeff)})'


def _monomial_text(alpha: tuple[int, ...]) -> str:
    parts = list()
    for index, power in enumerate(alpha):
        if power == 1:
            parts.append(f'x{index + 1}')
        elif power > 1:
            parts.append(f'x{index + 1}^{power}')
    return '*'.join(parts)


def format_field(x: polyfield.PolyVectorField) -> str:
    """Canonical text for a field; the zero field is '0'."""
    if x.is_zero:
        return '0'
    pieces = list()
    for (alpha, direction), coeff in x.terms():
        negative, magnitude = _split_coefficient(coeff)
        parts = (magnitude, _monomial_text(alpha), f'd{direction + 1}')
        body = '*'.join(part for part in parts if part)
        if not pieces:
            pieces.append(f'-{body}' if negative else body)
        else:
            pieces.append(f' - {body}' if negative else f' + {body}')
    return ''.join(pieces)

#!usr/bin/env
#Exact weights for codeword priors: rationals and Laurent polynomials in q.
#A prior weight is written as a signed sum of monomials c*q^e with rational
#coefficients and integer (possibly negative) exponents, and is evaluated at
#the rational q = (1-p)/p of the channel. Nothing here ever touches a float.
#
#  Typical usage example:
#  Evaluate the normalizer of a four codeword prior at q = 2
#  >>> w = mt.parse_weight("2 + q^2 + q^-2")
#  >>> print(w)
#  q^2 + 2 + q^-2
#  >>> mt.eval_weight(w, q=2)
#  Fraction(25, 4)
#


import re
from fractions import Fraction
from numbers import Rational
from map_ties.extra import MapTiesError, WeightSyntaxError, InstanceError



_TOKEN = re.compile(r"\s*(?:(?P<int>\d+)|(?P<op>[-+*/^])|(?P<var>q))")
_RATIONAL = re.compile(r"^\s*(?P<num>[-+]?\d+)(?:\s*/\s*(?P<den>\d+))?\s*$")



#==================================================
#LaurentWeight
#==================================================
class LaurentWeight:
    """An exact Laurent polynomial in q with rational coefficients

    Attributes
    ----------
    terms : `dict`
        Map from integer exponent to nonzero Fraction coefficient. Zero
        coefficients are never stored, so the zero polynomial has no terms \n

    Examples
    --------
    >>> w = LaurentWeight({2: 1, 0: 2, -2: 1})
    >>> w * LaurentWeight({-2: 1})
    LaurentWeight('1 + 2*q^-2 + q^-4')
    >>> (w - w).is_zero()
    True
    """

    __slots__ = ("_items",)

    def __init__(self, terms=None):
        merged = {}
        for exponent, coefficient in dict(terms or {}).items():
            if int(exponent) != exponent:
                raise MapTiesError(f"exponent {exponent!r} is not an integer")
            coefficient = Fraction(coefficient)
            if coefficient:
                merged[int(exponent)] = coefficient
        self._items = tuple(sorted(merged.items(), reverse=True))

    @classmethod
    def constant(cls, value):
        return cls({0: value})

    @classmethod
    def monomial(cls, exponent: int, coefficient=1):
        return cls({exponent: coefficient})

    @property
    def terms(self) -> dict:
        return dict(self._items)

    def is_zero(self) -> bool:
        return not self._items

    def is_monomial(self) -> bool:
        return len(self._items) == 1

    def evaluate(self, q) -> Fraction:
        return eval_weight(self, q)

    def __eq__(self, other):
        if isinstance(other, LaurentWeight):
            return self._items == other._items
        if isinstance(other, (int, Rational)):
            return self == LaurentWeight.constant(other)
        return NotImplemented

    def __hash__(self):
        return hash(self._items)

    def __neg__(self):
        return LaurentWeight({e: -c for e, c in self._items})

    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        total = self.terms
        for e, c in other._items:
            total[e] = total.get(e, 0) + c
        return LaurentWeight(total)

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        product = {}
        for e1, c1 in self._items:
            for e2, c2 in other._items:
                product[e1 + e2] = product.get(e1 + e2, 0) + c1 * c2
        return LaurentWeight(product)

    __rmul__ = __mul__

    def __bool__(self):
        return not self.is_zero()

    def __str__(self):
        return format_weight(self)

    def __repr__(self):
        return f"LaurentWeight({format_weight(self)!r})"


def _coerce(value):
    if isinstance(value, LaurentWeight):
        return value
    if isinstance(value, (int, Rational)):
        return LaurentWeight.constant(value)
    return NotImplemented



#==================================================
#format_weight
#==================================================
def format_weight(w: LaurentWeight) -> str:
    """Returns the canonical text of a weight, exponents descending

    Notes
    -----
    The output is itself a valid weight expression, so parsing it gives
    back the same term map. A unit coefficient is omitted and q^1 prints
    as q.

    Parameters
    ----------
    w : `LaurentWeight`
        The weight to print \n

    Returns
    -------
    str
        Text such as ``q^2 - 1/3*q^-1`` \n

    Examples
    --------
    >>> mt.format_weight(mt.parse_weight("q^-2 + 2 + q^2"))
    'q^2 + 2 + q^-2'
    """

    if w.is_zero():
        return "0"
    pieces = []
    for exponent, coefficient in w.terms.items():
        magnitude = abs(coefficient)
        if exponent == 0:
            body = str(magnitude)
        else:
            power = "q" if exponent == 1 else f"q^{exponent}"
            body = power if magnitude == 1 else f"{magnitude}*{power}"
        if not pieces:
            pieces.append(("-" if coefficient < 0 else "") + body)
        else:
            pieces.append((" - " if coefficient < 0 else " + ") + body)
    return "".join(pieces)



#==================================================
#parse_weight
#==================================================
def parse_weight(text: str, nonzero=False) -> LaurentWeight:
    """Returns the LaurentWeight written by a weight expression

    Notes
    -----
    The grammar is a signed sum of terms, where a term is a rational, a
    rational followed by an optional '*' and a power of q, or a bare power
    of q. Rationals are 'a' or 'a/b' with b positive, powers are 'q' or
    'q^e' with e a signed integer. Whitespace is ignored and like terms are
    merged.

    Parameters
    ----------
    text : `str`
        The weight expression \n
    nonzero : `bool`
        Reject an expression that collapses to the zero polynomial, as a
        prior weight must. Default is False \n

    Returns
    -------
    LaurentWeight
        The canonical term map \n

    Raises
    ------
    WeightSyntaxError
        On malformed input, with the 0-based offset of the offending token \n
    InstanceError
        When nonzero is set and the weight is the zero polynomial \n

    Examples
    --------
    >>> mt.parse_weight("2 + q^2 + q^-2").terms
    {2: Fraction(1, 1), 0: Fraction(2, 1), -2: Fraction(1, 1)}
    >>> mt.parse_weight("1/3*q^-1 + 1/3*q^-1").terms
    {-1: Fraction(2, 3)}
    """

    weight = _Parser(text).parse()
    if nonzero and weight.is_zero():
        raise InstanceError(f"prior weight {text!r} is the zero polynomial")
    return weight


class _Parser:
    #recursive descent over (kind, value, position) tokens

    def __init__(self, text: str):
        if not isinstance(text, str):
            raise WeightSyntaxError(f"expected a string, got {type(text).__name__}", 0)
        self.text = text
        self.tokens = self._tokenize(text)
        self.index = 0

    @staticmethod
    def _tokenize(text):
        tokens = []
        position = 0
        while position < len(text):
            if text[position:].strip() == "":
                break
            match = _TOKEN.match(text, position)
            if match is None:
                offset = position + len(text[position:]) - len(text[position:].lstrip())
                raise WeightSyntaxError(f"unexpected character {text[offset]!r}", offset)
            kind = match.lastgroup
            tokens.append((kind, match.group(kind), match.start(kind)))
            position = match.end()
        tokens.append(("end", "", len(text)))
        return tokens

    def peek(self):
        return self.tokens[self.index]

    def take(self):
        token = self.tokens[self.index]
        self.index += 1
        return token

    def expect_int(self, what: str) -> int:
        kind, value, position = self.take()
        if kind != "int":
            raise WeightSyntaxError(f"expected {what}", position)
        return int(value)

    def parse(self) -> LaurentWeight:
        kind, value, position = self.peek()
        if kind == "end":
            raise WeightSyntaxError("empty weight expression", position)
        sign = 1
        if kind == "op" and value in "+-":
            self.take()
            sign = -1 if value == "-" else 1
        total = {}
        while True:
            exponent, coefficient = self.term()
            total[exponent] = total.get(exponent, 0) + sign * coefficient
            kind, value, position = self.take()
            if kind == "end":
                return LaurentWeight(total)
            if kind == "op" and value in "+-":
                sign = -1 if value == "-" else 1
                continue
            raise WeightSyntaxError(f"expected '+' or '-', found {value!r}", position)

    def term(self):
        kind, value, position = self.peek()
        if kind == "var":
            return self.power(), Fraction(1)
        if kind != "int":
            raise WeightSyntaxError("expected a number or q", position)
        coefficient = Fraction(self.expect_int("a number"))
        kind, value, position = self.peek()
        if kind == "op" and value == "/":
            self.take()
            denominator_position = self.peek()[2]
            denominator = self.expect_int("a denominator")
            if denominator == 0:
                raise WeightSyntaxError("denominator must be positive", denominator_position)
            coefficient /= denominator
            kind, value, position = self.peek()
        if kind == "op" and value == "*":
            self.take()
            kind, value, position = self.peek()
            if kind != "var":
                raise WeightSyntaxError("expected q after '*'", position)
            return self.power(), coefficient
        if kind == "var":
            return self.power(), coefficient
        return 0, coefficient

    def power(self) -> int:
        self.take()
        kind, value, position = self.peek()
        if not (kind == "op" and value == "^"):
            return 1
        self.take()
        sign = 1
        kind, value, position = self.peek()
        if kind == "op" and value in "+-":
            self.take()
            sign = -1 if value == "-" else 1
        return sign * self.expect_int("an integer exponent")



#==================================================
#parse_rational
#==================================================
def parse_rational(text) -> Fraction:
    """Returns the Fraction written as 'a' or 'a/b'

    >>> mt.parse_rational("1/3")
    Fraction(1, 3)
    """

    if isinstance(text, (int, Rational)) and not isinstance(text, bool):
        return Fraction(text)
    match = _RATIONAL.match(str(text))
    if match is None:
        raise MapTiesError(f"{text!r} is not a rational of the form a or a/b")
    denominator = int(match.group("den") or 1)
    if denominator == 0:
        raise MapTiesError(f"{text!r} has a zero denominator")
    return Fraction(int(match.group("num")), denominator)


def format_rational(value) -> str:
    """Exact text of a rational, 'a/b' or 'a'"""

    return str(Fraction(value))



#==================================================
#as_weight
#==================================================
def as_weight(value, nonzero=False) -> LaurentWeight:
    """Coerce a weight given as text, a rational or a LaurentWeight"""

    if isinstance(value, LaurentWeight):
        weight = value
    elif isinstance(value, str):
        return parse_weight(value, nonzero=nonzero)
    elif isinstance(value, (int, Rational)) and not isinstance(value, bool):
        weight = LaurentWeight.constant(value)
    else:
        raise MapTiesError(f"cannot read a weight from {value!r}")
    if nonzero and weight.is_zero():
        raise InstanceError("prior weight is the zero polynomial")
    return weight



#==================================================
#eval_weight
#==================================================
def eval_weight(w: LaurentWeight, q) -> Fraction:
    """Returns the exact value of a weight at a positive rational q

    Parameters
    ----------
    w : `LaurentWeight`
        The weight \n
    q : `Fraction`
        The point of evaluation, q > 0 \n

    Returns
    -------
    Fraction
        The sum of c * q**e over the terms \n

    Examples
    --------
    >>> mt.eval_weight(mt.parse_weight("2 + q^2 + q^-2"), q=2)
    Fraction(25, 4)
    >>> mt.eval_weight(mt.parse_weight("3*q^-1"), q=Fraction(3, 2))
    Fraction(2, 1)
    """

    q = Fraction(q)
    if q <= 0:
        raise MapTiesError(f"weights are evaluated at q > 0, got {q}")
    return sum((c * q**e for e, c in w.terms.items()), Fraction(0))

"""
Exact polynomials with rational coefficients in the family parameters a, b, g, d.

The ring is sympy's sparse polynomial ring over QQ with graded lexicographic
order, so every value is already in canonical form (no zero coefficients,
reduced rationals) and structural equality is mathematical equality.
"""
import re
from fractions import Fraction
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

from sympy import Integer, Symbol
from sympy.core.sympify import SympifyError
from sympy.parsing.sympy_parser import (
    convert_xor,
    parse_expr,
    standard_transformations,
)
from sympy.polys.domains import QQ
from sympy.polys.groebnertools import groebner
from sympy.polys.orderings import grlex
from sympy.polys.rings import PolyElement, ring
from tokenize import TokenError

from liecodazzi.config import MAX_EXPONENT
from liecodazzi.exceptions import UsageError

VARIABLES = ("a", "b", "g", "d")
GREEK = {"a": "α", "b": "β", "g": "γ", "d": "δ", "e": "η"}
LONG_NAMES = {"a": "alpha", "b": "beta", "g": "gamma", "d": "delta", "e": "eta"}

RING, ALPHA, BETA, GAMMA, DELTA = ring(",".join(VARIABLES), QQ, grlex)
GENERATORS = dict(zip(VARIABLES, RING.gens))
ZERO = RING.zero
ONE = RING.one

Polynomial = PolyElement
Scalar = Union[int, Fraction]

_SYMBOLS = {name: Symbol(name) for name in VARIABLES}
_TRANSFORMATIONS = standard_transformations + (convert_xor,)
_FROM_GREEK = str.maketrans({greek: ascii for ascii, greek in GREEK.items()})
_ALLOWED_CHARACTERS = re.compile(r"^[0-9A-Za-z_+\-*/^()\s]*$")
# A power must be a plain integer literal that is not itself raised to a power.
_POWER = re.compile(r"(?:\^|\*\*)\s*(\d*)(\s*(?:\^|\*\*))?")
_IDENTIFIER = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")


def to_ascii(text: str) -> str:
    """Replace Greek parameter names by their ASCII letters."""
    return text.translate(_FROM_GREEK)


def to_qq(value: Scalar):
    value = Fraction(value)
    return QQ(value.numerator, value.denominator)


def to_fraction(coefficient) -> Fraction:
    return Fraction(int(coefficient.numerator), int(coefficient.denominator))


def const(value: Scalar) -> Polynomial:
    return RING.ground_new(to_qq(value))


def var(name: str) -> Polynomial:
    try:
        return GENERATORS[name]
    except KeyError:
        raise UsageError(
            f"unknown parameter {name!r}; expected one of {', '.join(VARIABLES)}"
        )


def _canonical(p: Polynomial) -> Polynomial:
    assert all(coefficient for coefficient in p.values()), "zero coefficient stored"
    return p


def add(p: Polynomial, q: Polynomial) -> Polynomial:
    return _canonical(p + q)


def mul(p: Polynomial, q: Polynomial) -> Polynomial:
    return _canonical(p * q)


def scale(c: Scalar, p: Polynomial) -> Polynomial:
    return _canonical(p.mul_ground(to_qq(c)))


def substitute(p: Polynomial, assignment: Mapping[str, Polynomial]) -> Polynomial:
    """Simultaneously replace the assigned variables; others pass through."""
    if not assignment:
        return p
    replacements = [(var(name), value) for name, value in assignment.items()]
    return _canonical(p.compose(replacements))


def evaluate(p: Polynomial, point: Mapping[str, Scalar]) -> Fraction:
    missing = [name for name in VARIABLES if name not in point]
    if missing:
        raise UsageError(f"point does not assign {', '.join(missing)}")
    value = p.compose([(GENERATORS[name], const(point[name])) for name in VARIABLES])
    return to_fraction(value.get(RING.zero_monom, QQ.zero))


def is_zero(p: Polynomial) -> bool:
    return not p


def is_constant(p: Polynomial) -> bool:
    return all(not any(monomial) for monomial in p.keys())


def proportional(p: Polynomial, q: Polynomial) -> bool:
    """True when p is a nonzero rational multiple of q."""
    if not p or not q:
        return False
    return p.mul_ground(q.LC) == q.mul_ground(p.LC)


def remainder(p: Polynomial, divisors: Sequence[Polynomial]) -> Polynomial:
    divisors = [divisor for divisor in divisors if divisor]
    if not divisors or not p:
        return p
    if len(divisors) > 1:
        # Division by a Groebner basis makes the remainder zero exactly on the ideal.
        divisors = groebner(divisors, RING)
    return p.rem(divisors)


def variables_of(p: Polynomial) -> Tuple[str, ...]:
    used = set()
    for monomial in p.keys():
        used.update(name for name, exponent in zip(VARIABLES, monomial) if exponent)
    return tuple(name for name in VARIABLES if name in used)


def linear_split(p: Polynomial, name: str) -> Optional[Tuple[Polynomial, Polynomial]]:
    """Return (c, r) with p = c*name + r when p has degree exactly 1 in name."""
    index = VARIABLES.index(name)
    if not p or p.degree(GENERATORS[name]) != 1:
        return None
    coefficient, rest = RING.zero, RING.zero
    for monomial, value in p.terms():
        if monomial[index]:
            lowered = monomial[:index] + (0,) + monomial[index + 1 :]
            coefficient += RING.term_new(lowered, value)
        else:
            rest += RING.term_new(monomial, value)
    return coefficient, rest


def _monomial_text(monomial: Tuple[int, ...], names: Mapping[str, str]) -> str:
    factors = []
    for name, exponent in zip(VARIABLES, monomial):
        if exponent == 1:
            factors.append(names[name])
        elif exponent > 1:
            factors.append(f"{names[name]}^{exponent}")
    return "*".join(factors)


def _term_text(monomial, coefficient: Fraction, names) -> str:
    numerator, denominator = abs(coefficient.numerator), coefficient.denominator
    body = _monomial_text(monomial, names)
    if not body:
        return str(numerator) if denominator == 1 else f"{numerator}/{denominator}"
    text = body if numerator == 1 else f"{numerator}*{body}"
    return text if denominator == 1 else f"{text}/{denominator}"


def render(p: Polynomial, unicode: bool = False) -> str:
    """
    Human form, terms in descending graded lexicographic order.

    A polynomial whose coefficients are all negative is printed as -(...),
    e.g. -(a^2+b^2).
    """
    if not p:
        return "0"
    names = GREEK if unicode else {name: name for name in VARIABLES}
    terms = [(monomial, to_fraction(value)) for monomial, value in p.terms()]
    if len(terms) > 1 and all(value < 0 for _, value in terms):
        return "-(" + render(-p, unicode) + ")"
    text = ""
    for position, (monomial, value) in enumerate(terms):
        sign = "-" if value < 0 else ("+" if position else "")
        text += sign + _term_text(monomial, value, names)
    return text


def to_json(p: Polynomial) -> List[Dict]:
    encoded = []
    for monomial, value in p.terms():
        value = to_fraction(value)
        encoded.append(
            {
                "coeff": f"{value.numerator}/{value.denominator}",
                "exps": {
                    name: exponent
                    for name, exponent in zip(VARIABLES, monomial)
                    if exponent
                },
            }
        )
    return encoded


def from_json(encoded: Iterable[Mapping]) -> Polynomial:
    p = RING.zero
    for term in encoded:
        try:
            coefficient = Fraction(term["coeff"])
            exponents = term.get("exps", {})
            monomial = tuple(int(exponents.get(name, 0)) for name in VARIABLES)
        except (KeyError, ValueError, TypeError, ZeroDivisionError) as error:
            raise UsageError(f"malformed polynomial term {term!r}: {error}")
        unknown = set(exponents) - set(VARIABLES)
        if unknown or any(exponent < 0 for exponent in monomial):
            raise UsageError(f"malformed polynomial term {term!r}")
        p += RING.term_new(monomial, to_qq(coefficient))
    return _canonical(p)


def parse(
    text: str,
    eta: Optional[int] = None,
    definitions: Optional[Mapping[str, str]] = None,
) -> Polynomial:
    """
    Parse human polynomial text into the ring.

    Accepts ASCII (a, b, g, d) or Greek names, ^ or ** for powers and rational
    literals. Decimals are rejected and exponents are integer literals no larger
    than MAX_EXPONENT. `e` stands for eta and is only allowed when a sign
    is supplied; `definitions` maps extra names (such as derived constants) to text.
    """
    source = to_ascii(text).strip()
    if not source:
        raise UsageError("empty polynomial text")
    if not _ALLOWED_CHARACTERS.match(source):
        raise UsageError(f"unexpected characters in polynomial {text!r}")
    _check_powers(source, text)
    local = dict(_SYMBOLS)
    if eta is not None:
        local["e"] = Integer(eta)
    for name, definition in (definitions or {}).items():
        _check_powers(definition, definition)
        local[name] = _parse_expression(definition, local, definition)
    unknown = sorted(set(_IDENTIFIER.findall(source)) - set(local))
    if unknown:
        raise UsageError(f"unknown names {', '.join(unknown)} in {text!r}")
    expression = _parse_expression(source, local, text)
    try:
        return _canonical(RING.from_expr(expression))
    except ValueError:
        raise UsageError(f"{text!r} is not a polynomial in {', '.join(VARIABLES)}")


def _parse_expression(source: str, local: Dict, original: str):
    try:
        return parse_expr(
            source, local_dict=dict(local), transformations=_TRANSFORMATIONS
        )
    except (
        SyntaxError,
        TokenError,
        SympifyError,
        TypeError,
        AttributeError,
        NameError,
        ValueError,
    ) as error:
        raise UsageError(f"cannot parse {original!r}: {error}")


def _check_powers(source: str, original: str) -> None:
    for match in _POWER.finditer(source):
        digits, chained = match.groups()
        if not digits or chained:
            raise UsageError(
                f"powers in {original!r} must be integer literals, not expressions"
            )
        if int(digits) > MAX_EXPONENT:
            raise UsageError(f"exponent {digits} in {original!r} exceeds {MAX_EXPONENT}")

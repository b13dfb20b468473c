"""Multivariate Laurent polynomials with integer coefficients.

A ring is described by an ordered list of named variables, each flagged
invertible or not.  Negative exponents are permitted exactly on the
invertible variables.  Polynomials are kept in canonical sparse form:
a mapping from exponent vectors (one integer per ring variable, in ring
order) to nonzero integer coefficients.  Equal values always have equal
term mappings, so ``==`` and ``hash`` are structural.

The module also provides a small expression parser (`parse`) and two
renderers (`render`) whose plain style round-trips through the parser.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Mapping

__all__ = [
    "RingSpec",
    "LaurentPoly",
    "LaurentError",
    "LaurentParseError",
    "parse",
    "render",
    "arith",
]


class LaurentError(ValueError):
    """Raised for ill-formed ring elements or invalid operations."""


class LaurentParseError(LaurentError):
    """Parse failure; carries the byte offset of the offending token."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (at offset {offset})")
        self.offset = offset


_NAME_RE = re.compile(r"[A-Za-z_][A-Za-z_0-9]*")


@dataclass(frozen=True)
class RingSpec:
    """An ordered collection of variables, each marked invertible or not."""

    variables: tuple[tuple[str, bool], ...]

    def __post_init__(self) -> None:
        seen = set()
        for name, invertible in self.variables:
            if not _NAME_RE.fullmatch(name):
                raise LaurentError(f"bad variable name {name!r}")
            if name in seen:
                raise LaurentError(f"duplicate variable {name!r}")
            if not isinstance(invertible, bool):
                raise LaurentError(f"invertibility flag for {name!r} must be bool")
            seen.add(name)

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(name for name, _ in self.variables)

    def index(self, name: str) -> int:
        for i, (var, _) in enumerate(self.variables):
            if var == name:
                return i
        raise LaurentError(f"unknown variable {name!r}")

    def invertible(self, name: str) -> bool:
        return self.variables[self.index(name)][1]

    def extended(self, extra: Iterable[tuple[str, bool]]) -> "RingSpec":
        """New ring with additional variables appended after the current ones."""
        return RingSpec(self.variables + tuple(extra))


def _check_exponents(ring: RingSpec, exps: tuple[int, ...]) -> None:
    if len(exps) != len(ring.variables):
        raise LaurentError(
            f"exponent vector length {len(exps)} != ring arity {len(ring.variables)}"
        )
    for (name, invertible), e in zip(ring.variables, exps):
        if e < 0 and not invertible:
            raise LaurentError(f"negative exponent on non-invertible variable {name!r}")


class LaurentPoly:
    """Immutable Laurent polynomial over a fixed ring.

    `terms` maps exponent vectors to nonzero integer coefficients; the
    zero polynomial has an empty mapping.  Arithmetic never produces a
    negative exponent on a non-invertible variable unless one was already
    present in an operand, so validation happens only at construction
    boundaries (`monomial`, `parse`, `substitute`).
    """

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring: RingSpec, terms: Mapping[tuple[int, ...], int], *, _trusted: bool = False):
        clean: dict[tuple[int, ...], int] = {}
        if _trusted:
            clean = dict(terms)
        else:
            for exps, coeff in terms.items():
                exps = tuple(exps)
                if not isinstance(coeff, int):
                    raise LaurentError(f"coefficient {coeff!r} is not an integer")
                _check_exponents(ring, exps)
                if coeff:
                    clean[exps] = clean.get(exps, 0) + coeff
            clean = {e: c for e, c in clean.items() if c}
        self.ring = ring
        self.terms = clean
        self._hash = None

    def __setattr__(self, name, value):
        if hasattr(self, "_hash") and name != "_hash":
            raise AttributeError("LaurentPoly is immutable")
        object.__setattr__(self, name, value)

    # -- constructors -------------------------------------------------

    @staticmethod
    def zero(ring: RingSpec) -> "LaurentPoly":
        return LaurentPoly(ring, {}, _trusted=True)

    @staticmethod
    def const(ring: RingSpec, value: int) -> "LaurentPoly":
        if not isinstance(value, int):
            raise LaurentError(f"constant {value!r} is not an integer")
        zero_exps = (0,) * len(ring.variables)
        return LaurentPoly(ring, {zero_exps: value} if value else {}, _trusted=True)

    @staticmethod
    def var(ring: RingSpec, name: str, power: int = 1) -> "LaurentPoly":
        exps = [0] * len(ring.variables)
        exps[ring.index(name)] = power
        return LaurentPoly.monomial(ring, dict(zip(ring.names, exps)), 1)

    @staticmethod
    def monomial(ring: RingSpec, exponents: Mapping[str, int], coeff: int) -> "LaurentPoly":
        exps = [0] * len(ring.variables)
        for name, e in exponents.items():
            exps[ring.index(name)] = e
        return LaurentPoly(ring, {tuple(exps): coeff})

    # -- queries ------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_unit_monomial(self) -> bool:
        """True when the value is +/- a single monomial in invertible variables."""
        if len(self.terms) != 1:
            return False
        (exps, coeff), = self.terms.items()
        if coeff not in (1, -1):
            return False
        return all(
            e == 0 or invertible
            for (_, invertible), e in zip(self.ring.variables, exps)
        )

    def constant_value(self) -> int:
        """Integer value, provided the polynomial is constant."""
        if not self.terms:
            return 0
        zero_exps = (0,) * len(self.ring.variables)
        if set(self.terms) == {zero_exps}:
            return self.terms[zero_exps]
        raise LaurentError("polynomial is not constant")

    # -- arithmetic ---------------------------------------------------

    def _require_same_ring(self, other: "LaurentPoly") -> None:
        if self.ring != other.ring:
            raise LaurentError("operands live in different rings")

    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        self._require_same_ring(other)
        terms = dict(self.terms)
        for exps, coeff in other.terms.items():
            total = terms.get(exps, 0) + coeff
            if total:
                terms[exps] = total
            else:
                terms.pop(exps, None)
        return LaurentPoly(self.ring, terms, _trusted=True)

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly(self.ring, {e: -c for e, c in self.terms.items()}, _trusted=True)

    def __sub__(self, other: "LaurentPoly") -> "LaurentPoly":
        return self + (-other)

    def __mul__(self, other: "LaurentPoly") -> "LaurentPoly":
        self._require_same_ring(other)
        terms: dict[tuple[int, ...], int] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                exps = tuple(a + b for a, b in zip(e1, e2))
                total = terms.get(exps, 0) + c1 * c2
                if total:
                    terms[exps] = total
                else:
                    terms.pop(exps, None)
        return LaurentPoly(self.ring, terms, _trusted=True)

    def scaled(self, factor: int) -> "LaurentPoly":
        if factor == 0:
            return LaurentPoly.zero(self.ring)
        return LaurentPoly(self.ring, {e: c * factor for e, c in self.terms.items()}, _trusted=True)

    def __pow__(self, n: int) -> "LaurentPoly":
        if not isinstance(n, int):
            raise LaurentError("exponent must be an integer")
        if n < 0:
            return self.unit_inverse() ** (-n)
        result = LaurentPoly.const(self.ring, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def unit_inverse(self) -> "LaurentPoly":
        """Inverse of a +/-1-coefficient monomial in invertible variables."""
        if not self.is_unit_monomial():
            raise LaurentError("inverse requires a unit monomial (+/-1 coefficient, invertible variables)")
        (exps, coeff), = self.terms.items()
        return LaurentPoly(self.ring, {tuple(-e for e in exps): coeff}, _trusted=True)

    def unit_divide(self, divisor: "LaurentPoly") -> "LaurentPoly":
        """Exact division by a unit monomial."""
        self._require_same_ring(divisor)
        return self * divisor.unit_inverse()

    def substitute(self, bindings: Mapping[str, "LaurentPoly"], target: RingSpec) -> "LaurentPoly":
        """Map each ring variable to a polynomial over `target`.

        Every variable of the source ring must be bound.  Negative source
        exponents require the bound value to be a unit monomial.
        """
        for name in self.ring.names:
            if name not in bindings:
                raise LaurentError(f"no binding for variable {name!r}")
        for name, value in bindings.items():
            self.ring.index(name)
            if value.ring != target:
                raise LaurentError(f"binding for {name!r} lives in the wrong ring")
        result = LaurentPoly.zero(target)
        images = [bindings[name] for name in self.ring.names]
        for exps, coeff in self.terms.items():
            term = LaurentPoly.const(target, coeff)
            for image, e in zip(images, exps):
                if e:
                    term = term * (image ** e)
            result = result + term
        return result

    def rename_into(self, target: RingSpec) -> "LaurentPoly":
        """Reinterpret over `target`, matching variables by name."""
        positions = [target.index(name) for name in self.ring.names]
        width = len(target.variables)
        terms: dict[tuple[int, ...], int] = {}
        for exps, coeff in self.terms.items():
            new = [0] * width
            for pos, e in zip(positions, exps):
                new[pos] = e
            terms[tuple(new)] = coeff
        out = LaurentPoly(target, terms)
        return out

    # -- structural equality ------------------------------------------

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.ring == other.ring and self.terms == other.terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self.terms.items())))
        return self._hash

    def __repr__(self) -> str:
        return f"LaurentPoly({render(self)!r})"


# -- rendering --------------------------------------------------------


def _term_sort_key(names: tuple[str, ...]):
    def key(item: tuple[tuple[int, ...], int]):
        exps, _ = item
        # Ascending total degree; ties broken by exponent vector, larger first.
        return (sum(exps), tuple(-e for e in exps))

    return key


def _render_monomial_plain(names: tuple[str, ...], exps: tuple[int, ...], coeff: int) -> str:
    factors = []
    for name, e in zip(names, exps):
        if e == 0:
            continue
        factors.append(name if e == 1 else f"{name}^{e}")
    magnitude = abs(coeff)
    if not factors:
        return str(magnitude)
    body = "*".join(factors)
    return body if magnitude == 1 else f"{magnitude}*{body}"


def _render_monomial_latex(names: tuple[str, ...], exps: tuple[int, ...], coeff: int) -> str:
    factors = []
    for name, e in zip(names, exps):
        if e == 0:
            continue
        factors.append(name if e == 1 else f"{name}^{{{e}}}")
    magnitude = abs(coeff)
    if not factors:
        return str(magnitude)
    body = " ".join(factors)
    return body if magnitude == 1 else f"{magnitude} {body}"


def render(poly: LaurentPoly, style: str = "plain") -> str:
    """Deterministic text form; `style` is "plain" or "latex"."""
    if style not in ("plain", "latex"):
        raise LaurentError(f"unknown render style {style!r}")
    if poly.is_zero():
        return "0"
    names = poly.ring.names
    pieces = []
    items = sorted(poly.terms.items(), key=_term_sort_key(names))
    fmt = _render_monomial_plain if style == "plain" else _render_monomial_latex
    for i, (exps, coeff) in enumerate(items):
        body = fmt(names, exps, coeff)
        if i == 0:
            pieces.append(body if coeff > 0 else f"-{body}")
        else:
            pieces.append(f"+ {body}" if coeff > 0 else f"- {body}")
    return " ".join(pieces)


# -- parsing ----------------------------------------------------------

_TOKEN_RE = re.compile(
    r"\s*(?:(?P<int>\d+)|(?P<name>[A-Za-z_][A-Za-z_0-9]*)|(?P<op>[()+\-*/^]))"
)


class _Parser:
    """Recursive-descent parser for +, -, *, /, ^ and parentheses.

    Division is only defined when the divisor evaluates to a unit
    monomial; exponents must be integer literals (optionally negative).
    """

    def __init__(self, text: str, ring: RingSpec):
        self.text = text
        self.ring = ring
        self.pos = 0
        self.tokens: list[tuple[str, str, int]] = []
        self._tokenize()
        self.index = 0

    def _tokenize(self) -> None:
        pos = 0
        text = self.text
        while pos < len(text):
            match = _TOKEN_RE.match(text, pos)
            if not match or match.end() == match.start():
                stripped = text[pos:].lstrip()
                if not stripped:
                    break
                bad_at = len(text) - len(stripped)
                raise LaurentParseError(f"unexpected character {text[bad_at]!r}", bad_at)
            kind = match.lastgroup
            value = match.group(kind)
            self.tokens.append((kind, value, match.start(kind)))
            pos = match.end()

    def _peek(self) -> tuple[str, str, int] | None:
        if self.index < len(self.tokens):
            return self.tokens[self.index]
        return None

    def _next(self) -> tuple[str, str, int]:
        tok = self._peek()
        if tok is None:
            raise LaurentParseError("unexpected end of input", len(self.text))
        self.index += 1
        return tok

    def parse(self) -> LaurentPoly:
        value = self._expr()
        tok = self._peek()
        if tok is not None:
            raise LaurentParseError(f"trailing input {tok[1]!r}", tok[2])
        return value

    def _expr(self) -> LaurentPoly:
        tok = self._peek()
        if tok and tok[1] == "-":
            self._next()
            value = -self._term()
        elif tok and tok[1] == "+":
            self._next()
            value = self._term()
        else:
            value = self._term()
        while True:
            tok = self._peek()
            if tok is None or tok[1] not in ("+", "-"):
                return value
            self._next()
            rhs = self._term()
            value = value + rhs if tok[1] == "+" else value - rhs

    def _term(self) -> LaurentPoly:
        value = self._factor()
        while True:
            tok = self._peek()
            if tok is None or tok[1] not in ("*", "/"):
                return value
            self._next()
            rhs = self._factor()
            if tok[1] == "*":
                value = value * rhs
            else:
                if not rhs.is_unit_monomial():
                    raise LaurentParseError(
                        "divisor must be a monomial with coefficient +/-1 in invertible variables",
                        tok[2],
                    )
                value = value.unit_divide(rhs)

    def _factor(self) -> LaurentPoly:
        tok = self._peek()
        if tok and tok[1] == "-":
            self._next()
            return -self._factor()
        base = self._atom()
        tok = self._peek()
        if tok and tok[1] == "^":
            caret = self._next()
            exponent = self._int_literal(caret[2])
            if exponent < 0 and not base.is_unit_monomial():
                raise LaurentParseError(
                    "negative power needs a unit monomial base", caret[2]
                )
            return base ** exponent
        return base

    def _int_literal(self, caret_offset: int) -> int:
        tok = self._peek()
        sign = 1
        if tok and tok[1] == "-":
            self._next()
            sign = -1
            tok = self._peek()
        if tok is None or tok[0] != "int":
            raise LaurentParseError("exponent must be an integer literal", caret_offset)
        self._next()
        return sign * int(tok[1])

    def _atom(self) -> LaurentPoly:
        tok = self._next()
        kind, value, offset = tok
        if kind == "int":
            return LaurentPoly.const(self.ring, int(value))
        if kind == "name":
            try:
                return LaurentPoly.var(self.ring, value)
            except LaurentError:
                raise LaurentParseError(f"unknown variable {value!r}", offset) from None
        if value == "(":
            inner = self._expr()
            closing = self._next()
            if closing[1] != ")":
                raise LaurentParseError("expected ')'", closing[2])
            return inner
        raise LaurentParseError(f"unexpected token {value!r}", offset)


def parse(text: str, ring: RingSpec) -> LaurentPoly:
    """Parse an integer Laurent expression over `ring`."""
    return _Parser(text, ring).parse()


def arith(kind: str, a: LaurentPoly, b: LaurentPoly | int) -> LaurentPoly:
    """Named dispatch over the ring operations.

    `kind` is one of "add", "sub", "mul", "pow", "unit_div"; `pow` takes
    an integer right-hand side.
    """
    if kind == "pow":
        if not isinstance(b, int):
            raise LaurentError("pow exponent must be an integer")
        return a ** b
    if not isinstance(b, LaurentPoly):
        raise LaurentError(f"operation {kind!r} needs a polynomial right-hand side")
    if kind == "add":
        return a + b
    if kind == "sub":
        return a - b
    if kind == "mul":
        return a * b
    if kind == "unit_div":
        return a.unit_divide(b)
    raise LaurentError(f"unknown operation {kind!r}")

"""Truncated Laurent series in (x, y, u) over exact rationals.

Invariant values live in Laurent polynomial rings; expanding them under
the exponential substitution v -> e^(x+y+u), w -> e^-x - e^x,
z -> e^-y - e^y turns skein differences into series whose lowest x/y
degrees measure how close the invariant comes to a two-variable finite
type behaviour.  Negative powers of w and z force genuinely Laurent
series, so every value tracks the total degree up to which it is
complete and arithmetic propagates that bound instead of pretending to
be exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .algebra import AlgebraInstance, make_instance
from .diagram import Diagram, switch
from .laurent import LaurentPoly

__all__ = [
    "SeriesError",
    "LaurentSeries",
    "ExpSubstitution",
    "exp_series",
    "series_inverse",
    "substitute_series",
    "exponential_substitution",
    "VassilievReport",
    "vassiliev_report",
]

VARIABLES = ("x", "y", "u")


class SeriesError(ValueError):
    pass


def _clean(terms: dict[tuple[int, int, int], Fraction], trunc: int) -> dict:
    return {
        e: c
        for e, c in terms.items()
        if c != 0 and sum(e) <= trunc
    }


@dataclass(frozen=True)
class LaurentSeries:
    """Finitely many (x, y, u) terms, complete up to total degree trunc.

    Exponents of u stay nonnegative; x and y may go negative through
    inversion.  Omitted terms of total degree <= trunc are genuinely
    zero; beyond trunc nothing is claimed.
    """

    terms: dict
    trunc: int

    def __post_init__(self):
        object.__setattr__(self, "terms", dict(_clean(self.terms, self.trunc)))
        for e in self.terms:
            if e[2] < 0:
                raise SeriesError("negative exponent on u is not representable")

    @staticmethod
    def zero(trunc: int) -> "LaurentSeries":
        return LaurentSeries({}, trunc)

    @staticmethod
    def const(value, trunc: int) -> "LaurentSeries":
        return LaurentSeries({(0, 0, 0): Fraction(value)}, trunc)

    def is_zero(self) -> bool:
        return not self.terms

    def min_total_degree(self):
        return min((sum(e) for e in self.terms), default=None)

    def min_degree(self, axis: int):
        return min((e[axis] for e in self.terms), default=None)

    def truncated(self, trunc: int) -> "LaurentSeries":
        if trunc > self.trunc:
            raise SeriesError(
                f"cannot extend truncation {self.trunc} to {trunc}"
            )
        return LaurentSeries(self.terms, trunc)

    def __add__(self, other: "LaurentSeries") -> "LaurentSeries":
        trunc = min(self.trunc, other.trunc)
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out.get(e, Fraction(0)) + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return LaurentSeries(out, trunc)

    def __neg__(self) -> "LaurentSeries":
        return LaurentSeries({e: -c for e, c in self.terms.items()}, self.trunc)

    def __sub__(self, other: "LaurentSeries") -> "LaurentSeries":
        return self + (-other)

    def __mul__(self, other: "LaurentSeries") -> "LaurentSeries":
        # absent terms of a factor contribute errors above its trunc
        # shifted by the other factor's minimal degree
        ma = self.min_total_degree()
        mb = other.min_total_degree()
        bounds = []
        if mb is not None:
            bounds.append(self.trunc + mb)
        if ma is not None:
            bounds.append(other.trunc + ma)
        if not bounds:
            bounds = [self.trunc + other.trunc]
        trunc = min(bounds)
        out: dict = {}
        zero = Fraction(0)
        right = [(eb, sum(eb), cb) for eb, cb in other.terms.items()]
        for ea, ca in self.terms.items():
            da = sum(ea)
            for eb, db, cb in right:
                if da + db > trunc:
                    continue
                e = (ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2])
                s = out.get(e, zero) + ca * cb
                if s:
                    out[e] = s
                else:
                    out.pop(e, None)
        return LaurentSeries(out, trunc)

    def scaled(self, factor) -> "LaurentSeries":
        f = Fraction(factor)
        return LaurentSeries(
            {e: c * f for e, c in self.terms.items()}, self.trunc
        )

    def evaluate(self, x, y, u) -> Fraction:
        """Exact value at rational (x, y, u); u must be nonzero-safe."""
        total = Fraction(0)
        for (ex, ey, eu), c in self.terms.items():
            total += c * Fraction(x) ** ex * Fraction(y) ** ey * Fraction(u) ** eu
        return total

    def sorted_terms(self) -> list[tuple[tuple[int, int, int], Fraction]]:
        def key(e):
            return (sum(e), tuple(-v for v in e))

        return [(e, self.terms[e]) for e in sorted(self.terms, key=key)]

    def render(self) -> str:
        if not self.terms:
            return "0"
        bits = []
        for e, c in self.sorted_terms():
            text = _term_text(e, abs(c))
            if not bits:
                bits.append(text if c > 0 else f"-{text}")
            else:
                bits.append(f"+ {text}" if c > 0 else f"- {text}")
        return " ".join(bits)


def _term_text(e: tuple[int, int, int], mag: Fraction) -> str:
    body = []
    for name, exp in zip(VARIABLES, e):
        if exp == 1:
            body.append(name)
        elif exp != 0:
            body.append(f"{name}^{exp}")
    if mag != 1 or not body:
        body.insert(0, str(mag))
    return "*".join(body)


def _signed_term_text(e: tuple[int, int, int], c: Fraction) -> str:
    text = _term_text(e, abs(c))
    return text if c > 0 else f"-{text}"


class ExpSubstitution:
    """Variable-to-series bindings with cached integer powers."""

    def __init__(self, images: dict[str, LaurentSeries]):
        self.images = dict(images)
        self._powers: dict[tuple[str, int], LaurentSeries] = {}

    def __getitem__(self, name: str) -> LaurentSeries:
        return self.images[name]

    def __contains__(self, name: str) -> bool:
        return name in self.images

    def items(self):
        return self.images.items()

    def values(self):
        return self.images.values()

    def power(self, name: str, exponent: int) -> LaurentSeries:
        key = (name, exponent)
        if key not in self._powers:
            if abs(exponent) == 1:
                base = (
                    self.images[name]
                    if exponent > 0
                    else series_inverse(self.images[name])
                )
                self._powers[key] = base
            else:
                half = exponent // 2
                self._powers[key] = self.power(name, half) * self.power(
                    name, exponent - half
                )
        return self._powers[key]


def exp_series(form: dict[str, int], cutoff: int) -> LaurentSeries:
    """exp of an integer linear combination of x, y, u."""
    if cutoff < 0:
        raise SeriesError("cutoff must be nonnegative")
    for name in form:
        if name not in VARIABLES:
            raise SeriesError(f"unknown exponent variable {name!r}")
    arg = LaurentSeries(
        {tuple(1 if v == n else 0 for v in VARIABLES): Fraction(c)
         for n, c in form.items() if c},
        cutoff,
    )
    out = LaurentSeries.const(1, cutoff)
    power = LaurentSeries.const(1, cutoff)
    fact = 1
    for k in range(1, cutoff + 1):
        power = power * arg
        fact *= k
        out = out + power.scaled(Fraction(1, fact))
    return out


def series_inverse(s: LaurentSeries) -> LaurentSeries:
    """Invert when the lowest-total-degree part is a single monomial."""
    if s.is_zero():
        raise SeriesError("cannot invert the zero series")
    low = s.min_total_degree()
    lead = [(e, c) for e, c in s.terms.items() if sum(e) == low]
    if len(lead) != 1:
        raise SeriesError(
            "series is not invertible here: lowest-degree part is not a "
            "single monomial"
        )
    (e0, c0) = lead[0]
    if e0[2] != 0:
        raise SeriesError("cannot invert a positive power of u")
    inv_mono = (-e0[0], -e0[1], 0)
    # s = c0 * m * (1 + t); the geometric series for (1+t)^-1 is exact
    # to s.trunc - deg(m), and the final shift by m^-1 lowers it again
    unit_trunc = s.trunc - low
    t_terms = {}
    for e, c in s.terms.items():
        if e == e0:
            continue
        shifted = (e[0] + inv_mono[0], e[1] + inv_mono[1], e[2])
        t_terms[shifted] = c / c0
    t = LaurentSeries(t_terms, unit_trunc)
    geo = LaurentSeries.const(1, unit_trunc)
    power = LaurentSeries.const(1, unit_trunc)
    for _ in range(unit_trunc):
        power = power * (-t)
        if power.is_zero():
            break
        geo = geo + power
    out_terms = {
        (e[0] + inv_mono[0], e[1] + inv_mono[1], e[2]): c / c0
        for e, c in geo.terms.items()
    }
    return LaurentSeries(out_terms, s.trunc - 2 * low)


def substitute_series(
    a: LaurentPoly, s: ExpSubstitution, cutoff: int
) -> LaurentSeries:
    """Image of a Laurent polynomial under variable -> series bindings."""
    if not isinstance(s, ExpSubstitution):
        s = ExpSubstitution(s)
    for name in a.ring.names:
        idx = a.ring.index(name)
        if any(e[idx] for e in a.terms) and name not in s:
            raise SeriesError(f"no series bound to variable {name!r}")
    images = list(s.values())
    base_trunc = max(sv.trunc for sv in images) if images else cutoff
    total = None
    for exps, coeff in a.terms.items():
        term = LaurentSeries.const(coeff, base_trunc)
        for name in a.ring.names:
            e = exps[a.ring.index(name)]
            if e:
                term = term * s.power(name, e)
        total = term if total is None else total + term
    if total is None:
        total = LaurentSeries.zero(cutoff)
    if total.trunc < cutoff:
        raise SeriesError(
            f"bindings only support truncation {total.trunc}, need {cutoff}; "
            "rebuild the substitution with more slack"
        )
    return total.truncated(cutoff)


def exponential_substitution(cutoff: int) -> ExpSubstitution:
    """Bind v, w, z to their exponential images in x, y, u."""
    ex = exp_series({"x": 1}, cutoff)
    emx = exp_series({"x": -1}, cutoff)
    ey = exp_series({"y": 1}, cutoff)
    emy = exp_series({"y": -1}, cutoff)
    return ExpSubstitution({
        "v": exp_series({"x": 1, "y": 1, "u": 1}, cutoff),
        "w": emx - ex,
        "z": emy - ey,
    })


@dataclass(frozen=True)
class VassilievReport:
    """Observed lowest x/y behaviour of one skein difference."""

    crossing: int
    crossing_kind: str
    min_x_degree: int | None
    min_y_degree: int | None
    leading_terms: tuple[str, ...]
    cutoff: int
    difference_text: str

    def to_record(self) -> dict:
        def degree(d):
            return "+inf" if d is None else d

        return {
            "crossing": self.crossing,
            "kind": self.crossing_kind,
            "minXDegree": degree(self.min_x_degree),
            "minYDegree": degree(self.min_y_degree),
            "leadingTerms": list(self.leading_terms),
            "cutoff": self.cutoff,
            "difference": self.difference_text,
        }

    def summary_lines(self) -> list[str]:
        def degree(d):
            return "+inf" if d is None else str(d)

        lines = [
            f"crossing {self.crossing} ({self.crossing_kind})",
            f"difference = {self.difference_text}",
            f"min x-degree: {degree(self.min_x_degree)}",
            f"min y-degree: {degree(self.min_y_degree)}",
        ]
        if self.leading_terms:
            lines.append("leading terms: " + ", ".join(self.leading_terms))
        return lines


def _difference_slack(diff: LaurentPoly) -> int:
    # each inverted w or z power costs two degrees of certainty
    worst = 0
    for name in ("w", "z"):
        if name not in diff.ring.names:
            continue
        idx = diff.ring.index(name)
        neg = min((e[idx] for e in diff.terms), default=0)
        worst += 2 * max(0, -neg)
    return worst + 2


def vassiliev_report(
    d: Diagram,
    c: int,
    inst: AlgebraInstance | None = None,
    cutoff: int = 4,
) -> VassilievReport:
    """Expand the positive-minus-negative difference at one crossing."""
    from .skein import invariant

    if inst is None:
        inst = make_instance("homflypt-style")
    if inst.kind != "homflypt-style":
        raise SeriesError("the expansion is defined for the v/w/z instance")
    if c not in set(d.crossing_ids):
        raise SeriesError(f"unknown crossing {c}")
    here = invariant(d, inst)
    there = invariant(switch(d, c), inst)
    if d.sign(c) > 0:
        diff = here.value - there.value
    else:
        diff = there.value - here.value
    if diff.is_zero():
        return VassilievReport(
            c, d.kind(c), None, None, (), cutoff, "0"
        )
    subs = exponential_substitution(cutoff + _difference_slack(diff))
    series = substitute_series(diff, subs, cutoff)
    low = series.min_total_degree()
    leading = [
        _signed_term_text(e, c)
        for e, c in series.sorted_terms()
        if sum(e) == low
    ]
    return VassilievReport(
        c,
        d.kind(c),
        series.min_degree(0),
        series.min_degree(1),
        tuple(leading),
        cutoff,
        series.render(),
    )

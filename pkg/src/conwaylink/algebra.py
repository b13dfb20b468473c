"""Algebras with two pairs of mutually inverse binary operations.

An instance carries four operations circ, slash, star, slashslash and a
sequence of distinguished units a_1, a_2, ...; circ/slash and
star/slashslash are inverse pairs, and the five transposition identities
(C)-(G) hold.  All bundled instances act linearly: op(a, b) =
left*a + right*b with fixed coefficient polynomials, so axioms can be
verified exactly by adjoining fresh indeterminates to the carrier ring.

Bundled instances (selection strings in parentheses):

* ``generic``: carrier Z[p^-1, q^-1, r], circ = pa+qb, star = pa+rb,
  units a_n = ((1-p)/q)^(n-1).
* ``homflypt-style``: carrier Z[v^-1, w^-1, z], circ = v^2 a + vwb,
  star = v^2 a + vzb, units ((v^-1-v)/w)^(n-1).
* ``homflypt``: the previous instance with w and z identified; circ and
  star coincide, so the pair of skein rules collapses to one.
* ``radical:k=<K>``: carrier Z[p^-1, q^-1, r^-1]; elements are stored as
  their k-th powers and the four operations act linearly on the stored
  representatives, with stored units following a_(n+1)^k = (1-p)/q * a_n^k.
"""

from __future__ import annotations

import itertools
import re
import threading
from dataclasses import dataclass

from .laurent import LaurentPoly, RingSpec, parse, render

__all__ = [
    "OP_NAMES",
    "OpTable",
    "AlgebraInstance",
    "Element",
    "AxiomStatus",
    "AxiomReport",
    "AlgebraError",
    "make_instance",
    "make_custom",
    "apply",
    "unit_value",
    "check_axioms",
    "to_homflypt",
]

OP_NAMES = ("circ", "slash", "star", "slashslash")

GENERIC_RING = RingSpec((("p", True), ("q", True), ("r", False)))
HOMFLYPT_STYLE_RING = RingSpec((("v", True), ("w", True), ("z", False)))
HOMFLYPT_RING = RingSpec((("v", True), ("z", True)))
RADICAL_RING = RingSpec((("p", True), ("q", True), ("r", True)))


class AlgebraError(ValueError):
    """Raised for invalid instance configuration or mismatched elements."""


@dataclass(frozen=True)
class OpTable:
    """Linear binary operation op(a, b) = left*a + right*b."""

    left: LaurentPoly
    right: LaurentPoly

    def of(self, a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
        return self.left * a + self.right * b


class AlgebraInstance:
    """Immutable operation tables plus a lazily grown unit cache."""

    __slots__ = ("kind", "carrier", "element_repr", "k", "ops", "unit_step", "_units", "_lock")

    def __init__(
        self,
        kind: str,
        carrier: RingSpec,
        ops: dict[str, OpTable],
        unit_step: LaurentPoly,
        element_repr: str = "direct",
        k: int | None = None,
    ):
        if set(ops) != set(OP_NAMES):
            raise AlgebraError(f"operation table keys must be {OP_NAMES}")
        if element_repr not in ("direct", "kth-power"):
            raise AlgebraError(f"unknown element representation {element_repr!r}")
        for name, table in ops.items():
            if table.left.ring != carrier or table.right.ring != carrier:
                raise AlgebraError(f"operation {name!r} coefficients must live in the carrier")
        if unit_step.ring != carrier:
            raise AlgebraError("unit step must live in the carrier")
        self.kind = kind
        self.carrier = carrier
        self.ops = dict(ops)
        self.unit_step = unit_step
        self.element_repr = element_repr
        self.k = k
        self._units = [LaurentPoly.const(carrier, 1)]
        self._lock = threading.Lock()

    def __setattr__(self, name, value):
        if hasattr(self, "_lock") and name not in ("_units",):
            raise AttributeError("AlgebraInstance is immutable")
        object.__setattr__(self, name, value)

    def _signature(self):
        return (
            self.kind,
            self.carrier,
            tuple(sorted((n, t.left, t.right) for n, t in self.ops.items())),
            self.unit_step,
            self.element_repr,
            self.k,
        )

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, AlgebraInstance):
            return NotImplemented
        return self._signature() == other._signature()

    def __hash__(self) -> int:
        return hash(self._signature())

    def __repr__(self) -> str:
        return f"AlgebraInstance({self.kind!r})"

    def unit_poly(self, n: int) -> LaurentPoly:
        """Carrier representation of a_n; a_1 = 1, a_{n+1} = unit_step * a_n."""
        if n < 1:
            raise AlgebraError("unit index must be >= 1")
        if n > len(self._units):
            with self._lock:
                while len(self._units) < n:
                    grown = self._units + [self._units[-1] * self.unit_step]
                    self._units = grown
        return self._units[n - 1]

    def element(self, value: LaurentPoly) -> "Element":
        return Element(self, value)

    def parse_element(self, text: str) -> "Element":
        return Element(self, parse(text, self.carrier))


@dataclass(frozen=True)
class Element:
    """A value of one algebra instance.

    For kth-power instances `value` is the stored k-th power of the
    abstract element, never the formal root itself.
    """

    instance: AlgebraInstance
    value: LaurentPoly

    def __post_init__(self):
        if self.value.ring != self.instance.carrier:
            raise AlgebraError("element value must live in the instance carrier")

    def render(self, style: str = "plain") -> str:
        return render(self.value, style)


def _generic_tables(ring: RingSpec, mixed_var: str) -> dict[str, OpTable]:
    p = LaurentPoly.var(ring, "p")
    q = LaurentPoly.var(ring, "q")
    s = LaurentPoly.var(ring, mixed_var)
    p_inv = p.unit_inverse()
    return {
        "circ": OpTable(p, q),
        "slash": OpTable(p_inv, -(p_inv * q)),
        "star": OpTable(p, s),
        "slashslash": OpTable(p_inv, -(p_inv * s)),
    }


def _homflypt_tables(ring: RingSpec, self_var: str, mixed_var: str) -> dict[str, OpTable]:
    v = LaurentPoly.var(ring, "v")
    w = LaurentPoly.var(ring, self_var)
    z = LaurentPoly.var(ring, mixed_var)
    v_inv = v.unit_inverse()
    return {
        "circ": OpTable(v * v, v * w),
        "slash": OpTable(v_inv * v_inv, -(v_inv * w)),
        "star": OpTable(v * v, v * z),
        "slashslash": OpTable(v_inv * v_inv, -(v_inv * z)),
    }


_RADICAL_RE = re.compile(r"radical:k=(\d+)$")


def make_instance(kind: str) -> AlgebraInstance:
    """Build a bundled instance from its selection string.

    Accepted strings: "generic", "homflypt-style", "homflypt",
    "radical:k=<K>" with K >= 1.
    """
    if kind == "generic":
        return AlgebraInstance(
            kind, GENERIC_RING, _generic_tables(GENERIC_RING, "r"),
            parse("(1-p)/q", GENERIC_RING),
        )
    if kind == "homflypt-style":
        return AlgebraInstance(
            kind, HOMFLYPT_STYLE_RING, _homflypt_tables(HOMFLYPT_STYLE_RING, "w", "z"),
            parse("(v^-1 - v)/w", HOMFLYPT_STYLE_RING),
        )
    if kind == "homflypt":
        return AlgebraInstance(
            kind, HOMFLYPT_RING, _homflypt_tables(HOMFLYPT_RING, "z", "z"),
            parse("(v^-1 - v)/z", HOMFLYPT_RING),
        )
    match = _RADICAL_RE.fullmatch(kind)
    if match:
        k = int(match.group(1))
        if k < 1:
            raise AlgebraError("radical index k must be >= 1")
        return AlgebraInstance(
            kind, RADICAL_RING, _generic_tables(RADICAL_RING, "r"),
            parse("(1-p)/q", RADICAL_RING),
            element_repr="kth-power", k=k,
        )
    raise AlgebraError(
        f"unknown instance {kind!r}; expected generic, homflypt-style, homflypt, or radical:k=<K>"
    )


def make_custom(
    name: str,
    carrier: RingSpec,
    ops: dict[str, OpTable],
    unit_step: LaurentPoly,
) -> AlgebraInstance:
    """Assemble an instance from explicit tables (mainly for axiom tests)."""
    return AlgebraInstance(f"custom:{name}", carrier, ops, unit_step)


def apply(op: str, a: Element, b: Element) -> Element:
    if op not in OP_NAMES:
        raise AlgebraError(f"unknown operation {op!r}; expected one of {OP_NAMES}")
    if a.instance != b.instance:
        raise AlgebraError("operands belong to different instances")
    return Element(a.instance, a.instance.ops[op].of(a.value, b.value))


def unit_value(n: int, inst: AlgebraInstance) -> Element:
    return Element(inst, inst.unit_poly(n))


def to_homflypt(e: Element) -> Element:
    """Collapse a generic-instance value to the two-variable specialization.

    Substitutes p -> v^2, q -> vz, r -> vz; the images of two links are
    equal exactly when their classical two-variable skein polynomials
    agree.
    """
    if not e.instance.kind == "generic":
        raise AlgebraError("to_homflypt expects an element of the generic instance")
    target = make_instance("homflypt")
    ring = target.carrier
    v = LaurentPoly.var(ring, "v")
    z = LaurentPoly.var(ring, "z")
    image = e.value.substitute({"p": v * v, "q": v * z, "r": v * z}, ring)
    return Element(target, image)


# -- axiom checking ---------------------------------------------------


@dataclass(frozen=True)
class AxiomStatus:
    holds: bool
    detail: str = ""
    witness: dict | None = None


@dataclass(frozen=True)
class AxiomReport:
    instance_kind: str
    statuses: dict[str, AxiomStatus]
    note: str = ""

    @property
    def all_hold(self) -> bool:
        return all(status.holds for status in self.statuses.values())

    def summary_lines(self) -> list[str]:
        lines = []
        for axiom in sorted(self.statuses):
            status = self.statuses[axiom]
            verdict = "holds" if status.holds else f"FAILS: {status.detail}"
            lines.append(f"({axiom}) {verdict}")
        if self.note:
            lines.append(self.note)
        return lines


_FRESH_NAMES = ("alpha", "beta", "gamma", "delta")

# Each identity is two op-trees over the quantified symbols a, b, c, d.
_PAIR_IDENTITIES: dict[str, list[tuple]] = {
    "A": [
        (("slash", ("circ", "a", "b"), "b"), "a"),
        (("circ", ("slash", "a", "b"), "b"), "a"),
        (("slashslash", ("star", "a", "b"), "b"), "a"),
        (("star", ("slashslash", "a", "b"), "b"), "a"),
    ],
    "C": [((("circ", ("circ", "a", "b"), ("circ", "c", "d"))), ("circ", ("circ", "a", "c"), ("circ", "b", "d")))],
    "D": [((("star", ("star", "a", "b"), ("star", "c", "d"))), ("star", ("star", "a", "c"), ("star", "b", "d")))],
    "E": [((("circ", ("circ", "a", "b"), ("star", "c", "d"))), ("circ", ("circ", "a", "c"), ("star", "b", "d")))],
    "F": [((("star", ("star", "a", "b"), ("circ", "c", "d"))), ("star", ("star", "a", "c"), ("circ", "b", "d")))],
    "G": [((("star", ("circ", "a", "b"), ("circ", "c", "d"))), ("circ", ("star", "a", "c"), ("star", "b", "d")))],
}


def _eval_tree(tree, ops: dict[str, OpTable], symbols: dict[str, LaurentPoly]) -> LaurentPoly:
    if isinstance(tree, str):
        return symbols[tree]
    op, left, right = tree
    return ops[op].of(_eval_tree(left, ops, symbols), _eval_tree(right, ops, symbols))


def _tree_text(tree) -> str:
    if isinstance(tree, str):
        return tree
    op, left, right = tree
    glyph = {"circ": "o", "slash": "/", "star": "*", "slashslash": "//"}[op]
    return f"({_tree_text(left)} {glyph} {_tree_text(right)})"


def _integer_witness(
    difference: LaurentPoly,
    extended: RingSpec,
    fresh: tuple[str, ...],
) -> dict[str, int]:
    """Small integer assignment of the fresh symbols with nonzero difference."""
    for values in itertools.product((0, 1, 2, -1, 3), repeat=len(fresh)):
        bindings = {name: LaurentPoly.var(extended, name) for name in extended.names}
        for name, value in zip(fresh, values):
            bindings[name] = LaurentPoly.const(extended, value)
        if not difference.substitute(bindings, extended).is_zero():
            return dict(zip(("a", "b", "c", "d"), values))
    # The difference is nonzero yet vanishes on the probe grid; report the
    # symbolic fact instead of an integer point.
    return {}


def check_axioms(inst: AlgebraInstance, n_max: int = 10) -> AxiomReport:
    """Verify (A)-(G) exactly; (B) is checked for n = 1..n_max.

    Identities are compared as polynomials in four fresh indeterminates
    adjoined to the carrier, which is complete for the linear operation
    tables used here.
    """
    carrier = inst.carrier
    taken = set(carrier.names)
    fresh = tuple(
        name if name not in taken else "_" + name
        for name in _FRESH_NAMES
    )
    extended = carrier.extended((name, False) for name in fresh)
    ops = {name: OpTable(t.left.rename_into(extended), t.right.rename_into(extended)) for name, t in inst.ops.items()}
    symbols = dict(zip(("a", "b", "c", "d"), (LaurentPoly.var(extended, name) for name in fresh)))

    statuses: dict[str, AxiomStatus] = {}
    for axiom, identities in _PAIR_IDENTITIES.items():
        failure = None
        for lhs_tree, rhs_tree in identities:
            lhs = _eval_tree(lhs_tree, ops, symbols)
            rhs = _eval_tree(rhs_tree, ops, symbols)
            if lhs != rhs:
                witness = _integer_witness(lhs - rhs, extended, fresh)
                failure = AxiomStatus(
                    False,
                    f"{_tree_text(lhs_tree)} != {_tree_text(rhs_tree)}; "
                    f"lhs = {render(lhs)}, rhs = {render(rhs)}",
                    witness,
                )
                break
        statuses[axiom] = failure or AxiomStatus(True)

    b_failure = None
    for n in range(1, n_max + 1):
        lhs = inst.unit_poly(n)
        rhs = inst.ops["circ"].of(inst.unit_poly(n), inst.unit_poly(n + 1))
        if lhs != rhs:
            b_failure = AxiomStatus(
                False,
                f"a_{n} != a_{n} o a_{n + 1}; lhs = {render(lhs)}, rhs = {render(rhs)}",
                {"n": n},
            )
            break
    statuses["B"] = b_failure or AxiomStatus(True)

    note = ""
    if inst.element_repr == "kth-power":
        note = (
            f"verified on k-th-power representatives (k={inst.k}); no claim is made "
            "about the formal roots themselves"
        )
    return AxiomReport(inst.kind, statuses, note)

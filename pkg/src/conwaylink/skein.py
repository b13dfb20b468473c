"""Recursive evaluation of the algebra-valued link invariant.

The recursion follows the construction exactly: walk the based diagram,
find the first crossing passed under before over, and resolve it.  At a
positive bad crossing the current diagram plays the plus role, so its
value is op(value(switched), value(smoothed)) with op = circ at self
crossings and star at mixed ones; at a negative bad crossing the current
diagram is the minus term and the inverse operation (slash or
slashslash) applies instead.  A diagram with no bad crossings is
descending and evaluates to the unit a_n for its component count.

Every step either reduces the number of bad crossings (switch) or the
number of crossings (smooth), so the recursion terminates; a defensive
depth cap turns structurally impossible non-termination into an error.
"""

from __future__ import annotations

import random
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

from .algebra import AlgebraInstance, Element
from .diagram import (
    BasedDiagram,
    Diagram,
    based,
    canonical_key,
    first_bad,
    smooth,
    switched,
    to_pd_text,
)

__all__ = [
    "SkeinError",
    "EvalOptions",
    "TraceNode",
    "FuzzMismatch",
    "FuzzReport",
    "evaluate_based",
    "invariant",
    "fuzz_invariance",
]


class SkeinError(RuntimeError):
    """Raised when the defensive recursion cap is exceeded."""


@dataclass(frozen=True)
class EvalOptions:
    """Evaluation switches.

    memoize caches values per canonical based key (off by default so the
    raw recursion is what tests exercise); parallel evaluates the two
    top-level branches on separate threads; trace_depth limits how deep
    the returned trace tree goes (None = unlimited); max_depth overrides
    the defensive recursion cap.
    """

    memoize: bool = False
    parallel: bool = False
    trace_depth: int | None = 0
    max_depth: int | None = None


@dataclass(frozen=True)
class TraceNode:
    """One node of the evaluation tree.

    node_type is "leaf" (descending diagram), "branch" (bad crossing
    resolved), "memo" (value reused via canonical key), or "pruned"
    (subtree beyond the requested trace depth).
    """

    node_type: str
    key: bytes
    n_components: int | None = None
    value_text: str | None = None
    crossing: int | None = None
    crossing_kind: str | None = None
    crossing_sign: int | None = None
    rule: str | None = None
    children: tuple["TraceNode", "TraceNode"] | None = None

    def to_record(self) -> dict:
        record: dict = {"type": self.node_type, "key": self.key.decode()}
        if self.node_type == "leaf":
            record["n"] = self.n_components
            record["value"] = self.value_text
        elif self.node_type == "branch":
            record["crossing"] = self.crossing
            record["kind"] = self.crossing_kind
            record["sign"] = self.crossing_sign
            record["rule"] = self.rule
            record["switched"] = self.children[0].to_record() if self.children else None
            record["smoothed"] = self.children[1].to_record() if self.children else None
        return record

    def to_text(self, indent: int = 0) -> str:
        pad = "  " * indent
        if self.node_type == "leaf":
            line = f"{pad}leaf n={self.n_components} value={self.value_text}"
        elif self.node_type == "memo":
            line = f"{pad}memo key={self.key.decode()}"
        elif self.node_type == "pruned":
            line = f"{pad}..."
        else:
            sign = "+" if (self.crossing_sign or 0) > 0 else "-"
            line = (
                f"{pad}crossing {self.crossing} ({self.crossing_kind}, {sign}) "
                f"rule {self.rule}(left=switched, right=smoothed)"
            )
        if self.children is not None:
            for child in self.children:
                line += "\n" + child.to_text(indent + 1)
        return line


def _rule_for(kind: str, sign: int) -> str:
    if sign > 0:
        return "circ" if kind == "self" else "star"
    return "slash" if kind == "self" else "slashslash"


class _Evaluator:
    def __init__(self, inst: AlgebraInstance, opts: EvalOptions, n_crossings: int):
        self.inst = inst
        self.opts = opts
        self.memo: dict[bytes, object] | None = {} if opts.memoize else None
        cap = opts.max_depth
        if cap is None:
            # switch steps <= crossings, smooth steps <= crossings
            cap = 2 * n_crossings + 16
        self.max_depth = cap

    def run(self, b: BasedDiagram) -> tuple[Element, TraceNode]:
        if self.opts.parallel:
            value, trace = self._eval_parallel(b)
        else:
            value, trace = self._eval(b, 0)
        return Element(self.inst, value), trace

    def _trace_here(self, depth: int) -> bool:
        limit = self.opts.trace_depth
        return limit is None or depth <= limit

    def _leaf(self, b: BasedDiagram, depth: int):
        n = b.diagram.n_components
        value = self.inst.unit_poly(n)
        if not self._trace_here(depth):
            return value, None
        from .laurent import render

        return value, TraceNode(
            "leaf", canonical_key(b), n_components=n, value_text=render(value)
        )

    def _eval(self, b: BasedDiagram, depth: int):
        if depth > self.max_depth:
            raise SkeinError(
                f"recursion depth {depth} exceeded the cap {self.max_depth}; "
                "the diagram does not reduce as a classical PD code should"
            )
        cid = first_bad(b)
        if cid is None:
            return self._leaf(b, depth)

        key = None
        if self.memo is not None:
            key = canonical_key(b)
            hit = self.memo.get(key)
            if hit is not None:
                trace = TraceNode("memo", key) if self._trace_here(depth) else None
                return hit, trace

        c = b.diagram.crossing(cid)
        rule = _rule_for(c.kind, c.sign)
        left_value, left_trace = self._eval(switched(b, cid), depth + 1)
        right_value, right_trace = self._eval(smooth(b, cid), depth + 1)
        value = self.inst.ops[rule].of(left_value, right_value)

        if self.memo is not None:
            self.memo[key] = value
        if not self._trace_here(depth):
            return value, None
        if key is None:
            key = canonical_key(b)
        children = None
        if self._trace_here(depth + 1):
            children = (left_trace, right_trace)
        else:
            pruned = TraceNode("pruned", b"")
            children = (pruned, pruned)
        return value, TraceNode(
            "branch", key,
            crossing=cid, crossing_kind=c.kind, crossing_sign=c.sign,
            rule=rule, children=children,
        )

    def _eval_parallel(self, b: BasedDiagram):
        cid = first_bad(b)
        if cid is None:
            return self._leaf(b, 0)
        c = b.diagram.crossing(cid)
        rule = _rule_for(c.kind, c.sign)
        with ThreadPoolExecutor(max_workers=2) as pool:
            left_future = pool.submit(self._eval, switched(b, cid), 1)
            right_value, right_trace = self._eval(smooth(b, cid), 1)
            left_value, left_trace = left_future.result()
        value = self.inst.ops[rule].of(left_value, right_value)
        if self.memo is not None:
            self.memo[canonical_key(b)] = value
        if not self._trace_here(0):
            return value, None
        children = (left_trace, right_trace) if self._trace_here(1) else (
            TraceNode("pruned", b""), TraceNode("pruned", b"")
        )
        return value, TraceNode(
            "branch", canonical_key(b),
            crossing=cid, crossing_kind=c.kind, crossing_sign=c.sign,
            rule=rule, children=children,
        )


def evaluate_based(
    b: BasedDiagram, inst: AlgebraInstance, opts: EvalOptions | None = None
) -> tuple[Element, TraceNode]:
    """Value of the based diagram together with its evaluation trace."""
    opts = opts or EvalOptions()
    return _Evaluator(inst, opts, b.diagram.n_crossings).run(b)


def invariant(
    d: Diagram, inst: AlgebraInstance, opts: EvalOptions | None = None
) -> Element:
    """Value of the diagram under the canonical based structure."""
    value, _ = evaluate_based(based(d), inst, opts)
    return value


# -- invariance fuzzing -----------------------------------------------


@dataclass(frozen=True)
class FuzzMismatch:
    trial: int
    pd_text: str
    order: tuple[int, ...]
    base_points: tuple[int, ...]
    moves: tuple[str, ...]
    value_text: str
    reference_text: str


@dataclass(frozen=True)
class FuzzReport:
    trials: int
    reference_text: str
    mismatches: tuple[FuzzMismatch, ...] = field(default=())

    @property
    def all_ok(self) -> bool:
        return not self.mismatches

    def summary(self) -> str:
        verdict = "ok" if self.all_ok else f"{len(self.mismatches)} MISMATCHES"
        return f"{self.trials} trials, reference {self.reference_text}: {verdict}"


def _random_based(d: Diagram, rng: random.Random) -> BasedDiagram:
    n = len(d.components)
    order = list(range(n))
    rng.shuffle(order)
    bases = tuple(rng.choice(d.components[idx]) for idx in order)
    return BasedDiagram(d, tuple(order), bases)


def fuzz_invariance(
    d: Diagram,
    inst: AlgebraInstance,
    trials: int = 50,
    seed: int = 0,
    max_moves: int = 8,
    opts: EvalOptions | None = None,
) -> FuzzReport:
    """Re-evaluate under random base points, component orders and short
    Reidemeister sequences; every value must equal the reference."""
    from .moves import apply_move, enumerate_sites

    if trials < 1:
        raise ValueError("need at least one trial")
    opts = opts or EvalOptions()
    reference = invariant(d, inst, opts)
    reference_text = reference.render()
    rng = random.Random(seed)
    budget = d.n_crossings + 6
    mismatches: list[FuzzMismatch] = []

    for trial in range(trials):
        current = d
        applied: list[str] = []
        for _ in range(rng.randint(0, max_moves)):
            sites = enumerate_sites(current)
            if current.n_crossings >= budget:
                sites = [s for s in sites if s.move not in ("R1+", "R2+")]
            if not sites:
                break
            site = rng.choice(sites)
            current = apply_move(current, site)
            applied.append(site.describe())
        b = _random_based(current, rng)
        value, _ = evaluate_based(b, inst, opts)
        if value.value != reference.value:
            mismatches.append(FuzzMismatch(
                trial, to_pd_text(current), b.order, b.base_points,
                tuple(applied), value.render(), reference_text,
            ))
    return FuzzReport(trials, reference_text, tuple(mismatches))

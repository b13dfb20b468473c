"""Brute-force oracle for the two-operation invariant over Z[p,p^-1,q,q^-1,r].

Polynomials are plain dicts mapping (p, q, r) exponent triples to int
coefficients; the skein rules are applied through OracleEvaluator, which
checks every pivot order.  Link inputs are hand-written Gauss-style
sequences, so nothing here touches the package's diagram code.
"""

from __future__ import annotations

from oracle_common import OracleEvaluator, make_state

Poly = dict[tuple[int, int, int], int]

ONE: Poly = {(0, 0, 0): 1}


def padd(a: Poly, b: Poly) -> Poly:
    out = dict(a)
    for k, v in b.items():
        s = out.get(k, 0) + v
        if s:
            out[k] = s
        else:
            out.pop(k, None)
    return out


def pmul(a: Poly, b: Poly) -> Poly:
    out: Poly = {}
    for (ea, eb, ec), va in a.items():
        for (fa, fb, fc), vb in b.items():
            k = (ea + fa, eb + fb, ec + fc)
            s = out.get(k, 0) + va * vb
            if s:
                out[k] = s
            else:
                out.pop(k, None)
    return out


def mono(dp: int, dq: int, dr: int, coeff: int = 1) -> Poly:
    return {(dp, dq, dr): coeff}


# a_2 = (1 - p) / q
A2: Poly = padd(mono(0, -1, 0), mono(1, -1, 0, -1))


def unit(n: int) -> Poly:
    out = ONE
    for _ in range(n - 1):
        out = pmul(out, A2)
    return out


def freeze(p: Poly) -> tuple:
    return tuple(sorted(p.items()))


def _combine(left: Poly, lhs: Poly, right: Poly, rhs: Poly) -> Poly:
    return padd(pmul(left, lhs), pmul(right, rhs))


RULES = {
    # positive pivot: value = op(switched, smoothed) with op = circ / star
    (1, True): lambda sw, sm: _combine(mono(1, 0, 0), sw, mono(0, 1, 0), sm),
    (1, False): lambda sw, sm: _combine(mono(1, 0, 0), sw, mono(0, 0, 1), sm),
    # negative pivot: value = inverse op, slash / slashslash
    (-1, True): lambda sw, sm: _combine(mono(-1, 0, 0), sw, mono(-1, 1, 0, -1), sm),
    (-1, False): lambda sw, sm: _combine(mono(-1, 0, 0), sw, mono(-1, 0, 1, -1), sm),
}


def evaluate(components, signs) -> Poly:
    return OracleEvaluator(unit, RULES).evaluate(make_state(components, signs))


# Hand-written Gauss-style inputs.  Sequences list (crossing, role)
# passages from each base point; braid-closure pictures make the roles
# and signs easy to read off.

# closure of a positive 2-strand braid with 3 crossings
RIGHT_TREFOIL = (
    [[(1, "o"), (2, "u"), (3, "o"), (1, "u"), (2, "o"), (3, "u")]],
    {1: 1, 2: 1, 3: 1},
)

# closure of a positive 2-strand braid with 2 crossings
HOPF_POSITIVE = (
    [[(1, "o"), (2, "u")], [(2, "o"), (1, "u")]],
    {1: 1, 2: 1},
)

# standard alternating 4-crossing diagram, writhe 0
FIGURE_EIGHT = (
    [[(1, "o"), (2, "u"), (3, "o"), (4, "u"), (2, "o"), (1, "u"), (4, "o"), (3, "u")]],
    {1: -1, 2: -1, 3: 1, 4: 1},
)


def unlink_state(n: int):
    return [[] for _ in range(n)], {}

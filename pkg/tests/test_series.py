"""Truncated series engine: exponential substitution and degree reports."""

import json
import math
import random
from fractions import Fraction

import pytest

from conwaylink.algebra import make_instance
from conwaylink.diagram import from_pd_text
from conwaylink.laurent import LaurentPoly, RingSpec, parse
from conwaylink.series import (
    ExpSubstitution,
    LaurentSeries,
    SeriesError,
    exp_series,
    exponential_substitution,
    series_inverse,
    substitute_series,
    vassiliev_report,
)

VWZ = RingSpec((("v", True), ("w", True), ("z", False)))

TREFOIL = "X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)"
HOPF = "X(4,1,3,2) X(2,3,1,4)"
KINK = "X(2,2,1,1)"

ONE = {(0, 0, 0): Fraction(1)}


# -- exponential series ------------------------------------------------


def test_exp_x_to_degree_three():
    s = exp_series({"x": 1}, 3)
    assert s.terms == {
        (0, 0, 0): Fraction(1),
        (1, 0, 0): Fraction(1),
        (2, 0, 0): Fraction(1, 2),
        (3, 0, 0): Fraction(1, 6),
    }
    assert s.render() == "1 + x + 1/2*x^2 + 1/6*x^3"


def test_exp_of_zero_form_is_one():
    for cutoff in (0, 1, 7):
        assert exp_series({}, cutoff).terms == ONE


def test_odd_part_cancellation():
    s = exp_series({"x": -1}, 3) - exp_series({"x": 1}, 3)
    assert s.terms == {(1, 0, 0): Fraction(-2), (3, 0, 0): Fraction(-1, 3)}
    assert s.render() == "-2*x - 1/3*x^3"


def test_exp_rejects_unknown_variable_and_negative_cutoff():
    with pytest.raises(SeriesError):
        exp_series({"t": 1}, 3)
    with pytest.raises(SeriesError):
        exp_series({"x": 1}, -1)


@pytest.mark.parametrize(
    "form",
    [{"x": 1}, {"x": 2, "y": -1}, {"y": 3, "u": 2}, {"x": -1, "y": -1, "u": -1}],
)
def test_exp_times_exp_of_negated_form_is_one(form):
    f = exp_series(form, 5)
    g = exp_series({k: -v for k, v in form.items()}, 5)
    assert (f * g).terms == ONE


# -- series values and invariants --------------------------------------


def test_construction_drops_zero_and_overflow_terms():
    s = LaurentSeries(
        {(1, 0, 0): Fraction(0), (2, 1, 0): Fraction(5), (0, 0, 0): Fraction(2)},
        2,
    )
    assert s.terms == {(0, 0, 0): Fraction(2)}


def test_negative_u_exponent_is_rejected():
    with pytest.raises(SeriesError):
        LaurentSeries({(0, 0, -1): Fraction(1)}, 3)


def test_truncation_cannot_be_extended():
    with pytest.raises(SeriesError):
        LaurentSeries.const(1, 3).truncated(5)


def test_minimum_degrees_are_tracked():
    subs = exponential_substitution(5)
    w = subs["w"]
    assert w.min_degree(0) == 1 and w.min_degree(1) == 0
    inv = series_inverse(w)
    assert inv.min_degree(0) == -1
    assert inv.trunc == w.trunc - 2
    sq = substitute_series(parse("w^-2", VWZ), exponential_substitution(9), 3)
    assert sq.min_degree(0) == -2


def test_zero_series_renders_as_zero():
    assert LaurentSeries.zero(4).render() == "0"
    assert LaurentSeries.zero(4).min_total_degree() is None


# -- substitution ------------------------------------------------------


def test_w_squared_under_substitution():
    s = substitute_series(parse("w^2", VWZ), exponential_substitution(4), 4)
    assert s.terms == {(2, 0, 0): Fraction(4), (4, 0, 0): Fraction(4, 3)}


def test_w_inverse_under_substitution():
    s = substitute_series(parse("w^-1", VWZ), exponential_substitution(3), 1)
    assert s.terms == {(-1, 0, 0): Fraction(-1, 2), (1, 0, 0): Fraction(1, 12)}
    assert s.render() == "-1/2*x^-1 + 1/12*x"
    # multiplying back by the image must give 1 to the surviving cutoff
    back = s * exponential_substitution(3)["w"]
    assert back.terms == ONE


def test_constant_passes_through():
    assert substitute_series(parse("1", VWZ), exponential_substitution(4), 4).terms == ONE


def test_each_image_is_complete_to_the_requested_cutoff():
    subs = exponential_substitution(5)
    assert all(image.trunc == 5 for image in subs.values())


@pytest.mark.parametrize("name", ["v", "w", "z"])
def test_inverse_times_image_is_one(name):
    image = exponential_substitution(6)[name]
    assert (series_inverse(image) * image).terms == ONE


def test_inversion_requires_monomial_lowest_part():
    subs = exponential_substitution(4)
    with pytest.raises(SeriesError, match="single monomial"):
        series_inverse(subs["w"] + subs["z"])
    with pytest.raises(SeriesError):
        series_inverse(LaurentSeries.zero(4))
    with pytest.raises(SeriesError, match="power of u"):
        series_inverse(exp_series({"u": 1}, 4) - LaurentSeries.const(1, 4))


def test_tight_bindings_refuse_deeper_cutoffs():
    with pytest.raises(SeriesError, match="slack"):
        substitute_series(parse("w^-1", VWZ), exponential_substitution(4), 3)


def test_unbound_variable_is_rejected():
    subs = exponential_substitution(4)
    with pytest.raises(SeriesError, match="'w'"):
        substitute_series(parse("v*w", VWZ), {"v": subs["v"]}, 4)


def test_plain_dict_bindings_are_accepted():
    subs = exponential_substitution(4)
    raw = {"v": subs["v"], "w": subs["w"], "z": subs["z"]}
    s = substitute_series(parse("w^2", VWZ), raw, 4)
    assert s.terms == {(2, 0, 0): Fraction(4), (4, 0, 0): Fraction(4, 3)}


def test_substitution_agrees_with_numeric_evaluation():
    """Exact expansion vs direct float evaluation at small rational points."""
    subs = exponential_substitution(10)
    rng = random.Random(20260823)
    points = [
        (Fraction(1, 512), Fraction(-1, 640), Fraction(1, 576)),
        (Fraction(-1, 768), Fraction(1, 544), Fraction(-1, 608)),
    ]
    checked = 0
    for _ in range(120):
        terms = {}
        for _ in range(rng.randint(1, 5)):
            e = (rng.randint(-2, 2), rng.randint(-1, 1), rng.randint(0, 2))
            c = rng.choice([c for c in range(-5, 6) if c])
            terms[e] = terms.get(e, 0) + c
        a = LaurentPoly(VWZ, terms)
        if a.is_zero():
            continue
        checked += 1
        s = substitute_series(a, subs, 6)
        for (x, y, u) in points:
            exact = float(s.evaluate(x, y, u))
            xf, yf, uf = float(x), float(y), float(u)
            v = math.exp(xf + yf + uf)
            w = math.exp(-xf) - math.exp(xf)
            z = math.exp(-yf) - math.exp(yf)
            direct = sum(
                c * v**ev * w**ew * z**ez
                for (ev, ew, ez), c in a.terms.items()
            )
            assert abs(exact - direct) <= 1e-9 * max(1.0, abs(direct))
    assert checked >= 100


def test_power_cache_handles_repeated_exponents():
    subs = exponential_substitution(8)
    first = substitute_series(parse("v^3*w^-1", VWZ), subs, 4)
    second = substitute_series(parse("v^3*w^-1", VWZ), subs, 4)
    assert first == second
    assert ("w", -1) in subs._powers and ("v", 3) in subs._powers


# -- skein difference reports ------------------------------------------


def test_kink_difference_is_zero_with_infinite_degrees():
    rep = vassiliev_report(from_pd_text(KINK), 1, cutoff=4)
    assert rep.min_x_degree is None and rep.min_y_degree is None
    assert rep.leading_terms == () and rep.difference_text == "0"
    record = rep.to_record()
    assert record["minXDegree"] == "+inf" and record["minYDegree"] == "+inf"
    assert record["leadingTerms"] == [] and record["cutoff"] == 4


@pytest.mark.parametrize("cid", [1, 2, 3])
def test_trefoil_self_crossing_report(cid):
    rep = vassiliev_report(from_pd_text(TREFOIL), cid, cutoff=4)
    assert rep.crossing_kind == "self"
    assert rep.min_x_degree == 0 and rep.min_y_degree == 0
    assert rep.leading_terms == (
        "-4*x^2",
        "-4*x*y",
        "-8*x*u",
        "-4*y^2",
        "-8*y*u",
        "-4*u^2",
    )


def test_trefoil_difference_matches_direct_expansion():
    d = from_pd_text(TREFOIL)
    rep = vassiliev_report(d, 1, cutoff=6)
    # switching any trefoil crossing yields the unknot, so the skein
    # difference is the trefoil value minus 1
    diff = parse("2*v^2 - v^4 + v^2*w*z - 1", VWZ)
    expected = substitute_series(diff, exponential_substitution(8), 6)
    assert rep.difference_text == expected.render()
    x, y, u = Fraction(1, 512), Fraction(-1, 640), Fraction(1, 576)
    exact = float(expected.evaluate(x, y, u))
    xf, yf, uf = float(x), float(y), float(u)
    v = math.exp(xf + yf + uf)
    w = math.exp(-xf) - math.exp(xf)
    z = math.exp(-yf) - math.exp(yf)
    direct = 2 * v**2 - v**4 + v**2 * w * z - 1
    assert abs(exact - direct) <= 1e-9 * max(1.0, abs(direct))


def test_hopf_mixed_crossing_report():
    rep = vassiliev_report(from_pd_text(HOPF), 1, cutoff=4)
    assert rep.crossing_kind == "mixed"
    # the switched diagram evaluates to the two-component unlink whose
    # value carries w^-1, so the difference dips to x-degree -1
    assert rep.min_x_degree == -1 and rep.min_y_degree == 0
    assert rep.leading_terms[0] == "2*x"


def test_hopf_difference_matches_numeric_evaluation():
    from conwaylink.diagram import switch
    from conwaylink.skein import invariant

    d = from_pd_text(HOPF)
    inst = make_instance("homflypt-style")
    rep = vassiliev_report(d, 2, inst, cutoff=6)
    diff = invariant(d, inst).value - invariant(switch(d, 2), inst).value
    expanded = substitute_series(diff, exponential_substitution(12), 6)
    assert rep.difference_text == expanded.render()
    x, y, u = Fraction(1, 512), Fraction(-1, 640), Fraction(1, 576)
    exact = float(expanded.evaluate(x, y, u))
    xf, yf, uf = float(x), float(y), float(u)
    point = {
        "v": math.exp(xf + yf + uf),
        "w": math.exp(-xf) - math.exp(xf),
        "z": math.exp(-yf) - math.exp(yf),
    }
    direct = sum(
        c * point["v"] ** ev * point["w"] ** ew * point["z"] ** ez
        for (ev, ew, ez), c in diff.terms.items()
    )
    assert abs(exact - direct) <= 1e-9 * max(1.0, abs(direct))


def test_report_is_deterministic():
    a = vassiliev_report(from_pd_text(HOPF), 2, cutoff=5)
    b = vassiliev_report(from_pd_text(HOPF), 2, cutoff=5)
    assert a == b
    assert json.dumps(a.to_record()) == json.dumps(b.to_record())


def test_report_record_has_the_published_fields():
    record = vassiliev_report(from_pd_text(TREFOIL), 1, cutoff=4).to_record()
    assert {"minXDegree", "minYDegree", "leadingTerms", "cutoff"} <= set(record)
    lines = vassiliev_report(from_pd_text(TREFOIL), 1, cutoff=4).summary_lines()
    assert lines[0] == "crossing 1 (self)"
    assert any(line.startswith("min x-degree: 0") for line in lines)


def test_report_rejects_bad_inputs():
    d = from_pd_text(TREFOIL)
    with pytest.raises(SeriesError, match="unknown crossing"):
        vassiliev_report(d, 9, cutoff=4)
    with pytest.raises(SeriesError, match="v/w/z"):
        vassiliev_report(d, 1, make_instance("generic"), 4)

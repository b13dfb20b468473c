"""Algebra instances, the operation tables, and the symbolic axiom checker."""

import random
import time

import pytest

from conwaylink.algebra import (
    GENERIC_RING,
    HOMFLYPT_RING,
    AlgebraError,
    Element,
    OpTable,
    apply,
    check_axioms,
    make_custom,
    make_instance,
    to_homflypt,
    unit_value,
)
from conwaylink.laurent import LaurentPoly, parse, render

GEN = make_instance("generic")
HST = make_instance("homflypt-style")
HOM = make_instance("homflypt")
RAD2 = make_instance("radical:k=2")
RAD3 = make_instance("radical:k=3")
ALL = (GEN, HST, HOM, RAD2, RAD3)


def gen_elem(text):
    return Element(GEN, parse(text, GEN.carrier))


def elem(inst, text):
    return Element(inst, parse(text, inst.carrier))


# -- construction -----------------------------------------------------

def test_instance_kinds_and_carriers():
    assert GEN.kind == "generic" and GEN.carrier is GENERIC_RING
    assert [v for v, _ in HST.carrier.variables] == ["v", "w", "z"]
    assert [v for v, _ in HOM.carrier.variables] == ["v", "z"]
    assert RAD3.k == 3 and RAD3.element_repr == "kth-power"
    assert GEN.element_repr == "direct"
    # the radical carrier allows inverting r
    assert dict(RAD2.carrier.variables)["r"] is True


def test_unknown_kind_rejected():
    with pytest.raises(AlgebraError):
        make_instance("linear")


def test_radical_requires_positive_k():
    with pytest.raises(AlgebraError):
        make_instance("radical:k=0")


def test_homflypt_ops_coincide():
    rng = random.Random(3)
    for _ in range(50):
        a = elem(HOM, f"{rng.randint(-4, 4)} + {rng.randint(-4, 4)}*v*z")
        b = elem(HOM, f"{rng.randint(-4, 4)}*z + {rng.randint(-4, 4)}*v^-1")
        assert apply("circ", a, b) == apply("star", a, b)
        assert apply("slash", a, b) == apply("slashslash", a, b)


# -- operations -------------------------------------------------------

def test_circ_one_with_a2_returns_one():
    one = unit_value(1, GEN)
    a2 = unit_value(2, GEN)
    assert apply("circ", one, a2) == one


def test_slash_undoes_circ():
    r = gen_elem("r")
    q = gen_elem("q")
    assert apply("slash", apply("circ", r, q), q) == r


def test_star_a2_with_one_is_hopf_value():
    got = apply("star", unit_value(2, GEN), unit_value(1, GEN))
    assert render(got.value) == "p*q^-1 - p^2*q^-1 + r"


def test_instance_mismatch_rejected():
    with pytest.raises(AlgebraError):
        apply("circ", gen_elem("p"), elem(HOM, "v"))


def test_unknown_op_rejected():
    with pytest.raises(AlgebraError):
        apply("compose", gen_elem("p"), gen_elem("q"))


# -- unit values ------------------------------------------------------

def test_unit_values_generic():
    assert unit_value(1, GEN).value == LaurentPoly.const(GENERIC_RING, 1)
    a2 = parse("(1-p)/q", GENERIC_RING)
    from conwaylink.laurent import arith

    assert unit_value(3, GEN).value == arith("mul", a2, a2)


def test_unit_value_radical_stores_kth_power():
    assert unit_value(2, RAD2).value == parse("(1-p)/q", RAD2.carrier)
    assert unit_value(2, RAD3).value == parse("(1-p)/q", RAD3.carrier)


def test_unit_value_requires_positive_n():
    with pytest.raises(AlgebraError):
        unit_value(0, GEN)


def test_unit_values_cached_per_instance():
    assert unit_value(5, GEN).value is unit_value(5, GEN).value


# -- axiom checking ---------------------------------------------------

def test_all_instances_satisfy_all_axioms():
    start = time.time()
    for inst in ALL:
        report = check_axioms(inst, n_max=10)
        assert report.all_hold, (inst.kind, report.summary_lines())
        assert set(report.statuses) == set("ABCDEFG")
    assert time.time() - start < 1.0


def test_radical_note_mentions_representatives():
    report = check_axioms(RAD3, n_max=5)
    assert report.all_hold
    assert "representative" in report.note


def test_broken_slash_fails_axiom_a_with_witness():
    ops = dict(GEN.ops)
    p_inv = parse("p^-1", GENERIC_RING)
    minus_q = parse("-q", GENERIC_RING)
    ops["slash"] = OpTable(p_inv, minus_q)
    broken = make_custom("broken-slash", GENERIC_RING, ops, GEN.unit_step)
    report = check_axioms(broken)
    assert not report.all_hold
    status = report.statuses["A"]
    assert not status.holds
    assert status.witness is not None
    # the witness assigns integers to the two fresh symbols and must
    # actually separate the sides of (a o b) / b = a
    names = sorted(status.witness)
    assert len(names) >= 2
    a = Element(broken, LaurentPoly.const(GENERIC_RING, status.witness[names[0]]))
    b = Element(broken, LaurentPoly.const(GENERIC_RING, status.witness[names[1]]))
    lhs = apply("slash", apply("circ", a, b), b)
    assert lhs != a


def test_sequence_law_b_explicitly():
    for inst in ALL:
        for n in range(1, 10):
            a_n = unit_value(n, inst)
            a_n1 = unit_value(n + 1, inst)
            assert apply("circ", a_n, a_n1) == a_n, (inst.kind, n)


def test_inverse_laws_on_random_elements():
    rng = random.Random(11)
    for inst in ALL:
        names = [n for n, _ in inst.carrier.variables]
        for _ in range(40):
            def rand_elem():
                text = f"{rng.randint(-3, 3)}"
                for name in names:
                    text += f" + {rng.randint(-3, 3)}*{name}"
                return Element(inst, parse(text, inst.carrier))

            a, b = rand_elem(), rand_elem()
            assert apply("slash", apply("circ", a, b), b) == a
            assert apply("circ", apply("slash", a, b), b) == a
            assert apply("slashslash", apply("star", a, b), b) == a
            assert apply("star", apply("slashslash", a, b), b) == a


# -- homflypt collapse ------------------------------------------------

def test_to_homflypt_trefoil_value():
    got = to_homflypt(gen_elem("2*p - p^2 + q*r"))
    assert got.instance is not None and got.instance.kind == "homflypt"
    assert render(got.value) == "2*v^2 - v^4 + v^2*z^2"


def test_to_homflypt_a2():
    got = to_homflypt(unit_value(2, GEN))
    assert got.value == parse("(v^-1 - v)/z", HOMFLYPT_RING)


def test_to_homflypt_identity_on_one():
    got = to_homflypt(unit_value(1, GEN))
    assert got.value == LaurentPoly.const(HOMFLYPT_RING, 1)


def test_to_homflypt_rejects_other_instances():
    with pytest.raises(AlgebraError):
        to_homflypt(elem(HOM, "v"))

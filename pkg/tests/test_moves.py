"""Reidemeister rewrites: face structure, site enumeration, and invariance."""

import pytest

from conwaylink.algebra import make_instance
from conwaylink.diagram import (
    DiagramError,
    based,
    canonical_key,
    from_pd_text,
    unlink,
)
from conwaylink.moves import MoveSite, apply_move, check_planar, enumerate_sites, faces
from conwaylink.skein import invariant

GEN = make_instance("generic")
TREFOIL = "X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)"
HOPF = "X(4,1,3,2) X(2,3,1,4)"


def value(d):
    return invariant(d, GEN).value


# -- faces ------------------------------------------------------------

def test_trefoil_faces_satisfy_euler():
    d = from_pd_text(TREFOIL)
    fcs = faces(d)
    # V=3, E=6 forces F=5 on a sphere; degrees total 2E
    assert len(fcs) == 5
    assert sorted(len(f) for f in fcs) == [2, 2, 2, 3, 3]
    assert check_planar(d)


def test_hopf_faces_satisfy_euler():
    d = from_pd_text(HOPF)
    assert sorted(len(f) for f in faces(d)) == [2, 2, 2, 2]
    assert check_planar(d)


def test_crossingless_diagram_is_planar():
    assert check_planar(unlink(3))


# -- enumeration ------------------------------------------------------

def test_enumeration_is_deterministic():
    d = from_pd_text(TREFOIL)
    assert enumerate_sites(d) == enumerate_sites(d)


def test_reduced_alternating_trefoil_offers_no_reductions():
    moves = {s.move for s in enumerate_sites(from_pd_text(TREFOIL))}
    assert moves == {"R1+", "R2+"}


def test_unknot_offers_loop_kinks_only():
    sites = enumerate_sites(unlink(1))
    assert [s.move for s in sites] == ["R1+", "R1+"]


# -- invariance of every offered move ---------------------------------

@pytest.mark.parametrize(
    "pd_text",
    [TREFOIL, HOPF, TREFOIL + " O"],
    ids=["trefoil", "hopf", "trefoil-plus-loop"],
)
def test_every_site_preserves_planarity_and_value(pd_text):
    d = from_pd_text(pd_text)
    w = value(d)
    for site in enumerate_sites(d):
        out = apply_move(d, site)
        assert check_planar(out), site.describe()
        assert value(out) == w, site.describe()


# -- round trips ------------------------------------------------------

def test_r1_round_trip():
    d = from_pd_text(TREFOIL)
    key = canonical_key(based(d))
    for site in enumerate_sites(d):
        if site.move != "R1+":
            continue
        kinked = apply_move(d, site)
        assert kinked.n_crossings == 4
        undone = [
            apply_move(kinked, s)
            for s in enumerate_sites(kinked)
            if s.move == "R1-"
        ]
        assert any(canonical_key(based(u)) == key for u in undone)


def test_r1_kink_on_unknot():
    kinked = apply_move(unlink(1), MoveSite("R1+", ("loop", 0, 1)))
    assert kinked.n_crossings == 1 and kinked.n_components == 1
    back = apply_move(kinked, MoveSite("R1-", (1,)))
    assert back.n_crossings == 0 and back.n_components == 1


def test_r2_round_trip():
    d = from_pd_text(TREFOIL)
    key = canonical_key(based(d))
    for site in enumerate_sites(d):
        if site.move != "R2+":
            continue
        pushed = apply_move(d, site)
        assert pushed.n_crossings == 5
        # the new pair contributes one positive and one negative crossing
        assert sorted(pushed.sign(c) for c in pushed.crossing_ids) == [-1, 1, 1, 1, 1]
        undone = [
            apply_move(pushed, s)
            for s in enumerate_sites(pushed)
            if s.move == "R2-"
        ]
        assert any(canonical_key(based(u)) == key for u in undone)


def test_r3_preserves_and_undoes():
    d = from_pd_text(TREFOIL)
    w = value(d)
    exercised = 0
    for grow in enumerate_sites(d):
        grown = apply_move(d, grow)
        for site in enumerate_sites(grown):
            if site.move != "R3":
                continue
            slid = apply_move(grown, site)
            assert slid.n_crossings == grown.n_crossings
            assert check_planar(slid)
            assert value(slid) == w
            back = [
                apply_move(slid, s)
                for s in enumerate_sites(slid)
                if s.move == "R3"
            ]
            grown_key = canonical_key(based(grown))
            assert any(canonical_key(based(u)) == grown_key for u in back)
            exercised += 1
    assert exercised >= 6


# -- stale sites ------------------------------------------------------

def test_stale_sites_are_rejected():
    d = from_pd_text(TREFOIL)
    with pytest.raises(DiagramError):
        apply_move(d, MoveSite("R1-", (1,)))
    with pytest.raises(DiagramError):
        apply_move(d, MoveSite("R2-", (1, 2, 1, 2)))
    with pytest.raises(DiagramError):
        apply_move(d, MoveSite("R2+", ((1, 1), (1, -1))))
    with pytest.raises(DiagramError):
        apply_move(d, MoveSite("R1+", (99, 1, 1)))
    with pytest.raises(DiagramError):
        apply_move(d, MoveSite("twist", ()))


def test_loop_moves_need_a_loop():
    d = from_pd_text(TREFOIL)
    with pytest.raises(DiagramError):
        apply_move(d, MoveSite("R1+", ("loop", 0, 1)))
    with pytest.raises(DiagramError):
        apply_move(d, MoveSite("R2+", ("loop", (1, 1), "arc", 1)))

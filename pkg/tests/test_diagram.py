"""PD parsing, traversal, bad crossings, smoothing, and canonical keys."""

import pytest

from conwaylink.diagram import (
    BasedDiagram,
    DiagramError,
    based,
    bad_crossings,
    canonical_key,
    first_bad,
    from_pd,
    from_pd_text,
    mirror,
    reverse_component,
    smooth,
    switch,
    to_pd_text,
    traverse,
    unlink,
)

TREFOIL = "X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)"
HOPF = "X(4,1,3,2) X(2,3,1,4)"
FIG8 = "X(4,2,5,1) X(8,6,1,5) X(6,3,7,4) X(2,7,3,8)"


def trefoil():
    return from_pd_text(TREFOIL)


def hopf():
    return from_pd_text(HOPF)


# -- construction -----------------------------------------------------

def test_trefoil_structure():
    d = trefoil()
    assert d.n_components == 1
    assert d.n_crossings == 3
    assert all(d.kind(c) == "self" for c in d.crossing_ids)
    assert d.writhe == 3


def test_hopf_structure():
    d = hopf()
    assert d.n_components == 2
    assert all(d.kind(c) == "mixed" for c in d.crossing_ids)
    assert d.writhe == 2


def test_empty_pd_with_free_loop_is_unknot():
    d = from_pd([], free_loops=1)
    assert d.n_components == 1 and d.n_crossings == 0


def test_unlink_counts():
    assert unlink(1).n_components == 1
    assert unlink(2).n_components == 2
    for n in (1, 2, 5):
        assert unlink(n).n_components == n
    with pytest.raises(DiagramError):
        unlink(0)


def test_signed_pd_text_round_trip():
    d = trefoil()
    assert from_pd_text(to_pd_text(d)) == d
    h = hopf()
    assert from_pd_text(to_pd_text(h)) == h


def test_duplicate_edge_rejected():
    with pytest.raises(DiagramError):
        from_pd_text("X(1,1,1,2)")


def test_non_closed_structure_rejected():
    with pytest.raises(DiagramError):
        from_pd_text("X(1,2,3,4)")


def test_ambiguous_unsigned_code_demands_annotation():
    # both orientations of the pure over-cycle (3,4) read as consecutive,
    # so this Hopf code cannot be inferred and must carry signs
    with pytest.raises(DiagramError) as err:
        from_pd_text("X(1,3,2,4) X(2,4,1,3)")
    assert "annot" in str(err.value)
    assert from_pd_text("X(1,3,2,4)+ X(2,4,1,3)+").writhe == 2
    assert from_pd_text("X(1,3,2,4)- X(2,4,1,3)-").writhe == -2


def test_fig8_signs():
    d = from_pd_text(FIG8)
    assert d.n_crossings == 4 and d.writhe == 0
    assert sorted(d.sign(c) for c in d.crossing_ids) == [-1, -1, 1, 1]


# -- traversal and bad crossings --------------------------------------

def test_traverse_unknot_empty():
    assert traverse(based(unlink(1))) == []


def test_traverse_hopf_passages():
    walk = traverse(based(hopf()))
    assert len(walk) == 4
    for cid in hopf().crossing_ids:
        assert sum(1 for c, _ in walk if c == cid) == 2


def test_trefoil_has_bad_crossing():
    b = based(trefoil())
    walk = traverse(b)
    seen = set()
    first_roles = {}
    for cid, role in walk:
        if cid not in seen:
            seen.add(cid)
            first_roles[cid] = role
    assert "under" in first_roles.values()
    assert first_bad(b) is not None


def test_unlink_has_no_bad_crossing():
    assert first_bad(based(unlink(3))) is None


def test_descending_diagram_has_no_bad_crossing():
    b = based(hopf())
    d = b.diagram
    while True:
        c = first_bad(BasedDiagram(d, b.order, b.base_points))
        if c is None:
            break
        d = switch(d, c)
    assert first_bad(BasedDiagram(d, b.order, b.base_points)) is None
    assert d.n_crossings == 2


def test_first_bad_trefoil_is_deterministic():
    b = based(trefoil())
    c = first_bad(b)
    assert c == first_bad(b)
    assert c in set(b.diagram.crossing_ids)
    assert bad_crossings(b)[0] == c


# -- switch -----------------------------------------------------------

def test_switch_involution():
    d = trefoil()
    c = d.crossing_ids[0]
    assert switch(switch(d, c), c) == d


def test_switch_drops_writhe():
    d = trefoil()
    assert switch(d, d.crossing_ids[0]).writhe == 1


def test_switch_preserves_components_and_kind():
    d = hopf()
    s = switch(d, d.crossing_ids[0])
    assert s.n_components == d.n_components
    assert [s.kind(c) for c in s.crossing_ids] == ["mixed", "mixed"]


def test_switch_unknown_crossing():
    with pytest.raises(DiagramError):
        switch(trefoil(), 99)


# -- smoothing --------------------------------------------------------

def test_smooth_trefoil_self_crossing_gives_hopf():
    b = based(trefoil())
    out = smooth(b, first_bad(b))
    d = out.diagram
    assert d.n_components == 2
    assert d.n_crossings == 2
    assert all(d.kind(c) == "mixed" for c in d.crossing_ids)
    assert d.writhe == 2
    # order lists the old component first, then the spliced-off one
    assert list(out.order) == [0, 1] or len(out.order) == 2
    assert len(out.base_points) == 2


def test_smooth_hopf_mixed_crossing_gives_kinked_unknot():
    b = based(hopf())
    out = smooth(b, first_bad(b))
    d = out.diagram
    assert d.n_components == 1
    assert d.n_crossings == 1
    assert len(out.base_points) == 1


def test_smooth_decrements_crossing_count():
    b = based(trefoil())
    for cid in b.diagram.crossing_ids:
        assert smooth(b, cid).diagram.n_crossings == 2


def test_smooth_component_count_shift():
    tb = based(trefoil())
    assert smooth(tb, first_bad(tb)).diagram.n_components == 2
    hb = based(hopf())
    assert smooth(hb, first_bad(hb)).diagram.n_components == 1


def test_smooth_kink_crossing_frees_a_loop():
    b = based(from_pd_text("X(2,2,1,1)"))
    out = smooth(b, 1)
    assert out.diagram.n_crossings == 0
    assert out.diagram.n_components == 2
    assert out.diagram.free_loops >= 1


# -- reversal and mirror ----------------------------------------------

def test_reverse_twice_is_identity():
    d = hopf()
    assert reverse_component(reverse_component(d, 0), 0) == d
    t = trefoil()
    assert reverse_component(reverse_component(t, 0), 0) == t


def test_reverse_hopf_negates_writhe():
    d = hopf()
    assert reverse_component(d, 0).writhe == -2
    assert reverse_component(d, 1).writhe == -2


def test_reverse_preserves_components():
    d = hopf()
    assert reverse_component(d, 1).n_components == 2


def test_reverse_keeps_self_signs():
    d = trefoil()
    assert reverse_component(d, 0).writhe == 3


def test_reverse_invalid_index():
    with pytest.raises(DiagramError):
        reverse_component(hopf(), 5)


def test_mirror_negates_writhe():
    assert mirror(trefoil()).writhe == -3
    assert mirror(mirror(trefoil())) == trefoil()


# -- termination measure ----------------------------------------------

def test_switch_first_bad_strictly_reduces_bad_count():
    b = based(trefoil())
    while True:
        c = first_bad(b)
        if c is None:
            break
        before = len(bad_crossings(b))
        b = BasedDiagram(switch(b.diagram, c), b.order, b.base_points)
        assert len(bad_crossings(b)) < before


# -- canonical keys ---------------------------------------------------

def test_canonical_key_ignores_relabeling():
    d1 = from_pd_text("X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)")
    relabeled = "X(11,14,12,15) X(13,16,14,11) X(15,12,16,13)"
    d2 = from_pd_text(relabeled)
    assert canonical_key(based(d1)) == canonical_key(based(d2))


def test_canonical_key_sees_switch():
    d = trefoil()
    assert canonical_key(based(d)) != canonical_key(based(switch(d, 1)))


def test_canonical_key_counts_loops():
    assert canonical_key(based(unlink(2))) != canonical_key(based(unlink(3)))

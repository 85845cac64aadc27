import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from jones_oracle import _unit, mirror_key, multiply, normalized
from pinchlab.diagram import (
    LETTERS,
    Diagram,
    DiagramError,
    TangleWord,
    change_crossings,
    common_regions,
    connected_sum,
    connected_sum_with_map,
    insert_tangle_diagram,
    insert_tangle_with_tags,
    mirror,
    parse_pd,
    reidemeister2,
    wirtinger,
)
from pinchlab.fixtures import TREFOIL, census

FIGURE_EIGHT = "X[4,2,5,1] X[8,6,1,5] X[6,3,7,4] X[2,7,3,8]"
KINK = "X[1,2,2,1]"


def check_invariants(d):
    counts = {}
    for c in d.crossings:
        for a in c.arcs:
            counts[a] = counts.get(a, 0) + 1
    assert set(counts.values()) == {2}
    assert len(d.regions) == d.n + 2
    for c in d.crossings:
        letters = sorted(l for r in d.regions for k, l in r.corners if k == c.id)
        assert letters == list(LETTERS)


def test_parse_trefoil():
    d = parse_pd("X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]")
    assert d.n == 3 and len(d.regions) == 5
    assert d.arcs == tuple(range(1, 7))
    check_invariants(d)
    # a trefoil diagram is alternating with all crossings of one sign
    assert len(set(d.signs)) == 1


def test_parse_accepts_pd_wrapper_and_parentheses():
    a = parse_pd("PD[X[1,4,2,5], X[3,6,4,1], X[5,2,6,3]]")
    b = parse_pd("X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)")
    assert a.pd == b.pd == TREFOIL.pd


@pytest.mark.parametrize(
    "text",
    ["", "X[1,2,3]", "X[1,4,2,5] X[3,6,4,1]", "X[1,4,2,5] hello X[3,6,4,1] X[5,2,6,3]",
     "X[a,b,c,d]", "X[4,1,3,2] X[2,3,1,4]"],
)
def test_parse_rejects_bad_codes(text):
    with pytest.raises(DiagramError):
        parse_pd(text)


def test_kink_has_region_with_two_corners_of_one_crossing():
    d = parse_pd(KINK)
    assert d.n == 1 and len(d.regions) == 3
    check_invariants(d)
    assert any(len({k for k, _ in r.corners}) < len(r.corners) for r in d.regions)


@pytest.mark.parametrize("entry", census(), ids=lambda e: e.name)
def test_census_diagrams_are_valid(entry):
    d = entry.diagram()
    check_invariants(d)
    assert len(d.regions) == entry.regions
    assert d.pd == parse_pd(entry.pd).pd


@pytest.mark.parametrize("entry", census(), ids=lambda e: e.name)
def test_json_round_trip(entry):
    d = entry.diagram()
    again = Diagram.from_json(d.to_json())
    assert again.to_dict() == d.to_dict()
    data = json.loads(d.to_json())
    assert set(data) >= {"crossings", "regions"}
    assert all(set(c) == {"id", "sign", "arcs"} for c in data["crossings"])


def test_from_dict_rejects_inconsistent_sign():
    data = TREFOIL.to_dict()
    data["crossings"][0]["sign"] *= -1
    with pytest.raises(DiagramError):
        Diagram.from_dict(data)


def test_change_crossings_flips_signs_and_keeps_regions():
    d = parse_pd(FIGURE_EIGHT)
    dj = change_crossings(d, {1, 3})
    assert [c.sign for c in dj.crossings] == [
        -s if k in (1, 3) else s for k, s in enumerate(d.signs, start=1)
    ]
    assert [r.edges for r in dj.regions] == [r.edges for r in d.regions]
    assert change_crossings(d, set()).to_dict() == d.to_dict()
    with pytest.raises(DiagramError):
        change_crossings(d, {9})


def test_mirror_changes_chirality_of_trefoil():
    m = mirror(TREFOIL)
    assert m.signs == tuple(-s for s in TREFOIL.signs)
    assert normalized(m.pd) != normalized(TREFOIL.pd)
    assert mirror_key(m.pd) == mirror_key(TREFOIL.pd)


def test_wirtinger_trefoil():
    pres = wirtinger(TREFOIL)
    assert len(pres.generators) == 3 and len(pres.relations) == 3
    assert set(pres.edge_generator) == set(TREFOIL.arcs)
    for rel in pres.relations:
        c = TREFOIL.crossing(rel.crossing)
        assert rel.sign == c.sign
        assert pres.edge_generator[c.arcs[0]] == rel.incoming
        assert pres.edge_generator[c.arcs[2]] == rel.outgoing


def test_connected_sum_is_granny():
    s, origin = connected_sum_with_map(TREFOIL, 1, TREFOIL, 1)
    check_invariants(s)
    assert s.n == 6
    t = normalized(TREFOIL.pd)
    assert normalized(s.pd) in {_unit(multiply(t, t)), _unit(multiply(t[::-1], t[::-1]))}
    assert {side for side, _ in origin.values()} == {0, 1}


def test_connected_sum_with_mirror_is_square():
    s = connected_sum(TREFOIL, 1, mirror(TREFOIL), 1)
    t = normalized(TREFOIL.pd)
    assert normalized(s.pd) == _unit(multiply(t, t[::-1]))


@pytest.mark.parametrize("over", [True, False])
def test_reidemeister2_preserves_knot_type(over):
    s, origin = connected_sum_with_map(TREFOIL, 1, TREFOIL, 1)
    inv = {v: k for k, v in origin.items()}
    b, b2 = inv[(0, 2)], inv[(1, 2)]
    for region in common_regions(s, b, b2):
        r2 = reidemeister2(s, b, b2, over, region)
        check_invariants(r2)
        assert r2.n == s.n + 2
        assert mirror_key(r2.pd) == mirror_key(s.pd)


def test_tangle_word_validation():
    assert TangleWord.parse("[2,-2,3]").entries == (2, -2, 3)
    assert TangleWord((2, -2, 3)).crossing_count == 7
    assert str(TangleWord((3,))) == "[3]"
    for bad in ((), (2,), (3, 3), (1, 2)):
        with pytest.raises(DiagramError):
            TangleWord(bad)
    with pytest.raises(DiagramError):
        TangleWord.parse("2,x,3")


def test_tangle_fraction():
    from fractions import Fraction

    assert TangleWord((3,)).fraction() == 3
    assert TangleWord((2, -2, 3)).fraction() == 2 + 1 / (-2 + Fraction(1, 3))


@pytest.mark.parametrize("word", [(1,), (3,), (-1,), (2, -2, 3), (4, 1), (2, 2, -2, 5)])
def test_tangle_insertion_counts(word):
    d = census()[0].diagram()
    w = TangleWord(word)
    new, ids, tags = insert_tangle_with_tags(d, 1, w)
    check_invariants(new)
    assert new.n == d.n - 1 + w.crossing_count
    assert len(ids) == w.crossing_count and ids[0] == 1
    assert sum(1 for t in tags.values() if t[0] == "new") == w.crossing_count - 1
    assert insert_tangle_diagram(d, 1, w).pd == new.pd


def test_identity_tangle_keeps_knot_type():
    d = parse_pd(FIGURE_EIGHT)
    for k in range(1, d.n + 1):
        assert mirror_key(insert_tangle_diagram(d, k, TangleWord((1,))).pd) == mirror_key(d.pd)


def _relabel_arcs(pd, perm):
    return [tuple(perm[a - 1] for a in x) for x in pd]


@settings(max_examples=40, deadline=None)
@given(st.sampled_from([e.name for e in census()]), st.randoms(use_true_random=False))
def test_relabeling_preserves_structure(name, rnd):
    entry = next(e for e in census() if e.name == name)
    d = entry.diagram()
    arcs = list(d.arcs)
    perm = arcs[:]
    rnd.shuffle(perm)
    order = list(range(1, d.n + 1))
    rnd.shuffle(order)
    pd = _relabel_arcs([d.pd[k - 1] for k in order], perm)
    again = Diagram.from_pd(pd)
    check_invariants(again)
    assert len(again.regions) == len(d.regions)
    assert sorted(again.signs) == sorted(d.signs)
    assert mirror_key(again.pd) == mirror_key(d.pd)
    relabeled = d.relabel_crossings(order)
    assert [c.arcs for c in relabeled.crossings] == [d.pd[k - 1] for k in order]

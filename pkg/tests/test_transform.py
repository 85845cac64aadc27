import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from jones_oracle import _unit, mirror_key, multiply, normalized
from pinchlab.diagram import DiagramError, TangleWord, change_crossings, parse_pd
from pinchlab.fixtures import (
    DIAGRAM_8_18,
    DIAGRAM_8_5,
    FAMILY_8_5,
    TREFOIL,
    census_entry,
)
from pinchlab.gluing import is_solution
from pinchlab.transform import (
    PostconditionError,
    PreconditionError,
    changed_crossings,
    insert_tangle,
    r_related,
    tangle_solution_vector,
    transfer_crossing_change,
)
from pinchlab.volume import volume

T = normalized(TREFOIL.pd)
GRANNY = frozenset({_unit(multiply(T, T)), _unit(multiply(T[::-1], T[::-1]))})


def test_change_at_one_pinched_crossing_gives_granny(sol_8_5):
    dj, sol = transfer_crossing_change(DIAGRAM_8_5, sol_8_5, {1})
    assert sol.residual_norm <= 1e-12
    assert np.array_equal(sol.w, sol_8_5.w)
    assert mirror_key(dj.pd) == GRANNY
    assert r_related(DIAGRAM_8_5, dj, sol_8_5)


def test_change_at_both_gives_torus_knot(sol_8_5):
    dj, sol = transfer_crossing_change(DIAGRAM_8_5, sol_8_5, {1, 2})
    assert is_solution(dj, sol.w, 1e-10)
    assert mirror_key(dj.pd) == mirror_key(census_entry("8_19").diagram().pd)
    assert volume(dj, sol.w) == pytest.approx(volume(DIAGRAM_8_5, sol.w), abs=1e-9)


def test_change_at_non_pinched_crossing_is_refused(sol_8_5):
    with pytest.raises(PreconditionError, match="c_3"):
        transfer_crossing_change(DIAGRAM_8_5, sol_8_5, {1, 3})
    with pytest.raises(DiagramError):
        transfer_crossing_change(DIAGRAM_8_5, sol_8_5, {11})


def test_empty_change_is_identity(sol_8_5):
    dj, sol = transfer_crossing_change(DIAGRAM_8_5, sol_8_5, set())
    assert dj.to_dict() == DIAGRAM_8_5.to_dict()
    assert r_related(DIAGRAM_8_5, DIAGRAM_8_5, sol_8_5)


def test_r_related_is_false_off_the_pinched_set(sol_8_5):
    assert not r_related(DIAGRAM_8_5, change_crossings(DIAGRAM_8_5, {3}), sol_8_5)


def test_r_related_rejects_other_projections(sol_8_5):
    with pytest.raises(DiagramError):
        r_related(DIAGRAM_8_5, census_entry("8_10").diagram(), sol_8_5)
    with pytest.raises(DiagramError):
        changed_crossings(DIAGRAM_8_5, TREFOIL)


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 2**8 - 1))
def test_changed_crossings_recovers_the_set(mask):
    J = {k for k in range(1, 9) if mask >> (k - 1) & 1}
    for d in (DIAGRAM_8_5, DIAGRAM_8_18):
        assert changed_crossings(d, change_crossings(d, J)) == J


def test_every_subset_of_a_pinched_set_transfers(family_8_18, rng):
    sol = family_8_18.solution(family_8_18.random_params(rng))
    pinched = sorted(sol.pinched)
    for mask in range(1 << len(pinched)):
        J = {k for i, k in enumerate(pinched) if mask >> i & 1}
        dj, out = transfer_crossing_change(DIAGRAM_8_18, sol, J)
        assert is_solution(dj, out.w, 1e-10)
        assert volume(dj, out.w) == pytest.approx(volume(DIAGRAM_8_18, sol.w), abs=1e-9)


def test_8_18_fixture_changes_give_trefoils(family_8_18, rng):
    sol = family_8_18.solution(family_8_18.random_params(rng))
    dj, _ = transfer_crossing_change(DIAGRAM_8_18, sol, sol.pinched)
    assert mirror_key(dj.pd) == mirror_key(TREFOIL.pd)


@pytest.mark.parametrize("k", [1, 2])
@pytest.mark.parametrize(
    "word, extra_regions", [((1,), 0), ((3,), 2), ((-3,), 2), ((2, -2, 3), 6), ((4, 1), 4)]
)
def test_insert_tangle(sol_8_5, k, word, extra_regions):
    new, sol = insert_tangle(DIAGRAM_8_5, sol_8_5, k, TangleWord(word))
    ids = sol.meta["tangle_crossings"]
    assert len(new.regions) == len(DIAGRAM_8_5.regions) + extra_regions
    assert new.n == DIAGRAM_8_5.n - 1 + sum(abs(x) for x in word)
    assert sol.residual_norm <= 1e-10
    assert set(ids) <= sol.pinched
    # outside variables are copied, not recomputed
    assert np.array_equal(sol.w[: len(DIAGRAM_8_5.regions)], sol_8_5.w)
    assert volume(new, sol.w) == pytest.approx(volume(DIAGRAM_8_5, sol_8_5.w), abs=1e-9)


def test_new_regions_copy_corner_values(sol_8_5):
    from pinchlab.diagram import insert_tangle_with_tags

    new, ids, tags = insert_tangle_with_tags(DIAGRAM_8_5, 1, TangleWord((3,)))
    w = tangle_solution_vector(DIAGRAM_8_5, sol_8_5, 1, tags)
    corner = dict(zip("abcd", DIAGRAM_8_5.quad(1)))
    added = sorted(w[j - 1] for j, t in tags.items() if t[0] == "new")
    assert added == sorted([sol_8_5.w[corner["a"] - 1], sol_8_5.w[corner["c"] - 1]])


def test_identity_tangle_keeps_the_knot(sol_8_5):
    new, sol = insert_tangle(DIAGRAM_8_5, sol_8_5, 1, [1])
    assert mirror_key(new.pd) == mirror_key(DIAGRAM_8_5.pd)
    assert sorted(np.round(sol.w, 12).tolist(), key=abs) == sorted(
        np.round(sol_8_5.w, 12).tolist(), key=abs
    )


def test_insert_tangle_errors(sol_8_5):
    with pytest.raises(PreconditionError):
        insert_tangle(DIAGRAM_8_5, sol_8_5, 3, [3])
    with pytest.raises(DiagramError):
        insert_tangle(DIAGRAM_8_5, sol_8_5, 1, [2])
    with pytest.raises(DiagramError):
        insert_tangle(DIAGRAM_8_5, sol_8_5, 1, [3, 3])


def test_broken_solution_is_a_postcondition_failure(sol_8_5, monkeypatch):
    import pinchlab.transform as tr

    original = tr.tangle_solution_vector

    def scrambled(d, w, k, tags):
        out = original(d, w, k, tags)
        out[-1] *= 1.5
        return out

    monkeypatch.setattr(tr, "tangle_solution_vector", scrambled)
    with pytest.raises(PostconditionError):
        insert_tangle(DIAGRAM_8_5, sol_8_5, 1, [3])


def test_tangles_at_pinched_crossings_of_8_18(family_8_18, rng):
    sol = family_8_18.solution(family_8_18.random_params(rng))
    for k in sorted(sol.pinched):
        new, out = insert_tangle(DIAGRAM_8_18, sol, k, [2, -2, 3])
        assert set(out.meta["tangle_crossings"]) <= out.pinched
        assert is_solution(new, out.w, 1e-10)


def test_plain_vector_input():
    w = FAMILY_8_5.evaluate((1, 2, 3))
    dj, sol = transfer_crossing_change(DIAGRAM_8_5, w, {2})
    assert sol.pinched == {1, 2}
    assert parse_pd(" ".join("X[%d,%d,%d,%d]" % x for x in dj.pd)).pd == dj.pd

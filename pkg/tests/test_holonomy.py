import dataclasses

import numpy as np
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from pinchlab.diagram import connected_sum_with_map, mirror, parse_pd
from pinchlab.fixtures import (
    DIAGRAM_8_18,
    DIAGRAM_8_5,
    FAMILY_8_18_W,
    FAMILY_8_18_W2,
    FAMILY_8_5,
    TREFOIL,
    granny_diagram,
)
from pinchlab.holonomy import (
    INF,
    T_MATRIX,
    HolonomyError,
    ParabolicRep,
    RepConfig,
    _lm,
    commute,
    connected_sum_rep,
    fix_of,
    in_modular_group,
    is_parabolic,
    modular_conjugator,
    normalize_rep,
    parabolic_about,
    parabolic_from_spinor,
    shift_parameter,
    solve_parabolic_reps,
    spinor_of,
    transport,
)
from pinchlab.solver import SolverConfig, solve

FIGURE_EIGHT = parse_pd("X[4,2,5,1] X[8,6,1,5] X[6,3,7,4] X[2,7,3,8]")
finite = st.floats(-3, 3, allow_nan=False)
cplx = st.builds(complex, finite, finite)


def irreducible(d, **kw):
    return [r for r in solve_parabolic_reps(d, **kw) if not r.is_abelian()]


@pytest.fixture(scope="module")
def trefoil_rep():
    (rho,) = irreducible(TREFOIL)
    return rho


def test_parabolic_about_examples():
    assert np.allclose(parabolic_about(INF, 1), [[1, 1], [0, 1]])
    assert np.allclose(parabolic_about(0, 1), [[1, 0], [-1, 1]])
    with pytest.raises(HolonomyError):
        parabolic_about(2, 0)


def test_fix_of_examples():
    assert fix_of(np.array([[1, 1], [0, 1]])) == INF
    assert fix_of(np.array([[1, 0], [-1, 1]])) == 0
    with pytest.raises(HolonomyError):
        fix_of(np.eye(2))
    with pytest.raises(HolonomyError):
        fix_of(np.array([[2, 0], [0, 0.5]]))


@settings(max_examples=100, deadline=None)
@given(cplx, cplx)
def test_fix_round_trip(z, t):
    assume(abs(t) > 1e-2)
    m = parabolic_about(z, t)
    assert is_parabolic(m)
    assert abs(np.linalg.det(m) - 1) < 1e-10
    assert abs(fix_of(m) - z) < 1e-8 * max(1, abs(z)) ** 2
    v = spinor_of(m)
    assert np.allclose(parabolic_from_spinor(v), m, atol=1e-9) or np.allclose(
        parabolic_from_spinor(v), -m, atol=1e-9
    )


def test_commute_examples():
    assert commute(parabolic_about(INF, 1), parabolic_about(INF, 5))
    assert not commute(parabolic_about(INF, 1), parabolic_about(0, 1))
    assert commute(parabolic_about(2 + 1j, 1), parabolic_about(2 + 1j, -3j))


def test_trefoil_representation(trefoil_rep):
    a, b = trefoil_rep.images[0], trefoil_rep.images[1]
    assert np.allclose(a, [[1, 1], [0, 1]])
    assert np.allclose(b, [[1, 0], [-1, 1]])
    assert np.allclose(a @ b @ a, [[0, 1], [-1, 0]])
    assert np.allclose(b @ a @ b, [[0, 1], [-1, 0]])
    assert trefoil_rep.verify(1e-9) and trefoil_rep.normalized
    assert trefoil_rep.commutation_profile() == frozenset()
    assert in_modular_group(trefoil_rep)


def test_figure_eight_reps():
    reps = solve_parabolic_reps(FIGURE_EIGHT)
    assert len(reps) == 3
    assert sum(r.is_abelian() for r in reps) == 1
    for r in reps:
        assert max(r.relation_errors()) <= 1e-9
    geo = [r for r in reps if not r.is_abelian()]
    # the geometric reps live over Q(sqrt(-3)) and are not integral
    assert not any(in_modular_group(r) for r in geo)


def test_any_relation_follows_from_the_others():
    pres = dataclasses.replace(
        solve_parabolic_reps(FIGURE_EIGHT)[0].presentation,
    )
    for drop in range(len(pres.relations)):
        reduced = dataclasses.replace(
            pres, relations=tuple(r for i, r in enumerate(pres.relations) if i != drop)
        )
        rng = np.random.default_rng(drop)
        hits = 0
        for _ in range(30):
            v0 = rng.normal(size=(4, 2)) + 1j * rng.normal(size=(4, 2))
            v0[0] = (1, 0)
            out = _lm(reduced, v0, RepConfig())
            if out is None or out[1] > 1e-10:
                continue
            rho = ParabolicRep(FIGURE_EIGHT, tuple(parabolic_from_spinor(x) for x in out[0]))
            if rho.is_abelian():
                continue
            hits += 1
            assert max(rho.relation_errors()) < 1e-8
        assert hits


def test_kink_has_only_the_abelian_rep():
    reps = solve_parabolic_reps(parse_pd("X[1,1,2,2]"))
    assert len(reps) == 1 and reps[0].is_abelian()


@pytest.mark.parametrize("d", [TREFOIL, FIGURE_EIGHT, DIAGRAM_8_5, DIAGRAM_8_18])
def test_longitude_commutes_with_meridian(d):
    for rho in solve_parabolic_reps(d):
        for edge in d.arcs[:3]:
            lon = rho.longitude(edge)
            assert commute(lon, rho.image(edge), 1e-8)
            if not rho.is_abelian():
                assert abs(np.trace(lon) + 2) < 1e-7 or abs(np.trace(lon) - 2) < 1e-7


def test_rep_json_round_trip(trefoil_rep):
    data = trefoil_rep.to_dict()
    assert set(data) == {"generators", "normalized"}
    assert all(len(g["matrix"]) == 4 for g in data["generators"])
    again = ParabolicRep.from_dict(TREFOIL, data)
    assert all(np.allclose(x, y) for x, y in zip(again.images, trefoil_rep.images))


def _profiles(d, commuting_hints=()):
    out = {r.commutation_profile() for r in solve_parabolic_reps(d)}
    for hint in commuting_hints:
        out |= {r.commutation_profile() for r in solve_parabolic_reps(d, commuting=hint)}
    return out


@pytest.mark.parametrize(
    "d",
    [TREFOIL, FIGURE_EIGHT, granny_diagram(), DIAGRAM_8_5, DIAGRAM_8_18],
    ids=["3_1", "4_1", "granny", "8_5", "8_18"],
)
def test_pinched_sets_match_commutation_profiles(d):
    sols = solve(d, SolverConfig(restarts=200, seed=0))
    # seed the rep search with one crossing of each partial pinched set
    hints = [{min(s.pinched)} for s in sols if s.pinched and len(s.pinched) < d.n]
    profiles = _profiles(d, hints)
    for s in sols:
        assert s.pinched in profiles, sorted(s.pinched)
    assert frozenset(range(1, d.n + 1)) in profiles


def test_fixture_pinched_sets_have_reps():
    profiles = _profiles(DIAGRAM_8_18, [{6}, {2}])
    assert {frozenset({6, 8}), frozenset({2, 4})} <= profiles
    assert frozenset({1, 2}) in _profiles(DIAGRAM_8_5)


def test_8_18_pinched_rep_commutes_at_6():
    rho = next(
        r for r in solve_parabolic_reps(DIAGRAM_8_18, commuting={6})
        if r.commutation_profile() == {6, 8}
    )
    rel = rho.presentation.relations[5]
    assert commute(rho.generator_image(rel.over), rho.generator_image(rel.incoming))
    assert commute(rho.generator_image(rel.incoming), rho.generator_image(rel.outgoing))


def test_transport_keeps_the_image_set(rng):
    rho = next(r for r in solve_parabolic_reps(DIAGRAM_8_5) if r.commutation_profile() == {1, 2})
    w = FAMILY_8_5.solution(FAMILY_8_5.random_params(rng))
    moved = transport(DIAGRAM_8_5, rho, {1, 2}, w)
    assert moved.verify(1e-9)
    original = rho.image_set()
    assert all(any(np.allclose(m, x) or np.allclose(m, -x) for x in original)
               for m in moved.image_set())
    same = transport(DIAGRAM_8_5, rho, set())
    assert all(np.allclose(x, y) for x, y in zip(same.images, rho.images))
    with pytest.raises(HolonomyError):
        transport(DIAGRAM_8_5, rho, {3})
    with pytest.raises(HolonomyError):
        transport(DIAGRAM_8_5, rho, {3}, w)


@pytest.mark.parametrize("family", [FAMILY_8_18_W, FAMILY_8_18_W2])
def test_8_18_transport_lands_in_the_modular_group(family, rng):
    sol = family.solution(family.random_params(rng))
    (hint,) = [{6}] if 6 in sol.pinched else [{2}]
    rho = next(
        r for r in solve_parabolic_reps(DIAGRAM_8_18, commuting=hint)
        if r.commutation_profile() == sol.pinched
    )
    moved = transport(DIAGRAM_8_18, rho, sol.pinched, sol)
    assert moved.verify(1e-9)
    g = modular_conjugator(moved)
    assert g is not None
    for m in moved.images:
        x = g @ m @ np.linalg.inv(g)
        assert np.allclose(x, np.round(x.real), atol=1e-8)


def test_connected_sum_rep(trefoil_rep):
    a = normalize_rep(trefoil_rep, 1)
    b = normalize_rep(trefoil_rep, 3)
    d, origin = connected_sum_with_map(TREFOIL, 1, TREFOIL, 3)
    for r in (0, -1, 0.5 + 2j):
        rho = connected_sum_rep(a, 1, b, 3, r)
        assert rho.verify(1e-9)
        tr = np.array([[1, r], [0, 1]])
        for e, (side, old) in origin.items():
            if side == 0:
                assert np.array_equal(rho.image(e), a.image(old))
            else:
                assert np.allclose(rho.image(e), tr @ b.image(old) @ np.linalg.inv(tr))
    with pytest.raises(HolonomyError):
        connected_sum_rep(trefoil_rep, 2, b, 3, 0)


def test_shift_parameter(trefoil_rep):
    a = normalize_rep(trefoil_rep, 1)
    assert shift_parameter(a, 2, a, 2) == 0
    with pytest.raises(HolonomyError):
        shift_parameter(a, 1, a, 2)


def test_shift_makes_the_chosen_meridians_commute(trefoil_rep):
    a = normalize_rep(trefoil_rep, 1)
    b = normalize_rep(irreducible(mirror(TREFOIL))[0], 2)
    d, origin = connected_sum_with_map(TREFOIL, 1, mirror(TREFOIL), 2)
    inv = {v: k for k, v in origin.items()}
    for arc_b in (2, 4):
        for arc_b2 in (4, 6):
            r = shift_parameter(a, arc_b, b, arc_b2)
            rho = connected_sum_rep(a, 1, b, 2, r)
            assert commute(rho.image(inv[(0, arc_b)]), rho.image(inv[(1, arc_b2)]))


def test_normalize_rep(trefoil_rep):
    g = np.array([[2, 1 + 1j], [0.5, (2 + 0.5 * (1 + 1j)) / 2]])
    g = g / np.sqrt(np.linalg.det(g))
    moved = trefoil_rep.conjugate(g)
    back = normalize_rep(moved)
    assert np.allclose(back.images[0], T_MATRIX)
    assert abs(fix_of(back.images[1])) < 1e-9
    assert all(np.allclose(x, y) or np.allclose(x, -y)
               for x, y in zip(back.images, trefoil_rep.images))

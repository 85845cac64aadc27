"""Solution-preserving surgeries on diagrams with a region-variable solution."""

from __future__ import annotations

import numpy as np

from .diagram import (
    LETTERS,
    Diagram,
    DiagramError,
    TangleWord,
    change_crossings,
    insert_tangle_with_tags,
    new_region_letter,
)
from .gluing import WSolution, is_solution, make_solution, pinched_set


class PreconditionError(ValueError):
    """A surgery was requested at a crossing that is not pinched."""


class PostconditionError(RuntimeError):
    """A surgery produced something that is not a solution (a convention bug)."""


def _vector(w) -> np.ndarray:
    return np.asarray(w.w if isinstance(w, WSolution) else w, dtype=complex)


def _tol(w, tol):
    if tol is not None:
        return tol
    return w.tolerance if isinstance(w, WSolution) else 1e-10


def transfer_crossing_change(d: Diagram, w, J, tol: float | None = None):
    """Return ``(D^J, w)``; ``w`` is verified to solve ``D^J`` as well."""
    J = frozenset(J)
    for k in J:
        d.crossing(k)
    vec = _vector(w)
    tol = _tol(w, tol)
    pinched = pinched_set(d, vec)
    bad = sorted(J - pinched)
    if bad:
        raise PreconditionError(f"crossing c_{bad[0]} is not pinched")
    dj = change_crossings(d, J)
    report = is_solution(dj, vec, tol)
    if not report:
        raise PostconditionError(
            "w does not solve the changed diagram: " + "; ".join(report.failures[:3])
        )
    return dj, make_solution(dj, vec, tol)


def tangle_solution_vector(d: Diagram, w, k: int, region_tags: dict) -> np.ndarray:
    """w' for a diagram from :func:`insert_tangle_with_tags`.

    Old regions copy ``w``; a new region created at twist stage ``s`` copies
    the value of the replaced crossing's corner chosen by
    :func:`new_region_letter`.
    """
    vec = _vector(w)
    corner = dict(zip(LETTERS, d.quad(k)))
    out = np.empty(len(region_tags), dtype=complex)
    for j, tag in region_tags.items():
        if tag[0] == "old":
            out[j - 1] = vec[tag[1] - 1]
        else:
            _, stage, index = tag
            out[j - 1] = vec[corner[new_region_letter(stage, index)] - 1]
    return out


def insert_tangle(d: Diagram, w, k: int, word, tol: float | None = None):
    """Replace pinched crossing ``k`` by a rational tangle and extend ``w``.

    Returns ``(D', w')``.  Every tangle crossing of ``D'`` is pinched in ``w'``
    and ``w'`` agrees with ``w`` on the old regions.
    """
    if not isinstance(word, TangleWord):
        word = TangleWord(tuple(word))
    vec = _vector(w)
    tol = _tol(w, tol)
    d.crossing(k)
    if k not in pinched_set(d, vec):
        raise PreconditionError(f"crossing c_{k} is not pinched")
    new, ids, tags = insert_tangle_with_tags(d, k, word)
    w2 = tangle_solution_vector(d, vec, k, tags)
    report = is_solution(new, w2, tol)
    if not report:
        raise PostconditionError(
            "tangle insertion broke the gluing equations: " + "; ".join(report.failures[:3])
        )
    sol = make_solution(new, w2, tol)
    missing = sorted(set(ids) - sol.pinched)
    if missing:
        raise PostconditionError(f"tangle crossing c_{missing[0]} is not pinched in w'")
    return new, WSolution(
        sol.w, sol.residual_norm, sol.pinched, sol.tolerance, meta={"tangle_crossings": ids}
    )


def changed_crossings(d1: Diagram, d2: Diagram) -> frozenset:
    """Crossings where ``d2`` has the over/under of ``d1`` swapped.

    Raises :class:`DiagramError` unless both come from one projection with
    matching crossing and region labels.
    """
    if d1.n != d2.n or len(d1.regions) != len(d2.regions):
        raise DiagramError("diagrams have different projections")
    out = set()
    for c1, c2 in zip(d1.crossings, d2.crossings):
        if set(c1.arcs) != set(c2.arcs):
            raise DiagramError(f"crossing {c1.id} has different arcs in the two diagrams")
        q1, q2 = d1.quad(c1.id), d2.quad(c2.id)
        if q1 == q2 and c1.sign == c2.sign:
            continue
        # a crossing change rotates the corner letters by one step
        if c1.sign == c2.sign or q2 not in (q1[1:] + q1[:1], q1[3:] + q1[:3]):
            raise DiagramError(f"crossing {c1.id} differs in more than its over/under choice")
        out.add(c1.id)
    for r1, r2 in zip(d1.regions, d2.regions):
        if r1.edges != r2.edges:
            raise DiagramError("region labels differ between the diagrams")
    return frozenset(out)


def r_related(d1: Diagram, d2: Diagram, w, tol: float | None = None) -> bool:
    """True iff ``w`` solves both diagrams and they differ at pinched crossings only."""
    vec = _vector(w)
    tol = _tol(w, tol)
    J = changed_crossings(d1, d2)
    if not is_solution(d1, vec, tol) or not is_solution(d2, vec, tol):
        return False
    return J <= pinched_set(d1, vec)


__all__ = [
    "PostconditionError",
    "PreconditionError",
    "changed_crossings",
    "insert_tangle",
    "r_related",
    "tangle_solution_vector",
    "transfer_crossing_change",
]

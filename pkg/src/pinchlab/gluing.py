"""Tau cross-ratios, gluing-equation residuals and pinch predicates.

Region variables are stored as a complex vector ``w`` indexed by region id
minus one.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Iterable

import numpy as np

from .diagram import LETTERS, Diagram, wirtinger

MARGIN = 1e-8
PINCH_TOL = 1e-7


class DegeneracyError(ValueError):
    """A denominator of the tau formulas vanishes (or nearly does)."""


class PinchConsistencyError(RuntimeError):
    """The linear pinch test and the tau test disagree decisively."""


def tau(wa, wb, wc, wd, corner: str):
    """Cross-ratio at the side edge of the octahedron facing ``corner``."""
    central = wb * wd - wa * wc
    if corner == "a":
        den = (wa - wb) * (wa - wd)
        num = central
    elif corner == "b":
        den = -central
        num = (wb - wc) * (wb - wa)
    elif corner == "c":
        den = (wc - wd) * (wc - wb)
        num = central
    elif corner == "d":
        den = -central
        num = (wd - wa) * (wd - wc)
    else:
        raise ValueError(f"corner must be one of a,b,c,d, got {corner!r}")
    if den == 0:
        what = "w_a w_c - w_b w_d = 0" if corner in "bd" else "adjacent region variables coincide"
        raise DegeneracyError(f"degenerate quadruple at corner {corner}: {what}")
    return num / den


def taus(wa, wb, wc, wd) -> tuple:
    return tuple(tau(wa, wb, wc, wd, x) for x in LETTERS)


def pinch_value(wa, wb, wc, wd):
    return wa - wb + wc - wd


@dataclass(frozen=True)
class WSolution:
    w: np.ndarray
    residual_norm: float
    pinched: frozenset
    tolerance: float
    volume: float | None = None
    classification: str | None = None
    meta: dict = field(default_factory=dict, compare=False)

    def to_dict(self) -> dict:
        out = {
            "w": [{"re": float(z.real), "im": float(z.imag)} for z in self.w],
            "residual_norm": float(self.residual_norm),
            "pinched": sorted(int(k) for k in self.pinched),
            "tol": float(self.tolerance),
        }
        if self.volume is not None:
            out["volume"] = float(self.volume)
        if self.classification is not None:
            out["classification"] = self.classification
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, data: dict) -> "WSolution":
        w = np.array([complex(z["re"], z["im"]) for z in data["w"]])
        return cls(
            w,
            float(data["residual_norm"]),
            frozenset(data["pinched"]),
            float(data["tol"]),
            data.get("volume"),
            data.get("classification"),
        )


def _quad_values(d: Diagram, w, k: int):
    ra, rb, rc, rd = d.quad(k)
    return w[ra - 1], w[rb - 1], w[rc - 1], w[rd - 1]


def degeneracy_failures(d: Diagram, w, margin: float = MARGIN) -> list[str]:
    """Non-degeneracy violations, each measured with relative margin ``margin``."""
    w = np.asarray(w, dtype=complex)
    out = []
    if len(w) != len(d.regions):
        return [f"expected {len(d.regions)} region variables, got {len(w)}"]
    scale = np.max(np.abs(w)) if len(w) else 1.0
    for j, z in enumerate(w, start=1):
        if abs(z) <= margin * scale:
            out.append(f"region {j}: w = 0")
    for c in d.crossings:
        q = _quad_values(d, w, c.id)
        ids = d.quad(c.id)
        for s in range(4):
            x, y = q[s], q[(s + 1) % 4]
            if abs(x - y) <= margin * max(abs(x), abs(y)):
                out.append(
                    f"crossing {c.id}: adjacent regions {ids[s]},{ids[(s + 1) % 4]} coincide"
                )
        wa, wb, wc, wd = q
        if abs(wa * wc - wb * wd) <= margin * max(abs(wa * wc), abs(wb * wd)):
            out.append(f"crossing {c.id}: w_a w_c - w_b w_d = 0")
    return out


def check_nondegenerate(d: Diagram, w, margin: float = MARGIN) -> None:
    fails = degeneracy_failures(d, w, margin)
    if fails:
        raise DegeneracyError("; ".join(fails))


def tau_table(d: Diagram, w) -> dict[tuple[int, str], complex]:
    w = np.asarray(w, dtype=complex)
    check_nondegenerate(d, w)
    table = {}
    for c in d.crossings:
        q = _quad_values(d, w, c.id)
        for letter, t in zip(LETTERS, taus(*q)):
            table[(c.id, letter)] = t
    return table


def residuals(d: Diagram, w) -> np.ndarray:
    """Per region: product of its corner taus minus one."""
    table = tau_table(d, w)
    out = np.empty(len(d.regions), dtype=complex)
    for r in d.regions:
        prod = 1.0 + 0j
        for corner in r.corners:
            prod *= table[corner]
        out[r.id - 1] = prod - 1.0
    return out


@dataclass
class SolutionReport:
    ok: bool
    max_residual: float
    failures: list[str]

    def __bool__(self):
        return self.ok


def is_solution(d: Diagram, w, tol: float = 1e-10) -> SolutionReport:
    w = np.asarray(w, dtype=complex)
    fails = degeneracy_failures(d, w, max(MARGIN, 0.0))
    if fails:
        return SolutionReport(False, float("inf"), fails)
    res = residuals(d, w)
    worst = float(np.max(np.abs(res)))
    for r, v in zip(d.regions, res):
        if abs(v) >= tol:
            fails.append(f"region {r.id}: |residual| = {abs(v):.3g}")
    return SolutionReport(not fails, worst, fails)


def is_pinched(d: Diagram, w, k: int, tol: float = PINCH_TOL) -> bool:
    """``w_a - w_b + w_c - w_d = 0`` at crossing ``k``, relative to the quadruple size.

    The taus around ``k`` are cross-checked: a clear disagreement with the
    linear test raises :class:`PinchConsistencyError`.
    """
    q = _quad_values(d, np.asarray(w, dtype=complex), k)
    scale = max(abs(z) for z in q)
    linear = abs(pinch_value(*q)) < tol * scale
    t = taus(*q)
    dev = max(abs(x - 1) for x in t)
    if linear and dev > 1e-4:
        raise PinchConsistencyError(f"crossing {k}: pinched but max |tau - 1| = {dev:.3g}")
    if not linear and dev < tol * 1e-3:
        raise PinchConsistencyError(f"crossing {k}: taus equal 1 but pinch value is not small")
    return linear


def pinched_set(d: Diagram, w, tol: float = PINCH_TOL) -> frozenset:
    check_nondegenerate(d, w)
    return frozenset(c.id for c in d.crossings if is_pinched(d, w, c.id, tol))


def propagate_pinch(d: Diagram, partial: Iterable[int]) -> frozenset:
    """Smallest superset of ``partial`` closed under sound forcing rules.

    Region rule: a region whose corner crossings are all in the set except
    one forces that one (corners counted with multiplicity, so a one-corner
    kink region forces its crossing outright).

    Generator rules: write every Wirtinger relation as ``y = v x v^-1``.  At
    a pinched crossing ``x`` and ``y`` have equal images, so their classes
    merge; two relations sharing the classes of ``v`` and ``x`` (or ``v`` and
    ``y``) force the remaining classes to merge.  A crossing whose ``x`` and
    ``y``, or ``v`` and ``x``, share a class has commuting images and is
    pinched.
    """
    current = set(partial)
    for k in current:
        d.crossing(k)
    pres = wirtinger(d)
    parent = list(range(len(pres.generators) + 1))
    # normalized (crossing, v, x, y)
    rels = [
        (r.crossing, r.over, r.incoming, r.outgoing)
        if r.sign > 0
        else (r.crossing, r.over, r.outgoing, r.incoming)
        for r in pres.relations
    ]

    def find(g):
        while parent[g] != g:
            parent[g] = parent[parent[g]]
            g = parent[g]
        return g

    def union(g, h):
        g, h = find(g), find(h)
        if g == h:
            return False
        parent[max(g, h)] = min(g, h)
        return True

    changed = True
    while changed:
        changed = False
        for r in d.regions:
            missing = [k for k, _ in r.corners if k not in current]
            if len(missing) == 1:
                current.add(missing[0])
                changed = True
        forward: dict = {}
        backward: dict = {}
        for k, v, x, y in rels:
            v, x, y = find(v), find(x), find(y)
            if k in current:
                changed |= union(x, y)
            elif x == y or v == x:
                current.add(k)
                changed = True
            if (v, x) in forward:
                changed |= union(forward[(v, x)], y)
            forward[(v, x)] = y
            if (v, y) in backward:
                changed |= union(backward[(v, y)], x)
            backward[(v, y)] = x
    return frozenset(current)


def make_solution(d: Diagram, w, tol: float = 1e-10, pinch_tol: float = PINCH_TOL) -> WSolution:
    w = np.asarray(w, dtype=complex)
    res = residuals(d, w)
    return WSolution(w, float(np.max(np.abs(res))), pinched_set(d, w, pinch_tol), tol)

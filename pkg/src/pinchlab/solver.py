"""Random-restart damped Gauss-Newton search for region-variable solutions."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .diagram import Diagram
from .gluing import (
    MARGIN,
    PINCH_TOL,
    PinchConsistencyError,
    WSolution,
    degeneracy_failures,
    is_solution,
    pinch_value,
    pinched_set,
    propagate_pinch,
)
from .volume import volume

ABELIAN = "abelian"
PARTIALLY_ABELIAN = "partially_abelian"
NOWHERE_PINCHED = "nowhere_pinched"


@dataclass(frozen=True)
class SolverConfig:
    restarts: int = 200
    seed: int = 0
    accept_tol: float = 1e-10
    dedup_tol: float = 1e-6
    max_newton_steps: int = 100
    pinch_tol: float = PINCH_TOL

    def __post_init__(self):
        if self.restarts < 1:
            raise ValueError("restarts must be >= 1")
        if min(self.accept_tol, self.dedup_tol, self.pinch_tol) <= 0:
            raise ValueError("tolerances must be positive")
        if self.max_newton_steps < 1:
            raise ValueError("max_newton_steps must be >= 1")


class _System:
    """Residuals ``prod tau - 1`` and their complex Jacobian for one diagram."""

    def __init__(self, d: Diagram):
        self.d = d
        self.m = len(d.regions)
        self.quads = np.array([d.quad(c.id) for c in d.crossings]) - 1
        # (region row, crossing index, corner position) for every corner
        rows, cross, pos = [], [], []
        letter_pos = {x: i for i, x in enumerate("abcd")}
        for r in d.regions:
            for k, letter in r.corners:
                rows.append(r.id - 1)
                cross.append(k - 1)
                pos.append(letter_pos[letter])
        self.rows = np.array(rows)
        self.cross = np.array(cross)
        self.pos = np.array(pos)

    def log_tau_grads(self, w):
        """tau values (N,4) and d log tau / d w (N,4,4) over the quadruple."""
        q = w[self.quads]
        a, b, c, d = q[:, 0], q[:, 1], q[:, 2], q[:, 3]
        cen = b * d - a * c
        t = np.empty((len(q), 4), dtype=complex)
        t[:, 0] = cen / ((a - b) * (a - d))
        t[:, 1] = (b - c) * (b - a) / (-cen)
        t[:, 2] = cen / ((c - d) * (c - b))
        t[:, 3] = (d - a) * (d - c) / (-cen)
        g = np.zeros((len(q), 4, 4), dtype=complex)
        dcen = np.stack([-c, d, -a, b], axis=1) / cen[:, None]
        # tau_a = cen / ((a-b)(a-d))
        g[:, 0] = dcen
        g[:, 0, 0] -= 1 / (a - b) + 1 / (a - d)
        g[:, 0, 1] += 1 / (a - b)
        g[:, 0, 3] += 1 / (a - d)
        # tau_b = (b-c)(b-a) / (-cen)
        g[:, 1] = -dcen
        g[:, 1, 1] += 1 / (b - c) + 1 / (b - a)
        g[:, 1, 2] -= 1 / (b - c)
        g[:, 1, 0] -= 1 / (b - a)
        # tau_c = cen / ((c-d)(c-b))
        g[:, 2] = dcen
        g[:, 2, 2] -= 1 / (c - d) + 1 / (c - b)
        g[:, 2, 3] += 1 / (c - d)
        g[:, 2, 1] += 1 / (c - b)
        # tau_d = (d-a)(d-c) / (-cen)
        g[:, 3] = -dcen
        g[:, 3, 3] += 1 / (d - a) + 1 / (d - c)
        g[:, 3, 0] -= 1 / (d - a)
        g[:, 3, 2] -= 1 / (d - c)
        return t, g

    def evaluate(self, w):
        t, g = self.log_tau_grads(w)
        prods = np.ones(self.m, dtype=complex)
        np.multiply.at(prods, self.rows, t[self.cross, self.pos])
        jac = np.zeros((self.m, self.m), dtype=complex)
        cols = self.quads[self.cross]  # (corners, 4)
        vals = g[self.cross, self.pos]  # (corners, 4)
        np.add.at(jac, (np.repeat(self.rows, 4), cols.ravel()), vals.ravel())
        jac *= prods[:, None]
        return prods - 1, jac


def _well_separated(d, w, margin=1e-3):
    return not degeneracy_failures(d, w, margin)


# relative pinch values between PINCH_TOL and this are ambiguous: such iterates
# are creeping toward a degenerate limit rather than sitting on a solution
AMBIGUOUS_PINCH = 1e-4


def _pinch_ambiguous(d: Diagram, w, tol: float) -> bool:
    for c in d.crossings:
        q = [w[r - 1] for r in d.quad(c.id)]
        rel = abs(pinch_value(*q)) / max(abs(z) for z in q)
        if tol <= rel < AMBIGUOUS_PINCH:
            return True
    return False


def newton(d: Diagram, w0, cfg: SolverConfig, system: _System | None = None, pinch=()):
    """Damped Gauss-Newton (Levenberg-Marquardt) from ``w0``.

    The outer region is pinned to 1 and the other variables move
    multiplicatively, ``w_j <- w_j exp(step_j)``, so an iterate needs many
    steps to collapse a variable to zero.  Crossings in ``pinch`` add the
    linear rows ``w_a - w_b + w_c - w_d = 0``, which only steers the search:
    callers verify the result on the plain system.

    Returns ``(w, residual norm of the gluing equations)`` or ``None`` when
    the iteration breaks down.
    """
    sysm = system or _System(d)
    free = np.array([j for j in range(sysm.m) if j != d.outer - 1])
    lin = np.zeros((len(pinch), sysm.m))
    for row, k in enumerate(sorted(pinch)):
        for col, coef in zip(sysm.quads[k - 1], (1, -1, 1, -1)):
            lin[row, col] += coef
    w = np.array(w0, dtype=complex)
    w[d.outer - 1] = 1.0

    def full(w):
        res, jac = sysm.evaluate(w)
        if len(lin):
            scale = np.max(np.abs(w))
            res = np.concatenate([res, lin @ w / scale])
            jac = np.vstack([jac, lin / scale])
        return res, jac[:, free] * w[free]

    mu = 1e-2
    with np.errstate(all="ignore"):
        res, jac = full(w)
        norm = np.linalg.norm(res)
        for _ in range(cfg.max_newton_steps):
            if not np.isfinite(norm):
                return None
            if norm < cfg.accept_tol * 1e-3:
                break
            gram = jac.conj().T @ jac
            grad = jac.conj().T @ res
            damp = np.diag(gram).real + 1e-12
            while True:
                try:
                    step = -np.linalg.solve(gram + mu * np.diag(damp), grad)
                except np.linalg.LinAlgError:
                    return None
                trial = w.copy()
                trial[free] = w[free] * np.exp(step)
                r2, j2 = full(trial)
                n2 = np.linalg.norm(r2)
                if np.isfinite(n2) and n2 < norm:
                    mu = max(mu / 3, 1e-12)
                    break
                mu *= 4
                if mu > 1e8:
                    return None
            w, res, jac, norm = trial, r2, j2, n2
        plain = np.linalg.norm(sysm.evaluate(w)[0])
    return w, float(plain)


def classify(d: Diagram, w) -> str:
    pinched = w.pinched if isinstance(w, WSolution) else pinched_set(d, w)
    if len(pinched) == d.n:
        return ABELIAN
    if pinched:
        return PARTIALLY_ABELIAN
    return NOWHERE_PINCHED


def signature(sol: WSolution, dedup_tol: float):
    digits = max(0, int(round(-np.log10(dedup_tol))))
    vol = round(float(sol.volume), digits) + 0.0
    return (tuple(sorted(sol.pinched)), vol)


def _random_start(rng, d: Diagram):
    for _ in range(100):
        w = rng.uniform(-2, 2, len(d.regions)) + 1j * rng.uniform(-2, 2, len(d.regions))
        w[d.outer - 1] = 1.0
        if _well_separated(d, w):
            return w
    return w


def _seed_pinch(rng, d: Diagram, index: int) -> frozenset:
    # odd restarts aim at a pinched family through a random crossing
    if index % 2 == 0 or d.n < 2:
        return frozenset()
    seeded = propagate_pinch(d, {int(rng.integers(1, d.n + 1))})
    return frozenset() if len(seeded) == d.n else seeded


def solve_one(d: Diagram, cfg: SolverConfig, index: int, system=None) -> WSolution | None:
    rng = np.random.default_rng([cfg.seed, index])
    start = _random_start(rng, d)
    seeded = _seed_pinch(rng, d, index)
    out = newton(d, start, cfg, system, seeded)
    if out is None:
        return None
    w, norm = out
    if degeneracy_failures(d, w, MARGIN) or not is_solution(d, w, cfg.accept_tol):
        return None
    if _pinch_ambiguous(d, w, cfg.pinch_tol):
        return None
    try:
        pinched = pinched_set(d, w, cfg.pinch_tol)
    except PinchConsistencyError:
        return None
    if propagate_pinch(d, pinched) != pinched:
        return None
    sol = WSolution(w, norm, pinched, cfg.accept_tol)
    return WSolution(
        w,
        norm,
        sol.pinched,
        cfg.accept_tol,
        volume(d, w),
        classify(d, sol),
        {"restart": index, "seeded": sorted(seeded)},
    )


def solve(d: Diagram, cfg: SolverConfig | None = None) -> list[WSolution]:
    """All distinct solutions found, one representative per signature.

    Representatives are the lowest-index restart of each signature, and the
    list is sorted by signature, so output depends only on the seed.
    """
    cfg = cfg or SolverConfig()
    system = _System(d)
    reps: dict = {}
    for i in range(cfg.restarts):
        sol = solve_one(d, cfg, i, system)
        if sol is None:
            continue
        key = signature(sol, cfg.dedup_tol)
        if key not in reps:
            reps[key] = sol
    return [reps[k] for k in sorted(reps)]

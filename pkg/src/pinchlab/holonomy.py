"""Boundary-parabolic representations of Wirtinger presentations.

A parabolic element is written through a spinor ``v``::

    P(v) = I + v (J v)^T = [[1 - v1 v2, v1^2], [-v2^2, 1 + v1 v2]]

with fixed point ``v1 / v2`` (infinity when ``v2 = 0``).  ``P(v)`` depends only
on ``v`` up to sign, ``g P(v) g^-1 = P(g v)`` and ``P(v)^-1 = P(i v)``.  A
Wirtinger relation ``m_out = m_over^s m_in m_over^-s`` then reads
``v_out v_out^T = x x^T`` with ``x = v_in + s v_over det[v_over, v_in]``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable

import numpy as np

from .diagram import (
    Diagram,
    DiagramError,
    WirtingerPresentation,
    change_crossings,
    connected_sum_with_map,
    reidemeister2_with_map,
    wirtinger,
)

INF = math.inf
T_MATRIX = np.array([[1, 1], [0, 1]], dtype=complex)


class HolonomyError(ValueError):
    """Bad input to a representation operation (not parabolic, not normalized...)."""


class VerificationError(RuntimeError):
    """A constructed representation violates a relation it must satisfy."""


# -- Moebius utilities --------------------------------------------------------

def as_moebius(m) -> np.ndarray:
    """Copy of ``m`` rescaled to determinant 1."""
    m = np.array(m, dtype=complex).reshape(2, 2)
    det = np.linalg.det(m)
    if abs(det) < 1e-300:
        raise HolonomyError("singular matrix")
    return m / np.sqrt(det)


def sign_align(m, ref) -> np.ndarray:
    """``m`` or ``-m``, whichever is closer to ``ref``."""
    m = np.asarray(m)
    return m if np.linalg.norm(m - ref) <= np.linalg.norm(m + ref) else -m


def moebius_distance(m1, m2) -> float:
    """Entrywise max difference between projective classes."""
    m1, m2 = np.asarray(m1), np.asarray(m2)
    return float(min(np.max(np.abs(m1 - m2)), np.max(np.abs(m1 + m2))))


def same_moebius(m1, m2, tol: float = 1e-9) -> bool:
    scale = max(1.0, np.max(np.abs(m1)), np.max(np.abs(m2)))
    return moebius_distance(m1, m2) < tol * scale


def is_parabolic(m, tol: float = 1e-9) -> bool:
    m = np.asarray(m)
    scale = max(1.0, float(np.max(np.abs(m))))
    tr = m[0, 0] + m[1, 1]
    return abs(tr * tr - 4) < tol * scale**2 and moebius_distance(m, np.eye(2)) > tol * scale


def parabolic_from_spinor(v) -> np.ndarray:
    v1, v2 = v
    return np.array([[1 - v1 * v2, v1 * v1], [-v2 * v2, 1 + v1 * v2]], dtype=complex)


def spinor_of(m, tol: float = 1e-9) -> np.ndarray:
    """A spinor ``v`` with ``P(v) = m`` up to sign."""
    m = np.asarray(m, dtype=complex)
    if not is_parabolic(m, tol):
        raise HolonomyError("matrix is not a nontrivial parabolic")
    if (m[0, 0] + m[1, 1]).real < 0:
        m = -m
    # square root of the larger off-diagonal entry, the other from 1 + v1 v2
    if abs(m[0, 1]) >= abs(m[1, 0]):
        v1 = np.sqrt(m[0, 1])
        v2 = (m[1, 1] - 1) / v1
    else:
        v2 = np.sqrt(-m[1, 0])
        v1 = (m[1, 1] - 1) / v2
    return np.array([v1, v2])


def parabolic_about(fix, t: complex) -> np.ndarray:
    """Parabolic fixing ``fix`` (``math.inf`` or ``None`` for infinity).

    At infinity this is ``[[1, t], [0, 1]]``; elsewhere the conjugate by
    ``[[fix, -1], [1, 0]]``, namely ``[[1 - fix t, fix^2 t], [-t, 1 + fix t]]``.
    """
    t = complex(t)
    if t == 0:
        raise HolonomyError("translation length must be nonzero")
    if fix is None or fix == INF:
        return np.array([[1, t], [0, 1]], dtype=complex)
    z = complex(fix)
    return np.array([[1 - z * t, z * z * t], [-t, 1 + z * t]], dtype=complex)


def fix_of(m, tol: float = 1e-9):
    """Fixed point of a nontrivial parabolic; ``math.inf`` for infinity."""
    m = np.asarray(m, dtype=complex)
    if not is_parabolic(m, tol):
        raise HolonomyError("fix_of needs a parabolic element other than the identity")
    scale = max(1.0, float(np.max(np.abs(m))))
    a, c, d = m[0, 0], m[1, 0], m[1, 1]
    if abs(c) < tol * scale:
        return INF
    return complex((a - d) / (2 * c))


def commute(m1, m2, tol: float = 1e-9) -> bool:
    m1, m2 = np.asarray(m1), np.asarray(m2)
    scale = max(1.0, float(np.max(np.abs(m1)))) * max(1.0, float(np.max(np.abs(m2))))
    return float(np.max(np.abs(m1 @ m2 - m2 @ m1))) < tol * scale


def translation(c: complex) -> np.ndarray:
    return np.array([[1, c], [0, 1]], dtype=complex)


# -- representations ----------------------------------------------------------

@dataclass(frozen=True)
class ParabolicRep:
    """Images of the Wirtinger generators of ``diagram`` (index ``g - 1``)."""

    diagram: Diagram
    images: tuple
    normalized: bool = False
    meta: dict = field(default_factory=dict, compare=False)

    @property
    def presentation(self) -> WirtingerPresentation:
        pres = self.__dict__.get("_pres")
        if pres is None:
            pres = wirtinger(self.diagram)
            object.__setattr__(self, "_pres", pres)
        return pres

    def generator_image(self, g: int) -> np.ndarray:
        return self.images[g - 1]

    def image(self, edge: int) -> np.ndarray:
        """Image of the meridian around ``edge``."""
        try:
            g = self.presentation.edge_generator[edge]
        except KeyError:
            raise HolonomyError(f"unknown arc {edge}") from None
        return self.images[g - 1]

    def relation_errors(self) -> list[float]:
        errs = []
        for rel in self.presentation.relations:
            o = self.generator_image(rel.over)
            i = self.generator_image(rel.incoming)
            u = self.generator_image(rel.outgoing)
            oo = o if rel.sign > 0 else np.linalg.inv(o)
            errs.append(moebius_distance(u, oo @ i @ np.linalg.inv(oo)))
        return errs

    def verify(self, tol: float = 1e-9) -> bool:
        if not all(is_parabolic(m, 1e-8) for m in self.images):
            return False
        return max(self.relation_errors(), default=0.0) < tol

    def commutation_profile(self, tol: float = 1e-9) -> frozenset:
        """Crossings whose over and incoming-under images commute."""
        return frozenset(
            rel.crossing
            for rel in self.presentation.relations
            if commute(self.generator_image(rel.over), self.generator_image(rel.incoming), tol)
        )

    def is_abelian(self, tol: float = 1e-9) -> bool:
        return len(self.commutation_profile(tol)) == self.diagram.n

    def image_set(self, tol: float = 1e-9) -> list[np.ndarray]:
        """Distinct generator images, each projective class once."""
        out: list[np.ndarray] = []
        for m in self.images:
            if not any(same_moebius(m, x, tol) for x in out):
                out.append(m)
        return out

    def conjugate(self, g) -> "ParabolicRep":
        g = as_moebius(g)
        gi = np.linalg.inv(g)
        return ParabolicRep(self.diagram, tuple(g @ m @ gi for m in self.images), False)

    def longitude(self, edge: int) -> np.ndarray:
        """Image of the zero-framed longitude starting on ``edge``.

        For a genuine boundary-parabolic rep it commutes with ``image(edge)``.
        """
        d = self.diagram
        heads = {}
        for c in d.crossings:
            heads[c.arcs[0]] = c
            heads[c.arcs[c.over_in]] = c
        m = np.eye(2, dtype=complex)
        e = edge
        for _ in range(2 * d.n):
            c = heads[e]
            if c.arcs[0] == e:
                o = self.image(c.arcs[1])
                m = m @ (np.linalg.inv(o) if c.sign > 0 else o)
                e = c.arcs[2]
            else:
                e = c.arcs[c.over_out]
        writhe = sum(c.sign for c in d.crossings)
        mer = self.image(edge)
        return m @ np.linalg.matrix_power(mer if writhe > 0 else np.linalg.inv(mer), abs(writhe))

    def to_dict(self) -> dict:
        gens = []
        for g, edges in enumerate(self.presentation.generators, start=1):
            m = self.generator_image(g)
            gens.append(
                {
                    "arc": int(min(edges)),
                    "edges": [int(e) for e in edges],
                    "matrix": [[float(z.real), float(z.imag)] for z in m.ravel()],
                }
            )
        return {"generators": gens, "normalized": bool(self.normalized)}

    @classmethod
    def from_dict(cls, diagram: Diagram, data: dict) -> "ParabolicRep":
        pres = wirtinger(diagram)
        images: list = [None] * len(pres.generators)
        for entry in data["generators"]:
            m = np.array([complex(a, b) for a, b in entry["matrix"]]).reshape(2, 2)
            images[pres.edge_generator[entry["arc"]] - 1] = m
        if any(m is None for m in images):
            raise HolonomyError("representation does not cover every generator")
        return cls(diagram, tuple(images), bool(data.get("normalized", False)))


def rep_from_edge_images(d: Diagram, edge_image, tol: float = 1e-9) -> ParabolicRep:
    """Assemble a rep of ``d`` from a callable ``edge -> matrix``.

    All edges of one over-arc span must carry the same image.
    """
    pres = wirtinger(d)
    images = []
    for edges in pres.generators:
        first = np.asarray(edge_image(edges[0]), dtype=complex)
        for e in edges[1:]:
            if not same_moebius(first, edge_image(e), tol):
                raise VerificationError(f"edges {edges[0]} and {e} of one over-arc disagree")
        images.append(first)
    return ParabolicRep(d, tuple(images))


# -- solving ------------------------------------------------------------------

@dataclass(frozen=True)
class RepConfig:
    restarts: int = 60
    seed: int = 0
    tol: float = 1e-10
    max_steps: int = 200
    dedup_tol: float = 1e-6


def _rel_system(pres: WirtingerPresentation, v: np.ndarray, commuting=()):
    # v: (G, 2); residual rows: 3 per relation, then det[v_over, v_in] for
    # every crossing forced to commute
    G = len(v)
    rels = pres.relations
    extra = [rels[k - 1] for k in sorted(commuting)]
    res = np.zeros(3 * len(rels) + len(extra), dtype=complex)
    jac = np.zeros((len(res), 2 * G), dtype=complex)
    for n, rel in enumerate(extra, start=3 * len(rels)):
        o, i = rel.over - 1, rel.incoming - 1
        vo, vi = v[o], v[i]
        res[n] = vo[0] * vi[1] - vo[1] * vi[0]
        jac[n, 2 * o:2 * o + 2] += (vi[1], -vi[0])
        jac[n, 2 * i:2 * i + 2] += (-vo[1], vo[0])

    def sym_rows(y):
        # d(y y^T)_{11,12,22} / dy  -> (3, 2)
        return np.array([[2 * y[0], 0], [y[1], y[0]], [0, 2 * y[1]]])

    for r, rel in enumerate(rels):
        o, i, u = rel.over - 1, rel.incoming - 1, rel.outgoing - 1
        vo, vi, vu = v[o], v[i], v[u]
        s = rel.sign
        delta = vo[0] * vi[1] - vo[1] * vi[0]
        x = vi + s * vo * delta
        rows = slice(3 * r, 3 * r + 3)
        res[rows] = [vu[0] ** 2 - x[0] ** 2, vu[0] * vu[1] - x[0] * x[1], vu[1] ** 2 - x[1] ** 2]
        dx_dvi = np.eye(2) + s * np.outer(vo, [-vo[1], vo[0]])
        dx_dvo = s * (delta * np.eye(2) + np.outer(vo, [vi[1], -vi[0]]))
        sx = sym_rows(x)
        jac[rows, 2 * u:2 * u + 2] += sym_rows(vu)
        jac[rows, 2 * i:2 * i + 2] -= sx @ dx_dvi
        jac[rows, 2 * o:2 * o + 2] -= sx @ dx_dvo
    return res, jac


def _lm(pres, v0, cfg: RepConfig, commuting=()):
    G = len(v0)
    free = np.arange(2, 2 * G)  # generator 1 pinned to (1, 0)
    v = v0.copy()
    mu = 1e-2
    res, jac = _rel_system(pres, v, commuting)
    norm = np.linalg.norm(res)
    with np.errstate(all="ignore"):
        for _ in range(cfg.max_steps):
            if not np.isfinite(norm):
                return None
            if norm < cfg.tol * 1e-3:
                break
            J = jac[:, free]
            gram = J.conj().T @ J
            grad = J.conj().T @ res
            damp = np.diag(gram).real + 1e-12
            while True:
                try:
                    step = -np.linalg.solve(gram + mu * np.diag(damp), grad)
                except np.linalg.LinAlgError:
                    return None
                trial = v.ravel().copy()
                trial[free] += step
                trial = trial.reshape(G, 2)
                r2, j2 = _rel_system(pres, trial, commuting)
                n2 = np.linalg.norm(r2)
                if np.isfinite(n2) and n2 < norm:
                    mu = max(mu / 3, 1e-12)
                    break
                mu *= 4
                if mu > 1e8:
                    return None
            v, res, jac, norm = trial, r2, j2, n2
    return v, float(norm)


def _to_infinity(v) -> np.ndarray:
    """Determinant-one ``g`` with ``g v = (1, 0)``, so ``g P(v) g^-1 = [[1,1],[0,1]]``."""
    if abs(v[1]) > 1e-14:
        return np.array([[0, 1 / v[1]], [-v[1], v[0]]], dtype=complex)
    return np.array([[1 / v[0], 0], [0, v[0]]], dtype=complex)


def normalize_rep(rho: ParabolicRep, anchor_edge: int | None = None) -> ParabolicRep:
    """Conjugate so the anchor meridian is ``[[1,1],[0,1]]`` and, when some
    image does not commute with it, the first such generator fixes 0.

    The anchor defaults to generator 1.
    """
    first = rho.images[0] if anchor_edge is None else rho.image(anchor_edge)
    out = rho.conjugate(_to_infinity(spinor_of(first)))
    for m in out.images:
        if not commute(m, T_MATRIX):
            z = fix_of(m)
            out = out.conjugate(translation(-z))
            break
    # snap the anchor exactly
    images = list(out.images)
    anchor_idx = 0 if anchor_edge is None else rho.presentation.edge_generator[anchor_edge] - 1
    images[anchor_idx] = T_MATRIX.copy()
    return ParabolicRep(rho.diagram, tuple(images), True)


def solve_parabolic_reps(
    d: Diagram, cfg: RepConfig | None = None, commuting: Iterable[int] = ()
) -> list[ParabolicRep]:
    """Boundary-parabolic reps of ``d`` up to conjugacy, found by random restarts.

    Each is normalized (generator 1 maps to ``[[1,1],[0,1]]``; the first
    non-commuting generator fixes 0).  The abelian rep appears once.
    ``commuting`` restricts the search to reps whose generators commute at
    the given crossings.
    """
    cfg = cfg or RepConfig()
    commuting = frozenset(commuting)
    for k in commuting:
        d.crossing(k)
    pres = wirtinger(d)
    G = len(pres.generators)
    found: list[ParabolicRep] = []
    if G == 1:
        return [ParabolicRep(d, (T_MATRIX.copy(),), True)]
    for i in range(cfg.restarts):
        rng = np.random.default_rng([cfg.seed, i])
        v0 = rng.normal(size=(G, 2)) + 1j * rng.normal(size=(G, 2))
        v0[0] = (1, 0)
        out = _lm(pres, v0, cfg, commuting)
        if out is None:
            continue
        v, norm = out
        if norm > cfg.tol or np.min(np.linalg.norm(v, axis=1)) < 1e-6:
            continue
        rho = ParabolicRep(d, tuple(parabolic_from_spinor(x) for x in v))
        if not rho.verify(1e-9) or not commuting <= rho.commutation_profile():
            continue
        try:
            rho = normalize_rep(rho)
        except HolonomyError:
            continue
        if not rho.verify(1e-9):
            continue
        if not any(_same_rep(rho, x, cfg.dedup_tol) for x in found):
            found.append(ParabolicRep(d, rho.images, True, {"restart": i}))
    found.sort(key=_rep_key)
    return found


def _same_rep(a: ParabolicRep, b: ParabolicRep, tol: float) -> bool:
    return all(same_moebius(x, y, tol) for x, y in zip(a.images, b.images))


def _rep_key(rho: ParabolicRep):
    key = []
    for m in rho.images:
        m = m if (m[0, 0] + m[1, 1]).real >= 0 else -m
        key.extend((round(float(z.real), 6), round(float(z.imag), 6)) for z in m.ravel())
    return (len(rho.commutation_profile()) == rho.diagram.n, key)


def reps_with_profile(reps: Iterable[ParabolicRep], profile) -> list[ParabolicRep]:
    profile = frozenset(profile)
    return [r for r in reps if r.commutation_profile() == profile]


# -- constructions ------------------------------------------------------------

def transport(d: Diagram, rho: ParabolicRep, J, w=None) -> ParabolicRep:
    """Representation of ``D^J`` with the same meridian images edge by edge.

    At a crossing whose generators commute the under strand keeps one image,
    so after the change the new over-arcs are still constant and every edge
    can keep its image.
    """
    from .gluing import pinched_set

    J = frozenset(J)
    for k in J:
        d.crossing(k)
    if w is not None:
        wv = getattr(w, "w", w)
        bad = sorted(J - pinched_set(d, wv))
        if bad:
            raise HolonomyError(f"crossing {bad[0]} is not pinched in w")
    commuting = rho.commutation_profile()
    bad = sorted(J - commuting)
    if bad:
        raise HolonomyError(f"generators at crossing {bad[0]} do not commute")
    dj = change_crossings(d, J)
    out = rep_from_edge_images(dj, rho.image)
    if not out.verify(1e-9):
        raise VerificationError("transported representation violates a relation")
    return out


def shift_parameter(rho: ParabolicRep, arc: int, rho2: ParabolicRep, arc2: int) -> complex:
    z1 = fix_of(rho.image(arc))
    z2 = fix_of(rho2.image(arc2))
    if z1 == INF or z2 == INF:
        raise HolonomyError("shift parameter needs images that do not fix infinity")
    return complex(z1 - z2)


def connected_sum_rep(
    rho: ParabolicRep, arc: int, rho2: ParabolicRep, arc2: int, r: complex = 0
) -> ParabolicRep:
    """``rho #_r rho2`` on the connected sum cutting ``arc`` and ``arc2``.

    Both cut-arc meridians must map to ``[[1,1],[0,1]]``; the second factor
    is conjugated by the translation ``z -> z + r``.
    """
    for rep, a in ((rho, arc), (rho2, arc2)):
        if not same_moebius(rep.image(a), T_MATRIX, 1e-9):
            raise HolonomyError(f"meridian of cut arc {a} is not [[1,1],[0,1]]")
    d, origin = connected_sum_with_map(rho.diagram, arc, rho2.diagram, arc2)
    tr = translation(r)
    tri = translation(-r)
    moved = {}

    def image(e):
        side, old = origin[e]
        if side == 0:
            return rho.image(old)
        if old not in moved:
            moved[old] = tr @ rho2.image(old) @ tri
        return moved[old]

    out = rep_from_edge_images(d, image)
    if not out.verify(1e-9):
        raise VerificationError("connected-sum representation violates a relation")
    return out


def reidemeister2_rep(
    rho: ParabolicRep, arc: int, arc2: int, over: bool = True, region: int | None = None
) -> tuple[ParabolicRep, tuple[int, int]]:
    """Extend ``rho`` across a Reidemeister II move (an isotopy, so always possible).

    Returns the rep on the new diagram and the two new crossing ids.
    """
    new, ids, origin = reidemeister2_with_map(rho.diagram, arc, arc2, over, region)
    under_old = arc2 if over else arc
    # the under strand piece between the two new crossings gets a fresh image
    ends: dict = {}
    for c in new.crossings:
        for s, e in enumerate(c.arcs):
            ends.setdefault(e, []).append((c.id, s))
    middle = [
        e
        for e, occ in ends.items()
        if origin[e] == under_old and all(k in ids and s in (0, 2) for k, s in occ)
    ]
    images = {e: rho.image(origin[e]) for e in ends if e not in middle}
    for _ in range(3):
        for c in new.crossings:
            if c.id not in ids:
                continue
            i, o, u = c.arcs[0], c.arcs[1], c.arcs[2]
            if o in images and i in images and u not in images:
                oo = images[o] if c.sign > 0 else np.linalg.inv(images[o])
                images[u] = oo @ images[i] @ np.linalg.inv(oo)
            elif o in images and u in images and i not in images:
                oo = images[o] if c.sign > 0 else np.linalg.inv(images[o])
                images[i] = np.linalg.inv(oo) @ images[u] @ oo
    out = rep_from_edge_images(new, images.__getitem__)
    if not out.verify(1e-9):
        raise VerificationError("Reidemeister II extension violates a relation")
    return out, ids


def pinched_connected_sum(
    rho: ParabolicRep,
    arc: int,
    rho2: ParabolicRep,
    arc2: int,
    arc_b: int,
    arc_b2: int,
    region: int,
    over: bool = True,
):
    """Connected sum plus the Reidemeister II pair that comes out pinched.

    ``rho`` and ``rho2`` are normalized at the cut arcs ``arc`` and ``arc2``;
    ``arc_b`` and ``arc_b2`` are arcs of the two factors (old labels) whose
    meridians are made to share a fixed point by the choice of ``r``.  The
    two arcs are pushed across each other inside ``region`` of the summed
    diagram.  Returns ``(rep, new crossing ids, r)``; raises
    :class:`VerificationError` if the new crossings do not commute.
    """
    r = shift_parameter(rho, arc_b, rho2, arc_b2)
    summed = connected_sum_rep(rho, arc, rho2, arc2, r)
    _, origin = connected_sum_with_map(rho.diagram, arc, rho2.diagram, arc2)
    inverse = {v: k for k, v in origin.items()}
    out, ids = reidemeister2_rep(
        summed, inverse[(0, arc_b)], inverse[(1, arc_b2)], over, region
    )
    profile = out.commutation_profile()
    if not set(ids) <= profile:
        raise VerificationError("Reidemeister II crossings of the sum do not commute")
    return out, ids, r


# -- integrality ----------------------------------------------------------------

def _is_integral(m, tol) -> bool:
    return bool(np.all(np.abs(m - np.round(m.real)) < tol))


def modular_conjugator(rho: ParabolicRep, tol: float = 1e-8, max_power: int = 3):
    """A matrix ``g`` with every ``g m g^-1`` in SL(2, Z), or ``None``.

    Search: send one image to ``[[1, n], [0, 1]]`` (|n| <= max_power) and then
    try the finitely many translations making a non-commuting image integral.
    """
    imgs = rho.image_set()
    if not imgs:
        return None
    a = imgs[0]
    other = next((m for m in imgs if not commute(m, a)), None)
    g0 = _to_infinity(spinor_of(a))
    for n in range(1, max_power + 1):
        for sgn in (1, -1):
            scale = np.sqrt(complex(sgn * n))
            g1 = np.array([[scale, 0], [0, 1 / scale]]) @ g0
            if other is None:
                cands = [np.eye(2)]
            else:
                b = g1 @ other @ np.linalg.inv(g1)
                t = -b[1, 0]
                z = fix_of(b)
                if abs(t) < tol or z == INF:
                    continue
                # need (z + c) t integral: c = k / t - z, smallest shifts first
                bound = 4 * n * int(abs(t) + 1)
                shifts = sorted((k / t - z for k in range(-bound, bound + 1)), key=abs)
                cands = [translation(c) for c in shifts]
            for tr in cands:
                g = tr @ g1
                gi = np.linalg.inv(g)
                if all(_is_integral(g @ m @ gi, tol) for m in imgs):
                    return g
    return None


def in_modular_group(rho: ParabolicRep, tol: float = 1e-8) -> bool:
    return modular_conjugator(rho, tol) is not None


__all__ = [
    "HolonomyError",
    "INF",
    "ParabolicRep",
    "RepConfig",
    "T_MATRIX",
    "VerificationError",
    "as_moebius",
    "commute",
    "connected_sum_rep",
    "fix_of",
    "in_modular_group",
    "is_parabolic",
    "modular_conjugator",
    "moebius_distance",
    "normalize_rep",
    "parabolic_about",
    "parabolic_from_spinor",
    "pinched_connected_sum",
    "reidemeister2_rep",
    "rep_from_edge_images",
    "reps_with_profile",
    "same_moebius",
    "shift_parameter",
    "sign_align",
    "solve_parabolic_reps",
    "spinor_of",
    "transport",
    "translation",
]

"""Knot identification for the census: the Kauffman bracket up to units.

The bracket up to ``+-A^k`` is the Jones polynomial without its writhe
normalization, so it ignores orientation.  :func:`identity_key` also forgets
chirality, which is how the census table lists its knots.
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np

from .diagram import Diagram

MAX_CROSSINGS = 18


def _loop_count(pd, state: int) -> int:
    # smoothing 0 joins slots (0,1),(2,3); smoothing 1 joins (0,3),(1,2)
    parent = {}

    def root(x):
        while parent.get(x, x) != x:
            x = parent[x]
        return x

    for bit, (i, j, k, l) in enumerate(pd):
        pairs = ((i, l), (j, k)) if state >> bit & 1 else ((i, j), (k, l))
        for x, y in pairs:
            rx, ry = root(x), root(y)
            if rx != ry:
                parent[rx] = ry
    arcs = {a for x in pd for a in x}
    return sum(1 for a in arcs if root(a) == a)


@lru_cache(maxsize=256)
def _bracket(pd: tuple) -> tuple[int, np.ndarray]:
    n = len(pd)
    if n > MAX_CROSSINGS:
        raise ValueError(f"bracket state sum limited to {MAX_CROSSINGS} crossings")
    # exponents of A run over [-3n-2, 3n+2]; loops contribute (-A^2 - A^-2)^(loops-1)
    size = 6 * n + 5
    centre = 2 * n + 2
    loop_powers = [np.zeros(2 * centre + 1, dtype=object)]
    loop_powers[0][centre] = 1
    total = np.zeros(size, dtype=object)
    for state in range(1 << n):
        b = bin(state).count("1")
        loops = _loop_count(pd, state)
        while len(loop_powers) < loops:
            prev = loop_powers[-1]
            nxt = np.zeros_like(prev)
            nxt[2:] -= prev[:-2]
            nxt[:-2] -= prev[2:]
            loop_powers.append(nxt)
        poly = loop_powers[loops - 1]
        shift = (n - 2 * b) + 3 * n + 2 - centre
        for idx in np.nonzero(poly)[0]:
            total[idx + shift] += poly[idx]
    nz = np.nonzero(total)[0]
    return int(nz[0]) - 3 * n - 2, total[nz[0]: nz[-1] + 1]


def bracket_coefficients(d: Diagram) -> tuple[int, ...]:
    """Bracket coefficients up to a unit, leading coefficient positive."""
    _, coeffs = _bracket(tuple(d.pd))
    out = tuple(int(c) for c in coeffs)
    return out if out[0] > 0 else tuple(-c for c in out)


def identity_key(d: Diagram) -> frozenset:
    """Invariant of the unoriented knot type up to mirror image."""
    c = bracket_coefficients(d)
    r = c[::-1]
    return frozenset({c, r if r[0] > 0 else tuple(-x for x in r)})


def identify(d: Diagram, table: dict[str, Diagram]) -> list[str]:
    """Names in ``table`` whose diagrams share ``d``'s identity key."""
    key = identity_key(d)
    return sorted(name for name, other in table.items() if identity_key(other) == key)


__all__ = ["MAX_CROSSINGS", "bracket_coefficients", "identify", "identity_key"]

"""Hyperbolic volume of a region-variable solution.

Each crossing octahedron is cut into four side tetrahedra, whose shapes are
ratios of adjacent region variables, and one central tetrahedron.  With
corner letters as in :mod:`pinchlab.diagram` the octahedron contributes

    -D(w_b/w_a) - D(w_b/w_c) - D(w_d/w_c) - D(w_d/w_a) - D(w_a w_c / (w_b w_d))

where ``D`` is the Bloch-Wigner function.  This is the imaginary part of
the five-term potential whose logarithmic derivatives are the tau formulas.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .gluing import DegeneracyError, check_nondegenerate

# B_{2n} / (2n+1)! -- coefficients of Li2(z) = sum_n c_n u^(2n+1) + u - u^2/4 with u = -log(1-z)
_BERNOULLI = [
    1 / 6, -1 / 30, 1 / 42, -1 / 30, 5 / 66, -691 / 2730, 7 / 6,
    -3617 / 510, 43867 / 798, -174611 / 330, 854513 / 138,
    -236364091 / 2730, 8553103 / 6, -23749461029 / 870,
]
_COEFFS = [b / math.factorial(2 * n + 3) for n, b in enumerate(_BERNOULLI)]


def _li2_series(z: complex) -> complex:
    # Bernoulli-accelerated series, accurate for |z| <= 1, Re z <= 1/2
    u = -cmath.log(1 - z)
    u2 = u * u
    total = u - u2 / 4
    p = u * u2
    for c in _COEFFS:
        term = c * p
        total += term
        if abs(term) < 1e-17 * abs(total):
            break
        p *= u2
    return total


def li2(z: complex) -> complex:
    """Principal branch of the dilogarithm."""
    z = complex(z)
    if z == 0:
        return 0j
    if z == 1:
        return complex(math.pi**2 / 6)
    if abs(z) > 1:
        # inversion: Li2(z) = -Li2(1/z) - pi^2/6 - log(-z)^2/2
        lz = cmath.log(-z)
        return -li2(1 / z) - math.pi**2 / 6 - lz * lz / 2
    if z.real > 0.5:
        # reflection: Li2(z) = pi^2/6 - log(z) log(1-z) - Li2(1-z)
        return math.pi**2 / 6 - cmath.log(z) * cmath.log(1 - z) - _li2_series(1 - z)
    return _li2_series(z)


def bloch_wigner(z: complex) -> float:
    """D(z) = Im Li2(z) + arg(1 - z) log|z|; zero on the real line."""
    z = complex(z)
    if z == 0 or z == 1:
        raise DegeneracyError(f"Bloch-Wigner function has no tetrahedron at z = {z}")
    if z.imag == 0:
        return 0.0
    if abs(z) > 1:
        return -bloch_wigner(1 / z)
    return li2(z).imag + cmath.phase(1 - z) * math.log(abs(z))


@dataclass(frozen=True)
class OctahedronShapes:
    crossing: int
    sides: tuple[complex, complex, complex, complex]
    central: complex
    signs: tuple[int, int, int, int, int] = (-1, -1, -1, -1, -1)

    @property
    def shapes(self) -> tuple[complex, ...]:
        return self.sides + (self.central,)

    def volume(self) -> float:
        return sum(s * bloch_wigner(z) for s, z in zip(self.signs, self.shapes))


def quadruple_shapes(wa, wb, wc, wd, crossing: int = 0) -> OctahedronShapes:
    return OctahedronShapes(
        crossing,
        (wb / wa, wb / wc, wd / wc, wd / wa),
        wa * wc / (wb * wd),
    )


def octahedron_shapes(d, w, k: int) -> OctahedronShapes:
    w = np.asarray(w, dtype=complex)
    check_nondegenerate(d, w)
    ra, rb, rc, rd = d.quad(k)
    return quadruple_shapes(w[ra - 1], w[rb - 1], w[rc - 1], w[rd - 1], k)


def per_crossing_volumes(d, w) -> list[float]:
    w = np.asarray(w, dtype=complex)
    check_nondegenerate(d, w)
    out = []
    for c in d.crossings:
        ra, rb, rc, rd = d.quad(c.id)
        out.append(quadruple_shapes(w[ra - 1], w[rb - 1], w[rc - 1], w[rd - 1], c.id).volume())
    return out


def volume(d, w) -> float:
    return float(sum(per_crossing_volumes(d, w)))


def volume_report(d, w) -> dict:
    per = per_crossing_volumes(d, w)
    return {"volume": float(sum(per)), "per_crossing": [float(v) for v in per]}

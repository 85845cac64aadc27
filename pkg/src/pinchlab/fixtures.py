"""Published parametric solutions and the bundled knot census.

The two 8-crossing fixture diagrams are table diagrams whose crossings and
regions were relabeled so that the printed formulas below solve the gluing
equations; the labeling was recovered by exhaustive search over region
bijections and is stored here as region edge sets.
"""

from __future__ import annotations

import ast
import operator
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources

import numpy as np

from .diagram import Diagram, DiagramError, connected_sum, mirror, parse_pd
from .gluing import WSolution, degeneracy_failures, make_solution

_BINOPS = {
    ast.Add: operator.add,
    ast.Sub: operator.sub,
    ast.Mult: operator.mul,
    ast.Div: operator.truediv,
    ast.Pow: operator.pow,
}
_UNOPS = {ast.USub: operator.neg, ast.UAdd: operator.pos}


def _compile(expr: str, names: tuple[str, ...]):
    tree = ast.parse(expr, mode="eval")

    def check(node):
        if isinstance(node, ast.Expression):
            check(node.body)
        elif isinstance(node, ast.BinOp) and type(node.op) in _BINOPS:
            check(node.left)
            check(node.right)
        elif isinstance(node, ast.UnaryOp) and type(node.op) in _UNOPS:
            check(node.operand)
        elif isinstance(node, ast.Constant) and isinstance(node.value, (int, float, complex)):
            pass
        elif isinstance(node, ast.Name) and node.id in names:
            pass
        else:
            raise ValueError(f"unsupported expression element {ast.dump(node)}")

    check(tree)
    return tree.body


def _eval(node, env):
    if isinstance(node, ast.BinOp):
        return _BINOPS[type(node.op)](_eval(node.left, env), _eval(node.right, env))
    if isinstance(node, ast.UnaryOp):
        return _UNOPS[type(node.op)](_eval(node.operand, env))
    if isinstance(node, ast.Constant):
        return node.value
    return env[node.id]


@dataclass(frozen=True)
class SolutionFamily:
    """Region variables given by arithmetic formulas in named parameters."""

    name: str
    params: tuple[str, ...]
    expressions: tuple[str, ...]
    diagram: Diagram

    def __post_init__(self):
        if len(self.expressions) != len(self.diagram.regions):
            raise ValueError("one expression per region is required")
        object.__setattr__(
            self, "_trees", tuple(_compile(e, self.params) for e in self.expressions)
        )

    def evaluate(self, values) -> np.ndarray:
        values = tuple(complex(v) for v in values)
        if len(values) != len(self.params):
            raise ValueError(f"{self.name} takes parameters {','.join(self.params)}")
        env = dict(zip(self.params, values))
        try:
            return np.array([_eval(t, env) for t in self._trees], dtype=complex)
        except ZeroDivisionError as exc:
            raise ValueError(f"{self.name} is undefined at {values}") from exc

    def solution(self, values, tol: float = 1e-10) -> WSolution:
        return make_solution(self.diagram, self.evaluate(values), tol)

    def random_params(self, rng, margin: float = 1e-3):
        """Random complex parameters whose evaluation is safely non-degenerate."""
        while True:
            values = tuple(complex(*rng.normal(size=2)) for _ in self.params)
            try:
                w = self.evaluate(values)
            except ValueError:
                continue
            if np.all(np.isfinite(w)) and not degeneracy_failures(self.diagram, w, margin):
                return values


def _fixture_diagram(pd, keys) -> Diagram:
    return Diagram.from_pd(pd, keys)


DIAGRAM_8_5 = _fixture_diagram(
    [(15, 6, 16, 7), (7, 14, 8, 15), (11, 1, 12, 16), (1, 13, 2, 12),
     (13, 3, 14, 2), (3, 9, 4, 8), (9, 5, 10, 4), (5, 11, 6, 10)],
    [[2, 7, 12, 14, 16], [6, 11, 16], [7, 15], [4, 6, 8, 10, 15], [1, 12],
     [2, 13], [1, 3, 5, 9, 11, 13], [5, 10], [4, 9], [3, 8, 14]],
)

DIAGRAM_8_18 = _fixture_diagram(
    [(1, 7, 2, 6), (13, 3, 14, 2), (15, 4, 16, 5), (5, 11, 6, 10),
     (7, 12, 8, 13), (11, 16, 12, 1), (9, 15, 10, 14), (3, 8, 4, 9)],
    [[5, 11, 16], [1, 7, 12], [3, 8, 13], [4, 9, 15], [5, 10, 15],
     [1, 6, 11], [2, 7, 13], [3, 9, 14], [2, 6, 10, 14], [4, 8, 12, 16]],
)

_S = "1/(p+q-p*q*r)"

FAMILY_8_5 = SolutionFamily(
    "8_5",
    ("p", "q", "r"),
    (
        f"-{_S}+1/p+1/q",
        f"-{_S}+1/p+r",
        f"-{_S}+1/p+2/q-r",
        f"-{_S}+1/p+1/q",
        f"-{_S}+1/q+r",
        "1/p+1/q",
        "r",
        "1/p+1/q",
        f"-{_S}+1/q+r",
        f"-{_S}+1/p+r",
    ),
    DIAGRAM_8_5,
)

FAMILY_8_18_W = SolutionFamily(
    "8_18",
    ("p", "q", "r"),
    (
        "p-q*r+q",
        "p-q*r+q",
        "p*r+p-q*r",
        "p*r+p-q*r",
        "p*r-q*r+q",
        "p-q*r+2*q",
        "p*r+p+q",
        "2*p*r+p-q*r",
        "p*r+q",
        "p-q*r",
    ),
    DIAGRAM_8_18,
)

FAMILY_8_18_W2 = SolutionFamily(
    "8_18'",
    ("p", "q", "r"),
    (
        "p-q*r+q",
        "p*r-2*q*r+q",
        "4*p*r-p-3*q*r+q",
        "p*r+p-q*r",
        "p*r-q*r+q",
        "p*r-q*r+q",
        "3*p*r-p-2*q*r+q",
        "3*p*r-p-2*q*r+q",
        "2*p*r-p-q*r+q",
        "p-q*r",
    ),
    DIAGRAM_8_18,
)

FAMILIES = {f.name: f for f in (FAMILY_8_5, FAMILY_8_18_W, FAMILY_8_18_W2)}
# the unprimed family is the default for a knot name
KNOT_FAMILIES = {"8_5": FAMILY_8_5, "8_18": FAMILY_8_18_W}


# -- census -------------------------------------------------------------------

@dataclass(frozen=True)
class CensusEntry:
    name: str
    pd: str
    regions: int
    pinched_sets: tuple[frozenset, ...]
    volumes: tuple[float, ...]

    def diagram(self) -> Diagram:
        if self.name == "8_5":
            return DIAGRAM_8_5
        if self.name == "8_18":
            return DIAGRAM_8_18
        return parse_pd(self.pd)


def _parse_sets(field: str):
    field = field.strip()
    if field in ("", "-"):
        return ()
    return tuple(
        frozenset(int(x) for x in chunk.split(",") if x.strip())
        for chunk in field.replace("{", "").split("}")
        if chunk.strip(" ,")
    )


def parse_census(text: str) -> list[CensusEntry]:
    out = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        parts = [p.strip() for p in line.split("|")]
        if len(parts) != 5:
            raise ValueError(f"census line {lineno}: expected 5 fields")
        name, pd, regions, sets, vols = parts
        vol = tuple(float(v) for v in vols.split(",") if v.strip() and v.strip() != "-")
        out.append(CensusEntry(name, pd, int(regions), _parse_sets(sets), vol))
    return out


@lru_cache(maxsize=1)
def census() -> tuple[CensusEntry, ...]:
    text = resources.files("pinchlab").joinpath("data/census.txt").read_text()
    return tuple(parse_census(text))


def census_entry(name: str) -> CensusEntry:
    for e in census():
        if e.name == name:
            return e
    raise DiagramError(f"unknown knot {name!r}; known: {', '.join(e.name for e in census())}")


def knot_diagram(name: str) -> Diagram:
    return census_entry(name).diagram()


TREFOIL = parse_pd("X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]")


def granny_diagram() -> Diagram:
    return connected_sum(TREFOIL, 1, TREFOIL, 1)


def square_diagram() -> Diagram:
    return connected_sum(TREFOIL, 1, mirror(TREFOIL), 1)


@dataclass(frozen=True)
class SumConstruction:
    """A pinched connected sum of two trefoil diagrams.

    Arcs are old labels of the factors, ``region`` is a region of the summed
    diagram and ``changes`` names the knots obtained by changing the first
    and the second Reidemeister II crossing.
    """

    name: str
    mirror_second: bool
    arc: int
    arc2: int
    arc_b: int
    arc_b2: int
    region: int
    over: bool
    shift: complex
    changes: tuple[str, str]

    def factors(self) -> tuple[Diagram, Diagram]:
        return TREFOIL, mirror(TREFOIL) if self.mirror_second else TREFOIL


SUM_CONSTRUCTIONS = {
    c.name: c
    for c in (
        SumConstruction("granny-a", False, 1, 1, 5, 3, 4, True, -1, ("8_21", "8_15")),
        SumConstruction("granny-b", False, 1, 3, 4, 6, 1, True, -1, ("8_5", "8_19")),
        SumConstruction("square", True, 1, 2, 4, 4, 1, False, -1, ("8_20", "8_10")),
    )
}


__all__ = [
    "CensusEntry",
    "DIAGRAM_8_18",
    "DIAGRAM_8_5",
    "FAMILIES",
    "FAMILY_8_18_W",
    "FAMILY_8_18_W2",
    "FAMILY_8_5",
    "KNOT_FAMILIES",
    "SUM_CONSTRUCTIONS",
    "SolutionFamily",
    "SumConstruction",
    "TREFOIL",
    "census",
    "census_entry",
    "granny_diagram",
    "knot_diagram",
    "parse_census",
    "square_diagram",
]

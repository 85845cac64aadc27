"""Oriented knot diagrams in planar-diagram (PD) notation.

A crossing is stored as the four incident edge ids listed counterclockwise,
starting from the incoming under-strand (the usual ``X[i,j,k,l]``
convention).  Edges ("arcs" below) are the segments between consecutive
crossings, so a diagram with N crossings has 2N of them.

Corner letters
--------------
The corner between slot ``p`` and slot ``p+1`` (counterclockwise) gets the
letter ``"abcd"[p]``.  So ``a`` and ``c`` are the two regions swept when the
under-strand is rotated counterclockwise onto the over-strand, and ``b``,
``d`` are the other two.  Reversing the orientation of a strand only swaps
``a <-> c`` and ``b <-> d``, which leaves the tau formulas unchanged, so the
convention depends on the unoriented crossing alone.  Changing a crossing
exchanges the two pairs.
"""

from __future__ import annotations

import itertools
import json
import re
from dataclasses import dataclass, field
from typing import Hashable, Iterable, Sequence

LETTERS = "abcd"


class DiagramError(ValueError):
    """Raised for invalid PD input or an invalid rewrite request."""


@dataclass(frozen=True)
class Crossing:
    id: int
    arcs: tuple[int, int, int, int]
    sign: int

    @property
    def over_in(self) -> int:
        """Slot index (1 or 3) of the incoming over-strand."""
        return 3 if self.sign > 0 else 1

    @property
    def over_out(self) -> int:
        return 1 if self.sign > 0 else 3

    @property
    def incoming_under(self) -> int:
        return self.arcs[0]

    @property
    def outgoing_under(self) -> int:
        return self.arcs[2]

    @property
    def incoming_over(self) -> int:
        return self.arcs[self.over_in]

    @property
    def outgoing_over(self) -> int:
        return self.arcs[self.over_out]


@dataclass(frozen=True)
class Region:
    id: int
    corners: tuple[tuple[int, str], ...]
    edges: frozenset[int]


@dataclass(frozen=True)
class WirtingerRelation:
    crossing: int
    over: int
    incoming: int
    outgoing: int
    sign: int


@dataclass(frozen=True)
class WirtingerPresentation:
    """Generators are over-arc spans, each given as the tuple of its edges.

    ``relations[i]`` reads ``m_outgoing = m_over^s * m_incoming * m_over^-s``
    with ``s`` the crossing sign; generator indices are 1-based.
    """

    generators: tuple[tuple[int, ...], ...]
    relations: tuple[WirtingerRelation, ...]
    edge_generator: dict = field(compare=False, repr=False)

    def generator_of(self, edge: int) -> int:
        return self.edge_generator[edge]


@dataclass(frozen=True)
class Diagram:
    crossings: tuple[Crossing, ...]
    regions: tuple[Region, ...]
    outer: int

    # -- basic accessors -------------------------------------------------
    @property
    def n(self) -> int:
        return len(self.crossings)

    @property
    def pd(self) -> tuple[tuple[int, int, int, int], ...]:
        return tuple(c.arcs for c in self.crossings)

    @property
    def arcs(self) -> tuple[int, ...]:
        return tuple(sorted({a for c in self.crossings for a in c.arcs}))

    @property
    def signs(self) -> tuple[int, ...]:
        return tuple(c.sign for c in self.crossings)

    def crossing(self, k: int) -> Crossing:
        if not 1 <= k <= self.n:
            raise DiagramError(f"unknown crossing id {k}")
        return self.crossings[k - 1]

    def region(self, j: int) -> Region:
        return self.regions[j - 1]

    def corner_regions(self, k: int) -> dict[str, int]:
        """Map corner letter -> region id at crossing ``k``."""
        return self._corner_table[k]

    def quad(self, k: int) -> tuple[int, int, int, int]:
        """Region ids ``(r_a, r_b, r_c, r_d)`` around crossing ``k``."""
        t = self._corner_table[k]
        return (t["a"], t["b"], t["c"], t["d"])

    @property
    def _corner_table(self) -> dict[int, dict[str, int]]:
        table = self.__dict__.get("_ct")
        if table is None:
            table = {c.id: {} for c in self.crossings}
            for r in self.regions:
                for k, letter in r.corners:
                    table[k][letter] = r.id
            object.__setattr__(self, "_ct", table)
        return table

    def regions_of_arc(self, arc: int) -> tuple[int, int]:
        found = tuple(r.id for r in self.regions if arc in r.edges)
        if len(found) != 2:
            raise DiagramError(f"unknown arc id {arc}")
        return found

    def adjacent_pairs(self) -> set[tuple[int, int]]:
        """Pairs of region ids sharing an edge."""
        pairs = set()
        for arc in self.arcs:
            r1, r2 = self.regions_of_arc(arc)
            pairs.add((min(r1, r2), max(r1, r2)))
        return pairs

    def __str__(self) -> str:
        return " ".join("X[%d,%d,%d,%d]" % c.arcs for c in self.crossings)

    # -- construction ----------------------------------------------------
    @classmethod
    def from_pd(
        cls,
        pd: Sequence[Sequence[int]],
        region_keys: Sequence[Iterable[int]] | None = None,
        outer: int | None = None,
    ) -> "Diagram":
        """Validate PD tuples and build the diagram.

        ``region_keys`` optionally fixes region ids: entry ``j-1`` is the set
        of edges bounding region ``j``.  Otherwise regions are numbered in
        order of discovery (crossing 1 corner a first).  ``outer`` is the
        id of the region treated as unbounded; by default the region with
        the most corners.
        """
        pd = [tuple(x) for x in pd]
        if not pd:
            raise DiagramError("empty diagram")
        for x in pd:
            if len(x) != 4 or not all(isinstance(a, int) for a in x):
                raise DiagramError(f"malformed crossing tuple {x!r}")
        counts: dict[int, int] = {}
        for x in pd:
            for a in x:
                counts[a] = counts.get(a, 0) + 1
        bad = sorted(a for a, c in counts.items() if c != 2)
        if bad:
            raise DiagramError(f"arc ids must appear exactly twice: {bad}")

        signs = _orient(pd)
        crossings = tuple(
            Crossing(k + 1, x, s) for k, (x, s) in enumerate(zip(pd, signs))
        )
        faces = _trace_faces(pd)
        n = len(pd)
        if len(faces) != n + 2:
            raise DiagramError(
                f"face count {len(faces)} != N+2 = {n + 2}; "
                "diagram is not planar or not connected"
            )
        face_edges = [frozenset(e for _, e in f) for f in faces]
        if region_keys is None:
            order = list(range(len(faces)))
        else:
            keys = [frozenset(k) for k in region_keys]
            index = {fe: i for i, fe in enumerate(face_edges)}
            if len(keys) != len(faces) or any(k not in index for k in keys):
                raise DiagramError("region_keys do not match the faces of the diagram")
            order = [index[k] for k in keys]
        regions = tuple(
            Region(
                j + 1,
                tuple((c + 1, LETTERS[p]) for (c, p), _ in faces[i]),
                face_edges[i],
            )
            for j, i in enumerate(order)
        )
        if outer is None:
            outer = max(regions, key=lambda r: (len(r.corners), -r.id)).id
        elif not 1 <= outer <= len(regions):
            raise DiagramError(f"unknown outer region {outer}")
        return cls(crossings, regions, outer)

    def with_region_order(self, region_keys, outer: int | None = None) -> "Diagram":
        return Diagram.from_pd(self.pd, region_keys, self.outer if outer is None else outer)

    def relabel_crossings(self, order: Sequence[int]) -> "Diagram":
        """``order[i]`` is the old id of the crossing that becomes ``i+1``."""
        if sorted(order) != list(range(1, self.n + 1)):
            raise DiagramError("order must be a permutation of crossing ids")
        keys = [r.edges for r in self.regions]
        return Diagram.from_pd([self.crossings[k - 1].arcs for k in order], keys, self.outer)

    # -- serialization ---------------------------------------------------
    def to_dict(self) -> dict:
        return {
            "crossings": [
                {"id": c.id, "sign": c.sign, "arcs": list(c.arcs)} for c in self.crossings
            ],
            "regions": [
                {"id": r.id, "corners": [[k, l] for k, l in r.corners]} for r in self.regions
            ],
            "outer": self.outer,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, data: dict) -> "Diagram":
        crossings = sorted(data["crossings"], key=lambda c: c["id"])
        if [c["id"] for c in crossings] != list(range(1, len(crossings) + 1)):
            raise DiagramError("crossing ids must be 1..N")
        pd = [tuple(c["arcs"]) for c in crossings]
        keys = None
        if "regions" in data:
            by_id = sorted(data["regions"], key=lambda r: r["id"])
            keys = []
            for r in by_id:
                edges = set()
                for k, letter in r["corners"]:
                    p = LETTERS.index(letter)
                    x = pd[k - 1]
                    edges.update((x[p], x[(p + 1) % 4]))
                keys.append(edges)
        d = cls.from_pd(pd, keys, data.get("outer"))
        for c in crossings:
            if "sign" in c and c["sign"] != d.crossing(c["id"]).sign:
                raise DiagramError(f"sign of crossing {c['id']} disagrees with the PD data")
        return d

    @classmethod
    def from_json(cls, text: str) -> "Diagram":
        return cls.from_dict(json.loads(text))


# ---------------------------------------------------------------------------
# PD parsing and the internal algorithms

_TUPLE_RE = re.compile(r"X\s*[\[\(]\s*([^\]\)]*)[\]\)]")


def parse_pd(text: str, outer: int | None = None) -> Diagram:
    """Parse ``"X[1,4,2,5] X[3,6,4,1] ..."`` (optionally wrapped in ``PD[...]``)."""
    body = text.strip()
    if body.startswith("PD"):
        body = body[2:].strip()
        if body[:1] in "[(" and body[-1:] in "])":
            body = body[1:-1]
    pd = []
    pos = 0
    for m in _TUPLE_RE.finditer(body):
        if body[pos:m.start()].strip(" ,\n\t"):
            raise DiagramError(f"unexpected text {body[pos:m.start()]!r}")
        pos = m.end()
        try:
            pd.append(tuple(int(t) for t in m.group(1).split(",")))
        except ValueError:
            raise DiagramError(f"malformed crossing tuple {m.group(0)!r}") from None
    if body[pos:].strip(" ,\n\t"):
        raise DiagramError(f"unexpected text {body[pos:]!r}")
    if not pd:
        raise DiagramError("no crossing tuples found")
    return Diagram.from_pd(pd, outer=outer)


def _occurrences(pd) -> dict:
    occ: dict = {}
    for c, x in enumerate(pd):
        for s, a in enumerate(x):
            occ.setdefault(a, []).append((c, s))
    return occ


def _other_end(occ, pd, c, s):
    first, second = occ[pd[c][s]]
    return second if first == (c, s) else first


def _orient(pd) -> list[int]:
    """Walk the strand from crossing 0's outgoing under-edge.

    Returns crossing signs; raises on links and on PD data whose under
    strands are not listed incoming-first.
    """
    occ = _occurrences(pd)
    n = len(pd)
    over_in: list[int | None] = [None] * n
    seen = 0
    c, s = 0, 2
    start = (c, s)
    while True:
        seen += 1
        c2, s2 = _other_end(occ, pd, c, s)
        if s2 == 2:
            raise DiagramError(
                f"crossing {c2 + 1}: under-strand is not listed from its incoming edge"
            )
        if s2 in (1, 3):
            if over_in[c2] is not None:
                raise DiagramError(f"crossing {c2 + 1} traversed twice on its over-strand")
            over_in[c2] = s2
        c, s = c2, (s2 + 2) % 4
        if (c, s) == start:
            break
        if seen > 2 * n:
            raise DiagramError("strand traversal does not close up")
    if seen != 2 * n or any(v is None for v in over_in):
        raise DiagramError("diagram has more than one component")
    return [1 if v == 3 else -1 for v in over_in]


def _trace_faces(pd):
    """Faces as lists of ((crossing index, corner position), edge leaving the corner).

    Corner ``p`` of crossing ``c`` sits between slots ``p`` and ``p+1``; the
    face is walked with its interior on the right.
    """
    occ = _occurrences(pd)
    visited = set()
    faces = []
    for c in range(len(pd)):
        for p in range(4):
            if (c, p) in visited:
                continue
            face = []
            cur = (c, p)
            while cur not in visited:
                visited.add(cur)
                cc, pp = cur
                slot = (pp + 1) % 4
                face.append((cur, pd[cc][slot]))
                cur = _other_end(occ, pd, cc, slot)
            faces.append(face)
    return faces


def _assemble(cross: list[tuple], start: tuple[int, int]):
    """Orient and renumber an unoriented planar diagram.

    ``cross`` holds 4-tuples of hashable edge labels (counterclockwise, under
    strand on slots 0 and 2).  ``start`` is (crossing index, slot) of an
    edge leaving that crossing; numbering starts there.  Returns the PD
    tuples and the label -> new id map.
    """
    occ = _occurrences(cross)
    if any(len(v) != 2 for v in occ.values()):
        raise DiagramError("internal: dangling edge label")
    number: dict[Hashable, int] = {}
    heads: dict[int, int] = {}
    c, s = start
    while True:
        label = cross[c][s]
        if label in number:
            break
        number[label] = len(number) + 1
        c2, s2 = _other_end(occ, cross, c, s)
        if s2 in (0, 2):
            heads[c2] = s2
        c, s = c2, (s2 + 2) % 4
    if len(number) != len(occ):
        raise DiagramError("rewrite produced more than one component")
    pd = []
    for ci, x in enumerate(cross):
        r = heads[ci]
        pd.append(tuple(number[x[(r + t) % 4]] for t in range(4)))
    return pd, number


def _heads_tails(d: Diagram):
    """arc -> (head (crossing index, slot), tail (crossing index, slot))."""
    heads, tails = {}, {}
    for ci, c in enumerate(d.crossings):
        heads[c.arcs[0]] = (ci, 0)
        tails[c.arcs[2]] = (ci, 2)
        heads[c.arcs[c.over_in]] = (ci, c.over_in)
        tails[c.arcs[c.over_out]] = (ci, c.over_out)
    return heads, tails


# ---------------------------------------------------------------------------
# Public operations


def faces(d: Diagram) -> tuple[Region, ...]:
    return d.regions


def mirror(d: Diagram) -> Diagram:
    return change_crossings(d, range(1, d.n + 1))


def change_crossings(d: Diagram, J: Iterable[int]) -> Diagram:
    """Swap over and under at every crossing in ``J``; region ids are kept."""
    J = set(J)
    for k in J:
        d.crossing(k)
    pd = []
    for c in d.crossings:
        i, j, k, l = c.arcs
        if c.id not in J:
            pd.append(c.arcs)
        elif c.sign > 0:
            pd.append((l, i, j, k))
        else:
            pd.append((j, k, l, i))
    return Diagram.from_pd(pd, [r.edges for r in d.regions], d.outer)


def wirtinger(d: Diagram) -> WirtingerPresentation:
    parent = {a: a for a in d.arcs}

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for c in d.crossings:
        ra, rb = find(c.arcs[1]), find(c.arcs[3])
        if ra != rb:
            parent[max(ra, rb)] = min(ra, rb)
    classes: dict[int, list[int]] = {}
    for a in d.arcs:
        classes.setdefault(find(a), []).append(a)
    gens = sorted(tuple(sorted(v)) for v in classes.values())
    edge_gen = {a: g + 1 for g, arcs in enumerate(gens) for a in arcs}
    rels = tuple(
        WirtingerRelation(
            c.id,
            edge_gen[c.arcs[1]],
            edge_gen[c.arcs[0]],
            edge_gen[c.arcs[2]],
            c.sign,
        )
        for c in d.crossings
    )
    return WirtingerPresentation(tuple(gens), rels, edge_gen)


def connected_sum(d: Diagram, arc: int, d2: Diagram, arc2: int) -> Diagram:
    return connected_sum_with_map(d, arc, d2, arc2)[0]


def connected_sum_with_map(d: Diagram, arc: int, d2: Diagram, arc2: int):
    """Connected sum cutting ``arc`` of ``d`` and ``arc2`` of ``d2``.

    Also returns the provenance map: new arc id -> (0 or 1, old arc id).
    """
    if arc not in d.arcs or arc2 not in d2.arcs:
        raise DiagramError("invalid arc id for connected sum")
    cross = [tuple((0, a) for a in c.arcs) for c in d.crossings]
    cross += [tuple((1, a) for a in c.arcs) for c in d2.crossings]
    heads, tails = _heads_tails(d)
    heads2, tails2 = _heads_tails(d2)
    off = d.n
    hy, sy = heads[arc]
    hy2, sy2 = heads2[arc2]
    _set_slot(cross, hy, sy, (1, arc2))
    _set_slot(cross, hy2 + off, sy2, (0, arc))
    pd, number = _assemble(cross, tails[arc])
    new = Diagram.from_pd(pd)
    origin = {v: k for k, v in number.items()}
    return new, origin


def _set_slot(cross, c, s, label):
    x = list(cross[c])
    x[s] = label
    cross[c] = tuple(x)


def common_regions(d: Diagram, arc: int, arc2: int) -> list[int]:
    return [r.id for r in d.regions if arc in r.edges and arc2 in r.edges]


def reidemeister2(
    d: Diagram, arc: int, arc2: int, over: bool = True, region: int | None = None
) -> tuple[Diagram, tuple[int, int]]:
    new, ids, _ = reidemeister2_with_map(d, arc, arc2, over, region)
    return new, ids


def reidemeister2_with_map(d, arc, arc2, over=True, region=None):
    """Push ``arc`` across ``arc2`` through a common region.

    ``over`` selects whether ``arc`` passes over (default) or under.
    Returns the new diagram, the ids of the two new crossings (appended as
    N+1, N+2) and the provenance map new arc -> old arc.
    """
    if arc == arc2 or arc not in d.arcs or arc2 not in d.arcs:
        raise DiagramError("reidemeister2 needs two distinct arcs of the diagram")
    shared = common_regions(d, arc, arc2)
    if not shared:
        raise DiagramError(f"arcs {arc} and {arc2} do not border a common region")
    if region is None:
        region = shared[0]
    elif region not in shared:
        raise DiagramError(f"region {region} does not contain both arcs")
    pd = [c.arcs for c in d.crossings]
    occ = _occurrences(pd)
    ends = {}
    for k, letter in d.region(region).corners:
        c, p = k - 1, LETTERS.index(letter)
        slot = (p + 1) % 4
        e = pd[c][slot]
        if e in (arc, arc2):
            ends[e] = ((c, slot), _other_end(occ, pd, c, slot))
    (u, v), (u2, v2) = ends[arc], ends[arc2]
    cross = [tuple(x) for x in pd]
    B = [("B", t) for t in range(3)]
    C = [("C", t) for t in range(3)]
    _set_slot(cross, *u, B[0])
    _set_slot(cross, *v, B[2])
    _set_slot(cross, *u2, C[0])
    _set_slot(cross, *v2, C[2])
    if over:
        p1 = (C[1], B[0], C[2], B[1])
        p2 = (C[0], B[2], C[1], B[1])
    else:
        p1 = (B[1], C[1], B[0], C[2])
        p2 = (B[2], C[1], B[1], C[0])
    cross += [p1, p2]
    _, tails = _heads_tails(d)
    pd2, number = _assemble(cross, tails[arc])
    new = Diagram.from_pd(pd2)
    origin = {}
    for label, idx in number.items():
        if isinstance(label, tuple):
            origin[idx] = arc if label[0] == "B" else arc2
        else:
            origin[idx] = label
    return new, (d.n + 1, d.n + 2), origin


# ---------------------------------------------------------------------------
# Rational tangles


@dataclass(frozen=True)
class TangleWord:
    """Standard rational tangle word ``[2n_1, ..., 2n_{k-1}, 2n_k + 1]``.

    The odd last entry is the innermost twist: it replaces the crossing
    along its a-c axis; the remaining entries are added outward, alternating
    between the b-d direction and the a-c direction.
    """

    entries: tuple[int, ...]

    def __post_init__(self):
        e = tuple(int(x) for x in self.entries)
        object.__setattr__(self, "entries", e)
        if not e:
            raise DiagramError("empty tangle word")
        if e[-1] % 2 == 0:
            raise DiagramError(f"last tangle entry must be odd, got {e[-1]}")
        bad = [x for x in e[:-1] if x % 2]
        if bad:
            raise DiagramError(f"interior tangle entries must be even, got {bad}")

    @classmethod
    def parse(cls, text: str) -> "TangleWord":
        body = text.strip().strip("[]")
        try:
            entries = tuple(int(t) for t in body.split(",") if t.strip())
        except ValueError:
            raise DiagramError(f"malformed tangle word {text!r}") from None
        return cls(entries)

    @property
    def crossing_count(self) -> int:
        return sum(abs(x) for x in self.entries)

    def fraction(self):
        """Continued fraction ``e_1 + 1/(e_2 + 1/(... + 1/e_k))`` of the tangle."""
        from fractions import Fraction

        val = Fraction(self.entries[-1])
        for x in reversed(self.entries[:-1]):
            val = x + 1 / val if val else Fraction(x)
        return val

    def __str__(self):
        return "[" + ",".join(str(x) for x in self.entries) + "]"


# Tangle corners are tagged by the compass side they face: W=a, S=b, E=c,
# N=d of the replaced crossing.  Positive crossings have their over-strand
# running SW-NE, like the crossing being replaced.
_SIDE_LETTER = {"W": "a", "S": "b", "E": "c", "N": "d"}


class _TangleBuilder:
    def __init__(self):
        self.cross: list[list] = []
        self.tags: list[list] = []
        self.ends: dict[str, Hashable] = {}
        self._fresh = itertools.count()

    def _crossing(self, positive: bool):
        nw, sw, se, ne = (("t", next(self._fresh)) for _ in range(4))
        if positive:
            self.cross.append([nw, sw, se, ne])
            self.tags.append(["W", "S", "E", "N"])
        else:
            self.cross.append([sw, se, ne, nw])
            self.tags.append(["S", "E", "N", "W"])
        return len(self.cross) - 1, {"NW": nw, "SW": sw, "SE": se, "NE": ne}

    def _glue(self, keep, drop):
        for x in self.cross:
            for s, lab in enumerate(x):
                if lab == drop:
                    x[s] = keep

    def _retag(self, old, new, members):
        for ci in members:
            self.tags[ci] = [new if t == old else t for t in self.tags[ci]]

    def twist(self, count: int, horizontal: bool, stage: int):
        """Append a twist of ``count`` crossings to the right (horizontal) or
        bottom (vertical) of the current tangle."""
        members = list(range(len(self.cross)))
        fresh = not self.ends
        for t in range(abs(count)):
            ci, e = self._crossing(count > 0)
            if not self.ends:
                self.ends = e
                members.append(ci)
                continue
            tag = ("new", stage, t - 1 if fresh else t)
            if horizontal:
                self._glue(self.ends["NE"], e["NW"])
                self._glue(self.ends["SE"], e["SW"])
                self._retag("E", tag, members)
                self.tags[ci] = [tag if x == "W" else x for x in self.tags[ci]]
                self.ends = {"NW": self.ends["NW"], "SW": self.ends["SW"], "NE": e["NE"], "SE": e["SE"]}
            else:
                self._glue(self.ends["SW"], e["NW"])
                self._glue(self.ends["SE"], e["NE"])
                self._retag("S", tag, members)
                self.tags[ci] = [tag if x == "N" else x for x in self.tags[ci]]
                self.ends = {"NW": self.ends["NW"], "NE": self.ends["NE"], "SW": e["SW"], "SE": e["SE"]}
            members.append(ci)


def _build_tangle(word: TangleWord) -> _TangleBuilder:
    b = _TangleBuilder()
    entries = word.entries
    for stage, count in enumerate(reversed(entries), start=1):
        b.twist(count, horizontal=(stage % 2 == 1), stage=stage)
    return b


def new_region_letter(stage: int, index: int) -> str:
    """Letter whose value a new tangle region copies.

    Horizontal (odd) stages alternate c, a; vertical (even) stages
    alternate b, d, counted outward from the existing tangle.
    """
    if stage % 2 == 1:
        return "c" if index % 2 == 0 else "a"
    return "b" if index % 2 == 0 else "d"


def insert_tangle_diagram(d: Diagram, k: int, word: TangleWord) -> Diagram:
    return insert_tangle_with_tags(d, k, word)[0]


def insert_tangle_with_tags(d: Diagram, k: int, word: TangleWord):
    """Replace crossing ``k`` with the standard diagram of ``word``.

    Returns ``(diagram, new_crossing_ids, region_tags)`` where
    ``region_tags[j]`` is ``("old", old region id)`` or
    ``("new", stage, index)`` for each region id ``j`` of the result.
    Old regions keep their ids; new regions are numbered after them.
    """
    if not isinstance(word, TangleWord):
        word = TangleWord(tuple(word))
    ck = d.crossing(k)
    quad = dict(zip(LETTERS, d.quad(k)))
    tb = _build_tangle(word)
    i, j, kk, l = ck.arcs
    glue = {tb.ends["NW"]: i, tb.ends["SW"]: j, tb.ends["SE"]: kk, tb.ends["NE"]: l}
    tangle_cross = [tuple(glue.get(x, x) for x in c) for c in tb.cross]
    tangle_tags = [
        [("old", quad[_SIDE_LETTER[t]]) if isinstance(t, str) else t for t in tags]
        for tags in tb.tags
    ]
    cross, tags, ids = [], [], []
    for c in d.crossings:
        if c.id == k:
            cross.append(tangle_cross[0])
            tags.append(tangle_tags[0])
        else:
            cross.append(c.arcs)
            letters = d.corner_regions(c.id)
            tags.append([("old", letters[x]) for x in LETTERS])
    cross += tangle_cross[1:]
    tags += tangle_tags[1:]
    ids = [k] + list(range(d.n + 1, d.n + len(tangle_cross)))
    # number from the strand leaving the tangle through SE (old arc kk)
    se = next((c, s) for c, x in enumerate(tb.cross) for s, lab in enumerate(x) if lab == tb.ends["SE"])
    start = (k - 1 if se[0] == 0 else d.n + se[0] - 1, se[1])
    pd, number = _assemble(cross, start)
    tmp = Diagram.from_pd(pd)
    face_tag = {}
    for r in tmp.regions:
        seen = set()
        for kid, letter in r.corners:
            ci = kid - 1
            # rotation between builder slots and oriented PD slots
            rot = _rotation(cross[ci], pd[ci], number)
            seen.add(tags[ci][(LETTERS.index(letter) + rot) % 4])
        if len(seen) != 1:
            raise DiagramError(f"internal: region {r.id} has inconsistent tags {seen}")
        face_tag[r.id] = seen.pop()
    old = sorted((t[1], rid) for rid, t in face_tag.items() if t[0] == "old")
    if [o for o, _ in old] != [r.id for r in d.regions]:
        raise DiagramError("internal: old regions not preserved by tangle insertion")
    new_ids = sorted(
        (t for t in face_tag.values() if t[0] == "new"), key=lambda t: (t[1], t[2])
    )
    order = [rid for _, rid in old]
    order += [next(rid for rid, t in face_tag.items() if t == nt) for nt in new_ids]
    keys = [tmp.region(rid).edges for rid in order]
    outer_new = d.outer
    result = Diagram.from_pd(pd, keys, outer_new)
    tags_by_id = {j + 1: face_tag[rid] for j, rid in enumerate(order)}
    return result, tuple(ids), tags_by_id


def _rotation(builder_x, pd_x, number) -> int:
    mapped = tuple(number[a] for a in builder_x)
    for r in (0, 2):
        if tuple(mapped[(r + t) % 4] for t in range(4)) == tuple(pd_x):
            return r
    raise DiagramError("internal: crossing rotation mismatch")

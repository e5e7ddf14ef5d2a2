"""Combinatorial link, tangle and tri-plane diagrams.

A diagram is a set of arc labels plus crossing records
``(under_in, over, under_out)``.  No signs or orientations are stored: kei
relations are symmetric in the two under-arcs, so the records carry all the
information a coloring needs.  Inputs are trusted to come from planar
diagrams; planarity is never checked.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from functools import cached_property
from typing import NamedTuple, Optional, Sequence


class DiagramError(ValueError):
    """A diagram violates its structural invariants."""


class Crossing(NamedTuple):
    under_in: str
    over: str
    under_out: str

    @property
    def unders(self):
        return (self.under_in, self.under_out)


def _as_crossings(crossings) -> tuple:
    return tuple(c if isinstance(c, Crossing) else Crossing(*c) for c in crossings)


def _under_slot_counts(crossings) -> Counter:
    counts = Counter()
    for c in crossings:
        counts[c.under_in] += 1
        counts[c.under_out] += 1
    return counts


def _check_labels(arcs, crossings, problems):
    seen = set()
    for a in arcs:
        if not isinstance(a, str) or not a or any(ch.isspace() for ch in a):
            problems.append(f"arc label {a!r} must be a non-empty token without whitespace")
        if a in seen:
            problems.append(f"duplicate arc label {a!r}")
        seen.add(a)
    for i, c in enumerate(crossings):
        for slot, a in zip(Crossing._fields, c):
            if a not in seen:
                problems.append(f"crossing {i} refers to undeclared arc {a!r} as {slot}")


class _UnionFind:
    def __init__(self, order):
        self.rank = {a: i for i, a in enumerate(order)}
        self.parent = {a: a for a in order}

    def find(self, a):
        root = a
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[a] != root:
            self.parent[a], a = root, self.parent[a]
        return root

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return
        # the earlier arc in declaration order names the merged arc
        if self.rank[rb] < self.rank[ra]:
            ra, rb = rb, ra
        self.parent[rb] = ra


def _component_partition(arcs, crossings) -> tuple:
    uf = _UnionFind(arcs)
    for c in crossings:
        uf.union(c.under_in, c.under_out)
    groups = {}
    for a in arcs:
        groups.setdefault(uf.find(a), []).append(a)
    return tuple(tuple(g) for g in groups.values())


def fuse_arcs(arcs, crossings, pairs):
    """Identify arcs pairwise; each class keeps the label declared first.

    Returns ``(arcs, crossings, rename)``.
    """
    uf = _UnionFind(arcs)
    for a, b in pairs:
        uf.union(a, b)
    rename = {a: uf.find(a) for a in arcs}
    new_arcs = tuple(a for a in arcs if rename[a] == a)
    new_crossings = tuple(
        Crossing(rename[c.under_in], rename[c.over], rename[c.under_out]) for c in crossings
    )
    return new_arcs, new_crossings, rename


@dataclass(frozen=True)
class LinkDiagram:
    """A closed classical link diagram."""

    arcs: tuple
    crossings: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "arcs", tuple(self.arcs))
        object.__setattr__(self, "crossings", _as_crossings(self.crossings))
        problems = []
        _check_labels(self.arcs, self.crossings, problems)
        if not problems:
            ends = _under_slot_counts(self.crossings)
            for a in self.arcs:
                if ends[a] not in (0, 2):
                    problems.append(
                        f"arc {a!r} has {ends[a]} ends at crossings; a closed diagram needs 0 or 2"
                    )
        if problems:
            raise DiagramError("; ".join(problems))

    @cached_property
    def components(self) -> tuple:
        return _component_partition(self.arcs, self.crossings)

    @property
    def n_crossings(self) -> int:
        return len(self.crossings)

    def over_count(self, arc: str) -> int:
        return sum(1 for c in self.crossings if c.over == arc)

    def relabel(self, mapping=None, prefix="a") -> "LinkDiagram":
        """Rename arcs; by default to ``a0, a1, ...`` in declaration order."""
        if mapping is None:
            mapping = {a: f"{prefix}{i}" for i, a in enumerate(self.arcs)}
        return LinkDiagram(
            tuple(mapping[a] for a in self.arcs),
            tuple(Crossing(*(mapping[x] for x in c)) for c in self.crossings),
        )


@dataclass(frozen=True)
class TangleDiagram:
    """A tangle diagram with ordered boundary endpoints.

    ``boundary`` holds the endpoint labels and ``ends[i]`` is the arc carrying
    ``boundary[i]``.  ``terminal`` optionally names the endpoint whose arc is
    the terminal arc of a 1-tangle.
    """

    arcs: tuple
    crossings: tuple
    boundary: tuple
    ends: tuple
    terminal: Optional[str] = None

    def __post_init__(self):
        for name in ("arcs", "boundary", "ends"):
            object.__setattr__(self, name, tuple(getattr(self, name)))
        object.__setattr__(self, "crossings", _as_crossings(self.crossings))
        problems = []
        _check_labels(self.arcs, self.crossings, problems)
        if len(self.boundary) < 2 or len(self.boundary) % 2:
            problems.append(f"a tangle needs 2b >= 2 endpoints, got {len(self.boundary)}")
        if len(set(self.boundary)) != len(self.boundary):
            problems.append("duplicate boundary endpoint label")
        if len(self.ends) != len(self.boundary):
            problems.append("every boundary endpoint must lie on exactly one arc")
        arcset = set(self.arcs)
        for p, a in zip(self.boundary, self.ends):
            if a not in arcset:
                problems.append(f"endpoint {p!r} lies on undeclared arc {a!r}")
        if not problems:
            ends = _under_slot_counts(self.crossings)
            ends.update(self.ends)
            for a in self.arcs:
                if ends[a] not in (0, 2):
                    problems.append(f"arc {a!r} has {ends[a]} ends; expected 0 or 2")
        if self.terminal is not None:
            if self.terminal not in self.boundary:
                problems.append(f"terminal {self.terminal!r} is not a boundary endpoint")
            if len(self.boundary) != 2:
                problems.append("only 1-tangles carry a terminal endpoint")
        if problems:
            raise DiagramError("; ".join(problems))

    @property
    def strands(self) -> int:
        return len(self.boundary) // 2

    def end_arc(self, endpoint: str) -> str:
        return self.ends[self.boundary.index(endpoint)]

    @property
    def terminal_arc(self) -> str:
        if self.terminal is None:
            raise DiagramError("tangle has no terminal endpoint")
        return self.end_arc(self.terminal)

    @cached_property
    def components(self) -> tuple:
        return _component_partition(self.arcs, self.crossings)

    @property
    def n_crossings(self) -> int:
        return len(self.crossings)


PANEL_NAMES = ("P12", "P23", "P31")
# D_i = P_ij with the mirror of P_ki glued on: (panel index, mirrored panel index)
UNION_PAIRS = ((0, 2), (1, 0), (2, 1))


@dataclass(frozen=True)
class TriPlaneDiagram:
    """Three b-strand tangle diagrams over one boundary.

    Construction is permissive so that malformed inputs can be reported by
    :func:`keibridge.simplify.validate_triplane`; see
    :meth:`structural_problems`.
    """

    boundary: tuple
    panels: tuple
    patch_counts: Optional[tuple] = None

    def __post_init__(self):
        object.__setattr__(self, "boundary", tuple(self.boundary))
        object.__setattr__(self, "panels", tuple(self.panels))
        if self.patch_counts is not None:
            object.__setattr__(self, "patch_counts", tuple(self.patch_counts))

    @property
    def strands(self) -> int:
        return len(self.boundary) // 2

    def structural_problems(self) -> list:
        problems = []
        if len(self.panels) != 3:
            problems.append(f"expected 3 panels, got {len(self.panels)}")
            return problems
        b = self.strands
        if len(self.boundary) != 2 * b or b < 1:
            problems.append(f"shared boundary has {len(self.boundary)} labels; need 2b >= 2")
        for name, panel in zip(PANEL_NAMES, self.panels):
            if panel.strands != b:
                problems.append(f"{name} has {panel.strands} strands, expected {b}")
            if panel.boundary != self.boundary:
                problems.append(f"{name} boundary {list(panel.boundary)} differs from shared boundary")
        if self.patch_counts is not None:
            if len(self.patch_counts) != 3:
                problems.append("patch_counts must have three entries")
            else:
                for i, c in enumerate(self.patch_counts, 1):
                    if not 1 <= c <= b:
                        problems.append(f"c{i} = {c} outside [1, {b}]")
                chi = sum(self.patch_counts) - b
                if chi > 2:
                    problems.append(f"patch counts give Euler characteristic {chi} > 2")
        return problems

    def union(self, i: int) -> LinkDiagram:
        """The closed diagram D_{i+1}: panel P_ij glued to the mirror of P_ki."""
        a, m = UNION_PAIRS[i]
        return panel_union(self.panels[a], self.panels[m], names=(PANEL_NAMES[a], PANEL_NAMES[m]))

    def union_with_map(self, i: int):
        a, m = UNION_PAIRS[i]
        return panel_union_with_map(
            self.panels[a], self.panels[m], names=(PANEL_NAMES[a], PANEL_NAMES[m])
        )


# --- generators -------------------------------------------------------------


def trivial_link(c: int) -> LinkDiagram:
    """c disjoint crossingless circles."""
    if c < 1:
        raise ValueError(f"trivial link needs c >= 1, got {c}")
    return LinkDiagram(tuple(f"u{i}" for i in range(c)))


def torus_2q(q: int) -> LinkDiagram:
    """The closed 2-braid diagram of T(2, q): arc a_{i+1} passes over a_i -> a_{i+2}."""
    if q < 3 or q % 2 == 0:
        raise ValueError(f"torus_2q needs an odd q >= 3, got {q}")
    arcs = tuple(f"a{i}" for i in range(q))
    crossings = tuple(Crossing(arcs[i], arcs[(i + 1) % q], arcs[(i + 2) % q]) for i in range(q))
    return LinkDiagram(arcs, crossings)


def _fresh(label, taken):
    cand = label
    n = 0
    while cand in taken:
        n += 1
        cand = f"{label}~{n}"
    return cand


def cut_arc(D: LinkDiagram, arc: str, terminal: Optional[str] = "p0",
            endpoints=("p0", "p1")) -> TangleDiagram:
    """Cut a knot diagram open on ``arc``, just beside the arc's first end.

    The short piece next to that end gets a fresh label and carries endpoint
    ``endpoints[0]``; the rest keeps the label ``arc`` (and all of its
    over-passages) and carries ``endpoints[1]``.  A crossingless circle
    becomes a single arc holding both endpoints.
    """
    if arc not in D.arcs:
        raise DiagramError(f"no arc {arc!r} in diagram")
    if len(D.components) != 1:
        raise DiagramError("only knot diagrams (one component) can be cut into a 1-tangle")
    crossings = list(D.crossings)
    slot = next(
        ((i, j) for i, c in enumerate(crossings) for j in (0, 2) if c[j] == arc), None
    )
    if slot is None:
        return TangleDiagram(D.arcs, D.crossings, endpoints, (arc, arc), terminal)
    short = _fresh(f"{arc}'", set(D.arcs))
    i, j = slot
    fields = list(crossings[i])
    fields[j] = short
    crossings[i] = Crossing(*fields)
    return TangleDiagram(D.arcs + (short,), crossings, endpoints, (short, arc), terminal)


def cut_to_1tangle(D: LinkDiagram, arc: str) -> TangleDiagram:
    """A 1-tangle diagram T_K of the knot drawn by D; terminal endpoint ``p0``."""
    return cut_arc(D, arc)


def close_1tangle(T: TangleDiagram) -> LinkDiagram:
    """Join the two endpoints of a 1-tangle without adding crossings."""
    if T.strands != 1:
        raise DiagramError("closure is defined for 1-tangles only")
    arcs, crossings, _ = fuse_arcs(T.arcs, T.crossings, [T.ends])
    return LinkDiagram(arcs, crossings)


def _prefixed(D, prefix):
    mapping = {a: f"{prefix}{a}" for a in D.arcs}
    return D.relabel(mapping)


def connected_sum(D1: LinkDiagram, arc1: str, D2: LinkDiagram, arc2: str) -> LinkDiagram:
    """Band two knot diagrams together along the chosen arcs.

    Labels of D2 are prefixed with ``2.`` (and D1's with ``1.``) only when the
    label sets collide.
    """
    for D, a in ((D1, arc1), (D2, arc2)):
        if a not in D.arcs:
            raise DiagramError(f"chosen arc {a!r} missing")
        if len(D.components) != 1:
            raise DiagramError("connected sum is only defined here for knot diagrams")
    if set(D1.arcs) & set(D2.arcs):
        D1, arc1 = _prefixed(D1, "1."), f"1.{arc1}"
        D2, arc2 = _prefixed(D2, "2."), f"2.{arc2}"
    T1 = cut_arc(D1, arc1, terminal=None)
    taken = set(T1.arcs)
    T2 = cut_arc(D2, arc2, terminal=None)
    if set(T2.arcs) & taken:
        # the fresh short-piece label of one side may collide with the other
        mapping = {a: _fresh(a, taken | set(T2.arcs) - {a}) if a in taken else a for a in T2.arcs}
        T2 = TangleDiagram(
            tuple(mapping[a] for a in T2.arcs),
            tuple(Crossing(*(mapping[x] for x in c)) for c in T2.crossings),
            T2.boundary,
            tuple(mapping[a] for a in T2.ends),
        )
    pairs = [(T1.ends[1], T2.ends[0]), (T2.ends[1], T1.ends[0])]
    arcs, crossings, _ = fuse_arcs(T1.arcs + T2.arcs, T1.crossings + T2.crossings, pairs)
    return LinkDiagram(arcs, crossings)


def torus_sum(q: int, k: int) -> LinkDiagram:
    """A diagram of the k-fold connected sum of T(2, q), arcs relabelled a0, a1, ..."""
    if k < 1:
        raise ValueError(f"need k >= 1 summands, got {k}")
    D = torus_2q(q)
    for _ in range(k - 1):
        D = connected_sum(D, D.arcs[0], torus_2q(q), "a0").relabel()
    return D


def panel_union(A: TangleDiagram, B: TangleDiagram, names=("A", "B")) -> LinkDiagram:
    """Close A against the mirror image of B along the shared endpoints.

    Mirroring does not change any crossing record (kei relations do not see
    crossing signs), so B's records are reused.  Arc labels become
    ``<name>.<label>``.
    """
    return panel_union_with_map(A, B, names)[0]


def panel_union_with_map(A, B, names=("A", "B")):
    """:func:`panel_union` plus the map from ``<name>.<label>`` to union arcs."""
    if A.boundary != B.boundary:
        raise DiagramError(f"boundary mismatch: {list(A.boundary)} vs {list(B.boundary)}")
    pa, pb = f"{names[0]}.", f"{names[1]}."
    arcs = tuple(pa + a for a in A.arcs) + tuple(pb + a for a in B.arcs)
    crossings = tuple(Crossing(*(pa + x for x in c)) for c in A.crossings) + tuple(
        Crossing(*(pb + x for x in c)) for c in B.crossings
    )
    pairs = [(pa + a, pb + b) for a, b in zip(A.ends, B.ends)]
    arcs, crossings, rename = fuse_arcs(arcs, crossings, pairs)
    return LinkDiagram(arcs, crossings), rename


def crossingless_tangle(pairs: Sequence, boundary: Optional[Sequence] = None) -> TangleDiagram:
    """A crossingless tangle joining endpoint indices ``pairs`` by arcs ``s0, s1, ...``."""
    n = 2 * len(pairs)
    if boundary is None:
        boundary = tuple(f"p{i}" for i in range(n))
    if sorted(i for pr in pairs for i in pr) != list(range(n)):
        raise DiagramError("pairs must be a perfect matching of the endpoint indices")
    ends = [None] * n
    for k, (i, j) in enumerate(pairs):
        ends[i] = ends[j] = f"s{k}"
    return TangleDiagram(tuple(f"s{k}" for k in range(len(pairs))), (), boundary, ends)


def product_tangle(b: int) -> TangleDiagram:
    """b parallel crossingless strands joining endpoints 2i and 2i+1."""
    return crossingless_tangle([(2 * i, 2 * i + 1) for i in range(b)])


def unknotted_sphere_triplane() -> TriPlaneDiagram:
    """The 1-bridge tri-plane diagram of the unknotted 2-sphere."""
    T = product_tangle(1)
    return TriPlaneDiagram(T.boundary, (T, T, T), (1, 1, 1))


def stabilized_sphere_triplane(with_bigon: bool = False) -> TriPlaneDiagram:
    """A crossingless (2; 2, 1, 1) tri-plane diagram of the unknotted sphere.

    With ``with_bigon`` the first panel has strand s0 passing twice over the
    other strand, an isotopically trivial change that the simplifier must undo.
    """
    nested = crossingless_tangle([(0, 3), (1, 2)])
    parallel = product_tangle(2)
    first = parallel
    if with_bigon:
        first = TangleDiagram(
            ("s0", "t0", "t1", "t2"),
            (Crossing("t0", "s0", "t1"), Crossing("t1", "s0", "t2")),
            parallel.boundary,
            ("s0", "s0", "t0", "t2"),
        )
    return TriPlaneDiagram(parallel.boundary, (first, nested, parallel), (2, 1, 1))


def trefoil_formal_triplane() -> TriPlaneDiagram:
    """Three 1-strand panels, the first a knotted trefoil 1-tangle.

    Structurally valid but not a tri-plane diagram of any surface (the
    first panel is not a trivial tangle), so its coloring count is formal.
    """
    knotted = cut_to_1tangle(torus_2q(3), "a0")
    knotted = TangleDiagram(knotted.arcs, knotted.crossings, knotted.boundary, knotted.ends)
    T = product_tangle(1)
    return TriPlaneDiagram(T.boundary, (knotted, T, T), (1, 1, 1))

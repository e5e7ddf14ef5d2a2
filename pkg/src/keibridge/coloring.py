"""Counting and enumerating kei colorings of diagrams.

Three independent routes are provided: a propagating backtracker (the
default), exhaustive assignment enumeration (the oracle) and, for dihedral
keis, a linear solve mod p.
"""
from __future__ import annotations

import os
from collections import Counter, deque
from dataclasses import dataclass

from .diagrams import PANEL_NAMES, UNION_PAIRS, DiagramError, TangleDiagram, TriPlaneDiagram
from .kei import Kei, dihedral_modulus
from .linalg import count_solutions_mod

DEFAULT_BUDGET = 10**7

# when set, dihedral fast-path counts are re-derived by backtracking and compared
CROSSCHECK = os.environ.get("KEIBRIDGE_CROSSCHECK", "") not in ("", "0")


class BudgetExceeded(RuntimeError):
    """The search visited more nodes than its budget allows."""


@dataclass(frozen=True)
class Coloring:
    diagram: object
    kei: Kei
    values: tuple  # one element per arc, in diagram.arcs order

    @property
    def assignment(self) -> dict:
        return dict(zip(self.diagram.arcs, self.values))

    def __getitem__(self, arc):
        return self.values[self.diagram.arcs.index(arc)]

    def is_trivial(self) -> bool:
        return len(set(self.values)) <= 1


@dataclass(frozen=True)
class TriPlaneColoring:
    c12: Coloring
    c23: Coloring
    c31: Coloring

    def __iter__(self):
        return iter((self.c12, self.c23, self.c31))


def is_coloring(D, X: Kei, values) -> bool:
    """Check every crossing relation directly."""
    idx = {a: i for i, a in enumerate(D.arcs)}
    t = X.table
    return all(
        t[values[idx[c.under_in]]][values[idx[c.over]]] == values[idx[c.under_out]]
        for c in D.crossings
    )


def _spanning_order(D) -> list:
    """Arc indices in breadth-first order over the crossing incidence graph."""
    idx = {a: i for i, a in enumerate(D.arcs)}
    nbrs = [[] for _ in D.arcs]
    for c in D.crossings:
        ids = [idx[a] for a in c]
        for i in ids:
            nbrs[i].extend(ids)
    order, seen = [], [False] * len(D.arcs)
    for start in range(len(D.arcs)):
        if seen[start]:
            continue
        seen[start] = True
        queue = deque([start])
        while queue:
            a = queue.popleft()
            order.append(a)
            for b in nbrs[a]:
                if not seen[b]:
                    seen[b] = True
                    queue.append(b)
    return order


class _Search:
    """Backtracking over arc colors with forced-value propagation."""

    def __init__(self, D, X: Kei, budget: int):
        self.D, self.X, self.budget = D, X, budget
        idx = {a: i for i, a in enumerate(D.arcs)}
        self.cr = [tuple(idx[a] for a in c) for c in D.crossings]
        self.inc = [[] for _ in D.arcs]
        for k, c in enumerate(self.cr):
            for a in set(c):
                self.inc[a].append(k)
        t = X.table
        self.table = t
        n = X.order
        self.reachable = [[any(t[x][o] == y for o in range(n)) for y in range(n)] for x in range(n)]
        self.vals = [-1] * len(D.arcs)
        self.order = _spanning_order(D)
        self.nodes = 0

    def assign(self, arc, value, trail) -> bool:
        vals, t, cr = self.vals, self.table, self.cr
        stack = [(arc, value)]
        while stack:
            a, v = stack.pop()
            if vals[a] == v:
                continue
            if vals[a] != -1:
                return False
            vals[a] = v
            trail.append(a)
            for k in self.inc[a]:
                ui, o, uo = cr[k]
                x, vo, y = vals[ui], vals[o], vals[uo]
                if vo != -1:
                    if x != -1:
                        w = t[x][vo]
                        if y == -1:
                            stack.append((uo, w))
                        elif y != w:
                            return False
                    elif y != -1:
                        stack.append((ui, t[y][vo]))
                elif x != -1 and y != -1 and not self.reachable[x][y]:
                    return False
        return True

    def undo(self, trail):
        for a in trail:
            self.vals[a] = -1

    def fix(self, fixed: dict) -> bool:
        """Pre-assign arc values (by label); False if they are inconsistent."""
        idx = {a: i for i, a in enumerate(self.D.arcs)}
        trail = []
        return all(self.assign(idx[a], v, trail) for a, v in fixed.items())

    def run(self, visit):
        self._rec(0, visit)

    def _rec(self, pos, visit):
        order, vals = self.order, self.vals
        while pos < len(order) and vals[order[pos]] != -1:
            pos += 1
        if pos == len(order):
            visit(vals)
            return
        a = order[pos]
        for v in range(self.X.order):
            self.nodes += 1
            if self.nodes > self.budget:
                raise BudgetExceeded(f"coloring search exceeded {self.budget} nodes")
            trail = []
            if self.assign(a, v, trail):
                self._rec(pos + 1, visit)
            self.undo(trail)


def _search_count(D, X, budget, fixed=None) -> int:
    s = _Search(D, X, budget)
    if fixed and not s.fix(fixed):
        return 0
    total = [0]

    def visit(_):
        total[0] += 1

    s.run(visit)
    return total[0]


def _search_list(D, X, budget, fixed=None) -> list:
    s = _Search(D, X, budget)
    if fixed and not s.fix(fixed):
        return []
    found = []
    s.run(lambda vals: found.append(tuple(vals)))
    found.sort()
    return [Coloring(D, X, v) for v in found]


def enumerate_colorings(D, X: Kei, budget: int = DEFAULT_BUDGET) -> list:
    """All X-colorings of D, sorted by their value tuples in arc order."""
    return _search_list(D, X, budget)


def count_backtrack(D, X: Kei, budget: int = DEFAULT_BUDGET) -> int:
    return _search_count(D, X, budget)


def count_brute_force(D, X: Kei, budget: int = DEFAULT_BUDGET) -> int:
    """Oracle: walk every assignment in arc order, no propagation.

    A crossing is tested as soon as its last arc is assigned, so failing
    prefixes are dropped early; otherwise this is plain enumeration.
    """
    idx = {a: i for i, a in enumerate(D.arcs)}
    checks = [[] for _ in D.arcs]
    for c in D.crossings:
        ui, o, uo = (idx[a] for a in c)
        checks[max(ui, o, uo)].append((ui, o, uo))
    t, n, k = X.table, X.order, len(D.arcs)
    vals = [0] * k
    nodes = 0

    def rec(i):
        nonlocal nodes
        if i == k:
            return 1
        total = 0
        for v in range(n):
            nodes += 1
            if nodes > budget:
                raise BudgetExceeded(f"exhaustive enumeration exceeded {budget} nodes")
            vals[i] = v
            if all(t[vals[a]][vals[o]] == vals[b] for a, o, b in checks[i]):
                total += rec(i + 1)
        return total

    return rec(0)


def fox_matrix(D) -> list:
    """One row per crossing: under_in + under_out - 2 * over."""
    idx = {a: i for i, a in enumerate(D.arcs)}
    rows = []
    for c in D.crossings:
        row = [0] * len(D.arcs)
        row[idx[c.under_in]] += 1
        row[idx[c.under_out]] += 1
        row[idx[c.over]] -= 2
        rows.append(row)
    return rows


def count_dihedral(D, p: int) -> int:
    """Number of R_p colorings of D, by solving the Fox system mod p."""
    if p < 2:
        raise ValueError(f"dihedral counting needs p >= 2, got {p}")
    return count_solutions_mod(fox_matrix(D), len(D.arcs), p)


def count_colorings(D, X: Kei, budget: int = DEFAULT_BUDGET, method: str = "auto") -> int:
    """#Col_X(D).

    ``method`` is one of ``auto`` (dihedral fast path when X is R_p, else
    backtracking), ``backtrack``, ``dihedral`` or ``brute``.
    """
    if method == "backtrack":
        return count_backtrack(D, X, budget)
    if method == "brute":
        return count_brute_force(D, X, budget)
    p = dihedral_modulus(X)
    if method == "dihedral":
        if p is None:
            raise ValueError(f"{X.display_name()} is not a dihedral kei")
        return count_dihedral(D, p)
    if method != "auto":
        raise ValueError(f"unknown counting method {method!r}")
    if p is None or p < 2:
        return count_backtrack(D, X, budget)
    n = count_dihedral(D, p)
    if CROSSCHECK:
        m = count_backtrack(D, X, budget)
        if m != n:
            raise AssertionError(f"dihedral count {n} disagrees with backtracking count {m}")
    return n


def extend_boundary_coloring(T: TangleDiagram, boundary_colors: dict, X: Kei,
                             budget: int = DEFAULT_BUDGET) -> list:
    """All colorings of T whose endpoint arcs carry ``boundary_colors``."""
    missing = set(T.boundary) - set(boundary_colors)
    if missing:
        raise ValueError(f"boundary colors missing for endpoints {sorted(missing)}")
    fixed = {}
    for p, a in zip(T.boundary, T.ends):
        v = boundary_colors[p]
        if fixed.setdefault(a, v) != v:
            return []
    return _search_list(T, X, budget, fixed)


def _count_extensions(T, vector, X, budget) -> int:
    fixed = {}
    for a, v in zip(T.ends, vector):
        if fixed.setdefault(a, v) != v:
            return 0
    return _search_count(T, X, budget, fixed)


def boundary_vector(C: Coloring) -> tuple:
    T = C.diagram
    return tuple(C[a] for a in T.ends)


def _check_triplane(TP):
    problems = TP.structural_problems()
    if problems:
        raise DiagramError("; ".join(problems))


def count_triplane_colorings(TP: TriPlaneDiagram, X: Kei, budget: int = DEFAULT_BUDGET) -> int:
    """#Col_X of a tri-plane diagram.

    Colorings of the first panel are grouped by boundary vector; each vector
    contributes the product of its extension counts over the three panels.
    """
    _check_triplane(TP)
    p12, p23, p31 = TP.panels
    vectors = Counter(boundary_vector(C) for C in enumerate_colorings(p12, X, budget))
    total = 0
    for v, n12 in sorted(vectors.items()):
        n23 = _count_extensions(p23, v, X, budget)
        if n23:
            total += n12 * n23 * _count_extensions(p31, v, X, budget)
    return total


def enumerate_triplane_colorings(TP: TriPlaneDiagram, X: Kei, budget: int = DEFAULT_BUDGET) -> list:
    _check_triplane(TP)
    p12, p23, p31 = TP.panels
    out = []
    for c12 in enumerate_colorings(p12, X, budget):
        colors = dict(zip(TP.boundary, boundary_vector(c12)))
        for c23 in extend_boundary_coloring(p23, colors, X, budget):
            for c31 in extend_boundary_coloring(p31, colors, X, budget):
                out.append(TriPlaneColoring(c12, c23, c31))
    return out


def restrict_to_union(TP: TriPlaneDiagram, tc: TriPlaneColoring, i: int = 0) -> Coloring:
    """Color the union D_{i+1} with the two panel colorings it is built from."""
    D, rename = TP.union_with_map(i)
    colors = {}
    for k in UNION_PAIRS[i]:
        C = tuple(tc)[k]
        for arc, v in zip(C.diagram.arcs, C.values):
            u = rename[f"{PANEL_NAMES[k]}.{arc}"]
            if colors.setdefault(u, v) != v:
                raise ValueError(f"panel colorings disagree on union arc {u!r}")
    return Coloring(D, tc.c12.kei, tuple(colors[a] for a in D.arcs))

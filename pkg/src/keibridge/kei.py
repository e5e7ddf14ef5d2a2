"""Finite keis stored as operation tables.

Elements are the integers ``0 .. order-1`` and ``table[a][b]`` is ``a * b``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import NamedTuple, Optional, Sequence

AXIOMS = ("idempotence", "right-involution", "right-self-distributivity")


class Violation(NamedTuple):
    axiom: str
    witness: tuple

    def __str__(self):
        return f"{self.axiom} fails at {self.witness}"


class KeiValidationError(ValueError):
    """Raised when a table is not a kei.

    ``violations`` lists every failing (axiom, witness) pair; shape errors
    (non-square table, out-of-range entries) are reported in ``problems``.
    """

    def __init__(self, problems=(), violations=()):
        self.problems = list(problems)
        self.violations = list(violations)
        lines = self.problems + [str(v) for v in self.violations[:20]]
        if len(self.violations) > 20:
            lines.append(f"... and {len(self.violations) - 20} more violations")
        super().__init__("invalid kei table: " + "; ".join(lines))


@dataclass(frozen=True)
class Kei:
    """A finite kei. Build through :func:`validate_kei` or :func:`dihedral`."""

    table: tuple
    label: Optional[str] = field(default=None, compare=False)

    @property
    def order(self) -> int:
        return len(self.table)

    def op(self, a: int, b: int) -> int:
        return self.table[a][b]

    def right_translation(self, b: int) -> tuple:
        """The map x -> x * b as a tuple indexed by x."""
        return tuple(row[b] for row in self.table)

    def elements(self):
        return range(self.order)

    def display_name(self) -> str:
        return self.label or f"kei of order {self.order}"

    def __repr__(self):
        return f"Kei(order={self.order}, label={self.label!r})"


def _shape_problems(table) -> list:
    n = len(table)
    problems = []
    if n == 0:
        problems.append("table is empty")
    for i, row in enumerate(table):
        if len(row) != n:
            problems.append(f"row {i} has length {len(row)}, expected {n}")
            continue
        for j, v in enumerate(row):
            if not isinstance(v, int) or isinstance(v, bool) or not 0 <= v < n:
                problems.append(f"entry ({i},{j}) = {v!r} is not an element index in [0, {n})")
    return problems


def find_violations(table: Sequence[Sequence[int]]) -> list:
    """Scan every tuple and return all axiom violations. Assumes a well-shaped table."""
    n = len(table)
    out = []
    for a in range(n):
        if table[a][a] != a:
            out.append(Violation("idempotence", (a,)))
    for a in range(n):
        for b in range(n):
            if table[table[a][b]][b] != a:
                out.append(Violation("right-involution", (a, b)))
    for a in range(n):
        row_a = table[a]
        for b in range(n):
            ab = row_a[b]
            row_b = table[b]
            for c in range(n):
                if table[ab][c] != table[row_a[c]][row_b[c]]:
                    out.append(Violation("right-self-distributivity", (a, b, c)))
    return out


def validate_kei(table: Sequence[Sequence[int]], label: Optional[str] = None) -> Kei:
    """Check the three kei axioms exhaustively and return a :class:`Kei`.

    Raises :class:`KeiValidationError` listing every violated instance.
    """
    problems = _shape_problems(table)
    if problems:
        raise KeiValidationError(problems=problems)
    violations = find_violations(table)
    if violations:
        raise KeiValidationError(violations=violations)
    return Kei(tuple(tuple(int(v) for v in row) for row in table), label)


def dihedral(p: int) -> Kei:
    """The dihedral kei R_p on Z/p with i * j = 2j - i."""
    if p < 1:
        raise ValueError(f"dihedral kei needs p >= 1, got {p}")
    table = tuple(tuple((2 * j - i) % p for j in range(p)) for i in range(p))
    return Kei(table, f"R_{p}")


def trivial_kei(n: int) -> Kei:
    """The kei with a * b = a on n elements."""
    if n < 1:
        raise ValueError(f"trivial kei needs n >= 1, got {n}")
    return Kei(tuple(tuple(i for _ in range(n)) for i in range(n)), f"T_{n}")


def dihedral_modulus(X: Kei) -> Optional[int]:
    """Return p if X has exactly the table of R_p, else None."""
    p = X.order
    for i, row in enumerate(X.table):
        for j, v in enumerate(row):
            if v != (2 * j - i) % p:
                return None
    return p


def iterated_act(X: Kei, x: int, a: int, m: int) -> int:
    """Apply ``* a`` to x |m| times.

    Right translation is an involution, so only the parity of m matters.
    """
    if not (0 <= x < X.order and 0 <= a < X.order):
        raise ValueError(f"elements must lie in [0, {X.order})")
    return X.table[x][a] if m % 2 else x


def is_faithful(X: Kei) -> bool:
    """True when distinct elements induce distinct right translations."""
    columns = {X.right_translation(b) for b in X.elements()}
    return len(columns) == X.order


def kei_to_dict(X: Kei) -> dict:
    return {"label": X.label, "order": X.order, "table": [list(r) for r in X.table]}

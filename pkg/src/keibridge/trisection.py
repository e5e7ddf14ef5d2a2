"""Bridge-number arithmetic for surface links and twist-spun knots."""
from __future__ import annotations

import math
from dataclasses import dataclass

from .coloring import DEFAULT_BUDGET, Coloring, count_colorings, enumerate_colorings
from .diagrams import DiagramError, TangleDiagram
from .kei import Kei, iterated_act

# Euler characteristics and bridge numbers of the trivially embedded surfaces
EULER_CHAR = {"S2": 2, "P": 1, "T": 0}
TRIVIAL_BRIDGE_NUMBER = {"S2": 1, "P": 2, "T": 3}
TRIVIAL_PARAMS = {"S2": (1, 1, 1, 1), "P": (2, 1, 1, 1), "T": (3, 1, 1, 1)}


class HypothesisNotVerified(ValueError):
    """The equality hypothesis on the classical bridge number was not established."""


@dataclass(frozen=True)
class TrisectionParams:
    b: int
    c1: int
    c2: int
    c3: int

    def __post_init__(self):
        if self.b < 1:
            raise ValueError(f"b must be positive, got {self.b}")
        for c in (self.c1, self.c2, self.c3):
            if not 1 <= c <= self.b:
                raise ValueError(f"patch count {c} outside [1, {self.b}]")
        if self.c1 + self.c2 + self.c3 - self.b > 2:
            raise ValueError("patch counts give Euler characteristic above 2")

    @property
    def patches(self):
        return (self.c1, self.c2, self.c3)


def euler_char(params: TrisectionParams) -> int:
    """chi = 2b - 3b + (c1 + c2 + c3)."""
    return sum(params.patches) - params.b


def exact_log(value: int, base: int):
    """log_base(value), as an int when value is an exact power of base."""
    if base < 2:
        raise ValueError(f"logarithm base must be >= 2, got {base}")
    if value < 1:
        raise ValueError(f"logarithm argument must be >= 1, got {value}")
    n, v = 0, value
    while v % base == 0:
        v //= base
        n += 1
    if v == 1:
        return n
    return math.log(value) / math.log(base)


def min_patch_bound(col_count: int, kei_order: int):
    """The lower bound log_{#X}(#Col_X) on every patch count c_i."""
    return exact_log(col_count, kei_order)


def _meets_bound(n: int, col_count: int, kei_order: int, chi: int) -> bool:
    # n >= 3 log_k(count) - chi  <=>  k^(n + chi) >= count^3
    e = n + chi
    return e >= 0 and kei_order**e >= col_count**3


@dataclass(frozen=True)
class BoundReport:
    col_count: int
    kei_order: int
    chi: int
    raw_bound: float
    refined_bound: int

    def to_dict(self) -> dict:
        return {
            "col_count": self.col_count,
            "kei_order": self.kei_order,
            "chi": self.chi,
            "raw_bound": self.raw_bound,
            "refined_bound": self.refined_bound,
        }


def bridge_lower_bound(col_count: int, kei_order: int, chi: int) -> BoundReport:
    """Lower bound on b from a coloring count, sharpened by b = -chi (mod 3).

    The comparison with the raw bound is done in integers.
    """
    if kei_order < 2:
        raise ValueError(f"kei order must be >= 2, got {kei_order}")
    if col_count < 1:
        raise ValueError(f"coloring count must be >= 1, got {col_count}")
    if chi > 2:
        raise ValueError(f"Euler characteristic of a closed surface is at most 2, got {chi}")
    raw = 3 * exact_log(col_count, kei_order) - chi
    n = 1
    while not (_meets_bound(n, col_count, kei_order, chi) and (n + chi) % 3 == 0):
        n += 1
    return BoundReport(col_count, kei_order, chi, raw, n)


def check_congruence(b: int, chi: int) -> bool:
    if b < 1:
        raise ValueError(f"bridge number must be positive, got {b}")
    return (b + chi) % 3 == 0


def connected_sum_upper_bound(bA: int, bB: int) -> int:
    if bA < 1 or bB < 1:
        raise ValueError("bridge numbers must be positive")
    return bA + bB - 1


def _require_terminal(T: TangleDiagram):
    if T.strands != 1 or T.terminal is None:
        raise DiagramError("expected a 1-tangle with a terminal endpoint")


def act_on_coloring(C: Coloring, m: int) -> Coloring:
    """Right-translate every arc color m times by the terminal arc's color."""
    T = C.diagram
    _require_terminal(T)
    a = C[T.terminal_arc]
    return Coloring(T, C.kei, tuple(iterated_act(C.kei, x, a, m) for x in C.values))


def twist_spun_coloring_count(T_K: TangleDiagram, X: Kei, m: int, budget: int = DEFAULT_BUDGET) -> int:
    """#Col_X of the m-twist spun knot: colorings of T_K fixed by the m-fold action."""
    _require_terminal(T_K)
    return sum(1 for C in enumerate_colorings(T_K, X, budget) if act_on_coloring(C, m) == C)


def parity_shortcut_count(T_K: TangleDiagram, X: Kei, m: int, budget: int = DEFAULT_BUDGET) -> int:
    """Even m: every coloring of T_K survives.  Odd m: only the #X constant ones."""
    _require_terminal(T_K)
    if m % 2:
        return X.order
    return count_colorings(T_K, X, budget)


def check_hypothesis(T_K: TangleDiagram, X: Kei, b_K: int, budget: int = DEFAULT_BUDGET) -> bool:
    """True iff (#X)^b_K equals #Col_X(T_K) exactly."""
    return X.order**b_K == count_colorings(T_K, X, budget)


def twist_spun_bridge_numbers(b_K: int, hypothesis_ok: bool) -> dict:
    """Bridge numbers of S_2m(K), S_2m(K) # P and S_2m(K) # T.

    Only valid under the coloring hypothesis; raises otherwise.
    """
    if b_K < 1:
        raise ValueError(f"classical bridge number must be positive, got {b_K}")
    if not hypothesis_ok:
        raise HypothesisNotVerified(
            "b(K) = log_#X #Col_X(T_K) was not verified for any kei; "
            "the equalities 3b-2, 3b-1, 3b are not asserted"
        )
    return {"sphere": 3 * b_K - 2, "with_P": 3 * b_K - 1, "with_T": 3 * b_K}


def torus_sum_bridge_number(k: int) -> int:
    """Classical bridge number of the k-fold sum of T(2, q): k + 1."""
    if k < 1:
        raise ValueError("k must be positive")
    return k + 1

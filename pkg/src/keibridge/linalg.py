"""Exact integer linear algebra for Fox colorings."""
from __future__ import annotations

from math import gcd


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    f = 2
    while f * f <= n:
        if n % f == 0:
            return False
        f += 1
    return True


def rank_mod_p(rows, ncols: int, p: int) -> int:
    """Rank over the field Z/p (p prime) by Gaussian elimination."""
    m = [[v % p for v in r] for r in rows]
    rank = 0
    for col in range(ncols):
        pivot = next((r for r in range(rank, len(m)) if m[r][col]), None)
        if pivot is None:
            continue
        m[rank], m[pivot] = m[pivot], m[rank]
        inv = pow(m[rank][col], -1, p)
        m[rank] = [(v * inv) % p for v in m[rank]]
        for r in range(len(m)):
            if r != rank and m[r][col]:
                f = m[r][col]
                m[r] = [(a - f * b) % p for a, b in zip(m[r], m[rank])]
        rank += 1
        if rank == len(m):
            break
    return rank


def diagonalize(rows, ncols: int) -> list:
    """Diagonal entries of an integer matrix after unimodular row/column operations.

    The entries need not form a divisibility chain; for counting solutions
    mod p any diagonal form equivalent over Z gives the same answer.
    Returns ``min(nrows, ncols)`` entries (zeros included).
    """
    m = [list(r) for r in rows]
    nrows = len(m)
    diag = []
    for t in range(min(nrows, ncols)):
        # smallest nonzero entry in the remaining block becomes the pivot
        best = None
        for r in range(t, nrows):
            for c in range(t, ncols):
                v = m[r][c]
                if v and (best is None or abs(v) < abs(m[best[0]][best[1]])):
                    best = (r, c)
        if best is None:
            diag.extend([0] * (min(nrows, ncols) - t))
            break
        r, c = best
        m[t], m[r] = m[r], m[t]
        for row in m:
            row[t], row[c] = row[c], row[t]
        while True:
            piv = m[t][t]
            done = True
            for r in range(t + 1, nrows):
                q = m[r][t] // piv
                if q:
                    m[r] = [a - q * b for a, b in zip(m[r], m[t])]
                if m[r][t]:
                    done = False
            for c in range(t + 1, ncols):
                q = m[t][c] // piv
                if q:
                    for row in m:
                        row[c] -= q * row[t]
                if m[t][c]:
                    done = False
            if done:
                break
            # a remainder survived: move the smallest one into the pivot spot
            cand = [(abs(m[r][t]), r, t) for r in range(t + 1, nrows) if m[r][t]]
            cand += [(abs(m[t][c]), t, c) for c in range(t + 1, ncols) if m[t][c]]
            _, r, c = min(cand)
            if c == t:
                m[t], m[r] = m[r], m[t]
            else:
                for row in m:
                    row[t], row[c] = row[c], row[t]
        diag.append(abs(m[t][t]))
    return diag


def count_solutions_mod(rows, ncols: int, p: int) -> int:
    """Number of x in (Z/p)^ncols with rows . x = 0 (mod p), for any p >= 2."""
    if p < 2:
        raise ValueError(f"modulus must be >= 2, got {p}")
    if not rows:
        return p ** ncols
    if _is_prime(p):
        return p ** (ncols - rank_mod_p(rows, ncols, p))
    diag = diagonalize(rows, ncols)
    total = p ** (ncols - len(diag))
    for d in diag:
        total *= gcd(d, p)
    return total

"""Shared test helpers: random polynomial generation and the dense
Macaulay-matrix membership oracle used to cross-check the Groebner
engine.
"""

from __future__ import annotations

import itertools
import random

import numpy as np

from fliftlab.fp_poly import Poly, PolyRing


def random_poly(rng: random.Random, ring: PolyRing, max_terms: int = 5,
                max_degree: int = 6, allow_zero: bool = True) -> Poly:
    terms = {}
    n = ring.nvars
    lo = 0 if allow_zero else 1
    for _ in range(rng.randint(lo, max_terms)):
        mono = [0] * n
        budget = rng.randint(0, max_degree)
        for _ in range(budget):
            mono[rng.randrange(n)] += 1
        c = rng.randrange(1, ring.p) if ring.p > 2 else 1
        terms[tuple(mono)] = terms.get(tuple(mono), 0) + c
    return ring.from_terms(terms)


def random_nonzero_poly(rng, ring, max_terms=5, max_degree=6) -> Poly:
    while True:
        f = random_poly(rng, ring, max_terms, max_degree, allow_zero=False)
        if not f.is_zero():
            return f


def _monomials_up_to(n: int, degree: int) -> list[tuple[int, ...]]:
    out = []
    for total in range(degree + 1):
        for cuts in itertools.combinations(range(total + n - 1), n - 1):
            prev = -1
            mono = []
            for c in cuts:
                mono.append(c - prev - 1)
                prev = c
            mono.append(total + n - 2 - prev)
            out.append(tuple(mono))
    return out


def _solve_mod_p(a: np.ndarray, b: np.ndarray, p: int) -> bool:
    """Is the linear system a @ x = b solvable over F_p?"""
    a = a % p
    b = b % p
    rows, cols = a.shape
    aug = np.concatenate([a, b.reshape(-1, 1)], axis=1).astype(np.int64)
    pivot_row = 0
    for col in range(cols):
        pivots = np.nonzero(aug[pivot_row:, col])[0]
        if len(pivots) == 0:
            continue
        r = pivot_row + pivots[0]
        aug[[pivot_row, r]] = aug[[r, pivot_row]]
        inv = pow(int(aug[pivot_row, col]), p - 2, p)
        aug[pivot_row] = aug[pivot_row] * inv % p
        mask = np.nonzero(aug[:, col])[0]
        mask = mask[mask != pivot_row]
        if len(mask):
            aug[mask] = (aug[mask] - np.outer(aug[mask, col], aug[pivot_row])) % p
        pivot_row += 1
        if pivot_row == rows:
            break
    # inconsistent iff some row is (0 ... 0 | nonzero)
    lhs_zero = ~aug[:, :cols].any(axis=1)
    return not bool((lhs_zero & (aug[:, cols] != 0)).any())


def macaulay_membership(f: Poly, gens: list[Poly], cofactor_degree: int) -> bool:
    """Decide solvability of f = sum(c_i * g_i) with deg c_i bounded,
    by row reduction of the Macaulay matrix.  A True answer certifies
    ideal membership; False only bounds the cofactor degree.
    """
    ring = f.ring
    p = ring.p
    n = ring.nvars
    multipliers = _monomials_up_to(n, cofactor_degree)
    row_degree = cofactor_degree + max(
        [g.total_degree() for g in gens if not g.is_zero()] + [0])
    row_degree = max(row_degree, f.total_degree())
    rows = _monomials_up_to(n, row_degree)
    row_index = {m: i for i, m in enumerate(rows)}
    columns = []
    for g in gens:
        for mu in multipliers:
            col = np.zeros(len(rows), dtype=np.int64)
            for mono, c in g.terms.items():
                shifted = tuple(x + y for x, y in zip(mono, mu))
                col[row_index[shifted]] = c
            columns.append(col)
    if not columns:
        return f.is_zero()
    a = np.stack(columns, axis=1)
    b = np.zeros(len(rows), dtype=np.int64)
    for mono, c in f.terms.items():
        b[row_index[mono]] = c
    return _solve_mod_p(a, b, p)

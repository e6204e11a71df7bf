"""Shared fixtures and small independent reference implementations."""

import math
import random

import pytest

from polynull import FieldSpec, Poly, PolyMatrix, pm_mul, pm_random


@pytest.fixture(scope="session")
def field():
    return FieldSpec()


def log2_ceil(k: int) -> int:
    """ceil(log2 k), floored at 1 so singleton cases keep a budget."""
    return max(1, math.ceil(math.log2(k))) if k >= 1 else 0


def make_rng(seed: int) -> random.Random:
    return random.Random(seed)


def poly(field, *coeffs) -> Poly:
    return Poly(field, coeffs)


def schoolbook_mul(a, b, p):
    """Reference polynomial product on raw coefficient lists."""
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] = (out[i + j] + x * y) % p
    while out and out[-1] == 0:
        out.pop()
    return out


def poly_level_matmul(a: PolyMatrix, b: PolyMatrix) -> PolyMatrix:
    """Reference matrix product built from scalar Poly arithmetic only."""
    rows = []
    for i in range(a.rows):
        row = []
        for j in range(b.cols):
            acc = Poly.zero(a.field)
            for k in range(a.cols):
                acc = acc + a.poly(i, k) * b.poly(k, j)
            row.append(acc)
        rows.append(row)
    return PolyMatrix.from_polys(rows)


def planted_rank(field, m, n, r, d, rng):
    """Matrix of rank at most r (and equal to r with high probability)."""
    if r == 0 or m == 0 or n == 0:
        return PolyMatrix.zeros(field, m, n)
    dl = rng.randrange(d + 1)
    return pm_mul(pm_random(m, r, dl, field, rng), pm_random(r, n, d - dl, field, rng))

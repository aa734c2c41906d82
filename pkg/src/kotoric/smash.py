"""Rank of reduced KO of a smash product of even projective spaces, two ways.

``window = n`` means each factor is CP^{2n}.  One count takes the module
generators gamma^j X^e M_S^(s) (1 in S), complexifies them into the
truncated KU model and measures the rank of their span; the other reads the
rank off the splitting into n shifted copies of reduced KU of the smash of
the remaining m - 1 factors.
"""

from __future__ import annotations

from itertools import combinations, product

from .ku import KuElement, Truncation, ku_monomial, ku_mul
from .linalg import int_rank


def _c_X(i: int, s: int, trunc: Truncation) -> KuElement:
    """c(X_S^(s)) / v^s for S = {i}."""
    return _c_XS((i,), s, trunc)


def _c_XS(S: tuple[int, ...], s: int, trunc: Truncation) -> KuElement:
    eps = tuple(1 if k + 1 in S else 0 for k in range(trunc.m))
    zero = (0,) * trunc.m
    a = ku_monomial(eps, zero, 0, trunc)
    b = ku_monomial(zero, eps, 0, trunc)
    return a + b.scale(-1 if s % 2 else 1)


def module_generator_images(m: int, s: int, n: int) -> list[KuElement]:
    """KU^0-parts of c(X^e M_S^(s)) for 1 in S and 0 <= e_i <= n.

    gamma^j only contributes the unit v^(2j), so the images do not depend
    on j.
    """
    trunc = Truncation.uniform(m, 2 * n)
    cX = [_c_X(i, 0, trunc) for i in range(1, m + 1)]
    powers = []
    for i in range(m):
        row = [KuElement.one(trunc)]
        for _ in range(n):
            row.append(ku_mul(row[-1], cX[i]))
        powers.append(row)
    out = []
    rest = list(range(2, m + 1))
    for k in range(len(rest) + 1):
        for extra in combinations(rest, k):
            S = (1,) + extra
            M = _c_XS(S, s, trunc)
            for i in range(1, m + 1):
                if i not in S:
                    M = ku_mul(M, cX[i - 1])
            for e in product(range(n + 1), repeat=m):
                g = M
                for i, ei in enumerate(e):
                    if ei:
                        g = ku_mul(g, powers[i][ei])
                if not g.is_zero():
                    out.append(g)
    return out


def smash_rank_two_ways(m: int, degree: int, window: int) -> tuple[int, int]:
    """(rank from the module generators, rank from the KU splitting) of
    reduced KO^degree of the m-fold smash of CP^{2 * window}."""
    if m < 1:
        raise ValueError("m must be at least 1")
    if window < 0:
        raise ValueError("window must be non-negative")
    if window == 0 or degree % 2:
        return 0, 0
    n = window
    s = (-degree // 2) % 2
    gens = module_generator_images(m, s, n)
    index: dict[tuple[int, ...], int] = {}
    rows = []
    for g in gens:
        rows.append({index.setdefault(e, len(index)): c for e, c in g.coeffs.items()})
    first = int_rank(rows, len(index)) if rows else 0

    # reduced KU of the smash of m - 1 copies of CP^{2n} is free on the
    # monomials y^b with 1 <= b_i <= 2n, in every even degree
    per_shift = sum(1 for _ in product(range(1, 2 * n + 1), repeat=m - 1))
    second = n * per_shift
    return first, second

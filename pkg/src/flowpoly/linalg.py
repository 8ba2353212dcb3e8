"""Exact rational linear algebra: rank, unique solves and a small simplex."""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence


def _to_rows(matrix: Sequence[Sequence]) -> list[list[Fraction]]:
    return [[Fraction(x) for x in row] for row in matrix]


def row_echelon(matrix: Sequence[Sequence]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form and the pivot column list."""
    rows = _to_rows(matrix)
    if not rows:
        return rows, []
    ncols = len(rows[0])
    pivots = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        inv = 1 / rows[r][c]
        rows[r] = [x * inv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows, pivots


def rank(matrix: Sequence[Sequence]) -> int:
    return len(row_echelon(matrix)[1])


def columns_independent(columns: Sequence[Sequence]) -> bool:
    if not columns:
        return True
    m = len(columns[0])
    return rank([[col[r] for col in columns] for r in range(m)]) == len(columns)


def solve_unique(columns: Sequence[Sequence], rhs: Sequence) -> list[Fraction] | None:
    """Solve sum_k x_k col_k = rhs for independent columns.

    Returns None if the system is inconsistent.
    """
    m = len(rhs)
    aug = [[Fraction(col[r]) for col in columns] + [Fraction(rhs[r])] for r in range(m)]
    rows, pivots = row_echelon(aug)
    n = len(columns)
    if n in pivots:
        return None
    if len(pivots) != n:
        raise ValueError("columns are dependent")
    x = [Fraction(0)] * n
    for r, c in enumerate(pivots):
        x[c] = rows[r][n]
    return x


class _Tableau:
    """Dense simplex tableau with Bland's rule, all entries Fractions."""

    def __init__(self, A: list[list[Fraction]], b: list[Fraction], basis: list[int]):
        self.A = A
        self.b = b
        self.basis = basis

    def pivot(self, r: int, c: int):
        A, b = self.A, self.b
        inv = 1 / A[r][c]
        A[r] = [x * inv for x in A[r]]
        b[r] *= inv
        for i in range(len(A)):
            if i != r and A[i][c] != 0:
                f = A[i][c]
                A[i] = [x - f * y for x, y in zip(A[i], A[r])]
                b[i] -= f * b[r]
        self.basis[r] = c

    def minimize(self, cost: list[Fraction], allowed: set[int]) -> str:
        while True:
            # reduced costs
            best = None
            for j in sorted(allowed):
                if j in self.basis:
                    continue
                red = cost[j] - sum(cost[self.basis[i]] * self.A[i][j] for i in range(len(self.A)))
                if red < 0:
                    best = j
                    break
            if best is None:
                return "optimal"
            ratios = [(self.b[i] / self.A[i][best], self.basis[i], i)
                      for i in range(len(self.A)) if self.A[i][best] > 0]
            if not ratios:
                return "unbounded"
            _, _, r = min(ratios)
            self.pivot(r, best)


def lp_maximize(c: Sequence, A_eq: Sequence[Sequence], b_eq: Sequence):
    """Maximize c.x subject to A_eq x = b_eq, x >= 0.

    Returns (status, value, x) with status one of 'optimal', 'infeasible',
    'unbounded'.
    """
    A = _to_rows(A_eq)
    b = [Fraction(x) for x in b_eq]
    n = len(c)
    m = len(A)
    for i in range(m):
        if b[i] < 0:
            A[i] = [-x for x in A[i]]
            b[i] = -b[i]
    # phase 1 with one artificial per row
    A1 = [A[i] + [Fraction(int(i == k)) for k in range(m)] for i in range(m)]
    tab = _Tableau(A1, b[:], [n + i for i in range(m)])
    cost1 = [Fraction(0)] * n + [Fraction(1)] * m
    tab.minimize(cost1, set(range(n + m)))
    if any(tab.b[i] != 0 for i in range(m) if tab.basis[i] >= n):
        return "infeasible", None, None
    # drive remaining artificials out of the basis or drop redundant rows
    keep = []
    for i in range(m):
        if tab.basis[i] >= n:
            j = next((j for j in range(n) if tab.A[i][j] != 0 and j not in tab.basis), None)
            if j is None:
                continue
            tab.pivot(i, j)
        keep.append(i)
    tab = _Tableau([tab.A[i][:n] for i in keep], [tab.b[i] for i in keep],
                   [tab.basis[i] for i in keep])
    cost = [-Fraction(x) for x in c]
    status = tab.minimize(cost, set(range(n)))
    if status == "unbounded":
        return status, None, None
    x = [Fraction(0)] * n
    for i, j in enumerate(tab.basis):
        x[j] = tab.b[i]
    return "optimal", sum(Fraction(ci) * xi for ci, xi in zip(c, x)), x


def cone_position(matrix: Sequence[Sequence], a: Sequence) -> str:
    """Locate a relative to {M b : b >= 0}.

    'outside' if no b >= 0 solves M b = a, 'interior' if some b > 0 does
    (componentwise), 'boundary' otherwise.
    """
    m = len(a)
    ncols = len(matrix[0]) if matrix and matrix[0] else 0
    if ncols == 0:
        return "interior" if all(x == 0 for x in a) else "outside"
    row_sums = [sum(matrix[r]) for r in range(m)]
    # variables: b' (ncols), s, slack u with s + u = 1; b = b' + s * 1
    A = [list(matrix[r]) + [row_sums[r], 0] for r in range(m)]
    A.append([0] * ncols + [1, 1])
    rhs = list(a) + [1]
    c = [0] * ncols + [1, 0]
    status, value, _ = lp_maximize(c, A, rhs)
    if status == "infeasible":
        return "outside"
    return "interior" if value > 0 else "boundary"

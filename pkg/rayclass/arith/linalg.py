"""Integer matrices reduced over prime fields, and lattice indices."""

from typing import List, Sequence, Tuple

from rayclass.types import DomainError

Matrix = List[List[int]]


def row_reduce_mod(matrix: Sequence[Sequence[int]], l: int) -> Tuple[Matrix, List[int]]:
    """Reduced row echelon form over F_l. Returns the nonzero rows and pivot columns."""
    if l < 2:
        raise DomainError(f"modulus must be prime, got {l}")
    rows = [[x % l for x in row] for row in matrix]
    if not rows:
        return [], []
    ncols = len(rows[0])
    pivots: List[int] = []
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        inv = pow(rows[r][c], -1, l)
        rows[r] = [x * inv % l for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [(x - f * y) % l for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows[:r], pivots


def rank_mod(matrix: Sequence[Sequence[int]], l: int) -> int:
    return len(row_reduce_mod(matrix, l)[1])


def _xgcd(a: int, b: int) -> Tuple[int, int, int]:
    x0, x1, y0, y1 = 0, 1, 1, 0
    while a != 0:
        q, b, a = b // a, a, b % a
        y0, y1 = y1, y0 - q * y1
        x0, x1 = x1, x0 - q * x1
    return b, x0, y0


def lattice_index(vectors: Sequence[Sequence[int]], modulus: int, dim: int) -> int:
    """Index in Z^dim of the lattice spanned by vectors together with modulus * Z^dim.

    Triangularizes column by column with extended gcds; entries right of the
    current column are reduced modulo the modulus.
    """
    rows = [[x % modulus for x in v] for v in vectors if len(v) == dim]
    if len(rows) != len(vectors):
        raise DomainError(f"every vector must have length {dim}")
    index = 1
    for c in range(dim):
        pivot = [0] * dim
        pivot[c] = modulus
        remaining = []
        for row in rows:
            a = row[c]
            if a == 0:
                remaining.append(row)
                continue
            g, s, t = _xgcd(a, pivot[c])
            u, w = pivot[c] // g, a // g
            new_pivot = [
                (t * x + s * y) % modulus if j > c else t * x + s * y
                for j, (x, y) in enumerate(zip(pivot, row))
            ]
            reduced = [(u * y - w * x) % modulus for x, y in zip(pivot, row)]
            pivot = new_pivot
            if any(reduced):
                remaining.append(reduced)
        index *= pivot[c]
        rows = remaining
    return index

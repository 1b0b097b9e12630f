from typing import Optional, Tuple

import numpy as np


def gf2_rref(matrix: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """Reduced row echelon form over GF(2).

    Returns the reduced matrix (uint8) and the array of pivot columns.
    """
    A = (np.asarray(matrix) & 1).astype(np.uint8, copy=True)
    m, n = A.shape
    pivots = []
    r = 0
    for c in range(n):
        if r >= m:
            break
        rows = np.where(A[r:, c] == 1)[0]
        if rows.size == 0:
            continue
        p = r + int(rows[0])
        if p != r:
            A[[r, p], :] = A[[p, r], :]
        # eliminate column c in all other rows
        ones = np.where(A[:, c] == 1)[0]
        ones = ones[ones != r]
        if ones.size:
            A[ones, :] ^= A[r, :]
        pivots.append(c)
        r += 1
    return A, np.array(pivots, dtype=int)


def gf2_rank(matrix: np.ndarray) -> int:
    if matrix.size == 0:
        return 0
    return len(gf2_rref(matrix)[1])


def gf2_solve(
    matrix: np.ndarray, rhs: np.ndarray, free_value: int = 0
) -> Optional[np.ndarray]:
    """Solves `matrix @ x = rhs` over GF(2).

    Free variables are set to `free_value`; pivot variables are then read off
    the reduced system. Returns None when the system is inconsistent.
    """
    matrix = (np.asarray(matrix) & 1).astype(np.uint8)
    rhs = (np.asarray(rhs).reshape(-1) & 1).astype(np.uint8)
    m, n = matrix.shape
    assert rhs.shape == (m,)
    if m == 0:
        return np.full(n, free_value & 1, dtype=np.uint8)

    augmented = np.concatenate([matrix, rhs[:, None]], axis=1)
    reduced, pivots = gf2_rref(augmented)
    if n in pivots:
        return None

    x = np.full(n, free_value & 1, dtype=np.uint8)
    x[pivots] = 0
    for r, c in enumerate(pivots):
        # Row r reads x_c + sum(free vars in row r) = rhs_r.
        row = reduced[r, :n].copy()
        row[c] = 0
        x[c] = (reduced[r, n] + int(row @ x)) & 1
    return x

"""Orthonormal nullspaces, complex and exact."""
from __future__ import annotations

import math
from fractions import Fraction

import numpy as np

from .errors import UnsupportedOperation


def orthonormal_nullspace(m: np.ndarray, epsilon: float) -> np.ndarray:
    """Columns form an orthonormal basis of ``{x : m @ x = 0}``.

    Singular values at or below ``epsilon * s_max`` count as zero, where
    ``s_max`` is the largest singular value, or 1 when every singular value
    is itself below ``epsilon``.
    """
    rows, n = m.shape
    if n == 0:
        return np.zeros((0, 0), dtype=np.complex128)
    if rows == 0:
        return np.eye(n, dtype=np.complex128)
    _, s, vh = np.linalg.svd(np.asarray(m, dtype=np.complex128), full_matrices=True)
    s_max = s.max() if s.size else 0.0
    scale = s_max if s_max > epsilon else 1.0
    rank = int(np.sum(s > epsilon * scale))
    return vh[rank:].conj().T.copy()


def random_unitary(n: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-distributed n x n unitary."""
    if n == 0:
        return np.zeros((0, 0), dtype=np.complex128)
    z = (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))) / math.sqrt(2)
    q, r = np.linalg.qr(z)
    d = np.diag(r)
    return q * (d / np.abs(d))


def positive_unitary_factor(m: np.ndarray) -> np.ndarray:
    """Unitary ``u`` with ``u @ m`` positive semidefinite (square ``m``)."""
    p, _, qh = np.linalg.svd(m)
    return qh.conj().T @ p.conj().T


# exact rational path


def rational_nullspace(m: np.ndarray, ncols: int) -> list[list[Fraction]]:
    """Basis of the nullspace of a Fraction matrix by reduced row echelon form."""
    rows = [[Fraction(x) for x in row] for row in m]
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        lead = rows[r][c]
        rows[r] = [x / lead for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                factor = rows[i][c]
                rows[i] = [a - factor * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [Fraction(0)] * ncols
        v[fc] = Fraction(1)
        for i, pc in enumerate(pivots):
            v[pc] = -rows[i][fc]
        basis.append(v)
    return basis


def _rational_sqrt(q: Fraction) -> Fraction | None:
    if q < 0:
        return None
    n, d = math.isqrt(q.numerator), math.isqrt(q.denominator)
    if n * n == q.numerator and d * d == q.denominator:
        return Fraction(n, d)
    return None


def rational_orthonormalize(vectors: list[list[Fraction]]) -> list[list[Fraction]]:
    """Gram-Schmidt over the rationals.

    Raises UnsupportedOperation when a squared norm is not a rational square,
    since the normalized vector would then leave the field.
    """
    ortho: list[list[Fraction]] = []
    for v in vectors:
        w = list(v)
        for u in ortho:
            uu = sum(x * x for x in u)
            coeff = sum(a * b for a, b in zip(u, w)) / uu
            w = [a - coeff * b for a, b in zip(w, u)]
        ortho.append(w)
    out = []
    for w in ortho:
        root = _rational_sqrt(sum(x * x for x in w))
        if root is None:
            raise UnsupportedOperation("orthonormalization needs an irrational norm")
        out.append([x / root for x in w])
    return out

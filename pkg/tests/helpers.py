"""Random diagrams, independent oracles and test-only semirings."""
from __future__ import annotations

import numpy as np
from scipy.linalg import null_space, orth

from daglim.diagram import build_diagram, reachable
from daglim.matcat import Morphism, SpaceObject
from daglim.scalars import COMPLEX
from daglim.semiring import InvolutiveSemiring


def crandn(rng, rows, cols):
    return rng.standard_normal((rows, cols)) + 1j * rng.standard_normal((rows, cols))


def random_unitary(rng, n):
    q, r = np.linalg.qr(crandn(rng, n, n))
    return q * (np.diag(r) / np.abs(np.diag(r)))


def _has_path(edges, src, dst, min_len):
    """Is there a path src -> dst with at least ``min_len`` arrows?"""
    frontier = {(src, 0)}
    seen = set()
    while frontier:
        node, length = frontier.pop()
        for a, b in edges:
            if a != node:
                continue
            nxt = (b, min(length + 1, min_len))
            if b == dst and length + 1 >= min_len:
                return True
            if nxt not in seen:
                seen.add(nxt)
                frontier.add(nxt)
    return False


def random_diagram(rng, max_objects=5, max_dim=4, backend=COMPLEX):
    """DAG of random maps with agreeing parallel arrows, inverse pairs and idempotent loops.

    Returns ``(diagram, omega)`` where ``omega`` contains every source and
    reaches every object.
    """
    n = int(rng.integers(1, max_objects + 1))
    objs = [SpaceObject(f"O{i}", int(rng.integers(1, max_dim + 1))) for i in range(n)]
    arrows: dict[str, Morphism] = {}
    edges: list[tuple[int, int]] = []
    count = 0

    def put(i, j, m):
        nonlocal count
        arrows[f"a{count}"] = Morphism(objs[i], objs[j], m, backend)
        edges.append((i, j))
        count += 1

    for i in range(n):
        for j in range(i + 1, n):
            if rng.random() > 0.45:
                continue
            di, dj = objs[i].dim, objs[j].dim
            f = crandn(rng, dj, di)
            put(i, j, f)
            for _ in range(int(rng.choice([0, 0, 1, 2]))):
                k = int(rng.integers(0, di + 1))
                q = orth(crandn(rng, di, k)) if k else np.zeros((di, 0))
                put(i, j, f + crandn(rng, dj, di) @ (np.eye(di) - q @ q.conj().T))

    paired: set[int] = set()
    for (i, j) in list(edges):
        if objs[i].dim != objs[j].dim or i in paired or j in paired or rng.random() > 0.3:
            continue
        if edges.count((i, j)) != 1 or _has_path(edges, i, j, 2) or _has_path(edges, j, i, 1):
            continue
        name = next(k for k, f in arrows.items() if (f.dom, f.cod) == (objs[i], objs[j]))
        d = objs[i].dim
        g = random_unitary(rng, d) @ np.diag(rng.uniform(0.5, 2.0, d))
        arrows[name] = Morphism(objs[i], objs[j], g, backend)
        put(j, i, np.linalg.inv(g))
        paired |= {i, j}

    for i in range(n):
        if i in paired or rng.random() > 0.25:
            continue
        d = objs[i].dim
        k = int(rng.integers(0, d + 1))
        q = orth(crandn(rng, d, k)) if k else np.zeros((d, 0))
        put(i, i, q @ q.conj().T)

    d = build_diagram(objs, arrows, backend, shape="general")
    names = [o.name for o in objs]
    omega = {nm for nm in names if rng.random() < 0.3}
    has_incoming = {objs[j].name for i, j in edges if i != j}
    omega |= {nm for nm in names if nm not in has_incoming}
    for nm in names:
        if nm not in reachable(d, omega):
            omega.add(nm)
    return d, [nm for nm in names if nm in omega]


# brute-force oracle


def agreement_basis(d) -> tuple[list[str], np.ndarray]:
    """Orthonormal basis of all cone data ``(x_T)_T`` with ``F(f) x_A = x_B`` for every arrow."""
    names = list(d.objects)
    offsets, pos = {}, 0
    for nm in names:
        offsets[nm] = pos
        pos += d.objects[nm].dim
    rows = []
    for f in d.arrows.values():
        block = np.zeros((f.cod.dim, pos), dtype=complex)
        a, b = offsets[f.dom.name], offsets[f.cod.name]
        block[:, a:a + f.dom.dim] += f.matrix
        block[:, b:b + f.cod.dim] -= np.eye(f.cod.dim)
        rows.append(block)
    if not rows or pos == 0:
        return names, np.eye(pos, dtype=complex)
    a = np.vstack(rows)
    # absolute floor: an identity loop contributes F - I made of rounding noise only
    scale = np.linalg.norm(a, 2)
    if scale <= 1e-10:
        return names, np.eye(pos, dtype=complex)
    return names, null_space(a, rcond=1e-10 * max(1.0, scale) / scale)


def restrict(d, basis, keep) -> np.ndarray:
    """Rows of ``basis`` belonging to the objects in ``keep``."""
    pos, idx = 0, []
    for nm, obj in d.objects.items():
        if nm in keep:
            idx.extend(range(pos, pos + obj.dim))
        pos += obj.dim
    return basis[idx, :]


def projector(cols: np.ndarray) -> np.ndarray:
    q = orth(cols) if cols.size else cols
    return q @ q.conj().T


def stacked(maps, names) -> np.ndarray:
    blocks = [maps[nm].matrix for nm in names]
    return np.vstack(blocks) if blocks else np.zeros((0, 0))


# test-only semirings


class IntegersMod5(InvolutiveSemiring):
    name = "Z/5"

    def zero(self): return 0
    def one(self): return 1
    def add(self, a, b): return (a + b) % 5
    def mul(self, a, b): return (a * b) % 5
    def sample(self, rng): return int(rng.integers(0, 5))


class GaussianPolyTrivial(InvolutiveSemiring):
    """``Z[x]/(x^2 + 1)`` as pairs ``(a, b) = a + b x`` with the identity involution."""

    name = "Z[x]/(x^2+1)"

    def zero(self): return (0, 0)
    def one(self): return (1, 0)
    def add(self, a, b): return (a[0] + b[0], a[1] + b[1])
    def mul(self, a, b): return (a[0] * b[0] - a[1] * b[1], a[0] * b[1] + a[1] * b[0])
    def generators(self): return [(0, 1), (1, 0)]
    def sample(self, rng): return (int(rng.integers(-9, 10)), int(rng.integers(-9, 10)))
    def encode(self, a): return list(a)

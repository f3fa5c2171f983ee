"""Pure-Python kernels.  Same signatures as the compiled ``_ckernels``."""
from __future__ import annotations

from collections import deque

import numpy as np


def bfs_distances(indptr, indices, source, max_dist):
    """Edge-count distances from `source`, -1 beyond `max_dist`."""
    n = len(indptr) - 1
    dist = [-1] * n
    dist[source] = 0
    queue = deque([source])
    while queue:
        v = queue.popleft()
        d = dist[v]
        if d == max_dist:
            continue
        for t in range(indptr[v], indptr[v + 1]):
            w = indices[t]
            if dist[w] < 0:
                dist[w] = d + 1
                queue.append(w)
    return np.asarray(dist, dtype=np.int64)


def expand_cover(in_ptr, in_edges, origin, index, reverse, root, radius):
    """Breadth-first expansion of the universal covering tree.

    Node t is joined to parent[t] by a lift of base edge via[t], which starts
    at proj[t] and ends at proj[parent[t]]; copy[t] numbers the lifts of
    via[t] arriving at the parent.  The lift of reverse(via[t]) ending at t
    is always copy 0 there.  Returns (proj, parent, via, copy, depth).
    """
    proj = [root]
    parent = [-1]
    via = [-1]
    copy = [0]
    depth = [0]
    head = 0
    while head < len(proj):
        p = head
        head += 1
        if depth[p] == radius:
            continue
        v = proj[p]
        back = reverse[via[p]] if via[p] >= 0 else -1
        for t in range(in_ptr[v], in_ptr[v + 1]):
            e = in_edges[t]
            first = 1 if e == back else 0
            for c in range(first, index[e]):
                proj.append(origin[e])
                parent.append(p)
                via.append(e)
                copy.append(c)
                depth.append(depth[p] + 1)
    return tuple(np.asarray(a, dtype=np.int64) for a in (proj, parent, via, copy, depth))


def tower_injective(A, B, A2, B2, a_mul, b_mul):
    """Is (g1, g2) -> (a_mul*g1 mod A2, b_mul*g2 mod B2) injective on Z/A x Z/B?"""
    seen = set()
    for g1 in range(A):
        x = (a_mul * g1) % A2
        for g2 in range(B):
            img = (x, (b_mul * g2) % B2)
            if img in seen:
                return False
            seen.add(img)
    return True


def tower_equivariance_failures(units, A, B, A2, B2, a_mul, b_mul):
    """Count (u, g) with iota(phi(u) g) != phi'(u) iota(g).

    phi(u) multiplies the first coordinate by u (mod A, resp. A2) and fixes
    the second.
    """
    bad = 0
    for u in units:
        for g1 in range(A):
            lhs1 = (a_mul * ((u * g1) % A)) % A2
            rhs1 = (u * ((a_mul * g1) % A2)) % A2
            if lhs1 != rhs1:
                bad += B
    return bad


def tower_action_bijective(units, A):
    """Does multiplication by every unit permute Z/A?"""
    for u in units:
        seen = bytearray(A)
        for g in range(A):
            x = (u * g) % A
            if seen[x]:
                return False
            seen[x] = 1
    return True


def tower_faithful_witnesses(units, A):
    """For each unit u, the least g in Z/A with u*g != g, or -1."""
    out = []
    for u in units:
        w = -1
        for g in range(A):
            if (u * g) % A != g:
                w = g
                break
        out.append(w)
    return np.asarray(out, dtype=np.int64)

# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels.  Same signatures as ``_pykernels``."""
import numpy as np
cimport numpy as cnp

ctypedef cnp.int64_t i64


def bfs_distances(indptr, indices, Py_ssize_t source, i64 max_dist):
    cdef const i64[:] ptr = np.ascontiguousarray(indptr, dtype=np.int64)
    cdef const i64[:] idx = np.ascontiguousarray(indices, dtype=np.int64)
    cdef Py_ssize_t n = ptr.shape[0] - 1
    out = np.full(n, -1, dtype=np.int64)
    cdef i64[:] dist = out
    cdef i64[:] queue = np.empty(max(n, 1), dtype=np.int64)
    cdef Py_ssize_t head = 0, tail = 0, t, v, w
    cdef i64 d
    dist[source] = 0
    queue[tail] = source
    tail += 1
    while head < tail:
        v = queue[head]
        head += 1
        d = dist[v]
        if d == max_dist:
            continue
        for t in range(ptr[v], ptr[v + 1]):
            w = idx[t]
            if dist[w] < 0:
                dist[w] = d + 1
                queue[tail] = w
                tail += 1
    return out


def expand_cover(in_ptr, in_edges, origin, index, reverse, Py_ssize_t root, i64 radius):
    cdef const i64[:] ptr = np.ascontiguousarray(in_ptr, dtype=np.int64)
    cdef const i64[:] inc = np.ascontiguousarray(in_edges, dtype=np.int64)
    cdef const i64[:] org = np.ascontiguousarray(origin, dtype=np.int64)
    cdef const i64[:] idx = np.ascontiguousarray(index, dtype=np.int64)
    cdef const i64[:] rev = np.ascontiguousarray(reverse, dtype=np.int64)
    cdef Py_ssize_t cap = 1024, size = 1, head = 0, p, t, c, first
    cdef i64 v, e, back
    proj_a = np.empty(cap, dtype=np.int64)
    parent_a = np.empty(cap, dtype=np.int64)
    via_a = np.empty(cap, dtype=np.int64)
    copy_a = np.empty(cap, dtype=np.int64)
    depth_a = np.empty(cap, dtype=np.int64)
    cdef i64[:] proj = proj_a, parent = parent_a, via = via_a, cp = copy_a, depth = depth_a
    proj[0] = root
    parent[0] = -1
    via[0] = -1
    cp[0] = 0
    depth[0] = 0
    while head < size:
        p = head
        head += 1
        if depth[p] == radius:
            continue
        v = proj[p]
        back = rev[via[p]] if via[p] >= 0 else -1
        for t in range(ptr[v], ptr[v + 1]):
            e = inc[t]
            first = 1 if e == back else 0
            for c in range(first, idx[e]):
                if size == cap:
                    cap *= 2
                    proj_a = np.resize(proj_a, cap)
                    parent_a = np.resize(parent_a, cap)
                    via_a = np.resize(via_a, cap)
                    copy_a = np.resize(copy_a, cap)
                    depth_a = np.resize(depth_a, cap)
                    proj = proj_a
                    parent = parent_a
                    via = via_a
                    cp = copy_a
                    depth = depth_a
                proj[size] = org[e]
                parent[size] = p
                via[size] = e
                cp[size] = c
                depth[size] = depth[p] + 1
                size += 1
    return (proj_a[:size].copy(), parent_a[:size].copy(), via_a[:size].copy(),
            copy_a[:size].copy(), depth_a[:size].copy())


def tower_injective(i64 A, i64 B, i64 A2, i64 B2, i64 a_mul, i64 b_mul):
    seen_a = np.zeros(A2 * B2, dtype=np.uint8)
    cdef cnp.uint8_t[:] seen = seen_a
    cdef i64 g1, g2, x, key
    for g1 in range(A):
        x = (a_mul * g1) % A2
        for g2 in range(B):
            key = x * B2 + (b_mul * g2) % B2
            if seen[key]:
                return False
            seen[key] = 1
    return True


def tower_equivariance_failures(units, i64 A, i64 B, i64 A2, i64 B2, i64 a_mul, i64 b_mul):
    cdef const i64[:] us = np.ascontiguousarray(units, dtype=np.int64)
    cdef Py_ssize_t t
    cdef i64 u, g1, lhs, rhs, bad = 0
    for t in range(us.shape[0]):
        u = us[t]
        for g1 in range(A):
            lhs = (a_mul * ((u * g1) % A)) % A2
            rhs = (u * ((a_mul * g1) % A2)) % A2
            if lhs != rhs:
                bad += B
    return bad


def tower_action_bijective(units, i64 A):
    cdef const i64[:] us = np.ascontiguousarray(units, dtype=np.int64)
    seen_a = np.zeros(A, dtype=np.uint8)
    cdef cnp.uint8_t[:] seen = seen_a
    cdef Py_ssize_t t
    cdef i64 u, g, x
    for t in range(us.shape[0]):
        u = us[t]
        seen[:] = 0
        for g in range(A):
            x = (u * g) % A
            if seen[x]:
                return False
            seen[x] = 1
    return True


def tower_faithful_witnesses(units, i64 A):
    cdef const i64[:] us = np.ascontiguousarray(units, dtype=np.int64)
    out_a = np.full(us.shape[0], -1, dtype=np.int64)
    cdef i64[:] out = out_a
    cdef Py_ssize_t t
    cdef i64 u, g
    for t in range(us.shape[0]):
        u = us[t]
        for g in range(A):
            if (u * g) % A != g:
                out[t] = g
                break
    return out_a

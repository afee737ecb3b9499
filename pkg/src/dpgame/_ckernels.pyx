# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot kernels, API-identical to ``dpgame._pykernels``."""

import numpy as np
cimport numpy as cnp

cnp.import_array()

cdef enum:
    FOUND = 0
    NONE_ = 1
    ABORTED = 2
    EF = 0
    SWAP = 1
    JUMP = 2


cdef inline long long _absll(long long x) nogil:
    return -x if x < 0 else x


cdef class _Ctx:
    cdef const int[:, ::1] dist
    cdef const int[::1] ptr
    cdef const int[::1] tgt
    cdef const cnp.int64_t[::1] ideal
    cdef const int[::1] check_ptr
    cdef const int[::1] check_a
    cdef const int[::1] check_b
    cdef int[::1] pos
    cdef cnp.int8_t[::1] used
    cdef int[::1] interested
    cdef cnp.int64_t[::1] base
    cdef int n_agents, n_vertices, n_interested, notion, n_fill, first_vertex
    cdef long long nodes, budget
    cdef bint aborted

    cdef bint envies(self, int a, int b) nogil:
        cdef int pa = self.pos[a], pb = self.pos[b]
        cdef int k, c, pc
        cdef long long w, now = 0, after = 0
        for k in range(self.ptr[a], self.ptr[a + 1]):
            c = self.tgt[k]
            if c == b:
                continue
            w = self.ideal[k]
            pc = self.pos[c]
            now += _absll(w - self.dist[pa, pc])
            after += _absll(w - self.dist[pb, pc])
        return after < now

    cdef long long cost_at(self, int a, int v) nogil:
        cdef int k
        cdef long long s = 0
        for k in range(self.ptr[a], self.ptr[a + 1]):
            s += _absll(self.ideal[k] - self.dist[v, self.pos[self.tgt[k]]])
        return s

    cdef bint leaf_ok(self) nogil:
        cdef int i, a, v, safe = 0
        cdef bint tempting
        if self.notion != JUMP and self.n_fill <= 0:
            return True
        for i in range(self.n_interested):
            a = self.interested[i]
            self.base[i] = self.cost_at(a, self.pos[a])
        for v in range(self.n_vertices):
            if self.used[v]:
                continue
            tempting = False
            for i in range(self.n_interested):
                if self.cost_at(self.interested[i], v) < self.base[i]:
                    tempting = True
                    break
            if tempting:
                if self.notion == JUMP:
                    return False
            else:
                safe += 1
        if self.n_fill > 0 and safe < self.n_fill:
            return False
        return True

    cdef bint ok_at(self, int k) nogil:
        cdef int q, a, b
        for q in range(self.check_ptr[k], self.check_ptr[k + 1]):
            a = self.check_a[q]
            b = self.check_b[q]
            if self.envies(a, b):
                if self.notion == EF or self.envies(b, a):
                    return False
        return True

    cdef bint rec(self, int k) nogil:
        cdef int v, lo = 0, hi = self.n_vertices
        if k == self.n_agents:
            return self.leaf_ok()
        if k == 0 and self.first_vertex >= 0:
            lo = self.first_vertex
            hi = self.first_vertex + 1
        for v in range(lo, hi):
            if self.used[v]:
                continue
            self.nodes += 1
            if self.nodes > self.budget:
                self.aborted = True
                return False
            self.pos[k] = v
            self.used[v] = 1
            if self.ok_at(k) and self.rec(k + 1):
                return True
            self.used[v] = 0
            if self.aborted:
                return False
        return False


cdef _Ctx _make(dist, ptr, tgt, ideal, int n_vertices, check_ptr, check_a, check_b,
                int notion, int n_fill):
    cdef _Ctx c = _Ctx()
    c.dist = np.ascontiguousarray(dist, dtype=np.int32)
    c.ptr = np.ascontiguousarray(ptr, dtype=np.int32)
    c.tgt = np.ascontiguousarray(tgt, dtype=np.int32)
    c.ideal = np.ascontiguousarray(ideal, dtype=np.int64)
    c.check_ptr = np.ascontiguousarray(check_ptr, dtype=np.int32)
    c.check_a = np.ascontiguousarray(check_a, dtype=np.int32)
    c.check_b = np.ascontiguousarray(check_b, dtype=np.int32)
    c.n_agents = len(ptr) - 1
    c.n_vertices = n_vertices
    c.pos = np.zeros(max(c.n_agents, 1), dtype=np.int32)
    c.used = np.zeros(max(n_vertices, 1), dtype=np.int8)
    p = np.asarray(ptr)
    inter = np.flatnonzero(p[1:] > p[:-1]).astype(np.int32) if c.n_agents else np.zeros(0, np.int32)
    c.interested = np.ascontiguousarray(inter) if len(inter) else np.zeros(1, np.int32)
    c.n_interested = len(inter)
    c.base = np.zeros(max(len(inter), 1), dtype=np.int64)
    c.notion = notion
    c.n_fill = n_fill
    c.first_vertex = -1
    c.nodes = 0
    c.budget = 0
    c.aborted = False
    return c


def search(dist, ptr, tgt, ideal, n_vertices, check_ptr, check_a, check_b,
           notion, n_fill=0, budget=10**8, first_vertex=-1):
    cdef _Ctx c = _make(dist, ptr, tgt, ideal, n_vertices, check_ptr, check_a, check_b,
                        notion, n_fill)
    cdef bint hit
    c.budget = budget
    c.first_vertex = first_vertex
    with nogil:
        hit = c.rec(0)
    if hit:
        return FOUND, [int(c.pos[i]) for i in range(c.n_agents)], int(c.nodes)
    return (ABORTED if c.aborted else NONE_), None, int(c.nodes)


def is_stable(dist, ptr, tgt, ideal, n_vertices, pos, notion):
    empty = np.zeros(1, dtype=np.int32)
    cdef _Ctx c = _make(dist, ptr, tgt, ideal, n_vertices, np.zeros(2, np.int32), empty, empty,
                        notion, 0)
    cdef int a, b, i
    for i, v in enumerate(pos):
        c.pos[i] = v
        c.used[v] = 1
    if notion == JUMP:
        return bool(c.leaf_ok())
    for i in range(c.n_interested):
        a = c.interested[i]
        for b in range(c.n_agents):
            if b != a and c.envies(a, b):
                if notion == EF or c.envies(b, a):
                    return False
    return True

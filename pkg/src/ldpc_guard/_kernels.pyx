# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled hot loops. Each function mirrors one in ``_purepy.py`` exactly."""

import numpy as np
cimport numpy as cnp
from libc.stdint cimport int8_t, int32_t, int64_t, uint8_t

cnp.import_array()


cdef class SparseDecoder:
    """Exact event-driven hard-decision decoder for sparse received words.

    Only edges carrying a 1 are ever visited, which is exact because every
    message is 0 when the received word is all-zero.
    """
    cdef const int32_t[:] var_ptr
    cdef const int32_t[:] var_chk
    cdef const int32_t[:] chk_ptr
    cdef const int32_t[:] chk_var
    cdef const int32_t[:] chk_edge
    cdef const int32_t[:, :] table
    cdef int max_iter, n, m
    cdef uint8_t[:] fwd, bwd, r
    cdef int32_t[:] cnt, par, synd
    cdef int64_t[:] vmark, cmark
    cdef int64_t stamp
    cdef int32_t[:] fwd_on, bwd_on, cnt_vars, chk_list, active, xs
    cdef int n_fwd, n_bwd, n_cnt

    def __init__(self, var_ptr, var_chk, chk_ptr, chk_var, chk_edge, table, int max_iter):
        self.var_ptr = var_ptr
        self.var_chk = var_chk
        self.chk_ptr = chk_ptr
        self.chk_var = chk_var
        self.chk_edge = chk_edge
        self.table = table
        self.max_iter = max_iter
        self.n = len(var_ptr) - 1
        self.m = len(chk_ptr) - 1
        cdef Py_ssize_t E = len(var_chk)
        self.fwd = np.zeros(E, dtype=np.uint8)
        self.bwd = np.zeros(E, dtype=np.uint8)
        self.r = np.zeros(self.n, dtype=np.uint8)
        self.cnt = np.zeros(self.n, dtype=np.int32)
        self.par = np.zeros(self.m, dtype=np.int32)
        self.synd = np.zeros(self.m, dtype=np.int32)
        self.vmark = np.zeros(self.n, dtype=np.int64)
        self.cmark = np.zeros(self.m, dtype=np.int64)
        self.stamp = 0
        self.fwd_on = np.zeros(E, dtype=np.int32)
        self.bwd_on = np.zeros(E, dtype=np.int32)
        self.cnt_vars = np.zeros(self.n, dtype=np.int32)
        self.chk_list = np.zeros(self.m, dtype=np.int32)
        self.active = np.zeros(self.n, dtype=np.int32)
        self.xs = np.zeros(self.n, dtype=np.int32)
        self.n_fwd = 0
        self.n_bwd = 0
        self.n_cnt = 0

    cdef int _decode(self, const int32_t* err, int w, int* it_out) noexcept nogil:
        cdef int j, i, k, v, e, c, s, deg, b, ones, zeros, n_act, n_chk, n_x
        cdef int status = 2
        cdef uint8_t val
        for i in range(w):
            self.r[err[i]] = 1
        it_out[0] = self.max_iter
        for j in range(1, self.max_iter + 1):
            # forward half
            for i in range(self.n_fwd):
                self.fwd[self.fwd_on[i]] = 0
            self.n_fwd = 0
            if j == 1:
                for i in range(w):
                    v = err[i]
                    for e in range(self.var_ptr[v], self.var_ptr[v + 1]):
                        self.fwd[e] = 1
                        self.fwd_on[self.n_fwd] = e
                        self.n_fwd += 1
            else:
                self.stamp += 1
                n_act = 0
                for i in range(w):
                    v = err[i]
                    if self.vmark[v] != self.stamp:
                        self.vmark[v] = self.stamp
                        self.active[n_act] = v
                        n_act += 1
                for i in range(self.n_cnt):
                    v = self.cnt_vars[i]
                    if self.vmark[v] != self.stamp:
                        self.vmark[v] = self.stamp
                        self.active[n_act] = v
                        n_act += 1
                for i in range(n_act):
                    v = self.active[i]
                    deg = self.var_ptr[v + 1] - self.var_ptr[v]
                    b = self.table[j, deg]
                    for e in range(self.var_ptr[v], self.var_ptr[v + 1]):
                        ones = self.cnt[v] - self.bwd[e]
                        zeros = deg - 1 - ones
                        if ones >= b:
                            val = 1
                        elif zeros >= b:
                            val = 0
                        else:
                            val = self.r[v]
                        if val:
                            self.fwd[e] = 1
                            self.fwd_on[self.n_fwd] = e
                            self.n_fwd += 1
            # backward half
            for i in range(self.n_bwd):
                self.bwd[self.bwd_on[i]] = 0
            self.n_bwd = 0
            for i in range(self.n_cnt):
                self.cnt[self.cnt_vars[i]] = 0
            self.n_cnt = 0
            n_chk = 0
            for i in range(self.n_fwd):
                c = self.var_chk[self.fwd_on[i]]
                if self.par[c] == 0:
                    self.chk_list[n_chk] = c
                    n_chk += 1
                self.par[c] += 1
            for i in range(n_chk):
                c = self.chk_list[i]
                k = self.par[c]
                for s in range(self.chk_ptr[c], self.chk_ptr[c + 1]):
                    e = self.chk_edge[s]
                    if (k - self.fwd[e]) & 1:
                        self.bwd[e] = 1
                        self.bwd_on[self.n_bwd] = e
                        self.n_bwd += 1
                        v = self.chk_var[s]
                        if self.cnt[v] == 0:
                            self.cnt_vars[self.n_cnt] = v
                            self.n_cnt += 1
                        self.cnt[v] += 1
                self.par[c] = 0
            # decision
            self.stamp += 1
            n_x = 0
            for i in range(w):
                v = err[i]
                self.vmark[v] = self.stamp
                if self.cnt[v] != 0:
                    self.xs[n_x] = v
                    n_x += 1
            for i in range(self.n_cnt):
                v = self.cnt_vars[i]
                if self.vmark[v] != self.stamp:
                    deg = self.var_ptr[v + 1] - self.var_ptr[v]
                    if self.cnt[v] == deg:
                        self.xs[n_x] = v
                        n_x += 1
            if n_x == 0:
                status = 0
                it_out[0] = j
                break
            # syndrome of the decision word
            self.stamp += 1
            n_chk = 0
            for i in range(n_x):
                v = self.xs[i]
                for e in range(self.var_ptr[v], self.var_ptr[v + 1]):
                    c = self.var_chk[e]
                    if self.cmark[c] != self.stamp:
                        self.cmark[c] = self.stamp
                        self.synd[c] = 0
                        self.chk_list[n_chk] = c
                        n_chk += 1
                    self.synd[c] ^= 1
            k = 0
            for i in range(n_chk):
                if self.synd[self.chk_list[i]]:
                    k = 1
                    break
            if k == 0:
                status = 1
                it_out[0] = j
                break
        # reset scratch
        for i in range(self.n_fwd):
            self.fwd[self.fwd_on[i]] = 0
        self.n_fwd = 0
        for i in range(self.n_bwd):
            self.bwd[self.bwd_on[i]] = 0
        self.n_bwd = 0
        for i in range(self.n_cnt):
            self.cnt[self.cnt_vars[i]] = 0
        self.n_cnt = 0
        for i in range(w):
            self.r[err[i]] = 0
        return status

    def decode_one(self, support):
        cdef int32_t[:] s = np.ascontiguousarray(support, dtype=np.int32)
        cdef int it = 0
        cdef int st
        if s.shape[0] == 0:
            return 0, 1
        st = self._decode(&s[0], s.shape[0], &it)
        return st, it

    def decode_supports(self, const int64_t[:] ptr, const int32_t[:] idx, int8_t[:] status, int32_t[:] iters):
        cdef Py_ssize_t p, P = ptr.shape[0] - 1
        cdef int it = 0
        with nogil:
            for p in range(P):
                if ptr[p + 1] == ptr[p]:
                    status[p] = 0
                    iters[p] = 1
                    continue
                status[p] = self._decode(&idx[ptr[p]], <int>(ptr[p + 1] - ptr[p]), &it)
                iters[p] = it

    def decode_fixed_weight(self, const int32_t[:, :] patterns, int8_t[:] status, int32_t[:] iters):
        cdef Py_ssize_t p, P = patterns.shape[0]
        cdef int w = patterns.shape[1]
        cdef int it = 0
        with nogil:
            for p in range(P):
                status[p] = self._decode(&patterns[p, 0], w, &it)
                iters[p] = it

    def decode_combinations(self, start, int64_t count, int32_t[:, :] fail_buf, int8_t[:] fail_status):
        """Decode ``count`` lexicographically consecutive combinations from ``start``.

        Returns (n_nonconverged, n_miscorrected, n_recorded). Failing
        combinations are copied into ``fail_buf`` until it is full.
        """
        cdef int32_t[:] comb = np.array(start, dtype=np.int32)
        cdef int w = comb.shape[0]
        cdef int n = self.n
        cdef int64_t t
        cdef int i, st, it = 0
        cdef int64_t n_fail2 = 0, n_fail1 = 0
        cdef Py_ssize_t cap = fail_buf.shape[0], rec = 0
        with nogil:
            for t in range(count):
                st = self._decode(&comb[0], w, &it)
                if st != 0:
                    if st == 1:
                        n_fail1 += 1
                    else:
                        n_fail2 += 1
                    if rec < cap:
                        for i in range(w):
                            fail_buf[rec, i] = comb[i]
                        fail_status[rec] = st
                        rec += 1
                # next combination in lexicographic order
                i = w - 1
                while i >= 0 and comb[i] == n - w + i:
                    i -= 1
                if i < 0:
                    break
                comb[i] += 1
                i += 1
                while i < w:
                    comb[i] = comb[i - 1] + 1
                    i += 1
        return n_fail2, n_fail1, rec


cdef class _ESU:
    cdef const int32_t[:] sptr
    cdef const int32_t[:] sidx
    cdef const int32_t[:] var_ptr
    cdef const int32_t[:] var_chk
    cdef const int32_t[:] thr
    cdef const int32_t[:] prune
    cdef int max_size, root, restrict
    cdef int64_t budget, nodes
    cdef int64_t max_hits
    cdef int32_t[:] closed, chk_cnt, members, ext
    cdef list hits
    cdef bint exceeded, full

    cdef void _add(self, int w) noexcept:
        cdef int e, q
        self.closed[w] += 1
        for q in range(self.sptr[w], self.sptr[w + 1]):
            self.closed[self.sidx[q]] += 1
        for e in range(self.var_ptr[w], self.var_ptr[w + 1]):
            self.chk_cnt[self.var_chk[e]] += 1

    cdef void _remove(self, int w) noexcept:
        cdef int e, q
        self.closed[w] -= 1
        for q in range(self.sptr[w], self.sptr[w + 1]):
            self.closed[self.sidx[q]] -= 1
        for e in range(self.var_ptr[w], self.var_ptr[w + 1]):
            self.chk_cnt[self.var_chk[e]] -= 1

    cdef int _gain(self, int w) noexcept:
        cdef int e, g = 0
        for e in range(self.var_ptr[w], self.var_ptr[w + 1]):
            if self.chk_cnt[self.var_chk[e]] > 0:
                g += 1
        return g

    cdef void _extend(self, int size, int deficit, int ext_lo, int ext_hi) except *:
        cdef int i, q, u, w, g, top, lo
        if self.exceeded or self.full:
            return
        self.nodes += 1
        if self.nodes > self.budget:
            self.exceeded = True
            return
        if deficit >= self.thr[size]:
            self.hits.append((size, deficit, tuple(self.members[i] for i in range(size))))
            if <int64_t>len(self.hits) >= self.max_hits:
                self.full = True
                return
        if size == self.max_size or deficit < self.prune[size]:
            return
        # ext[ext_lo:ext_hi] is this level's extension set; children append after ext_hi
        i = ext_lo
        while i < ext_hi:
            w = self.ext[i]
            i += 1
            top = ext_hi
            # the remaining siblings ext[i:ext_hi] stay in the child's extension
            lo = top
            for q in range(i, ext_hi):
                self.ext[top] = self.ext[q]
                top += 1
            for q in range(self.sptr[w], self.sptr[w + 1]):
                u = self.sidx[q]
                if self.closed[u] == 0 and (not self.restrict or u > self.root):
                    self.ext[top] = u
                    top += 1
            g = self._gain(w)
            self.members[size] = w
            self._add(w)
            self._extend(size + 1, deficit + g, lo, top)
            self._remove(w)
            if self.exceeded or self.full:
                return


def connected_subsets(sptr, sidx, var_ptr, var_chk, int n, int m, int max_size, thr, prune,
                      int root, int64_t budget, int64_t max_hits):
    """Enumerate connected variable sets (ESU order) with deficit >= thr[size].

    ``prune[k]`` is the smallest deficit at size k from which some completion
    can still reach a threshold. ``root >= 0`` restricts to sets containing
    that variable. Returns (hits, nodes, exceeded).
    """
    cdef _ESU s = _ESU()
    cdef int v, q, u, top
    s.sptr = sptr
    s.sidx = sidx
    s.var_ptr = var_ptr
    s.var_chk = var_chk
    s.thr = np.ascontiguousarray(thr, dtype=np.int32)
    s.prune = np.ascontiguousarray(prune, dtype=np.int32)
    s.max_size = max_size
    s.budget = budget
    s.max_hits = max_hits
    s.nodes = 0
    s.hits = []
    s.exceeded = False
    s.full = False
    s.closed = np.zeros(n, dtype=np.int32)
    s.chk_cnt = np.zeros(m, dtype=np.int32)
    s.members = np.zeros(max_size + 1, dtype=np.int32)
    s.ext = np.zeros(n * (max_size + 1) + 1, dtype=np.int32)
    roots = range(n) if root < 0 else [root]
    s.restrict = root < 0
    for v in roots:
        s.root = v
        top = 0
        for q in range(s.sptr[v], s.sptr[v + 1]):
            u = s.sidx[q]
            if not s.restrict or u > v:
                s.ext[top] = u
                top += 1
        s.members[0] = v
        s._add(v)
        s._extend(1, 0, 0, top)
        s._remove(v)
        if s.exceeded or s.full:
            break
    return s.hits, s.nodes, s.exceeded


cdef class _EvenSearch:
    cdef const int32_t[:] var_ptr
    cdef const int32_t[:] var_chk
    cdef const int32_t[:] chk_ptr
    cdef const int32_t[:] chk_var
    cdef int max_weight, root
    cdef int64_t budget, nodes, max_hits
    cdef int32_t[:] par, odd, odd_pos, members, blocked
    cdef int32_t[:, :] branch
    cdef uint8_t[:] inset
    cdef int n_odd
    cdef list hits
    cdef bint exceeded, full, restrict
    cdef int max_deg

    cdef void _toggle(self, int w) noexcept:
        cdef int e, c, p, last
        for e in range(self.var_ptr[w], self.var_ptr[w + 1]):
            c = self.var_chk[e]
            self.par[c] ^= 1
            if self.par[c]:
                self.odd_pos[c] = self.n_odd
                self.odd[self.n_odd] = c
                self.n_odd += 1
            else:
                p = self.odd_pos[c]
                last = self.odd[self.n_odd - 1]
                self.odd[p] = last
                self.odd_pos[last] = p
                self.n_odd -= 1

    cdef bint _eligible(self, int u) noexcept:
        return not self.inset[u] and self.blocked[u] == 0 and (not self.restrict or u > self.root)

    cdef void _dfs(self, int size) except *:
        cdef int i, s, c, u, best_c = -1, best_k = 1 << 30, k, nb
        if self.exceeded or self.full:
            return
        self.nodes += 1
        if self.nodes > self.budget:
            self.exceeded = True
            return
        if self.n_odd == 0:
            self.hits.append(tuple(self.members[i] for i in range(size)))
            if <int64_t>len(self.hits) >= self.max_hits:
                self.full = True
            return
        if size >= self.max_weight or self.n_odd > self.max_deg * (self.max_weight - size):
            return
        for i in range(self.n_odd):
            c = self.odd[i]
            k = 0
            for s in range(self.chk_ptr[c], self.chk_ptr[c + 1]):
                if self._eligible(self.chk_var[s]):
                    k += 1
            if k < best_k:
                best_k = k
                best_c = c
                if k == 0:
                    return
        c = best_c
        nb = 0
        for s in range(self.chk_ptr[c], self.chk_ptr[c + 1]):
            u = self.chk_var[s]
            if not self._eligible(u):
                continue
            self.members[size] = u
            self.inset[u] = 1
            self._toggle(u)
            self._dfs(size + 1)
            self._toggle(u)
            self.inset[u] = 0
            # later siblings must avoid u
            self.blocked[u] += 1
            self.branch[size, nb] = u
            nb += 1
            if self.exceeded or self.full:
                break
        for i in range(nb):
            self.blocked[self.branch[size, i]] -= 1


def minimal_even_sets(var_ptr, var_chk, chk_ptr, chk_var, int n, int max_weight, int root,
                      int64_t budget, int64_t max_hits):
    """Even variable sets of size <= max_weight, a superset of the minimal ones.

    Every minimal nonempty set with all checks even is reported exactly once,
    rooted at its smallest member (or, when ``root >= 0``, only sets containing
    ``root``). A few non-minimal sets may also appear. Returns (sets, nodes, exceeded).
    """
    cdef _EvenSearch s = _EvenSearch()
    cdef int v, m = len(chk_ptr) - 1
    s.var_ptr = var_ptr
    s.var_chk = var_chk
    s.chk_ptr = chk_ptr
    s.chk_var = chk_var
    s.max_weight = max_weight
    s.budget = budget
    s.max_hits = max_hits
    s.nodes = 0
    s.hits = []
    s.exceeded = False
    s.full = False
    s.par = np.zeros(m, dtype=np.int32)
    s.odd = np.zeros(m, dtype=np.int32)
    s.odd_pos = np.zeros(m, dtype=np.int32)
    s.members = np.zeros(max_weight + 1, dtype=np.int32)
    s.blocked = np.zeros(n, dtype=np.int32)
    s.inset = np.zeros(n, dtype=np.uint8)
    s.branch = np.zeros((max_weight + 1, max(1, int(np.max(np.diff(np.asarray(chk_ptr)))) if m else 1)), dtype=np.int32)
    s.n_odd = 0
    s.max_deg = int(np.max(np.diff(np.asarray(var_ptr)))) if n else 0
    s.restrict = root < 0
    roots = range(n) if root < 0 else [root]
    for v in roots:
        s.root = v
        s.members[0] = v
        s.inset[v] = 1
        s._toggle(v)
        s._dfs(1)
        s._toggle(v)
        s.inset[v] = 0
        if s.exceeded or s.full:
            break
    return s.hits, s.nodes, s.exceeded

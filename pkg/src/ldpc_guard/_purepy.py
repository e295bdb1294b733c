"""Pure-Python twins of the compiled kernels in ``_kernels.pyx``.

Same algorithms, same signatures, same results; 30 to 50 times slower
on typical desk-scale graphs. Used when the extension is not built or when
``LDPC_GUARD_PURE=1``.
"""
from __future__ import annotations

import numpy as np


class SparseDecoder:
    def __init__(self, var_ptr, var_chk, chk_ptr, chk_var, chk_edge, table, max_iter):
        self.var_ptr = [int(x) for x in var_ptr]
        self.var_chk = [int(x) for x in var_chk]
        self.n = len(self.var_ptr) - 1
        self.m = len(chk_ptr) - 1
        self.var_edges = [range(self.var_ptr[v], self.var_ptr[v + 1]) for v in range(self.n)]
        cp = [int(x) for x in chk_ptr]
        cv = [int(x) for x in chk_var]
        ce = [int(x) for x in chk_edge]
        self.chk_slots = [list(zip(cv[cp[c]:cp[c + 1]], ce[cp[c]:cp[c + 1]])) for c in range(self.m)]
        self.table = [list(map(int, row)) for row in np.asarray(table)]
        self.max_iter = int(max_iter)

    def _decode(self, err):
        var_chk, var_edges = self.var_chk, self.var_edges
        r = set(err)
        bwd: set[int] = set()
        cnt: dict[int, int] = {}
        for j in range(1, self.max_iter + 1):
            fwd: set[int] = set()
            if j == 1:
                for v in err:
                    fwd.update(var_edges[v])
            else:
                row = self.table[j]
                for v in r | cnt.keys():
                    edges = var_edges[v]
                    deg = len(edges)
                    b = row[deg]
                    total = cnt.get(v, 0)
                    rv = v in r
                    for e in edges:
                        ones = total - (e in bwd)
                        zeros = deg - 1 - ones
                        if ones >= b or (zeros < b and rv):
                            fwd.add(e)
            par: dict[int, int] = {}
            for e in fwd:
                c = var_chk[e]
                par[c] = par.get(c, 0) + 1
            bwd = set()
            cnt = {}
            for c, k in par.items():
                for v, e in self.chk_slots[c]:
                    if (k - (e in fwd)) & 1:
                        bwd.add(e)
                        cnt[v] = cnt.get(v, 0) + 1
            x = [v for v in err if cnt.get(v, 0)]
            x += [v for v, k in cnt.items() if v not in r and k == len(var_edges[v])]
            if not x:
                return 0, j
            synd: dict[int, int] = {}
            for v in x:
                for e in var_edges[v]:
                    c = var_chk[e]
                    synd[c] = synd.get(c, 0) ^ 1
            if not any(synd.values()):
                return 1, j
        return 2, self.max_iter

    def decode_one(self, support):
        support = [int(x) for x in support]
        if not support:
            return 0, 1
        return self._decode(support)

    def decode_supports(self, ptr, idx, status, iters):
        idx = [int(x) for x in idx]
        for p in range(len(ptr) - 1):
            a, b = int(ptr[p]), int(ptr[p + 1])
            if a == b:
                status[p], iters[p] = 0, 1
            else:
                status[p], iters[p] = self._decode(idx[a:b])

    def decode_fixed_weight(self, patterns, status, iters):
        for p, row in enumerate(np.asarray(patterns).tolist()):
            status[p], iters[p] = self._decode(row)

    def decode_combinations(self, start, count, fail_buf, fail_status):
        comb = [int(x) for x in start]
        w, n = len(comb), self.n
        n2 = n1 = rec = 0
        cap = len(fail_buf)
        for _ in range(int(count)):
            st, _it = self._decode(comb)
            if st:
                if st == 1:
                    n1 += 1
                else:
                    n2 += 1
                if rec < cap:
                    fail_buf[rec, :] = comb
                    fail_status[rec] = st
                    rec += 1
            i = w - 1
            while i >= 0 and comb[i] == n - w + i:
                i -= 1
            if i < 0:
                break
            comb[i] += 1
            for k in range(i + 1, w):
                comb[k] = comb[k - 1] + 1
        return n2, n1, rec


class _Abort(Exception):
    pass


def connected_subsets(sptr, sidx, var_ptr, var_chk, n, m, max_size, thr, prune, root, budget, max_hits):
    share = [list(sidx[sptr[v]:sptr[v + 1]]) for v in range(n)]
    share = [[int(u) for u in row] for row in share]
    checks = [[int(c) for c in var_chk[var_ptr[v]:var_ptr[v + 1]]] for v in range(n)]
    thr = [int(x) for x in thr]
    prune = [int(x) for x in prune]
    closed = [0] * n
    chk_cnt = [0] * m
    members: list[int] = []
    hits: list = []
    state = {"nodes": 0, "exceeded": False}

    def add(w):
        closed[w] += 1
        for u in share[w]:
            closed[u] += 1
        for c in checks[w]:
            chk_cnt[c] += 1

    def remove(w):
        closed[w] -= 1
        for u in share[w]:
            closed[u] -= 1
        for c in checks[w]:
            chk_cnt[c] -= 1

    def extend(deficit, ext, v, restrict):
        state["nodes"] += 1
        if state["nodes"] > budget:
            state["exceeded"] = True
            raise _Abort
        size = len(members)
        if deficit >= thr[size]:
            hits.append((size, deficit, tuple(members)))
            if len(hits) >= max_hits:
                raise _Abort
        if size == max_size or deficit < prune[size]:
            return
        for i, w in enumerate(ext):
            child = ext[i + 1:] + [u for u in share[w] if closed[u] == 0 and (not restrict or u > v)]
            g = sum(1 for c in checks[w] if chk_cnt[c] > 0)
            members.append(w)
            add(w)
            extend(deficit + g, child, v, restrict)
            remove(w)
            members.pop()

    restrict = root < 0
    try:
        for v in (range(n) if restrict else [root]):
            members.append(v)
            add(v)
            extend(0, [u for u in share[v] if not restrict or u > v], v, restrict)
            remove(v)
            members.pop()
    except _Abort:
        pass
    return hits, state["nodes"], state["exceeded"]


def minimal_even_sets(var_ptr, var_chk, chk_ptr, chk_var, n, max_weight, root, budget, max_hits):
    m = len(chk_ptr) - 1
    checks = [[int(c) for c in var_chk[var_ptr[v]:var_ptr[v + 1]]] for v in range(n)]
    cvars = [[int(u) for u in chk_var[chk_ptr[c]:chk_ptr[c + 1]]] for c in range(m)]
    max_deg = max((len(r) for r in checks), default=0)
    odd: set[int] = set()
    inset: set[int] = set()
    blocked = [0] * n
    members: list[int] = []
    hits: list = []
    state = {"nodes": 0, "exceeded": False}
    restrict = root < 0

    def toggle(w):
        for c in checks[w]:
            odd.symmetric_difference_update((c,))

    def dfs(r):
        state["nodes"] += 1
        if state["nodes"] > budget:
            state["exceeded"] = True
            raise _Abort
        if not odd:
            hits.append(tuple(members))
            if len(hits) >= max_hits:
                raise _Abort
            return
        size = len(members)
        if size >= max_weight or len(odd) > max_deg * (max_weight - size):
            return

        def eligible(u):
            return u not in inset and blocked[u] == 0 and (not restrict or u > r)

        best_c, best_k = -1, None
        # tie-break matches the compiled kernel: first minimal in odd-list insertion order
        for c in odd_order():
            k = sum(1 for u in cvars[c] if eligible(u))
            if best_k is None or k < best_k:
                best_c, best_k = c, k
                if k == 0:
                    return
        branched = []
        for u in cvars[best_c]:
            if not eligible(u):
                continue
            members.append(u)
            inset.add(u)
            toggle(u)
            order_toggle(u)
            try:
                dfs(r)
            finally:
                order_toggle(u)
                toggle(u)
                inset.discard(u)
                members.pop()
            blocked[u] += 1
            branched.append(u)
        for u in branched:
            blocked[u] -= 1

    # the odd-check list is kept in the same swap-remove order as the kernel
    order: list[int] = []
    pos: dict[int, int] = {}

    def order_toggle(w):
        for c in checks[w]:
            if c in pos:
                p = pos.pop(c)
                last = order.pop()
                if last != c:
                    order[p] = last
                    pos[last] = p
            else:
                pos[c] = len(order)
                order.append(c)

    def odd_order():
        return list(order)

    try:
        for v in (range(n) if restrict else [root]):
            members.append(v)
            inset.add(v)
            toggle(v)
            order_toggle(v)
            try:
                dfs(v)
            finally:
                order_toggle(v)
                toggle(v)
                inset.discard(v)
                members.pop()
    except _Abort:
        pass
    return hits, state["nodes"], state["exceeded"]

# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled search kernels; see ``_pykernels`` for the reference twin."""

from libc.stdlib cimport malloc, free

BACKEND = "cython"


cdef int* _ints(seq, Py_ssize_t n) except NULL:
    cdef int* buf = <int*> malloc((n if n > 0 else 1) * sizeof(int))
    cdef Py_ssize_t i
    if buf == NULL:
        raise MemoryError()
    for i in range(n):
        buf[i] = seq[i]
    return buf


def associativity_violations(int nmor, src, tgt, comp):
    cdef int m = nmor
    cdef int* c = _ints(comp, <Py_ssize_t> m * m)
    cdef int f, g, h, gf, hg
    out = []
    try:
        for f in range(m):
            for g in range(m):
                gf = c[g * m + f]
                if gf < 0:
                    continue
                for h in range(m):
                    hg = c[h * m + g]
                    if hg < 0:
                        continue
                    if c[h * m + gf] != c[hg * m + f]:
                        out.append((h, g, f))
    finally:
        free(c)
    return out


cdef struct FunctorSearch:
    int na, ma, nb, mb
    int* srca
    int* tgta
    int* compb
    int* omap
    int* mmap
    int* opt_start   # per morphism of A, offset into opts
    int* opt_len
    int* opts
    int* chk_start   # per morphism of A, offset into chks (triples)
    int* chk_len
    int* chks


cdef void _functor_rec(FunctorSearch* s, int i, list results, tuple omap_t):
    cdef int k, j, g, f, gf, ok, base
    if i == s.ma:
        results.append((omap_t, tuple([s.mmap[k] for k in range(s.ma)])))
        return
    for k in range(s.opt_len[i]):
        j = s.opts[s.opt_start[i] + k]
        s.mmap[i] = j
        ok = 1
        for base in range(s.chk_start[i], s.chk_start[i] + 3 * s.chk_len[i], 3):
            g = s.chks[base]
            f = s.chks[base + 1]
            gf = s.chks[base + 2]
            if s.compb[s.mmap[g] * s.mb + s.mmap[f]] != s.mmap[gf]:
                ok = 0
                break
        if ok:
            _functor_rec(s, i + 1, results, omap_t)
    s.mmap[i] = -1


def enumerate_functors(A, B):
    na, ma, srca, tgta, ida, compa = A
    nb, mb, srcb, tgtb, idb, compb = B
    if na == 0:
        return [((), ())]
    if nb == 0:
        return []
    cdef FunctorSearch s
    cdef int i, j, g, f, gf, o, sa, ta, pos, carry
    s.na = na; s.ma = ma; s.nb = nb; s.mb = mb
    s.srca = _ints(srca, ma)
    s.tgta = _ints(tgta, ma)
    s.compb = _ints(compb, <Py_ssize_t> mb * mb)
    cdef int* c_srcb = _ints(srcb, mb)
    cdef int* c_tgtb = _ints(tgtb, mb)
    cdef int* c_idb = _ints(idb, nb)
    s.omap = _ints([0] * na, na)
    s.mmap = _ints([-1] * ma, ma)
    s.opt_start = _ints([0] * ma, ma)
    s.opt_len = _ints([0] * ma, ma)
    s.opts = <int*> malloc((ma * mb if ma * mb > 0 else 1) * sizeof(int))
    is_id = [-1] * ma
    for o in range(na):
        is_id[ida[o]] = o
    cdef int* c_isid = _ints(is_id, ma)
    # checks grouped by largest index
    groups = [[] for _ in range(ma)]
    for g in range(ma):
        for f in range(ma):
            gf = compa[g * ma + f]
            if gf >= 0:
                groups[max(g, f, gf)].append((g, f, gf))
    flat = []
    starts = []
    lens = []
    for i in range(ma):
        starts.append(len(flat))
        lens.append(len(groups[i]))
        for t in groups[i]:
            flat.extend(t)
    s.chk_start = _ints(starts, ma)
    s.chk_len = _ints(lens, ma)
    s.chks = _ints(flat, len(flat))
    results = []
    try:
        while True:
            pos = 0
            for i in range(ma):
                s.opt_start[i] = pos
                if c_isid[i] >= 0:
                    s.opts[pos] = c_idb[s.omap[c_isid[i]]]
                    pos += 1
                else:
                    sa = s.omap[s.srca[i]]
                    ta = s.omap[s.tgta[i]]
                    for j in range(mb):
                        if c_srcb[j] == sa and c_tgtb[j] == ta:
                            s.opts[pos] = j
                            pos += 1
                s.opt_len[i] = pos - s.opt_start[i]
            _functor_rec(&s, 0, results, tuple([s.omap[o] for o in range(na)]))
            # next object map, last coordinate fastest
            o = na - 1
            carry = 1
            while o >= 0 and carry:
                s.omap[o] += 1
                if s.omap[o] == nb:
                    s.omap[o] = 0
                    o -= 1
                else:
                    carry = 0
            if carry:
                break
    finally:
        free(s.srca); free(s.tgta); free(s.compb); free(c_srcb); free(c_tgtb)
        free(c_idb); free(s.omap); free(s.mmap); free(s.opt_start); free(s.opt_len)
        free(s.opts); free(c_isid); free(s.chk_start); free(s.chk_len); free(s.chks)
    return results


cdef struct LiftSearch:
    int na, ma, nb, mb, nk
    int* tgta
    int* compa
    int* srcb
    int* tgtb
    int* compb
    int* omap
    int* L
    int* key_a
    int* key_u
    int* cand_start
    int* cand_len
    int* cands


cdef int _consistent(LiftSearch* s, int a, int u) nogil:
    cdef int mb = s.mb, ma = s.ma
    cdef int w = s.L[a * mb + u]
    cdef int a2 = s.tgta[w]
    cdef int v, x, y, z, b, t, a3
    for v in range(mb):
        if s.srcb[v] != s.tgtb[u]:
            continue
        x = s.L[a2 * mb + v]
        y = s.L[a * mb + s.compb[v * mb + u]]
        if x >= 0 and y >= 0 and s.compa[x * ma + w] != y:
            return 0
    v = u
    for b in range(s.na):
        for t in range(mb):
            if s.srcb[t] != s.omap[b] or s.tgtb[t] != s.srcb[v]:
                continue
            x = s.L[b * mb + t]
            if x < 0 or s.tgta[x] != a:
                continue
            y = s.L[b * mb + s.compb[v * mb + t]]
            if y >= 0 and s.compa[w * ma + x] != y:
                return 0
    for t in range(mb):
        if s.srcb[t] != s.omap[a]:
            continue
        x = s.L[a * mb + t]
        if x < 0:
            continue
        a3 = s.tgta[x]
        for v in range(mb):
            if s.srcb[v] == s.tgtb[t] and s.compb[v * mb + t] == u:
                z = s.L[a3 * mb + v]
                if z >= 0 and s.compa[z * ma + x] != w:
                    return 0
    return 1


cdef void _lift_rec(LiftSearch* s, int k, list results):
    cdef int a, u, i, w, n
    if k == s.nk:
        n = s.na * s.mb
        results.append(tuple([s.L[i] for i in range(n)]))
        return
    a = s.key_a[k]
    u = s.key_u[k]
    for i in range(s.cand_len[k]):
        w = s.cands[s.cand_start[k] + i]
        s.L[a * s.mb + u] = w
        if _consistent(s, a, u):
            _lift_rec(s, k + 1, results)
    s.L[a * s.mb + u] = -1


def enumerate_lifts(A, B, omap, mmap):
    na, ma, srca, tgta, ida, compa = A
    nb, mb, srcb, tgtb, idb, compb = B
    key_a = []
    key_u = []
    starts = []
    lens = []
    flat = []
    for a in range(na):
        for u in range(mb):
            if srcb[u] != omap[a]:
                continue
            key_a.append(a)
            key_u.append(u)
            starts.append(len(flat))
            if u == idb[omap[a]]:
                opts = [ida[a]]
            else:
                opts = [w for w in range(ma) if srca[w] == a and mmap[w] == u]
            lens.append(len(opts))
            flat.extend(opts)
    cdef LiftSearch s
    s.na = na; s.ma = ma; s.nb = nb; s.mb = mb; s.nk = len(key_a)
    s.tgta = _ints(tgta, ma)
    s.compa = _ints(compa, <Py_ssize_t> ma * ma)
    s.srcb = _ints(srcb, mb)
    s.tgtb = _ints(tgtb, mb)
    s.compb = _ints(compb, <Py_ssize_t> mb * mb)
    s.omap = _ints(omap, na)
    s.L = _ints([-1] * (na * mb), na * mb)
    s.key_a = _ints(key_a, s.nk)
    s.key_u = _ints(key_u, s.nk)
    s.cand_start = _ints(starts, s.nk)
    s.cand_len = _ints(lens, s.nk)
    s.cands = _ints(flat, len(flat))
    results = []
    try:
        _lift_rec(&s, 0, results)
    finally:
        free(s.tgta); free(s.compa); free(s.srcb); free(s.tgtb); free(s.compb)
        free(s.omap); free(s.L); free(s.key_a); free(s.key_u); free(s.cand_start)
        free(s.cand_len); free(s.cands)
    return results

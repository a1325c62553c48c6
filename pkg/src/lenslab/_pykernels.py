"""Pure-Python search kernels.

Every function here has an identical twin in ``_kernels.pyx``; both must
return the same values in the same order.  A category is passed as the
tuple ``(nobj, nmor, src, tgt, ident, comp)`` of integer sequences, with
``comp[g * nmor + f]`` the index of ``g . f`` or ``-1`` when the pair is
not composable.
"""

from __future__ import annotations

from itertools import product

BACKEND = "python"


def associativity_violations(nmor, src, tgt, comp):
    """All composable triples ``(h, g, f)`` with ``h.(g.f) != (h.g).f``."""
    m = nmor
    out = []
    for f in range(m):
        for g in range(m):
            gf = comp[g * m + f]
            if gf < 0:
                continue
            for h in range(m):
                hg = comp[h * m + g]
                if hg < 0:
                    continue
                if comp[h * m + gf] != comp[hg * m + f]:
                    out.append((h, g, f))
    return out


def _pair_checks(nmor, comp):
    # For each morphism index i, the composable triples (g, f, gf) whose
    # largest index is i: they become checkable once i is assigned.
    checks = [[] for _ in range(nmor)]
    for g in range(nmor):
        for f in range(nmor):
            gf = comp[g * nmor + f]
            if gf >= 0:
                checks[max(g, f, gf)].append((g, f, gf))
    return checks


def enumerate_functors(A, B):
    """Every functor A -> B as ``(object_map, morphism_map)``, lexicographic."""
    na, ma, srca, tgta, ida, compa = A
    nb, mb, srcb, tgtb, idb, compb = B
    if na == 0:
        return [((), ())]
    if nb == 0:
        return []
    checks = _pair_checks(ma, compa)
    identity_of = {ida[o]: o for o in range(na)}
    results = []
    mmap = [-1] * ma
    for omap in product(range(nb), repeat=na):
        options = []
        for i in range(ma):
            if i in identity_of:
                options.append((idb[omap[identity_of[i]]],))
            else:
                s, t = omap[srca[i]], omap[tgta[i]]
                options.append(tuple(j for j in range(mb) if srcb[j] == s and tgtb[j] == t))

        def rec(i):
            if i == ma:
                results.append((omap, tuple(mmap)))
                return
            for j in options[i]:
                mmap[i] = j
                ok = True
                for g, f, gf in checks[i]:
                    if compb[mmap[g] * mb + mmap[f]] != mmap[gf]:
                        ok = False
                        break
                if ok:
                    rec(i + 1)
            mmap[i] = -1

        rec(0)
    return results


def enumerate_lifts(A, B, omap, mmap):
    """Every lift table making ``(omap, mmap)`` a lens, lexicographic.

    Tables are flat tuples indexed ``a * nmor(B) + u``; entries where
    ``src u != omap[a]`` hold ``-1``.
    """
    na, ma, srca, tgta, ida, compa = A
    nb, mb, srcb, tgtb, idb, compb = B
    keys = []
    cands = []
    for a in range(na):
        for u in range(mb):
            if srcb[u] != omap[a]:
                continue
            keys.append((a, u))
            if u == idb[omap[a]]:
                cands.append((ida[a],))
            else:
                cands.append(tuple(w for w in range(ma) if srca[w] == a and mmap[w] == u))
    L = [-1] * (na * mb)

    def consistent(a, u):
        w = L[a * mb + u]
        # (a, u) as the first factor
        a2 = tgta[w]
        for v in range(mb):
            if srcb[v] != tgtb[u]:
                continue
            x = L[a2 * mb + v]
            y = L[a * mb + compb[v * mb + u]]
            if x >= 0 and y >= 0 and compa[x * ma + w] != y:
                return False
        # (a, u) as the second factor: here a plays a2, u plays v
        v = u
        for b in range(na):
            for t in range(mb):
                if srcb[t] != omap[b] or tgtb[t] != srcb[v]:
                    continue
                x = L[b * mb + t]
                if x < 0 or tgta[x] != a:
                    continue
                y = L[b * mb + compb[v * mb + t]]
                if y >= 0 and compa[w * ma + x] != y:
                    return False
        # (a, u) as the composite
        for t in range(mb):
            if srcb[t] != omap[a]:
                continue
            x = L[a * mb + t]
            if x < 0:
                continue
            a3 = tgta[x]
            for v in range(mb):
                if srcb[v] == tgtb[t] and compb[v * mb + t] == u:
                    z = L[a3 * mb + v]
                    if z >= 0 and compa[z * ma + x] != w:
                        return False
        return True

    results = []
    nk = len(keys)

    def rec(k):
        if k == nk:
            results.append(tuple(L))
            return
        a, u = keys[k]
        for w in cands[k]:
            L[a * mb + u] = w
            if consistent(a, u):
                rec(k + 1)
        L[a * mb + u] = -1

    rec(0)
    return results

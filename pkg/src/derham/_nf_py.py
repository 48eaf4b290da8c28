"""Pure-Python normal form kernel.

Terms are ``(exponents, positions)`` tuples; reduction always rewrites the
largest remaining term first, tracked with a heap keyed by the negated
term order.
"""
import heapq


def _heap_key(t):
    m, S = t
    return (-sum(m),) + m + tuple(-s for s in reversed(S))


def reduce_terms(f, index):
    work = dict(f)
    heap = [(_heap_key(t), t) for t in work]
    heapq.heapify(heap)
    out = {}
    while heap:
        t = heapq.heappop(heap)[1]
        c = work.pop(t, None)
        if c is None:
            continue
        m, S = t
        tail = None
        for lm, g in index.get(S, ()):
            for x, y in zip(lm, m):
                if x > y:
                    break
            else:
                tail = g
                shift = tuple(a - b for a, b in zip(m, lm))
                break
        if tail is None:
            out[t] = c
            continue
        for (gm, gS), gc in tail:
            nt = (tuple(a + b for a, b in zip(gm, shift)), gS)
            v = work.get(nt)
            if v is None:
                work[nt] = -c * gc
                heapq.heappush(heap, (_heap_key(nt), nt))
            else:
                v -= c * gc
                if v:
                    work[nt] = v
                else:
                    del work[nt]
    return out

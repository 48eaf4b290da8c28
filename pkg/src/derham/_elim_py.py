"""Pure-Python elimination kernel: sparse integer rows as ``{col: int}`` dicts."""
from math import gcd


def primitive(row):
    """Divide out the content and make the leading (smallest column) entry positive."""
    g = 0
    for x in row.values():
        g = gcd(g, x)
        if g == 1:
            break
    lead = row[min(row)]
    if lead < 0:
        g = -g
    if g != 1:
        row = {c: x // g for c, x in row.items()}
    return row


def eliminate(row, piv, col):
    """``a*row - b*piv`` with the entry at ``col`` cancelled; result is primitive or empty."""
    a = piv[col]
    b = row[col]
    g = gcd(a, b)
    a //= g
    b //= g
    if a == 1:
        out = dict(row)
    else:
        out = {c: a * x for c, x in row.items()}
    for c, y in piv.items():
        x = out.get(c, 0) - b * y
        if x:
            out[c] = x
        else:
            out.pop(c, None)
    if not out:
        return out
    return primitive(out)


def reduce_against(row, pivots):
    """Clear every pivot column of ``row`` using reduced pivot rows ``{col: prow}``."""
    hits = [c for c in row if c in pivots]
    for c in hits:
        if c in row:
            row = eliminate(row, pivots[c], c)
            if not row:
                break
    return row

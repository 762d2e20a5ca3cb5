"""Pure-Python monomial kernel.

A monomial key is a tuple of (node, spectral, exponent) triples, sorted by
(node, spectral), with no zero exponents.  These three functions are the
hot path of every character computation; the compiled twin in
``_speedups.pyx`` implements the same contract.
"""

IMPL = "pure"


def kmerge(a, b):
    """Sum of two exponent maps given as canonical triple tuples."""
    return kmerge_scaled(a, b, 1)


def kmerge_scaled(a, b, c):
    """a + c*b over canonical triple tuples."""
    if c == 0 or not b:
        return a
    if not a:
        if c == 1:
            return b
        return tuple((i, l, c * e) for (i, l, e) in b)
    out = []
    na, nb = len(a), len(b)
    ia = ib = 0
    while ia < na and ib < nb:
        ta, tb = a[ia], b[ib]
        ka, kb = (ta[0], ta[1]), (tb[0], tb[1])
        if ka < kb:
            out.append(ta)
            ia += 1
        elif kb < ka:
            out.append((tb[0], tb[1], c * tb[2]))
            ib += 1
        else:
            e = ta[2] + c * tb[2]
            if e:
                out.append((ta[0], ta[1], e))
            ia += 1
            ib += 1
    if ia < na:
        out.extend(a[ia:])
    while ib < nb:
        tb = b[ib]
        out.append((tb[0], tb[1], c * tb[2]))
        ib += 1
    return tuple(out)


def kscale(a, c):
    """c*a; an empty tuple for c == 0."""
    if c == 1:
        return a
    if c == 0:
        return ()
    return tuple((i, l, c * e) for (i, l, e) in a)

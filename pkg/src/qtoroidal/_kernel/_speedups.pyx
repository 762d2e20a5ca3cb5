# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled twin of the pure-Python monomial kernel.

Same contract as ``pure.py``: canonical tuples of (node, spectral,
exponent) triples sorted by (node, spectral), no zero exponents.  Falls
back to the pure implementation on integer overflow.
"""

from . import pure as _pure

IMPL = "cython"


def kmerge(tuple a, tuple b):
    return kmerge_scaled(a, b, 1)


def kmerge_scaled(tuple a, tuple b, c):
    cdef Py_ssize_t na, nb, ia, ib
    cdef long long i1, l1, e1, i2, l2, e2, cc, e
    if c == 0 or not b:
        return a
    try:
        cc = c
        if not a:
            if cc == 1:
                return b
            return tuple((t[0], t[1], cc * t[2]) for t in b)
        na = len(a)
        nb = len(b)
        ia = 0
        ib = 0
        out = []
        while ia < na and ib < nb:
            ta = <tuple>a[ia]
            tb = <tuple>b[ib]
            i1 = ta[0]; l1 = ta[1]
            i2 = tb[0]; l2 = tb[1]
            if i1 < i2 or (i1 == i2 and l1 < l2):
                out.append(ta)
                ia += 1
            elif i2 < i1 or (i2 == i1 and l2 < l1):
                e2 = tb[2]
                out.append((i2, l2, cc * e2))
                ib += 1
            else:
                e1 = ta[2]; e2 = tb[2]
                e = e1 + cc * e2
                if e != 0:
                    out.append((i1, l1, e))
                ia += 1
                ib += 1
        while ia < na:
            out.append(a[ia])
            ia += 1
        while ib < nb:
            tb = <tuple>b[ib]
            e2 = tb[2]
            out.append((tb[0], tb[1], cc * e2))
            ib += 1
        return tuple(out)
    except OverflowError:
        return _pure.kmerge_scaled(a, b, c)


def kscale(tuple a, c):
    cdef long long cc, e
    if c == 1:
        return a
    if c == 0:
        return ()
    try:
        cc = c
        return tuple((t[0], t[1], cc * (<long long>t[2])) for t in a)
    except OverflowError:
        return _pure.kscale(a, c)

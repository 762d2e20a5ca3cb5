"""Stabilized-tableau character formula for the type-A cycle.

A tableau has k columns and rows indexed by nonpositive integers; rows
weakly increase, columns strictly increase, and far below everything
stabilizes to T[i][j] = i.  Only deviating boxes are stored.  The infinite
ground product of each column telescopes to a single variable, so the
monomial of a tableau is the telescoped ground part times finitely many
box ratios; that collapse is a tested invariant, not an assumption.
"""

from __future__ import annotations

from .cartan import cyclic_a
from .errors import InputError
from .monomials import YMonomial, mono_format
from .qchar import kr_qchar


class StabTableau:
    """Width-k stabilized tableau, stored through its deviating boxes."""

    __slots__ = ("width", "deviations")

    def __init__(self, width, deviations):
        self.width = width
        self.deviations = tuple(sorted(
            ((int(i), int(j)), int(v)) for (i, j), v in dict(deviations).items()
            if v != i))

    @property
    def excess(self):
        return sum(v - i for (i, _), v in self.deviations)

    def entry(self, i, j):
        for (ii, jj), v in self.deviations:
            if (ii, jj) == (i, j):
                return v
        return i

    def __eq__(self, other):
        if not isinstance(other, StabTableau):
            return NotImplemented
        return (self.width, self.deviations) == (other.width,
                                                 other.deviations)

    def __hash__(self):
        return hash((self.width, self.deviations))

    def __repr__(self):
        return "StabTableau(k=%d, %r)" % (self.width, list(self.deviations))


def enumerate_tableaux(k, max_excess):
    """All width-k tableaux with excess at most max_excess, each once.

    Works on the deviation profile d[i][j] = T[i][j] - i, which is
    nonnegative, weakly increasing along rows and weakly increasing up
    each column; any deviation in row -m forces at least m+1 excess, so
    rows below -max_excess are identically zero.
    """
    if k < 1 or max_excess < 0:
        raise InputError("need k >= 1 and max_excess >= 0")
    results = []

    def row_vectors(prev, budget):
        # weakly increasing vectors v with v[j] >= prev[j], sum(v) <= budget
        out = []

        def go(pos, lower, left, cur):
            if pos == k:
                out.append(tuple(cur))
                return
            d = max(prev[pos], lower)
            while d <= left:
                go(pos + 1, d, left - d, cur + [d])
                d += 1

        go(0, 0, budget, [])
        return out

    def rec(row, prev, used, acc):
        if row > 0:
            results.append(StabTableau(
                k, {(i, j): i + d for (i, j, d) in acc}))
            return
        for vec in row_vectors(prev, max_excess - used):
            nacc = acc + [(row, j + 1, vec[j]) for j in range(k) if vec[j]]
            rec(row + 1, vec, used + sum(vec), nacc)

    rec(-max_excess, tuple([0] * k), 0, [])
    return results


def _box_factors(value, base, n):
    """Exponent contributions of one box symbol at spectral base q^base."""
    mod = n + 1
    return (((value % mod, base + value - 1), 1),
            (((value - 1) % mod, base + value), -1))


def tableau_monomial(T, n, l, shift=0):
    """Monomial of a tableau over the (n+1)-node cycle with base q^l.

    Ground columns telescope to Y[0, l+2j-1]; each deviating box then
    multiplies by the ratio of its box symbol to the ground symbol at the
    same position.  The node rotation by ``shift`` is applied last.
    """
    if n < 2:
        raise InputError("the cycle needs n >= 2")
    mod = n + 1
    acc = {}

    def bump(key, e):
        acc[key] = acc.get(key, 0) + e
        if not acc[key]:
            del acc[key]

    for j in range(1, T.width + 1):
        bump((0, l + 2 * j - 1), 1)
    for (i, j), v in T.deviations:
        base = l + 2 * (j - i)
        for key, e in _box_factors(v, base, n):
            bump(key, e)
        for key, e in _box_factors(i, base, n):
            bump(key, -e)
    m = YMonomial(acc)
    if shift:
        m = m.shift_nodes(shift, mod)
    return m


def tableau_monomial_truncated(T, n, l, M, shift=0):
    """Explicit product of the box symbols over rows -M..0 only.

    Used to certify the telescoping: once M exceeds the deviation depth
    this equals tableau_monomial(T) times the dangling inverse factors
    Y[(-M-1) mod (n+1), l+2j+M+1]^-1 per column j.
    """
    mod = n + 1
    acc = {}

    def bump(key, e):
        acc[key] = acc.get(key, 0) + e
        if not acc[key]:
            del acc[key]

    for j in range(1, T.width + 1):
        for i in range(-M, 1):
            v = T.entry(i, j)
            base = l + 2 * (j - i)
            for key, e in _box_factors(v, base, n):
                bump(key, e)
    m = YMonomial(acc)
    if shift:
        m = m.shift_nodes(shift, mod)
    return m


def tableau_char(n, k, shift, l, depth):
    """Multiset of tableau monomials with excess at most ``depth``.

    Returns (terms, excesses): coefficient = number of tableaux landing on
    the monomial, and the common excess of those tableaux.
    """
    terms = {}
    excesses = {}
    for T in enumerate_tableaux(k, depth):
        m = tableau_monomial(T, n, l, shift)
        terms[m] = terms.get(m, 0) + 1
        if m in excesses and excesses[m] != T.excess:
            raise InputError("tableaux of different excess share a "
                             "monomial; the excess bound is unsound here")
        excesses[m] = T.excess
    return terms, excesses


def tableau_qchar_compare(n, k, shift, l, depth):
    """Cross-check the tableau sum against the expansion-engine character.

    The tableau side with base q^l describes the node-``shift`` string
    module at spectral exponent l+1.  Exact multiset agreement at heights
    (= excesses) up to ``depth`` is required; the report carries the first
    mismatch witnesses if any.
    """
    C = cyclic_a(n + 1)
    terms, excesses = tableau_char(n, k, shift, l, depth)
    kr = kr_qchar(C, shift % (n + 1), k, l + 1, depth)
    mismatches = []
    for m in sorted(set(terms) | set(kr.terms),
                    key=lambda x: (excesses.get(x, kr.heights.get(x)),
                                   mono_format(x))):
        ta = terms.get(m, 0)
        kc = kr.terms.get(m, 0)
        if ta != kc:
            mismatches.append({"monomial": mono_format(m),
                               "tableaux": ta, "kr": kc})
    holds = not mismatches
    report = {"holds": holds, "n": n, "k": k, "shift": shift,
              "spectral": l, "depth": depth,
              "tableau_count": sum(terms.values()),
              "mismatches": mismatches}
    if not holds:
        report["first_mismatch"] = mismatches[0]
    return report

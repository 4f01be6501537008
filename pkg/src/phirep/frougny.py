"""Assembly of the base-phi conversion automata.

``frougny`` accepts (n, x, y) iff n = [x . y^R]_phi with x, y arbitrary
binary; ``saka`` additionally requires the expansion to be canonical.
``genfrou``/``canfrou`` are the Z[phi] versions over (m, n, x, y) with m, n
in negaFibonacci.

Each automaton is built twice: once by composing the published pipeline of
sub-automata (shift/normalize/last-bit pieces glued by cross-system
converters), and once directly from the two closed-form acceptance
conditions on phi / unit coefficients.  The test suite checks the two
routes are language-equivalent, and both against the greedy oracle.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cache

from .automata import (
    MultiTrackDFA,
    Rel,
    completions,
    count_completions,
    fix_leading_zeros,
    intersect,
    rel,
    rel_and,
    rel_exists,
    rel_or,
    rel_reorder,
    zip_tracks,
)
from .core import (
    BitWord,
    Kind,
    PhiExpansion,
    PhiInt,
    fib,
    negafib_encode,
    negafib_eval,
    zeck_encode,
)
from .primitives import (
    fibadd,
    fibnegfib,
    fibnegfib2,
    linear_relation,
    mixed_relation,
    neg_negative,
    neg_nonnegative,
    negadd,
    no11_on_track,
    no11xy,
)


# ---------------------------------------------------------------------------
# Folding helpers


def fold_tracks(e: PhiExpansion) -> tuple[str, str]:
    """(x, y) tracks of an expansion: left part and reversed right part,
    padded to a common length."""
    x = e.left.digits
    y = e.right.digits[::-1]
    w = max(len(x), len(y))
    return x.rjust(w, "0"), y.rjust(w, "0")


def fold_triple(n: int, e: PhiExpansion) -> list[tuple[int, int, int]]:
    """The (n, x, y) word fed to frougny/saka, all tracks zero-padded."""
    x, y = fold_tracks(e)
    return zip_tracks(zeck_encode(n).digits, x, y)


def fold_quad(m: int, n: int, e: PhiExpansion) -> list[tuple[int, int, int, int]]:
    """The (m, n, x, y) word fed to genfrou/canfrou; m, n in negaFibonacci."""
    x, y = fold_tracks(e)
    return zip_tracks(negafib_encode(m).digits, negafib_encode(n).digits, x, y)


@dataclass(frozen=True)
class DecompositionParts:
    """Coefficients of phi and 1 contributed by the two halves of an
    expansion: left part gives c*phi + d, right part c'*phi + d'."""

    c: int
    d: int
    cp: int
    dp: int

    def value(self) -> PhiInt:
        return PhiInt(self.c + self.cp, self.d + self.dp)


def decompose(e: PhiExpansion) -> DecompositionParts:
    """Evaluate the expansion through shifted Zeckendorf / negaFibonacci
    sums (the alternative to direct power summation)."""
    c = d = 0
    for pos, ch in enumerate(reversed(e.left.digits)):
        if ch == "1":
            c += fib(pos)
            d += fib(pos - 1)
    y = e.right.digits[::-1]
    cp = negafib_eval(y)
    dp = negafib_eval(y + "0")
    return DecompositionParts(c, d, cp, dp)


# ---------------------------------------------------------------------------
# Pipeline sub-automata


@cache
def phipartleft() -> MultiTrackDFA:
    """(x, z): z is the canonical Zeckendorf word of the phi-coefficient
    contributed by a left part x."""
    value = linear_relation(2, fib_terms=((0, 1, -2), (1, -1, 0)))
    return intersect(value, no11_on_track(2, 1))


@cache
def intpartleft() -> MultiTrackDFA:
    """(x, z): z encodes the unit coefficient contributed by a left part."""
    value = linear_relation(2, fib_terms=((0, 1, -3), (1, -1, 0)))
    return intersect(value, no11_on_track(2, 1))


@cache
def phipartright() -> MultiTrackDFA:
    """(y, z): z is the canonical negaFibonacci word of the phi-coefficient
    contributed by a (reversed) right part y."""
    value = linear_relation(2, neg_terms=((0, 1, 0), (1, -1, 0)))
    return intersect(value, no11_on_track(2, 1))


@cache
def intpartright() -> MultiTrackDFA:
    """(y, z): z encodes the unit coefficient contributed by a right part."""
    value = linear_relation(2, neg_terms=((0, 1, 1), (1, -1, 0)))
    return intersect(value, no11_on_track(2, 1))


@cache
def frougny1() -> MultiTrackDFA:
    """(x, y): the phi-coefficients of the two halves cancel."""
    r = rel_and(
        rel(phipartleft(), "x", "t1"),
        rel(phipartright(), "y", "t2"),
        rel(fibnegfib2(), "t1", "t2"),
    )
    return rel_reorder(rel_exists(r, "t1", "t2"), ("x", "y")).dfa


@cache
def frougny2() -> MultiTrackDFA:
    """(n, x, y): the unit coefficients of the two halves sum to n."""
    neg_branch = rel_and(
        rel(neg_negative(), "t2"),
        rel(fibnegfib2(), "x2", "t2"),
        rel(fibadd(), "t1", "n", "x2"),  # t1 = n + x2
    )
    pos_branch = rel_and(
        rel(neg_nonnegative(), "t2"),
        rel(fibnegfib(), "x2", "t2"),
        rel(fibadd(), "n", "t1", "x2"),  # n = t1 + x2
    )
    bridge = rel_exists(rel_or(neg_branch, pos_branch), "x2")
    r = rel_and(
        rel(intpartleft(), "x", "t1"),
        rel(intpartright(), "y", "t2"),
        bridge,
    )
    return rel_reorder(rel_exists(r, "t1", "t2"), ("n", "x", "y")).dfa


@cache
def build_frougny() -> MultiTrackDFA:
    """(n, x, y) with n Zeckendorf-canonical and x, y arbitrary binary;
    accepts iff n = [x . y^R]_phi."""
    r = rel_and(rel(frougny1(), "x", "y"), rel(frougny2(), "n", "x", "y"))
    return fix_leading_zeros(rel_reorder(r, ("n", "x", "y")).dfa)


@cache
def build_frougny_direct() -> MultiTrackDFA:
    """Same language as build_frougny, constructed in one step from the
    closed-form conditions (independent cross-check)."""
    cond1 = mixed_relation(2, fib_terms=((0, 1, -2),), neg_terms=((1, 1, 0),))
    cond2 = mixed_relation(
        3, fib_terms=((0, 1, 0), (1, -1, -3)), neg_terms=((2, -1, 1),)
    )
    r = rel_and(
        rel(cond1, "x", "y"),
        rel(cond2, "n", "x", "y"),
        rel(no11_on_track(1, 0), "n"),
    )
    return fix_leading_zeros(rel_reorder(r, ("n", "x", "y")).dfa)


@cache
def build_saka() -> MultiTrackDFA:
    """The canonical-expansion restriction of frougny."""
    r = rel_and(rel(build_frougny(), "n", "x", "y"), rel(no11xy(), "x", "y"))
    return fix_leading_zeros(rel_reorder(r, ("n", "x", "y")).dfa)


# ---------------------------------------------------------------------------
# Z[phi] versions (m phi + n, with m and n in negaFibonacci)


@cache
def build_genfrou() -> MultiTrackDFA:
    """(m, n, x, y): m phi + n = [x . y^R]_phi, x and y unrestricted."""
    r1 = rel_exists(
        rel_and(rel(intpartleft(), "x", "z"), rel(fibnegfib(), "z", "t")), "z"
    )
    r2 = rel_exists(
        rel_and(r1, rel(intpartright(), "y", "u"), rel(negadd(), "n", "t", "u")),
        "t",
        "u",
    )
    r3 = rel_exists(
        rel_and(rel(phipartleft(), "x", "q"), rel(fibnegfib(), "q", "s")), "q"
    )
    r4 = rel_exists(
        rel_and(r3, rel(phipartright(), "y", "r"), rel(negadd(), "m", "r", "s")),
        "r",
        "s",
    )
    r = rel_and(r2, r4)
    return fix_leading_zeros(rel_reorder(r, ("m", "n", "x", "y")).dfa)


@cache
def build_genfrou_direct() -> MultiTrackDFA:
    """Independent one-step construction of genfrou."""
    gencond1 = intersect(
        mixed_relation(3, fib_terms=((1, 1, -2),), neg_terms=((2, 1, 0), (0, -1, 0))),
        no11_on_track(3, 0),
    )
    gencond2 = intersect(
        mixed_relation(3, fib_terms=((1, 1, -3),), neg_terms=((2, 1, 1), (0, -1, 0))),
        no11_on_track(3, 0),
    )
    r = rel_and(rel(gencond1, "m", "x", "y"), rel(gencond2, "n", "x", "y"))
    return fix_leading_zeros(rel_reorder(r, ("m", "n", "x", "y")).dfa)


@cache
def build_canfrou() -> MultiTrackDFA:
    """The canonical-expansion restriction of genfrou."""
    r = rel_and(rel(build_genfrou(), "m", "n", "x", "y"), rel(no11xy(), "x", "y"))
    return fix_leading_zeros(rel_reorder(r, ("m", "n", "x", "y")).dfa)


# ---------------------------------------------------------------------------
# Convenience lookups


def phi_rep_via_automaton(n: int) -> PhiExpansion:
    """The canonical expansion of n read off the saka automaton."""
    if n < 0:
        raise ValueError("n must be >= 0")
    saka = build_saka()
    word = zeck_encode(n).digits
    length = len(word) + 2
    found = list(completions(saka, {0: word}, length))
    if len(found) != 1:
        raise RuntimeError(f"expected a unique canonical expansion for {n}, got {len(found)}")
    x, y = found[0]
    return PhiExpansion.make(x.lstrip("0"), y[::-1].rstrip("0"))


def saka_unique_count(n: int) -> int:
    """Number of accepted (x, y) completions for (n)_F (should be 1)."""
    saka = build_saka()
    word = zeck_encode(n).digits
    return count_completions(saka, {0: word}, len(word) + 2)

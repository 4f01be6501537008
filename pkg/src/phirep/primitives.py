"""The named building-block automata: shifters, last-bit extractors,
normalizers, cross-system converters, adders, and the predicate inventory
used by the higher layers.

Two construction styles:

* pattern primitives come straight from small regular expressions;
* value primitives (normalizers, converters, adders) are built by
  breadth-first exploration of the exact discrepancy between weighted
  digit sums, tracked in a Fibonacci basis so each read digit updates the
  state by an integer linear map.  States that provably cannot return to
  discrepancy zero are pruned; every such automaton is validated against
  the codecs by exhaustive tests.
"""

from __future__ import annotations

from functools import cache

from .automata import (
    AutomatonError,
    MultiTrackDFA,
    Rel,
    Symbol,
    complement,
    compile_regex,
    fix_leading_zeros,
    intersect,
    minimize,
    rel_and,
    rel_exists,
    rel_reorder,
    symbols_for,
    union,
)
from .core import fib

# how far ahead the pruning scan looks when deciding whether a discrepancy
# can still cancel; far beyond any state that survives trimming
_LOOKAHEAD = 64

_EXPLORE_CAP = 300_000


# ---------------------------------------------------------------------------
# Linear numeration relations


def linear_relation(
    tracks: int,
    fib_terms: tuple[tuple[int, int, int], ...] = (),
    neg_terms: tuple[tuple[int, int, int], ...] = (),
    constant: int = 0,
) -> MultiTrackDFA:
    """Automaton accepting equal-length digit words w_1..w_k with

        sum fib_terms (track, coeff, shift):  coeff * sum_i w_i F(i+2+shift)
      + sum neg_terms (track, coeff, shift):  coeff * sum_i w_i F(-(i+1)-shift)
      + constant  ==  0

    where i counts positions from the right end (i = 0 least significant).
    shift 0 gives the standard Zeckendorf / negaFibonacci value.
    """
    syms = symbols_for(tracks)

    def injections(sym: Symbol) -> tuple[int, int, int, int]:
        ia = ia2 = ib = ib2 = 0
        for track, coeff, shift in fib_terms:
            d = coeff * sym[track]
            ia += d * fib(2 + shift)
            ia2 += d * fib(1 + shift)
        for track, coeff, shift in neg_terms:
            d = coeff * sym[track]
            ib += d * fib(-1 - shift)
            ib2 += d * fib(-shift)
        return ia, ia2, ib, ib2

    injs = [injections(sym) for sym in syms]
    ca = max(abs(j[0]) for j in injs)
    ca2 = max(abs(j[1]) for j in injs)
    cb = max(abs(j[2]) for j in injs)
    cb2 = max(abs(j[3]) for j in injs)

    # For the pruning bound: after s further steps the final discrepancy is
    #   F(s+1) A + F(s) A' + N^s (B, B')[0] + constant + corrections
    # with per-step corrections propagated through the same linear maps;
    # N = [[-1, 1], [1, 0]] is the negaFibonacci basis update.
    cur = (1, 0, 0, 1)
    npow = [(1, 0)]
    for _ in range(_LOOKAHEAD):
        a, b, c, d = cur
        cur = (-a + c, -b + d, a, b)
        npow.append((cur[0], cur[1]))
    corr = [0] * (_LOOKAHEAD + 1)
    run = 0
    for s in range(1, _LOOKAHEAD + 1):
        k = s - 1
        run += ca * fib(k + 1) + ca2 * fib(k) + abs(npow[k][0]) * cb + abs(npow[k][1]) * cb2
        corr[s] = run
    fibs = [fib(s) for s in range(_LOOKAHEAD + 2)]

    def keep(a: int, a2: int, b: int, b2: int) -> bool:
        for s in range(_LOOKAHEAD + 1):
            center = fibs[s + 1] * a + fibs[s] * a2 + npow[s][0] * b + npow[s][1] * b2 + constant
            if abs(center) <= corr[s]:
                return True
        return False

    start = (0, 0, 0, 0)
    index = {start: 0}
    order = [start]
    delta: dict[tuple[int, Symbol], int] = {}
    i = 0
    while i < len(order):
        a, a2, b, b2 = order[i]
        for sym, (ia, ia2, ib, ib2) in zip(syms, injs):
            nxt = (a + a2 + ia, a + ia2, b2 - b + ib, b + ib2)
            j = index.get(nxt)
            if j is None:
                if not keep(*nxt):
                    continue
                j = len(order)
                if j >= _EXPLORE_CAP:
                    raise AutomatonError("linear relation exploration exceeded the state cap")
                index[nxt] = j
                order.append(nxt)
            delta[(i, sym)] = j
        i += 1
    accepting = [i for i, (a, a2, b, b2) in enumerate(order) if a + b + constant == 0]
    return minimize(MultiTrackDFA(tracks, len(order), 0, accepting, delta))


@cache
def parity_split() -> MultiTrackDFA:
    """(y, u, v): u and v are y restricted to even / odd digit positions,
    counted 0-based from the right end.

    [0,0,0] matches both parity slots, so acceptance is insensitive to
    leading zero padding.
    """
    even = "([0,0,0]|[1,1,0])"
    odd = "([0,0,0]|[1,0,1])"
    return compile_regex(f"(()|{even})({odd}{even})*", 3)


def mixed_relation(
    tracks: int,
    fib_terms: tuple[tuple[int, int, int], ...] = (),
    neg_terms: tuple[tuple[int, int, int], ...] = (),
    constant: int = 0,
) -> MultiTrackDFA:
    """Linear relation combining Fibonacci- and negaFibonacci-weighted
    tracks.

    Mixed bases do not admit a finite discrepancy automaton directly (the
    two weight recurrences expand along independent directions), so each
    negaFibonacci track is split by digit-position parity — F(-k) is
    (+/-)F(k) according to the parity of k — which turns the whole
    relation into a pure Fibonacci one over masked helper tracks that are
    then projected away.
    """
    if not neg_terms:
        return linear_relation(tracks, tuple(fib_terms), (), constant)
    names = [f"t{i:02d}" for i in range(tracks)]
    new_fib: list[tuple[str, int, int]] = [(names[tr], c, s) for tr, c, s in fib_terms]
    mask_rels: list[Rel] = []
    masked: dict[int, tuple[str, str]] = {}
    for tr, c, s in neg_terms:
        if tr not in masked:
            u, v = f"u{tr:02d}", f"v{tr:02d}"
            masked[tr] = (u, v)
            mask_rels.append(Rel(parity_split(), (names[tr], u, v)))
        u, v = masked[tr]
        sgn = -1 if s % 2 else 1
        new_fib.append((u, c * sgn, s - 1))
        new_fib.append((v, -c * sgn, s - 1))
    allvars = sorted({v for v, _, _ in new_fib} | {x for r in mask_rels for x in r.vars})
    ft = tuple((allvars.index(v), c, s) for v, c, s in new_fib)
    base = Rel(linear_relation(len(allvars), ft, (), constant), tuple(allvars))
    combined = rel_and(base, *mask_rels)
    helper = [v for pair in masked.values() for v in pair]
    out = rel_exists(combined, *helper)
    out = rel_reorder(out, tuple(names))
    return out.dfa


# ---------------------------------------------------------------------------
# Small shared pattern pieces


@cache
def no11_word() -> MultiTrackDFA:
    """1-track words with no 11 factor."""
    return compile_regex("(0|10)*(()|1)", 1)


@cache
def no11_on_track(tracks: int, track: int) -> MultiTrackDFA:
    """k-track automaton: the given track contains no 11 factor."""
    any0 = "|".join(_pair(tracks, track, 0))
    any1 = "|".join(_pair(tracks, track, 1))
    return compile_regex(f"(({any0})|(({any1})({any0})))*(()|({any1}))", tracks)


def _pair(tracks: int, track: int, digit: int) -> list[str]:
    """All tuple literals whose given track carries the given digit."""
    out = []
    for sym in symbols_for(tracks):
        if sym[track] == digit:
            out.append("[" + ",".join(str(d) for d in sym) + "]")
    return out


def _anysym(tracks: int) -> str:
    return "|".join("[" + ",".join(str(d) for d in sym) + "]" for sym in symbols_for(tracks))


# ---------------------------------------------------------------------------
# Named primitives


@cache
def fibnorm() -> MultiTrackDFA:
    """(x, y): [x]_F = [y]_F with y canonical (no 11)."""
    value = linear_relation(2, fib_terms=((0, 1, 0), (1, -1, 0)))
    return intersect(value, no11_on_track(2, 1))


@cache
def negfibnorm() -> MultiTrackDFA:
    """(x, y): [x]_{-F} = [y]_{-F} with y canonical."""
    value = linear_relation(2, neg_terms=((0, 1, 0), (1, -1, 0)))
    return intersect(value, no11_on_track(2, 1))


@cache
def fibnegfib() -> MultiTrackDFA:
    """(x, y): x = (n)_F, y = (m)_{-F}, accepts iff n = m."""
    value = mixed_relation(2, fib_terms=((0, 1, 0),), neg_terms=((1, -1, 0),))
    return intersect(value, no11_on_track(2, 0), no11_on_track(2, 1))


@cache
def fibnegfib2() -> MultiTrackDFA:
    """(x, y): x = (n)_F, y = (m)_{-F}, accepts iff n = -m."""
    value = mixed_relation(2, fib_terms=((0, 1, 0),), neg_terms=((1, 1, 0),))
    return intersect(value, no11_on_track(2, 0), no11_on_track(2, 1))


@cache
def fibadd() -> MultiTrackDFA:
    """(z, x, y): z = x + y over canonical Zeckendorf words."""
    value = linear_relation(3, fib_terms=((0, 1, 0), (1, -1, 0), (2, -1, 0)))
    return intersect(value, no11_on_track(3, 0), no11_on_track(3, 1), no11_on_track(3, 2))


@cache
def negadd() -> MultiTrackDFA:
    """(z, x, y): z = x + y over canonical negaFibonacci words."""
    value = linear_relation(3, neg_terms=((0, 1, 0), (1, -1, 0), (2, -1, 0)))
    return intersect(value, no11_on_track(3, 0), no11_on_track(3, 1), no11_on_track(3, 2))


@cache
def fibsucc() -> MultiTrackDFA:
    """(m, n): m = n + 1 over canonical Zeckendorf words."""
    value = linear_relation(2, fib_terms=((0, 1, 0), (1, -1, 0)), constant=-1)
    return intersect(value, no11_on_track(2, 0), no11_on_track(2, 1))


@cache
def fiblt() -> MultiTrackDFA:
    """(x, y): x < y over canonical Zeckendorf words (padded lexicographic)."""
    any2 = _anysym(2)
    lt = compile_regex(f"([0,0]|[1,1])*[0,1]({any2})*", 2)
    return intersect(lt, no11_on_track(2, 0), no11_on_track(2, 1))


@cache
def neg_negative() -> MultiTrackDFA:
    """Canonical negaFibonacci words of negative value: stripped length even."""
    pat = compile_regex("0*1((0|1)(0|1))*(0|1)", 1)
    return intersect(pat, no11_word())


@cache
def neg_nonnegative() -> MultiTrackDFA:
    """Canonical negaFibonacci words of value >= 0: zero or odd stripped length."""
    pat = compile_regex("(0*)|(0*1((0|1)(0|1))*)", 1)
    return intersect(pat, no11_word())


@cache
def shiftl() -> MultiTrackDFA:
    """(x, y): y is x shifted left, 0 entering at the right."""
    return compile_regex("([0,0]|[0,1][1,1]*[1,0])*", 2)


@cache
def shiftr() -> MultiTrackDFA:
    """(x, y): y is x shifted right, the least significant digit dropped."""
    return compile_regex("([0,0]|[1,0][1,1]*[0,1])*(()|[1,0][1,1]*)", 2)


@cache
def lstbit1() -> MultiTrackDFA:
    """(x, y): y = 0..0b with b the last bit of x (0 if x is empty)."""
    return compile_regex("()|(([0,0]|[1,0])*([0,0]|[1,1]))", 2)


@cache
def lstbit2() -> MultiTrackDFA:
    """(x, y): y = 0..0b with b the second-to-last bit of x."""
    return compile_regex(
        "()|[0,0]|[1,0]|(([0,0]|[1,0])*(([0,0]([0,0]|[1,0]))|([1,0]([0,1]|[1,1]))))", 2
    )


@cache
def lstbit3() -> MultiTrackDFA:
    """(x, y): y = 0..0b with b the third-to-last bit of x."""
    return compile_regex(
        "()|[0,0]|[1,0]|(([0,0]|[1,0])([0,0]|[1,0]))|"
        "(([0,0]|[1,0])*(([0,0]([0,0]|[1,0])([0,0]|[1,0]))|([1,0]([0,0]|[1,0])([0,1]|[1,1]))))",
        2,
    )


@cache
def bit_value_track() -> MultiTrackDFA:
    """1-track words of the form 0*(0|1): the value is the last digit."""
    return compile_regex("0*(()|1)", 1)


@cache
def has11() -> MultiTrackDFA:
    return compile_regex("(0|1)*11(0|1)*", 1)


@cache
def equal_tracks() -> MultiTrackDFA:
    return compile_regex("([0,0]|[1,1])*", 2)


@cache
def compl_tracks() -> MultiTrackDFA:
    """(x, y): after a common all-zero prefix, y is the bitwise complement."""
    return compile_regex("[0,0]*([0,1]|[1,0])*", 2)


@cache
def isfib() -> MultiTrackDFA:
    return compile_regex("0*10*", 1)


@cache
def evenl() -> MultiTrackDFA:
    """Reversed right parts: zero, or a 1 followed by an odd number of digits
    (even stripped length, stripped word starting with 1)."""
    return compile_regex("(0*)|(0*1(0|1)((0|1)(0|1))*)", 1)


@cache
def suff() -> MultiTrackDFA:
    """Words ending in 1(00)^i 1."""
    return compile_regex("(0|1)*1(00)*1", 1)


@cache
def match1() -> MultiTrackDFA:
    """(x, t): t has a single 1, matching a 1 of x."""
    return compile_regex("([0,0]|[1,0])*[1,1]([0,0]|[1,0])*", 2)


@cache
def onepos() -> MultiTrackDFA:
    """(x, t): t has a single 1 at or to the right of the first 1 of x."""
    return compile_regex("[0,0]*([1,1]|([1,0]([0,0]|[1,0])*([0,1]|[1,1])))([0,0]|[1,0])*", 2)


@cache
def first1match() -> MultiTrackDFA:
    """(x, y): the first 1s of x and y occupy the same position."""
    return compile_regex(f"[0,0]*[1,1]({_anysym(2)})*", 2)


@cache
def sum2() -> MultiTrackDFA:
    """(x, y): the total number of 1s across both tracks is odd."""
    return compile_regex(
        "([0,0]|[1,1])*(([0,1]|[1,0])([0,0]|[1,1])*([0,1]|[1,0])([0,0]|[1,1])*)*"
        "([0,1]|[1,0])([0,0]|[1,1])*",
        2,
    )


@cache
def has_t_ones(t: int) -> MultiTrackDFA:
    """1-track words with exactly t ones."""
    if t < 0:
        raise ValueError("t must be >= 0")
    return compile_regex("0*" + "10*" * t, 1)


@cache
def no11xy() -> MultiTrackDFA:
    """(x, y): the unfolded string x . y^R is canonical: no 11 inside x,
    none inside the right part, and none straddling the point (the final
    pair may not be [1,1])."""
    straddle = compile_regex(f"({_anysym(2)})*[1,1]", 2)
    return intersect(
        complement(has11_on_track(2, 0)),
        complement(has11_on_track(2, 1)),
        complement(straddle),
    )


@cache
def has11_on_track(tracks: int, track: int) -> MultiTrackDFA:
    anyd = _anysym(tracks)
    one = "|".join(_pair(tracks, track, 1))
    return compile_regex(f"({anyd})*({one})({one})({anyd})*", tracks)


@cache
def knott_cond() -> MultiTrackDFA:
    """(x, y): the expansion x . y^R, trailing zeros stripped, does not end
    in 011.

    y is the reversed right part, so its first-read 1 is the last nonzero
    digit of the expansion; the bad patterns below spell "ends in 011" for
    the cases where the tail sits inside y, straddles the point, or (with y
    all zero) sits inside x.
    """
    y0 = "([0,0]|[1,0])"
    y1 = "([0,1]|[1,1])"
    anyd = f"({_anysym(2)})"
    bad_inside_y = compile_regex(f"{y0}*{y1}{y1}{y0}{anyd}*", 2)
    bad_straddle1 = compile_regex(f"{y0}*{y1}[0,1]", 2)  # tail 11, then x ends 0
    bad_straddle2 = compile_regex(f"{y0}*[0,0][1,1]", 2)  # tail 1, x ends 01
    bad_inside_x = compile_regex(f"{y0}*[0,0][1,0][1,0][0,0]*", 2)
    bad = fix_leading_zeros(union(bad_inside_y, bad_straddle1, bad_straddle2, bad_inside_x))
    return complement(bad)


@cache
def dvl_cond() -> MultiTrackDFA:
    """(x, y): the expansion x . y^R obeys the relaxed-canonical rule that
    11 may appear only as the two digits just left of the point, and then
    only with a 0 just right of the point."""
    no11y = complement(has11_on_track(2, 1))
    no_straddle = complement(compile_regex(f"({_anysym(2)})*[1,1]", 2))
    no11x = complement(has11_on_track(2, 0))
    # x = u11 with u containing no 11 and not ending in 1; final y digit 0
    x0 = "([0,0]|[0,1])"
    x1 = "([1,0]|[1,1])"
    final_pair_11 = compile_regex(f"({x0}|({x1}{x0}))*{x1}[1,0]", 2)
    return intersect(no11y, no_straddle, union(no11x, final_pair_11))


# -- registry ---------------------------------------------------------------

PRIMITIVES = {
    "fibnorm": fibnorm,
    "negfibnorm": negfibnorm,
    "shiftl": shiftl,
    "shiftr": shiftr,
    "lstbit1": lstbit1,
    "lstbit2": lstbit2,
    "lstbit3": lstbit3,
    "fibnegfib": fibnegfib,
    "fibnegfib2": fibnegfib2,
    "fibadd": fibadd,
    "negadd": negadd,
    "fibsucc": fibsucc,
    "fiblt": fiblt,
    "has11": has11,
    "equal": equal_tracks,
    "compl": compl_tracks,
    "isfib": isfib,
    "evenl": evenl,
    "suff": suff,
    "match1": match1,
    "onepos": onepos,
    "first1match": first1match,
    "sum2": sum2,
    "no11xy": no11xy,
    "knott_cond": knott_cond,
    "dvl_cond": dvl_cond,
    "no11": no11_word,
    "neg_negative": neg_negative,
    "neg_nonnegative": neg_nonnegative,
}


def build_primitive(name: str, t: int | None = None) -> MultiTrackDFA:
    """Look up a named primitive; has_t_ones takes the count parameter."""
    key = name.lower()
    if key in ("has_t_ones", "hastones"):
        if t is None:
            raise ValueError("has_t_ones needs the count parameter t")
        return has_t_ones(t)
    try:
        return PRIMITIVES[key]()
    except KeyError:
        raise ValueError(f"unknown primitive {name!r}") from None

"""Theorem-by-theorem reproductions: digit sums, left-part lengths,
individual bits and their Sturmian description, Lucas-representation link,
vertical runs, palindromic families, fixed-weight expansions, the three
alternative expansion counts, and the equal-length set over Z[phi].

Automaton results are always paired with an independent oracle (greedy
expansions, exhaustive enumeration, or exact integer floors).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cache
from math import isqrt

from .automata import (
    DFAO,
    MultiTrackDFA,
    Rel,
    completions,
    compile_regex,
    count_completions,
    fix_leading_zeros,
    intersect,
    is_empty,
    project,
    rel,
    rel_and,
    rel_exists,
    rel_not,
    rel_or,
    rel_rename,
    rel_reorder,
    union,
    zip_tracks,
)
from .core import (
    PhiExpansion,
    PhiInt,
    enumerate_phi_reps,
    fib,
    floor_phi_times,
    lucas,
    lucas_reps,
    phi_canonical,
    sturmian_w,
    zeck_encode,
    zeck_eval,
)
from .frougny import build_canfrou, build_frougny, build_saka, fold_tracks
from .linrep import (
    LinRep,
    count_linrep,
    dfao_minimize,
    dominant_real_root,
    dot,
    linrep_add,
    linrep_minimize,
    linrep_sub,
    linrep_to_dfao,
    mat_add,
    minimal_poly,
    poly_factors,
    simple_cycle_census,
    vec_mat,
    verify_nonneg_paths,
    weighted_from_automaton,
    zero_weight_subautomaton,
)
from .primitives import (
    compl_tracks,
    dvl_cond,
    equal_tracks,
    fibadd,
    fiblt,
    fibsucc,
    first1match,
    has11_on_track,
    has_t_ones,
    isfib,
    knott_cond,
    match1,
    no11_word,
    onepos,
    shiftr,
    sum2,
)


# ---------------------------------------------------------------------------
# cached canonical expansions (the oracle side of most checks)

_EXPANSIONS: dict[int, PhiExpansion] = {}


def canonical_expansion(n: int) -> PhiExpansion:
    e = _EXPANSIONS.get(n)
    if e is None:
        e = phi_canonical(n)
        _EXPANSIONS[n] = e
    return e


def phi_digit(n: int, i: int) -> int:
    """Digit of phi^i in the canonical expansion of n."""
    return canonical_expansion(n).digit(i)


def d0(n: int) -> int:
    return phi_digit(n, 0)


def d1(n: int) -> int:
    return phi_digit(n, 1)


def dm1(n: int) -> int:
    return phi_digit(n, -1)


@dataclass
class SequenceReport:
    name: str
    oeis_id: str | None
    verified_range: tuple[int, int]
    discrepancies: list[tuple] = field(default_factory=list)
    notes: str = ""

    @property
    def ok(self) -> bool:
        return not self.discrepancies


# ---------------------------------------------------------------------------
# digit sums (left, right, total)


@cache
def digit_sums() -> tuple[LinRep, LinRep, LinRep]:
    """Minimized linear representations (s_L, s_R, s)."""
    saka = build_saka()
    countl = rel_exists(
        rel_and(rel(saka, "n", "x", "y"), rel(match1(), "x", "t")), "x", "y"
    )
    sl = linrep_minimize(count_linrep(countl.dfa, [countl.vars.index("t")]))
    countr = rel_exists(
        rel_and(rel(saka, "n", "x", "y"), rel(match1(), "y", "t")), "x", "y"
    )
    sr = linrep_minimize(count_linrep(countr.dfa, [countr.vars.index("t")]))
    s = linrep_minimize(linrep_add(sl, sr))
    return sl, sr, s


def digit_sum_oracle(n: int) -> int:
    e = canonical_expansion(n)
    return e.concat_digits().count("1")


def digit_sum_left_oracle(n: int) -> int:
    return canonical_expansion(n).left.digits.count("1")


def digit_sum_right_oracle(n: int) -> int:
    return canonical_expansion(n).right.digits.count("1")


@cache
def right_sum_shifted() -> LinRep:
    """Minimized representation of n -> s_R(n + 1)."""
    saka = build_saka()
    r = rel_exists(
        rel_and(
            rel(saka, "m", "x", "y"),
            rel(fibsucc(), "m", "n"),  # m = n + 1
            rel(match1(), "y", "t"),
        ),
        "m",
        "x",
        "y",
    )
    return linrep_minimize(count_linrep(r.dfa, [r.vars.index("t")]))


@cache
def right_sum_difference_dfao() -> DFAO:
    """Automaton computing d(n) = s_R(n+1) - s_R(n)."""
    _, sr, _ = digit_sums()
    diff = linrep_minimize(linrep_sub(right_sum_shifted(), sr))
    return linrep_to_dfao(diff)


@cache
def digit_sum_mod2() -> DFAO:
    """Automaton with output s(n) mod 2, read from (n)_F."""
    saka = build_saka()
    odd = rel_exists(
        rel_and(rel(saka, "n", "x", "y"), rel(sum2(), "x", "y")), "x", "y"
    ).dfa
    return _dfa_to_dfao(odd)


def _dfa_to_dfao(a: MultiTrackDFA) -> DFAO:
    """Accept/reject automaton as a total 0/1-output automaton."""
    dead = a.n_states
    delta = dict(a.delta)
    for s in range(a.n_states + 1):
        for sym in a.symbols:
            delta.setdefault((s, sym), dead)
    output = {s: (1 if s in a.accepting else 0) for s in range(a.n_states + 1)}
    return dfao_minimize(DFAO(a.tracks, a.n_states + 1, a.initial, delta, output))


# ---------------------------------------------------------------------------
# Gerdemann's digit-sum inequality


@cache
def gerdemann() -> tuple[bool, MultiTrackDFA]:
    """Certify that Zeckendorf digit sums never exceed base-phi digit sums,
    and return the automaton for the equality set {n : |(n)_F|_1 = |(n)_phi|_1}.

    Transitions (a, b, c) of saka are weighted b + c - a; the claim is that
    every path from the initial state has non-negative weight.
    """
    saka = build_saka()
    wa = weighted_from_automaton(saka, lambda sym: sym[1] + sym[2] - sym[0])
    verdict = verify_nonneg_paths(wa)
    zero_sub = zero_weight_subautomaton(wa)
    zero_set = project(zero_sub, [0])
    return verdict, zero_set


@cache
def gerdemann_cycle_census() -> dict[int, int]:
    """Weight histogram of the simple cycles of the weighted saka graph
    (documentation companion to the shortest-path certificate)."""
    saka = build_saka()
    wa = weighted_from_automaton(saka, lambda sym: sym[1] + sym[2] - sym[0])
    return simple_cycle_census(wa)


# ---------------------------------------------------------------------------
# length of the left part


@cache
def length_left() -> LinRep:
    """Minimized representation of ell(n), the left-part length."""
    saka = build_saka()
    r = rel_exists(
        rel_and(rel(saka, "n", "x", "y"), rel(onepos(), "x", "t")), "x", "y"
    )
    return linrep_minimize(count_linrep(r.dfa, [r.vars.index("t")]))


def length_left_oracle(n: int) -> int:
    return len(canonical_expansion(n).left.digits)


@cache
def length_first_difference() -> DFAO:
    """Automaton for ell(n) - ell(n-1) (value at n = 0 is ell(0) = 0)."""
    saka = build_saka()
    prev = rel_exists(
        rel_and(
            rel(saka, "m", "x", "y"),
            rel(fibsucc(), "n", "m"),  # n = m + 1
            rel(onepos(), "x", "t"),
        ),
        "m",
        "x",
        "y",
    )
    prev_rep = linrep_minimize(count_linrep(prev.dfa, [prev.vars.index("t")]))
    diff = linrep_minimize(linrep_sub(length_left(), prev_rep))
    return linrep_to_dfao(diff)


def length_increment_positions(max_n: int) -> list[int]:
    """All 1 <= n <= max_n with ell(n) = ell(n-1) + 1 (oracle side)."""
    out = []
    prev = length_left_oracle(0)
    for n in range(1, max_n + 1):
        cur = length_left_oracle(n)
        if cur == prev + 1:
            out.append(n)
        prev = cur
    return out


def lucas_increment_positions(max_n: int) -> set[int]:
    """{1} plus Lucas-indexed positions L_{2i} and L_{2i-1} + 1 up to max_n."""
    out = {1}
    i = 1
    while lucas(2 * i) <= max_n or lucas(2 * i - 1) + 1 <= max_n:
        if lucas(2 * i) <= max_n:
            out.add(lucas(2 * i))
        if lucas(2 * i - 1) + 1 <= max_n:
            out.add(lucas(2 * i - 1) + 1)
        i += 1
    return out


# ---------------------------------------------------------------------------
# individual bits, Sturmian words, Lucas link


def bits_vs_sturmian(max_n: int) -> SequenceReport:
    """d_0(n+1) = w(n) for n >= 1 and d_1(n) = w(n+1) for n >= 0."""
    rep = SequenceReport("bits-vs-sturmian", "A221150", (0, max_n))
    for n in range(1, max_n + 1):
        if d0(n + 1) != sturmian_w(n):
            rep.discrepancies.append(("d0", n, d0(n + 1), sturmian_w(n)))
    for n in range(0, max_n + 1):
        if d1(n) != sturmian_w(n + 1):
            rep.discrepancies.append(("d1", n, d1(n), sturmian_w(n + 1)))
    return rep


def lucas_link_check(max_n: int, freq_n: int = 0) -> SequenceReport:
    """d_{-1}(n) = 1 iff n has exactly two Lucas representations; the
    limiting frequency of 1s is 1/(3 phi + 1) ~ 0.17082."""
    rep = SequenceReport("dm1-lucas-link", "A342089", (0, max_n))
    for n in range(0, max_n + 1):
        two = len(lucas_reps(n)) == 2
        if (dm1(n) == 1) != two:
            rep.discrepancies.append((n, dm1(n), two))
    if freq_n:
        ones = sum(dm1(n) for n in range(freq_n))
        freq = ones / freq_n
        gamma = 1 / (3 * ((1 + 5 ** 0.5) / 2) + 1)
        rep.notes = f"frequency over n < {freq_n}: {freq:.5f} (limit {gamma:.5f})"
        if abs(freq - 0.17082) > 0.002:
            rep.discrepancies.append(("frequency", freq))
    return rep


# ---------------------------------------------------------------------------
# vertical runs


def expected_run_length(i: int) -> int:
    """v(i): run length of 1s in digit column i."""
    if i == 0:
        return 1
    if i > 0:
        return lucas(i - 1) + (1 if i % 2 == 0 else -1)
    return lucas(-i)


def vertical_runs(i: int, digit=phi_digit, window: int | None = None) -> set[int]:
    """Lengths of all complete runs of 1s in column i, scanned over a
    window large enough to contain full runs."""
    if window is None:
        window = 4 * lucas(abs(i) + 2)
    lengths = set()
    run = 0
    for n in range(window):
        if digit(n, i) == 1:
            run += 1
        else:
            if run:
                lengths.add(run)
            run = 0
    # a run still open at the window edge is incomplete: ignored
    if not lengths:
        raise ValueError(f"window {window} contained no complete run for column {i}")
    return lengths


@cache
def matchfib() -> Rel:
    """(n, t): t is a power-position indicator (single 1) marking a column
    in which the expansion of n has digit 1."""
    saka = build_saka()
    r = rel_exists(
        rel_and(rel(saka, "n", "x", "y"), rel(isfib(), "t"), rel(match1(), "x", "t")),
        "x",
        "y",
    )
    return r


@cache
def vertical_run_automaton() -> Rel:
    """(len, t): some column marked by t carries a complete vertical run of
    exactly [len]_F ones (columns i >= 1)."""
    mf = matchfib()

    def not_at(var: str) -> Rel:
        return rel_not(rel_rename(mf, n=var), {var: no11_word(), "t": no11_word()})
    inner = rel_exists(
        rel_and(
            rel(fiblt(), "j", "len"),
            rel(fibadd(), "s2", "n", "j"),
            not_at("s2"),
        ),
        "j",
        "s2",
    )
    all_inside = rel_not(inner, {"n": no11_word(), "len": no11_word(), "t": no11_word()})
    body = rel_and(
        rel(fibsucc(), "n", "m1"),  # n = m1 + 1
        not_at("m1"),
        rel(fibadd(), "s1", "n", "len"),
        not_at("s1"),
        all_inside,
    )
    r = rel_exists(body, "n", "m1", "s1")
    positive = Rel(intersect(compile_regex("0*1(0|1)*", 1), no11_word()), ("len",))
    return rel_reorder(rel_and(r, positive), ("len", "t"))


def vertical_runs_via_automaton(i: int, aut: Rel | None = None) -> set[int]:
    """Read the run-length set for column i >= 1 off the automaton."""
    if i < 1:
        raise ValueError("the automaton route covers columns i >= 1")
    if aut is None:
        aut = vertical_run_automaton()
    t_word = "1" + "0" * i
    t_track = aut.vars.index("t")
    width = max(len(t_word), 18)
    out = set()
    for combo in completions(aut.dfa, {t_track: t_word}, width):
        out.add(zeck_eval(combo[0]))
    return out


# ---------------------------------------------------------------------------
# palindromic and antipalindromic families


@cache
def palindrome_sets() -> tuple[MultiTrackDFA, MultiTrackDFA, MultiTrackDFA, MultiTrackDFA]:
    """(palcanon, pal, shevelev, antip) as automata over (n)_F."""
    saka = build_saka()
    frougny = build_frougny()

    def family(base: MultiTrackDFA, cond: MultiTrackDFA) -> MultiTrackDFA:
        r = rel_exists(
            rel_and(rel(base, "n", "x", "y"), rel(cond, "x", "y")), "x", "y"
        )
        return r.dfa

    palcanon = family(saka, equal_tracks())
    pal = family(frougny, equal_tracks())
    shevelev = family(saka, shiftr())
    antip = family(frougny, compl_tracks())
    return palcanon, pal, shevelev, antip


def accepted_numbers(a: MultiTrackDFA, count: int, max_len: int = 24) -> list[int]:
    """The first ``count`` accepted values of a 1-track Zeckendorf-word
    automaton, in increasing numeric order.

    Words up to max_len cover every value below F(max_len + 2), so the
    prefix is complete as long as count values fit in that range.
    """
    seen = set()
    for word in a.accepted_words(max_len):
        digits = "".join(str(s[0]) for s in word)
        if "11" in digits:
            continue
        seen.add(zeck_eval(digits))
    ordered = sorted(seen)
    if len(ordered) < count:
        raise ValueError(f"only {len(ordered)} values below F({max_len + 2})")
    return ordered[:count]


def pal_noncanonical_gap_check() -> bool:
    """The palindromic family gains nothing from x itself containing 11."""
    frougny = build_frougny()
    r = rel_and(
        rel(frougny, "n", "x", "y"),
        rel(equal_tracks(), "x", "y"),
        rel(has11_on_track(1, 0), "x"),
    )
    return is_empty(r.dfa)


# ---------------------------------------------------------------------------
# fixed number of 1s


@cache
def fixed_ones_automaton(t: int) -> MultiTrackDFA:
    """Automaton over (n)_F for {n : the canonical expansion has exactly
    t ones}; mirrors the published range t <= 5."""
    if not 0 <= t <= 5:
        raise ValueError("supported for 0 <= t <= 5")
    saka = build_saka()
    branches = []
    for i in range(t + 1):
        branches.append(
            rel_and(rel(has_t_ones(i), "x"), rel(has_t_ones(t - i), "y"))
        )
    split = branches[0] if len(branches) == 1 else rel_or(*branches)
    r = rel_exists(rel_and(rel(saka, "n", "x", "y"), split), "x", "y")
    return r.dfa


# ---------------------------------------------------------------------------
# Knott / natural / DVL expansions


def knott_filter(e: PhiExpansion) -> bool:
    s = (e.left.digits + e.right.digits).rstrip("0")
    return not ("00" + s).endswith("011")


@cache
def knott_count() -> LinRep:
    """Minimized representation of the Knott-expansion count."""
    frougny = build_frougny()
    r = rel_and(rel(frougny, "n", "x", "y"), rel(knott_cond(), "x", "y"))
    r = rel_reorder(r, ("n", "x", "y"))
    return linrep_minimize(count_linrep(r.dfa, [1, 2]))


@cache
def natural_condition() -> MultiTrackDFA:
    """Right parts of equal stripped length: matching leading 1s on the
    reversed tracks, or both all zero (empty right parts)."""
    return union(first1match(), compile_regex("[0,0]*", 2))


@cache
def natural_count() -> LinRep:
    """Minimized representation of the natural-expansion count."""
    saka = build_saka()
    frougny = build_frougny()
    r = rel_and(
        rel(saka, "n", "w", "x"),
        rel(frougny, "n", "y", "z"),
        rel(natural_condition(), "x", "z"),
    )
    r = rel_exists(r, "w", "x")
    r = rel_reorder(r, ("n", "y", "z"))
    return linrep_minimize(count_linrep(r.dfa, [1, 2]))


def natural_filter_for(n: int):
    """Oracle filter: expansions whose stripped right part has the same
    length as the canonical one."""
    want = len(canonical_expansion(n).right.digits)

    def pred(e: PhiExpansion) -> bool:
        return len(e.right.digits) == want

    return pred


@cache
def dvl_automaton() -> MultiTrackDFA:
    """(n, x, y): x . y^R is the DVL expansion of n (11 allowed only just
    left of the point, and only over a 0 just right of it)."""
    frougny = build_frougny()
    r = rel_and(rel(frougny, "n", "x", "y"), rel(dvl_cond(), "x", "y"))
    return fix_leading_zeros(rel_reorder(r, ("n", "x", "y")).dfa)


def dvl_filter(e: PhiExpansion) -> bool:
    digs = e.left.digits + e.right.digits
    pos11 = [i for i in range(len(digs) - 1) if digs[i] == digs[i + 1] == "1"]
    if not pos11:
        return True
    if len(pos11) > 1:
        return False
    i = pos11[0]
    if len(e.left.digits) >= 2 and i == len(e.left.digits) - 2:
        return e.digit(-1) == 0
    return False


def dvl_expansion(n: int) -> PhiExpansion:
    """The unique DVL expansion of n, read off the automaton."""
    aut = dvl_automaton()
    word = zeck_encode(n).digits
    length = len(word) + 3
    found = list(completions(aut, {0: word}, length))
    if len(found) != 1:
        raise RuntimeError(f"expected a unique DVL expansion for {n}, got {len(found)}")
    x, y = found[0]
    return PhiExpansion.make(x.lstrip("0"), y[::-1].rstrip("0"))


def dvl_digit(n: int, i: int) -> int:
    e = _DVL_CACHE.get(n)
    if e is None:
        e = dvl_expansion(n)
        _DVL_CACHE[n] = e
    return e.digit(i)


_DVL_CACHE: dict[int, PhiExpansion] = {}


def dvl_vertical_runs(i: int, window: int | None = None) -> set[int]:
    return vertical_runs(i, digit=dvl_digit, window=window)


def floor_phi_plus_two(m: int) -> int:
    """floor((phi + 2) m), exactly."""
    return 2 * m + floor_phi_times(m)


@cache
def matchdvl() -> Rel:
    dvl = dvl_automaton()
    return rel_exists(
        rel_and(rel(dvl, "n", "x", "y"), rel(isfib(), "t"), rel(match1(), "x", "t")),
        "x",
        "y",
    )


@cache
def dvl_vertical_run_automaton() -> Rel:
    """DVL analogue of the vertical-run automaton (columns i >= 1)."""
    mf = matchdvl()

    def not_at(var: str) -> Rel:
        return rel_not(rel_rename(mf, n=var), {var: no11_word(), "t": no11_word()})

    inner = rel_exists(
        rel_and(rel(fiblt(), "j", "len"), rel(fibadd(), "s2", "n", "j"), not_at("s2")),
        "j",
        "s2",
    )
    all_inside = rel_not(inner, {"n": no11_word(), "len": no11_word(), "t": no11_word()})
    body = rel_and(
        rel(fibsucc(), "n", "m1"),
        not_at("m1"),
        rel(fibadd(), "s1", "n", "len"),
        not_at("s1"),
        all_inside,
    )
    r = rel_exists(body, "n", "m1", "s1")
    positive = Rel(intersect(compile_regex("0*1(0|1)*", 1), no11_word()), ("len",))
    return rel_reorder(rel_and(r, positive), ("len", "t"))


# ---------------------------------------------------------------------------
# Knott growth constant


ZETA_POLY = [2, -2, -2, 1]  # X^3 - 2X^2 - 2X + 2, low degree first


def kappa_interval_sums(upto: int) -> list[int]:
    """s_kappa(i) = sum of Knott counts over F_i <= n < F_{i+1}, for
    2 <= i <= upto, computed exactly from the linear representation."""
    rep = knott_count()
    g0, g1 = rep.gamma[0], rep.gamma[1]
    gsum = mat_add(g0, g1)
    out = []
    vec = vec_mat(rep.v, g1)
    for i in range(2, upto + 1):
        out.append(int(dot(vec, rep.w)))
        vec = vec_mat(vec, gsum)
    return out


def knott_growth() -> tuple[tuple[Fraction, Fraction], list[tuple[list, int]]]:
    """(interval for rho = zeta / phi, factors of the minimal polynomial of
    gamma(0) + gamma(1) for the minimized Knott representation)."""
    zlo, zhi = dominant_real_root(ZETA_POLY)
    # phi bounds at 10^-15 precision
    den = 10 ** 15
    s = isqrt(5 * den * den)
    phi_lo = Fraction(den + s, 2 * den)
    phi_hi = Fraction(den + s + 1, 2 * den)
    rho = (zlo / phi_hi, zhi / phi_lo)
    rep = knott_count()
    factors = poly_factors(minimal_poly(mat_add(rep.gamma[0], rep.gamma[1])))
    return rho, factors


# ---------------------------------------------------------------------------
# equal-length set over Z[phi]


@cache
def equal_length_set() -> MultiTrackDFA:
    """(m, n) in negaFibonacci such that the canonical expansion of
    m phi + n has left and right parts of equal (positive) length."""
    canfrou = build_canfrou()
    r = rel_exists(
        rel_and(rel(canfrou, "m", "n", "x", "y"), rel(first1match(), "x", "y")),
        "x",
        "y",
    )
    return r.dfa


def equal_length_oracle(z: PhiInt) -> bool:
    e = phi_canonical(z)
    llen = len(e.left.digits)
    rlen = len(e.right.digits)
    return llen == rlen and llen >= 1

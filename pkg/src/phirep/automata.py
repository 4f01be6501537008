"""Multi-track DFA engine: regex compilation, boolean products, projection,
minimization, leading-zero normalization, and a small named-variable layer
for composing relations with existential quantification.

Conventions that keep state counts reproducible:

* symbols are k-tuples over {0, 1}, ordered lexicographically by track;
* transition maps are partial (the dead state is implicit and never counted);
* every public constructor returns a minimized automaton renumbered by
  breadth-first search from the initial state in symbol order.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product as iproduct
from typing import Iterable, Iterator, Sequence

Symbol = tuple[int, ...]

DETERMINIZE_CAP = 10 ** 6


class AutomatonError(Exception):
    pass


def symbols_for(tracks: int) -> list[Symbol]:
    return [tuple(bits) for bits in iproduct((0, 1), repeat=tracks)]


class MultiTrackDFA:
    """Deterministic automaton over k-tuple alphabets, partial transitions.

    Treated as immutable after construction; all operations return fresh
    automata.
    """

    __slots__ = ("tracks", "n_states", "initial", "accepting", "delta", "_symbols")

    def __init__(
        self,
        tracks: int,
        n_states: int,
        initial: int,
        accepting: Iterable[int],
        delta: dict[tuple[int, Symbol], int],
    ):
        self.tracks = tracks
        self.n_states = n_states
        self.initial = initial
        self.accepting = frozenset(accepting)
        self.delta = delta
        self._symbols = symbols_for(tracks)

    # -- basic queries ------------------------------------------------

    @property
    def symbols(self) -> list[Symbol]:
        return self._symbols

    def state_count(self) -> int:
        """Number of states excluding the implicit dead state."""
        return self.n_states

    def step(self, state: int | None, sym: Symbol) -> int | None:
        if state is None:
            return None
        return self.delta.get((state, sym))

    def accepts(self, word) -> bool:
        state: int | None = self.initial
        for sym in coerce_word(word, self.tracks):
            state = self.step(state, sym)
            if state is None:
                return False
        return state in self.accepting

    def accepted_words(self, max_len: int) -> Iterator[tuple[Symbol, ...]]:
        """All accepted words of length <= max_len, shortest first,
        lexicographic within a length."""
        frontier: list[tuple[tuple[Symbol, ...], int]] = [((), self.initial)]
        if self.initial in self.accepting:
            yield ()
        for _ in range(max_len):
            nxt = []
            for word, st in frontier:
                for sym in self._symbols:
                    t = self.delta.get((st, sym))
                    if t is not None:
                        w2 = word + (sym,)
                        if t in self.accepting:
                            yield w2
                        nxt.append((w2, t))
            frontier = nxt

    def walk(self, word) -> int | None:
        state: int | None = self.initial
        for sym in coerce_word(word, self.tracks):
            state = self.step(state, sym)
            if state is None:
                return None
        return state

    def __repr__(self) -> str:
        return f"MultiTrackDFA(tracks={self.tracks}, states={self.n_states}, accepting={len(self.accepting)})"


def coerce_word(word, tracks: int) -> list[Symbol]:
    """Accept "0101" for 1-track automata, tuples of strings (one per
    track, equal length), or an explicit symbol sequence."""
    if isinstance(word, str):
        if tracks != 1:
            raise AutomatonError(f"string word on a {tracks}-track automaton")
        return [(int(c),) for c in word]
    word = list(word)
    if word and isinstance(word[0], str):
        if len(word) != tracks:
            raise AutomatonError(f"expected {tracks} track strings, got {len(word)}")
        lens = {len(w) for w in word}
        if len(lens) > 1:
            raise AutomatonError("track strings must have equal length")
        return [tuple(int(w[i]) for w in word) for i in range(len(word[0]))]
    out = []
    for sym in word:
        t = tuple(sym)
        if len(t) != tracks:
            raise AutomatonError(f"symbol arity {len(t)} != track count {tracks}")
        out.append(t)
    return out


def zip_tracks(*tracks: str) -> list[Symbol]:
    """Pad track strings with leading zeros to equal length and zip them."""
    width = max((len(t) for t in tracks), default=0)
    padded = [t.rjust(width, "0") for t in tracks]
    return [tuple(int(p[i]) for p in padded) for i in range(width)]


# ---------------------------------------------------------------------------
# NFA scaffolding (internal)


@dataclass
class _NFA:
    tracks: int
    n_states: int = 0
    trans: dict[tuple[int, Symbol], set[int]] = field(default_factory=dict)
    eps: dict[int, set[int]] = field(default_factory=dict)
    initial: set[int] = field(default_factory=set)
    accepting: set[int] = field(default_factory=set)

    def new_state(self) -> int:
        self.n_states += 1
        return self.n_states - 1

    def add(self, src: int, sym: Symbol, dst: int) -> None:
        self.trans.setdefault((src, sym), set()).add(dst)

    def add_eps(self, src: int, dst: int) -> None:
        self.eps.setdefault(src, set()).add(dst)

    def eps_closure(self, states: Iterable[int]) -> frozenset[int]:
        seen = set(states)
        stack = list(seen)
        while stack:
            s = stack.pop()
            for t in self.eps.get(s, ()):
                if t not in seen:
                    seen.add(t)
                    stack.append(t)
        return frozenset(seen)


def _determinize(nfa: _NFA) -> MultiTrackDFA:
    syms = symbols_for(nfa.tracks)
    start = nfa.eps_closure(nfa.initial)
    index = {start: 0}
    order = [start]
    delta: dict[tuple[int, Symbol], int] = {}
    i = 0
    while i < len(order):
        cur = order[i]
        for sym in syms:
            nxt = set()
            for s in cur:
                nxt |= nfa.trans.get((s, sym), set())
            if not nxt:
                continue
            closed = nfa.eps_closure(nxt)
            j = index.get(closed)
            if j is None:
                j = len(order)
                if j >= DETERMINIZE_CAP:
                    raise AutomatonError("subset construction exceeded the state cap")
                index[closed] = j
                order.append(closed)
            delta[(i, sym)] = j
        i += 1
    accepting = [i for i, group in enumerate(order) if group & nfa.accepting]
    return MultiTrackDFA(nfa.tracks, len(order), 0, accepting, delta)


# ---------------------------------------------------------------------------
# Trim / canonicalize / minimize


def _reachable(dfa: MultiTrackDFA) -> set[int]:
    seen = {dfa.initial}
    stack = [dfa.initial]
    while stack:
        s = stack.pop()
        for sym in dfa.symbols:
            t = dfa.delta.get((s, sym))
            if t is not None and t not in seen:
                seen.add(t)
                stack.append(t)
    return seen


def _coaccessible(dfa: MultiTrackDFA) -> set[int]:
    rev: dict[int, set[int]] = {}
    for (s, _), t in dfa.delta.items():
        rev.setdefault(t, set()).add(s)
    seen = set(dfa.accepting)
    stack = list(seen)
    while stack:
        s = stack.pop()
        for p in rev.get(s, ()):
            if p not in seen:
                seen.add(p)
                stack.append(p)
    return seen


def trim(dfa: MultiTrackDFA) -> MultiTrackDFA:
    """Drop states that are unreachable or cannot reach acceptance.

    The initial state is always kept so the empty automaton stays valid.
    """
    keep = _reachable(dfa) & _coaccessible(dfa)
    keep.add(dfa.initial)
    return _renumber(dfa, keep)


def _renumber(dfa: MultiTrackDFA, keep: set[int]) -> MultiTrackDFA:
    """BFS renumbering from the initial state in symbol order."""
    index = {dfa.initial: 0}
    order = [dfa.initial]
    i = 0
    while i < len(order):
        s = order[i]
        for sym in dfa.symbols:
            t = dfa.delta.get((s, sym))
            if t is not None and t in keep and t not in index:
                index[t] = len(order)
                order.append(t)
        i += 1
    delta = {}
    for s in order:
        for sym in dfa.symbols:
            t = dfa.delta.get((s, sym))
            if t is not None and t in index:
                delta[(index[s], sym)] = index[t]
    accepting = [index[s] for s in order if s in dfa.accepting]
    return MultiTrackDFA(dfa.tracks, len(order), 0, accepting, delta)


def minimize(dfa: MultiTrackDFA) -> MultiTrackDFA:
    """Hopcroft minimization over the trimmed automaton; the dead class is
    dropped again afterwards, and states are renumbered canonically."""
    dfa = trim(dfa)
    syms = dfa.symbols
    n = dfa.n_states
    dead = n  # implicit dead state, participates in refinement
    total = n + 1

    def tr(s: int, sym: Symbol) -> int:
        if s == dead:
            return dead
        return dfa.delta.get((s, sym), dead)

    acc = set(dfa.accepting)
    nonacc = set(range(total)) - acc
    partition: list[set[int]] = []
    if acc:
        partition.append(acc)
    if nonacc:
        partition.append(nonacc)
    work: set[int] = set(range(len(partition)))

    # predecessor index
    pred: dict[tuple[int, Symbol], set[int]] = {}
    for s in range(total):
        for sym in syms:
            pred.setdefault((tr(s, sym), sym), set()).add(s)

    while work:
        a_idx = work.pop()
        a = frozenset(partition[a_idx])  # snapshot: the block may split below
        for sym in syms:
            x = set()
            for t in a:
                x |= pred.get((t, sym), set())
            if not x:
                continue
            for i in range(len(partition)):
                y = partition[i]
                inter = y & x
                if not inter or len(inter) == len(y):
                    continue
                diff = y - x
                partition[i] = inter
                partition.append(diff)
                j = len(partition) - 1
                if i in work:
                    work.add(j)
                else:
                    work.add(j if len(diff) <= len(inter) else i)
    block_of = {}
    for i, block in enumerate(partition):
        for s in block:
            block_of[s] = i
    dead_block = block_of[dead]
    delta = {}
    accepting = set()
    for i, block in enumerate(partition):
        if i == dead_block:
            continue
        rep = next(iter(block))
        if rep in acc:
            accepting.add(i)
        for sym in syms:
            t = block_of[tr(rep, sym)]
            if t != dead_block:
                delta[(i, sym)] = t
    merged = MultiTrackDFA(dfa.tracks, len(partition), block_of[dfa.initial], accepting, delta)
    return _renumber(merged, set(range(len(partition))) - {dead_block})


# ---------------------------------------------------------------------------
# Boolean products, complement, equivalence


def product(a: MultiTrackDFA, b: MultiTrackDFA, mode: str) -> MultiTrackDFA:
    """Boolean combination of two automata with equal track arity.

    mode is one of "and", "or", "diff"; the result is minimized.
    """
    if a.tracks != b.tracks:
        raise AutomatonError(f"track arity mismatch: {a.tracks} vs {b.tracks}")
    mode = mode.lower()
    if mode not in ("and", "or", "diff"):
        raise AutomatonError(f"unknown product mode {mode!r}")

    def accepts_pair(p, q) -> bool:
        pa = p in a.accepting if p is not None else False
        qa = q in b.accepting if q is not None else False
        if mode == "and":
            return pa and qa
        if mode == "or":
            return pa or qa
        return pa and not qa

    syms = a.symbols
    start = (a.initial, b.initial)
    index = {start: 0}
    order = [start]
    delta = {}
    accepting = set()
    i = 0
    while i < len(order):
        p, q = order[i]
        if accepts_pair(p, q):
            accepting.add(i)
        for sym in syms:
            np = a.delta.get((p, sym)) if p is not None else None
            nq = b.delta.get((q, sym)) if q is not None else None
            if np is None and nq is None:
                continue
            key = (np, nq)
            j = index.get(key)
            if j is None:
                j = len(order)
                index[key] = j
                order.append(key)
            delta[(i, sym)] = j
        i += 1
    return minimize(MultiTrackDFA(a.tracks, len(order), 0, accepting, delta))


def intersect(*automata: MultiTrackDFA) -> MultiTrackDFA:
    out = automata[0]
    for other in automata[1:]:
        out = product(out, other, "and")
    return out


def union(*automata: MultiTrackDFA) -> MultiTrackDFA:
    out = automata[0]
    for other in automata[1:]:
        out = product(out, other, "or")
    return out


def complement(a: MultiTrackDFA) -> MultiTrackDFA:
    """Complement w.r.t. the full tuple alphabet (completing first)."""
    dead = a.n_states
    delta = dict(a.delta)
    for s in range(a.n_states + 1):
        for sym in a.symbols:
            delta.setdefault((s, sym), dead)
    accepting = set(range(a.n_states + 1)) - set(a.accepting)
    return minimize(MultiTrackDFA(a.tracks, a.n_states + 1, a.initial, accepting, delta))


def sigma_star(tracks: int) -> MultiTrackDFA:
    delta = {(0, sym): 0 for sym in symbols_for(tracks)}
    return MultiTrackDFA(tracks, 1, 0, {0}, delta)


def empty_language(tracks: int) -> MultiTrackDFA:
    return MultiTrackDFA(tracks, 1, 0, set(), {})


def equivalent(a: MultiTrackDFA, b: MultiTrackDFA) -> bool:
    """Language equality via breadth-first search over the pair graph
    (independent of minimization)."""
    if a.tracks != b.tracks:
        raise AutomatonError(f"track arity mismatch: {a.tracks} vs {b.tracks}")
    start = (a.initial, b.initial)
    seen = {start}
    stack = [start]
    while stack:
        p, q = stack.pop()
        pa = p in a.accepting if p is not None else False
        qa = q in b.accepting if q is not None else False
        if pa != qa:
            return False
        for sym in a.symbols:
            np = a.delta.get((p, sym)) if p is not None else None
            nq = b.delta.get((q, sym)) if q is not None else None
            if np is None and nq is None:
                continue
            key = (np, nq)
            if key not in seen:
                seen.add(key)
                stack.append(key)
    return True


def is_empty(a: MultiTrackDFA) -> bool:
    return not (_reachable(a) & set(a.accepting))


# ---------------------------------------------------------------------------
# Projection and leading-zero normalization


def project(a: MultiTrackDFA, keep: Sequence[int]) -> MultiTrackDFA:
    """Existentially quantify away the tracks not in ``keep``.

    A kept word w is accepted iff some completion of the dropped tracks
    (with leading zero padding on either side) is accepted by ``a``; the
    result is determinized, zero-normalized and minimized.  Kept tracks
    stay in their original relative order.
    """
    keep = sorted(set(keep))
    if not keep:
        raise AutomatonError("must keep at least one track")
    if any(k < 0 or k >= a.tracks for k in keep):
        raise AutomatonError(f"track index out of range for {a.tracks}-track automaton")
    nfa = _NFA(tracks=len(keep), n_states=a.n_states)
    nfa.initial = {a.initial}
    nfa.accepting = set(a.accepting)
    for (s, sym), t in a.delta.items():
        nfa.add(s, tuple(sym[k] for k in keep), t)
    det = _determinize(nfa)
    return fix_leading_zeros(det)


def fix_leading_zeros(a: MultiTrackDFA) -> MultiTrackDFA:
    """Normalize so membership is invariant under adding or removing
    leading all-zero tuples; the result is 0* . strip(L)."""
    zero = tuple([0] * a.tracks)
    # states reachable from the initial state by all-zero symbols
    closure = {a.initial}
    stack = [a.initial]
    while stack:
        s = stack.pop()
        t = a.delta.get((s, zero))
        if t is not None and t not in closure:
            closure.add(t)
            stack.append(t)
    nfa = _NFA(tracks=a.tracks, n_states=a.n_states + 1)
    iota = a.n_states
    nfa.initial = {iota}
    nfa.accepting = set(a.accepting)
    if closure & a.accepting:
        nfa.accepting.add(iota)
    for (s, sym), t in a.delta.items():
        nfa.add(s, sym, t)
    nfa.add(iota, zero, iota)
    for s in closure:
        for sym in a.symbols:
            if sym == zero:
                continue
            t = a.delta.get((s, sym))
            if t is not None:
                nfa.add(iota, sym, t)
    return minimize(_determinize(nfa))


# ---------------------------------------------------------------------------
# Regular expressions over tuple literals


class RegexError(ValueError):
    pass


def compile_regex(pattern: str, tracks: int = 1) -> MultiTrackDFA:
    """Compile a regular expression over tuple literals to a minimal DFA.

    Literals are single digits for 1-track automata or bracketed tuples
    like [0,1]; operators are |, *, concatenation and grouping; () is the
    empty word.
    """
    parser = _RegexParser(pattern, tracks)
    frag = parser.parse()
    nfa = parser.nfa
    nfa.initial = {frag[0]}
    nfa.accepting = {frag[1]}
    return minimize(_determinize(nfa))


class _RegexParser:
    def __init__(self, pattern: str, tracks: int):
        self.text = pattern
        self.pos = 0
        self.tracks = tracks
        self.nfa = _NFA(tracks=tracks)

    def error(self, msg: str):
        raise RegexError(f"{msg} at position {self.pos} in {self.text!r}")

    def peek(self) -> str | None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1
        return self.text[self.pos] if self.pos < len(self.text) else None

    def parse(self) -> tuple[int, int]:
        frag = self.expr()
        if self.peek() is not None:
            self.error(f"unexpected {self.text[self.pos]!r}")
        return frag

    def expr(self) -> tuple[int, int]:
        frags = [self.term()]
        while self.peek() == "|":
            self.pos += 1
            frags.append(self.term())
        if len(frags) == 1:
            return frags[0]
        s, e = self.nfa.new_state(), self.nfa.new_state()
        for fs, fe in frags:
            self.nfa.add_eps(s, fs)
            self.nfa.add_eps(fe, e)
        return s, e

    def term(self) -> tuple[int, int]:
        frags = []
        while True:
            c = self.peek()
            if c is None or c in "|)":
                break
            frags.append(self.factor())
        if not frags:
            s = self.nfa.new_state()
            return s, s
        cur = frags[0]
        for nxt in frags[1:]:
            self.nfa.add_eps(cur[1], nxt[0])
            cur = (cur[0], nxt[1])
        return cur

    def factor(self) -> tuple[int, int]:
        frag = self.atom()
        while self.peek() == "*":
            self.pos += 1
            s, e = self.nfa.new_state(), self.nfa.new_state()
            self.nfa.add_eps(s, frag[0])
            self.nfa.add_eps(frag[1], e)
            self.nfa.add_eps(s, e)
            self.nfa.add_eps(frag[1], frag[0])
            frag = (s, e)
        return frag

    def atom(self) -> tuple[int, int]:
        c = self.peek()
        if c == "(":
            self.pos += 1
            if self.peek() == ")":
                self.pos += 1
                s = self.nfa.new_state()
                return s, s
            frag = self.expr()
            if self.peek() != ")":
                self.error("expected ')'")
            self.pos += 1
            return frag
        if c == "[":
            return self.literal(self.tuple_literal())
        if c in ("0", "1"):
            self.pos += 1
            if self.tracks != 1:
                self.error(f"bare digit literal on a {self.tracks}-track expression")
            return self.literal((int(c),))
        self.error(f"unexpected {c!r}" if c else "unexpected end of pattern")

    def tuple_literal(self) -> Symbol:
        assert self.text[self.pos] == "["
        end = self.text.find("]", self.pos)
        if end < 0:
            self.error("unterminated tuple literal")
        body = self.text[self.pos + 1 : end]
        self.pos = end + 1
        parts = [p.strip() for p in body.split(",")]
        if len(parts) != self.tracks:
            self.error(f"tuple arity {len(parts)} != track count {self.tracks}")
        try:
            sym = tuple(int(p) for p in parts)
        except ValueError:
            self.error(f"bad tuple literal [{body}]")
        if any(d not in (0, 1) for d in sym):
            self.error(f"digits must be 0/1 in [{body}]")
        return sym

    def literal(self, sym: Symbol) -> tuple[int, int]:
        s, e = self.nfa.new_state(), self.nfa.new_state()
        self.nfa.add(s, sym, e)
        return s, e


# ---------------------------------------------------------------------------
# Section helpers: fix some tracks to concrete (padded) words


def completions(
    dfa: MultiTrackDFA, fixed: dict[int, str], length: int
) -> Iterator[tuple[str, ...]]:
    """All assignments of the free tracks (as digit strings of the given
    length) such that the combined word is accepted; the fixed tracks are
    padded with leading zeros to ``length``.

    Free-track assignments are produced in lexicographic order.
    """
    free = [i for i in range(dfa.tracks) if i not in fixed]
    padded = {}
    for i, w in fixed.items():
        if len(w) > length:
            if set(w[: len(w) - length]) - {"0"}:
                return
            w = w[len(w) - length :]
        padded[i] = w.rjust(length, "0")

    free_syms = [tuple(bits) for bits in iproduct((0, 1), repeat=len(free))]

    # memo[(pos, state)] = tuple of suffix strings over the free tracks
    memo: dict[tuple[int, int], tuple[tuple[str, ...], ...]] = {}

    def rec(pos: int, state: int) -> tuple[tuple[str, ...], ...]:
        if pos == length:
            return ((tuple("" for _ in free),) if state in dfa.accepting else ())
        key = (pos, state)
        hit = memo.get(key)
        if hit is not None:
            return hit
        out = []
        for fs in free_syms:
            sym = [0] * dfa.tracks
            for i, tr in enumerate(free):
                sym[tr] = fs[i]
            for tr, w in padded.items():
                sym[tr] = int(w[pos])
            t = dfa.delta.get((state, tuple(sym)))
            if t is None:
                continue
            for suffix in rec(pos + 1, t):
                out.append(tuple(str(fs[i]) + suffix[i] for i in range(len(free))))
        memo[key] = tuple(out)
        return memo[key]

    yield from rec(0, dfa.initial)


def count_completions(dfa: MultiTrackDFA, fixed: dict[int, str], length: int) -> int:
    """Number of free-track assignments of the given padded length that
    make the word accepted (dynamic programming, no enumeration)."""
    free = [i for i in range(dfa.tracks) if i not in fixed]
    padded = {}
    for i, w in fixed.items():
        if len(w) > length:
            if set(w[: len(w) - length]) - {"0"}:
                return 0
            w = w[len(w) - length :]
        padded[i] = w.rjust(length, "0")
    free_syms = [tuple(bits) for bits in iproduct((0, 1), repeat=len(free))]
    counts = {dfa.initial: 1}
    for pos in range(length):
        nxt: dict[int, int] = {}
        for state, c in counts.items():
            for fs in free_syms:
                sym = [0] * dfa.tracks
                for i, tr in enumerate(free):
                    sym[tr] = fs[i]
                for tr, w in padded.items():
                    sym[tr] = int(w[pos])
                t = dfa.delta.get((state, tuple(sym)))
                if t is not None:
                    nxt[t] = nxt.get(t, 0) + c
        counts = nxt
    return sum(c for s, c in counts.items() if s in dfa.accepting)


# ---------------------------------------------------------------------------
# Named-variable relations (the formula layer)


@dataclass(frozen=True)
class Rel:
    """An automaton whose tracks are named variables, composable with
    conjunction, disjunction, negation and existential quantification."""

    dfa: MultiTrackDFA
    vars: tuple[str, ...]

    def __post_init__(self):
        if len(self.vars) != self.dfa.tracks:
            raise AutomatonError("variable list must match track count")
        if len(set(self.vars)) != len(self.vars):
            raise AutomatonError(f"duplicate variable names in {self.vars}")

    def accepts(self, **assign: str) -> bool:
        if set(assign) != set(self.vars):
            raise AutomatonError(f"assignment must cover exactly {self.vars}")
        return self.dfa.accepts(zip_tracks(*(assign[v] for v in self.vars)))


def rel(dfa: MultiTrackDFA, *vars: str) -> Rel:
    return Rel(dfa, tuple(vars))


def _combine(rels: Sequence[Rel], mode: str) -> Rel:
    allvars = sorted({v for r in rels for v in r.vars})
    positions = [tuple(allvars.index(v) for v in r.vars) for r in rels]
    syms = symbols_for(len(allvars))
    start = tuple(r.dfa.initial for r in rels)
    index = {start: 0}
    order = [start]
    delta = {}
    accepting = set()

    def is_acc(states) -> bool:
        flags = [
            (s in r.dfa.accepting) if s is not None else False
            for s, r in zip(states, rels)
        ]
        return all(flags) if mode == "and" else any(flags)

    i = 0
    while i < len(order):
        states = order[i]
        if is_acc(states):
            accepting.add(i)
        for sym in syms:
            nxt = []
            dead_all = True
            for s, r, pos in zip(states, rels, positions):
                sub = tuple(sym[p] for p in pos)
                t = r.dfa.delta.get((s, sub)) if s is not None else None
                nxt.append(t)
                if t is not None:
                    dead_all = False
            if mode == "and" and any(t is None for t in nxt):
                continue
            if dead_all:
                continue
            key = tuple(nxt)
            j = index.get(key)
            if j is None:
                j = len(order)
                if j >= DETERMINIZE_CAP:
                    raise AutomatonError("relation product exceeded the state cap")
                index[key] = j
                order.append(key)
            delta[(i, sym)] = j
        i += 1
    dfa = minimize(MultiTrackDFA(len(allvars), len(order), 0, accepting, delta))
    return Rel(dfa, tuple(allvars))


def rel_and(*rels: Rel) -> Rel:
    return _combine(rels, "and")


def rel_or(*rels: Rel) -> Rel:
    return _combine(rels, "or")


def rel_not(r: Rel, universe: dict[str, MultiTrackDFA] | None = None) -> Rel:
    """Complement, relativized to per-variable universe languages
    (e.g. canonical Zeckendorf words for number variables)."""
    comp = Rel(complement(r.dfa), r.vars)
    if not universe:
        return comp
    constraints = [comp]
    for v, dom in universe.items():
        if v in r.vars:
            constraints.append(Rel(dom, (v,)))
    return rel_and(*constraints)


def rel_exists(r: Rel, *drop: str) -> Rel:
    for v in drop:
        if v not in r.vars:
            raise AutomatonError(f"cannot project out unknown variable {v!r}")
    keep = [i for i, v in enumerate(r.vars) if v not in drop]
    dfa = project(r.dfa, keep)
    return Rel(dfa, tuple(v for v in r.vars if v not in drop))


def rel_rename(r: Rel, **mapping: str) -> Rel:
    newvars = tuple(mapping.get(v, v) for v in r.vars)
    renamed = Rel(r.dfa, newvars)
    order = tuple(sorted(newvars))
    if order == newvars:
        return renamed
    return rel_reorder(renamed, order)


def rel_reorder(r: Rel, order: Sequence[str]) -> Rel:
    """Permute tracks into the given variable order."""
    if sorted(order) != sorted(r.vars) or len(order) != len(r.vars):
        raise AutomatonError(f"order {order} must be a permutation of {r.vars}")
    perm = [r.vars.index(v) for v in order]
    delta = {}
    for (s, sym), t in r.dfa.delta.items():
        delta[(s, tuple(sym[p] for p in perm))] = t
    dfa = MultiTrackDFA(r.dfa.tracks, r.dfa.n_states, r.dfa.initial, r.dfa.accepting, delta)
    return Rel(dfa, tuple(order))


# ---------------------------------------------------------------------------
# DFA with output (for automatic sequences)


class DFAO:
    """Deterministic automaton with an output attached to every state."""

    __slots__ = ("tracks", "n_states", "initial", "delta", "output")

    def __init__(self, tracks: int, n_states: int, initial: int,
                 delta: dict[tuple[int, Symbol], int], output: dict[int, int]):
        self.tracks = tracks
        self.n_states = n_states
        self.initial = initial
        self.delta = delta
        self.output = output

    def state_count(self) -> int:
        return self.n_states

    def run(self, word) -> int:
        state = self.initial
        for sym in coerce_word(word, self.tracks):
            nxt = self.delta.get((state, sym))
            if nxt is None:
                raise AutomatonError(f"no transition from state {state} on {sym}")
            state = nxt
        return self.output[state]

    def outputs(self) -> set[int]:
        return set(self.output.values())

    def __repr__(self) -> str:
        return f"DFAO(tracks={self.tracks}, states={self.n_states}, outputs={sorted(self.outputs())})"

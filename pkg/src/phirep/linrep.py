"""Weighted counting machinery: linear representations extracted from
automata, exact minimization over the rationals, conversion of
bounded-value representations to output automata, matrix minimal
polynomials with Sturm-sequence root isolation, and the shortest-path
analysis used to certify digit-sum inequalities.

All arithmetic is exact (int / Fraction); floating point never enters a
result.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Sequence

import sympy

from .automata import DFAO, AutomatonError, MultiTrackDFA, Symbol, project, trim

Vector = tuple
Matrix = tuple  # tuple of row tuples


# ---------------------------------------------------------------------------
# small exact linear algebra


def vec_mat(v: Vector, m: Matrix) -> Vector:
    cols = len(m[0]) if m else 0
    return tuple(sum(v[i] * m[i][j] for i in range(len(v))) for j in range(cols))


def mat_vec(m: Matrix, w: Vector) -> Vector:
    return tuple(sum(row[j] * w[j] for j in range(len(w))) for row in m)


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    cols = len(b[0])
    return tuple(
        tuple(sum(a[i][k] * b[k][j] for k in range(len(b))) for j in range(cols))
        for i in range(len(a))
    )


def mat_add(a: Matrix, b: Matrix) -> Matrix:
    return tuple(tuple(x + y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def mat_pow(m: Matrix, k: int) -> Matrix:
    n = len(m)
    out = identity(n)
    base = m
    while k:
        if k & 1:
            out = mat_mul(out, base)
        base = mat_mul(base, base)
        k >>= 1
    return out


def identity(n: int) -> Matrix:
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def dot(a: Vector, b: Vector):
    return sum(x * y for x, y in zip(a, b))


class _Echelon:
    """Row echelon with coordinate bookkeeping: each inserted vector is
    remembered so later vectors can be expressed in terms of the basis.
    Pivot = first nonzero coordinate (lowest index)."""

    def __init__(self, dim: int):
        self.dim = dim
        self.rows: list[tuple[Vector, Vector]] = []  # (reduced row, coords)

    def reduce(self, vec: Vector) -> tuple[Vector, Vector]:
        coords = [Fraction(0)] * len(self.rows)
        v = list(vec)
        for idx, (row, rcoords) in enumerate(self.rows):
            p = next(i for i, x in enumerate(row) if x != 0)
            if v[p] != 0:
                f = Fraction(v[p], 1) / row[p]
                for i in range(self.dim):
                    v[i] -= f * row[i]
                for j, c in enumerate(rcoords):
                    coords[j] += f * c
        return tuple(v), tuple(coords)

    def insert(self, vec: Vector) -> bool:
        """Add vec as a new basis element if independent; True if added."""
        res, coords = self.reduce(vec)
        if all(x == 0 for x in res):
            return False
        k = len(self.rows)
        # the new basis element is vec itself: residue = vec - sum coords*basis
        # so vec = residue + combination; store residue with coordinate e_k
        # adjusted so that reduce() yields coordinates w.r.t. inserted vectors.
        new_coords = tuple(-c for c in coords) + (Fraction(1),)
        self.rows = [(r, c + (Fraction(0),)) for r, c in self.rows]
        self.rows.append((res, new_coords))
        return True

    def coordinates(self, vec: Vector) -> Vector:
        res, coords = self.reduce(vec)
        if any(x != 0 for x in res):
            raise ValueError("vector not in span")
        return coords


# ---------------------------------------------------------------------------
# linear representations


@dataclass(frozen=True)
class LinRep:
    """(v, gamma, w) with f(x) = v gamma(x_1) ... gamma(x_L) w, exact."""

    v: Vector
    gamma: dict[int, Matrix]
    w: Vector

    @property
    def rank(self) -> int:
        return len(self.v)

    def value(self, word) -> int | Fraction:
        """f at a digit word ("10010", iterable of ints, or an int n
        meaning its canonical Zeckendorf word)."""
        digits = _coerce_digits(word)
        vec = self.v
        for d in digits:
            vec = vec_mat(vec, self.gamma[d])
        out = dot(vec, self.w)
        return int(out) if isinstance(out, Fraction) and out.denominator == 1 else out

    def __repr__(self) -> str:
        return f"LinRep(rank={self.rank})"


def _coerce_digits(word) -> list[int]:
    if isinstance(word, int):
        from .core import zeck_encode

        return [int(c) for c in zeck_encode(word).digits]
    if isinstance(word, str):
        return [int(c) for c in word]
    return [int(c) for c in word]


def count_linrep(a: MultiTrackDFA, count_tracks: Sequence[int]) -> LinRep:
    """Linear representation of u -> number of distinct completions of the
    counted tracks accepted alongside input word u.

    The remaining (input) track must be single; gamma(d) counts transitions
    over all counted-track digit tuples.  The initial vector is pre-padded
    by gamma(0)^states, which is a sound saturation bound: a finite
    completion set never contains a completion longer than |u| + states.
    """
    count_tracks = sorted(set(count_tracks))
    inputs = [t for t in range(a.tracks) if t not in count_tracks]
    if len(inputs) != 1:
        raise AutomatonError("count_linrep needs exactly one input track")
    inp = inputs[0]
    n = a.n_states
    from itertools import product as iproduct

    mats = {}
    for d in (0, 1):
        rows = [[0] * n for _ in range(n)]
        for bits in iproduct((0, 1), repeat=len(count_tracks)):
            sym = [0] * a.tracks
            sym[inp] = d
            for t, b in zip(count_tracks, bits):
                sym[t] = b
            for p in range(n):
                q = a.delta.get((p, tuple(sym)))
                if q is not None:
                    rows[p][q] += 1
        mats[d] = tuple(tuple(r) for r in rows)
    v = tuple(1 if i == a.initial else 0 for i in range(n))
    w = tuple(1 if i in a.accepting else 0 for i in range(n))
    vpad = v
    for _ in range(n):
        vpad = vec_mat(vpad, mats[0])
    return LinRep(vpad, mats, w)


def linrep_add(a: LinRep, b: LinRep, subtract: bool = False) -> LinRep:
    """Block-diagonal sum (or difference) of two representations."""
    ra, rb = a.rank, b.rank
    gamma = {}
    for d in set(a.gamma) | set(b.gamma):
        ga, gb = a.gamma[d], b.gamma[d]
        rows = []
        for i in range(ra):
            rows.append(tuple(ga[i]) + (0,) * rb)
        for i in range(rb):
            rows.append((0,) * ra + tuple(gb[i]))
        gamma[d] = tuple(rows)
    v = tuple(a.v) + tuple(b.v)
    w = tuple(a.w) + tuple(-x if subtract else x for x in b.w)
    return LinRep(v, gamma, w)


def linrep_sub(a: LinRep, b: LinRep) -> LinRep:
    return linrep_add(a, b, subtract=True)


def linrep_minimize(rep: LinRep) -> LinRep:
    """Equivalent representation of minimal rank (exact forward/backward
    basis reduction over the rationals)."""
    rep = _reduce_left(rep)
    rep = _reduce_right(rep)
    return rep


def _reduce_left(rep: LinRep) -> LinRep:
    dim = rep.rank
    ech = _Echelon(dim)
    basis: list[Vector] = []
    if ech.insert(rep.v):
        basis.append(rep.v)
    i = 0
    while i < len(basis):
        for d in sorted(rep.gamma):
            u = vec_mat(basis[i], rep.gamma[d])
            if ech.insert(u):
                basis.append(u)
        i += 1
    if not basis:
        zero = ((Fraction(0),),)
        return LinRep((Fraction(0),), {d: zero for d in rep.gamma}, (Fraction(0),))
    k = len(basis)
    gamma = {}
    for d in sorted(rep.gamma):
        rows = [ech.coordinates(vec_mat(b, rep.gamma[d])) for b in basis]
        gamma[d] = tuple(rows)
    v = ech.coordinates(rep.v)
    w = tuple(dot(b, rep.w) for b in basis)
    return LinRep(v, gamma, w)


def _reduce_right(rep: LinRep) -> LinRep:
    dim = rep.rank
    ech = _Echelon(dim)
    basis: list[Vector] = []
    if ech.insert(rep.w):
        basis.append(rep.w)
    i = 0
    while i < len(basis):
        for d in sorted(rep.gamma):
            u = mat_vec(rep.gamma[d], basis[i])
            if ech.insert(u):
                basis.append(u)
        i += 1
    if not basis:
        zero = ((Fraction(0),),)
        return LinRep((Fraction(0),), {d: zero for d in rep.gamma}, (Fraction(0),))
    gamma = {}
    for d in sorted(rep.gamma):
        cols = [ech.coordinates(mat_vec(rep.gamma[d], b)) for b in basis]
        # cols[j] holds coordinates of gamma(d) basis_j: entry [i][j]
        k = len(basis)
        gamma[d] = tuple(tuple(cols[j][i] for j in range(k)) for i in range(k))
    w = ech.coordinates(rep.w)
    v = tuple(dot(rep.v, b) for b in basis)
    return LinRep(v, gamma, w)


def linrep_to_dfao(rep: LinRep, max_states: int = 20000) -> DFAO:
    """The "semigroup trick": if the reachable set of state vectors
    v gamma(x) is finite, the function is computed by a finite automaton
    with outputs; otherwise the closure exceeds max_states and errors."""
    start = tuple(rep.v)
    index = {start: 0}
    order = [start]
    delta = {}
    i = 0
    while i < len(order):
        vec = order[i]
        for d in sorted(rep.gamma):
            nxt = vec_mat(vec, rep.gamma[d])
            j = index.get(nxt)
            if j is None:
                j = len(order)
                if j >= max_states:
                    raise AutomatonError(
                        f"vector closure exceeded {max_states} states; not automatic within bound"
                    )
                index[nxt] = j
                order.append(nxt)
            delta[(i, (d,))] = j
        i += 1
    output = {}
    for i, vec in enumerate(order):
        val = dot(vec, rep.w)
        output[i] = int(val) if isinstance(val, Fraction) and val.denominator == 1 else val
    return dfao_minimize(DFAO(1, len(order), 0, delta, output))


def dfao_minimize(a: DFAO) -> DFAO:
    """Moore refinement with the output map as the initial partition."""
    outs = sorted(set(a.output.values()), key=repr)
    block = {s: outs.index(a.output[s]) for s in range(a.n_states)}
    syms = [(0,), (1,)]
    while True:
        sig = {}
        for s in range(a.n_states):
            sig[s] = (block[s],) + tuple(block.get(a.delta.get((s, d))) for d in syms)
        classes = sorted(set(sig.values()), key=repr)
        new_block = {s: classes.index(sig[s]) for s in range(a.n_states)}
        if new_block == block:
            break
        block = new_block
    # renumber by BFS from the initial block
    index = {block[a.initial]: 0}
    order = [block[a.initial]]
    reps = {block[s]: s for s in sorted(range(a.n_states), reverse=True)}
    i = 0
    delta = {}
    output = {}
    while i < len(order):
        b = order[i]
        rep_state = reps[b]
        output[i] = a.output[rep_state]
        for d in syms:
            t = a.delta.get((rep_state, d))
            if t is None:
                continue
            tb = block[t]
            if tb not in index:
                index[tb] = len(order)
                order.append(tb)
            delta[(i, d)] = index[tb]
        i += 1
    return DFAO(1, len(order), 0, delta, output)


# ---------------------------------------------------------------------------
# polynomials (coefficient lists, low degree first, exact)


def poly_trim(p: list) -> list:
    while p and p[-1] == 0:
        p.pop()
    return p


def poly_eval(p: Sequence, x):
    out = 0
    for c in reversed(p):
        out = out * x + c
    return out


def poly_mul(a: Sequence, b: Sequence) -> list:
    out = [0] * (len(a) + len(b) - 1) if a and b else []
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return poly_trim(out)


def poly_divmod(a: Sequence, b: Sequence) -> tuple[list, list]:
    a = [Fraction(x) for x in a]
    b = [Fraction(x) for x in b]
    poly_trim(a), poly_trim(b)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    q = [Fraction(0)] * max(0, len(a) - len(b) + 1)
    while len(a) >= len(b) and a:
        f = a[-1] / b[-1]
        shift = len(a) - len(b)
        q[shift] = f
        for i in range(len(b)):
            a[shift + i] -= f * b[i]
        poly_trim(a)
    return poly_trim(q), a


def poly_monic(p: Sequence) -> list:
    p = poly_trim([Fraction(x) for x in p])
    if not p:
        return []
    lead = p[-1]
    return [x / lead for x in p]


def poly_gcd(a: Sequence, b: Sequence) -> list:
    a, b = poly_monic(a), poly_monic(b)
    while b:
        _, r = poly_divmod(a, b)
        a, b = b, poly_monic(r)
    return a


def poly_lcm(a: Sequence, b: Sequence) -> list:
    if not a:
        return list(b)
    if not b:
        return list(a)
    g = poly_gcd(a, b)
    q, r = poly_divmod(poly_mul(a, b), g)
    assert not r
    return poly_monic(q)


def minimal_poly(m: Matrix) -> list:
    """Least-degree monic annihilator of a square rational matrix, via
    per-vector Krylov dependencies lcm'd together."""
    n = len(m)
    result: list = []
    for start in range(n):
        e = tuple(Fraction(1) if i == start else Fraction(0) for i in range(n))
        ech = _Echelon(n)
        krylov = []
        vec = e
        while ech.insert(vec):
            krylov.append(vec)
            vec = vec_mat(vec, m)
        # vec is now dependent: express in krylov coordinates
        coords = ech.coordinates(vec)
        local = [-c for c in coords] + [Fraction(1)]
        result = poly_lcm(result, local)
        if len(result) == n + 1:
            break
    return poly_monic(result)


def poly_factors(p: Sequence) -> list[tuple[list, int]]:
    """Factor over Z (content stripped), deterministically ordered by
    (degree, coefficient tuple)."""
    x = sympy.symbols("x")
    expr = sum(sympy.Rational(Fraction(c)) * x ** i for i, c in enumerate(p))
    _, factors = sympy.factor_list(sympy.Poly(expr, x))
    out = []
    for poly, mult in factors:
        coeffs = [Fraction(int(c)) for c in reversed(sympy.Poly(poly, x).all_coeffs())]
        out.append(([int(c) if c.denominator == 1 else c for c in coeffs], int(mult)))
    out.sort(key=lambda fm: (len(fm[0]), [str(c) for c in fm[0]]))
    return out


def poly_str(p: Sequence) -> str:
    if not p:
        return "0"
    parts = []
    for i in range(len(p) - 1, -1, -1):
        c = p[i]
        if c == 0:
            continue
        if i == 0:
            parts.append(f"{c}")
        else:
            xs = "X" if i == 1 else f"X^{i}"
            if c == 1:
                parts.append(xs)
            elif c == -1:
                parts.append(f"-{xs}")
            else:
                parts.append(f"{c}*{xs}")
    return " + ".join(parts).replace("+ -", "- ")


# ---------------------------------------------------------------------------
# Sturm sequences and root isolation


def sturm_chain(p: Sequence) -> list[list]:
    p0 = poly_monic(p)
    p1 = poly_monic([i * p0[i] for i in range(1, len(p0))])
    chain = [p0, p1]
    while chain[-1]:
        _, r = poly_divmod(chain[-2], chain[-1])
        if not r:
            break
        chain.append([-x for x in r])
    return chain


def _sign_changes(chain: list[list], x: Fraction) -> int:
    signs = []
    for p in chain:
        v = poly_eval(p, x)
        if v != 0:
            signs.append(1 if v > 0 else -1)
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def count_real_roots(p: Sequence, lo: Fraction, hi: Fraction) -> int:
    chain = sturm_chain(p)
    return _sign_changes(chain, lo) - _sign_changes(chain, hi)


def isolate_real_roots(p: Sequence, width: Fraction = Fraction(1, 10 ** 13)) -> list[tuple[Fraction, Fraction]]:
    """Disjoint rational intervals, one around each real root, each
    narrower than width (Sturm + bisection; no floating point)."""
    p = poly_monic(p)
    bound = Fraction(1) + max(abs(Fraction(c)) for c in p[:-1]) if len(p) > 1 else Fraction(1)
    chain = sturm_chain(p)

    def refine(lo: Fraction, hi: Fraction) -> list[tuple[Fraction, Fraction]]:
        n = _sign_changes(chain, lo) - _sign_changes(chain, hi)
        if n == 0:
            return []
        if n == 1 and hi - lo < width:
            return [(lo, hi)]
        mid = (lo + hi) / 2
        if poly_eval(p, mid) == 0:
            # perturb so roots stay interior
            mid += (hi - lo) / 1000
        return refine(lo, mid) + refine(mid, hi)

    import sys

    old = sys.getrecursionlimit()
    sys.setrecursionlimit(10000)
    try:
        return refine(-bound, bound)
    finally:
        sys.setrecursionlimit(old)


def dominant_real_root(p: Sequence, width: Fraction = Fraction(1, 10 ** 13)) -> tuple[Fraction, Fraction]:
    roots = isolate_real_roots(p, width)
    if not roots:
        raise ValueError("polynomial has no real roots")
    return roots[-1]


# ---------------------------------------------------------------------------
# weighted automata and the zero-weight subautomaton


@dataclass(frozen=True)
class WeightedAutomaton:
    """A DFA with an integer weight on every transition."""

    dfa: MultiTrackDFA
    weight: dict[tuple[int, Symbol], int]


def weighted_from_automaton(
    a: MultiTrackDFA, weight_rule: Callable[[Symbol], int]
) -> WeightedAutomaton:
    a = trim(a)
    weight = {key: weight_rule(key[1]) for key in a.delta}
    return WeightedAutomaton(a, weight)


class NegativeCycleError(Exception):
    pass


def _bellman_ford(
    n_states: int,
    edges: list[tuple[int, int, int]],
    sources: Iterable[int],
) -> dict[int, int]:
    INF = None
    dist: dict[int, int] = {s: 0 for s in sources}
    for _ in range(n_states - 1):
        changed = False
        for u, v, w in edges:
            if u in dist and (v not in dist or dist[u] + w < dist[v]):
                dist[v] = dist[u] + w
                changed = True
        if not changed:
            break
    for u, v, w in edges:
        if u in dist and (v not in dist or dist[u] + w < dist[v]):
            raise NegativeCycleError("negative-weight cycle reachable")
    return dist


def min_weights_from_initial(wa: WeightedAutomaton) -> dict[int, int]:
    edges = [(p, q, wa.weight[(p, sym)]) for (p, sym), q in wa.dfa.delta.items()]
    return _bellman_ford(wa.dfa.n_states, edges, [wa.dfa.initial])


def min_weights_to_accepting(wa: WeightedAutomaton) -> dict[int, int]:
    edges = [(q, p, wa.weight[(p, sym)]) for (p, sym), q in wa.dfa.delta.items()]
    return _bellman_ford(wa.dfa.n_states, edges, wa.dfa.accepting)


def verify_nonneg_paths(wa: WeightedAutomaton) -> bool:
    """True iff no reachable negative cycle exists and every reachable
    state has non-negative minimum path weight from the initial state."""
    try:
        dist = min_weights_from_initial(wa)
    except NegativeCycleError:
        return False
    return all(d >= 0 for d in dist.values())


def zero_weight_subautomaton(wa: WeightedAutomaton) -> MultiTrackDFA:
    """Sub-DFA whose accepting paths are exactly the weight-0 accepting
    paths of the original (tight states and edges under the min-weight
    potentials)."""
    din = min_weights_from_initial(wa)
    dout = min_weights_to_accepting(wa)

    def state_ok(q: int) -> bool:
        return q in din and q in dout and din[q] + dout[q] == 0

    delta = {}
    for (p, sym), q in wa.dfa.delta.items():
        if state_ok(p) and state_ok(q) and din[p] + wa.weight[(p, sym)] + dout[q] == 0:
            delta[(p, sym)] = q
    accepting = [q for q in wa.dfa.accepting if state_ok(q) and dout[q] == 0 and din.get(q) == 0]
    sub = MultiTrackDFA(wa.dfa.tracks, wa.dfa.n_states, wa.dfa.initial, accepting, delta)
    return trim(sub)


def simple_cycle_census(wa: WeightedAutomaton) -> dict[int, int]:
    """Weight histogram of all vertex-simple cycles (edge sequences count
    separately when parallel transitions exist)."""
    adj: dict[int, list[tuple[int, int]]] = {}
    for (p, sym), q in wa.dfa.delta.items():
        adj.setdefault(p, []).append((q, wa.weight[(p, sym)]))
    census: dict[int, int] = {}
    n = wa.dfa.n_states

    def dfs(root: int, node: int, weight: int, onpath: set[int]) -> None:
        for q, w in adj.get(node, ()):
            if q == root:
                census[weight + w] = census.get(weight + w, 0) + 1
            elif q > root and q not in onpath:
                onpath.add(q)
                dfs(root, q, weight + w, onpath)
                onpath.remove(q)

    for root in range(n):
        dfs(root, root, 0, {root})
    return census

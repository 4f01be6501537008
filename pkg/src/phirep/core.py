"""Exact arithmetic in Z[phi] plus the classical numeration codecs.

Everything here is pure integer arithmetic: signs of m*phi + n are decided
by comparing (m+2n)^2 against 5m^2, never by floating point.  The module
also hosts the brute-force enumeration oracles that the automaton layers
are validated against.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from math import isqrt
from typing import Callable


# ---------------------------------------------------------------------------
# Fibonacci / Lucas numbers at arbitrary integer index


_FIB: list[int] = [0, 1]


def fib(k: int) -> int:
    """F(k) for any integer k; F(-k) = (-1)^(k+1) F(k)."""
    if k < 0:
        v = fib(-k)
        return v if (-k) % 2 == 1 else -v
    while len(_FIB) <= k:
        _FIB.append(_FIB[-1] + _FIB[-2])
    return _FIB[k]


def lucas(k: int) -> int:
    """L(k) = F(k+1) + F(k-1); L(0) = 2, L(1) = 1."""
    return fib(k + 1) + fib(k - 1)


def _sign3(v: int) -> int:
    return (v > 0) - (v < 0)


def sign_mphi_plus_n(m: int, n: int) -> int:
    """Exact sign of m*phi + n.

    2(m*phi + n) = (m + 2n) + m*sqrt(5); the two components never cancel
    exactly unless both are zero, so integer comparisons suffice.
    """
    a = m + 2 * n
    b = m
    if b == 0:
        return _sign3(a)
    if a == 0:
        return _sign3(b)
    if a > 0 and b > 0:
        return 1
    if a < 0 and b < 0:
        return -1
    d = a * a - 5 * b * b
    return _sign3(d) if a > 0 else -_sign3(d)


@dataclass(frozen=True)
class PhiInt:
    """The element m*phi + n of Z[phi], with exact integer coefficients."""

    m: int
    n: int

    def sign(self) -> int:
        return sign_mphi_plus_n(self.m, self.n)

    def __add__(self, other: "PhiInt") -> "PhiInt":
        return PhiInt(self.m + other.m, self.n + other.n)

    def __sub__(self, other: "PhiInt") -> "PhiInt":
        return PhiInt(self.m - other.m, self.n - other.n)

    def __neg__(self) -> "PhiInt":
        return PhiInt(-self.m, -self.n)

    def __mul__(self, other):
        # phi^2 = phi + 1
        if isinstance(other, int):
            return PhiInt(self.m * other, self.n * other)
        mm = self.m * other.m
        return PhiInt(mm + self.m * other.n + self.n * other.m, mm + self.n * other.n)

    __rmul__ = __mul__

    def __lt__(self, other: "PhiInt") -> bool:
        return (self - other).sign() < 0

    def __le__(self, other: "PhiInt") -> bool:
        return (self - other).sign() <= 0

    def __gt__(self, other: "PhiInt") -> bool:
        return (self - other).sign() > 0

    def __ge__(self, other: "PhiInt") -> bool:
        return (self - other).sign() >= 0

    def is_zero(self) -> bool:
        return self.m == 0 and self.n == 0

    def __float__(self) -> float:
        return self.m * (1 + 5 ** 0.5) / 2 + self.n

    def __str__(self) -> str:
        return f"{self.m}*phi+{self.n}"


PHI_ZERO = PhiInt(0, 0)
PHI_ONE = PhiInt(0, 1)


def phi_power(k: int) -> PhiInt:
    """phi^k = F(k)*phi + F(k-1), valid for every integer k."""
    return PhiInt(fib(k), fib(k - 1))


# ---------------------------------------------------------------------------
# Digit words


class Kind(Enum):
    ZECK = "zeck"
    NEGAFIB = "negafib"
    PHI_LEFT = "phi_left"
    PHI_RIGHT_REV = "phi_right_rev"


@dataclass(frozen=True)
class BitWord:
    """A finite 0/1 digit string, most-significant digit first.

    The empty word encodes 0 in every system and displays as "0".
    """

    digits: str
    kind: Kind | None = None

    def __post_init__(self):
        if self.digits.strip("01"):
            raise ValueError(f"not a 0/1 word: {self.digits!r}")

    def __str__(self) -> str:
        return self.digits or "0"

    def __len__(self) -> int:
        return len(self.digits)

    def has_11(self) -> bool:
        return "11" in self.digits

    def stripped(self) -> str:
        return self.digits.lstrip("0")


def _digits_of(x) -> str:
    if isinstance(x, BitWord):
        return x.digits
    if isinstance(x, str):
        if x.strip("01"):
            raise ValueError(f"not a 0/1 word: {x!r}")
        return x
    raise TypeError(f"expected BitWord or str, got {type(x).__name__}")


# ---------------------------------------------------------------------------
# Zeckendorf codec (least digit weight F_2)


def zeck_eval(x) -> int:
    """Sum a_i F_i of an arbitrary 0/1 word, rightmost digit weighing F_2."""
    total = 0
    for pos, ch in enumerate(reversed(_digits_of(x))):
        if ch == "1":
            total += fib(pos + 2)
    return total


def zeck_encode(n: int) -> BitWord:
    """Greedy (canonical) Zeckendorf representation of n >= 0."""
    if n < 0:
        raise ValueError("Zeckendorf encoding requires n >= 0")
    if n == 0:
        return BitWord("", Kind.ZECK)
    k = 2
    while fib(k + 1) <= n:
        k += 1
    out = []
    rem = n
    for i in range(k, 1, -1):
        if fib(i) <= rem:
            out.append("1")
            rem -= fib(i)
        else:
            out.append("0")
    assert rem == 0
    return BitWord("".join(out), Kind.ZECK)


# ---------------------------------------------------------------------------
# negaFibonacci codec (least digit weight F_{-1} = 1)

# Interval tables: _NEG_MAX[t] / _NEG_MIN[t] are the largest / smallest
# integers representable with digits at positions 1..t under the no-11 rule.
_NEG_MAX: list[int] = [0]
_NEG_MIN: list[int] = [0]


def _neg_tables(t: int) -> None:
    while len(_NEG_MAX) <= t:
        i = len(_NEG_MAX)
        w = fib(-i)
        prev2_max = _NEG_MAX[i - 2] if i >= 2 else 0
        prev2_min = _NEG_MIN[i - 2] if i >= 2 else 0
        _NEG_MAX.append(max(_NEG_MAX[i - 1], w + prev2_max))
        _NEG_MIN.append(min(_NEG_MIN[i - 1], w + prev2_min))


def negafib_eval(x) -> int:
    """Sum a_i F_{-i}, rightmost digit weighing F_{-1} = 1."""
    total = 0
    for pos, ch in enumerate(reversed(_digits_of(x))):
        if ch == "1":
            total += fib(-(pos + 1))
    return total


def negafib_encode(z: int) -> BitWord:
    """Canonical negaFibonacci representation of any integer z.

    The no-11 representation using positions 1..t covers exactly the
    interval [_NEG_MIN[t], _NEG_MAX[t]]; the most significant digit is
    forced whenever z falls outside the interval for t-1 positions.
    """
    if z == 0:
        return BitWord("", Kind.NEGAFIB)
    t = 1
    while True:
        _neg_tables(t)
        if _NEG_MIN[t] <= z <= _NEG_MAX[t]:
            break
        t += 1
    out = []
    rem = z
    pos = t
    while pos >= 1:
        _neg_tables(pos)
        if pos >= 1 and not (_NEG_MIN[pos - 1] <= rem <= _NEG_MAX[pos - 1]):
            out.append("1")
            rem -= fib(-pos)
            if pos >= 2:
                out.append("0")
                assert _NEG_MIN[pos - 2] <= rem <= _NEG_MAX[pos - 2]
            pos -= 2
        else:
            out.append("0")
            pos -= 1
    assert rem == 0
    return BitWord("".join(out), Kind.NEGAFIB)


# ---------------------------------------------------------------------------
# phi-expansions


@dataclass(frozen=True)
class PhiExpansion:
    """A finite base-phi representation [left . right].

    ``left`` holds the digits a_{r-1}..a_0 before the point and ``right``
    the digits a_1 a_2 .. after it, both most-significant-first (the right
    part is stored unreversed; folding for automata reverses it).
    """

    left: BitWord
    right: BitWord

    @staticmethod
    def make(left, right) -> "PhiExpansion":
        return PhiExpansion(
            BitWord(_digits_of(left), Kind.PHI_LEFT),
            BitWord(_digits_of(right), Kind.PHI_RIGHT_REV),
        )

    def normalized(self) -> "PhiExpansion":
        """Strip leading zeros of the left part, trailing zeros of the right."""
        return PhiExpansion.make(self.left.digits.lstrip("0"), self.right.digits.rstrip("0"))

    def digit(self, i: int) -> int:
        """Digit a_i (weight phi^i); 0 outside the stored window."""
        if i >= 0:
            idx = len(self.left.digits) - 1 - i
            return int(self.left.digits[idx]) if 0 <= idx < len(self.left.digits) else 0
        idx = -i - 1
        return int(self.right.digits[idx]) if idx < len(self.right.digits) else 0

    def concat_digits(self) -> str:
        return self.left.digits + self.right.digits

    def is_canonical(self) -> bool:
        s = self.normalized()
        return "11" not in s.concat_digits()

    def __str__(self) -> str:
        return f"{self.left.digits or '0'}.{self.right.digits}"


def parse_phi(text: str) -> PhiExpansion:
    """Parse "LEFT.RIGHT" (either side may be empty or "0")."""
    if text.count(".") != 1:
        raise ValueError(f"phi expansion needs exactly one point: {text!r}")
    left, right = text.split(".")
    return PhiExpansion.make(left, right)


def phi_eval(e: PhiExpansion) -> PhiInt:
    """Exact value of the expansion as a direct power sum."""
    m = 0
    n = 0
    ld = e.left.digits
    for pos, ch in enumerate(reversed(ld)):
        if ch == "1":
            m += fib(pos)
            n += fib(pos - 1)
    for j, ch in enumerate(e.right.digits, start=1):
        if ch == "1":
            m += fib(-j)
            n += fib(-j - 1)
    return PhiInt(m, n)


def phi_canonical(z) -> PhiExpansion:
    """Greedy (Bergman) expansion of z = m*phi + n >= 0.

    Repeatedly subtracts the largest phi^k not exceeding the remainder.
    Finiteness is guaranteed on Z[phi]; the iteration cap only guards
    against implementation bugs.
    """
    if isinstance(z, int):
        z = PhiInt(0, z)
    s = z.sign()
    if s < 0:
        raise ValueError(f"cannot expand negative value {z}")
    if s == 0:
        return PhiExpansion.make("", "")
    m, n = z.m, z.n
    cap = 4 * max(abs(m).bit_length(), abs(n).bit_length(), 1) + 64

    def geq_power(j: int) -> bool:
        # remainder >= phi^j ?
        return sign_mphi_plus_n(m - fib(j), n - fib(j - 1)) >= 0

    k = 0
    steps = 0
    if geq_power(0):
        while geq_power(k + 1):
            k += 1
            steps += 1
            if steps > cap:
                raise RuntimeError("greedy expansion failed to locate leading power")
    else:
        while not geq_power(k):
            k -= 1
            steps += 1
            if steps > cap:
                raise RuntimeError("greedy expansion failed to locate leading power")

    top = k
    ones = []
    j = k
    while m or n:
        while not geq_power(j):
            j -= 1
            steps += 1
            if steps > cap:
                raise RuntimeError("greedy expansion exceeded iteration cap")
        ones.append(j)
        m -= fib(j)
        n -= fib(j - 1)
        j -= 2
        steps += 1
        if steps > cap:
            raise RuntimeError("greedy expansion exceeded iteration cap")

    bottom = min(ones[-1], 0)
    marks = set(ones)
    left = "".join("1" if i in marks else "0" for i in range(max(top, 0), -1, -1))
    right = "".join("1" if -j in marks else "0" for j in range(1, -bottom + 1))
    if top < 0:
        left = ""
    return PhiExpansion.make(left.lstrip("0"), right)


# ---------------------------------------------------------------------------
# Brute-force enumeration oracles


def _phi_rep_words(n: int, left_len: int, right_len: int) -> list[str]:
    """Padded digit strings (length left_len + right_len) of all expansions
    of n with left digits at positions left_len-1..0 and right digits at
    -1..-right_len, in lexicographic order.

    The search prunes on exact remainder bounds and memoizes shared
    (position, remainder) subproblems, so bounds (18, 18) stay cheap.
    """
    if n < 0:
        return []
    width = left_len + right_len
    positions = list(range(left_len - 1, -right_len - 1, -1))
    pows = [(fib(j), fib(j - 1)) for j in positions]
    maxtail: list[tuple[int, int]] = [(0, 0)] * (width + 1)
    for i in range(width - 1, -1, -1):
        pm, pn = pows[i]
        tm, tn = maxtail[i + 1]
        maxtail[i] = (pm + tm, pn + tn)

    memo: dict[tuple[int, int, int], tuple[str, ...]] = {}

    def rec(i: int, rm: int, rn: int) -> tuple[str, ...]:
        if rm == 0 and rn == 0:
            # positive powers only: the rest must be all zeros
            return ("0" * (width - i),)
        if i == width:
            return ()
        key = (i, rm, rn)
        hit = memo.get(key)
        if hit is not None:
            return hit
        if sign_mphi_plus_n(rm, rn) < 0:
            memo[key] = ()
            return ()
        tm, tn = maxtail[i]
        if sign_mphi_plus_n(rm - tm, rn - tn) > 0:
            memo[key] = ()
            return ()
        pm, pn = pows[i]
        res = tuple("0" + s for s in rec(i + 1, rm, rn)) + tuple(
            "1" + s for s in rec(i + 1, rm - pm, rn - pn)
        )
        memo[key] = res
        return res

    return list(rec(0, 0, n))


def enumerate_phi_reps(
    n: int,
    left_len: int,
    right_len: int,
    pred: Callable[[PhiExpansion], bool] | None = None,
) -> list[PhiExpansion]:
    """All expansions of the integer n within the given length bounds.

    Results are normalized (no leading zeros on the left, no trailing
    zeros on the right) and ordered lexicographically by the padded digit
    string, 0 before 1, most significant first.
    """
    if left_len < 0 or right_len < 0:
        raise ValueError("length bounds must be >= 0")
    out = []
    for word in _phi_rep_words(n, left_len, right_len):
        exp = PhiExpansion.make(word[:left_len].lstrip("0"), word[left_len:].rstrip("0"))
        if pred is None or pred(exp):
            out.append(exp)
    return out


def count_phi_reps_saturated(
    n: int,
    pred: Callable[[PhiExpansion], bool] | None = None,
    key: Callable[[PhiExpansion], object] | None = None,
    start: tuple[int, int] = (8, 8),
    max_rounds: int = 12,
) -> int:
    """Count representations, growing the bounds by 2 until the set stops
    changing (the count is only trusted once saturated).

    ``key`` projects each expansion before counting distinct values, e.g.
    the left part for the distinct-left-part census.
    """
    left, right = start

    def gather(l: int, r: int) -> set:
        reps = enumerate_phi_reps(n, l, r, pred)
        if key is None:
            return {(e.left.digits, e.right.digits) for e in reps}
        return {key(e) for e in reps}

    prev = gather(left, right)
    for _ in range(max_rounds):
        left += 2
        right += 2
        cur = gather(left, right)
        if cur == prev:
            return len(cur)
        prev = cur
    raise RuntimeError(f"representation count for {n} did not saturate at bounds ({left},{right})")


def lucas_reps(n: int) -> set[BitWord]:
    """All no-11 words e_t..e_0 with sum e_i L_i = n (L_0 = 2 rightmost)."""
    if n < 0:
        raise ValueError("Lucas representations require n >= 0")
    if n == 0:
        return {BitWord("")}
    top = 0
    while lucas(top + 1) <= n:
        top += 1
    # maxtail[i+1] = largest no-11 sum using positions <= i
    maxtail = [0] * (top + 2)
    for i in range(top + 1):
        maxtail[i + 1] = max(maxtail[i], lucas(i) + (maxtail[i - 1] if i >= 1 else 0))

    out: set[BitWord] = set()

    def dfs(i: int, rem: int, prefix: str) -> None:
        if rem == 0:
            out.add(BitWord((prefix + "0" * (i + 1)).lstrip("0")))
            return
        if i < 0 or rem < 0 or rem > maxtail[i + 1]:
            return
        dfs(i - 1, rem, prefix + "0")
        # placing a 1 at position i forces a 0 at i-1 (when that exists)
        dfs(i - 2, rem - lucas(i), prefix + ("10" if i >= 1 else "1"))

    dfs(top, n, "")
    return out


# ---------------------------------------------------------------------------
# Exact floors used by the Sturmian checks


def floor_phi_times(n: int) -> int:
    """floor(phi * n) for n >= 0, via integer square root."""
    if n < 0:
        raise ValueError("n must be >= 0")
    return (n + isqrt(5 * n * n)) // 2


def floor_alpha_times(n: int) -> int:
    """floor(alpha * n) with alpha = (3 - phi)/5 = (5 - sqrt(5))/10."""
    if n == 0:
        return 0
    return (3 * n - 1 - floor_phi_times(n)) // 5


def sturmian_w(n: int) -> int:
    """w(n) = floor((n+1) alpha) - floor(n alpha)."""
    return floor_alpha_times(n + 1) - floor_alpha_times(n)

"""Generators for the sequence catalog.

Every family produces the first ``count`` terms *after* its duplicate-removal
convention (keep the first occurrence, preserve order), so the result can be
handed straight to :func:`seqgraph.graph.build_graph`.
"""

from __future__ import annotations

import enum
import math
from collections.abc import Callable, Iterable, Iterator, Sequence
from dataclasses import dataclass
from fractions import Fraction
from itertools import islice
from pathlib import Path

import numpy as np

from .core import Value, as_value, gcd


class InvalidSpec(ValueError):
    pass


class GenerationStall(RuntimeError):
    """An iterative rule failed to produce the next term."""


class DomainError(ValueError):
    pass


class Family(enum.Enum):
    KRONECKER = "kronecker"
    VAN_DER_CORPUT = "vdc"
    EFH_A064736 = "a064736"
    EFH_A036552 = "a036552"
    REVERSAL_DEDUP = "reversal"
    SIGN_FLIP = "signflip"
    ZIZKA_DEDUP = "zizka"
    EKG = "ekg"
    BALANCED_VDC = "balanced-vdc"
    RECAMAN_DEDUP = "recaman"
    QUET = "quet"
    ZABOLOTSKIY = "zabolotskiy"
    GRAY_INVERSE = "gray"
    TWO_POWERS = "two-powers"
    BINARY_REVERSAL = "binary-reversal"
    DIGIT_CONCAT_DEDUP = "digit-concat"
    DEUTSCH_REFLECT = "deutsch"
    TOTALLY_BALANCED = "totally-balanced"
    COMET = "comet"
    SPIRAL = "spiral"
    PASCAL_DEDUP = "pascal"
    EXTERNAL = "external"


# OEIS numbers accepted as family names
ALIASES = {
    "a076641": Family.REVERSAL_DEDUP,
    "a053985": Family.SIGN_FLIP,
    "a339571": Family.ZIZKA_DEDUP,
    "a064413": Family.EKG,
    "a005132": Family.RECAMAN_DEDUP,
    "a127202": Family.QUET,
    "a281488": Family.ZABOLOTSKIY,
    "a006068": Family.GRAY_INVERSE,
    "a140589": Family.TWO_POWERS,
    "a059893": Family.BINARY_REVERSAL,
    "a347520": Family.DIGIT_CONCAT_DEDUP,
    "a057163": Family.DEUTSCH_REFLECT,
    "a014486": Family.TOTALLY_BALANCED,
    "a014631": Family.PASCAL_DEDUP,
}


def family_from_name(name: str) -> Family:
    key = name.strip().lower()
    if key in ALIASES:
        return ALIASES[key]
    try:
        return Family(key)
    except ValueError:
        raise InvalidSpec(f"unknown sequence family {name!r}") from None


class SpiralF(enum.Enum):
    LOG_CUBED = "log-cubed"  # f(n) = log(n + 1)^3
    TENTH_ROOT = "tenth-root"  # f(n) = n^(1/10)


SQRT2 = math.sqrt(2.0)
GOLDEN = (1.0 + math.sqrt(5.0)) / 2.0
ALPHA_TOKENS = {"sqrt2": SQRT2, "golden": GOLDEN}


def parse_alpha(text: str) -> float:
    """Accept ``sqrt2``, ``golden`` or a decimal literal."""
    key = text.strip().lower()
    if key in ALPHA_TOKENS:
        return ALPHA_TOKENS[key]
    try:
        return float(key)
    except ValueError:
        raise InvalidSpec(f"cannot parse alpha {text!r}") from None


@dataclass(frozen=True)
class SequenceSpec:
    family: Family
    base: int = 2
    alpha: float = SQRT2
    c: float = 0.5
    seed: int = 0
    f_choice: SpiralF = SpiralF.LOG_CUBED
    path: str | None = None

    def validate(self) -> None:
        if not isinstance(self.family, Family):
            raise InvalidSpec(f"family must be a Family, got {self.family!r}")
        if self.family in (Family.SIGN_FLIP, Family.VAN_DER_CORPUT) and self.base < 2:
            raise InvalidSpec(f"base must be >= 2, got {self.base}")
        if self.family is Family.KRONECKER and not math.isfinite(self.alpha):
            raise InvalidSpec("alpha must be finite")
        if self.family is Family.COMET and not (self.c >= 0 and math.isfinite(self.c)):
            raise InvalidSpec(f"comet thickness c must be >= 0, got {self.c}")
        if self.family is Family.COMET and not 0 <= self.seed < 2**64:
            raise InvalidSpec("seed must fit in 64 unsigned bits")
        if self.family is Family.EXTERNAL and not self.path:
            raise InvalidSpec("external family needs a b-file path")

    def describe(self) -> str:
        f = self.family
        if f is Family.KRONECKER:
            return f"{f.value}(alpha={self.alpha!r})"
        if f in (Family.SIGN_FLIP, Family.VAN_DER_CORPUT):
            return f"{f.value}(base={self.base})"
        if f is Family.COMET:
            return f"{f.value}(c={self.c!r}, seed={self.seed})"
        if f is Family.SPIRAL:
            return f"{f.value}(f={self.f_choice.value})"
        if f is Family.EXTERNAL:
            return f"{f.value}(path={self.path})"
        return f.value


class ValueList(Sequence):
    """Immutable list of pairwise distinct values."""

    def __init__(self, items: Iterable, dedup_applied: bool = False):
        self.items = tuple(as_value(x) for x in items)
        self.dedup_applied = dedup_applied
        if not check_distinct(self.items):
            raise ValueError("values are not pairwise distinct")

    def __getitem__(self, i):
        return self.items[i]

    def __len__(self):
        return len(self.items)

    def __eq__(self, other):
        if isinstance(other, ValueList):
            return self.items == other.items
        return list(self.items) == list(other)

    def __repr__(self):
        return f"ValueList({list(self.items)!r}, dedup_applied={self.dedup_applied})"


# ---------------------------------------------------------------- dedup helpers


def dedup(values: Iterable[Value]) -> list[Value]:
    """Keep the first occurrence of each value, preserving order."""
    seen = set()
    out = []
    for v in values:
        if v not in seen:
            seen.add(v)
            out.append(v)
    return out


def check_distinct(values: Iterable[Value]) -> bool:
    seen = set()
    for v in values:
        if v in seen:
            return False
        seen.add(v)
    return True


def take_distinct(stream: Iterator[Value], count: int, max_steps: int | None = None) -> list[Value]:
    """First ``count`` distinct values of ``stream`` (first occurrences)."""
    if max_steps is None:
        max_steps = 1000 * count + 100_000
    seen = set()
    out = []
    for step, v in enumerate(stream):
        if step >= max_steps:
            raise GenerationStall(f"only {len(out)} distinct values after {max_steps} raw terms")
        if v not in seen:
            seen.add(v)
            out.append(v)
            if len(out) == count:
                return out
    raise GenerationStall(f"stream ended after {len(out)} distinct values")


# ---------------------------------------------------------------- single terms


def kronecker_term(n: int, alpha: float) -> float:
    """Fractional part of ``n * alpha`` in 64-bit arithmetic."""
    x = n * alpha
    frac = x - math.floor(x)
    # x slightly below an integer can round frac up to exactly 1.0
    return 0.0 if frac >= 1.0 else frac


def vdc_term(n: int, base: int = 2) -> Fraction:
    """Radical inverse of ``n``: mirror the base-``base`` digits about the radix point."""
    if n < 1:
        raise DomainError("van der Corput index starts at 1")
    num, den = 0, 1
    while n:
        n, d = divmod(n, base)
        num = num * base + d
        den *= base
    return Fraction(num, den)


def sign_flip_term(n: int, base: int = 2) -> int:
    """Evaluate the base-``base`` digits of ``n`` at ``-base``."""
    if n < 0:
        raise DomainError("sign-flip index must be nonnegative")
    total, power = 0, 1
    while n:
        n, d = divmod(n, base)
        total += d * power
        power *= -base
    return total


def derivative(n: int) -> str:
    """Bit string of adjacent-pair sums mod 2 of the binary expansion of ``n``."""
    if n < 2:
        raise DomainError("derivative needs at least two bits")
    bits = bin(n)[2:]
    return "".join(str(int(a) ^ int(b)) for a, b in zip(bits, bits[1:]))


def gray_inverse_term(n: int) -> int:
    """Inverse reflected-binary Gray code by prefix-XOR folding."""
    if n < 0:
        raise DomainError("index must be nonnegative")
    shift = 1
    while n >> shift:
        n ^= n >> shift
        shift <<= 1
    return n


def two_powers_term(k: int, n: int) -> int:
    if not 0 <= n <= k:
        raise DomainError(f"need 0 <= n <= k, got k={k}, n={n}")
    return (-2) ** k + 2**n


def binary_reversal_term(n: int) -> int:
    """Keep the leading 1 of ``n`` and reverse the remaining binary digits."""
    if n < 1:
        raise DomainError("index must be positive")
    bits = bin(n)[3:]
    return int("1" + bits[::-1], 2)


def digit_concat_term(n: int) -> int:
    """Concatenate the decimal sums of adjacent digit pairs of ``n``."""
    if n < 0:
        raise DomainError("index must be nonnegative")
    digits = [int(ch) for ch in str(n)]
    if len(digits) < 2:
        return 0
    return int("".join(str(a + b) for a, b in zip(digits, digits[1:])))


def reversal_term(n: int) -> int:
    return int(str(n)[::-1])


# ---------------------------------------------------------------- raw streams


def kronecker_stream(alpha: float) -> Iterator[float]:
    n = 1
    while True:
        yield kronecker_term(n, alpha)
        n += 1


def vdc_stream(base: int = 2) -> Iterator[Fraction]:
    n = 1
    while True:
        yield vdc_term(n, base)
        n += 1


def efh_a064736_stream() -> Iterator[int]:
    """1, 2, then pairs (a_2n * m, m) where m is the least integer not yet used."""
    yield 1
    yield 2
    used = {1, 2}
    smallest = 1
    prev = 2
    while True:
        while smallest in used:
            smallest += 1
        m = smallest
        used.add(m)
        product = prev * m
        used.add(product)
        yield product
        yield m
        prev = m


def efh_a036552_stream() -> Iterator[int]:
    """1, then pairs (m, 2m) where m is the least integer not yet used."""
    yield 1
    used = {1}
    smallest = 1
    while True:
        while smallest in used:
            smallest += 1
        m = smallest
        used.add(m)
        used.add(2 * m)
        yield m
        yield 2 * m


def zizka_raw_stream() -> Iterator[int]:
    """A133058: a_0 = a_1 = 1, then add n + 1 or divide by the gcd with n."""
    a = 1
    yield a
    yield a
    n = 2
    while True:
        g = gcd(a, n)
        a = a + n + 1 if g == 1 else a // g
        yield a
        n += 1


def recaman_raw_stream() -> Iterator[int]:
    a = 0
    seen = {0}
    yield a
    n = 1
    while True:
        cand = a - n
        a = cand if cand > 0 and cand not in seen else a + n
        seen.add(a)
        yield a
        n += 1


def _prime_factors(m: int) -> list[int]:
    out = []
    p = 2
    while p * p <= m:
        if m % p == 0:
            out.append(p)
            while m % p == 0:
                m //= p
        p += 1 if p == 2 else 2
    if m > 1:
        out.append(m)
    return out


class _MultipleTracker:
    """Least unused multiple of each prime, with lazily advanced pointers."""

    def __init__(self, used: set[int]):
        self.used = used
        self.ptr: dict[int, int] = {}

    def least_unused_multiple(self, p: int) -> int:
        k = self.ptr.get(p, 1)
        while k * p in self.used:
            k += 1
        self.ptr[p] = k
        return k * p


def ekg_stream() -> Iterator[int]:
    """A064413: least unused number sharing a factor with its predecessor."""
    yield 1
    yield 2
    used = {1, 2}
    tracker = _MultipleTracker(used)
    prev = 2
    while True:
        nxt = min(tracker.least_unused_multiple(p) for p in _prime_factors(prev))
        used.add(nxt)
        yield nxt
        prev = nxt


def quet_stream() -> Iterator[int]:
    """A127202: least unused number whose gcd with the last term differs from the last gcd."""
    yield 1
    yield 2
    used = {1, 2}
    tracker = _MultipleTracker(used)
    smallest = 3
    prev2, prev = 1, 2
    while True:
        g_prev = gcd(prev, prev2)
        if g_prev == 1:
            nxt = min(tracker.least_unused_multiple(p) for p in _prime_factors(prev))
        else:
            while smallest in used:
                smallest += 1
            k = smallest
            while k in used or gcd(k, prev) == g_prev:
                k += 1
            nxt = k
        used.add(nxt)
        yield nxt
        prev2, prev = prev, nxt


def zabolotskiy_raw_stream() -> Iterator[int]:
    """A281488: a_1 = 1, a_2 = -1, a_n = -(sum of a_d over divisors d of n - 2)."""
    a = [0, 1, -1]  # 1-based
    yield 1
    yield -1
    n = 3
    while True:
        m = n - 2
        s = 0
        d = 1
        while d * d <= m:
            if m % d == 0:
                s += a[d]
                e = m // d
                if e != d:
                    s += a[e]
            d += 1
        a.append(-s)
        yield -s
        n += 1


def gray_stream() -> Iterator[int]:
    n = 0
    while True:
        yield gray_inverse_term(n)
        n += 1


def two_powers_raw_stream() -> Iterator[int]:
    k = 0
    while True:
        for n in range(k + 1):
            yield two_powers_term(k, n)
        k += 1


def two_powers_stream() -> Iterator[int]:
    """Row-read triangle with the zeros (odd k, n = k) dropped."""
    return (v for v in two_powers_raw_stream() if v != 0)


def binary_reversal_stream() -> Iterator[int]:
    n = 1
    while True:
        yield binary_reversal_term(n)
        n += 1


def digit_concat_raw_stream() -> Iterator[int]:
    n = 0
    while True:
        yield digit_concat_term(n)
        n += 1


def reversal_raw_stream() -> Iterator[int]:
    n = 0
    while True:
        yield reversal_term(n)
        n += 1


def dyck_words(half_length: int) -> Iterator[int]:
    """Totally balanced binary words with ``half_length`` ones, in increasing order."""
    if half_length == 0:
        yield 0
        return
    size = 2 * half_length

    def rec(prefix: int, ones: int, zeros: int):
        if ones + zeros == size:
            yield prefix
            return
        # appending 0 before 1 keeps the output sorted
        if zeros < ones:
            yield from rec(prefix << 1, ones, zeros + 1)
        if ones < half_length:
            yield from rec((prefix << 1) | 1, ones + 1, zeros)

    # a nonempty word must start with 1
    yield from rec(1, 1, 0)


def totally_balanced_stream() -> Iterator[int]:
    """A014486 in increasing order, starting with 0 for the empty word."""
    k = 0
    while True:
        yield from dyck_words(k)
        k += 1


def balanced_vdc_stream() -> Iterator[Fraction]:
    """Base-2 radical inverse along the totally balanced integers (index 0 skipped)."""
    return (vdc_term(m, 2) for m in islice(totally_balanced_stream(), 1, None))


def _dyck_to_tree(word: int, length: int):
    """Parse a Dyck word 1 L 0 R into a nested (left, right) binary tree."""
    bits = format(word, f"0{length}b") if length else ""
    pos = 0

    def parse():
        nonlocal pos
        if pos >= len(bits) or bits[pos] == "0":
            return None
        pos += 1
        left = parse()
        pos += 1  # the matching 0
        right = parse()
        return (left, right)

    return parse()


def _tree_to_dyck(tree) -> str:
    if tree is None:
        return ""
    left, right = tree
    return "1" + _tree_to_dyck(left) + "0" + _tree_to_dyck(right)


def _reflect(tree):
    if tree is None:
        return None
    left, right = tree
    return (_reflect(right), _reflect(left))


def reflect_dyck_word(word: int) -> int:
    """Swap left and right subtrees throughout the binary tree encoded by ``word``."""
    length = word.bit_length()
    bits = _tree_to_dyck(_reflect(_dyck_to_tree(word, length)))
    return int(bits, 2) if bits else 0


class _BalancedIndex:
    """Rank lookup for totally balanced integers, grown on demand."""

    def __init__(self):
        self.rank: dict[int, int] = {}
        self.words: list[int] = []
        self._half = 0

    def ensure(self, count: int) -> None:
        while len(self.words) < count:
            for w in dyck_words(self._half):
                self.rank[w] = len(self.words)
                self.words.append(w)
            self._half += 1


def deutsch_reflect_term(n: int, _index: _BalancedIndex | None = None) -> int:
    """Rank of the left-right reflection of the ``n``-th totally balanced word."""
    if n < 0:
        raise DomainError("index must be nonnegative")
    idx = _index or _BalancedIndex()
    idx.ensure(n + 1)
    return idx.rank[reflect_dyck_word(idx.words[n])]


def deutsch_stream() -> Iterator[int]:
    idx = _BalancedIndex()
    n = 0
    while True:
        yield deutsch_reflect_term(n, idx)
        n += 1


def comet_values(count: int, c: float, seed: int) -> list[float]:
    """a_n = n + c * X_n * n for n = 1..count with X_n ~ U(0, 1) from a seeded PCG64."""
    rng = np.random.Generator(np.random.PCG64(seed))
    x = rng.random(count)
    n = np.arange(1, count + 1, dtype=float)
    return [float(v) for v in n + c * x * n]


def spiral_f(choice: SpiralF) -> Callable[[int], float]:
    if choice is SpiralF.LOG_CUBED:
        return lambda n: math.log(n + 1) ** 3
    return lambda n: n ** 0.1


def spiral_entry(n: int, k: int, choice: SpiralF = SpiralF.LOG_CUBED) -> float:
    """exp(k * (f(n) - f(k))); overflows to inf for large rows."""
    f = spiral_f(choice)
    try:
        return math.exp(k * (f(n) - f(k)))
    except OverflowError:
        return math.inf


def spiral_log_stream(choice: SpiralF = SpiralF.LOG_CUBED) -> Iterator[float]:
    """Row-read triangle of log a(n, k) = k * (f(n) - f(k)).

    The graph only sees the order of the values and exp is increasing, so the
    logarithms give the same graph while staying finite for large rows.
    """
    f = spiral_f(choice)
    n = 1
    while True:
        fn = f(n)
        for k in range(1, n + 1):
            yield k * (fn - f(k))
        n += 1


def spiral_model(rows: int, choice: SpiralF = SpiralF.LOG_CUBED) -> list[float]:
    """Deduplicated log-scale triangle for rows 1..``rows``."""
    total = rows * (rows + 1) // 2
    return dedup(islice(spiral_log_stream(choice), total))


def pascal_raw_stream() -> Iterator[int]:
    row = [1]
    while True:
        yield from row
        row = [1] + [a + b for a, b in zip(row, row[1:])] + [1]


# ---------------------------------------------------------------- dispatch


def _external_values(path: str) -> list[Value]:
    from .io import parse_bfile

    bf = parse_bfile(Path(path).read_text(encoding="utf-8"))
    return [v for _, v in bf.entries]


_PLAIN = {
    Family.EFH_A064736: efh_a064736_stream,
    Family.EFH_A036552: efh_a036552_stream,
    Family.EKG: ekg_stream,
    Family.QUET: quet_stream,
    Family.GRAY_INVERSE: gray_stream,
    Family.TWO_POWERS: two_powers_stream,
    Family.BINARY_REVERSAL: binary_reversal_stream,
    Family.DEUTSCH_REFLECT: deutsch_stream,
    Family.TOTALLY_BALANCED: totally_balanced_stream,
    Family.BALANCED_VDC: balanced_vdc_stream,
}

_DEDUPED = {
    Family.REVERSAL_DEDUP: reversal_raw_stream,
    Family.ZIZKA_DEDUP: zizka_raw_stream,
    Family.RECAMAN_DEDUP: recaman_raw_stream,
    Family.ZABOLOTSKIY: zabolotskiy_raw_stream,
    Family.DIGIT_CONCAT_DEDUP: digit_concat_raw_stream,
    Family.PASCAL_DEDUP: pascal_raw_stream,
}


def generate(spec: SequenceSpec, count: int) -> ValueList:
    """First ``count`` terms of the family described by ``spec``."""
    if not isinstance(count, int) or count < 1:
        raise InvalidSpec(f"count must be a positive integer, got {count!r}")
    spec.validate()
    fam = spec.family
    if fam in _PLAIN:
        return ValueList(islice(_PLAIN[fam](), count))
    if fam in _DEDUPED:
        return ValueList(take_distinct(_DEDUPED[fam](), count), dedup_applied=True)
    if fam is Family.KRONECKER:
        return ValueList(islice(kronecker_stream(spec.alpha), count))
    if fam is Family.VAN_DER_CORPUT:
        return ValueList(islice(vdc_stream(spec.base), count))
    if fam is Family.SIGN_FLIP:
        return ValueList(sign_flip_term(n, spec.base) for n in range(count))
    if fam is Family.COMET:
        # duplicates have probability ~0; draw extra terms only if one shows up
        vals = dedup(comet_values(count, spec.c, spec.seed))
        extra = count
        while len(vals) < count:
            extra *= 2
            vals = dedup(comet_values(extra, spec.c, spec.seed))
        return ValueList(vals[:count], dedup_applied=True)
    if fam is Family.SPIRAL:
        return ValueList(take_distinct(spiral_log_stream(spec.f_choice), count), dedup_applied=True)
    if fam is Family.EXTERNAL:
        raw = _external_values(spec.path)
        vals = dedup(raw)
        if len(vals) < count:
            raise InvalidSpec(f"b-file has only {len(vals)} distinct values, {count} requested")
        return ValueList(vals[:count], dedup_applied=len(vals) != len(raw))
    raise InvalidSpec(f"unhandled family {fam}")

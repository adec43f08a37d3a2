"""Noisy query-counting oracles: a base function composed with a corruption.

The corrupted function g is always a fixed function: the iid model decides
each point's flip with a keyed hash, so two oracles built from the same
(base, corruption) agree on every query.  Correctors only ever see g
through NoisyOracle.query, which counts.
"""

from __future__ import annotations

import hashlib
import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb

from .boolfn import DimensionMismatch, JuntaSpec, Point

EXHAUSTIVE_MAX_N = 20


class NoCorruption:
    def corrupt(self, n: int, bits: int, value: int) -> int:
        return value

    def describe(self) -> str:
        return "none"


@dataclass(frozen=True)
class ExplicitFlips:
    """g differs from the base exactly on this finite set of points."""

    n: int
    flips: frozenset  # of raw point integers

    def __post_init__(self):
        for b in self.flips:
            if not 0 <= b < 1 << self.n:
                raise ValueError("flip point does not fit n=%d" % self.n)

    def corrupt(self, n: int, bits: int, value: int) -> int:
        return value ^ (bits in self.flips)

    def describe(self) -> str:
        return "flips[%d]" % len(self.flips)


@dataclass(frozen=True)
class IidFlips:
    """Each point flipped independently with probability eps.

    The decision is a keyed blake2b hash of (seed, point), so the
    corruption is a fixed function of the point; the realized flip
    fraction concentrates near eps rather than being capped by it.
    """

    eps: Fraction
    seed: int

    def __post_init__(self):
        if not 0 <= self.eps < 1:
            raise ValueError("eps must lie in [0, 1)")

    def _key(self) -> bytes:
        return self.seed.to_bytes(8, "little", signed=False)

    def flips_point(self, n: int, bits: int) -> bool:
        key = self._key()
        digest = hashlib.blake2b(
            bits.to_bytes((n + 7) // 8, "little"), digest_size=8, key=key
        ).digest()
        h = int.from_bytes(digest, "little")
        # h / 2^64 < eps, compared exactly
        return h * self.eps.denominator < self.eps.numerator << 64

    def corrupt(self, n: int, bits: int, value: int) -> int:
        return value ^ self.flips_point(n, bits)

    def describe(self) -> str:
        return "iid:%s:%d" % (self.eps, self.seed)


@dataclass(frozen=True)
class WeightTruncation:
    """g(y) = 0 whenever either half of y has Hamming weight > threshold."""

    threshold: int

    def corrupt(self, n: int, bits: int, value: int) -> int:
        half = n // 2
        lo = (bits & ((1 << half) - 1)).bit_count()
        hi = (bits >> half).bit_count()
        if lo > self.threshold or hi > self.threshold:
            return 0
        return value

    def describe(self) -> str:
        return "trunc:%d" % self.threshold


class BalancedLayerZero:
    """g(y) = 0 on the layer of Hamming weight exactly n/2 (n even)."""

    def corrupt(self, n: int, bits: int, value: int) -> int:
        if bits.bit_count() == n // 2:
            return 0
        return value

    def describe(self) -> str:
        return "layer"


@dataclass
class NoisyOracle:
    """Base function plus corruption, with a per-instance query counter.

    A single trial owns an oracle at a time; independent trials build
    their own instances, so the counter needs no locking.
    """

    n: int
    base_bits: object  # Callable[[int], int] on raw n-bit integers
    corruption: object = field(default_factory=NoCorruption)
    query_count: int = 0

    def __post_init__(self):
        base = self.base_bits
        corrupt = self.corruption.corrupt
        n = self.n
        # Fused g(bits) closure; the hot path for correctors.
        self._g = lambda bits: corrupt(n, bits, base(bits))

    @classmethod
    def from_junta(cls, spec: JuntaSpec, corruption=None) -> "NoisyOracle":
        return cls(spec.n, spec.bits_fn(), corruption or NoCorruption())

    @classmethod
    def from_point_fn(cls, n: int, fn, corruption=None) -> "NoisyOracle":
        return cls(n, lambda bits: fn(Point(n, bits)), corruption or NoCorruption())

    def query(self, x: Point) -> int:
        if x.n != self.n:
            raise DimensionMismatch("query point n=%d, oracle n=%d" % (x.n, self.n))
        self.query_count += 1
        return self._g(x.bits)

    def query_bits(self, bits: int) -> int:
        self.query_count += 1
        return self._g(bits)

    def uncorrupted(self, x: Point) -> int:
        """Base value, not counted; for harness ground truth only."""
        if x.n != self.n:
            raise DimensionMismatch("point n=%d, oracle n=%d" % (x.n, self.n))
        return self.base_bits(x.bits)


def query(o: NoisyOracle, x: Point) -> int:
    return o.query(x)


def reset_count(o: NoisyOracle) -> None:
    o.query_count = 0


def read_count(o: NoisyOracle) -> int:
    return o.query_count


@dataclass(frozen=True)
class DisagreementBound:
    """Fraction of points where g differs from the base, with its provenance.

    kind is "exact", "upper_bound", "expected", or "unavailable" (value None).
    """

    value: object
    kind: str


def disagreement_fraction(o: NoisyOracle) -> DisagreementBound:
    """Exact disagreement fraction where tractable, else a labeled bound."""
    c = o.corruption
    if isinstance(c, NoCorruption):
        return DisagreementBound(Fraction(0), "exact")
    if isinstance(c, ExplicitFlips):
        return DisagreementBound(Fraction(len(c.flips), 1 << o.n), "exact")
    if isinstance(c, WeightTruncation):
        half = o.n // 2
        inside = Fraction(
            sum(comb(half, w) for w in range(0, min(c.threshold, half) + 1)),
            1 << half,
        )
        return DisagreementBound(1 - inside * inside, "upper_bound")
    if isinstance(c, BalancedLayerZero):
        return DisagreementBound(Fraction(comb(o.n, o.n // 2), 1 << o.n), "upper_bound")
    if isinstance(c, IidFlips):
        if o.n <= EXHAUSTIVE_MAX_N:
            count = sum(
                c.flips_point(o.n, bits) for bits in range(1 << o.n)
            )
            return DisagreementBound(Fraction(count, 1 << o.n), "exact")
        return DisagreementBound(c.eps, "expected")
    return DisagreementBound(None, "unavailable")


def exhaustive_disagreement(o: NoisyOracle) -> Fraction:
    """Directly compare g against the base on all 2^n points (n <= 20)."""
    if o.n > EXHAUSTIVE_MAX_N:
        raise ValueError("exhaustive comparison needs n <= %d" % EXHAUSTIVE_MAX_N)
    base = o.base_bits
    g = o._g
    count = sum(g(bits) != base(bits) for bits in range(1 << o.n))
    return Fraction(count, 1 << o.n)


def _parse_eps(text: str) -> Fraction:
    if "^" in text:
        base, _, exp = text.partition("^")
        return Fraction(int(base)) ** int(exp)
    return Fraction(text)


def parse_corruption(spec: str, n: int):
    """Parse a CLI corruption descriptor.

    Grammar: "none" | "flips:<file>" | "iid:<eps>:<seed>" | "trunc:<threshold>"
    | "layer".  Flip files hold one hex point per line, LSB = coordinate 1.
    """
    if spec == "none":
        return NoCorruption()
    if spec == "layer":
        return BalancedLayerZero()
    kind, _, rest = spec.partition(":")
    if kind == "trunc":
        return WeightTruncation(int(rest))
    if kind == "iid":
        eps_text, _, seed_text = rest.rpartition(":")
        if not eps_text:
            raise ValueError("iid descriptor needs iid:<eps>:<seed>")
        return IidFlips(_parse_eps(eps_text), int(seed_text))
    if kind == "flips":
        with open(rest) as fh:
            flips = frozenset(
                int(line.strip(), 16) for line in fh if line.strip()
            )
        return ExplicitFlips(n, flips)
    raise ValueError("unknown corruption descriptor %r" % spec)


def random_flip_set(n: int, count: int, seed: int) -> ExplicitFlips:
    """count distinct uniform points; the hard-eps corruption of choice."""
    if count > 1 << n:
        raise ValueError("cannot pick %d distinct points in Z_2^%d" % (count, n))
    rng = random.Random(seed)
    if n <= 30:
        flips = frozenset(rng.sample(range(1 << n), count))
    else:
        flips = set()
        while len(flips) < count:
            flips.add(rng.getrandbits(n))
        flips = frozenset(flips)
    return ExplicitFlips(n, flips)

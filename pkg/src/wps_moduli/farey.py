"""Farey sequences and the circular symmetry property of integer sequences."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import RangeError
from .parabolic import euler_phi


@dataclass(frozen=True)
class FareySequence:
    N: int
    entries: tuple[Fraction, ...]

    def pairs(self) -> list[tuple[Fraction, Fraction]]:
        return list(zip(self.entries, self.entries[1:]))

    def __len__(self) -> int:
        return len(self.entries)


def farey_sequence(N: int) -> FareySequence:
    """Reduced fractions in [0, 1] with denominator at most N, increasing."""
    if N < 1:
        raise RangeError(f"Farey order must be >= 1, got {N}")
    a, b, c, d = 0, 1, 1, N
    out = [Fraction(0, 1)]
    while c <= N:
        out.append(Fraction(c, d))
        k = (N + b) // d
        a, b, c, d = c, d, k * c - a, k * d - b
    return FareySequence(N, tuple(out))


@dataclass(frozen=True)
class CircularProfile:
    d: tuple[int, ...]
    M: int
    symmetric: bool
    violation: tuple[int, int] | None = None


def phi_weighted_sum(d: Sequence[int]) -> int:
    """``sum phi(k) d_k``."""
    return sum(euler_phi(k) * x for k, x in enumerate(d, start=1))


def is_circularly_symmetric(d: Sequence[int], N: int, M: int) -> tuple[bool, tuple[int, int] | None]:
    """Check ``d_x + d_y = 2M/(xy)`` over consecutive Farey pairs r/x, s/y.

    Returns ``(True, None)`` or ``(False, (x, y))`` for the first failing pair.
    A non-integral right-hand side counts as a failure.
    """
    if len(d) != N:
        raise RangeError(f"sequence has length {len(d)}, expected {N}")
    for lo, hi in farey_sequence(N).pairs():
        x, y = lo.denominator, hi.denominator
        q, r = divmod(2 * M, x * y)
        if r or d[x - 1] + d[y - 1] != q:
            return False, (x, y)
    return True, None


def circular_profile(d: Sequence[int], M: int | None = None) -> CircularProfile:
    M = phi_weighted_sum(d) if M is None else M
    ok, bad = is_circularly_symmetric(d, len(d), M)
    return CircularProfile(tuple(d), M, ok, bad)


@dataclass(frozen=True)
class Completion:
    ok: bool
    sequence: tuple[int, ...] | None
    reason: str = ""
    pair: tuple[int, int] | None = None


def circular_complete(d1: int, N: int, M: int) -> Completion:
    """Propagate d_1 along the Farey pairs of order N.

    The left denominator of each pair is already known, so every pair either
    forces its right denominator or checks consistency.
    """
    if min(d1, N, M) < 1:
        raise RangeError("d1, N and M must be positive")
    known: dict[int, int] = {1: d1}
    for lo, hi in farey_sequence(N).pairs():
        x, y = lo.denominator, hi.denominator
        q, r = divmod(2 * M, x * y)
        if r:
            return Completion(False, None, f"2M/(xy) is not an integer at (x, y) = ({x}, {y})", (x, y))
        forced = q - known[x]
        if y in known:
            if known[y] != forced:
                return Completion(False, None, f"d_{y} forced to both {known[y]} and {forced}", (x, y))
        elif forced <= 0:
            return Completion(False, None, f"d_{y} forced to non-positive value {forced}", (x, y))
        else:
            known[y] = forced
    return Completion(True, tuple(known[k] for k in range(1, N + 1)))


def coroot_integer_sequence(comarks: Sequence[int], n0: int = 1) -> tuple[int, ...]:
    """Divisor sums ``d(k)`` of the counts of entries equal to ``k * n0``."""
    top = max(comarks) // n0
    counts = [sum(1 for g in comarks if g == k * n0) for k in range(1, top + 1)]
    return tuple(sum(counts[x - 1] for x in range(k, top + 1, k)) for k in range(1, top + 1))

"""PAM constellations, bit labelings, and exact sum-profile enumeration.

The relay in a two-user network-coded link observes real sums y = x_A + x_B
of the two users' amplitudes.  Everything downstream (rate bounds, secrecy
audits) is driven by the preimage counts |{(x_A, x_B) : x_A + x_B = y}|,
so those counts are computed in exact integer arithmetic whenever the
inputs are integer-valued PAM alphabets.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

__all__ = [
    "PamConstellation",
    "FiniteAlphabet",
    "SumProfile",
    "make_pam",
    "sum_profile",
    "preimage_count_pam",
]


@dataclass(frozen=True)
class PamConstellation:
    """An M-point PAM alphabet {-(M-1), -(M-3), ..., M-1} with rank labels.

    Point i (in increasing order) carries the big-endian binary expansion
    of i as its bit label, i.e. the label read root-to-leaf off a perfect
    binary tree whose leaves are the points in increasing order.
    """

    order: int
    points: tuple[int, ...]
    bits_per_symbol: int

    def rank(self, x: int) -> int:
        """Index of point x in increasing order; raises if x is not a point."""
        if x not in self.points:
            raise ValueError(f"{x} is not a point of the {self.order}-PAM alphabet")
        return (x + self.order - 1) // 2

    def label(self, x: int) -> str:
        """Bit label of point x as a string of length bits_per_symbol."""
        return format(self.rank(x), f"0{self.bits_per_symbol}b")

    def unlabel(self, bits: str) -> int:
        """Inverse of :meth:`label`."""
        if len(bits) != self.bits_per_symbol or any(b not in "01" for b in bits):
            raise ValueError(f"expected {self.bits_per_symbol} bits, got {bits!r}")
        return 2 * int(bits, 2) - (self.order - 1)

    def __contains__(self, x) -> bool:
        return x in self.points


@dataclass(frozen=True)
class FiniteAlphabet:
    """A finite real alphabet with per-point probability masses.

    Weights default to uniform; non-uniform weights are admitted so the
    generic machinery can be probed, but all PAM-facing operations assume
    uniform inputs.
    """

    points: tuple[float, ...]
    weights: tuple[float, ...] = field(default=())

    def __post_init__(self):
        if not self.points:
            raise ValueError("alphabet must be nonempty")
        if len(set(self.points)) != len(self.points):
            raise ValueError("alphabet points must be distinct")
        if not self.weights:
            n = len(self.points)
            object.__setattr__(self, "weights", tuple(1.0 / n for _ in self.points))
        if len(self.weights) != len(self.points):
            raise ValueError("weights must match points in length")
        if any(w < 0 for w in self.weights):
            raise ValueError("weights must be nonnegative")
        if abs(sum(self.weights) - 1.0) > 1e-12:
            raise ValueError("weights must sum to 1")

    @classmethod
    def from_pam(cls, pam: PamConstellation) -> "FiniteAlphabet":
        return cls(points=tuple(pam.points))


@dataclass(frozen=True)
class SumProfile:
    """Map from each achievable sum y to its preimage count |psi^-1(y)|."""

    entries: dict
    total: int
    orders: tuple[int, int] | None = None

    def count(self, y) -> int:
        return self.entries.get(y, 0)

    def pmf(self, y) -> float:
        return self.count(y) / self.total

    def support(self) -> list:
        return sorted(self.entries)


def _is_power_of_two(n: int) -> bool:
    return isinstance(n, int) and n >= 1 and (n & (n - 1)) == 0


def make_pam(M: int) -> PamConstellation:
    """Canonical M-PAM alphabet with rank bit labels; M a power of two >= 2."""
    if not _is_power_of_two(M) or M < 2:
        raise ValueError(f"PAM order must be a power of two >= 2, got {M}")
    points = tuple(range(-(M - 1), M, 2))
    return PamConstellation(order=M, points=points, bits_per_symbol=M.bit_length() - 1)


def sum_profile(a: FiniteAlphabet, b: FiniteAlphabet, tol: float = 0.0) -> SumProfile:
    """Exhaustive enumeration of all |a|*|b| pairwise sums.

    Integer-valued alphabets are summed exactly; otherwise sums within
    `tol` of each other are merged into a single entry keyed by the first
    representative encountered in sorted order.
    """
    if tol < 0:
        raise ValueError("tol must be nonnegative")
    exact = all(float(p).is_integer() for p in a.points) and all(
        float(p).is_integer() for p in b.points
    )
    if exact:
        entries: dict = {}
        for xa, xb in itertools.product(a.points, b.points):
            y = int(xa) + int(xb)
            entries[y] = entries.get(y, 0) + 1
    else:
        sums = sorted(xa + xb for xa, xb in itertools.product(a.points, b.points))
        entries = {}
        rep = None
        for s in sums:
            if rep is None or s - rep > tol:
                rep = s
                entries[rep] = 1
            else:
                entries[rep] += 1
    total = len(a.points) * len(b.points)
    orders = None
    if exact:
        ma, mb = len(a.points), len(b.points)
        if (
            _is_power_of_two(ma)
            and _is_power_of_two(mb)
            and tuple(sorted(a.points)) == make_pam(ma).points
            and tuple(sorted(b.points)) == make_pam(mb).points
        ):
            orders = (ma, mb)
    return SumProfile(entries=entries, total=total, orders=orders)


def pam_sum_profile(M_A: int, M_B: int) -> SumProfile:
    """Sum profile of an M_A-PAM and an M_B-PAM alphabet."""
    return sum_profile(
        FiniteAlphabet.from_pam(make_pam(M_A)),
        FiniteAlphabet.from_pam(make_pam(M_B)),
    )


def _validate_orders(M_A: int, M_B: int) -> None:
    if M_B < 2 * M_A:
        raise ValueError(f"require M_B >= 2*M_A, got M_A={M_A}, M_B={M_B}")
    if not _is_power_of_two(M_A) or not _is_power_of_two(M_B):
        raise ValueError("constellation orders must be powers of two")


def preimage_count_pam(y, M_A: int, M_B: int) -> int:
    """Closed-form preimage count of y for M_A-PAM + M_B-PAM, M_B >= 2*M_A.

    Three branches: zero for odd (or unreachable) y, a linearly decreasing
    count on the two trapezoid edges, and the flat plateau M_A in the middle.
    """
    _validate_orders(M_A, M_B)
    if float(y) != int(y):
        return 0
    y = int(y)
    ay = abs(y)
    if y % 2 != 0 or ay >= M_B + M_A:
        return 0
    if ay <= M_B - M_A:
        return M_A
    return (M_B + M_A - ay) // 2

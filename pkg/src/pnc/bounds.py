"""Upper bounds on the achievable per-symbol perfect-secrecy rates.

Three families of bounds for the noiseless two-user relay channel:

* the shared bound driven by the relay's equivocation, in generic
  (sum-profile) form and in closed form for PAM inputs;
* guaranteed entropy of a single symbol (the equivocation it enjoys
  against the worst-case choice of the other user's symbol), again both
  brute-force and closed-form;
* the per-user no-cooperation bounds obtained by averaging guaranteed
  entropy over each constellation.

Mutual informations are evaluated by exact enumeration over integer
counts, with logarithms applied only at the final step, so a true zero is
distinguishable from rounding noise.
"""

from __future__ import annotations

import math
from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from typing import Literal

from .constellation import SumProfile, _validate_orders, make_pam

__all__ = [
    "Side",
    "SecrecyBounds",
    "ub_generic",
    "ub_pam",
    "guaranteed_entropy",
    "guaranteed_entropy_pam",
    "ub_nocoop",
    "csiszar_ub",
    "compute_bounds",
]

Side = Literal["alice", "bob"]


@dataclass(frozen=True)
class SecrecyBounds:
    """All perfect-secrecy rate upper bounds for one (M_A, M_B) pair."""

    ub_shared: float
    ub_alice_nocoop: float
    ub_bob_nocoop: float


def ub_generic(profile: SumProfile) -> float:
    """Shared secrecy-rate upper bound from a sum profile of uniform inputs.

    Equals sum_y log2(count(y)) * count(y) / total, the expected
    equivocation at the relay in bits per symbol.
    """
    return sum(
        math.log2(c) * c / profile.total for c in profile.entries.values() if c > 1
    )


def ub_pam(M_A: int, M_B: int) -> float:
    """Closed-form shared upper bound for M_A-PAM + M_B-PAM, M_B >= 2*M_A."""
    _validate_orders(M_A, M_B)
    m_a = M_A.bit_length() - 1
    flat = m_a * (M_B - M_A + 1) / M_B
    edges = sum(math.log2(a) * 2 * a for a in range(2, M_A)) / (M_A * M_B)
    return flat + edges


def guaranteed_entropy(x: int, side: Side, profile: SumProfile) -> float:
    """min over the other user's symbols of log2(preimage count of the sum).

    Brute-force evaluation; `profile` must come from PAM inputs so the
    constellations can be reconstructed from its orders.
    """
    if profile.orders is None:
        raise ValueError("profile must carry PAM orders")
    M_A, M_B = profile.orders
    own = make_pam(M_A if side == "alice" else M_B)
    other = make_pam(M_B if side == "alice" else M_A)
    if x not in own:
        raise ValueError(f"{x} is not in the {own.order}-PAM constellation")
    return min(math.log2(profile.count(x + xo)) for xo in other.points)


def guaranteed_entropy_pam(x: int, side: Side, M_A: int, M_B: int) -> float:
    """Closed-form guaranteed entropy for PAM constellations.

    Alice: log2((M_A + 1 - |x|) / 2).  Bob: the full m_A bits on the
    inner points |x| <= M_B - 2*M_A + 1, then log2((M_B + 1 - |x|) / 2).
    """
    _validate_orders(M_A, M_B)
    if side == "alice":
        if x not in make_pam(M_A):
            raise ValueError(f"{x} is not in the {M_A}-PAM constellation")
        return math.log2((M_A + 1 - abs(x)) / 2)
    if x not in make_pam(M_B):
        raise ValueError(f"{x} is not in the {M_B}-PAM constellation")
    if abs(x) <= M_B - 2 * M_A + 1:
        return float(M_A.bit_length() - 1)
    return math.log2((M_B + 1 - abs(x)) / 2)


def ub_nocoop(M_A: int, M_B: int) -> tuple[float, float]:
    """No-cooperation upper bounds: guaranteed entropy averaged per user."""
    _validate_orders(M_A, M_B)
    r_a = sum(guaranteed_entropy_pam(x, "alice", M_A, M_B) for x in make_pam(M_A).points)
    r_b = sum(guaranteed_entropy_pam(x, "bob", M_A, M_B) for x in make_pam(M_B).points)
    return r_a / M_A, r_b / M_B


def _mi(joint: dict, margin_axes: tuple[int, int]) -> float:
    """Mutual information in bits between two coordinates of a joint pmf.

    `joint` maps outcome tuples to Fraction (or float) probabilities.
    Marginals are accumulated exactly; the result is exactly 0.0 when
    every cell factorizes exactly.
    """
    i, j = margin_axes
    pa: dict = defaultdict(Fraction)
    pb: dict = defaultdict(Fraction)
    pab: dict = defaultdict(Fraction)
    for outcome, p in joint.items():
        if p == 0:
            continue
        pa[outcome[i]] += p
        pb[outcome[j]] += p
        pab[(outcome[i], outcome[j])] += p
    if all(p == pa[a] * pb[b] for (a, b), p in pab.items()):
        return 0.0
    return sum(
        float(p) * math.log2(float(p / (pa[a] * pb[b]))) for (a, b), p in pab.items()
    )


def _conditional_mi(joint: dict, x_axis: int, y_axis: int, cond_axis: int) -> float:
    """I(X; Y | Z) for a joint pmf over outcome tuples."""
    by_cond: dict = defaultdict(dict)
    pz: dict = defaultdict(Fraction)
    for outcome, p in joint.items():
        if p == 0:
            continue
        z = outcome[cond_axis]
        pz[z] += p
        key = (outcome[x_axis], outcome[y_axis])
        by_cond[z][key] = by_cond[z].get(key, Fraction(0)) + p
    total = 0.0
    for z, cells in by_cond.items():
        norm = pz[z]
        cond = {k: p / norm for k, p in cells.items()}
        total += float(norm) * _mi(cond, (0, 1))
    return total


def csiszar_ub(joint: dict) -> float:
    """[I(Y_recv; X | X_other) - I(Y; X)]^+ from an exact finite joint pmf.

    `joint` maps tuples (y, y_recv, x, x_other) to probabilities, ideally
    Fractions.  The positive-part clamp is applied to the difference, never
    per term.
    """
    total = sum(joint.values())
    if not math.isclose(float(total), 1.0, abs_tol=1e-12):
        raise ValueError("joint distribution must sum to 1")
    keep = _conditional_mi(joint, x_axis=2, y_axis=1, cond_axis=3)
    leak = _mi(joint, (0, 2))
    return max(keep - leak, 0.0)


def compute_bounds(M_A: int, M_B: int) -> SecrecyBounds:
    """All three bounds for one pair of PAM orders."""
    r_a, r_b = ub_nocoop(M_A, M_B)
    return SecrecyBounds(ub_shared=ub_pam(M_A, M_B), ub_alice_nocoop=r_a, ub_bob_nocoop=r_b)


def aligned_pnc_joint(M_A: int, M_B: int, side: Side = "alice") -> dict:
    """Exact joint pmf (Y, Y_recv, X, X_other) for the noiseless aligned sum.

    The legitimate receiver observes the sum and knows its own symbol, so
    Y_recv determines X given X_other; useful as a reference input for
    :func:`csiszar_ub`.
    """
    a = make_pam(M_A)
    b = make_pam(M_B)
    p = Fraction(1, M_A * M_B)
    joint: dict = {}
    for xa in a.points:
        for xb in b.points:
            y = xa + xb
            x, xo = (xa, xb) if side == "alice" else (xb, xa)
            joint[(y, y, x, xo)] = p
    return joint

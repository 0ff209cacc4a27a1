"""Secret-bit encoders, decoders, rate formulas, and an exact secrecy auditor.

Two schemes are implemented on top of the rank bit labeling of
:mod:`pnc.constellation`:

* a non-cooperative scheme where each user independently declares the
  trailing k label bits of a constellation point secret, with k determined
  by which guaranteed-entropy subset the point falls in; and
* a cooperative scheme where the small-constellation user learns
  floor(guaranteed entropy of the peer's next symbol) ahead of time and
  keys the number of secret trailing bits off that.

The auditor enumerates the exact joint distribution of the relay's
observation and the secret content and reports mutual informations and
posterior tables.  It reports measured values; in particular the
variable-length semantic metric I(Y; (K, S)) is not assumed to be zero.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .bounds import Side, guaranteed_entropy_pam, ub_nocoop, ub_pam
from .constellation import PamConstellation, _validate_orders, make_pam

__all__ = [
    "SecrecyPartition",
    "BitQueues",
    "QueueUnderflow",
    "LeakageReport",
    "build_partition",
    "encode_stream",
    "decode_stream",
    "decode_coop",
    "rate_nocoop",
    "coop_level",
    "encode_coop",
    "rate_coop",
    "gaps",
    "audit_leakage",
]


class QueueUnderflow(RuntimeError):
    """A bit queue ran dry; carries the index of the symbol being formed."""

    def __init__(self, which: str, symbol_index: int):
        super().__init__(f"{which} bit queue exhausted while forming symbol {symbol_index}")
        self.which = which
        self.symbol_index = symbol_index


@dataclass
class BitQueues:
    """Ordered public and secret bit sequences with consumption cursors."""

    public_bits: str
    secret_bits: str
    public_cursor: int = 0
    secret_cursor: int = 0

    def __post_init__(self):
        for name, bits in (("public", self.public_bits), ("secret", self.secret_bits)):
            if any(b not in "01" for b in bits):
                raise ValueError(f"{name} bits must be a 0/1 string")

    def next_public(self, symbol_index: int) -> str:
        if self.public_cursor >= len(self.public_bits):
            raise QueueUnderflow("public", symbol_index)
        bit = self.public_bits[self.public_cursor]
        self.public_cursor += 1
        return bit

    def next_secret(self, symbol_index: int) -> str:
        if self.secret_cursor >= len(self.secret_bits):
            raise QueueUnderflow("secret", symbol_index)
        bit = self.secret_bits[self.secret_cursor]
        self.secret_cursor += 1
        return bit

    @property
    def exhausted(self) -> bool:
        return self.public_cursor >= len(self.public_bits) and self.secret_cursor >= len(
            self.secret_bits
        )


@dataclass(frozen=True)
class SecrecyPartition:
    """Per-symbol secret-bit level for one user's constellation.

    level[x] = k means the trailing k bits of x's label are secret.
    """

    side: Side
    m_a: int
    constellation: PamConstellation
    level: dict = field(default_factory=dict)

    def level_of(self, x: int) -> int:
        return self.level.get(x, 0)

    def subset(self, k: int) -> tuple[int, ...]:
        """The points carrying exactly k secret bits, in increasing order."""
        return tuple(x for x in self.constellation.points if self.level_of(x) == k)

    def rate(self) -> float:
        """Average secret bits per symbol under a uniform symbol draw."""
        M = self.constellation.order
        return sum(self.level_of(x) for x in self.constellation.points) / M


def build_partition(M_A: int, M_B: int, side: Side) -> SecrecyPartition:
    """Assign secrecy levels by the guaranteed-entropy interval structure.

    Alice's subsets run k = 1..m_A-2 plus a level-0 rim; Bob's run
    k = 1..m_A-1 plus the inner plateau at level m_A and a level-0 rim.
    Points falling in no interval keep level 0.
    """
    _validate_orders(M_A, M_B)
    m_a = M_A.bit_length() - 1
    M = M_A if side == "alice" else M_B
    pam = make_pam(M)
    level: dict = {}
    if side == "alice":
        for k in range(1, m_a - 1):
            lo, hi = M - 1 - 2 ** (k + 2), M - 1 - 2 ** (k + 1)
            for x in pam.points:
                if lo < abs(x) <= hi:
                    level[x] = k
    else:
        for k in range(1, m_a):
            lo, hi = M - 1 - 2 ** (k + 2), M - 1 - 2 ** (k + 1)
            for x in pam.points:
                if lo < abs(x) <= hi:
                    level[x] = k
        for x in pam.points:
            if abs(x) <= M - 2 * M_A - 1:
                level[x] = m_a
    return SecrecyPartition(side=side, m_a=m_a, constellation=pam, level=level)


def encode_stream(
    queues: BitQueues,
    partition: SecrecyPartition,
    labeling: PamConstellation | None = None,
    count: int = 1,
) -> list[int]:
    """Emit `count` symbols by walking the label tree root to leaf.

    At each depth a public bit is consumed unless every leaf of the current
    subtree marks that depth secret (depth d, counted from 0, is secret for
    a leaf of level k iff k >= m - d), in which case a secret bit is
    consumed instead.
    """
    pam = labeling if labeling is not None else partition.constellation
    if pam.order != partition.constellation.order:
        raise ValueError("labeling order does not match the partition's constellation")
    m = pam.bits_per_symbol
    symbols = []
    for i in range(count):
        lo, hi = 0, pam.order
        for depth in range(m):
            need = m - depth
            all_secret = all(
                partition.level_of(pam.points[r]) >= need for r in range(lo, hi)
            )
            bit = queues.next_secret(i) if all_secret else queues.next_public(i)
            mid = (lo + hi) // 2
            lo, hi = (lo, mid) if bit == "0" else (mid, hi)
        symbols.append(pam.points[lo])
    return symbols


def decode_stream(
    sums: list,
    own_symbols: list,
    peer_partition: SecrecyPartition,
) -> tuple[str, str]:
    """Recover the peer's public and secret bit streams from noiseless sums.

    The peer's symbol is y - own; its label splits into a public prefix and
    a secret suffix whose length is the peer partition's level at that
    point.
    """
    pam = peer_partition.constellation
    m = pam.bits_per_symbol
    public, secret = [], []
    for y, own in zip(sums, own_symbols):
        x = y - own
        if x not in pam:
            raise ValueError(f"recovered value {x} is not a {pam.order}-PAM point")
        k = peer_partition.level_of(x)
        bits = pam.label(x)
        public.append(bits[: m - k])
        secret.append(bits[m - k :])
    return "".join(public), "".join(secret)


def rate_nocoop(M_A: int, M_B: int) -> tuple[float, float]:
    """Closed-form secret-bit rates of the non-cooperative scheme."""
    _validate_orders(M_A, M_B)
    m_a = M_A.bit_length() - 1
    return m_a - 3 + 4 / M_A, m_a - 4 * (M_A - 1) / M_B


def coop_level(x_B: int, M_A: int, M_B: int) -> int:
    """Secret-bit budget Alice gets from advance knowledge of Bob's symbol."""
    return math.floor(guaranteed_entropy_pam(x_B, "bob", M_A, M_B))


def encode_coop(
    queues: BitQueues,
    levels: list[int],
    labeling: PamConstellation,
) -> list[int]:
    """Cooperative encoding: symbol i carries levels[i] trailing secret bits."""
    m = labeling.bits_per_symbol
    symbols = []
    for i, k in enumerate(levels):
        if not 0 <= k <= m:
            raise ValueError(f"level {k} out of range 0..{m}")
        bits = "".join(queues.next_public(i) for _ in range(m - k)) + "".join(
            queues.next_secret(i) for _ in range(k)
        )
        symbols.append(labeling.unlabel(bits))
    return symbols


def decode_coop(
    sums: list,
    own_symbols: list,
    M_A: int,
    M_B: int,
) -> tuple[str, str]:
    """Bob-side decoder for the cooperative scheme.

    Bob recovers Alice's symbol as y - x_B and recomputes the secret-bit
    count from his own symbol, since that is what Alice keyed it off.
    """
    pam = make_pam(M_A)
    m = pam.bits_per_symbol
    public, secret = [], []
    for y, own in zip(sums, own_symbols):
        x = y - own
        if x not in pam:
            raise ValueError(f"recovered value {x} is not a {M_A}-PAM point")
        k = coop_level(own, M_A, M_B)
        bits = pam.label(x)
        public.append(bits[: m - k])
        secret.append(bits[m - k :])
    return "".join(public), "".join(secret)


def rate_coop(M_A: int, M_B: int) -> float:
    """Closed-form secrecy rate of the cooperative scheme at Alice."""
    _validate_orders(M_A, M_B)
    m_a = M_A.bit_length() - 1
    return m_a - 4 * (M_A - 1) / M_B + 2 * m_a / M_B


def gaps(M_A: int, M_B: int) -> tuple[float, float, float]:
    """(gap_alice, gap_bob, gap_alice_coop) between achieved rates and bounds."""
    ub_a, ub_b = ub_nocoop(M_A, M_B)
    r_a, r_b = rate_nocoop(M_A, M_B)
    return (
        abs(ub_a - r_a),
        abs(ub_b - r_b),
        abs(ub_pam(M_A, M_B) - rate_coop(M_A, M_B)),
    )


# ---------------------------------------------------------------------------
# Exact leakage auditing
# ---------------------------------------------------------------------------

SCHEMES = ("nocoop_alice", "nocoop_bob", "coop")


@dataclass(frozen=True)
class LeakageReport:
    """Exact mutual-information figures and posterior tables for a scheme.

    suffix_mi[j-1] is I(Y; suffix_j(X)) over the relay's full observation;
    semantic_mi is I(Y; (K, S)) with K the per-symbol secret-bit count and
    S the secret string.  The flat_* fields restrict to flat-region
    observations |y| <= M_B - M_A.  Posteriors are keyed by observation.
    """

    scheme: str
    m_a: int
    suffix_mi: tuple[float, ...]
    semantic_mi: float
    flat_suffix_mi: tuple[float, ...]
    flat_semantic_mi: float
    suffix_posteriors: dict
    semantic_posteriors: dict


def _mi_from_counts(cells: dict, total: int) -> float:
    """I(A; B) in bits from integer joint counts over (a, b) keys.

    Exactly 0.0 whenever every cell count factorizes as the product of its
    marginals over the grand total.
    """
    ca: dict = {}
    cb: dict = {}
    for (a, b), c in cells.items():
        ca[a] = ca.get(a, 0) + c
        cb[b] = cb.get(b, 0) + c
    if all(c * total == ca[a] * cb[b] for (a, b), c in cells.items()):
        return 0.0
    return sum(
        (c / total) * math.log2(c * total / (ca[a] * cb[b]))
        for (a, b), c in cells.items()
    )


def _secret_content(scheme: str, xa: int, xb: int, parts: dict, M_A: int, M_B: int):
    """(carrier point, carrier labeling, K, S) for one transmitted pair."""
    if scheme == "nocoop_bob":
        part = parts["bob"]
        x, pam = xb, part.constellation
        k = part.level_of(x)
    elif scheme == "nocoop_alice":
        part = parts["alice"]
        x, pam = xa, part.constellation
        k = part.level_of(x)
    else:  # coop: Alice's symbol carries the bits, Bob's symbol sets the count
        pam = parts["alice"].constellation
        x = xa
        k = coop_level(xb, M_A, M_B)
    label = pam.label(x)
    s = label[len(label) - k :] if k else ""
    return x, pam, k, s


def audit_leakage(scheme: str, M_A: int, M_B: int) -> LeakageReport:
    """Exact enumeration of what the relay's observation reveals.

    Enumerates all M_A * M_B equiprobable symbol pairs and tabulates, per
    observation y, the joint counts with (a) every label suffix of the
    secret-carrying symbol and (b) the variable-length secret content
    (K, S).  Mutual informations are reported both unconditionally and
    restricted to the flat region.
    """
    if scheme not in SCHEMES:
        raise ValueError(f"scheme must be one of {SCHEMES}")
    _validate_orders(M_A, M_B)
    m_a = M_A.bit_length() - 1
    parts = {
        "alice": build_partition(M_A, M_B, "alice"),
        "bob": build_partition(M_A, M_B, "bob"),
    }
    a, b = make_pam(M_A), make_pam(M_B)
    flat_lim = M_B - M_A

    suffix_cells = {j: {} for j in range(1, m_a + 1)}
    flat_suffix_cells = {j: {} for j in range(1, m_a + 1)}
    semantic_cells: dict = {}
    flat_semantic_cells: dict = {}
    flat_total = 0
    for xa in a.points:
        for xb in b.points:
            y = xa + xb
            x, pam, k, s = _secret_content(scheme, xa, xb, parts, M_A, M_B)
            label = pam.label(x)
            in_flat = abs(y) <= flat_lim
            if in_flat:
                flat_total += 1
            for j in range(1, m_a + 1):
                suf = label[len(label) - j :]
                key = (y, suf)
                suffix_cells[j][key] = suffix_cells[j].get(key, 0) + 1
                if in_flat:
                    flat_suffix_cells[j][key] = flat_suffix_cells[j].get(key, 0) + 1
            key = (y, (k, s))
            semantic_cells[key] = semantic_cells.get(key, 0) + 1
            if in_flat:
                flat_semantic_cells[key] = flat_semantic_cells.get(key, 0) + 1

    total = M_A * M_B
    suffix_mi = tuple(_mi_from_counts(suffix_cells[j], total) for j in range(1, m_a + 1))
    flat_suffix_mi = tuple(
        _mi_from_counts(flat_suffix_cells[j], flat_total) for j in range(1, m_a + 1)
    )
    semantic_mi = _mi_from_counts(semantic_cells, total)
    flat_semantic_mi = _mi_from_counts(flat_semantic_cells, flat_total)

    def posterior(cells: dict) -> dict:
        per_y: dict = {}
        for (y, v), c in cells.items():
            per_y.setdefault(y, {})[v] = c
        return {
            y: {v: Fraction(c, sum(vals.values())) for v, c in vals.items()}
            for y, vals in per_y.items()
        }

    return LeakageReport(
        scheme=scheme,
        m_a=m_a,
        suffix_mi=suffix_mi,
        semantic_mi=semantic_mi,
        flat_suffix_mi=flat_suffix_mi,
        flat_semantic_mi=flat_semantic_mi,
        suffix_posteriors={j: posterior(suffix_cells[j]) for j in range(1, m_a + 1)},
        semantic_posteriors=posterior(semantic_cells),
    )

"""Threshold secret sharing with word-encoded shares.

Two schemes over a public generator set X. In both, each participant
secretly holds a relator set (a graph on X, hence a RAAG), and the
dealer publishes per-participant word columns; a word decodes to bit 1
iff it is trivial in the holder's group, so only the holder can read the
column.

(n,n): the secret bit column is split into n columns whose entrywise
mod-2 sum is the secret; all n decoded columns are needed.

(t,n): the secret is x in Z_p; shares are evaluations y_i = f(i) mod p
of a random degree t-1 polynomial with f(0) = x, written as k-bit
columns; any t decoded shares recover x by Lagrange interpolation.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterable, Sequence

from .graphs import GraphError, SimplicialGraph, random_graph
from .raag import Raag, is_trivial, sample_nontrivial_word, sample_trivial_word
from .words import Word, format_word, parse_word

BitColumn = tuple[int, ...]
WordColumn = tuple[Word, ...]

__all__ = [
    "BitColumn",
    "WordColumn",
    "SharingError",
    "DealerSetupNN",
    "ShamirSetup",
    "ShareNN",
    "ShareTN",
    "bit_column",
    "split_bits_nn",
    "reconstruct_nn",
    "encode_column",
    "decode_column",
    "is_prime",
    "shamir_split",
    "lagrange_reconstruct",
    "int_to_bits",
    "bits_to_int",
    "random_dealer_setup_nn",
    "deal_nn",
    "deal_tn",
    "decode_share_nn",
    "decode_share_tn",
    "format_share",
    "parse_share",
]

DEFAULT_WORD_LENGTH = 16


class SharingError(ValueError):
    """Raised for malformed sharing inputs or share files."""


def bit_column(bits: Iterable[int]) -> BitColumn:
    col = tuple(bits)
    if not col:
        raise SharingError("bit column must have length at least 1")
    if any(b not in (0, 1) for b in col):
        raise SharingError("bit column entries must be 0 or 1")
    return col


# ---------------------------------------------------------------------------
# (n,n): XOR splitting


def split_bits_nn(c: BitColumn, n: int, seed: int) -> list[BitColumn]:
    """Split a column into n columns with entrywise XOR equal to it.

    The first n-1 columns are uniform given the seed; the last is forced.
    """
    c = bit_column(c)
    if n < 2:
        raise SharingError("need at least 2 participants")
    rng = random.Random(seed)
    columns = [tuple(rng.getrandbits(1) for _ in c) for _ in range(n - 1)]
    last = list(c)
    for col in columns:
        for i, b in enumerate(col):
            last[i] ^= b
    columns.append(tuple(last))
    return columns


def reconstruct_nn(columns: Sequence[BitColumn]) -> BitColumn:
    """Entrywise XOR of the given columns."""
    if not columns:
        raise SharingError("no columns to reconstruct from")
    k = len(columns[0])
    out = [0] * k
    for col in columns:
        if len(col) != k:
            raise SharingError("columns have mismatched lengths")
        for i, b in enumerate(col):
            out[i] ^= b
    return tuple(out)


# ---------------------------------------------------------------------------
# word encoding: bit 1 <-> trivial word


def encode_column(g: Raag, c: BitColumn, target_length: int = DEFAULT_WORD_LENGTH,
                  seed: int = 0) -> WordColumn:
    """One word per bit: trivial in ``g`` iff the bit is 1."""
    c = bit_column(c)
    if target_length <= 0 or target_length % 2:
        raise SharingError("word length must be a positive even integer")
    rng = random.Random(seed)
    out = []
    for bit in c:
        sub_seed = rng.getrandbits(64)
        if bit:
            out.append(sample_trivial_word(g, target_length, sub_seed))
        else:
            out.append(sample_nontrivial_word(g, target_length, sub_seed))
    return tuple(out)


def decode_column(g: Raag, wc: WordColumn) -> BitColumn:
    """Bit i is 1 iff word i is trivial in ``g``."""
    return tuple(1 if is_trivial(g, w) else 0 for w in wc)


# ---------------------------------------------------------------------------
# (t,n): Shamir over Z_p


def is_prime(p: int) -> bool:
    """Deterministic trial division; the moduli here are desk-scale."""
    if p < 2:
        return False
    if p < 4:
        return True
    if p % 2 == 0:
        return False
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


@dataclass(frozen=True)
class ShamirSetup:
    """Dealer-side record of one (t,n) split."""

    p: int
    t: int
    n: int
    k: int
    secret: int
    coefficients: tuple[int, ...]  # a_0 = secret, degree <= t-1

    def __post_init__(self):
        if not is_prime(self.p):
            raise SharingError(f"{self.p} is not prime")
        if not 2 <= self.t <= self.n:
            raise SharingError("threshold must satisfy 2 <= t <= n")
        if not 0 <= self.secret < self.p:
            raise SharingError("secret must lie in Z_p")
        if (1 << self.k) < self.p:
            raise SharingError(f"k={self.k} too small: need 2^k >= p")
        if len(self.coefficients) > self.t:
            raise SharingError("polynomial degree exceeds t-1")
        if not self.coefficients or self.coefficients[0] != self.secret:
            raise SharingError("constant term must equal the secret")

    def evaluate(self, i: int) -> int:
        acc = 0
        for a in reversed(self.coefficients):
            acc = (acc * i + a) % self.p
        return acc


def _bits_for(p: int) -> int:
    k = 1
    while (1 << k) < p:
        k += 1
    return k


def shamir_split(x: int, p: int, t: int, n: int, seed: int,
                 k: int | None = None) -> tuple[ShamirSetup, list[tuple[int, int]]]:
    """Random degree t-1 polynomial with f(0) = x; points (i, f(i) mod p).

    Evaluation points are i = 1..n, so n < p is required to keep them
    distinct and nonzero mod p.
    """
    if not is_prime(p):
        raise SharingError(f"{p} is not prime")
    if not 2 <= t <= n:
        raise SharingError("threshold must satisfy 2 <= t <= n")
    if n >= p:
        raise SharingError("need n < p for distinct nonzero evaluation points")
    if not 0 <= x < p:
        raise SharingError("secret must lie in Z_p")
    if k is None:
        k = _bits_for(p)
    elif (1 << k) < p:
        raise SharingError(f"k={k} too small: need 2^k >= p")
    rng = random.Random(seed)
    coefficients = (x,) + tuple(rng.randrange(p) for _ in range(t - 1))
    setup = ShamirSetup(p=p, t=t, n=n, k=k, secret=x, coefficients=coefficients)
    points = [(i, setup.evaluate(i)) for i in range(1, n + 1)]
    return setup, points


def lagrange_reconstruct(points: Sequence[tuple[int, int]], p: int, t: int) -> int:
    """Interpolate f(0) from at least t points (i, y_i) over Z_p.

    When more than t points are given, the t with the lowest indices are
    used; indices must be distinct and nonzero mod p.
    """
    if len(points) < t:
        raise SharingError(f"need at least {t} points, got {len(points)}")
    chosen = sorted(points)[:t]
    indices = [i for i, _ in chosen]
    if len(set(i % p for i in indices)) != t:
        raise SharingError("duplicate evaluation indices")
    if any(i % p == 0 for i in indices):
        raise SharingError("evaluation index divisible by p")
    acc = 0
    for i, y in chosen:
        num, den = 1, 1
        for j, _ in chosen:
            if j != i:
                num = (num * -j) % p
                den = (den * (i - j)) % p
        acc = (acc + y * num * pow(den, -1, p)) % p
    return acc


def int_to_bits(y: int, k: int) -> BitColumn:
    """Big-endian k-bit encoding of 0 <= y < 2^k."""
    if k < 1:
        raise SharingError("bit width must be at least 1")
    if not 0 <= y < (1 << k):
        raise SharingError(f"{y} does not fit in {k} bits")
    return tuple((y >> (k - 1 - i)) & 1 for i in range(k))


def bits_to_int(c: BitColumn) -> int:
    c = bit_column(c)
    acc = 0
    for b in c:
        acc = (acc << 1) | b
    return acc


# ---------------------------------------------------------------------------
# dealer flows


@dataclass(frozen=True)
class DealerSetupNN:
    """Public generators plus each participant's secret relator graph."""

    n: int
    k: int
    generators: tuple[str, ...]
    participant_graphs: tuple[SimplicialGraph, ...]

    def __post_init__(self):
        if self.n < 2:
            raise SharingError("need at least 2 participants")
        if self.k < 1:
            raise SharingError("column length must be at least 1")
        if len(self.participant_graphs) != self.n:
            raise SharingError("need one secret graph per participant")
        if not self.generators:
            raise SharingError("need at least one public generator")
        for g in self.participant_graphs:
            if g.vertices != self.generators:
                raise GraphError("participant graph must use exactly the public generators")


@dataclass(frozen=True)
class ShareNN:
    participant: int  # 1-based
    graph: SimplicialGraph  # secret
    words: WordColumn  # public


@dataclass(frozen=True)
class ShareTN:
    participant: int  # 1-based; also the evaluation point
    graph: SimplicialGraph  # secret
    words: WordColumn  # public
    p: int
    t: int


def random_dealer_setup_nn(n: int, k: int, num_generators: int, edge_prob: float,
                           seed: int) -> DealerSetupNN:
    """Fresh setup with independent random relator graphs per participant."""
    rng = random.Random(seed)
    graphs = tuple(random_graph(num_generators, edge_prob, rng.getrandbits(64))
                   for _ in range(n))
    if not graphs:
        raise SharingError("need at least 2 participants")
    return DealerSetupNN(n=n, k=k, generators=graphs[0].vertices,
                         participant_graphs=graphs)


def deal_nn(setup: DealerSetupNN, secret: BitColumn, seed: int,
            word_length: int = DEFAULT_WORD_LENGTH) -> list[ShareNN]:
    """Split the secret column and encode each split under its holder's graph."""
    secret = bit_column(secret)
    if len(secret) != setup.k:
        raise SharingError(f"secret column length {len(secret)} != k={setup.k}")
    rng = random.Random(seed)
    columns = split_bits_nn(secret, setup.n, rng.getrandbits(64))
    shares = []
    for j, column in enumerate(columns, start=1):
        graph = setup.participant_graphs[j - 1]
        words = encode_column(Raag(graph), column, word_length, rng.getrandbits(64))
        shares.append(ShareNN(participant=j, graph=graph, words=words))
    return shares


def decode_share_nn(share: ShareNN) -> BitColumn:
    return decode_column(Raag(share.graph), share.words)


def deal_tn(participant_graphs: Sequence[SimplicialGraph], x: int, p: int, t: int,
            seed: int, k: int | None = None,
            word_length: int = DEFAULT_WORD_LENGTH) -> tuple[ShamirSetup, list[ShareTN]]:
    """Shamir-split the secret and word-encode each share's k-bit column."""
    n = len(participant_graphs)
    rng = random.Random(seed)
    setup, points = shamir_split(x, p, t, n, rng.getrandbits(64), k=k)
    shares = []
    for (i, y), graph in zip(points, participant_graphs):
        column = int_to_bits(y, setup.k)
        words = encode_column(Raag(graph), column, word_length, rng.getrandbits(64))
        shares.append(ShareTN(participant=i, graph=graph, words=words, p=p, t=t))
    return setup, shares


def decode_share_tn(share: ShareTN) -> tuple[int, int]:
    """The participant's evaluation point: (i, y_i)."""
    column = decode_column(Raag(share.graph), share.words)
    y = bits_to_int(column)
    if y >= share.p:
        raise SharingError(f"decoded value {y} is not below the modulus {share.p}")
    return share.participant, y


# ---------------------------------------------------------------------------
# share files
#
#   scheme nn|tn
#   participant <j>
#   k <int>
#   p <int>        (tn only)
#   t <int>        (tn only)
#   <word per line, k lines; a blank line is the empty word>


def format_share(share: ShareNN | ShareTN) -> str:
    lines = []
    if isinstance(share, ShareTN):
        lines.append("scheme tn")
        lines.append(f"participant {share.participant}")
        lines.append(f"k {len(share.words)}")
        lines.append(f"p {share.p}")
        lines.append(f"t {share.t}")
    else:
        lines.append("scheme nn")
        lines.append(f"participant {share.participant}")
        lines.append(f"k {len(share.words)}")
    lines.extend(format_word(w) for w in share.words)
    return "\n".join(lines) + "\n"


def _parse_header_int(line: str, key: str) -> int:
    fields = line.split()
    if len(fields) != 2 or fields[0] != key:
        raise SharingError(f"expected '{key} <int>', got {line!r}")
    try:
        return int(fields[1])
    except ValueError:
        raise SharingError(f"expected '{key} <int>', got {line!r}") from None


def parse_share(text: str, graph: SimplicialGraph) -> ShareNN | ShareTN:
    """Parse a share file; needs the holder's secret graph to complete it."""
    lines = text.splitlines()
    if not lines:
        raise SharingError("empty share file")
    head = lines[0].split()
    if head[:1] != ["scheme"] or len(head) != 2 or head[1] not in ("nn", "tn"):
        raise SharingError(f"expected 'scheme nn|tn', got {lines[0]!r}")
    scheme = head[1]
    header_len = 3 if scheme == "nn" else 5
    if len(lines) < header_len:
        raise SharingError("truncated share header")
    participant = _parse_header_int(lines[1], "participant")
    k = _parse_header_int(lines[2], "k")
    if scheme == "tn":
        p = _parse_header_int(lines[3], "p")
        t = _parse_header_int(lines[4], "t")
    body = lines[header_len:]
    if len(body) < k:
        raise SharingError(f"expected {k} word lines, got {len(body)}")
    extra = [l for l in body[k:] if l.strip()]
    if extra:
        raise SharingError(f"unexpected trailing content {extra[0]!r}")
    words = tuple(parse_word(l) for l in body[:k])
    if scheme == "nn":
        return ShareNN(participant=participant, graph=graph, words=words)
    return ShareTN(participant=participant, graph=graph, words=words, p=p, t=t)

"""Desk-scale storage simulator: stripe data over n nodes, fail, repair.

Bytes are packed into m-bit symbols (big-endian, m/8 bytes each), grouped
into stripes of 2k symbols, and every node stores two symbols per stripe.
A repair runs once at the vector level (one transcript per failure) and is
then replayed per stripe at symbol granularity, using only surviving
nodes' stored symbols -- the ledger records exactly what moved.

A Cluster is owned by one logical task; repairs are strictly sequential.
"""

from __future__ import annotations

import random
from collections import Counter
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Callable

from .bounds import cut_bound
from .code import (
    CodeState,
    NodeContent,
    decode,
    dot,
    encode,
    find_mds_violation,
    init_systematic,
    read_systematic,
)
from .errors import (
    DimensionMismatch,
    InvariantViolation,
    TooFewNodes,
    TooFewSurvivors,
)
from .field import GF
from .repair import (
    DEFAULT_MAX_RETRIES,
    RepairTranscript,
    default_helpers,
    rebuild_symbols,
    repair,
    validate_helpers,
)

Stripe = tuple[int, ...]


@dataclass(frozen=True)
class RepairRecord:
    """Bandwidth accounting for one repair event."""

    failed: int
    stripes: int
    symbols_downloaded: int
    bound_symbols: Fraction
    naive_symbols: int
    retries: int


@dataclass
class BandwidthLedger:
    records: list[RepairRecord] = dc_field(default_factory=list)

    @property
    def downloaded(self) -> int:
        return sum(r.symbols_downloaded for r in self.records)

    @property
    def bound(self) -> Fraction:
        return sum((r.bound_symbols for r in self.records), Fraction(0))

    @property
    def naive(self) -> int:
        return sum(r.naive_symbols for r in self.records)


@dataclass
class Cluster:
    """One simulated deployment: code state plus per-node symbol stores.

    node_store[node][s] is what 1-based ``node`` holds for stripe s.  The
    ``stripes`` list keeps the ingested ground truth so invariant checks
    can compare against recomputation; extraction never touches it.
    """

    state: CodeState
    stripes: list[Stripe]
    node_store: dict[int, list[NodeContent]]
    orig_len: int
    ledger: BandwidthLedger = dc_field(default_factory=BandwidthLedger)
    history: list[RepairTranscript] = dc_field(default_factory=list)


def _symbol_bytes(field: GF) -> int:
    return field.m // 8


def _pack_stripes(data: bytes, k: int, field: GF) -> list[Stripe]:
    if not data:
        return []
    width = _symbol_bytes(field)
    stride = 2 * k * width
    padded = data + b"\x00" * (-len(data) % stride)
    stripes = []
    for off in range(0, len(padded), stride):
        chunk = padded[off : off + stride]
        stripes.append(
            tuple(
                int.from_bytes(chunk[i : i + width], "big")
                for i in range(0, stride, width)
            )
        )
    return stripes


def _unpack_stripes(stripes, field: GF, orig_len: int) -> bytes:
    width = _symbol_bytes(field)
    out = bytearray()
    for stripe in stripes:
        for sym in stripe:
            out += sym.to_bytes(width, "big")
    return bytes(out[:orig_len])


def ingest(data: bytes, n: int, k: int, field: GF, seed: int | None = None) -> Cluster:
    """Encode raw bytes across n fresh nodes.

    The final stripe is zero-padded; the original byte length is recorded
    so extraction is exact.  Empty input yields a valid zero-stripe
    cluster.
    """
    state = init_systematic(n, k, field, seed)
    stripes = _pack_stripes(data, k, field)
    node_store: dict[int, list[NodeContent]] = {node: [] for node in range(1, n + 1)}
    for stripe in stripes:
        for content in encode(state, stripe):
            node_store[content.node].append(content)
    return Cluster(
        state=state,
        stripes=stripes,
        node_store=node_store,
        orig_len=len(data),
    )


def fail_and_repair(
    cluster: Cluster,
    failed: int,
    rng: random.Random,
    *,
    helpers=None,
    max_retries: int = DEFAULT_MAX_RETRIES,
) -> Cluster:
    """Erase one node and rebuild it from k+1 helpers, symbol by symbol.

    The vector-level repair runs once; each stripe then replays the
    transcript's downloads against the helpers' stored symbols.  The
    ledger gains one record: k+1 symbols per stripe moved, against the
    cut-bound minimum and the naive 2k-per-stripe baseline.
    """
    state = cluster.state
    if state.n - 1 < state.k + 1:
        raise TooFewSurvivors(
            f"repair needs k+1={state.k + 1} survivors, only {state.n - 1} left"
        )
    if helpers is None:
        helpers = default_helpers(state, failed)
    else:
        helpers = validate_helpers(state, failed, helpers)

    new_state, transcript = repair(
        state, failed, helpers, rng, max_retries=max_retries
    )

    cluster.node_store[failed] = []  # erased; rebuilt below from downloads only
    rebuilt = []
    downloaded = 0
    for s in range(len(cluster.stripes)):
        contents = [cluster.node_store[h][s] for h in helpers]
        downloaded += len(contents)
        sym_u, sym_v = rebuild_symbols(new_state, contents, transcript)
        rebuilt.append(NodeContent(node=failed, sym_u=sym_u, sym_v=sym_v))
    cluster.node_store[failed] = rebuilt

    cluster.state = new_state
    cluster.history.append(transcript)
    n_stripes = len(cluster.stripes)
    cluster.ledger.records.append(
        RepairRecord(
            failed=failed,
            stripes=n_stripes,
            symbols_downloaded=downloaded,
            bound_symbols=cut_bound(2 * state.k, state.k, state.k + 1) * n_stripes
            if n_stripes
            else Fraction(0),
            naive_symbols=2 * state.k * n_stripes,
            retries=transcript.retries,
        )
    )
    return cluster


def extract(cluster: Cluster, via) -> bytes:
    """Recover the ingested bytes.

    ``via`` is either an iterable of exactly k node ids (full decode) or
    the string "systematic" (straight read of nodes 1..2k's u symbols,
    zero field arithmetic).
    """
    state = cluster.state
    if isinstance(via, str):
        if via != "systematic":
            raise DimensionMismatch(f"unknown extract mode {via!r}")
        stripes = [
            read_systematic(
                state,
                [cluster.node_store[node][s] for node in range(1, state.dim + 1)],
            )
            for s in range(len(cluster.stripes))
        ]
        return _unpack_stripes(stripes, state.field, cluster.orig_len)
    nodes = list(via)
    if len(nodes) < state.k:
        raise TooFewNodes(f"need k={state.k} nodes, got {len(nodes)}")
    if len(nodes) != state.k:
        raise DimensionMismatch(f"decode takes exactly k={state.k} nodes")
    stripes = [
        decode(state, [cluster.node_store[node][s] for node in nodes])
        for s in range(len(cluster.stripes))
    ]
    return _unpack_stripes(stripes, state.field, cluster.orig_len)


def check_conservation(cluster: Cluster) -> None:
    """Stored symbols must equal recomputation from the current state."""
    state = cluster.state
    gf = state.field
    for node in range(1, state.n + 1):
        u, v = state.node_columns(node)
        stored = cluster.node_store[node]
        if len(stored) != len(cluster.stripes):
            raise InvariantViolation(f"node {node} store length drifted")
        for s, stripe in enumerate(cluster.stripes):
            c = stored[s]
            if c.sym_u != dot(gf, u, stripe) or c.sym_v != dot(gf, v, stripe):
                raise InvariantViolation(
                    f"node {node} stripe {s} drifted from the code state"
                )


@dataclass
class CampaignReport:
    """Aggregated results of a fail/repair campaign.

    All bandwidth fields are totals over the campaign; ratio is the exact
    per-stripe download ratio of the scheme versus naive whole-stripe
    repair, (k+1)/(2k), independent of stripe count.
    """

    rounds: int
    n: int
    k: int
    stripes: int
    epoch: int
    retries: int
    retry_histogram: dict[int, int]
    downloaded_symbols: int
    bound_symbols: Fraction
    naive_symbols: int
    ratio: Fraction
    mds_checks: int
    systematic_checks: int
    decode_checks: int

    @property
    def mean_retries(self) -> Fraction:
        if self.rounds == 0:
            return Fraction(0)
        return Fraction(self.retries, self.rounds)

    def to_text(self) -> str:
        hist = " ".join(
            f"{draws}:{count}" for draws, count in sorted(self.retry_histogram.items())
        )
        lines = [
            f"rounds: {self.rounds}",
            f"shape: n={self.n} k={self.k} stripes={self.stripes}",
            f"epoch: {self.epoch}",
            f"retries: total={self.retries} mean={self.mean_retries}",
            f"retry_histogram: {hist if hist else '-'}",
            f"downloaded_symbols: {self.downloaded_symbols}",
            f"bound_symbols: {self.bound_symbols}",
            f"naive_symbols: {self.naive_symbols}",
            f"ratio: {self.ratio}",
            f"invariants: mds={self.mds_checks}/{self.rounds} "
            f"systematic={self.systematic_checks}/{self.rounds} "
            f"decode={self.decode_checks}/{self.rounds}",
        ]
        return "\n".join(lines) + "\n"


FailurePolicy = Callable[[random.Random, Cluster], int]


def campaign(
    cluster: Cluster,
    rounds: int,
    rng: random.Random,
    failure_policy: FailurePolicy | None = None,
) -> CampaignReport:
    """Run ``rounds`` single-failure repairs with full checking after each.

    Default policy fails a uniformly random node (repaired nodes included,
    so the same position can churn repeatedly); helpers default to the
    lowest-numbered survivors.  After every round the exhaustive MDS scan,
    the systematic read-back, and one spot decode must pass, otherwise
    InvariantViolation is raised.
    """
    state0_u = cluster.state.u_cols
    epoch0 = cluster.state.epoch
    first_record = len(cluster.ledger.records)
    histogram: Counter[int] = Counter()
    mds_checks = systematic_checks = decode_checks = 0

    for _ in range(rounds):
        if failure_policy is not None:
            failed = failure_policy(rng, cluster)
        else:
            failed = rng.randrange(cluster.state.n) + 1
        fail_and_repair(cluster, failed, rng)
        histogram[cluster.history[-1].retries] += 1

        state = cluster.state
        violation = find_mds_violation(state)
        if violation is not None:
            raise InvariantViolation(
                f"epoch {state.epoch}: columns {violation} lost full rank"
            )
        mds_checks += 1

        if state.u_cols != state0_u:
            raise InvariantViolation(f"epoch {state.epoch}: u columns changed")
        for s, stripe in enumerate(cluster.stripes):
            got = read_systematic(
                state,
                [cluster.node_store[node][s] for node in range(1, state.dim + 1)],
            )
            if got != stripe:
                raise InvariantViolation(
                    f"epoch {state.epoch}: systematic read of stripe {s} changed"
                )
        systematic_checks += 1

        if cluster.stripes:
            nodes = sorted(rng.sample(range(1, state.n + 1), state.k))
            s = rng.randrange(len(cluster.stripes))
            got = decode(state, [cluster.node_store[node][s] for node in nodes])
            if got != cluster.stripes[s]:
                raise InvariantViolation(
                    f"epoch {state.epoch}: decode via {nodes} of stripe {s} wrong"
                )
        decode_checks += 1

    records = cluster.ledger.records[first_record:]
    return CampaignReport(
        rounds=rounds,
        n=cluster.state.n,
        k=cluster.state.k,
        stripes=len(cluster.stripes),
        epoch=cluster.state.epoch,
        retries=sum(r.retries for r in records),
        retry_histogram=dict(histogram),
        downloaded_symbols=sum(r.symbols_downloaded for r in records),
        bound_symbols=sum((r.bound_symbols for r in records), Fraction(0)),
        naive_symbols=sum(r.naive_symbols for r in records),
        ratio=Fraction(cluster.state.k + 1, 2 * cluster.state.k),
        mds_checks=mds_checks,
        systematic_checks=systematic_checks,
        decode_checks=decode_checks,
    )

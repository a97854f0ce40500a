"""Single-node repair with minimum download: draw, solve, check, retry.

A failed node is rebuilt from k+1 helpers.  The replacement downloads ONE
symbol from each helper i, the blend alpha_i*x.u_i + beta_i*x.v_i, so a
repair moves k+1 symbols per stripe instead of the naive 2k.

The coefficients must satisfy two constraints:

  * the downloaded blends must sum to x.u_failed exactly, so the u symbol
    is reconstructed verbatim (the code stays systematic);
  * the new v column, a rho-weighted recombination of the same blends,
    must keep all 2n columns (2n, 2k)-MDS.

Writing the per-helper coefficients as one vector eta = (alpha_1, beta_1,
..., alpha_(k+1), beta_(k+1)) and stacking the helpers' columns into
A = [u_h1, v_h1, ..., u_h(k+1), v_h(k+1)], the first constraint is
A @ eta = u_failed.  A is 2k x (2k+2) and any 2k of its columns are
independent (they are distinct columns of an MDS code), so the solution
set is a 2-parameter affine family: fixing any two entries of eta pins
the rest uniquely.  We expose (alpha_1, beta_1) as the free pair, draw it
uniformly together with rho_1..rho_(k+1) -- k+3 random symbols per
attempt -- and accept iff the resulting replacement column clears every
(2k-1)-subset determinant.  Rejection probability per draw is at most
degree_bound(n, k) / |F|, tiny for the supported fields, so the retry
loop terminates almost immediately in practice.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, replace
from itertools import combinations

from . import matrix
from .code import CodeState, Column
from .errors import (
    BadHelpers,
    DimensionMismatch,
    InvariantViolation,
    RetriesExhausted,
    UnsupportedShape,
)

DEFAULT_MAX_RETRIES = 64


@dataclass(frozen=True)
class RepairDraw:
    """The k+3 free coefficients of one repair attempt.

    alpha1/beta1 are the blend coefficients at the first helper; the
    remaining 2k blend coefficients follow from them.  rho holds the k+1
    recombination weights, aligned with the helper list.  Draw order is
    alpha1, beta1, rho[0], ..., rho[k].
    """

    alpha1: int
    beta1: int
    rho: tuple[int, ...]


@dataclass(frozen=True)
class RepairTranscript:
    """Everything one repair did, enough to audit or replay it."""

    failed: int
    helpers: tuple[int, ...]
    draw: RepairDraw
    alpha: tuple[int, ...]
    beta: tuple[int, ...]
    v_new: Column
    retries: int
    epoch_before: int
    epoch_after: int


def validate_helpers(state: CodeState, failed: int, helpers) -> tuple[int, ...]:
    if not 1 <= failed <= state.n:
        raise BadHelpers(f"failed node {failed} outside 1..{state.n}")
    if state.n < state.k + 2:
        raise UnsupportedShape(
            f"repair needs k+1={state.k + 1} surviving helpers; "
            f"n={state.n} < k+2={state.k + 2}"
        )
    helpers = tuple(helpers)
    if len(helpers) != state.k + 1:
        raise BadHelpers(f"need exactly k+1={state.k + 1} helpers, got {len(helpers)}")
    if len(set(helpers)) != len(helpers):
        raise BadHelpers(f"duplicate helpers in {helpers}")
    for h in helpers:
        if not 1 <= h <= state.n:
            raise BadHelpers(f"helper {h} outside 1..{state.n}")
        if h == failed:
            raise BadHelpers(f"failed node {failed} cannot be its own helper")
    return helpers


def default_helpers(state: CodeState, failed: int) -> tuple[int, ...]:
    """The k+1 lowest-numbered survivors."""
    picks = [h for h in range(1, state.n + 1) if h != failed][: state.k + 1]
    return validate_helpers(state, failed, picks)


def _helper_columns(state: CodeState, helpers) -> list[Column]:
    """Columns of A: u and v of each helper, interleaved in helper order."""
    cols = []
    for h in helpers:
        u, v = state.node_columns(h)
        cols.append(u)
        cols.append(v)
    return cols


def _solve_fixed_pair(
    state: CodeState,
    failed: int,
    helpers,
    fixed: tuple[int, int],
    values: tuple[int, int],
) -> list[int]:
    """Full coefficient vector eta with two entries pinned.

    fixed holds two 0-based positions into eta; values their prescribed
    entries.  The remaining 2k entries are the unique solution of the
    reduced square system, which is invertible whenever the MDS invariant
    holds -- Singular here signals a corrupted state, not bad input.
    """
    gf = state.field
    a_cols = _helper_columns(state, helpers)
    i, j = fixed
    vi, vj = values
    target = state.u_cols[failed - 1]
    rhs = [
        t ^ gf.mul(vi, a_cols[i][r]) ^ gf.mul(vj, a_cols[j][r])
        for r, t in enumerate(target)
    ]
    kept = [c for c in range(len(a_cols)) if c != i and c != j]
    rows = [[a_cols[c][r] for c in kept] for r in range(state.dim)]
    rest = matrix.solve(gf, rows, rhs)
    eta = [0] * len(a_cols)
    eta[i] = vi
    eta[j] = vj
    for pos, val in zip(kept, rest):
        eta[pos] = val
    return eta


def solve_coefficients(
    state: CodeState, failed: int, helpers, alpha1: int, beta1: int
) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Per-helper download coefficients with (alpha1, beta1) free.

    Returns (alpha, beta), each of length k+1 aligned with helpers; the
    blends they define sum to the failed node's u column exactly.
    """
    helpers = validate_helpers(state, failed, helpers)
    eta = _solve_fixed_pair(state, failed, helpers, (0, 1), (alpha1, beta1))
    return tuple(eta[0::2]), tuple(eta[1::2])


def combine_replacement(state: CodeState, helpers, alpha, beta, rho) -> Column:
    """New v column: sum of rho_i * (alpha_i u_i + beta_i v_i) over helpers."""
    if not len(helpers) == len(alpha) == len(beta) == len(rho):
        raise DimensionMismatch(
            f"helpers/alpha/beta/rho lengths differ: "
            f"{len(helpers)}/{len(alpha)}/{len(beta)}/{len(rho)}"
        )
    gf = state.field
    acc = [0] * state.dim
    for h, a, b, r in zip(helpers, alpha, beta, rho):
        if r == 0:
            continue
        u, v = state.node_columns(h)
        for idx in range(state.dim):
            blend = gf.mul(a, u[idx]) ^ gf.mul(b, v[idx])
            acc[idx] ^= gf.mul(r, blend)
    return tuple(acc)


def retained_columns(state: CodeState, failed: int) -> list[Column]:
    """The 2n-1 columns that survive a failure of node ``failed``.

    Order: u_1..u_n, then every v except the failed node's, ascending.
    """
    return list(state.u_cols) + [
        v for i, v in enumerate(state.v_cols) if i != failed - 1
    ]


def retained_label(state: CodeState, failed: int, pos: int) -> str:
    """Name of a retained-column position ('u2', 'v5', ...)."""
    if pos < state.n:
        return f"u{pos + 1}"
    v_ids = [i + 1 for i in range(state.n) if i + 1 != failed]
    return f"v{v_ids[pos - state.n]}"


def find_replacement_conflict(
    state: CodeState, failed: int, v_new
) -> tuple[int, ...] | None:
    """First (2k-1)-subset the candidate column fails against, or None.

    The candidate keeps the code MDS iff for every (2k-1)-subset S of the
    retained columns, det([S | v_new]) != 0: subsets avoiding v_new were
    full-rank before the repair and stay untouched.  Subsets are scanned
    in lexicographic order and the scan stops at the first zero
    determinant -- rejection is cheap, acceptance pays the full product.
    """
    if len(v_new) != state.dim:
        raise DimensionMismatch(
            f"replacement column must have 2k={state.dim} entries, got {len(v_new)}"
        )
    kept = retained_columns(state, failed)
    gf = state.field
    v_new = tuple(v_new)
    for subset in combinations(range(len(kept)), state.dim - 1):
        block = [kept[i] for i in subset]
        block.append(v_new)
        if matrix.det(gf, block) == 0:
            return subset
    return None


def replacement_keeps_mds(state: CodeState, failed: int, v_new) -> bool:
    return find_replacement_conflict(state, failed, v_new) is None


def _draw(state: CodeState, rng: random.Random) -> RepairDraw:
    gf = state.field
    alpha1 = gf.random_element(rng)
    beta1 = gf.random_element(rng)
    rho = tuple(gf.random_element(rng) for _ in range(state.k + 1))
    return RepairDraw(alpha1=alpha1, beta1=beta1, rho=rho)


def repair(
    state: CodeState,
    failed: int,
    helpers,
    rng: random.Random,
    *,
    max_retries: int = DEFAULT_MAX_RETRIES,
) -> tuple[CodeState, RepairTranscript]:
    """Repair one failed node; returns the new state and a transcript.

    Draws the k+3 free coefficients uniformly, solves the remaining ones,
    synthesizes the replacement v column and accepts iff the exhaustive
    subset check passes; otherwise redraws.  max_retries bounds *rejected*
    draws -- with a properly sized field the expected number of retries is
    well below one, so exhausting them signals a broken configuration.
    """
    helpers = validate_helpers(state, failed, helpers)
    retries = 0
    while True:
        draw = _draw(state, rng)
        alpha, beta = solve_coefficients(state, failed, helpers, draw.alpha1, draw.beta1)
        v_new = combine_replacement(state, helpers, alpha, beta, draw.rho)
        if find_replacement_conflict(state, failed, v_new) is None:
            new_v = list(state.v_cols)
            new_v[failed - 1] = v_new
            new_state = replace(state, v_cols=tuple(new_v), epoch=state.epoch + 1)
            transcript = RepairTranscript(
                failed=failed,
                helpers=helpers,
                draw=draw,
                alpha=alpha,
                beta=beta,
                v_new=v_new,
                retries=retries,
                epoch_before=state.epoch,
                epoch_after=new_state.epoch,
            )
            return new_state, transcript
        retries += 1
        if retries > max_retries:
            raise RetriesExhausted(
                f"{retries} rejected draws for failed={failed}; expected "
                f"rejection rate is under d0/|F|, so the field or shape "
                f"is misconfigured"
            )


def subset_witness(state: CodeState, failed: int, helpers, subset) -> RepairDraw:
    """A draw guaranteed to clear one given (2k-1)-subset.

    Constructive existence argument used as a test oracle: the 2k-1
    retained columns in ``subset`` cannot cover all 2k+2 helper columns,
    so some helper has its u or v outside the subset.  Prescribing that
    helper's blend to be exactly that column (beta=1,alpha=0 for v;
    alpha=1,beta=0 for u), mapping the prescription back to the free
    (alpha1, beta1) pair, and putting the whole rho weight on that helper
    makes the replacement column equal the outside column, whose
    determinant against the subset is nonzero because the pre-repair code
    was MDS.  The witness targets this subset only; it generally fails the
    full acceptance scan.
    """
    helpers = validate_helpers(state, failed, helpers)
    picked = set(subset)
    pos_u = {h: h - 1 for h in helpers}
    v_ids = [i + 1 for i in range(state.n) if i + 1 != failed]
    pos_v = {node: state.n + idx for idx, node in enumerate(v_ids)}
    for t, h in enumerate(helpers):
        if pos_v[h] not in picked:
            pinned = (0, 1)  # replacement becomes v_h
        elif pos_u[h] not in picked:
            pinned = (1, 0)  # replacement becomes u_h
        else:
            continue
        eta = _solve_fixed_pair(state, failed, helpers, (2 * t, 2 * t + 1), pinned)
        rho = tuple(1 if i == t else 0 for i in range(state.k + 1))
        return RepairDraw(alpha1=eta[0], beta1=eta[1], rho=rho)
    raise InvariantViolation(
        "no helper column outside the subset; counting argument violated"
    )


def rebuild_symbols(state, contents, transcript: RepairTranscript) -> tuple[int, int]:
    """Replay one stripe's downloads and rebuild the failed node's symbols.

    ``contents`` holds the helpers' NodeContent for the stripe, in
    transcript helper order.  Each helper ships the single blended symbol
    d_i = alpha_i*sym_u + beta_i*sym_v; the replacement node stores
    (sum d_i, sum rho_i d_i), which equal the stripe's dot products with
    the failed node's u column and new v column.
    """
    if len(contents) != len(transcript.helpers):
        raise DimensionMismatch(
            f"expected {len(transcript.helpers)} helper contents, got {len(contents)}"
        )
    for c, h in zip(contents, transcript.helpers):
        if c.node != h:
            raise DimensionMismatch(
                f"contents out of order: got node {c.node}, expected helper {h}"
            )
    if state.epoch != transcript.epoch_after:
        raise InvariantViolation(
            f"transcript is for epoch {transcript.epoch_after}, state is at "
            f"{state.epoch}"
        )
    if state.v_cols[transcript.failed - 1] != transcript.v_new:
        raise InvariantViolation("transcript v column does not match state")
    gf = state.field
    sym_u = 0
    sym_v = 0
    for c, a, b, r in zip(contents, transcript.alpha, transcript.beta, transcript.draw.rho):
        d = gf.mul(a, c.sym_u) ^ gf.mul(b, c.sym_v)
        sym_u ^= d
        sym_v ^= gf.mul(r, d)
    return sym_u, sym_v

"""Code state: 2n vectors {u_i, v_i} in F^(2k) across n storage nodes.

Node i stores two symbols per stripe x: x.u_i and x.v_i (dot products over
the field).  The u columns are pinned forever; the v columns evolve as
repairs happen.  The maintained invariant is that the 2n columns of
[U | V] form a (2n, 2k)-MDS code -- every 2k-subset has full rank 2k --
which implies the n nodes form an (n, k)-MDS code, and additionally
u_1..u_2k stay equal to the standard basis so the first 2k nodes expose
the stripe verbatim.

Columns are 0-indexed internally; node ids in the public API are 1-based
(they name physical machines, and the serialized files use the same ids).
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from . import matrix
from .bounds import degree_bound
from .errors import (
    BadShape,
    DimensionMismatch,
    FieldTooSmall,
    MissingNode,
)
from .field import GF

Column = tuple[int, ...]


@dataclass(frozen=True)
class CodeState:
    """Immutable snapshot of the code at one epoch.

    u_cols[i] / v_cols[i] are the length-2k column vectors of node i+1.
    A repair produces a new CodeState with one v column replaced and
    epoch incremented; u columns never change.
    """

    n: int
    k: int
    field: GF
    u_cols: tuple[Column, ...]
    v_cols: tuple[Column, ...]
    epoch: int = 0

    @property
    def dim(self) -> int:
        return 2 * self.k

    def node_columns(self, node: int) -> tuple[Column, Column]:
        """(u, v) columns of a 1-based node id."""
        if not 1 <= node <= self.n:
            raise BadShape(f"node {node} outside 1..{self.n}")
        return self.u_cols[node - 1], self.v_cols[node - 1]


@dataclass(frozen=True)
class NodeContent:
    """What one node stores for one stripe."""

    node: int
    sym_u: int
    sym_v: int


def dot(gf: GF, a, b) -> int:
    if len(a) != len(b):
        raise DimensionMismatch(f"dot of lengths {len(a)} and {len(b)}")
    exp, log = gf.exp, gf.log
    acc = 0
    for x, y in zip(a, b):
        if x and y:
            acc ^= exp[log[x] + log[y]]
    return acc


def init_systematic(n: int, k: int, field: GF, seed: int | None = None) -> CodeState:
    """Fresh systematic code state for n nodes and k data pieces.

    The 2n columns are those of the systematic generator [I | C] where C
    is a 2k x (2n-2k) Cauchy matrix on the distinct points 0..2k-1 (rows)
    and 2k..2n-1 (columns): C[r][j] = 1 / (r + (2k+j)) in the field.
    Every square submatrix of a Cauchy matrix is nonsingular, so every
    2k-subset of columns of [I | C] has full rank and the MDS invariant
    holds by construction (tests re-verify it exhaustively).

    Identity columns become u_1..u_2k.  The 2n-2k Cauchy columns fill
    u_(2k+1)..u_n and then v_1..v_n, in that order.

    ``seed`` is accepted for call-site symmetry with the randomized repair
    path but unused: this construction is deterministic.
    """
    if k < 1:
        raise BadShape(f"k must be >= 1, got {k}")
    if 2 * k > n:
        raise BadShape(f"shape requires 2k <= n, got n={n}, k={k}")
    d0 = degree_bound(n, k)
    if field.order <= d0:
        raise FieldTooSmall(
            f"|F|={field.order} <= d0={d0} for (n={n}, k={k}); use a larger field"
        )
    if 2 * n > field.order:
        raise FieldTooSmall(
            f"need 2n={2 * n} distinct field points, field has {field.order}"
        )

    dim = 2 * k
    basis = [tuple(1 if r == c else 0 for r in range(dim)) for c in range(dim)]
    parity = [
        tuple(field.inv(r ^ (dim + j)) for r in range(dim))
        for j in range(2 * n - dim)
    ]
    u_cols = tuple(basis) + tuple(parity[: n - dim])
    v_cols = tuple(parity[n - dim :])
    return CodeState(n=n, k=k, field=field, u_cols=u_cols, v_cols=v_cols, epoch=0)


def all_columns(state: CodeState) -> tuple[Column, ...]:
    """The 2n stored columns in the fixed order u_1..u_n, v_1..v_n."""
    return state.u_cols + state.v_cols


def column_label(state: CodeState, pos: int) -> str:
    """Human-readable name for a position in all_columns ('u3', 'v1', ...)."""
    if pos < state.n:
        return f"u{pos + 1}"
    return f"v{pos - state.n + 1}"


def find_mds_violation(state: CodeState) -> tuple[int, ...] | None:
    """First rank-deficient 2k-subset of the 2n columns, or None.

    Exhaustive over all C(2n, 2k) subsets in lexicographic order; positions
    index into all_columns.  det of the transpose equals det of the matrix,
    so each subset's columns are fed to det directly as rows.
    """
    cols = all_columns(state)
    gf = state.field
    for subset in combinations(range(2 * state.n), state.dim):
        if matrix.det(gf, [cols[i] for i in subset]) == 0:
            return subset
    return None


def is_mds(state: CodeState) -> bool:
    """True iff every 2k-subset of the 2n columns has full rank 2k."""
    return find_mds_violation(state) is None


def encode(state: CodeState, stripe) -> list[NodeContent]:
    """Store one stripe of 2k information symbols on all n nodes."""
    if len(stripe) != state.dim:
        raise DimensionMismatch(
            f"stripe must have 2k={state.dim} symbols, got {len(stripe)}"
        )
    gf = state.field
    return [
        NodeContent(
            node=i + 1,
            sym_u=dot(gf, state.u_cols[i], stripe),
            sym_v=dot(gf, state.v_cols[i], stripe),
        )
        for i in range(state.n)
    ]


def decode(state: CodeState, contents) -> Column:
    """Recover a stripe from any k distinct nodes' contents.

    Each node contributes two linear equations (its u and v dot products),
    giving a 2k x 2k system that is invertible whenever the MDS invariant
    holds; a Singular error here means the invariant itself is broken.
    """
    if len(contents) != state.k:
        raise DimensionMismatch(
            f"decode needs exactly k={state.k} nodes, got {len(contents)}"
        )
    nodes = [c.node for c in contents]
    if len(set(nodes)) != len(nodes):
        raise DimensionMismatch(f"duplicate node ids in {nodes}")
    rows = []
    rhs = []
    for c in contents:
        u, v = state.node_columns(c.node)
        rows.append(u)
        rhs.append(c.sym_u)
        rows.append(v)
        rhs.append(c.sym_v)
    return tuple(matrix.solve(state.field, rows, rhs))


def read_systematic(state: CodeState, contents) -> Column:
    """Read the stripe straight off nodes 1..2k, no field arithmetic.

    u_i = e_i for i <= 2k at every epoch, so node i's u symbol *is* the
    i-th information symbol.  Extra nodes in ``contents`` are ignored.
    """
    by_node = {c.node: c for c in contents}
    out = []
    for node in range(1, state.dim + 1):
        c = by_node.get(node)
        if c is None:
            raise MissingNode(f"systematic read needs node {node}")
        out.append(c.sym_u)
    return tuple(out)

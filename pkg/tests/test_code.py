import random
from dataclasses import replace
from itertools import combinations

import pytest
from hypothesis import given, strategies as st

from mdsrepair import matrix
from mdsrepair.code import (
    NodeContent,
    all_columns,
    column_label,
    decode,
    dot,
    encode,
    find_mds_violation,
    init_systematic,
    is_mds,
    read_systematic,
)
from mdsrepair.errors import (
    BadShape,
    DimensionMismatch,
    FieldTooSmall,
    MissingNode,
)
from mdsrepair.field import GF

from oracles import cofactor_det

GF256 = GF(8)
STATE_4_2 = init_systematic(4, 2, GF256)

stripes_4 = st.lists(st.integers(0, 255), min_size=4, max_size=4).map(tuple)


def test_init_shape_and_systematic_columns():
    st4 = STATE_4_2
    assert st4.n == 4 and st4.k == 2 and st4.epoch == 0
    assert st4.u_cols[0] == (1, 0, 0, 0)
    assert st4.u_cols[1] == (0, 1, 0, 0)
    assert st4.u_cols[2] == (0, 0, 1, 0)
    assert st4.u_cols[3] == (0, 0, 0, 1)
    assert len(st4.v_cols) == 4
    assert all(len(c) == 4 for c in st4.v_cols)


def test_init_is_mds_against_independent_rank_oracle():
    cols = all_columns(STATE_4_2)
    assert len(cols) == 8
    checked = 0
    for subset in combinations(range(8), 4):
        rows = [cols[i] for i in subset]  # det(A^T) == det(A)
        assert cofactor_det(rows, 8, 0x11D) != 0, subset
        assert matrix.rank(GF256, rows) == 4, subset
        checked += 1
    assert checked == 70
    assert is_mds(STATE_4_2)


def test_init_6_3_is_mds(gf65536):
    state = init_systematic(6, 3, gf65536)
    assert find_mds_violation(state) is None


def test_init_rejects_bad_shapes():
    with pytest.raises(BadShape):
        init_systematic(3, 2, GF256)
    with pytest.raises(BadShape):
        init_systematic(4, 0, GF256)


def test_init_rejects_small_field(gf65536):
    # d0(6,3) = 924 needs |F| > 924
    with pytest.raises(FieldTooSmall):
        init_systematic(6, 3, GF256)
    state = init_systematic(6, 3, gf65536)
    assert state.n == 6


def test_init_deterministic_and_seed_independent():
    again = init_systematic(4, 2, GF256, seed=99)
    assert again == STATE_4_2


def test_duplicated_column_breaks_mds():
    v_cols = list(STATE_4_2.v_cols)
    v_cols[0] = STATE_4_2.u_cols[0]
    broken = replace(STATE_4_2, v_cols=tuple(v_cols))
    violation = find_mds_violation(broken)
    assert violation is not None
    # both copies of the duplicated column sit in the reported subset
    assert 0 in violation and 4 in violation
    labels = [column_label(broken, p) for p in violation]
    assert "u1" in labels and "v1" in labels


def test_column_labels():
    assert column_label(STATE_4_2, 0) == "u1"
    assert column_label(STATE_4_2, 3) == "u4"
    assert column_label(STATE_4_2, 4) == "v1"
    assert column_label(STATE_4_2, 7) == "v4"


def test_encode_unit_and_zero_stripes():
    for j in range(4):
        stripe = tuple(1 if i == j else 0 for i in range(4))
        contents = encode(STATE_4_2, stripe)
        assert contents[j].sym_u == 1  # systematic column j+1 exposes x_j
    zero = encode(STATE_4_2, (0, 0, 0, 0))
    assert all(c.sym_u == 0 and c.sym_v == 0 for c in zero)


def test_encode_rejects_wrong_length():
    with pytest.raises(DimensionMismatch):
        encode(STATE_4_2, (1, 2, 3))


@given(stripes_4)
def test_encode_matches_dot_oracle(stripe):
    contents = encode(STATE_4_2, stripe)
    for i, c in enumerate(contents):
        want_u = 0
        want_v = 0
        for r in range(4):
            want_u ^= GF256.mul(STATE_4_2.u_cols[i][r], stripe[r])
            want_v ^= GF256.mul(STATE_4_2.v_cols[i][r], stripe[r])
        assert (c.sym_u, c.sym_v) == (want_u, want_v)


@given(stripes_4)
def test_decode_every_k_subset(stripe):
    contents = encode(STATE_4_2, stripe)
    for subset in combinations(range(4), 2):
        picked = [contents[i] for i in subset]
        assert decode(STATE_4_2, picked) == stripe


def test_decode_from_systematic_pair_by_hand():
    stripe = (7, 11, 13, 17)
    c1 = NodeContent(node=1, sym_u=stripe[0], sym_v=dot(GF256, STATE_4_2.v_cols[0], stripe))
    c2 = NodeContent(node=2, sym_u=stripe[1], sym_v=dot(GF256, STATE_4_2.v_cols[1], stripe))
    assert decode(STATE_4_2, [c1, c2]) == stripe


def test_decode_validates_inputs():
    contents = encode(STATE_4_2, (1, 2, 3, 4))
    with pytest.raises(DimensionMismatch):
        decode(STATE_4_2, contents[:1])
    with pytest.raises(DimensionMismatch):
        decode(STATE_4_2, [contents[0], contents[0]])


@given(stripes_4)
def test_read_systematic_is_identity(stripe):
    contents = encode(STATE_4_2, stripe)
    assert read_systematic(STATE_4_2, contents) == stripe


def test_read_systematic_agrees_with_decode():
    rng = random.Random(8)
    for _ in range(25):
        stripe = tuple(rng.randrange(256) for _ in range(4))
        contents = encode(STATE_4_2, stripe)
        assert read_systematic(STATE_4_2, contents) == decode(STATE_4_2, contents[:2])


def test_read_systematic_missing_node():
    contents = encode(STATE_4_2, (1, 2, 3, 4))
    with pytest.raises(MissingNode):
        read_systematic(STATE_4_2, contents[:3])  # node 4 absent, dim=4 needed


def test_read_systematic_zero():
    contents = encode(STATE_4_2, (0, 0, 0, 0))
    assert read_systematic(STATE_4_2, contents) == (0, 0, 0, 0)


def test_n2_k1_initializes_but_is_tiny():
    # 2k <= n holds and d0(2,1) = 6 < 256; encode/decode work
    state = init_systematic(2, 1, GF256)
    stripe = (3, 9)
    contents = encode(state, stripe)
    assert decode(state, [contents[1]]) == stripe

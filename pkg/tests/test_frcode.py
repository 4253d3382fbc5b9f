import itertools

import pytest
from hypothesis import given, settings

from flowercode.frcode import (
    FrCode,
    SubsetLimitError,
    best_case_file_size,
    capacity_profile,
    dual,
    generalized_bound,
    guaranteed_file_size,
    inclusion_exclusion,
    is_universally_good,
    mbr_bound,
    pairwise_overlap,
    parameters,
)
from flowercode.oracle import oracle_file_size

from conftest import codes


def test_from_node_lists(five_packet):
    assert five_packet.total == 10
    assert all(c in (0, 1) for row in five_packet.counts for c in row)
    assert FrCode.from_node_lists(2, 1, [[1], [1]]).parameters().replication == (2,)
    assert FrCode.from_node_lists(1, 1, [[1, 1]]).A(1, 1) == 2


def test_from_node_lists_errors():
    with pytest.raises(ValueError):
        FrCode.from_node_lists(2, 3, [[1, 4], [2]])
    with pytest.raises(ValueError):
        FrCode.from_node_lists(3, 3, [[1], [2]])


def test_dict_round_trip(five_packet):
    data = five_packet.to_dict()
    assert data == {"n": 4, "theta": 5, "nodes": [[1, 2, 3], [1, 4, 5], [2, 4], [3, 5]]}
    messy = {"n": 2, "theta": 2, "nodes": [[2, 1, 2], [1]]}
    assert FrCode.from_dict(messy).to_dict()["nodes"] == [[1, 2, 2], [1]]


def test_parameters(five_packet):
    p = parameters(five_packet)
    assert p.node_sizes == (3, 3, 2, 2)
    assert p.replication == (2, 2, 2, 2, 2)
    assert (p.alpha, p.rho) == (3, 2)
    d = parameters(dual(five_packet))
    assert d.node_sizes == (2, 2, 2, 2, 2)
    assert d.replication == p.node_sizes == (3, 3, 2, 2)
    assert (d.alpha, d.rho) == (2, 3)
    z = parameters(FrCode(2, 2, ((0, 0), (0, 0))))
    assert z.node_sizes == (0, 0) and z.replication == (0, 0)


def test_pairwise_overlap(five_packet, flower_code):
    assert pairwise_overlap(flower_code, 2, 4) == 2
    assert pairwise_overlap(five_packet, 1, 2) == 1
    assert pairwise_overlap(FrCode.from_node_lists(2, 2, [[1], [2]]), 1, 2) == 0
    with pytest.raises(ValueError):
        pairwise_overlap(five_packet, 2, 2)
    with pytest.raises(ValueError):
        pairwise_overlap(five_packet, 1, 5)


def test_universally_good(five_packet, flower_code):
    assert all(
        pairwise_overlap(five_packet, i, p) <= 1 for i, p in itertools.combinations(range(1, 5), 2)
    )
    assert is_universally_good(five_packet).good
    v = is_universally_good(flower_code)
    assert not v.good
    assert v.witness == (2, 4)
    assert v.overlap == 2
    assert v.shared == (1, 3)
    assert is_universally_good(FrCode.from_node_lists(1, 3, [[1, 2, 3]])).good


def test_duplicates_are_diagnostic_only():
    code = FrCode.from_node_lists(2, 2, [[1, 1, 2], [2]])
    v = is_universally_good(code)
    assert v.good
    assert v.duplicates == ((1, 1, 2),)


def test_file_sizes(five_packet, flower_code):
    assert guaranteed_file_size(five_packet, 1) == 2
    assert guaranteed_file_size(five_packet, 2) == 4
    assert guaranteed_file_size(five_packet, 4) == 5
    assert best_case_file_size(five_packet, 2) == 5
    assert best_case_file_size(five_packet, 1) == 3
    assert best_case_file_size(flower_code, 2) == 4
    for k in range(1, 5):
        assert guaranteed_file_size(five_packet, k) == oracle_file_size(five_packet, k, "min")
    with pytest.raises(ValueError):
        guaranteed_file_size(five_packet, 0)
    with pytest.raises(ValueError):
        best_case_file_size(five_packet, 5)


def test_subset_ceiling(five_packet):
    with pytest.raises(SubsetLimitError):
        guaranteed_file_size(five_packet, 2, limit=5)


def test_duplicates_count_once():
    code = FrCode.from_node_lists(2, 2, [[1, 1], [1, 2]])
    assert guaranteed_file_size(code, 1) == 1
    assert best_case_file_size(code, 1) == 2


def test_bounds(five_packet):
    assert mbr_bound(2, 3) == 5
    assert mbr_bound(1, 7) == 7
    with pytest.raises(ValueError):
        mbr_bound(4, 3)
    assert generalized_bound(five_packet, 2) == 3
    assert guaranteed_file_size(five_packet, 2) >= generalized_bound(five_packet, 2)


def test_capacity_profile(five_packet, flower_code):
    prof = capacity_profile(five_packet)
    assert [r.guaranteed for r in prof.rows] == [2, 4, 5, 5]
    assert [r.best_case for r in prof.rows] == [3, 5, 5, 5]
    assert [r.mbr for r in prof.rows] == [3, 5, 6, None]
    assert [r.generalized for r in prof.rows] == [2, 3, 4, 4]
    assert prof.generalized_valid and not prof.uniform_alpha
    assert not capacity_profile(flower_code).generalized_valid


def test_dual(five_packet, flower_code):
    assert dual(five_packet).nodes() == [[1, 2], [1, 3], [1, 4], [2, 3], [2, 4]]
    assert dual(dual(five_packet)) == five_packet
    d = dual(flower_code)
    p = parameters(d)
    assert (d.n, d.theta, p.alpha, p.rho) == (4, 4, 3, 3)


@given(codes())
def test_sum_identity(code):
    p = parameters(code)
    assert sum(p.node_sizes) == sum(p.replication) == code.total


@given(codes())
def test_dual_involution(code):
    assert dual(dual(code)) == code


@given(codes(max_count=1))
def test_dual_preserves_universal_goodness(code):
    if is_universally_good(code).good:
        assert is_universally_good(dual(code)).good


@settings(max_examples=60)
@given(codes(max_count=1))
def test_capacity_invariants(code):
    prof = capacity_profile(code)
    guaranteed = [r.guaranteed for r in prof.rows]
    assert guaranteed == sorted(guaranteed)
    assert guaranteed[-1] == sum(1 for col in zip(*code.counts) if any(col))
    assert all(r.guaranteed <= r.best_case or _has_triple(code) for r in prof.rows)
    if is_universally_good(code).good:
        for r in prof.rows:
            assert r.guaranteed >= r.generalized
            if prof.uniform_alpha and r.mbr is not None:
                assert r.guaranteed >= r.mbr


def _has_triple(code):
    return any(sum(1 for c in col if c) >= 3 for col in zip(*code.counts))


@given(codes(max_count=2))
def test_inclusion_exclusion_matches_union_without_triples(code):
    sets = [code.support(i) for i in range(1, code.n + 1)]
    for k in range(1, code.n + 1):
        for subset in itertools.combinations(range(code.n), k):
            if any(sets[a] & sets[b] & sets[c] for a, b, c in itertools.combinations(subset, 3)):
                continue
            union = set().union(*(sets[i] for i in subset))
            assert inclusion_exclusion(code, [i + 1 for i in subset]) == len(union)

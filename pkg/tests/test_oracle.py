import random

import pytest
from hypothesis import given, settings

from flowercode.flower import FlowerSpec, construct, duplicate_placements, incidence_counts
from flowercode.frcode import FrCode, best_case_file_size, guaranteed_file_size
from flowercode.oracle import (
    check_suite,
    fuzz,
    oracle_construct,
    oracle_file_size,
    random_spec,
)

from conftest import codes


def test_oracle_file_size(five_packet):
    assert oracle_file_size(five_packet, 2, "min") == 4
    assert oracle_file_size(five_packet, 2, "max") == 5
    assert oracle_file_size(five_packet, 4, "min") == 5
    with pytest.raises(ValueError):
        oracle_file_size(five_packet, 0)
    with pytest.raises(ValueError):
        oracle_file_size(five_packet, 1, "median")


def test_oracle_construct_examples(ring_spec, flower_spec):
    assert oracle_construct(ring_spec).nodes() == [[1, 2, 3], [1, 4, 5], [2, 4, 6], [3, 5, 6]]
    assert oracle_construct(flower_spec).nodes() == [[2, 4], [1, 3], [1, 4], [1, 2, 3]]


def test_check_suite_examples(five_packet, flower_spec, periodic_spec):
    assert check_suite(five_packet) == []
    assert check_suite(flower_spec) == []
    assert check_suite(periodic_spec) == []
    assert duplicate_placements(periodic_spec)


def test_check_suite_catches_a_wrong_formula(monkeypatch, flower_spec):
    from flowercode import flower

    monkeypatch.setattr(flower, "replication_from_y", lambda spec: [0] * spec.theta)
    found = check_suite(flower_spec, spec_only=True)
    assert [d.check for d in found] == ["replication from y"]
    assert found[0].to_dict()["oracle"] == [3, 2, 2, 2]


def test_random_specs_are_valid():
    rng = random.Random(3)
    for _ in range(200):
        spec = random_spec(rng)
        assert spec.x.weight == spec.y.weight >= max(spec.n, spec.theta)
        assert len(spec.x) <= 64 and spec.n <= 8 and spec.theta <= 8


def test_fuzz_small_campaign():
    assert fuzz(300, seed=11, spec_only=False) == []


@given(codes(max_n=6, max_theta=6, max_count=2))
def test_min_oracle_agrees(code):
    for k in range(1, code.n + 1):
        assert guaranteed_file_size(code, k) == oracle_file_size(code, k, "min")


@given(codes(max_n=6, max_theta=6, max_count=1))
def test_max_oracle_agrees_without_triples(code):
    if all(sum(col) <= 2 for col in zip(*code.counts)):
        for k in range(1, code.n + 1):
            assert best_case_file_size(code, k) == oracle_file_size(code, k, "max")

import pytest
from hypothesis import given, settings, strategies as st

from flowercode.flower import construct, validate
from flowercode.frcode import is_universally_good
from flowercode.sequence import parse
from flowercode.generator import (
    GenerationStuck,
    GeneratorState,
    generate,
    step_feasible,
)


def table2_state(rows):
    """Replay the accepted (a, b) steps of the worked n = theta = 3 example."""
    state = GeneratorState(3, 3, 6)
    for a, b in rows:
        assert step_feasible(state, a, b)
        state.apply(a, b)
    return state


def test_first_step_places_p1_on_u2():
    state = GeneratorState(3, 3, 6)
    assert step_feasible(state, 1, 3)
    assert state.target(1, 3) == (2, 1)


def test_replay_first_four_rows():
    state = table2_state([(1, 3), (3, 2), (1, 2)])
    assert tuple(state.x) == parse("10^010^210^01").bits
    assert tuple(state.y) == parse("10^210^110^11").bits
    assert [(e.i, e.j) for e in state.trace] == [(1, 1), (2, 1), (2, 3), (3, 2)]
    # placing P2 on U3 again: m = 6 -> 9, r = 8 -> 11
    assert state.target(3, 3) == (3, 2)
    assert not step_feasible(state, 3, 3)


def test_empty_row_and_column_always_feasible():
    state = GeneratorState(4, 4, 8)
    assert state.target(1, 1) == (2, 2)
    assert step_feasible(state, 1, 1)


def test_step_range_checks():
    state = GeneratorState(3, 3, 6)
    with pytest.raises(ValueError):
        step_feasible(state, 0, 1)
    with pytest.raises(ValueError):
        step_feasible(state, 1, 4)


def test_target_code_reproduced():
    target = [[1, 2], [1, 3], [2, 3]]
    assert generate(3, 3, 6, "random", seed=4).code.nodes() == target
    lex = generate(3, 3, 6, "lex").code.nodes()
    assert sorted(map(tuple, lex)) == sorted(map(tuple, target))


def test_trivial():
    g = generate(1, 1, 1)
    assert (str(g.x), str(g.y), g.code.nodes()) == ("1", "1", [[1]])


def test_random_is_deterministic():
    a = generate(4, 4, 8, "random", seed=12345)
    b = generate(4, 4, 8, "random", seed=12345)
    assert (a.x, a.y, a.code) == (b.x, b.y, b.code)


def test_random_draws_seed():
    g = generate(3, 3, 3, "random")
    assert g.seed is not None and 0 <= g.seed < 1 << 64


def test_argument_errors():
    with pytest.raises(ValueError):
        generate(3, 3, 2)
    with pytest.raises(ValueError):
        generate(3, 3, 6, "spiral")
    with pytest.raises(ValueError):
        generate(3, 3, 6, "random", seed=-1)


def test_row_and_col_shapes():
    row = generate(3, 4, 6, "row")
    assert str(row.x) == "1" * 6
    col = generate(4, 3, 6, "col")
    assert str(col.y) == "1" * 6


def test_stuck_carries_partial_state():
    # two nodes and two packets admit at most three distinct placements here
    with pytest.raises(GenerationStuck) as info:
        generate(2, 2, 8, "lex")
    state = info.value.state
    assert info.value.weight == state.w < 8
    assert sum(state.x) == sum(state.y) == state.w
    assert construct(state.spec())[0] == state.code()
    assert is_universally_good(state.code()).good


@settings(max_examples=200, deadline=None)
@given(
    st.integers(1, 6),
    st.integers(1, 6),
    st.integers(0, 14),
    st.sampled_from(["lex", "random", "row", "col"]),
    st.integers(0, 2**64 - 1),
)
def test_generated_codes_are_universally_good(n, theta, extra, strategy, seed):
    z = max(n, theta) + extra
    try:
        g = generate(n, theta, z, strategy, seed)
    except GenerationStuck as exc:
        state = exc.state
        assert construct(state.spec())[0] == state.code()
        return
    spec = g.spec
    assert validate(spec) == []
    assert g.x.weight == g.y.weight == z
    assert g.x[len(g.x)] == g.y[len(g.y)] == 1
    assert construct(spec)[0] == g.code
    assert is_universally_good(g.code).good
    assert g.code.is_binary()

import pytest
from hypothesis import strategies as st

from flowercode import BitSeq, FlowerSpec, FrCode

RING_X = "1011010100100100100010100101"
FLOWER_X = "101101111101"
FLOWER_Y = "0100100010110101101"
PERIODIC_X = "110110110110110"


@pytest.fixture
def five_packet():
    return FrCode.from_node_lists(4, 5, [[1, 2, 3], [1, 4, 5], [2, 4], [3, 5]])


@pytest.fixture
def ring_spec():
    return FlowerSpec(4, 6, RING_X, "1^{12}")


@pytest.fixture
def flower_spec():
    return FlowerSpec(4, 4, FLOWER_X, FLOWER_Y)


@pytest.fixture
def flower_code():
    return FrCode.from_node_lists(4, 4, [[2, 4], [1, 3], [1, 4], [1, 2, 3]])


@pytest.fixture
def periodic_spec():
    return FlowerSpec(4, 5, PERIODIC_X, "1^{10}")


bitseqs = st.lists(st.integers(0, 1), max_size=40).map(lambda b: BitSeq(tuple(b)))
nonempty_bitseqs = st.lists(st.integers(0, 1), min_size=1, max_size=40).map(
    lambda b: BitSeq(tuple(b))
)


@st.composite
def valid_specs(draw, max_n=8, max_theta=8, max_len=64):
    n = draw(st.integers(1, max_n))
    theta = draw(st.integers(1, max_theta))
    w = draw(st.integers(max(n, theta), max_len))

    def seq():
        length = draw(st.integers(w, max_len))
        ones = set(draw(st.permutations(range(length)))[:w])
        return BitSeq(tuple(int(p in ones) for p in range(length)))

    return FlowerSpec(n, theta, seq(), seq())


@st.composite
def codes(draw, max_n=6, max_theta=6, max_count=2):
    n = draw(st.integers(1, max_n))
    theta = draw(st.integers(1, max_theta))
    rows = draw(
        st.lists(
            st.lists(st.integers(0, max_count), min_size=theta, max_size=theta),
            min_size=n,
            max_size=n,
        )
    )
    return FrCode(n, theta, tuple(map(tuple, rows)))


_criteria = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(num, title): acceptance criterion")


def pytest_runtest_logreport(report):
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        marker = _criterion_markers.get(report.nodeid)
        if marker is not None:
            _criteria[marker] = report.outcome


_criterion_markers = {}


def pytest_collection_modifyitems(items):
    for item in items:
        m = item.get_closest_marker("criterion")
        if m is not None:
            _criterion_markers[item.nodeid] = m.args


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for (num, title), outcome in sorted(_criteria.items()):
        status = "PASS" if outcome == "passed" else "FAIL"
        terminalreporter.write_line(f"{status}  criterion {num:>2}: {title}")

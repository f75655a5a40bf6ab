import pytest

from kaprekar import Params, build_index

_cache = {}


def index_for(D, base=10):
    key = (base, D)
    if key not in _cache:
        _cache[key] = build_index(Params(base, D))
    return _cache[key]


@pytest.fixture(params=[3, 4, 5, 6], ids=lambda D: f"D{D}")
def index(request):
    return index_for(request.param)


@pytest.fixture
def ix3():
    return index_for(3)


@pytest.fixture
def ix4():
    return index_for(4)


@pytest.fixture
def ix5():
    return index_for(5)


@pytest.fixture
def ix6():
    return index_for(6)


_ACCEPTANCE = []


@pytest.fixture
def verdict():
    """Record one acceptance line, then assert it."""

    def record(label, ok, detail):
        line = f"{'PASS' if ok else 'FAIL'}  {label}: {detail}"
        _ACCEPTANCE.append(line)
        print(line)
        assert ok, line

    return record


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in _ACCEPTANCE:
            terminalreporter.write_line(line)

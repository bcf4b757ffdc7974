import pytest

from zigzag_reps import Add, Del, ingest_events


def lone_vertex():
    return ingest_events([Add("v", 0, ())])


def uve(delete_u=False):
    events = [Add("u", 0, ()), Add("v", 0, ()), Add("e", 1, (("u", -1), ("v", 1))), Del("e"), Del("v")]
    if delete_u:
        events.append(Del("u"))
    return ingest_events(events)


def hollow_triangle():
    return ingest_events(
        [
            Add("a", 0, ()),
            Add("b", 0, ()),
            Add("c", 0, ()),
            Add("ab", 1, (("a", -1), ("b", 1))),
            Add("bc", 1, (("b", -1), ("c", 1))),
            Add("ac", 1, (("a", -1), ("c", 1))),
        ]
    )


@pytest.fixture
def lone():
    return lone_vertex()


@pytest.fixture
def uve_complex():
    return uve()


@pytest.fixture
def triangle():
    return hollow_triangle()


ACCEPTANCE = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE):
        ok, text = ACCEPTANCE[key]
        terminalreporter.write_line(f"criterion {key}: {'PASS' if ok else 'FAIL'}  {text}")

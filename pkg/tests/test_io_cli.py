import io
import json

import pytest
from hypothesis import given, settings, strategies as st

from zigzag_reps import DeltaComplex, ingest_events, pad
from zigzag_reps.cli import main
from zigzag_reps.generate import random_events, random_interval_complex
from zigzag_reps.io import ParseError, format_events, format_interval, parse, parse_events, parse_interval, to_events

LONE = "# a single vertex\nfield 2\ncell v 0 1 1\n"
UVE = "add u 0\nadd v 0\nadd e 1 u:-1 v:1\ndel e\ndel v\n"


def run(args, tmp_path, text=None, name="in.txt"):
    argv = list(args)
    if text is not None:
        path = tmp_path / name
        path.write_text(text)
        argv.insert(1, str(path))
    out, err = io.StringIO(), io.StringIO()
    code = main(argv, out, err)
    return code, out.getvalue(), err.getvalue()


def test_parse_interval():
    parsed = parse(LONE)
    assert parsed.format == "interval" and parsed.p == 2
    assert [tuple(r.lifetime) for r in parsed.complex] == [(1, 1)]


def test_parse_events():
    parsed = parse(UVE)
    assert parsed.format == "events"
    assert {r.id: tuple(r.lifetime) for r in parsed.complex} == {"u": (1, 9), "v": (3, 7), "e": (5, 5)}


def test_addsimplex():
    c = parse("addsimplex a\naddsimplex b\naddsimplex a b\ndelsimplex a b\n").complex
    assert c["a,b"].boundary == (("b", 1), ("a", -1))


@pytest.mark.parametrize(
    "text, line",
    [
        ("field 2\ncell v 0 x 1\n", 2),
        ("field 4\n", 1),
        ("cell v 0 1 1\nbogus\n", 2),
        ("cell e 1 3 5 u1\n", 1),
        ("add v 0\ndel v w\n", 2),
    ],
)
def test_parse_errors_have_line_numbers(text, line):
    with pytest.raises(ParseError) as exc:
        parse(text)
    assert exc.value.line == line
    assert f"line {line}" in str(exc.value)


def test_event_errors_are_parse_errors():
    with pytest.raises(ParseError, match="unknown"):
        parse_events("del v\n")


@settings(max_examples=40, deadline=None)
@given(seed=st.integers(0, 10**6))
def test_interval_round_trip(seed):
    c = random_interval_complex(seed, m=20)
    text = format_interval(c, 5)
    again = parse_interval(text)
    assert again.complex == c and again.p == 5
    assert format_interval(again.complex, 5) == text
    padded = pad(c)
    assert parse_interval(format_interval(padded)).complex == padded


@settings(max_examples=40, deadline=None)
@given(seed=st.integers(0, 10**6))
def test_event_round_trip(seed):
    events = random_events(seed, m=20)
    c = ingest_events(events)
    assert parse_events(format_events(events)).complex == c
    # re-serializing the complex as events visits the same spaces
    c2 = ingest_events(to_events(c))
    seq = lambda x: [s for k, s in enumerate(map(frozenset, (x.space(i) for i in range(x.n + 1)))) if k == 0 or s != frozenset(x.space(k - 1))]
    assert seq(c2) == seq(c)


def test_cli_barcode_lone(tmp_path):
    code, out, _ = run(["barcode"], tmp_path, LONE)
    assert code == 0
    assert out.splitlines()[0].startswith("0: dim 0 closed-closed [1,3]")
    code, out, _ = run(["barcode", "--json"], tmp_path, LONE)
    data = json.loads(out)
    assert data["bars"] == [
        {
            "id": 0,
            "dim": 0,
            "type": "closed-closed",
            "span": [1, 3],
            "input_span": [1, 1],
            "apex": {"b": 1, "d": 3, "kind": "(b,d)"},
            "pair": {"kind": "extended_cc", "birth": "Base('v')", "death": "Coned('v')"},
        }
    ]


def test_cli_reps_lone(tmp_path):
    code, out, _ = run(["reps", "--bar", "0", "--index", "2"], tmp_path, LONE)
    assert (code, out) == (0, "v: 1\n")
    code, out, _ = run(["reps", "--json"], tmp_path, LONE)
    data = json.loads(out)
    assert data["reps"][0]["apex"] == [{"cell": "v", "run": [1, 3], "coeff": 1}]
    assert data["reps"][0]["slices"] == {"1": {"v": 1}, "2": {"v": 1}, "3": {"v": 1}}


def test_cli_reps_errors(tmp_path):
    assert run(["reps", "--bar", "5"], tmp_path, LONE)[0] == 3
    assert run(["reps", "--bar", "0", "--index", "7"], tmp_path, LONE)[0] == 3
    code, _, err = run(["reps", "--bar", "0", "--index", "0"], tmp_path, LONE)
    assert code == 3 and "outside the span" in err


def test_cli_reps_by_index(tmp_path):
    code, out, _ = run(["reps", "--index", "3", "--field", "3"], tmp_path, UVE)
    assert code == 0
    assert "bar 0" in out and "bar 1" in out and "bar 2" not in out


def test_cli_validate(tmp_path):
    code, out, _ = run(["validate"], tmp_path, LONE)
    assert code == 0 and "repaired by padding" in out
    bad = "cell u 0 1 7\ncell e 1 1 5 u:1\n"
    code, out, _ = run(["validate"], tmp_path, bad)
    assert code == 1 and "tmin(u) < tmin(e) fails" in out
    assert run(["barcode"], tmp_path, bad)[0] == 1


def test_cli_io_errors(tmp_path):
    code, _, err = main(["barcode", str(tmp_path / "missing.txt")], io.StringIO(), io.StringIO()), None, None
    assert code == 3
    code, _, err = run(["barcode"], tmp_path, "cell v 0 1\n")
    assert code == 3 and "line 1" in err
    assert main(["nonsense"], io.StringIO(), io.StringIO()) == 3


def test_cli_verify(tmp_path):
    code, out, _ = run(["verify"], tmp_path, UVE)
    assert code == 0 and "all checks passed" in out
    out_io = io.StringIO()
    assert main(["verify", "--seed", "7", "--count", "4"], out_io, io.StringIO()) == 0
    bad = "cell u 0 1 7\ncell e 1 1 5 u:1\n"
    assert run(["verify"], tmp_path, bad)[0] == 1


def test_cli_plot(tmp_path):
    code, out, _ = run(["plot"], tmp_path, UVE)
    assert code == 0 and "closed-open" in out and "[)" in out
    code, out, _ = run(["plot", "--svg"], tmp_path, UVE)
    assert code == 0 and out.startswith("<svg") and out.count("stroke-width") == 3


def test_cli_bench(tmp_path):
    out = io.StringIO()
    assert main(["bench", "--sizes", "200", "--repeat", "1", "--json"], out, io.StringIO()) == 0
    data = json.loads(out.getvalue())
    assert data["rows"][0]["m"] >= 200 and data["rows"][0]["lift_s"] > 0


def test_cli_format_flag(tmp_path):
    code, _, err = run(["barcode", "--format", "interval"], tmp_path, UVE)
    assert code == 3 and "line 1" in err
    assert run(["barcode", "--format", "events"], tmp_path, UVE)[0] == 0

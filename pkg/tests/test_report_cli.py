import json

import pytest

from subloc.cli import main
from subloc.corpus import gen_chain
from subloc.latfile import serialize_lattice
from subloc.report import (FINITE_NOTE, SCHEMA_VERSION, frame_report,
                           render_suite_text, run_suite)
from subloc.runner import corpus_report

C3_TEXT = "lattice 3\nbottom 0\ntop 2\n0 < 1\n1 < 2\n"


@pytest.fixture()
def c3_file(tmp_path):
    p = tmp_path / "c3.lat"
    p.write_text(C3_TEXT)
    return str(p)


def test_frame_report_frozen_values(c3):
    rep = frame_report("c3", c3)
    assert rep["schema_version"] == SCHEMA_VERSION
    assert rep["elements"] == 3
    assert rep["sublocales"] == 4
    assert rep["fitted_sublocales"] == 3
    assert rep["primes"] == [0, 1]
    assert rep["strongly_exact_filters"] == 3
    assert rep["smallest_codense_size"] == 4


def test_all_suites_pass_on_small_frames(c3, b2):
    for fw in (c3, b2):
        for suite in ("laws", "adjunction", "correspondence"):
            result = run_suite(suite, "x", fw)
            assert result["ok"], render_suite_text(result)
            assert result["schema_version"] == SCHEMA_VERSION
            assert json.dumps(result, sort_keys=True)


def test_correspondence_suite_carries_finite_scale_note(c3):
    result = run_suite("correspondence", "c3", c3)
    assert FINITE_NOTE in result["notes"]
    assert result["smooth_is_all"] and result["exact_is_all"]


def test_unknown_suite_rejected(c3):
    with pytest.raises(ValueError):
        run_suite("nope", "c3", c3)


def test_render_marks_failures(c3):
    result = run_suite("laws", "c3", c3)
    text = render_suite_text(result)
    assert "[ok]" in text and "FAIL" not in text
    result["checks"][0]["ok"] = False
    result["checks"][0]["counterexamples"] = [(1, 2)]
    assert "counterexample: (1, 2)" in render_suite_text(result)


def test_cli_analyze(c3_file, capsys):
    assert main(["analyze", c3_file]) == 0
    out = capsys.readouterr().out
    assert "sublocales: 4" in out
    assert main(["analyze", c3_file, "--json"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["fitted_sublocales"] == 3


def test_cli_sublocales_listing_and_dot(c3_file, capsys):
    assert main(["sublocales", c3_file]) == 0
    out = capsys.readouterr().out
    assert "0: {2}" in out and "open(0)" in out
    assert main(["sublocales", c3_file, "--dot"]) == 0
    dot = capsys.readouterr().out
    assert dot.startswith("digraph") and dot.count("label=") == 4
    assert main(["sublocales", c3_file, "--host", "SoL"]) == 0
    assert len(capsys.readouterr().out.strip().splitlines()) == 3


def test_cli_dot_on_two_chain(tmp_path, capsys):
    p = tmp_path / "c2.lat"
    p.write_text(serialize_lattice(gen_chain(2)))
    assert main(["sublocales", str(p), "--dot"]) == 0
    dot = capsys.readouterr().out
    assert dot.count("label=") == 2


def test_cli_subcolocales(c3_file, capsys):
    assert main(["subcolocales", c3_file, "--filter", "codense"]) == 0
    out = capsys.readouterr().out
    assert out.strip() == "{0, 1, 2, 3}"
    assert main(["subcolocales", c3_file, "--host", "SoL",
                 "--filter", "proper"]) == 0
    assert capsys.readouterr().out.strip() == "{0, 1, 2}"
    # proper filtering is only defined on the fitted host
    assert main(["subcolocales", c3_file, "--filter", "proper"]) == 2


def test_cli_check_suites(c3_file, capsys):
    for suite in ("laws", "adjunction", "correspondence"):
        assert main(["check", c3_file, "--suite", suite]) == 0
        assert "ok" in capsys.readouterr().out
    assert main(["check", c3_file, "--suite", "laws", "--json"]) == 0
    assert json.loads(capsys.readouterr().out)["ok"] is True


def test_cli_roundtrip(c3_file, capsys):
    assert main(["roundtrip", c3_file]) == 0
    assert capsys.readouterr().out == C3_TEXT


def test_cli_corpus(tmp_path, capsys):
    out = tmp_path / "corpus"
    assert main(["corpus", "--out", str(out), "--points4", "2",
                 "--seed", "3"]) == 0
    files = sorted(p.name for p in out.iterdir())
    assert len(files) == 41
    assert "chain6.lat" in files and "top4_s3_1.lat" in files
    again = tmp_path / "again"
    assert main(["corpus", "--out", str(again), "--points4", "2",
                 "--seed", "3"]) == 0
    for name in files:
        assert (out / name).read_text() == (again / name).read_text()


def test_cli_input_errors(tmp_path, capsys):
    assert main(["analyze", str(tmp_path / "missing.lat")]) == 2
    bad = tmp_path / "bad.lat"
    bad.write_text("lattice 3\n0 < 1\n")
    assert main(["analyze", str(bad)]) == 2
    big = tmp_path / "big.lat"
    big.write_text(serialize_lattice(gen_chain(13)))
    assert main(["analyze", str(big)]) == 2
    assert "error:" in capsys.readouterr().err


def test_cli_limit_overrides(c3_file, capsys):
    assert main(["--limit", "bogus", "analyze", c3_file]) == 2
    assert main(["--limit", "no_such_limit=5", "analyze", c3_file]) == 2
    assert "unknown limit" in capsys.readouterr().err
    # tightening the element bound turns a fine input into an input error
    assert main(["--limit", "scan_frame_elements=2", "analyze", c3_file]) == 2
    assert main(["--limit", "scan_frame_elements=3", "analyze", c3_file]) == 0


def test_cli_rejects_unknown_command(c3_file):
    with pytest.raises(SystemExit):
        main(["frobnicate", c3_file])


def test_corpus_report_parallel_matches_serial():
    serial = corpus_report(("laws",), jobs=1)
    pooled = corpus_report(("laws",), jobs=2)
    assert serial == pooled
    assert serial["ok"]
    assert serial["frames"] == sorted(serial["frames"])
    assert [r["frame"] for r in serial["results"]] == serial["frames"]
    assert serial["schema_version"] == SCHEMA_VERSION


def test_cli_report_command(capsys):
    assert main(["report", "--suite", "laws", "--jobs", "1", "--json"]) == 0
    rep = json.loads(capsys.readouterr().out)
    assert rep["ok"] and len(rep["results"]) == 39
    assert main(["report", "--suite", "laws", "--jobs", "1"]) == 0
    assert "[ok]" in capsys.readouterr().out

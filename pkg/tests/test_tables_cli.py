"""The bench layer (row computation, fixtures) and the CLI surface."""

import io
import json

import pytest

from eigenbounds import cli, tables
from eigenbounds.errors import FixtureNotFound
from eigenbounds.spectra import Spectrum


def test_make_space_all_metrics():
    assert tables.make_space("city-block", m=4, n=2).ambient_size == 16
    assert tables.make_space("phase-rotation", q=4, n=2).ambient_size == 16
    assert tables.make_space("varshamov", n=3).ambient_size == 8
    assert tables.make_space("block", q=2, partition="1,2|3").ambient_size == 8
    assert tables.make_space("cyclic-burst", q=2, n=4, b=2).ambient_size == 16
    s = tables.make_space("projective", q=2, subspaces="1,0;0,1;1,1")
    assert s.ambient_size == 4


def test_partition_roundtrip():
    assert tables.parse_partition("1,2|3,4") == ((1, 2), (3, 4))
    assert tables.format_partition(((1, 2), (3,))) == "1,2|3"


def test_compute_row_spec_examples():
    row = tables.compute_row(tables.make_space("city-block", m=4, n=3), 5,
                             ["inertia", "plotkin", "hamming"])
    assert (row.cell("inertia"), row.cell("plotkin"), row.cell("hamming")) == \
        ("4", "4", "32/5")
    row = tables.compute_row(tables.make_space("phase-rotation", q=3, n=4), 2,
                             ["inertia", "ratio", "singleton"])
    assert (row.cell("inertia"), row.cell("ratio"), row.cell("singleton")) == \
        ("11", "6", "9")
    assert row.cell("alpha") == "6"
    row = tables.compute_row(tables.make_space("varshamov", n=2), 1,
                             ["inertia", "varshamov"])
    assert (row.cell("inertia"), row.cell("varshamov"), row.cell("alpha")) == \
        ("2", "2", "2")


def test_load_fixture_counts():
    assert len(tables.load_fixture(2)) == 19
    assert len(tables.load_fixture(3)) == 8
    assert len(tables.load_fixture(4)) == 5
    assert len(tables.load_fixture(5)) == 28
    assert len(tables.load_fixture(6)) == 9
    with pytest.raises(FixtureNotFound):
        tables.load_fixture(7)


def run_cli(argv):
    out = io.StringIO()
    import contextlib
    with contextlib.redirect_stdout(out):
        code = cli.main(argv)
    return code, out.getvalue()


def test_cli_bound_markdown():
    code, text = run_cli(["bound", "city-block", "--m", "4", "--n", "3",
                          "--k", "5", "--bounds", "inertia,plotkin,hamming"])
    assert code == 0
    assert "| 4 | 4 | 32/5 | 4 |" in text


def test_cli_bound_json_roundtrip():
    code, text = run_cli(["bound", "phase-rotation", "--q", "3", "--n", "2",
                          "--k", "1", "--format", "json"])
    assert code == 0
    payload = json.loads(text)
    assert payload["bounds"]["inertia"] == "7"
    assert payload["bounds"]["ratio"] == "3"
    assert payload["bounds"]["alpha"] == "3"
    assert payload["d"] == 2


def test_cli_d_flag_equivalent():
    _, via_k = run_cli(["bound", "varshamov", "--n", "3", "--k", "2",
                        "--format", "json"])
    _, via_d = run_cli(["bound", "varshamov", "--n", "3", "--d", "3",
                        "--format", "json"])
    assert via_k == via_d


def test_cli_rejects_both_k_and_d():
    code, _ = run_cli(["bound", "varshamov", "--n", "3", "--k", "1", "--d", "2"])
    assert code == 2


def test_cli_spectrum_exact_and_check():
    code, text = run_cli(["spectrum", "phase-rotation", "--q", "3", "--n", "2",
                          "--check"])
    assert code == 0 and text.strip() == "{6:1, 0:6, -3:2}"
    code, text = run_cli(["spectrum", "city-block", "--m", "3", "--n", "1"])
    assert code == 0 and "1.4142135624" in text
    code, text = run_cli(["spectrum", "phase-rotation", "--q", "2", "--n", "3",
                          "--format", "json"])
    assert json.loads(text) == {"distinct": [4, 0, -4], "mults": [1, 6, 1],
                                "exact": True}


def test_cli_spectrum_check_mismatch_fails(monkeypatch):
    # corrupt the closed-form route: --check must exit nonzero
    monkeypatch.setattr(tables, "spectrum_for",
                        lambda space, graph=None: Spectrum((6, 0, -3), (1, 5, 3),
                                                           exact=True))
    code, _ = run_cli(["spectrum", "phase-rotation", "--q", "3", "--n", "2",
                       "--check"])
    assert code == 2


def test_cli_verify_table4():
    code, text = run_cli(["verify", "4"])
    assert code == 0
    assert text.count("ok") == 5 and "PASS table 4" in text


def test_cli_export_graph(tmp_path):
    out_file = tmp_path / "graph.txt"
    code, _ = run_cli(["export-graph", "city-block", "--m", "3", "--n", "1",
                       "--out", str(out_file)])
    assert code == 0
    assert out_file.read_text() == "3 2\n0 1\n1 2\n"


def test_cli_determinism():
    argv = ["bound", "cyclic-burst", "--q", "2", "--n", "5", "--b", "2",
            "--k", "2", "--format", "csv"]
    assert run_cli(argv) == run_cli(argv)

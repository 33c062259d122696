import csv
import io
import json
import subprocess
import sys
from fractions import Fraction

import pytest

from qdirac import cli
from qdirac.cli import (
    CSV_COLUMNS,
    ConfigError,
    RunConfig,
    cmd_spectrum,
    cmd_verify,
    degree_caps,
    format_reports,
    main,
    parse_reports,
)
from qdirac.irreps import HalfInt
from qdirac.report import VerificationReport


@pytest.fixture(scope="module")
def small_reports():
    cfg = RunConfig(lmax=HalfInt.parse(1), degree_cap=2, suites=["constants", "irreps", "dirac"])
    return cmd_verify(cfg)


def test_verify_exit_zero(capsys):
    assert main(["verify", "--lmax", "1", "--degree", "2", "--suites", "constants,dirac"]) == 0
    out = capsys.readouterr().out
    assert out.strip().endswith("checks passed")
    assert "✓ constants." in out


def test_verify_exit_one_on_failure(monkeypatch, capsys):
    bad = VerificationReport("constants.fake", "x = y", "fail", "x != y", 0)
    monkeypatch.setattr(cli, "run_suite", lambda name, config: [bad])
    assert main(["verify", "--suites", "constants"]) == 1
    assert "witness: x != y" in capsys.readouterr().out


@pytest.mark.parametrize(
    "argv",
    [
        ["verify", "--degree", "0"],
        ["verify", "--lmax", "1/3"],
        ["verify", "--lmax", "0"],
        ["verify", "--q", "-2"],
        ["verify", "--q", "abc"],
        ["verify", "--format", "xml"],
        ["verify", "--suites", "dirac,bogus"],
        ["spectrum", "-1"],
        ["spectrum", "5", "--lmax", "2"],
        ["spectrum", "1", "--q", "0"],
        [],
    ],
)
def test_config_errors_exit_two(argv, capsys):
    assert main(argv) == 2
    assert "error" in capsys.readouterr().err


def test_degree_caps():
    assert degree_caps(1) == (1,)
    assert degree_caps(2) == (2,)
    assert degree_caps(3) == (2, 3)


def test_json_round_trip(small_reports):
    text = format_reports(small_reports, "json")
    assert parse_reports(text) == small_reports
    keys = set(json.loads(text)[0])
    assert keys == {"check_id", "anchor", "status", "witness", "elapsed_ms"}


def test_csv_format(small_reports):
    text = format_reports(small_reports, "csv")
    rows = list(csv.reader(io.StringIO(text)))
    assert tuple(rows[0]) == CSV_COLUMNS
    assert len(rows) == len(small_reports) + 1
    assert all(r[2] == "pass" for r in rows[1:])
    assert "\r\n" in text


def test_deterministic_order(small_reports):
    cfg = RunConfig(lmax=HalfInt.parse(1), degree_cap=2, suites=["dirac", "irreps", "constants"])
    again = cmd_verify(cfg)
    assert [r.check_id for r in again] == [r.check_id for r in small_reports]
    prefixes = [r.check_id.split(".")[0] for r in again]
    assert prefixes == sorted(prefixes, key=["constants", "irreps", "dirac"].index)
    dirac_ids = [r.check_id for r in again if r.check_id.startswith("dirac.")]
    assert dirac_ids.index(next(i for i in dirac_ids if "[l=1/2]" in i)) < dirac_ids.index(
        next(i for i in dirac_ids if "[l=1]" in i)
    )


def test_format_from_environment(monkeypatch, capsys, tmp_path):
    monkeypatch.setenv(cli.FORMAT_ENV, "json")
    out = tmp_path / "r.json"
    assert main(["verify", "--lmax", "1/2", "--suites", "constants", "--out", str(out)]) == 0
    assert capsys.readouterr().out == ""
    assert all(r.passed for r in parse_reports(out.read_text()))


def test_spectrum_rows():
    assert cmd_spectrum(HalfInt.parse(0), None) == [("plus", "0", None, 2)]
    rows = cmd_spectrum(HalfInt.parse(1), Fraction(4))
    assert rows == [("plus", "1", Fraction(1), 4), ("minus", "-(q^2 + q^(-2))", Fraction(-257, 16), 2)]
    # q not a rational square: odd powers of s are absent, so evaluation stays exact
    rows = cmd_spectrum(HalfInt.parse("1/2"), Fraction(2))
    assert rows[0][2] == Fraction(2, 5) and rows[1][2] == Fraction(-21, 10)


def test_spectrum_classical_point(capsys):
    assert main(["spectrum", "1", "--q", "1", "--format", "json"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert [(d["tower"], d["value"], d["multiplicity"]) for d in data] == [("plus", "1", 4), ("minus", "-2", 2)]


def test_config_validate():
    with pytest.raises(ConfigError):
        RunConfig(sample_q=[Fraction(0)]).validate()
    assert RunConfig().validate().lmax == HalfInt.parse(3)


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "qdirac", "spectrum", "1/2", "--format", "csv"], capture_output=True, text=True
    )
    assert proc.returncode == 0
    assert proc.stdout.splitlines()[0] == "l,tower,eigenvalue,value,multiplicity"


def test_dirac_suite_for_small_lmax():
    reports = cmd_verify(RunConfig(lmax=HalfInt.parse("1/2"), suites=["dirac"]))
    ids = {r.check_id for r in reports}
    for l in ("0", "1/2"):
        for name in ("characteristic", "invariance", "total_reflection", "spectrum"):
            assert f"dirac.{name}[l={l}]" in ids
    assert not any("[l=1]" in i for i in ids)

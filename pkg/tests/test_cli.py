import json
from unittest.mock import patch

import pytest
from cleo.io.outputs.output import Verbosity
from cleo.testers.command_tester import CommandTester

from tubulene_gp.cli import create_application
from tubulene_gp.config import MAX_BRUTE_ENV


@pytest.fixture
def run(tmp_path, monkeypatch):
    """Runs a command in an empty directory and returns ``(status, stdout, stderr)``."""
    monkeypatch.chdir(tmp_path)
    application = create_application()

    def _run(name: str, args: str = "", **kwargs):
        tester = CommandTester(application.find(name))
        status = tester.execute(args, **kwargs)
        return status, tester.io.fetch_output(), tester.io.fetch_error()

    return _run


def test_build_edges(run):
    status, out, _ = run("build", "--n 2 --p 1 --format edges")
    assert status == 0
    assert len(out.splitlines()) == 10


def test_build_json(run):
    status, out, _ = run("build", "--n 6 --p 4 --format json")
    assert status == 0
    assert json.loads(out)["vertex_count"] == 60


def test_build_is_deterministic(run):
    assert run("build", "--n 6 --p 2") == run("build", "--n 6 --p 2")


@pytest.mark.parametrize("args", ["--n 5 --p 1", "--n 4", "--n four --p 1", "--n 4 --p 1 --format xml"])
def test_build_rejects_bad_input(run, args):
    status, out, err = run("build", args)
    assert status == 1
    assert out == ""
    assert err.strip()


def test_gp_all(run):
    status, out, _ = run("gp", "--n 12 --p 1 --method all")
    assert status == 0
    doc = json.loads(out)
    assert doc["oracle"] == doc["summation"] == doc["table5"] == 7104
    assert doc["agreement"] is True


def test_gp_table5_not_covered(run):
    status, out, _ = run("gp", "--n 8 --p 2 --method table5")
    assert status == 0
    doc = json.loads(out)
    assert doc["table5"] == "not_covered"
    assert "summation" not in doc


def test_gp_summation_for_large_parameters(run):
    status, out, _ = run("gp", "--n 200 --p 100 --method summation")
    assert status == 0
    assert json.loads(out)["summation"] % 101 == 0


def test_gp_verbose_reports_progress(run):
    status, _, err = run("gp", "--n 4 --p 1 --method oracle", verbosity=Verbosity.VERBOSE)
    assert status == 0
    assert "BFS oracle" in err


def test_wiener(run):
    status, out, _ = run("wiener", "--n 12 --p 1")
    assert status == 0
    doc = json.loads(out)
    assert doc["w_prime"] == 3552
    assert doc["wiener"] > doc["w_prime"]


@pytest.mark.parametrize("source", ["theorem", "action"])
def test_orbits(run, source):
    status, out, _ = run("orbits", f"--n 6 --p 4 --source {source}")
    assert status == 0
    lines = out.splitlines()
    assert len(lines) == 5
    assert all(len(line.split()) == 12 for line in lines)
    assert lines[0].split()[0] == "0"


@pytest.mark.parametrize("method", ["extension", "brute"])
def test_auts(run, method):
    status, out, _ = run("auts", f"--n 4 --p 1 --method {method}")
    assert status == 0
    lines = out.splitlines()
    assert len(lines) == 8
    assert lines[0] == "()"


def test_auts_methods_agree(run):
    assert run("auts", "--n 6 --p 1 --method extension")[1] == run("auts", "--n 6 --p 1 --method brute")[1]


def test_auts_check_structure(run):
    status, out, _ = run("auts", "--n 6 --p 2 --check-structure")
    assert status == 0
    report = out.splitlines()[12:]
    assert report[:2] == ["order: 12", "dihedral_times_z2: true"]
    assert [line.split(":")[0] for line in report[2:]] == ["r", "s", "z", "dihedral_2n", "rho", "sigma"]
    assert report[5] == "dihedral_2n: true"
    assert all(line.split(": ")[1].startswith("(") for line in report[2:5])


def test_auts_check_structure_when_four_divides_n(run):
    status, out, _ = run("auts", "--n 4 --p 1 --check-structure")
    assert status == 0
    report = out.splitlines()[8:]
    assert report[:3] == ["order: 8", "dihedral_times_z2: false", "dihedral_2n: true"]
    assert [line.split(":")[0] for line in report[3:]] == ["rho", "sigma"]


def test_auts_brute_respects_environment_cap(run):
    with patch.dict("os.environ", {MAX_BRUTE_ENV: "10"}):
        status, _, err = run("auts", "--n 6 --p 2 --method brute")
    assert status == 1
    assert "cap of 10" in err


def test_auts_flag_overrides_environment(run):
    with patch.dict("os.environ", {MAX_BRUTE_ENV: "10"}):
        status, _, _ = run("auts", "--n 4 --p 1 --method brute --max-brute-vertices 100")
    assert status == 0


def test_verify_csv(run):
    status, out, _ = run("verify", "--n-min 4 --n-max 6 --p-min 1 --p-max 2")
    assert status == 0
    lines = out.splitlines()
    assert lines[0] == (
        "n,p,oracle_gp,summation_gp,table5_gp,aut_order,structure_ok,orbits_match,distance_rows_ok,status"
    )
    assert len(lines) == 5
    assert all(line.endswith(",pass") for line in lines[1:])


@pytest.mark.slow
def test_verify_default_grid_passes(run):
    status, out, err = run("verify")
    assert status == 0, err
    rows = out.splitlines()[1:]
    assert len(rows) == 36
    assert all(row.endswith(",pass") for row in rows)
    assert {row.split(",")[6] for row in rows if int(row.split(",")[0]) % 4 == 0} == {"false"}


def test_verify_single_covered_point(run):
    status, out, _ = run("verify", "--n-min 16 --n-max 16 --p-min 4 --p-max 4 --format json --skip-structure")
    assert status == 0
    doc = json.loads(out)
    assert doc["table5_gp"] == doc["oracle_gp"] == 115200


def test_verify_is_deterministic(run):
    args = "--n-min 4 --n-max 8 --p-min 1 --p-max 3 --skip-structure"
    assert run("verify", args) == run("verify", args)


def test_verify_reads_pyproject(run, tmp_path):
    (tmp_path / "pyproject.toml").write_text('[tool.tubulene-gp]\nreport-format = "json"\n')
    status, out, _ = run("verify", "--n-min 4 --n-max 4 --p-min 1 --p-max 1")
    assert status == 0
    assert json.loads(out)["status"] == "pass"


def test_verify_exit_code_on_failure(run):
    with patch("tubulene_gp.verification.gp_summation", return_value=0):
        status, out, err = run("verify", "--n-min 8 --n-max 8 --p-min 2 --p-max 2", verbosity=Verbosity.VERBOSE)
    assert status == 1
    assert out.splitlines()[1].endswith(",fail")
    assert "orbit summation 0 != oracle 5376" in err
    assert "failed verification" in err


def test_verify_rejects_odd_bounds(run):
    status, _, err = run("verify", "--n-min 5 --n-max 9")
    assert status == 1
    assert "even" in err

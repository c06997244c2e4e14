import json

import pytest

from lospectra import cli, harmonic
from lospectra.jacobiop import assemble_matrix


@pytest.fixture(autouse=True)
def cache(tmp_path, monkeypatch):
    monkeypatch.setenv("LOSPECTRA_CACHE", str(tmp_path / "cache"))
    return tmp_path / "cache"


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr().out
    return code, (json.loads(out) if out.strip().startswith("{") else out)


def test_basis_k1(capsys):
    code, doc = run(capsys, "basis", "--k", "1")
    assert code == 0 and doc["schema"] == 1 and doc["status"] == "pass"
    polys = [v["poly"] for b in doc["results"]["blocks"] for v in b["vectors"]]
    assert len(polys) == 4
    assert [b["m"] for b in doc["results"]["blocks"]] == [1, -1]


def test_basis_empty_block(capsys):
    code, doc = run(capsys, "basis", "--k", "1", "--m", "0")
    assert code == 0 and doc["results"]["total"] == 0


def test_basis_generated_k5(capsys):
    code, doc = run(capsys, "basis", "--k", "5", "--source", "generated")
    assert code == 0 and doc["results"]["total"] == 36


def test_usage_errors(capsys):
    assert cli.main(["basis", "--k", "5"]) == 2
    assert cli.main(["inertia", "--k", "7", "--source", "generated"]) == 2
    with pytest.raises(SystemExit) as e:
        cli.main(["basis"])
    assert e.value.code == 2
    assert cli.main(["decay", "--lambda", "-5"]) == 2


def test_charpoly_golden(capsys):
    code, doc = run(capsys, "charpoly", "--k", "2", "--golden")
    assert code == 0 and doc["results"]["golden_match"] and doc["results"]["float_agrees"]


def test_inertia_k3(capsys):
    code, doc = run(capsys, "inertia", "--k", "3", "--golden")
    assert code == 0 and doc["results"]["inertia"] == [40, 8, 0]


def test_spectrum_k0(capsys):
    code, doc = run(capsys, "spectrum", "--k", "0", "--golden")
    assert code == 0
    ev = doc["results"]["exact"]["eigenvalues"]
    assert [(e["value"], e["multiplicity"]) for e in ev] == [("-10", 1), ("0", 2)]


def test_text_format(capsys):
    code, out = run(capsys, "--format", "text", "inertia", "--k", "1")
    assert code == 0 and "status=pass" in out and "inertia" in out


def test_geometry_checks(capsys):
    code, doc = run(capsys, "geometry", "--check", "killing", "--check", "connections")
    assert code == 0
    assert doc["results"]["killing"]["rank"] == 17


def test_decay(capsys):
    code, doc = run(capsys, "decay")
    assert code == 0 and doc["results"]["roots_match"]
    code, doc = run(capsys, "decay", "--lambda", "0")
    assert (doc["results"]["roots"]["plus"], doc["results"]["roots"]["minus"]) == ("0", "-4")
    code, doc = run(capsys, "decay", "--ode-demo", "-15/4")
    assert code == 0 and abs(doc["results"]["ode_demo"]["fitted_plus"] + 1.5) < 1e-3


def test_verify_all_partial(capsys):
    code, doc = run(capsys, "verify-all", "--max-k", "1", "--positivity-k", "0")
    assert code == 0 and doc["status"] == "partial"


def test_cache_round_trip(cache):
    op = assemble_matrix(2)
    path = cli.write_cached(op)
    assert path.name == "L2_paper.json"
    back = cli.read_cached(2, harmonic.paper_basis(2))
    assert back.entries == op.entries


def test_stale_cache_ignored(cache):
    op = assemble_matrix(1)
    path = cli.write_cached(op)
    doc = json.loads(path.read_text())
    doc["code_version"] = "0.0.0"
    path.write_text(json.dumps(doc))
    assert cli.read_cached(1, harmonic.paper_basis(1)) is None
    doc["code_version"] = cli.__version__
    doc["basis_hash"] = "x"
    path.write_text(json.dumps(doc))
    assert cli.read_cached(1, harmonic.paper_basis(1)) is None


def test_report_determinism(capsys):
    _, a = run(capsys, "spectrum", "--k", "1")
    _, b = run(capsys, "spectrum", "--k", "1")
    assert json.dumps(a["results"], sort_keys=True) == json.dumps(b["results"], sort_keys=True)
    assert a["determinism_hash"] == b["determinism_hash"]

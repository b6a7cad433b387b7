import csv
import io
import json

import pytest

from darboux_scattering.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def _csv(text):
    rows = [line for line in text.splitlines() if not line.startswith("#")]
    return list(csv.DictReader(io.StringIO("\n".join(rows))))


def _footer(text):
    return dict(line[2:].split("=", 1) for line in text.splitlines() if line.startswith("# "))


def test_list_families(capsys):
    code, out, _ = run(capsys, "list")
    assert code == 0
    assert {r["family"] for r in _csv(out)} == {"rm", "soliton", "hst", "morse", "eckart", "hpt", "coulomb"}


def test_list_soliton(capsys):
    code, out, _ = run(capsys, "list", "--family", "soliton", "--h", "2.5")
    rows = _csv(out)
    assert code == 0
    assert rows[0]["kind"] == "PseudoVirtual" and rows[0]["degrees"].split()[0] == "0"
    assert rows[1]["kind"] == "OvershootPseudo" and rows[1]["degrees"].split()[0] == "6"


def test_list_rm_empty_ranges(capsys):
    code, out, _ = run(capsys, "list", "--family", "rm", "--param", "h=3", "--param", "mu=2")
    kinds = {r["kind"]: r["degrees"] for r in _csv(out)}
    assert kinds["VirtualI"] == "none" and kinds["VirtualII"] == "none"


def test_list_bad_params(capsys):
    code, _, err = run(capsys, "list", "--family", "rm", "--h", "1", "--mu", "2")
    assert code == 1 and "h(h-1) > mu > 0" in err


def test_amplitudes_footer(capsys):
    code, out, _ = run(capsys, "amplitudes", "--family", "soliton", "--h", "2.5", "--seed", "twist:0")
    foot = _footer(out)
    assert code == 0 and len(_csv(out)) == 50
    assert float(foot["max_unimodularity_deviation"]) < 1e-12
    assert foot["status"] == "pass"


def test_amplitudes_oracle(capsys):
    code, out, _ = run(capsys, "amplitudes", "--family", "soliton", "--h", "2.5", "--seed", "twist:0",
                       "--k-grid", "0.5:4:3", "--oracle", "--format", "json")
    data = json.loads(out)
    assert code == 0 and "r_num_re" in data["columns"]
    assert float(data["summary"]["max_oracle_deviation"]) < 1e-4


def test_amplitudes_without_seeds_are_original(capsys):
    code, out, _ = run(capsys, "amplitudes", "--family", "morse", "--h", "1.3", "--mu", "1", "--k-grid", "0.5:2:4")
    for r in _csv(out):
        assert r["r_re"] == r["r0_re"] and r["r_im"] == r["r0_im"]


def test_amplitudes_singular_refused(capsys):
    code, _, err = run(capsys, "amplitudes", "--family", "soliton", "--h", "2.5", "--seed", "twist:1")
    assert code == 2 and "x = 0" in err


def test_force_overrides_gate(capsys):
    code, _, _ = run(capsys, "potential", "--family", "soliton", "--h", "2.5", "--seed", "twist:1",
                     "--x-grid=0.5:2:4", "--force")
    assert code == 0


def test_potential_columns(capsys, monkeypatch):
    monkeypatch.setenv("SCATTER_JET_ORDER", "5")
    code, out, _ = run(capsys, "potential", "--family", "soliton", "--h", "2.5", "--seed", "twist:0", "--x-grid=-10:10:3")
    rows = _csv(out)
    assert code == 0 and list(rows[0]) == ["x", "U", "U_M", "W", "log_abs_W"]
    assert abs(float(rows[0]["U_M"]) - float(rows[0]["U"])) < 1e-6
    assert _footer(out)["jet_order"] == "5"


def test_spectrum_soliton(capsys):
    code, out, _ = run(capsys, "spectrum", "--family", "soliton", "--h", "2.5", "--seed", "twist:0")
    rep = json.loads(out)
    eig = [p for p in rep["poles"] if p["kind"] == "EigenPole"]
    assert code == 0 and len(eig) == 4 and all(p["confirmed"] for p in eig)


def test_spectrum_morse(capsys, tmp_path):
    path = tmp_path / "m.toml"
    path.write_text('family = "morse"\n[params]\nh = 1.3\nmu = 1.0\n[[seeds]]\nkind = "overshoot"\ndegree = 3\n')
    code, out, _ = run(capsys, "spectrum", str(path))
    kinds = [p["kind"] for p in json.loads(out)["poles"]]
    assert code == 0 and kinds.count("EigenPole") == 2 and kinds.count("CancelledPole") == 1


def test_spectrum_singular(capsys):
    code, _, err = run(capsys, "spectrum", "--family", "soliton", "--h", "2.5", "--seed", "twist:1")
    assert code == 2 and "vanishes" in err


def test_regularity_codes(capsys):
    assert run(capsys, "regularity", "--family", "soliton", "--h", "2.5", "--seed", "twist:2,twist:3")[0] == 0
    code, out, _ = run(capsys, "regularity", "--family", "soliton", "--h", "2.5", "--seed", "twist:1")
    assert code == 2 and json.loads(out)["product_condition"]["verdict"] == "SingularByCondition"


def test_out_file(capsys, tmp_path):
    target = tmp_path / "a.csv"
    code, out, _ = run(capsys, "amplitudes", "--family", "soliton", "--h", "1.5", "--k-grid", "1:2:2", "--out", str(target))
    assert code == 0 and out == "" and target.read_text().startswith("k,")


@pytest.mark.parametrize("argv", [
    ["amplitudes"],
    ["amplitudes", "--family", "nope", "--h", "1"],
    ["amplitudes", "--family", "soliton", "--h", "x"],
    ["amplitudes", "--family", "soliton", "--h", "2.5", "--k-grid", "0:1"],
    ["amplitudes", "--family", "soliton", "--h", "2.5", "--seed", "foo:1"],
    ["amplitudes", "--family", "soliton", "--h", "2.5", "--seed", "overshoot:2"],
    ["amplitudes", "--family", "coulomb", "--g", "2.6", "--oracle"],
    ["amplitudes", "--family", "rm", "--h", "3"],
    ["amplitudes", "--family", "soliton", "--h"],
    ["amplitudes", "/nonexistent.toml"],
    ["verify", "--only", "99"],
])
def test_usage_errors(capsys, argv):
    assert main(argv) == 1
    capsys.readouterr()


def test_bad_subcommand_exit_code(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["bogus"])
    assert exc.value.code == 1


def test_verify_subset(capsys):
    code, out, _ = run(capsys, "verify", "--only", "1,9")
    assert code == 0
    assert out.count("[PASS]") == 2


def test_verify_failure_exit_code(capsys, monkeypatch):
    from darboux_scattering import cli
    from darboux_scattering.acceptance import CriterionResult

    monkeypatch.setattr(cli, "run_criterion", lambda n: CriterionResult(n, "stub", False, "forced"))
    code, out, _ = run(capsys, "verify", "--only", "1")
    assert code == 3 and "[FAIL]" in out

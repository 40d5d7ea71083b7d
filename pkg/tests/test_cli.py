import json

import pytest

from prmweights.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_bounds(capsys):
    code, out, _ = run(capsys, "bounds", "--q", "5", "--d", "3", "--m", "2")
    obj = json.loads(out)
    assert code == 0
    assert (obj["serre"]["value"], obj["second"]["value"], obj["third"]["value"]) == (16, 15, 12)


def test_bounds_grid(capsys):
    code, out, _ = run(capsys, "bounds", "--q", "7", "--d", "3", "4", "--m", "2", "3")
    assert code == 0 and len(json.loads(out)) == 4


def test_census(capsys):
    code, out, _ = run(capsys, "census", "--q", "3", "--d", "3", "--m", "2", "--mode", "exhaustive", "--top", "3")
    obj = json.loads(out)
    assert code == 0
    assert [t["count"] for t in obj["top"]] == [10, 9, 8]
    assert set(obj) >= {"q", "d", "m", "mode", "top", "checks"}
    assert all(c["ok"] for c in obj["checks"])


def test_census_csv(capsys):
    code, out, _ = run(capsys, "census", "--q", "3", "--d", "3", "--format", "csv")
    assert code == 0 and out.splitlines()[0] == "count,tally"


def test_census_json_is_byte_identical_across_workers(capsys):
    _, a, _ = run(capsys, "census", "--q", "4", "--d", "3", "--workers", "1")
    _, b, _ = run(capsys, "census", "--q", "4", "--d", "3", "--workers", "2")
    assert a == b
    _, a, _ = run(capsys, "census", "--q", "7", "--d", "3", "--mode", "sampled", "--n-samples", "2000")
    _, b, _ = run(capsys, "census", "--q", "7", "--d", "3", "--mode", "sampled", "--n-samples", "2000",
                  "--workers", "2")
    assert a == b


def test_extremal(capsys):
    code, out, _ = run(capsys, "extremal", "--q", "4", "--config", "hermitian")
    obj = json.loads(out)
    assert code == 0 and obj["predicted"] == obj["measured"] == 9


def test_field_code_spectrum(capsys):
    code, out, _ = run(capsys, "field", "--p", "2", "--e", "2")
    assert code == 0 and json.loads(out)["modulus"] == [1, 1, 1]
    code, out, _ = run(capsys, "code", "--q", "3", "--d", "2", "--m", "2")
    assert json.loads(out)["k"] == 6
    code, out, _ = run(capsys, "spectrum", "--q", "2", "--d", "1", "--m", "1", "--mode", "exhaustive-full",
                       "--format", "csv")
    assert out == "weight,count\n0,1\n2,3\n"


def test_classify(capsys):
    # x0 * x1 * x2 over GF(3); the basis puts x0*x1*x2 at index 4
    code, out, _ = run(capsys, "classify", "--q", "3", "--d", "3", "--coeffs", "0,0,0,0,1,0,0,0,0,0")
    obj = json.loads(out)
    assert code == 0 and "NearPencil" in obj["tags"] and obj["points"] == 9


def test_exit_codes(capsys):
    assert run(capsys, "extremal", "--q", "5", "--config", "hermitian")[0] == 2
    assert run(capsys, "field", "--q", "6")[0] == 2
    assert run(capsys, "census", "--q", "5", "--d", "4", "--budget", "1000")[0] == 3
    assert run(capsys, "classify", "--q", "3", "--d", "3", "--coeffs", "1,2")[0] == 64
    assert run(capsys, "bounds", "--d", "3")[0] == 64
    with pytest.raises(SystemExit) as exc:
        main(["census", "--q", "3"])
    assert exc.value.code == 64
    with pytest.raises(SystemExit) as exc:
        main(["nonsense"])
    assert exc.value.code == 64
    with pytest.raises(SystemExit) as exc:
        main(["census", "--q", "3", "--d", "3", "--budget", "0"])
    assert exc.value.code == 64


def test_budget_env(capsys, monkeypatch):
    monkeypatch.setenv("PRMWEIGHTS_BUDGET", "100")
    assert run(capsys, "census", "--q", "4", "--d", "3")[0] == 3


def test_verify_quick(capsys):
    code, out, _ = run(capsys, "verify", "--level", "quick", "--format", "text")
    assert code == 0
    assert out.count("[PASS]") == 10

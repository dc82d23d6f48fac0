import json
import shutil

import pytest

from hyperderiv import cli
from hyperderiv.exactalg import parse, serialize
from hyperderiv.report import SCHEMA_VERSION, emit_report, golden_path


def run_json(tmp_path, *args):
    out = tmp_path / "out.json"
    code = cli.main([*args, "--out", str(out)])
    return code, json.loads(out.read_text()), out.read_bytes()


@pytest.mark.parametrize("g", [1, 2])
def test_derive_matches_golden(tmp_path, g):
    code, doc, data = run_json(tmp_path, "derive", "--genus", str(g))
    assert code == 0
    assert data == golden_path(f"derive_g{g}.json").read_bytes()
    assert doc["schema"] == SCHEMA_VERSION
    assert doc["counts"] == {"fields": 3 * g, "brackets": 3 * g * (3 * g - 1) // 2}


def test_derive_byte_stable(tmp_path):
    _, _, a = run_json(tmp_path, "derive", "--genus", "2")
    _, _, b = run_json(tmp_path, "derive", "--genus", "2", "--parallel")
    assert a == b


def test_derive_genus1_content(tmp_path):
    _, doc, _ = run_json(tmp_path, "derive", "--genus", "1")
    imgs = doc["fields"]["L2"]["images"]
    assert imgs == {"x[1,1]": "2/3*x[3,1] - 2*x[1,1]^2", "x[2,1]": "3*x[1,1]*x[2,1]",
                    "x[3,1]": "2*x[1,1]*x[3,1] + 3*x[2,1]^2"}
    assert doc["structure"] == {"[L0,L1]": {"L1": "1"}, "[L0,L2]": {"L2": "2"},
                                "[L1,L2]": {"L1": "x[1,1]"}}


def test_golden_polynomials_round_trip():
    doc = json.loads(golden_path("derive_g2.json").read_text())
    for field in doc["fields"].values():
        for text in field["images"].values():
            assert serialize(parse(text, 2)) == text


def test_golden_dir_override(tmp_path, monkeypatch):
    shutil.copy(golden_path("derive_g1.json"), tmp_path / "derive_g1.json")
    monkeypatch.setenv("HYPERDERIV_GOLDEN_DIR", str(tmp_path))
    assert golden_path("derive_g1.json") == tmp_path / "derive_g1.json"
    assert cli.main(["derive", "--genus", "1", "--check-golden",
                     "--out", str(tmp_path / "o.json")]) == 0
    (tmp_path / "derive_g1.json").write_text("{}")
    assert cli.main(["derive", "--genus", "1", "--check-golden",
                     "--out", str(tmp_path / "o.json")]) == cli.EXIT_ERROR


def test_derive_genus3_counts(tmp_path):
    code, doc, _ = run_json(tmp_path, "derive", "--genus", "3")
    assert code == 0 and doc["counts"] == {"fields": 9, "brackets": 36}


def test_verify_genus1_numeric(tmp_path):
    code, doc, _ = run_json(tmp_path, "verify", "--genus", "1", "--numeric")
    assert code == 0 and doc["pass"]
    assert set(doc["suites"]) == set(cli.SUITES)


def test_verify_genus2(tmp_path):
    code, doc, _ = run_json(tmp_path, "verify", "--genus", "2")
    assert code == 0
    assert all(s["pass"] for s in doc["suites"].values())


def test_verify_tamper_fails(tmp_path):
    code, doc, _ = run_json(tmp_path, "verify", "--genus", "1", "--tamper", "L2")
    assert not doc["suites"]["projectability"]["pass"]
    assert code == cli.EXIT_SUITE_BASE + cli.SUITES.index("com1")


def test_timings_opt_in(tmp_path):
    _, doc, _ = run_json(tmp_path, "verify", "--genus", "1")
    assert all("seconds" not in s for s in doc["suites"].values())
    _, doc, _ = run_json(tmp_path, "verify", "--genus", "1", "--timings")
    assert all("seconds" in s for s in doc["suites"].values())


def test_kdv_command(capsys):
    assert cli.main(["kdv", "-k", "2", "--format", "text"]) == 0
    assert "free: 1/4*f(2) - 3/2*f(0)^2" in capsys.readouterr().out
    assert cli.main(["kdv", "-k", "1"]) == 0
    assert json.loads(capsys.readouterr().out)["phi"]["Phi_2"]["free"] == "f(0)"
    assert cli.main(["kdv", "-k", "3", "--embed", "--genus", "2"]) == 0
    emb = json.loads(capsys.readouterr().out)["phi"]["Phi_6"]["embedded"]
    assert parse(emb, 2) == parse(
        "1/4*x[3,3] + 1/8*x[2,1]^2 - 1/2*x[1,1]*x[3,1] + 5/2*x[1,1]^3", 2)
    assert cli.main(["kdv", "-k", "9"]) == cli.EXIT_ERROR


def test_pmap_command(tmp_path):
    code, doc, _ = run_json(tmp_path, "pmap", "--genus", "1")
    assert code == 0
    assert doc["pmap"]["degrees"] == {"l[4]": 2, "l[6]": 3}


def test_tangency_divisibility(tmp_path):
    code, doc, _ = run_json(tmp_path, "tangency", "--genus", "1", "--method", "divisibility")
    assert code == 0
    assert [r["quotient"] for r in doc["tangency"]] == ["12", "0"]


def test_tangency_sample_genus3(tmp_path):
    code, doc, _ = run_json(tmp_path, "tangency", "--genus", "3", "--method", "sample",
                            "--trials", "10")
    assert code == 0
    assert [r["passed"] for r in doc["tangency"]] == [10] * 6


def test_usage_errors():
    with pytest.raises(SystemExit) as e:
        cli.main(["verify", "--genus", "4"])
    assert e.value.code == 2
    with pytest.raises(SystemExit):
        cli.main(["tangency", "--genus", "3", "--method", "divisibility"])


def test_seed_accepts_hex():
    ns = cli.build_parser().parse_args(["tangency", "--seed", "0x1DE"])
    assert cli.config_from_args(ns).seed == 478


def test_latex_format(capsys):
    assert cli.main(["pmap", "--genus", "1", "--format", "latex"]) == 0
    out = capsys.readouterr().out
    assert r"$\tfrac{1}{2}\wp_{3;1} - 3\wp_{1;1}^2$" in out
    assert out.startswith("\\begin{description}")


def test_empty_report_documents():
    assert json.loads(emit_report({}, "json")) == {"schema": SCHEMA_VERSION}
    assert emit_report({}, "text") == b""
    assert emit_report({}, "latex").startswith(b"%")
    with pytest.raises(ValueError):
        emit_report({}, "xml")

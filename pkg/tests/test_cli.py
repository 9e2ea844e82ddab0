from __future__ import annotations

import json

import pytest

from pisotlab.cli import main


def run(capsys, argv):
    code = main(argv)
    captured = capsys.readouterr()
    lines = [json.loads(line) for line in captured.out.splitlines()]
    return code, lines, captured.err


def header(lines):
    return lines[0]


def trailer(lines):
    return lines[-1]


def records(lines, kind):
    return [l for l in lines if l.get("record") == kind]


def test_certify_catalog_name(capsys) -> None:
    code, lines, _ = run(capsys, ["certify", "--name", "golden"])
    assert code == 0
    assert header(lines)["schema_version"] == 1
    assert header(lines)["command"] == "certify"
    cert = records(lines, "certificate")[0]
    assert cert["verdict"] == "pisot"
    assert trailer(lines) == {"status": "ok", "error_count": 0}


def test_certify_leading_dash_poly(capsys) -> None:
    # the value token itself starts with '-'; the CLI must not read it as a flag
    code, lines, _ = run(capsys, ["certify", "--poly", "-1,-1,1"])
    assert code == 0
    assert records(lines, "certificate")[0]["verdict"] == "pisot"


def test_certify_rejects_non_pisot(capsys) -> None:
    # x^2 - x - 3 has a conjugate below -1
    code, lines, _ = run(capsys, ["certify", "--poly", "-3,-1,1"])
    assert code == 3
    assert records(lines, "certificate")[0]["verdict"] == "not_pisot"
    assert trailer(lines)["status"] == "not_pisot"


def test_certify_unit_root_reported(capsys) -> None:
    code, lines, _ = run(capsys, ["certify", "--poly", "2,-3,1"])  # (x-1)(x-2)
    assert code == 3
    cert = records(lines, "certificate")[0]
    assert cert["unit_root"] == "1"


@pytest.mark.parametrize(
    "argv",
    [
        ["certify", "--poly", "1,x,1"],
        ["certify", "--name", "bronze"],
        ["iterate", "--name", "golden", "--n", "5:3"],
        ["iterate", "--name", "golden", "--n", "0:4"],
        ["--tol", "junk", "certify", "--name", "golden"],
        ["generate", "--target", "1"],
    ],
)
def test_parse_errors_exit_2(capsys, argv) -> None:
    code, lines, err = run(capsys, argv)
    assert code == 2
    assert "error:" in err


def test_missing_target_is_usage_error(capsys) -> None:
    with pytest.raises(SystemExit) as exc:
        main(["certify"])
    assert exc.value.code == 2


def test_iterate_golden_rows(capsys) -> None:
    code, lines, _ = run(
        capsys, ["iterate", "--name", "golden", "--kmax", "1", "--n", "1:10"]
    )
    assert code == 0
    rows = {r["level"]: r for r in records(lines, "row")}
    lucas = [r["values"][str(n)] for n in range(1, 11) for r in [rows[0]]]
    assert lucas == ["2", "3", "4", "7", "11", "18", "29", "47", "76", "123"]
    assert rows[1]["values"]["2"] == "-1"
    assert rows[1]["values"]["3"] == "1"
    assert rows[1]["exact_zero"]["2"] is True


def test_iterate_precision_cap_exhaustion(capsys) -> None:
    code, lines, _ = run(
        capsys,
        ["--bits", "16", "--precision-cap", "32",
         "iterate", "--name", "atypical", "--kmax", "0", "--n", "78:80"],
    )
    assert code == 4
    assert trailer(lines)["status"] == "rounding_failure"
    assert trailer(lines)["error_count"] == 3
    assert any(l.get("error") == "rounding" for l in lines)


def test_suite_graded_catalog_passes(capsys) -> None:
    code, lines, _ = run(capsys, ["suite", "--name", "golden", "--pmax", "31"])
    assert code == 0
    assert header(lines)["inputs"]["graded"] is True
    outs = records(lines, "expectation")
    assert outs and all(o["passed"] for o in outs)
    levels = records(lines, "level")
    assert levels[0]["congruence"]["branch"]["kind"] == "plus_one"


def test_suite_raw_poly_is_findings_mode(capsys) -> None:
    code, lines, _ = run(
        capsys, ["suite", "--poly", "-1,-1,1", "--pmax", "31"]
    )
    assert code == 0
    assert header(lines)["inputs"]["graded"] is False
    assert not records(lines, "expectation")


def test_suite_alpha_target(capsys) -> None:
    code, lines, _ = run(capsys, ["suite", "--alpha", "2", "--pmax", "31"])
    assert code == 0
    outs = records(lines, "expectation")
    assert outs and all(o["passed"] for o in outs)


def test_suite_family_findings_vs_graded(capsys) -> None:
    # heart(3,2,1): the top row grows like 2^n, so the constant-tail
    # expectation cannot hold; findings mode still exits 0
    base = ["suite", "--family", "heart:3,2,1", "--pmax", "31"]
    code, lines, _ = run(capsys, base)
    assert code == 0
    assert records(lines, "solution")

    code, lines, _ = run(capsys, base + ["--expect"])
    assert code == 5
    assert trailer(lines)["status"] == "expectation_failure"
    failed = [o for o in records(lines, "expectation") if not o["passed"]]
    assert failed and all(o["aspect"] == "constant" for o in failed)


def test_limits_solve(capsys) -> None:
    code, lines, _ = run(
        capsys, ["limits", "solve", "--family", "spade", "--m", "2", "--n", "3"]
    )
    assert code == 0
    sol = records(lines, "solution")[0]
    assert sol["poly"]["coeffs"] == ["-1", "0", "0", "-2", "1"]
    assert sol["certificate"]["verdict"] == "pisot"


def test_limits_solve_degenerate(capsys) -> None:
    code, lines, err = run(
        capsys, ["limits", "solve", "--family", "club", "--m", "2", "--n", "1"]
    )
    assert code == 6
    assert "error:" in err


def test_limits_identities_ok_and_gate(capsys) -> None:
    code, lines, _ = run(capsys, ["limits", "identities", "--n", "1:2"])
    assert code == 0
    assert len(records(lines, "identity")) == 2 * 2 + 3

    code, lines, _ = run(
        capsys, ["--tol", "1e-200", "limits", "identities", "--n", "1:2"]
    )
    assert code == 6
    assert trailer(lines)["status"] == "residual_failure"


def test_limits_ordering(capsys) -> None:
    code, lines, _ = run(capsys, ["limits", "ordering", "--count", "2"])
    assert code == 0
    assert [e["label"] for e in records(lines, "chain_entry")] == [
        "alpha_1=beta_1",
        "alpha_2",
        "beta_2",
    ]
    chain = records(lines, "chain")[0]
    assert chain["strictly_increasing"] and chain["all_below_two"]


def test_generate_hits_target(capsys) -> None:
    code, lines, _ = run(capsys, ["generate", "--target", "5", "--pmax", "31"])
    assert code == 0
    check = records(lines, "target_check")[0]
    assert check == {"record": "target_check", "target": "5", "achieved": True}
    cong = records(lines, "congruence")[0]
    assert cong["branch"]["value"] == "5"
    assert cong["branch"]["onset_prime"] == 11


def test_env_mirrors(capsys, monkeypatch, tmp_path) -> None:
    monkeypatch.setenv("PISOTLAB_TOL", "1e-200")
    code, _, _ = run(capsys, ["limits", "identities", "--n", "1:1"])
    assert code == 6
    monkeypatch.delenv("PISOTLAB_TOL")

    cat = tmp_path / "only_golden.json"
    cat.write_text(
        json.dumps(
            {
                "schema_version": 1,
                "entries": [{"name": "golden", "coeffs": ["-1", "-1", "1"]}],
            }
        )
    )
    monkeypatch.setenv("PISOTLAB_CATALOG", str(cat))
    code, _, _ = run(capsys, ["certify", "--name", "golden"])
    assert code == 0
    code, _, err = run(capsys, ["certify", "--name", "silver"])
    assert code == 2
    assert "no catalog entry" in err


def test_output_is_byte_deterministic(capsys) -> None:
    argv = ["suite", "--name", "plastic", "--pmax", "31", "--convergence"]
    code1 = main(argv)
    first = capsys.readouterr().out
    code2 = main(argv)
    second = capsys.readouterr().out
    assert code1 == code2 == 0
    assert first == second

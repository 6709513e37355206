import json

from chowring.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def test_matroid_info(capsys):
    code, out = run(capsys, "matroid", "info", "uniform(4,5)")
    assert code == 0
    assert "rank: 4" in out
    assert "aut_order: 120" in out


def test_chow_hilbert_line(capsys):
    code, out = run(capsys, "chow", "hilbert", "uniform(4,5)")
    assert code == 0
    assert "1 21 21 1" in out


def test_inline_json_flats_one_based(capsys):
    doc = json.dumps({"ground_set": 3,
                      "flats": [[], [1], [2], [3], [1, 2], [1, 3], [2, 3],
                                [1, 2, 3]]})
    code, out = run(capsys, "chow", "hilbert", doc)
    assert code == 0
    assert "1 4 1" in out


def test_bases_document(capsys):
    doc = json.dumps({"ground_set": 3, "bases": [[1, 2], [1, 3], [2, 3]]})
    code, out = run(capsys, "chow", "hilbert", doc)
    assert code == 0


def test_bad_document_exit_2(capsys):
    code = main(["chow", "hilbert", '{"ground_set": 2, "flats": [[1]]}'])
    assert code == 2
    code = main(["chow", "hilbert", "no-such-file.json"])
    assert code == 2


def test_json_reports_are_deterministic(capsys):
    code, first = run(capsys, "--json", "char", "genuine", "boolean(4)")
    assert code == 0
    code, second = run(capsys, "--json", "char", "genuine", "boolean(4)")
    assert first == second
    payload = json.loads(first)
    assert payload["minor"]["multiplicities"] == [29, 124, 103, 172, 76]
    assert "NOT a permutation character" in payload["minor"]["verdict"]
    assert "genuine character" in payload["minor"]["verdict"]


def test_scd_maps_table(capsys):
    code, out = run(capsys, "--json", "scd", "maps", "uniform(4,5)",
                    "--check-equivariance")
    assert code == 0
    payload = json.loads(out)
    assert payload["equivariant"] is True
    arrows = {row["monomial"]: row.get("lambda") for row in payload["maps"]
              if row["degree"] == 1}
    assert arrows["x_E"] == "x_E^2"
    assert arrows["x_12"] == "x_12*x_E"
    assert arrows["x_123"] == "x_123^2"


def test_burnside_commands(capsys):
    code, out = run(capsys, "--json", "burnside", "decompose", "boolean(4)",
                    "--degree", "1")
    assert code == 0
    payload = json.loads(out)
    assert "S(2,2)" in payload["decomposition"]
    code, out = run(capsys, "burnside", "pf2", "boolean(3)",
                    "--quadruple", "0", "1", "1", "2")
    assert code == 0
    code, out = run(capsys, "burnside", "young-audit", "boolean(3)")
    assert code == 0


def test_char_gamma_and_pf(capsys):
    code, out = run(capsys, "--json", "char", "gamma", "boolean(3)")
    assert code == 0
    payload = json.loads(out)
    assert all(row["genuine"] for row in payload["gamma"])
    code, out = run(capsys, "char", "pf", "uniform(4,5)", "--level", "inf")
    assert code == 0


def test_char_toeplitz(capsys):
    code, out = run(capsys, "--json", "char", "toeplitz", "boolean(4)",
                    "--composition", "1,1,1")
    assert code == 0
    assert json.loads(out)["genuine"] is True


def test_koszul_commands_and_exit_codes(capsys):
    code, _ = run(capsys, "koszul", "check-2x2", "boolean(4)")
    assert code == 0
    code, _ = run(capsys, "koszul", "check-3x3", "boolean(4)")
    assert code == 0
    # the rank-3 Boolean matroid is a verified mathematical failure: exit 1
    code, out = run(capsys, "--json", "koszul", "check-3x3", "boolean(3)")
    assert code == 1
    payload = json.loads(out)
    assert payload["minor_nonnegative"] is False


def test_chow_pairing_and_lefschetz(capsys):
    code, out = run(capsys, "--json", "chow", "pairing", "boolean(4)")
    assert code == 0
    dets = json.loads(out)["pairing_determinants"]
    assert all(v in (1, -1) for v in dets.values())
    code, out = run(capsys, "chow", "lefschetz", "boolean(3)")
    assert code == 0
    code, out = run(capsys, "chow", "hodge-riemann", "boolean(3)")
    assert code == 0


def test_verify_all_passes_rank4(capsys):
    code, out = run(capsys, "verify", "all", "boolean(4)")
    assert code == 0
    assert "overall: PASS" in out
    assert "[PASS]" in out and "[FAIL]" not in out


def test_verify_all_reports_known_gap_rank3(capsys):
    code, out = run(capsys, "verify", "all", "boolean(3)")
    assert code == 1
    assert "known gap" in out
    assert "C8" in out


def test_verify_all_json_deterministic(capsys):
    code, first = run(capsys, "--json", "verify", "all", "uniform(2,4)")
    assert code == 0
    code, second = run(capsys, "--json", "verify", "all", "uniform(2,4)")
    assert first == second
    payload = json.loads(first)
    assert payload["passed"] is True
    ids = {c["battery"] for c in payload["checks"]}
    assert {"C2", "C4", "C5", "C6", "C7", "C8", "C9", "C10"} <= ids


def test_verify_all_rank3_exit_code_is_mathematical_failure(capsys):
    code, out = run(capsys, "--json", "verify", "all", "uniform(3,4)")
    assert code == 1
    payload = json.loads(out)
    failing = [c for c in payload["checks"] if not c["passed"]]
    assert [c["battery"] for c in failing] == ["C8"]
    assert "known_gap" in failing[0]


def test_verify_all_jobs_flag(capsys):
    code, out = run(capsys, "verify", "all", "boolean(3)", "--jobs", "2")
    assert code == 1  # same verdicts as the sequential path
    assert "C8" in out and "overall: FAIL" in out


def test_group_file(tmp_path, capsys):
    path = tmp_path / "group.json"
    path.write_text(json.dumps({"degree": 3,
                                "generators": [[2, 3, 1]]}))
    code, out = run(capsys, "--json", "burnside", "decompose", "boolean(3)",
                    "--group", str(path), "--degree", "1")
    assert code == 0
    payload = json.loads(out)
    assert payload["matroid"]["aut_order"] == 3

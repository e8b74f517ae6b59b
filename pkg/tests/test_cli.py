"""CLI surface: payloads, exit codes, determinism across workers."""

import json

from modsum.cli import main

ERDOS_616 = "77,117,137,148,154,157,159,160,161"


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def run_json(capsys, *argv):
    code, out, _ = run_cli(capsys, *argv)
    return code, json.loads(out)


def test_check_distinct(capsys):
    code, doc = run_json(capsys, "check", "--modulus", "616", "--set", ERDOS_616)
    assert code == 0
    assert doc["status"] == "pass"
    assert doc["payload"]["sumset_distinct"] is True
    assert len(doc["payload"]["missing"]) == 104


def test_check_not_distinct(capsys):
    code, doc = run_json(capsys, "check", "--modulus", "5", "--set", "1,4")
    assert code == 0
    assert doc["payload"]["sumset_distinct"] is False


def test_check_decomposition(capsys):
    code, doc = run_json(capsys, "check", "--modulus", "11", "--set", "1,3,5")
    assert code == 0
    payload = doc["payload"]
    assert payload["missing"] == [2, 7, 10]
    assert payload["decomposition"] == {"singleton": 10, "pairs": [[2, 7]]}


def test_check_malformed_set(capsys):
    code, out, err = run_cli(capsys, "check", "--modulus", "11", "--set", "1,x,3")
    assert code == 2
    assert "error" in err


def test_check_zero_element(capsys):
    code, out, err = run_cli(capsys, "check", "--modulus", "9", "--set", "9,1")
    assert code == 2


def test_enumerate_count_only(capsys):
    code, doc = run_json(capsys, "enumerate", "--n", "2", "--modulus", "5", "--count-only")
    assert code == 0
    assert doc["payload"]["count"] == 4


def test_enumerate_sets_and_csv(capsys):
    code, doc = run_json(capsys, "enumerate", "--n", "3", "--modulus", "9")
    assert code == 0
    assert doc["payload"]["sets"][0] == [1, 2, 4]
    assert doc["payload"]["count"] == 8
    code, out, _ = run_cli(capsys, "enumerate", "--n", "3", "--modulus", "9", "--csv")
    assert code == 0
    assert out.splitlines()[0] == "1,2,4"
    assert len(out.splitlines()) == 8


def test_enumerate_worker_determinism(capsys):
    outputs = []
    for workers in ("1", "2", "8"):
        code, out, _ = run_cli(
            capsys, "enumerate", "--n", "4", "--modulus", "18", "--workers", workers
        )
        assert code == 0
        outputs.append(out)
    assert outputs[0] == outputs[1] == outputs[2]


def test_enumerate_scale_guard_and_force(capsys):
    code, out, err = run_cli(capsys, "enumerate", "--n", "15", "--modulus", "65536")
    assert code == 2
    assert "guard" in err
    code, doc = run_json(
        capsys, "enumerate", "--n", "2", "--modulus", "5", "--count-only", "--force"
    )
    assert code == 0


def test_enumerate_canonical(capsys):
    code, doc = run_json(capsys, "enumerate", "--n", "3", "--modulus", "10", "--canonical")
    assert code == 0
    assert doc["payload"]["count"] == 4  # one representative per orbit


def test_enumerate_checkpoint_resume(capsys, tmp_path):
    path = tmp_path / "run.ckpt"
    code, doc = run_json(
        capsys, "enumerate", "--n", "3", "--modulus", "9", "--checkpoint", str(path)
    )
    assert code == 0 and doc["payload"]["count"] == 8
    # finished run leaves an empty frontier; resuming emits nothing further
    code, doc = run_json(capsys, "enumerate", "--resume", str(path))
    assert code == 0
    assert doc["payload"]["count"] == 0


def test_orbit_command(capsys):
    code, doc = run_json(
        capsys, "orbit", "--modulus", "265", "--set", "3,6,12,24,16,32,64,128", "--min-sum"
    )
    assert code == 0
    payload = doc["payload"]
    assert payload["min_sum"]["value"] == 267
    assert payload["canonical"] == [1, 2, 4, 8, 67, 83, 99, 131]


def test_orbit_rejects_non_distinct(capsys):
    code, out, err = run_cli(capsys, "orbit", "--modulus", "5", "--set", "1,4")
    assert code == 2


def test_construct_families(capsys):
    code, doc = run_json(capsys, "construct", "--family", "thm2", "--n", "5", "--k", "2")
    assert code == 0
    assert doc["payload"]["result"]["elements"] == [3, 6, 11, 12, 13]
    assert doc["payload"]["modulus"] == 37
    code, doc = run_json(capsys, "construct", "--family", "powers", "--n", "3", "--modulus", "9")
    assert doc["payload"]["set"] == [1, 2, 4]
    code, doc = run_json(
        capsys, "construct", "--family", "perturbation", "--n", "4", "--r", "1", "--p", "0,0,0,1"
    )
    assert doc["payload"]["result"]["elements"] == [1, 2, 4, 9]
    code, doc = run_json(
        capsys, "construct", "--family", "example10", "--prefix", "3", "--n", "4", "--modulus", "21"
    )
    assert doc["payload"]["set"] == [2, 3, 4, 8]
    code, doc = run_json(capsys, "construct", "--family", "appendix-b", "--n", "8")
    assert doc["payload"]["result"]["elements"] == [3, 6, 12, 16, 24, 32, 64, 128]
    code, doc = run_json(capsys, "construct", "--family", "registry")
    assert {e["name"] for e in doc["payload"]["entries"]} == {
        "erdos-616", "concluding-36", "appb-n8",
    }


def test_construct_bad_params(capsys):
    code, out, err = run_cli(capsys, "construct", "--family", "thm2", "--n", "5", "--k", "3")
    assert code == 2
    code, out, err = run_cli(
        capsys, "construct", "--family", "perturbation", "--n", "4", "--r", "1", "--p", "0,1,0,0"
    )
    assert code == 2


def test_classify_command(capsys):
    code, doc = run_json(capsys, "classify", "--modulus", "10", "--set", "1,2,4")
    assert code == 0
    assert doc["payload"]["report"]["family"] == "two-n-plus-2-case-i"
    code, doc = run_json(capsys, "classify", "--modulus", "8", "--set", "3,6,4")
    assert doc["payload"]["report"]["family"] == "pow2-valuation"
    code, out, err = run_cli(capsys, "classify", "--modulus", "36", "--set", "1,6,11,13,15")
    assert code == 2  # 36 is not 2^5 + t for t in {0,1,2,3}


def test_bound_command(capsys):
    code, doc = run_json(capsys, "bound", "--modulus", "616", "--set", ERDOS_616)
    assert code == 0
    payload = doc["payload"]
    assert payload["magnitude_bound_holds"] is True
    assert payload["t"] == 104
    assert payload["evaluation"]["magnitude"] <= 104
    code, doc = run_json(
        capsys, "bound", "--modulus", "100", "--set", "1,2,4,8,16", "--eps", "0.2"
    )
    assert doc["payload"]["growth"]["hypothesis_met"] is True


def test_verify_command(capsys):
    code, doc = run_json(capsys, "verify", "--theorem", "cor1", "--n", "2..4")
    assert code == 0
    assert doc["status"] == "pass"
    counts = [r["counts"]["enumerated"] for r in doc["payload"]["results"]]
    assert counts == [4, 8, 32]
    code, doc = run_json(capsys, "verify", "--theorem", "thm3", "--n", "2..4")
    assert code == 0
    code, doc = run_json(capsys, "verify", "--theorem", "appendixB", "--n", "8")
    assert code == 0
    assert doc["payload"]["results"][0]["counts"]["min_orbit_sum"] == 267


def test_verify_scale_guard(capsys):
    code, out, err = run_cli(capsys, "verify", "--theorem", "cor1", "--n", "15..16")
    assert code == 2


def test_stdout_contains_no_timing(capsys):
    code, out, err = run_cli(capsys, "check", "--modulus", "11", "--set", "1,3,5")
    assert "elapsed" not in out
    assert "elapsed-ms" in err

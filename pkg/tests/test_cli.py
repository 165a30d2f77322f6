import json
import math

import numpy as np
import pytest

from qcc import channel as chn
from qcc import serialize as ser
from qcc.channel import KrausChannel
from qcc.cli import main
from qcc.pauli import build_basis, depolarizing_weights, pauli_channel
from qcc.random import random_kraus_operators, rng_from_seed


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_float_formatting_round_trips():
    for x in (1 / 3, 0.1, 5.0556e-2, 1e-300, 123456.789):
        assert float(ser.format_float(x)) == x


def test_channel_json_round_trip_fixed_point():
    rng = rng_from_seed(0)
    ch = KrausChannel(d_in=2, d_out=3, kraus=random_kraus_operators(2, 3, 4, rng))
    text = ser.dumps(ser.channel_to_obj(ch), indent=2)
    back = ser.channel_from_obj(json.loads(text))
    assert np.array_equal(back.kraus, ch.kraus)
    text2 = ser.dumps(ser.channel_to_obj(back), indent=2)
    assert text2 == text


def test_channel_json_field_order():
    ch = chn.identity_channel(2)
    obj = ser.channel_to_obj(ch)
    assert list(obj.keys()) == ["d_in", "d_out", "kraus"]


def test_malformed_channel_json_is_rejected():
    with pytest.raises(ValueError):
        ser.channel_from_obj({"d_in": 2, "kraus": []})
    with pytest.raises(ValueError):
        ser.channel_from_obj({"d_in": 2, "d_out": 2, "kraus": [[[[1, 0]]]]})
    with pytest.raises(ValueError):
        ser.decode_matrix([[[1, 0], [0, 0]], [[1, 0]]])


def test_pauli_json_round_trip():
    ch = pauli_channel(build_basis(3), depolarizing_weights(3, 0.5))
    obj = ser.pauli_to_obj(ch)
    assert obj["basis"] == "pauli" and len(obj["weights"]) == 9
    back = ser.pauli_from_obj(json.loads(ser.dumps(obj)))
    assert np.abs(back.weights - ch.weights).max() == 0

    b2 = build_basis(2)
    from qcc.pauli import product_basis

    prod = pauli_channel(product_basis(b2, b2), np.full(16, 1 / 16))
    obj = ser.pauli_to_obj(prod)
    assert obj["basis"] == "pauli_product:[2,2]"
    back = ser.pauli_from_obj(obj)
    assert back.basis.kind == "pauli_product"


def test_build_depolarizing_weights(capsys, tmp_path):
    code, out, _ = run_cli(capsys, "build", "depolarizing", "-d", "3", "-b", "0.5", "--pauli-json")
    assert code == 0
    obj = json.loads(out)
    assert abs(obj["weights"][0] - (0.5 + 0.5 / 9)) < 1e-15
    assert abs(obj["weights"][1] - 0.5 / 9) < 1e-15


def test_build_noisy_kraus_count(capsys):
    code, out, _ = run_cli(capsys, "build", "noisy", "-d", "2")
    assert code == 0
    obj = json.loads(out)
    assert len(obj["kraus"]) == 4
    ch = ser.channel_from_obj(obj)
    assert np.abs(np.abs(ch.kraus) * 2 - np.abs(build_basis(2).ops)).max() < 1e-15


def test_build_random_is_deterministic(capsys):
    code1, out1, _ = run_cli(capsys, "build", "random", "-d", "2", "--dout", "3", "--kraus", "4", "--seed", "7")
    code2, out2, _ = run_cli(capsys, "build", "random", "-d", "2", "--dout", "3", "--kraus", "4", "--seed", "7")
    assert code1 == code2 == 0
    assert out1 == out2
    ch = ser.channel_from_obj(json.loads(out1))
    assert chn.validate_cpt(ch).tp_ok


def test_nu_identity_and_depolarizing(capsys, tmp_path):
    id_path = tmp_path / "id2.json"
    run_cli(capsys, "build", "identity", "-d", "2", "--out", str(id_path))
    code, out, _ = run_cli(capsys, "nu", "--in", str(id_path), "-p", "2", "--restarts", "4")
    assert code == 0
    assert abs(json.loads(out)["results"]["value"] - 1.0) < 1e-9

    dep_path = tmp_path / "dep3.json"
    run_cli(capsys, "build", "depolarizing", "-d", "3", "-b", "0.5", "--out", str(dep_path))
    code, out, _ = run_cli(capsys, "nu", "--in", str(dep_path), "-p", "2", "--restarts", "6")
    assert code == 0
    assert abs(json.loads(out)["results"]["value"] - math.sqrt(0.5)) < 1e-6


def test_conjugate_identity_has_one_dimensional_output(capsys, tmp_path):
    path = tmp_path / "id3.json"
    run_cli(capsys, "build", "identity", "-d", "3", "--out", str(path))
    code, out, _ = run_cli(capsys, "conjugate", "--in", str(path))
    assert code == 0
    obj = json.loads(out)
    assert obj["d_out"] == 1 and len(obj["kraus"]) == 3


def test_conjugate_methods_and_check(capsys, tmp_path):
    path = tmp_path / "r.json"
    run_cli(capsys, "build", "random", "-d", "2", "--dout", "2", "--kraus", "3", "--seed", "5", "--out", str(path))
    code, out, err = run_cli(capsys, "conjugate", "--in", str(path), "--method", "choi", "--check")
    assert code == 0
    assert "PASS" in err
    conj_ch = ser.channel_from_obj(json.loads(out))
    assert chn.validate_cpt(conj_ch).tp_ok

    # Conjugating twice and checking against the original passes.
    c1 = tmp_path / "c1.json"
    run_cli(capsys, "conjugate", "--in", str(path), "--method", "kraus", "--out", str(c1))
    code, out, err = run_cli(
        capsys, "conjugate", "--in", str(c1), "--method", "kraus", "--check-against", str(path)
    )
    assert code == 0 and "PASS" in err


def test_apply_and_choi_commands(capsys, tmp_path):
    path = tmp_path / "id.json"
    run_cli(capsys, "build", "identity", "-d", "2", "--out", str(path))
    state = tmp_path / "rho.json"
    state.write_text(json.dumps([[[0.75, 0], [0, 0]], [[0, 0], [0.25, 0]]]))
    code, out, _ = run_cli(capsys, "apply", "--in", str(path), "--state", str(state))
    assert code == 0
    got = ser.decode_matrix(json.loads(out)["matrix"])
    assert np.abs(got - np.diag([0.75, 0.25])).max() < 1e-15

    code, out, _ = run_cli(capsys, "choi", "--in", str(path))
    assert code == 0
    gamma = ser.decode_matrix(json.loads(out)["gamma"])
    phi = np.zeros(4)
    phi[0] = phi[3] = 1 / np.sqrt(2)
    assert np.abs(gamma - np.outer(phi, phi)).max() < 1e-12


def test_mult_command(capsys, tmp_path):
    dep = tmp_path / "dep2.json"
    run_cli(capsys, "build", "depolarizing", "-d", "2", "-b", "0.5", "--out", str(dep))
    code, out, _ = run_cli(capsys, "mult", "--a", str(dep), "--b", str(dep), "-p", "2", "--restarts", "6")
    assert code == 0
    res = json.loads(out)["results"]
    assert abs(res["gap"]) < 1e-6
    assert res["witness_state"] is None


def test_capacity_command(capsys, tmp_path):
    dep = tmp_path / "dep2p.json"
    run_cli(capsys, "build", "depolarizing", "-d", "2", "-b", "0.5", "--pauli-json", "--out", str(dep))
    code, out, _ = run_cli(capsys, "capacity", "--in", str(dep), "--restarts", "6")
    assert code == 0
    want = 1.0 + 0.75 * math.log2(0.75) + 0.25 * math.log2(0.25)
    assert abs(json.loads(out)["results"]["capacity"] - want) < 1e-6


def test_pauli_subcommands(capsys, tmp_path):
    dep = tmp_path / "dep3p.json"
    run_cli(capsys, "build", "depolarizing", "-d", "3", "-b", "0.5", "--pauli-json", "--out", str(dep))
    code, out, _ = run_cli(capsys, "pauli", "lambda", "--in", str(dep))
    assert code == 0
    lam = ser.decode_vector(json.loads(out)["results"]["lambda"])
    assert abs(lam[0] - 1.0) < 1e-12 and np.abs(lam[1:] - 0.5).max() < 1e-12

    code, out, _ = run_cli(capsys, "pauli", "bound", "--in", str(dep), "-p", "inf")
    assert code == 0
    res = json.loads(out)["results"]
    assert abs(res["majorization_bound"] - (0.5 + 0.5 / 3)) < 1e-12

    state = tmp_path / "e0.json"
    state.write_text(json.dumps([[[1, 0], [0, 0]], [[0, 0], [0, 0]]]))
    code, out, _ = run_cli(capsys, "pauli", "ncimage", "-d", "2", "--state", str(state))
    assert code == 0
    checks = json.loads(out)["results"]["checks"]
    assert checks["projector"] < 1e-10

    code, out, _ = run_cli(capsys, "pauli", "subgroup", "-d", "2", "--state", str(state))
    assert code == 0
    assert json.loads(out)["results"]["order"] == 2

    bell = tmp_path / "bell.json"
    s = 1 / math.sqrt(2)
    bell.write_text(json.dumps([[s, 0], [0, 0], [0, 0], [s, 0]]))
    code, out, _ = run_cli(capsys, "pauli", "classify", "-d", "2", "--state", str(bell))
    assert code == 0
    assert json.loads(out)["results"]["class"] == "maximally_entangled"


def test_ebt_commands(capsys, tmp_path):
    cq = tmp_path / "cq.json"
    run_cli(capsys, "build", "cq", "-d", "2", "--dout", "3", "--ebt-json", "--seed", "3", "--out", str(cq))
    code, out, _ = run_cli(capsys, "ebt", "conjugate", "--in", str(cq))
    assert code == 0
    res = json.loads(out)["results"]
    inner = ser.channel_from_obj(res["channel"])
    assert chn.validate_cpt(inner).tp_ok

    chfile = tmp_path / "conj.json"
    chfile.write_text(ser.dumps(res["channel"]))
    code, out, _ = run_cli(capsys, "ebt", "detect", "--in", str(chfile))
    assert code == 0
    assert json.loads(out)["results"]["verdict"] == "yes"


def test_gl_commands(capsys, tmp_path):
    path = tmp_path / "r.json"
    run_cli(capsys, "build", "random", "-d", "2", "--dout", "2", "--kraus", "3", "--seed", "1", "--out", str(path))
    code, out, _ = run_cli(capsys, "gl", "verify", "--in", str(path), "-p", "2")
    assert code == 0
    res = json.loads(out)["results"]
    assert res["passed"] and res["residual_conjugate"] < 1e-12

    code, out, _ = run_cli(capsys, "gl", "theta", "--in", str(path), "-p", "2")
    assert code == 0
    assert len(json.loads(out)["matrix"]) == 4


def test_verify_command_and_exit_codes(capsys, tmp_path):
    code, out, _ = run_cli(capsys, "verify", "--suite", "gl", "--seed", "1")
    assert code == 0
    rep = json.loads(out)
    assert rep["results"]["checks_failed"] == 0
    assert all(c["passed"] for c in rep["checks"])

    # Missing file: I/O error.
    code, _, err = run_cli(capsys, "nu", "--in", str(tmp_path / "absent.json"), "-p", "2")
    assert code == 4

    # Malformed JSON: validation error.
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    code, _, _ = run_cli(capsys, "nu", "--in", str(bad), "-p", "2")
    assert code == 2

    # Invalid parameter: validation error.
    dep = tmp_path / "dep.json"
    run_cli(capsys, "build", "depolarizing", "-d", "2", "-b", "0.5", "--out", str(dep))
    code, _, _ = run_cli(capsys, "nu", "--in", str(dep), "-p", "0.5")
    assert code == 2


def test_reports_are_byte_identical_across_runs(capsys, tmp_path):
    dep = tmp_path / "dep.json"
    run_cli(capsys, "build", "depolarizing", "-d", "2", "-b", "0.3", "--out", str(dep))
    outs = []
    for _ in range(2):
        code, out, _ = run_cli(capsys, "nu", "--in", str(dep), "-p", "2", "--seed", "9", "--restarts", "4")
        assert code == 0
        outs.append(out)
    assert outs[0] == outs[1]


def test_threads_env_override(capsys, tmp_path, monkeypatch):
    dep = tmp_path / "dep.json"
    run_cli(capsys, "build", "depolarizing", "-d", "2", "-b", "0.3", "--out", str(dep))
    monkeypatch.setenv("QCC_THREADS", "2")
    code, out, _ = run_cli(capsys, "nu", "--in", str(dep), "-p", "2", "--restarts", "4", "--threads", "8")
    assert code == 0
    assert json.loads(out)["config"]["threads"] == "2"


def test_results_independent_of_thread_setting(capsys, tmp_path):
    dep = tmp_path / "dep.json"
    run_cli(capsys, "build", "depolarizing", "-d", "2", "-b", "0.3", "--out", str(dep))
    outs = []
    for threads in ("1", "8"):
        code, out, _ = run_cli(
            capsys, "nu", "--in", str(dep), "-p", "2", "--restarts", "4", "--threads", threads
        )
        assert code == 0
        outs.append(json.loads(out)["results"])
    assert outs[0] == outs[1]


def test_csv_and_text_formats(capsys, tmp_path):
    dep = tmp_path / "dep.json"
    run_cli(capsys, "build", "depolarizing", "-d", "2", "-b", "0.3", "--out", str(dep))
    code, out, _ = run_cli(capsys, "smin", "--in", str(dep), "--restarts", "4", "--format", "csv")
    assert code == 0
    assert out.startswith("key,value")
    code, out, _ = run_cli(capsys, "smin", "--in", str(dep), "--restarts", "4", "--format", "text")
    assert code == 0
    assert "results.value" in out

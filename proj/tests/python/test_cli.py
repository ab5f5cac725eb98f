import json
import math
import os
import subprocess
from pathlib import Path

import pytest


def cli_path():
    env = os.environ.get("WFORGE_CLI")
    if env and Path(env).exists():
        return env
    fallback = Path(__file__).resolve().parents[2] / "build" / "witness-forge"
    if fallback.exists():
        return str(fallback)
    pytest.skip("witness-forge binary not found (set WFORGE_CLI)")


def run_cli(*args, env_extra=None):
    env = dict(os.environ)
    env.pop("WITNESS_FORGE_SEED", None)
    if env_extra:
        env.update(env_extra)
    return subprocess.run(
        [cli_path(), *args], capture_output=True, text=True, env=env
    )


def write_state(path, matrix, n, m):
    d = n * m
    data = {
        "kind": "state",
        "dims": [n, m],
        "re": [matrix[i][j].real for i in range(d) for j in range(d)],
        "im": [matrix[i][j].imag for i in range(d) for j in range(d)],
    }
    path.write_text(json.dumps(data))


def mixed_state(d):
    return [
        [complex(1.0 / d, 0.0) if i == j else 0j for j in range(d)]
        for i in range(d)
    ]


def test_classify_reports_flags():
    proc = run_cli("classify", "--a", "1", "--b", "0", "--c", "1")
    assert proc.returncode == 0
    report = json.loads(proc.stdout)
    assert report["command"].startswith("witness-forge classify")
    payload = report["payload"]
    assert payload["positive"] is True
    assert payload["decomposable"] is False


def test_choi_writes_matrix_file(tmp_path):
    out = tmp_path / "choi.json"
    proc = run_cli("choi", "--t", "0.5", "--out", str(out))
    assert proc.returncode == 0
    data = json.loads(out.read_text())
    assert data["kind"] == "map-choi"
    assert data["dims"] == [3, 3]
    assert len(data["re"]) == 81
    report = json.loads(proc.stdout)
    assert report["payload"]["written"] == str(out)


def test_detect_mixed_state_not_detected(tmp_path):
    state = tmp_path / "mixed.json"
    write_state(state, mixed_state(9), 3, 3)
    proc = run_cli("detect", "--t", "0.5", "--state", str(state))
    assert proc.returncode == 0
    payload = json.loads(proc.stdout)["payload"]
    assert payload["verdict"] == "not-detected"
    assert payload["pairing_value"] == pytest.approx(2.0 / 3.0, abs=1e-12)


def test_pairing_identity(tmp_path):
    state = tmp_path / "id.json"
    d = 9
    identity = [
        [complex(1.0, 0.0) if i == j else 0j for j in range(d)]
        for i in range(d)
    ]
    write_state(state, identity, 3, 3)
    proc = run_cli(
        "pairing", "--a", "1", "--b", "1", "--c", "1", "--state", str(state)
    )
    assert proc.returncode == 0
    payload = json.loads(proc.stdout)["payload"]
    assert payload["pairing_value"] == pytest.approx(9.0, abs=1e-12)


def test_usage_errors_exit_2(tmp_path):
    assert run_cli("classify").returncode == 2  # no map parameters
    assert run_cli("expose", "--t", "1").returncode == 2  # excluded point
    assert run_cli("nonsense").returncode == 2
    missing = tmp_path / "missing.json"
    assert (
        run_cli("detect", "--t", "0.5", "--state", str(missing)).returncode
        == 2
    )


def test_seed_env_fallback():
    proc = run_cli(
        "classify",
        "--a",
        "1",
        "--b",
        "0",
        "--c",
        "1",
        env_extra={"WITNESS_FORGE_SEED": "42"},
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["seed"] == 42

    flagged = run_cli(
        "classify",
        "--a",
        "1",
        "--b",
        "0",
        "--c",
        "1",
        "--seed",
        "7",
        env_extra={"WITNESS_FORGE_SEED": "42"},
    )
    assert json.loads(flagged.stdout)["seed"] == 7  # flag wins over env


def test_find_ppt_payload_reproducible():
    args = ("find-ppt", "--t", "0.5", "--seed", "3")
    first = run_cli(*args)
    second = run_cli(*args)
    assert first.returncode == 0 and second.returncode == 0
    a = json.loads(first.stdout)
    b = json.loads(second.stdout)
    assert a["payload"] == b["payload"]  # bit-exact payload, wall time aside
    assert a["command"] == b["command"]
    assert a["payload"]["detected"] is True
    assert a["payload"]["best_pairing"] < -1e-4


def test_killset_ranks():
    proc = run_cli("killset", "--t", "0.5")
    assert proc.returncode == 0
    payload = json.loads(proc.stdout)["payload"]
    assert payload["embedded_rank"] == 9
    assert payload["conjugate_rank"] == 9
    assert all(v["in_kill_set"] for v in payload["vectors"])


def test_decompose_slice_point():
    proc = run_cli(
        "decompose",
        "--a",
        str(1.0 / 3.0),
        "--b",
        str(1.0 / 3.0),
        "--c",
        str(4.0 / 3.0),
    )
    assert proc.returncode == 0
    payload = json.loads(proc.stdout)["payload"]
    assert payload["t"] == pytest.approx(0.5, abs=1e-12)
    assert payload["weight"] == pytest.approx(1.0, abs=1e-12)


def test_dpoly_frozen_value():
    proc = run_cli(
        "dpoly",
        "--t",
        "0",
        "--alpha",
        "1",
        "--a",
        "2",
        "--b",
        "3",
        "--c",
        "4",
    )
    assert proc.returncode == 0
    payload = json.loads(proc.stdout)["payload"]
    assert payload["d_value"] == pytest.approx(46.0)
    assert payload["det_oracle"] == pytest.approx(46.0)

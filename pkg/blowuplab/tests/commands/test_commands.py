"""
@file tests/commands/test_commands.py
@brief The lab management commands: output files, stdout and exit statuses.
"""

import csv
import json
from io import StringIO

import pytest
from django.core.management import call_command
from django.core.management.base import CommandError

from core.exceptions import ExitStatus
from montecarlo.models import CampaignRecord
from montecarlo.tasks import run_campaign_task
from spde.noise import derive_seed


def run(name, *args):
    out = StringIO()
    call_command(name, *args, stdout=out)
    return out.getvalue()


def run_failing(name, *args):
    out = StringIO()
    with pytest.raises(CommandError) as excinfo:
        call_command(name, *args, stdout=out)
    return excinfo.value, out.getvalue()


# ───────────────────────────────────────────────
# bound
# ───────────────────────────────────────────────


def test_bound_reports_finite_T(config_file):
    report = json.loads(run("bound", "--config", str(config_file())))
    assert report["h1_ok"] and report["h2_ok"]
    assert report["T"] > 0
    assert report["T_error"] >= 0


def test_bound_exits_2_without_H2(config_file):
    error, out = run_failing("bound", "--config", str(config_file(v0="constant 0")))
    assert error.returncode == ExitStatus.HYPOTHESIS
    assert "H2" in str(error)
    report = json.loads(out)
    assert report["h2_ok"] is False
    assert report["T"] is None


def test_malformed_field_exits_3(config_file, tmp_path):
    error, _ = run_failing("bound", "--config", str(config_file(nx="many")))
    assert error.returncode == ExitStatus.CONFIGURATION
    assert "nx" in str(error)
    assert not (tmp_path / "out").exists()


def test_unknown_field_names_its_line(config_file):
    error, _ = run_failing("bound", "--config", str(config_file(viscosity=1.0)))
    assert error.returncode == ExitStatus.CONFIGURATION
    assert "viscosity" in str(error)


def test_missing_config_file(tmp_path):
    error, _ = run_failing("bound", "--config", str(tmp_path / "nowhere.json"))
    assert error.returncode == ExitStatus.CONFIGURATION


def test_unstable_cfl_override_exits_3(config_file, tmp_path):
    error, _ = run_failing("det_solve", "--config", str(config_file()), "--cfl", "1.5")
    assert error.returncode == ExitStatus.CONFIGURATION
    assert not (tmp_path / "out").exists()


# ───────────────────────────────────────────────
# det_solve
# ───────────────────────────────────────────────


def test_det_solve_zero_data(config_file, tmp_path):
    run("det_solve", "--config", str(config_file(u0="constant 0", v0="constant 0")))
    out_dir = tmp_path / "out"
    with open(out_dir / "det_solve.csv", newline="") as handle:
        rows = list(csv.DictReader(handle))
    assert rows
    assert all(float(row["sup_norm"]) == 0.0 for row in rows)
    document = json.loads((out_dir / "det_solve.json").read_text())
    assert document["sigma_L"] is None
    assert document["T"] is None


def test_det_solve_blows_up_before_T(config_file, tmp_path):
    out = run("det_solve", "--config", str(config_file()), "--nx", "128")
    assert "sigma_L=" in out
    document = json.loads((tmp_path / "out" / "det_solve.json").read_text())
    assert document["sigma_L"] is not None
    assert document["sigma_L"] < document["T"]


def test_output_dir_override(config_file, tmp_path):
    run("det_solve", "--config", str(config_file()), "--output-dir", str(tmp_path / "elsewhere"))
    assert (tmp_path / "elsewhere" / "det_solve.csv").is_file()


# ───────────────────────────────────────────────
# spde_run
# ───────────────────────────────────────────────


def test_spde_run_with_seed(config_file, tmp_path):
    out = run("spde_run", "--config", str(config_file()), "--seed", "7")
    assert "seed=7" in out
    sidecar = json.loads((tmp_path / "out" / "spde-7.json").read_text())
    assert sidecar["seed"] == 7
    assert (tmp_path / "out" / "spde-7.csv").is_file()


def test_spde_run_defaults_to_first_campaign_path(config_file, tmp_path):
    run("spde_run", "--config", str(config_file()))
    seed = derive_seed(12345, 0)
    assert (tmp_path / "out" / f"spde-{seed}.json").is_file()


def test_spde_run_needs_T(config_file):
    error, _ = run_failing("spde_run", "--config", str(config_file(v0="constant 0")))
    assert error.returncode == ExitStatus.HYPOTHESIS


# ───────────────────────────────────────────────
# mc
# ───────────────────────────────────────────────


def test_mc_zero_noise(config_file, tmp_path):
    out = run("mc", "--config", str(config_file(f_choice="zero")), "--workers", "2")
    assert "p_hat=0 ci=[0," in out
    summary = json.loads((tmp_path / "out" / "run-12345" / "summary.json").read_text())
    assert summary["n_blowup"] == 0
    assert summary["ci_low"] == 0.0


def test_mc_rerun_is_byte_identical(config_file, tmp_path):
    path = str(config_file())
    run("mc", "--config", path, "--output-dir", str(tmp_path / "a"), "--workers", "1")
    run("mc", "--config", path, "--output-dir", str(tmp_path / "b"), "--workers", "4")
    first = (tmp_path / "a" / "run-12345" / "summary.json").read_bytes()
    second = (tmp_path / "b" / "run-12345" / "summary.json").read_bytes()
    assert first == second


def test_mc_seed_override_names_the_run(config_file, tmp_path):
    run("mc", "--config", str(config_file(f_choice="zero")), "--seed", "42")
    assert (tmp_path / "out" / "run-42" / "manifest.json").is_file()


def test_mc_keep_paths(config_file, tmp_path):
    run("mc", "--config", str(config_file(f_choice="zero")), "--keep-paths")
    assert (tmp_path / "out" / "run-12345" / "paths" / "path-00000.csv").is_file()


def test_mc_queue(config_file, mocker):
    delay = mocker.patch.object(run_campaign_task, "delay", return_value=mocker.Mock(id="task-1"))
    out = run("mc", "--config", str(config_file()), "--queue", "--workers", "3")
    assert "campaign queued as task task-1" in out
    document = delay.call_args.args[0]
    assert document["master_seed"] == 12345
    assert delay.call_args.kwargs["workers"] == 3


@pytest.mark.django_db
def test_mc_record(config_file):
    run("mc", "--config", str(config_file(f_choice="zero")), "--record")
    record = CampaignRecord.objects.get()
    assert record.n_paths == 32
    assert record.n_blowup == 0
    assert not record.positive


def test_mc_rejects_too_few_paths(config_file):
    error, _ = run_failing("mc", "--config", str(config_file(n_paths=10)))
    assert error.returncode == ExitStatus.CONFIGURATION


# ───────────────────────────────────────────────
# ode_check
# ───────────────────────────────────────────────


def test_ode_check(config_file):
    report = json.loads(run("ode_check", "--config", str(config_file()), "--cap", "1e4"))
    assert report["cap"] == 1e4
    assert report["t_cap"] < report["t_2cap"]
    assert report["t_cap"] < report["T"]
    assert report["relative_diff_T"] < 0.05

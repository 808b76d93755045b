"""
@file tests/montecarlo/test_tasks.py
@brief The Celery campaign task.
"""

import pytest

from montecarlo.models import CampaignRecord
from montecarlo.tasks import run_campaign_task
from tests.factories import RunDocumentFactory


@pytest.mark.django_db
def test_task_runs_and_records(tmp_path):
    document = RunDocumentFactory(f_choice="zero", output_dir=str(tmp_path))
    message = run_campaign_task.delay(document).get()
    assert message.startswith("0/32 paths blew up")
    assert str(tmp_path / "run-12345") in message
    assert (tmp_path / "run-12345" / "summary.json").is_file()
    assert CampaignRecord.objects.count() == 1


def test_task_output_dir_override(tmp_path, mocker):
    execute = mocker.patch("core.runs.execute_campaign")
    execute.return_value = (
        mocker.Mock(n_blowup=3, n_paths=30, p_hat=0.1, ci_low=0.03, ci_high=0.26),
        tmp_path / "run-1",
    )
    message = run_campaign_task(RunDocumentFactory(), output_dir=str(tmp_path), record=False)
    config = execute.call_args.args[0]
    assert config.output_dir == str(tmp_path)
    assert execute.call_args.kwargs["record"] is False
    assert message.startswith("3/30 paths blew up (p_hat=0.1")

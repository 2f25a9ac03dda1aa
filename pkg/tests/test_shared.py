import json
import logging
import math

import pytest
from pydantic import ValidationError
from pythonjsonlogger import jsonlogger

from shared.config import Settings
from shared.logging_config import configure_logging
from shared.record_sink import RecordSink, load_records, save_records, serialize_record
from shared.records import RECORD_FORMAT_VERSION, RECORD_REGISTRY, RecordType, deserialize_record
from shared.worker_pool import WorkerPool
from zigzag.driver.models import AlphaLogRecord, TrajectoryRecord
from zigzag.linesearch.models import AlphaSample, AlphaSection, SectionPhase


def _alpha_log(run_id="Quadratic:Sno-Mno-Cval2:0", step=0, criterion=0.25):
    section = AlphaSection(
        phase=SectionPhase.PLAIN,
        samples=[AlphaSample(alpha=0.0, criterion=criterion), AlphaSample(alpha=1.0)],
        chosen_alpha=1.0,
    )
    return AlphaLogRecord(run_id=run_id, step=step, identifier="N", sections=[section])


def test_registry_holds_driver_records():
    assert RECORD_REGISTRY[RecordType.TRAJECTORY] is TrajectoryRecord
    assert RECORD_REGISTRY[RecordType.ALPHA_LOG] is AlphaLogRecord


def test_deserialize_dispatches_on_record_type():
    record = _alpha_log()
    restored = deserialize_record(json.loads(serialize_record(record)))
    assert isinstance(restored, AlphaLogRecord)
    assert restored == record


def test_serialized_records_are_sorted_and_stamp_free():
    line = serialize_record(_alpha_log())
    data = json.loads(line)
    assert list(data) == sorted(data)
    assert data["format_version"] == RECORD_FORMAT_VERSION == 1
    assert "timestamp" not in line
    # failed samples are null, not NaN
    assert data["sections"][0]["samples"][1]["criterion"] is None


def test_nan_criterion_is_rejected():
    with pytest.raises(ValueError):
        serialize_record(_alpha_log(criterion=math.nan))


def test_sink_counts_and_truncates(tmp_path):
    path = tmp_path / "logs" / "alpha.jsonl"
    sink = RecordSink(path)
    sink.write_all([_alpha_log(step=0), _alpha_log(step=1)])
    assert sink.count == 2
    assert len(path.read_text().splitlines()) == 2

    assert save_records(path, [_alpha_log(step=7)]) == 1
    records = load_records(path)
    assert [r.step for r in records] == [7]


def test_sink_append_mode(tmp_path):
    path = tmp_path / "alpha.jsonl"
    save_records(path, [_alpha_log(step=0)])
    RecordSink(path, truncate=False).write(_alpha_log(step=1))
    assert [r.step for r in load_records(path)] == [0, 1]


def test_worker_pool_in_process():
    results = WorkerPool(1).map(math.sqrt, [4.0, 9.0, -1.0])
    assert [r.index for r in results] == [0, 1, 2]
    assert [r.value for r in results[:2]] == [2.0, 3.0]
    assert not results[2].ok
    assert results[2].error.startswith("ValueError")


def test_worker_pool_processes_keep_order():
    items = [float(k * k) for k in range(8)]
    results = WorkerPool(2).map(math.sqrt, items)
    assert [r.value for r in results] == [float(k) for k in range(8)]
    assert all(r.ok for r in results)


def test_worker_pool_rejects_zero_workers():
    with pytest.raises(ValueError):
        WorkerPool(0)


def test_settings_from_environment(monkeypatch, tmp_path):
    monkeypatch.setenv("ZIGZAG_WORKERS", "3")
    monkeypatch.setenv("ZIGZAG_OUTPUT_DIR", str(tmp_path))
    settings = Settings()
    assert settings.workers == 3
    assert settings.output_dir == tmp_path
    assert settings.log_format == "plain"


def test_format_version_comes_from_records_only():
    # records stamp the version; settings carry no competing field
    assert set(Settings.model_fields) == {"output_dir", "workers", "log_level", "log_format"}
    assert _alpha_log().format_version == RECORD_FORMAT_VERSION


def test_settings_reject_unknown_log_format(monkeypatch):
    monkeypatch.setenv("ZIGZAG_LOG_FORMAT", "xml")
    with pytest.raises(ValidationError):
        Settings()


@pytest.mark.parametrize(
    "log_format, formatter_type",
    [("plain", logging.Formatter), ("json", jsonlogger.JsonFormatter)],
)
def test_configure_logging(restore_logging, log_format, formatter_type):
    configure_logging(Settings(log_format=log_format, log_level="debug"))
    root = logging.getLogger()
    assert len(root.handlers) == 1
    assert isinstance(root.handlers[0].formatter, formatter_type)
    assert root.level == logging.DEBUG

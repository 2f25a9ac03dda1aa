"""
Line-oriented JSON record output.

Every record is written as one JSON object per line. A sink owns one file;
writes from several threads are serialized by a lock so lines never
interleave. Reading a file back goes through the record registry, so the
objects returned are the same typed records that were written.
"""
import json
import logging
import threading
from pathlib import Path
from typing import Iterable, List, Union

from .records import BaseRecord, deserialize_record

logger = logging.getLogger(__name__)


def serialize_record(record: BaseRecord) -> str:
    """Serialize a record to a single JSON line (without newline)."""
    return json.dumps(record.model_dump(mode="json"), sort_keys=True, allow_nan=False)


class RecordSink:
    """Appends records to a JSON-lines file."""

    def __init__(self, path: Union[str, Path], truncate: bool = True):
        """
        Initialize record sink.

        Args:
            path: Target file; parent directories are created
            truncate: Start from an empty file instead of appending
        """
        self.path = Path(path)
        self.path.parent.mkdir(parents=True, exist_ok=True)
        self._lock = threading.Lock()
        self._count = 0
        if truncate:
            self.path.write_text("", encoding="utf-8")

    @property
    def count(self) -> int:
        """Number of records written through this sink."""
        return self._count

    def write(self, record: BaseRecord) -> None:
        """Append one record."""
        line = serialize_record(record)
        with self._lock:
            with self.path.open("a", encoding="utf-8") as handle:
                handle.write(line + "\n")
            self._count += 1

    def write_all(self, records: Iterable[BaseRecord]) -> None:
        """Append records in iteration order."""
        for record in records:
            self.write(record)
        logger.info(f"Wrote {self._count} records to {self.path}")


def save_records(path: Union[str, Path], records: Iterable[BaseRecord]) -> int:
    """
    Write records to a fresh file.

    Args:
        path: Target file
        records: Records to write

    Returns:
        Number of records written
    """
    sink = RecordSink(path)
    sink.write_all(records)
    return sink.count


def load_records(path: Union[str, Path]) -> List[BaseRecord]:
    """Read a JSON-lines file back into typed records."""
    records: List[BaseRecord] = []
    with Path(path).open("r", encoding="utf-8") as handle:
        for line_number, line in enumerate(handle, start=1):
            if not line.strip():
                continue
            try:
                records.append(deserialize_record(json.loads(line)))
            except Exception as e:
                logger.error(f"Failed to read record at {path}:{line_number}: {str(e)}")
                raise
    return records

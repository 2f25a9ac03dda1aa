"""Record definitions and base classes for experiment output."""
from enum import Enum
from typing import Any, Callable, Dict, TypeVar

from pydantic import BaseModel

RECORD_FORMAT_VERSION = 1


class RecordType(str, Enum):
    """Kinds of records written by the experiment runners."""

    TRAJECTORY = "trajectory"
    ALPHA_LOG = "alpha_log"
    EIGEN_RUN = "eigen_run"


class BaseRecord(BaseModel):
    """
    Base record model with common fields.

    Records carry no timestamps or random identifiers: two runs with the
    same inputs serialize to the same bytes.
    """

    record_type: RecordType
    format_version: int = RECORD_FORMAT_VERSION
    run_id: str  # "<function>:<strategy>:<index>"


R = TypeVar("R", bound=type[BaseRecord])

# Record registry for deserialization
RECORD_REGISTRY: Dict[RecordType, type[BaseRecord]] = {}


def register_record(record_type: RecordType) -> Callable[[R], R]:
    """Class decorator adding a record class to RECORD_REGISTRY."""

    def decorator(cls: R) -> R:
        RECORD_REGISTRY[record_type] = cls
        return cls

    return decorator


def deserialize_record(record_data: Dict[str, Any]) -> BaseRecord:
    """Deserialize a record from a dictionary."""
    record_type = RecordType(record_data["record_type"])
    record_class = RECORD_REGISTRY.get(record_type, BaseRecord)
    return record_class(**record_data)

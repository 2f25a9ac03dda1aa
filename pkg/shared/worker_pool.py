"""Process-pool dispatch for independent experiment tasks."""
import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Any, Callable, Generic, List, Optional, Sequence, TypeVar

logger = logging.getLogger(__name__)

T = TypeVar("T")


@dataclass(frozen=True)
class TaskResult(Generic[T]):
    """Outcome of one task: either a value or the error message it raised."""

    index: int
    value: Optional[T] = None
    error: Optional[str] = None

    @property
    def ok(self) -> bool:
        return self.error is None


def _run_task(func: Callable[[Any], T], index: int, item: Any) -> TaskResult[T]:
    try:
        return TaskResult(index=index, value=func(item))
    except Exception as e:
        logger.error(f"Task {index} failed: {str(e)}", exc_info=True)
        return TaskResult(index=index, error=f"{type(e).__name__}: {e}")


class WorkerPool:
    """
    Maps a function over independent items.

    With one worker everything runs in-process; otherwise items are
    dispatched to a ProcessPoolExecutor, so the function and items must be
    picklable. A failing item does not abort the batch: its exception is
    captured in the corresponding TaskResult.
    """

    def __init__(self, workers: int = 1):
        if workers < 1:
            raise ValueError(f"workers must be positive, got {workers}")
        self.workers = workers

    def map(self, func: Callable[[Any], T], items: Sequence[Any]) -> List[TaskResult[T]]:
        """
        Run func over items.

        Args:
            func: Module-level callable taking one item
            items: Work items

        Returns:
            One TaskResult per item, ordered by input index
        """
        logger.info(f"Dispatching {len(items)} tasks to {self.workers} worker(s)")

        if self.workers == 1 or len(items) <= 1:
            results = [_run_task(func, i, item) for i, item in enumerate(items)]
        else:
            with ProcessPoolExecutor(max_workers=self.workers) as executor:
                futures = [
                    executor.submit(_run_task, func, i, item)
                    for i, item in enumerate(items)
                ]
                results = [future.result() for future in futures]

        failed = sum(1 for r in results if not r.ok)
        if failed:
            logger.warning(f"{failed} of {len(items)} tasks failed")
        else:
            logger.info(f"Completed {len(items)} tasks")
        return results

"""Batch evaluation of independent numerical jobs on a thread pool."""

import logging
import time
from concurrent.futures import ThreadPoolExecutor, as_completed
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

from .config import BatchConfig, config_manager

logger = logging.getLogger(__name__)


@dataclass
class BatchItem:
    """One job: the arguments of a single call."""

    id: str
    args: Tuple[Any, ...] = ()
    kwargs: Dict[str, Any] = field(default_factory=dict)


@dataclass
class BatchResult:
    item_id: str
    success: bool
    data: Any = None
    exception: Optional[BaseException] = None
    seconds: float = 0.0

    @property
    def error_type(self) -> Optional[str]:
        return type(self.exception).__name__ if self.exception is not None else None


@dataclass
class BatchProgress:
    """Completion counters, updated as jobs finish."""

    total: int
    succeeded: int = 0
    failed: int = 0

    @property
    def done(self) -> int:
        return self.succeeded + self.failed

    @property
    def fraction(self) -> float:
        return self.done / self.total if self.total else 1.0


class BatchProcessor:
    """Runs a function over independent items; a failing item never aborts the batch."""

    def __init__(self, config: Optional[BatchConfig] = None):
        self.config = config or config_manager.get_batch_config()

    def map(
        self,
        func: Callable[..., Any],
        items: Sequence[BatchItem],
        on_progress: Optional[Callable[[BatchProgress], None]] = None,
    ) -> List[BatchResult]:
        """Evaluate ``func`` on every item; results come back in input order."""
        if len(items) > self.config.max_batch_size:
            raise ValueError(
                f"Batch size ({len(items)}) exceeds maximum allowed "
                f"({self.config.max_batch_size})"
            )
        if not items:
            return []

        progress = BatchProgress(total=len(items))
        results: List[Optional[BatchResult]] = [None] * len(items)
        start = time.perf_counter()

        with ThreadPoolExecutor(max_workers=self.config.parallel_workers) as executor:
            futures = {
                executor.submit(_run_item, func, item): index
                for index, item in enumerate(items)
            }
            for future in as_completed(futures, timeout=self.config.timeout_seconds):
                result = future.result()
                results[futures[future]] = result
                if result.success:
                    progress.succeeded += 1
                else:
                    progress.failed += 1
                if on_progress:
                    on_progress(progress)

        logger.info(
            f"Batch of {progress.total}: {progress.succeeded} succeeded, "
            f"{progress.failed} failed in {time.perf_counter() - start:.2f}s"
        )
        return results  # type: ignore[return-value]


def _run_item(func: Callable[..., Any], item: BatchItem) -> BatchResult:
    start = time.perf_counter()
    try:
        data = func(*item.args, **item.kwargs)
    except Exception as e:
        logger.error(f"Batch item {item.id} failed: {e}")
        return BatchResult(
            item_id=item.id,
            success=False,
            exception=e,
            seconds=time.perf_counter() - start,
        )
    return BatchResult(
        item_id=item.id, success=True, data=data, seconds=time.perf_counter() - start
    )

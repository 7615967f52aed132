"""Background jobs for profiling and training.

One executor serves the whole engine; jobs are monotone
Queued -> Running -> Done | Failed and at most one live job runs per
resource key (a second start returns the live job unchanged).
"""

from __future__ import annotations

import threading
import uuid
from concurrent.futures import Future, ThreadPoolExecutor
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Callable


class JobStatus(str, Enum):
    QUEUED = "Queued"
    RUNNING = "Running"
    DONE = "Done"
    FAILED = "Failed"


_ORDER = {
    JobStatus.QUEUED: 0,
    JobStatus.RUNNING: 1,
    JobStatus.DONE: 2,
    JobStatus.FAILED: 2,
}


@dataclass
class Job:
    job_id: str
    kind: str
    resource_id: str
    status: JobStatus = JobStatus.QUEUED
    error: str | None = None
    result: Any = None
    _lock: threading.Lock = field(default_factory=threading.Lock, repr=False)

    def _advance(self, status: JobStatus, error: str | None = None, result: Any = None) -> None:
        with self._lock:
            if _ORDER[status] < _ORDER[self.status]:
                raise RuntimeError(f"job status cannot move {self.status} -> {status}")
            self.status = status
            if error is not None:
                self.error = error
            if result is not None:
                self.result = result

    def to_dict(self) -> dict:
        out = {
            "job_id": self.job_id,
            "kind": self.kind,
            "resource_id": self.resource_id,
            "status": self.status.value,
            "error": self.error,
        }
        if isinstance(self.result, (str, int, float, bool)):
            out["result"] = self.result
        return out


class JobManager:
    def __init__(self, max_workers: int = 2):
        self._executor = ThreadPoolExecutor(max_workers=max_workers)
        self._jobs: dict[str, Job] = {}
        self._live: dict[tuple[str, str], str] = {}
        self._futures: dict[str, Future] = {}
        self._lock = threading.Lock()

    def submit(self, kind: str, resource_id: str, fn: Callable[[], Any]) -> Job:
        """Run fn in the background; returns the existing live job if one runs."""
        key = (kind, resource_id)
        with self._lock:
            live_id = self._live.get(key)
            if live_id is not None:
                live = self._jobs[live_id]
                if live.status in (JobStatus.QUEUED, JobStatus.RUNNING):
                    return live
            job = Job(job_id=uuid.uuid4().hex, kind=kind, resource_id=resource_id)
            self._jobs[job.job_id] = job
            self._live[key] = job.job_id

        def run() -> None:
            job._advance(JobStatus.RUNNING)
            try:
                result = fn()
            except Exception as exc:  # failure is a terminal job state, not a crash
                job._advance(JobStatus.FAILED, error=str(exc))
            else:
                job._advance(JobStatus.DONE, result=result)

        with self._lock:
            self._futures[job.job_id] = self._executor.submit(run)
        return job

    def get(self, job_id: str) -> Job | None:
        with self._lock:
            return self._jobs.get(job_id)

    def wait(self, job_id: str, timeout: float | None = None) -> Job:
        with self._lock:
            future = self._futures.get(job_id)
            job = self._jobs.get(job_id)
        if job is None:
            raise KeyError(job_id)
        if future is not None:
            future.result(timeout=timeout)
        return job

    def shutdown(self, wait: bool = True) -> None:
        self._executor.shutdown(wait=wait)

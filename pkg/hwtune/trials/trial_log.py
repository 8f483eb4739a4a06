import json
import os
import threading
from pathlib import Path
from typing import List, Optional

from hwtune.shared.util import logger

from .trial_record import TrialRecord


TRIALS_FILE = "trials.jsonl"
TIMINGS_FILE = "timings.jsonl"


def dump_record(record: TrialRecord) -> str:
    return json.dumps(record.to_dict())


class TrialLog:
    """
    Append-only JSON-lines log of one run. Every record is flushed and synced
    before `append` returns, so a crash leaves all completed rounds on disk.
    Wall clock timestamps go to a sidecar file to keep the trial log replayable.
    """

    def __init__(self, directory: Path):
        self.directory = Path(directory)
        self.directory.mkdir(parents=True, exist_ok=True)
        self.lock = threading.Lock()
        self.records: List[TrialRecord] = []

    @property
    def trials_path(self) -> Path:
        return self.directory / TRIALS_FILE

    @property
    def timings_path(self) -> Path:
        return self.directory / TIMINGS_FILE

    def append(self, record: TrialRecord) -> None:
        with self.lock:
            self._write_line(self.trials_path, dump_record(record))
            self._write_line(self.timings_path, json.dumps(record.timing_dict()))
            self.records.append(record)
        logger.debug(f"Logged round {record.round} to {self.trials_path}")

    def _write_line(self, path: Path, line: str) -> None:
        with path.open("a", encoding="utf-8") as handle:
            handle.write(line)
            handle.write("\n")
            handle.flush()
            os.fsync(handle.fileno())


def read_trials(path: Path) -> List[TrialRecord]:
    records: List[TrialRecord] = []
    with Path(path).open(encoding="utf-8") as handle:
        for line in handle:
            if line.strip():
                records.append(TrialRecord.from_dict(json.loads(line)))
    return records


def first_difference(a: Path, b: Path) -> Optional[int]:
    """Index of the first differing line of two logs, None if byte-identical."""
    left = Path(a).read_bytes().splitlines()
    right = Path(b).read_bytes().splitlines()
    for index, (x, y) in enumerate(zip(left, right)):
        if x != y:
            return index
    if len(left) != len(right):
        return min(len(left), len(right))
    return None

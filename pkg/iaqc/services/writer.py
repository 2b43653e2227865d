"""Output files: CSV tables, JSON documents and the run manifest."""
import csv
import dataclasses
import json
import logging
import math
import os
import tempfile
import threading
from dataclasses import dataclass, field
from datetime import datetime, timezone
from enum import Enum
from typing import Any, Dict, List

import numpy as np

logger = logging.getLogger(__name__)


def to_serializable(o):
    """Recursively convert numpy values, enums and dataclasses to JSON types."""
    if isinstance(o, np.generic):
        return o.item()
    if isinstance(o, np.ndarray):
        return o.tolist()
    if isinstance(o, Enum):
        return o.value
    if dataclasses.is_dataclass(o) and not isinstance(o, type):
        return {f.name: to_serializable(getattr(o, f.name)) for f in dataclasses.fields(o)}
    if isinstance(o, dict):
        return {k: to_serializable(v) for k, v in o.items()}
    if isinstance(o, (list, tuple)):
        return [to_serializable(i) for i in o]
    if isinstance(o, float) and not math.isfinite(o):
        return str(o)
    return o


def format_cell(value, digits=9):
    """CSV rendering: booleans as 0/1, floats to ``digits`` significant digits, None as ''."""
    if value is None:
        return ''
    if isinstance(value, np.generic):
        value = value.item()
    if isinstance(value, bool):
        return '1' if value else '0'
    if isinstance(value, Enum):
        return value.value
    if isinstance(value, float):
        return f'{value:.{digits}g}'
    return str(value)


@dataclass
class RunManifest:
    """What was run, with which seed, and where the results went."""
    command: str
    seed: int
    version: str
    config: Dict[str, Any] = field(default_factory=dict)
    outputs: List[str] = field(default_factory=list)
    timestamp: str = field(default_factory=lambda: datetime.now(timezone.utc).isoformat())


class OutputWriter:
    """Serializes all file output of one command behind a single lock."""

    def __init__(self, out_dir, significant_digits=9):
        self.out_dir = out_dir
        self.digits = significant_digits
        self.written = []
        self._lock = threading.Lock()

    def path(self, name):
        return os.path.join(self.out_dir, name)

    def _atomic_write(self, name, write):
        full_path = self.path(name)
        os.makedirs(self.out_dir, exist_ok=True)
        tmp_path = None
        with self._lock:
            try:
                with tempfile.NamedTemporaryFile('w', delete=False, dir=self.out_dir, encoding='utf-8',
                                                 newline='', suffix='.tmp') as f:
                    tmp_path = f.name
                    write(f)
                os.replace(tmp_path, full_path)
            except OSError as e:
                logger.error(f"Failed to write {full_path}: {e}")
                if tmp_path and os.path.exists(tmp_path):
                    os.remove(tmp_path)
                raise
            self.written.append(full_path)
        logger.info(f"Wrote {full_path}")
        return full_path

    def write_csv(self, name, rows, fieldnames=None):
        """Write dict rows with a header; columns default to every key in first-seen order."""
        rows = list(rows)
        if fieldnames is None:
            fieldnames = list(dict.fromkeys(key for row in rows for key in row))

        def write(f):
            writer = csv.writer(f, lineterminator='\n')
            writer.writerow(fieldnames)
            for row in rows:
                writer.writerow([format_cell(row.get(name), self.digits) for name in fieldnames])

        return self._atomic_write(name, write)

    def write_json(self, name, payload):
        def write(f):
            json.dump(to_serializable(payload), f, indent=2, sort_keys=True)
            f.write('\n')

        return self._atomic_write(name, write)

    def write_manifest(self, manifest, name='manifest.json'):
        """Write the manifest last so it lists every other output."""
        manifest.outputs = list(self.written) + [self.path(name)]
        return self.write_json(name, manifest)

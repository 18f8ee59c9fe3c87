"""
Utilities for writing CSV and JSON results.

Files are written to a temporary sibling and renamed into place, so readers never
see a partial result. Without a path the payload goes to stdout.
"""

import json
import logging
import os
import sys
import tempfile
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence

import pandas as pd

logger = logging.getLogger(__name__)


def _atomic_write(path: str, text: str) -> None:
    target = Path(path)
    target.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp_name = tempfile.mkstemp(dir=str(target.parent), prefix=f".{target.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", newline="") as f:
            f.write(text)
        os.replace(tmp_name, target)
    except Exception:
        if os.path.exists(tmp_name):
            os.unlink(tmp_name)
        raise


def csv_text(rows: List[Dict[str, Any]], columns: Optional[Sequence[str]] = None) -> str:
    """Rows as CSV with a header, '.' decimals and LF line endings."""
    frame = pd.DataFrame(rows, columns=list(columns) if columns else None)
    return frame.to_csv(index=False, lineterminator="\n")


def write_csv(rows: List[Dict[str, Any]], path: Optional[str] = None, columns: Optional[Sequence[str]] = None) -> None:
    text = csv_text(rows, columns)
    if path:
        _atomic_write(path, text)
        logger.info(f"Wrote {len(rows)} rows to {path}")
    else:
        sys.stdout.write(text)


def write_json(payload: Any, path: Optional[str] = None) -> None:
    text = json.dumps(payload, indent=2) + "\n"
    if path:
        _atomic_write(path, text)
        logger.info(f"Wrote JSON to {path}")
    else:
        sys.stdout.write(text)


def summary_path(output: str) -> str:
    """JSON summary path next to a CSV output: results.csv -> results.json."""
    return str(Path(output).with_suffix(".json"))

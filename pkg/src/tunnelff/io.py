"""Bit-stable CSV/JSON export and the run manifest.

All floating-point values are written with 17 significant digits so two
runs of the same configuration produce byte-identical delimited output.
"""

import hashlib
import json
import subprocess
import time
from pathlib import Path

import numpy as np


def format_value(v):
    if isinstance(v, (float, np.floating)):
        return "%.17g" % v
    return str(v)


def write_csv(path, header, columns):
    """Write columns (equal-length 1D arrays) as CSV with a header row."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    cols = [np.asarray(c) for c in columns]
    n = len(cols[0])
    if any(len(c) != n for c in cols):
        raise ValueError("columns must have equal length")
    with open(path, "w", newline="\n") as f:
        f.write(",".join(header) + "\n")
        for i in range(n):
            f.write(",".join(format_value(c[i]) for c in cols) + "\n")
    return path


def sha256_file(path):
    h = hashlib.sha256()
    with open(path, "rb") as f:
        for chunk in iter(lambda: f.read(65536), b""):
            h.update(chunk)
    return h.hexdigest()


def version_string():
    """Package version, extended with git-describe output when available."""
    from . import __version__
    try:
        desc = subprocess.run(
            ["git", "describe", "--always", "--dirty", "--tags"],
            cwd=Path(__file__).resolve().parent, capture_output=True,
            text=True, timeout=5)
        if desc.returncode == 0 and desc.stdout.strip():
            return f"tunnelff {__version__} ({desc.stdout.strip()})"
    except (OSError, subprocess.SubprocessError):
        pass
    return f"tunnelff {__version__}"


class Manifest:
    """Collects run metadata and writes run.json at the end."""

    def __init__(self, command, config_text):
        self.data = {
            "version": version_string(),
            "command": command,
            "config": config_text,
            "outputs": [],
            "checks": {},
        }
        self._t0 = time.monotonic()

    def add_output(self, path):
        path = Path(path)
        self.data["outputs"].append({
            "path": path.name,
            "sha256": sha256_file(path),
            "bytes": path.stat().st_size,
        })

    def add_check(self, name, passed, value=None, tolerance=None):
        entry = {"passed": bool(passed)}
        if value is not None:
            entry["value"] = float(value)
        if tolerance is not None:
            entry["tolerance"] = float(tolerance)
        self.data["checks"][name] = entry

    @property
    def all_passed(self):
        return all(c["passed"] for c in self.data["checks"].values())

    def write(self, out_dir):
        self.data["wall_time_s"] = round(time.monotonic() - self._t0, 3)
        path = Path(out_dir) / "run.json"
        path.parent.mkdir(parents=True, exist_ok=True)
        with open(path, "w") as f:
            json.dump(self.data, f, indent=2, sort_keys=True)
            f.write("\n")
        return path

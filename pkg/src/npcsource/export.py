"""CSV, PGM and run-manifest writers with deterministic byte output."""
from __future__ import annotations

import csv
import hashlib
import io
import json
import math
from datetime import datetime, timezone
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np


def fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, (bool, np.bool_)):
        return "1" if value else "0"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        v = float(value)
        if math.isnan(v):
            return "nan"
        return repr(v) if v != 0 else "0.0"
    return str(value)


def write_csv(path: str | Path, header: Sequence[str], rows: Iterable[Sequence]) -> Path:
    path = Path(path)
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows([fmt(v) for v in row] for row in rows)
    path.write_text(buf.getvalue(), encoding="utf-8")
    return path


def write_pgm(path: str | Path, image: np.ndarray, lo: float, hi: float) -> Path:
    """8-bit binary PGM; ``lo`` maps to 0 and ``hi`` to 255. Row 0 is the top of the image."""
    img = np.asarray(image, dtype=float)
    if img.ndim != 2:
        raise ValueError("PGM export needs a 2D array")
    if hi == lo:
        raise ValueError("PGM export needs hi != lo")
    scaled = np.clip(np.rint((img - lo) / (hi - lo) * 255.0), 0, 255).astype(np.uint8)
    h, w = scaled.shape
    path = Path(path)
    path.write_bytes(f"P5\n{w} {h}\n255\n".encode("ascii") + scaled.tobytes())
    return path


def write_sign_pgm(path, signs: np.ndarray) -> Path:
    """Sign grid with y increasing upward: -1 -> 0 (black), +1 -> 255 (white)."""
    return write_pgm(path, np.asarray(signs)[::-1], -1.0, 1.0)


def read_pgm(path: str | Path) -> np.ndarray:
    data = Path(path).read_bytes()
    parts = data.split(maxsplit=4)
    if parts[0] != b"P5":
        raise ValueError("not a binary PGM")
    w, h, maxval = int(parts[1]), int(parts[2]), int(parts[3])
    if maxval != 255:
        raise ValueError("only 8-bit PGM is supported")
    return np.frombuffer(parts[4][: w * h], dtype=np.uint8).reshape(h, w)


def sha256_file(path: str | Path) -> str:
    return hashlib.sha256(Path(path).read_bytes()).hexdigest()


def canonical_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), default=_jsonable)


def _jsonable(obj):
    if isinstance(obj, (np.floating, np.integer)):
        return obj.item()
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    if isinstance(obj, tuple):
        return list(obj)
    raise TypeError(f"not JSON serialisable: {type(obj).__name__}")


def config_hash(config) -> str:
    return hashlib.sha256(canonical_json(config).encode("utf-8")).hexdigest()


def write_manifest(
    out_dir: str | Path,
    command: str,
    version: str,
    config,
    outputs: Sequence[Path],
    results: dict | None = None,
    extra: dict | None = None,
) -> Path:
    """JSON sidecar; everything but ``timestamp`` is a pure function of the inputs."""
    out_dir = Path(out_dir)
    body = {
        "command": command,
        "version": version,
        "config_sha256": config_hash(config),
        "parameters": config,
        "outputs": [{"path": Path(p).name, "sha256": sha256_file(p)} for p in outputs],
        "results": results or {},
    }
    if extra:
        body.update(extra)
    body["content_sha256"] = config_hash(body)
    body["timestamp"] = datetime.now(timezone.utc).isoformat(timespec="seconds")
    path = out_dir / "manifest.json"
    path.write_text(json.dumps(body, indent=2, sort_keys=True, default=_jsonable) + "\n", encoding="utf-8")
    return path

"""On-disk persistence for the vertex-integral memo.

The file is plain text::

    # gwloc integral cache
    version 1
    <genus>;<comma separated psi exponents>;<lambda power>;<p/q>

A file with another version, or any malformed line, is ignored as a whole
(with a warning) and the integrals are recomputed.  Saving merges with
whatever is on disk under an exclusive lock, so concurrent runs do not lose
entries.
"""

from __future__ import annotations

import fcntl
import logging
import os
import tempfile
from contextlib import contextmanager
from fractions import Fraction
from pathlib import Path

from .exact import format_rational
from .integrals import IntegralCache

log = logging.getLogger(__name__)

CACHE_VERSION = 1
HEADER = "# gwloc integral cache"
ENV_VAR = "GWLOC_CACHE"


def default_cache_path() -> Path | None:
    p = os.environ.get(ENV_VAR)
    return Path(p) if p else None


def _parse(text: str) -> dict:
    lines = text.splitlines()
    if len(lines) < 2 or lines[0].strip() != HEADER:
        raise ValueError("missing header")
    if lines[1].strip() != f"version {CACHE_VERSION}":
        raise ValueError(f"unsupported cache version line {lines[1].strip()!r}")
    entries = {}
    for no, line in enumerate(lines[2:], start=3):
        if not line.strip():
            continue
        g, a, lam, value = line.split(";")
        exps = tuple(int(x) for x in a.split(",") if x)
        key = (int(g), tuple(sorted(exps)), int(lam))
        entries[key] = Fraction(value)
    return entries


def read_cache(path) -> dict:
    """Entries stored at ``path``; an empty dict if missing, stale or corrupt."""
    path = Path(path)
    try:
        text = path.read_text()
    except FileNotFoundError:
        return {}
    except OSError as exc:
        log.warning("cannot read cache %s: %s", path, exc)
        return {}
    try:
        return _parse(text)
    except (ValueError, ZeroDivisionError) as exc:
        log.warning("ignoring cache %s: %s", path, exc)
        return {}


def _dumps(entries: dict) -> str:
    out = [HEADER, f"version {CACHE_VERSION}"]
    for (g, a, lam), v in sorted(entries.items()):
        out.append(f"{g};{','.join(map(str, a))};{lam};{format_rational(v)}")
    return "\n".join(out) + "\n"


@contextmanager
def _locked(path: Path):
    lock = path.with_name(path.name + ".lock")
    with open(lock, "a") as fh:
        fcntl.flock(fh, fcntl.LOCK_EX)
        try:
            yield
        finally:
            fcntl.flock(fh, fcntl.LOCK_UN)


def write_cache(path, entries: dict) -> bool:
    """Merge ``entries`` into the file at ``path``; False (with a warning) on I/O failure."""
    path = Path(path)
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        with _locked(path):
            merged = read_cache(path)
            merged.update(entries)
            fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=path.name, suffix=".tmp")
            with os.fdopen(fd, "w") as fh:
                fh.write(_dumps(merged))
            os.replace(tmp, path)
        return True
    except OSError as exc:
        log.warning("cannot write cache %s: %s", path, exc)
        return False


def load_into(cache: IntegralCache, path) -> int:
    entries = read_cache(path)
    cache.merge(entries)
    return len(entries)


def cache_roundtrip(path, cache: IntegralCache) -> IntegralCache:
    """Persist ``cache`` to ``path`` and return a fresh cache loaded from it."""
    write_cache(path, dict(cache.entries))
    out = IntegralCache()
    load_into(out, path)
    return out

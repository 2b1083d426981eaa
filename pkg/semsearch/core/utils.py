import hashlib
import os
import tempfile
from pathlib import Path
from typing import Iterable, Union

import psutil

from semsearch.types import PathLike

HASH_CHUNK_SIZE = 1 << 16


def memory_usage_mb() -> float:
    """Resident set size of the current process in megabytes."""
    try:
        return float(psutil.Process(os.getpid()).memory_info().rss) / (1024 * 1024)
    except (psutil.Error, OSError):
        return 0.0


def format_file_size(size_bytes: Union[int, float]) -> str:
    """
    Format file size in human readable format.

    Args:
        size_bytes: Size in bytes

    Returns:
        Formatted size string
    """
    if size_bytes == 0:
        return "0 B"

    size_units = ["B", "KB", "MB", "GB", "TB"]
    unit_index = 0
    value = float(size_bytes)

    while value >= 1024 and unit_index < len(size_units) - 1:
        value /= 1024.0
        unit_index += 1

    return f"{value:.2f} {size_units[unit_index]}"


def sha256_file(path: PathLike) -> str:
    """Hex digest of a file's bytes."""
    digest = hashlib.sha256()
    with open(path, "rb") as f:
        for chunk in iter(lambda: f.read(HASH_CHUNK_SIZE), b""):
            digest.update(chunk)
    return digest.hexdigest()


def escape_field(value: str) -> str:
    """Make a value safe inside a tab-separated, comma-listed text field."""
    return (
        value.replace("%", "%25")
        .replace("\t", "%09")
        .replace("\n", "%0A")
        .replace("\r", "%0D")
        .replace(",", "%2C")
    )


def unescape_field(value: str) -> str:
    # %25 last so that an escaped percent is not decoded twice
    return (
        value.replace("%2C", ",")
        .replace("%0D", "\r")
        .replace("%0A", "\n")
        .replace("%09", "\t")
        .replace("%25", "%")
    )


def write_text_atomic(path: PathLike, lines: Iterable[str]) -> None:
    """Write lines to ``path`` through a temporary file and rename.

    A reader never sees a half-written artifact.
    """
    target = Path(path)
    target.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp_name = tempfile.mkstemp(
        dir=str(target.parent), prefix=f".{target.name}.", suffix=".tmp"
    )
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as f:
            for line in lines:
                f.write(line)
                f.write("\n")
        os.replace(tmp_name, target)
    except BaseException:
        try:
            os.unlink(tmp_name)
        except OSError:
            pass
        raise

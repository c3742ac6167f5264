from pathlib import Path
from typing import Type

from services.errors import AnalysisError


def read_utf8(path, error: Type[AnalysisError], what: str = "file") -> str:
    """Read a UTF-8 text file; undecodable bytes raise ``error`` naming the file."""
    path = Path(path)
    try:
        return path.read_text(encoding="utf-8")
    except UnicodeDecodeError as exc:
        raise error(f"{what} {path.name} is not valid UTF-8 (byte {exc.start})") from exc

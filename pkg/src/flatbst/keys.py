"""
Key file ingestion: one signed 64-bit decimal integer per line.
"""
import logging
from pathlib import Path
from typing import Sequence, Union

from flatbst.errors import InputFormatError, UnsortedInputError
from flatbst.implicit import KeySequence

logger = logging.getLogger(__name__)

INT64_MIN = -(1 << 63)
INT64_MAX = (1 << 63) - 1


def parse_keys(text: str) -> list[int]:
    """Parse LF or CRLF separated keys. A trailing newline is allowed.

    Raises:
        InputFormatError: on a line that is not an in-range integer
    """
    keys = []
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    for number, line in enumerate(lines, start=1):
        line = line.rstrip("\r").strip()
        try:
            value = int(line, 10)
        except ValueError:
            raise InputFormatError(f"Line {number}: not an integer: {line!r}")
        if not INT64_MIN <= value <= INT64_MAX:
            raise InputFormatError(f"Line {number}: {value} outside the signed 64-bit range")
        keys.append(value)
    return keys


def check_sorted(keys: Sequence[int]) -> None:
    """Raises UnsortedInputError naming the first out-of-order line (1-based)."""
    first = KeySequence(keys).first_unsorted()
    if first is not None:
        raise UnsortedInputError(first + 1)


def read_keys(path: Union[str, Path], *, sort: bool = False) -> KeySequence:
    """Read a key file, sorting it when asked, otherwise requiring order.

    Raises:
        OSError: if the file cannot be read
        InputFormatError: on malformed lines or bytes that are not UTF-8
        UnsortedInputError: if unsorted and ``sort`` is false
    """
    try:
        text = Path(path).read_text(encoding="utf-8")
    except UnicodeDecodeError as e:
        raise InputFormatError(f"{path}: not UTF-8 text at byte {e.start}") from e
    keys = parse_keys(text)
    if sort:
        try:
            check_sorted(keys)
        except UnsortedInputError as e:
            logger.warning(f"{path}: input unsorted at line {e.line}, sorting {len(keys)} keys")
            keys.sort()
    else:
        check_sorted(keys)
    logger.info(f"Read {len(keys)} keys from {path}")
    return KeySequence.from_iterable(keys)

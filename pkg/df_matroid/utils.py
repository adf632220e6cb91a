import os
import tempfile
from typing import Any, Iterator, List, Optional

from rest_framework.exceptions import APIException

from .exceptions import OracleLimitExceeded
from .settings import api_settings

ORACLE_LIMIT_ENV = "MATROID_MAX_ORACLE_N"


def popcount(mask: int) -> int:
    return bin(mask).count("1")


def bits(mask: int) -> List[int]:
    """Indices of the set bits of ``mask`` in ascending order."""
    out = []
    index = 0
    while mask:
        if mask & 1:
            out.append(index)
        mask >>= 1
        index += 1
    return out


def resolve_oracle_limit(limit: Optional[int] = None) -> int:
    if limit is not None:
        return limit
    env = os.environ.get(ORACLE_LIMIT_ENV)
    if env:
        return int(env)
    return int(api_settings.MAX_ORACLE_N)


def check_oracle_limit(ground_size: int, limit: Optional[int] = None) -> None:
    resolved = resolve_oracle_limit(limit)
    if ground_size > resolved:
        raise OracleLimitExceeded(
            f"ground set has {ground_size} elements, oracle limit is {resolved}",
            extra_data={"ground_size": ground_size, "limit": resolved},
        )


def _flatten(detail: Any, prefix: str = "") -> Iterator[str]:
    if isinstance(detail, dict):
        for key, value in detail.items():
            yield from _flatten(value, f"{prefix}{key}: ")
    elif isinstance(detail, list):
        for item in detail:
            yield from _flatten(item, prefix)
    else:
        yield f"{prefix}{detail}"


def error_message(exc: APIException) -> str:
    """Flatten DRF error details into one line."""
    return "; ".join(_flatten(exc.detail))


def atomic_write(path: str, text: str) -> None:
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp_path = tempfile.mkstemp(dir=directory, prefix=".tmp-")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as handle:
            handle.write(text)
        os.replace(tmp_path, path)
    except BaseException:
        if os.path.exists(tmp_path):
            os.unlink(tmp_path)
        raise

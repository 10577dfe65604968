"""Tolerant reading of hand-written JSON, e.g. board state files for the oracle."""
import json
import logging
import re
from typing import Any, Iterable, Iterator

from json_repair import repair_json

logger = logging.getLogger(__name__)

_FENCED = re.compile(r"```(?:json)?\s*(\{.*?\})\s*```", re.DOTALL | re.IGNORECASE)


class JsonParsingError(Exception):
    pass


def _candidates(text: str) -> Iterator[str]:
    """Fenced block first, then the outermost braces, then the whole text."""
    match = _FENCED.search(text)
    if match:
        yield match.group(1)
    start, end = text.find("{"), text.rfind("}")
    if start != -1 and end > start:
        yield text[start:end + 1]
    yield text


def _decode(raw: str) -> Any:
    try:
        return json.loads(raw)
    except json.JSONDecodeError:
        pass
    try:
        # trailing commas, single quotes, unclosed brackets
        obj = repair_json(raw, return_objects=True)
    except Exception as exc:
        logger.debug("repair failed: %s", exc)
        return None
    logger.debug("parsed after repair")
    return obj


def parse_json_object(text: str, required_keys: Iterable[str] = ()) -> dict:
    for raw in _candidates(text):
        obj = _decode(raw)
        if not isinstance(obj, dict):
            continue
        missing = [key for key in required_keys if key not in obj]
        if missing:
            raise JsonParsingError(f"missing required key(s): {', '.join(missing)}")
        return obj
    raise JsonParsingError("no JSON object found in the input")

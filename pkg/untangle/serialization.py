"""
JSON encoder and decoders for matchings and flip sequences
"""

import dataclasses
import json
from enum import Enum
from fractions import Fraction
from typing import List, Optional

from smart_open import open as smart_open

from untangle.engine import FlipSequence
from untangle.geometry import Point, blue, red
from untangle.matching import Flip, Matching


def coord_to_str(value: Fraction) -> str:
    """canonical ``num/den`` form, the denominator always written"""
    value = Fraction(value)
    return f"{value.numerator}/{value.denominator}"


def coord_from_str(text) -> Fraction:
    if isinstance(text, float):
        raise ValueError(f"coordinates are rational strings, got float {text}")
    return Fraction(text)


def _point_to_list(point: Point) -> List[str]:
    return [coord_to_str(point.x), coord_to_str(point.y)]


def matching_to_dict(matching: Matching) -> dict:
    return {
        "reds": [_point_to_list(p) for p in matching.reds],
        "blues": [_point_to_list(p) for p in matching.blues],
        "mate": list(matching.mate),
    }


def matching_from_dict(data: dict) -> Matching:
    try:
        reds = [red(coord_from_str(x), coord_from_str(y)) for x, y in data["reds"]]
        blues = [blue(coord_from_str(x), coord_from_str(y)) for x, y in data["blues"]]
        mate = [int(j) for j in data["mate"]]
    except (KeyError, TypeError) as e:
        raise ValueError(f"malformed matching: {e}") from e
    return Matching(reds, blues, mate)


def sequence_to_dict(sequence: FlipSequence, with_start: bool = False) -> dict:
    result = {"flips": [[flip.i, flip.j] for flip in sequence.steps]}
    if with_start:
        result["start"] = matching_to_dict(sequence.start)
    return result


def flips_from_dict(data: dict) -> List[Flip]:
    try:
        return [Flip(int(i), int(j)) for i, j in data["flips"]]
    except (KeyError, TypeError, ValueError) as e:
        raise ValueError(f"malformed flip sequence: {e}") from e


def sequence_from_dict(data: dict, start: Optional[Matching] = None) -> FlipSequence:
    """``start`` is required when the document does not embed its matching"""
    if start is None:
        if "start" not in data:
            raise ValueError("flip sequence has no start matching")
        start = matching_from_dict(data["start"])
    return FlipSequence(start, flips_from_dict(data))


class UntangleJSONEncoder(json.JSONEncoder):
    """custom JSON encoder for exact coordinates and untangle types"""

    def default(self, o):  # pylint: disable=too-many-return-statements
        if isinstance(o, Fraction):
            return coord_to_str(o)
        if isinstance(o, Enum):
            return o.value
        if isinstance(o, Point):
            return _point_to_list(o)
        if isinstance(o, Matching):
            return matching_to_dict(o)
        if isinstance(o, FlipSequence):
            return sequence_to_dict(o)
        if dataclasses.is_dataclass(o) and not isinstance(o, type):
            return {f.name: getattr(o, f.name) for f in dataclasses.fields(o)}
        if isinstance(o, (set, frozenset)):
            return sorted(o)
        # use the default encoder as fallback
        return super().default(o)


def dump(obj, uri: str):
    with smart_open(uri, "w") as f:
        json.dump(obj, f, cls=UntangleJSONEncoder, indent=2)


def load_json(uri: str):
    with smart_open(uri) as f:
        return json.load(f)


def load_matching(uri: str) -> Matching:
    data = load_json(uri)
    # a sequence document embeds its start matching
    if "reds" not in data and "start" in data:
        data = data["start"]
    return matching_from_dict(data)


def load_sequence(uri: str, start: Optional[Matching] = None) -> FlipSequence:
    return sequence_from_dict(load_json(uri), start)

"""JSON helpers shared by the CLI.

Integers outside the IEEE-754 safe range are written as decimal strings so
that JSON consumers using doubles never lose digits.
"""
from __future__ import annotations

import json
from fractions import Fraction
from importlib import resources
from typing import Any

SAFE_INT = 2 ** 53 - 1


def jsonable(obj: Any) -> Any:
    if isinstance(obj, bool) or obj is None or isinstance(obj, str):
        return obj
    if isinstance(obj, int):
        return obj if abs(obj) <= SAFE_INT else str(obj)
    if isinstance(obj, Fraction):
        return {"num": jsonable(obj.numerator), "den": jsonable(obj.denominator)}
    if isinstance(obj, dict):
        return {k: jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [jsonable(v) for v in obj]
    if hasattr(obj, "to_json"):
        return jsonable(obj.to_json())
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def dumps(obj: Any) -> str:
    return json.dumps(jsonable(obj), sort_keys=True)


def parse_int(value: Any) -> int:
    if isinstance(value, bool):
        raise ValueError("expected an integer")
    if isinstance(value, int):
        return value
    if isinstance(value, str) and value.strip().lstrip("+-").isdigit():
        return int(value)
    raise ValueError(f"expected an integer, got {value!r}")


def parse_rational(value: Any) -> Fraction:
    if isinstance(value, dict):
        return Fraction(parse_int(value["num"]), parse_int(value["den"]))
    return Fraction(parse_int(value))


def load_schema(name: str) -> dict:
    text = resources.files("k3mukai").joinpath("schemas", f"{name}.schema.json").read_text()
    return json.loads(text)

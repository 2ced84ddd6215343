# Reading user p-value files (CSV or JSON) and flag-style procedure specs.

import csv
import json
import math
from pathlib import Path

from fdr_forge.errors import ConfigurationError, InputFormatError
from fdr_forge.model import ShapeFunction, TestingProblem
from fdr_forge.procedures import exponential_nu, harmonic_nu, uniform_nu

NAMED_SHAPES = ("identity", "harmonic", "nu-uniform", "nu-exponential", "nu-harmonic")


def _check_value(value: float, line: int | None, index: int) -> float:
    if not math.isfinite(value) or not 0.0 <= value <= 1.0:
        raise InputFormatError(f"p-value {value!r} is outside [0, 1]", line=line, index=index)
    return value


def _parse_csv(text: str) -> list[float]:
    # One or more p-values per row; '#' comment lines and a non-numeric header row are skipped.
    values = []
    for lineno, row in enumerate(csv.reader(text.splitlines()), start=1):
        cells = [c.strip() for c in row if c.strip()]
        if not cells or cells[0].startswith("#"):
            continue
        parsed = []
        for cell in cells:
            try:
                parsed.append(float(cell))
            except ValueError:
                parsed.append(None)
        if not values and all(v is None for v in parsed):
            continue
        for cell, value in zip(cells, parsed):
            index = len(values) + 1
            if value is None:
                raise InputFormatError(f"cannot parse {cell!r} as a number", line=lineno, index=index)
            values.append(_check_value(value, lineno, index))
    return values


def _parse_json(text: str) -> list[float]:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputFormatError(f"invalid JSON: {exc.msg}", line=exc.lineno) from exc
    if isinstance(data, dict):
        data = data.get("pvalues")
    if not isinstance(data, list):
        raise InputFormatError("JSON input must be a list of p-values or {\"pvalues\": [...]}")
    values = []
    for index, item in enumerate(data, start=1):
        if isinstance(item, bool) or not isinstance(item, (int, float)):
            raise InputFormatError(f"{item!r} is not a number", index=index)
        values.append(_check_value(float(item), None, index))
    return values


def read_pvalues(path) -> TestingProblem:
    path = Path(path)
    text = path.read_text(encoding="utf-8")
    values = _parse_json(text) if path.suffix.lower() == ".json" else _parse_csv(text)
    if not values:
        raise InputFormatError("no p-values")
    return TestingProblem.from_pvalues(values)


def parse_shape(text: str | None, m: int) -> ShapeFunction:
    # A named shape, a JSON shape literal, or a path to a JSON shape file.
    if text is None or text == "identity":
        return ShapeFunction.identity()
    if text == "harmonic":
        return ShapeFunction.harmonic()
    if text == "nu-uniform":
        return ShapeFunction.from_nu(uniform_nu(m))
    if text == "nu-exponential":
        return ShapeFunction.from_nu(exponential_nu(m))
    if text == "nu-harmonic":
        return ShapeFunction.from_nu(harmonic_nu(m))
    source = Path(text)
    raw = source.read_text(encoding="utf-8") if source.is_file() else text
    try:
        return ShapeFunction.from_json(json.loads(raw))
    except json.JSONDecodeError as exc:
        raise ConfigurationError(
            f"unknown shape {text!r}; use one of {', '.join(NAMED_SHAPES)} or a JSON shape"
        ) from exc


def parse_m_list(text: str) -> list[int]:
    try:
        values = [int(x) for x in text.split(",") if x.strip()]
    except ValueError as exc:
        raise ConfigurationError(f"--m-list must be comma-separated integers, got {text!r}") from exc
    if not values or any(v < 1 for v in values):
        raise ConfigurationError(f"--m-list needs positive integers, got {text!r}")
    return values

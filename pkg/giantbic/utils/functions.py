import math
import re
from typing import Any, List

_QUANTITY = re.compile(
    r"^(?P<sign>[+-])?\s*"
    r"(?P<number>(\d+(\.\d*)?|\.\d+)(e[+-]?\d+)?)?\s*\*?\s*"
    r"(sqrt\(\s*(?P<root>\d+(\.\d*)?)\s*\))?\s*\*?\s*"
    r"(?P<unit>xi|pi)?\s*"
    r"(/\s*(?P<denominator>\d+(\.\d*)?))?$"
)


def parse_quantity(value: Any, unit: str = "xi", scale: float = 1.0) -> float:
    """Function that converts a unit-tagged config value into a float

    Accepted forms: "-1", "-1xi", "-sqrt(2)xi", "pi", "0.75pi", "3pi/4", "pi/2".

    Args:
        value (Any): Raw value, numbers are passed through.
        unit (str): Tag allowed for this quantity, "xi" (energies) or "pi" (phases).
        scale (float): Value of one unit of "xi". Defaults to 1.0.

    Raises:
        TypeError: Value is neither a number nor a string
        ValueError: Value cannot be parsed, or carries the wrong unit tag

    Returns:
        float: Parsed value.
    """
    if isinstance(value, bool):
        raise TypeError("Quantities must be numbers or strings")
    if isinstance(value, (int, float)):
        return float(value)
    if not isinstance(value, str):
        raise TypeError("Quantities must be numbers or strings")

    text = value.strip().lower().replace(" ", "")
    match = _QUANTITY.match(text)
    if not text or match is None or not (match["number"] or match["root"] or match["unit"]):
        raise ValueError(f"Cannot parse quantity '{value}'")
    if match["unit"] and match["unit"] != unit:
        raise ValueError(f"Quantity '{value}' carries unit '{match['unit']}', expected '{unit}'")

    result = float(match["number"]) if match["number"] else 1.0
    if match["root"]:
        result *= math.sqrt(float(match["root"]))
    if match["unit"] == "pi":
        result *= math.pi
    elif match["unit"] == "xi":
        result *= scale
    if match["denominator"]:
        result /= float(match["denominator"])
    return -result if match["sign"] == "-" else result


def parse_list(value: Any) -> List[str]:
    """Splits a comma separated config value, lists are passed through."""
    if isinstance(value, (list, tuple)):
        return [str(item).strip() if isinstance(item, str) else item for item in value]
    if not isinstance(value, str):
        raise TypeError("Lists must be strings or sequences")
    return [item.strip() for item in value.split(",") if item.strip()]

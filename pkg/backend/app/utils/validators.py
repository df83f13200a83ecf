import re
from typing import Tuple

from ..models.errors import InvalidArgument


def validate_density(value: float, name: str = "density") -> float:
    """Densities are edge-keep probabilities in [0, 1]"""
    if not 0.0 <= value <= 1.0:
        raise InvalidArgument(f"{name} must lie in [0, 1], got {value}")
    return value


def validate_positive(value: int, name: str) -> int:
    if value < 1:
        raise InvalidArgument(f"{name} must be a positive integer, got {value}")
    return value


def parse_k_range(text: str) -> Tuple[int, int]:
    """Parse 'MIN..MAX' (or a single integer) into an inclusive range"""
    match = re.fullmatch(r"\s*(\d+)\s*(?:\.\.\s*(\d+)\s*)?", text)
    if not match:
        raise InvalidArgument(f"Invalid k range '{text}' (use MIN..MAX)")
    low = int(match.group(1))
    high = int(match.group(2)) if match.group(2) else low
    if low < 1 or high < low:
        raise InvalidArgument(f"Invalid k range '{text}': need 1 <= MIN <= MAX")
    return low, high

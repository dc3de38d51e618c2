"""
Validation functions for command-line flags.

Each validator returns a success flag and an error message, plus the parsed
value where there is one. Click callbacks in common.py turn failures into
flag errors.
"""

import math
import re
from pathlib import Path
from typing import List, Tuple

DIMS_PATTERN = re.compile(r"^\d+(x\d+)*$")
OUTPUT_SUFFIXES = ('.tns', '.png')


def parse_dims(text: str) -> Tuple[bool, Tuple[int, ...], str]:
    """
    Parse an extent list such as '7x7x3'.

    Returns: (is_valid, dims, error_message)
    """
    text = text.strip().lower()
    if not DIMS_PATTERN.match(text):
        return False, (), f"'{text}' is not of the form S1xS2x...xSN"
    dims = tuple(int(n) for n in text.split('x'))
    if any(n < 1 for n in dims):
        return False, (), "every extent must be >= 1"
    return True, dims, ""


def parse_lambdas(text: str) -> Tuple[bool, List[float], str]:
    """
    Parse a comma separated list of regularization weights.

    Returns: (is_valid, values, error_message)
    """
    values = []
    for item in text.split(','):
        item = item.strip()
        if not item:
            continue
        try:
            value = float(item)
        except ValueError:
            return False, [], f"'{item}' is not a number"
        if not math.isfinite(value) or value < 0:
            return False, [], f"'{item}' must be finite and >= 0"
        values.append(value)
    if not values:
        return False, [], "at least one value is required"
    return True, values, ""


def validate_output_target(path: str) -> Tuple[bool, str]:
    """
    Validate an output path: a .tns file, a .png file or a frame directory.

    Requirements:
    - Suffix is .tns or .png, or there is no suffix (frame directory)
    - An existing path without a suffix must be a directory
    """
    target = Path(path)
    suffix = target.suffix.lower()
    if suffix and suffix not in OUTPUT_SUFFIXES:
        return False, f"unsupported output format '{suffix}' (use .tns, .png or a directory)"
    if not suffix and target.exists() and not target.is_dir():
        return False, f"'{path}' exists and is not a directory"
    return True, ""

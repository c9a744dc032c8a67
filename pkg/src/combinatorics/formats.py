"""
Text formats for permutation sets and set families.

Pattern / permutation-set files hold one permutation per line in one-line notation
(``[3,4,1,2]``, ``3,4,1,2`` or ``3 4 1 2``). Family files start with a header line
``n=<int>`` followed by one set per line as comma-separated integers; ``{}`` or ``-``
stands for the empty set. In both formats blank lines and ``#`` comments are ignored.
"""

from __future__ import annotations

import logging
import re
from pathlib import Path
from typing import Iterable, List, Optional, Tuple

from src.combinatorics.family import SetFamily
from src.combinatorics.perm import PermSet, Permutation, format_permutation, parse_permutation
from src.errors import FileFormatError

logger = logging.getLogger(__name__)

_HEADER = re.compile(r"^n\s*=\s*(\d+)$")
_EMPTY_SET = {"{}", "-", "∅"}


def _content_lines(text: str) -> Iterable[Tuple[int, str]]:
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield number, line


def parse_perm_set(text: str, path: Optional[Path] = None) -> PermSet:
    """Read a permutation set, keeping the file order; degree comes from the first line."""
    members: List[Permutation] = []
    seen = set()
    degree: Optional[int] = None
    for number, line in _content_lines(text):
        try:
            perm = parse_permutation(line)
        except ValueError as exc:
            raise FileFormatError(str(exc), path, number) from exc
        if degree is None:
            degree = len(perm)
        elif len(perm) != degree:
            raise FileFormatError(
                f"degree mismatch: expected {degree}, got {len(perm)}", path, number
            )
        if perm in seen:
            raise FileFormatError(f"duplicate permutation {format_permutation(perm)}", path, number)
        seen.add(perm)
        members.append(perm)
    if degree is None:
        raise FileFormatError("no permutations found", path)
    return PermSet(degree, members)


def read_perm_set(path: Path) -> PermSet:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise FileFormatError(f"cannot read file: {exc.strerror}", path) from exc
    perms = parse_perm_set(text, path)
    logger.debug("Read %s permutations of degree %s from %s", len(perms), perms.degree, path)
    return perms


def format_perm_set(perms: PermSet) -> str:
    return "".join(format_permutation(p) + "\n" for p in perms)


def write_perm_set(perms: PermSet, path: Path) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(format_perm_set(perms), encoding="utf-8")


def parse_family(text: str, path: Optional[Path] = None) -> SetFamily:
    lines = list(_content_lines(text))
    if not lines:
        raise FileFormatError("missing 'n=<int>' header", path)
    number, header = lines[0]
    match = _HEADER.match(header)
    if not match:
        raise FileFormatError(f"expected 'n=<int>' header, got {header!r}", path, number)
    ground_n = int(match.group(1))

    sets: List[List[int]] = []
    for number, line in lines[1:]:
        if line in _EMPTY_SET:
            sets.append([])
            continue
        try:
            members = [int(token) for token in line.strip("{}").split(",") if token.strip()]
        except ValueError as exc:
            raise FileFormatError(f"non-integer element in {line!r}", path, number) from exc
        for element in members:
            if not 1 <= element <= ground_n:
                raise FileFormatError(f"element {element} is outside [{ground_n}]", path, number)
        if len(set(members)) != len(members):
            raise FileFormatError(f"repeated element in {line!r}", path, number)
        sets.append(members)
    return SetFamily(ground_n, sets)


def read_family(path: Path) -> SetFamily:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise FileFormatError(f"cannot read file: {exc.strerror}", path) from exc
    return parse_family(text, path)


def format_family(family: SetFamily) -> str:
    lines = [f"n={family.ground_n}"]
    for members in family.as_lists():
        lines.append(",".join(map(str, members)) if members else "{}")
    return "\n".join(lines) + "\n"


def write_family(family: SetFamily, path: Path) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(format_family(family), encoding="utf-8")

"""The on-disk group format.

    # optional comments
    degree: 6
    (1 2 3 4 5 6)
    (2 6)(3 5)

Line 1 (after comments/blanks) declares the degree; each following
nonempty line is one generator in cycle notation.  `#` starts a comment
anywhere.  Output is canonical: generators in input order.

Multi-group files (used by `verify` and `embed`) hold several sections
separated by lines containing only `---`.
"""

from __future__ import annotations

import re
from typing import List, Tuple

from permwit.errors import CycleParseError, GroupFileError
from permwit.group import PermGroup
from permwit.perm import Permutation, parse_cycles

_DEGREE_RE = re.compile(r"^degree:\s*(\d+)$")


def _content_lines(text: str) -> List[Tuple[int, str]]:
    out = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            out.append((lineno, line))
    return out


def _parse_section(lines: List[Tuple[int, str]]) -> PermGroup:
    if not lines:
        raise GroupFileError("empty group section", 0)
    lineno, first = lines[0]
    m = _DEGREE_RE.match(first)
    if not m:
        raise GroupFileError(
            f"expected 'degree: <n>' but found {first!r}", lineno)
    degree = int(m.group(1))
    if degree < 1:
        raise GroupFileError(f"degree must be positive, got {degree}", lineno)
    gens = []
    for lineno, line in lines[1:]:
        try:
            gens.append(parse_cycles(line, degree))
        except CycleParseError as exc:
            raise GroupFileError(
                f"bad generator {line!r}: {exc}", lineno) from exc
        except ValueError as exc:
            raise GroupFileError(str(exc), lineno) from exc
    return PermGroup(gens, degree=degree)


def parse_group_text(text: str) -> PermGroup:
    return _parse_section(_content_lines(text))


def parse_multi_group_text(text: str, count: int) -> List[PermGroup]:
    sections: List[List[Tuple[int, str]]] = [[]]
    for lineno, line in _content_lines(text):
        if line == "---":
            sections.append([])
        else:
            sections[-1].append((lineno, line))
    if len(sections) != count:
        raise GroupFileError(
            f"expected {count} groups separated by '---' lines, "
            f"found {len(sections)} sections", 0)
    return [_parse_section(s) for s in sections]


def parse_group_file(path: str) -> PermGroup:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_group_text(fh.read())


def parse_multi_group_file(path: str, count: int = 3) -> List[PermGroup]:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_multi_group_text(fh.read(), count)


def format_group(group: PermGroup) -> str:
    lines = [f"degree: {group.degree}"]
    lines.extend(g.cycle_string() for g in group.generators)
    return "\n".join(lines) + "\n"


def format_groups(groups: List[PermGroup]) -> str:
    return "---\n".join(format_group(g) for g in groups)

"""Text interchange format for codes.

    # comment
    alpha=3 beta=6
    110|112310
    011|011231

The header comes first; every other non-blank, non-comment line is one
generator in the vector literal syntax.
"""

from __future__ import annotations

import re
from pathlib import Path

from .algebra import MixedVector, Shape
from .code import DEFAULT_CAP, Z2Z4Code
from .errors import CodeFileError

_HEADER = re.compile(r"^\s*alpha\s*=\s*(\d+)\s+beta\s*=\s*(\d+)\s*$")


def _parse_row(line: str, lineno: int, shape: Shape) -> MixedVector:
    if line.count("|") != 1:
        raise CodeFileError(lineno, f"expected exactly one '|' in {line!r}")
    left, right = (part.strip() for part in line.split("|"))
    for ch in left:
        if ch not in "01":
            raise CodeFileError(lineno, f"binary symbol {ch!r} not in {{0,1}}")
    for ch in right:
        if ch not in "0123":
            raise CodeFileError(lineno, f"quaternary symbol {ch!r} not in {{0,1,2,3}}")
    if (len(left), len(right)) != (shape.alpha, shape.beta):
        raise CodeFileError(
            lineno, f"row has shape ({len(left)}, {len(right)}), header says ({shape.alpha}, {shape.beta})"
        )
    return MixedVector(shape, shape.pack([int(c) for c in left], [int(c) for c in right]))


def parse_code_file(text: str) -> tuple[int, int, list[MixedVector]]:
    shape = None
    rows: list[MixedVector] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if shape is None:
            m = _HEADER.match(line)
            if not m:
                raise CodeFileError(lineno, "expected header 'alpha=<A> beta=<B>'")
            try:
                shape = Shape(int(m.group(1)), int(m.group(2)))
            except ValueError as exc:
                raise CodeFileError(lineno, str(exc)) from None
            continue
        rows.append(_parse_row(line, lineno, shape))
    if shape is None:
        raise CodeFileError(1, "missing header 'alpha=<A> beta=<B>'")
    return shape.alpha, shape.beta, rows


def format_code(code: Z2Z4Code, comment: str = "") -> str:
    lines = [f"# {c}" for c in comment.splitlines()] if comment else []
    lines.append(f"alpha={code.alpha} beta={code.beta}")
    lines += [str(g) for g in code.generators]
    return "\n".join(lines) + "\n"


def read_code(path: str | Path, cap: int = DEFAULT_CAP) -> Z2Z4Code:
    alpha, beta, rows = parse_code_file(Path(path).read_text())
    return Z2Z4Code(alpha, beta, rows, cap=cap, name=Path(path).stem)


def write_code(code: Z2Z4Code, path: str | Path, comment: str = "") -> None:
    Path(path).write_text(format_code(code, comment))

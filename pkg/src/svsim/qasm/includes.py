"""Include resolution.

``include "qelib1.inc"`` splices the bundled standard library (no
filesystem access, byte-stable across installs). Any other path resolves
relative to the including file's directory; nested includes are followed
and cycles rejected.
"""
from __future__ import annotations

import importlib.resources
from pathlib import Path

from ..errors import IncludeCycle, IncludeNotFound
from . import ast
from .parser import parse_source

STDLIB_NAME = "qelib1.inc"


def stdlib_source() -> str:
    return (importlib.resources.files(__package__) / STDLIB_NAME).read_text()


def resolve_includes(program: ast.Program, base_path: str | Path = ".") -> ast.Program:
    """Return a program with every include statement replaced by the items
    of the included file."""
    items = _splice(program, Path(base_path), active=set(), done={"stdlib": False})
    return ast.Program(version=program.version, items=tuple(items))


def _splice(program: ast.Program, base: Path, active: set[str],
            done: dict[str, bool]) -> list[ast.Item]:
    out: list[ast.Item] = []
    for item in program.items:
        if not isinstance(item, ast.Include):
            out.append(item)
            continue
        if item.path == STDLIB_NAME:
            if done["stdlib"]:
                continue  # idempotent; the library defines each gate once
            done["stdlib"] = True
            sub = parse_source(stdlib_source(), expect_header=False)
            out.extend(sub.items)
            continue
        target = (base / item.path).resolve()
        key = str(target)
        if key in active:
            raise IncludeCycle(f"include cycle through {item.path!r}",
                               line=item.line, col=item.col)
        try:
            text = target.read_text()
        except OSError:
            raise IncludeNotFound(f"cannot read include {item.path!r}",
                                  line=item.line, col=item.col) from None
        sub = parse_source(text, expect_header=False)
        active.add(key)
        out.extend(_splice(sub, target.parent, active, done))
        active.discard(key)
    return out

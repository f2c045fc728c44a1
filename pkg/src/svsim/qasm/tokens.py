"""OpenQASM 2.0 lexer.

Produces a flat token stream with 1-based line/column positions. Comments
(// to end of line) and whitespace are skipped. Identifiers must start
with a lowercase letter; the uppercase words OPENQASM, U and CX are
keywords, as is pi and every statement-introducing word.
"""
from __future__ import annotations

from dataclasses import dataclass

from ..errors import LexError

KEYWORDS = frozenset({
    "OPENQASM", "include", "qreg", "creg", "gate", "opaque",
    "barrier", "if", "measure", "reset", "pi", "U", "CX",
})

# Multi-character symbols first so '->' wins over '-'.
SYMBOLS = ("->", "==", ";", ",", "(", ")", "[", "]", "{", "}",
           "+", "-", "*", "/", "^")


@dataclass(frozen=True)
class Token:
    kind: str   # keyword | identifier | integer | real | symbol | string
    text: str
    line: int
    col: int

    def __repr__(self) -> str:
        return f"{self.kind}({self.text!r}@{self.line}:{self.col})"


def tokenize(source: str) -> list[Token]:
    tokens: list[Token] = []
    line = 1
    col = 1
    i = 0
    n = len(source)
    while i < n:
        c = source[i]
        if c == "\n":
            line += 1
            col = 1
            i += 1
            continue
        if c in " \t\r":
            i += 1
            col += 1
            continue
        if source.startswith("//", i):
            while i < n and source[i] != "\n":
                i += 1
            continue
        if c == '"':
            j = source.find('"', i + 1)
            if j == -1 or "\n" in source[i + 1:j]:
                raise LexError("unterminated string", line=line, col=col)
            tokens.append(Token("string", source[i + 1:j], line, col))
            col += j + 1 - i
            i = j + 1
            continue
        if c.isdigit() or (c == "." and i + 1 < n and source[i + 1].isdigit()):
            j = i
            seen_dot = False
            seen_exp = False
            while j < n:
                d = source[j]
                if d.isdigit():
                    j += 1
                elif d == "." and not seen_dot and not seen_exp:
                    seen_dot = True
                    j += 1
                elif d in "eE" and not seen_exp and j > i:
                    if j + 1 < n and (source[j + 1].isdigit()
                                      or (source[j + 1] in "+-"
                                          and j + 2 < n and source[j + 2].isdigit())):
                        seen_exp = True
                        j += 2 if source[j + 1] in "+-" else 1
                    else:
                        break
                else:
                    break
            text = source[i:j]
            kind = "real" if (seen_dot or seen_exp) else "integer"
            tokens.append(Token(kind, text, line, col))
            col += j - i
            i = j
            continue
        if c.isalpha() or c == "_":
            j = i
            while j < n and (source[j].isalnum() or source[j] == "_"):
                j += 1
            text = source[i:j]
            if text in KEYWORDS:
                tokens.append(Token("keyword", text, line, col))
            elif text[0].islower():
                tokens.append(Token("identifier", text, line, col))
            else:
                raise LexError(
                    f"invalid identifier {text!r}: identifiers start with a "
                    "lowercase letter", line=line, col=col)
            col += j - i
            i = j
            continue
        sym = next((s for s in SYMBOLS if source.startswith(s, i)), None)
        if sym is None:
            raise LexError(f"unexpected character {c!r}", line=line, col=col)
        tokens.append(Token("symbol", sym, line, col))
        col += len(sym)
        i += len(sym)
    return tokens

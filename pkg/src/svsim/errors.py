"""Exception hierarchy for the emulator.

Every error raised by the public API derives from EmulatorError. Errors
produced while running a full program carry a ``phase`` tag (set by
``vm.run_source`` and the CLI) naming the pipeline stage that failed, and
frontend errors carry 1-based source positions.
"""
from __future__ import annotations


class EmulatorError(Exception):
    """Base class for all emulator errors."""

    def __init__(self, message: str, *, line: int | None = None, col: int | None = None):
        super().__init__(message)
        self.message = message
        self.line = line
        self.col = col
        self.phase: str | None = None

    def __str__(self) -> str:
        parts = []
        if self.phase:
            parts.append(f"[{self.phase}]")
        if self.line is not None:
            pos = f"line {self.line}"
            if self.col is not None:
                pos += f", col {self.col}"
            parts.append(pos + ":")
        parts.append(self.message)
        return " ".join(parts)


# --- kernel ---

class MemoryLimitExceeded(EmulatorError):
    pass


class InvalidQubitCount(EmulatorError):
    pass


class QubitOutOfRange(EmulatorError):
    pass


class DuplicateQubit(EmulatorError):
    pass


class IndexOutOfRange(EmulatorError):
    pass


class DegenerateProbability(EmulatorError):
    """A measurement branch of essentially zero probability was sampled."""


class NotUnitary(EmulatorError):
    pass


# --- frontend ---

class LexError(EmulatorError):
    pass


class ParseError(EmulatorError):
    def __init__(self, message: str, *, line=None, col=None, expected=None, found=None):
        super().__init__(message, line=line, col=col)
        self.expected = expected
        self.found = found


class SemanticError(EmulatorError):
    pass


class IncludeNotFound(EmulatorError):
    pass


class IncludeCycle(EmulatorError):
    pass


class UnboundParameter(EmulatorError):
    pass


class NonFiniteResult(EmulatorError):
    pass


# --- vm ---

class UnknownGate(EmulatorError):
    pass


class ArityMismatch(EmulatorError):
    pass


class BroadcastLengthMismatch(EmulatorError):
    pass


class OpaqueCallUnsupported(EmulatorError):
    pass


class RegisterOverflow(EmulatorError):
    pass


class StateSizeMismatch(EmulatorError):
    pass


# --- bench ---

class ReportInvalid(EmulatorError):
    pass

from . import ast
from .expr import eval_param
from .includes import resolve_includes, stdlib_source
from .parser import parse, parse_source
from .tokens import Token, tokenize

__all__ = [
    "Token",
    "ast",
    "eval_param",
    "parse",
    "parse_source",
    "resolve_includes",
    "stdlib_source",
    "tokenize",
]

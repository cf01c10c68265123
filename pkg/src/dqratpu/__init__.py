"""Checking DQRAT proofs with the pure-universal dependency scheme, and friends."""

from .core import Formula, InputError, Prefix, make_clause
from .dqratcheck import CheckOptions, CheckState, Status, Verdict, check_script, new_session
from .textio import parse_dqdimacs, parse_dqrat, parse_resproof

__all__ = [
    "CheckOptions", "CheckState", "Formula", "InputError", "Prefix", "Status", "Verdict",
    "check_script", "make_clause", "new_session", "parse_dqdimacs", "parse_dqrat", "parse_resproof",
]
__version__ = "0.1.0"

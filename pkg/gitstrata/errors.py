"""
Module: errors
Description: Exception hierarchy shared by the engines, loaders and CLI

Author: pmac
Created: 2026-10-19
Modified: 2026-10-19

Dependencies:
- typing: 3.9+ - Type hints

Usage:
    from gitstrata.errors import InputError

    raise InputError("invalid rational '1/0'", field="weights.0.1")

Notes:
    - Library code raises, the CLI maps GitStrataError to exit code 2
    - InconsistencyError means an internal invariant failed, not bad input
"""

from typing import Optional


class GitStrataError(Exception):
    """Base class for all gitstrata errors"""

    pass


class InputError(GitStrataError):
    """Raised when caller-supplied data violates a precondition"""

    def __init__(self, message: str, field: Optional[str] = None):
        self.field = field
        self.message = message
        super().__init__(f"{field}: {message}" if field else message)


class HNAxiomError(InputError):
    """Raised when a Harder-Narasimhan type breaks one of its axioms"""

    def __init__(self, message: str, axiom: str):
        self.axiom = axiom
        super().__init__(f"{message} [{axiom}]")


class InconsistencyError(GitStrataError):
    """Raised when a computed result fails its own certificate"""

    pass


class BlowupError(GitStrataError):
    """Raised by the blow-up simulator"""

    pass


class AlreadyStableError(BlowupError):
    """Raised when stepping a state that already has constant stabilisers"""

    pass

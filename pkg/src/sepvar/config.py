"""Runtime toggles for expensive self-verification.

Cheap postcondition checks are always on.  The costly ones (re-multiplying
every linear solve, re-reducing every S-polynomial of a finished basis)
only run when self checks are enabled, which the test suite does globally.
"""

from __future__ import annotations

SELF_CHECK = False


def enable_self_checks(on: bool = True) -> None:
    global SELF_CHECK
    SELF_CHECK = bool(on)


def self_checks_enabled() -> bool:
    return SELF_CHECK

"""twisted-wick - exact C-twisted Wick algebras and their consistency checks."""

__version__ = "1.0.0"

from twisted_wick.checks import CheckReport, Verdict, run_all  # noqa: E402
from twisted_wick.exceptions import WickError  # noqa: E402
from twisted_wick.twist import (  # noqa: E402
    TwistSystem,
    builtin_preset,
    make_twist_system,
)

__all__ = [
    "CheckReport",
    "TwistSystem",
    "Verdict",
    "WickError",
    "builtin_preset",
    "make_twist_system",
    "run_all",
]

"""Search-kernel selection.

The compiled extension is preferred when it imported cleanly; the pure-Python
fallback is always available.  `ELECTIONGAME_KERNEL=python|fast` overrides the
default choice.
"""

from __future__ import annotations

import os

from electiongame import _kernel_py

try:
    from electiongame import _kernel as _kernel_fast
except ImportError:  # extension not built on this platform
    _kernel_fast = None

KERNEL_NAMES = ("fast", "python")


def available() -> tuple[str, ...]:
    return KERNEL_NAMES if _kernel_fast is not None else ("python",)


def default_name() -> str:
    env = os.environ.get("ELECTIONGAME_KERNEL")
    if env:
        return env
    return "fast" if _kernel_fast is not None else "python"


def get_kernel(name: str | None = None):
    """Return the kernel module exposing `search_subsets`."""
    name = name or default_name()
    if name == "python":
        return _kernel_py
    if name == "fast":
        if _kernel_fast is None:
            raise RuntimeError("compiled kernel requested but the extension is not built")
        return _kernel_fast
    raise ValueError(f"unknown kernel {name!r}; expected one of {KERNEL_NAMES}")

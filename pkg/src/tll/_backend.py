"""Kernel backend selection.

The compiled extension (tll._fastcore) and the pure-Python module
(tll._purekernels) expose the same kernel API.  The compiled one is preferred
when importable; TLL_BACKEND=pure|compiled|auto overrides.
"""

import os

_requested = os.environ.get("TLL_BACKEND", "auto").strip().lower() or "auto"

if _requested == "pure":
    from . import _purekernels as _impl
elif _requested in ("auto", "compiled"):
    try:
        from . import _fastcore as _impl  # type: ignore[attr-defined]
    except ImportError:
        if _requested == "compiled":
            raise ImportError(
                "TLL_BACKEND=compiled was requested but the tll._fastcore "
                "extension is not built; reinstall with a C toolchain or use "
                "TLL_BACKEND=pure"
            )
        from . import _purekernels as _impl
else:
    raise ImportError("unrecognized TLL_BACKEND=%r" % (_requested,))

BACKEND = _impl.BACKEND_NAME
airy_kernel = _impl.airy_kernel
airy_many = _impl.airy_many
e1_kernel = _impl.e1_kernel
solve_schedule = _impl.solve_schedule
compensated_sum = _impl.compensated_sum


def load_backend(name):
    """Return a specific kernel module ("pure" or "compiled") for tests and
    benchmarks; raises ImportError when the compiled extension is missing."""
    if name == "pure":
        from . import _purekernels

        return _purekernels
    if name == "compiled":
        from . import _fastcore  # type: ignore[attr-defined]

        return _fastcore
    raise ValueError("unknown backend %r" % (name,))

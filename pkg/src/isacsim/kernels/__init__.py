"""Hot-loop kernels with a compiled fast path and a numpy fallback.

The compiled extension (``isacsim.kernels._fast``, Cython) is preferred
when importable.  Set ``ISACSIM_KERNEL=py`` or ``=c`` to force a backend;
forcing ``c`` raises if the extension is unavailable.

Kernel surface:
  synthesize_ctf(alphas, roundtrips, sin_thetas, n_sub, n_ant, delta_f, d, f_c)
  successive_cancellation(power, zeta_cfar, sidelobe_amp_factor, floor,
                          min_rn, min_rk, max_peaks)
"""

import os

from isacsim.kernels import _pyref

_BACKEND_NAME = "py"
_impl = _pyref

_forced = os.environ.get("ISACSIM_KERNEL", "").lower()
if _forced not in ("", "py", "c"):
    raise ValueError(f"ISACSIM_KERNEL must be 'py' or 'c', got {_forced!r}")

if _forced != "py":
    try:
        from isacsim.kernels import _fast as _impl  # type: ignore

        _BACKEND_NAME = "c"
    except ImportError:
        if _forced == "c":
            raise
        _impl = _pyref


def backend() -> str:
    """Name of the active kernel backend ('c' or 'py')."""
    return _BACKEND_NAME


synthesize_ctf = _impl.synthesize_ctf
successive_cancellation = _impl.successive_cancellation

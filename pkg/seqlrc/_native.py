"""Loader for the optional pybind11 kernels built from python_bindings/bindings.cpp.

``kernels`` is the extension module, or None when it was not built or when
``SEQLRC_NO_KERNELS`` is set; callers then use the pure-Python paths.
"""
import logging
import os

logger = logging.getLogger(__name__)

WORD_BITS = 64
# Largest block length the native subset walk accepts (kMaxColumns in bindings.cpp).
MAX_WALK_COLUMNS = 40

kernels = None
if not os.environ.get("SEQLRC_NO_KERNELS"):
    try:
        from seqlrc import _kernels as kernels
    except ImportError:
        logger.debug("native kernels not available, using Python paths")


def fits_word(values):
    """True when every packed value fits one 64-bit word."""
    return all(0 <= v < (1 << WORD_BITS) for v in values)

"""Ising gauge theory coupled to fermionic matter at half filling."""

try:
    from ._z2flux import *  # noqa: F401,F403
    from ._z2flux import __doc__ as _doc
except ImportError:  # development layout: extension on sys.path
    from _z2flux import *  # noqa: F401,F403
    from _z2flux import __doc__ as _doc

__doc__ = _doc
__version__ = "0.1.0"

"""Emotion intensity scoring over word vector spaces.

The heavy lifting lives in the compiled `_emovec` extension; this package
re-exports its surface. When installed as a wheel the extension sits inside
the package; in a plain CMake build it lands next to the package on
PYTHONPATH, so fall back to a top-level import.
"""

try:
    from ._emovec import *  # noqa: F401,F403
    from ._emovec import __doc__ as _core_doc
except ImportError:
    from _emovec import *  # noqa: F401,F403
    from _emovec import __doc__ as _core_doc

__version__ = "0.1.0"
if _core_doc:
    __doc__ = _core_doc

"""Small-noise expansion of jump-driven dissipative evolution equations.

The heavy lifting lives in the compiled `_core` module; this package
re-exports its surface.
"""

try:
    from ._core import *  # noqa: F401,F403  (installed package layout)
    from ._core import __version__  # noqa: F401
except ImportError:  # in-tree builds put _core next to the build directory
    from _core import *  # noqa: F401,F403
    from _core import __version__  # noqa: F401

"""Numerical laboratory for the spectral maps of Hankel operators."""

try:
    from hankel_lab._hankel import *  # noqa: F401,F403  (installed layout)
    from hankel_lab._hankel import __version__  # noqa: F401
except ImportError:  # build-tree layout: _hankel sits on sys.path directly
    from _hankel import *  # noqa: F401,F403
    from _hankel import __version__  # noqa: F401

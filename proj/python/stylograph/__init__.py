"""Word-adjacency network stylometry toolkit."""

try:
    from ._stylograph import *  # noqa: F401,F403
    from ._stylograph import __doc__  # noqa: F401
except ImportError:
    # Build-tree layout: the extension sits on sys.path as a top-level module.
    from _stylograph import *  # noqa: F401,F403

__version__ = "0.1.0"

try:
    from ._dtgw import *  # noqa: F401,F403  (wheel layout: module inside the package)
except ImportError:  # pragma: no cover - build-tree layout
    from _dtgw import *  # noqa: F401,F403

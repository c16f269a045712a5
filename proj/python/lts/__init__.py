"""Local-time dynamical maps: spectra, block maps, Markovianity tools."""

try:
    from ._lts import *  # noqa: F401,F403
    from ._lts import version
except ImportError:  # development layout: module next to the package
    from _lts import *  # noqa: F401,F403
    from _lts import version

__version__ = version()

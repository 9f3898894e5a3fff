"""srfid: dyadic Green functions, Purcell rates, and superradiance fidelity.

Thin Python layer over the C++ core; everything lives in the compiled
extension module and is re-exported here.
"""

from ._srfid import *  # noqa: F401,F403
from ._srfid import __doc__ as _core_doc  # noqa: F401
from ._srfid import constants, specfun  # noqa: F401

__all__ = [name for name in dir() if not name.startswith("_")]

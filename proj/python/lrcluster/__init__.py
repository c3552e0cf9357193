"""Error-budgeted clustering and shared-basis SVD compression of matrix collections."""

from ._lrcluster import *  # noqa: F401,F403
from ._lrcluster import __doc__  # noqa: F401

__version__ = "0.1.0"

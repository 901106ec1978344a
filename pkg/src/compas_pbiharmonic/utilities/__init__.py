from __future__ import absolute_import
from __future__ import division
from __future__ import print_function

from ._utils import timer
from ._utils import log
from ._utils import warn

__all__ = [
    "timer",
    "log",
    "warn",
]

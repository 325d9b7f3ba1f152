"""Enumeration caps shared by the exhaustive searches.

``GCLAB_CAP`` may lower or raise the soft enumeration cap, but never above
the compiled hard cap.
"""

import os

from .errors import CapExceeded

MAX_GROUP_ORDER = 512
MAX_TORSOR_SIZE = 64
HARD_ENUMERATION_CAP = 1 << 24
DEFAULT_ENUMERATION_CAP = 1 << 20


def enumeration_cap():
    raw = os.environ.get("GCLAB_CAP")
    if raw is None:
        return DEFAULT_ENUMERATION_CAP
    try:
        value = int(raw)
    except ValueError:
        return DEFAULT_ENUMERATION_CAP
    return max(1, min(value, HARD_ENUMERATION_CAP))


def check_cap(count, what="search space"):
    cap = enumeration_cap()
    if count > cap:
        raise CapExceeded(f"{what} has {count} candidates, cap is {cap}",
                          witness=count)

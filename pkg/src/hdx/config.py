"""Search caps for the exhaustive enumerations.

Every exhaustive search takes an optional cap argument; `None` means "use the
default", which can be overridden globally through the HDX_CAP environment
variable. Exceeding a cap raises SearchSpaceTooLarge instead of silently
sampling.
"""

import os

DEFAULT_CANDIDATE_CAP = 1 << 24
DEFAULT_SKELETON_VERTEX_CAP = 22
DEFAULT_GROUP_CAP = 1000
DEFAULT_BUILDING_FACE_CAP = 400


def candidate_cap(cap=None):
    """Resolve an explicit cap, the HDX_CAP override, or the default."""
    if cap is not None:
        return int(cap)
    env = os.environ.get("HDX_CAP")
    if env is not None:
        return int(env)
    return DEFAULT_CANDIDATE_CAP

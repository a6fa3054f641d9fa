"""Loading of the packaged JSON run profiles."""

import json
from importlib import resources
from typing import Any

from homkk.constants.json_profile_config import Profile


def load_profile(profile: Profile | str) -> dict[str, Any]:
    """Read a JSON run profile shipped in :mod:`homkk.config`.

    Parameters
    ----------
    profile : Profile or str
        Profile name, e.g. ``"quick"``

    Returns
    -------
    dict
        Parsed profile with the ``corpus`` and ``performance`` sections

    """
    name = Profile(profile).value
    raw = resources.read_text("homkk.config", f"{name}.json")
    return json.loads(raw)

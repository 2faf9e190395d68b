"""Enumeration budgets.

Circuit enumeration walks the full 2^nullity cycle space, so campaigns
guard it with a nullity cap.  The cap (and the census cap used by the
campaign runner's "all" mode) can be overridden with the environment
variable RAINBOW_FORGE_BUDGET, either a bare integer (nullity cap) or
a comma list like "nullity=24,census=2000000".
"""

import os

DEFAULT_NULLITY_CAP = 22
DEFAULT_CENSUS_CAP = 2_000_000


class BudgetExceededError(RuntimeError):
    """An enumeration would exceed the configured budget."""


def _parse_env(value):
    caps = {"nullity": DEFAULT_NULLITY_CAP, "census": DEFAULT_CENSUS_CAP}
    value = value.strip()
    if not value:
        return caps
    if "=" not in value:
        caps["nullity"] = int(value)
        return caps
    for part in value.split(","):
        key, _, num = part.partition("=")
        key = key.strip()
        if key not in caps:
            raise ValueError(f"unknown budget key {key!r} in RAINBOW_FORGE_BUDGET")
        caps[key] = int(num)
    return caps


def nullity_cap():
    return _parse_env(os.environ.get("RAINBOW_FORGE_BUDGET", ""))["nullity"]


def census_cap():
    return _parse_env(os.environ.get("RAINBOW_FORGE_BUDGET", ""))["census"]


def check_nullity(nullity):
    cap = nullity_cap()
    if nullity > cap:
        raise BudgetExceededError(
            f"cycle-space enumeration needs 2^{nullity} steps, over the cap 2^{cap} "
            f"(raise RAINBOW_FORGE_BUDGET to override)"
        )

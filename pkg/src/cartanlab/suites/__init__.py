"""Verification suites and their registry.

Each suite consumes a validated configuration plus a seeded RNG and returns
a list of check records; `run_suite` assembles the deterministic report.
"""

from .runner import ConfigInvalid, SUITE_NAMES, default_config, run_suite

__all__ = ["ConfigInvalid", "SUITE_NAMES", "default_config", "run_suite"]

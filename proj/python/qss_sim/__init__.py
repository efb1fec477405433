"""Seedable simulator of multiparty quantum secret splitting.

Settings use the same keys as the config file and CLI (``protocol``,
``n_pairs``, ``agent_count``, ``adversary``, ``hop``, ...). Values may be
given as Python values; they are passed to the core as text.
"""

import json

from . import _core
from ._core import decode_bell_to_pauli, oracle, swap_rule

__version__ = _core.version

__all__ = ["run", "run_batch", "validate", "swap_rule", "decode_bell_to_pauli", "oracle", "setting_keys"]


def _text(value):
    if isinstance(value, bool):
        return "true" if value else "false"
    return str(value)


def _settings(kwargs):
    return {key: _text(value) for key, value in kwargs.items() if value is not None}


def setting_keys():
    return list(_core.setting_keys())


def validate(**settings):
    """Raises ValueError for an infeasible scenario; returns the message position count."""
    return _core.validate(_settings(settings))


def run(seed=0, transcript=False, **settings):
    """Runs one trial and returns its report as a dict."""
    return json.loads(_core.run_json(_settings(settings), seed, transcript))


def run_batch(**settings):
    """Runs a batch; returns (trial records, summary)."""
    lines = [json.loads(line) for line in _core.run_batch_jsonl(_settings(settings)).splitlines()]
    return lines[:-1], lines[-1]

"""Learn single-output Boolean functions from PLA care sets and compile them to AIGs."""

import json

from ._core import Aig, Error, detect_symmetric, generate, read_aag, symmetric_aig
from ._core import learn as _learn
from ._core import score as _score


def learn(train, valid, test=None, budget=5000, models="", seed=1):
    """Run the model portfolio on PLA texts. Returns (Aig, report dict)."""
    circuit, report = _learn(train, valid, test, budget, models, seed)
    return circuit, json.loads(report)


def score(reports):
    """Aggregate report dicts into a suite score dict."""
    return json.loads(_score([json.dumps(r) for r in reports]))


__all__ = ["Aig", "Error", "detect_symmetric", "generate", "learn", "read_aag", "score", "symmetric_aig"]

"""Conventional verbal labels for a Bayes factor of size k (display only)."""

from __future__ import annotations

from typing import Optional

# (lower bound inclusive, label), scanned from the top
_SCHEMES = {
    "jeffreys": [(100, "decisive"), (30, "very strong"), (10, "strong"),
                 (3, "substantial"), (1, "bare mention")],
    "royall": [(64, "quite strong indeed"), (32, "quite strong"), (8, "strong"), (4, "weak")],
    "fisher": [(1 / 2, "good"), (1 / 5, "fair"), (1 / 15, "poor"), (0, "open to grave suspicion")],
}

SCHEMES = tuple(_SCHEMES)


def evidence_label(k: float, scheme: str) -> Optional[str]:
    """Label for support level k, or None where the scheme does not classify k."""
    table = _SCHEMES[scheme]
    if scheme == "fisher" and k > 1:
        return None
    for bound, label in table:
        if k >= bound:
            return label
    return None

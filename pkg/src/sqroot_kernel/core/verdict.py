"""Semantic answers shared by every solving stage."""

from __future__ import annotations

from enum import Enum


class Verdict(str, Enum):
    YES = "YES"
    NO = "NO"
    TIMEOUT = "TIMEOUT"
    REDUCED = "REDUCED"
    KERNEL = "KERNEL"
    NOT_APPLICABLE = "NOT-APPLICABLE"


__all__ = ["Verdict"]

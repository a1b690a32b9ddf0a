"""Exact computation of singular controls and abnormal sets in Carnot groups."""

from __future__ import annotations

__version__ = "0.1.0"

"""Combinatorial invariants of Seifert fibered rational homology spheres."""

from __future__ import annotations

__version__ = "0.1.0"

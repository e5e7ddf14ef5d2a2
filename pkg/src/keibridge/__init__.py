"""Kei colorings of link, tangle and tri-plane diagrams, and the bridge-number
bounds they give for surface links."""

__version__ = "0.1.0"

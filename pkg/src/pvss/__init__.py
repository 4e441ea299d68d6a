"""Pimsner-Voiculescu spectral sequence toolkit for crossed products by Z^n."""

__version__ = "0.1.0"

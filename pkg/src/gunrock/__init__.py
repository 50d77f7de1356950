"""Gunrock-style open-domain conversational engine."""

__version__ = "0.1.0"

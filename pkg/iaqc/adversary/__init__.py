"""Eavesdropper strategies and angle estimation."""

"""Bounds, statistics, detection probability and sweeps."""

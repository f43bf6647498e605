"""Dwell-time and flee-time certificates for planar switched linear systems."""

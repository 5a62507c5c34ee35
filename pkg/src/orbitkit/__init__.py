"""Periodic-orbit statistics for S-integer maps and toral automorphisms."""

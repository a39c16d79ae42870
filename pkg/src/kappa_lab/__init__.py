"""Exact conjugacy statistics of symmetric and alternating groups."""

"""
Test utilities for semsearch testing.

Brute-force oracles, build helpers and memory tracking shared across
test modules.
"""

"""
Test fixtures for semsearch.

This module provides N-Triples graphs with known similarity scores, gold
relevance files and seeded random graphs.
"""

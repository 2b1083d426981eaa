"""
Unit tests for semsearch.

This module contains unit tests that validate individual components
in isolation.
"""

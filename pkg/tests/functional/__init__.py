"""Functional tests package for semsearch."""

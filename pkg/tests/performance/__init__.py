"""
Performance tests for semsearch.

Build time, memory growth and query latency on larger graphs.
"""

"""
Integration tests for semsearch.

End-to-end build and query workflows and reproducibility of the
persisted artifacts.
"""

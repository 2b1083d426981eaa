"""
Configuration files for semsearch
"""

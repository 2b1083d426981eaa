"""
Executable launchers for semsearch
"""

"""User interface module for semsearch

- interface: rich rendering of results, build summaries and reports
- interactive: line-oriented query loop
- server: local JSON query endpoint
"""

from .interactive import InteractiveSession
from .interface import SearchInterface, result_lines

__all__ = ["InteractiveSession", "SearchInterface", "result_lines"]

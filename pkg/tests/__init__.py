"""
semsearch - Test Suite

Test Categories:
- Unit Tests: parsing, text analysis, matching, similarity, summary,
  indexes, search, evaluation and the build manifest
- Functional Tests: command line, interactive loop and HTTP endpoint
- Integration Tests: dataset to ranked answers, build reproducibility
- Performance Tests: build time, memory and query latency on larger graphs
"""

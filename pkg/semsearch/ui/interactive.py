"""Interactive query loop: one query per input line until end of input."""

import sys
from typing import Optional, TextIO

from semsearch.core.exceptions import InvalidQueryError
from semsearch.core.logger import get_logger, log_user_input
from semsearch.search import SearchEngine

from .interface import SearchInterface

logger = get_logger("interactive")

PROMPT = "query> "


class InteractiveSession:
    """
    Reads queries from a text stream and renders each answer.

    Empty or keyword-free lines print a validation message and the loop
    continues; the session ends at end of input.
    """

    def __init__(
        self,
        engine: SearchEngine,
        ui: SearchInterface,
        k: Optional[int] = None,
        as_json: bool = False,
    ) -> None:
        self.engine = engine
        self.ui = ui
        self.k = k
        self.as_json = as_json
        self.queries_run = 0
        self.rejected = 0

    def _show_prompt(self, stream: TextIO) -> None:
        if not self.as_json and stream.isatty():
            self.ui.console.print(
                f"[bold {self.ui.theme['primary']}]{PROMPT}[/]", end=""
            )

    def handle(self, line: str) -> bool:
        """Answer one line; False when the line was rejected."""
        querystring = line.strip()
        log_user_input("query", querystring, context="repl")
        try:
            results = self.engine.search(querystring, self.k)
        except InvalidQueryError as e:
            self.rejected += 1
            self.ui.log("WARNING", f"{e.message}; try again")
            return False

        self.queries_run += 1
        if self.as_json:
            self.ui.write_json_lines(results)
        else:
            self.ui.show_results(results, querystring)
        return True

    def run(self, stream: Optional[TextIO] = None) -> int:
        stream = stream or sys.stdin
        self._show_prompt(stream)
        for line in stream:
            self.handle(line)
            self._show_prompt(stream)
        logger.info(
            f"Interactive session ended: {self.queries_run} queries, "
            f"{self.rejected} rejected"
        )
        return 0

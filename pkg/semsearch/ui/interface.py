"""
Console rendering for semsearch.

Human output goes through a rich Console; machine output (``--json``) is
written as plain JSON lines so it can be piped.
"""

import json
import sys
from pathlib import Path
from typing import TYPE_CHECKING, Any, Dict, Iterable, List, Optional, TextIO

from rich import box
from rich.align import Align
from rich.console import Console
from rich.panel import Panel
from rich.table import Table

from semsearch.core.utils import format_file_size, memory_usage_mb
from semsearch.search import ResultEntry
from semsearch.version import __version__

if TYPE_CHECKING:
    from semsearch.engines.builder import BuildResult
    from semsearch.evaluation import EvalReport


def result_lines(results: Iterable[ResultEntry]) -> List[str]:
    """One JSON object per result; shared by the CLI and the query endpoint."""
    return [json.dumps(entry.to_dict(), ensure_ascii=False) for entry in results]


class SearchInterface:
    """Renders results, build summaries and evaluation reports."""

    def __init__(self, file: Optional[TextIO] = None, color: bool = True) -> None:
        self._file = file
        self.console = Console(
            file=file, no_color=not color, highlight=False, soft_wrap=False
        )

        self.theme = {
            "primary": "cyan",
            "secondary": "blue",
            "success": "green",
            "warning": "yellow",
            "error": "red",
            "info": "blue",
            "accent": "magenta",
            "muted": "dim white",
        }

    @property
    def out(self) -> TextIO:
        return self._file or sys.stdout

    def log(self, level: str, message: str) -> None:
        symbols = {"INFO": "*", "SUCCESS": "+", "WARNING": "!", "ERROR": "X"}
        colors = {
            "INFO": self.theme["info"],
            "SUCCESS": self.theme["success"],
            "WARNING": self.theme["warning"],
            "ERROR": self.theme["error"],
        }
        symbol = symbols.get(level, "*")
        color = colors.get(level, "white")
        self.console.print(f"[{color}]{symbol}[/{color}] ", end="")
        self.console.print(message, markup=False)

    # Query results

    def write_json_lines(self, results: List[ResultEntry]) -> None:
        for line in result_lines(results):
            self.out.write(line + "\n")
        self.out.flush()

    def show_results(self, results: List[ResultEntry], querystring: str = "") -> None:
        if not results:
            self.log("INFO", f"No results for {querystring!r}")
            return

        table = Table(
            title=f"[bold]Results for {querystring!r}[/bold]" if querystring else None,
            show_header=True,
            header_style=f"bold {self.theme['primary']}",
            box=box.ROUNDED,
            border_style=self.theme["primary"],
        )
        table.add_column("#", justify="right", style=self.theme["muted"])
        table.add_column("Entity", style=self.theme["secondary"], overflow="fold")
        table.add_column("Confidence", justify="right", style="bold")
        table.add_column("Provenance")
        table.add_column("Matched", style=self.theme["muted"], overflow="fold")

        for rank, entry in enumerate(results, start=1):
            if entry.is_direct:
                success = self.theme["success"]
                provenance = f"[{success}]direct[/{success}]"
                matched = ", ".join(f"{kw} ({kind})" for kw, kind in entry.matched)
            else:
                accent = self.theme["accent"]
                provenance = f"[{accent}]augmented[/{accent}]"
                matched = (
                    f"similar to {entry.via} ({entry.sim:.3f})" if entry.sim else ""
                )
            table.add_row(
                str(rank),
                entry.iri,
                f"{entry.confidence * 100:.1f}%",
                provenance,
                matched,
            )
        self.console.print(table)

    # Build

    def show_build_summary(self, result: "BuildResult") -> None:
        counts = result.manifest.counts
        config = result.manifest.config

        table = Table(
            title="[bold]Build Summary[/bold]",
            show_header=True,
            header_style=f"bold {self.theme['primary']}",
            box=box.ROUNDED,
            border_style=self.theme["primary"],
        )
        table.add_column("Item", style=self.theme["secondary"])
        table.add_column("Value", justify="right")
        size = result.manifest.dataset.get("size_bytes")
        if size is not None:
            table.add_row("dataset size", format_file_size(size))
        for key in sorted(counts):
            table.add_row(key.replace("_", " "), str(counts[key]))
        stats = result.artifacts.summary.stats()
        table.add_row("largest class", str(stats["largest_class"]))
        table.add_row("singleton classes", str(stats["singletons"]))
        self.console.print(table)

        if result.timings:
            timing_table = Table(
                title="[bold]Stage Timings[/bold]",
                box=box.SIMPLE,
                header_style=f"bold {self.theme['primary']}",
            )
            timing_table.add_column("Stage", style=self.theme["secondary"])
            timing_table.add_column("Seconds", justify="right")
            for stage, seconds in result.timings.items():
                timing_table.add_row(stage, f"{seconds:.3f}")
            self.console.print(timing_table)

        status_color = (
            self.theme["warning"] if result.skipped_lines else self.theme["success"]
        )
        text = (
            f"[bold {status_color}][SUCCESS] Build complete[/bold {status_color}]\n\n"
            f"[{self.theme['info']}]Artifacts:[/{self.theme['info']}] "
            f"[bold]{self._display_path(result.artifact_dir)}[/bold]\n"
            f"beta={config.get('beta')} tau={config.get('tau')} "
            f"weight_mode={config.get('weight_mode')}\n"
            f"manifest {result.manifest.content_hash[:12]} | "
            f"memory {memory_usage_mb():.1f} MB"
        )
        if result.skipped_lines:
            text += (
                f"\n[{self.theme['warning']}]Skipped lines: "
                f"{result.skipped_lines}[/{self.theme['warning']}]"
            )
        self.console.print(
            Panel(
                Align.center(text),
                title=f"[bold]semsearch {__version__}[/bold]",
                border_style=status_color,
                box=box.ROUNDED,
                padding=(1, 2),
            )
        )

    # Evaluation

    def show_eval_report(self, report: "EvalReport") -> None:
        table = Table(
            title=f"[bold]Evaluation at k={report.k}[/bold]",
            show_header=True,
            header_style=f"bold {self.theme['primary']}",
            box=box.ROUNDED,
            border_style=self.theme["primary"],
        )
        table.add_column("Query", style=self.theme["secondary"], overflow="fold")
        for name in ("TP", "FP", "FN"):
            table.add_column(name, justify="right")
        for name in ("Precision", "Recall", "F"):
            table.add_column(name, justify="right", style="bold")

        for row in report.per_query:
            table.add_row(
                row.query,
                str(row.tp),
                str(row.fp),
                str(row.fn),
                f"{row.precision:.3f}",
                f"{row.recall:.3f}",
                f"{row.f_measure:.3f}",
            )
        table.add_section()
        table.add_row(
            "macro",
            "",
            "",
            "",
            f"{report.macro_precision:.3f}",
            f"{report.macro_recall:.3f}",
            f"{report.macro_f:.3f}",
        )
        table.add_row(
            "micro",
            "",
            "",
            "",
            f"{report.micro_precision:.3f}",
            f"{report.micro_recall:.3f}",
            f"{report.micro_f:.3f}",
        )
        self.console.print(table)
        self.console.print(
            f"F of macro P/R: [bold]{report.f_of_macro:.3f}[/bold]"
        )
        for warning in report.warnings:
            self.log("WARNING", warning)

    def write_json(self, payload: Dict[str, Any]) -> None:
        self.out.write(json.dumps(payload, indent=2, ensure_ascii=False) + "\n")
        self.out.flush()

    @staticmethod
    def _display_path(path: Path) -> str:
        text = str(path)
        if len(text) <= 60:
            return text
        parts = Path(text).parts
        if len(parts) > 4:
            return str(Path(*parts[:2]) / "..." / Path(*parts[-2:]))
        return text[:30] + "..." + text[-25:]

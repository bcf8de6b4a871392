"""
CLI Formatter for rauzykit

Console output for the command-line runner, rendered with rich.
"""

import math
from typing import Any, Dict, List, Optional

from rich.console import Console
from rich.panel import Panel
from rich.table import Table

from cli.experiment import RunRecord, TOOLKIT_VERSION


class CLIFormatter:
    """
    Formatter for CLI output with colors and formatting.

    Provides methods for printing messages, tables and run summaries.
    """

    def __init__(self, use_colors: bool = True, console: Optional[Console] = None):
        """
        Initialize formatter.

        Args:
            use_colors: Whether to use colors (rich drops them for non-terminal output anyway)
            console: Console to print to; a new one by default
        """
        self.console = console or Console(no_color=not use_colors, highlight=False)

    def print_banner(self):
        """Print welcome banner"""
        self.console.print(Panel.fit(
            "[bold cyan]rauzykit[/bold cyan]\nRauzy induction, twisted cocycles and unique AIETs",
            subtitle=f"version {TOOLKIT_VERSION}",
        ))

    def print_success(self, message: str):
        self.console.print(f"[bright_green]✅ {message}[/bright_green]")

    def print_error(self, message: str):
        self.console.print(f"[bright_red]❌ {message}[/bright_red]")

    def print_warning(self, message: str):
        self.console.print(f"[bright_yellow]⚠️  {message}[/bright_yellow]")

    def print_info(self, message: str):
        self.console.print(f"[bright_blue]ℹ️  {message}[/bright_blue]")

    def print_table(self, headers: List[str], rows: List[List[Any]], title: Optional[str] = None):
        """Print a formatted table"""
        table = Table(title=title, header_style="bold")
        for header in headers:
            table.add_column(header)
        for row in rows:
            table.add_row(*(self._cell(cell) for cell in row))
        self.console.print(table)

    def print_box(self, title: str, content: str, style: str = "bright_cyan"):
        """Print content in a box"""
        self.console.print(Panel(content, title=title, border_style=style))

    def print_record(self, record: RunRecord):
        """Summary of one run: status, timing and the top-level scalar results."""
        if record.succeeded:
            self.print_success(f"{record.command} finished in {record.wall_time:.2f}s")
        else:
            error = record.error or {}
            self.print_error(f"{record.command} failed [{error.get('code')}]: {error.get('message')}")
        scalars = self._scalar_items(record.payload)
        if scalars:
            self.print_table(["field", "value"], scalars, title=f"run {record.run_id}")

    def print_batch(self, runs: List[Dict[str, Any]]):
        rows = [[r.get('index'), r.get('command'), r.get('status'), r.get('exit_code'),
                 f"{r.get('wall_time', 0.0):.2f}s"] for r in runs]
        self.print_table(["#", "command", "status", "exit", "time"], rows, title="batch")

    @staticmethod
    def _scalar_items(payload: Dict[str, Any]) -> List[List[Any]]:
        items = []
        for key, value in payload.items():
            if isinstance(value, (int, float, str, bool)) or value is None:
                items.append([key, value])
            elif isinstance(value, list) and len(value) <= 8 and all(
                    isinstance(v, (int, float, str)) for v in value):
                items.append([key, ", ".join(CLIFormatter._cell(v) for v in value)])
        return items

    @staticmethod
    def _cell(value: Any) -> str:
        if isinstance(value, float):
            return "inf" if math.isinf(value) else f"{value:.6g}"
        return str(value)


__all__ = ['CLIFormatter']

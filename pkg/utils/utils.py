from datetime import datetime
from pathlib import Path

from rich.console import Console
from rich.panel import Panel
from rich.table import Table

console = Console()


def log_step(title: str, symbol: str = "🟢"):
    console.print(f"\n[b]{symbol} {title}[/b]")


def log_error(message: str, err=None):
    console.print(f"\n[red]❌ {message}[/red]")
    if err:
        console.print(f"[dim]{err}[/dim]")


def _short(value, limit: int = 150) -> str:
    if isinstance(value, list) and value and all(isinstance(v, (list, tuple)) for v in value):
        # coordinate lists
        value = " ".join(f"({v[0]},{v[1]})" for v in value)
    text = str(value)
    return text if len(text) <= limit else text[:limit] + "..."


def log_json_block(title: str, block: dict):
    """Key/value panel; nested dicts are indented one level."""
    lines = []
    for key, value in block.items():
        if isinstance(value, dict):
            lines.append(f"[bold cyan]{key}[/bold cyan]:")
            lines.extend(f"  [cyan]{k}[/cyan]: {_short(v)}" for k, v in value.items())
        else:
            lines.append(f"[bold cyan]{key}[/bold cyan]: {_short(value)}")
    console.print(Panel("\n".join(lines), title=f"📌 {title}", title_align="left", border_style="cyan", expand=False))


def render_table(report, title: str = "Benchmark"):
    """One row per (grid, strategy) cell of a BenchReport."""
    table = Table(show_header=True, header_style="bold magenta", box=None)
    table.add_column("Grid", style="cyan", no_wrap=True)
    table.add_column("Strategy")
    table.add_column("Games", justify="right")
    table.add_column("Won", justify="right", style="bold")
    table.add_column("Steps", justify="right")
    table.add_column("Time (s)", justify="right")
    table.add_column("Solve (s)", justify="right", style="dim")
    table.add_column("Timeouts", justify="right")

    for cell in report.cells:
        won = f"{cell.win_rate:.0%}"
        if cell.win_rate < 1:
            won = f"[yellow]{won}[/yellow]"
        table.add_row(
            cell.grid,
            cell.strategy,
            str(cell.games),
            won,
            f"{cell.mean_total_steps:.1f}",
            f"{cell.mean_total_time_ms / 1000:.2f}",
            f"{cell.mean_solve_ms / 1000:.2f}",
            f"{cell.timeout_rate:.1%}",
        )
    console.print(Panel(table, title=title, border_style="blue"))


def get_run_folder(base_dir: str = "runs") -> Path:
    """runs/YYYY/MM/DD/HHMMSS, created on demand."""
    now = datetime.now()
    folder = Path(base_dir) / now.strftime("%Y/%m/%d/%H%M%S")
    folder.mkdir(parents=True, exist_ok=True)
    return folder

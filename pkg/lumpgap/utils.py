# lumpgap/utils.py
import hashlib
import math
from decimal import ROUND_HALF_EVEN, Decimal
from pathlib import Path

from rich.console import Console
from rich.panel import Panel

from .config import REPORT_DECIMALS
from .errors import DomainError

console = Console()

LOGO = r"""
 _
| |_   _ _ __ ___  _ __   __ _  __ _ _ __
| | | | | '_ ` _ \| '_ \ / _` |/ _` | '_ \
| | |_| | | | | | | |_) | (_| | (_| | |_) |
|_|\__,_|_| |_| |_| .__/ \__, |\__,_| .__/
                  |_|    |___/      |_|
"""

_QUANTUM = Decimal(1).scaleb(-REPORT_DECIMALS)


def print_logo(target: Console = console):
    """Print the banner once at startup (interactive terminals only)."""
    target.print(Panel.fit(LOGO, title="[bold cyan]LUMPGAP[/bold cyan]", border_style="cyan"))


def calculate_file_hash(file_path: Path) -> str:
    """SHA-256 of the model file as read from disk, echoed in certificates."""
    digest = hashlib.sha256()
    with open(file_path, "rb") as fh:
        for block in iter(lambda: fh.read(65536), b""):
            digest.update(block)
    return digest.hexdigest()


def fmt(value: float) -> str:
    """Fixed 10-decimal rendering, round-half-even on the exact binary value, no '-0'."""
    if not math.isfinite(value):
        raise DomainError(f"cannot report a non-finite value: {value!r}")
    text = format(Decimal(value).quantize(_QUANTUM, rounding=ROUND_HALF_EVEN), "f")
    if text.startswith("-") and Decimal(text) == 0:
        text = text[1:]
    return text


def rounded(value: float) -> float:
    """The float whose shortest repr is the 10-decimal rendering; used in JSON output."""
    return float(fmt(value))

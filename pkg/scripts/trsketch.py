#!/usr/bin/env python3
"""
CLI entry point for randomized tensor ring decomposition.

Usage:
    python scripts/trsketch.py gen --exp 1 --I 60 --R 5 --seed 7 --out data/t.dten
    python scripts/trsketch.py fit --input data/t.dten --solver tr-ksrft-als --rank 5 --m 500
    python scripts/trsketch.py sweep --config config/sweep_exp1.cfg
    python scripts/trsketch.py verify
    python scripts/trsketch.py info data/t.trcr
"""

import sys
from pathlib import Path

# Add project root to path
project_root = Path(__file__).parent.parent
sys.path.insert(0, str(project_root))

from src.harness.cli import cli
from src.utils import get_logger


def main() -> None:
    logger = get_logger(__name__)
    try:
        cli.main(prog_name="trsketch")
    except Exception as e:
        logger.error("Command failed", error=str(e), exc_info=True)
        sys.exit(1)


if __name__ == "__main__":
    main()

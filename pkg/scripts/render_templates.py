#!/usr/bin/env python3
"""Regenerate the shipped template set (templates/) from the glyph paths."""

import argparse
from pathlib import Path

from airwrite.recognition import default_templates, save_templates


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument(
        "--out",
        default=Path(__file__).resolve().parents[1] / "templates",
        help="output directory (default: repo templates/)",
    )
    args = parser.parse_args()
    out = save_templates(default_templates(), args.out)
    print(f"wrote {len(list(Path(out).glob('*.pgm')))} templates to {out}")


if __name__ == "__main__":
    main()

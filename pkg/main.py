#!/usr/bin/env python3
"""Frozen-binary entry point for `ctqw`.

PyInstaller runs this file directly, so it imports the package by absolute
name instead of relying on src/main.py's relative imports.
"""

import os
import sys

base_path = getattr(sys, "_MEIPASS", os.path.dirname(os.path.abspath(__file__)))
sys.path.insert(0, base_path)

from src.main import main  # noqa: E402

if __name__ == "__main__":
    main()

#!/usr/bin/env python3
"""
Console Status Output
Progress and verdict lines on stderr, so stdout stays reserved for results
"""

import sys

_QUIET = False


def set_quiet(flag):
    """Silence (or re-enable) every status line"""
    global _QUIET
    _QUIET = bool(flag)


def _emit(line):
    if not _QUIET:
        print(line, file=sys.stderr)


def ok(message):
    _emit(f"✓ {message}")


def fail(message):
    _emit(f"✗ {message}")


def warn(message):
    _emit(f"⚠️  {message}")


def banner(title):
    _emit("=" * 70)
    _emit(title)
    _emit("=" * 70)

#!/usr/bin/env python3
"""
FFL Run Configuration
Defaults, key = value config files and the FFL_THREADS worker width
"""

import os
from dataclasses import dataclass, fields
from fractions import Fraction

from expression_parser import parse_modulus, parse_rational
from ffl_errors import UsageError

# Values used when neither a flag nor the config file sets them
DEFAULTS = {
    "p": None,
    "l": 1,
    "modulus": None,
    "phi": "[1]",
    "n": 1,
    "s": 1,
    "prec": 12,
    "deg_max": 6,
    "k_max": 4,
    "i_max": 4,
    "slack": 2,
    "eps": "-10",
    "budget": 10 ** 6,
    "f": None,
    "deform": "plain",
    "x": "theta",
    "y": "-1",
    "m": 1,
    "out": "json",
    "output": None,
    "quiet": False,
}

INT_KEYS = {"p", "l", "n", "s", "prec", "deg_max", "k_max", "i_max", "slack", "budget", "m"}
BOOL_KEYS = {"quiet"}
OUT_FORMATS = ("json", "text")

THREADS_ENV = "FFL_THREADS"


def normalize_key(key):
    return key.strip().lstrip("-").replace("-", "_")


def _coerce(key, value):
    if value is None or key not in INT_KEYS | BOOL_KEYS or not isinstance(value, str):
        return value
    if key in BOOL_KEYS:
        lowered = value.strip().lower()
        if lowered in ("1", "true", "yes", "on"):
            return True
        if lowered in ("0", "false", "no", "off"):
            return False
        raise UsageError(f"--{key.replace('_', '-')}: expected true/false, got {value!r}")
    try:
        return int(value.strip())
    except ValueError as e:
        raise UsageError(f"--{key.replace('_', '-')}: expected an integer, got {value!r}") from e


def load_config_file(path):
    """
    Read a file of key = value lines mirroring the long flag names

    Args:
        path: file path; '#' starts a comment, blank lines are skipped

    Returns:
        dict of normalized keys to typed values
    """
    try:
        with open(path, encoding="utf-8") as handle:
            lines = handle.readlines()
    except OSError as e:
        raise UsageError(f"--config: cannot read {path}: {e.strerror}") from e
    values = {}
    for number, raw in enumerate(lines, start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise UsageError(f"--config: {path}:{number}: expected key = value")
        key, value = line.split("=", 1)
        key = normalize_key(key)
        if key not in DEFAULTS:
            raise UsageError(f"--config: {path}:{number}: unknown key {key!r}")
        values[key] = _coerce(key, value.strip())
    return values


def thread_count():
    """Worker width from FFL_THREADS (default 1)"""
    raw = os.getenv(THREADS_ENV)
    if raw is None or raw.strip() == "":
        return 1
    try:
        threads = int(raw)
    except ValueError as e:
        raise UsageError(f"{THREADS_ENV} must be a positive integer, got {raw!r}") from e
    if threads < 1:
        raise UsageError(f"{THREADS_ENV} must be a positive integer, got {raw!r}")
    return threads


@dataclass
class RunConfig:
    """Validated parameters for one CLI command"""

    command: str
    check: str = None
    p: int = None
    l: int = 1
    modulus: tuple = None
    phi: str = "[1]"
    n: int = 1
    s: int = 1
    prec: int = 12
    deg_max: int = 6
    k_max: int = 4
    i_max: int = 4
    slack: int = 2
    eps: Fraction = Fraction(-10)
    budget: int = 10 ** 6
    f: str = None
    deform: str = "plain"
    x: str = "theta"
    y: str = "-1"
    m: int = 1
    out: str = "json"
    output: str = None
    quiet: bool = False
    threads: int = 1

    @classmethod
    def resolve(cls, command, flags, check=None):
        """
        Merge defaults, the optional --config file and explicit flags

        Args:
            command: CLI command name
            flags: dict of flag values, None where the flag was not given;
                   flags["config"] names the config file
            check: check name for the check command

        Returns:
            RunConfig
        """
        values = dict(DEFAULTS)
        config_path = flags.get("config")
        if config_path:
            values.update(load_config_file(config_path))
        for key, value in flags.items():
            key = normalize_key(key)
            if key in DEFAULTS and value is not None:
                values[key] = _coerce(key, value)
        known = {f.name for f in fields(cls)}
        config = cls(command=command, check=check, **{k: v for k, v in values.items() if k in known})
        if isinstance(config.modulus, str):
            config.modulus = parse_modulus(config.modulus)
        if isinstance(config.eps, (str, int)):
            config.eps = parse_rational(str(config.eps))
        config.threads = thread_count()
        config.validate()
        return config

    def validate(self):
        if self.p is None:
            raise UsageError("--p is required")
        if self.out not in OUT_FORMATS:
            raise UsageError(f"--out must be one of {', '.join(OUT_FORMATS)}, got {self.out!r}")
        for key in ("prec", "deg_max", "k_max", "i_max", "slack", "budget"):
            if getattr(self, key) < 0:
                raise UsageError(f"--{key.replace('_', '-')} must be >= 0, got {getattr(self, key)}")
        if self.m < 1:
            raise UsageError(f"--m must be >= 1, got {self.m}")
        return self

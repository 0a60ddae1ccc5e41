from fractions import Fraction

import pytest

from ffl_config import RunConfig, load_config_file, normalize_key, thread_count
from ffl_errors import ParseError, UsageError


def test_normalize_key():
    assert normalize_key("--deg-max") == "deg_max"
    assert normalize_key(" k-max ") == "k_max"


def test_load_config_file(tmp_path):
    path = tmp_path / "run.conf"
    path.write_text("p = 5   # characteristic\n\nphi = [1, 1]\nquiet = no\n", encoding="utf-8")
    assert load_config_file(path) == {"p": 5, "phi": "[1, 1]", "quiet": False}


@pytest.mark.parametrize("body", ["colour = red\n", "p 3\n", "p = three\n", "quiet = maybe\n"])
def test_bad_config_lines(tmp_path, body):
    path = tmp_path / "bad.conf"
    path.write_text(body, encoding="utf-8")
    with pytest.raises(UsageError):
        load_config_file(path)


def test_missing_config_file(tmp_path):
    with pytest.raises(UsageError):
        load_config_file(tmp_path / "absent.conf")


def test_thread_count(monkeypatch):
    monkeypatch.delenv("FFL_THREADS", raising=False)
    assert thread_count() == 1
    monkeypatch.setenv("FFL_THREADS", "4")
    assert thread_count() == 4
    for raw in ("0", "-2", "many"):
        monkeypatch.setenv("FFL_THREADS", raw)
        with pytest.raises(UsageError):
            thread_count()


def test_resolve_applies_defaults_and_parses(monkeypatch):
    monkeypatch.delenv("FFL_THREADS", raising=False)
    config = RunConfig.resolve("goss", {"p": 3, "eps": "-7/2", "modulus": None})
    assert config.eps == Fraction(-7, 2)
    assert (config.n, config.prec, config.threads) == (1, 12, 1)
    config = RunConfig.resolve("mu", {"p": 2, "l": 2, "modulus": "1,1,1"})
    assert config.modulus == (1, 1, 1)


@pytest.mark.parametrize(
    "flags",
    [{}, {"p": 3, "out": "xml"}, {"p": 3, "slack": -1}, {"p": 3, "m": 0}],
)
def test_resolve_validates(flags):
    with pytest.raises(UsageError):
        RunConfig.resolve("mu", flags)


def test_resolve_rejects_bad_eps():
    with pytest.raises(ParseError):
        RunConfig.resolve("goss", {"p": 3, "eps": "1/0"})

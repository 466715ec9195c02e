import pytest

from rotstar import ConfigError
from rotstar.config import load_config, parse_config


def test_parse_types_and_comments():
    cfg = parse_config("gamma = 1.5  # polytrope\n\ngrid.nr = 64\nrotation.kind = gaussian\n")
    assert cfg.get("gamma") == 1.5
    assert cfg.get("grid.nr") == 64
    assert cfg.get("rotation.kind") == "gaussian"
    assert cfg.get("grid.nz", 7) == 7
    assert "grid.nz" not in cfg


@pytest.mark.parametrize(
    "text, fragment",
    [
        ("gamma 1.5", "expected 'key = value'"),
        ("gama = 1.5", "gama"),
        ("gamma = 1.5\ngamma = 1.6", "duplicate"),
        ("grid.nr = 1.5", "grid.nr"),
        ("maclaurin.e_min = 0.5", "maclaurin.e_min"),
        ("scf.relax = 0", "scf.relax"),
        ("rotation.kind = tabulated", "rotation.table_path"),
        ("mass = 1\ncentral_value = 1", "mass"),
        ("continuation.step0 = 0.01\ncontinuation.step_min = 0.1", "continuation.step_min"),
        ("maclaurin.e_min = 5\nmaclaurin.e_max = 2", "maclaurin.e_max"),
    ],
)
def test_errors_name_the_key(text, fragment):
    with pytest.raises(ConfigError, match=fragment):
        parse_config(text)


def test_missing_file(tmp_path):
    with pytest.raises(ConfigError):
        load_config(tmp_path / "nope.cfg")


def test_unknown_key_lookup():
    with pytest.raises(KeyError):
        parse_config("").get("nonsense")

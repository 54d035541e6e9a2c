"""
Tests for configuration loading.
"""

from convertible_codes.config import Config, config_from_dict, load_config


def test_defaults():
    """Test the built-in defaults."""
    config = Config()
    assert config.verify.trials == 100
    assert config.verify.seed == 0
    assert config.gf.max_order == 1 << 16
    assert config.limits.vector_decode_max_length == 12
    assert config.construct.x1 is None


def test_partial_section():
    """Test that missing keys keep their defaults and unknown keys are ignored."""
    config = config_from_dict({"verify": {"trials": 5, "colour": "blue"}, "unknown": {}})
    assert config.verify.trials == 5
    assert config.verify.seed == 0
    assert config.limits.mds_max_subsets == 10**6


def test_load_from_file(tmp_path):
    """Test reading the first existing file on the search path."""
    first = tmp_path / "first.toml"
    second = tmp_path / "second.toml"
    second.write_text("[verify]\ntrials = 7\n")
    first.write_text("[gf]\nmax_order = 256\n[construct]\nx1 = [2, 3, 4]\n")
    config = load_config([tmp_path / "missing.toml", first, second])
    assert config.gf.max_order == 256
    assert config.construct.x1 == [2, 3, 4]
    assert config.verify.trials == 100


def test_malformed_file_falls_back(tmp_path, capsys):
    """Test that an unreadable file warns and yields defaults."""
    bad = tmp_path / "bad.toml"
    bad.write_text("[verify\ntrials = ")
    config = load_config([bad])
    assert config == Config()
    assert "Failed to load config" in capsys.readouterr().err


def test_no_files():
    """Test that an empty search path gives defaults."""
    assert load_config([]) == Config()

from recmon.config import Config, get_config, reset_config


def write(tmp_path, text):
    path = tmp_path / "config.properties"
    path.write_text(text)
    return path


def test_reads_properties_file(tmp_path):
    config = Config(write(tmp_path, "# comment\nRECMON_TAU_CAP=50\nRECMON_ALPHABET='x, y'\nnot a pair\n"))
    assert config.tau_cap == 50
    assert config.get_list("RECMON_ALPHABET") == ["x", "y"]
    assert config.alphabet == ["x", "y"]


def test_environment_fills_missing_keys(tmp_path, monkeypatch):
    monkeypatch.setenv("RECMON_WORKERS", "3")
    config = Config(write(tmp_path, "RECMON_SEED=7\n"))
    assert config.workers == 3
    assert config.seed == 7


def test_defaults_without_file(tmp_path):
    config = Config(tmp_path / "missing.properties")
    assert config.tau_cap == 10000
    assert config.alphabet == ["a", "b"]
    assert config.log_level == "WARNING"
    assert config.random_instances == 10000
    assert config.consistency_bound == 6
    assert config.tight_extension_bound == 4
    assert config.tight_horizon == 6
    assert config.workers == 1


def test_bad_values_fall_back(tmp_path):
    config = Config(write(tmp_path, "RECMON_TAU_CAP=lots\nRECMON_WORKERS=0\n"))
    assert config.tau_cap == 10000
    assert config.workers == 1


def test_global_instance_is_cached_until_reset():
    first = get_config()
    assert get_config() is first
    reset_config()
    assert get_config() is not first


def test_log_level_is_upper_cased(tmp_path):
    config = Config(write(tmp_path, "RECMON_LOG_LEVEL=debug\n"))
    assert config.log_level == "DEBUG"

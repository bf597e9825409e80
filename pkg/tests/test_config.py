import json
import logging
from fractions import Fraction

import numpy as np
import pandas as pd
import pytest

from config_manager import Environment, config_manager, get_config, get_section
from domain.exceptions import ParameterDomainError
from domain.objects import NumericOverrides, RunConfig
from utils.artifacts import read_csv_config, to_json, write_csv, write_json
from utils.cache import CacheManager, MemoCache, memoized
from utils.logger import StructuredFormatter
from utils.performance_monitor import PerformanceMonitor, performance_timer


def test_testing_environment_is_selected():
    assert config_manager.get_environment() is Environment.TESTING
    assert config_manager.is_testing()
    assert get_section("logging").level == "WARNING"


def test_sections_come_from_yaml():
    assert get_section("monte_carlo").batch_size == 5000
    assert get_config("grid.L") == 10.0
    assert get_config("grid.missing", 7) == 7


def test_runtime_update_is_validated():
    original = get_section("grid").L
    try:
        config_manager.set("grid.L", 12.0)
        assert get_section("grid").L == 12.0
        with pytest.raises(ParameterDomainError):
            config_manager.set("grid.L", -1.0)
        assert get_section("grid").L == 12.0
    finally:
        config_manager.set("grid.L", original)


def test_unknown_key_rejected():
    with pytest.raises(ParameterDomainError):
        config_manager.set("nonexistent.key", 1)


def test_to_dict_lists_every_section():
    sections = config_manager.to_dict()
    assert sections["environment"] == "testing"
    assert {"grid", "contour", "kernel", "monte_carlo", "finite", "logging",
            "performance"} <= set(sections)


def test_overrides_enforce_ranges():
    with pytest.raises(ValueError):
        NumericOverrides(u_nodes=33)
    with pytest.raises(ValueError):
        NumericOverrides(radius=0.5)
    assert NumericOverrides(grid_L=12.0).grid_L == 12.0


def test_run_config_rejects_unknown_command():
    with pytest.raises(ValueError):
        RunConfig(command="plot")


def test_memo_cache_evicts_least_recently_used():
    cache = MemoCache(max_entries=2)
    cache.set("a", 1)
    cache.set("b", 2)
    cache.get("a")
    cache.set("c", 3)
    assert cache.get("b") is None
    assert cache.get("a") == 1
    assert cache.size() == 2


def test_memoized_function_runs_once_per_argument():
    calls = []

    @memoized("test-square")
    def square(x):
        calls.append(x)
        return x * x

    assert square(Fraction(3, 2)) == Fraction(9, 4)
    assert square(Fraction(3, 2)) == Fraction(9, 4)
    if CacheManager().enabled:
        assert calls == [Fraction(3, 2)]


def test_cache_keys_hash_arrays_by_content():
    manager = CacheManager()
    a = manager.generate_key("p", np.arange(4.0))
    b = manager.generate_key("p", np.arange(4.0))
    c = manager.generate_key("p", np.arange(5.0))
    assert a == b != c


def test_performance_timer_records_failures():
    monitor = PerformanceMonitor()

    @performance_timer("test.failing")
    def failing():
        raise ValueError("boom")

    with pytest.raises(ValueError):
        failing()
    stats = monitor.get_stats("test.failing")["test.failing"]
    assert stats.success_rate < 1.0
    assert "test.failing" in monitor.summary()


def test_structured_formatter_emits_json():
    record = logging.LogRecord("lpp", logging.INFO, __file__, 1, "hello", None, None)
    record.extra_fields = {"mc_seed": 7}
    entry = json.loads(StructuredFormatter().format(record))
    assert entry["message"] == "hello"
    assert entry["mc_seed"] == 7


def test_json_artifact_embeds_config(tmp_path):
    path = write_json(tmp_path / "out" / "result.json", {"value": Fraction(11, 64), "z": 1 + 2j},
                      {"seed": 1})
    document = json.loads(path.read_text())
    assert document["config"] == {"seed": 1}
    assert document["value"] == "11/64"
    assert document["z"] == [1.0, 2.0]


def test_csv_artifact_round_trips_config(tmp_path):
    frame = pd.DataFrame({"xi1": [0.0, 1.0], "value": [0.5, 0.7]})
    path = write_csv(tmp_path / "grid.csv", frame, {"numeric": {"grid": {"L": 10.0}}})
    assert read_csv_config(path) == {"numeric": {"grid": {"L": 10.0}}}
    back = pd.read_csv(path, comment="#")
    assert back["value"].tolist() == [0.5, 0.7]


def test_to_json_handles_numpy_scalars():
    assert json.loads(to_json({"n": np.int64(3), "x": np.float64(0.5)})) == {"n": 3, "x": 0.5}

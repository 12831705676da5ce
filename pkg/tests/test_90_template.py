import dataclasses
import pathlib
import subprocess

import pytest
import toml

from star_kernel import bench
from star_kernel.bench import BenchConfig


def test_template_configfile() -> None:
    res = subprocess.run(
        ["star-kernel", "bench", "--template-configfile"],
        capture_output=True,
        text=True,
    )
    assert res.returncode == 0
    loaded_toml = toml.loads(res.stdout)
    expected_args = {field.name for field in dataclasses.fields(BenchConfig)}
    assert set(loaded_toml) == expected_args


def test_config_from_toml(tmp_path: pathlib.Path) -> None:
    configfile = tmp_path / "bench.toml"
    with configfile.open("w") as f:
        toml.dump({"corpus": str(tmp_path), "k_max": 3, "foo": "bar"}, f)

    config = BenchConfig.from_toml(configfile, jobs=2, r=None)
    assert config.corpus == str(tmp_path)
    assert (config.k_min, config.k_max, config.r, config.jobs) == (2, 3, 3, 2)
    assert config.paths == []
    assert bench.run_bench(config) == []

    with pytest.raises(ValueError, match="no corpus"):
        BenchConfig.from_toml(None)
    with pytest.raises(ValueError):
        BenchConfig.from_toml(configfile, k_min=5)

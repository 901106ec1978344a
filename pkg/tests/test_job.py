import json
import os

import pytest

import compas_pbiharmonic
from compas_pbiharmonic.errors import NotAdmissibleError
from compas_pbiharmonic.errors import SchemaError
from compas_pbiharmonic.job import RunConfig
from compas_pbiharmonic.job import csv_rows_from_oracle
from compas_pbiharmonic.job import dump_csv
from compas_pbiharmonic.job import dump_document
from compas_pbiharmonic.job import load_document
from compas_pbiharmonic.model import CosineWeight
from compas_pbiharmonic.model import GridFunction


def test_shipped_configurations(configs):
    for name in ("constant.json", "cosine.json", "linear_shift.json", "sweep_cosine.json", "mu1_constant.json"):
        config = RunConfig.from_file(os.path.join(configs, name))
        assert (config.p is None) != (config.p_grid is None)


def test_config_defaults():
    config = RunConfig.from_json('{"p": 3.0, "weight": {"kind": "cosine", "f": 1}}')
    assert config.weight == CosineWeight(1)
    assert config.kmax == 5
    assert config.branches == ("+", "-")
    assert config.grid_n == compas_pbiharmonic.GRID_N
    assert config.seed == compas_pbiharmonic.SEED
    assert config.shooting.step_count == compas_pbiharmonic.STEP_COUNT
    problem = config.problem()
    assert problem.p == 3.0
    assert config.problem(p=2.5).p == 2.5


def test_config_round_trip():
    config = RunConfig.from_json('{"p_grid": [1.5, 2.0], "kmax": 2, "weight": {"kind": "linear_shift", "a": 0.4}, "branches": ["-"], "shooting": {"step_count": 512}}')
    other = RunConfig.__from_data__(config.__data__)
    assert other.__data__ == config.__data__
    assert other.shooting.step_count == 512
    assert other.branches == ("-",)


@pytest.mark.parametrize(
    "document",
    [
        '{"weight": {"kind": "cosine", "f": 1}}',
        '{"p": 2.0, "p_grid": [2.0], "weight": {"kind": "cosine", "f": 1}}',
        '{"p": 1.0, "weight": {"kind": "cosine", "f": 1}}',
        '{"p": 2.0}',
        '{"p": 2.0, "weight": {"kind": "cosine", "f": 1}, "colour": "red"}',
        '{"p": 2.0, "weight": {"kind": "cosine", "f": 1}, "kmax": 0}',
        '{"p": 2.0, "weight": {"kind": "cosine", "f": 1}, "kmax": 2.5}',
        '{"p": 2.0, "weight": {"kind": "cosine", "f": 1}, "branches": ["x"]}',
        '{"p": 2.0, "weight": {"kind": "cosine", "f": 1}, "shooting": {"tolerance": 1e-8}}',
        '{"p": 2.0, "weight": {"kind": "cosine", "f": 1}, "shooting": {"step_count": 10}}',
        '{"p_grid": [], "weight": {"kind": "cosine", "f": 1}}',
        "[1, 2, 3]",
        "{not json",
    ],
)
def test_config_schema_errors(document):
    with pytest.raises(SchemaError):
        RunConfig.from_json(document)


def test_config_weight_not_admissible():
    with pytest.raises(NotAdmissibleError):
        RunConfig.from_json('{"p": 2.0, "weight": {"kind": "constant", "c": -1.0}}')


def test_config_file_not_found(tmp_path):
    with pytest.raises(SchemaError):
        RunConfig.from_file(str(tmp_path / "missing.json"))


def test_dump_document(tmp_path):
    path = str(tmp_path / "out" / "document.json")
    text = dump_document({"b": 1, "a": [1.5, 2.5]}, path)
    assert text.endswith("\n")
    assert load_document(path) == {"b": 1, "a": [1.5, 2.5]}
    assert json.loads(text) == {"b": 1, "a": [1.5, 2.5]}


def test_dump_csv():
    text = dump_csv([("+", 1, 2.0, 97.40909103400244), ("-", 2, 2.0, -0.1)])
    assert text.splitlines() == ["sign,k,p,lambda", "+,1,2.0,97.40909103400244", "-,2,2.0,-0.1"]


def test_csv_rows_from_oracle():
    u = GridFunction([1.0, 1.0, 1.0])
    rows = csv_rows_from_oracle([(1.0, u), (2.0, u), (3.0, u)], [(-4.0, u)], kmax=2)
    assert rows == [("+", 1, 2.0, 1.0), ("+", 2, 2.0, 2.0), ("-", 1, 2.0, -4.0)]

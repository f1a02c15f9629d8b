import json

import pytest

from codegree_lab.cache import ENV_VAR, TableCache, resolve_cache_dir, table_for_spec
from codegree_lab.dsl import parse_spec


@pytest.mark.parametrize("text", ["Sym(3)", "Alt(5)", "Wr(Cyc(2),Cyc(2))"])
def test_roundtrip_exact(tmp_path, text):
    cache = TableCache(tmp_path)
    T = table_for_spec(parse_spec(text), cache=cache)
    loaded = cache.load(text)
    assert loaded == T
    assert loaded.to_json() == T.to_json()
    assert loaded.classes.reps == T.classes.reps


def test_hit_returns_stored(tmp_path):
    cache = TableCache(tmp_path)
    T = table_for_spec(parse_spec("Sym(4)"), cache=cache)
    assert table_for_spec(parse_spec("Sym(4)"), cache=cache) == T
    assert len(list(tmp_path.glob("*.json"))) == 1


def test_corruption_is_a_miss(tmp_path, caplog):
    cache = TableCache(tmp_path)
    T = table_for_spec(parse_spec("Alt(5)"), cache=cache)
    path = cache.path("Alt(5)")
    entry = json.loads(path.read_text())
    entry["payload"]["degrees"][1] = 7
    path.write_text(json.dumps(entry))
    with caplog.at_level("WARNING"):
        assert cache.load("Alt(5)") is None
    assert "checksum" in caplog.text
    again = table_for_spec(parse_spec("Alt(5)"), cache=cache)
    assert again == T
    assert cache.load("Alt(5)") == T


def test_garbage_file_is_a_miss(tmp_path):
    cache = TableCache(tmp_path)
    cache.path("Sym(3)").write_text("{not json")
    assert cache.load("Sym(3)") is None


def test_stale_version_is_ignored(tmp_path):
    cache = TableCache(tmp_path)
    T = table_for_spec(parse_spec("Sym(3)"), cache=cache)
    path = cache.path("Sym(3)")
    entry = json.loads(path.read_text())
    entry["key"] = "Sym(3)#v0"
    path.write_text(json.dumps(entry))
    assert cache.load("Sym(3)") is None
    assert table_for_spec(parse_spec("Sym(3)"), cache=cache) == T


def test_env_overrides_cli(tmp_path, monkeypatch):
    monkeypatch.setenv(ENV_VAR, str(tmp_path / "env"))
    assert resolve_cache_dir(tmp_path / "cli") == tmp_path / "env"
    monkeypatch.delenv(ENV_VAR)
    assert resolve_cache_dir(tmp_path / "cli") == tmp_path / "cli"
    assert resolve_cache_dir(None) is None

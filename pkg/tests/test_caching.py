import os

from untangle.caching import cache, cache_dir
from untangle.generators import make_star


def counting(**kwargs):
    calls = []

    @cache(**kwargs)
    def lengths(matching, budget):
        calls.append(budget)
        return matching.n * budget

    return lengths, calls


def test_memory_cache_keys_on_fingerprint(tmp_path):
    lengths, calls = counting(ttl=-1, min_memory_time=0, directory=str(tmp_path))
    assert lengths(make_star(3), 2) == 6
    assert lengths(make_star(3), 2) == 6
    assert calls == [2]
    lengths(make_star(3), 5)
    lengths(make_star(4), 2)
    assert calls == [2, 5, 2]
    assert lengths.__name__ == "lengths"


def test_disk_cache(tmp_path):
    lengths, calls = counting(
        ttl=-1, min_memory_time=0, min_disk_time=0, directory=str(tmp_path)
    )
    lengths(make_star(2), 1)
    assert len(os.listdir(tmp_path)) == 1
    again, again_calls = counting(
        ttl=-1, min_memory_time=0, min_disk_time=0, directory=str(tmp_path)
    )
    assert again(make_star(2), 1) == 2
    assert again_calls == []
    assert calls == [1]


def test_expired_entries_are_recomputed(tmp_path):
    lengths, calls = counting(ttl=0, min_memory_time=0, directory=str(tmp_path))
    lengths(make_star(2), 1)
    lengths(make_star(2), 1)
    assert calls == [1, 1]


def test_excluded_and_unwanted(tmp_path):
    lengths, calls = counting(
        ttl=-1,
        min_memory_time=0,
        directory=str(tmp_path),
        exclude={"args": [1]},
        should_cache=lambda result, *args, **kwargs: result > 2,
    )
    lengths(make_star(3), 1)
    lengths(make_star(3), 2)
    assert calls == [1]
    lengths(make_star(1), 1)
    lengths(make_star(1), 1)
    assert calls == [1, 1, 1]


def test_cache_dir_from_environment(monkeypatch, tmp_path):
    monkeypatch.setenv("UNTANGLE_CACHE_DIR", str(tmp_path))
    assert cache_dir() == str(tmp_path)

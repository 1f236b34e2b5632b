from database import get_session
from models.run import get_now
from services.registry import RunRegistry
from services.storage import atomic_write, digest


def test_record_and_list(tmp_path, registry_url):
    first = atomic_write(tmp_path / "a.json", "{}\n")
    second = atomic_write(tmp_path / "b.json", "[]\n")

    with get_session(registry_url) as db:
        registry = RunRegistry(db)
        registry.record(command="distribution", model="tm(2,2)", path=first, seed=1, n=3)
        registry.record(command="distribution", model="tm(2,2)", path=second, seed=1, n=4)
        runs = registry.list_runs()

    assert [r.n for r in runs] == [4, 3]
    assert runs[0].digest == digest(second)
    assert runs[0].created_at is not None


def test_timestamps_are_timezone_aware():
    assert get_now().tzinfo is not None


def test_find_by_digest(tmp_path, registry_url):
    path = atomic_write(tmp_path / "a.csv", "n\n2\n")
    with get_session(registry_url) as db:
        registry = RunRegistry(db)
        registry.record(command="compare", model="tm(2,2)~eca", path=path, seed=0)
        found = registry.find_by_digest(digest(path))
        missing = registry.find_by_digest("0" * 64)

    assert [r.path for r in found] == [str(path)]
    assert missing == []


def test_list_limit(tmp_path, registry_url):
    path = atomic_write(tmp_path / "a.csv", "x\n")
    with get_session(registry_url) as db:
        registry = RunRegistry(db)
        for seed in range(5):
            registry.record(command="compare", model="eca", path=path, seed=seed)
        assert [r.seed for r in registry.list_runs(limit=2)] == [4, 3]

import threading

from concswap.core.cache import BasisCache
from concswap.core.measurement import bell_basis, generalized_bell_basis, SQRT_HALF


def test_get_or_build_builds_once():
    cache = BasisCache()
    built = []

    def factory():
        built.append(object())
        return built[-1]

    first = cache.get_or_build('key', factory)
    assert cache.get_or_build('key', factory) is first
    assert len(built) == 1


def test_clear():
    cache = BasisCache()
    first = cache.get_or_build('key', object)
    cache.clear()
    assert cache.get_or_build('key', object) is not first


def test_get_or_build_keeps_first():
    cache = BasisCache()
    built = []
    results = []

    def factory():
        value = object()
        built.append(value)
        return value

    def worker():
        results.append(cache.get_or_build('key', factory))

    threads = [threading.Thread(target=worker) for _ in range(8)]
    for t in threads:
        t.start()
    for t in threads:
        t.join()
    assert len({id(r) for r in results}) == 1
    assert any(results[0] is value for value in built)


def test_fixed_bases_shared(empty_cache):
    assert bell_basis() is bell_basis()


def test_generalized_bases_not_cached(empty_cache):
    coefficients = (0.6, 0.8, SQRT_HALF, SQRT_HALF)
    first = generalized_bell_basis(*coefficients)
    second = generalized_bell_basis(*coefficients)
    assert first is not second
    assert first.labels == second.labels

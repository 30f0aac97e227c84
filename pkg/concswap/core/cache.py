import threading


class BasisCache:
    """Fixed measurement bases (Bell, GHZ, chi) keyed by family and dimension."""

    def __init__(self):
        self.__bases = dict()
        self.lock = threading.Lock()

    def get_or_build(self, key, factory):
        basis = self.__bases.get(key)
        if basis is not None:
            return basis
        built = factory()
        with self.lock:
            # another thread may have won the race; keep the first one
            return self.__bases.setdefault(key, built)

    def clear(self):
        with self.lock:
            self.__bases.clear()


CACHE = BasisCache()

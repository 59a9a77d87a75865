# core/instrument.py

import threading


class OpCounter:
    """
    Thread-safe tally of abstract unit operations.

    Algorithms accept an optional counter and add the work they perform
    (butterflies, coefficient updates, symbols drawn, cells scanned) so the
    bench can fit growth rates without relying on wall time.
    """

    def __init__(self):
        self._lock = threading.Lock()
        self.total = 0

    def add(self, amount: int = 1):
        with self._lock:
            self.total += int(amount)

    def reset(self) -> int:
        with self._lock:
            value, self.total = self.total, 0
        return value


def tally(counter, amount):
    if counter is not None:
        counter.add(amount)

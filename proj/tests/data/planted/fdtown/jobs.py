"""A procedure wearing a class costume."""

from mint import Coin, Stamp, Token


class CreateLedgerJob:
    def __init__(self):
        self._stage = "new"
        self._items = []

    def gather(self, lots):
        for lot in lots:
            if lot == "coin":
                self._items.append(Coin())
            elif lot == "stamp":
                self._items.append(Stamp())
            else:
                self._items.append(Token())
        self._stage = "gathered"
        return len(self._items)

    def emit(self, sink):
        for item in self._items:
            sink.append(type(item).__name__)
        self._stage = "emitted"
        return sink

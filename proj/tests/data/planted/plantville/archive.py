"""Long-lived records and the shelves they live on."""


class Ledger:
    def __init__(self, owner):
        self.owner = owner
        self.entries = []

    def get_owner(self):
        return self.owner

    def set_owner(self, owner):
        self.owner = owner

    def append(self, entry):
        self.entries.append(entry)
        return len(self.entries)

    def balance(self):
        total = 0
        for entry in self.entries:
            total += entry
        return total

    def prune(self, cutoff, keep_last):
        kept = [e for e in self.entries if e >= cutoff]
        if keep_last and self.entries:
            kept.append(self.entries[-1])
        self.entries = kept
        return len(kept)


class Lattice:
    def __init__(self):
        self.rows = 4
        self.cols = 4

    def cell_total(self):
        return self.rows * self.cols

    def widen(self, extra):
        self.cols += extra
        return self.cols


class Trellis(Lattice):
    def __init__(self):
        Lattice.__init__(self)
        self.vines = 0

    def climb(self, count):
        self.vines += count
        if self.vines > self.cell_total():
            self.vines = self.cell_total()
        return self.vines


class Keystone:
    def __init__(self, span):
        self.span = span
        self.load = 0

    def bear(self, weight):
        self.load += weight
        return self.load

    def stable(self):
        return self.load < self.span * 3


class Cobble(Keystone):
    def __init__(self):
        Keystone.__init__(self, 2)
        self.worn = False

    def wear(self):
        self.worn = True


def shelve(ledgers, owner):
    shelved = []
    for ledger in ledgers:
        if ledger.owner == owner:
            shelved.append(ledger)
    return shelved


def audit_totals(ledgers):
    totals = {}
    for ledger in ledgers:
        totals[ledger.owner] = ledger.balance()
    return totals

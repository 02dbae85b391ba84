"""One class inheriting every shelf in the yard."""

from archive import Lattice, Ledger
from fabric import Velvet
from inventory import Parcel, Satchel
from signals import Beacon


class Omnibus(Lattice, Ledger, Parcel, Satchel, Beacon, Velvet):
    def __init__(self):
        Lattice.__init__(self)
        self.motto = "everything"
        self.cargo = []

    def absorb(self, thing):
        self.cargo.append(thing)
        return len(self.cargo)

    def recite(self):
        slogan = self.motto.upper()
        return slogan

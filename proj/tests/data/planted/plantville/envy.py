"""Quills annotate parcels and beacons far more than their own state."""

from inventory import Parcel
from signals import Beacon


class Quill:
    def __init__(self):
        self.width = 2
        self.height = 9
        self.depth = 1
        self.label = "goose"

    def siphon(self):
        parcel = Parcel()
        beacon = Beacon()
        header = [self.width, self.height, self.depth, self.label]
        body = [parcel.mass, parcel.volume, parcel.origin]
        trail = [beacon.signal, beacon.range_m, beacon.tint]
        return header + body + trail

    def nib_angle(self, tilt):
        angle = tilt + self.width
        return angle % 90


def sharpen(quills, grit):
    done = 0
    for quill in quills:
        if quill.nib_angle(grit) > 10:
            done += 1
    return done

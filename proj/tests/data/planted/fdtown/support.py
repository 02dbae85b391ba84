"""Ordinary town fixtures."""


class Pouch:
    def __init__(self, owner):
        self.owner = owner
        self.items = []
        self._lint = 1

    def stow(self, item, force):
        if force or len(self.items) < 8:
            self.items.append(item)
            return True
        return False

    def shake(self):
        dropped = list(self.items)
        self.items = []
        return dropped


class Crate:
    def __init__(self, size):
        self.size = size
        self.sealed = False

    def seal(self):
        self.sealed = True
        return self.sealed

    def pry(self, lever_len, grunt):
        effort = lever_len * grunt
        if effort > self.size:
            self.sealed = False
        return not self.sealed


class Basket:
    def __init__(self):
        self.weave_count = 12
        self._reeds = 2

    def tighten(self, turns):
        self.weave_count += turns
        return self.weave_count


class Awl:
    def __init__(self):
        self.point = "sharp"

    def dull(self):
        self.point = "dull"
        return self.point


class Vane:
    def __init__(self):
        self.heading = 0

    def swing(self, wind, gustiness):
        delta = wind * gustiness
        self.heading = (self.heading + delta) % 360
        return self.heading


class Mast:
    def __init__(self, height):
        self.height = height
        self._stays = 1

    def rig(self, lines):
        rigged = min(lines, 6)
        self._stays = rigged
        return rigged


class Keel:
    def __init__(self):
        self.depth = 2
        self.barnacles = 0

    def scrape(self):
        removed = self.barnacles
        self.barnacles = 0
        return removed

    def foul(self, growth, seasons):
        self.barnacles += growth * seasons
        return self.barnacles


class Prow:
    def __init__(self):
        self.figure = "gull"

    def recarve(self, figure):
        old = self.figure
        self.figure = figure
        return old


class Helm:
    def __init__(self):
        self.turns = 0
        self._play = 1

    def steer(self, degrees):
        self.turns += 1
        return degrees % 360


class Bollard:
    def __init__(self):
        self.lines_held = 0

    def belay(self, line_count, doubled):
        held = line_count * (2 if doubled else 1)
        self.lines_held += held
        return self.lines_held


class Gangway:
    def __init__(self):
        self.lowered = False
        self._treads = 9

    def lower(self):
        self.lowered = True
        return self.lowered

    def raise_up(self, haste):
        self.lowered = False
        return haste > 2

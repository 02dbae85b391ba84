"""Cloth stock: weaves, dyes and trims."""


class Velvet:
    def __init__(self):
        self.pile = 3
        self.sheen = 7

    def brush(self, strokes):
        self.sheen += strokes
        if self.sheen > 10:
            self.sheen = 10
        return self.sheen

    def crush(self):
        self.pile = 1
        self.sheen = 2

    def get_sheen(self):
        return self.sheen


class Willow:
    def __init__(self):
        self.bend = 0.4
        self.grain = "fine"

    def soak(self, hours):
        self.bend += hours * 0.05
        return self.bend

    def get_grain(self):
        return self.grain


class Gossamer(Velvet):
    def __init__(self):
        Velvet.__init__(self)
        self.weight = 1

    def float_test(self, breeze):
        return breeze * self.weight < 4


class Burlap(Willow):
    def __init__(self):
        Willow.__init__(self)
        self.rough = True

    def sand(self, passes):
        if passes > 3:
            self.rough = False
        return self.rough


class Pigment:
    def __init__(self, hue):
        self.hue = hue
        self.spent = 0

    def blend(self, other_hue, parts):
        mix = (self.hue + other_hue * parts) / (parts + 1)
        self.spent += 1
        return mix

    def get_hue(self):
        return self.hue


class Fresco(Pigment):
    def __init__(self):
        Pigment.__init__(self, 50)
        self.cured = False

    def cure(self, days):
        if days >= 14:
            self.cured = True
        return self.cured


def bolt_lengths(bolts, minimum):
    lengths = []
    for bolt in bolts:
        if bolt >= minimum:
            lengths.append(bolt)
    lengths.sort()
    return lengths

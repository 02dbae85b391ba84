"""Beacons and the glyphs they flash."""


class Beacon:
    def __init__(self):
        self.signal = 0
        self.range_m = 500
        self.tint = "amber"

    def get_signal(self):
        return self.signal

    def set_signal(self, value):
        self.signal = value

    def get_tint(self):
        return self.tint

    def get_range(self):
        return self.range_m

    def flash(self, pattern, repeats):
        emitted = []
        for _ in range(repeats):
            for glyph in pattern:
                emitted.append(glyph)
        return emitted


class Zephyr:
    def __init__(self, speed):
        self.speed = speed
        self.bearing = 0

    def veer(self, degrees):
        self.bearing = (self.bearing + degrees) % 360
        return self.bearing

    def get_speed(self):
        return self.speed

    def get_bearing(self):
        return self.bearing

    def calm(self):
        self.speed = 0

    def gust(self, boost, ceiling):
        self.speed = min(self.speed + boost, ceiling)
        if self.speed == ceiling:
            return "capped"
        return "free"


class Lantern:
    wick = "cotton"

    def __init__(self):
        self.lit = False
        self.fuel = 100

    def spark(self):
        if self.fuel > 0:
            self.lit = True
        return self.lit

    def get_fuel(self):
        return self.fuel

    def set_fuel(self, amount):
        self.fuel = amount

    def douse(self):
        self.lit = False

    def refuel(self, amount, spare_can):
        self.fuel += amount
        if spare_can:
            self.fuel += 10
        if self.fuel > 100:
            self.fuel = 100
        return self.fuel


def brightest(lanterns):
    lit = [lantern for lantern in lanterns if lantern.lit]
    return len(lit)

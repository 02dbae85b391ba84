"""One class that accumulated every shelving concern over the years."""


class Catalog:
    def __init__(self):
        self._names = []
        self._prices, self._tags, self._aisles = {}, {}, {}
        self._bins, self._counts, self._suppliers = {}, {}, {}
        self._seasons, self._colors, self._sizes = {}, {}, {}
        self._notes, self._stars, self._codes = {}, {}, {}
        self._eras, self._fees = {}, {}

    def add_name(self, name):
        self._names.append(name)
        return len(self._names)

    def drop_name(self, name):
        if name in self._names:
            self._names.remove(name)
        return len(self._names)

    def name_count(self):
        return len(self._names)

    def first_name(self):
        names = sorted(self._names)
        return names[0] if names else ""

    def price_of(self, name):
        return self._prices.get(name, 0)

    def reprice(self, name, price):
        if price >= 0:
            self._prices[name] = price
        return self._prices.get(name)

    def discount(self, name, pct):
        old = self._prices.get(name, 0)
        self._prices[name] = old * (100 - pct) // 100
        return self._prices[name]

    def tag(self, name, label):
        self._tags.setdefault(name, [])
        self._tags[name].append(label)
        return self._tags[name]

    def untag(self, name, label):
        labels = self._tags.get(name, [])
        if label in labels:
            labels.remove(label)
        return labels

    def tags_of(self, name):
        return list(self._tags.get(name, []))

    def aisle_of(self, name):
        return self._aisles.get(name, -1)

    def move_aisle(self, name, aisle):
        self._aisles[name] = aisle
        return aisle

    def aisle_load(self, aisle):
        load = [n for n, a in self._aisles.items() if a == aisle]
        return len(load)

    def bin_of(self, name):
        return self._bins.get(name, -1)

    def rebin(self, name, slot):
        if slot >= 0:
            self._bins[name] = slot
        return self._bins.get(name)

    def bin_census(self):
        census = {}
        for name, slot in self._bins.items():
            census[slot] = census.get(slot, 0) + 1
        return census

    def stock(self, name, count):
        self._counts[name] = self._counts.get(name, 0) + count
        return self._counts[name]

    def unstock(self, name, count):
        left = self._counts.get(name, 0) - count
        self._counts[name] = max(0, left)
        return self._counts[name]

    def in_stock(self, name):
        return self._counts.get(name, 0) > 0

    def stock_report(self):
        lines = []
        for name in sorted(self._counts):
            lines.append((name, self._counts[name]))
        return lines

    def supplier_of(self, name):
        return self._suppliers.get(name, "")

    def resupply(self, name, who):
        self._suppliers[name] = who
        return who

    def supplier_roster(self):
        roster = set(self._suppliers.values())
        return sorted(roster)

    def season_of(self, name):
        return self._seasons.get(name, "all")

    def reseason(self, name, season):
        self._seasons[name] = season
        return season

    def color_of(self, name):
        return self._colors.get(name, "plain")

    def recolor(self, name, color):
        if color:
            self._colors[name] = color
        return self._colors.get(name)

    def size_of(self, name):
        return self._sizes.get(name, 0)

    def resize(self, name, size):
        self._sizes[name] = size
        return size

    def oversize_list(self, cutoff):
        big = [n for n, s in self._sizes.items() if s > cutoff]
        big.sort()
        return big

    def note(self, name, text):
        self._notes[name] = text
        return len(text)

    def note_of(self, name):
        return self._notes.get(name, "")

    def star(self, name):
        self._stars[name] = self._stars.get(name, 0) + 1
        return self._stars[name]

    def unstar(self, name):
        left = self._stars.get(name, 0) - 1
        self._stars[name] = max(0, left)
        return self._stars[name]

    def star_board(self):
        board = sorted(self._stars.items(), key=lambda kv: -kv[1])
        return board[:10]

    def code_of(self, name):
        return self._codes.get(name, "")

    def recode(self, name, code):
        self._codes[name] = code.upper()
        return self._codes[name]

    def era_of(self, name):
        return self._eras.get(name, "modern")

    def rewrite_era(self, name, era):
        self._eras[name] = era
        return era

    def fee_of(self, name):
        return self._fees.get(name, 0)

    def refee(self, name, fee):
        old = self._fees.get(name, 0)
        self._fees[name] = fee
        return old

    def fee_total(self):
        total = 0
        for fee in self._fees.values():
            total += fee
        return total

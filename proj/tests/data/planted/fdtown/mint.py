"""Single-purpose value records, all state tucked away."""


class Coin:
    def __init__(self):
        self._face = 1
        self._year = 1999
        self._metal = "copper"
        self._mint_mark = "D"
        self._grade = "fine"
        self._luster = 4
        self._rim = "reeded"
        self._weight_g = 3.1


class Stamp:
    def __init__(self):
        self._face = 2
        self._year = 1954
        self._gum = "original"
        self._perforation = 12
        self._watermark = "crown"
        self._centering = "vf"
        self._cancel = ""
        self._sheet_pos = 17


class Token:
    def __init__(self):
        self._issuer = "tramline"
        self._value = 1
        self._alloy = "brass"
        self._bore = 0
        self._motto = "fare"
        self._series = "A"
        self._mintage = 5000
        self._condition = "worn"

"""A record that only carries data."""


class Passport:
    def __init__(self):
        self.holder, self.number, self.country = "", 0, ""
        self.city, self.street, self.postcode = "", "", ""
        self.issued, self.expires, self.height_cm = 0, 0, 0
        self.eye_color, self.birth_year, self.category = "", 0, ""
        self.pages, self.stamps = 32, 0

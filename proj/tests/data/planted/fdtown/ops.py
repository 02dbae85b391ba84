"""Loose town chores."""


def ferry_count(passengers, capacity):
    full_trips = passengers // capacity
    remainder = passengers % capacity
    if remainder:
        return full_trips + 1
    return full_trips


def toll(axles, weight_class, season):
    base = axles * 3
    if weight_class > 2:
        base += 5
    if season == "winter":
        base += 1
    return base


def mooring_fee(length_m):
    if length_m < 8:
        return 10
    if length_m < 15:
        return 25
    return 40


def tide_table(base_hour, days):
    table = []
    hour = base_hour
    for day in range(days):
        table.append((day, hour % 24))
        hour += 12
    return table


def lantern_oil(lanterns, nights, reserve):
    need = lanterns * nights * 2
    if reserve < need:
        return need - reserve
    return 0

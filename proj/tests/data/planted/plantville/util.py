"""Small helpers shared across the yard."""


def clamp(value, low, high):
    if value < low:
        return low
    if value > high:
        return high
    return value


def chunked(items, size):
    chunks = []
    current = []
    for item in items:
        current.append(item)
        if len(current) == size:
            chunks.append(current)
            current = []
    if current:
        chunks.append(current)
    return chunks


def dedupe(items):
    seen = set()
    kept = []
    for item in items:
        if item in seen:
            continue
        seen.add(item)
        kept.append(item)
    return kept


def weave(left, right):
    woven = []
    for pair in zip(left, right):
        woven.extend(pair)
    return woven


def percent(part, whole):
    if whole == 0:
        return 0.0
    return 100.0 * part / whole


def ladder(start, stop, rungs):
    if rungs < 2:
        return [start, stop]
    step = (stop - start) / (rungs - 1)
    points = []
    for k in range(rungs):
        points.append(start + step * k)
    return points


def histogram(values, bucket_width):
    counts = {}
    for value in values:
        slot = int(value // bucket_width)
        counts[slot] = counts.get(slot, 0) + 1
    return counts


def trim_outliers(values, low_pct, high_pct, min_keep):
    ordered = sorted(values)
    n = len(ordered)
    lo = int(n * low_pct / 100)
    hi = n - int(n * high_pct / 100)
    kept = ordered[lo:hi]
    if len(kept) < min_keep:
        return ordered
    return kept


def sliding_max(values, window):
    peaks = []
    for i in range(len(values)):
        lo = max(0, i - window + 1)
        frame = values[lo:i + 1]
        peaks.append(max(frame))
    return peaks


def flatten(nested):
    flat = []
    for group in nested:
        for item in group:
            flat.append(item)
    return flat

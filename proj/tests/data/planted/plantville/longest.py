"""Reporting helpers that grew without mercy."""


def overgrown_reducer(records, mode):
    """Collapse raw yard records into one summary blob."""
    summary = {}
    errors = []
    total = 0
    heaviest = None
    lightest = None
    labels = set()
    by_origin = {}
    by_tint = {}
    streak = 0
    best_streak = 0
    for record in records:
        kind = record.get("kind", "")
        weight = record.get("weight", 0)
        label = record.get("label", "")
        origin = record.get("origin", "")
        tint = record.get("tint", "")
        if not kind:
            errors.append("missing kind")
            streak = 0
            continue
        if weight < 0:
            errors.append("negative weight")
            streak = 0
            continue
        streak += 1
        if streak > best_streak:
            best_streak = streak
        total += weight
        if label:
            labels.add(label)
        if heaviest is None:
            heaviest = weight
        elif weight > heaviest:
            heaviest = weight
        if lightest is None:
            lightest = weight
        elif weight < lightest:
            lightest = weight
        if origin:
            bucket = by_origin.get(origin)
            if bucket is None:
                bucket = {"count": 0, "weight": 0}
                by_origin[origin] = bucket
            bucket["count"] += 1
            bucket["weight"] += weight
        if tint:
            by_tint[tint] = by_tint.get(tint, 0) + 1
        if kind == "parcel":
            summary["parcels"] = summary.get("parcels", 0) + 1
            if weight > 50:
                summary["heavy_parcels"] = summary.get("heavy_parcels", 0) + 1
            if origin == "yard":
                summary["local_parcels"] = summary.get("local_parcels", 0) + 1
        elif kind == "satchel":
            summary["satchels"] = summary.get("satchels", 0) + 1
            if label.startswith("brass"):
                summary["brass_satchels"] = summary.get("brass_satchels", 0) + 1
        elif kind == "beacon":
            summary["beacons"] = summary.get("beacons", 0) + 1
            if tint == "amber":
                summary["amber_beacons"] = summary.get("amber_beacons", 0) + 1
            elif tint == "violet":
                summary["violet_beacons"] = summary.get("violet_beacons", 0) + 1
        elif kind == "ledger":
            summary["ledgers"] = summary.get("ledgers", 0) + 1
            entries = record.get("entries", [])
            balance = 0
            for entry in entries:
                balance += entry
            summary["ledger_balance"] = summary.get("ledger_balance", 0) + balance
            if balance < 0:
                errors.append("ledger underwater")
        elif kind == "quill":
            summary["quills"] = summary.get("quills", 0) + 1
            if weight > 1:
                errors.append("quill too heavy")
        else:
            summary["oddities"] = summary.get("oddities", 0) + 1
        if mode == "verbose":
            note = (kind, label, weight)
            trail = summary.get("trail")
            if trail is None:
                trail = []
                summary["trail"] = trail
            trail.append(note)
            if len(trail) > 100:
                trail.pop(0)
    if mode == "strict" and errors:
        summary["status"] = "dirty"
    elif errors:
        summary["status"] = "mostly-clean"
    else:
        summary["status"] = "clean"
    summary["total_weight"] = total
    summary["distinct_labels"] = len(labels)
    summary["origins"] = by_origin
    summary["tints"] = by_tint
    summary["errors"] = errors
    summary["best_streak"] = best_streak
    if heaviest is not None:
        summary["heaviest"] = heaviest
    if lightest is not None:
        summary["lightest"] = lightest
    if by_origin:
        widest = None
        for origin, bucket in by_origin.items():
            if widest is None or bucket["count"] > by_origin[widest]["count"]:
                widest = origin
        summary["widest_origin"] = widest
    if by_tint:
        dominant = None
        for tint, count in by_tint.items():
            if dominant is None or count > by_tint[dominant]:
                dominant = tint
        summary["dominant_tint"] = dominant
    return summary


def render_ledger_row(owner, opened, closed, balance, credit, debit, flags,
                      column_gap, pad_char, currency, precision, separator, uppercase,
                      trailing_newline):
    cells = [owner, str(opened), str(closed)]
    amount = balance + credit - debit
    cells.append(f"{currency}{amount:.{precision}f}")
    if flags:
        cells.append("".join(sorted(flags)))
    row = (separator + pad_char * column_gap).join(cells)
    if uppercase:
        row = row.upper()
    return row + ("\n" if trailing_newline else "")


def row_widths(rows):
    widths = []
    for row in rows:
        widths.append(len(row))
    return widths

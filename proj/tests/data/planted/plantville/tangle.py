"""Batch chores stitched together with module state."""

tally = 0
last_batch = ""


class BatchExecutor:
    def __init__(self):
        self.queue_ = []
        self.seen = 0
        self.faults = []

    def ingest(self):
        global tally
        staged = []
        for item in self.queue_:
            if item is None:
                self.faults.append("blank")
            else:
                staged.append(str(item).strip())
        kept = [s for s in staged if s]
        tally += len(kept)
        self.seen += len(kept)
        self.queue_ = []
        return staged

    def stir(self):
        self.queue_.reverse()
        return len(self.queue_)

    def drain(self):
        drained = list(self.queue_)
        self.queue_ = []
        return drained

    def scrub(self):
        self.faults = []
        return tally

    def settle(self):
        global last_batch
        last_batch = "settled"
        return last_batch

    def rewind(self):
        self.seen = 0
        return self.seen

    def drift(self):
        if self.faults:
            return self.faults[-1]
        return ""

    def mop(self):
        kept = [f for f in self.faults if f != "blank"]
        self.faults = kept
        return kept

    def hum(self):
        return self.seen + len(self.queue_)

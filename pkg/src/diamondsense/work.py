"""Work-unit accounting and the round-robin scheduler behind every racing detector.

Work units are the package's single cost currency:

* integer or boolean matrix products charge rows * inner * cols
  multiply-accumulates,
* a bitset row operation (AND/OR/popcount over an n-bit row) charges n,
* everything else (adjacency probes, array reads, per-vertex coin flips)
  charges 1 per touch.

Detectors are written as generators that yield whenever their next atom of
work would exceed the budget granted so far, and return their result (or None
for "exhausted, nothing found") via StopIteration.  The scheduler rotates over
such generators granting doubling slices, so a branch that finds a witness
after w units of its own work is reached after O(w) total work across all
branches, up to the number of live branches.
"""

from __future__ import annotations

import math
from typing import Any, Callable, Generator, Iterable, Iterator, Optional

# A branch generator yields None while starved and returns its result object.
Branch = Generator[None, None, Any]
# Factory receives (budget, meter) and builds the branch generator.
BranchFactory = Callable[["Budget", "WorkMeter"], Branch]


class WorkMeter:
    """Accumulates work units.  Shared by reference, never reset."""

    __slots__ = ("total",)

    def __init__(self) -> None:
        self.total = 0

    def add(self, units: int) -> None:
        self.total += units


class Budget:
    """Mutable grant level a branch compares its meter against."""

    __slots__ = ("granted",)

    def __init__(self, granted: float = 0) -> None:
        self.granted = granted


def drive(factory: BranchFactory) -> Any:
    """Run one branch to completion with an unlimited budget."""
    meter = WorkMeter()
    gen = factory(Budget(math.inf), meter)
    try:
        while True:
            next(gen)
    except StopIteration as stop:
        return stop.value, meter.total


class _Entry:
    __slots__ = ("tag", "factory", "gen", "budget", "meter", "seen")

    def __init__(self, tag: str, factory: BranchFactory) -> None:
        self.tag = tag
        self.factory = factory
        self.gen: Optional[Branch] = None
        self.budget = Budget(0)
        self.meter = WorkMeter()
        self.seen = 0


def rotate(
    entries: Iterable[tuple[str, BranchFactory]],
    budget: Budget,
    meter: WorkMeter,
    *,
    initial_slice: int = 4096,
    growth: int = 2,
    admit_initial: int = 64,
) -> Branch:
    """Round-robin race over branch factories, itself shaped like a branch.

    Each live entry gets a per-cycle grant that doubles every full cycle.
    Entries are admitted progressively (the admission cap doubles per cycle)
    so a huge family never materializes state the budget cannot reach; every
    entry is admitted eventually, which preserves unlimited-budget
    completeness.  Inner work is mirrored onto the caller's meter, and the
    rotation yields whenever the caller's budget cannot cover the next slice.

    Returns (result, tag) for the first decisive branch (decisive means a
    non-None return), or None when every branch exhausted inconclusively.
    """
    pending: Iterator[tuple[str, BranchFactory]] = iter(entries)
    admitted: list[_Entry] = []
    exhausted_input = False
    slice_units = initial_slice
    admit_cap = admit_initial
    while True:
        if not exhausted_input:
            while len(admitted) < admit_cap:
                try:
                    tag, factory = next(pending)
                except StopIteration:
                    exhausted_input = True
                    break
                admitted.append(_Entry(tag, factory))
        if not admitted and exhausted_input:
            return None
        finished: list[_Entry] = []
        for entry in admitted:
            while meter.total + slice_units > budget.granted:
                yield
            if entry.gen is None:
                entry.gen = entry.factory(entry.budget, entry.meter)
            entry.budget.granted = entry.meter.total + slice_units
            try:
                next(entry.gen)
            except StopIteration as stop:
                finished.append(entry)
                meter.add(entry.meter.total - entry.seen)
                entry.seen = entry.meter.total
                if stop.value is not None:
                    return stop.value, entry.tag
                continue
            meter.add(entry.meter.total - entry.seen)
            entry.seen = entry.meter.total
        for entry in finished:
            admitted.remove(entry)
        slice_units *= growth
        admit_cap *= growth


def race(
    entries: Iterable[tuple[str, BranchFactory]],
    *,
    total_budget: Optional[int] = None,
    initial_slice: int = 4096,
) -> tuple[Any, Optional[str], int]:
    """Drive a rotation to completion, optionally under a total work cap.

    Returns (result, winning_tag, total_work).  result is None if no branch
    was decisive before exhaustion or the cap.
    """
    meter = WorkMeter()
    cap = math.inf if total_budget is None else total_budget
    budget = Budget(0)
    gen = rotate(entries, budget, meter, initial_slice=initial_slice)
    step = initial_slice
    try:
        while True:
            if budget.granted < cap:
                budget.granted = min(cap, budget.granted + step)
                step *= 2
            before = meter.total
            next(gen)
            if budget.granted >= cap and meter.total == before:
                # Grant frozen at the cap and the rotation made no progress:
                # nothing else can run.
                return None, None, meter.total
    except StopIteration as stop:
        if stop.value is None:
            return None, None, meter.total
        result, tag = stop.value
        return result, tag, meter.total

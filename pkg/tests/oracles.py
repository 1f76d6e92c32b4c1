"""Independent, deliberately naive re-implementations used as test oracles.

These transcribe the greedy procedure literally (recomputing the top
contributor from scratch every round) and must stay decoupled from the
engine's implementation shortcuts.
"""

import random

MAJOR_SHARE = 0.75  # duplicated on purpose; the oracle must not import the engine


def random_instance(rng: random.Random):
    """Random scope: <= 6 authors, <= 10 files, knowledge in [0, 1]."""
    author_pool = [f"a{i}" for i in range(rng.randint(1, 6))]
    files = [f"f{i}" for i in range(rng.randint(1, 10))]
    entries = {}
    for path in files:
        contributors = rng.sample(author_pool, rng.randint(0, len(author_pool)))
        entries[path] = {a: rng.random() for a in contributors}
    return entries, files


def naive_majors(author_map: dict[str, float]) -> set[str]:
    if not author_map:
        return set()
    top = max(author_map.values())
    return {a for a, k in author_map.items() if k >= MAJOR_SHARE * top}


def naive_coverage(entries: dict, files: list[str], removed: set[str]) -> int:
    covered = 0
    for path in files:
        majors = naive_majors(entries.get(path, {}))
        if any(a not in removed for a in majors):
            covered += 1
    return covered


def naive_bus_factor(entries: dict, files: list[str]) -> int | None:
    """Remove the largest remaining contributor until coverage < half, strictly."""
    files = list(files)
    if not files:
        return None
    removed: set[str] = set()
    count = 0
    while True:
        if naive_coverage(entries, files, removed) * 2 < len(files):
            return count
        totals: dict[str, float] = {}
        for path in files:
            for author, knowledge in entries.get(path, {}).items():
                if author not in removed:
                    totals[author] = totals.get(author, 0.0) + knowledge
        candidates = sorted(
            (a for a, t in totals.items() if t > 0),
            key=lambda a: (-totals[a], a),
        )
        if not candidates:
            return count
        removed.add(candidates[0])
        count += 1

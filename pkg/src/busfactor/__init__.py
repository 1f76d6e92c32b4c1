"""Bus factor analytics for git repositories.

Mines the active window of a repository's history, folds contributions into
a decay-weighted per-file knowledge matrix, computes per-node bus factors by
greedy contributor removal, and serves the enriched tree through exports,
an HTTP API, and a contributor-departure simulation.
"""

__version__ = "0.1.0"

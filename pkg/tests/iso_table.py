"""Hand-encoded ASIL determination table, used only as a test oracle.

Each cell was written out by hand from the risk-graph table (severity row,
exposure sub-row, controllability column) rather than computed, so a bug
in the additive implementation cannot leak in here. Rows with S0 or C0
carry no safety relevance and map to QM.
"""

TABLE = {
    (1, 1, 1): "QM", (1, 1, 2): "QM", (1, 1, 3): "QM",
    (1, 2, 1): "QM", (1, 2, 2): "QM", (1, 2, 3): "QM",
    (1, 3, 1): "QM", (1, 3, 2): "QM", (1, 3, 3): "A",
    (1, 4, 1): "QM", (1, 4, 2): "A", (1, 4, 3): "B",

    (2, 1, 1): "QM", (2, 1, 2): "QM", (2, 1, 3): "QM",
    (2, 2, 1): "QM", (2, 2, 2): "QM", (2, 2, 3): "A",
    (2, 3, 1): "QM", (2, 3, 2): "A", (2, 3, 3): "B",
    (2, 4, 1): "A", (2, 4, 2): "B", (2, 4, 3): "C",

    (3, 1, 1): "QM", (3, 1, 2): "QM", (3, 1, 3): "A",
    (3, 2, 1): "QM", (3, 2, 2): "A", (3, 2, 3): "B",
    (3, 3, 1): "A", (3, 3, 2): "B", (3, 3, 3): "C",
    (3, 4, 1): "B", (3, 4, 2): "C", (3, 4, 3): "D",
}


def oracle_asil(s: int, e: int, c: int) -> str:
    """Table lookup over the full domain s 0..3, e 1..4, c 0..3."""
    if s == 0 or c == 0:
        return "QM"
    return TABLE[(s, e, c)]


def all_combinations():
    """Every (s, e, c) triple in the accepted input domain."""
    return [(s, e, c)
            for s in range(0, 4)
            for e in range(1, 5)
            for c in range(0, 4)]

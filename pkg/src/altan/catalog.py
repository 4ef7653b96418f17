"""Small named graphs and patches used by the CLI, the tests and the docs."""

from __future__ import annotations

from .graph import AltanPair, make_graph, make_pair
from .patch import PlanarPatch, parse_bec, patch_from_coordinates


def path_graph(n: int):
    return make_graph(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n: int):
    return make_graph(n, [(i, (i + 1) % n) for i in range(n)])


# attachment sets on P3 (vertices 0-1-2) from the worked example
P3_ATTACHMENTS = {
    "H1": (0, 0, 1, 2, 2),
    "H2": (0, 2),
    "H3": (0, 1, 2, 1),
    "H4": (0, 0, 2, 2),
}


def p3_pair(name: str) -> AltanPair:
    return make_pair(path_graph(3), P3_ATTACHMENTS[name])


def hexagon() -> PlanarPatch:
    return parse_bec("6")


def pentalene() -> PlanarPatch:
    """Two pentagons sharing the edge 0-1, drawn with straight lines."""
    pts = [(0.0, 0.5), (0.0, -0.5),
           (0.8, -0.8), (1.3, 0.0), (0.8, 0.8),
           (-0.8, -0.8), (-1.3, 0.0), (-0.8, 0.8)]
    edges = [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (1, 5), (5, 6), (6, 7), (7, 0)]
    return patch_from_coordinates(pts, edges)


BENZO_A_TETRACENE = "53225221"

# boundary edge codes of the smallest benzenoids whose altan gains two
# non-bonding orbitals, with (hexagon count, bay number, Kekule count)
EXCESS_TWO_SMALLEST = {
    "53225221": (5, 1, 9),
    "521252125212": (7, 3, 28),
    "4421244131": (7, 3, 9),
    "4422144221": (7, 2, 9),
    "5322123252123221": (9, 3, 55),
    "5323122351223121": (9, 4, 59),
    "5323222153222121": (9, 3, 49),
    "5221311515131322": (9, 6, 65),
    "5322132521151221": (9, 5, 62),
    "5323122522151121": (9, 5, 61),
    "5221512151512122": (9, 6, 76),
    "52212511521412": (9, 5, 56),
    "53222151431221": (9, 4, 52),
    "53221341512221": (9, 4, 52),
    "522214413312": (9, 3, 36),
    "52212511514122": (9, 5, 58),
}

# fifteen-hexagon benzenoids with nullity 2 whose altan has nullity 4, with bay numbers
NULLITY_TWO_TO_FOUR = {
    "13222314114251222122211515": 9,
    "2232143124242112122252": 5,
    "141221244112441122214152": 9,
    "23112441124411222342": 6,
    "211442114421114225211152": 10,
    "251142211442114421211152": 10,
    "21232112522422112252122252": 6,
    "4114115112424221222152": 8,
    "221411144211442121412252": 9,
}


def named(name: str):
    """Look up a named example: ``P3``, ``P3:H1`` .. ``P3:H4``, ``pentalene``, ``hexagon``, ``benzo[a]tetracene``."""
    key = name.strip()
    if key.upper().startswith("P3:"):
        return p3_pair(key.split(":", 1)[1].upper())
    table = {
        "p3": lambda: path_graph(3),
        "pentalene": pentalene,
        "hexagon": hexagon,
        "benzene": hexagon,
        "benzo[a]tetracene": lambda: parse_bec(BENZO_A_TETRACENE),
    }
    try:
        return table[key.lower()]()
    except KeyError:
        raise KeyError(f"unknown example {name!r}") from None

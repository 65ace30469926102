"""Small hand-drawn networks used in examples, tests and the CLI."""

from fractions import Fraction as F

from .network import Weighting, build_network, concatenate, delta0

# red path of the introductory network: (0,2) -> (1,2) -> (3,2) -> (5,3) -> (6,3)
INTRO_RED_PATH = (2, 3, 8, 6)


def intro_net():
    """Rank-3 network with 10 vertices and 9 edges."""
    verts = [
        (0, 0, 1), (1, 0, 2), (2, 0, 3),      # sources
        (3, 6, 1), (4, 6, 2), (5, 6, 3),      # sinks
        (6, 1, 2), (7, 2, 1), (8, 3, 2), (9, 5, 3),
    ]
    edges = [
        (0, 0, 7), (1, 7, 3),
        (2, 1, 6), (3, 6, 8), (4, 8, 4),
        (5, 2, 9), (6, 9, 5),
        (7, 6, 7), (8, 8, 9),
    ]
    return build_network(0, 6, verts, edges, rank=3)


def intro_weights() -> Weighting:
    return Weighting({0: 0, 1: 1, 2: 1, 3: 1, 4: -1, 5: 1, 6: 0, 7: 1, 8: 2})


def intro_gamma():
    a, b = F(-1, 5), F(27, 10)
    verts = [
        (0, a, 1), (1, a, 2), (2, a, 3),
        (3, b, 1), (4, b, 2), (5, b, 3),
        (6, 2, 1), (7, 1, 2), (8, F(3, 2), 2), (9, 2, 2),
        (10, F(1, 2), 3), (11, F(3, 2), 3),
    ]
    edges = [
        (0, 0, 6), (1, 6, 3),
        (2, 8, 6),
        (3, 1, 7), (4, 7, 8), (5, 8, 9), (6, 9, 4),
        (7, 10, 7),
        (8, 11, 9),
        (9, 2, 10), (10, 10, 11), (11, 11, 5),
    ]
    return build_network(a, b, verts, edges, rank=3)


def intro_delta():
    return delta0(3, F(27, 10), F(28, 5))


def intro_concatenation():
    return concatenate(intro_gamma(), intro_delta())


# a 2-path on the concatenation: one path stops at the middle line, one runs through
INTRO_GD_GAMMA = ((3, 4, 2, 1), (9, 10, 11))
INTRO_GD_DELTA = ((14,),)  # top line of Delta after the id shift by 12

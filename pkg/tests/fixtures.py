"""Constructed instances shared by the module and acceptance tests."""

import itertools

ROOM_WALL = ((10, 0), (10, 10))
ROOM_MIRROR = 7


def pillar_room(h, cr):
    """A room with a pillar rising from the floor at x in [4,5] to height h and a
    ceiling mirror from (cr,11) to (5,11) (edge 7)."""
    return ((0, 0), (4, 0), (4, h), (5, h), (5, 0), (10, 0), (10, 10), (cr, 11), (5, 11), (0, 9))


DMVM_EDS = (((1, 1), (3, 7)), ((1, 1), (2, 7)), ((2, 1), (3, 6)), ((1, 2), (3, 7)), ((1, 1), (3, 8)))


def dmvm_family():
    """(vertices, ed, uw, mirror edge, reflex point, mirror endpoint) tuples.
    The direct view of the right wall is cut by the pillar's top-left corner and
    the mirrored view ends at the ceiling mirror's right end."""
    out = []
    for h, cr, ed in itertools.product((4, 5, 6), (7, 8, 9), DMVM_EDS):
        out.append((pillar_room(h, cr), ed, ROOM_WALL, ROOM_MIRROR, (4, h), (cr, 11)))
    return out


def mirror_x(V):
    """Mirror image of a CCW polygon across x = 0, still CCW, and the map of
    old edge indices to new ones."""
    n = len(V)
    W = [(-x, y) for x, y in reversed(V)]
    # old edge i = V[i] -> V[i+1] becomes W edge between the images, reversed
    emap = {i: (n - 2 - i) % n for i in range(n)}
    return tuple(W), emap

"""Small networks used across the test suite.

Every corpus network is scalar linearly solvable over GF(2), D(2) and Z(4),
which makes the set usable for exercising code transforms between those
rings.
"""

from ringcode.network import Edge, Message, Network, Receiver, choose_two


def direct_pair() -> Network:
    """Two parallel edges from the source straight to one receiver."""
    return Network(
        ("s", "r"),
        (Edge("e1", "s", "r"), Edge("e2", "s", "r")),
        (Message("x", "s"), Message("y", "s")),
        (Receiver("r", ("x", "y")),),
    )


def relay_chain() -> Network:
    """One message relayed through two hops."""
    return Network(
        ("s", "a", "b", "r"),
        (Edge("e1", "s", "a"), Edge("e2", "a", "b"), Edge("e3", "b", "r")),
        (Message("x", "s"),),
        (Receiver("r", ("x",)),),
    )


def diamond() -> Network:
    """Two disjoint relay paths into one receiver demanding both messages."""
    return Network(
        ("s", "a", "b", "r"),
        (
            Edge("e1", "s", "a"),
            Edge("e2", "s", "b"),
            Edge("e3", "a", "r"),
            Edge("e4", "b", "r"),
        ),
        (Message("x", "s"), Message("y", "s")),
        (Receiver("r", ("x", "y")),),
    )


def butterfly() -> Network:
    """The classic bottleneck network: both receivers demand both messages."""
    return Network(
        ("s", "u1", "u2", "c", "d", "r1", "r2"),
        (
            Edge("e1", "s", "u1"),
            Edge("e2", "s", "u2"),
            Edge("f1", "u1", "r1"),
            Edge("f2", "u2", "r2"),
            Edge("g1", "u1", "c"),
            Edge("g2", "u2", "c"),
            Edge("h", "c", "d"),
            Edge("i1", "d", "r1"),
            Edge("i2", "d", "r2"),
        ),
        (Message("x", "s"), Message("y", "s")),
        (Receiver("r1", ("x", "y")), Receiver("r2", ("x", "y"))),
    )


def triangle() -> Network:
    """A direct edge plus a relayed edge into the same receiver."""
    return Network(
        ("s", "a", "r"),
        (Edge("e1", "s", "a"), Edge("e2", "s", "r"), Edge("e3", "a", "r")),
        (Message("x", "s"), Message("y", "s")),
        (Receiver("r", ("x", "y")),),
    )


def shared_hub() -> Network:
    """Two receivers with one shared coded edge and one private edge each."""
    return Network(
        ("s", "a", "r1", "r2"),
        (
            Edge("e1", "s", "a"),
            Edge("e2", "s", "r1"),
            Edge("e3", "s", "r2"),
            Edge("e4", "a", "r1"),
            Edge("e5", "a", "r2"),
        ),
        (Message("x", "s"), Message("y", "s")),
        (Receiver("r1", ("x", "y")), Receiver("r2", ("x", "y"))),
    )


def recombiner() -> Network:
    """Two coded symbols merged downstream; the receiver sees the merge and a tap."""
    return Network(
        ("s", "a", "b", "c", "r"),
        (
            Edge("e1", "s", "a"),
            Edge("e2", "s", "b"),
            Edge("e3", "a", "c"),
            Edge("e4", "b", "c"),
            Edge("e5", "c", "r"),
            Edge("e6", "a", "r"),
        ),
        (Message("x", "s"), Message("y", "s")),
        (Receiver("r", ("x", "y")),),
    )


def asym_pairs() -> Network:
    """Receivers seeing overlapping symbol pairs from three coded edges."""
    return Network(
        ("s", "m1", "m2", "r1", "r2"),
        (
            Edge("lam1", "s", "m1"),
            Edge("lam2", "s", "m2"),
            Edge("lam3", "s", "r2"),
            Edge("c1", "m1", "r1"),
            Edge("c2", "m2", "r1"),
            Edge("c3", "m1", "r2"),
        ),
        (Message("x", "s"), Message("y", "s")),
        (Receiver("r1", ("x", "y")), Receiver("r2", ("x", "y"))),
    )


def corpus() -> list[Network]:
    """Ten networks, each solvable over GF(2), D(2) and Z(4)."""
    return [
        direct_pair(),
        relay_chain(),
        diamond(),
        butterfly(),
        triangle(),
        shared_hub(),
        recombiner(),
        asym_pairs(),
        choose_two(2),
        choose_two(3),
    ]

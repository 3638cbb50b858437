"""Networks, scalar linear codes over a catalog ring, and an exhaustive solver.

A network is a finite directed acyclic multigraph with messages generated at
nodes and receivers demanding messages.  A scalar linear code assigns each
edge a coefficient list over a ring, one coefficient per input of the edge's
tail node (a node's inputs are its own messages, sorted by id, followed by
its in-edges, sorted by id), and each (receiver, demand) a decoding
coefficient list over the receiver's inputs.  The symbol an edge carries is
the corresponding linear combination, so each edge has an exact transfer
vector of per-message coefficients, computed in topological order.

The solver enumerates coefficient assignments in canonical element order.
Edges whose tail has a single input are pinned to the relay coefficient 1:
over a commutative ring any solution can be rescaled into this normal form
(consumers absorb the copy factor), so solvability is unaffected while the
search space collapses to the genuinely combining edges.  Receivers are
checked as soon as the edges they depend on are assigned, which prunes most
of the space.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from typing import Sequence

from .errors import BudgetExceeded, GuardExceeded
from .rings import (
    GaloisField,
    IntegersMod,
    PrimeField,
    Product,
    RingElement,
    RingHom,
    RingSpec,
    SURJECTIVE_KINDS,
    add,
    apply_hom,
    elements,
    format_element,
    format_ring,
    is_prime,
    mul,
    one,
    parse_element,
    parse_ring,
    ring_size,
    subring_inclusion,
    zero,
)

DEFAULT_BUDGET = 2**26
DECODE_GUARD = 2**24
CHOOSE_TWO_MAX_N = 12


@dataclass(frozen=True, slots=True)
class Edge:
    id: str
    tail: str
    head: str


@dataclass(frozen=True, slots=True)
class Message:
    id: str
    source: str


@dataclass(frozen=True, slots=True)
class Receiver:
    node: str
    demands: tuple[str, ...]


@dataclass(frozen=True, slots=True)
class Network:
    nodes: tuple[str, ...]
    edges: tuple[Edge, ...]
    messages: tuple[Message, ...]
    receivers: tuple[Receiver, ...]

    def in_edges(self, node: str) -> list[Edge]:
        return sorted((e for e in self.edges if e.head == node), key=lambda e: e.id)

    def node_inputs(self, node: str) -> list[tuple[str, str]]:
        """Inputs of a node: ("msg", id) entries first, then ("edge", id)."""
        msgs = sorted(m.id for m in self.messages if m.source == node)
        ins = [e.id for e in self.in_edges(node)]
        return [("msg", m) for m in msgs] + [("edge", e) for e in ins]

    def message_ids(self) -> list[str]:
        return sorted(m.id for m in self.messages)


@dataclass(slots=True)
class ScalarLinearCode:
    ring: RingSpec
    edge_coeffs: dict[str, tuple[RingElement, ...]]
    decoders: dict[tuple[str, str], tuple[RingElement, ...]]


@dataclass(slots=True)
class TransferVector:
    """Per-message coefficients of the symbol an edge carries."""

    coefficients: dict[str, RingElement]

    def key(self, message_ids: Sequence[str]) -> tuple:
        return tuple(self.coefficients[m].payload for m in message_ids)


def validate(net: Network) -> list[str]:
    """Structural defects, one entry per violation; empty iff the network is valid."""
    defects = []
    nodes = set(net.nodes)
    if len(nodes) != len(net.nodes):
        defects.append("duplicate node ids")
    edge_ids = [e.id for e in net.edges]
    if len(set(edge_ids)) != len(edge_ids):
        defects.append("duplicate edge ids")
    msg_ids = [m.id for m in net.messages]
    if len(set(msg_ids)) != len(msg_ids):
        defects.append("duplicate message ids")
    for e in net.edges:
        if e.tail not in nodes:
            defects.append(f"edge {e.id}: unknown tail {e.tail}")
        if e.head not in nodes:
            defects.append(f"edge {e.id}: unknown head {e.head}")
    for m in net.messages:
        if m.source not in nodes:
            defects.append(f"message {m.id}: unknown source {m.source}")
    for r in net.receivers:
        if r.node not in nodes:
            defects.append(f"receiver at unknown node {r.node}")
        for d in r.demands:
            if d not in set(msg_ids):
                defects.append(f"receiver {r.node}: unknown demand {d}")
    order = _topological_order(net)
    if order is None:
        defects.append("graph has a directed cycle")
    return defects


def _topological_order(net: Network) -> list[str] | None:
    indeg = {n: 0 for n in net.nodes}
    for e in net.edges:
        if e.head in indeg and e.tail in indeg:
            indeg[e.head] += 1
    ready = sorted(n for n, d in indeg.items() if d == 0)
    order = []
    while ready:
        n = ready.pop(0)
        order.append(n)
        for e in sorted(net.edges, key=lambda e: e.id):
            if e.tail == n and e.head in indeg:
                indeg[e.head] -= 1
                if indeg[e.head] == 0:
                    ready.append(e.head)
        ready.sort()
    return order if len(order) == len(net.nodes) else None


# ---------------------------------------------------------------------------
# generators
# ---------------------------------------------------------------------------


def choose_two(n: int) -> Network:
    """Two messages x, y; n coded symbols; one receiver per unordered pair.

    The source emits n combining edges into middle nodes; each middle node
    fans its symbol out to the receivers of the pairs it belongs to through
    copy edges.  Every receiver sees the symbols of a distinct pair {i, j}
    and demands both messages.
    """
    if n < 2:
        raise ValueError("need n >= 2")
    if n > CHOOSE_TWO_MAX_N:
        raise GuardExceeded(f"n must be at most {CHOOSE_TWO_MAX_N}")
    nodes = ["s"] + [f"m{i:02d}" for i in range(1, n + 1)]
    edges = [Edge(f"lam{i:02d}", "s", f"m{i:02d}") for i in range(1, n + 1)]
    receivers = []
    for i, j in itertools.combinations(range(1, n + 1), 2):
        rnode = f"r{i:02d}x{j:02d}"
        nodes.append(rnode)
        edges.append(Edge(f"a{i:02d}x{j:02d}", f"m{i:02d}", rnode))
        edges.append(Edge(f"b{i:02d}x{j:02d}", f"m{j:02d}", rnode))
        receivers.append(Receiver(rnode, ("x", "y")))
    return Network(
        tuple(nodes),
        tuple(edges),
        (Message("x", "s"), Message("y", "s")),
        tuple(receivers),
    )


def two_six() -> Network:
    """The four-symbol, six-receiver multicast variant: choose_two(4)."""
    return choose_two(4)


# ---------------------------------------------------------------------------
# transfer vectors and verification
# ---------------------------------------------------------------------------


def transfer(net: Network, code: ScalarLinearCode) -> dict[str, TransferVector]:
    """Exact per-edge message coefficients under the code."""
    defects = validate(net)
    if defects:
        raise ValueError("invalid network: " + "; ".join(defects))
    order = _topological_order(net)
    rank = {node: i for i, node in enumerate(order)}
    msg_ids = net.message_ids()
    spec = code.ring
    zero_vec = {m: zero(spec) for m in msg_ids}
    vectors: dict[str, TransferVector] = {}
    for e in sorted(net.edges, key=lambda e: (rank[e.tail], e.id)):
        coeffs = code.edge_coeffs.get(e.id)
        inputs = net.node_inputs(e.tail)
        if coeffs is None or len(coeffs) != len(inputs):
            raise ValueError(f"edge {e.id}: coefficient arity mismatch")
        acc = dict(zero_vec)
        for c, (kind, ref) in zip(coeffs, inputs):
            if kind == "msg":
                acc[ref] = add(acc[ref], c)
            else:
                for m, v in vectors[ref].coefficients.items():
                    acc[m] = add(acc[m], mul(c, v))
        vectors[e.id] = TransferVector(acc)
    return vectors


def _receiver_rows(
    net: Network, node: str, vectors: dict[str, TransferVector], spec: RingSpec
) -> list[TransferVector]:
    msg_ids = net.message_ids()
    rows = []
    for kind, ref in net.node_inputs(node):
        if kind == "msg":
            unit = {
                m: (one(spec) if m == ref else zero(spec)) for m in msg_ids
            }
            rows.append(TransferVector(unit))
        else:
            rows.append(vectors[ref])
    return rows


def verify(net: Network, code: ScalarLinearCode) -> bool:
    """True iff every receiver's decoders recover exactly its demands."""
    vectors = transfer(net, code)
    msg_ids = net.message_ids()
    spec = code.ring
    for recv in net.receivers:
        rows = _receiver_rows(net, recv.node, vectors, spec)
        for demand in recv.demands:
            coeffs = code.decoders.get((recv.node, demand))
            if coeffs is None:
                return False
            if len(coeffs) != len(rows):
                raise ValueError(
                    f"receiver {recv.node}: decoder arity mismatch for {demand}"
                )
            if not _combination_is_unit(coeffs, rows, demand, msg_ids, spec):
                return False
    return True


def _combination_is_unit(coeffs, rows, target, msg_ids, spec) -> bool:
    for m in msg_ids:
        acc = zero(spec)
        for c, row in zip(coeffs, rows):
            acc = add(acc, mul(c, row.coefficients[m]))
        want = one(spec) if m == target else zero(spec)
        if acc != want:
            return False
    return True


# ---------------------------------------------------------------------------
# decoding
# ---------------------------------------------------------------------------


def _is_field(spec: RingSpec) -> bool:
    if isinstance(spec, (PrimeField, GaloisField)):
        return True
    return isinstance(spec, IntegersMod) and is_prime(spec.n)


def decode_search(
    rows: Sequence[TransferVector], target: str, spec: RingSpec
) -> tuple[RingElement, ...] | None:
    """Coefficients c with sum(c_i * row_i) = unit vector of target, if any.

    Over a field the system is solved by Gaussian elimination; over other
    rings the coefficient tuples are searched exhaustively in canonical
    element order and the first hit is returned.
    """
    if not rows:
        return None
    msg_ids = sorted(rows[0].coefficients.keys())
    if _is_field(spec):
        return _decode_eliminate(rows, target, msg_ids, spec)
    r = len(rows)
    size = ring_size(spec)
    if r > 4 and size**r > DECODE_GUARD:
        raise GuardExceeded(
            f"brute-force decode space {size}^{r} exceeds {DECODE_GUARD}"
        )
    units = {m: one(spec) if m == target else zero(spec) for m in msg_ids}
    domain = elements(spec)
    for combo in itertools.product(domain, repeat=r):
        ok = True
        for m in msg_ids:
            acc = zero(spec)
            for c, row in zip(combo, rows):
                acc = add(acc, mul(c, row.coefficients[m]))
            if acc != units[m]:
                ok = False
                break
        if ok:
            return tuple(combo)
    return None


def _decode_eliminate(rows, target, msg_ids, spec):
    """Solve sum c_i row_i = e_target over a field: eliminate on A c = b with
    A[msg][i] = row_i[msg]."""
    from .rings import inverse, neg

    n_eq = len(msg_ids)
    n_var = len(rows)
    aug = [
        [rows[i].coefficients[m] for i in range(n_var)]
        + [one(spec) if m == target else zero(spec)]
        for m in msg_ids
    ]
    zero_e = zero(spec)
    pivots = []
    row_at = 0
    for col in range(n_var):
        pivot = next(
            (r for r in range(row_at, n_eq) if aug[r][col] != zero_e), None
        )
        if pivot is None:
            continue
        aug[row_at], aug[pivot] = aug[pivot], aug[row_at]
        inv = inverse(aug[row_at][col])
        aug[row_at] = [mul(inv, v) for v in aug[row_at]]
        for r in range(n_eq):
            if r != row_at and aug[r][col] != zero_e:
                factor = aug[r][col]
                aug[r] = [
                    add(v, mul(neg(factor), w))
                    for v, w in zip(aug[r], aug[row_at])
                ]
        pivots.append(col)
        row_at += 1
    for r in range(row_at, n_eq):
        if aug[r][n_var] != zero_e:
            return None
    out = [zero(spec)] * n_var
    for r, col in enumerate(pivots):
        out[col] = aug[r][n_var]
    return tuple(out)


# ---------------------------------------------------------------------------
# exhaustive solver
# ---------------------------------------------------------------------------


def solve_brute(
    net: Network,
    spec: RingSpec,
    budget: int = DEFAULT_BUDGET,
    jobs: int = 1,
) -> ScalarLinearCode | None:
    """First scalar linear solution in canonical coefficient order, or None.

    The search runs over the combining edges (tail arity >= 2); single-input
    edges relay their input unchanged, which preserves solvability (see the
    module docstring).  Decoders come from decode_search per receiver, and a
    prefix is abandoned as soon as some fully determined receiver cannot
    decode a demand.  Deterministic: the returned code is reproducible.
    """
    if jobs < 1:
        raise ValueError("jobs must be at least 1")
    defects = validate(net)
    if defects:
        raise ValueError("invalid network: " + "; ".join(defects))
    order = _topological_order(net)
    rank = {node: i for i, node in enumerate(order)}
    msg_ids = net.message_ids()
    size = ring_size(spec)

    inputs_of = {node: net.node_inputs(node) for node in net.nodes}
    searched = [
        e
        for e in sorted(net.edges, key=lambda e: (rank[e.tail], e.id))
        if len(inputs_of[e.tail]) >= 2
    ]
    total_coeffs = sum(len(inputs_of[e.tail]) for e in searched)
    required = size**total_coeffs
    if required > budget:
        raise BudgetExceeded(required, budget)

    # resolve every edge to the searched edge or message whose symbol it carries
    def resolve(edge: Edge):
        ins = inputs_of[edge.tail]
        if len(ins) >= 2:
            return ("edge", edge.id)
        if not ins:
            return ("zero", "")
        kind, ref = ins[0]
        if kind == "msg":
            return ("msg", ref)
        return resolve(edge_by_id[ref])

    edge_by_id = {e.id: e for e in net.edges}
    source_form = {e.id: resolve(e) for e in net.edges}
    searched_index = {e.id: i for i, e in enumerate(searched)}

    unit_vecs = {
        m: TransferVector(
            {q: (one(spec) if q == m else zero(spec)) for q in msg_ids}
        )
        for m in msg_ids
    }
    zero_vec = TransferVector({q: zero(spec) for q in msg_ids})

    # receiver readiness: the last searched edge its inputs depend on
    recv_inputs: dict[str, list] = {}
    recv_ready: dict[int, list[Receiver]] = {}
    immediate: list[Receiver] = []
    for recv in net.receivers:
        forms = []
        last = -1
        for kind, ref in inputs_of[recv.node]:
            form = ("msg", ref) if kind == "msg" else source_form[ref]
            forms.append(form)
            if form[0] == "edge":
                last = max(last, searched_index[form[1]])
        recv_inputs[recv.node] = forms
        if last < 0:
            immediate.append(recv)
        else:
            recv_ready.setdefault(last, []).append(recv)

    assigned_vecs: list[TransferVector | None] = [None] * len(searched)

    def vector_of(form) -> TransferVector:
        kind, ref = form
        if kind == "msg":
            return unit_vecs[ref]
        if kind == "zero":
            return zero_vec
        return assigned_vecs[searched_index[ref]]

    decode_cache: dict = {}

    def receiver_ok(recv: Receiver) -> dict[str, tuple] | None:
        rows = [vector_of(f) for f in recv_inputs[recv.node]]
        key = (
            recv.demands,
            tuple(r.key(msg_ids) for r in rows),
        )
        if key in decode_cache:
            return decode_cache[key]
        found: dict[str, tuple] | None = {}
        for demand in recv.demands:
            coeffs = decode_search(rows, demand, spec)
            if coeffs is None:
                found = None
                break
            found[demand] = coeffs
        decode_cache[key] = found
        return found

    for recv in immediate:
        if receiver_ok(recv) is None:
            return None

    domain = elements(spec)
    choice_lists = [
        list(itertools.product(domain, repeat=len(inputs_of[e.tail])))
        for e in searched
    ]

    solution_decoders: dict[tuple[str, str], tuple] = {}

    def descend(depth: int) -> bool:
        if depth == len(searched):
            return True
        e = searched[depth]
        forms = []
        for kind, ref in inputs_of[e.tail]:
            forms.append(("msg", ref) if kind == "msg" else source_form[ref])
        for combo in choice_lists[depth]:
            acc = {m: zero(spec) for m in msg_ids}
            for c, form in zip(combo, forms):
                vec = vector_of(form)
                for m in msg_ids:
                    acc[m] = add(acc[m], mul(c, vec.coefficients[m]))
            assigned_vecs[depth] = TransferVector(acc)
            ok = True
            for recv in recv_ready.get(depth, ()):
                if receiver_ok(recv) is None:
                    ok = False
                    break
            if ok and descend(depth + 1):
                chosen_coeffs[depth] = combo
                return True
        assigned_vecs[depth] = None
        return False

    chosen_coeffs: list = [None] * len(searched)
    if not descend(0):
        return None

    edge_coeffs: dict[str, tuple[RingElement, ...]] = {}
    for e in net.edges:
        arity = len(inputs_of[e.tail])
        if arity >= 2:
            edge_coeffs[e.id] = tuple(chosen_coeffs[searched_index[e.id]])
        elif arity == 1:
            edge_coeffs[e.id] = (one(spec),)
        else:
            edge_coeffs[e.id] = ()
    for recv in net.receivers:
        decoded = receiver_ok(recv)
        for demand, coeffs in decoded.items():
            solution_decoders[(recv.node, demand)] = coeffs
    code = ScalarLinearCode(spec, edge_coeffs, solution_decoders)
    assert verify(net, code)
    return code


# ---------------------------------------------------------------------------
# structured constructions and transforms
# ---------------------------------------------------------------------------


def choose_two_field_solution(n: int, spec: RingSpec) -> ScalarLinearCode:
    """Pairwise independent coding of choose_two(n) over a field of size >= n-1.

    The coded symbols get the coefficient pairs (0,1) and (1,a) for n-1
    distinct field values a; any two of those pairs form an invertible 2x2
    matrix, so every receiver decodes.
    """
    if not isinstance(spec, (PrimeField, GaloisField)):
        raise ValueError("need a finite field")
    q = ring_size(spec)
    if q < n - 1:
        raise ValueError(f"field size {q} is below n - 1 = {n - 1}")
    net = choose_two(n)
    pairs = [(zero(spec), one(spec))] + [
        (one(spec), a) for a in elements(spec)[: n - 1]
    ]
    edge_coeffs: dict[str, tuple[RingElement, ...]] = {}
    for i in range(1, n + 1):
        edge_coeffs[f"lam{i:02d}"] = pairs[i - 1]
    for e in net.edges:
        if e.id not in edge_coeffs:
            edge_coeffs[e.id] = (one(spec),)
    code = ScalarLinearCode(spec, edge_coeffs, {})
    vectors = transfer(net, code)
    for recv in net.receivers:
        rows = _receiver_rows(net, recv.node, vectors, spec)
        for demand in recv.demands:
            coeffs = decode_search(rows, demand, spec)
            if coeffs is None:
                raise RuntimeError("pairwise independent rows must decode")
            code.decoders[(recv.node, demand)] = coeffs
    assert verify(net, code)
    return code


def product_code(
    net: Network, solutions: Sequence[tuple[RingSpec, ScalarLinearCode]]
) -> ScalarLinearCode:
    """Componentwise combination of verified solutions into one over the product ring."""
    if not solutions:
        raise ValueError("need at least one solution")
    for spec, code in solutions:
        if code.ring != spec:
            raise ValueError("listed ring does not own its code")
        if not verify(net, code):
            raise ValueError("unverified input solution")
    specs = tuple(spec for spec, _ in solutions)
    prod = Product(specs)
    codes = [code for _, code in solutions]
    edge_coeffs = {}
    for e in net.edges:
        arity = len(codes[0].edge_coeffs[e.id])
        edge_coeffs[e.id] = tuple(
            RingElement(prod, tuple(c.edge_coeffs[e.id][i] for c in codes))
            for i in range(arity)
        )
    decoders = {}
    for key in codes[0].decoders:
        arity = len(codes[0].decoders[key])
        decoders[key] = tuple(
            RingElement(prod, tuple(c.decoders[key][i] for c in codes))
            for i in range(arity)
        )
    out = ScalarLinearCode(prod, edge_coeffs, decoders)
    assert verify(net, out)
    return out


def map_code(net: Network, code: ScalarLinearCode, hom: RingHom) -> ScalarLinearCode:
    """Push a verified solution through a surjective hom coefficient by coefficient."""
    if hom.kind not in SURJECTIVE_KINDS:
        raise ValueError(f"hom kind {hom.kind} is not surjective")
    if code.ring != hom.source:
        raise ValueError("code ring does not match the hom source")
    if not verify(net, code):
        raise ValueError("unverified input solution")
    out = ScalarLinearCode(
        hom.target,
        {e: tuple(apply_hom(hom, c) for c in cs) for e, cs in code.edge_coeffs.items()},
        {k: tuple(apply_hom(hom, c) for c in cs) for k, cs in code.decoders.items()},
    )
    assert verify(net, out)
    return out


def lift_subring(
    net: Network, code: ScalarLinearCode, target: RingSpec
) -> ScalarLinearCode:
    """Re-read a verified solution over a subring as one over the larger ring.

    Supported inclusions: GF(p^m) into GF(p^k) for m | k, GF(p) into D(p),
    and the identity.
    """
    source = code.ring
    if not verify(net, code):
        raise ValueError("unverified input solution")
    if source == target:
        return ScalarLinearCode(
            target, dict(code.edge_coeffs), dict(code.decoders)
        )
    hom = subring_inclusion(source, target)
    out = ScalarLinearCode(
        target,
        {e: tuple(apply_hom(hom, c) for c in cs) for e, cs in code.edge_coeffs.items()},
        {k: tuple(apply_hom(hom, c) for c in cs) for k, cs in code.decoders.items()},
    )
    assert verify(net, out)
    return out


# ---------------------------------------------------------------------------
# JSON formats
# ---------------------------------------------------------------------------


def network_to_json(net: Network) -> dict:
    return {
        "nodes": list(net.nodes),
        "edges": [{"id": e.id, "tail": e.tail, "head": e.head} for e in net.edges],
        "messages": [{"id": m.id, "source": m.source} for m in net.messages],
        "receivers": [
            {"node": r.node, "demands": list(r.demands)} for r in net.receivers
        ],
    }


def network_from_json(data: dict) -> Network:
    try:
        return Network(
            tuple(data["nodes"]),
            tuple(Edge(e["id"], e["tail"], e["head"]) for e in data["edges"]),
            tuple(Message(m["id"], m["source"]) for m in data["messages"]),
            tuple(
                Receiver(r["node"], tuple(r["demands"])) for r in data["receivers"]
            ),
        )
    except (KeyError, TypeError) as exc:
        raise ValueError(f"malformed network JSON: {exc}") from None


def code_to_json(code: ScalarLinearCode) -> dict:
    for (node, _msg) in code.decoders:
        if ":" in node:
            raise ValueError("node ids must not contain ':'")
    return {
        "ring": format_ring(code.ring),
        "edges": {
            e: [format_element(c) for c in cs]
            for e, cs in sorted(code.edge_coeffs.items())
        },
        "decoders": {
            f"{node}:{msg}": [format_element(c) for c in cs]
            for (node, msg), cs in sorted(code.decoders.items())
        },
    }


def code_from_json(data: dict) -> ScalarLinearCode:
    try:
        spec = parse_ring(data["ring"])
        edges = {
            e: tuple(parse_element(t, spec) for t in ts)
            for e, ts in data["edges"].items()
        }
        decoders = {}
        for key, ts in data["decoders"].items():
            node, _, msg = key.partition(":")
            decoders[(node, msg)] = tuple(parse_element(t, spec) for t in ts)
    except (KeyError, TypeError) as exc:
        raise ValueError(f"malformed code JSON: {exc}") from None
    return ScalarLinearCode(spec, edges, decoders)


def dump_json(data: dict) -> str:
    return json.dumps(data, indent=2, sort_keys=True)

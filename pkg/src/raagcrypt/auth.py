"""Challenge-response authentication from graph search problems.

Both schemes follow the same three-message shape. The prover publishes a
commitment graph G and withholds a session map beta from G into the
first public object; the verifier sends a random bit c; the prover
reveals beta (c = 0) or the composite of beta with the long-term private
key alpha (c = 1); the verifier checks the revealed map against the
public data. A cheater who prepared for only one challenge value
survives a round with probability 1/2, so r rounds drive the soundness
error to 2^-r.

Scheme "hom": public key is a pair of graphs; alpha is a strict graph
homomorphism between them. Keys and commitments are planted: instances
are generated together with their witness, never searched for, because
recovering a homomorphism is NP-complete already for a triangle target.

Scheme "sub": public key is one ambient graph plus two vertex subsets
whose induced subgraphs are isomorphic; alpha is the induced
isomorphism. Only special (induced) subgraphs are used; the verifier
checks literal image-set equality plus edge and non-edge preservation.
Planting is essential here as well since recovering such an isomorphism
is NP-complete in general.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Mapping

from .graphs import (
    GraphError,
    SimplicialGraph,
    VertexMap,
    VertexSubset,
    format_graph,
    parse_graph,
    parse_vertex_map,
    triangle_vertices,
    verify_graph_homomorphism,
    verify_induced_subgraph_isomorphism,
)

__all__ = [
    "AuthError",
    "HomKeyPair",
    "SubKeyPair",
    "RoundState",
    "Transcript",
    "STRATEGIES",
    "hom_keygen",
    "hom_commit",
    "hom_respond",
    "hom_verify",
    "sub_keygen",
    "sub_commit",
    "sub_respond",
    "sub_verify",
    "run_protocol",
    "acceptance_rate",
    "format_public_key",
    "parse_public_key",
    "format_private_key",
    "parse_private_key",
    "format_transcript",
    "parse_transcript",
]

STRATEGIES = ("honest", "cheat-guess-0", "cheat-guess-1", "cheat-random")

DEFAULT_EDGE_PROB = 0.5
# keygen thins the pulled-back edge set to vary public keys; commitments
# keep the full pullback so responses face as many edge constraints as
# the assignment allows (junk maps then fail with high probability)
KEYGEN_KEEP_PROB = 0.9
COMMIT_KEEP_PROB = 1.0


class AuthError(ValueError):
    """Raised for malformed keys, parameters, or protocol files."""


@dataclass(frozen=True)
class HomKeyPair:
    """Public graphs g1, g2 (g2 contains a triangle); private map alpha: g1 -> g2."""

    g1: SimplicialGraph
    g2: SimplicialGraph
    alpha: VertexMap

    def __post_init__(self):
        if self.alpha.source != self.g1 or self.alpha.target != self.g2:
            raise AuthError("private map must go from g1 to g2")
        if not verify_graph_homomorphism(self.alpha):
            raise AuthError("private map is not a graph homomorphism")
        if triangle_vertices(self.g2) is None:
            raise AuthError("g2 must contain a triangle")


@dataclass(frozen=True)
class SubKeyPair:
    """Public ambient graph and subsets s1, s2; private induced bijection alpha."""

    ambient: SimplicialGraph
    s1: VertexSubset
    s2: VertexSubset
    alpha: dict[str, str]

    def __post_init__(self):
        if len(self.s1) != len(self.s2):
            raise AuthError("subgroup generating sets must have equal size")
        try:
            ok = verify_induced_subgraph_isomorphism(self.ambient, self.s1, self.s2,
                                                     self.alpha)
        except GraphError as e:
            raise AuthError(f"private bijection is malformed: {e}") from None
        if not ok:
            raise AuthError("private bijection does not preserve the induced structure")


@dataclass
class RoundState:
    """One round's record, filled strictly in commit/challenge/respond/verify order."""

    commitment: SimplicialGraph
    session: VertexMap | Mapping[str, str] | None
    challenge: int | None = None
    response: VertexMap | Mapping[str, str] | None = None
    verdict: bool | None = None


@dataclass(frozen=True)
class Transcript:
    scheme: str
    rounds: tuple[RoundState, ...]
    accept: bool


# ---------------------------------------------------------------------------
# planted-instance construction


def _pullback_graph(target: SimplicialGraph, size: int, prefix: str,
                    rng: random.Random, keep_prob: float) -> tuple[SimplicialGraph, VertexMap]:
    """A fresh graph plus a strict homomorphism into ``target``.

    Vertices get a random image each; candidate edges are exactly the
    pairs whose images are adjacent, kept independently with
    ``keep_prob``, so the assignment verifies by construction.
    """
    vertices = tuple(f"{prefix}{i}" for i in range(size))
    targets = target.vertices
    if not targets:
        raise AuthError("target graph must have at least one vertex")
    assignment = {v: targets[rng.randrange(len(targets))] for v in vertices}
    edges = []
    for i in range(size):
        for j in range(i + 1, size):
            u, v = vertices[i], vertices[j]
            if target.has_edge(assignment[u], assignment[v]) and rng.random() < keep_prob:
                edges.append((u, v))
    graph = SimplicialGraph(vertices, edges)
    return graph, VertexMap(graph, target, assignment)


def hom_keygen(n1: int, n2: int, seed: int,
               edge_prob: float = DEFAULT_EDGE_PROB,
               keep_prob: float = KEYGEN_KEEP_PROB) -> HomKeyPair:
    """Plant a homomorphism key pair.

    g2 is a random graph on n2 >= 3 vertices with a forced triangle; g1
    is pulled back through a random assignment, so alpha verifies by
    construction.
    """
    if n2 < 3:
        raise AuthError("the target graph needs at least 3 vertices to hold a triangle")
    if n1 < 1:
        raise AuthError("the source graph needs at least 1 vertex")
    rng = random.Random(seed)
    g2_vertices = tuple(f"b{i}" for i in range(n2))
    edges = set()
    for i in range(n2):
        for j in range(i + 1, n2):
            if rng.random() < edge_prob:
                edges.add((g2_vertices[i], g2_vertices[j]))
    corners = rng.sample(range(n2), 3)
    for i in range(3):
        for j in range(i + 1, 3):
            a, b = sorted((corners[i], corners[j]))
            edges.add((g2_vertices[a], g2_vertices[b]))
    g2 = SimplicialGraph(g2_vertices, sorted(edges))
    # an injective assignment (when it fits) keeps the pulled-back edge
    # supply near g2's, so key quality does not collapse on unlucky seeds
    g1_vertices = tuple(f"a{i}" for i in range(n1))
    if n1 <= n2:
        images = rng.sample(g2_vertices, n1)
    else:
        images = [g2_vertices[rng.randrange(n2)] for _ in range(n1)]
    assignment = dict(zip(g1_vertices, images))
    g1_edges = []
    for i in range(n1):
        for j in range(i + 1, n1):
            u, v = g1_vertices[i], g1_vertices[j]
            if g2.has_edge(assignment[u], assignment[v]) and rng.random() < keep_prob:
                g1_edges.append((u, v))
    g1 = SimplicialGraph(g1_vertices, g1_edges)
    return HomKeyPair(g1=g1, g2=g2, alpha=VertexMap(g1, g2, assignment))


def hom_commit(key_g1: SimplicialGraph, size: int, seed: int,
               keep_prob: float = COMMIT_KEEP_PROB) -> tuple[SimplicialGraph, VertexMap]:
    """Fresh session graph G with a withheld homomorphism beta: G -> g1.

    Needs only the public part of the key; the same construction is what
    a challenge-0 cheater uses.
    """
    if size < 1:
        raise AuthError("commitment size must be at least 1")
    rng = random.Random(seed)
    return _pullback_graph(key_g1, size, "c", rng, keep_prob)


def hom_respond(state: RoundState, key: HomKeyPair) -> VertexMap:
    """beta for challenge 0, the composite alpha(beta(.)) for challenge 1."""
    if state.challenge is None:
        raise AuthError("challenge not set")
    beta = state.session
    if not isinstance(beta, VertexMap):
        raise AuthError("round holds no session homomorphism")
    if state.challenge == 0:
        return beta
    return beta.compose(key.alpha)


def hom_verify(g1: SimplicialGraph, g2: SimplicialGraph,
               commitment: SimplicialGraph, challenge: int, response) -> bool:
    """Accept iff the response is a strict homomorphism from the committed
    graph into g1 (challenge 0) or g2 (challenge 1).

    Target correctness means codomain identity, not surjectivity.
    Malformed responses are rejected, never raised on.
    """
    if challenge not in (0, 1):
        raise AuthError(f"challenge must be 0 or 1, got {challenge!r}")
    if not isinstance(response, VertexMap):
        return False
    expected_target = g1 if challenge == 0 else g2
    if response.source != commitment or response.target != expected_target:
        return False
    return verify_graph_homomorphism(response)


def sub_keygen(ambient_size: int, subgroup_size: int, seed: int,
               pattern_edge_prob: float = DEFAULT_EDGE_PROB,
               ambient_edge_prob: float = DEFAULT_EDGE_PROB) -> SubKeyPair:
    """Plant two disjoint induced copies of one random pattern.

    Edges inside each planted subset copy the pattern exactly; every
    other vertex pair (subset to rest, between the two subsets, rest to
    rest) is drawn independently, which cannot disturb either induced
    subgraph. The pairing of the two copies is the private key.
    """
    m = subgroup_size
    if m < 1:
        raise AuthError("subgroup size must be at least 1")
    if ambient_size < 2 * m:
        raise AuthError("ambient graph needs at least twice the subgroup size")
    rng = random.Random(seed)
    vertices = tuple(f"v{i}" for i in range(ambient_size))
    planted = rng.sample(range(ambient_size), 2 * m)
    s1_ids, s2_ids = planted[:m], planted[m:]
    pattern = [(i, j) for i in range(m) for j in range(i + 1, m)
               if rng.random() < pattern_edge_prob]
    inside = {frozenset((a, b)) for ids in (s1_ids, s2_ids) for a in ids for b in ids if a != b}
    edges = []
    for i, j in pattern:
        edges.append((vertices[s1_ids[i]], vertices[s1_ids[j]]))
        edges.append((vertices[s2_ids[i]], vertices[s2_ids[j]]))
    for a in range(ambient_size):
        for b in range(a + 1, ambient_size):
            if frozenset((a, b)) in inside:
                continue
            if rng.random() < ambient_edge_prob:
                edges.append((vertices[a], vertices[b]))
    ambient = SimplicialGraph(vertices, edges)
    alpha = {vertices[s1_ids[i]]: vertices[s2_ids[i]] for i in range(m)}
    return SubKeyPair(
        ambient=ambient,
        s1=VertexSubset(ambient, (vertices[i] for i in s1_ids)),
        s2=VertexSubset(ambient, (vertices[i] for i in s2_ids)),
        alpha=alpha,
    )


def _relabel_induced(ambient: SimplicialGraph, subset: VertexSubset,
                     rng: random.Random) -> tuple[SimplicialGraph, dict[str, str]]:
    members = subset.ordered()
    m = len(members)
    perm = list(range(m))
    rng.shuffle(perm)
    vertices = tuple(f"g{i}" for i in range(m))
    beta = {vertices[i]: members[perm[i]] for i in range(m)}
    edges = [(vertices[i], vertices[j]) for i in range(m) for j in range(i + 1, m)
             if ambient.has_edge(beta[vertices[i]], beta[vertices[j]])]
    return SimplicialGraph(vertices, edges), beta


def sub_commit(key_ambient: SimplicialGraph, key_s1: VertexSubset,
               seed: int) -> tuple[SimplicialGraph, dict[str, str]]:
    """Fresh relabeling G of the induced subgraph on s1, with the
    relabeling bijection beta: V(G) -> s1 withheld."""
    rng = random.Random(seed)
    return _relabel_induced(key_ambient, key_s1, rng)


def sub_respond(state: RoundState, key: SubKeyPair) -> dict[str, str]:
    """beta for challenge 0, alpha after beta for challenge 1."""
    if state.challenge is None:
        raise AuthError("challenge not set")
    beta = state.session
    if not isinstance(beta, Mapping):
        raise AuthError("round holds no session bijection")
    if state.challenge == 0:
        return dict(beta)
    return {v: key.alpha[beta[v]] for v in beta}


def sub_verify(ambient: SimplicialGraph, s1: VertexSubset, s2: VertexSubset,
               commitment: SimplicialGraph, challenge: int, response) -> bool:
    """Accept iff the response maps the committed graph bijectively ONTO
    the declared subset (image-set equality is literal here) preserving
    edges and non-edges against the ambient graph."""
    if challenge not in (0, 1):
        raise AuthError(f"challenge must be 0 or 1, got {challenge!r}")
    if not isinstance(response, Mapping):
        return False
    expected = s1 if challenge == 0 else s2
    verts = commitment.vertices
    if set(response.keys()) != set(verts):
        return False
    images = [response[v] for v in verts]
    if len(set(images)) != len(images):
        return False
    if set(images) != expected.members:
        return False
    for i, u in enumerate(verts):
        for v in verts[i + 1:]:
            if commitment.has_edge(u, v) != ambient.has_edge(response[u], response[v]):
                return False
    return True


# ---------------------------------------------------------------------------
# protocol driver


def _hom_prover(key_public: tuple[SimplicialGraph, SimplicialGraph],
                key: HomKeyPair | None, strategy: str, rng: random.Random,
                size: int, keep_prob: float):
    """One round's commitment plus a responder closure. ``key`` is None
    for cheating strategies: they see only the public part."""
    g1, g2 = key_public

    def junk(commitment: SimplicialGraph, target: SimplicialGraph) -> VertexMap:
        targets = target.vertices
        return VertexMap(commitment, target,
                         {v: targets[rng.randrange(len(targets))] for v in commitment.vertices})

    if strategy == "honest":
        commitment, beta = hom_commit(g1, size, rng.getrandbits(64), keep_prob)

        def respond(c: int) -> VertexMap:
            state = RoundState(commitment=commitment, session=beta, challenge=c)
            return hom_respond(state, key)

        return commitment, beta, respond

    guess = rng.getrandbits(1) if strategy == "cheat-random" else int(strategy[-1])
    if guess == 0:
        commitment, beta = hom_commit(g1, size, rng.getrandbits(64), keep_prob)
        prepared = {0: beta}
    else:
        commitment, gamma = _pullback_graph(g2, size, "c", rng, keep_prob)
        prepared = {1: gamma}

    def respond(c: int) -> VertexMap:
        if c in prepared:
            return prepared[c]
        return junk(commitment, g1 if c == 0 else g2)

    return commitment, prepared.get(0) or prepared.get(1), respond


def _sub_prover(key_public: tuple[SimplicialGraph, VertexSubset, VertexSubset],
                key: SubKeyPair | None, strategy: str, rng: random.Random):
    ambient, s1, s2 = key_public

    def junk(commitment: SimplicialGraph, subset: VertexSubset) -> dict[str, str]:
        members = list(subset.ordered())
        rng.shuffle(members)
        return dict(zip(commitment.vertices, members))

    if strategy == "honest":
        commitment, beta = sub_commit(ambient, s1, rng.getrandbits(64))

        def respond(c: int) -> dict[str, str]:
            state = RoundState(commitment=commitment, session=beta, challenge=c)
            return sub_respond(state, key)

        return commitment, beta, respond

    guess = rng.getrandbits(1) if strategy == "cheat-random" else int(strategy[-1])
    commitment, beta = _relabel_induced(ambient, s1 if guess == 0 else s2, rng)

    def respond(c: int) -> dict[str, str]:
        if c == guess:
            return beta
        return junk(commitment, s1 if c == 0 else s2)

    return commitment, beta, respond


def run_protocol(scheme: str, key: HomKeyPair | SubKeyPair, rounds: int, strategy: str,
                 prover_seed: int, verifier_seed: int, *,
                 commit_size: int | None = None,
                 stop_on_reject: bool = False) -> Transcript:
    """Execute ``rounds`` independent rounds and return the transcript.

    Challenge bits come from the verifier's seeded source; commitments
    from the prover's, so a run is deterministic in the two seeds.
    Cheating strategies never touch the private key. With
    ``stop_on_reject`` the run ends at the first rejected round (the
    overall accept value is unaffected; Monte Carlo callers use this).
    """
    if rounds < 1:
        raise AuthError("need at least one round")
    if strategy not in STRATEGIES:
        raise AuthError(f"unknown strategy {strategy!r}; pick one of {STRATEGIES}")
    if scheme == "hom":
        if not isinstance(key, HomKeyPair):
            raise AuthError("scheme 'hom' needs a HomKeyPair")
        public = (key.g1, key.g2)
    elif scheme == "sub":
        if not isinstance(key, SubKeyPair):
            raise AuthError("scheme 'sub' needs a SubKeyPair")
        public = (key.ambient, key.s1, key.s2)
    else:
        raise AuthError(f"unknown scheme {scheme!r}")
    prng = random.Random(prover_seed)
    vrng = random.Random(verifier_seed)
    private = key if strategy == "honest" else None
    states: list[RoundState] = []
    accept = True
    for _ in range(rounds):
        if scheme == "hom":
            size = commit_size if commit_size is not None else len(key.g1.vertices) + 2
            commitment, session, respond = _hom_prover(public, private, strategy, prng,
                                                       size, COMMIT_KEEP_PROB)
        else:
            commitment, session, respond = _sub_prover(public, private, strategy, prng)
        c = vrng.getrandbits(1)
        response = respond(c)
        if scheme == "hom":
            verdict = hom_verify(key.g1, key.g2, commitment, c, response)
        else:
            verdict = sub_verify(key.ambient, key.s1, key.s2, commitment, c, response)
        states.append(RoundState(commitment=commitment, session=session,
                                 challenge=c, response=response, verdict=verdict))
        if not verdict:
            accept = False
            if stop_on_reject:
                break
    return Transcript(scheme=scheme, rounds=tuple(states), accept=accept)


def acceptance_rate(scheme: str, key, strategy: str, rounds: int, trials: int,
                    seed: int, commit_size: int | None = None) -> float:
    """Fraction of ``trials`` protocol runs that accept."""
    if trials < 1:
        raise AuthError("need at least one trial")
    rng = random.Random(seed)
    accepted = 0
    for _ in range(trials):
        t = run_protocol(scheme, key, rounds, strategy,
                         prover_seed=rng.getrandbits(64),
                         verifier_seed=rng.getrandbits(64),
                         commit_size=commit_size,
                         stop_on_reject=True)
        accepted += t.accept
    return accepted / trials


# ---------------------------------------------------------------------------
# key and transcript files


def format_public_key(key: HomKeyPair | SubKeyPair) -> str:
    if isinstance(key, HomKeyPair):
        parts = ["scheme hom\n", "graph g1\n", format_graph(key.g1),
                 "graph g2\n", format_graph(key.g2)]
        return "".join(parts)
    parts = ["scheme sub\n", "graph ambient\n", format_graph(key.ambient),
             "subset s1 " + " ".join(key.s1.ordered()) + "\n",
             "subset s2 " + " ".join(key.s2.ordered()) + "\n"]
    return "".join(parts)


def parse_public_key(text: str):
    """Returns ('hom', g1, g2) or ('sub', ambient, s1, s2)."""
    lines = text.splitlines()
    if not lines or lines[0].split() != ["scheme", "hom"] and lines[0].split() != ["scheme", "sub"]:
        raise AuthError("expected 'scheme hom' or 'scheme sub' on the first line")
    scheme = lines[0].split()[1]
    sections: dict[str, list[str]] = {}
    subsets: dict[str, list[str]] = {}
    current: list[str] | None = None
    for raw in lines[1:]:
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        fields = line.split()
        if fields[0] == "graph":
            if len(fields) != 2 or fields[1] in sections:
                raise AuthError(f"bad graph section header {raw!r}")
            current = sections.setdefault(fields[1], [])
        elif fields[0] == "subset":
            if len(fields) < 2 or fields[1] in subsets:
                raise AuthError(f"bad subset line {raw!r}")
            subsets[fields[1]] = fields[2:]
        else:
            if current is None:
                raise AuthError(f"content outside any graph section: {raw!r}")
            current.append(line)
    try:
        graphs = {name: parse_graph("\n".join(body)) for name, body in sections.items()}
    except GraphError as e:
        raise AuthError(f"bad graph in key file: {e}") from None
    if scheme == "hom":
        if set(graphs) != {"g1", "g2"} or subsets:
            raise AuthError("hom public key needs exactly the sections g1 and g2")
        return ("hom", graphs["g1"], graphs["g2"])
    if set(graphs) != {"ambient"} or set(subsets) != {"s1", "s2"}:
        raise AuthError("sub public key needs an ambient graph and subsets s1, s2")
    ambient = graphs["ambient"]
    try:
        s1 = VertexSubset(ambient, subsets["s1"])
        s2 = VertexSubset(ambient, subsets["s2"])
    except GraphError as e:
        raise AuthError(f"bad subset in key file: {e}") from None
    return ("sub", ambient, s1, s2)


def format_private_key(key: HomKeyPair | SubKeyPair) -> str:
    if isinstance(key, HomKeyPair):
        assignment = key.alpha.assignment
        order = key.g1.vertices
    else:
        assignment = key.alpha
        order = key.s1.ordered()
    return "".join(f"map {v} {assignment[v]}\n" for v in order)


def parse_private_key(text: str, public) -> VertexMap | dict[str, str]:
    """Parse against a parsed public key tuple; returns alpha."""
    if public[0] == "hom":
        _, g1, g2 = public
        try:
            return parse_vertex_map(text, g1, g2)
        except GraphError as e:
            raise AuthError(f"bad private key: {e}") from None
    _, ambient, s1, s2 = public
    assignment: dict[str, str] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        fields = line.split()
        if fields[0] != "map" or len(fields) != 3:
            raise AuthError(f"line {lineno}: expected 'map <source> <target>'")
        assignment[fields[1]] = fields[2]
    if set(assignment) != s1.members or set(assignment.values()) != s2.members:
        raise AuthError("private key is not a bijection from s1 onto s2")
    return assignment


def format_transcript(t: Transcript) -> str:
    lines = []
    for i, state in enumerate(t.rounds, start=1):
        verdict = "accept" if state.verdict else "reject"
        lines.append(f"round {i} challenge {state.challenge} verdict {verdict}")
    lines.append(f"accept {'true' if t.accept else 'false'}")
    return "\n".join(lines) + "\n"


def parse_transcript(text: str) -> tuple[list[tuple[int, int, bool]], bool]:
    """Returns ([(round, challenge, verdict)], overall accept)."""
    rounds: list[tuple[int, int, bool]] = []
    accept: bool | None = None
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        fields = line.split()
        if fields[0] == "round":
            if (len(fields) != 6 or fields[2] != "challenge" or fields[4] != "verdict"
                    or fields[5] not in ("accept", "reject")):
                raise AuthError(f"bad round line {raw!r}")
            rounds.append((int(fields[1]), int(fields[3]), fields[5] == "accept"))
        elif fields[0] == "accept":
            if len(fields) != 2 or fields[1] not in ("true", "false"):
                raise AuthError(f"bad accept line {raw!r}")
            accept = fields[1] == "true"
        else:
            raise AuthError(f"unknown transcript line {raw!r}")
    if accept is None:
        raise AuthError("transcript missing final accept line")
    return rounds, accept

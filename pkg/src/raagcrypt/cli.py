"""Command-line surface.

Subcommands: graph gen|validate, word check|sample, deal-nn, deal-tn,
decode-share, reconstruct-nn, reconstruct-tn, auth keygen|prove|verify|
simulate, bench word.

Exit codes: 0 success or protocol accept, 1 semantic negative (word
nontrivial, verification reject, validation or reconstruction mismatch),
2 usage or format error. Every randomized subcommand requires an
explicit --seed; there is no ambient randomness and no environment
configuration, so identical invocations produce byte-identical outputs.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import auth, bench, sharing
from .graphs import (
    GraphError,
    format_graph,
    parse_graph,
    format_vertex_map,
    parse_vertex_map,
    random_graph,
    validate_graph,
)
from .raag import Raag, is_trivial, sample_nontrivial_word, sample_trivial_word
from .words import format_word, parse_word

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_USAGE = 2


def _read(path: str) -> str:
    return Path(path).read_text(encoding="utf-8")


def _write(path: Path, text: str) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)


def _emit(text: str, out: str | None) -> None:
    if out:
        _write(Path(out), text)
    else:
        sys.stdout.write(text)


# ---------------------------------------------------------------------------
# graph


def cmd_graph_gen(args) -> int:
    g = random_graph(args.vertices, args.edge_prob, args.seed)
    _emit(format_graph(g), args.out)
    return EXIT_OK


def cmd_graph_validate(args) -> int:
    text = _read(args.file)
    vertices: list[str] = []
    edges: list[tuple[str, str]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        fields = line.split()
        if fields[0] == "vertices":
            vertices.extend(fields[1:])
        elif fields[0] == "edge" and len(fields) == 3:
            edges.append((fields[1], fields[2]))
        else:
            raise GraphError(f"line {lineno}: cannot parse {raw!r}")
    violations = validate_graph(vertices, edges)
    if not violations:
        print("ok")
        return EXIT_OK
    for v in violations:
        print(v)
    return EXIT_NEGATIVE


# ---------------------------------------------------------------------------
# word


def cmd_word_check(args) -> int:
    g = Raag(parse_graph(_read(args.graph)))
    w = parse_word(_read(args.word))
    if is_trivial(g, w):
        print("trivial")
        return EXIT_OK
    print("nontrivial")
    return EXIT_NEGATIVE


def cmd_word_sample(args) -> int:
    g = Raag(parse_graph(_read(args.graph)))
    if args.kind == "trivial":
        w = sample_trivial_word(g, args.length, args.seed)
    else:
        w = sample_nontrivial_word(g, args.length, args.seed)
    _emit(format_word(w) + "\n", args.out)
    return EXIT_OK


# ---------------------------------------------------------------------------
# sharing


def _parse_bits(text: str) -> sharing.BitColumn:
    if not text or any(ch not in "01" for ch in text):
        raise sharing.SharingError(f"secret must be a nonempty bit string, got {text!r}")
    return tuple(int(ch) for ch in text)


def cmd_deal_nn(args) -> int:
    secret = _parse_bits(args.secret)
    setup = sharing.random_dealer_setup_nn(args.participants, len(secret),
                                           args.generators, args.edge_prob, args.seed)
    shares = sharing.deal_nn(setup, secret, args.seed, word_length=args.word_length)
    out = Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    for share in shares:
        _write(out / f"share_p{share.participant}.txt", sharing.format_share(share))
        _write(out / f"secret_graph_p{share.participant}.txt", format_graph(share.graph))
    print(f"wrote {len(shares)} shares to {out}")
    return EXIT_OK


def cmd_deal_tn(args) -> int:
    rng_setup = sharing.random_dealer_setup_nn(args.participants, 1, args.generators,
                                               args.edge_prob, args.seed)
    _, shares = sharing.deal_tn(rng_setup.participant_graphs, args.secret, args.prime,
                                args.threshold, args.seed, k=args.bits,
                                word_length=args.word_length)
    out = Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    for share in shares:
        _write(out / f"share_p{share.participant}.txt", sharing.format_share(share))
        _write(out / f"secret_graph_p{share.participant}.txt", format_graph(share.graph))
    print(f"wrote {len(shares)} shares to {out}")
    return EXIT_OK


def cmd_decode_share(args) -> int:
    graph = parse_graph(_read(args.graph))
    share = sharing.parse_share(_read(args.share), graph)
    if isinstance(share, sharing.ShareTN):
        i, y = sharing.decode_share_tn(share)
        text = (f"scheme tn\nparticipant {i}\n"
                f"bits {''.join(map(str, sharing.int_to_bits(y, len(share.words))))}\n"
                f"p {share.p}\nt {share.t}\nvalue {y}\n")
    else:
        bits = sharing.decode_share_nn(share)
        text = (f"scheme nn\nparticipant {share.participant}\n"
                f"bits {''.join(map(str, bits))}\n")
    _emit(text, args.out)
    return EXIT_OK


def _parse_decoded(path: str) -> dict[str, str]:
    fields: dict[str, str] = {}
    for raw in _read(path).splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        key, _, value = line.partition(" ")
        if not value:
            raise sharing.SharingError(f"{path}: cannot parse line {raw!r}")
        fields[key] = value
    for required in ("scheme", "bits"):
        if required not in fields:
            raise sharing.SharingError(f"{path}: missing '{required}' line")
    return fields


def cmd_reconstruct_nn(args) -> int:
    columns = []
    for path in args.files:
        fields = _parse_decoded(path)
        if fields["scheme"] != "nn":
            raise sharing.SharingError(f"{path}: not an nn share")
        columns.append(_parse_bits(fields["bits"]))
    secret = sharing.reconstruct_nn(columns)
    text = "".join(map(str, secret))
    print(text)
    if args.expect is not None and text != args.expect:
        print(f"mismatch: expected {args.expect}", file=sys.stderr)
        return EXIT_NEGATIVE
    return EXIT_OK


def cmd_reconstruct_tn(args) -> int:
    points = []
    p = t = None
    for path in args.files:
        fields = _parse_decoded(path)
        if fields["scheme"] != "tn" or "p" not in fields or "t" not in fields:
            raise sharing.SharingError(f"{path}: not a tn share")
        if p is None:
            p, t = int(fields["p"]), int(fields["t"])
        elif (int(fields["p"]), int(fields["t"])) != (p, t):
            raise sharing.SharingError(f"{path}: inconsistent p or t across shares")
        points.append((int(fields["participant"]), sharing.bits_to_int(_parse_bits(fields["bits"]))))
    secret = sharing.lagrange_reconstruct(points, p, t)
    print(secret)
    if args.expect is not None and secret != args.expect:
        print(f"mismatch: expected {args.expect}", file=sys.stderr)
        return EXIT_NEGATIVE
    return EXIT_OK


# ---------------------------------------------------------------------------
# auth


def cmd_auth_keygen(args) -> int:
    if args.scheme == "hom":
        key = auth.hom_keygen(args.g1_size, args.g2_size, args.seed)
    else:
        key = auth.sub_keygen(args.ambient_size, args.subgroup_size, args.seed)
    out = Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    _write(out / "public_key.txt", auth.format_public_key(key))
    _write(out / "private_key.txt", auth.format_private_key(key))
    print(f"wrote key pair to {out}")
    return EXIT_OK


def _load_key(public_path: str, private_path: str):
    public = auth.parse_public_key(_read(public_path))
    alpha = auth.parse_private_key(_read(private_path), public)
    if public[0] == "hom":
        return auth.HomKeyPair(g1=public[1], g2=public[2], alpha=alpha)
    return auth.SubKeyPair(ambient=public[1], s1=public[2], s2=public[3], alpha=alpha)


def cmd_auth_prove(args) -> int:
    key = _load_key(args.public, args.private)
    scheme = "hom" if isinstance(key, auth.HomKeyPair) else "sub"
    transcript = auth.run_protocol(scheme, key, args.rounds, "honest",
                                   prover_seed=args.seed,
                                   verifier_seed=args.challenge_seed)
    out = Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    for i, state in enumerate(transcript.rounds, start=1):
        _write(out / f"round{i}_commitment.txt", format_graph(state.commitment))
        response = state.response
        if isinstance(response, auth.VertexMap):
            _write(out / f"round{i}_response.txt", format_vertex_map(response))
        else:
            lines = "".join(f"map {v} {response[v]}\n" for v in state.commitment.vertices)
            _write(out / f"round{i}_response.txt", lines)
    _write(out / "transcript.txt", auth.format_transcript(transcript))
    print(f"wrote {len(transcript.rounds)} rounds to {out}")
    return EXIT_OK if transcript.accept else EXIT_NEGATIVE


def _parse_response_map(text: str) -> dict[str, str]:
    assignment: dict[str, str] = {}
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        fields = line.split()
        if fields[0] != "map" or len(fields) != 3 or fields[1] in assignment:
            raise auth.AuthError(f"bad response line {raw!r}")
        assignment[fields[1]] = fields[2]
    return assignment


def cmd_auth_verify(args) -> int:
    public = auth.parse_public_key(_read(args.public))
    rounds, _ = auth.parse_transcript(_read(Path(args.dir) / "transcript.txt"))
    all_ok = True
    for i, challenge, _ in rounds:
        commitment = parse_graph(_read(Path(args.dir) / f"round{i}_commitment.txt"))
        response_text = _read(Path(args.dir) / f"round{i}_response.txt")
        verdict = False
        try:
            if public[0] == "hom":
                _, g1, g2 = public
                target = g1 if challenge == 0 else g2
                response = parse_vertex_map(response_text, commitment, target)
                verdict = auth.hom_verify(g1, g2, commitment, challenge, response)
            else:
                _, ambient, s1, s2 = public
                response = _parse_response_map(response_text)
                verdict = auth.sub_verify(ambient, s1, s2, commitment, challenge, response)
        except (GraphError, auth.AuthError):
            verdict = False  # malformed response is a rejection, not an error
        all_ok = all_ok and verdict
        print(f"round {i} challenge {challenge} verdict {'accept' if verdict else 'reject'}")
    print(f"accept {'true' if all_ok else 'false'}")
    return EXIT_OK if all_ok else EXIT_NEGATIVE


def cmd_auth_simulate(args) -> int:
    import random as _random
    rng = _random.Random(args.seed)
    if args.scheme == "hom":
        key = auth.hom_keygen(args.g1_size, args.g2_size, rng.getrandbits(64))
    else:
        key = auth.sub_keygen(args.ambient_size, args.subgroup_size, rng.getrandbits(64))
    rate = auth.acceptance_rate(args.scheme, key, args.strategy, args.rounds,
                                args.trials, rng.getrandbits(64))
    print(f"strategy {args.strategy} rounds {args.rounds} trials {args.trials} "
          f"acceptance {rate:.6f}")
    return EXIT_OK


# ---------------------------------------------------------------------------
# bench


def cmd_bench_word(args) -> int:
    graph = parse_graph(_read(args.graph))
    lengths = [int(x) for x in args.lengths.split(",") if x]
    result = bench.run_word_benchmark(graph, lengths, args.repetitions, args.seed)
    print(f"{'length':>10} {'mean_s':>12}  samples_s")
    for point in result.points:
        samples = " ".join(f"{s:.6f}" for s in point.samples)
        print(f"{point.length:>10} {point.mean:>12.6f}  {samples}")
    print(f"loglog_slope {result.slope:.4f}")
    return EXIT_OK


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="raagcrypt",
                                     description="RAAG word problem, secret sharing, and authentication tools")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("graph", help="graph utilities")
    gsub = p.add_subparsers(dest="graph_command", required=True)
    g = gsub.add_parser("gen", help="generate a random graph")
    g.add_argument("--vertices", type=int, required=True)
    g.add_argument("--edge-prob", type=float, required=True)
    g.add_argument("--seed", type=int, required=True)
    g.add_argument("--out")
    g.set_defaults(func=cmd_graph_gen)
    g = gsub.add_parser("validate", help="check a graph file against the invariants")
    g.add_argument("file")
    g.set_defaults(func=cmd_graph_validate)

    p = sub.add_parser("word", help="word utilities")
    wsub = p.add_subparsers(dest="word_command", required=True)
    w = wsub.add_parser("check", help="decide triviality of a word in the graph's group")
    w.add_argument("graph")
    w.add_argument("word")
    w.set_defaults(func=cmd_word_check)
    w = wsub.add_parser("sample", help="sample a trivial or nontrivial word")
    w.add_argument("--graph", required=True)
    w.add_argument("--kind", choices=("trivial", "nontrivial"), required=True)
    w.add_argument("--length", type=int, required=True)
    w.add_argument("--seed", type=int, required=True)
    w.add_argument("--out")
    w.set_defaults(func=cmd_word_sample)

    p = sub.add_parser("deal-nn", help="deal an (n,n) XOR-split secret as word columns")
    p.add_argument("--secret", required=True, help="bit string, e.g. 1011")
    p.add_argument("--participants", type=int, required=True)
    p.add_argument("--generators", type=int, required=True)
    p.add_argument("--edge-prob", type=float, default=0.5)
    p.add_argument("--word-length", type=int, default=sharing.DEFAULT_WORD_LENGTH)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--out-dir", required=True)
    p.set_defaults(func=cmd_deal_nn)

    p = sub.add_parser("deal-tn", help="deal a (t,n) Shamir-split secret as word columns")
    p.add_argument("--secret", type=int, required=True)
    p.add_argument("--prime", type=int, required=True)
    p.add_argument("--threshold", type=int, required=True)
    p.add_argument("--participants", type=int, required=True)
    p.add_argument("--generators", type=int, required=True)
    p.add_argument("--bits", type=int, default=None)
    p.add_argument("--edge-prob", type=float, default=0.5)
    p.add_argument("--word-length", type=int, default=sharing.DEFAULT_WORD_LENGTH)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--out-dir", required=True)
    p.set_defaults(func=cmd_deal_tn)

    p = sub.add_parser("decode-share", help="decode a share file with its secret graph")
    p.add_argument("--share", required=True)
    p.add_argument("--graph", required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_decode_share)

    p = sub.add_parser("reconstruct-nn", help="XOR decoded columns back into the secret")
    p.add_argument("files", nargs="+")
    p.add_argument("--expect", help="bit string to compare against")
    p.set_defaults(func=cmd_reconstruct_nn)

    p = sub.add_parser("reconstruct-tn", help="interpolate the secret from decoded shares")
    p.add_argument("files", nargs="+")
    p.add_argument("--expect", type=int)
    p.set_defaults(func=cmd_reconstruct_tn)

    p = sub.add_parser("auth", help="authentication schemes")
    asub = p.add_subparsers(dest="auth_command", required=True)
    a = asub.add_parser("keygen", help="generate a planted key pair")
    a.add_argument("--scheme", choices=("hom", "sub"), required=True)
    a.add_argument("--seed", type=int, required=True)
    a.add_argument("--out-dir", required=True)
    a.add_argument("--g1-size", type=int, default=8)
    a.add_argument("--g2-size", type=int, default=8)
    a.add_argument("--ambient-size", type=int, default=16)
    a.add_argument("--subgroup-size", type=int, default=7)
    a.set_defaults(func=cmd_auth_keygen)
    a = asub.add_parser("prove", help="run the honest prover, writing round files")
    a.add_argument("--public", required=True)
    a.add_argument("--private", required=True)
    a.add_argument("--rounds", type=int, required=True)
    a.add_argument("--seed", type=int, required=True)
    a.add_argument("--challenge-seed", type=int, required=True)
    a.add_argument("--out-dir", required=True)
    a.set_defaults(func=cmd_auth_prove)
    a = asub.add_parser("verify", help="re-verify a recorded protocol run")
    a.add_argument("--public", required=True)
    a.add_argument("--dir", required=True)
    a.set_defaults(func=cmd_auth_verify)
    a = asub.add_parser("simulate", help="estimate acceptance rates for prover strategies")
    a.add_argument("--scheme", choices=("hom", "sub"), required=True)
    a.add_argument("--strategy", choices=auth.STRATEGIES, required=True)
    a.add_argument("--rounds", type=int, required=True)
    a.add_argument("--trials", type=int, required=True)
    a.add_argument("--seed", type=int, required=True)
    a.add_argument("--g1-size", type=int, default=8)
    a.add_argument("--g2-size", type=int, default=8)
    a.add_argument("--ambient-size", type=int, default=16)
    a.add_argument("--subgroup-size", type=int, default=7)
    a.set_defaults(func=cmd_auth_simulate)

    p = sub.add_parser("bench", help="benchmarks")
    bsub = p.add_subparsers(dest="bench_command", required=True)
    b = bsub.add_parser("word", help="time the solver across word lengths and fit a slope")
    b.add_argument("--graph", required=True)
    b.add_argument("--lengths", required=True, help="comma-separated, ascending, even")
    b.add_argument("--repetitions", type=int, default=5)
    b.add_argument("--seed", type=int, required=True)
    b.set_defaults(func=cmd_bench_word)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())

"""Command-line front end.

Two input formats: chain JSON ({"states": [...], "P": [[...]]}) and a
graph edge-list TSV whose first line is the directive "#undirected" or
"#directed", followed by src<TAB>dst<TAB>weight records. Commands that
need a chain accept a graph file too and normalize it into its random
walk first.

Reports are JSON with sorted keys and floats fixed at 12 significant
digits, so identical inputs and flags produce byte-identical output.
`spectrum` and `taxonomy` can instead emit CSV rows (re, im, abs, label)
for unit-circle plots. Exit codes: 0 success, 2 invalid input, 3 numeric
failure.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys

import numpy as np

from . import __version__, errors
from .absorbing import canonical_form, fundamental_matrix
from .chain import (
    TransitionMatrix,
    build_chain,
    evolve,
    occupancy,
    point_mass,
    sample,
    validate_distribution,
)
from .demo import line_chain
from .graph import WeightedDigraph, build_graph, random_walk, same_rw_set
from .laplacian import (
    build_laplacian,
    directed_laplacian,
    gft,
    smooth_spectrum,
)
from .reversal import k_matrix, reversibility, reversibilize, time_reverse
from .spectral import decompose, perron_report, taxonomy
from .stationary import equal_weight, stationary_basis
from .structure import classify
from .surfer import SurferConfig, google_matrix, pagerank

DEFAULT_ROW_TOL = 1e-9


# ---------------------------------------------------------------------------
# input parsing

def _sha256(path: str) -> str:
    with open(path, "rb") as fh:
        return hashlib.sha256(fh.read()).hexdigest()


def parse_chain_json(path: str) -> TransitionMatrix:
    with open(path) as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise errors.ParseError(exc.lineno, exc.msg) from None
    if not isinstance(doc, dict) or "states" not in doc or "P" not in doc:
        raise errors.ParseError(1, 'chain JSON needs "states" and "P" keys')
    return build_chain(doc["states"], doc["P"])


def parse_graph_tsv(path: str) -> WeightedDigraph:
    with open(path) as fh:
        lines = fh.read().splitlines()
    if not lines or lines[0].strip() not in ("#undirected", "#directed"):
        raise errors.ParseError(1, 'first line must be "#undirected" or "#directed"')
    undirected = lines[0].strip() == "#undirected"
    edges = []
    labels: list[str] = []
    for no, line in enumerate(lines[1:], start=2):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split("\t")
        if len(parts) != 3:
            raise errors.ParseError(no, "expected src<TAB>dst<TAB>weight")
        src, dst, raw = parts
        try:
            weight = float(raw)
        except ValueError:
            raise errors.ParseError(no, f"bad weight {raw!r}") from None
        if weight <= 0:
            raise errors.ParseError(no, "weights must be positive")
        for lab in (src, dst):
            if lab not in labels:
                labels.append(lab)
        edges.append((src, dst, weight))
    idx = {lab: i for i, lab in enumerate(labels)}
    w = np.zeros((len(labels), len(labels)))
    for src, dst, weight in edges:
        i, j = idx[src], idx[dst]
        w[i, j] += weight
        if undirected and i != j:  # self-loops stay directed, counted once
            w[j, i] += weight
    return build_graph(labels, w)


def parse_input(path: str) -> TransitionMatrix | WeightedDigraph:
    """Sniff the format: JSON object for chains, directive TSV for graphs."""
    with open(path) as fh:
        head = fh.read(1024).lstrip()
    if head.startswith("{"):
        return parse_chain_json(path)
    return parse_graph_tsv(path)


def _as_chain(obj) -> TransitionMatrix:
    if isinstance(obj, WeightedDigraph):
        return random_walk(obj)
    return obj


def _as_graph(obj) -> WeightedDigraph:
    if isinstance(obj, TransitionMatrix):
        raise errors.ValidationError("this command needs a graph TSV input")
    return obj


# ---------------------------------------------------------------------------
# deterministic serialization

def _round12(x: float) -> float:
    if x == 0:
        return 0.0  # normalize -0.0
    return float(f"{x:.12g}")


def _jsonable(obj):
    if isinstance(obj, (np.bool_, bool)):
        return bool(obj)
    if isinstance(obj, (np.floating, float)):
        return _round12(float(obj))
    if isinstance(obj, (np.integer, int)):
        return int(obj)
    if isinstance(obj, complex):
        return {"re": _round12(obj.real), "im": _round12(obj.imag)}
    if isinstance(obj, np.ndarray):
        return _jsonable(obj.tolist())
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    return obj


def make_report(command: str, digest: str, result, tolerances: dict) -> str:
    report = {
        "command": command,
        "input_digest": digest,
        "result": _jsonable(result),
        "tolerances": _jsonable(tolerances),
        "tool_version": __version__,
    }
    return json.dumps(report, sort_keys=True, separators=(",", ":"))


def chain_document(chain: TransitionMatrix) -> dict:
    return {"states": list(chain.labels), "P": chain.p}


# ---------------------------------------------------------------------------
# command implementations; each returns a result payload

def _structure_payload(chain: TransitionMatrix) -> dict:
    st = classify(chain)
    return {
        "classes": [[chain.labels[i] for i in members] for members in st.classes],
        "recurrent_classes": list(st.recurrent),
        "class_periods": list(st.period),
        "condensation_edges": sorted(st.condensation_edges),
        "irreducible": st.irreducible,
        "recurrent": st.recurrent_chain,
        "periodicity": st.periodicity,
        "period": st.chain_period,
        "ergodic": st.ergodic,
        "absorbing_states": [chain.labels[i] for i in st.absorbing_states],
        "absorbing": st.absorbing_chain,
    }


def _spectrum_rows(chain: TransitionMatrix) -> list[dict]:
    dec = decompose(chain)
    labels = taxonomy(dec)
    rows = []
    for j in dec.order:
        lam = dec.values[j]
        rows.append({"re": lam.real, "im": lam.imag, "abs": abs(lam),
                     "label": labels[j]})
    return rows


def _parse_vector(text: str) -> np.ndarray:
    try:
        return np.array([float(v) for v in text.split(",")])
    except ValueError:
        raise errors.ValidationError(f"bad numeric list {text!r}") from None


def run_command(args: argparse.Namespace) -> tuple[str, str]:
    """Execute one subcommand; returns (payload_text, media) where media
    is "json" or "csv"."""
    cmd = args.command
    seed = args.seed
    if seed is None:
        seed = int(os.environ.get("CHAINS_SEED", "0"))

    if cmd == "demo-line-chain":
        chain = line_chain(n=args.n, p_right=args.p_right,
                           perturb=args.perturb, seed=seed)
        st = classify(chain)
        basis = stationary_basis(chain, st)
        pi = equal_weight(basis)
        lap = directed_laplacian(chain, basis)
        spec = smooth_spectrum(lap)
        y0 = spec.vectors[:, 0]
        rt0 = spec.right_transformed[:, 0]
        rt0 = rt0 / rt0[0]
        p_residuals = [
            float(np.max(np.abs(chain.p @ spec.right_transformed[:, j]
                                - (1.0 - spec.values[j]) * spec.right_transformed[:, j])))
            for j in range(min(args.n, 8))
        ]
        result = {
            "chain": chain_document(chain),
            "stationary": pi,
            "stationary_strictly_increasing": bool(np.all(np.diff(pi) > 0)),
            "laplacian_values_head": spec.values[:8],
            "lambda0_vector": y0,
            "lambda0_right_transformed": rt0,
            "walk_eigen_residuals_head": p_residuals,
        }
        digest = "-"
        tol = {"row_sum": DEFAULT_ROW_TOL}
        return make_report(cmd, digest, result, tol), "json"

    obj = parse_input(args.input)
    digest = _sha256(args.input)
    tol = {"row_sum": args.tol}

    if cmd == "validate":
        kind = "graph" if isinstance(obj, WeightedDigraph) else "chain"
        n = obj.n
        result = {"ok": True, "kind": kind, "n": n}
        if kind == "graph":
            result.update(volume=obj.volume, undirected=obj.is_undirected,
                          balanced=obj.is_balanced)
        return make_report(cmd, digest, result, tol), "json"

    if cmd == "rwset":
        g1 = _as_graph(obj)
        g2 = _as_graph(parse_input(args.other))
        scaling = same_rw_set(g1.w, g2.w)
        result = {"same_random_walk_set": scaling is not None,
                  "scaling": scaling}
        return make_report(cmd, digest, result, {"rel": 1e-10}), "json"

    if cmd == "laplacian" and args.variant != "directed":
        g = _as_graph(obj)
        lap = build_laplacian(g, args.variant)
        result = {"variant": args.variant, "matrix": lap.m,
                  "degrees": lap.scale}
        return make_report(cmd, digest, result, tol), "json"

    if cmd in ("embed", "gft") and isinstance(obj, WeightedDigraph) \
            and obj.is_undirected:
        lap = build_laplacian(obj, "normalized")
    else:
        lap = None

    chain = _as_chain(obj)

    if cmd == "classify":
        return make_report(cmd, digest, _structure_payload(chain), tol), "json"

    if cmd == "stationary":
        st = classify(chain)
        basis = stationary_basis(chain, st)
        result = {
            "unique": basis.unique,
            "class_ids": list(basis.class_ids),
            "vectors": basis.vectors,
            "equal_weight_combination": equal_weight(basis),
        }
        return make_report(cmd, digest, result, {"stationarity": 1e-10}), "json"

    if cmd in ("spectrum", "taxonomy"):
        rows = _spectrum_rows(chain)
        if args.format == "csv":
            lines = ["re,im,abs,label"]
            for r in rows:
                lines.append(f"{_round12(r['re'])!r},{_round12(r['im'])!r},"
                             f"{_round12(r['abs'])!r},{r['label']}")
            return "\n".join(lines), "csv"
        dec = decompose(chain)
        st = classify(chain)
        n_rec = sum(dec_rec for dec_rec in st.recurrent)
        result = {"eigenvalues": rows,
                  "diagonalizable": dec.pairs.diagonalizable,
                  "perron": perron_report(dec, recurrent_classes=n_rec)}
        return make_report(cmd, digest, result, {"epsilon": 1e-8}), "json"

    if cmd == "evolve":
        if args.start is not None:
            mu = point_mass(chain, args.start)
        elif args.mu is not None:
            mu = validate_distribution(_parse_vector(args.mu), chain.n)
        else:
            raise errors.ValidationError("evolve needs --start or --mu")
        out = evolve(chain, mu, args.steps)
        result = {"steps": args.steps, "distribution": out,
                  "states": list(chain.labels)}
        return make_report(cmd, digest, result, tol), "json"

    if cmd == "simulate":
        if args.start is None:
            raise errors.ValidationError("simulate needs --start")
        if args.trajectories > 1:
            occ = occupancy(chain, args.start, args.length, seed,
                            args.trajectories)
            result = {"seed": seed, "trajectories": args.trajectories,
                      "length": args.length, "states": list(chain.labels),
                      "occupancy": occ}
        else:
            path = sample(chain, args.start, args.length, seed)
            result = {"seed": seed, "path": path}
        return make_report(cmd, digest, result, tol), "json"

    if cmd in ("reverse", "reversibilize", "kmatrix"):
        st = classify(chain)
        basis = stationary_basis(chain, st)
        if cmd == "reverse":
            out = time_reverse(chain, st, basis)
            result = {"chain": chain_document(out)}
        elif cmd == "reversibilize":
            out = reversibilize(chain, basis, args.mode)
            result = {"mode": args.mode, "chain": chain_document(out)}
        else:
            kern = k_matrix(chain, basis)
            rep = reversibility(chain, st, basis)
            result = {"k": kern.k,
                      "symmetric": bool(np.max(np.abs(kern.k - kern.k.T)) <= 1e-10),
                      "reversible": rep.reversible,
                      "semi_reversible": rep.semi_reversible,
                      "db_residual": rep.db_residual,
                      "witness": rep.witness}
        return make_report(cmd, digest, result, {"db": 1e-9}), "json"

    if cmd == "laplacian":  # directed variant on a chain
        st = classify(chain)
        basis = stationary_basis(chain, st)
        lap_dir = directed_laplacian(chain, basis)
        result = {"variant": "directed", "matrix": lap_dir.m,
                  "pi_used": lap_dir.pi_used}
        return make_report(cmd, digest, result, tol), "json"

    if cmd == "embed":
        if lap is None:
            st = classify(chain)
            basis = stationary_basis(chain, st)
            lap = directed_laplacian(chain, basis)
        spec = smooth_spectrum(lap, args.k)
        result = {"values": spec.values,
                  "coordinates": spec.right_transformed}
        return make_report(cmd, digest, result, tol), "json"

    if cmd == "gft":
        if args.signal is None:
            raise errors.ValidationError("gft needs --signal v1,v2,...")
        if lap is None:
            st = classify(chain)
            basis = stationary_basis(chain, st)
            lap = directed_laplacian(chain, basis)
        spec = smooth_spectrum(lap)
        coeffs = gft(spec, _parse_vector(args.signal))
        result = {"coefficients": coeffs, "values": spec.values}
        return make_report(cmd, digest, result, tol), "json"

    if cmd == "pagerank":
        tel = None
        if args.teleport is not None:
            tel = validate_distribution(_parse_vector(args.teleport), chain.n)
        cfg = SurferConfig(alpha=args.damping, teleport=tel)
        gm = google_matrix(chain, cfg)
        pi = pagerank(chain, cfg, tol=args.pr_tol)
        result = {"damping": args.damping, "pagerank": pi,
                  "states": list(chain.labels),
                  "residual_l1": float(np.sum(np.abs(pi @ gm.p - pi)))}
        if chain.n <= 16:
            result["google_matrix"] = gm.p
        return make_report(cmd, digest, result, {"power": args.pr_tol}), "json"

    if cmd == "absorb":
        st = classify(chain)
        dec = canonical_form(chain, st)
        fm = fundamental_matrix(dec)
        result = {
            "permutation": [chain.labels[i] for i in dec.permutation],
            "transient_count": dec.t,
            "absorbing_count": dec.a,
            "q": dec.q,
            "r": dec.r,
            "fundamental": fm.n,
            "expected_steps": fm.expected_steps,
        }
        return make_report(cmd, digest, result, tol), "json"

    raise errors.ValidationError(f"unknown command {cmd!r}")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="chainkit",
        description="Analyze finite Markov chains and random walks on "
                    "weighted directed graphs.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, needs_input=True, **kwargs):
        p = sub.add_parser(name, **kwargs)
        if needs_input:
            p.add_argument("input", help="chain JSON or graph TSV file")
        p.add_argument("--tol", type=float, default=DEFAULT_ROW_TOL,
                       help="row-sum validation tolerance")
        p.add_argument("--seed", type=int, default=None,
                       help="RNG seed (falls back to CHAINS_SEED, then 0)")
        p.add_argument("--format", choices=["json", "csv"], default="json")
        return p

    add("validate", help="parse and validate an input file")
    add("classify", help="communicating classes, recurrence, periodicity")
    add("stationary", help="stationary distribution basis")
    add("spectrum", help="eigenvalues with taxonomy labels")
    add("taxonomy", help="eigenvalue taxonomy (alias view of spectrum)")

    p = add("evolve", help="push a distribution forward k steps")
    p.add_argument("--start", help="start state label (point mass)")
    p.add_argument("--mu", help="comma-separated start distribution")
    p.add_argument("--steps", type=int, default=1)

    p = add("simulate", help="sample trajectories / ensemble occupancy")
    p.add_argument("--start", required=True)
    p.add_argument("--length", type=int, default=10)
    p.add_argument("--trajectories", type=int, default=1)

    add("reverse", help="time-reversed chain")
    p = add("reversibilize", help="additive or multiplicative reversibilization")
    p.add_argument("--mode", choices=["additive", "multiplicative"],
                   default="additive")
    add("kmatrix", help="symmetrized kernel and reversibility report")

    p = add("laplacian", help="graph Laplacian matrix")
    p.add_argument("--variant", choices=["normalized", "unnormalized", "directed"],
                   default="normalized")

    p = add("embed", help="smoothest Laplacian eigenvector coordinates")
    p.add_argument("--k", type=int, default=2)

    p = add("gft", help="graph Fourier transform of a signal")
    p.add_argument("--signal", help="comma-separated signal values")

    p = add("pagerank", help="teleporting-walk stationary distribution")
    p.add_argument("--damping", type=float, default=0.85)
    p.add_argument("--teleport", help="comma-separated teleport distribution")
    p.add_argument("--pr-tol", type=float, default=1e-12)

    add("absorb", help="canonical form and fundamental matrix")

    p = add("rwset", help="compare two graphs for random-walk equivalence")
    p.add_argument("--other", required=True, help="second graph TSV file")

    p = add("demo-line-chain", needs_input=False,
            help="generate a biased line chain and its Laplacian tables")
    p.add_argument("--n", type=int, default=100)
    p.add_argument("--p-right", type=float, default=0.52)
    p.add_argument("--perturb", type=float, default=0.0)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        payload, _media = run_command(args)
    except (errors.ValidationError, errors.NotRecurrent, errors.NotAbsorbing,
            FileNotFoundError, IsADirectoryError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (errors.NumericError, errors.CycleCapExceeded) as exc:
        print(f"numeric failure: {exc}", file=sys.stderr)
        return 3
    print(payload)
    return 0


if __name__ == "__main__":
    sys.exit(main())

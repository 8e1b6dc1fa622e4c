"""Command-line front end: classification reports, metric emission, the
Klein-Gordon demonstration pipeline, and ensemble verification runs.

Matrices travel as JSON {"dim": n, "re": [[...]], "im": [[...]]} with both
parts mandatory (row-major).  Reports are schema-versioned JSON on stdout.
Exit codes: 0 success / full pass, 1 property-suite failure, 2 input error,
3 numerical failure.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys

import numpy as np

from . import __version__
from .errors import (
    EigFailure,
    InvalidGrid,
    ParseError,
    PseudohermError,
)
from .kleingordon import (
    fv_hamiltonian,
    make_grid,
    pd_inner,
    kg_inner,
    random_state,
    evolve,
    sigma3_metric,
)
from .linalg import KAPPA_MAX, eig_full, herm_residual
from .metrics import (
    OperatorClass,
    REALITY_TOL,
    antilinear_residual,
    antilinear_symmetry,
    build_general_metric,
    build_positive_metric,
    classify,
    hermitize,
    pair_spectrum,
    verify_intertwining,
)
from .physical import indefinite_physical_set, restrict_to_physical
from .suites import make_ensemble, run_equivalence_suite

EXIT_OK = 0
EXIT_SUITE_FAIL = 1
EXIT_INPUT = 2
EXIT_NUMERIC = 3

DEFAULT_SEED = 1729
SCHEMA_VERSION = 1


# ---------------------------------------------------------------------------
# matrix file I/O

def matrix_to_json(M) -> dict:
    M = np.asarray(M, dtype=complex)
    return {"dim": M.shape[0], "re": M.real.tolist(), "im": M.imag.tolist()}


def matrix_from_json(data) -> np.ndarray:
    if not isinstance(data, dict):
        raise ParseError("matrix file must hold a JSON object")
    for key in ("dim", "re", "im"):
        if key not in data:
            raise ParseError(f"matrix object is missing the mandatory key {key!r}")
    n = data["dim"]
    re = np.asarray(data["re"], dtype=float)
    im = np.asarray(data["im"], dtype=float)
    if re.shape != (n, n) or im.shape != (n, n):
        raise ParseError(
            f"dimension mismatch: dim={n} but re has shape {re.shape} and im {im.shape}"
        )
    M = re + 1j * im
    if not np.all(np.isfinite(M.real)) or not np.all(np.isfinite(M.imag)):
        raise ParseError("matrix has non-finite entries")
    return M


def load_matrix(path) -> tuple[np.ndarray, str]:
    try:
        with open(path, "rb") as fh:
            raw = fh.read()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from exc
    digest = hashlib.sha256(raw).hexdigest()
    try:
        data = json.loads(raw.decode("utf-8"))
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: {exc.msg}", line=exc.lineno, column=exc.colno) from exc
    return matrix_from_json(data), digest


def save_matrix(M, path):
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(matrix_to_json(M), fh)
        fh.write("\n")


# ---------------------------------------------------------------------------
# report assembly

def _new_report(digest=None) -> dict:
    return {
        "schema": SCHEMA_VERSION,
        "input_digest": digest,
        "classification": None,
        "residuals": {},
        "metric": None,
        "signature": None,
        "spectrum": None,
        "notes": "",
    }


def _params_digest(params: dict) -> str:
    payload = json.dumps(params, sort_keys=True).encode("utf-8")
    return hashlib.sha256(payload).hexdigest()


def _spectrum_list(eigenvalues) -> list:
    order = np.argsort(eigenvalues.real + 1e-12 * eigenvalues.imag)
    return [[float(lam.real), float(lam.imag)] for lam in eigenvalues[order]]


def _emit(report, args) -> None:
    if getattr(args, "format", "json") == "json":
        json.dump(report, sys.stdout, indent=2)
        sys.stdout.write("\n")


def _attach_metric(report, H, S, pairing, kind) -> None:
    if kind in (OperatorClass.HERMITIAN, OperatorClass.QUASI_HERMITIAN):
        eta = build_positive_metric(S)
    else:
        eta = build_general_metric(S, pairing)
    report["metric"] = matrix_to_json(eta.matrix)
    report["signature"] = list(eta.signature)
    report["residuals"]["intertwining"] = verify_intertwining(H, eta)
    report["residuals"]["metric_selfadjoint"] = eta.selfadjoint_residual


# ---------------------------------------------------------------------------
# commands

def cmd_classify(args) -> tuple[dict, int]:
    H, digest = load_matrix(args.path)
    report = _new_report(digest)
    cls = classify(H, tol=args.tol, kappa_max=args.kappa_max)
    report["classification"] = cls.kind.value
    report["residuals"]["hermiticity"] = cls.diagnostics["hermiticity_residual"]
    report["residuals"]["diag_score"] = cls.diagnostics["diag_score"]
    S = eig_full(H)
    report["spectrum"] = _spectrum_list(S.eigenvalues)
    if args.emit_metric:
        if cls.kind in (OperatorClass.NOT_PSEUDO_HERMITIAN,
                        OperatorClass.NON_DIAGONALIZABLE):
            report["notes"] = f"no metric emitted: operator is {cls.kind.value}"
        else:
            _attach_metric(report, H, S, pair_spectrum(S, args.tol), cls.kind)
    return report, EXIT_OK


def cmd_metric(args) -> tuple[dict, int]:
    H, digest = load_matrix(args.path)
    report = _new_report(digest)
    cls = classify(H, tol=args.tol, kappa_max=args.kappa_max)
    report["classification"] = cls.kind.value
    if cls.kind in (OperatorClass.NOT_PSEUDO_HERMITIAN,
                    OperatorClass.NON_DIAGONALIZABLE):
        report["notes"] = f"no metric operator exists: {cls.kind.value}"
        return report, EXIT_NUMERIC
    S = eig_full(H)
    report["spectrum"] = _spectrum_list(S.eigenvalues)
    _attach_metric(report, H, S, pair_spectrum(S, args.tol), cls.kind)
    return report, EXIT_OK


def cmd_hermitize(args) -> tuple[dict, int]:
    H, digest = load_matrix(args.path)
    report = _new_report(digest)
    cls = classify(H, tol=args.tol, kappa_max=args.kappa_max)
    report["classification"] = cls.kind.value
    if cls.kind not in (OperatorClass.HERMITIAN, OperatorClass.QUASI_HERMITIAN):
        report["notes"] = ("Hermitization needs a real diagonalizable spectrum; "
                           f"operator is {cls.kind.value}")
        return report, EXIT_NUMERIC
    S = eig_full(H)
    eta = build_positive_metric(S, args.tol)
    rho, h = hermitize(H, eta)
    report["spectrum"] = _spectrum_list(S.eigenvalues)
    report["metric"] = matrix_to_json(eta.matrix)
    report["signature"] = list(eta.signature)
    report["rho"] = matrix_to_json(rho)
    report["hermitized"] = matrix_to_json(h)
    report["residuals"]["intertwining"] = verify_intertwining(H, eta)
    report["residuals"]["hermiticity_of_h"] = herm_residual(h)
    return report, EXIT_OK


def cmd_symmetry(args) -> tuple[dict, int]:
    H, digest = load_matrix(args.path)
    report = _new_report(digest)
    cls = classify(H, tol=args.tol, kappa_max=args.kappa_max)
    report["classification"] = cls.kind.value
    if cls.kind in (OperatorClass.NOT_PSEUDO_HERMITIAN,
                    OperatorClass.NON_DIAGONALIZABLE):
        report["notes"] = f"no antilinear symmetry constructed: {cls.kind.value}"
        return report, EXIT_NUMERIC
    S = eig_full(H)
    tau = antilinear_symmetry(S, pair_spectrum(S, args.tol))
    report["spectrum"] = _spectrum_list(S.eigenvalues)
    report["antilinear"] = matrix_to_json(tau)
    report["residuals"]["antilinear_commutation"] = antilinear_residual(H, tau)
    return report, EXIT_OK


def cmd_kg(args) -> tuple[dict, int]:
    params = {"n": args.n, "length": args.length, "mass": args.mass,
              "mu": args.mu, "t_final": args.t_final, "samples": args.samples,
              "seed": args.seed}
    report = _new_report(_params_digest(params))
    grid = make_grid(args.n, args.length, args.mass)
    mu = args.mu if args.mu is not None else grid.m
    H = fv_hamiltonian(grid)
    eta3 = sigma3_metric(grid)
    report["classification"] = classify(H).kind.value
    report["residuals"]["sigma3_intertwining"] = verify_intertwining(H, eta3)

    rng = np.random.default_rng(args.seed)
    checkpoints = np.linspace(0.0, args.t_final, 9)[1:]
    pd_drift = kg_drift = 0.0
    pd_min = np.inf
    mode_sum_dev = 0.0
    for _ in range(args.samples):
        state = random_state(grid, rng=rng)
        scale = float(np.sum(grid.omega * (np.abs(state.a) ** 2 + np.abs(state.b) ** 2)))
        pd0 = pd_inner(state, state, mu)
        kg0 = kg_inner(state, state)
        pd_min = min(pd_min, pd0.real / float(np.sum(np.abs(state.a) ** 2 + np.abs(state.b) ** 2)))
        mode_sum_dev = max(mode_sum_dev, abs(pd0 - scale / mu) / (scale / mu))
        for t in checkpoints:
            moved = evolve(state, float(t))
            pd_drift = max(pd_drift, abs(pd_inner(moved, moved, mu) - pd0) / (scale / mu))
            kg_drift = max(kg_drift, abs(kg_inner(moved, moved) - kg0) / (2 * scale))
    report["residuals"]["pd_conservation_drift"] = pd_drift
    report["residuals"]["kg_conservation_drift"] = kg_drift
    report["residuals"]["pd_positivity_min"] = float(pd_min)
    report["residuals"]["pd_mode_sum_deviation"] = mode_sum_dev

    S = eig_full(H)
    signs = indefinite_physical_set(S, eta3)
    positive_dim = sum(1 for _, s in signs if s > 0)
    sub = restrict_to_physical(H)
    report["sector_dims"] = {"indefinite_metric": positive_dim,
                             "pseudo_hermitian": sub.dim}
    report["notes"] = (
        f"indefinite-metric physical space keeps {positive_dim} of {2 * grid.N} "
        f"directions (positive-energy only); the real-spectrum construction keeps all {sub.dim}"
    )
    return report, EXIT_OK


def _parse_dims(text) -> list[int]:
    if "-" in text and "," not in text:
        lo, hi = text.split("-", 1)
        dims = list(range(int(lo), int(hi) + 1))
    else:
        dims = [int(part) for part in text.split(",") if part]
    if not dims or any(d < 1 for d in dims):
        raise ParseError(f"bad --dims value {text!r}")
    return dims


def cmd_verify(args) -> tuple[dict, int]:
    dims = _parse_dims(args.dims)
    if args.ensemble == "mixed":
        kinds = ["quasi", "pseudo_nonquasi", "hermitian"]
    else:
        kinds = [args.ensemble]
    params = {"ensemble": args.ensemble, "count": args.count,
              "dims": dims, "seed": args.seed}
    report = _new_report(_params_digest(params))
    specs = make_ensemble(kinds, args.count, dims, base_seed=args.seed)
    suite = run_equivalence_suite(specs)
    del suite["records"]  # keep the emitted report desk-sized
    report["suite"] = suite
    report["residuals"] = suite["worst_residuals"]
    report["notes"] = (f"{suite['instances']} instances, {suite['skipped']} skipped, "
                       f"{suite['failures']} failures")
    return report, EXIT_OK if suite["passed"] else EXIT_SUITE_FAIL


# ---------------------------------------------------------------------------
# parser / entry point

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pseudoherm",
        description="Classify non-Hermitian matrices, build metric operators, "
                    "and run the lattice Klein-Gordon demonstration.")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, with_path=True):
        if with_path:
            p.add_argument("path", help="matrix file (JSON with dim/re/im)")
        p.add_argument("--tol", type=float, default=REALITY_TOL,
                       help="reality/hermiticity tolerance (default 1e-9)")
        p.add_argument("--kappa-max", type=float, default=KAPPA_MAX,
                       help="diagonalizability cutoff (default 1e8)")
        p.add_argument("--format", choices=["json"], default="json")
        p.add_argument("--seed", type=int, default=DEFAULT_SEED)

    p = sub.add_parser("classify", help="classify a matrix")
    common(p)
    p.add_argument("--emit-metric", action="store_true",
                   help="attach a metric operator and its signature")
    p.set_defaults(handler=cmd_classify)

    p = sub.add_parser("metric", help="construct a metric operator")
    common(p)
    p.set_defaults(handler=cmd_metric)

    p = sub.add_parser("hermitize", help="map to a Hermitian matrix via the positive metric")
    common(p)
    p.set_defaults(handler=cmd_hermitize)

    p = sub.add_parser("symmetry", help="construct an antilinear symmetry")
    common(p)
    p.set_defaults(handler=cmd_symmetry)

    p = sub.add_parser("kg", help="run the lattice Klein-Gordon pipeline")
    common(p, with_path=False)
    p.add_argument("--n", type=int, default=64, help="lattice sites")
    p.add_argument("--length", type=float, default=20 * np.pi, help="spatial period")
    p.add_argument("--mass", type=float, default=1.0)
    p.add_argument("--mu", type=float, default=None,
                   help="inner-product scale (default: the mass)")
    p.add_argument("--t-final", type=float, default=10.0)
    p.add_argument("--samples", type=int, default=100)
    p.set_defaults(handler=cmd_kg)

    p = sub.add_parser("verify", help="run the ensemble equivalence suites")
    common(p, with_path=False)
    p.add_argument("--ensemble", default="mixed",
                   choices=["mixed", "quasi", "pseudo_nonquasi", "hermitian", "defective"])
    p.add_argument("--count", type=int, default=100)
    p.add_argument("--dims", default="2-8")
    p.set_defaults(handler=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        report, code = args.handler(args)
    except ParseError as exc:
        where = "" if exc.line is None else f" (line {exc.line}, column {exc.column})"
        print(f"error: {exc}{where}", file=sys.stderr)
        return EXIT_INPUT
    except (InvalidGrid, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except EigFailure as exc:
        print(f"error: eigensolver failed: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except PseudohermError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    _emit(report, args)
    return code


def entrypoint():  # console script
    raise SystemExit(main())

"""Command-line front end.

Usage:
    qdft mehta --N 5 [--format json] [--out report.csv]
    qdft qeigen --N 8 --j 1 --M 4 --n-max 4 [--phase pi/4|pi/8]
    qdft verify [--only chebyshev] [--M 16]
    qdft weights --j 1 --M 5

Exit status: 0 all checks pass, 1 numerical failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from dataclasses import asdict, dataclass

import numpy as np

from qdft.eigen import (
    PI_OVER_4,
    PI_OVER_8,
    ResidualError,
    independence_report,
    mehta_eigencheck,
    mehta_indices,
    q_eigenvectors,
)
from qdft.fourier import (
    dft_matrix,
    hermite_ft_deviation,
    verify_cos_power,
    verify_self_dual,
    verify_qsin_transform,
    verify_real_branch,
    verify_root_branch,
)
from qdft.periodize import (
    TruncationError,
    TruncationPolicy,
    default_policy,
    f_q_vector,
    g_q_vector,
    q_prefactor,
    verify_finite_pair,
    verify_conjugate_relations,
    verify_quadrature_commutation,
)
from qdft.qhermite import (
    qtolimit_deviation,
    solve_discrete_weights,
    verify_chebyshev_identity,
    verify_factorization,
)
from qdft.qseries import ParameterDomainError, RealQParams, RootOfUnityParams

MEHTA_TOL = 1e-8
QEIGEN_TOL = 1e-7


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    N: int | None = None
    n_max: int | None = None
    j: int | None = None
    M: int | None = None
    q_real: float | None = None
    eps: float | None = None
    output_path: str | None = None
    format: str = "csv"
    only: str | None = None
    phase: str | None = None

    def policy(self) -> TruncationPolicy:
        if self.eps is None:
            return default_policy()
        return TruncationPolicy(eps=self.eps)

    def root_params(self) -> RootOfUnityParams:
        if self.j is None or self.M is None:
            raise UsageError("--j and --M are required")
        if self.q_real is not None:
            raise UsageError("give either --j/--M or --q, not both")
        try:
            return RootOfUnityParams.from_jm(self.j, self.M)
        except ParameterDomainError as exc:
            raise UsageError(str(exc)) from None


# --------------------------------------------------------------------------- output


def _cell(v):
    if isinstance(v, (bool, np.bool_)):
        return int(v)
    if isinstance(v, (np.floating, float)):
        return float(v)
    if isinstance(v, (np.integer,)):
        return int(v)
    return v


def render(config: RunConfig, results: list[dict], summary: dict) -> str:
    if config.format == "json":
        doc = {"config": {k: v for k, v in asdict(config).items()},
               "results": [{k: _cell(v) for k, v in row.items()} for row in results],
               "summary": {k: _cell(v) for k, v in summary.items()}}
        return json.dumps(doc, indent=2, allow_nan=False) + "\n"
    buf = io.StringIO()
    if results:
        writer = csv.DictWriter(buf, fieldnames=list(results[0].keys()), lineterminator="\n")
        writer.writeheader()
        for row in results:
            writer.writerow({k: repr(_cell(v)) if isinstance(_cell(v), float) else _cell(v)
                             for k, v in row.items()})
    return buf.getvalue()


def emit(config: RunConfig, results, summary):
    text = render(config, results, summary)
    if config.output_path:
        with open(config.output_path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    brief = ", ".join(f"{k}={v:.3g}" if isinstance(v, float) else f"{k}={v}" for k, v in summary.items())
    print(f"[{config.command}] {brief}", file=sys.stderr)


def _vector_rows(family, n, values, factor, resid, phase=None, coprime=None):
    rows = []
    for r, v in enumerate(values):
        row = {"family": family}
        if phase is not None:
            row["phase"] = phase
        row.update({"n": n, "r": r, "re": float(np.real(v)), "im": float(np.imag(v)),
                    "factor_re": float(np.real(factor)), "factor_im": float(np.imag(factor)),
                    "residual": float(resid)})
        if coprime is not None:
            row["coprime"] = int(coprime)
        rows.append(row)
    return rows


# --------------------------------------------------------------------------- commands


def cmd_mehta(config: RunConfig) -> int:
    if config.N is None or config.N < 1:
        raise UsageError("--N must be a positive integer")
    cands = mehta_eigencheck(config.N, config.policy())
    rows = []
    for n, c in zip(mehta_indices(config.N), cands):
        rows += _vector_rows("mehta", n, c.vector.values, c.eigenvalue, c.residual)
    rep = independence_report(cands)
    worst = max(c.residual for c in cands)
    ok = worst < MEHTA_TOL
    emit(config, rows, {"max_residual": worst, "rank": rep.rank, "candidates": len(cands),
                        "smallest_singular_value": rep.smallest_singular_value,
                        "max_offdiag_gram": rep.max_offdiag_gram, "pass": ok})
    return 0 if ok else 1


def cmd_qeigen(config: RunConfig) -> int:
    params = config.root_params()
    if config.N is None or config.N < 1:
        raise UsageError("--N must be a positive integer")
    n_max = 4 if config.n_max is None else config.n_max
    if n_max < 0:
        raise UsageError("--n-max must be >= 0")
    phases = [config.phase] if config.phase else [PI_OVER_4, PI_OVER_8]
    policy = config.policy()
    rows = []
    worst_pi4 = 0.0
    worst_pi8 = 0.0
    for n in range(n_max + 1):
        f = f_q_vector(n, config.N, params, policy)
        r_fwd, r_back = verify_conjugate_relations(n, config.N, params, policy)
        rows += _vector_rows("f", n, f.values, q_prefactor(params, n * n / 4.0), max(r_fwd, r_back),
                             phase="none", coprime=params.coprime)
        # the pi/4 phase gates the exit status even when only the pi/8 phase is written
        for phase in sorted(set(phases) | {PI_OVER_4}):
            F, G = q_eigenvectors(n, config.N, params, policy, convention=phase, threshold=math.inf)
            if phase == PI_OVER_4:
                worst_pi4 = max(worst_pi4, F.residual, G.residual)
            else:
                worst_pi8 = max(worst_pi8, F.residual, G.residual)
            if phase in phases:
                rows += _vector_rows("F", n, F.vector.values, F.eigenvalue, F.residual,
                                     phase=phase, coprime=params.coprime)
                rows += _vector_rows("G", n, G.vector.values, G.eigenvalue, G.residual,
                                     phase=phase, coprime=params.coprime)
    ok = worst_pi4 < QEIGEN_TOL
    summary = {"max_residual": worst_pi4, "pi8_phase_max_residual": worst_pi8,
               "coprime": params.coprime, "pass": ok}
    emit(config, rows, summary)
    return 0 if ok else 1


def cmd_weights(config: RunConfig) -> int:
    params = config.root_params()
    if not params.coprime:
        raise UsageError(f"(j, M) = ({params.j}, {params.M}) must be coprime")
    sol = solve_discrete_weights(params)
    rows = []
    for s, x in enumerate(sol.nodes):
        rows.append({"kind": "node", "s": s, "m": -1, "n": -1, "re": float(x), "im": 0.0})
    for s, w in enumerate(sol.weights):
        rows.append({"kind": "weight", "s": s, "m": -1, "n": -1, "re": float(w.real), "im": float(w.imag)})
    gram = sol.residual_matrix()
    for m in range(params.M):
        for n in range(params.M):
            rows.append({"kind": "gram", "s": -1, "m": m, "n": n,
                         "re": float(gram[m, n].real), "im": float(gram[m, n].imag)})
    off = gram - np.diag(np.diag(gram))
    summary = {"max_residual": float(np.max(np.abs(off), initial=0.0)), "fit_residual": sol.residual,
               "condition": sol.condition, "pass": bool(sol.ok)}
    emit(config, rows, summary)
    return 0 if sol.ok else 1


# --------------------------------------------------------------------------- verification battery

Y5 = (-2.0, -1.0, 0.0, 1.0, 2.0)


def _coprime_pairs(M_max):
    for M in range(2, M_max + 1):
        for j in range(1, M):
            if math.gcd(j, M) == 1:
                yield j, M


def _battery(config: RunConfig):
    """Yield (identity, parameters, thunk, threshold) for every selected check."""
    N_list = (config.N,) if config.N else (5, 8)
    n_max = 6 if config.n_max is None else config.n_max
    M_max = config.M or 12
    policy = config.policy()
    real = [RealQParams.from_q(config.q_real)] if config.q_real else [RealQParams.from_q(0.5), RealQParams.from_q(0.7)]
    if config.j and config.M:
        roots = [config.root_params()]
    else:
        roots = [RootOfUnityParams.from_jm(1, 3), RootOfUnityParams.from_jm(1, 4)]

    for N in (1, 2, 3, 4, 5, 8, 16, 32, 64):
        op = dft_matrix(N)
        yield ("dft", f"N={N} fourth power", lambda op=op:
               float(np.max(np.abs(np.linalg.matrix_power(op.matrix, 4) - np.eye(op.N)))), 1e-11)
        yield ("dft", f"N={N} unitarity", lambda op=op:
               float(np.max(np.abs(op.matrix @ op.matrix.conj().T - np.eye(op.N)))), 1e-12)

    ys13 = np.linspace(-3, 3, 13)
    for n in range(11):
        yield "hermite-ft", f"n={n}", lambda n=n: hermite_ft_deviation(n, ys13), 1e-8

    for N in N_list:
        for c in mehta_eigencheck(N, policy):
            yield "mehta", f"N={N} {c.provenance}", lambda c=c: c.residual, 1e-9

    for j, M in _coprime_pairs(M_max):
        p = RootOfUnityParams.from_jm(j, M)
        yield "chebyshev", f"j={j},M={M}", lambda p=p: verify_chebyshev_identity(p), 1e-10
        for m in range(4):
            yield ("factorization", f"j={j},M={M},m={m}",
                   lambda p=p, m=m: max(verify_factorization(p, m, n) for n in range(p.M)), 1e-10)

    for p in real:
        for n in range(n_max + 1):
            yield "qsin-transform", f"n={n} {p.label()}", lambda n=n, p=p: verify_qsin_transform(n, p.kappa, p.q, Y5), 1e-7
            yield "real-branch", f"n={n} {p.label()}", lambda n=n, p=p: verify_real_branch(n, p, Y5), 1e-7
    for p in roots:
        for n in range(n_max + 1):
            yield "qsin-transform", f"n={n} {p.label()}", lambda n=n, p=p: verify_qsin_transform(n, p.alpha, p.q, Y5), 1e-7
            yield "self-dual", f"n={n} {p.label()}", lambda n=n, p=p: verify_self_dual(n, p.alpha, p.q, Y5), 1e-7
            yield "root-branch", f"n={n} {p.label()}", lambda n=n, p=p: verify_root_branch(n, p, Y5), 1e-7
        if p.coprime:
            for m in range(3):
                yield ("cos-power", f"m={m} {p.label()}",
                       lambda m=m, p=p: verify_cos_power(m, p.j, p.M, Y5), 1e-7)

    for N in N_list:
        for p in real + roots:
            for n in range(n_max + 1):
                yield ("finite-pair", f"N={N} n={n} {p.label()}",
                       lambda N=N, n=n, p=p: verify_finite_pair(n, N, p, policy), 1e-8)
        for p in roots:
            for n in range(n_max + 1):
                yield ("conjugation", f"N={N} n={n} {p.label()}",
                       lambda N=N, n=n, p=p: max(verify_conjugate_relations(n, N, p, policy)), 1e-8)
                yield ("conjugate-image", f"N={N} n={n} {p.label()}",
                       lambda N=N, n=n, p=p: float(np.max(np.abs(
                           g_q_vector(n, N, p, policy).values - f_q_vector(n, N, p, policy).values.conj()))), 1e-10)
                yield ("qeigen", f"N={N} n={n} {p.label()}",
                       lambda N=N, n=n, p=p: max(c.residual for c in q_eigenvectors(n, N, p, policy, threshold=math.inf)),
                       1e-7)

    for N in (4, 5, 8) if config.N is None else (config.N,):
        for n in range(min(n_max, 5) + 1):
            yield ("commutation", f"N={N} n={n}",
                   lambda N=N, n=n: verify_quadrature_commutation(n, N, policy), 1e-8)

    # degrees 0..2 reproduce H_n exactly after rescaling; from n = 3 the gap must shrink as q -> 1
    for n in range(6):
        for x in (0.3, 0.7, 1.1):
            if n <= 2:
                yield "limit", f"n={n} x={x} q=0.999", lambda n=n, x=x: qtolimit_deviation(n, 0.999, x), 1e-12
                continue
            for q_lo, q_hi in ((0.9, 0.99), (0.99, 0.999)):
                yield ("limit", f"n={n} x={x} q={q_lo}->{q_hi}",
                       lambda n=n, x=x, q=q_hi: qtolimit_deviation(n, q, x), qtolimit_deviation(n, q_lo, x))


def cmd_verify(config: RunConfig) -> int:
    rows = []
    worst = 0.0
    all_ok = True
    selected = 0
    for identity, params, thunk, thr in _battery(config):
        if config.only and identity != config.only:
            continue
        selected += 1
        dev = float(thunk())
        ok = dev < thr
        all_ok &= ok
        worst = max(worst, dev / thr)
        rows.append({"identity": identity, "parameters": params, "deviation": dev,
                     "threshold": thr, "pass": ok})
    if selected == 0:
        raise UsageError(f"no identity named {config.only!r}; choose from {', '.join(IDENTITIES)}")
    emit(config, rows, {"checks": selected, "max_deviation_ratio": worst, "pass": all_ok})
    return 0 if all_ok else 1


IDENTITIES = ("dft", "hermite-ft", "mehta", "chebyshev", "factorization", "qsin-transform", "real-branch",
              "self-dual", "root-branch", "cos-power", "finite-pair", "conjugation", "conjugate-image",
              "qeigen", "commutation", "limit")

COMMANDS = {"mehta": cmd_mehta, "qeigen": cmd_qeigen, "verify": cmd_verify, "weights": cmd_weights}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--N", type=int, help="finite Fourier transform size")
    common.add_argument("--n-max", dest="n_max", type=int, help="largest degree n")
    common.add_argument("--j", type=int, help="root-of-unity numerator")
    common.add_argument("--M", type=int, help="root-of-unity order")
    common.add_argument("--q", dest="q_real", type=float, help="real deformation 0 < q < 1")
    common.add_argument("--eps", type=float, help="truncation tolerance (default 1e-14 or $QDFT_EPS)")
    common.add_argument("--out", dest="output_path", help="report file (default: stdout)")
    common.add_argument("--format", choices=("csv", "json"), default="csv")

    parser = argparse.ArgumentParser(prog="qdft", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("mehta", parents=[common], help="Mehta eigenvectors and residuals")
    p = sub.add_parser("qeigen", parents=[common], help="q-extended eigenvectors at a root of unity")
    p.add_argument("--phase", choices=(PI_OVER_4, PI_OVER_8), help="write only one phase convention")
    p = sub.add_parser("verify", parents=[common], help="run the identity battery")
    p.add_argument("--only", choices=IDENTITIES, help="run a single identity family")
    sub.add_parser("weights", parents=[common], help="discrete orthogonality weights on Chebyshev zeros")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    config = RunConfig(**{k: v for k, v in vars(args).items()})
    if config.eps is not None and not config.eps > 0:
        print("qdft: --eps must be positive", file=sys.stderr)
        return 2
    try:
        return COMMANDS[config.command](config)
    except UsageError as exc:
        print(f"qdft {config.command}: {exc}", file=sys.stderr)
        return 2
    except (TruncationError, ResidualError) as exc:
        print(f"qdft {config.command}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())

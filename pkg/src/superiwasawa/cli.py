"""Command-line entry point.

Exit codes: 0 success, 1 a verified identity failed, 2 malformed input or
unsupported request, 3 mathematical precondition failed.
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .algebra import GeneratorTable, element_to_json
from .exceptions import MalformedInputError, NotInvertibleError, ParityError, PreconditionError
from .hopf import HopfContext, verify_bialgebra, verify_factorization, verify_hopf_ideals, verify_real_form_axioms
from .iwasawa import (
    InstanceSpec,
    classical_oracle,
    decompose,
    generate_instance,
    intersection_is_identity_check,
    is_san_supermatrix,
    is_su_supermatrix,
    numeric_to_supermatrix,
    random_special_linear,
    scalar_table,
    supermatrix_to_numeric,
    triangular_factor,
)
from .supermatrix import (
    SuperDims,
    SuperMatrix,
    block_inverse,
    dagger,
    matmul,
    matrix_to_json,
    scalar_product,
    sdet,
    sdet_alt,
    supertranspose,
)

EXIT_OK, EXIT_IDENTITY, EXIT_MALFORMED, EXIT_PRECONDITION = 0, 1, 2, 3
ORACLE_TOL = 1e-10


@dataclass
class RunConfig:
    command: str
    input: Path | None = None
    output: Path | None = None
    seed: int = 0
    n: int = 2
    m: int = 1
    degree: int = 3
    mode: str = "exact"
    samples: int = 100
    kind: str = "graded"
    density: float = 0.5


class CommandError(Exception):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


def _emit(cfg: RunConfig, payload) -> None:
    text = json.dumps(payload, indent=2, ensure_ascii=False) + "\n"
    if cfg.output is None:
        sys.stdout.write(text)
    else:
        cfg.output.write_text(text, encoding="utf-8")


def _load_instance(cfg: RunConfig) -> InstanceSpec:
    if cfg.input is None:
        raise CommandError(EXIT_MALFORMED, "--input is required")
    try:
        data = json.loads(Path(cfg.input).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise CommandError(EXIT_MALFORMED, f"cannot read instance: {exc}") from exc
    try:
        return InstanceSpec.from_json(data)
    except (MalformedInputError, ParityError) as exc:
        raise CommandError(EXIT_MALFORMED, f"malformed instance: {exc}") from exc


def _check(name: str, ok: bool, detail=None) -> dict:
    return {"check": name, "status": "pass" if ok else "fail", "detail": detail}


def _small(e, tol) -> bool:
    return e.is_zero() if tol is None else all(abs(complex(c)) <= tol for c in e.terms.values())


def _close(A: SuperMatrix, B: SuperMatrix, tol) -> bool:
    return all(_small(e, tol) for r in (A - B).rows for e in r)


def _verify_decomposition(M: SuperMatrix, result, tol) -> list[dict]:
    phi, psi = result.phi, result.psi
    I = SuperMatrix.identity(M.dims, M.table)
    # float inputs are classical matrices, so diagonals are unitary phases / positive reals rather than 1
    normalized = tol is None
    su = is_su_supermatrix(phi, tol, normalized=normalized)
    san = is_san_supermatrix(psi, tol, normalized=normalized)
    checks = [
        _check("factorization Phi@Psi = M", _close(matmul(phi, psi), M, tol)),
        _check("conjugate factorization", _close(matmul(dagger(phi), dagger(psi)), dagger(M), tol)),
        _check("unitarity", _close(matmul(supertranspose(dagger(phi)), phi), I, tol)),
        _check("Phi is SU(n,m)-supermatrix", su.ok, su.failures or None),
        _check("Psi is s(AN)-supermatrix", san.ok, san.failures or None),
    ]
    V = result.orthogonal_family
    ortho = all(
        _small(scalar_product(V[k], V[l]), tol) for k in range(len(V)) for l in range(len(V)) if k != l
    )
    checks.append(_check("orthogonal family", ortho))
    checks.append(_check("triangular cross-check", _close(triangular_factor(phi, M), psi, tol)))
    if tol is None:
        again = decompose(matmul(phi, psi))
        checks.append(_check("uniqueness (re-decomposition)", again.phi == phi and again.psi == psi))
        checks.append(_check("intersection is identity", intersection_is_identity_check(matmul(block_inverse(again.phi), phi))))
    return checks


def cmd_decompose(cfg: RunConfig) -> int:
    inst = _load_instance(cfg)
    M = inst.matrix
    try:
        result = decompose(M)
    except (PreconditionError, NotInvertibleError) as exc:
        raise CommandError(EXIT_PRECONDITION, f"precondition failed: {exc}") from exc
    except ParityError as exc:
        raise CommandError(EXIT_MALFORMED, str(exc)) from exc
    tol = None if inst.mode == "exact" else ORACLE_TOL
    checks = _verify_decomposition(M, result, tol)
    payload = result.to_json()
    payload["n"], payload["m"], payload["degree"], payload["mode"] = inst.dims.n, inst.dims.m, inst.degree, inst.mode
    payload["generators"] = inst.table.to_json()
    payload["verification"] = checks
    _emit(cfg, payload)
    failed = [c["check"] for c in checks if c["status"] != "pass"]
    if failed:
        print("identity violated: " + ", ".join(failed), file=sys.stderr)
        return EXIT_IDENTITY
    return EXIT_OK


def cmd_hopf(cfg: RunConfig) -> int:
    try:
        ctx = HopfContext(cfg.n, cfg.m, cfg.degree)
    except MalformedInputError as exc:
        raise CommandError(EXIT_MALFORMED, str(exc)) from exc
    if cfg.kind not in ("graded", "normal"):
        raise CommandError(EXIT_MALFORMED, f"unknown --kind {cfg.kind!r}")
    report = {
        "n": cfg.n,
        "m": cfg.m,
        "degree": cfg.degree,
        "kind": cfg.kind,
        "real_form": verify_real_form_axioms(ctx, cfg.kind, seed=cfg.seed),
        "bialgebra": verify_bialgebra(ctx),
        "ideals": verify_hopf_ideals(ctx),
        "factorization": verify_factorization(ctx),
    }
    _emit(cfg, report)
    failed = [r["axiom"] for sec in ("real_form", "bialgebra", "ideals", "factorization") for r in report[sec] if r["status"] != "pass"]
    if failed:
        print("failed: " + ", ".join(failed), file=sys.stderr)
        return EXIT_IDENTITY
    return EXIT_OK


def cmd_gen(cfg: RunConfig) -> int:
    try:
        dims = SuperDims(cfg.n, cfg.m)
    except MalformedInputError as exc:
        raise CommandError(EXIT_MALFORMED, str(exc)) from exc
    if cfg.degree < 1:
        raise CommandError(EXIT_MALFORMED, "--degree must be >= 1")
    if cfg.mode == "exact":
        inst = generate_instance(dims, cfg.degree, cfg.seed, cfg.density)
    elif cfg.mode == "float":
        if cfg.m != 0:
            raise CommandError(EXIT_MALFORMED, "float instances are generated only for m = 0")
        A = random_special_linear(cfg.n, np.random.default_rng(cfg.seed))
        table = GeneratorTable([], cfg.degree, "float")
        M = numeric_to_supermatrix(A, table)
        inst = InstanceSpec(dims, cfg.degree, table, M, "float", cfg.seed)
    else:
        raise CommandError(EXIT_MALFORMED, f"unknown --mode {cfg.mode!r}")
    _emit(cfg, inst.to_json())
    return EXIT_OK


def cmd_oracle(cfg: RunConfig) -> int:
    if cfg.m != 0:
        raise CommandError(EXIT_MALFORMED, "unsupported mode: the classical oracle exists only for m = 0")
    rng = np.random.default_rng(cfg.seed)
    table = scalar_table("float")
    worst_phi = worst_psi = 0.0
    for _ in range(cfg.samples):
        A = random_special_linear(cfg.n, rng)
        try:
            r = decompose(numeric_to_supermatrix(A, table))
        except NotInvertibleError as exc:
            raise CommandError(EXIT_PRECONDITION, str(exc)) from exc
        Q, R = classical_oracle(A)
        worst_phi = max(worst_phi, float(np.max(np.abs(supermatrix_to_numeric(r.phi) - Q))))
        worst_psi = max(worst_psi, float(np.max(np.abs(supermatrix_to_numeric(r.psi) - R))))
    ok = max(worst_phi, worst_psi) <= ORACLE_TOL
    _emit(cfg, {
        "n": cfg.n,
        "samples": cfg.samples,
        "seed": cfg.seed,
        "max_deviation_phi": worst_phi,
        "max_deviation_psi": worst_psi,
        "tolerance": ORACLE_TOL,
        "status": "pass" if ok else "fail",
    })
    return EXIT_OK if ok else EXIT_IDENTITY


def cmd_sdet(cfg: RunConfig) -> int:
    M = _load_instance(cfg).matrix
    try:
        s = sdet(M)
    except NotInvertibleError as exc:
        raise CommandError(EXIT_PRECONDITION, str(exc)) from exc
    try:
        alt = sdet_alt(M)
    except NotInvertibleError:
        alt = None
    agree = alt is None or alt == s
    _emit(cfg, {"sdet": element_to_json(s), "sdet_alt": None if alt is None else element_to_json(alt), "agree": agree})
    return EXIT_OK if agree else EXIT_IDENTITY


def cmd_invert(cfg: RunConfig) -> int:
    M = _load_instance(cfg).matrix
    try:
        Mi = block_inverse(M)
    except NotInvertibleError as exc:
        raise CommandError(EXIT_PRECONDITION, str(exc)) from exc
    I = SuperMatrix.identity(M.dims, M.table)
    checks = [_check("M@inv = 1", matmul(M, Mi) == I), _check("inv@M = 1", matmul(Mi, M) == I)]
    _emit(cfg, {"inverse": matrix_to_json(Mi), "verification": checks})
    return EXIT_OK if all(c["status"] == "pass" for c in checks) else EXIT_IDENTITY


COMMANDS = {
    "decompose": cmd_decompose,
    "hopf": cmd_hopf,
    "gen": cmd_gen,
    "oracle": cmd_oracle,
    "sdet": cmd_sdet,
    "invert": cmd_invert,
}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="superiwasawa", description="Super Iwasawa factorization and Hopf real-form checks.")
    p.add_argument("command", choices=sorted(COMMANDS))
    p.add_argument("--input", type=Path)
    p.add_argument("--output", type=Path)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--n", type=int, default=2)
    p.add_argument("--m", type=int, default=1)
    p.add_argument("--degree", type=int, default=3)
    p.add_argument("--mode", choices=("exact", "float"), default="exact")
    p.add_argument("--samples", type=int, default=100)
    p.add_argument("--kind", choices=("graded", "normal"), default="graded")
    p.add_argument("--density", type=float, default=0.5)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_MALFORMED if exc.code else EXIT_OK
    if args.seed < 0:
        print("error: --seed must be non-negative", file=sys.stderr)
        return EXIT_MALFORMED
    cfg = RunConfig(**vars(args))
    try:
        return COMMANDS[cfg.command](cfg)
    except CommandError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code


if __name__ == "__main__":
    sys.exit(main())

"""Experiment runner: scans and checks emitting CSV/JSON with seeded headers.

Every command is deterministic given its seed and parameters, echoes both
into the output header, and encodes acceptance in its exit status (0 only
when all row-level assertions hold). CSV uses ',' separators, '.' decimals
and '#' comment lines; JSON outputs carry the same metadata under "_meta".
"""

import json
import os

import click

from . import DEFAULT_SEED, __version__
from .covariant import CovariantSeed, bell_program_check
from .detector import estimate_accuracy
from .linalg import Rng, haar_unitary
from .povm import (
    distance_bounds,
    maximally_mixed,
    observable_from_unitary,
    povm_distance,
    pure_state,
)
from .serialize import load_json, matrix_to_json, povm_from_json
from .su2 import (
    GroupElement,
    covariant_qubit_detector,
    covariant_target,
    fiurasek_detector,
    matched_covariant_rule,
    matched_fiurasek_rule,
)
from .unet import scaling_scan


def _fmt(x):
    if isinstance(x, float):
        return f"{x:.12g}"
    return str(x)


def _header(command, seed, tol, **params):
    extras = " ".join(f"{k}={_fmt(v)}" for k, v in params.items())
    line = f"# seed={seed} tol={_fmt(tol)}"
    if extras:
        line += " " + extras
    return [f"# povmforge {__version__} {command}", line]


def _emit_text(lines, out):
    text = "\n".join(lines) + "\n"
    if out:
        with open(out, "w") as fh:
            fh.write(text)
        click.echo(f"wrote {out}")
    else:
        click.echo(text, nl=False)


def _emit_json(payload, out):
    text = json.dumps(payload, indent=1)
    if out:
        with open(out, "w") as fh:
            fh.write(text + "\n")
        click.echo(f"wrote {out}")
    else:
        click.echo(text)


seed_option = click.option(
    "--seed",
    type=int,
    default=DEFAULT_SEED,
    show_default=True,
    envvar="POVMFORGE_SEED",
    help="Random seed (env: POVMFORGE_SEED).",
)
out_option = click.option(
    "--out",
    type=click.Path(dir_okay=False, writable=True),
    default=None,
    help="Output file; stdout when omitted.",
)


@click.group()
@click.version_option(version=__version__, prog_name="povmforge")
def main():
    """Programmable-detector experiments with reproducible outputs."""


@main.command("fiurasek-scan")
@click.option("--n-min", type=int, default=1, show_default=True)
@click.option("--n-max", type=int, default=6, show_default=True)
@click.option("--targets", "n_targets", type=int, default=20, show_default=True)
@click.option("--tol", type=float, default=1e-9, show_default=True)
@seed_option
@out_option
def cmd_fiurasek_scan(n_min, n_max, n_targets, tol, seed, out):
    """Accuracy of the symmetric-projector detector against copy count N.

    Ancilla dimension d = 2^N, accuracy 2/(N+1): exponentially expensive
    programming. Each row checks measured accuracy on Haar-random sharp
    targets with matched program states, plus the d = 4^(1/eps)/2 identity.
    """
    lines = _header(
        "fiurasek-scan", seed, tol, n_min=n_min, n_max=n_max, targets=n_targets
    )
    lines.append("N,d,epsilon_measured,epsilon_theory,max_abs_err")
    failed = False
    for n in range(n_min, n_max + 1):
        det = fiurasek_detector(n)
        child = Rng(seed).child(n)
        targets = [
            observable_from_unitary(haar_unitary(2, child)) for _ in range(n_targets)
        ]
        report = estimate_accuracy(det, targets, matched_fiurasek_rule(n))
        theory = 2.0 / (n + 1)
        err = max(abs(r.delta - theory) for r in report.per_target)
        d = 2 ** n
        if err > tol or abs(d - 0.5 * 4.0 ** (1.0 / theory)) > 1e-6:
            failed = True
        lines.append(
            ",".join(_fmt(v) for v in (n, d, report.epsilon, theory, err))
        )
    _emit_text(lines, out)
    if failed:
        raise SystemExit(1)


@main.command("covariant-scan")
@click.option("--j-max", "twice_j_max", type=int, default=9, show_default=True,
              help="Largest ancilla spin, as twice j.")
@click.option("--targets", "n_targets", type=int, default=20, show_default=True)
@click.option("--tol", type=float, default=1e-9, show_default=True)
@seed_option
@out_option
def cmd_covariant_scan(twice_j_max, n_targets, tol, seed, out):
    """Accuracy of the rotation-covariant detector against ancilla spin.

    Ancilla dimension d = 2j+1, accuracy 2/d: linear scaling. Rows check
    measured accuracy on rotated sharp targets and the d = 2/eps identity.
    """
    lines = _header(
        "covariant-scan", seed, tol, j_max=twice_j_max, targets=n_targets
    )
    lines.append("twice_j,d,epsilon_measured,epsilon_theory,max_abs_err")
    failed = False
    for twice_j in range(1, twice_j_max + 1):
        det = covariant_qubit_detector(twice_j / 2)
        child = Rng(seed).child(twice_j)
        targets = [
            covariant_target(GroupElement.random(child)) for _ in range(n_targets)
        ]
        report = estimate_accuracy(det, targets, matched_covariant_rule(twice_j / 2))
        d = twice_j + 1
        theory = 2.0 / d
        err = max(abs(r.delta - theory) for r in report.per_target)
        if err > tol or abs(d - 2.0 / theory) > 1e-6:
            failed = True
        lines.append(
            ",".join(_fmt(v) for v in (twice_j, d, report.epsilon, theory, err))
        )
    _emit_text(lines, out)
    if failed:
        raise SystemExit(1)


@main.command("net-scan")
@click.option("--dim", "n", type=int, default=2, show_default=True)
@click.option("--eps", "eps_list", type=float, multiple=True,
              default=(1.2, 0.9, 0.7, 0.5, 0.35), show_default=True)
@click.option("--budget", type=int, default=2000, show_default=True)
@click.option("--samples", type=int, default=1000, show_default=True)
@click.option("--exp-min", type=float, default=1.3, show_default=True)
@click.option("--exp-max", type=float, default=2.7, show_default=True)
@click.option("--min-coverage", type=float, default=0.99, show_default=True)
@seed_option
@out_option
def cmd_net_scan(n, eps_list, budget, samples, exp_min, exp_max, min_coverage,
                 seed, out):
    """Greedy net sizes across accuracies, with the fitted growth exponent.

    Writes one CSV row per accuracy and a JSON summary (exponent and fitted
    prefactor). With --out FILE.csv the summary lands in FILE.json. Exits
    nonzero if the exponent leaves [--exp-min, --exp-max] or any row's
    coverage falls below --min-coverage.
    """
    rng = Rng(seed)
    result = scaling_scan(n, list(eps_list), budget, rng, samples=samples)
    lines = _header(
        "net-scan", seed, 0.0, dim=n, budget=budget, samples=samples,
        eps=":".join(_fmt(e) for e in eps_list),
    )
    lines.append("epsilon,radius,net_size,coverage_rate,seed")
    failed = False
    for row in result.rows:
        if row.coverage_rate < min_coverage:
            failed = True
        lines.append(
            ",".join(
                _fmt(v)
                for v in (row.epsilon, row.radius, row.net_size,
                          row.coverage_rate, row.seed)
            )
        )
    if not (exp_min <= result.exponent <= exp_max):
        failed = True
    _emit_text(lines, out)
    payload = {
        "_meta": {"version": __version__, "command": "net-scan", "seed": seed,
                  "dim": n, "budget": budget, "samples": samples},
        "exponent": result.exponent,
        "kappa_fit": result.kappa,
        "exponent_band": [exp_min, exp_max],
        "min_coverage": min_coverage,
        "pass": not failed,
    }
    _emit_json(payload, os.path.splitext(out)[0] + ".json" if out else None)
    if failed:
        raise SystemExit(1)


@main.command("exact-check")
@click.option("--pairs", type=int, default=50, show_default=True)
@click.option("--tol", type=float, default=1e-10, show_default=True)
@click.option("--negative-control", is_flag=True,
              help="Add rows with the transpose deliberately omitted.")
@seed_option
@out_option
def cmd_exact_check(pairs, tol, negative_control, seed, out):
    """Pointwise residuals of exact covariant programming.

    Row 0 uses the maximally mixed seed; remaining rows draw Haar-random
    pure seeds and rotations. Control rows (flag column 1) drop the
    transpose and are expected to show order-0.1 residuals; they do not
    affect the exit status.
    """
    rng = Rng(seed)
    lines = _header("exact-check", seed, tol, pairs=pairs,
                    negative_control=int(negative_control))
    lines.append("nu_id,alpha,beta,gamma,residual,control")
    failed = False

    def add_row(nu_id, g, residual, control):
        nonlocal failed
        a, b, c = g.euler_angles
        if not control and residual > tol:
            failed = True
        lines.append(
            ",".join(_fmt(v) for v in (nu_id, a, b, c, residual, int(control)))
        )

    g0 = GroupElement.random(rng)
    seed0 = CovariantSeed(maximally_mixed(2))
    add_row(0, g0, bell_program_check(seed0, g0), False)
    for i in range(1, pairs + 1):
        nu = pure_state(haar_unitary(2, rng)[:, 0])
        g = GroupElement.random(rng)
        cseed = CovariantSeed(nu)
        add_row(i, g, bell_program_check(cseed, g), False)
        if negative_control:
            add_row(i, g, bell_program_check(cseed, g, use_transpose=False), True)
    _emit_text(lines, out)
    if failed:
        raise SystemExit(1)


@main.command("distance")
@click.argument("povm_a", type=click.Path(exists=True, dir_okay=False))
@click.argument("povm_b", type=click.Path(exists=True, dir_okay=False))
@seed_option
@out_option
def cmd_distance(povm_a, povm_b, seed, out):
    """Exact distance between two POVM files, with bounds and witness.

    Emits {delta, sum_op_bound, sum_fro_bound, witness_state}; the bounds
    always satisfy delta <= sum_op <= sum_fro.
    """
    p = povm_from_json(load_json(povm_a))
    q = povm_from_json(load_json(povm_b))
    delta, witness = povm_distance(p, q, return_witness=True)
    sum_op, sum_fro = distance_bounds(p, q)
    payload = {
        "_meta": {"version": __version__, "command": "distance", "seed": seed,
                  "povm_a": os.path.basename(povm_a),
                  "povm_b": os.path.basename(povm_b)},
        "delta": delta,
        "sum_op_bound": sum_op,
        "sum_fro_bound": sum_fro,
        "witness_state": matrix_to_json(witness.matrix),
    }
    _emit_json(payload, out)


if __name__ == "__main__":
    main()

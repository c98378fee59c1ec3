"""Command-line front end: states, observables, sweeps, samples, limit studies, verification.

Every command is deterministic; JSON documents carry ``"schema_version": 1``
and CSV floats are printed with ``repr`` (shortest round-tripping form).

Exit codes: 0 success, 1 verification failure, 2 usage error, 3 domain error
(below an existence threshold, or an undefined limit).
"""

from __future__ import annotations

import argparse
import csv
import dataclasses
import io
import json
import math
import sys
from dataclasses import dataclass

import numpy as np

from . import delta as delta_mod
from . import dprime, suite
from .delta import DeltaModel
from .dprime import DeltaPrimeModel, Family, FamilyTag
from .errors import ThresholdViolation, UndefinedLimit
from .oracles import LIMIT_NAMES, quadrature_observables, residuals, run_limit_study

SCHEMA_VERSION = 1
EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_DOMAIN = 0, 1, 2, 3

SWEEP_PARAMETERS = ("omega", "rho", "lambda", "alpha", "gamma")
OBSERVABLES = ("mass", "energy", "action", "gap_plus", "gap_minus", "centers")


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class SweepSpec:
    parameter: str
    start: float
    stop: float
    count: int
    spacing: str = "linear"

    def __post_init__(self):
        if self.parameter not in SWEEP_PARAMETERS:
            raise UsageError(f"cannot sweep {self.parameter!r}")
        if not (math.isfinite(self.start) and math.isfinite(self.stop) and self.start < self.stop):
            raise UsageError("sweep needs finite start < stop")
        if self.count < 2:
            raise UsageError("sweep count must be at least 2")
        if self.spacing == "log" and not self.start > 0:
            raise UsageError("log sweep needs start > 0")

    @classmethod
    def parse(cls, text: str, parameter: str) -> "SweepSpec":
        parts = text.split(":")
        if len(parts) not in (3, 4) or (len(parts) == 4 and parts[3] not in ("log", "linear")):
            raise UsageError(f"malformed sweep {text!r}; expected start:stop:count[:log]")
        try:
            start, stop, count = float(parts[0]), float(parts[1]), int(parts[2])
        except ValueError:
            raise UsageError(f"malformed sweep {text!r}") from None
        return cls(parameter, start, stop, count, parts[3] if len(parts) == 4 else "linear")

    def values(self) -> list[float]:
        if self.spacing == "log":
            return [float(v) for v in np.geomspace(self.start, self.stop, self.count)]
        return [float(v) for v in np.linspace(self.start, self.stop, self.count)]


# -- output -----------------------------------------------------------------------------

def _cell(v) -> str:
    if v is None:
        return ""
    if isinstance(v, bool):
        return str(v).lower()
    if isinstance(v, float):
        return repr(v)
    return str(v)


def _flatten(record: dict, prefix: str = "") -> dict:
    out = {}
    for key, value in record.items():
        name = f"{prefix}{key}"
        if isinstance(value, dict):
            out.update(_flatten(value, name + "."))
        elif isinstance(value, (list, tuple)):
            out.update({f"{name}.{i}": v for i, v in enumerate(value)})
        else:
            out[name] = value
    return out


def to_csv(rows: list[dict]) -> str:
    flat = [_flatten(r) for r in rows]
    header: list[str] = []
    for row in flat:
        header += [k for k in row if k not in header]
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in flat:
        writer.writerow([_cell(row.get(k)) for k in header])
    return buf.getvalue()


def to_json(document: dict) -> str:
    return json.dumps({"schema_version": SCHEMA_VERSION, **document}, indent=2) + "\n"


def emit(args, command: str, rows: list[dict], extra: dict | None = None) -> None:
    text = to_csv(rows) if args.out == "csv" else to_json({"command": command, **(extra or {}),
                                                            "records": rows})
    if args.output:
        with open(args.output, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# -- state selection --------------------------------------------------------------------

def _positive(args, name: str) -> float:
    value = getattr(args, name)
    if value is None or not value > 0:
        raise UsageError(f"--{name.replace('lam', 'lambda')} must be a positive number")
    return value


def _point(args) -> tuple[str, float]:
    if (args.omega is None) == (args.rho is None):
        raise UsageError("give exactly one of --omega and --rho")
    if args.omega is not None:
        return "omega", _positive(args, "omega")
    return "rho", _positive(args, "rho")


def _selected_tag(args) -> FamilyTag | None:
    if args.family is None:
        if args.branch is not None:
            raise UsageError("--branch needs --family")
        return None
    family = Family.from_slug(args.family)
    if not family.asymmetric:
        if args.branch is not None:
            raise UsageError(f"{family.slug} has no branches")
        return FamilyTag(family)
    return FamilyTag(family, -1 if args.branch == "minus" else 1)


def _dprime_tags(args, gamma: float, omega: float | None, rho: float | None) -> list[FamilyTag]:
    selected = _selected_tag(args)
    if omega is not None:
        tags = dprime.existing_tags(gamma, omega)
    else:
        tags = [t for t in BIFURCATION_TAGS
                if t.family is not Family.ASYM_MINUS or rho > dprime.mass_threshold(gamma, args.lam)]
    if selected is None:
        return tags
    if selected not in tags:
        where = f"omega = {omega:g}" if omega is not None else f"rho = {rho:g}"
        raise ThresholdViolation(f"{selected} does not exist at gamma = {gamma:g}, {where}")
    return [selected]


def _states(args) -> list[tuple[str, object, object, object]]:
    """(tag, state, model, closed-form observables) at the requested point."""
    kind, value = _point(args)
    lam = _positive(args, "lam")
    if args.model == "delta":
        if args.family is not None or args.branch is not None:
            raise UsageError("--family/--branch apply to the delta-prime model only")
        model = DeltaModel(_positive(args, "alpha"), lam)
        omega = value if kind == "omega" else delta_mod.omega_from_mass(model, value)
        st = delta_mod.delta_state(model, omega)
        return [("delta", st, model, delta_mod.delta_observables(model, omega))]
    gamma = _positive(args, "gamma")
    model = DeltaPrimeModel(gamma, lam)
    out = []
    for tag in _dprime_tags(args, gamma, value if kind == "omega" else None,
                            value if kind == "rho" else None):
        omega = value if kind == "omega" else dprime.omega_from_mass(tag, gamma, lam, value)
        out.append((tag, dprime.state(tag, gamma, lam, omega), model,
                    dprime.dprime_observables(tag, gamma, lam, omega)))
    return out


def _branch_name(tag) -> str | None:
    if isinstance(tag, FamilyTag) and tag.branch is not None:
        return "plus" if tag.branch > 0 else "minus"
    return None


def _family_name(tag) -> str:
    return tag.family.slug if isinstance(tag, FamilyTag) else "delta"


# -- commands ---------------------------------------------------------------------------

def cmd_families(args) -> int:
    rows = []
    for tag, st, model, closed in _states(args):
        x1, x2 = st.peaks
        rows.append({
            "tag": str(tag), "family": _family_name(tag), "branch": _branch_name(tag),
            "signs": [st.left.sign, st.right.sign], "centers": [x1, x2],
            "A": st.amplitude, "B": st.width,
            "observables": closed.as_dict(),
            "residuals": dataclasses.asdict(residuals(st, model)),
        })
    emit(args, "families", rows)
    return EXIT_OK


def cmd_observables(args) -> int:
    rows = []
    for tag, st, model, closed in _states(args):
        quad = quadrature_observables(st, model)
        row = {"tag": str(tag), "omega": closed.omega}
        for name in ("mass", "energy", "action"):
            row[name] = getattr(closed, name)
            row[f"{name}_quadrature"] = getattr(quad, name)
        rows.append(row)
    emit(args, "observables", rows)
    return EXIT_OK


BIFURCATION_TAGS = [FamilyTag(Family.SYM), FamilyTag(Family.ASYM_PLUS, 1), FamilyTag(Family.ASYM_PLUS, -1),
                    FamilyTag(Family.ANTISYM), FamilyTag(Family.ASYM_MINUS, 1),
                    FamilyTag(Family.ASYM_MINUS, -1)]
FAMILY_TAGS = [FamilyTag(f) for f in Family]


def _sweep_point(args, spec: SweepSpec, p: float) -> dict:
    """Parameters at sweep value ``p``; the point is fixed by omega or rho."""
    params = {"alpha": args.alpha, "gamma": args.gamma, "lam": args.lam, "omega": args.omega,
              "rho": args.rho}
    key = "lam" if spec.parameter == "lambda" else spec.parameter
    params[key] = p
    if spec.parameter in ("omega", "rho"):
        params["rho" if key == "omega" else "omega"] = None
    elif (params["omega"] is None) == (params["rho"] is None):
        raise UsageError("sweeping a coupling needs exactly one of --omega and --rho")
    for name in ("gamma", "lam") if args.model == "deltaprime" else ("alpha", "lam"):
        if params[name] is None or not params[name] > 0:
            raise UsageError(f"{name} must be positive along the sweep")
    return params


def _dprime_omega(tag, prm) -> float | None:
    if prm["omega"] is not None:
        return prm["omega"] if dprime.exists(tag.family, prm["gamma"], prm["omega"]) else None
    try:
        return dprime.omega_from_mass(tag, prm["gamma"], prm["lam"], prm["rho"])
    except ThresholdViolation:
        return None


def _bifurcation_row(args, spec: SweepSpec, p: float) -> dict:
    prm = _sweep_point(args, spec, p)
    row = {spec.parameter: p}
    obs = args.observable
    if args.model == "delta":
        model = DeltaModel(prm["alpha"], prm["lam"])
        omega = prm["omega"] if prm["omega"] is not None else delta_mod.omega_from_mass(model, prm["rho"])
        present = omega > model.threshold
        if obs in ("gap_plus", "gap_minus"):
            raise UsageError(f"{obs} is a delta-prime observable")
        if obs == "centers":
            x = delta_mod.xbar(model, omega) if present else None
            row.update({"delta.x1": None if x is None else -x, "delta.x2": x})
        else:
            row["delta"] = getattr(delta_mod.delta_observables(model, omega), obs) if present else None
        return row
    gamma, lam = prm["gamma"], prm["lam"]
    if obs in ("gap_plus", "gap_minus"):
        omega = prm["omega"]
        if omega is None:
            raise UsageError("action gaps are defined at fixed omega")
        plus, minus = dprime.action_gaps(gamma, lam, omega)
        row[obs] = plus if obs == "gap_plus" else minus
        return row
    if obs == "centers":
        for tag in BIFURCATION_TAGS:
            omega = _dprime_omega(tag, prm)
            x1, x2 = dprime.state(tag, gamma, lam, omega).peaks if omega is not None else (None, None)
            row[f"{tag}.x1"], row[f"{tag}.x2"] = x1, x2
        return row
    for tag in FAMILY_TAGS:
        omega = _dprime_omega(tag, prm)
        row[str(tag)] = (getattr(dprime.dprime_observables(tag, gamma, lam, omega), obs)
                         if omega is not None else None)
    return row


def cmd_bifurcation(args) -> int:
    if args.sweep is None:
        raise UsageError("bifurcation needs --sweep start:stop:count[:log]")
    spec = SweepSpec.parse(args.sweep, args.parameter)
    rows = [_bifurcation_row(args, spec, p) for p in spec.values()]
    emit(args, "bifurcation", rows, {"sweep": dataclasses.asdict(spec), "observable": args.observable})
    return EXIT_OK


def cmd_sample(args) -> int:
    if args.n < 2 or not (math.isfinite(args.xmin) and math.isfinite(args.xmax) and args.xmin < args.xmax):
        raise UsageError("sample needs xmin < xmax and n >= 2")
    if args.model == "deltaprime" and args.family is None:
        raise UsageError("sample needs --family for the delta-prime model")
    (tag, st, _, _), = _states(args)
    rows = []
    for x in np.linspace(args.xmin, args.xmax, args.n):
        x = float(x)
        if x == 0.0:
            # the jump at the origin gets one row per side
            rows.append({"x": -0.0, "psi": float(st.left.value(0.0))})
            rows.append({"x": 0.0, "psi": float(st.right.value(0.0))})
        else:
            piece = st.left if x < 0 else st.right
            rows.append({"x": x, "psi": float(piece.value(x))})
    emit(args, "sample", rows, {"tag": str(tag), "omega": st.omega})
    return EXIT_OK


def cmd_limit(args) -> int:
    if args.limit is None:
        raise UsageError(f"limit needs --limit {{{','.join(LIMIT_NAMES)}}}")
    rho = _positive(args, "rho")
    if args.model == "delta":
        family = "delta"
        fixed = {"alpha": args.alpha, "lam": args.lam, "rho": rho}
    else:
        tag = _selected_tag(args)
        if tag is None:
            raise UsageError("limit needs --family for the delta-prime model")
        family = tag
        fixed = {"gamma": args.gamma, "lam": args.lam, "rho": rho}
    sequence = None
    if args.sweep is not None:
        spec = SweepSpec.parse(args.sweep, "gamma" if args.limit.startswith("gamma") else
                               "alpha" if args.limit == "alpha_to_zero" else "lambda")
        sequence = spec.values()
        if args.limit != "gamma_to_infinity":
            sequence = sequence[::-1]
    study = run_limit_study(family, args.limit, fixed, sequence)
    doc = study.as_dict()
    rows = doc.pop("points")
    emit(args, "limit", rows, doc)
    return EXIT_OK


def cmd_verify(args) -> int:
    if not args.tol > 0:
        raise UsageError("--tol must be positive")
    results = suite.run(args.suite, args.tol)
    rows = [{"suite": name, **c.as_dict()} for name, checks in results.items() for c in checks]
    passed = all(r["passed"] for r in rows)
    emit(args, "verify", rows, {"suite": args.suite, "tol_scale": args.tol, "passed": passed})
    return EXIT_OK if passed else EXIT_FAIL


# -- parser -----------------------------------------------------------------------------

COMMANDS = {
    "families": (cmd_families, "every stationary state existing at the given point", "json"),
    "observables": (cmd_observables, "closed-form and quadrature mass, energy, action", "json"),
    "bifurcation": (cmd_bifurcation, "an observable along a parameter sweep", "csv"),
    "sample": (cmd_sample, "psi(x) on a uniform grid", "csv"),
    "limit": (cmd_limit, "a fixed-mass limit study", "json"),
    "verify": (cmd_verify, "run the verification suites", "json"),
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--model", choices=("delta", "deltaprime"), default="deltaprime")
    common.add_argument("--alpha", type=float, default=1.0)
    common.add_argument("--gamma", type=float, default=1.0)
    common.add_argument("--lambda", dest="lam", type=float, default=1.0)
    common.add_argument("--omega", type=float)
    common.add_argument("--rho", type=float)
    common.add_argument("--family", choices=[f.slug for f in Family])
    common.add_argument("--branch", choices=("plus", "minus"))
    common.add_argument("--sweep", metavar="START:STOP:COUNT[:log]")
    common.add_argument("--parameter", choices=SWEEP_PARAMETERS, default="omega")
    common.add_argument("--observable", choices=OBSERVABLES, default="action")
    common.add_argument("--limit", choices=LIMIT_NAMES)
    common.add_argument("--xmin", type=float, default=-10.0)
    common.add_argument("--xmax", type=float, default=10.0)
    common.add_argument("--n", type=int, default=201)
    common.add_argument("--suite", choices=("all",) + suite.SUITES, default="all")
    common.add_argument("--tol", type=float, default=1.0,
                        help="multiplier applied to every verification tolerance")
    common.add_argument("--output", metavar="PATH")
    common.add_argument("--seed-none", action="store_true",
                        help="accepted for reproducibility scripts; nothing here is random")

    parser = argparse.ArgumentParser(prog="nlsdefects", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name, (fn, help_text, default_out) in COMMANDS.items():
        p = sub.add_parser(name, parents=[common], help=help_text)
        p.add_argument("--out", choices=("csv", "json"), default=default_out)
        p.set_defaults(handler=fn)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return args.handler(args)
    except (ThresholdViolation, UndefinedLimit) as exc:
        print(f"nlsdefects: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except (UsageError, ValueError) as exc:
        print(f"nlsdefects: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())

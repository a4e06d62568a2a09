"""Command-line front end.

Every command reads a field (``--field``), builds a :class:`JobSpec`, runs
exactly one library operation and prints a :class:`Report` either as text or
as JSON (``--format json``). Exit status: 0 when a verdict was computed
(including negative ones), 2 on input errors, 3 when a budget was exceeded.

Structured reports have the keys ``schema_version``, ``command``, ``field``,
``verdict``, ``witnesses``, ``notes`` and ``timing_seconds``; they are
emitted with sorted keys so identical jobs give identical bytes apart from
the timing.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import asdict, dataclass, field as dc_field

from .algebra import (
    FiniteAlgebra,
    GenMatrix,
    closure_echelon,
    is_etale,
    make_monogenic,
    make_split_algebra,
    min_generators,
    separating_polynomials,
    trace_form,
    violated_pairs,
)
from .classify import b_point, classify, classify_monogenic, homotopy_path, stabilize
from .cohomology import b_stabilization_table, chase_certificate, ojanguren_certificate
from .errors import BudgetExceededError, DoesNotSplitError, EtaleError, ParseError
from .families import (
    chase_rings,
    dq_generation_certificate,
    dq_ring,
    fiberwise_generation_scan,
    subalgebra_certificate_check,
)
from .fields import GF, Field, parse_field
from .linalg import det
from .polys import UniPoly
from .quadratic import algebra_from_line, generation_equivalence_check, trace_kernel

SCHEMA_VERSION = 1


@dataclass
class JobSpec:
    command: str
    field: str
    payload: dict = dc_field(default_factory=dict)


@dataclass
class Report:
    command: str
    field: str
    verdict: object
    witnesses: dict = dc_field(default_factory=dict)
    notes: list = dc_field(default_factory=list)
    timing_seconds: float = 0.0
    schema_version: int = SCHEMA_VERSION
    exit_code: int = 0

    def to_dict(self):
        d = asdict(self)
        d.pop("exit_code")
        return d

    @classmethod
    def from_json(cls, text: str) -> "Report":
        d = json.loads(text)
        if d.get("schema_version") != SCHEMA_VERSION:
            raise ValueError(f"unsupported schema version {d.get('schema_version')!r}")
        return cls(**d)


# --- input parsing ------------------------------------------------------------

def _json(text: str, what: str, offset: int = 0):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"malformed {what}: {exc.msg}", text, exc.pos + offset) from None


def _scalar(F: Field, x, text=""):
    if isinstance(x, bool):
        raise ParseError("booleans are not field elements", text, 0)
    if isinstance(x, int):
        return F.convert(x)
    if isinstance(x, str):
        return F.parse(x)
    raise ParseError(f"cannot read {x!r} as an element of {F.name}", text, 0)


def parse_vectors(F: Field, text: str):
    """``[[0,0,1],[0,1,0]]``: a list of coordinate lists (strings like "1/2" allowed)."""
    data = _json(text, "vector list")
    if not isinstance(data, list) or not all(isinstance(v, list) for v in data):
        raise ParseError("expected a list of coordinate lists", text, 0)
    return [tuple(_scalar(F, x, text) for x in v) for v in data]


def parse_algebra(F: Field, text: str) -> FiniteAlgebra:
    """``split:N``, ``monogenic:[c_n,...,c_0]`` (monic, highest first) or ``table:[[[...]]]``."""
    kind, sep, body = text.partition(":")
    if not sep:
        raise ParseError("algebra must look like kind:data", text, len(text))
    offset = len(kind) + 1
    if kind == "split":
        try:
            n = int(body)
        except ValueError:
            raise ParseError("split dimension must be an integer", text, offset) from None
        if n < 1:
            raise ParseError("split dimension must be positive", text, offset)
        return make_split_algebra(F, n)
    if kind == "monogenic":
        coeffs = _json(body, "coefficient list", offset)
        if not isinstance(coeffs, list):
            raise ParseError("expected a coefficient list", text, offset)
        f = UniPoly(F, [_scalar(F, c, text) for c in reversed(coeffs)])
        if not f.is_monic() or f.degree < 1:
            raise ParseError("monogenic polynomial must be monic of degree >= 1", text, offset)
        return make_monogenic(f)
    if kind == "table":
        data = _json(body, "structure constants", offset)
        consts = [[[_scalar(F, x, text) for x in v] for v in row] for row in data]
        try:
            return FiniteAlgebra(F, consts, raw=True)
        except (ValueError, AssertionError) as exc:
            raise ParseError(f"bad structure constants: {exc}", text, offset) from None
    raise ParseError(f"unknown algebra kind {kind!r}", text, 0)


def _fmt(F, xs):
    return [F.format(x) for x in xs]


# --- command handlers ---------------------------------------------------------

def _cmd_check_etale(job, F, opts):
    A = parse_algebra(F, job.payload["algebra"])
    d = det(F, trace_form(A))
    return is_etale(A), {"dimension": A.dim, "trace_form_det": F.format(d)}, []


def _cmd_check_generates(job, F, opts):
    A = parse_algebra(F, job.payload["algebra"])
    gens = parse_vectors(F, job.payload["gens"])
    ech = closure_echelon(A, [A.coerce(g) for g in gens])
    w = {"closure_dimension": len(ech), "dimension": A.dim,
         "closure_basis": [_fmt(F, v) for v in ech.basis()]}
    if A.kind == "split" and gens:
        w["violated_pairs"] = [list(p) for p in violated_pairs(GenMatrix(F, gens, raw=True))]
    return len(ech) == A.dim, w, []


def _cmd_min_generators(job, F, opts):
    A = parse_algebra(F, job.payload["algebra"])
    r_max = job.payload.get("r_max") or A.dim
    res = min_generators(A, r_max, budget=opts["budget"], seed=opts["seed"])
    w = {"exact": res.exact, "closures": res.closures,
         "witness": [_fmt(F, v) for v in res.witness] if res.witness is not None else None}
    notes = [] if res.exact else ["budget exceeded: randomized fallback, value is an upper bound"]
    return res.value, w, notes


def _cmd_separating_polys(job, F, opts):
    M = GenMatrix(F, parse_vectors(F, job.payload["matrix"]), raw=True)
    bad = violated_pairs(M)
    if bad:
        return False, {"violated_pairs": [list(p) for p in bad]}, []
    polys = separating_polynomials(M)
    return True, {"polynomials": [repr(p) for p in polys]}, []


def _cmd_classify(job, F, opts):
    A = parse_algebra(F, job.payload["algebra"])
    gens = parse_vectors(F, job.payload["gens"])
    if len(gens) != 1:
        return classify(A, gens).to_json(), {}, []
    # one generator: the coefficient chart is the verdict, the orbit form a witness
    w = {}
    try:
        w["orbit_form"] = classify(A, gens).to_json()
    except DoesNotSplitError:
        w["orbit_form"] = None
    return classify_monogenic(A, gens[0]).to_json(), w, []


def _cmd_quadratic_roundtrip(job, F, opts):
    A = parse_algebra(F, job.payload["algebra"])
    line = trace_kernel(A)
    rebuilt = algebra_from_line(line.phi, F)
    phi2 = trace_kernel(rebuilt).phi
    w = {"ell": _fmt(F, line.ell), "phi": F.format(line.phi), "rebuilt_phi": F.format(phi2),
         "etale": rebuilt.etale}
    return phi2 == line.phi, w, []


def _cmd_generation_equivalence(job, F, opts):
    A = parse_algebra(F, job.payload["algebra"])
    alg, line = generation_equivalence_check(A, parse_vectors(F, job.payload["gens"]))
    return alg == line, {"algebra_side": alg, "line_side": line}, []


def _cmd_stabilize(job, F, opts):
    M = GenMatrix(F, parse_vectors(F, job.payload["matrix"]), raw=True)
    b = stabilize(b_point(M), job.payload["r"])
    return b.to_json(), {"source": b_point(M).to_json()}, []


def _cmd_homotopy_path(job, F, opts):
    A = parse_algebra(F, job.payload["algebra"])
    gens = parse_vectors(F, job.payload["gens"])
    gens2 = parse_vectors(F, job.payload["gens2"])
    cps = opts.get("checkpoints")
    if cps is not None:
        cps = [F.parse(c) for c in cps.split(",") if c.strip()]
    rep = homotopy_path(A, gens, gens2, cps)
    w = {
        "r": rep.r,
        "main": {"generic": rep.main.generic, "checkpoints": rep.main.checkpoints},
        "swap": {"generic": rep.swap.generic, "checkpoints": rep.swap.checkpoints},
        "start_is_stabilized": rep.start_is_stabilized,
        "end_is_stabilized": rep.end_is_stabilized,
    }
    if rep.start_point is not None:
        w["start_point"] = rep.start_point.to_json()
        w["end_point"] = rep.end_point.to_json()
    return rep.ok, w, list(rep.notes)


def _cmd_family_scan(job, F, opts):
    fam, r = job.payload["family"], job.payload["r"]
    if fam == "sphere":
        ring, _ = chase_rings(r, F)
        default = ["z1"]
    elif fam == "dq":
        ring = dq_ring(r, F)
        default = [f"x{i + 1}" for i in range(r)]
    else:
        raise ParseError(f"unknown family {fam!r} (expected sphere or dq)", fam, 0)
    names = job.payload.get("gens") or default
    if isinstance(names, str):
        names = [n for n in names.replace(",", " ").split() if n]
    for n in names:
        if n not in ring.names:
            raise ParseError(f"unknown variable {n!r}", " ".join(names), 0)
    gens = [ring.var(n) for n in names]
    rep = fiberwise_generation_scan(ring, gens, opts["degree_bound"], budget=opts["budget"])
    w = {
        "orbits_checked": rep.orbits_checked,
        "failures": [{"degree": c.degree, "kind": c.kind, "point": _fmt(GF(F.characteristic, c.degree), c.point)}
                     for c in rep.failures[:20]],
        "skipped": len(rep.skipped),
        "passed": rep.passed,
    }
    return rep.verdict, w, ["a degree-bounded scan is a necessary check, not a proof of generation"] + rep.warnings


def _cmd_certificate_check(job, F, opts):
    r = job.payload["r"]
    if r < 2 or r % 2:
        raise ParseError("r must be even and at least 2", str(r), 0)
    ring, gens, claims, scalars = dq_generation_certificate(r // 2, F)
    res = subalgebra_certificate_check(ring, gens, claims, scalars)
    w = {"ring": repr(ring), "generators": [repr(g) for g in gens],
         "claims": [{"target": t, "divisible": ok} for t, ok in res.claims]}
    return res.passed, w, []


def _certificate_witnesses(c):
    return {"nonzero": c.nonzero_witness, "vanishing": c.vanishing_witness,
            "witness_degrees": list(c.witness_degrees), "holds": c.holds}


def _cmd_certificate_chase(job, F, opts):
    c = chase_certificate(job.payload["r"])
    return c.verdict, _certificate_witnesses(c), []


def _cmd_certificate_ojanguren(job, F, opts):
    c = ojanguren_certificate(job.payload["r"])
    return c.verdict, _certificate_witnesses(c), []


def _cmd_cohomology_table(job, F, opts):
    rows = b_stabilization_table(job.payload["r"])
    table = [{"degree": x.degree, "source_dim": x.source_dim, "target_dim": x.target_dim,
              "rank": x.rank, "computed": x.computed, "claimed": x.claimed,
              "discrepancy": x.discrepancy} for x in rows]
    flagged = [x.degree for x in rows if x.discrepancy]
    return {"discrepancy_degrees": flagged}, {"rows": table}, []


@dataclass(frozen=True)
class Command:
    handler: object
    operation: str   # the library operation this command dispatches to
    args: tuple      # payload arguments: (flag, type, required)
    help: str


_ALG = ("--algebra", str, True)
_GENS = ("--gens", str, True)

COMMANDS = {
    "check-etale": Command(_cmd_check_etale, "is_etale", (_ALG,), "trace-form test"),
    "check-generates": Command(_cmd_check_generates, "generates", (_ALG, _GENS), "closure test"),
    "min-generators": Command(_cmd_min_generators, "min_generators",
                              (_ALG, ("--r-max", int, False)), "least number of generators"),
    "separating-polys": Command(_cmd_separating_polys, "separating_polynomials",
                                (("--matrix", str, True),), "interpolating polynomials for a split matrix"),
    "classify": Command(_cmd_classify, "classify", (_ALG, _GENS), "classifying point"),
    "quadratic-roundtrip": Command(_cmd_quadratic_roundtrip, "trace_kernel", (_ALG,),
                                   "trace-zero line and back"),
    "generation-equivalence": Command(_cmd_generation_equivalence, "generation_equivalence_check",
                                      (_ALG, _GENS), "algebra versus line generation"),
    "stabilize": Command(_cmd_stabilize, "stabilize", (("--matrix", str, True), ("--r", int, True)),
                         "append zero sections"),
    "homotopy-path": Command(_cmd_homotopy_path, "homotopy_path",
                             (_ALG, _GENS, ("--gens2", str, True)), "elementary homotopy check"),
    "family-scan": Command(_cmd_family_scan, "fiberwise_generation_scan",
                           (("--family", str, True), ("--r", int, True), ("--gens", str, False)),
                           "fiberwise generation scan"),
    "certificate-check": Command(_cmd_certificate_check, "subalgebra_certificate_check",
                                 (("--r", int, True),), "symbolic generation certificate on the DQ ring"),
    "certificate-chase": Command(_cmd_certificate_chase, "chase_certificate", (("--r", int, True),),
                                 "cohomological lower bound for the sphere algebra"),
    "certificate-ojanguren": Command(_cmd_certificate_ojanguren, "ojanguren_certificate",
                                     (("--r", int, True),), "Chow-ring lower bound for the DQ algebra"),
    "cohomology-table": Command(_cmd_cohomology_table, "b_stabilization_table", (("--r", int, True),),
                                "per-degree stabilization ranks"),
}


def run(job: JobSpec, options=None) -> Report:
    """Dispatch one job; library errors propagate to the caller."""
    opts = {"budget": 2_000_000, "seed": 0, "degree_bound": 1, "checkpoints": None}
    opts.update(options or {})
    if job.command not in COMMANDS:
        raise ParseError(f"unknown command {job.command!r}", job.command, 0)
    F = parse_field(job.field)
    start = time.perf_counter()
    verdict, witnesses, notes = COMMANDS[job.command].handler(job, F, opts)
    elapsed = round(time.perf_counter() - start, 6)
    report = Report(job.command, F.name, verdict, witnesses, notes, elapsed)
    if job.command == "min-generators" and not witnesses["exact"]:
        report.exit_code = 3
    return report


def emit(report: Report, fmt: str = "human") -> str:
    if fmt == "json":
        return json.dumps(report.to_dict(), sort_keys=True, ensure_ascii=False) + "\n"
    lines = [f"command: {report.command}", f"field: {report.field}",
             f"verdict: {json.dumps(report.verdict, ensure_ascii=False)}"]
    for k in sorted(report.witnesses):
        lines.append(f"  {k}: {json.dumps(report.witnesses[k], ensure_ascii=False)}")
    for n in report.notes:
        lines.append(f"note: {n}")
    return "\n".join(lines) + "\n"


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--field", default="F2", help="Q, Fp, Fp^k, Q(t) or Fp(t)")
    common.add_argument("--format", choices=("human", "json"), default="human")
    common.add_argument("--budget", type=int, default=2_000_000)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--degree-bound", type=int, default=1)
    common.add_argument("--checkpoints", default=None, help="comma-separated field elements")
    parser = argparse.ArgumentParser(prog="etalegen", description="Generators of étale algebras.")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, cmd in COMMANDS.items():
        p = sub.add_parser(name, parents=[common], help=cmd.help)
        for flag, typ, required in cmd.args:
            p.add_argument(flag, type=typ, required=required)
    return parser


def job_from_args(args) -> tuple[JobSpec, dict]:
    cmd = COMMANDS[args.command]
    payload = {}
    for flag, _, _ in cmd.args:
        key = flag.lstrip("-").replace("-", "_")
        payload[key] = getattr(args, key)
    opts = {"budget": args.budget, "seed": args.seed, "degree_bound": args.degree_bound,
            "checkpoints": args.checkpoints}
    return JobSpec(args.command, args.field, payload), opts


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 2
    job, opts = job_from_args(args)
    try:
        report = run(job, opts)
    except BudgetExceededError as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return 3
    except (EtaleError, ValueError, ZeroDivisionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    sys.stdout.write(emit(report, args.format))
    return report.exit_code


if __name__ == "__main__":
    sys.exit(main())

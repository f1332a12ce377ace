"""Command-line front end.

Exit codes: 0 success, 2 invalid input, 3 enumeration guard exceeded.
"""
from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

from .cosets import minimal_double_coset_reps
from .errors import GuardExceeded, ValidationError
from .motive import MotiveDecomposition, conservation_check, decompose, nilpotence_bound
from .root_system import DynkinDiagram, build_root_system
from .tits import DiagramAutomorphism, ParabolicDatum, TitsIndex
from .weyl import LengthPolynomial, default_guard, degrees, group_order, longest_element, poincare_polynomial

EXIT_OK, EXIT_INVALID, EXIT_GUARD = 0, 2, 3


class InputError(ValidationError):
    """Malformed job description; the message names the offending field."""


def _loc(where: str, key: str) -> str:
    return f"--{key}" if where == "--args" else f"{where}.{key}"


def parse_nodes(text, where: str) -> list[int]:
    if isinstance(text, (list, tuple)):
        items = list(text)
    else:
        text = str(text).strip()
        items = [p for p in text.replace(" ", "").split(",") if p] if text else []
    try:
        return sorted({int(x) for x in items})
    except (TypeError, ValueError):
        raise InputError(f"{where}: expected comma-separated node indices, got {text!r}") from None


def parse_perm(value, where: str) -> DiagramAutomorphism:
    if isinstance(value, dict):
        if "perm" not in value:
            raise InputError(f"{where}: automorphism object needs a 'perm' key")
        value = value["perm"]
    if isinstance(value, str):
        value = [p for p in value.replace(" ", "").split(",") if p]
    try:
        return DiagramAutomorphism(tuple(int(x) for x in value))
    except (TypeError, ValueError):
        raise InputError(f"{where}: expected a permutation in image notation, got {value!r}") from None


@dataclass
class JobSpec:
    command: str
    diagram: str
    sigma0: list[int] = field(default_factory=list)
    galois: list[DiagramAutomorphism] = field(default_factory=list)
    I: list[int] | None = None
    J: list[int] | None = None
    K: list[int] | None = None
    guard: int | None = None
    check: bool = True
    d: int | None = None
    gap: int | None = None
    n_k: int | None = None
    n_bar: int | None = None

    @classmethod
    def from_mapping(cls, obj: dict, command: str | None, where: str) -> "JobSpec":
        if not isinstance(obj, dict):
            raise InputError(f"{where}: a job must be a JSON object")
        known = {"command", "diagram", "sigma0", "galois", "I", "J", "K", "guard", "check", "d", "gap", "n_k", "n_bar"}
        extra = set(obj) - known
        if extra:
            raise InputError(f"{where}: unknown keys {sorted(extra)}")
        cmd = obj.get("command", command)
        if cmd is None:
            raise InputError(f"{where}: missing 'command'")
        galois = obj.get("galois") or []
        if isinstance(galois, (dict, str)) or (galois and isinstance(galois[0], int)):
            galois = [galois]
        return cls(
            command=cmd,
            diagram=obj.get("diagram", ""),
            sigma0=parse_nodes(obj.get("sigma0", []), _loc(where, "sigma0")),
            galois=[parse_perm(g, _loc(where, f"galois[{k}]")) for k, g in enumerate(galois)],
            I=None if obj.get("I") is None else parse_nodes(obj["I"], _loc(where, "I")),
            J=None if obj.get("J") is None else parse_nodes(obj["J"], _loc(where, "J")),
            K=None if obj.get("K") is None else parse_nodes(obj["K"], _loc(where, "K")),
            guard=obj.get("guard"),
            check=bool(obj.get("check", True)),
            d=obj.get("d"),
            gap=obj.get("gap"),
            n_k=obj.get("n_k"),
            n_bar=obj.get("n_bar"),
        )

    def datum(self, where: str = "job") -> ParabolicDatum:
        diagram = self.parsed_diagram(where)
        I = self.sigma0 if self.I is None else self.I
        if self.J is None:
            raise InputError(_loc(where, "J") + ": required")
        return ParabolicDatum(TitsIndex(diagram, frozenset(self.sigma0), tuple(self.galois)), frozenset(I), frozenset(self.J))

    def parsed_diagram(self, where: str = "job") -> DynkinDiagram:
        if not self.diagram:
            raise InputError(_loc(where, "diagram") + ": required")
        try:
            return DynkinDiagram.parse(self.diagram)
        except ValidationError as exc:
            raise InputError(f"{_loc(where, 'diagram')}: {exc}") from None


def _poly(p) -> list[int]:
    return list(p.coeffs)


def _rep_json(rep, rs) -> dict:
    return {
        "word": list(rep.word),
        "twist": rep.twist,
        "J_w": sorted(rep.j_w),
        "J_w_type": rs.subdiagram_type(rep.j_w),
    }


def _datum_json(pd: ParabolicDatum) -> dict:
    return {
        "diagram": str(pd.index.diagram),
        "sigma0": sorted(pd.index.sigma0),
        "galois": [{"perm": list(g.perm)} for g in pd.index.galois_gens],
        "I": sorted(pd.I),
        "J": sorted(pd.J),
    }


def decomposition_json(md: MotiveDecomposition, report=None) -> dict:
    out = _datum_json(md.datum)
    out["levi"] = md.summands[0].levi.type if md.summands else "-"
    out["summands"] = [
        {
            "twist": s.twist,
            "orbit_size": s.orbit_size,
            "pieces": [_rep_json(p, md.root_system) for p in s.pieces],
        }
        for s in md.summands
    ]
    if report is not None:
        out["conservation"] = {"pass": report.passed, "lhs": _poly(report.lhs), "rhs": _poly(report.rhs)}
    return out


def _fmt_set(K) -> str:
    return "{" + ",".join(map(str, sorted(K))) + "}"


def _fmt_word(word) -> str:
    return "".join(f"s{i}" for i in word) or "1"


def _fmt_poly(coeffs) -> str:
    return str(LengthPolynomial(tuple(coeffs)))


def decomposition_text(data: dict) -> str:
    galois = " ".join("[" + ",".join(map(str, g["perm"])) + "]" for g in data["galois"]) or "identity"
    lines = [
        f"{data['diagram']}  sigma0={_fmt_set(data['sigma0'])}  galois={galois}  "
        f"I={_fmt_set(data['I'])}  J={_fmt_set(data['J'])}",
        f"Levi factor on I: {data['levi']}",
        f"{len(data['summands'])} summands, "
        f"{sum(len(s['pieces']) for s in data['summands'])} geometric pieces",
    ]
    for k, s in enumerate(data["summands"], 1):
        lines.append(f"summand {k}: twist {s['twist']}, orbit size {s['orbit_size']}")
        for p in s["pieces"]:
            lines.append(
                f"  w = {_fmt_word(p['word'])}  l(w) = #(R+ & wR-) = {p['twist']}  "
                f"J_w = {_fmt_set(p['J_w'])} ({p['J_w_type']})"
            )
    if "conservation" in data:
        c = data["conservation"]
        lines.append(f"conservation: {'pass' if c['pass'] else 'FAIL'}")
        lines.append(f"  lhs = {_fmt_poly(c['lhs'])}")
        lines.append(f"  rhs = {_fmt_poly(c['rhs'])}")
    return "\n".join(lines)


def cosets_text(data: dict) -> str:
    lines = [f"{data['diagram']}  I={_fmt_set(data['I'])}  J={_fmt_set(data['J'])}  |E| = {len(data['reps'])}"]
    for r in data["reps"]:
        lines.append(f"  {_fmt_word(r['word'])}  twist {r['twist']}  J_w = {_fmt_set(r['J_w'])} ({r['J_w_type']})")
    return "\n".join(lines)


def weyl_text(data: dict) -> str:
    return "\n".join(
        [
            f"{data['diagram']}  K={_fmt_set(data['K'])}",
            f"  order           {data['order']}",
            f"  positive roots  {data['positive_roots']}",
            f"  degrees         {data['degrees']}",
            f"  Poincare        {_fmt_poly(data['poincare'])}",
            f"  longest word    {_fmt_word(data['longest_word'])}",
        ]
    )


def run_job(job: JobSpec, where: str = "job") -> dict:
    guard = default_guard() if job.guard is None else int(job.guard)
    if job.command == "decompose":
        md = decompose(job.datum(where), guard)
        report = conservation_check(md, strict=False) if job.check else None
        return decomposition_json(md, report)
    if job.command == "cosets":
        rs = build_root_system(job.parsed_diagram(where))
        I = job.sigma0 if job.I is None else job.I
        if job.J is None:
            raise InputError(_loc(where, "J") + ": required")
        reps = minimal_double_coset_reps(rs, I, job.J, guard)
        return {
            "diagram": str(rs.diagram),
            "I": sorted(I),
            "J": sorted(job.J),
            "reps": [_rep_json(r, rs) for r in reps],
        }
    if job.command == "weyl":
        rs = build_root_system(job.parsed_diagram(where))
        K = sorted(rs.nodes(job.K))
        return {
            "diagram": str(rs.diagram),
            "K": K,
            "order": group_order(rs, K),
            "degrees": degrees(rs, K),
            "positive_roots": sum(1 for b in rs.positive_roots if all(c == 0 or i + 1 in K for i, c in enumerate(b))),
            "poincare": _poly(poincare_polynomial(rs, K, guard)),
            "longest_word": longest_element(rs, K).reduced_word(),
        }
    if job.command == "bound":
        if job.d is None:
            raise InputError(_loc(where, "d") + ": required")
        if job.gap is not None:
            n_k, n_bar = 1, 1 + int(job.gap)
        elif job.n_k is not None and job.n_bar is not None:
            n_k, n_bar = job.n_k, job.n_bar
        else:
            raise InputError(f"{where}: give either gap or both n_k and n_bar")
        try:
            value = nilpotence_bound(job.d, n_k, n_bar)
        except ValueError as exc:
            raise InputError(f"{where}: {exc}") from None
        return {"d": int(job.d), "n_k": int(n_k), "n_bar": int(n_bar), "bound": value}
    raise InputError(f"{_loc(where, 'command')}: unknown command {job.command!r}")


_TEXT = {"decompose": decomposition_text, "cosets": cosets_text, "weyl": weyl_text}


def render(command: str, data: dict, fmt: str) -> str:
    if fmt == "json":
        return dumps(data)
    if "error" in data:
        return f"error: {data['error']}"
    if command == "bound":
        return str(data["bound"])
    return _TEXT[command](data)


def dumps(data) -> str:
    """Canonical JSON: sorted keys, two-space indent."""
    return json.dumps(data, sort_keys=True, indent=2)


def _safe(job: JobSpec, where: str) -> tuple[int, dict]:
    prefix = "" if where == "--args" else f"{where}: "
    try:
        return EXIT_OK, run_job(job, where)
    except GuardExceeded as exc:
        return EXIT_GUARD, {"error": f"{prefix}{exc}", "exit": EXIT_GUARD}
    except ValidationError as exc:
        return EXIT_INVALID, {"error": f"{prefix}{exc}", "exit": EXIT_INVALID}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="bbdecomp", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, datum=True):
        p.add_argument("--diagram", help='Dynkin diagram literal, e.g. "D6" or "A2xA1"')
        p.add_argument("--format", choices=["json", "text"], default="text")
        p.add_argument("--guard", type=int, help="enumeration guard (default: $MOTIVE_GUARD or 10^7)")
        p.add_argument("--input", help="JSON file holding a job object or an array of jobs")
        if datum:
            p.add_argument("--sigma0", default=None, help="anisotropic kernel nodes, e.g. 2,3,4")
            p.add_argument("--galois", action="append", default=[], help="*-action generator in image notation")
            p.add_argument("--I", dest="I", default=None, help='nodes of I ("" for the empty set; default sigma0)')
            p.add_argument("--J", dest="J", default=None, help='nodes of J ("" for the empty set)')

    p = sub.add_parser("decompose", help="full decomposition with conservation check")
    common(p)
    p.add_argument("--no-check", dest="check", action="store_false", help="skip the conservation check")
    common(sub.add_parser("cosets", help="minimal double coset representatives"))
    p = sub.add_parser("weyl", help="Weyl group statistics")
    common(p, datum=False)
    p.add_argument("--K", dest="K", default=None, help="restrict to the parabolic subgroup W_K")
    p = sub.add_parser("bound", help="nilpotence exponent (d+1)^(n_bar-n_k)")
    p.add_argument("--d", type=int, help="dimension bound d (required)")
    p.add_argument("--gap", type=int, help="n_bar - n_k")
    p.add_argument("--n-k", dest="n_k", type=int)
    p.add_argument("--n-bar", dest="n_bar", type=int)
    p.add_argument("--format", choices=["json", "text"], default="text")
    p.add_argument("--input", help="JSON file holding a job object or an array of jobs")
    return parser


def _job_from_args(args) -> JobSpec:
    obj = {"command": args.command}
    for key in ("diagram", "guard", "d", "gap", "n_k", "n_bar", "K"):
        val = getattr(args, key, None)
        if val is not None:
            obj[key] = val
    if hasattr(args, "sigma0"):
        if args.sigma0 is not None:
            obj["sigma0"] = args.sigma0
        if args.I is not None:
            obj["I"] = args.I
        if args.J is not None:
            obj["J"] = args.J
        obj["galois"] = list(args.galois)
    if hasattr(args, "check"):
        obj["check"] = args.check
    return JobSpec.from_mapping(obj, args.command, "--args")


def run(argv=None) -> tuple[int, str]:
    """Parse ``argv``, run the job(s), return ``(exit_code, report)``."""
    args = build_parser().parse_args(argv)
    fmt = args.format
    source = getattr(args, "input", None)
    if source:
        try:
            with open(source, encoding="utf-8") as fh:
                payload = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            return EXIT_INVALID, f"error: {source}: {exc}"
        batch = isinstance(payload, list)
        items = payload if batch else [payload]
        jobs, results = [], []
        for k, obj in enumerate(items):
            where = f"{source}[{k}]" if batch else source
            try:
                job = JobSpec.from_mapping(obj, args.command, where)
                guard = getattr(args, "guard", None)
                if guard is not None and job.guard is None:
                    job.guard = guard
                jobs.append((job, where))
            except ValidationError as exc:
                jobs.append((None, f"{exc}"))
        with ThreadPoolExecutor() as pool:
            results = list(
                pool.map(
                    lambda jw: _safe(*jw) if jw[0] is not None else (EXIT_INVALID, {"error": jw[1], "exit": EXIT_INVALID}),
                    jobs,
                )
            )
        code = max((c for c, _ in results), default=EXIT_OK)
        if fmt == "json":
            out = dumps([d for _, d in results] if batch else results[0][1])
        else:
            out = "\n\n".join(
                render(job.command if job else args.command, d, fmt) for (job, _), (_, d) in zip(jobs, results)
            )
        return code, out
    try:
        job = _job_from_args(args)
    except ValidationError as exc:
        return EXIT_INVALID, f"error: {exc}"
    code, data = _safe(job, "--args")
    return code, render(job.command, data, fmt)


def main(argv=None) -> int:
    code, out = run(argv)
    stream = sys.stdout if code == EXIT_OK else sys.stderr
    print(out, file=stream)
    return code


if __name__ == "__main__":
    sys.exit(main())

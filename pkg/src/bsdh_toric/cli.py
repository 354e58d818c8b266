"""Command line front end.

A job is a YAML (or JSON) document::

    root_system: {family: B, rank: 2}      # or {cartan: [[2, -1], [-2, 2]]}
    word: [2, 1]
    divisor: {"1+": 1, "2-": "1/2"}        # for ample / nef / convert
    options: {a: [0, "1/3"], walls: [["2+", "3-"]]}

Exit status: 0 on success, 1 for invalid input, 2 when an internal
cross-check fails.
"""

import argparse
import json
import sys
from fractions import Fraction

import yaml

from . import bott_fan, classify, curves, fuzz, oracles, root_data
from .bott_fan import RayId
from .errors import ConsistencyError, InvalidInputError

COMMANDS = ("fan", "matrix", "classify", "ample", "nef", "mori", "intersect", "logfano", "convert", "batch")
KLEIMAN_MAX_LENGTH = 10
ALL_WALLS_MAX_LENGTH = 12

EXIT_OK, EXIT_INVALID, EXIT_INTERNAL = 0, 1, 2


def _num(x):
    x = Fraction(x)
    return x.numerator if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _rational(x, what):
    if isinstance(x, bool):
        raise InvalidInputError(f"{what}: {x!r} is not a rational number")
    if isinstance(x, float):
        x = str(x)
    try:
        return Fraction(x)
    except (TypeError, ValueError, ZeroDivisionError):
        raise InvalidInputError(f"{what}: {x!r} is not a rational number") from None


class Job:
    def __init__(self, doc, default_command=None):
        if not isinstance(doc, dict):
            raise InvalidInputError("job document must be a mapping")
        self.command = default_command or doc.get("command")
        if self.command not in COMMANDS or self.command == "batch":
            raise InvalidInputError(f"unknown or missing command {self.command!r}")
        rs = doc.get("root_system")
        if not isinstance(rs, dict):
            raise InvalidInputError("root_system must be a mapping with family/rank or cartan")
        self.echo = {}
        if "cartan" in rs:
            mat = rs["cartan"]
            if not isinstance(mat, list) or not all(isinstance(row, list) for row in mat):
                raise InvalidInputError("cartan must be a list of rows")
            if not all(isinstance(x, int) and not isinstance(x, bool) for row in mat for x in row):
                raise InvalidInputError("cartan entries must be integers")
            self.gcm = root_data.GeneralizedCartanMatrix(mat)
        elif "family" in rs:
            rank = rs.get("rank", 2 if str(rs["family"]).upper() == "G2" else None)
            self.gcm = root_data.builtin_cartan(rs["family"], rank)
            self.echo = {"family": str(rs["family"]).upper(), "rank": rank}
        else:
            raise InvalidInputError("root_system needs either family/rank or cartan")
        word = doc.get("word")
        if not isinstance(word, list):
            raise InvalidInputError("word must be a list of simple root indices")
        self.word = root_data.validate_word(self.gcm, word)
        self.M = bott_fan.bott_matrix(self.gcm, self.word)
        self.divisor = None
        if doc.get("divisor") is not None:
            self.divisor = self._divisor(doc["divisor"])
        self.options = doc.get("options") or {}
        if not isinstance(self.options, dict):
            raise InvalidInputError("options must be a mapping")
        self.echo.update(cartan=[list(row) for row in self.gcm.entries], word=list(self.word))

    def _divisor(self, d):
        if not isinstance(d, dict):
            raise InvalidInputError("divisor must map ray labels like '1+' to rationals")
        out = {}
        for label, value in d.items():
            ray = RayId.parse(label)
            if not 1 <= ray.pos <= self.M.r:
                raise InvalidInputError(f"ray label {label!r} out of range 1..{self.M.r}")
            out[ray] = _rational(value, f"divisor[{label}]")
        return out

    def require_divisor(self):
        if self.divisor is None:
            raise InvalidInputError(f"command {self.command!r} needs a divisor")
        return self.divisor


def _divisor_out(M, D):
    return {ray.label: _num(D.get(ray, 0)) for ray in bott_fan.all_rays(M)}


def _fan(job, checks):
    M = job.M
    cert = bott_fan.smoothness_certificate(M)
    if checks is not None:
        bott_fan.smoothness_certificate(M, exhaustive=True)
        checks.append("smoothness_exhaustive")
    return {
        "r": M.r,
        "rays": {ray.label: list(bott_fan.ray_vector(M, ray)) for ray in bott_fan.all_rays(M)},
        "max_cones": 2 ** M.r,
        "smoothness": cert,
    }


def _matrix(job, checks):
    M = job.M
    return {"r": M.r, "bott_matrix": [list(row) for row in M.entries], "upper": M.upper()}


def _check_relations(job, checks):
    M = job.M
    fast = [curves.primitive_relation(M, i) for i in range(1, M.r + 1)]
    slow = [curves.primitive_relation(M, i, oracle=True) for i in range(1, M.r + 1)]
    if fast != slow:
        raise ConsistencyError("primitive relations: back-substitution and exhaustive search disagree")
    if oracles.mori_basis_from_walls(M) != [rel.curve_class() for rel in fast]:
        raise ConsistencyError("Mori basis: index-set walls and primitive relations disagree")
    checks.extend(["primitive_relations_exhaustive", "mori_basis_walls"])


def _check_divisor(job, D, checks):
    M = job.M
    _check_relations(job, checks)
    if oracles.d_values_from_walls(M, D) != classify.d_values(M, D):
        raise ConsistencyError("d-values disagree with wall intersections")
    checks.append("d_values_walls")
    if M.r <= KLEIMAN_MAX_LENGTH:
        ample, nef = oracles.kleiman(M, D)
        if (ample, nef) != (classify.is_ample(M, D), classify.is_nef(M, D)):
            raise ConsistencyError("ample/nef verdict disagrees with the Kleiman test over all walls")
        checks.append("kleiman_all_walls")


def _classify(job, checks):
    report = classify.report_for_matrix(job.M)
    if checks is not None:
        _check_divisor(job, classify.anticanonical(job.M), checks)
    return report.to_dict()


def _ample(job, checks):
    M = job.M
    D = job.require_divisor()
    d = classify.d_values(M, D)
    if checks is not None:
        _check_divisor(job, D, checks)
    ample = all(x > 0 for x in d)
    nef = all(x >= 0 for x in d)
    return {"divisor": _divisor_out(M, D), "d_values": [_num(x) for x in d], "ample": ample, "nef": nef,
            "verdict": ample if job.command == "ample" else nef}


def _mori(job, checks):
    M = job.M
    if checks is not None:
        _check_relations(job, checks)
    sets, classes, flags = [], [], []
    for i in range(1, M.r + 1):
        mis = curves.mori_index_set(M, i)
        sets.append({"i": i, "indices": list(mis.indices),
                     "trace": [{"k": k, "j": j, "a": a} for (k, j), a in sorted(mis.trace.items())]})
        rel = curves.primitive_relation(M, i)
        c = rel.curve_class()
        flag = classify.is_mori_ray(M, i)
        flags.append(flag)
        classes.append({"i": i, "gamma": {ray.label: v for ray, v in rel.gamma_rays}, "intersections": c.labels(),
                        "K_degree": c.canonical_degree(), "mori_ray": flag})
    return {"index_sets": sets, "classes": classes, "mori_rays": flags}


def _intersect(job, checks):
    M = job.M
    basis = curves.mori_cone_basis(M)
    lines = []
    for j in range(1, M.r + 1):
        wall, c = curves.schubert_line(M, j)
        closed = curves.schubert_canonical_degree(M, j)
        if c.canonical_degree() != closed:
            raise ConsistencyError(f"K.L_{j}: wall relation gives {c.canonical_degree()}, closed form {closed}")
        lines.append({"j": j, "wall": wall.labels(), "intersections": c.labels(), "K_degree": c.canonical_degree(),
                      "K_degree_closed_form": closed})
    walls = []
    requested = job.options.get("walls") or []
    if job.options.get("all_walls"):
        if M.r > ALL_WALLS_MAX_LENGTH:
            raise InvalidInputError(f"all_walls is limited to words of length <= {ALL_WALLS_MAX_LENGTH}")
        todo = list(curves.enumerate_walls(M))
    else:
        if not isinstance(requested, list):
            raise InvalidInputError("options.walls must be a list of ray-label lists")
        todo = [curves.Wall.from_labels(w, M.r) for w in requested]
    for wall in todo:
        c = curves.wall_relation(M, wall)
        coords = curves.curve_in_basis(M, c, basis)
        if any(x < 0 for x in coords):
            raise ConsistencyError(f"wall {wall.labels()} lies outside the cone spanned by r(P_i)")
        walls.append({"wall": wall.labels(), "intersections": c.labels(), "K_degree": c.canonical_degree(),
                      "mori_coordinates": list(coords)})
    if checks is not None:
        for wall in todo:
            c = curves.wall_relation(M, wall)
            if bott_fan.lattice_sum(M, c.as_dict()) != (0,) * M.r:
                raise ConsistencyError(f"wall {wall.labels()} relation does not vanish")
        checks.append("wall_relations_vanish")
    return {"schubert_lines": lines, "walls": walls}


def _logfano(job, checks):
    M = job.M
    opts = job.options
    r = M.r
    a = [_rational(x, "options.a") for x in opts.get("a", [0] * r)]
    b = opts.get("b")
    if b is not None:
        if not isinstance(b, list) or not all(isinstance(x, int) and not isinstance(x, bool) for x in b):
            raise InvalidInputError("options.b must be a list of integers")
    else:
        b = list(root_data.b_values(job.gcm, job.word))
    verdict, f = classify.is_log_fano(M, job.gcm, job.word, a, b)
    if checks is not None:
        _check_relations(job, checks)
        weight = {RayId(i, bott_fan.PLUS): b[i - 1] + 1 + a[i - 1] for i in range(1, r + 1)}
        if oracles.d_values_from_walls(M, weight) != f:
            raise ConsistencyError("f-values disagree with wall intersections")
        checks.append("f_values_walls")
    witness = next((i for i, x in enumerate(f, 1) if x <= 0), None)
    return {"a": [_num(x) for x in a], "b": list(b), "f": [_num(x) for x in f], "log_fano": verdict,
            "witness": witness}


def _convert(job, checks):
    M = job.M
    D = job.require_divisor()
    H = classify.h_table(M)
    g = classify.g_values(M, D, H)
    if checks is not None:
        if oracles.h_table(M) != H:
            raise ConsistencyError("h-table disagrees with the linear-relation oracle")
        Dg = {RayId(i, bott_fan.PLUS): x for i, x in enumerate(g, 1)}
        if any(c.dot(D) != c.dot(Dg) for c in curves.mori_cone_basis(M)):
            raise ConsistencyError("converted divisor is not numerically equivalent")
        checks.extend(["h_table_linear_relations", "numerical_equivalence"])
    return {"divisor": _divisor_out(M, D), "h_table": H, "g": [_num(x) for x in g]}


HANDLERS = {"fan": _fan, "matrix": _matrix, "classify": _classify, "ample": _ample, "nef": _ample,
            "mori": _mori, "intersect": _intersect, "logfano": _logfano, "convert": _convert}


def run_job(doc, command=None, oracle=False) -> dict:
    """Run one job document and return the output document (raises on error)."""
    job = Job(doc, command)
    if oracle and job.M.r > oracles.ORACLE_MAX_LENGTH:
        raise InvalidInputError(f"--oracle is limited to words of length <= {oracles.ORACLE_MAX_LENGTH}")
    checks = [] if oracle else None
    out = {"command": job.command, "input": job.echo, "result": HANDLERS[job.command](job, checks)}
    if oracle:
        out["oracle"] = {"checks": checks, "agrees": True}
    return out


def _error_doc(command, kind, exc):
    return {"command": command, "error": {"kind": kind, "message": str(exc)}}


def run_one(doc, command=None, oracle=False):
    """Return ``(exit_code, document)``; never raises for bad input."""
    cmd = command or (doc.get("command") if isinstance(doc, dict) else None)
    try:
        return EXIT_OK, run_job(doc, command, oracle)
    except InvalidInputError as exc:
        return EXIT_INVALID, _error_doc(cmd, "invalid_input", exc)
    except ConsistencyError as exc:
        return EXIT_INTERNAL, _error_doc(cmd, "internal_consistency", exc)


def dumps(doc, sorted_keys=False, indent=None) -> str:
    return json.dumps(doc, sort_keys=sorted_keys, indent=indent, separators=(",", ": ") if indent else (",", ":"))


def render_table(doc) -> str:
    """Plain-text rendering for humans."""
    lines = []

    def walk(value, prefix):
        if isinstance(value, dict):
            for k, v in value.items():
                walk(v, f"{prefix}.{k}" if prefix else str(k))
        elif isinstance(value, list) and value and all(isinstance(x, list) for x in value):
            lines.append(f"{prefix}:")
            width = max(len(str(x)) for row in value for x in row)
            for row in value:
                lines.append("    " + " ".join(str(x).rjust(width) for x in row))
        elif isinstance(value, list) and any(isinstance(x, dict) for x in value):
            for n, item in enumerate(value):
                walk(item, f"{prefix}[{n}]")
        else:
            if isinstance(value, list):
                value = " ".join(str(x) for x in value)
            lines.append(f"{prefix}: {value}")

    walk(doc, "")
    return "\n".join(lines)


def _read_input(path):
    if path in (None, "-"):
        return sys.stdin.read()
    with open(path) as fh:
        return fh.read()


def _load_jobs(text):
    """Jobs for batch mode: JSON lines, or YAML documents (each a job or a list of jobs)."""
    lines = [ln for ln in text.splitlines() if ln.strip()]
    try:
        docs = [json.loads(ln) for ln in lines]
    except json.JSONDecodeError:
        docs = list(yaml.safe_load_all(text))
    jobs = []
    for d in docs:
        if d is None:
            continue
        jobs.extend(d if isinstance(d, list) else [d])
    return jobs


def build_parser():
    p = argparse.ArgumentParser(prog="bsdh-toric", description="Classification data for toric limits of BSDH varieties.")
    p.add_argument("--command", choices=COMMANDS, help="overrides the job document's command key")
    p.add_argument("--input", default="-", help="job file, or - for stdin")
    p.add_argument("--format", choices=("json", "table"), default="json")
    p.add_argument("--sorted-keys", action="store_true")
    p.add_argument("--oracle", action="store_true", help="cross-check every result by brute force")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--self-test", action="store_true")
    p.add_argument("--cases", type=int, default=50, help="number of random cases for --self-test")
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    out = sys.stdout

    if args.self_test:
        summary = fuzz.self_test(args.seed, args.cases)
        out.write(render_table(summary) + "\n" if args.format == "table" else dumps(summary, args.sorted_keys) + "\n")
        return EXIT_OK if summary["passed"] else EXIT_INTERNAL

    try:
        text = _read_input(args.input)
    except OSError as exc:
        sys.stderr.write(f"error: cannot read input: {exc}\n")
        return EXIT_INVALID

    try:
        docs = _load_jobs(text) if args.command == "batch" else [yaml.safe_load(text)]
    except yaml.YAMLError as exc:
        sys.stderr.write(f"error: input is not valid YAML/JSON: {exc}\n")
        return EXIT_INVALID

    status = EXIT_OK
    for doc in docs:
        code, result = run_one(doc, None if args.command == "batch" else args.command, args.oracle)
        status = max(status, code)
        if args.command == "batch":
            out.write(dumps(result, args.sorted_keys) + "\n")
            out.flush()
        elif args.format == "table":
            (out if code == EXIT_OK else sys.stderr).write(render_table(result) + "\n")
        else:
            (out if code == EXIT_OK else sys.stderr).write(dumps(result, args.sorted_keys, indent=2) + "\n")
    return status


if __name__ == "__main__":
    sys.exit(main())

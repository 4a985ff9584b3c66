"""
Command execution for the batch front end: a CommandRequest names a verb, an action
and typed parameters; execute() runs it and returns the exit status with the report
rendered as text, JSON or CSV.
"""

import csv
import io
import json
import math
from enum import Enum
from typing import Any, Callable

import numpy as np
from pydantic import BaseModel, Field
from rich.console import Console
from rich.table import Table

from galois_quantum_toolkit.arithmetic import (
    arithmetic_profile,
    cyclotomic_poly,
    prime_power,
    ramanujan_sum,
    ramanujan_sum_direct,
)
from galois_quantum_toolkit.characters import (
    additive_character,
    multiplicative_character,
    report_gamma,
    report_gauss_field,
    report_gauss_ring,
    report_weil,
    unit_group_characters,
)
from galois_quantum_toolkit.coding import (
    PlaneAxiomsReport,
    cyclic_code,
    cyclic_extension_matrix,
    min_distance,
    plane_axioms_check,
    xn1_divisors,
    xn1_factors,
)
from galois_quantum_toolkit.fields import (
    GaloisField,
    build_field,
    build_ring,
    discrete_log,
    field_table,
    parse_polynomial,
    ring_table,
    trace,
)
from galois_quantum_toolkit.geometry import (
    arc_search,
    bruck_ryser_excluded,
    build_pg,
    incidence_equivalent,
    incidence_matrix,
)
from galois_quantum_toolkit.models import Model
from galois_quantum_toolkit.quantum import (
    bell_fourier,
    bell_galois,
    entanglement_check,
    export_basis_set,
    galois_expectation_report,
    galois_phase_operator,
    lock_sweep,
    mub_even,
    mub_odd,
    pegg_barnett_operator,
    pure_phase_state,
    verify_unbiasedness,
)
from galois_quantum_toolkit.utils import (
    DEFAULT_TOLERANCE,
    ToolkitError,
    create_logger,
    format_float,
    format_polynomial,
    get_output_dir,
    parse_coefficients,
    round_significant,
)

logger = create_logger(__name__)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2

WEIL_SAMPLES = 200
MAX_PLANE_ORDER_FOR_EQUIVALENCE = 5


class UsageError(ToolkitError): ...


class OutputFormat(Enum):
    TEXT = "text"
    JSON = "json"
    CSV = "csv"


class CommandRequest(Model):
    verb: str = Field(description="Command group, e.g. 'field' or 'mub'")
    action: str = Field(description="Action within the group, e.g. 'table' or 'verify'")
    parameters: dict[str, Any] = Field(
        default_factory=dict, description="Flag values keyed by flag name without dashes"
    )
    output: OutputFormat = OutputFormat.TEXT
    tolerance: float = DEFAULT_TOLERANCE
    seed: int = 0
    threads: int | None = None

    def has(self, name: str) -> bool:
        return self.parameters.get(name) is not None

    def get(self, name: str, default: Any = None) -> Any:
        value = self.parameters.get(name)
        return default if value is None else value

    def require(self, name: str) -> Any:
        if not self.has(name):
            raise UsageError(
                f"--{name.replace('_', '-')} is required for '{self.verb} {self.action}'; "
                f"{schema_text(self.verb, self.action)}"
            )
        return self.parameters[name]


class CommandResult(Model):
    exit_code: int
    output: str
    passed: bool | None = Field(
        default=None, description="Verification outcome, or None when nothing was verified"
    )


class ValueReport(Model):
    name: str
    inputs: dict[str, Any]
    value: Any
    expected: Any = None
    passed: bool | None = None


class Outcome(Model):
    """A handler's report, its verification outcome and optional table rows."""

    report: Any
    passed: bool | None = None
    rows: list[dict[str, Any]] | None = None


# -- parameter helpers -------------------------------------------------------------


def _field(request: CommandRequest, modulus_flag: bool = False) -> GaloisField:
    q = request.get("q", request.get("odd_q"))
    if q is not None:
        decomposition = prime_power(int(q))
        if decomposition is None:
            raise UsageError(f"--q {q} is not a prime power")
        p, m = decomposition
    else:
        p, m = int(request.require("p")), int(request.get("m", 1))
    modulus = None
    if modulus_flag and request.has("g"):
        modulus = parse_polynomial(request.get("g"), p)
    return build_field(p, m, modulus)


def _odd_field(request: CommandRequest) -> GaloisField:
    field = _field(request)
    if field.p == 2:
        raise UsageError(f"'{request.verb} {request.action}' needs odd q, got {field.q}")
    return field


def _polynomial(request: CommandRequest, field: GaloisField) -> list[int]:
    coeffs = parse_coefficients(request.require("g"))
    if any(not 0 <= c < field.q for c in coeffs):
        raise UsageError(f"--g coefficients must be elements of F_{field.q} (0..{field.q - 1})")
    return coeffs


def _all_passed(reports) -> bool:
    return all(report.passed for report in reports)


# -- handlers ----------------------------------------------------------------------


def _field_table(request: CommandRequest) -> Outcome:
    table = field_table(_field(request, modulus_flag=True))
    return Outcome(report=table, rows=[row.model_dump(mode="json") for row in table.rows])


def _field_trace(request: CommandRequest) -> Outcome:
    field = _field(request, modulus_flag=True)
    a = int(request.require("a"))
    return Outcome(
        report=ValueReport(name="trace", inputs={"q": field.q, "a": a}, value=trace(field, a))
    )


def _field_log(request: CommandRequest) -> Outcome:
    field = _field(request, modulus_flag=True)
    a = int(request.require("a"))
    return Outcome(
        report=ValueReport(
            name="discrete_log", inputs={"q": field.q, "a": a}, value=discrete_log(field, a)
        )
    )


def _ring_table(request: CommandRequest) -> Outcome:
    table = ring_table(build_ring(int(request.require("m"))))
    return Outcome(report=table, rows=[row.model_dump(mode="json") for row in table.rows])


def _gamma_reports(request: CommandRequest) -> Outcome:
    ring = build_ring(int(request.require("m")))
    ys = [int(request.get("a"))] if request.has("a") else range(ring.size)
    reports = [report_gamma(ring, y, request.tolerance) for y in ys]
    return Outcome(
        report=reports,
        passed=_all_passed(reports),
        rows=[report.model_dump(mode="json") for report in reports],
    )


def _numtheory_profile(request: CommandRequest) -> Outcome:
    return Outcome(report=arithmetic_profile(int(request.require("n"))))


def _numtheory_cyclotomic(request: CommandRequest) -> Outcome:
    n = int(request.require("n"))
    polynomial = cyclotomic_poly(n)
    return Outcome(
        report=ValueReport(
            name="cyclotomic",
            inputs={"n": n},
            value={"coeffs": polynomial.coeffs, "polynomial": str(polynomial)},
        )
    )


def _numtheory_ramanujan(request: CommandRequest) -> Outcome:
    q, n = int(request.require("q")), int(request.require("n"))
    closed = ramanujan_sum(q, n)
    direct = ramanujan_sum_direct(q, n)
    passed = abs(direct - closed) <= request.tolerance
    return Outcome(
        report=ValueReport(
            name="ramanujan",
            inputs={"q": q, "n": n},
            value=closed,
            expected=direct.real,
            passed=passed,
        ),
        passed=passed,
    )


def _random_polynomial(rng: np.random.Generator, q: int, degree: int) -> list[int]:
    coeffs = rng.integers(0, q, size=degree + 1).tolist()
    coeffs[-1] = int(rng.integers(1, q))
    return [int(c) for c in coeffs]


def _sums_weil(request: CommandRequest) -> Outcome:
    field = _field(request)
    kappa = additive_character(field, int(request.get("k", 1)))
    if request.has("g"):
        polynomials = [_polynomial(request, field)]
    else:
        degree = int(request.get("n", 3))
        if math.gcd(degree, field.q) != 1 or degree < 1:
            raise UsageError(f"--n {degree} must be a degree >= 1 coprime to q = {field.q}")
        rng = np.random.default_rng(request.seed)
        polynomials = [_random_polynomial(rng, field.q, degree) for _ in range(WEIL_SAMPLES)]
    reports = [report_weil(field, f, kappa, request.tolerance) for f in polynomials]
    return Outcome(
        report=reports,
        passed=_all_passed(reports),
        rows=[report.model_dump(mode="json") for report in reports],
    )


def _sums_gauss(request: CommandRequest) -> Outcome:
    field = _field(request)
    psis = [int(request.get("a"))] if request.has("a") else range(field.q - 1)
    kappas = [int(request.get("b"))] if request.has("b") else range(field.q)
    reports = [
        report_gauss_field(
            field,
            multiplicative_character(field, j),
            additive_character(field, c),
            request.tolerance,
        )
        for j in psis
        for c in kappas
    ]
    return Outcome(
        report=reports,
        passed=_all_passed(reports),
        rows=[report.model_dump(mode="json") for report in reports],
    )


def _bounded_index(request: CommandRequest, flag: str, size: int) -> int:
    value = int(request.require(flag))
    if not 0 <= value < size:
        raise UsageError(f"--{flag} {value} is out of range 0..{size - 1}")
    return value


def _sums_ring_gauss(request: CommandRequest) -> Outcome:
    ring = build_ring(int(request.require("m")))
    characters = unit_group_characters(ring)
    chosen = (
        [characters[_bounded_index(request, "a", len(characters))]]
        if request.has("a")
        else characters
    )
    ys = [_bounded_index(request, "b", ring.size)] if request.has("b") else range(ring.size)
    reports = [
        report_gauss_ring(ring, psi, y, request.tolerance) for psi in chosen for y in ys
    ]
    return Outcome(
        report=reports,
        passed=_all_passed(reports),
        rows=[report.model_dump(mode="json") for report in reports],
    )


def _basis_set(request: CommandRequest):
    field = _field(request)
    k = int(request.get("k", 0))
    if field.p == 2:
        return mub_even(build_ring(field.m), k)
    return mub_odd(field, k)


def _mub_verify(request: CommandRequest) -> Outcome:
    report = verify_unbiasedness(_basis_set(request), request.tolerance, request.threads)
    return Outcome(report=report, passed=report.passed)


def _mub_export(request: CommandRequest) -> Outcome:
    return Outcome(report=export_basis_set(_basis_set(request)))


def _mub_bell(request: CommandRequest) -> Outcome:
    h = int(request.get("h", 0))
    if request.has("p") or request.has("odd_q"):
        field = _odd_field(request)
        state = bell_galois(field, int(request.get("a", 0)), h, int(request.get("b", 0)))
    else:
        state = bell_fourier(int(request.require("q")), h, int(request.get("k", 0)))
    report = entanglement_check(state, request.tolerance)
    return Outcome(report=report, passed=report.passed)


def _phase_lock_sweep(request: CommandRequest) -> Outcome:
    sweep = lock_sweep(
        int(request.get("qmax", 50)), float(request.get("beta", 1.0)), request.tolerance
    )
    return Outcome(
        report=sweep,
        passed=sweep.identities_passed,
        rows=[row.model_dump(mode="json") for row in sweep.rows],
    )


class GaloisPhaseReport(Model):
    q: int
    a: int
    k: int
    beta: float
    operator_deviation: float = Field(
        description="Entrywise gap between the spectral and matrix-element operators",
    )
    expectation: float
    direct: float
    diagonal_subtotal: float
    diagonal_expected: float
    passed: bool


def _phase_galois(request: CommandRequest) -> Outcome:
    field = _odd_field(request)
    a, k = int(request.get("a", 0)), int(request.get("k", 0))
    beta = float(request.get("beta", 0.0))
    spectral, entrywise = galois_phase_operator(field, a, k)
    deviation = float(np.max(np.abs(spectral.entries - entrywise.entries)))
    expectation = galois_expectation_report(field, a, k, beta)
    diagonal_expected = math.pi * (field.q - 1) / field.q
    passed = (
        deviation <= request.tolerance
        and expectation.agreement <= request.tolerance
        and abs(expectation.diagonal_subtotal - diagonal_expected) <= request.tolerance
    )
    report = GaloisPhaseReport(
        q=field.q,
        a=a,
        k=k,
        beta=beta,
        operator_deviation=deviation,
        expectation=expectation.value,
        direct=expectation.direct,
        diagonal_subtotal=expectation.diagonal_subtotal,
        diagonal_expected=diagonal_expected,
        passed=passed,
    )
    return Outcome(report=report, passed=passed)


def _phase_pegg_barnett(request: CommandRequest) -> Outcome:
    q = int(request.get("dim") or request.require("q"))
    beta = float(request.get("beta", 0.0))
    operator = pegg_barnett_operator(q)
    state = pure_phase_state(q, beta)
    return Outcome(
        report=ValueReport(
            name="pegg_barnett",
            inputs={"q": q, "beta": beta},
            value={
                "eigenvalues": operator.eigenvalues().tolist(),
                "expectation": operator.expectation(state.amplitudes).real,
            },
        )
    )


class DivisorsReport(Model):
    n: int
    q: int
    factors: list[str]
    divisors: list[list[int]]
    rendered: list[str]


def _code_divisors(request: CommandRequest) -> Outcome:
    field = _field(request)
    n = int(request.require("n"))
    divisors = xn1_divisors(n, field)
    report = DivisorsReport(
        n=n,
        q=field.q,
        factors=[format_polynomial(f) for f in xn1_factors(n, field)],
        divisors=divisors,
        rendered=[format_polynomial(d) for d in divisors],
    )
    return Outcome(report=report)


def _code_matrix(request: CommandRequest) -> Outcome:
    field = _field(request)
    code = cyclic_code(int(request.require("n")), field, _polynomial(request, field))
    return Outcome(report=code, rows=_matrix_rows(code.generator_matrix))


def _code_distance(request: CommandRequest) -> Outcome:
    field = _field(request)
    code = cyclic_code(int(request.require("n")), field, _polynomial(request, field))
    claimed = int(request.get("claimed_d")) if request.has("claimed_d") else None
    return Outcome(
        report=min_distance(code, threads=request.threads, claimed_distance=claimed)
    )


class ExtensionReport(Model):
    matrix: list[list[int]]
    axioms: PlaneAxiomsReport
    equivalent_to_pg: bool | None = Field(
        default=None,
        description="Permutation equivalence with the incidence matrix of PG(2, order)",
    )
    passed: bool


def _code_extension(request: CommandRequest) -> Outcome:
    field = _field(request)
    matrix = cyclic_extension_matrix(
        int(request.require("n")), field, _polynomial(request, field)
    )
    axioms = plane_axioms_check(matrix)
    equivalent = None
    if axioms.passed and axioms.order <= MAX_PLANE_ORDER_FOR_EQUIVALENCE:
        decomposition = prime_power(axioms.order)
        if decomposition is not None:
            plane = build_pg(2, build_field(*decomposition))
            equivalent = incidence_equivalent(matrix, incidence_matrix(plane))
    passed = axioms.passed and equivalent is not False
    report = ExtensionReport(
        matrix=matrix.tolist(), axioms=axioms, equivalent_to_pg=equivalent, passed=passed
    )
    return Outcome(report=report, passed=passed, rows=_matrix_rows(matrix))


def _space(request: CommandRequest):
    return build_pg(int(request.get("dim", 2)), _field(request))


def _pg_build(request: CommandRequest) -> Outcome:
    return Outcome(report=_space(request).summary())


def _pg_arcs(request: CommandRequest) -> Outcome:
    result = arc_search(
        _space(request), request.get("mode", "exhaustive"), threads=request.threads
    )
    return Outcome(report=result, passed=result.matches_expected)


def _pg_incidence(request: CommandRequest) -> Outcome:
    matrix = incidence_matrix(_space(request))
    axioms = plane_axioms_check(matrix)
    report = ExtensionReport(matrix=matrix.tolist(), axioms=axioms, passed=axioms.passed)
    return Outcome(report=report, passed=axioms.passed, rows=_matrix_rows(matrix))


def _pg_bruck_ryser(request: CommandRequest) -> Outcome:
    if request.has("q"):
        orders = [int(request.get("q"))]
    else:
        orders = range(2, int(request.get("qmax", 35)) + 1)
    rows = [{"q": q, "excluded": bruck_ryser_excluded(q)} for q in orders]
    report = ValueReport(
        name="bruck_ryser",
        inputs={"orders": [row["q"] for row in rows]},
        value=[row["q"] for row in rows if row["excluded"]],
    )
    return Outcome(report=report, rows=rows)


def _matrix_rows(matrix) -> list[dict[str, Any]]:
    return [
        {f"c{j}": int(v) for j, v in enumerate(row)} for row in np.asarray(matrix).tolist()
    ]


COMMON_FLAGS = ("format", "tol", "threads", "seed")

COMMANDS: dict[tuple[str, str], tuple[Callable[[CommandRequest], Outcome], tuple[str, ...]]] = {
    ("field", "table"): (_field_table, ("p", "m", "q", "g")),
    ("field", "trace"): (_field_trace, ("p", "m", "q", "g", "a")),
    ("field", "log"): (_field_log, ("p", "m", "q", "g", "a")),
    ("ring", "table"): (_ring_table, ("m",)),
    ("ring", "gamma"): (_gamma_reports, ("m", "a")),
    ("numtheory", "profile"): (_numtheory_profile, ("n",)),
    ("numtheory", "cyclotomic"): (_numtheory_cyclotomic, ("n",)),
    ("numtheory", "ramanujan"): (_numtheory_ramanujan, ("q", "n")),
    ("sums", "weil"): (_sums_weil, ("p", "m", "q", "g", "k", "n")),
    ("sums", "gauss"): (_sums_gauss, ("p", "m", "q", "a", "b")),
    ("sums", "gamma"): (_gamma_reports, ("m", "a")),
    ("sums", "ring-gauss"): (_sums_ring_gauss, ("m", "a", "b")),
    ("mub", "verify"): (_mub_verify, ("p", "m", "q", "odd_q", "k")),
    ("mub", "export"): (_mub_export, ("p", "m", "q", "odd_q", "k")),
    ("mub", "bell"): (_mub_bell, ("p", "m", "q", "odd_q", "a", "b", "h", "k")),
    ("phase", "lock-sweep"): (_phase_lock_sweep, ("qmax", "beta")),
    ("phase", "galois"): (_phase_galois, ("p", "m", "q", "odd_q", "a", "k", "beta")),
    ("phase", "pegg-barnett"): (_phase_pegg_barnett, ("q", "dim", "beta")),
    ("code", "divisors"): (_code_divisors, ("n", "p", "m", "q")),
    ("code", "matrix"): (_code_matrix, ("n", "p", "m", "q", "g")),
    ("code", "distance"): (_code_distance, ("n", "p", "m", "q", "g", "claimed_d")),
    ("code", "extension"): (_code_extension, ("n", "p", "m", "q", "g")),
    ("pg", "build"): (_pg_build, ("dim", "p", "m", "q")),
    ("pg", "arcs"): (_pg_arcs, ("dim", "p", "m", "q", "mode")),
    ("pg", "incidence"): (_pg_incidence, ("p", "m", "q")),
    ("pg", "bruck-ryser"): (_pg_bruck_ryser, ("q", "qmax")),
}


def actions(verb: str) -> list[str]:
    return [action for v, action in COMMANDS if v == verb]


def verbs() -> list[str]:
    return list(dict.fromkeys(verb for verb, _ in COMMANDS))


def schema_text(verb: str, action: str) -> str:
    _, flags = COMMANDS[(verb, action)]
    listed = " ".join(f"--{flag.replace('_', '-')}" for flag in flags + COMMON_FLAGS)
    return f"schema: {verb} {action} {listed}"


# -- rendering ---------------------------------------------------------------------


def _normalize(value: Any) -> Any:
    """JSON-ready form with every float rounded to 12 significant digits."""
    if isinstance(value, BaseModel):
        return _normalize(value.model_dump(mode="json"))
    if isinstance(value, Enum):
        return value.value
    if isinstance(value, dict):
        return {str(k): _normalize(v) for k, v in value.items()}
    if isinstance(value, (list, tuple, range)):
        return [_normalize(v) for v in value]
    if isinstance(value, np.ndarray):
        return _normalize(value.tolist())
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, (complex, np.complexfloating)):
        return [round_significant(value.real), round_significant(value.imag)]
    if isinstance(value, (float, np.floating)):
        return round_significant(float(value))
    return value


def _cell(value: Any) -> str:
    if isinstance(value, float):
        return format_float(value)
    if isinstance(value, (dict, list)):
        return json.dumps(value, separators=(",", ":"))
    if value is None:
        return "-"
    return str(value)


def _render_text(payload: Any, rows: list[dict[str, Any]] | None) -> str:
    buffer = io.StringIO()
    console = Console(file=buffer, width=200, color_system=None, highlight=False)

    if isinstance(payload, dict):
        summary = Table(show_header=False, box=None)
        for key, value in payload.items():
            if rows is not None and key == "rows":
                continue
            summary.add_row(key, _cell(value))
        console.print(summary)
    elif not rows:
        console.print(json.dumps(payload, indent=2))

    if rows:
        table = Table()
        for column in rows[0]:
            table.add_column(column)
        for row in rows:
            table.add_row(*(_cell(v) for v in row.values()))
        console.print(table)
    return buffer.getvalue()


def _render_csv(rows: list[dict[str, Any]] | None) -> str:
    if not rows:
        raise UsageError("--format csv needs a tabular report")
    buffer = io.StringIO()
    writer = csv.DictWriter(buffer, fieldnames=list(rows[0]), lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow({k: _cell(v) for k, v in row.items()})
    return buffer.getvalue()


def render(outcome: Outcome, output: OutputFormat) -> tuple[str, str]:
    """Rendered report and its file extension."""
    payload = _normalize(outcome.report)
    rows = _normalize(outcome.rows) if outcome.rows is not None else None
    match output:
        case OutputFormat.JSON:
            return json.dumps(payload, sort_keys=True, indent=2) + "\n", "json"
        case OutputFormat.CSV:
            return _render_csv(rows), "csv"
        case OutputFormat.TEXT:
            return _render_text(payload, rows), "txt"


def _mirror(request: CommandRequest, text: str, extension: str) -> None:
    directory = get_output_dir()
    if directory is None:
        return
    directory.mkdir(parents=True, exist_ok=True)
    path = directory / f"{request.verb}-{request.action}.{extension}"
    path.write_text(text)
    logger.info(f"Report written to {path}")


def execute(request: CommandRequest) -> CommandResult:
    """
    Run one command.

    Returns:
        CommandResult: exit 0 when every verification passed (or none ran), 1 when a
            verification failed (the report is still emitted), 2 on usage errors.
    """
    key = (request.verb, request.action)
    if key not in COMMANDS:
        known = ", ".join(f"{v} {a}" for v, a in COMMANDS)
        return CommandResult(
            exit_code=EXIT_USAGE,
            output=f"unknown command '{request.verb} {request.action}'; known: {known}\n",
        )
    handler, flags = COMMANDS[key]
    unknown = sorted(set(request.parameters) - set(flags))
    if unknown:
        return CommandResult(
            exit_code=EXIT_USAGE,
            output=f"unknown flag --{unknown[0].replace('_', '-')}; "
            f"{schema_text(*key)}\n",
        )

    try:
        outcome = handler(request)
        text, extension = render(outcome, request.output)
    except ValueError as e:
        logger.error(f"{request.verb} {request.action}: {e}")
        return CommandResult(exit_code=EXIT_USAGE, output=f"error: {e}\n")

    _mirror(request, text, extension)
    exit_code = EXIT_FAILED if outcome.passed is False else EXIT_OK
    return CommandResult(exit_code=exit_code, output=text, passed=outcome.passed)

import logging
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple

from jinja2 import Environment, FileSystemLoader, StrictUndefined

from exceptions import InputError
from models.schemas import (
    CharacterDecomposition,
    ClassFunction,
    ConjectureReport,
    CycleType,
    IntegerPolynomial,
    OracleSweepReport,
    Parts,
    Quasipolynomial,
    RationalFunction,
    ReportDocument,
    psi_factor,
)
from services import series
from services.characters import (
    character_text,
    decompose,
    irrep_name,
    lattice_point_character,
    phi_coefficients,
    phi_data,
    verdict,
)
from services.combinatorics import partitions_of
from services.fixed_polytope import dimension, ehrhart_quasipolynomial, index, is_lattice, volume
from services.oracle import LatticePointOracle

logger = logging.getLogger(__name__)

TEMPLATES_DIR = Path(__file__).resolve().parent.parent / "templates"
SAMPLE_DILATIONS = range(0, 6)
FORMATS = ("markdown", "json")


def exact(value: Any) -> Any:
    """Convert a result tree to JSON leaves: integers become exact decimal strings."""
    if isinstance(value, bool) or value is None or isinstance(value, str):
        return value
    if isinstance(value, int):
        return str(value)
    if isinstance(value, IntegerPolynomial):
        return [str(c) for c in value.coefficients]
    if isinstance(value, dict):
        return {str(key): exact(item) for key, item in value.items()}
    if isinstance(value, (list, tuple)):
        return [exact(item) for item in value]
    raise TypeError(f"cannot serialize {type(value).__name__} exactly")


def label(parts: Parts) -> str:
    return "(" + ",".join(str(part) for part in parts) + ")"


def phi_text(rf: RationalFunction) -> str:
    """Polynomial head plus the remaining (1+z)-series, e.g. ``1+4z+11z^2-2z^3+4z^4/(1+z)``."""
    if not rf.denominator_factors:
        return rf.numerator.to_string()
    head_length = series.partial_fraction_tail(rf).polynomial_part.degree + 1
    head = IntegerPolynomial(coefficients=series.series_coefficients(rf, head_length))
    rest = series.reduce(series.add(rf, RationalFunction(numerator=-head)))
    rest_text = rest.to_string()
    if head.is_zero:
        return rest_text
    return head.to_string() + (rest_text if rest_text.startswith("-") else "+" + rest_text)


def _decomposition_entry(decomposition: CharacterDecomposition) -> Dict[str, Any]:
    return {
        "multiplicities": {label(mu): mult for mu, mult in decomposition.multiplicities.items()},
        "text": character_text(decomposition),
        "effective": decomposition.is_effective,
    }


def _class_function_entry(f: ClassFunction) -> Dict[str, Any]:
    return {label(parts): value for parts, value in f.values.items()}


def _quasipolynomial_entry(q: Quasipolynomial) -> Dict[str, Any]:
    return {
        "even_branch": q.even_branch,
        "odd_branch": q.odd_branch,
        "even_text": q.even_branch.to_string("t", descending=True),
        "odd_text": q.odd_branch.to_string("t", descending=True),
        "text": q.to_string(),
        "period": q.period,
        "samples": {t: q(t) for t in SAMPLE_DILATIONS},
    }


def _rational_entry(rf: RationalFunction) -> Dict[str, Any]:
    return {
        "numerator": rf.numerator,
        "denominator_factors": [
            {"cyclotomic_index": d, "exponent": e, "factor": psi_text(d)} for d, e in rf.denominator_factors
        ],
        "text": rf.to_string(),
    }


def psi_text(d: int) -> str:
    if d == 1:
        return "1-z"
    if d == 2:
        return "1+z"
    return psi_factor(d).to_string()


class ReportService:
    """Builds ReportDocuments for every command and renders them as markdown or JSON."""

    def __init__(self, templates_dir: Path = TEMPLATES_DIR):
        self.env = Environment(
            loader=FileSystemLoader(str(templates_dir)),
            undefined=StrictUndefined,
            trim_blocks=True,
            lstrip_blocks=True,
            keep_trailing_newline=True,
        )

    def quasipolynomial_report(self, cycle_type: CycleType) -> ReportDocument:
        q = ehrhart_quasipolynomial(cycle_type)
        results = _quasipolynomial_entry(q)
        results.update(
            {
                "dimension": dimension(cycle_type),
                "volume": volume(cycle_type),
                "index": index(cycle_type),
                "is_lattice": is_lattice(cycle_type),
            }
        )
        return self._document("quasipoly", {"cycle_type": cycle_type.label(), "n": cycle_type.n}, results)

    def series_report(self, cycle_type: CycleType, kind: str = "series", terms: int = 10) -> ReportDocument:
        if kind not in ("series", "phi"):
            raise InputError(f"unknown series kind {kind!r}")
        if terms < 1:
            raise InputError(f"terms must be positive, got {terms}")
        rf = series.ehrhart_series(cycle_type) if kind == "series" else series.phi_series(cycle_type)
        results = _rational_entry(rf)
        results["coefficients"] = series.series_coefficients(rf, terms)
        results["is_polynomial"] = not rf.denominator_factors
        if kind == "phi":
            tail = series.partial_fraction_tail(rf)
            results["polynomial_part"] = tail.polynomial_part
            results["tail_numerators"] = list(tail.tail_numerators)
            results["polynomiality_predicate"] = series.polynomiality_predicate(cycle_type)
            results["text"] = phi_text(rf)
        inputs = {"cycle_type": cycle_type.label(), "n": cycle_type.n, "terms": terms}
        return self._document(kind, inputs, results)

    def table_report(self, n: int) -> ReportDocument:
        rows = []
        for cycle_type in partitions_of(n):
            q = ehrhart_quasipolynomial(cycle_type)
            phi = series.phi_series(cycle_type)
            rows.append(
                {
                    "cycle_type": cycle_type.label(),
                    "quasipolynomial": _quasipolynomial_entry(q),
                    "ehrhart_series": _rational_entry(series.ehrhart_series(cycle_type)),
                    "phi": {**_rational_entry(phi), "text": phi_text(phi), "is_polynomial": not phi.denominator_factors},
                }
            )
        return self._document("table", {"n": n}, {"rows": rows})

    def decompose_report(self, n: int, terms: Optional[int] = None) -> ReportDocument:
        data = phi_data(n)
        count = data.tail_start if terms is None else terms
        if count < 1:
            raise InputError(f"terms must be positive, got {count}")
        coefficients = (
            list(data.polynomial_coefficients) if count == data.tail_start else phi_coefficients(n, count)
        )
        results = {
            "coefficients": [
                {"index": i, "values": _class_function_entry(phi_i), **_decomposition_entry(decompose(phi_i))}
                for i, phi_i in enumerate(coefficients)
            ],
            "tail_start": data.tail_start,
            "tail": [
                {"order": j, "values": _class_function_entry(t), **_decomposition_entry(d)}
                for j, (t, d) in enumerate(zip(data.tail_characters, data.tail_decompositions), start=1)
            ],
            "is_polynomial": data.is_polynomial,
            "is_effective": data.is_effective,
        }
        return self._document("decompose", {"n": n, "terms": count}, results)

    def verdict_report(self, n: int) -> ReportDocument:
        v = verdict(n)
        negative = None
        if v.negative_multiplicity_witness is not None:
            where, mu, mult = v.negative_multiplicity_witness
            negative = {"where": where, "irrep": label(mu), "name": irrep_name(mu), "multiplicity": mult}
        results = {
            "is_polynomial": v.is_polynomial,
            "is_effective": v.is_effective,
            "non_polynomial_witness": label(v.non_polynomial_witness) if v.non_polynomial_witness else None,
            "negative_multiplicity_witness": negative,
        }
        return self._document("verdict", {"n": n}, results)

    def oracle_report(
        self,
        oracle: LatticePointOracle,
        cycle_type: Optional[CycleType] = None,
        t: Optional[int] = None,
        sweep: Optional[Tuple[int, int]] = None,
    ) -> Tuple[ReportDocument, bool]:
        """Single count, sweep, or both; the flag says whether every comparison matched."""
        if cycle_type is None and sweep is None:
            raise InputError("oracle needs a cycle type or a sweep")
        inputs: Dict[str, Any] = {}
        results: Dict[str, Any] = {}
        passed = True
        if cycle_type is not None:
            dilation = 1 if t is None else t
            count = oracle.count_fixed_lattice_points(cycle_type, dilation)
            formula = ehrhart_quasipolynomial(cycle_type)(dilation)
            inputs.update({"cycle_type": cycle_type.label(), "n": cycle_type.n, "t": dilation})
            results.update({"count": count, "formula": formula, "match": count == formula})
            passed = count == formula
        sweep_entry = None
        if sweep is not None:
            report = oracle.sweep(*sweep)
            inputs["sweep"] = {"n_max": sweep[0], "t_max": sweep[1]}
            sweep_entry = self._sweep_entry(report)
            passed = passed and report.passed
        return self._document("oracle", inputs, results, oracle=sweep_entry), passed

    @staticmethod
    def _sweep_entry(report: OracleSweepReport) -> Dict[str, Any]:
        return exact(
            {
                "n_max": report.n_max,
                "t_max": report.t_max,
                "checked": len(report.comparisons),
                "passed": report.passed,
                "mismatches": [
                    {"cycle_type": label(c.cycle_type), "t": c.t, "count": c.oracle_count, "formula": c.formula_value}
                    for c in report.mismatches
                ],
            }
        )

    def check_report(self, reports: List[ConjectureReport], inputs: Dict[str, Any]) -> ReportDocument:
        entries = []
        for report in reports:
            entry: Dict[str, Any] = {
                "conjecture": report.conjecture,
                "scope": report.scope,
                "passed": report.passed,
                "details": list(report.details),
            }
            if report.decomposition is not None:
                entry["decomposition"] = {label(mu): mult for mu, mult in report.decomposition.items()}
            entries.append(entry)
        results = {"checks": entries, "passed": all(r.passed for r in reports)}
        return self._document("check", inputs, results)

    def character_report(self, n: int, t: int) -> ReportDocument:
        chi = lattice_point_character(n, t)
        results = {"values": _class_function_entry(chi), **_decomposition_entry(decompose(chi))}
        results["orbits"] = decompose(chi).multiplicity((n,))
        return self._document("character", {"n": n, "t": t}, results)

    @staticmethod
    def _document(
        command: str, inputs: Dict[str, Any], results: Dict[str, Any], oracle: Optional[Dict[str, Any]] = None
    ) -> ReportDocument:
        return ReportDocument(command=command, inputs=exact(inputs), results=exact(results), oracle=oracle)

    def render(self, document: ReportDocument, fmt: str = "markdown") -> str:
        if fmt == "json":
            return document.model_dump_json(indent=2) + "\n"
        if fmt != "markdown":
            raise InputError(f"unknown format {fmt!r}; expected one of {', '.join(FORMATS)}")
        template = self.env.get_template(f"{document.command}.md.j2")
        logger.debug(f"Rendering {document.command} with {template.name}")
        return template.render(doc=document.model_dump())


# Create global instance
report_service = ReportService()

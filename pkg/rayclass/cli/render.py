"""Text, CSV and JSON renderings of command results."""

import json
from typing import Sequence

from mpmath import nstr

from rayclass.types import (
    CandidateField,
    DensityEstimate,
    FieldReport,
    OutputFormat,
    PhiRankReport,
    ScanReport,
    VerifyReport,
)

CSV_HEADER = "p,split,p_mod4,odd_ls,ranks,verdict"


def scan_csv(report: ScanReport) -> str:
    lines = [CSV_HEADER]
    lines.extend(",".join(row.csv_fields()) for row in report.rows)
    s = report.summary
    lines.append(f"#summary,hits={s.hits},total={s.total_primes},ratio={s.ratio.numerator}/{s.ratio.denominator}")
    return "\n".join(lines) + "\n"


def field_report_text(report: FieldReport) -> str:
    lines = [
        f"field: Q({', '.join('sqrt ' + d for d in report.field.split(','))}), degree {report.degree}",
        f"quadratic subfields: {', '.join(str(d) for d in report.subfields)}",
    ]
    for unit in report.fundamental_units:
        lines.append(f"  Q(sqrt {unit.d}): unit {unit.unit}, norm {unit.norm:+d}, class number {unit.class_number}")
    lines.append(f"totally real: {'yes' if report.totally_real else 'no'}")
    lines.append(f"unit of norm -1: {report.norm_minus_one.status.value} ({report.norm_minus_one.rule})")
    lines.append(f"unit system (index {report.unit_index} over subfield units):")
    for g, nm in zip(report.unit_generators, report.unit_generator_norms):
        lines.append(f"  {g}   [norm {nm:+d}]")
    if report.kuroda is not None:
        flag = " (candidate-based)" if report.kuroda.candidate_based else ""
        lines.append(f"class number: {report.kuroda.class_number}{flag}")
    lines.append(f"criterion: {report.criterion_note}")
    lines.extend(f"note: {note}" for note in report.notes)
    return "\n".join(lines) + "\n"


def check_text(report: PhiRankReport) -> str:
    lines = [
        f"p = {report.p}: split {'yes' if report.split else 'no'}, p mod 4 = {report.p_mod_4}",
        f"odd primes dividing p - 1: {', '.join(str(l) for l in report.odd_l) or 'none'}",
    ]
    for l, check in report.per_l.items():
        status = "ok" if check.passed else "deficient"
        lines.append(f"  l = {l}: rank {check.rank} of {check.required} ({status})")
    lines.append(f"verdict: {'true' if report.verdict else 'false'} ({report.reason.value})")
    return "\n".join(lines) + "\n"


def density_text(estimate: DensityEstimate) -> str:
    lines = [
        f"field {estimate.field}, cutoff {estimate.cutoff}, {estimate.precision_bits} bits",
        f"factor at 2: {estimate.p2}",
        f"truncated product: {nstr(estimate.truncated_product, 15)}",
        f"tail factor lower bound: {nstr(estimate.tail_lower_factor, 15)}",
        f"density interval: [{nstr(estimate.interval_low, 12)}, {nstr(estimate.interval_high, 12)}]",
    ]
    for name, value in estimate.reference_values.items():
        lines.append(f"published {name.replace('_', ' ')}: {value}")
    if estimate.empirical is not None:
        e = estimate.empirical
        lines.append(f"empirical: {e.hits}/{e.total_primes} = {float(e.ratio):.6f}")
    return "\n".join(lines) + "\n"


def verify_text(report: VerifyReport) -> str:
    lines = ["p,verdict,psi_order,target,agree"]
    for row in report.rows:
        lines.append(f"{row.p},{str(row.verdict).lower()},{row.psi_order},{row.target_order},{str(row.agree).lower()}")
    lines.append(f"# {len(report.rows)} split primes, {report.mismatches} mismatches")
    return "\n".join(lines) + "\n"


def candidates_text(candidates: Sequence[CandidateField]) -> str:
    return "".join(f"{','.join(str(d) for d in c.radicals)}\n" for c in candidates)


def render(result, fmt: OutputFormat) -> str:
    if isinstance(result, list):
        if fmt == OutputFormat.JSON:
            return json.dumps([c.model_dump(mode="json") for c in result], indent=2) + "\n"
        return candidates_text(result)
    if fmt == OutputFormat.JSON:
        return result.model_dump_json(indent=2) + "\n"
    if isinstance(result, ScanReport):
        return scan_csv(result)
    text_renderers = {
        FieldReport: field_report_text,
        PhiRankReport: check_text,
        DensityEstimate: density_text,
        VerifyReport: verify_text,
    }
    return text_renderers[type(result)](result)

"""End-to-end verification pipeline and its serializable report."""

from __future__ import annotations

import csv
import dataclasses
import io
import json
import math
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence, Tuple

from . import bounds
from .bounds import BoundReport, Claim
from .exceptions import BadParameter, InsufficientPoints, NoHyperbolicElements
from .groups import (
    EllipticPointSet,
    EnumConfig,
    GapResult,
    GroupPreset,
    elliptic_fixed_points,
    enumerate_elements,
    min_elliptic_gap,
    parse_preset,
    systole_estimate,
)
from .metric import distance
from .moebius import GroupElement, UhpPoint, elliptic_from

TOLERANCE_KEYS = ("tol_report", "dedup_tol", "matrix_tol")

# sample caps for the identity checks run inside verify
_IDENTITY_ELEMENTS = 40
_IDENTITY_POINTS = 12
_ORDER_TWO_PAIRS = 200


@dataclass(frozen=True)
class RunConfig:
    preset: str
    max_word_length: int = 10
    ball_radius: float = 3.0
    output_format: str = "json"
    svg_path: Optional[str] = None
    tolerances: Dict[str, float] = field(default_factory=dict)

    def __post_init__(self):
        if self.max_word_length < 1 or not self.ball_radius > 0.0:
            raise BadParameter("depth and radius must be positive")
        if self.output_format not in ("json", "csv", "text"):
            raise BadParameter(f"unknown output format {self.output_format!r}")
        for key, value in self.tolerances.items():
            if key not in TOLERANCE_KEYS:
                raise BadParameter(f"unknown tolerance {key!r}; known: {', '.join(TOLERANCE_KEYS)}")
            if not value > 0.0:
                raise BadParameter(f"tolerance {key} must be positive")

    def tolerance(self, key: str) -> float:
        defaults = {
            "tol_report": bounds.TOL_REPORT,
            "dedup_tol": EnumConfig.dedup_tol,
            "matrix_tol": EnumConfig.matrix_tol,
        }
        return self.tolerances.get(key, defaults[key])

    def enum_config(self) -> EnumConfig:
        return EnumConfig(
            max_word_length=self.max_word_length,
            ball_radius=self.ball_radius,
            dedup_tol=self.tolerance("dedup_tol"),
            matrix_tol=self.tolerance("matrix_tol"),
        )


@dataclass
class Analysis:
    """Intermediate objects of one verify run, kept for figure emission."""

    preset_name: str
    elements: List[GroupElement]
    points: EllipticPointSet
    gap: Optional[GapResult]
    systole: Optional[float]
    checks: List[BoundReport]
    not_applicable: List[str]
    warnings: List[str]
    depth: int
    tolerances: Dict[str, float]


@dataclass(frozen=True)
class VerifyReport:
    preset: str
    element_count: int
    elliptic_point_count: int
    d_min: Optional[float]
    gap: Optional[Dict[str, Any]]
    systole_estimate: Optional[float]
    systole_depth: int
    systole_caveat: str
    checks: Tuple[BoundReport, ...]
    not_applicable: Tuple[str, ...]
    warnings: Tuple[str, ...]
    overall_pass: bool
    tolerances: Dict[str, float]

    @classmethod
    def from_analysis(cls, an: Analysis) -> "VerifyReport":
        gap = None
        if an.gap is not None:
            g = an.gap
            gap = {
                "pair": list(g.pair),
                "orders": list(g.orders),
                "points": [[p.x, p.y] for p in g.points],
                "interior_certified": g.interior_certified,
                "margin": g.margin,
            }
        return cls(
            preset=an.preset_name,
            element_count=len(an.elements),
            elliptic_point_count=len(an.points),
            d_min=None if an.gap is None else an.gap.d_min,
            gap=gap,
            systole_estimate=an.systole,
            systole_depth=an.depth,
            systole_caveat=f"estimate (upper bound at depth {an.depth})",
            checks=tuple(an.checks),
            not_applicable=tuple(an.not_applicable),
            warnings=tuple(an.warnings),
            overall_pass=all(c.passed for c in an.checks),
            tolerances=dict(an.tolerances),
        )

    def to_dict(self) -> Dict[str, Any]:
        out = dataclasses.asdict(self)
        out["checks"] = [_check_to_dict(c) for c in self.checks]
        out["not_applicable"] = list(self.not_applicable)
        out["warnings"] = list(self.warnings)
        return out

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "VerifyReport":
        data = dict(data)
        data["checks"] = tuple(_check_from_dict(c) for c in data["checks"])
        data["not_applicable"] = tuple(data["not_applicable"])
        data["warnings"] = tuple(data["warnings"])
        return cls(**data)

    def to_json(self) -> str:
        # repr-based float output is the shortest round-tripping form
        return json.dumps(self.to_dict(), indent=2) + "\n"

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["key", "value"])
        for key, value in _flatten(self.to_dict()):
            writer.writerow([key, _csv_value(value)])
        return buf.getvalue()

    def to_text(self) -> str:
        lines = [f"preset: {self.preset}"]
        lines.append(f"elements: {self.element_count}  elliptic points: {self.elliptic_point_count}")
        if self.d_min is not None:
            lines.append(
                f"d_min: {self.d_min:.12g}  orders {tuple(self.gap['orders'])}"
                f"  certified: {self.gap['interior_certified']}"
            )
        if self.systole_estimate is not None:
            lines.append(f"systole: {self.systole_estimate:.12g}  [{self.systole_caveat}]")
        for c in self.checks:
            verdict = "PASS" if c.passed else "FAIL"
            lines.append(
                f"{verdict} {c.claim.value:<13} lhs={c.lhs:.12g} rhs={c.rhs:.12g} margin={c.margin:.6g}  {c.context}"
            )
        for name in self.not_applicable:
            lines.append(f"N/A  {name}")
        for w in self.warnings:
            lines.append(f"warning: {w}")
        lines.append("overall: " + ("PASS" if self.overall_pass else "FAIL"))
        return "\n".join(lines) + "\n"

    def render(self, fmt: str) -> str:
        return {"json": self.to_json, "csv": self.to_csv, "text": self.to_text}[fmt]()


def _check_to_dict(c: BoundReport) -> Dict[str, Any]:
    return {
        "claim": c.claim.value,
        "lhs": c.lhs,
        "rhs": c.rhs,
        "margin": c.margin,
        "pass": c.passed,
        "tolerance": c.tolerance,
        "context": c.context,
    }


def _check_from_dict(d: Dict[str, Any]) -> BoundReport:
    return BoundReport(
        claim=Claim(d["claim"]),
        lhs=d["lhs"],
        rhs=d["rhs"],
        margin=d["margin"],
        passed=d["pass"],
        context=d["context"],
        tolerance=d["tolerance"],
    )


def _flatten(obj: Any, prefix: str = ""):
    if isinstance(obj, dict):
        for k, v in obj.items():
            yield from _flatten(v, f"{prefix}{k}.")
    elif isinstance(obj, (list, tuple)):
        for i, v in enumerate(obj):
            yield from _flatten(v, f"{prefix}{i}.")
    else:
        yield prefix[:-1], obj


def _csv_value(v: Any) -> str:
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    return repr(v) if isinstance(v, float) else str(v)


# pipeline --------------------------------------------------------------------


def _retolerance(report: BoundReport, tol: float) -> BoundReport:
    if report.tolerance == 0.0:
        return report
    return dataclasses.replace(report, passed=bool(report.margin >= -tol), tolerance=tol)


def _primitive(p) -> GroupElement:
    return elliptic_from(p.point, p.angle)


def _identity_samples(eps: EllipticPointSet):
    samples = []
    probes = [e.point for e in eps.points[:_IDENTITY_POINTS]] + [UhpPoint(0.0, 1.0)]
    for e in eps.points[:_IDENTITY_ELEMENTS]:
        for z in probes:
            if distance(z, e.point) <= 10.0:
                samples.append((e.element, z))
    return samples


def _order_two_pairs(eps: EllipticPointSet):
    halves = [e.element for e in eps.points if e.order == 2]
    pairs = []
    for i in range(len(halves)):
        for j in range(i + 1, len(halves)):
            pairs.append((halves[i], halves[j]))
            if len(pairs) >= _ORDER_TWO_PAIRS:
                return pairs
    return pairs


def _point_checks(eps: EllipticPointSet, l0: Optional[float], orders_above_two: bool, tol: float,
                  checks: List[BoundReport], not_applicable: List[str], warnings: List[str]) -> Optional[GapResult]:
    try:
        gap = min_elliptic_gap(eps)
    except InsufficientPoints as exc:
        warnings.append(f"gap: {exc}")
        not_applicable.extend([Claim.PROPOSITION.value, Claim.MAIN_THEOREM.value])
        return None
    if not gap.interior_certified:
        warnings.append("closest pair is not interior-certified; enlarge the ball")
    checks.append(_retolerance(bounds.check_proposition(gap, eps), tol))
    a, b = (eps.points[i] for i in gap.pair)
    if gap.orders != (2, 2):
        ga, gb = _primitive(a), _primitive(b)
        checks.append(_retolerance(bounds.check_nonelementary_bound(ga, gb), tol))
        rep, _ = bounds.check_marden_yamada(ga, gb)
        checks.append(_retolerance(dataclasses.replace(rep, context="closest pair; " + rep.context), tol))
    if orders_above_two or l0 is not None:
        checks.append(_retolerance(bounds.check_main_theorem(gap, l0 if l0 is not None else math.inf, orders_above_two), tol))
    else:
        not_applicable.append(Claim.MAIN_THEOREM.value)
        warnings.append("no systole estimate: main theorem needs l0 when order-two points exist")
    return gap


def analyze(cfg: RunConfig, preset: Optional[GroupPreset] = None) -> Analysis:
    """Enumerate, harvest elliptic points, estimate gap and systole, run every applicable check."""
    preset = preset or parse_preset(cfg.preset)
    ecfg = cfg.enum_config()
    tol = cfg.tolerance("tol_report")
    elements = enumerate_elements(preset, ecfg)
    eps = elliptic_fixed_points(elements, ecfg)
    checks: List[BoundReport] = []
    not_applicable: List[str] = []
    warnings: List[str] = []

    samples = _identity_samples(eps)
    if samples:
        checks.append(bounds.check_displacement_identity(samples))
    else:
        not_applicable.append(Claim.LEMMA14.value)
    pairs = _order_two_pairs(eps)
    if pairs:
        checks.append(bounds.check_order_two_products(pairs))
    else:
        not_applicable.append(Claim.LEMMA12.value)

    gens = preset.elliptic_generators
    for i, j in bounds.nonelementary_generator_pairs(gens):
        rep = bounds.check_nonelementary_bound(gens[i], gens[j])
        checks.append(_retolerance(dataclasses.replace(rep, context=f"generators {i},{j}; " + rep.context), tol))
        rep, _ = bounds.check_marden_yamada(gens[i], gens[j])
        checks.append(_retolerance(dataclasses.replace(rep, context=f"generators {i},{j}; " + rep.context), tol))

    try:
        l0: Optional[float] = systole_estimate(elements)
    except NoHyperbolicElements as exc:
        l0 = None
        warnings.append(f"systole: {exc}")
    above_two = all(n > 2 for n in preset.known_orders) and all(n > 2 for n in eps.orders)
    gap = _point_checks(eps, l0, above_two, tol, checks, not_applicable, warnings)

    return Analysis(
        preset_name=preset.name,
        elements=elements,
        points=eps,
        gap=gap,
        systole=l0,
        checks=checks,
        not_applicable=not_applicable,
        warnings=warnings,
        depth=cfg.max_word_length,
        tolerances={k: cfg.tolerance(k) for k in TOLERANCE_KEYS},
    )


def analyze_points(records: Sequence[Tuple[UhpPoint, int]], l0: Optional[float] = None,
                   ball_radius: Optional[float] = None, tol: float = bounds.TOL_REPORT) -> Analysis:
    """Run the closest-pair checks on a hand-made elliptic point configuration."""
    eps = EllipticPointSet.from_points(records, ball_radius)
    checks: List[BoundReport] = []
    not_applicable: List[str] = []
    warnings: List[str] = []
    above_two = all(n > 2 for n in eps.orders)
    gap = _point_checks(eps, l0, above_two, tol, checks, not_applicable, warnings)
    return Analysis(
        preset_name="points",
        elements=[],
        points=eps,
        gap=gap,
        systole=l0,
        checks=checks,
        not_applicable=not_applicable,
        warnings=warnings,
        depth=0,
        tolerances={"tol_report": tol},
    )


def verify(cfg: RunConfig) -> VerifyReport:
    return VerifyReport.from_analysis(analyze(cfg))

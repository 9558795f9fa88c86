"""Experiment documents and report assembly for the batch front door.

One JSON document describes an experiment (tree source, weight source, map
source, exponent, truncation-depth ladder) and drives every command. Reports
are machine-readable JSON with real numbers rendered as decimal strings with
15 significant digits; serialization is sorted and timestamp-free so reruns
reproduce byte-identical output.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Mapping, Sequence

import numpy as np

from . import oracle as oracle_mod
from .compop import (OperatorSpec, boundedness_report, boundedness_trend,
                     compactness_profile, isometry_check, ratio_sup, tail_defect)
from .errors import DocumentError
from .schatten import SpectralReport, schatten_trend, spectral_report
from .selfmap import (SelfMap, adversary_unbounded, adversary_vanishing, analyze,
                      dump_map, load_map)
from .tree import Tree, build_bary, dump_tree, load_tree, name_index, truncate
from .weight import Weight, dump_weight, load_weight

SCHEMA_VERSION = 1

CONVENTION_NOTES = (
    "inner products conjugate their second argument",
    "weights are strictly positive; zero or non-finite weights are rejected",
    "suprema and sums range over the stored truncation; verdicts are finite-depth diagnostics, not proofs",
    "symbols with a partial domain exclude undefined vertices instead of padding them",
)


def real_str(x: float) -> str:
    """Canonical decimal rendering: 15 significant digits."""
    return format(float(x), ".15g")


def report_json(report: Mapping) -> str:
    return json.dumps(report, indent=2, sort_keys=True) + "\n"


@dataclass(frozen=True)
class AnalysisSpec:
    """Parsed experiment document; all file references already verified."""

    tree_source: Mapping
    weight_source: Mapping
    map_source: Mapping
    p: float
    depth_ladder: tuple[int, ...]
    schatten_exponents: tuple[float, ...]
    seed: int
    oracle_enabled: bool
    oracle_max_vertices: int
    isometry_ratio_tol: float
    compact_decay_ratio: float
    base_dir: Path


def _require(document: Mapping, field: str, kind, where: str):
    if field not in document:
        raise DocumentError(f"{where}: missing field \"{field}\"")
    value = document[field]
    if kind is float:
        if not isinstance(value, (int, float)) or isinstance(value, bool):
            raise DocumentError(f"{where}: field \"{field}\" must be a number")
        return float(value)
    if kind is int:
        if not isinstance(value, int) or isinstance(value, bool):
            raise DocumentError(f"{where}: field \"{field}\" must be an integer")
        return value
    if not isinstance(value, kind):
        raise DocumentError(f"{where}: field \"{field}\" has the wrong type")
    return value


def _check_file(source: Mapping, base_dir: Path, where: str) -> None:
    path = source["file"]
    if not isinstance(path, str):
        raise DocumentError(f"{where}: field \"file\" must be a path string")
    if not (base_dir / path).is_file():
        raise DocumentError(f"{where}: referenced file '{path}' not found")


def parse_analysis_spec(document: Mapping, base_dir: Path | str = ".") -> AnalysisSpec:
    base_dir = Path(base_dir)
    if not isinstance(document, Mapping):
        raise DocumentError("analysis spec must be a JSON object")
    version = document.get("schema_version", SCHEMA_VERSION)
    if version != SCHEMA_VERSION:
        raise DocumentError(f"unsupported schema_version {version!r} (this build reads {SCHEMA_VERSION})")

    tree_source = _require(document, "tree", Mapping, "analysis spec")
    if "file" in tree_source:
        _check_file(tree_source, base_dir, 'analysis spec field "tree"')
    elif tree_source.get("generator") == "bary":
        b = _require(tree_source, "branching", int, 'tree source')
        if b < 1:
            raise DocumentError('tree source: "branching" must be >= 1')
        bu = tree_source.get("branch_until")
        if bu is not None and (not isinstance(bu, int) or bu < 0):
            raise DocumentError('tree source: "branch_until" must be a nonnegative integer')
    else:
        raise DocumentError('tree source must be {"generator": "bary", ...} or {"file": path}')

    weight_source = _require(document, "weight", Mapping, "analysis spec")
    if "file" in weight_source:
        _check_file(weight_source, base_dir, 'analysis spec field "weight"')
    elif "family" not in weight_source and "weights" not in weight_source:
        raise DocumentError('weight source must carry "family", "weights" or "file"')

    map_source = _require(document, "map", Mapping, "analysis spec")
    if "file" in map_source:
        _check_file(map_source, base_dir, 'analysis spec field "map"')
    elif "builtin" not in map_source and "map" not in map_source:
        raise DocumentError('map source must carry "builtin", "map" or "file"')

    p = _require(document, "p", float, "analysis spec")
    if not (1.0 <= p < math.inf):
        raise DocumentError(f'analysis spec: "p" must satisfy 1 <= p < infinity, got {p}')

    ladder = _require(document, "depth_ladder", Sequence, "analysis spec")
    if isinstance(ladder, (str, bytes)) or not ladder:
        raise DocumentError('analysis spec: "depth_ladder" must be a non-empty array')
    depths = []
    for d in ladder:
        if not isinstance(d, int) or isinstance(d, bool) or d < 0:
            raise DocumentError('analysis spec: depth ladder entries must be nonnegative integers')
        depths.append(d)
    if any(b <= a for a, b in zip(depths, depths[1:])):
        raise DocumentError('analysis spec: "depth_ladder" must be strictly increasing')

    exponents = document.get("schatten_exponents", [1, 2])
    if isinstance(exponents, (str, bytes)) or not isinstance(exponents, Sequence) or not exponents:
        raise DocumentError('analysis spec: "schatten_exponents" must be a non-empty array')
    qs = []
    for q in exponents:
        if not isinstance(q, (int, float)) or isinstance(q, bool) or not float(q) >= 1.0:
            raise DocumentError('analysis spec: Schatten exponents must be numbers >= 1')
        qs.append(float(q))

    seed = document.get("seed", 0)
    if not isinstance(seed, int) or isinstance(seed, bool) or seed < 0:
        raise DocumentError('analysis spec: "seed" must be a nonnegative integer')

    oracle_cfg = document.get("oracle", {})
    if not isinstance(oracle_cfg, Mapping):
        raise DocumentError('analysis spec: "oracle" must be an object')
    enabled = oracle_cfg.get("enabled", True)
    if not isinstance(enabled, bool):
        raise DocumentError('analysis spec: "oracle.enabled" must be a boolean')
    cap = oracle_cfg.get("max_vertices", oracle_mod.DEFAULT_MAX_ORACLE_VERTICES)
    if not isinstance(cap, int) or isinstance(cap, bool) or cap < 1:
        raise DocumentError('analysis spec: "oracle.max_vertices" must be a positive integer')

    tol_cfg = document.get("tolerances", {})
    if not isinstance(tol_cfg, Mapping):
        raise DocumentError('analysis spec: "tolerances" must be an object')
    iso_tol = float(tol_cfg.get("isometry_ratio", 1e-12))
    decay = float(tol_cfg.get("compactness_decay_ratio", 0.1))
    if not (iso_tol > 0 and decay > 0):
        raise DocumentError("analysis spec: tolerances must be positive")

    return AnalysisSpec(
        tree_source=tree_source, weight_source=weight_source, map_source=map_source,
        p=p, depth_ladder=tuple(depths), schatten_exponents=tuple(qs), seed=seed,
        oracle_enabled=enabled, oracle_max_vertices=cap,
        isometry_ratio_tol=iso_tol, compact_decay_ratio=decay, base_dir=base_dir,
    )


def read_analysis_spec(path) -> AnalysisSpec:
    path = Path(path)
    try:
        document = json.loads(path.read_text(encoding="utf-8"))
    except OSError as exc:
        raise DocumentError(f"cannot read analysis spec '{path}': {exc}") from None
    except json.JSONDecodeError as exc:
        raise DocumentError(f"analysis spec '{path}' is not valid JSON: {exc}") from None
    return parse_analysis_spec(document, path.parent)


def _load_json(path: Path) -> Mapping:
    try:
        doc = json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise DocumentError(f"'{path}' is not valid JSON: {exc}") from None
    if not isinstance(doc, Mapping):
        raise DocumentError(f"'{path}' must hold a JSON object")
    return doc


class _Materializer:
    """Builds the per-depth operator instances an experiment asks for."""

    def __init__(self, spec: AnalysisSpec):
        self.spec = spec
        self._base_tree: Tree | None = None
        if "file" in spec.tree_source:
            self._base_tree = load_tree(_load_json(spec.base_dir / spec.tree_source["file"]))
        self._weight_doc: Mapping | None = None
        if "file" in spec.weight_source:
            self._weight_doc = _load_json(spec.base_dir / spec.weight_source["file"])
        elif "family" in spec.weight_source or "weights" in spec.weight_source:
            self._weight_doc = spec.weight_source
        self._map_doc: Mapping | None = None
        if "file" in spec.map_source:
            self._map_doc = _load_json(spec.base_dir / spec.map_source["file"])
        else:
            self._map_doc = spec.map_source

    def tree_at(self, depth: int) -> Tree:
        if self._base_tree is not None:
            if depth > self._base_tree.truncation_depth:
                raise DocumentError(
                    f"depth ladder entry {depth} exceeds the loaded tree's depth "
                    f"{self._base_tree.truncation_depth}")
            return truncate(self._base_tree, depth)
        src = self.spec.tree_source
        return build_bary(src["branching"], depth, src.get("branch_until"))

    def weight_on(self, tree: Tree) -> Weight:
        doc = self._weight_doc
        if doc is not None and "weights" in doc:
            names = set(name_index(tree))
            doc = {"weights": {k: v for k, v in doc["weights"].items() if k in names}}
        return load_weight(tree, doc)

    def map_on(self, tree: Tree) -> SelfMap:
        doc = self._map_doc
        if "map" in doc:
            names = set(name_index(tree))
            doc = {"map": {k: v for k, v in doc["map"].items() if k in names}}
        return load_map(tree, doc)

    def operator_at(self, depth: int) -> OperatorSpec:
        tree = self.tree_at(depth)
        return OperatorSpec(tree, self.weight_on(tree), self.map_on(tree), self.spec.p)


def _spec_echo(spec: AnalysisSpec) -> dict:
    return {
        "tree": dict(spec.tree_source),
        "weight": dict(spec.weight_source),
        "map": dict(spec.map_source),
        "p": real_str(spec.p),
        "depth_ladder": list(spec.depth_ladder),
        "seed": spec.seed,
    }


def _report_head(command: str, spec: AnalysisSpec) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "command": command,
        "conventions": list(CONVENTION_NOTES),
        "spec": _spec_echo(spec),
    }


def _tail_defect_pairs(depth: int) -> list[tuple[int, int]]:
    pairs = []
    for low in sorted({0, depth // 2}):
        for n in sorted({low + 1, depth}):
            if n > low:
                pairs.append((low, n))
    return sorted(set(pairs))


def run_analyze(spec: AnalysisSpec) -> dict:
    """Per-depth boundedness, isometry and compactness reports plus the
    growth trend of the weight-ratio supremum across the ladder."""
    mat = _Materializer(spec)
    entries = []
    sups = []
    for depth in spec.depth_ladder:
        op = mat.operator_at(depth)
        tree = op.tree
        profile = analyze(op.symbol)
        bnd = boundedness_report(op, profile)
        iso = isometry_check(op, ratio_tol=spec.isometry_ratio_tol, profile=profile)
        comp = compactness_profile(op, decay_ratio=spec.compact_decay_ratio)
        dom = op.symbol.domain
        eff_depth = int(tree.depth[dom].max()) if dom.size else -1
        entry = {
            "depth": depth,
            "vertex_count": len(tree),
            "domain_size": bnd.domain_size,
            "effective_domain_depth": eff_depth,
            "terminal_gap_count": len(tree.terminal_gaps),
            "boundedness": {
                "ratio_sup": real_str(bnd.ratio_sup),
                "ratio_sup_witness": tree.name_of(bnd.ratio_sup_witness) if bnd.ratio_sup_witness >= 0 else None,
                "operator_norm": real_str(bnd.operator_norm),
                "operator_norm_witness": tree.name_of(bnd.operator_norm_witness),
                "norm_lower_bound": real_str(bnd.norm_lower_bound),
                "norm_upper_bound": real_str(bnd.norm_upper_bound),
                "injective": bnd.injective,
                "multiplicity": bnd.multiplicity,
                "surjective": bnd.surjective,
            },
            "isometry": {
                "is_isometry": iso.is_isometry,
                "reason": iso.reason,
                "witness_vertex": _witness_name(tree, iso),
                "witness_image_norm": None if iso.witness_image_norm is None else real_str(iso.witness_image_norm),
                "frontier_only_misses": iso.frontier_only_misses,
            },
            "compactness": {
                "tail_sups": [real_str(v) for v in comp.values],
                "verdict": comp.verdict,
                "compact_consistent": comp.compact_consistent,
                "tail_slope": None if comp.tail_slope is None else real_str(comp.tail_slope),
                "frontier_cliff": comp.frontier_cliff,
                "max_image_depth": comp.max_image_depth,
            },
            "tail_defects": [
                {"N": low, "n": n, "value": real_str(tail_defect(op, n, low))}
                for low, n in _tail_defect_pairs(depth)
            ],
        }
        entries.append(entry)
        sups.append(bnd.ratio_sup)
    report = _report_head("analyze", spec)
    report["entries"] = entries
    report["trend"] = {
        "ratio_sups": [real_str(v) for v in sups],
        "verdict": boundedness_trend(sups),
    }
    return report


def _witness_name(tree: Tree, iso) -> str | None:
    for v in (iso.ratio_vertex, iso.missed_vertex):
        if v is not None:
            return tree.name_of(v)
    if iso.collision is not None:
        return tree.name_of(iso.collision[0])
    return None


def oracle_spectral_report(op: OperatorSpec, exponents) -> SpectralReport:
    """Spectral report assembled purely from the dense oracle: singular
    values from the Jacobi SVD, sums and the Hilbert-Schmidt norm from those
    values, the trace from the matrix diagonal."""
    matrix = oracle_mod.matrix_of(op)
    values = oracle_mod.svd_values(matrix)
    trace = float(np.trace(matrix))
    return SpectralReport(
        singular_values=values,
        schatten_sums={float(q): float(np.sum(values ** float(q))) for q in exponents},
        hs_norm=float(np.sqrt(np.sum(values ** 2))),
        trace_diagonal=trace,
        fixed_point_count=int(round(trace)),
        source="oracle",
    )


def run_spectrum(spec: AnalysisSpec) -> tuple[dict, str]:
    """Singular values, Schatten partial sums and the trace / fixed-point
    identity per depth, with oracle columns when the instance fits the dense
    cap. The CSV lists the spectrum at the deepest ladder entry."""
    if spec.p != 2.0:
        raise DocumentError(
            f"spectrum analysis needs the p = 2 Hilbert space, got p = {real_str(spec.p)}; "
            "singular values are not defined for other exponents here")
    mat = _Materializer(spec)
    entries = []
    sums_by_q: dict[float, list[float]] = {q: [] for q in spec.schatten_exponents}
    csv_text = ""
    for depth in spec.depth_ladder:
        op = mat.operator_at(depth)
        rep = spectral_report(op, spec.schatten_exponents)
        analytic = rep.singular_values
        oracle_entry: dict = {"checked": False, "notice": None}
        oracle_values = None
        if not spec.oracle_enabled:
            oracle_entry["notice"] = "oracle disabled by the spec document"
        elif len(op.tree) > spec.oracle_max_vertices:
            oracle_entry["notice"] = (
                f"skipped: {len(op.tree)} vertices exceed the dense-oracle cap "
                f"{spec.oracle_max_vertices}")
        else:
            orep = oracle_spectral_report(op, spec.schatten_exponents)
            oracle_values = orep.singular_values
            oracle_entry.update({
                "checked": True,
                "max_abs_difference": real_str(float(np.max(np.abs(analytic - oracle_values)))),
                "hs_norm": real_str(orep.hs_norm),
                "trace": real_str(orep.trace_diagonal),
                "fixed_point_count": orep.fixed_point_count,
                "schatten_sums": {real_str(q): real_str(orep.schatten_sums[q])
                                  for q in spec.schatten_exponents},
            })
        for q in spec.schatten_exponents:
            sums_by_q[q].append(rep.schatten_sums[q])
        entries.append({
            "depth": depth,
            "vertex_count": len(op.tree),
            "hs_norm": real_str(rep.hs_norm),
            "trace_diagonal": real_str(rep.trace_diagonal),
            "fixed_point_count": rep.fixed_point_count,
            "schatten_sums": {real_str(q): real_str(rep.schatten_sums[q])
                              for q in spec.schatten_exponents},
            "top_singular_values": [real_str(v) for v in analytic[:10]],
            "oracle": oracle_entry,
        })
        if depth == spec.depth_ladder[-1]:
            lines = []
            if oracle_values is not None:
                lines.append("rank,sigma_analytic,sigma_oracle")
                for i, (a, o) in enumerate(zip(analytic, oracle_values), start=1):
                    lines.append(f"{i},{real_str(a)},{real_str(o)}")
            else:
                lines.append("rank,sigma_analytic")
                for i, a in enumerate(analytic, start=1):
                    lines.append(f"{i},{real_str(a)}")
            csv_text = "\n".join(lines) + "\n"
    report = _report_head("spectrum", spec)
    report["entries"] = entries
    report["schatten_trends"] = {
        real_str(q): schatten_trend(sums_by_q[q]) for q in spec.schatten_exponents}
    return report, csv_text


def run_adversary(spec: AnalysisSpec) -> dict:
    """Construct the weight-spread witnesses on each ladder depth and report
    the ratio supremum they achieve."""
    mat = _Materializer(spec)
    sections = {}
    for key, build in (("unbounded_weight", adversary_unbounded),
                       ("vanishing_weight", adversary_vanishing)):
        ladder = []
        found_any = False
        for depth in spec.depth_ladder:
            tree = mat.tree_at(depth)
            weight = mat.weight_on(tree)
            symbol = build(tree, weight)
            if symbol is None:
                ladder.append({"depth": depth, "found": False, "ratio_sup": None, "map": None})
                continue
            found_any = True
            op = OperatorSpec(tree, weight, symbol, spec.p)
            ladder.append({
                "depth": depth,
                "found": True,
                "ratio_sup": real_str(ratio_sup(op).value),
                "map": dump_map(symbol),
            })
        sections[key] = {
            "entries": ladder,
            "verdict": "adversary found" if found_any else "no adversary found",
        }
    report = _report_head("adversary", spec)
    report.update(sections)
    return report


def serialize_instance(op: OperatorSpec) -> dict:
    """Self-contained document reproducing one operator instance."""
    return {
        "tree": dump_tree(op.tree),
        "weight": dump_weight(op.weight),
        "map": dump_map(op.symbol),
        "p": real_str(op.p),
    }

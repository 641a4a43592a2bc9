"""Output-quality and circuit-cost metrics plus the comparison report.

The reference point for every cost metric is the baseline: the same
block-resynthesis pass with no key, no RX pairs, and no candidate diversity.
"""

from __future__ import annotations

import csv
import io
import json
import time
from dataclasses import dataclass, field

from .circuit import Circuit, gate_counts
from .dag import cx_depth
from .distributions import Distribution
from .netlsd import default_grid, netlsd_divergence
from .obfuscate import decode
from .partition import form_blocks, reassemble
from .pipeline import PipelineConfig, encode
from .simulator import ideal_distribution, sample
from .synthesis import SynthConfig, generate_candidates, select_candidate


def tvd(p1: Distribution, p2: Distribution) -> float:
    """Total variation distance, half the L1 gap over the union of supports."""
    if p1.num_bits != p2.num_bits:
        raise ValueError(
            f"bit-length mismatch: {p1.num_bits} vs {p2.num_bits}"
        )
    a = p1.normalized().outcomes
    b = p2.normalized().outcomes
    keys = set(a) | set(b)
    return 0.5 * sum(abs(a.get(s, 0.0) - b.get(s, 0.0)) for s in keys)


def dominant_percentile(reference: Distribution, candidate: Distribution) -> float:
    """Percentile rank, within the candidate's support, of the reference's
    dominant state. 100 means it is the candidate's unique top state."""
    ref = reference.normalized().outcomes
    if not ref:
        raise ValueError("reference distribution is empty")
    top = max(ref.values())
    dominants = [s for s, v in ref.items() if v == top]
    if len(dominants) != 1:
        raise ValueError("no unique dominant state in reference")
    star = dominants[0]
    cand = candidate.normalized().outcomes
    if star not in cand:
        return 0.0
    support = len(cand)
    if support == 1:
        return 100.0
    below = sum(1 for v in cand.values() if v < cand[star])
    return 100.0 * below / (support - 1)


def make_baseline(c: Circuit, cfg: SynthConfig | None = None) -> Circuit:
    """Resynthesize every block at minimal CX with plain (index-0) candidate
    selection; no injections of any kind."""
    if cfg is None:
        cfg = SynthConfig(k=1, shortlist=1)
    base_cfg = SynthConfig(k=1, shortlist=1, seed=cfg.seed, tol=cfg.tol)
    p = form_blocks(c)
    frags = {b.order_index: select_candidate(
        generate_candidates(b, base_cfg), b, base_cfg
    ) for b in p.blocks}
    return reassemble(p, frags)


@dataclass(frozen=True)
class ComparisonReport:
    name: str
    num_qubits: int
    tvd_uncorrected: float | None
    tvd_corrected: float | None
    dominant_percentile_uncorrected: float | None
    dominant_percentile_corrected: float | None
    dominant_note: str | None
    cx_delta: int
    sx_x_delta_pct: float
    rz_delta_pct: float
    depth_delta: int
    netlsd: float
    netlsd_x_only: float
    wall_times: dict[str, float] = field(default_factory=dict)


CSV_COLUMNS = [
    "name",
    "num_qubits",
    "tvd_uncorrected",
    "tvd_corrected",
    "dominant_percentile_uncorrected",
    "dominant_percentile_corrected",
    "dominant_note",
    "cx_delta",
    "sx_x_delta_pct",
    "rz_delta_pct",
    "depth_delta",
    "netlsd",
    "netlsd_x_only",
    "encode_seconds",
    "baseline_seconds",
]


def compare(
    original: Circuit,
    cfg: PipelineConfig,
    shots: int | None = None,
    structural_only: bool = False,
    name: str = "",
) -> ComparisonReport:
    """Full encode-vs-baseline comparison. Simulation metrics are computed
    analytically when shots is None and skipped entirely in structural-only
    mode (or when the circuit exceeds the simulation cap)."""
    t0 = time.perf_counter()
    baseline = make_baseline(original, SynthConfig(k=1, shortlist=1, tol=cfg.tol))
    t_base = time.perf_counter() - t0

    t0 = time.perf_counter()
    enc = encode(original, cfg)
    t_enc = time.perf_counter() - t0

    counts_base = gate_counts(baseline)
    counts_enc = gate_counts(enc.circuit)
    cx_delta = counts_enc.cx - counts_base.cx
    sx_x_delta_pct = 100.0 * (counts_enc.sx_plus_x - counts_base.sx_plus_x) / max(
        counts_base.sx_plus_x, 1
    )
    rz_delta_pct = 100.0 * (counts_enc.rz - counts_base.rz) / max(counts_base.rz, 1)
    depth_delta = cx_depth(enc.circuit) - cx_depth(baseline)

    x_only = make_baseline(enc.x_injected, SynthConfig(k=1, shortlist=1, tol=cfg.tol))
    grid = default_grid(cfg.grid_min, cfg.grid_max, cfg.grid_points)
    netlsd_full = netlsd_divergence(enc.circuit, baseline, grid)
    netlsd_x = netlsd_divergence(x_only, baseline, grid)

    tvd_unc = tvd_cor = pct_unc = pct_cor = None
    note = None
    if not structural_only and original.num_qubits <= cfg.sim_cap:
        if shots is None:
            base_dist = ideal_distribution(baseline)
            enc_dist = ideal_distribution(enc.circuit)
        else:
            base_dist = sample(baseline, shots, cfg.seed)
            enc_dist = sample(enc.circuit, shots, cfg.seed + 1)
        measured = tuple(sorted(original.measured_qubits)) or tuple(
            range(original.num_qubits)
        )
        corrected = decode(enc_dist, enc.key.restricted(measured))
        tvd_unc = tvd(enc_dist, base_dist)
        tvd_cor = tvd(corrected, base_dist)
        try:
            pct_unc = dominant_percentile(base_dist, enc_dist)
            pct_cor = dominant_percentile(base_dist, corrected)
        except ValueError as exc:
            note = str(exc)

    return ComparisonReport(
        name=name,
        num_qubits=original.num_qubits,
        tvd_uncorrected=tvd_unc,
        tvd_corrected=tvd_cor,
        dominant_percentile_uncorrected=pct_unc,
        dominant_percentile_corrected=pct_cor,
        dominant_note=note,
        cx_delta=cx_delta,
        sx_x_delta_pct=sx_x_delta_pct,
        rz_delta_pct=rz_delta_pct,
        depth_delta=depth_delta,
        netlsd=netlsd_full,
        netlsd_x_only=netlsd_x,
        wall_times={"encode_seconds": t_enc, "baseline_seconds": t_base},
    )


def report_to_json(r: ComparisonReport) -> str:
    payload = {
        "name": r.name,
        "num_qubits": r.num_qubits,
        "tvd_uncorrected": r.tvd_uncorrected,
        "tvd_corrected": r.tvd_corrected,
        "dominant_percentile_uncorrected": r.dominant_percentile_uncorrected,
        "dominant_percentile_corrected": r.dominant_percentile_corrected,
        "dominant_note": r.dominant_note,
        "cx_delta": r.cx_delta,
        "sx_x_delta_pct": r.sx_x_delta_pct,
        "rz_delta_pct": r.rz_delta_pct,
        "depth_delta": r.depth_delta,
        "netlsd": r.netlsd,
        "netlsd_x_only": r.netlsd_x_only,
        "wall_times": r.wall_times,
    }
    return json.dumps(payload, indent=2)


def reports_to_csv(reports: list[ComparisonReport]) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=CSV_COLUMNS, lineterminator="\n")
    writer.writeheader()
    for r in reports:
        row = {
            "name": r.name,
            "num_qubits": r.num_qubits,
            "tvd_uncorrected": _fmt(r.tvd_uncorrected),
            "tvd_corrected": _fmt(r.tvd_corrected),
            "dominant_percentile_uncorrected": _fmt(r.dominant_percentile_uncorrected),
            "dominant_percentile_corrected": _fmt(r.dominant_percentile_corrected),
            "dominant_note": r.dominant_note or "",
            "cx_delta": r.cx_delta,
            "sx_x_delta_pct": _fmt(r.sx_x_delta_pct),
            "rz_delta_pct": _fmt(r.rz_delta_pct),
            "depth_delta": r.depth_delta,
            "netlsd": _fmt(r.netlsd),
            "netlsd_x_only": _fmt(r.netlsd_x_only),
            "encode_seconds": _fmt(r.wall_times.get("encode_seconds")),
            "baseline_seconds": _fmt(r.wall_times.get("baseline_seconds")),
        }
        writer.writerow(row)
    return buf.getvalue()


def _fmt(v: float | None) -> str:
    return "" if v is None else f"{v:.6g}"

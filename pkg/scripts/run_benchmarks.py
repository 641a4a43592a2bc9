#!/usr/bin/env python3
"""Run the full benchmark sweep and write a CSV/JSON report pair.

Desk benchmarks get output-quality metrics (analytic by default, sampled
with --shots); the large structural benchmarks skip simulation entirely.
"""

import argparse
import json
import logging
import os
import sys

sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "src"))

from qcloak.analysis import compare, report_to_json, reports_to_csv
from qcloak.bench import desk_benchmarks, structural_benchmarks
from qcloak.pipeline import PipelineConfig

log = logging.getLogger("run_benchmarks")


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", default="results", help="output directory")
    ap.add_argument("--seed", type=int, default=3, help="pipeline seed")
    ap.add_argument(
        "--shots", type=int, default=0,
        help="shots per distribution; 0 means analytic",
    )
    ap.add_argument(
        "--skip-structural", action="store_true",
        help="desk benchmarks only",
    )
    args = ap.parse_args()
    logging.basicConfig(stream=sys.stderr, level=logging.INFO,
                        format="%(levelname)s %(message)s")

    cfg = PipelineConfig(seed=args.seed)
    shots = args.shots or None
    reports = []
    for name, circ in desk_benchmarks().items():
        log.info("desk %s (%d qubits)", name, circ.num_qubits)
        reports.append(compare(circ, cfg, shots=shots, name=name))
    if not args.skip_structural:
        for name, circ in structural_benchmarks().items():
            log.info("structural %s (%d qubits)", name, circ.num_qubits)
            reports.append(compare(circ, cfg, structural_only=True, name=name))

    os.makedirs(args.out, exist_ok=True)
    csv_path = os.path.join(args.out, "benchmarks.csv")
    json_path = os.path.join(args.out, "benchmarks.json")
    with open(csv_path, "w") as fh:
        fh.write(reports_to_csv(reports))
    with open(json_path, "w") as fh:
        fh.write("[\n" + ",\n".join(report_to_json(r) for r in reports) + "\n]\n")
    log.info("wrote %s and %s", csv_path, json_path)
    print(reports_to_csv(reports), end="")
    return 0


if __name__ == "__main__":
    sys.exit(main())

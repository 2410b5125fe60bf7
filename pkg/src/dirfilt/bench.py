"""Benchmark harness: corrupt, filter, measure, and time.

Protocol per (image, noise level): the image is corrupted once with a seed
derived deterministically from the plan seed, then every filter in the plan
runs against that same noisy image, so effectiveness comparisons are paired.
A "none" row (noisy vs clean, time 0) leads each block.

Timing covers only the sequential ``apply_filter`` call, averaged over the
plan's repetitions; I/O and noise generation are excluded.  The speedup
column relates each directional filter to the same family's exact-strategy
variant when that variant is part of the plan.
"""

from __future__ import annotations

import csv
import io
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

import numpy as np

from .filters import FilterSpec, apply_filter, parse_filter_spec
from .image import FormatError, RasterImage, read_image
from .metrics import compare
from .noise import NoiseParams, corrupt_image

CSV_HEADER = "image,phi,filter,mae,psnr,ncd_x1000,time_s,speedup"


@dataclass(frozen=True)
class BenchPlan:
    images: tuple
    specs: tuple
    phis: tuple = (0.10, 0.15)
    seed: int = 0
    repetitions: int = 10
    output_format: str = "csv"

    def __post_init__(self) -> None:
        if not self.images:
            raise ValueError("plan lists no images")
        if not self.specs:
            raise ValueError("plan lists no filters")
        if self.repetitions < 1:
            raise ValueError(f"repetitions must be >= 1, got {self.repetitions}")
        for phi in self.phis:
            if not 0.0 <= phi <= 1.0:
                raise ValueError(f"phi must be in [0, 1], got {phi}")
        if self.output_format not in ("csv", "markdown"):
            raise ValueError(f"output format must be csv or markdown, got {self.output_format!r}")


@dataclass
class BenchRow:
    image: str
    phi: float
    filter_name: str
    mae: float
    psnr: float
    ncd_x1000: float
    time_s: float
    speedup: Optional[float] = None

    def csv_values(self) -> list:
        return [
            self.image,
            f"{self.phi:g}",
            self.filter_name,
            f"{self.mae:.6f}",
            "inf" if self.psnr == float("inf") else f"{self.psnr:.6f}",
            f"{self.ncd_x1000:.6f}",
            f"{self.time_s:.6f}",
            "" if self.speedup is None else f"{self.speedup:.3f}",
        ]


@dataclass
class BenchOutcome:
    rows: list = field(default_factory=list)
    errors: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.errors


def derive_noise_seed(plan_seed: int, image_index: int, phi_index: int) -> int:
    """Deterministic per-(image, phi) noise seed from the plan seed."""
    ss = np.random.SeedSequence((plan_seed, image_index, phi_index))
    return int(ss.generate_state(1, np.uint64)[0])


def time_filter(img: RasterImage, spec: FilterSpec, repetitions: int) -> tuple:
    """Mean wall time of sequential apply_filter over repetitions, plus the
    (deterministic) output of the last run.

    One untimed warmup run precedes the timed ones so that one-off costs
    (kernel compilation cache loading) never pollute the measurement.
    """
    out = apply_filter(img, spec)
    total = 0.0
    for _ in range(repetitions):
        t0 = time.perf_counter()
        out = apply_filter(img, spec)
        total += time.perf_counter() - t0
    return total / repetitions, out


def _baseline_key(spec: FilterSpec) -> Optional[tuple]:
    if spec.family in ("identity", "vmf"):
        return None
    return (spec.family, spec.p, spec.window)


def run_bench(plan: BenchPlan) -> BenchOutcome:
    """Execute the plan; failures are recorded per item and the run continues."""
    outcome = BenchOutcome()
    loaded = []
    for path in plan.images:
        try:
            loaded.append((str(path), read_image(path)))
        except (FormatError, OSError) as exc:
            outcome.errors.append(f"{path}: {exc}")
    for img_idx, (path, clean) in enumerate(loaded):
        image_id = Path(path).stem
        for phi_idx, phi in enumerate(plan.phis):
            params = NoiseParams(phi=phi, seed=derive_noise_seed(plan.seed, img_idx, phi_idx))
            noisy = corrupt_image(clean, params)
            rep = compare(clean, noisy)
            outcome.rows.append(
                BenchRow(image_id, phi, "none", rep.mae, rep.psnr, rep.ncd_x1000, 0.0)
            )
            block = []
            for spec in plan.specs:
                try:
                    mean_t, out = time_filter(noisy, spec, plan.repetitions)
                except (ValueError, RuntimeError) as exc:
                    outcome.errors.append(f"{image_id} phi={phi:g} {spec.name}: {exc}")
                    continue
                rep = compare(clean, out, time_seconds=mean_t)
                block.append(
                    (spec, BenchRow(image_id, phi, spec.name, rep.mae, rep.psnr,
                                    rep.ncd_x1000, mean_t))
                )
            base_time = {}
            for spec, row in block:
                key = _baseline_key(spec)
                if key is not None and spec.strategy.kind == "exact":
                    base_time[key] = row.time_s
            for spec, row in block:
                key = _baseline_key(spec)
                if key in base_time and row.time_s > 0:
                    row.speedup = base_time[key] / row.time_s
                outcome.rows.append(row)
    return outcome


# --------------------------------------------------------------------------
# Rendering and parsing.
# --------------------------------------------------------------------------

def rows_to_csv(rows: list) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_HEADER.split(","))
    for row in rows:
        writer.writerow(row.csv_values())
    return buf.getvalue()


def rows_from_csv(text: str) -> list:
    reader = csv.reader(io.StringIO(text))
    header = next(reader)
    if header != CSV_HEADER.split(","):
        raise ValueError(f"unexpected CSV header {header}")
    rows = []
    for rec in reader:
        if not rec:
            continue
        rows.append(
            BenchRow(
                image=rec[0],
                phi=float(rec[1]),
                filter_name=rec[2],
                mae=float(rec[3]),
                psnr=float(rec[4]),
                ncd_x1000=float(rec[5]),
                time_s=float(rec[6]),
                speedup=None if rec[7] == "" else float(rec[7]),
            )
        )
    return rows


def rows_to_markdown(rows: list) -> str:
    out = []
    current = None
    for row in rows:
        key = (row.image, row.phi)
        if key != current:
            current = key
            out.append(f"\n### {row.image} (phi = {row.phi:g})\n")
            out.append("| filter | MAE | PSNR | NCDx1000 | TIME (s) | speedup |")
            out.append("|---|---|---|---|---|---|")
        psnr_s = "inf" if row.psnr == float("inf") else f"{row.psnr:.3f}"
        speed_s = "" if row.speedup is None else f"{row.speedup:.2f}x"
        out.append(
            f"| {row.filter_name} | {row.mae:.3f} | {psnr_s} | {row.ncd_x1000:.3f} "
            f"| {row.time_s:.3f} | {speed_s} |"
        )
    return "\n".join(out).lstrip("\n") + "\n"


def render(outcome: BenchOutcome, output_format: str) -> str:
    if output_format == "csv":
        return rows_to_csv(outcome.rows)
    return rows_to_markdown(outcome.rows)


def parse_plan_file(text: str) -> BenchPlan:
    """Flat key = value plan format.

    Keys: image (repeatable), filter (repeatable), phi (repeatable or a
    space/comma-separated list), seed, repetitions, format.  Lines starting
    with '#' are comments.
    """
    images, specs, phis = [], [], []
    seed, repetitions, fmt = 0, 10, "csv"
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ValueError(f"plan line {lineno}: expected key = value, got {raw!r}")
        key, _, value = line.partition("=")
        key, value = key.strip().lower(), value.strip()
        if key == "image":
            images.append(value)
        elif key == "filter":
            specs.append(parse_filter_spec(value))
        elif key == "phi":
            phis.extend(float(v) for v in value.replace(",", " ").split())
        elif key == "seed":
            seed = int(value)
        elif key == "repetitions":
            repetitions = int(value)
        elif key == "format":
            fmt = value
        else:
            raise ValueError(f"plan line {lineno}: unknown key {key!r}")
    return BenchPlan(
        images=tuple(images),
        specs=tuple(specs),
        phis=tuple(phis) if phis else (0.10, 0.15),
        seed=seed,
        repetitions=repetitions,
        output_format=fmt,
    )

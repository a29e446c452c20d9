"""Acceptance gate: bindings output is bit-identical to the CLI path.

Covers 20 random image pairs through the transfer and a 10^4-ordinal
sampler run against a batch manifest. Each test prints one [PASS]/[FAIL]
line (bypassing capture) and then asserts.
"""

from __future__ import annotations

import csv
import subprocess
import sys
import time
from pathlib import Path

import numpy as np
import pytest

from svdna import load_image, random_image, save_image
from svdna_bindings import bind_sampler, bind_svdna_transfer

from conftest import CLI, write_registry


@pytest.fixture
def criterion(capfd):
    """A reporter that prints one [PASS]/[FAIL] line, bypassing capture."""

    def report(name: str, ok: bool, detail: str = "") -> None:
        line = f"[{'PASS' if ok else 'FAIL'}] {name}"
        if detail:
            line += f"  ({detail})"
        # capture must be lifted at write time; fd-level capture would
        # otherwise swallow even sys.__stdout__
        with capfd.disabled():
            print(line, file=sys.__stdout__, flush=True)
        assert ok, line

    return report


def test_transfer_equivalence_20_pairs(tmp_path, criterion):
    rng = np.random.default_rng(3001)
    mismatched = 0
    for i in range(20):
        src_w, src_h = (int(x) for x in rng.integers(24, 97, size=2))
        if i % 4 == 3:  # every fourth pair exercises shape reconciliation
            tgt_w, tgt_h = (int(x) for x in rng.integers(24, 97, size=2))
        else:
            tgt_w, tgt_h = src_w, src_h
        limit = min(src_h, src_w)
        k = int(rng.choice([0, 1, 5, 12, limit // 2, limit]))
        k = min(k, limit)

        src = random_image(src_w, src_h, seed=3100 + i)
        tgt = random_image(tgt_w, tgt_h, seed=3200 + i)
        in_memory = bind_svdna_transfer(src, tgt, k)

        src_path = tmp_path / f"s{i:02d}.png"
        tgt_path = tmp_path / f"t{i:02d}.png"
        out_path = tmp_path / f"o{i:02d}.png"
        save_image(src, src_path)
        save_image(tgt, tgt_path)
        subprocess.run(
            [*CLI, "restyle", str(src_path), str(tgt_path), "-k", str(k), "-o", str(out_path)],
            check=True,
            capture_output=True,
        )
        via_cli = load_image(out_path)
        if not np.array_equal(in_memory, via_cli):
            mismatched += 1
    criterion(
        "binding transfer equivalence (20 pairs vs cmd_restyle)",
        mismatched == 0,
        f"{mismatched} mismatched pair(s)",
    )


def test_sampler_equivalence_10k_ordinals(tmp_path, criterion):
    count = 10_000
    config = write_registry(tmp_path, n_source=count, targets={"mild": 2, "harsh": 3})
    out_dir = tmp_path / "augmented"
    start = time.perf_counter()
    subprocess.run(
        [*CLI, "batch", str(config), "-o", str(out_dir), "--workers", "8"],
        check=True,
        capture_output=True,
    )

    with open(out_dir / "manifest.csv", newline="") as fh:
        rows = list(csv.DictReader(fh))
    assert len(rows) == count

    handle = bind_sampler(config)
    decision_mismatches = 0
    pixel_mismatches = 0
    for row in rows:
        ordinal = int(row["ordinal"])
        record = handle.decision(ordinal)
        row_style = Path(row["style_path"]) if row["style_path"] else None
        row_k = int(row["k"]) if row["k"] else None
        row_domain = row["domain"] or None
        if (record.decision, record.domain, record.style_path, record.k) != (
            row["decision"],
            row_domain,
            row_style,
            row_k,
        ):
            decision_mismatches += 1
            continue
        source = load_image(row["source_path"])
        restyled, _ = handle.next(ordinal, source)
        if not np.array_equal(restyled, load_image(row["out_path"])):
            pixel_mismatches += 1
    elapsed = time.perf_counter() - start
    criterion(
        "binding sampler equivalence (10^4 ordinals vs cmd_batch)",
        decision_mismatches == 0 and pixel_mismatches == 0,
        f"decision mismatches {decision_mismatches}, pixel mismatches {pixel_mismatches}, "
        f"{elapsed:.0f}s",
    )

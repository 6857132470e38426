#!/usr/bin/env python3
# -*- coding:utf-8 -*-

from tabulate import tabulate

from einfields.utils.checkpoint import storage_report

__all__ = ["FLOAT32_BYTES", "compression_report", "format_compression"]

FLOAT32_BYTES = 4
_MIB = 1 << 20


def compression_report(model, grid, components=10):
    """
    Storage of a trained field against the explicit grid it replaces.

    The grid is counted as collocation points x components x 4 bytes; the model as
    parameter count x 4 bytes. The float64 sizes actually held in memory and on disk
    are reported next to them.

    Args:
        model: an `EinField` or a parameter count.
        grid: a `GridSpec` or a number of grid points.
        components (int): stored components per point (10 packed, 16 full).
    """
    if isinstance(model, int):
        storage = {
            "num_params": model,
            "float32_kib": model * FLOAT32_BYTES / 1024.0,
            "float64_kib": model * 8 / 1024.0,
            "payload_bytes": model * 8,
        }
    else:
        storage = storage_report(model)
    points = grid if isinstance(grid, int) else grid.size
    grid_bytes = points * components * FLOAT32_BYTES
    model_bytes = storage["num_params"] * FLOAT32_BYTES
    report = dict(storage)
    report.update({
        "grid_points": points,
        "components": components,
        "grid_bytes": grid_bytes,
        "grid_mib": grid_bytes / _MIB,
        "grid_bytes_f64": 2 * grid_bytes,
        "model_bytes": model_bytes,
        "ratio": grid_bytes / model_bytes if model_bytes else float("inf"),
    })
    return report


def format_compression(report):
    rows = [
        ("parameters", report["num_params"]),
        ("model (float32) KiB", "{:.2f}".format(report["float32_kib"])),
        ("model payload (float64) bytes", report["payload_bytes"]),
        ("grid points", report["grid_points"]),
        ("grid (float32, {} comps) MiB".format(report["components"]),
         "{:.2f}".format(report["grid_mib"])),
        ("grid (float64) bytes", report["grid_bytes_f64"]),
        ("compression ratio", "{:.1f}".format(report["ratio"])),
    ]
    return tabulate(rows, headers=["storage", "value"], tablefmt="fancy_grid")

#!/usr/bin/env python3
"""Writes the synthetic inputs used by the shipped configs into configs/data."""
import argparse
import pathlib

import numpy as np


def pattern_image(n=256):
    y, x = np.mgrid[0:n, 0:n] / n
    ring = np.exp(-((np.hypot(x - 0.5, y - 0.5) - 0.28) ** 2) / 0.002)
    blob = np.exp(-((x - 0.3) ** 2 + (y - 0.35) ** 2) / 0.004)
    bar = np.exp(-((y - 0.7) ** 2) / 0.001) * (np.abs(x - 0.55) < 0.2)
    ink = np.clip(ring + blob + 0.8 * bar, 0.0, 1.0)
    # white paper, dark ink
    return np.round(255 * (1.0 - 0.9 * ink)).astype(np.uint8)


def elevation_grid(rows=180, cols=360, seed=7):
    rng = np.random.default_rng(seed)
    i = np.arange(1, rows + 1)[:, None]
    j = np.arange(1, cols + 1)[None, :]
    th, ph = i * np.pi / rows, j * 2 * np.pi / cols
    p = np.stack([np.sin(th) * np.sin(ph), np.sin(th) * np.cos(ph), np.cos(th) * np.ones_like(ph)])
    h = np.zeros((rows, cols))
    for _ in range(9):
        c = rng.normal(size=3)
        c /= np.linalg.norm(c)
        h += rng.uniform(0.5, 1.0) * np.exp(8.0 * (np.tensordot(c, p, 1) - 1.0))
    return np.round(1000 * h / h.max()).astype(int) + 20


def surface_points(n=600):
    k = np.arange(n) + 0.5
    z = 1 - 2 * k / n
    r = np.sqrt(1 - z * z)
    a = np.pi * (1 + 5 ** 0.5) * k
    return np.stack([0.5 + 0.3 * r * np.cos(a), 0.5 + 0.25 * r * np.sin(a), 0.5 + 0.2 * z], axis=1)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--out", default=str(pathlib.Path(__file__).resolve().parent.parent / "configs" / "data"))
    out = pathlib.Path(ap.parse_args().out)
    out.mkdir(parents=True, exist_ok=True)
    img = pattern_image()
    (out / "pattern.pgm").write_bytes(b"P5\n%d %d\n255\n" % (img.shape[1], img.shape[0]) + img.tobytes())
    np.savetxt(out / "elevation_grid.txt", elevation_grid(), fmt="%d")
    np.savetxt(out / "surface_points.txt", surface_points(), fmt="%.6f")


if __name__ == "__main__":
    main()

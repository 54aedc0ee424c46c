#!/usr/bin/env python3
"""Regenerate the deterministic test fixtures under data/fixtures/.

The four PGM fixtures are the synthetic benchmark images used by the unit
and acceptance tests; the io/ subdirectory holds small PNG files exercising
the loader's unsupported-format rejections.  Everything here is a pure
function of this script, so the checked-in files can always be reproduced.

Usage: python3 scripts/make_fixtures.py [--outdir data/fixtures]
"""

import argparse
import pathlib

import numpy as np


def write_pgm(path: pathlib.Path, img: np.ndarray) -> None:
    assert img.dtype == np.uint8 and img.ndim == 2
    with open(path, "wb") as fh:
        fh.write(b"P5\n%d %d\n255\n" % (img.shape[1], img.shape[0]))
        fh.write(img.tobytes())


def gradient(n: int = 96) -> np.ndarray:
    r, c = np.mgrid[0:n, 0:n]
    ramp = (r + c) / (2 * n - 2)
    return np.round(ramp * 255).astype(np.uint8)


def checker(n: int = 96, cell: int = 12) -> np.ndarray:
    r, c = np.mgrid[0:n, 0:n]
    board = ((r // cell + c // cell) % 2).astype(np.uint8)
    return np.where(board == 0, 64, 192).astype(np.uint8)


def shapes(n: int = 96) -> np.ndarray:
    img = np.full((n, n), 40, dtype=np.uint8)
    img[12:44, 10:52] = 200
    r, c = np.mgrid[0:n, 0:n]
    disk = (r - 64) ** 2 + (c - 62) ** 2 <= 19**2
    img[disk] = 120
    img[80:88, 8:88] = 230
    return img


def texture(n: int = 96) -> np.ndarray:
    r, c = np.mgrid[0:n, 0:n]
    val = (
        128.0
        + 60.0 * np.sin(2 * np.pi * c / 17.0) * np.sin(2 * np.pi * r / 23.0)
        + 30.0 * np.cos(2 * np.pi * (r + c) / 9.0)
    )
    return np.clip(np.round(val), 0, 255).astype(np.uint8)


def write_io_samples(iodir: pathlib.Path) -> None:
    """PNG files the grayscale-only loader must reject."""
    from PIL import Image

    rgb = np.zeros((6, 8, 3), dtype=np.uint8)
    rgb[..., 0] = 200
    rgb[..., 1] = np.arange(8, dtype=np.uint8) * 30
    Image.fromarray(rgb, mode="RGB").save(iodir / "rgb_sample.png")

    gray16 = (np.arange(48).reshape(6, 8) * 1000 % 65536).astype(np.uint16)
    Image.fromarray(gray16, mode="I;16").save(iodir / "gray16_sample.png")


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--outdir", default="data/fixtures", type=pathlib.Path)
    args = ap.parse_args()

    args.outdir.mkdir(parents=True, exist_ok=True)
    iodir = args.outdir / "io"
    iodir.mkdir(exist_ok=True)

    write_pgm(args.outdir / "gradient.pgm", gradient())
    write_pgm(args.outdir / "checker.pgm", checker())
    write_pgm(args.outdir / "shapes.pgm", shapes())
    write_pgm(args.outdir / "texture.pgm", texture())
    write_io_samples(iodir)
    print("fixtures written to", args.outdir)


if __name__ == "__main__":
    main()

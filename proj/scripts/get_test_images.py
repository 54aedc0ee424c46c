#!/usr/bin/env python3
"""Populate data/standard/ with benchmark photographs as 8-bit PGM files.

Two sources, selectable with --source:

  skimage  (default) exports five sample photographs bundled with
           scikit-image: camera, moon, clock, coins, astronaut.  Works
           offline; these drive the stock benchmark config.
  web      downloads the classic denoising test set (lena, cameraman,
           peppers, house, parrot) from public mirrors.  Needs network
           access; failures per image are reported and skipped.

Color inputs are converted to luma with Pillow's ITU-R 601 weights
(0.299 R + 0.587 G + 0.114 B).  Images are written at their native size;
the benchmark harness center-crops to its configured bound (256 by
default) and records that in every report.

The files land in data/standard/, which is not tracked by git.
"""

import argparse
import io
import pathlib
import sys
import urllib.request

import numpy as np
from PIL import Image

WEB_SOURCES = {
    "lena": "https://homepages.cae.wisc.edu/~ece533/images/lena.png",
    "cameraman": "https://homepages.cae.wisc.edu/~ece533/images/cameraman.tif",
    "peppers": "https://homepages.cae.wisc.edu/~ece533/images/peppers.png",
    "house": "https://sipi.usc.edu/database/download.php?vol=misc&img=4.1.05",
    "parrot": "https://r0k.us/graphics/kodak/kodak/kodim23.png",
}

SKIMAGE_NAMES = ["camera", "moon", "clock", "coins", "astronaut"]


def to_gray(img: Image.Image) -> np.ndarray:
    if img.mode != "L":
        img = img.convert("L")
    return np.asarray(img, dtype=np.uint8)


def write_pgm(path: pathlib.Path, gray: np.ndarray) -> None:
    with open(path, "wb") as fh:
        fh.write(b"P5\n%d %d\n255\n" % (gray.shape[1], gray.shape[0]))
        fh.write(gray.tobytes())
    print(f"  wrote {path} ({gray.shape[1]}x{gray.shape[0]})")


def export_skimage(outdir: pathlib.Path) -> int:
    import skimage.data

    count = 0
    for name in SKIMAGE_NAMES:
        arr = getattr(skimage.data, name)()
        gray = to_gray(Image.fromarray(arr))
        write_pgm(outdir / f"{name}.pgm", gray)
        count += 1
    return count


def fetch_web(outdir: pathlib.Path) -> int:
    count = 0
    for name, url in WEB_SOURCES.items():
        try:
            with urllib.request.urlopen(url, timeout=30) as resp:
                payload = resp.read()
            gray = to_gray(Image.open(io.BytesIO(payload)))
        except Exception as exc:  # noqa: BLE001 - report and move on
            print(f"  skipping {name}: {exc}", file=sys.stderr)
            continue
        write_pgm(outdir / f"{name}.pgm", gray)
        count += 1
    return count


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--source", choices=["skimage", "web", "both"], default="skimage")
    ap.add_argument("--outdir", default="data/standard", type=pathlib.Path)
    args = ap.parse_args()

    args.outdir.mkdir(parents=True, exist_ok=True)
    count = 0
    if args.source in ("skimage", "both"):
        count += export_skimage(args.outdir)
    if args.source in ("web", "both"):
        count += fetch_web(args.outdir)
    print(f"{count} image(s) in {args.outdir}")
    return 0 if count else 1


if __name__ == "__main__":
    sys.exit(main())

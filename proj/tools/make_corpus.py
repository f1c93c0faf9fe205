#!/usr/bin/env python3
"""Regenerates tests/data/corpus from the sample images bundled with scikit-image.

Crops are 64x64, taken at seeded uniform positions, two per source image.
Sources are the public-domain / CC0 images shipped in skimage.data.
"""
import pathlib

import numpy as np
from PIL import Image
from skimage import data

SOURCES = [
    "astronaut", "chelsea", "coffee", "rocket",
    "camera", "coins", "moon", "brick", "grass", "gravel",
    "immunohistochemistry", "page",
]
CROP = 64
PER_IMAGE = 2


def main():
    out = pathlib.Path(__file__).resolve().parent.parent / "tests" / "data" / "corpus"
    out.mkdir(parents=True, exist_ok=True)
    rng = np.random.default_rng(20240917)
    for name in SOURCES:
        img = getattr(data, name)()
        h, w = img.shape[:2]
        for k in range(PER_IMAGE):
            i = int(rng.integers(0, h - CROP))
            j = int(rng.integers(0, w - CROP))
            crop = np.ascontiguousarray(img[i:i + CROP, j:j + CROP])
            Image.fromarray(crop).save(out / f"{name}_{k}.png")


if __name__ == "__main__":
    main()

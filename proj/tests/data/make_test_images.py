"""Regenerates the natural test images in this directory from the
scikit-image sample data (2x2 box-downsampled to 256x256, 8-bit binary
netpbm)."""
import pathlib

import numpy as np
from skimage import color, data

HERE = pathlib.Path(__file__).resolve().parent


def down2(a):
    a = a.astype(np.float64)
    a = 0.25 * (a[0::2, 0::2] + a[1::2, 0::2] + a[0::2, 1::2] + a[1::2, 1::2])
    return np.clip(np.round(a), 0, 255).astype(np.uint8)


def write(path, a):
    h, w = a.shape[:2]
    magic = b"P5" if a.ndim == 2 else b"P6"
    with open(path, "wb") as f:
        f.write(magic + b"\n%d %d\n255\n" % (w, h))
        f.write(np.ascontiguousarray(a).tobytes())


def main():
    write(HERE / "camera256.pgm", down2(data.camera()))
    astro = data.astronaut()
    astro_small = np.stack([down2(astro[..., c]) for c in range(3)], axis=-1)
    write(HERE / "astronaut256.ppm", astro_small)
    gray = np.clip(np.round(color.rgb2gray(astro) * 255.0), 0, 255).astype(np.uint8)
    write(HERE / "astronaut256.pgm", down2(gray))


if __name__ == "__main__":
    main()

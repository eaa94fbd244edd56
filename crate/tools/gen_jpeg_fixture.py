"""Writes a small JPEG and its reference decode (by Pillow/libjpeg) as raw RGB bytes."""

import sys
from pathlib import Path

import numpy as np
from PIL import Image

out = Path(sys.argv[1] if len(sys.argv) > 1 else "crates/core/tests/fixtures")
out.mkdir(parents=True, exist_ok=True)

h, w = 24, 40
y, x = np.mgrid[0:h, 0:w]
rgb = np.stack(
    [
        (x * 255 / (w - 1)),
        (y * 255 / (h - 1)),
        128 + 100 * np.sin(x / 4.0) * np.cos(y / 5.0),
    ],
    axis=-1,
).clip(0, 255).astype(np.uint8)

Image.fromarray(rgb).save(out / "gradient.jpg", quality=90, subsampling=0)
decoded = np.asarray(Image.open(out / "gradient.jpg").convert("RGB"))
(out / "gradient.rgb").write_bytes(decoded.tobytes())
print(f"wrote {out}/gradient.jpg ({w}x{h}) and reference decode")

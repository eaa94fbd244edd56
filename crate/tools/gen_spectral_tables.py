"""Regenerates the bundled spectral tables in crates/core/data.

The Jerlov tables come from a small bio-optical model (pure water plus
phytoplankton, CDOM and particle terms) whose per-type constituent loads
increase from type I to 9C. The camera table is a three-lobe Gaussian fit
shaped like a consumer DSLR response. Both are stand-ins: drop published
tabulations with the same headers into a directory and point
AQUASYNTH_DATA_DIR at it to replace them.
"""
import math
import pathlib

OUT = pathlib.Path(__file__).resolve().parent.parent / "crates" / "core" / "data"
GRID = list(range(390, 711, 5))

# Pure-water absorption (1/m), 10 nm nodes, linearly interpolated.
WATER_A = {
    380: 0.0114, 390: 0.0085, 400: 0.00663, 410: 0.00473, 420: 0.00454, 430: 0.00495,
    440: 0.00635, 450: 0.00922, 460: 0.00979, 470: 0.0106, 480: 0.0127, 490: 0.0150,
    500: 0.0204, 510: 0.0325, 520: 0.0409, 530: 0.0434, 540: 0.0474, 550: 0.0565,
    560: 0.0619, 570: 0.0695, 580: 0.0896, 590: 0.1351, 600: 0.2224, 610: 0.2644,
    620: 0.2755, 630: 0.2916, 640: 0.3108, 650: 0.3400, 660: 0.4100, 670: 0.4300,
    680: 0.4500, 690: 0.5000, 700: 0.6500, 710: 0.8390, 720: 1.1690,
}

# name: (chlorophyll mg/m^3, CDOM absorption at 440 nm, particle scattering at 550 nm)
TYPES = [
    ("I", 0.03, 0.005, 0.02),
    ("IA", 0.10, 0.010, 0.05),
    ("IB", 0.20, 0.020, 0.10),
    ("II", 0.50, 0.040, 0.25),
    ("III", 1.00, 0.080, 0.50),
    ("1C", 1.50, 0.150, 0.80),
    ("3C", 3.00, 0.300, 1.50),
    ("5C", 5.00, 0.600, 2.50),
    ("7C", 8.00, 1.000, 4.00),
    ("9C", 12.0, 1.600, 6.00),
]


def water_a(lam):
    lo = (lam // 10) * 10
    if lo == lam:
        return WATER_A[lam]
    t = (lam - lo) / 10.0
    return WATER_A[lo] * (1 - t) + WATER_A[lo + 10] * t


def water_b(lam):
    return 0.00222 * (500.0 / lam) ** 4.32


def phyto_shape(lam):
    return (0.8 * math.exp(-(((lam - 440) / 50.0) ** 2))
            + 0.2 * math.exp(-(lam - 440) / 150.0)
            + 0.45 * math.exp(-(((lam - 675) / 15.0) ** 2)))


def row(lam, chl, cdom, bp):
    a = (water_a(lam)
         + 0.06 * chl ** 0.65 * phyto_shape(lam)
         + cdom * math.exp(-0.015 * (lam - 440))
         + 0.02 * bp * math.exp(-0.011 * (lam - 440)))
    b_particle = bp * (550.0 / lam)
    b = water_b(lam) + b_particle
    bb = 0.5 * water_b(lam) + 0.015 * b_particle
    kd = (a + bb) / 0.85
    return a, b, kd


def camera(lam):
    r = math.exp(-(((lam - 600) / 28.0) ** 2)) + 0.06 * math.exp(-(((lam - 455) / 25.0) ** 2))
    g = math.exp(-(((lam - 530) / 38.0) ** 2)) + 0.04 * math.exp(-(((lam - 620) / 30.0) ** 2))
    b = math.exp(-(((lam - 460) / 30.0) ** 2)) + 0.03 * math.exp(-(((lam - 540) / 30.0) ** 2))
    return r, g, b


def fmt(x):
    return f"{x:.6g}"


def main():
    OUT.mkdir(parents=True, exist_ok=True)
    for name, chl, cdom, bp in TYPES:
        lines = ["wavelength_nm,a,b,kd"]
        for lam in GRID:
            a, b, kd = row(lam, chl, cdom, bp)
            lines.append(f"{lam},{fmt(a)},{fmt(b)},{fmt(kd)}")
        (OUT / f"jerlov_{name}.csv").write_text("\n".join(lines) + "\n")
    lines = ["wavelength_nm,r,g,b"]
    for lam in GRID:
        lines.append(f"{lam}," + ",".join(fmt(v) for v in camera(lam)))
    (OUT / "camera_nikon_d90.csv").write_text("\n".join(lines) + "\n")


if __name__ == "__main__":
    main()

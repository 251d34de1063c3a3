"""Draw the (n, p) lattice with the extra-nice and nice boundaries.

    python scripts/make_figure.py --hi 30 --out boundary.svg
"""
import argparse
import sys

from mapgerms import atlas
from mapgerms.config import FigureConfig


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--lo", type=int, default=1)
    ap.add_argument("--hi", type=int, default=20)
    ap.add_argument("--fmt", default="svg")
    ap.add_argument("--out", default="boundary.svg")
    cfg = FigureConfig(**vars(ap.parse_args(argv)))
    doc = atlas.emit_boundary_figure(cfg.lo, cfg.hi, cfg.fmt)
    with open(cfg.out, "w") as fh:
        fh.write(doc)
    print(f"wrote {cfg.out} ({len(doc)} bytes)", file=sys.stderr)
    return 0


if __name__ == "__main__":
    sys.exit(main())

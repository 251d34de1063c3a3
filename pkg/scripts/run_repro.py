"""Recompute every bundled check and write a JSON report.

    python scripts/run_repro.py --tier slow --cache-dir .cache --out repro.json
"""
import argparse
import json
import sys

from mapgerms import repro
from mapgerms.config import ReproConfig


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--tier", default="fast", choices=("fast", "slow"))
    ap.add_argument("--cache-dir")
    ap.add_argument("--out")
    cfg = ReproConfig(**{k.replace("-", "_"): v for k, v in vars(ap.parse_args(argv)).items()})
    cfg.apply()
    checks = repro.run(cfg.tier)
    for c in checks:
        print(f"{c.status:>9}  {c.seconds:7.2f}s  {c.name}", file=sys.stderr)
    report = {"config": cfg.to_json(), "checks": [c.to_json() for c in checks],
              "all_ok": all(c.ok for c in checks)}
    text = json.dumps(report, sort_keys=True, indent=2)
    if cfg.out:
        with open(cfg.out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    return 0 if report["all_ok"] else 3


if __name__ == "__main__":
    sys.exit(main())

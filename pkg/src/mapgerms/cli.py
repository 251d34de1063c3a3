"""Command-line entry point: ``mapgerms <command> ...``.

Every command prints one JSON envelope on stdout.  Exit codes: 0 ok,
1 usage or parse error (and non-stable input where stability is required),
2 computation budget exceeded, 3 reproduction mismatch.
"""
from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
import time
from typing import List, Optional

from . import atlas, catalog, discriminant as D, repro, sections as S, tangent as T, unfolding as U
from .gb import BudgetExceeded
from .germ import GermSyntaxError, MapGerm, format_germ, parse_germ, weighted
from .poly import PolySyntaxError, VectorField, make_ring, parse_poly

SCHEMA = "mapgerms.envelope/1"

EXIT_OK, EXIT_USAGE, EXIT_BUDGET, EXIT_MISMATCH = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


# ---------------------------------------------------------------- inputs

def load_germ(spec: str) -> MapGerm:
    """A germ file path, a catalog name, or ``cod2-nonsimple:<lambda>``."""
    if os.path.isfile(spec):
        with open(spec) as fh:
            return parse_germ(fh.read())
    if spec.startswith("cod2-nonsimple:"):
        return catalog.cod2_nonsimple(spec.split(":", 1)[1])
    try:
        return catalog.get(spec)
    except KeyError as exc:
        raise UsageError(str(exc.args[0])) from None


def _fields_arg(F: MapGerm, text: str) -> List[VectorField]:
    """Vector fields on the target: a file of lines, or one ';'-joined line.

    Each field is a comma-separated list of polynomials in the target
    variables.
    """
    if os.path.isfile(text):
        with open(text) as fh:
            lines = [ln.split("#", 1)[0].strip() for ln in fh]
    else:
        lines = text.split(";")
    out = []
    for ln in lines:
        if not ln.strip():
            continue
        comps = [c.strip() for c in ln.split(",")]
        if len(comps) != F.p:
            raise UsageError(f"expected {F.p} components, got {len(comps)}: {ln!r}")
        out.append(VectorField.parse(F.target, comps))
    if not out:
        raise UsageError("no vector fields given")
    return out


def _germ_payload(F: MapGerm) -> dict:
    return {"label": F.label, "n": F.n, "p": F.p, "germ_file": format_germ(F)}


def _fields_json(gens) -> List[List[str]]:
    return [[str(c) for c in g.components] for g in gens]


def _require_stable(F: MapGerm):
    cert = T.stability_certificate(F)
    if not cert["stable"]:
        raise _Rejected({"error": "germ is not stable", "stability_certificate": cert})
    return cert


class _Rejected(Exception):
    def __init__(self, payload):
        super().__init__(payload.get("error"))
        self.payload = payload


# ---------------------------------------------------------------- commands

CITE_CODIM = "definition:G-codimension dim theta(f)/TGf for G in Ae, A, Ke, K"
CITE_LIFT = "definition:Lift(F) = Derlog of the discriminant (or image)"
CITE_RANK = "method:linear parts of tL(Lift(F)) span, N_F(a) rank"
CITE_UNFOLD = "construction:Mather stable unfolding along a Ke normal basis"


def cmd_codim(a):
    F = load_germ(a.germ)
    res = T.codimension(F, a.group, a.degree)
    out = {"germ": F.label, **res.to_json()}
    return out, [CITE_CODIM], res.certified_degree


def cmd_lift(a):
    F = load_germ(a.germ)
    cert = _require_stable(F)
    d = D.discriminant(F)
    out = {"germ": F.label, "equation": str(d.equation),
           "generators": _fields_json(d.derlog.generators),
           "count": len(d.derlog.generators), "saito": D.saito_check(d),
           "stability_certificate": cert}
    pub = _bundled_lift(F)
    if pub is not None:
        out["matches_bundled"] = D.module_equal(pub, d.derlog.generators, weighted(F).target)
    return out, [CITE_LIFT], None


def cmd_discriminant(a):
    F = load_germ(a.germ)
    cert = _require_stable(F)
    d = D.discriminant(F)
    out = {**d.to_json(), "stability_certificate": cert}
    return out, [CITE_LIFT], None


def _bundled_lift(F: MapGerm):
    if F.label not in catalog.GERMS:
        return None
    try:
        return catalog.corrected_lift(F)
    except KeyError:
        return None


def cmd_verify_lift(a):
    F = load_germ(a.germ)
    if a.published is not None:
        pick = catalog.published_lift if a.printed else catalog.corrected_lift
        try:
            gens = pick(F)
        except KeyError:
            raise UsageError(f"no bundled generator list for {F.label!r}") from None
        if not 1 <= a.published <= len(gens):
            raise UsageError(f"--published must lie in 1..{len(gens)}")
        etas = [gens[a.published - 1]]
    elif a.eta is not None:
        etas = _fields_arg(F, a.eta)
    else:
        raise UsageError("give --eta or --published")
    rows = []
    for eta in etas:
        row = {"eta": [str(c) for c in eta.components]}
        try:
            w = D.verify_liftable(F, eta)
            row.update(liftable=True, xi=[str(c) for c in w.xi.components], unit=str(w.unit))
        except D.NotLiftable:
            row.update(liftable=False, xi=None, unit=None)
        rows.append(row)
    return {"germ": F.label, "results": rows}, [CITE_LIFT], None


def cmd_section_scan(a):
    F = load_germ(a.germ)
    if a.lift == "computed":
        gens = None
    elif a.lift == "bundled":
        try:
            gens = catalog.published_lift(F)
        except KeyError:
            raise UsageError(f"no bundled generator list for {F.label!r}") from None
    else:
        gens = _fields_arg(F, a.lift)
    rep = S.best_section_codim(F, gens)
    out = rep.to_json()
    out["n_matrix"] = rep.n_matrix.to_json()
    if a.vke is not None:
        L = F.target.parse(a.vke)
        v = S.vke_codim(D.discriminant(F), L, gens)
        out["vke"] = {"L": str(L), "codim": v if isinstance(v, int) else "infinity"}
    return out, [CITE_RANK], None


def cmd_unfold(a):
    f0 = load_germ(a.germ)
    Uf = U.mather_stable_unfolding(f0)
    cert = T.stability_certificate(Uf.total)
    out = {"base": f0.label, "params": list(Uf.params), **_germ_payload(Uf.total),
           "stability_certificate": cert}
    return out, [CITE_UNFOLD], cert.get("jet_degree")


def cmd_augment(a):
    h = load_germ(a.germ)
    H = U.versal_unfolding(h)
    try:
        g = parse_poly(a.g, make_ring([a.var]))
    except PolySyntaxError as exc:
        raise UsageError(str(exc)) from None
    A = U.augment(h, H, g)
    before = T.codimension(h, "Ae")
    after = T.codimension(A, "Ae")
    out = {"base": h.label, "g": str(g), **_germ_payload(A),
           "ae_codim_base": int(before.value) if before.finite else "infinity",
           "ae_codim": int(after.value) if after.finite else "infinity"}
    return out, ["construction:augmentation (h_{g(z)}(x), z) of a versal unfolding", CITE_CODIM], \
        after.certified_degree


def cmd_extend_zero(a):
    f0 = load_germ(a.germ)
    if a.zeros < 0:
        raise UsageError("--zeros must be nonnegative")
    base, Uf = U.extend_with_zero(f0, a.zeros)
    cert = T.stability_certificate(Uf.total)
    out = {"base": format_germ(base), "params": list(Uf.params), **_germ_payload(Uf.total),
           "stability_certificate": cert}
    return out, ["construction:stable unfolding of (f0, 0, .., 0)", CITE_UNFOLD], cert.get("jet_degree")


def cmd_classify(a):
    if a.n < 1 or a.p < 1:
        raise UsageError("n and p must be positive")
    c = atlas.classify(a.n, a.p)
    out = c.to_json()
    out["nice"] = atlas.nice(a.n, a.p)
    out["algebras"] = [e.to_json() for e in atlas.algebra_catalog(a.n, a.p)]
    if a.n == a.p:
        out["delta_chain"] = atlas.delta_chain(a.n)
    return out, list(c.citations), None


def _range(text: str):
    try:
        lo, hi = (int(t) for t in text.split(":"))
    except ValueError:
        raise UsageError(f"--range expects LO:HI, got {text!r}") from None
    return lo, hi


def cmd_atlas(a):
    lo, hi = _range(a.range)
    if not (1 <= lo and hi <= 40):
        raise UsageError("--range must lie within 1:40")
    out = {"range": [lo, hi], "boundary_pairs": [list(b) for b in atlas.boundary_pairs(hi) if b[0] >= lo and b[1] >= lo],
           "monotonicity_violations": atlas.monotonicity_violations(hi),
           "extra_not_nice": atlas.extra_implies_nice(hi)}
    if a.figure:
        fig = atlas.emit_boundary_figure(lo, hi, a.format)
        with open(a.figure, "w") as fh:
            fh.write(fig)
        out["figure"] = {"path": os.path.basename(a.figure), "format": a.format,
                         "sha256": hashlib.sha256(fig.encode()).hexdigest()}
    return out, [atlas.ANCHORS["n<=p-line"], atlas.ANCHORS["monotone"]], None


def cmd_repro(a):
    checks = repro.run(a.tier)
    out = {"tier": a.tier, "checks": [c.to_json(timings=False) for c in checks],
           "all_ok": all(c.ok for c in checks)}
    cites = ["harness:bundled check suite"]
    secs = {c.name: round(c.seconds, 3) for c in checks}
    return out, cites, None, secs


COMMANDS = {
    "codim": cmd_codim, "lift": cmd_lift, "discriminant": cmd_discriminant,
    "verify-lift": cmd_verify_lift, "section-scan": cmd_section_scan, "unfold": cmd_unfold,
    "augment": cmd_augment, "extend-zero": cmd_extend_zero, "classify": cmd_classify,
    "atlas": cmd_atlas, "repro": cmd_repro,
}


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="mapgerms", description="Exact invariants of polynomial map-germs.")
    p.add_argument("--pretty", action="store_true", help="also print a table on stderr")
    p.add_argument("--no-timings", action="store_true", help="omit the timings field")
    # repeated on each subcommand so the flags may follow it
    common = _Parser(add_help=False)
    common.add_argument("--pretty", action="store_true", default=argparse.SUPPRESS)
    common.add_argument("--no-timings", action="store_true", default=argparse.SUPPRESS)
    sub = p.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True
    _add = sub.add_parser
    sub.add_parser = lambda *args, **kw: _add(*args, parents=[common], **kw)

    def germ_cmd(name, help_):
        s = sub.add_parser(name, help=help_)
        s.add_argument("germ", help="germ file, catalog name, or cod2-nonsimple:LAMBDA")
        return s

    s = germ_cmd("codim", "certified codimension")
    s.add_argument("--group", choices=T.GROUPS, default="Ae")
    s.add_argument("--degree", type=int, default=T.DEFAULT_CAP, help="jet degree cap")
    germ_cmd("lift", "generators of Lift(F)")
    germ_cmd("discriminant", "discriminant equation and Derlog")
    s = germ_cmd("verify-lift", "solve dF.xi = eta(F)")
    s.add_argument("--eta", help="fields 'c1,c2,..;c1,..' or a file with one field per line")
    s.add_argument("--published", type=int, help="index into the bundled generator list (1-based)")
    s.add_argument("--printed", action="store_true",
                   help="use the list exactly as printed, without the known misprint repairs")
    s = germ_cmd("section-scan", "hyperplane section rank test")
    s.add_argument("--lift", default="computed", help="computed, bundled, or a file of fields")
    s.add_argument("--vke", help="also compute the VKe-codimension of this function on the target")
    germ_cmd("unfold", "Mather stable unfolding of a rank-0 germ")
    s = germ_cmd("augment", "augmentation by g of an Ae-codimension 1 germ")
    s.add_argument("--g", required=True, help="polynomial in one variable")
    s.add_argument("--var", default="z", help="variable of g (default z)")
    s = germ_cmd("extend-zero", "stable unfolding of (f0, 0, .., 0)")
    s.add_argument("--zeros", type=int, default=1)
    s = sub.add_parser("classify", help="extra-nice / nice status of (n, p)")
    s.add_argument("n", type=int)
    s.add_argument("p", type=int)
    s = sub.add_parser("atlas", help="boundary summary and figure")
    s.add_argument("--figure", help="write the figure to this path")
    s.add_argument("--format", choices=("svg", "text"), default="svg")
    s.add_argument("--range", default="1:20", help="LO:HI (within 1:40)")
    s = sub.add_parser("repro", help="run the bundled reproduction suite")
    s.add_argument("--tier", choices=("fast", "slow"), default="fast")
    return p


def _inputs(a) -> dict:
    d = {k: v for k, v in sorted(vars(a).items()) if k not in ("pretty", "no_timings")}
    g = d.get("germ")
    if g is not None:
        try:
            d["germ"] = format_germ(load_germ(g))
        except (UsageError, GermSyntaxError, ValueError):
            pass
    return d


def envelope(command: str, inputs: dict, result, citations, certified_degree, timings=None) -> dict:
    blob = json.dumps(inputs, sort_keys=True, default=str).encode()
    env = {"schema": SCHEMA, "command": command,
           "inputs_hash": hashlib.sha256(blob).hexdigest(),
           "result": result, "citations": list(citations),
           "certified_degree": certified_degree}
    if timings is not None:
        env["timings"] = timings
    return env


def dumps(env: dict) -> str:
    return json.dumps(env, sort_keys=True, indent=2, default=str)


def _pretty(env: dict, stream) -> None:
    res = env.get("result") or {}
    w = max([len(k) for k in res] + [7])
    print(f"{'command':<{w}}  {env['command']}", file=stream)
    for k in sorted(res):
        v = res[k]
        text = v if isinstance(v, str) else json.dumps(v, sort_keys=True, default=str)
        text = text.strip().replace("\n", " | ")
        if len(text) > 100:
            text = text[:97] + "..."
        print(f"{k:<{w}}  {text}", file=stream)


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        a = parser.parse_args(argv)
    except UsageError as exc:
        print(f"mapgerms: {exc}", file=sys.stderr)
        return EXIT_USAGE
    t0 = time.perf_counter()
    code = EXIT_OK
    try:
        ret = COMMANDS[a.command](a)
    except (UsageError, GermSyntaxError, PolySyntaxError) as exc:
        print(f"mapgerms: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except _Rejected as exc:
        print(dumps(exc.payload), file=sys.stderr)
        return EXIT_USAGE
    except BudgetExceeded as exc:
        print(f"mapgerms: budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (ValueError, U.NotKFinite) as exc:
        print(f"mapgerms: {exc}", file=sys.stderr)
        return EXIT_USAGE
    result, cites, cdeg = ret[:3]
    timings = {"total_seconds": round(time.perf_counter() - t0, 3)}
    if len(ret) > 3:
        timings["checks"] = ret[3]
    if a.command == "repro" and not result["all_ok"]:
        code = EXIT_MISMATCH
    env = envelope(a.command, _inputs(a), result, cites, cdeg, None if a.no_timings else timings)
    sys.stdout.write(dumps(env) + "\n")
    if a.pretty:
        _pretty(env, sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())

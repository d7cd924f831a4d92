"""Command line front end: ``typsep <family> <command> [flags]``.

Exit status is 0 when every check passes, 1 when a checked mathematical
claim fails and 2 for usage errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import binary, helly, lattice, orbits, torus
from .groups import abelianization_order, center, element_order, parse_group
from .lattice import enumerate_subgroups, popcount


class UsageError(Exception):
    pass


# -- rendering -------------------------------------------------------------------


def _fmt(v) -> str:
    if isinstance(v, (dict, list, tuple)):
        return json.dumps(v, sort_keys=True, separators=(",", ":"))
    if isinstance(v, bool):
        return "true" if v else "false"
    if v is None:
        return "null"
    return str(v)


def _render(obj, prefix: str, lines: list[str]):
    for key in sorted(obj):
        v = obj[key]
        name = prefix + str(key)
        if isinstance(v, dict) and v:
            _render(v, name + ".", lines)
        elif isinstance(v, list) and v and all(isinstance(x, dict) for x in v):
            for i, item in enumerate(v):
                body = " ".join(f"{k}={_fmt(item[k])}" for k in sorted(item))
                lines.append(f"{name}[{i}]: {body}")
        else:
            lines.append(f"{name}: {_fmt(v)}")


def report_render(report: dict, title: str = "report") -> str:
    """Plain text view of a report: keys sorted, nested dicts flattened with
    dots, one line per entry of a list of records (kept in list order)."""
    lines = [f"# {title}"]
    _render(report or {}, "", lines)
    return "\n".join(lines) + "\n"


def emit(args, report: dict, title: str):
    if args.json:
        sys.stdout.write(json.dumps(report, sort_keys=True, indent=2) + "\n")
    else:
        sys.stdout.write(report_render(report, title))


# -- input parsing ---------------------------------------------------------------


def _load_json(text: str, what: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"{what}: invalid JSON ({exc})") from None


def _form(data, what="form") -> binary.BinaryForm:
    if not isinstance(data, list) or not data:
        raise UsageError(f"{what}: expected a non-empty coefficient array")
    try:
        return binary.BinaryForm.of([str(c) for c in data])
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"{what}: {exc}") from None


def _group(args):
    if not args.group:
        raise UsageError("--group is required")
    try:
        return parse_group(args.group)
    except (ValueError, RuntimeError) as exc:
        raise UsageError(str(exc)) from None


def _need_seed(args):
    if args.seed is None:
        raise UsageError("this command is randomized; pass --seed")
    if not 0 <= args.seed < 2**64:
        raise UsageError("--seed must fit in an unsigned 64-bit integer")
    return args.seed


def _positive(name, v):
    if v is not None and v <= 0:
        raise UsageError(f"{name} must be positive")
    return v


# -- group / lattice ---------------------------------------------------------------


def cmd_group_info(args):
    g = _group(args)
    orders: dict[int, int] = {}
    for x in range(g.order):
        k = element_order(g, x)
        orders[k] = orders.get(k, 0) + 1
    return {
        "group": g.name,
        "order": g.order,
        "center_size": len(center(g)),
        "abelianization_order": abelianization_order(g),
        "element_orders": {str(k): orders[k] for k in sorted(orders)},
        "content_hash": g.content_hash(),
    }, True


def cmd_group_build(args):
    g = _group(args)
    try:
        g.check_axioms()
        ok = True
    except AssertionError:
        ok = False
    return {"group": g.name, "order": g.order, "labels": list(g.labels),
            "product": [list(r) for r in g.product], "axioms_ok": ok}, ok


def _lattice(args, g):
    return enumerate_subgroups(g, args.cache_dir)


def cmd_lattice_subgroups(args):
    g = _group(args)
    lat = _lattice(args, g)
    subs = [
        {"id": i, "size": popcount(b), "bits": format(b, "x")}
        for i, b in enumerate(lat.subgroups)
    ]
    return {"group": g.name, "count": len(lat), "subgroups": subs}, True


def cmd_lattice_lambda(args):
    g = _group(args)
    return {"group": g.name, "lambda": lattice.chain_length(_lattice(args, g))}, True


def cmd_lattice_mu(args):
    g = _group(args)
    lat = _lattice(args, g)
    m, fam = lattice.mu(lat, with_witness=True)
    return {
        "group": g.name,
        "mu": m,
        "family": [{"id": i, "size": lat.sizes[i]} for i in fam],
    }, True


# -- helly -----------------------------------------------------------------------


def cmd_helly_compute(args):
    g = _group(args)
    r = helly.group_report(g, _lattice(args, g))
    return r, r["bounds_ok"]


def cmd_helly_oracle(args):
    g = _group(args)
    lat = _lattice(args, g)
    exact, _ = helly.kappa_exact(g, lat)
    cap = args.cap or lattice.mu(lat) + 1
    oracle = helly.kappa_oracle(g, lat, cap)
    return {"group": g.name, "kappa": exact, "kappa_oracle": oracle, "cap": cap,
            "match": exact == oracle}, exact == oracle


def cmd_helly_witness(args):
    g = _group(args)
    kappa, w = helly.kappa_exact(g, _lattice(args, g))
    valid = w is None or w.is_valid()
    return {"group": g.name, "kappa": kappa, "witness": helly.witness_json(g, w),
            "valid": valid}, valid


def cmd_helly_verify(args):
    r = helly.verify_helly_bounds(cache_dir=args.cache_dir)
    return r, r["ok"]


# -- orbit -----------------------------------------------------------------------


def cmd_orbit_check(args):
    seed = _need_seed(args)
    g = _group(args)
    r = orbits.orbit_duality_check(g, args.trials or 1000, seed, _lattice(args, g),
                                   max_m=args.max_m)
    r["seed"] = seed
    return r, r["ok"]


def cmd_orbit_witness(args):
    g = _group(args)
    kappa, w = helly.kappa_exact(g, _lattice(args, g))
    if w is None:
        return {"group": g.name, "kappa": kappa, "verdicts": []}, True
    t = orbits.witness_instance(g, w)
    ds = [args.d] if args.d else [kappa - 1, kappa]
    verdicts = []
    for d in ds:
        if not 1 <= d <= t.m:
            raise UsageError(f"--d must lie in [1, {t.m}]")
        verdicts.append(orbits.dwise_implies_global(t, d).to_json(t))
    ok = all(
        (v["verdict"] == orbits.COUNTEREXAMPLE) == (v["d"] < kappa) for v in verdicts
    )
    return {"group": g.name, "kappa": kappa, "m": t.m, "points": t.action.points,
            "verdicts": verdicts}, ok


def cmd_orbit_reductive(args):
    seed = _need_seed(args)
    try:
        diag = [int(x) for x in args.diagonal.split(",")]
        a = orbits.diagonal_cyclic_action(args.order, args.field, diag)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    r = orbits.verify_reductive_bound(a, args.trials or 500, seed)
    return r, r["ok"]


# -- torus -----------------------------------------------------------------------


def _weights(data) -> torus.WeightMatrix:
    try:
        if "columns" in data:
            return torus.WeightMatrix.from_vector_weights(data["columns"], int(data["copies"]))
        return torus.WeightMatrix(
            tuple(tuple(r) for r in data["entries"]), tuple(tuple(c) for c in data["copies"])
        )
    except (KeyError, TypeError, ValueError, IndexError) as exc:
        raise UsageError(f"weights: {exc}") from None


def _point(data, w, what) -> torus.ExactPoint:
    if not isinstance(data, list) or len(data) != w.n_coords:
        raise UsageError(f"{what}: expected {w.n_coords} rational coordinates")
    try:
        return torus.ExactPoint(tuple(Fraction(str(c)) for c in data))
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"{what}: {exc}") from None


def cmd_torus_separate(args):
    if not (args.weights and args.v and args.v_prime):
        raise UsageError("--weights, --v and --v-prime are required")
    w = _weights(_load_json(args.weights, "weights"))
    v = _point(_load_json(args.v, "v"), w, "v")
    vp = _point(_load_json(args.v_prime, "v-prime"), w, "v-prime")
    support = None
    if args.support:
        support = sorted({int(s) - 1 for s in args.support.split(",")})
        if support[0] < 0 or support[-1] >= len(w.copies):
            raise UsageError("--support indices run from 1 to the number of copies")
    cap = args.degree_cap or 12
    m = torus.separates(w, v, vp, cap, support)
    out = {"degree_cap": cap, "separated": m is not None,
           "support": [i + 1 for i in support] if support is not None else list(range(1, len(w.copies) + 1))}
    if m is not None:
        out["separating_monomial"] = m.render(w)
        out["exponents"] = list(m.exponents)
    return out, True


def _sizes(args, default):
    return [args.n] if args.n else default


def cmd_torus_sharpness(args):
    rows = [torus.sharpness_check(n, args.degree_cap or 12) for n in _sizes(args, [3, 4, 5])]
    return {"checks": rows, "ok": all(r["ok"] for r in rows)}, all(r["ok"] for r in rows)


def cmd_torus_char2(args):
    rows = [torus.char2_variant(n, args.degree_cap or 12) for n in _sizes(args, [3, 4])]
    return {"checks": rows, "ok": all(r["ok"] for r in rows)}, all(r["ok"] for r in rows)


def cmd_torus_span(args):
    seed = _need_seed(args)
    n = args.n or 2
    w = torus.sharpness_weights(n)
    r = torus.span_data_respects_separation(w, args.trials or 100, seed, args.degree_cap or 6)
    return r, r["ok"]


# -- binary ----------------------------------------------------------------------


def cmd_binary_profile(args):
    if not args.form:
        raise UsageError("--form is required")
    v = _form(_load_json(args.form, "form"))
    if v.is_zero():
        raise UsageError("the zero form has no multiplicity profile")
    p = binary.multiplicity_profile(v)
    return {"form": str(v), "degree": v.degree, **p.to_json()}, True


def cmd_binary_classify(args):
    if not args.forms:
        raise UsageError("--forms is required")
    data = _load_json(args.forms, "forms")
    if not isinstance(data, list) or not data:
        raise UsageError("forms: expected a non-empty array of coefficient arrays")
    forms = [_form(f, f"forms[{i}]") for i, f in enumerate(data)]
    try:
        return binary.classify_report(forms), True
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def cmd_binary_limit(args):
    if not (args.form and args.l and args.m):
        raise UsageError("--form, --l and --m are required")
    v = _form(_load_json(args.form, "form"))
    l = _form(_load_json(args.l, "l"), "l")
    m = _form(_load_json(args.m, "m"), "m")
    try:
        lim = binary.limit_along_torus(v, l, m)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    out = lim.to_json()
    if lim.form is not None:
        out["form_text"] = str(lim.form)
    return out, True


COMMANDS = {
    "group": {"info": cmd_group_info, "build": cmd_group_build},
    "lattice": {"subgroups": cmd_lattice_subgroups, "lambda": cmd_lattice_lambda,
                "mu": cmd_lattice_mu},
    "helly": {"compute": cmd_helly_compute, "oracle": cmd_helly_oracle,
              "witness": cmd_helly_witness, "verify-bounds": cmd_helly_verify},
    "orbit": {"check": cmd_orbit_check, "witness-instance": cmd_orbit_witness,
              "verify-reductive": cmd_orbit_reductive},
    "torus": {"separate": cmd_torus_separate, "sharpness": cmd_torus_sharpness,
              "char2": cmd_torus_char2, "span": cmd_torus_span},
    "binary": {"profile": cmd_binary_profile, "classify": cmd_binary_classify,
               "limit": cmd_binary_limit},
}


# older spelling kept for scripts that call it
ALIASES = {"verify-bounds": ["verify-paper"]}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit JSON instead of text")
    common.add_argument("--group", help="cyclic:n, dicyclic:n, binary:{tet,oct,ico}, klein4, ...")
    common.add_argument("--cache-dir", help="subgroup lattice cache for groups of order >= 48")
    common.add_argument("--seed", type=int, help="seed for randomized commands (required there)")
    common.add_argument("--degree-cap", type=int)
    common.add_argument("--trials", type=int)
    common.add_argument("--cap", type=int, help="family size cap for the Helly oracle")
    common.add_argument("--max-m", type=int, default=6, help="longest random tuple")
    common.add_argument("--d", type=int, help="projection size for witness verdicts")
    common.add_argument("--order", type=int, default=3, help="cyclic group order (verify-reductive)")
    common.add_argument("--field", type=int, default=7, help="field size (verify-reductive)")
    common.add_argument("--diagonal", default="2,4", help="generator diagonal (verify-reductive)")
    common.add_argument("--n", type=int, help="size of the torus example")
    common.add_argument("--weights", help='JSON {"entries": [[...]], "copies": [[...]]} or {"columns": [[...]], "copies": k}')
    common.add_argument("--v", help="JSON list of rational coordinates")
    common.add_argument("--v-prime", help="JSON list of rational coordinates")
    common.add_argument("--support", help="comma separated vector variables (1-based)")
    common.add_argument("--form", help='JSON coefficients c_0..c_d of x^i y^(d-i), e.g. ["0","0","1"]')
    common.add_argument("--forms", help="JSON array of coefficient arrays")
    common.add_argument("--l", help="linear form as JSON [c_0, c_1] (c_0 y + c_1 x)")
    common.add_argument("--m", help="linear form as JSON [c_0, c_1]")

    p = argparse.ArgumentParser(prog="typsep", description=__doc__.splitlines()[0])
    fams = p.add_subparsers(dest="family", required=True)
    for fam, cmds in COMMANDS.items():
        fp = fams.add_parser(fam)
        sub = fp.add_subparsers(dest="command", required=True)
        for name in cmds:
            sp = sub.add_parser(name, parents=[common], aliases=ALIASES.get(name, []))
            sp.set_defaults(handler=cmds[name])
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        for name in ("degree_cap", "trials", "cap", "max_m", "d", "n", "order", "field"):
            _positive("--" + name.replace("_", "-"), getattr(args, name))
        report, ok = args.handler(args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        sys.stderr.write(f"typsep: error: {exc}\n")
        return 2
    emit(args, report, f"{args.family} {args.command}")
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())

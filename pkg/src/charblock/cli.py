"""Command-line front end: ``charblock <command> ...``."""

import argparse
import json
import sys
from importlib import resources
from pathlib import Path

from . import blocks as bl
from . import charops, chartab, fpg
from .classalg import TableInconsistent, structure_constants, structure_constants_from_table
from .cyclo import format_cyclo, parse_cyclo
from .io import TableFileError, decomposition_to_dict, dumps, parse_table_file, table_to_dict
from ._nt import is_prime
from .permgrp import GroupTooLarge, Perm, closure, conjugacy_data, read_group_file, subgroup_from_elements

EXIT_OK, EXIT_USAGE, EXIT_VERIFY = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n")
        sys.exit(EXIT_USAGE)


# -- loading -------------------------------------------------------------------


def _data_path(kind, name, suffix):
    base = resources.files("charblock") / "data" / kind
    cand = base / (name + suffix)
    return cand if cand.is_file() else None


def load_group(arg):
    """A group file path, or the name of a bundled group (e.g. ``a5``)."""
    p = Path(arg)
    if not p.exists():
        bundled = _data_path("groups", arg, ".grp")
        if bundled is None:
            raise UsageError(f"cannot read group file {arg}")
        p = bundled
    try:
        return read_group_file(p, name=Path(str(arg)).stem)
    except OSError as exc:
        raise UsageError(f"cannot read group file {arg}: {exc.strerror}") from None
    except ValueError as exc:
        raise UsageError(f"bad group file {arg}: {exc}") from None


def load_subgroup(G, arg):
    H = load_group(arg)
    for g in H.generators:
        if Perm(g) not in G.index:
            raise UsageError(f"{g} is not an element of {G.name}")
    return subgroup_from_elements(G, H.elements, name=H.name)


def load_table(arg):
    p = Path(arg)
    if not p.exists():
        bundled = _data_path("tables", arg, ".json")
        if bundled is not None:
            p = bundled
    try:
        return parse_table_file(p)
    except TableFileError as exc:
        raise UsageError(str(exc)) from None


def load_brauer(arg):
    p = Path(arg)
    if not p.exists():
        bundled = _data_path("brauer", arg, ".json")
        if bundled is not None:
            p = bundled
    try:
        BT = parse_table_file(p)
    except TableFileError as exc:
        raise UsageError(str(exc)) from None
    if not isinstance(BT, bl.BrauerTable):
        raise UsageError(f"{arg} is not a Brauer table")
    return BT


def _gens(text, degree):
    try:
        return [Perm.from_cycles(part, degree) for part in text.split(";") if part.strip()]
    except ValueError as exc:
        raise UsageError(f"bad generators {text!r}: {exc}") from None


# -- text rendering ---------------------------------------------------------------


def _grid(header, rows):
    widths = [max(len(str(r[i])) for r in [header] + rows) for i in range(len(header))]
    line = lambda r: "  ".join(str(x).rjust(w) for x, w in zip(r, widths))
    out = [line(header), "-" * len(line(header))]
    out += [line(r) for r in rows]
    return "\n".join(out)


def render_table(T):
    def val(v):
        s = format_cyclo(v)
        return "." if s == "0" else s

    header = ["K"] + T.class_names
    rows = [["|K|"] + T.class_sizes, ["|C(x)|"] + T.centralizers]
    rows += [[f"X.{i + 1}"] + [val(v) for v in row] for i, row in enumerate(T.irr)]
    return f"{T.name}  |G| = {T.order}\n" + _grid(header, rows)


def _emit(args, payload, text):
    if args.format == "json":
        print(json.dumps(payload, indent=1, ensure_ascii=False))
    else:
        print(text)


# -- commands ---------------------------------------------------------------------


def cmd_classes(args):
    G = load_group(args.group)
    cc = conjugacy_data(G)
    data = [{"name": cc.names[k], "size": cc.sizes[k], "centralizer": cc.centralizer_orders[k],
             "order": cc.rep_orders[k], "rep": str(cc.reps[k])} for k in range(len(cc))]
    text = _grid(["class", "size", "|C(x)|", "order", "rep"],
                 [[d["name"], d["size"], d["centralizer"], d["order"], d["rep"]] for d in data])
    _emit(args, {"group": G.name, "order": G.order, "classes": data},
          f"{G.name}  |G| = {G.order}\n{text}")
    return EXIT_OK


def cmd_chartab(args):
    G = load_group(args.group)
    T, _ = chartab.table_from_group(G, name=G.name, seed=args.seed)
    if args.output:
        Path(args.output).write_text(dumps(T), encoding="utf-8")
    if args.format == "json":
        sys.stdout.write(dumps(T))
    else:
        print(render_table(T))
    return EXIT_OK


def _verify_table(T):
    problems = []
    if sum(d * d for d in T.degrees) != T.order:
        problems.append("sum of squared degrees differs from |G|")
    if any(v != 1 for v in T.irr[0]):
        problems.append("first row is not the principal character")
    rep = chartab.verify_orthogonality(T)
    problems += rep.failures
    if rep.ok:
        try:
            chartab.central_characters(T)
            structure_constants_from_table(T)
        except (chartab.TableInvalid, TableInconsistent) as exc:
            problems.append(str(exc))
    return problems


def cmd_verify(args):
    T = load_table(args.table)
    if isinstance(T, bl.BrauerTable):
        raise UsageError("verify expects an ordinary character table")
    problems = _verify_table(T)
    _emit(args, {"table": T.name, "ok": not problems, "failures": problems},
          "\n".join([f"{T.name}: " + ("ok" if not problems else "FAILED")] + problems))
    return EXIT_OK if not problems else EXIT_VERIFY


def _block_payload(T, bp):
    out = []
    for b in bp:
        d = {"irr": list(b.irr), "defect": b.defect,
             "heights": [b.heights[i] for i in b.irr],
             "lambda": [x.to_json() for x in b.lam], "principal": b.is_principal}
        if b.ibr is not None:
            d["ibr"] = list(b.ibr)
        if b.a is not None:
            d["a"] = [x.to_json() for x in b.a]
            d["defect_classes"] = [T.class_names[k] for k in b.defect_classes]
            d["defect_group"] = [str(g) for g in b.defect_group]
            d["defect_group_order"] = b.defect_group_order
        out.append(d)
    return out


def cmd_blocks(args):
    T = load_table(args.table)
    p = args.p
    bp = bl.block_partition(T, p)
    bl.defects_and_heights(bp, T, p)
    status = EXIT_OK
    if args.group:
        G = load_group(args.group)
        Tg, cc = chartab.table_from_group(G, seed=args.seed)
        if chartab.tables_equivalent(T, Tg) is None:
            raise UsageError("the group does not match the table")
        bpg = bl.block_partition(Tg, p, bp.star)
        bl.block_local_data(bpg, Tg, cc, G, p)
        bp = bpg
        T = Tg
    if args.brauer:
        BT = load_brauer(args.brauer)
        try:
            data = bl.decomposition_and_cartan(T, BT, bp)
        except (bl.IncompatibleBrauerTable, bl.BlockError) as exc:
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_VERIFY
        if not data.det_ok:
            status = EXIT_VERIFY
    payload = {"table": T.name, "prime": p, "star": bp.star.descriptor(), "blocks": _block_payload(T, bp)}
    lines = [f"{T.name}, p = {p}: {len(bp)} block(s)"]
    for k, b in enumerate(bp):
        chars = ", ".join(f"X.{i + 1}" for i in b.irr)
        lam = "(" + ", ".join(str(x) for x in b.lam) + ")"
        lines.append(f"B{k + 1}: {{{chars}}}  defect {b.defect}  lambda {lam}")
        if b.ibr is not None:
            lines.append(f"    IBr: {', '.join(f'phi{j + 1}' for j in b.ibr)}")
        if b.a is not None:
            lines.append(f"    defect classes {[T.class_names[c] for c in b.defect_classes]}, "
                         f"defect group order {b.defect_group_order}")
    _emit(args, payload, "\n".join(lines))
    return status


def cmd_decompose(args):
    T = load_table(args.table)
    BT = load_brauer(args.brauer)
    p = BT.prime
    bp = bl.block_partition(T, p)
    bl.defects_and_heights(bp, T, p)
    try:
        data = bl.decomposition_and_cartan(T, BT, bp)
    except (bl.IncompatibleBrauerTable, bl.BlockError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VERIFY
    payload = decomposition_to_dict(bp, data)
    pim = bl.principal_indecomposables(data, T, BT)
    payload["det_C"] = data.det_C
    payload["det_expected"] = data.det_expected
    payload["principal_indecomposables_ok"] = pim["ok"]
    text = [f"{T.name}, p = {p}", "D ="]
    text += ["  " + " ".join(str(x) if x else "." for x in row) for row in data.D]
    text += ["C ="] + ["  " + " ".join(str(x) if x else "." for x in row) for row in data.C]
    text.append(f"det C = {data.det_C} (expected {data.det_expected})")
    _emit(args, payload, "\n".join(text))
    return EXIT_OK if data.det_ok and pim["ok"] else EXIT_VERIFY


def cmd_induce(args):
    G = load_group(args.group)
    H = load_subgroup(G, args.subgroup)
    T, cc = chartab.table_from_group(G, seed=args.seed)
    HT, Hcc = chartab.table_from_group(H, seed=args.seed)
    try:
        raw = json.loads(Path(args.charfile).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read {args.charfile}: {exc}") from None
    vals = raw["values"] if isinstance(raw, dict) else raw
    if len(vals) != HT.nclasses:
        raise UsageError(f"expected {HT.nclasses} values on the classes {HT.class_names}")
    phi = charops.ClassFunction(HT, [parse_cyclo(str(v)) for v in vals])
    fusion = charops.FusionMap.from_subgroup(cc, Hcc, T, HT)
    ind = charops.induce(phi, fusion)
    dec = charops.decompose(ind)
    payload = {"classes": T.class_names, "values": [format_cyclo(v) for v in ind],
               "decomposition": [format_cyclo(c) for c in dec.coefficients],
               "is_character": dec.is_character, "is_generalized": dec.is_generalized}
    text = (_grid(["K"] + T.class_names, [["ind"] + payload["values"]])
            + "\ncoefficients on Irr: " + ", ".join(payload["decomposition"]))
    _emit(args, payload, text)
    return EXIT_OK


def cmd_induced_block(args):
    G = load_group(args.group)
    H = load_subgroup(G, args.subgroup)
    p = args.p
    T, cc = chartab.table_from_group(G, seed=args.seed)
    HT, Hcc = chartab.table_from_group(H, seed=args.seed)
    star = bl.default_star(T, p)
    bp = bl.block_partition(T, p, star)
    hp = bl.block_partition(HT, p, star)
    fusion = charops.FusionMap.from_subgroup(cc, Hcc, T, HT)
    results = []
    lines = [f"{G.name} <- {H.name}, p = {p}"]
    for b in range(len(hp)):
        r = bl.induced_block(T, bp, HT, hp, fusion, b, p)
        vals = [x.to_json() for x in r.values]
        results.append({"block": b, "defined": r.defined,
                        "image": r.block if r.defined else None,
                        "principal": r.defined and bp[r.block].is_principal,
                        "values": vals, "reason": r.reason})
        target = f"B{r.block + 1}" if r.defined else f"undefined ({r.reason})"
        lines.append(f"b{b + 1} {{{', '.join(f'X.{i + 1}' for i in hp[b].irr)}}}: "
                     f"lambda^G = ({', '.join(str(x) for x in r.values)}) -> {target}")
    _emit(args, {"blocks": results}, "\n".join(lines))
    return EXIT_OK


def cmd_brauer_hom(args):
    G = load_group(args.group)
    P = load_subgroup(G, args.psubgroup)
    n = P.order
    primes = [q for q in range(2, n + 1) if n % q == 0 and all(q % r for r in range(2, q))]
    if len(primes) != 1:
        raise UsageError("the given subgroup is not a nontrivial p-group")
    p = args.p or primes[0]
    if p != primes[0]:
        raise UsageError(f"subgroup order {n} is not a power of {p}")
    cc = conjugacy_data(G)
    rows = []
    N = Ncc = None
    for K in range(len(cc)):
        N, Ncc, im = bl.brauer_homomorphism(G, cc, P.generators, {K: 1}, p)
        rows.append({"class": cc.names[K], "image": {Ncc.names[L]: c for L, c in enumerate(im) if c}})
    mult = bl.brauer_hom_multiplicative(G, cc, structure_constants(G, cc), P.generators, p)
    text = [f"beta_P: Z(F{G.name}) -> Z(F N), |N| = {N.order}, p = {p}"]
    for r in rows:
        img = " + ".join(f"{c}*{name}" if c != 1 else name for name, c in r["image"].items()) or "0"
        text.append(f"  {r['class']} -> {img}")
    text.append(f"multiplicative: {mult}")
    _emit(args, {"normalizer_order": N.order, "images": rows, "multiplicative": mult}, "\n".join(text))
    return EXIT_OK if mult else EXIT_VERIFY


def cmd_robinson(args):
    G = load_group(args.group)
    gens = _gens(args.D, G.degree)
    for g in gens:
        if g not in G.index:
            raise UsageError(f"{g} is not an element of {G.name}")
    Delems = closure(gens, G.degree) if gens else [G.identity]
    cc = conjugacy_data(G)
    try:
        res = bl.robinson_block_count(G, cc, args.p, Delems)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    payload = {"count": res["count"], "matrix": res["matrix"],
               "classes": [cc.names[k] for k in res["classes"]]}
    _emit(args, payload, f"A(D) over {payload['classes']}: {res['matrix']}\n"
                         f"blocks with defect group D: {res['count']}")
    return EXIT_OK


def cmd_frobenius_kernel(args):
    G = load_group(args.group)
    H = load_subgroup(G, args.subgroup)
    try:
        res = charops.frobenius_kernel(G, H.elements, seed=args.seed)
    except charops.NotFrobenius as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VERIFY
    payload = {"classes": res["names"], "order": res["order"], "partition_ok": res["partition_ok"]}
    _emit(args, payload, f"Frobenius kernel: {{{', '.join(res['names'])}}}, order {res['order']}")
    return EXIT_OK if res["partition_ok"] else EXIT_VERIFY


def cmd_oracle(args):
    G = load_group(args.group)
    p = args.p
    T, cc = chartab.table_from_group(G, seed=args.seed)
    bp = bl.block_partition(T, p)
    bl.block_local_data(bp, T, cc, G, p)
    rep = fpg.verify_block_idempotents(G, cc, bp, p)
    rad = fpg.center_radical(G, cc, p, len(bp))
    ok = rep["ok"] and rad.get("matches_blocks", True) and rad["center_ok"]
    payload = {"blocks": len(bp), "idempotents": rep, "radical": rad, "ok": ok}
    lines = [f"{G.name}, p = {p}: {len(bp)} block(s)"]
    for r in rep["blocks"]:
        flags = ", ".join(f"{k}={v}" for k, v in r.items() if k != "block")
        lines.append(f"  B{r['block'] + 1}: {flags}")
    lines += rep["failures"]
    lines.append(f"  dim Z = {rad['dim_center']}, dim J(Z) = {rad['dim_radical']}, "
                 f"nilpotency index {rad['nilpotency_index']}")
    _emit(args, payload, "\n".join(lines))
    return EXIT_OK if ok else EXIT_VERIFY


def cmd_report(args):
    T = load_table(args.table)
    problems = _verify_table(T)
    if problems:
        print("\n".join(problems), file=sys.stderr)
        return EXIT_VERIFY
    s = chartab.structure_report(T)
    kappa = chartab.commutator_counts(T)
    det, det_ok = chartab.table_determinant(T)
    payload = dict(s)
    payload.update({"commutator_counts": kappa, "determinant": format_cyclo(det), "determinant_ok": det_ok})
    names = T.class_names
    text = [
        f"{T.name}  |G| = {T.order}",
        f"normal subgroups: " + "; ".join(f"{{{','.join(n['names'])}}} ({n['order']})"
                                           for n in s["normal_subgroups"]),
        f"G' = {{{','.join(names[k] for k in s['derived_subgroup'])}}} (order {s['derived_order']})",
        f"Z(G) = {{{','.join(names[k] for k in s['centre'])}}} (order {s['centre_order']})",
        f"|lin(G)| = {s['linear_characters']}, solvable = {s['solvable']}, nilpotent = {s['nilpotent']}",
        f"commutator counts: {kappa}",
        f"det = {format_cyclo(det)} (consistent: {det_ok})",
    ]
    _emit(args, payload, "\n".join(text))
    return EXIT_OK if det_ok else EXIT_VERIFY


# -- parser -----------------------------------------------------------------------


def build_parser():
    # the options are accepted before or after the subcommand; subcommand
    # copies default to SUPPRESS so they never clobber a top-level value
    def options(fmt, seed):
        c = argparse.ArgumentParser(add_help=False)
        c.add_argument("--format", choices=["text", "json"], default=fmt)
        c.add_argument("--seed", type=int, default=seed, help="seed for randomized internals")
        return c

    common = options(argparse.SUPPRESS, argparse.SUPPRESS)
    ap = _Parser(prog="charblock", description="Character tables and p-blocks of finite groups.",
                 parents=[options("text", 0)])
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, func, help_):
        sp = sub.add_parser(name, help=help_, parents=[common])
        sp.set_defaults(func=func)
        return sp

    add("classes", cmd_classes, "conjugacy classes of a permutation group").add_argument("group")
    sp = add("chartab", cmd_chartab, "compute the character table")
    sp.add_argument("group")
    sp.add_argument("-o", "--output", help="also write the table file")
    add("verify", cmd_verify, "verify a character table file").add_argument("table")
    sp = add("blocks", cmd_blocks, "p-blocks of a character table")
    sp.add_argument("table")
    sp.add_argument("-p", type=int, required=True)
    sp.add_argument("--group", help="group file, for defect classes and defect groups")
    sp.add_argument("--brauer", help="Brauer table file, to attach IBr to blocks")
    sp = add("decompose", cmd_decompose, "decomposition and Cartan matrices")
    sp.add_argument("table")
    sp.add_argument("brauer")
    sp = add("induce", cmd_induce, "induce a class function from a subgroup")
    sp.add_argument("group")
    sp.add_argument("subgroup")
    sp.add_argument("charfile", help='JSON list of values (or {"values": [...]}) on the subgroup classes')
    sp = add("induced-block", cmd_induced_block, "induced blocks from a subgroup")
    sp.add_argument("group")
    sp.add_argument("subgroup")
    sp.add_argument("-p", type=int, required=True)
    sp = add("brauer-hom", cmd_brauer_hom, "Brauer homomorphism for a p-subgroup")
    sp.add_argument("group")
    sp.add_argument("psubgroup")
    sp.add_argument("-p", type=int)
    sp = add("robinson", cmd_robinson, "count blocks with a normal defect group")
    sp.add_argument("group")
    sp.add_argument("-p", type=int, required=True)
    sp.add_argument("-D", required=True, help="generators of D in cycle notation, separated by ';'")
    sp = add("frobenius-kernel", cmd_frobenius_kernel, "kernel of a Frobenius group")
    sp.add_argument("group")
    sp.add_argument("subgroup")
    sp = add("oracle", cmd_oracle, "check block idempotents in the group algebra")
    sp.add_argument("group")
    sp.add_argument("-p", type=int, required=True)
    add("report", cmd_report, "table-derived group structure").add_argument("table")
    return ap


def main(argv=None):
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:  # --help, or a usage error already reported
        return exc.code
    try:
        if getattr(args, "p", None) is not None:
            if not is_prime(args.p):
                raise UsageError(f"{args.p} is not a prime")
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except GroupTooLarge as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def run():
    sys.exit(main())


if __name__ == "__main__":
    run()

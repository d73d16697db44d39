"""Command-line front end.

Subcommands: report (per-group invariants and the automorphism
presentation), table (the full classification table), delta (the local
invariant calculator), rootdata (root-system dump).  Output formats are
text, json, and latex; identical flags always produce byte-identical
output.  Exit codes: 0 success, 1 usage or parse error, 2 mathematical
inconsistency in the input (e.g. a parity violation in a delta profile).
"""

from __future__ import annotations

import argparse
import json
import os
import re
import sys
from dataclasses import asdict, dataclass

from . import groupclass, moduli, weyl
from .groupclass import GroupForm, InvalidDegree
from .moduli import GenusOutOfRange, InconsistentProfile
from .rootdata import DynkinType, InvalidType, build_root_datum

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_INCONSISTENT = 2


class UsageError(ValueError):
    pass


# ---------------------------------------------------------------------------
# group-spec grammar


_ALIASES = [
    (re.compile(r"^spin(\d+)$"), "spin"),
    (re.compile(r"^semispin(\d+)$"), "semispin"),
    (re.compile(r"^pso(\d+)$"), "pso"),
    (re.compile(r"^so(\d+)$"), "so"),
    (re.compile(r"^psl(\d+)$"), "psl"),
    (re.compile(r"^sl(\d+)/?mu(\d+)$"), "slmu"),
    (re.compile(r"^sl(\d+)$"), "sl"),
    (re.compile(r"^psp(\d+)$"), "psp"),
    (re.compile(r"^sp(\d+)$"), "sp"),
    (re.compile(r"^(e6|e7)(sc|ad|adjoint)$"), "exc"),
    (re.compile(r"^(e8|f4|g2)$"), "unique"),
]


def _alias_form(kind: str, match) -> tuple[DynkinType, str]:
    if kind in ("spin", "so", "pso", "semispin"):
        m = int(match.group(1))
        if m % 2:
            if kind == "spin":
                return DynkinType("B", (m - 1) // 2), "sc"
            if kind == "so":
                return DynkinType("B", (m - 1) // 2), "adjoint"
            raise UsageError(f"no group {kind}_{m}: odd dimension")
        n = m // 2
        form = {"spin": "sc", "so": "so", "pso": "adjoint", "semispin": "semispin"}[kind]
        return DynkinType("D", n), form
    if kind in ("sl", "psl", "slmu"):
        m = int(match.group(1))
        if m < 2:
            raise UsageError(f"SL_{m} is not almost-simple")
        t = DynkinType("A", m - 1)
        if kind == "sl":
            return t, "sc"
        if kind == "psl":
            return t, "adjoint"
        r = int(match.group(2))
        if m % r:
            raise UsageError(f"mu_{r} is not a subgroup of the center of SL_{m}")
        return t, f"mu{r}"
    if kind in ("sp", "psp"):
        m = int(match.group(1))
        if m % 2:
            raise UsageError(f"no symplectic group in odd dimension {m}")
        return DynkinType("C", m // 2), "sc" if kind == "sp" else "adjoint"
    if kind == "exc":
        t = DynkinType("E", int(match.group(1)[1]))
        return t, "sc" if match.group(2) == "sc" else "adjoint"
    t = DynkinType.parse(match.group(1))
    return t, "sc"


def parse_group_spec(spec: str) -> GroupForm:
    """`<TYPE><rank>:<form>` with form in {sc, adjoint, so, semispin, mu<k>},
    or an alias such as Spin8, PSL4, Sp6, SO10, SemiSpin12, E6_sc."""
    text = spec.strip().lower().replace("_", "").replace(" ", "")
    for pattern, kind in _ALIASES:
        m = pattern.match(text)
        if m:
            try:
                t, form = _alias_form(kind, m)
            except InvalidType as exc:
                raise UsageError(f"group spec {spec!r}: {exc}") from exc
            return _resolve_form(spec, t, form)
    m = re.match(r"^([a-g])(\d+)(?::(.+))?$", text)
    if not m:
        raise UsageError(f"cannot parse group spec {spec!r}")
    try:
        t = DynkinType(m.group(1).upper(), int(m.group(2)))
    except InvalidType as exc:
        raise UsageError(f"group spec {spec!r}: {exc}") from exc
    form = m.group(3) or "sc"
    if form == "ad":
        form = "adjoint"
    return _resolve_form(spec, t, form)


def _resolve_form(spec: str, t: DynkinType, form: str) -> GroupForm:
    valid = {"sc", "adjoint", "so", "semispin"}
    if not (form in valid or re.fullmatch(r"mu\d+", form)):
        raise UsageError(f"group spec {spec!r}: unknown form token {form!r}")
    try:
        return groupclass.form_by_name(t, form)
    except (ValueError, StopIteration) as exc:
        names = ", ".join(f.display_name for f in groupclass.enumerate_forms(t))
        raise UsageError(
            f"group spec {spec!r}: {exc} (forms of {t.label}: {names})") from exc


def parse_delta(text: str | None, gf: GroupForm) -> tuple[int, ...]:
    pi1 = groupclass.fundamental_group(gf)
    if text is None:
        return pi1.zero()
    parts = [p for p in text.strip().strip("()").split(",") if p != ""]
    try:
        coords = tuple(int(p) for p in parts)
    except ValueError as exc:
        raise UsageError(f"cannot parse delta {text!r}: {exc}") from exc
    if pi1.is_trivial and coords in ((), (0,)):
        return ()
    try:
        return groupclass.validate_delta(gf, coords)
    except InvalidDegree as exc:
        valid = ", ".join(str(x) for x in pi1.elements())
        raise UsageError(f"{exc}; valid values: {valid}") from exc


# ---------------------------------------------------------------------------
# report document


@dataclass
class ReportDocument:
    schema: str
    group: dict
    genus: int
    delta: list
    delta_class: str | None
    presentation: str | None
    actions: dict
    hitchin: dict
    provenance: dict
    warnings: list

    def to_dict(self) -> dict:
        return asdict(self)

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), ensure_ascii=False, indent=2, sort_keys=True)

    @classmethod
    def from_dict(cls, d: dict) -> "ReportDocument":
        return cls(**d)

    @classmethod
    def from_json(cls, text: str) -> "ReportDocument":
        return cls.from_dict(json.loads(text))


_PROVENANCE = {
    "center_chars": "annihilator of mu inside the lattice quotient P/Q",
    "pi1": "coweight-lattice quotient in Smith normal form",
    "out": "Cartan-preserving node permutations acting on lattice classes",
    "presentation": "semidirect assembly from the stabilizer of the component label",
    "weights": "cyclotomic factorization of the Coxeter characteristic polynomial",
    "dim_basis": "Riemann-Roch sum cross-checked against dim G (g-1)",
    "m_ab_components": "orbit count on roots",
    "n_extra_components": "orbit count on unordered pairs of distinct hyperplanes",
}


def build_report(gf: GroupForm, delta, genus: int) -> ReportDocument:
    if genus < 2:
        raise UsageError(f"genus must be at least 2, got {genus}")
    warnings = []
    presentation = None
    delta_class = None
    actions = {}
    if genus >= moduli.MIN_GENUS_PRESENTATION:
        pres = moduli.aut_presentation(gf, delta, genus)
        presentation = pres.render()
        actions = pres.action_descriptions()
        cls = next(c for c in moduli.delta_classes(gf) if tuple(delta) in c)
        delta_class = moduli.delta_class_label(gf, cls)
    else:
        warnings.append(
            "presentation requires genus >= 4; emitting Hitchin numerology only")
    hr = moduli.hitchin_report(gf, genus)
    return ReportDocument(
        schema="bundleaut.report/1",
        group={
            "family": gf.dynkin.label,
            "rank": gf.dynkin.rank,
            "name": gf.display_name,
            "isogeny_kernel_order": len(gf.mu.elements),
            "center_chars": groupclass.center_char_group(gf).symbol(),
            "pi1": groupclass.fundamental_group(gf).symbol(),
            "out": groupclass.out_group(gf).symbol(),
        },
        genus=genus,
        delta=list(delta),
        delta_class=delta_class,
        presentation=presentation,
        actions=actions,
        hitchin=hr.as_dict(),
        provenance=dict(_PROVENANCE),
        warnings=warnings,
    )


def _styled(text: str, colored: bool) -> str:
    return f"\x1b[1m{text}\x1b[0m" if colored else text


def render_report_text(doc: ReportDocument, colored: bool) -> str:
    g = doc.group
    lines = [
        _styled(f"{g['name']}  (type {g['family']})", colored),
        f"  Hom(Z(G), G_m) = {g['center_chars']}",
        f"  pi_1(G)        = {g['pi1']}",
        f"  Out(G)         = {g['out']}",
    ]
    for w in doc.warnings:
        lines.append(f"  warning: {w}")
    if doc.presentation is not None:
        if len(doc.delta) == 0:
            delta = "0"
        elif len(doc.delta) == 1:
            delta = str(doc.delta[0])
        else:
            delta = "(" + ",".join(str(d) for d in doc.delta) + ")"
        lines.append(_styled(f"component delta = {delta}   [{doc.delta_class}]", colored))
        lines.append(f"  Aut = {doc.presentation}   (genus {doc.genus})")
        for name, desc in sorted(doc.actions.items()):
            lines.append(f"  action of {name}: {desc}")
    h = doc.hitchin
    lines.append(_styled(f"Hitchin base (genus {doc.genus})", colored))
    lines.append(
        f"  dim G = {h['dim_group']}, weights = {h['weights']}, "
        f"h = {h['coxeter_number']}")
    lines.append(
        f"  dim basis = {h['dim_basis']} = dim G (g-1), "
        f"fiber dim = {h['fiber_dim']}, Higgs stack dim = {h['higgs_stack_dim']}")
    lines.append(
        f"  discriminant components: m = {h['m_ab_components']}, "
        f"extra (pairs) = {h['n_extra_components']}")
    return "\n".join(lines)


_LATEX_MAP = [
    ("\u22ca", r" \rtimes "),
    ("\u00d7", r" \times "),
    ("\u03b4", r"\delta"),
    ("\u2208", r"\in"),
    ("\u2260", r"\neq"),
    ("Pic(C)", r"\mathrm{Pic}(C)"),
    ("Aut(C)", r"\operatorname{Aut}(C)"),
    ("{0}", r"\{0\}"),
]


def _latexify(text: str) -> str:
    text = re.sub(r"Z/(\d+)Z", r"\\mathbb{Z}/\1\\mathbb{Z}", text)
    for src, dst in _LATEX_MAP:
        text = text.replace(src, dst)
    return re.sub(r"\s+", " ", text).strip()


def render_report_latex(doc: ReportDocument) -> str:
    rows = [
        ("group", doc.group["name"].replace("_", r"\_")),
        (r"$\operatorname{Hom}(\mathscr{Z}(G),\mathbb{G}_m)$",
         f"${_latexify(doc.group['center_chars'])}$"),
        (r"$\pi_1(G)$", f"${_latexify(doc.group['pi1'])}$"),
        (r"$\operatorname{Out}(G)$", f"${_latexify(doc.group['out'])}$"),
    ]
    if doc.presentation is not None:
        rows.append((r"$\operatorname{Aut}$", f"${_latexify(doc.presentation)}$"))
    body = "\n".join(f"{k} & {v} \\\\" for k, v in rows)
    return "\\begin{tabular}{ll}\n" + body + "\n\\end{tabular}"


# ---------------------------------------------------------------------------
# subcommands


def cmd_report(args) -> int:
    gf = parse_group_spec(args.group)
    delta = parse_delta(args.delta, gf)
    doc = build_report(gf, delta, args.genus)
    if args.format == "json":
        print(doc.to_json())
    elif args.format == "latex":
        print(render_report_latex(doc))
    else:
        print(render_report_text(doc, _color_enabled()))
    return EXIT_OK


def table_lines(rows) -> list[str]:
    return [f"{r.family} | {r.group} | {r.delta_class} | {r.presentation}"
            for r in rows]


def render_table_latex(rows) -> str:
    lines = []
    for r in rows:
        family = r.family.replace("_", "_{") + "}" if "_" in r.family else r.family
        group = r.group.replace("_", r"\_")
        lines.append(
            f"${family}$ & {group} & ${_latexify(r.delta_class)}$ & "
            f"${_latexify(r.presentation)}$ \\\\")
    return "\n".join(lines)


def cmd_table(args) -> int:
    rows = moduli.classification_table(args.genus, args.max_rank)
    if args.format == "json":
        doc = {
            "schema": "bundleaut.table/1",
            "genus": args.genus,
            "max_rank": args.max_rank,
            "rows": [r.as_dict() for r in rows],
        }
        print(json.dumps(doc, ensure_ascii=False, indent=2, sort_keys=True))
    elif args.format == "latex":
        print(render_table_latex(rows))
    else:
        print("\n".join(table_lines(rows)))
    return EXIT_OK


_PROFILE_RE = re.compile(r"^(\d+):(\d+)$")


def parse_profile(text: str) -> list[tuple[int, int]]:
    points = []
    for token in text.split(","):
        token = token.strip()
        m = _PROFILE_RE.match(token)
        if not m:
            raise UsageError(
                f"profile entry {token!r} does not match <deg>:<drop>")
        points.append((int(m.group(1)), int(m.group(2))))
    return points


def cmd_delta(args) -> int:
    points = parse_profile(args.profile)
    locals_ = [moduli.delta_local(p) for p in points]
    total = sum(locals_)
    if args.format == "json":
        doc = {
            "schema": "bundleaut.delta/1",
            "points": [
                {"deg": d, "drop": s, "delta": v}
                for (d, s), v in zip(points, locals_)
            ],
            "total": total,
        }
        print(json.dumps(doc, ensure_ascii=False, indent=2, sort_keys=True))
    else:
        for (d, s), v in zip(points, locals_):
            print(f"deg = {d}, stabilizer rank drop = {s}  ->  delta_p = {v}")
        print(f"total delta = {total}")
    return EXIT_OK


def cmd_rootdata(args) -> int:
    try:
        t = DynkinType.parse(args.type)
    except InvalidType as exc:
        raise UsageError(str(exc)) from exc
    rd = build_root_datum(t)
    degrees = weyl.invariant_degrees(rd)
    lat = groupclass.type_lattices(t)
    m = weyl.orbits_on_roots(rd).num_orbits
    try:
        n = weyl.orbits_on_hyperplane_pairs(rd).num_orbits
    except weyl.EmptyPairSet:
        n = 0
    ordered = weyl.ordered_root_pair_orbit_count(rd)
    order = weyl.weyl_order(rd)
    if args.format == "json":
        doc = {
            "schema": "bundleaut.rootdata/1",
            "type": t.label,
            "rank": rd.rank,
            "ambient_dim": rd.ambient_dim,
            "num_roots": len(rd.roots),
            "simple_roots": [[str(c) for c in v] for v in rd.simple_roots],
            "cartan": [list(row) for row in rd.cartan],
            "degrees": list(degrees),
            "coxeter_number": degrees[-1],
            "weyl_order": order,
            "weight_quotient": lat.chars.group.symbol(),
            "num_hyperplanes": len(rd.roots) // 2,
            "root_orbit_count": m,
            "hyperplane_pair_orbit_count": n,
            "ordered_root_pair_orbit_count": ordered,
        }
        print(json.dumps(doc, ensure_ascii=False, indent=2, sort_keys=True))
    else:
        colored = _color_enabled()
        print(_styled(f"type {t.label}", colored))
        print(f"  rank {rd.rank}, ambient dimension {rd.ambient_dim}, "
              f"{len(rd.roots)} roots, {len(rd.roots) // 2} hyperplanes")
        print("  simple roots:")
        for i, v in enumerate(rd.simple_roots):
            print(f"    a_{i + 1} = ({', '.join(str(c) for c in v)})")
        print("  Cartan matrix:")
        for row in rd.cartan:
            print("    [" + " ".join(f"{x:2d}" for x in row) + "]")
        print(f"  invariant degrees: {list(degrees)}   "
              f"(Coxeter number h = {degrees[-1]})")
        print(f"  |W| = {order}")
        print(f"  P/Q = {lat.chars.group.symbol()}")
        print(f"  orbit counts: roots m = {m}, distinct hyperplane pairs n = {n}, "
              f"ordered root pairs = {ordered}")
    return EXIT_OK


# ---------------------------------------------------------------------------
# entry point


def _color_enabled() -> bool:
    return os.environ.get("BUNDLEAUT_COLOR") == "1"


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def make_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="bundleaut", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("report", help="invariants and automorphism presentation")
    p.add_argument("--group", required=True, help="group spec, e.g. D4:adjoint or Spin8")
    p.add_argument("--genus", type=int, default=4)
    p.add_argument("--delta", default=None, help="component label, e.g. 0,0")
    p.add_argument("--format", choices=("text", "json", "latex"), default="text")
    p.set_defaults(func=cmd_report)

    p = sub.add_parser("table", help="full classification table")
    p.add_argument("--genus", type=int, default=4)
    p.add_argument("--max-rank", type=int, default=8, dest="max_rank")
    p.add_argument("--format", choices=("text", "json", "latex"), default="text")
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("delta", help="local invariant calculator")
    p.add_argument("--profile", required=True,
                   help="comma-separated <deg>:<drop> entries, e.g. 4:0,3:1")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_delta)

    p = sub.add_parser("rootdata", help="root system data dump")
    p.add_argument("--type", required=True, help="Dynkin type, e.g. E6")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_rootdata)

    return parser


def main(argv=None) -> int:
    parser = make_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (InvalidDegree, GenusOutOfRange, InvalidType) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except InconsistentProfile as exc:
        print(f"inconsistent profile: {exc}", file=sys.stderr)
        return EXIT_INCONSISTENT


if __name__ == "__main__":
    sys.exit(main())

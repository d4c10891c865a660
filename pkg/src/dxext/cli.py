"""Batch command-line front end.

One computation per invocation: parse the inputs, run the engine, and
emit a report on stdout as JSON, CSV, or a human-readable text table.
Every report embeds its inputs after normalization (parsed and printed
back), so a result can be reproduced from the report alone.  Wall time
goes to stderr, keeping stdout byte-identical across repeated runs and
thread counts.

Exit codes: 0 on success, 1 when a well-formed computation fails
(no twist solution, violated precondition), 2 on usage errors.
"""

import argparse
import json
import os
import sys
import time
from fractions import Fraction

from .curves import CurveSpec, cross_check, predict
from .hyperext import (
    NoTwistSolution,
    action_ext0,
    action_ext1,
    action_ext1_on_ext1,
    end_membership,
    ext1_self_dims,
    ext_module_dims,
    solve_twist,
)
from .models import parse_model
from .parser import ParseError, parse
from .quotients import (
    hypersurface_cech_dims,
    ic_local_system_ext_dims,
    isotypic_dims,
    molien_isotypic_dims,
    parse_character,
    parse_group,
    rend_cohomology_dims,
)
from .rewrite import PRESETS, confluence_check, irreducible_dims
from .verify import SUITE_NAMES, run_suite

__all__ = ["main", "build_parser"]


class UsageError(Exception):
    pass


def _threads():
    raw = os.environ.get("DXEXT_THREADS", "1")
    try:
        value = int(raw)
    except ValueError as exc:
        raise UsageError(f"DXEXT_THREADS must be an integer, got {raw!r}") from exc
    return max(1, value)


def _parse_element(text, n=None, what="element"):
    try:
        return parse(text, n)
    except ParseError as exc:
        raise UsageError(f"cannot parse {what} {text!r}: {exc}") from exc


def _parse_poly(text, n=None, what="f"):
    elem = _parse_element(text, n, what)
    if elem.is_zero or not elem.is_polynomial:
        raise UsageError(
            f"{what} must be a nonzero polynomial in the coordinates, "
            f"got {text!r}"
        )
    return elem


def _get_preset(name):
    if name not in PRESETS:
        raise UsageError(
            f"unknown preset {name!r}; available: {sorted(PRESETS)}"
        )
    return PRESETS[name]()


def _get_group(text):
    try:
        return parse_group(text)
    except (ValueError, KeyError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot parse group {text!r}: {exc}") from exc


def _get_character(text):
    try:
        return parse_character(text)
    except ValueError as exc:
        raise UsageError(f"cannot parse character {text!r}: {exc}") from exc


def _get_model(text):
    try:
        return parse_model(text)
    except ValueError as exc:
        raise UsageError(f"cannot parse model {text!r}: {exc}") from exc


def _combination_from_text(module, text):
    """Parse `l1,l2=coeff; ...` into a module combination.

    Labels are comma-separated integers: the flat label for the delta,
    n-lines, and Kummer models; x-exponents then d-exponents for the
    free and quotient models.
    """
    nested = module.name.startswith(("free:", "dx:"))
    comb = {}
    for chunk in text.split(";"):
        chunk = chunk.strip()
        if not chunk:
            continue
        if "=" in chunk:
            label_text, coeff_text = chunk.rsplit("=", 1)
            coeff = Fraction(coeff_text.strip())
        else:
            label_text, coeff = chunk, Fraction(1)
        ints = tuple(int(v) for v in label_text.split(","))
        if nested:
            if len(ints) != 2 * module.n:
                raise ValueError(
                    f"label {label_text!r} needs {2 * module.n} integers"
                )
            label = (ints[: module.n], ints[module.n:])
        else:
            label = ints
        comb[label] = comb.get(label, Fraction(0)) + coeff
    return {k: v for k, v in comb.items() if v}


def _combination_to_jsonable(comb):
    terms = []
    for label, coeff in sorted(comb.items(), key=lambda kv: repr(kv[0])):
        flat = []
        for part in label:
            if isinstance(part, tuple):
                flat.extend(int(v) for v in part)
            else:
                flat.append(int(part))
        terms.append({"label": flat, "coeff": str(coeff)})
    return terms


def _combination_to_text(comb):
    if not comb:
        return "0"
    chunks = []
    for term in _combination_to_jsonable(comb):
        label = ",".join(str(v) for v in term["label"])
        chunks.append(f"{label}={term['coeff']}")
    return "; ".join(chunks)


def _certification(table):
    statuses = sorted({lv.status_text(table.window) for lv in table.levels})
    return {"statuses": statuses, "notes": dict(table.notes)}


def _kv_csv(pairs):
    lines = ["key,value"]
    lines.extend(f"{k},{v}" for k, v in pairs)
    return "\n".join(lines)


class Rendered:
    """One report in all three output formats."""

    def __init__(self, json_dict, text, csv=None):
        self.json_dict = json_dict
        self.text = text
        self.csv = csv

    def emit(self, fmt):
        if fmt == "json":
            return json.dumps(self.json_dict, indent=2, sort_keys=True)
        if fmt == "csv":
            if self.csv is None:
                flat = _flatten(self.json_dict)
                return _kv_csv(flat)
            return self.csv
        return self.text


def _flatten(data, prefix=""):
    pairs = []
    if isinstance(data, dict):
        for key in sorted(data):
            pairs.extend(_flatten(data[key], f"{prefix}{key}."))
    elif isinstance(data, list):
        pairs.append((prefix[:-1], json.dumps(data)))
    else:
        pairs.append((prefix[:-1], data))
    return pairs


def _table_report(command, inputs, table):
    payload = {
        "command": command,
        "input": inputs,
        "result": table.to_json_dict(),
        "certification": _certification(table),
    }
    header = ", ".join(f"{k}={v}" for k, v in inputs.items())
    text = f"{command} ({header})\n{table.to_text()}"
    return Rendered(payload, text, table.to_csv())


def cmd_ext_self(args):
    f = _parse_poly(args.f)
    table = ext1_self_dims(f, args.max_deg, args.stab_window)
    inputs = {
        "f": str(f),
        "maxDeg": args.max_deg,
        "stabWindow": args.stab_window,
    }
    return _table_report("ext-self", inputs, table)


def cmd_ext_module(args):
    module = _get_model(args.model)
    f = _parse_poly(args.f, module.n)
    ext0, ext1 = ext_module_dims(module, f, args.max_deg, args.stab_window)
    inputs = {
        "f": str(f),
        "model": module.name,
        "maxDeg": args.max_deg,
        "stabWindow": args.stab_window,
    }
    payload = {
        "command": "ext-module",
        "input": inputs,
        "result": {"ext0": ext0.to_json_dict(), "ext1": ext1.to_json_dict()},
        "certification": {
            "ext0": _certification(ext0),
            "ext1": _certification(ext1),
        },
    }
    header = ", ".join(f"{k}={v}" for k, v in inputs.items())
    text = (
        f"ext-module ({header})\n"
        f"kernel of right multiplication by f:\n{ext0.to_text()}\n"
        f"cokernel of right multiplication by f:\n{ext1.to_text()}"
    )
    return Rendered(payload, text, ext1.to_csv())


def cmd_twist(args):
    f = _parse_poly(args.f)
    alpha = _parse_element(args.alpha, f.n, "alpha")
    element = solve_twist(f, alpha)
    inputs = {"f": str(f), "alpha": str(element.alpha)}
    payload = {
        "command": "twist",
        "input": inputs,
        "result": {
            "beta": str(element.beta),
            "identityChecked": element.verify(f),
        },
    }
    text = (
        f"twist (f={f})\nalpha = {element.alpha}\nbeta  = {element.beta}\n"
        f"identity alpha*f == f*beta checked: {element.verify(f)}"
    )
    return Rendered(payload, text)


def cmd_end_member(args):
    f = _parse_poly(args.f)
    h = _parse_element(args.h, f.n, "h")
    element = end_membership(f, h)
    inputs = {"f": str(f), "h": str(h)}
    result = {"member": element is not None}
    if element is not None:
        result["beta"] = str(element.beta)
    payload = {"command": "end-member", "input": inputs, "result": result}
    if element is None:
        text = f"end-member (f={f})\n{h} does not normalize f: no twist exists"
    else:
        text = f"end-member (f={f})\n{h} is an endomorphism; beta = {element.beta}"
    return Rendered(payload, text)


def cmd_act(args):
    f = _parse_poly(args.f)
    if (args.alpha is None) == (args.by is None):
        raise UsageError("give exactly one of --alpha or --by")
    if args.by is not None:
        if args.model is not None or args.on == "ext0":
            raise UsageError(
                "--by acts on the self Ext group; drop --model/--on"
            )
        e = _parse_element(args.element, f.n, "element")
        d = _parse_element(args.by, f.n, "by")
        result = action_ext1_on_ext1(f, e, d)
        inputs = {"f": str(f), "element": str(e), "by": str(d)}
        payload = {
            "command": "act",
            "input": inputs,
            "result": {"class": str(result)},
        }
        text = f"act (f={f})\n[{e}] * [{d}] = [{result}]"
        return Rendered(payload, text)
    alpha = _parse_element(args.alpha, f.n, "alpha")
    end_el = solve_twist(f, alpha)
    if args.model is None:
        if args.on == "ext0":
            raise UsageError("--on ext0 needs --model")
        m = _parse_element(args.element, f.n, "element")
        result = action_ext1(f, end_el, m)
        inputs = {"f": str(f), "alpha": str(alpha), "element": str(m)}
        payload = {
            "command": "act",
            "input": inputs,
            "result": {"class": str(result)},
        }
        text = f"act (f={f})\nalpha = {alpha} acting on [{m}] = [{result}]"
        return Rendered(payload, text)
    module = _get_model(args.model)
    try:
        comb = _combination_from_text(module, args.element)
    except ValueError as exc:
        raise UsageError(f"cannot parse element {args.element!r}: {exc}") from exc
    if args.on == "ext0":
        result = action_ext0(f, end_el, comb, module)
    else:
        result = action_ext1(f, end_el, comb, module)
    inputs = {
        "f": str(f),
        "alpha": str(alpha),
        "model": module.name,
        "element": _combination_to_text(comb),
        "on": args.on,
    }
    payload = {
        "command": "act",
        "input": inputs,
        "result": {"terms": _combination_to_jsonable(result)},
    }
    text = (
        f"act (f={f}, model={module.name}, on={args.on})\n"
        f"alpha = {alpha}\nresult: {_combination_to_text(result)}"
    )
    return Rendered(payload, text)


def cmd_rewrite(args):
    system = _get_preset(args.preset)
    elem = _parse_element(args.element, system.n, "element")
    nf = system.normal_form(elem)
    irreducible = all(system.is_irreducible(m) for m in elem.terms)
    inputs = {"preset": args.preset, "element": str(elem)}
    payload = {
        "command": "rewrite",
        "input": inputs,
        "result": {"normalForm": str(nf), "inputIrreducible": irreducible},
    }
    text = (
        f"rewrite (preset={args.preset})\ninput: {elem}\n"
        f"normal form: {nf}\ninput already irreducible: {irreducible}"
    )
    return Rendered(payload, text)


def cmd_confluence(args):
    system = _get_preset(args.preset)
    report = confluence_check(system, args.max_deg)
    inputs = {"preset": args.preset, "maxDeg": args.max_deg}
    examples = [list(m) for m, _ in report.violations[:5]]
    payload = {
        "command": "confluence",
        "input": inputs,
        "result": {
            "confluent": report.confluent,
            "violations": len(report.violations),
            "examples": examples,
        },
    }
    text = (
        f"confluence (preset={args.preset}, maxDeg={args.max_deg})\n"
        f"violations: {len(report.violations)}\n"
        f"confluent through degree {args.max_deg}: {report.confluent}"
    )
    return Rendered(payload, text)


def cmd_irreducible_dims(args):
    system = _get_preset(args.preset)
    table = irreducible_dims(system, args.max_deg)
    inputs = {"preset": args.preset, "maxDeg": args.max_deg}
    return _table_report("irreducible-dims", inputs, table)


def _read_curve(text):
    if text.startswith("@"):
        with open(text[1:], "r", encoding="utf-8") as fh:
            text = fh.read()
    try:
        return CurveSpec.from_json(text)
    except (ValueError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot parse curve description: {exc}") from exc


def cmd_curve_predict(args):
    spec = _read_curve(args.curve)
    prediction = predict(spec.points, spec.local_system, simple=args.simple)
    inputs = {"curve": spec.to_json_dict(), "simple": args.simple}
    payload = {
        "command": "curve-predict",
        "input": inputs,
        "result": {
            "verdict": prediction.verdict,
            "justification": prediction.justification,
        },
    }
    text = (
        f"curve-predict (simple={args.simple})\n"
        f"verdict: {prediction.verdict}\nwhy: {prediction.justification}"
    )
    return Rendered(payload, text)


def cmd_curve_crosscheck(args):
    report = cross_check(args.n, args.model, args.max_deg)
    payload = {
        "command": "curve-crosscheck",
        "input": {"n": args.n, "model": report.model, "maxDeg": args.max_deg},
        "result": report.to_json_dict(),
    }
    return Rendered(payload, report.to_text(), report.ext1.to_csv())


def _dims_report(command, inputs, dims, extra=None):
    result = dims.to_json_dict()
    result["generatingFunction"] = dims.gf_string()
    if extra:
        result.update(extra)
    payload = {"command": command, "input": inputs, "result": result}
    header = ", ".join(f"{k}={v}" for k, v in inputs.items())
    text = (
        f"{command} ({header})\n{dims.to_text()}\n"
        f"generating function: {dims.gf_string()}"
    )
    return Rendered(payload, text, dims.to_csv())


def cmd_quotient_isotypic(args):
    group = _get_group(args.group)
    chi = _get_character(args.character)
    dims = isotypic_dims(group, chi, args.max_deg)
    extra = {}
    if args.molien_check:
        oracle = molien_isotypic_dims(group, chi, args.max_deg)
        extra["molienAgrees"] = oracle.dims == dims.dims
    if args.ic:
        degree, ic_dims = ic_local_system_ext_dims(group, chi, args.max_deg)
        extra["icCohomologicalDegree"] = degree
        extra["icDims"] = list(ic_dims.dims)
    inputs = {
        "group": args.group.strip(),
        "character": args.character.strip(),
        "maxDeg": args.max_deg,
    }
    return _dims_report("quotient-isotypic", inputs, dims, extra)


def cmd_quotient_rend(args):
    group = _get_group(args.group)
    dims = rend_cohomology_dims(group, args.max_deg)
    inputs = {"group": args.group.strip(), "maxDeg": args.max_deg}
    extra = {}
    text_extra = ""
    if args.compare_f:
        f = _parse_poly(args.compare_f, what="compare-f")
        table = ext1_self_dims(f, args.max_deg, args.stab_window)
        extra["hypersurfaceExt1"] = table.to_json_dict()
        text_extra = (
            f"\nhypersurface route for f = {f} (different grading, "
            f"exploratory comparison only):\n{table.to_text()}"
        )
    rendered = _dims_report("quotient-rend", inputs, dims, extra)
    rendered.text += text_extra
    return rendered


def cmd_quotient_cech(args):
    group = _get_group(args.group)
    chi = _get_character(args.character)
    dims = hypersurface_cech_dims(group, chi, args.max_deg)
    inputs = {
        "group": args.group.strip(),
        "character": args.character.strip(),
        "maxDeg": args.max_deg,
    }
    return _dims_report("quotient-cech", inputs, dims)


def cmd_verify(args):
    results = run_suite(args.suite, threads=_threads())
    lines = []
    for r in results:
        word = "PASS" if r.passed else "FAIL"
        lines.append(f"{word}  {r.label}: {r.detail}")
        print(f"{r.label}: {r.seconds:.2f}s", file=sys.stderr)
    all_passed = all(r.passed for r in results)
    payload = {
        "command": "verify",
        "input": {"suite": args.suite},
        "result": {
            "checks": [
                {"label": r.label, "passed": r.passed, "detail": r.detail}
                for r in results
            ],
            "allPassed": all_passed,
        },
    }
    summary = "all checks passed" if all_passed else "FAILURES PRESENT"
    text = "\n".join(lines + [summary])
    rendered = Rendered(payload, text)
    rendered.exit_code = 0 if all_passed else 1
    return rendered


def _nonnegative(value):
    ivalue = int(value)
    if ivalue < 0:
        raise argparse.ArgumentTypeError("must be >= 0")
    return ivalue


def _positive(value):
    ivalue = int(value)
    if ivalue < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return ivalue


def _add_common(sub, table=True):
    if table:
        sub.add_argument(
            "--max-deg", type=_nonnegative, default=6,
            help="largest filtration degree to report (default 6)",
        )
        sub.add_argument(
            "--stab-window", type=_positive, default=3,
            help="consecutive stable widenings before accepting a bound "
            "(default 3)",
        )
    sub.add_argument(
        "--format", choices=("json", "csv", "text"), default="text",
        help="output format (default text)",
    )
    sub.add_argument(
        "--output", default=None, help="write the report to this path"
    )


def build_parser():
    parser = argparse.ArgumentParser(
        prog="dxext",
        description="Exact Ext computations for hypersurface singularities "
        "in the Weyl algebra.",
    )
    subs = parser.add_subparsers(dest="command", required=True)

    s = subs.add_parser("ext-self", help="Ext^1 table for D/(Df+fD)")
    s.add_argument("--f", required=True, help="polynomial, e.g. \"x*y\"")
    _add_common(s)
    s.set_defaults(handler=cmd_ext_self)

    s = subs.add_parser("ext-module", help="Ext tables against a module")
    s.add_argument("--f", required=True)
    s.add_argument(
        "--model", required=True,
        help="dx:<poly> | delta:<n> | nlines-ic:<n> | kummer:<n>:<p/q> "
        "| free:<n>",
    )
    _add_common(s)
    s.set_defaults(handler=cmd_ext_module)

    s = subs.add_parser("twist", help="solve alpha*f == f*beta for beta")
    s.add_argument("--f", required=True)
    s.add_argument("--alpha", required=True)
    _add_common(s, table=False)
    s.set_defaults(handler=cmd_twist)

    s = subs.add_parser("act", help="apply an endomorphism or Ext class")
    s.add_argument("--f", required=True)
    s.add_argument("--alpha", help="endomorphism representative")
    s.add_argument("--by", help="Ext^1 class acting on --element")
    s.add_argument("--element", required=True)
    s.add_argument("--model", help="target module (omit for the self case)")
    s.add_argument("--on", choices=("ext0", "ext1"), default="ext1")
    _add_common(s, table=False)
    s.set_defaults(handler=cmd_act)

    s = subs.add_parser("end-member", help="test membership in End")
    s.add_argument("--f", required=True)
    s.add_argument("--h", required=True)
    _add_common(s, table=False)
    s.set_defaults(handler=cmd_end_member)

    s = subs.add_parser("rewrite", help="normal form under a preset system")
    s.add_argument("--preset", required=True)
    s.add_argument("--element", required=True)
    _add_common(s, table=False)
    s.set_defaults(handler=cmd_rewrite)

    s = subs.add_parser("confluence", help="check local confluence")
    s.add_argument("--preset", required=True)
    _add_common(s)
    s.set_defaults(handler=cmd_confluence)

    s = subs.add_parser(
        "irreducible-dims", help="cumulative irreducible-monomial counts"
    )
    s.add_argument("--preset", required=True)
    _add_common(s)
    s.set_defaults(handler=cmd_irreducible_dims)

    s = subs.add_parser("curve-predict", help="vanishing prediction")
    s.add_argument(
        "--curve", required=True,
        help="JSON curve description, or @path to a JSON file",
    )
    s.add_argument("--simple", action="store_true")
    _add_common(s, table=False)
    s.set_defaults(handler=cmd_curve_predict)

    s = subs.add_parser(
        "curve-crosscheck", help="prediction vs computation on n lines"
    )
    s.add_argument("--n", type=_positive, required=True)
    s.add_argument(
        "--model", required=True, help="trivial | kummer:<p/q> | delta"
    )
    _add_common(s)
    s.set_defaults(handler=cmd_curve_crosscheck)

    s = subs.add_parser(
        "quotient-isotypic", help="isotypic dimensions of the delta module"
    )
    s.add_argument("--group", required=True, help="cyclic:N:v1,...,vn or JSON")
    s.add_argument("--character", required=True, help="chi:c1,...,cn")
    s.add_argument(
        "--molien-check", action="store_true",
        help="also run the Molien-series oracle and report agreement",
    )
    s.add_argument(
        "--ic", action="store_true",
        help="also report the local-system Ext dimensions",
    )
    _add_common(s)
    s.set_defaults(handler=cmd_quotient_isotypic)

    s = subs.add_parser(
        "quotient-rend", help="correction-term dimensions by total degree"
    )
    s.add_argument("--group", required=True)
    s.add_argument(
        "--compare-f",
        help="also run ext-self on this polynomial (exploratory; the "
        "gradings are not aligned)",
    )
    _add_common(s)
    s.set_defaults(handler=cmd_quotient_rend)

    s = subs.add_parser(
        "quotient-cech", help="inverse-monomial counts matching a character"
    )
    s.add_argument("--group", required=True)
    s.add_argument("--character", required=True)
    _add_common(s)
    s.set_defaults(handler=cmd_quotient_cech)

    s = subs.add_parser("verify", help="run a shipped verification suite")
    s.add_argument("suite", choices=SUITE_NAMES)
    _add_common(s, table=False)
    s.set_defaults(handler=cmd_verify)

    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    start = time.perf_counter()
    try:
        rendered = args.handler(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    except (NoTwistSolution, ValueError, ArithmeticError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    finally:
        elapsed = time.perf_counter() - start
        print(f"wall time: {elapsed:.3f}s", file=sys.stderr)
    output = rendered.emit(args.format)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(output + "\n")
    else:
        print(output)
    return getattr(rendered, "exit_code", 0)


if __name__ == "__main__":
    sys.exit(main())

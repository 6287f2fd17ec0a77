import os
import shutil
import sys
import warnings

import click

from cogent3.util import parallel

from sesquifield.algebra import format_rational, parse_rational
from sesquifield.case_studies import (
    FAMILY_NAMES,
    NIL_FAMILIES,
    classify_nil,
    compare_published_systems,
    derive_sol_ode,
    family_map_condition,
    published_systems,
    verify_family,
    verify_sol_solution,
)
from sesquifield.engine import (
    check,
    energy_density,
    random_variation_suite,
    same_sign_scan,
    variation_test,
)
from sesquifield.field import FieldCalculus
from sesquifield.manifest import EXPECTATIONS, Manifest, parse_manifest, validate_manifest
from sesquifield.report import EXIT_FAILED, EXIT_INPUT_ERROR, EXIT_OK, Report
from sesquifield.util import SESQUIFIELDRC, EngineError, ManifestError


__author__ = "The Sesquifield Project"
__copyright__ = "Copyright 2026-, The Sesquifield Project"
__credits__ = ["The Sesquifield Project"]
__license__ = "BSD"
__version__ = "2026.10.16"
__maintainer__ = "The Sesquifield Project"
__status__ = "alpha"

# ValueError covers ManifestError, PolyParseError and StructureError,
# KeyError covers SymbolError, ArithmeticError covers 1/0 and overflow
INPUT_ERRORS = (ValueError, KeyError, IndexError, ArithmeticError, OSError)

_primes = ("f", "f'", "f''", "f'''", "f''''")

_expected_flag = {
    "vector_field": ("is_sesqui_vector_field", True),
    "map": ("is_sesqui_map", True),
    "not_vector_field": ("is_sesqui_vector_field", False),
    "not_map": ("is_sesqui_map", False),
}


def _apply_expectation(report, expect, flags):
    if expect == "none":
        return
    name, wanted = _expected_flag[expect]
    report.assert_true(flags[name] == wanted, f"expected {expect}, got {name}={flags[name]}")


def _delta_inputs(d):
    delta1, delta2 = d.to_literals()
    return {"delta1": delta1, "delta2": delta2}


def _run_check(manifest, report):
    algebra = manifest.algebra()
    calc = FieldCalculus(algebra)
    X = manifest.field(algebra)
    d = manifest.delta()
    report.inputs.update(field=list(manifest.components), **_delta_inputs(d))

    result = check(calc, X, d)
    report.add_fields(
        report.residuals,
        {"vertical": result.vertical_residual, "horizontal": result.horizontal_residual},
    )
    report.flags.update(result.flags)
    report.add_fields(report.terms, result.term_breakdown)
    if not algebra.is_jet:
        report.numeric["energy_density"] = str(energy_density(calc, X, d))
    _apply_expectation(report, manifest.expect, result.flags)


def _run_derive_ode(manifest, report):
    d = None if manifest.delta1 is None else manifest.delta()
    operator = derive_sol_ode(d, order=manifest.jet_order, algebra=manifest.algebra())
    if d is not None:
        report.inputs.update(_delta_inputs(d))

    report.details["ODE coefficients"] = [
        {"derivative": _primes[k], "coefficient": str(c)}
        for k, c in enumerate(operator.coefficients)
    ]
    report.numeric["operator"] = str(operator)
    report.numeric["sign"] = operator.sign
    report.notes.append(
        f"operator = {operator.sign:+d} times the e3 vertical condition of f(z) e3"
    )
    if d is None:
        return

    try:
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter("always")
            verified = verify_sol_solution(d)
    except ValueError as err:
        report.notes.append(f"closed form not checked: {err}")
        return
    report.notes.extend(str(w.message) for w in caught)
    report.flags["closed_form_verified"] = verified
    report.assert_true(verified, "closed form exponents are not roots of the characteristic polynomial")


def _member_records(family_result):
    records = []
    for member in family_result.members:
        record = member.to_dict()
        records.append({"family": family_result.family.name, **record})
    return records


def _map_conditions():
    """symbolic map conditions of the t-parametrised families"""
    published = published_systems()
    records = []
    for family in NIL_FAMILIES:
        if family.half:
            continue
        computed = family_map_condition(family)
        printed = family_map_condition(family, published)
        records.append(
            {
                "family": family.name,
                "computed": [str(p) for p in computed],
                "published": [str(p) for p in printed],
            }
        )
    return records


def _run_classify_nil(manifest, report):
    d = manifest.delta()
    report.inputs.update(_delta_inputs(d))
    result = classify_nil(d)

    report.numeric["t"] = format_rational(result.t)
    report.flags["passed"] = result.passed
    report.flags["computed_map_agrees"] = all(f.computed_map_agrees for f in result.families)
    report.details["families"] = [
        {
            "family": f.family.name,
            "map_relation": f"{f.family.map_flag_condition} = 0",
            "map_relation_holds": f.map_relation_holds,
            "passed": f.passed,
            "computed_map_agrees": f.computed_map_agrees,
        }
        for f in result.families
    ]
    members = []
    for family_result in result.families:
        members.extend(_member_records(family_result))
    if result.negative_control is not None:
        members.append({"family": "control", **result.negative_control.to_dict()})
    report.details["members"] = members
    report.details["map conditions"] = _map_conditions()

    difference = compare_published_systems()
    report.details["computed minus published"] = [
        {"system": name, "component": k + 1, "difference": str(p)}
        for name, polys in difference.items()
        for k, p in enumerate(polys)
    ]
    report.assert_true(result.passed, "a Nil family failed verification")


def _run_verify_family(manifest, report):
    if manifest.family is None:
        raise ManifestError(f"verify-family needs a family, choose from {', '.join(FAMILY_NAMES)}")
    d = manifest.delta()
    report.inputs.update(family=manifest.family, **_delta_inputs(d))
    result = verify_family(manifest.family, d)

    report.numeric["t"] = format_rational(result.t)
    report.flags["map_relation_holds"] = result.map_relation_holds
    report.flags["passed"] = result.passed
    report.flags["computed_map_agrees"] = result.computed_map_agrees
    report.details["members"] = _member_records(result)
    report.assert_true(result.passed, f"family {manifest.family} failed verification")


def _constant_point(field):
    if not all(c.is_constant() for c in field):
        return None
    return tuple(float(c.constant_term()) for c in field)


def _run_variation_test(manifest, report):
    algebra = manifest.algebra()
    calc = FieldCalculus(algebra)
    d = manifest.delta()
    report.inputs.update(step=manifest.step, tolerance=manifest.tolerance, **_delta_inputs(d))

    point = manifest.point
    if point is None:
        point = _constant_point(manifest.field(algebra))
    if point is None and manifest.samples == 0:
        raise ManifestError("variation-test needs numeric components, a point or samples")

    records = []
    if point is not None:
        direction = manifest.direction or (1.0,) * calc.dim
        result = variation_test(calc, point, direction, d, step=manifest.step)
        records.append({"x": list(point), "v": list(direction), **result.to_dict()})
        report.numeric.update(result.to_dict())

    if manifest.samples:
        suite = random_variation_suite(
            calc, d, samples=manifest.samples, step=manifest.step, seed=manifest.seed
        )
        records.extend(
            {"x": x.tolist(), "v": v.tolist(), **result.to_dict()} for x, v, result in suite
        )
        report.numeric["max_rel_err"] = max(r["rel_err"] for r in records)
    report.details["variation"] = records

    signs = {r["sign"] for r in records}
    report.numeric["sign"] = "".join(sorted(signs))
    if signs == {"-"}:
        report.notes.append("finite differences follow dE/dt = -<2 vertical, V>")
    worst = max(r["rel_err"] for r in records)
    report.flags["within_tolerance"] = worst < manifest.tolerance
    report.assert_true(
        worst < manifest.tolerance,
        f"relative error {worst:.3g} exceeds tolerance {manifest.tolerance:g}",
    )


def _run_scan_same_sign(manifest, report):
    algebra = manifest.algebra()
    d = manifest.delta()
    report.inputs.update(_delta_inputs(d))
    scan = same_sign_scan(algebra, d, require_same_sign=False)

    report.residuals["vertical"] = [str(p) for p in scan.system]
    report.flags["same_sign"] = d.same_sign
    report.flags["zero_only"] = scan.zero_only
    report.numeric["solution_set"] = scan.solution_set
    report.details["certificates"] = [c.to_dict() for c in scan.certificates]
    if not d.same_sign:
        report.notes.append("delta1 * delta2 <= 0, no sign argument applies")


_runners = {
    "check": _run_check,
    "derive-ode": _run_derive_ode,
    "classify-nil": _run_classify_nil,
    "verify-family": _run_verify_family,
    "variation-test": _run_variation_test,
    "scan-same-sign": _run_scan_same_sign,
}


def run(manifest):
    """executes a validated manifest

    Returns
    -------
    (Report, exit code), 0 when every assertion passed, 1 otherwise. Input
    errors propagate as exceptions.
    """
    source = manifest.preset if manifest.preset is not None else f"dim={manifest.dim}"
    report = Report(manifest.command, {"algebra": source, "mode": manifest.mode})
    if manifest.expect != "none":
        report.inputs["expect"] = manifest.expect
    try:
        _runners[manifest.command](manifest, report)
    except EngineError as err:
        report.notes.append(f"FAILED: {err}")
        report.exit_code = EXIT_FAILED
    return report, report.exit_code


def run_path(path):
    """(Report or None, exit code, error message) for a manifest file"""
    try:
        with open(path) as infile:
            manifest = parse_manifest(infile.read())
        report, code = run(manifest)
    except INPUT_ERRORS as err:
        return None, EXIT_INPUT_ERROR, f"{path}: {err}"
    return report, code, None


def _emit(report, output, format):
    text = report.render(format)
    if output is None:
        click.echo(text, nl=False)
        return
    with open(output, "w") as outfile:
        outfile.write(text)


def _fail(message):
    click.secho(f"ERROR: {message}", fg="red", err=True)
    sys.exit(EXIT_INPUT_ERROR)


def _build(command, manifest_file, overrides, defaults=None):
    """Manifest from an optional file plus command line overrides"""
    if manifest_file is None:
        manifest = Manifest(command=command, **(defaults or {}))
    else:
        manifest = parse_manifest(manifest_file.read())
        manifest.command = command

    for key in ("delta1", "delta2"):
        if overrides.get(key) is not None:
            setattr(manifest, key, parse_rational(overrides[key]))
    if overrides.get("preset") is not None:
        manifest.preset = overrides["preset"]
        manifest.dim, manifest.brackets = None, ()
    for key in ("family", "expect", "jet_order", "samples", "seed"):
        if overrides.get(key) is not None:
            setattr(manifest, key, overrides[key])

    validate_manifest(manifest)
    return manifest


def _execute(command, manifest_file, output, format, verbose, debug, overrides, defaults=None):
    try:
        manifest = _build(command, manifest_file, overrides, defaults)
        if debug:
            click.echo(repr(manifest), err=True)
        report, code = run(manifest)
    except INPUT_ERRORS as err:
        _fail(err)

    if verbose or debug:
        click.echo(f"{command}: exit code {code}", err=True)
    _emit(report, output, format)
    sys.exit(code)


# defining some of the options
_manifest = click.option(
    "-m",
    "--manifest",
    "manifest_file",
    type=click.File(),
    help="path to an INI manifest describing the computation",
)
_output = click.option(
    "-o", "--output", type=click.Path(), help="write the report here instead of stdout"
)
_format = click.option(
    "--format",
    type=click.Choice(["human", "structured"]),
    default="human",
    help="tables for reading, or one JSON document",
)
_expect = click.option(
    "--expect",
    type=click.Choice(EXPECTATIONS),
    help="assertion on the check flags, a failure exits with code 1",
)
_delta1 = click.option("--delta1", type=str, help="weight of the energy, p or p/q")
_delta2 = click.option("--delta2", type=str, help="weight of the bienergy, p or p/q")
_preset = click.option("--preset", type=str, help="built-in frame algebra")
_verbose = click.option("-v", "--verbose", is_flag=True, help="report progress on stderr")
_debug = click.option("-d", "--debug", is_flag=True, help="maximum verbosity")
_rc_out = click.option(
    "-o",
    "--outpath",
    required=True,
    type=click.Path(),
    help="path to directory to export all rc contents",
)


@click.group()
@click.version_option(__version__)
def main():
    """exact checks of interpolating sesqui-harmonic vector fields on Lie groups"""
    pass


@main.command("check")
@_manifest
@_expect
@_output
@_format
@_verbose
@_debug
def check_command(manifest_file, expect, output, format, verbose, debug):
    """residuals, flags and term breakdown of the manifest's field"""
    if manifest_file is None:
        _fail("check needs --manifest")
    _execute("check", manifest_file, output, format, verbose, debug, dict(expect=expect))


@main.command("derive-ode")
@_manifest
@_preset
@_delta1
@_delta2
@click.option("--order", type=int, help="jet truncation order, at least 4")
@_output
@_format
@_verbose
@_debug
def derive_ode(manifest_file, preset, delta1, delta2, order, output, format, verbose, debug):
    """profile ODE for f(z) e3 on a frame with a jet direction"""
    overrides = dict(preset=preset, delta1=delta1, delta2=delta2, jet_order=order)
    _execute(
        "derive-ode", manifest_file, output, format, verbose, debug, overrides, {"preset": "sol"}
    )


@main.command("classify-nil")
@_manifest
@_delta1
@_delta2
@_output
@_format
@_verbose
@_debug
def classify_nil_command(manifest_file, delta1, delta2, output, format, verbose, debug):
    """verifies every family of left-invariant fields on Nil"""
    overrides = dict(delta1=delta1, delta2=delta2)
    _execute(
        "classify-nil", manifest_file, output, format, verbose, debug, overrides, {"preset": "nil"}
    )


@main.command("verify-family")
@_manifest
@click.option("--family", type=click.Choice(FAMILY_NAMES), help="Nil family name")
@_delta1
@_delta2
@_output
@_format
@_verbose
@_debug
def verify_family_command(manifest_file, family, delta1, delta2, output, format, verbose, debug):
    """substitutes the members of one Nil family into both systems"""
    overrides = dict(family=family, delta1=delta1, delta2=delta2)
    _execute(
        "verify-family", manifest_file, output, format, verbose, debug, overrides, {"preset": "nil"}
    )


@main.command("variation-test")
@_manifest
@click.option("--samples", type=int, help="number of random (X, V) pairs")
@click.option("--seed", type=int, help="seed for the random pairs")
@_output
@_format
@_verbose
@_debug
def variation_test_command(manifest_file, samples, seed, output, format, verbose, debug):
    """finite difference check of the first variation of the energy"""
    if manifest_file is None:
        _fail("variation-test needs --manifest")
    overrides = dict(samples=samples, seed=seed)
    _execute("variation-test", manifest_file, output, format, verbose, debug, overrides)


@main.command("scan-same-sign")
@_manifest
@_preset
@_delta1
@_delta2
@_output
@_format
@_verbose
@_debug
def scan_same_sign(manifest_file, preset, delta1, delta2, output, format, verbose, debug):
    """left-invariant solutions of the vertical condition when delta1 delta2 > 0"""
    overrides = dict(preset=preset, delta1=delta1, delta2=delta2)
    _execute(
        "scan-same-sign", manifest_file, output, format, verbose, debug, overrides, {"preset": "nil"}
    )


@main.command()
@click.argument("paths", nargs=-1, required=True, type=click.Path(exists=True))
@click.option("-j", "--jobs", type=int, default=1, help="number of processes to use")
@click.option(
    "-o", "--outdir", type=click.Path(), help="directory for one report per manifest"
)
@_format
@_verbose
def batch(paths, jobs, outdir, format, verbose):
    """runs several manifests, the exit code is the largest of theirs"""
    if jobs > 1:
        results = list(parallel.map(run_path, paths, max_workers=jobs))
    else:
        results = [run_path(path) for path in paths]

    if outdir is not None:
        os.makedirs(outdir, exist_ok=True)

    suffix = "json" if format == "structured" else "txt"
    code = EXIT_OK
    for path, (report, status, message) in zip(paths, results):
        code = max(code, status)
        if message is not None:
            click.secho(f"ERROR: {message}", fg="red", err=True)
            continue
        if verbose:
            click.echo(f"{path}: exit code {status}", err=True)
        if outdir is None:
            click.echo(report.render(format), nl=False)
            continue
        name = os.path.splitext(os.path.basename(path))[0]
        _emit(report, os.path.join(outdir, f"{name}.{suffix}"), format)
    sys.exit(code)


@main.command()
@_rc_out
def exportrc(outpath):
    """exports the rc directory to the nominated path

    setting an environment variable SESQUIFIELDRC with this path
    will force its contents to override the default presets"""
    shutil.copytree(SESQUIFIELDRC, outpath)
    click.echo(f"Contents written to {outpath}")


if __name__ == "__main__":
    main()

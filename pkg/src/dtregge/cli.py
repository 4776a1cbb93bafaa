"""Command-line interface.

Exit codes: 0 success / all checks pass, 1 check failure, 2 input error,
3 resource cap exceeded.  Machine output is JSON with exact rationals as
"p/q" strings.
"""

from __future__ import annotations

import json
import random
import sys
import time
from fractions import Fraction
from pathlib import Path

import click

from . import cache as cache_mod
from . import polygon
from .catalog import (
    Catalog,
    InfeasibleKeyError,
    ResourceCapError,
    check_feasible,
    enumerate_triangulations,
)
from .geometry import CornerFan, half_edge_lengths, median_identity_check
from .intersection import GenusError, generating_F, tau
from .measure import incidence_matrix, kontsevich_check
from .pairing import cardinality_and_average, duality_pairing
from .report import RunReport, rational
from .ribbon import RibbonGraph, dualize
from .triangulation import Triangulation, TriangulationError, gauss_bonnet_check
from .volume import leray_volume

EXIT_CHECK_FAILED = 1
EXIT_INPUT_ERROR = 2
EXIT_RESOURCE_CAP = 3


def _parse_q(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(part) for part in text.split(","))
    except ValueError:
        raise click.UsageError(f"cannot parse q-list {text!r}; expected e.g. 2,2,2")


def _emit(report: RunReport) -> None:
    click.echo(report.to_json())


def _fail(message: str, code: int):
    click.echo(f"error: {message}", err=True)
    sys.exit(code)


@click.group()
@click.option("--precision", type=int, default=None, help="decimal digits for real arithmetic")
def main(precision):
    """Exact tools for triangulations, dual ribbon graphs and moduli volumes."""
    if precision is not None:
        polygon.set_precision(precision)


key_options = [
    click.option("--genus", "-g", type=int, required=True),
    click.option("--vertices", "-n", "vertices", type=int, required=True),
    click.option("--q", "qlist", type=str, required=True, help="comma-separated q(k)"),
]


def with_key(func):
    for option in reversed(key_options):
        func = option(func)
    return func


@main.command("enumerate")
@with_key
@click.option("--out", type=click.Path(path_type=Path), default=None)
@click.option("--max-faces", type=int, default=12, show_default=True)
@click.option("--workers", type=int, default=1, show_default=True)
@click.option("--no-cache", is_flag=True, help="do not read or write the catalog cache")
def cmd_enumerate(genus, vertices, qlist, out, max_faces, workers, no_cache):
    """Enumerate all labelled triangulations realizing a curvature key."""
    q = _parse_q(qlist)
    t0 = time.time()
    try:
        check_feasible(genus, vertices, q)
        catalog = None
        path = out if out is not None else cache_mod.catalog_path(genus, vertices, q)
        if not no_cache and path.is_file():
            try:
                candidate = cache_mod.load_catalog(path)
                if not cache_mod.verify_catalog(candidate):
                    catalog = candidate
            except (cache_mod.CacheError, json.JSONDecodeError, KeyError):
                catalog = None
        if catalog is None:
            catalog = enumerate_triangulations(
                genus, vertices, q, max_faces=max_faces, workers=workers
            )
            if not no_cache or out is not None:
                cache_mod.atomic_write_json(path, catalog.to_dict())
    except InfeasibleKeyError as exc:
        _fail(str(exc), EXIT_INPUT_ERROR)
    except ResourceCapError as exc:
        _fail(str(exc), EXIT_RESOURCE_CAP)
    _emit(
        RunReport(
            "enumerate",
            {"genus": genus, "vertices": vertices, "q": list(q)},
            {
                "cardinality": catalog.cardinality,
                "codes": [entry.code.hex() for entry in catalog.entries],
                "aut_orders": [entry.aut_order for entry in catalog.entries],
                "path": str(path),
            },
            {"seconds": round(time.time() - t0, 3)},
        )
    )


@main.command("dual")
@click.option("--in", "in_path", type=click.Path(path_type=Path), required=True)
@click.option("--out", type=click.Path(path_type=Path), default=None)
def cmd_dual(in_path, out):
    """Dualize a triangulation JSON file into a ribbon graph JSON file."""
    try:
        with open(in_path) as handle:
            t = Triangulation.from_dict(json.load(handle))
    except (OSError, json.JSONDecodeError, KeyError, TriangulationError) as exc:
        _fail(f"cannot read triangulation: {exc}", EXIT_INPUT_ERROR)
    graph = dualize(t)
    data = graph.to_dict()
    if out is not None:
        cache_mod.atomic_write_json(out, data)
    else:
        click.echo(json.dumps(data, indent=2, sort_keys=True))


def _load_catalog_or_key(in_path, genus, vertices, qlist, max_faces) -> Catalog:
    if in_path is not None:
        with open(in_path) as handle:
            return Catalog.from_dict(json.load(handle))
    if genus is None or vertices is None or qlist is None:
        raise click.UsageError("provide either --in or the key (--genus/--vertices/--q)")
    q = _parse_q(qlist)
    check_feasible(genus, vertices, q)
    return enumerate_triangulations(genus, vertices, q, max_faces=max_faces)


@main.command("check")
@click.argument("kind", type=click.Choice(["gauss-bonnet", "kontsevich", "median", "rank"]))
@click.option("--in", "in_path", type=click.Path(path_type=Path), default=None)
@click.option("--genus", "-g", type=int, default=None)
@click.option("--vertices", "-n", type=int, default=None)
@click.option("--q", "qlist", type=str, default=None)
@click.option("--max-faces", type=int, default=12, show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--trials", type=int, default=100, show_default=True)
@click.option("--q-max", type=int, default=8, show_default=True)
def cmd_check(kind, in_path, genus, vertices, qlist, max_faces, seed, trials, q_max):
    """Run an exact identity check and report per-entry results."""
    t0 = time.time()
    results: dict = {"entries": [], "pass": True}
    try:
        if kind in ("gauss-bonnet", "kontsevich"):
            catalog = _load_catalog_or_key(in_path, genus, vertices, qlist, max_faces)
            for entry in catalog.entries:
                if kind == "gauss-bonnet":
                    total, ok = gauss_bonnet_check(entry.triangulation)
                    results["entries"].append(
                        {
                            "code": entry.code.hex(),
                            "total_curvature_over_pi": rational(total),
                            "expected_over_pi": rational(
                                2 * (2 - 2 * entry.triangulation.genus)
                            ),
                            "pass": ok,
                        }
                    )
                else:
                    ok, coeff, expected = kontsevich_check(entry.dual)
                    results["entries"].append(
                        {
                            "code": entry.code.hex(),
                            "coefficient": int(coeff),
                            "expected": int(expected),
                            "pass": ok,
                        }
                    )
                results["pass"] &= results["entries"][-1]["pass"]
        elif kind == "median":
            rng = random.Random(seed)
            for _ in range(trials):
                fan = _random_fan(rng)
                ok = median_identity_check(half_edge_lengths(fan))
                results["entries"].append({"q": fan.q, "pass": ok})
                results["pass"] &= ok
        else:  # rank
            for q in range(3, q_max + 1):
                rank = polygon.equilateral_rank(q)
                ok = rank == q - 1
                results["entries"].append({"q": q, "rank": rank, "expected": q - 1, "pass": ok})
                results["pass"] &= ok
    except InfeasibleKeyError as exc:
        _fail(str(exc), EXIT_INPUT_ERROR)
    except ResourceCapError as exc:
        _fail(str(exc), EXIT_RESOURCE_CAP)
    except (OSError, json.JSONDecodeError, KeyError) as exc:
        _fail(f"cannot read input: {exc}", EXIT_INPUT_ERROR)
    _emit(
        RunReport(
            f"check {kind}",
            {"in": str(in_path) if in_path else None, "seed": seed},
            results,
            {"seconds": round(time.time() - t0, 3)},
        )
    )
    if not results["pass"]:
        sys.exit(EXIT_CHECK_FAILED)


def _random_fan(rng: random.Random) -> CornerFan:
    """A random valid corner fan with rational edge lengths."""
    while True:
        q = rng.randint(2, 6)
        spokes = [Fraction(rng.randint(20, 60), 10) for _ in range(q)]
        links = []
        for a in range(q):
            low = abs(spokes[a] - spokes[(a + 1) % q])
            high = spokes[a] + spokes[(a + 1) % q]
            links.append(low + Fraction(rng.randint(1, 9), 10) * (high - low))
        try:
            fan = CornerFan.from_lengths(spokes, links)
            half_edge_lengths(fan)
            return fan
        except ValueError:
            continue


@main.command("volume")
@with_key
@click.option("--max-faces", type=int, default=12, show_default=True)
def cmd_volume(genus, vertices, qlist, max_faces):
    """Exact Leray volumes of the constraint polytopes at a key."""
    q = _parse_q(qlist)
    t0 = time.time()
    try:
        check_feasible(genus, vertices, q)
        catalog = enumerate_triangulations(genus, vertices, q, max_faces=max_faces)
    except InfeasibleKeyError as exc:
        _fail(str(exc), EXIT_INPUT_ERROR)
    except ResourceCapError as exc:
        _fail(str(exc), EXIT_RESOURCE_CAP)
    entries = []
    for entry in catalog.entries:
        vol = leray_volume(incidence_matrix(entry.dual))
        entries.append(
            {
                "code": entry.code.hex(),
                "volume": rational(vol.value),
                "dim": vol.dimension,
                "aut_boundary": entry.aut_order,
            }
        )
    _emit(
        RunReport(
            "volume",
            {"genus": genus, "vertices": vertices, "q": list(q)},
            {"entries": entries},
            {"seconds": round(time.time() - t0, 3)},
        )
    )


@main.command("tau")
@click.option("--genus", "-g", type=int, required=True)
@click.option("--d", "dlist", type=str, required=True, help="comma-separated exponents")
@click.option("--enable-dvv", is_flag=True, help="allow genus >= 2 via the KdV recursion")
def cmd_tau(genus, dlist, enable_dvv):
    """One intersection number <tau_{d_1} ... tau_{d_n}>_g."""
    ds = _parse_q(dlist)
    try:
        value = tau(genus, ds, enable_higher_genus=enable_dvv)
    except (GenusError, ValueError) as exc:
        _fail(str(exc), EXIT_INPUT_ERROR)
    _emit(
        RunReport(
            "tau",
            {"genus": genus, "d": list(ds)},
            {"value": rational(value)},
        )
    )


@main.command("pairing")
@with_key
@click.option("--max-faces", type=int, default=12, show_default=True)
@click.option("--enable-dvv", is_flag=True, help="allow genus >= 2 via the KdV recursion")
def cmd_pairing(genus, vertices, qlist, max_faces, enable_dvv):
    """Verify the duality pairing at a key; exit status reflects equality."""
    q = _parse_q(qlist)
    t0 = time.time()
    try:
        check_feasible(genus, vertices, q)
        report = duality_pairing(
            genus, vertices, q, enable_higher_genus=enable_dvv, max_faces=max_faces
        )
        card, average = cardinality_and_average(genus, vertices, q, max_faces=max_faces)
    except (InfeasibleKeyError, GenusError) as exc:
        _fail(str(exc), EXIT_INPUT_ERROR)
    except ResourceCapError as exc:
        _fail(str(exc), EXIT_RESOURCE_CAP)
    body = report.to_dict()
    body["average_volume"] = rational(average) if average is not None else None
    _emit(
        RunReport(
            "pairing",
            {"genus": genus, "vertices": vertices, "q": list(q)},
            body,
            {"seconds": round(time.time() - t0, 3)},
        )
    )
    if not report.equal:
        sys.exit(EXIT_CHECK_FAILED)


@main.group("cache")
def cmd_cache():
    """Inspect or verify the catalog cache."""


@cmd_cache.command("ls")
def cache_ls():
    for path in cache_mod.list_cache():
        click.echo(str(path))


@cmd_cache.command("verify")
def cache_verify():
    ok = True
    for path in cache_mod.list_cache():
        try:
            catalog = cache_mod.load_catalog(path)
            problems = cache_mod.verify_catalog(catalog)
        except (cache_mod.CacheError, json.JSONDecodeError, KeyError, ValueError) as exc:
            problems = [str(exc)]
        status = "ok" if not problems else "FAIL: " + "; ".join(problems)
        click.echo(f"{path}: {status}")
        ok &= not problems
    if not ok:
        sys.exit(EXIT_CHECK_FAILED)


if __name__ == "__main__":
    main()

"""Persistent catalog cache: one JSON file per enumeration key.

Files are written atomically (temp file in the same directory, then
rename) and carry the normative-convention version stamp; files written
under an older convention are ignored.  The cache directory is taken from
the DTREGGE_CACHE_DIR environment variable, with a per-user default.
"""

from __future__ import annotations

import json
import os
import tempfile
from pathlib import Path

from .catalog import CONVENTION_VERSION, Catalog
from .measure import incidence_matrix
from .ribbon import aut_boundary, canonical_code
from .triangulation import curvature_assignments, gauss_bonnet_check

CACHE_ENV = "DTREGGE_CACHE_DIR"


class CacheError(ValueError):
    pass


def cache_dir() -> Path:
    env = os.environ.get(CACHE_ENV)
    if env:
        return Path(env)
    return Path.home() / ".cache" / "dtregge"


def catalog_path(genus: int, n0: int, q, directory: Path | None = None) -> Path:
    base = directory if directory is not None else cache_dir()
    name = "catalog-g{}-n{}-q{}-v{}.json".format(
        genus, n0, "_".join(str(x) for x in q), CONVENTION_VERSION
    )
    return base / name


def atomic_write_json(path: Path, data) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    text = json.dumps(data, indent=2, sort_keys=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=path.name, suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as handle:
            handle.write(text)
            handle.write("\n")
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def save_catalog(catalog: Catalog, directory: Path | None = None) -> Path:
    path = catalog_path(catalog.genus, catalog.vertex_count, catalog.q, directory)
    atomic_write_json(path, catalog.to_dict())
    return path


def load_catalog(path: Path) -> Catalog:
    with open(path) as handle:
        data = json.load(handle)
    if data.get("version") != CONVENTION_VERSION:
        raise CacheError(
            f"{path}: written under convention version {data.get('version')}, "
            f"current is {CONVENTION_VERSION}"
        )
    catalog = Catalog.from_dict(data)
    return catalog


def verify_catalog(catalog: Catalog) -> list[str]:
    """Re-run the catalog invariants; returns a list of problems (empty = ok)."""
    problems = []
    codes = set()
    for i, entry in enumerate(catalog.entries):
        t = entry.triangulation
        if t.genus != catalog.genus:
            problems.append(f"entry {i}: genus {t.genus} != {catalog.genus}")
        if curvature_assignments(t) != catalog.q:
            problems.append(f"entry {i}: curvature assignments do not match the key")
        total, ok = gauss_bonnet_check(t)
        if not ok:
            problems.append(f"entry {i}: total curvature {total}*pi fails Gauss-Bonnet")
        dual = entry.dual
        if dual.genus() != t.genus:
            problems.append(f"entry {i}: dual genus mismatch")
        if len(dual.boundary_cycles) != t.n0:
            problems.append(f"entry {i}: dual has wrong boundary count")
        system = incidence_matrix(dual)
        if tuple(int(x) for x in system.rhs) != catalog.q:
            problems.append(f"entry {i}: dual side counts do not match q")
        if canonical_code(dual) != entry.code:
            problems.append(f"entry {i}: stored canonical code is stale")
        if aut_boundary(dual)[0] != entry.aut_order:
            problems.append(f"entry {i}: stored automorphism order is stale")
        if entry.code in codes:
            problems.append(f"entry {i}: duplicate canonical code")
        codes.add(entry.code)
    return problems


def list_cache(directory: Path | None = None) -> list[Path]:
    base = directory if directory is not None else cache_dir()
    if not base.is_dir():
        return []
    return sorted(base.glob("catalog-*.json"))

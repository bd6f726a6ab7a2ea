"""Batch runner: one CSV row of parameters per listed instance.

A spec file has one instance per line, either a family spec such as
``star p=3 d=3`` / ``random n=6 d=3 prob=0.3 seed=1`` or a path to a
``.uhg``/``.json`` file.  Blank lines and ``#`` comments are ignored.
"""

from __future__ import annotations

import csv
import io
import time
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from pathlib import Path
from typing import Iterable, Sequence

from . import families
from .hypergraph import Hypergraph, HypergraphError, read_hypergraph
from .nullity import (
    DEFAULT_BUDGET,
    DEFAULT_EXHAUSTIVE_PRIME,
    DEFAULT_GENERIC_PRIME,
    BudgetExceeded,
    generic_nullity,
    max_nullity_exhaustive,
)
from .search import minimum_set

COLUMNS = (
    "instance", "n", "d", "m",
    "Z0", "I", "Zpd", "pd",
    "generic_nullity", "generic_field", "M", "M_field",
    "search_seconds", "nullity_seconds",
)
SEARCH_PARAMETERS = ("Z0", "I", "Zpd", "pd")

# family -> parameter names in call order
FAMILY_ARGS: dict[str, tuple[str, ...]] = {
    "complete": ("n", "d"),
    "star": ("p", "d"),
    "interval": ("n", "d", "L"),
    "special_interval": ("d", "s"),
    "circular_arc": ("n", "d", "L"),
    "special_circular_arc": ("d", "s"),
    "tight_circular_arc": ("d", "t", "s"),
    "random": ("n", "d", "prob", "seed"),
}
_GENERATORS = {
    "complete": families.complete,
    "star": families.star,
    "interval": families.interval,
    "special_interval": families.special_interval,
    "circular_arc": families.circular_arc,
    "special_circular_arc": families.special_circular_arc,
    "tight_circular_arc": families.tight_circular_arc,
    "random": families.random_hypergraph,
}


class SpecError(ValueError):
    pass


def _value(key: str, raw: str):
    if key == "L":
        return [int(x) for x in raw.split(",") if x] if raw else []
    if key == "prob":
        return Fraction(raw)
    if key == "connected":
        if raw.lower() not in ("true", "false", "1", "0", "yes", "no"):
            raise ValueError(f"expected a boolean, got {raw!r}")
        return raw.lower() in ("true", "1", "yes")
    return int(raw)


def build_family(family: str, params: dict[str, str]) -> Hypergraph:
    """Generate a family member from string parameters, e.g. ``{"p": "3", "d": "3"}``."""
    if family not in FAMILY_ARGS:
        raise SpecError(f"unknown family {family!r}; expected one of {', '.join(FAMILY_ARGS)}")
    names = FAMILY_ARGS[family]
    allowed = set(names) | ({"connected"} if family == "interval" else set())
    unknown = set(params) - allowed
    if unknown:
        raise SpecError(f"{family}: unknown parameter(s) {', '.join(sorted(unknown))}")
    missing = [k for k in names if k not in params]
    if missing:
        raise SpecError(f"{family}: missing parameter(s) {', '.join(missing)}")
    try:
        args = [_value(k, params[k]) for k in names]
        kwargs = {"connected": _value("connected", params["connected"])} if "connected" in params else {}
    except ValueError as exc:
        raise SpecError(f"{family}: {exc}") from None
    try:
        return _GENERATORS[family](*args, **kwargs)
    except HypergraphError as exc:
        raise SpecError(f"{family}: {exc}") from None


def parse_family_tokens(tokens: Sequence[str]) -> Hypergraph:
    family, *rest = tokens
    params: dict[str, str] = {}
    for tok in rest:
        key, sep, val = tok.partition("=")
        if not sep or not key:
            raise SpecError(f"expected key=value, got {tok!r}")
        if key in params:
            raise SpecError(f"parameter {key!r} given twice")
        params[key] = val
    return build_family(family, params)


def parse_spec(text: str, base: Path | None = None) -> list[tuple[str, Hypergraph]]:
    """Instances listed in a batch spec, labelled by their spec line."""
    out: list[tuple[str, Hypergraph]] = []
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        try:
            if tokens[0] in FAMILY_ARGS:
                H = parse_family_tokens(tokens)
            elif len(tokens) == 1 and tokens[0].endswith((".uhg", ".json")):
                path = Path(tokens[0])
                if base is not None and not path.is_absolute():
                    path = base / path
                H = read_hypergraph(path)
            else:
                raise SpecError(f"expected a family spec or a .uhg/.json path, got {line!r}")
        except (SpecError, HypergraphError, OSError) as exc:
            raise SpecError(f"line {lineno}: {exc}") from None
        out.append((line, H))
    return out


def instance_row(label: str, H: Hypergraph, params: Iterable[str] = SEARCH_PARAMETERS,
                 budget: int = DEFAULT_BUDGET, seed: int = 0,
                 exhaustive_field: int = DEFAULT_EXHAUSTIVE_PRIME,
                 generic_field: int = DEFAULT_GENERIC_PRIME, trials: int = 5) -> dict[str, str]:
    row = {c: "" for c in COLUMNS}
    row.update(instance=label, n=str(H.n), d=str(H.d), m=str(H.m))
    start = time.perf_counter()
    for name in params:
        row[name] = str(minimum_set(H, name).value)
    row["search_seconds"] = f"{time.perf_counter() - start:.4f}"
    start = time.perf_counter()
    row["generic_nullity"] = str(generic_nullity(H, generic_field, trials, seed))
    row["generic_field"] = str(generic_field)
    try:
        row["M"] = str(max_nullity_exhaustive(H, exhaustive_field, budget).value)
        row["M_field"] = str(exhaustive_field)
    except BudgetExceeded:
        pass
    row["nullity_seconds"] = f"{time.perf_counter() - start:.4f}"
    return row


def _row_job(args) -> dict[str, str]:
    label, H, kwargs = args
    return instance_row(label, H, **kwargs)


def run_batch(text: str, base: Path | None = None, threads: int = 1, **kwargs) -> str:
    """CSV text with a header and one row per instance, in input order."""
    instances = parse_spec(text, base)
    jobs = [(label, H, kwargs) for label, H in instances]
    if threads > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=threads) as pool:
            rows = list(pool.map(_row_job, jobs))
    else:
        rows = [_row_job(job) for job in jobs]
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=COLUMNS, lineterminator="\n")
    writer.writeheader()
    writer.writerows(rows)
    return buf.getvalue()

"""JSON and CSV formats for instances, schemes, and gains reports.

Agents are written as canonical ids (``"M1.2"`` is man 2 of community 1) and
rationals as ``"p/q"`` strings in lowest terms; floats never appear.
"""
from __future__ import annotations

import csv
import io as _io
import json
from fractions import Fraction
from pathlib import Path
from typing import IO, Any, Dict, Iterable, List, Mapping, Sequence, Union

from .integration import GainsReport
from .model import AgentId, Instance, Matching, MatchingScheme, check_valid

FORMAT_VERSION = 1

PathOrFile = Union[str, Path, IO[str]]

CSV_COLUMNS = [
    "kappa",
    "n",
    "seed_or_family",
    "Gamma_bar_num",
    "Gamma_bar_den",
    "gainers",
    "losers",
    "unchanged",
    "bound_ok",
    "formula_match",
]


class FormatError(ValueError):
    pass


def format_fraction(x: Fraction) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def parse_fraction(text: str) -> Fraction:
    try:
        num, den = text.split("/")
        return Fraction(int(num), int(den))
    except (ValueError, ZeroDivisionError):
        raise FormatError(f"malformed rational {text!r}") from None


def _dump(doc: Any) -> str:
    return json.dumps(doc, indent=2) + "\n"


def _write_text(text: str, destination: PathOrFile) -> None:
    if isinstance(destination, (str, Path)):
        Path(destination).write_text(text)
    else:
        destination.write(text)


def _read_text(source: PathOrFile) -> str:
    if isinstance(source, (str, Path)):
        return Path(source).read_text()
    return source.read()


def _check_keys(doc: Mapping, required: Iterable[str], optional: Iterable[str] = ()) -> None:
    if not isinstance(doc, dict):
        raise FormatError("expected a JSON object")
    allowed = set(required) | set(optional)
    unknown = set(doc) - allowed
    if unknown:
        raise FormatError(f"unknown fields: {sorted(unknown)}")
    missing = set(required) - set(doc)
    if missing:
        raise FormatError(f"missing fields: {sorted(missing)}")
    if "format_version" in doc and doc["format_version"] != FORMAT_VERSION:
        raise FormatError(f"unsupported format_version {doc['format_version']!r}")


def _parse_id(text: Any) -> AgentId:
    if not isinstance(text, str):
        raise FormatError(f"agent id must be a string, got {text!r}")
    try:
        return AgentId.parse(text)
    except ValueError as e:
        raise FormatError(str(e)) from None


# -- instances ---------------------------------------------------------------


def instance_to_dict(instance: Instance) -> Dict[str, Any]:
    doc: Dict[str, Any] = {"format_version": FORMAT_VERSION, "kappa": instance.kappa, "n": instance.n}
    if not instance.is_society:
        doc["communities"] = list(instance.communities)
    doc["prefs"] = {str(a): [str(x) for x in ranking] for a, ranking in sorted(instance.prefs.items())}
    return doc


def instance_from_dict(doc: Mapping[str, Any]) -> Instance:
    _check_keys(doc, ["format_version", "kappa", "n", "prefs"], ["communities"])
    kappa, n = doc["kappa"], doc["n"]
    if not (isinstance(kappa, int) and isinstance(n, int)) or kappa < 1 or n < 1:
        raise FormatError("kappa and n must be positive integers")
    if not isinstance(doc["prefs"], dict):
        raise FormatError("prefs must be an object")
    prefs = {}
    for key, ranking in doc["prefs"].items():
        if not isinstance(ranking, list):
            raise FormatError(f"preference list of {key} must be an array")
        prefs[_parse_id(key)] = tuple(_parse_id(x) for x in ranking)
    instance = Instance(kappa, n, prefs, tuple(doc.get("communities", ())))
    check_valid(instance)
    return instance


def dumps_instance(instance: Instance) -> str:
    return _dump(instance_to_dict(instance))


def write_instance(instance: Instance, destination: PathOrFile) -> None:
    _write_text(dumps_instance(instance), destination)


def read_instance(source: PathOrFile) -> Instance:
    """Parse and validate an instance; raises FormatError or ValidationError."""
    try:
        doc = json.loads(_read_text(source))
    except json.JSONDecodeError as e:
        raise FormatError(f"invalid JSON: {e}") from None
    return instance_from_dict(doc)


# -- matchings and schemes ---------------------------------------------------


def matching_to_list(matching: Matching) -> List[List[str]]:
    return [[str(m), str(w)] for m, w in matching.pairs]


def matching_from_list(pairs: Any) -> Matching:
    if not isinstance(pairs, list) or any(not isinstance(p, list) or len(p) != 2 for p in pairs):
        raise FormatError("a matching is an array of [man, woman] pairs")
    try:
        return Matching((_parse_id(a), _parse_id(b)) for a, b in pairs)
    except ValueError as e:
        raise FormatError(str(e)) from None


def scheme_to_dict(scheme: MatchingScheme) -> Dict[str, Any]:
    return {
        "format_version": FORMAT_VERSION,
        "communities": {str(c): matching_to_list(mu) for c, mu in sorted(scheme.per_community.items())},
        "society": matching_to_list(scheme.society),
    }


def read_partial_scheme(source: PathOrFile) -> Dict[str, Any]:
    """Read a scheme file where either part may be omitted.

    Returns ``{"communities": {c: Matching}, "society": Matching or None}``.
    """
    doc = json.loads(_read_text(source))
    _check_keys(doc, [], ["format_version", "communities", "society"])
    communities = {int(c): matching_from_list(p) for c, p in doc.get("communities", {}).items()}
    society = matching_from_list(doc["society"]) if "society" in doc else None
    return {"communities": communities, "society": society}


def write_scheme(scheme: MatchingScheme, destination: PathOrFile) -> None:
    _write_text(_dump(scheme_to_dict(scheme)), destination)


# -- reports -----------------------------------------------------------------


def report_to_dict(report: GainsReport, scheme: MatchingScheme) -> Dict[str, Any]:
    rows = []
    for a, (raw, pct) in sorted(report.per_agent.items()):
        rows.append(
            {
                "agent": str(a),
                "pre_partner": str(scheme.before(a)),
                "post_partner": str(scheme.after(a)),
                "raw_gain": raw,
                "percentile_gain": format_fraction(pct),
            }
        )
    return {
        "format_version": FORMAT_VERSION,
        "kappa": report.kappa,
        "n": report.n,
        "agents": rows,
        "total_raw": report.total_raw,
        "Gamma": format_fraction(report.Gamma),
        "Gamma_bar": format_fraction(report.Gamma_bar),
        "gainers": report.gainers,
        "losers": report.losers,
        "unchanged": report.unchanged,
    }


def write_report(report: GainsReport, scheme: MatchingScheme, destination: PathOrFile) -> None:
    _write_text(_dump(report_to_dict(report, scheme)), destination)


def csv_row(
    report: GainsReport,
    seed_or_family: Union[int, str],
    bound_ok: bool,
    formula_match: Union[bool, None] = None,
) -> Dict[str, Any]:
    return {
        "kappa": report.kappa,
        "n": report.n,
        "seed_or_family": seed_or_family,
        "Gamma_bar_num": report.Gamma_bar.numerator,
        "Gamma_bar_den": report.Gamma_bar.denominator,
        "gainers": report.gainers,
        "losers": report.losers,
        "unchanged": report.unchanged,
        "bound_ok": str(bound_ok).lower(),
        "formula_match": "" if formula_match is None else str(formula_match).lower(),
    }


def dumps_csv(rows: Sequence[Mapping[str, Any]]) -> str:
    buf = _io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=CSV_COLUMNS, lineterminator="\n")
    writer.writeheader()
    writer.writerows(rows)
    return buf.getvalue()


def write_csv(rows: Sequence[Mapping[str, Any]], destination: PathOrFile) -> None:
    _write_text(dumps_csv(rows), destination)

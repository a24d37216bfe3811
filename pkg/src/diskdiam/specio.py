"""Function-spec documents: the JSON input format of the CLI.

A document is an object with

  kind         "polynomial" | "moebius" | "extremal-lft" | "schur-extremal"
               | "composition"
  params       kind-specific parameters; complex numbers are [re, im] pairs
  truncation   optional series order override
  eval_radius  optional certified-radius request
  coefficients optional explicit series override ([re, im] pairs)

The coefficients override pins the stored series (e.g. for regression specs)
while keeping the kind-level provenance; `verify-all` then doubles as a
consistency check, since a series inconsistent with the declared family
violates the theorem suite.  Parse errors carry the JSON path of the offender.
"""

from __future__ import annotations

import json

import numpy as np

from .errors import SpecFormatError
from .series import (
    AnalyticFunction,
    EVAL_RADIUS_CAP,
    MoebiusMap,
    compose_moebius,
    from_coefficients,
    make_extremal_lft,
    make_schur_extremal,
)

KINDS = ("polynomial", "moebius", "extremal-lft", "schur-extremal", "composition")


def _expect(obj, typ, path, what):
    if not isinstance(obj, typ):
        raise SpecFormatError(f"expected {what}, got {type(obj).__name__}", path)
    return obj


def _parse_complex(obj, path):
    if isinstance(obj, (int, float)) and not isinstance(obj, bool):
        raise SpecFormatError("complex numbers must be [re, im] pairs", path)
    _expect(obj, list, path, "an [re, im] pair")
    if len(obj) != 2:
        raise SpecFormatError(f"expected 2 entries, got {len(obj)}", path)
    for i, part in enumerate(obj):
        if not isinstance(part, (int, float)) or isinstance(part, bool):
            raise SpecFormatError("entries must be numbers", f"{path}[{i}]")
    return complex(obj[0], obj[1])


def _parse_complex_list(obj, path):
    _expect(obj, list, path, "a list of [re, im] pairs")
    if not obj:
        raise SpecFormatError("list must be nonempty", path)
    return np.asarray([_parse_complex(v, f"{path}[{i}]") for i, v in enumerate(obj)])


def _get(params, key, path, *, default=_expect):
    if key not in params:
        if default is _expect:
            raise SpecFormatError(f"missing required key {key!r}", path)
        return default
    return params[key]


def _parse_moebius(params, path) -> MoebiusMap:
    _expect(params, dict, path, "a parameter object")
    xi = _parse_complex(_get(params, "xi", path), f"{path}.xi")
    eta = _parse_complex(_get(params, "eta", path), f"{path}.eta")
    scale = params.get("scale")
    shift = params.get("shift")
    scale = 1.0 if scale is None else _parse_complex(scale, f"{path}.scale")
    shift = 0.0 if shift is None else _parse_complex(shift, f"{path}.shift")
    try:
        return MoebiusMap(xi=xi, eta=eta, scale=scale, shift=shift)
    except ValueError as exc:
        raise SpecFormatError(str(exc), path) from exc


def parse_function_spec(doc, path: str = "$") -> AnalyticFunction:
    """Build the function described by a parsed JSON document."""
    _expect(doc, dict, path, "a spec object")
    kind = _get(doc, "kind", path)
    if kind not in KINDS:
        raise SpecFormatError(f"unknown kind {kind!r}; expected one of {KINDS}", f"{path}.kind")
    params = _expect(_get(doc, "params", path), dict, f"{path}.params", "a parameter object")
    truncation = doc.get("truncation")
    if truncation is not None and (not isinstance(truncation, int) or truncation < 1):
        raise SpecFormatError("truncation must be a positive integer", f"{path}.truncation")
    eval_radius = doc.get("eval_radius", EVAL_RADIUS_CAP)
    if not isinstance(eval_radius, (int, float)) or not (0.0 < eval_radius <= 1.0):
        raise SpecFormatError("eval_radius must lie in (0, 1]", f"{path}.eval_radius")

    ppath = f"{path}.params"
    try:
        if kind == "polynomial":
            coeffs = _parse_complex_list(_get(params, "coefficients", ppath), f"{ppath}.coefficients")
            f = from_coefficients(coeffs, eval_radius)
        elif kind == "moebius":
            f = _parse_moebius(params, ppath).to_series(truncation, eval_radius)
        elif kind == "extremal-lft":
            f = make_extremal_lft(
                _parse_complex(_get(params, "a", ppath), f"{ppath}.a"),
                _parse_complex(_get(params, "b", ppath), f"{ppath}.b"),
                _parse_complex(_get(params, "c", ppath), f"{ppath}.c"),
                eval_radius,
            )
        elif kind == "schur-extremal":
            b = params.get("b")
            f = make_schur_extremal(
                _parse_complex(_get(params, "a", ppath), f"{ppath}.a"),
                0.0 if b is None else _parse_complex(b, f"{ppath}.b"),
                eval_radius,
            )
        else:  # composition
            inner = parse_function_spec(_get(params, "f", ppath), f"{ppath}.f")
            moebius = _parse_moebius(_get(params, "map", ppath), f"{ppath}.map")
            f = compose_moebius(inner, moebius, truncation)
    except SpecFormatError:
        raise
    except ValueError as exc:
        raise SpecFormatError(str(exc), ppath) from exc

    if "coefficients" in doc and kind != "polynomial":
        coeffs = _parse_complex_list(doc["coefficients"], f"{path}.coefficients")
        f = AnalyticFunction(
            coeffs, f.eval_radius, f.provenance_tag, f.known_diameter, f.family_params
        )
    return f


def load_function_spec(source) -> AnalyticFunction:
    """Parse a spec from a dict, a JSON string, or an open file object."""
    if isinstance(source, dict):
        return parse_function_spec(source)
    if hasattr(source, "read"):
        text = source.read()
    else:
        text = source
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SpecFormatError(f"invalid JSON at line {exc.lineno} column {exc.colno}: {exc.msg}") from exc
    return parse_function_spec(doc)


def dump_function_spec(kind: str, params: dict, *, truncation=None, coefficients=None) -> dict:
    """Assemble a spec document; complex values are emitted as [re, im]."""

    def conv(v):
        if isinstance(v, complex):
            return [v.real, v.imag]
        if isinstance(v, (int, float)) and not isinstance(v, bool):
            return [float(v), 0.0]
        if isinstance(v, dict):
            return {k: conv(x) for k, x in v.items()}
        if isinstance(v, (list, tuple, np.ndarray)):
            return [conv(x) for x in v]
        return v

    if kind == "composition":
        converted = {"f": params["f"], "map": conv(params["map"])}
    else:
        converted = conv(params)
    doc = {"kind": kind, "params": converted}
    if truncation is not None:
        doc["truncation"] = int(truncation)
    if coefficients is not None:
        doc["coefficients"] = [[complex(c).real, complex(c).imag] for c in coefficients]
    return doc

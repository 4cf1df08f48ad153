"""Canonical certificate files.

Certificates are JSON documents with sorted keys, compact separators and
decimal-string big integers, so serialization is byte-deterministic and safe
for word-size-limited readers.  Parsing validates the whole document: schema
shape, declared format version, field data, coefficient normal forms, matrix
membership and canonical term order each fail with a distinct error type.
"""

from __future__ import annotations

import json
import re

from .errors import (
    CertificateInvariantError,
    CertificateSchemaError,
    CertificateVersionError,
    SizeGuardError,
)
from .gf import FieldSpec
from .matrices import decode_key, encode_key, mat_det
from .rings import CyclotomicValue, RationalValue
from .witness import Certificate, _term_sort_key

FORMAT = "fullwit-cert/1"

_DECIMAL = re.compile(r"-?(0|[1-9][0-9]*)\Z")

_TOP_KEYS = {"format", "n", "field", "coeff_kind", "compressed", "terms", "meta"}


def _coeff_to_json(kind: str, c):
    if kind == "cyclotomic":
        return {"num": [str(x) for x in c.num], "den_exp": c.den_exp}
    return {"num": str(c.num), "den_exp": c.den_exp}


def _int_from_decimal(text) -> int:
    if not isinstance(text, str) or not _DECIMAL.match(text) or text == "-0":
        raise CertificateSchemaError(f"{text!r} is not a canonical decimal string")
    return int(text)


def serialize(cert: Certificate) -> bytes:
    spec = cert.spec
    terms = []
    for c, gk, hk in cert.terms:
        terms.append(
            {
                "r": _coeff_to_json(cert.coeff_kind, c),
                "g": [list(row) for row in decode_key(spec, cert.n, gk)],
                "h": [list(row) for row in decode_key(spec, cert.n, hk)],
            }
        )
    doc = {
        "format": FORMAT,
        "n": cert.n,
        "field": {"p": spec.p, "k": spec.k, "modulus": list(spec.modulus)},
        "coeff_kind": cert.coeff_kind,
        "compressed": cert.compressed,
        "terms": terms,
        "meta": {
            "chi0": cert.chi0,
            "terms_per_level": {str(k): v for k, v in sorted(cert.level_terms.items())},
        },
    }
    return (json.dumps(doc, sort_keys=True, separators=(",", ":")) + "\n").encode("ascii")


def _expect(cond: bool, message: str, error=CertificateSchemaError) -> None:
    if not cond:
        raise error(message)


def _parse_matrix(raw, n: int, spec: FieldSpec) -> int:
    _expect(isinstance(raw, list) and len(raw) == n, "matrix must have n rows")
    rows = []
    for row in raw:
        _expect(isinstance(row, list) and len(row) == n, "matrix rows must have n entries")
        for x in row:
            _expect(isinstance(x, int) and not isinstance(x, bool), "entries must be integers")
            _expect(0 <= x < spec.q, f"entry {x} outside [0, {spec.q})", CertificateInvariantError)
        rows.append(tuple(row))
    mat = tuple(rows)
    _expect(
        mat[-1] == (0,) * (n - 1) + (1,),
        "term matrices must fix the last coordinate (last row 0...0 1)",
        CertificateInvariantError,
    )
    _expect(
        mat_det(spec, mat) == 1,
        "term matrices must have determinant 1",
        CertificateInvariantError,
    )
    return encode_key(spec, mat)


def _parse_coeff(raw, kind: str, spec: FieldSpec):
    _expect(isinstance(raw, dict) and set(raw) == {"num", "den_exp"}, "bad coefficient object")
    den = raw["den_exp"]
    _expect(isinstance(den, int) and not isinstance(den, bool) and den >= 0, "bad den_exp")
    if kind == "cyclotomic":
        nums = raw["num"]
        _expect(isinstance(nums, list), "cyclotomic num must be a list")
        _expect(
            len(nums) == spec.p - 1,
            f"cyclotomic num must have length p-1 = {spec.p - 1}",
            CertificateInvariantError,
        )
        value = CyclotomicValue(tuple(_int_from_decimal(x) for x in nums), den)
        normalized = den == 0 or any(x % spec.p for x in value.num)
        zero = all(x == 0 for x in value.num)
    else:
        value = RationalValue(_int_from_decimal(raw["num"]), den)
        normalized = den == 0 or value.num % spec.p != 0
        zero = value.num == 0
    _expect(normalized, "coefficient is not in normal form", CertificateInvariantError)
    _expect(not zero, "zero coefficients are not stored", CertificateInvariantError)
    return value


def parse(data: bytes | str) -> Certificate:
    if isinstance(data, bytes):
        try:
            data = data.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise CertificateSchemaError("certificate is not valid UTF-8") from exc
    try:
        doc = json.loads(data)
    except json.JSONDecodeError as exc:
        raise CertificateSchemaError(f"certificate is not valid JSON: {exc}") from exc
    _expect(isinstance(doc, dict), "top level must be an object")
    _expect(set(doc) == _TOP_KEYS, f"top-level keys must be exactly {sorted(_TOP_KEYS)}")
    _expect(isinstance(doc["format"], str), "format must be a string")
    if doc["format"] != FORMAT:
        raise CertificateVersionError(
            f"unsupported certificate format {doc['format']!r}; this reader supports {FORMAT}"
        )

    n = doc["n"]
    _expect(isinstance(n, int) and not isinstance(n, bool), "n must be an integer")
    _expect(n >= 1, "n must be positive", CertificateInvariantError)

    raw_field = doc["field"]
    _expect(
        isinstance(raw_field, dict) and set(raw_field) == {"p", "k", "modulus"},
        "field must carry exactly p, k, modulus",
    )
    _expect(
        all(isinstance(raw_field[key], int) for key in ("p", "k"))
        and isinstance(raw_field["modulus"], list)
        and all(isinstance(c, int) for c in raw_field["modulus"]),
        "field entries must be integers",
    )
    try:
        spec = FieldSpec(raw_field["p"], raw_field["k"], tuple(raw_field["modulus"]))
    except (ValueError, IndexError, SizeGuardError) as exc:
        raise CertificateInvariantError(f"bad field description: {exc}") from exc

    kind = doc["coeff_kind"]
    _expect(kind in ("cyclotomic", "rational"), "coeff_kind must be cyclotomic or rational")
    compressed = doc["compressed"]
    _expect(isinstance(compressed, bool), "compressed must be a boolean")

    raw_meta = doc["meta"]
    _expect(
        isinstance(raw_meta, dict) and set(raw_meta) == {"chi0", "terms_per_level"},
        "meta must carry exactly chi0 and terms_per_level",
    )
    chi0 = raw_meta["chi0"]
    _expect(isinstance(chi0, int) and not isinstance(chi0, bool), "chi0 must be an integer")
    _expect(1 <= chi0 < spec.q, "chi0 must be a nonzero field code", CertificateInvariantError)
    levels = {}
    _expect(isinstance(raw_meta["terms_per_level"], dict), "terms_per_level must be an object")
    for key, value in raw_meta["terms_per_level"].items():
        _expect(isinstance(key, str) and key.isdigit(), "level keys must be digit strings")
        _expect(
            isinstance(value, int) and not isinstance(value, bool) and value > 0,
            "level counts must be positive integers",
        )
        levels[int(key)] = value

    raw_terms = doc["terms"]
    _expect(isinstance(raw_terms, list), "terms must be a list")
    _expect(len(raw_terms) > 0, "certificates must have at least one term", CertificateInvariantError)
    terms = []
    for raw in raw_terms:
        _expect(isinstance(raw, dict) and set(raw) == {"r", "g", "h"}, "bad term object")
        gk = _parse_matrix(raw["g"], n, spec)
        hk = _parse_matrix(raw["h"], n, spec)
        terms.append((_parse_coeff(raw["r"], kind, spec), gk, hk))

    keys = [_term_sort_key(t) for t in terms]
    _expect(keys == sorted(keys), "terms are not in canonical order", CertificateInvariantError)
    if compressed:
        pairs = [(gk, hk) for _, gk, hk in terms]
        _expect(
            len(set(pairs)) == len(pairs),
            "compressed certificates must not repeat (g, h) pairs",
            CertificateInvariantError,
        )

    return Certificate(
        n=n,
        spec=spec,
        coeff_kind=kind,
        compressed=compressed,
        terms=terms,
        level_terms=levels,
        chi0=chi0,
    )


def write_certificate(cert: Certificate, path) -> None:
    with open(path, "wb") as handle:
        handle.write(serialize(cert))


def read_certificate(path) -> Certificate:
    with open(path, "rb") as handle:
        return parse(handle.read())

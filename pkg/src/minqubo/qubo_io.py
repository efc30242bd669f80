"""Text formats: QUBO export/import and the cubic polynomial input format."""

from __future__ import annotations

import json

import numpy as np

from .errors import DegreeTooHigh, MalformedLine, UnsupportedFormat
from .poly import Polynomial
from .quadratize import QuboModel

FORMATS = ("qubo", "json")


def _entries(model: QuboModel):
    q = model.q
    diag = [(i, i, int(q[i, i])) for i in range(model.size) if q[i, i] != 0]
    rows, cols = np.nonzero(np.triu(q, 1))
    off = [(int(i), int(j), int(q[i, j])) for i, j in zip(rows, cols)]
    return diag, off


def export_qubo(model: QuboModel, fmt: str = "qubo") -> bytes:
    """Serialize a model.

    ``qubo`` is the qbsolv-style text format (0-indexed, diagonal entries
    first) with model metadata carried in ``c`` comment lines; ``json`` is a
    sparse-triple document. Both are read back exactly by :func:`import_qubo`.
    """
    diag, off = _entries(model)
    if fmt == "qubo":
        lines = ["c minqubo model, maximize offset + x^T Q x",
                 f"c offset {model.offset}",
                 f"c penalty_m {model.penalty_m}",
                 f"c num_original {model.num_original}"]
        for i, j in model.aux_pairs:
            lines.append(f"c aux {i} {j}")
        for idx, name in enumerate(model.var_names):
            lines.append(f"c var {idx} {name}")
        for key, value in sorted(model.provenance.items()):
            lines.append(f"c prov {key} {value}")
        lines.append(f"p qubo 0 {model.size} {len(diag)} {len(off)}")
        lines.extend(f"{i} {j} {v}" for i, j, v in diag + off)
        return ("\n".join(lines) + "\n").encode()
    if fmt == "json":
        doc = {
            "size": model.size,
            "offset": model.offset,
            "penalty_m": model.penalty_m,
            "num_original": model.num_original,
            "aux_pairs": [list(p) for p in model.aux_pairs],
            "var_names": list(model.var_names),
            "provenance": dict(model.provenance),
            "entries": [list(e) for e in diag + off],
        }
        return (json.dumps(doc, indent=2, sort_keys=True) + "\n").encode()
    raise UnsupportedFormat(f"unknown format {fmt!r}; expected one of {FORMATS}")


def import_qubo(data: bytes | str, fmt: str = "qubo") -> QuboModel:
    if isinstance(data, bytes):
        data = data.decode()
    if fmt == "json":
        doc = json.loads(data)
        q = np.zeros((doc["size"], doc["size"]), dtype=np.int64)
        for i, j, v in doc["entries"]:
            q[i, j] = v
        return QuboModel(q=q, offset=doc["offset"], penalty_m=doc["penalty_m"],
                         var_names=tuple(doc["var_names"]), num_original=doc["num_original"],
                         aux_pairs=tuple(tuple(p) for p in doc["aux_pairs"]),
                         provenance=doc["provenance"])
    if fmt != "qubo":
        raise UnsupportedFormat(f"unknown format {fmt!r}; expected one of {FORMATS}")

    meta = {"offset": 0, "penalty_m": 1, "num_original": None}
    aux, names, prov = [], {}, {}
    q = None
    for lineno, raw in enumerate(data.splitlines(), 1):
        parts = raw.split(maxsplit=3) if raw.startswith("c ") else raw.split()
        if not parts:
            continue
        if parts[0] == "c":
            if len(parts) < 2:
                continue
            tag = parts[1]
            if tag in meta and len(parts) >= 3:
                meta[tag] = int(parts[2])
            elif tag == "aux":
                i, j = parts[2], parts[3]
                aux.append((int(i), int(j)))
            elif tag == "var":
                names[int(parts[2])] = parts[3]
            elif tag == "prov":
                key, _, value = raw.split(maxsplit=2)[2].partition(" ")
                prov[key] = value
            continue
        if parts[0] == "p":
            if len(parts) != 6 or parts[1] != "qubo":
                raise MalformedLine(f"line {lineno}: bad problem line {raw!r}")
            size = int(parts[3])
            q = np.zeros((size, size), dtype=np.int64)
            continue
        if q is None or len(parts) != 3:
            raise MalformedLine(f"line {lineno}: unexpected {raw!r}")
        i, j, v = (int(p) for p in parts)
        q[min(i, j), max(i, j)] += v
    if q is None:
        raise MalformedLine("missing 'p qubo' line")
    var_names = tuple(names[i] for i in range(q.shape[0])) if names else ()
    return QuboModel(q=q, offset=meta["offset"], penalty_m=meta["penalty_m"], var_names=var_names,
                     num_original=meta["num_original"], aux_pairs=tuple(aux), provenance=prov)


def parse_cubic_poly(text: str | bytes) -> Polynomial:
    """Read ``<coefficient> [<var> [<var> [<var>]]]`` lines into a polynomial.

    ``#`` starts a comment. Repeated monomials are summed and x*x reduces to x.
    """
    if isinstance(text, bytes):
        text = text.decode()
    terms = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            coef, *variables = (int(tok) for tok in line.split())
        except ValueError:
            raise MalformedLine(f"line {lineno}: expected integers, got {raw!r}") from None
        if any(v < 1 for v in variables):
            raise MalformedLine(f"line {lineno}: variable indices must be >= 1")
        if len(set(variables)) > 3:
            raise DegreeTooHigh(f"line {lineno}: term of degree {len(set(variables))}")
        terms.append((tuple(variables), coef))
    return Polynomial(terms)

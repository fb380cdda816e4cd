"""On-disk JSON cache of Kazhdan-Lusztig memo tables.

The cache is a single JSON document::

    {"schema_version": 1, "system_hash": "...", "checksum": "...",
     "kl": {"<x>": {"<y>": {"<exp>": coeff, ...}, ...}, ...}}

keyed by a content hash of the Coxeter matrix and generator order.  A cache
that fails to parse, has another schema version or system hash, or whose
checksum does not match its ``kl`` section is ignored with a warning.
"""

from __future__ import annotations

import hashlib
import json
import logging
import os
import tempfile
from pathlib import Path

from .hecke import HeckeAlgebra, HeckeElt
from .laurent import LaurentPoly

SCHEMA_VERSION = 1

log = logging.getLogger(__name__)


def _key(x) -> str:
    return str(x)


def _checksum(kl: dict) -> str:
    blob = json.dumps(kl, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(blob.encode()).hexdigest()


def dump_memo(hecke: HeckeAlgebra) -> dict:
    kl = {}
    for x, elt in hecke.kl_memo().items():
        kl[_key(x)] = {_key(y): p.to_json() for y, p in elt.terms.items()}
    return {
        "schema_version": SCHEMA_VERSION,
        "system_hash": hecke.system.fingerprint(),
        "checksum": _checksum(kl),
        "kl": kl,
    }


def cache_store(hecke: HeckeAlgebra, path: str | Path) -> bool:
    """Write the KL memo table to ``path``; returns False (with a warning) on I/O errors."""
    path = Path(path)
    text = json.dumps(dump_memo(hecke), sort_keys=True, indent=1) + "\n"
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=path.name, suffix=".tmp")
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except OSError as exc:
        log.warning("could not write cache %s: %s", path, exc)
        return False
    return True


def cache_load(hecke: HeckeAlgebra, path: str | Path) -> bool:
    """Load a cache into ``hecke``'s memo table; returns whether it was used."""
    path = Path(path)
    if not path.exists():
        return False
    try:
        doc = json.loads(path.read_text())
    except (OSError, UnicodeDecodeError, json.JSONDecodeError) as exc:
        log.warning("ignoring unreadable cache %s: %s", path, exc)
        return False
    if not isinstance(doc, dict) or doc.get("schema_version") != SCHEMA_VERSION:
        log.warning("ignoring cache %s: unsupported schema version", path)
        return False
    if doc.get("system_hash") != hecke.system.fingerprint():
        log.warning("ignoring cache %s: it belongs to a different Coxeter system", path)
        return False
    kl = doc.get("kl")
    if not isinstance(kl, dict) or doc.get("checksum") != _checksum(kl):
        log.warning("ignoring cache %s: checksum mismatch", path)
        return False
    W = hecke.system
    memo = {}
    try:
        for xk, col in kl.items():
            x = W.parse_word(xk)
            if _key(x) != xk:
                raise ValueError(f"key {xk!r} is not in normal form")
            terms = {}
            for yk, pj in col.items():
                y = W.parse_word(yk)
                if _key(y) != yk:
                    raise ValueError(f"key {yk!r} is not in normal form")
                terms[y] = LaurentPoly.from_json(pj)
            if terms.get(x) != 1:
                raise ValueError(f"entry for {xk} is not unitriangular")
            memo[x] = HeckeElt(hecke, terms)
    except (ValueError, KeyError, TypeError) as exc:
        log.warning("ignoring malformed cache %s: %s", path, exc)
        return False
    hecke.load_memo(memo)
    return True

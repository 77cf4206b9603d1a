"""JSON documents for key material, aliases and reduced keys.

Every document carries ``format_version``, ``p`` and ``n``.  GF(p) scalars
are plain integers, matrices are row-major, and K-elements use the
little-endian digit text of :meth:`GF.to_text`.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any

import numpy as np

from .alias import AliasKey, enumerate_monomials
from .errors import FieldMismatch
from .forms import ReducedKey
from .gfext import GF, Basis, FieldParams, get_field
from .hfe import AffineMap, HfeParams, PrivateKey, PublicKey
from .sparsepoly import SparsePoly

FORMAT_VERSION = 1


def _header(p: int, n: int) -> dict[str, Any]:
    return {"format_version": FORMAT_VERSION, "p": p, "n": n}


def _check_header(doc: dict, kind: str) -> None:
    if doc.get("format_version") != FORMAT_VERSION:
        raise ValueError(f"{kind}: unsupported format_version {doc.get('format_version')!r}")
    for key in ("p", "n"):
        if key not in doc:
            raise ValueError(f"{kind}: missing {key!r}")


def _field_from(doc: dict) -> GF:
    if "modulus" in doc:
        fp = FieldParams(int(doc["p"]), int(doc["n"]), tuple(doc["modulus"]))
    else:
        fp = FieldParams.default(int(doc["p"]), int(doc["n"]))
    return get_field(fp)


def private_to_json(sk: PrivateKey) -> dict:
    F = sk.field
    doc = _header(F.p, F.n)
    doc.update({
        "params": {"field": sk.params.field.to_json(), "d": sk.params.d, "seed": sk.params.seed},
        "basis": sk.basis.to_json(),
        "f": sk.f.to_json(),
        "S": sk.S.to_json(),
        "T": sk.T.to_json(),
    })
    return doc


def private_from_json(doc: dict) -> PrivateKey:
    _check_header(doc, "private key")
    prm = doc["params"]
    fp = FieldParams.from_json(prm["field"])
    if (fp.p, fp.n) != (int(doc["p"]), int(doc["n"])):
        raise FieldMismatch("private key header disagrees with its field parameters")
    F = get_field(fp)
    params = HfeParams(fp, int(prm["d"]), int(prm["seed"]))
    basis = Basis(F, np.array(doc["basis"], dtype=np.int64))
    f = SparsePoly.from_json(F, doc["f"])
    return PrivateKey(params, basis, f, AffineMap.from_json(doc["S"], F.p), AffineMap.from_json(doc["T"], F.p))


def public_to_json(pk: PublicKey) -> dict:
    doc = _header(pk.p, pk.n)
    doc.update(pk.to_json())
    return doc


def public_from_json(doc: dict) -> PublicKey:
    _check_header(doc, "public key")
    pk = PublicKey.from_json(doc)
    if len(doc["polys"]) != pk.n:
        raise ValueError("public key must hold exactly n polynomials")
    return pk


def alias_to_json(alias: AliasKey) -> dict:
    return alias.to_json()


def alias_from_json(doc: dict) -> AliasKey:
    _check_header(doc, "alias")
    F = _field_from(doc)
    A = SparsePoly.from_json(F, doc["A"])
    return AliasKey(A, int(doc["points_used"]), int(doc["achieved_rank"]), doc["convention"],
                    enumerate_monomials(F.q, F.n))


def reduced_to_json(rk: ReducedKey, alias_constant: int | None = None) -> dict:
    return rk.to_json(alias_constant)


def reduced_from_json(doc: dict) -> ReducedKey:
    _check_header(doc, "reduced key")
    F = _field_from(doc)
    Fp = SparsePoly.from_json(F, doc["F_prime"])
    P = [[F.from_text(x) for x in row] for row in doc["P_total"]]
    r = int(doc["r"])
    block = 2 * r if F.p == 2 else r
    return ReducedKey(Fp, P, r, block, doc.get("provenance", ""))


def dump(doc: dict, path: str | Path) -> None:
    Path(path).write_text(json.dumps(doc, indent=1) + "\n")


def load(path: str | Path) -> dict:
    return json.loads(Path(path).read_text())

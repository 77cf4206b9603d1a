"""The three-variable toy instance over F_8 = F_2[t]/(t^3 + t + 1), as printed data.

The public key, the 7-point evaluation system and the claimed alias are kept
verbatim so the demo checks the printed artifact itself rather than anything
regenerated by keygen.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import linalg
from .alias import CONVENTIONS, convention_bases, recover_alias, verify_alias
from .errors import Inconsistent
from .gfext import GF, FieldParams, get_field
from .hfe import PublicKey
from .sparsepoly import SparsePoly

TOY_MODULUS = (1, 1, 0, 1)

# x1 + x3 + x1x2 + x1x3 + x2x3 ; x3 + x1x3 + x2x3 ; x1 + x2 + x3 + x1x2 + x2x3 + 1
TOY_CONSTANT = [0, 0, 1]
TOY_LINEAR = [[1, 0, 1], [0, 0, 1], [1, 1, 1]]
TOY_QUAD_PAIRS = [[(0, 1), (0, 2), (1, 2)], [(0, 2), (1, 2)], [(0, 1), (1, 2)]]

TOY_POINTS = ["0", "1", "t", "t+1", "t^2", "t^2+1", "t^2+t"]

# unknowns a..g multiply x^0..x^6
TOY_SYSTEM = [
    (["1", "0", "0", "0", "0", "0", "0"], "1"),
    (["1", "1", "1", "1", "1", "1", "1"], "t^2"),
    (["1", "t", "t^2", "t+1", "t^2+t", "t^2+t+1", "t^2+1"], "0"),
    (["1", "t+1", "t^2+1", "t^2", "t^2+t+1", "t", "t^2+1"], "0"),
    (["1", "t^2", "t^2+t", "t^2+1", "t", "t+1", "t^2+t+1"], "t^2"),
    (["1", "t^2+1", "t^2+t+1", "t^2+t", "t+1", "t^2", "t"], "t^2+1"),
    (["1", "t^2+t", "t", "t^2+t+1", "t^2", "t^2+1", "t+1"], "1"),
]

TOY_ALIAS = {6: "t^2", 5: "t^2+1", 4: "t^2+t+1", 3: "t^2+1", 2: "t^2+t", 0: "1"}


def toy_field() -> GF:
    return get_field(FieldParams(2, 3, TOY_MODULUS))


def toy_public_key() -> PublicKey:
    quad = np.zeros((3, 3, 3), dtype=np.int64)
    for k, pairs in enumerate(TOY_QUAD_PAIRS):
        for i, j in pairs:
            quad[k, i, j] = 1
    return PublicKey(2, 3, np.array(TOY_CONSTANT), np.array(TOY_LINEAR), quad)


def printed_alias(F: GF | None = None) -> SparsePoly:
    F = F or toy_field()
    return SparsePoly(F, {e: F.parse(c) for e, c in TOY_ALIAS.items()})


def printed_system(F: GF | None = None):
    F = F or toy_field()
    A = [[F.parse(c) for c in row] for row, _ in TOY_SYSTEM]
    b = [F.parse(rhs) for _, rhs in TOY_SYSTEM]
    return A, b


@dataclass
class ToyVerdict:
    system_solution: SparsePoly | None
    system_matches_printed: bool
    matrix_discrepancies: list[tuple[int, int, str, str]]
    rhs_by_convention: dict[str, list[int]]
    aliases: dict[str, SparsePoly]
    matching_conventions: list[str]
    alias_verified: dict[str, bool]
    printed_alias_verified: dict[str, bool]
    lines: list[str] = field(default_factory=list)


def run_toy() -> ToyVerdict:
    F = toy_field()
    pk = toy_public_key()
    target = printed_alias(F)
    A, b = printed_system(F)

    try:
        sol = linalg.solve(F, A, b, backend="generic")
        sys_poly = SparsePoly(F, dict(enumerate(sol.solution))) if sol.rank == 7 else None
    except Inconsistent:
        sys_poly = None
    sys_ok = sys_poly == target

    # printed coefficient rows versus the true powers x^e of the printed points
    bad = []
    for r, p in enumerate(TOY_POINTS):
        x = F.parse(p)
        for e in range(7):
            want = F.pow(x, e)
            if A[r][e] != want:
                bad.append((r + 1, e, F.format(A[r][e]), F.format(want)))

    aliases, rhs, verified, printed_ok, matches = {}, {}, {}, {}, []
    pts = [F.parse(p) for p in TOY_POINTS]
    for conv in CONVENTIONS:
        ib, ob = convention_bases(F, conv)
        rhs[conv] = ob.encode_many(pk.evaluate_many(ib.decode_many(pts)))
        al = recover_alias(pk, F, convention=conv, schedule="counting", verify=False)
        aliases[conv] = al.A
        verified[conv] = verify_alias(al, pk)
        printed_ok[conv] = verify_alias(_as_alias(al, target), pk)
        if al.A == target:
            matches.append(conv)

    lines = []
    if sys_ok and not bad:
        lines.append("system-consistency: PASS - the printed 7x7 system solves to the printed alias")
    else:
        msg = "system-consistency: DISCREPANCY -"
        msg += " printed system solves to " + (repr(sys_poly) if sys_poly is not None else "no unique solution")
        msg += "; matches printed alias" if sys_ok else "; differs from printed alias"
        if bad:
            msg += "; coefficient entries that are not x^e: " + ", ".join(
                f"row {r} x^{e} printed {pv} true {tv}" for r, e, pv, tv in bad)
        lines.append(msg)
    printed_rhs = b
    rhs_hits = [c for c in CONVENTIONS if rhs[c] == printed_rhs]
    rhs_off = {c: [i + 1 for i, (u, w) in enumerate(zip(rhs[c], printed_rhs)) if u != w] for c in CONVENTIONS}
    if matches:
        lines.append(f"convention-match: PASS - recovered alias equals the printed one under {', '.join(matches)}")
    else:
        lines.append("convention-match: DISCREPANCY - no coordinate convention reproduces the printed alias; "
                     f"printed right-hand sides agree with conventions [{', '.join(rhs_hits) or 'none'}]"
                     " (mismatched rows " + ", ".join(f"{c}: {rhs_off[c]}" for c in CONVENTIONS) + "); "
                     + "; ".join(f"{c}: {aliases[c]!r}" for c in CONVENTIONS))
    ok_convs = [c for c in CONVENTIONS if verified[c]]
    pr = [c for c in CONVENTIONS if printed_ok[c]]
    lines.append(f"alias-verification: recovered aliases agree with the public key on all of F_8 under "
                 f"[{', '.join(ok_convs)}]; printed alias agrees under [{', '.join(pr) or 'none'}]")
    return ToyVerdict(sys_poly, sys_ok, bad, rhs, aliases, matches, verified, printed_ok, lines)


def _as_alias(al, A: SparsePoly):
    from .alias import AliasKey

    return AliasKey(A, al.points_used, al.achieved_rank, al.basis_convention, al.monomials)

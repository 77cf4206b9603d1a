"""Alias-key recovery for HFE: interpolate S o f o T from the public key, reduce it, solve."""

from .alias import AliasKey, enumerate_monomials, recover_alias, verify_alias
from .attack import run_attack
from .forms import ReducedKey, reduce_alias, solve_via_reduction
from .gfext import GF, Basis, FieldParams, find_irreducible, get_field
from .hfe import HfeParams, PrivateKey, PublicKey, decrypt, encrypt, keygen, symbolic_alias
from .rootfind import roots_bruteforce, roots_lowdegree
from .sparsepoly import SparsePoly

__all__ = [
    "AliasKey", "Basis", "FieldParams", "GF", "HfeParams", "PrivateKey", "PublicKey", "ReducedKey",
    "SparsePoly", "decrypt", "encrypt", "enumerate_monomials", "find_irreducible", "get_field", "keygen",
    "recover_alias", "reduce_alias", "roots_bruteforce", "roots_lowdegree", "run_attack",
    "solve_via_reduction", "symbolic_alias", "verify_alias",
]

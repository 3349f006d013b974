"""Decision procedures for the defining identities of n-ary algebras.

Every checker returns either :data:`PASS` (a :class:`Passed` value) or the
first failing :class:`Witness` in lexicographic order of its basis tuple.
Witness tuples are flat: for the Jacobi-type identities the first ``n``
entries are the ``u`` arguments and the remaining ``n - 1`` the ``v``
arguments.  :func:`evaluate` recomputes the defect of any witness
straight from the definition, independently of the enumeration shortcuts
used by the checkers.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Sequence

from . import linalg
from .errors import ArityMismatch, InternalInconsistency, NotSkew, PermutationError
from .group_algebra import Permutation, shuffles
from .linalg import ZERO, Vector
from .product import NAryProduct, Symmetry, bracket, make_skew_product, permutation_parity


@dataclass(frozen=True)
class Passed:
    vacuous: bool = False

    ok = True

    def __str__(self) -> str:
        return "PASS (vacuous)" if self.vacuous else "PASS"


PASS = Passed()
VACUOUS = Passed(vacuous=True)


@dataclass(frozen=True)
class Witness:
    identity_name: str
    basis_tuple: tuple[int, ...]
    defect: Vector
    slot: int | None = None
    sigma: tuple[int, ...] | None = None

    ok = False

    def __post_init__(self):
        if not any(self.defect):
            raise ValueError("a witness needs a nonzero defect")

    def __str__(self) -> str:
        extra = f" q={self.slot}" if self.slot is not None else ""
        defect = "(" + ", ".join(str(a) for a in self.defect) + ")"
        return f"WITNESS {self.identity_name} tuple={self.basis_tuple}{extra} defect={defect}"


# ---------------------------------------------------------------------------
# pointwise evaluators (definitions, on arbitrary vectors)
# ---------------------------------------------------------------------------


def _sub_list(acc: list, v: Sequence) -> None:
    linalg.axpy(acc, -1, v)


def commutative_defect(prod: NAryProduct, xs: Sequence[Vector]) -> Vector:
    n = prod.arity
    acc = [ZERO] * prod.dim
    for perm in itertools.permutations(range(n)):
        linalg.axpy(acc, permutation_parity(perm), bracket(prod, [xs[i] for i in perm]))
    return tuple(acc)


def filippov_defect(prod: NAryProduct, xs: Sequence[Vector]) -> Vector:
    """[[u_1..u_n], v_1..v_{n-1}] - sum_i [u_1, .., [u_i, v_1..v_{n-1}], .., u_n]."""
    n = prod.arity
    u, v = list(xs[:n]), list(xs[n:])
    acc = list(bracket(prod, [bracket(prod, u)] + v))
    for i in range(n):
        args = list(u)
        args[i] = bracket(prod, [u[i]] + v)
        _sub_list(acc, bracket(prod, args))
    return tuple(acc)


def leibniz_defect(prod: NAryProduct, xs: Sequence[Vector]) -> Vector:
    """mu(v, mu(u)) - sum_i mu(u_1, .., mu(v, u_i), .., u_n)."""
    n = prod.arity
    u, v = list(xs[:n]), list(xs[n:])
    acc = list(bracket(prod, v + [bracket(prod, u)]))
    for i in range(n):
        args = list(u)
        args[i] = bracket(prod, v + [u[i]])
        _sub_list(acc, bracket(prod, args))
    return tuple(acc)


def sh_jacobi_defect(prod: NAryProduct, xs: Sequence[Vector]) -> Vector:
    n = prod.arity
    acc = [ZERO] * prod.dim
    for sigma in shuffles(n, n - 1):
        ys = [xs[sigma(k) - 1] for k in range(1, 2 * n)]
        linalg.axpy(acc, sigma.sign, bracket(prod, [bracket(prod, ys[:n])] + ys[n:]))
    return tuple(acc)


def _as_perm(sigma, n: int) -> Permutation:
    if sigma is None:
        return Permutation.identity(n)
    if not isinstance(sigma, Permutation):
        sigma = Permutation(tuple(sigma))
    if sigma.degree != n:
        raise PermutationError(f"permutation of {sigma.degree} points for arity {n}")
    return sigma


def _phi(tau: Permutation, ys: Sequence) -> list:
    """Slot k of the result holds ys[tau^{-1}(k)]."""
    inv = tau.inverse()
    return [ys[inv(k) - 1] for k in range(1, tau.degree + 1)]


def _nested(prod: NAryProduct, xs: Sequence[Vector], q: int, twist: Permutation | None = None) -> Vector:
    """mu o (I_q x (mu o Phi_twist) x I_{n-q-1}) applied to xs."""
    n = prod.arity
    inner_args = list(xs[q : q + n])
    if twist is not None:
        inner_args = _phi(twist, inner_args)
    inner = bracket(prod, inner_args)
    return bracket(prod, list(xs[:q]) + [inner] + list(xs[q + n :]))


def partial_assoc_defect(prod: NAryProduct, xs: Sequence[Vector], sigma=None) -> Vector:
    n = prod.arity
    sigma = _as_perm(sigma, n)
    acc = [ZERO] * prod.dim
    for q in range(n):
        sign = (-1) ** (q * (n - 1)) * (-1) ** (n * q * sigma.parity)
        linalg.axpy(acc, sign, _nested(prod, xs, q, sigma ** (n * q)))
    return tuple(acc)


def total_assoc_defect(prod: NAryProduct, xs: Sequence[Vector], q: int, sigma=None) -> Vector:
    n = prod.arity
    sigma = _as_perm(sigma, n)
    return linalg.sub(_nested(prod, xs, 0), _nested(prod, xs, q, sigma ** (n * q)))


def admissible_defect(prod: NAryProduct, xs: Sequence[Vector]) -> Vector:
    """Sign-weighted sum over S_5 of the three bracketings of a ternary product."""
    if prod.arity != 3:
        raise ArityMismatch("3-Lie admissibility needs a ternary product")
    acc = [ZERO] * prod.dim
    for perm in itertools.permutations(range(5)):
        ys = [xs[i] for i in perm]
        sign = permutation_parity(perm)
        for q in range(3):
            linalg.axpy(acc, sign, _nested(prod, ys, q))
    return tuple(acc)


IDENTITIES = (
    "commutative",
    "filippov",
    "n-leibniz",
    "sh-jacobi",
    "partial-assoc",
    "total-assoc",
    "sigma-partial",
    "sigma-total",
    "3lie-admissible",
)


def evaluate(prod: NAryProduct, name: str, basis_tuple: Sequence[int], slot=None, sigma=None) -> Vector:
    """Recompute the defect of identity ``name`` on basis vectors, from the definition."""
    xs = [linalg.basis_vector(prod.dim, i) for i in basis_tuple]
    if name == "commutative":
        return commutative_defect(prod, xs)
    if name == "filippov":
        return filippov_defect(prod, xs)
    if name == "n-leibniz":
        return leibniz_defect(prod, xs)
    if name == "sh-jacobi":
        return sh_jacobi_defect(prod, xs)
    if name == "partial-assoc":
        return partial_assoc_defect(prod, xs)
    if name == "sigma-partial":
        return partial_assoc_defect(prod, xs, sigma)
    if name == "total-assoc":
        return total_assoc_defect(prod, xs, slot)
    if name == "sigma-total":
        return total_assoc_defect(prod, xs, slot, sigma)
    if name == "3lie-admissible":
        return admissible_defect(prod, xs)
    raise KeyError(f"unknown identity {name!r}")


# ---------------------------------------------------------------------------
# sparse machinery for the enumerating checkers
# ---------------------------------------------------------------------------


def _require_skew(prod: NAryProduct, what: str) -> None:
    if not prod.is_skew:
        raise NotSkew(f"{what} is defined for skew products; got symmetry {prod.symmetry}")


def _sparse(v: Vector | None) -> dict[int, object]:
    if v is None:
        return {}
    return {k + 1: a for k, a in enumerate(v) if a}


def _bracket_with(prod: NAryProduct, key: Sequence[int], slot: int, vec: dict) -> dict:
    """mu(e_key with slot replaced by the sparse vector ``vec``), sparse."""
    out: dict[int, object] = {}
    args = list(key)
    for s, c in vec.items():
        args[slot] = s
        b = prod.basis_bracket(args)
        if b is None:
            continue
        for k, a in enumerate(b):
            if a:
                out[k + 1] = out.get(k + 1, ZERO) + c * a
    return out


def _accumulate(acc: dict, vec: dict, c=1) -> None:
    for k, a in vec.items():
        acc[k] = acc.get(k, ZERO) + c * a


def _dense(vec: dict, p: int) -> Vector:
    return tuple(vec.get(k, ZERO) for k in range(1, p + 1))


def _tuples(p: int, size: int, kind: str):
    idx = range(1, p + 1)
    if kind == "increasing":
        return list(itertools.combinations(idx, size))
    if kind == "nondecreasing":
        return list(itertools.combinations_with_replacement(idx, size))
    return list(itertools.product(idx, repeat=size))


def _derivation_defect_scan(prod: NAryProduct, name: str, kind: str, left: bool):
    """Shared scan for the Filippov and n-Leibniz identities.

    For each (n-1)-tuple v the operator D_v (x -> mu(x, v) when ``left`` is
    False, x -> mu(v, x) otherwise) is tabulated once; tuples with D_v = 0
    satisfy the identity trivially.  The identity then reads
    D_v(mu(u)) = sum_i mu(u_1, .., D_v(u_i), .., u_n).
    """
    n, p = prod.arity, prod.dim
    operators = []
    for v in _tuples(p, n - 1, kind):
        images = {}
        for j in range(1, p + 1):
            key = v + (j,) if left else (j,) + v
            img = _sparse(prod.basis_bracket(key))
            if img:
                images[j] = img
        if images:
            operators.append((v, images))
    if not operators:
        return PASS
    for u in _tuples(p, n, kind):
        mu_u = _sparse(prod.basis_bracket(u))
        for v, images in operators:
            acc: dict[int, object] = {}
            for t, c in mu_u.items():
                if t in images:
                    _accumulate(acc, images[t], c)
            for i, ui in enumerate(u):
                if ui in images:
                    _accumulate(acc, _bracket_with(prod, u, i, images[ui]), -1)
            if any(acc.values()):
                return Witness(name, u + v, _dense(acc, p))
    return PASS


# ---------------------------------------------------------------------------
# checkers
# ---------------------------------------------------------------------------


def check_commutative(prod: NAryProduct):
    for key in _tuples(prod.dim, prod.arity, "increasing"):
        d = evaluate(prod, "commutative", key)
        if any(d):
            return Witness("commutative", key, d)
    return PASS


def check_filippov(prod: NAryProduct):
    """Filippov Jacobi identity over increasing u- and v-tuples."""
    _require_skew(prod, "the Filippov identity")
    return _derivation_defect_scan(prod, "filippov", "increasing", left=False)


def check_n_leibniz(prod: NAryProduct):
    """Every adjoint mu(v_1, .., v_{n-1}, .) is a derivation."""
    kind = {Symmetry.SKEW: "increasing", Symmetry.SYMMETRIC: "nondecreasing"}.get(prod.symmetry, "all")
    return _derivation_defect_scan(prod, "n-leibniz", kind, left=True)


def check_sh_jacobi(prod: NAryProduct):
    """Shuffle-summed Jacobi identity on increasing (2n-1)-tuples.

    Vacuous (``Passed(vacuous=True)``) when the dimension is below 2n-1.
    """
    _require_skew(prod, "the sh-Jacobi identity")
    n, p = prod.arity, prod.dim
    m = 2 * n - 1
    if p < m:
        return VACUOUS
    sh = [(s.images, s.sign) for s in shuffles(n, n - 1)]
    for key in itertools.combinations(range(1, p + 1), m):
        acc: dict[int, object] = {}
        for images, sign in sh:
            inner = _sparse(prod.basis_bracket([key[images[k] - 1] for k in range(n)]))
            if not inner:
                continue
            outer = (0,) + tuple(key[images[k] - 1] for k in range(n, m))
            _accumulate(acc, _bracket_with(prod, outer, 0, inner), sign)
        if any(acc.values()):
            return Witness("sh-jacobi", key, _dense(acc, p))
    return PASS


def _assoc_scan(prod: NAryProduct, name: str, evaluator):
    for key in itertools.product(range(1, prod.dim + 1), repeat=2 * prod.arity - 1):
        result = evaluator(key)
        if result is not None:
            return result
    return PASS


def check_partial_assoc(prod: NAryProduct):
    def at(key):
        d = evaluate(prod, "partial-assoc", key)
        return Witness("partial-assoc", key, d) if any(d) else None

    return _assoc_scan(prod, "partial-assoc", at)


def check_total_assoc(prod: NAryProduct):
    def at(key):
        for q in range(1, prod.arity):
            d = evaluate(prod, "total-assoc", key, slot=q)
            if any(d):
                return Witness("total-assoc", key, d, slot=q)
        return None

    return _assoc_scan(prod, "total-assoc", at)


def check_sigma_total_assoc(prod: NAryProduct, sigma):
    sigma = _as_perm(sigma, prod.arity)

    def at(key):
        for q in range(prod.arity):
            d = evaluate(prod, "sigma-total", key, slot=q, sigma=sigma)
            if any(d):
                return Witness("sigma-total", key, d, slot=q, sigma=sigma.images)
        return None

    return _assoc_scan(prod, "sigma-total", at)


def check_sigma_partial_assoc(prod: NAryProduct, sigma):
    sigma = _as_perm(sigma, prod.arity)

    def at(key):
        d = evaluate(prod, "sigma-partial", key, sigma=sigma)
        return Witness("sigma-partial", key, d, sigma=sigma.images) if any(d) else None

    return _assoc_scan(prod, "sigma-partial", at)


def antisymmetrize(prod: NAryProduct) -> NAryProduct:
    """Skew product [x_1..x_n] = sum over S_n of sign * mu(x_s(1), .., x_s(n))."""
    n, p = prod.arity, prod.dim
    perms = [(perm, permutation_parity(perm)) for perm in itertools.permutations(range(n))]
    raw = []
    for key in itertools.combinations(range(1, p + 1), n):
        acc = [ZERO] * p
        for perm, sign in perms:
            v = prod.basis_bracket([key[i] for i in perm])
            if v is not None:
                linalg.axpy(acc, sign, v)
        if any(acc):
            raw.append((key, acc))
    return make_skew_product(n, p, raw)


def check_3lie_admissible(prod: NAryProduct):
    """Ternary 3-Lie admissibility, decided two ways that must agree.

    The explicit S_5 sum and the sh-Jacobi check of the antisymmetrized
    product are both computed; a disagreement raises InternalInconsistency.
    """
    if prod.arity != 3:
        raise ArityMismatch("3-Lie admissibility needs a ternary product")
    via_bracket = check_sh_jacobi(antisymmetrize(prod))
    if prod.dim < 5:
        direct = VACUOUS
    else:
        direct = PASS
        for key in itertools.combinations(range(1, prod.dim + 1), 5):
            d = evaluate(prod, "3lie-admissible", key)
            if any(d):
                direct = Witness("3lie-admissible", key, d)
                break
    if direct.ok != via_bracket.ok or (
        not direct.ok and direct.basis_tuple != via_bracket.basis_tuple
    ):
        raise InternalInconsistency(f"S_5 route gave {direct}, sh-Jacobi route gave {via_bracket}")
    return direct


def run_check(prod: NAryProduct, name: str, sigma=None):
    """Dispatch by identity name (see :data:`IDENTITIES`)."""
    if name == "commutative":
        return check_commutative(prod)
    if name == "filippov":
        return check_filippov(prod)
    if name == "n-leibniz":
        return check_n_leibniz(prod)
    if name == "sh-jacobi":
        return check_sh_jacobi(prod)
    if name == "partial-assoc":
        return check_partial_assoc(prod)
    if name == "total-assoc":
        return check_total_assoc(prod)
    if name in ("sigma-total", "sigma-partial"):
        if sigma is None:
            raise PermutationError(f"{name} needs a permutation")
        if name == "sigma-total":
            return check_sigma_total_assoc(prod, sigma)
        return check_sigma_partial_assoc(prod, sigma)
    if name == "3lie-admissible":
        return check_3lie_admissible(prod)
    raise KeyError(f"unknown identity {name!r}")

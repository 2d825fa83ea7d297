"""Complete absolute-irreducibility decision by lifting at t = 0.

Setting: P(lambda, t) is the spectral curve in t-form, monic in lambda,
and the diagonal entries a_i are pairwise distinct, so

    P(lambda, 0) = (lambda + a_1) * ... * (lambda + a_n)

is squarefree.  Any factorization of P into two monic factors splits this
product, so it selects a subset S of the index set; conversely each
subset determines at most one factorization, recovered order by order in
t from the coprime seed factors.  Scanning all canonical subsets (one per
complementary pair, 2^(n-1) - 1 of them) therefore decides reducibility
outright, and recursion on the two sides produces the complete splitting
into absolutely irreducible factors.

Why the verdict holds over the complex numbers and not merely over the
rationals: the roots of P(., 0) are simple and rational, so each branch
lambda_i(t) is a formal power series with rational coefficients, and any
monic factor of P over C has coefficients that are symmetric functions
of a sub-collection of branches.  Those coefficients are simultaneously
polynomials in t over C and power series in t over Q, hence polynomials
over Q.  A complex factorization is thus already a rational one, and the
subset scan sees it.

Two exact cutoffs keep the scan finite and fast:

* Working order.  A true factor has t-degree at most D = deg_t P, so
  lifting to order D + 1 and truncating recovers it exactly; the final
  acceptance gate is exact polynomial multiplication, nothing numeric.

* Degree bound per side.  Assign weight i + 2j to the monomial
  lambda^i t^j.  The top weight of a product is the sum of top weights,
  and by induction along the minor recurrence every monomial of the
  curve satisfies i + 2j <= n.  A monic-in-lambda factor F of the curve
  therefore has top weight exactly deg_lambda F, which caps its t-degree
  at floor(deg_lambda F / 2).  The formal lift is unique, so if the
  subset carries a true factorization, every correction past a side's
  cap vanishes; the beyond-cap content of the order-k correction is the
  order-k obstruction, and the obstruction sequence is identically zero
  exactly when the subset terminates.  The decision path short-circuits
  at the first nonzero obstruction; the diagnostic entry point runs
  every order and reports the whole profile.

Repeated diagonal entries are rejected, not mishandled: with a repeated
root at t = 0 the seed factors need not be coprime, branches can involve
half-integer powers of t (equivalently, factors odd in w, as in the
constant-diagonal pencil whose curve is lambda^2 - t =
(lambda - w)(lambda + w)), and the subset indexing breaks down.  Callers
route those pencils through the structural mechanisms and the numeric
monodromy fallback.  For the supported pencils the t-form verdict
transfers to the w-form curve: every branch is a series in t = w^2, so
each w-form factor is invariant under w -> -w and descends to t-form.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Iterator, Sequence

from .errors import UnsupportedPencilError
from .exactpoly import BiPoly, T_FORM, UniPoly, to_w_form
from .pencil import JacobiPencil, continuant

IRREDUCIBLE = "Irreducible"
REDUCIBLE = "Reducible"


@dataclass(frozen=True)
class SubsetSplit:
    """Canonical representative of a complementary pair of index subsets.

    ``indices`` is the chosen side, sorted; ``universe`` the full sorted
    index set it splits.  Canonical means the smaller side, with ties
    broken toward the side containing the smallest universe element, so
    1 <= size <= len(universe) // 2 always holds.
    """

    indices: tuple[int, ...]
    universe: tuple[int, ...]

    def __post_init__(self):
        idx = tuple(sorted(self.indices))
        uni = tuple(sorted(self.universe))
        if not set(idx) < set(uni) or not idx:
            raise ValueError("subset must be a non-empty proper part of universe")
        object.__setattr__(self, "indices", idx)
        object.__setattr__(self, "universe", uni)
        if not self.is_canonical:
            raise ValueError(
                f"subset {idx} of {uni} is not canonical; "
                f"use SubsetSplit.canonical"
            )

    @property
    def size(self) -> int:
        return len(self.indices)

    @property
    def complement(self) -> tuple[int, ...]:
        chosen = set(self.indices)
        return tuple(i for i in self.universe if i not in chosen)

    @property
    def is_canonical(self) -> bool:
        m = len(self.universe)
        k = len(self.indices)
        if 2 * k < m:
            return True
        if 2 * k > m:
            return False
        return self.universe[0] in self.indices

    @classmethod
    def canonical(
        cls, indices: Iterable[int], universe: Iterable[int]
    ) -> "SubsetSplit":
        """Build the canonical representative, complementing if needed."""
        uni = tuple(sorted(universe))
        idx = tuple(sorted(indices))
        chosen = set(idx)
        k, m = len(idx), len(uni)
        flip = 2 * k > m or (2 * k == m and uni[0] not in chosen)
        if flip:
            idx = tuple(i for i in uni if i not in chosen)
        return cls(idx, uni)


def canonical_subsets(universe: Sequence[int]) -> Iterator[SubsetSplit]:
    """All canonical subsets in decision order: increasing size, then
    lexicographic.  2^(m-1) - 1 subsets for a size-m universe."""
    uni = tuple(sorted(universe))
    m = len(uni)
    for size in range(1, m // 2 + 1):
        if 2 * size < m:
            for combo in combinations(uni, size):
                yield SubsetSplit(combo, uni)
        else:
            # size == m/2: fix the smallest element to pick one side per pair
            for combo in combinations(uni[1:], size - 1):
                yield SubsetSplit((uni[0],) + combo, uni)


@dataclass(frozen=True)
class LiftState:
    """Outcome of lifting one subset to a working order.

    F and G are t-form polynomials whose layers hold the computed series
    coefficients (not degree-capped); P = F*G holds modulo t^(order+1).
    ``bezout`` is the pair (U, V) with U*F0 + V*G0 = 1 over the seed
    factors.  ``residuals[k-1]`` is the lambda-polynomial coefficient of
    t^k in P - F*G just before the order-k correction (the quantity the
    correction then absorbs)."""

    subset: SubsetSplit
    F: BiPoly
    G: BiPoly
    bezout: tuple[UniPoly, UniPoly]
    order: int
    residuals: tuple[UniPoly, ...]


@dataclass(frozen=True)
class Decision:
    """Verdict of the complete subset scan.

    ``factors_t`` multiply exactly to the input curve and are each
    absolutely irreducible (certified by recursive scan).  When the
    status is Irreducible the tuple has the single entry P itself.
    ``witnesses`` are the subsets whose lifts terminated, in the order
    they fired; ``factor_indices`` gives each factor's diagonal index
    set, aligned with ``factors_t``."""

    status: str
    factors_t: tuple[BiPoly, ...]
    factors_w: tuple[BiPoly, ...]
    witnesses: tuple[SubsetSplit, ...]
    factor_indices: tuple[tuple[int, ...], ...]

    @property
    def reducible(self) -> bool:
        return self.status == REDUCIBLE

    @property
    def factor_degrees(self) -> list[int]:
        return sorted(f.deg_lambda for f in self.factors_t)


# ---------------------------------------------------------------------------
# raw coefficient-list arithmetic for the inner loop
#
# Polynomials in lambda as plain lists of Fractions, ascending.  The hot
# path of the subset scan runs here; BiPoly objects are built only at the
# boundaries.

_Z = Fraction(0)


def _trim(u: list[Fraction]) -> list[Fraction]:
    while u and not u[-1]:
        u.pop()
    return u


def _mul(u: Sequence[Fraction], v: Sequence[Fraction]) -> list[Fraction]:
    if not u or not v:
        return []
    out = [_Z] * (len(u) + len(v) - 1)
    for i, x in enumerate(u):
        if x:
            for j, y in enumerate(v):
                out[i + j] += x * y
    return out


def _sub(u: Sequence[Fraction], v: Sequence[Fraction]) -> list[Fraction]:
    out = list(u) + [_Z] * (len(v) - len(u))
    for i, y in enumerate(v):
        out[i] -= y
    return _trim(out)


def _divmod_monic(
    u: Sequence[Fraction], m: Sequence[Fraction]
) -> tuple[list[Fraction], list[Fraction]]:
    rem = list(u)
    dq = len(rem) - len(m)
    if dq < 0:
        return [], _trim(rem)
    quot = [_Z] * (dq + 1)
    for k in range(dq, -1, -1):
        c = rem[k + len(m) - 1]
        if c:
            quot[k] = c
            for j, y in enumerate(m):
                rem[k + j] -= c * y
    del rem[len(m) - 1 :]
    return _trim(quot), _trim(rem)


def _bezout(f: list[Fraction], g: list[Fraction]) -> tuple[list[Fraction], list[Fraction]]:
    """Extended Euclid over Q[lambda]: (u, v) with u*f + v*g = 1.
    Raises if f and g share a root."""
    r0, r1 = list(f), list(g)
    u0, u1 = [Fraction(1)], []
    v0, v1 = [], [Fraction(1)]
    while r1:
        lead = r1[-1]
        if len(r1) == 1:
            inv = 1 / lead
            return (
                [c * inv for c in u1],
                [c * inv for c in v1],
            )
        inv = 1 / lead
        monic_r1 = [c * inv for c in r1]
        q, r = _divmod_monic(r0, monic_r1)
        q = [c * inv for c in q]
        r0, r1 = r1, r
        u0, u1 = u1, _sub(u0, _mul(q, u1))
        v0, v1 = v1, _sub(v0, _mul(q, v1))
    raise ValueError("seed factors are not coprime")


def _root_product(values: Sequence[Fraction]) -> list[Fraction]:
    """Monic product of (lambda - v) over the given root values."""
    out = [Fraction(1)]
    for v in values:
        out = _mul(out, [-v, Fraction(1)])
    return out


def _layers_of(P: BiPoly) -> list[list[Fraction]]:
    return [list(l.coeffs) for l in P.layers]


class _LiftRun:
    """Result of one order-by-order lift: correction layers for both
    sides, the pre-correction residuals d_k, and the obstructions o_k
    (the part of each correction a true factorization within the degree
    caps could not carry)."""

    __slots__ = ("f", "g", "residuals", "obstructions", "aborted_at")

    def __init__(self, f, g, residuals, obstructions, aborted_at):
        self.f = f
        self.g = g
        self.residuals = residuals
        self.obstructions = obstructions
        self.aborted_at = aborted_at


def _add(u: Sequence[Fraction], v: Sequence[Fraction]) -> list[Fraction]:
    out = list(u) + [_Z] * (len(v) - len(u))
    for i, y in enumerate(v):
        out[i] += y
    return _trim(out)


def _lift_core(
    p_layers: list[list[Fraction]],
    F0: list[Fraction],
    G0: list[Fraction],
    V: list[Fraction],
    order: int,
    cap_f: int | None = None,
    cap_g: int | None = None,
    abort_on_obstruction: bool = False,
) -> _LiftRun:
    """Order-by-order lift of the unique formal factorization.

    The order-k residual is d = (P - F*G)_k with corrections through
    order k-1 in place.  The correction solves fk*G0 + gk*F0 = d with
    deg fk < deg F0: fk is V*d reduced modulo F0, and gk then comes out
    of an exact division (its exactness is an internal invariant).

    With degree caps, the beyond-cap content fk*G0 (for k > cap_f) plus
    gk*F0 (for k > cap_g) is recorded as the order-k obstruction: a true
    polynomial factor pair fits inside the caps, so any of this content
    refutes the subset.  The obstruction sequence is identically zero
    exactly when the subset terminates; the caps satisfy
    cap_f <= cap_g."""
    f: list[list[Fraction]] = [F0]
    g: list[list[Fraction]] = [G0]
    residuals: list[list[Fraction]] = []
    obstructions: list[list[Fraction]] = []
    aborted_at = None
    for k in range(1, order + 1):
        d = list(p_layers[k]) if k < len(p_layers) else []
        for j in range(1, k):
            if f[j] and g[k - j]:
                d = _sub(d, _mul(f[j], g[k - j]))
        residuals.append(d)
        fk: list[Fraction] = []
        gk: list[Fraction] = []
        if d:
            fk = _divmod_monic(_mul(V, d), F0)[1]
            gk, leftover = _divmod_monic(_sub(d, _mul(fk, G0)), F0)
            if leftover:
                raise ArithmeticError("lift correction failed to divide out")
        blocked: list[Fraction] = []
        if cap_f is not None and k > cap_f and fk:
            blocked = _add(blocked, _mul(fk, G0))
        if cap_g is not None and k > cap_g and gk:
            blocked = _add(blocked, _mul(gk, F0))
        obstructions.append(blocked)
        if abort_on_obstruction and blocked:
            aborted_at = k
            break
        f.append(fk)
        g.append(gk)
    return _LiftRun(f, g, residuals, obstructions, aborted_at)


def _as_bipoly(layers: list[list[Fraction]]) -> BiPoly:
    return BiPoly([UniPoly(l) for l in layers], T_FORM)


def _validate_seed(P: BiPoly, roots: Sequence[Fraction]) -> list[Fraction]:
    if P.tag != T_FORM:
        raise ValueError("lifting expects the curve in t-form")
    values = [Fraction(r) for r in roots]
    if len(set(values)) != len(values):
        raise UnsupportedPencilError(
            "repeated root at t=0; lifting requires pairwise-distinct "
            "diagonal entries (use mechanisms and monodromy instead)"
        )
    seed = _root_product(values)
    if list(P.layer(0).coeffs) != seed:
        raise ValueError("roots do not match the curve at t=0")
    return values


def lift_subset(
    P: BiPoly,
    roots: Sequence[Fraction],
    subset: SubsetSplit | Iterable[int],
    target_order: int,
) -> LiftState:
    """Unique formal lift of the seed split indexed by ``subset``.

    ``roots[i-1]`` is the lambda-root at t=0 carrying index i (for a
    pencil, -a_i).  The subset picks which roots go to the F side.  No
    degree caps apply here: all corrections up to ``target_order`` are
    computed and kept, and the per-order obstructions are recorded.
    """
    if target_order < 1:
        raise ValueError("target_order must be >= 1")
    values = _validate_seed(P, roots)
    universe = tuple(range(1, len(values) + 1))
    if not isinstance(subset, SubsetSplit):
        subset = SubsetSplit.canonical(subset, universe)
    elif subset.universe != universe:
        raise ValueError("subset universe does not match the root list")
    F0 = _root_product([values[i - 1] for i in subset.indices])
    G0 = _root_product([values[i - 1] for i in subset.complement])
    U, V = _bezout(F0, G0)
    run = _lift_core(_layers_of(P), F0, G0, V, target_order)
    return LiftState(
        subset=subset,
        F=_as_bipoly(run.f),
        G=_as_bipoly(run.g),
        bezout=(UniPoly(U), UniPoly(V)),
        order=target_order,
        residuals=tuple(UniPoly(d) for d in run.residuals),
    )


def obstruction_profile(
    p: JacobiPencil, subset: SubsetSplit | Iterable[int]
) -> list[UniPoly]:
    """Obstructions of the subset lift at orders 1..D+1, D = deg_t of
    the curve.

    The order-k entry is the beyond-cap content of the order-k formal
    correction (fk*G0 past the F cap plus gk*F0 past the G cap): the
    part of the residual no factorization within the weighted-degree
    caps could carry.  The profile is identically zero exactly when the
    subset terminates; the decision path stops at the first nonzero
    entry, while this diagnostic runs all orders."""
    if not p.distinct_diagonal:
        raise UnsupportedPencilError(
            "repeated diagonal entries; lifting diagnostics unavailable"
        )
    P = continuant(p)
    values = [-x for x in p.a]
    universe = tuple(range(1, p.n + 1))
    if not isinstance(subset, SubsetSplit):
        subset = SubsetSplit.canonical(subset, universe)
    elif subset.universe != universe:
        raise ValueError("subset universe does not match the pencil")
    D = max(P.deg_outer, 0)
    cap_f = min(subset.size // 2, D)
    cap_g = min((p.n - subset.size) // 2, D)
    F0 = _root_product([values[i - 1] for i in subset.indices])
    G0 = _root_product([values[i - 1] for i in subset.complement])
    _, V = _bezout(F0, G0)
    run = _lift_core(_layers_of(P), F0, G0, V, D + 1, cap_f, cap_g)
    return [UniPoly(o) for o in run.obstructions]


def _attempt_split(
    P: BiPoly, indices: tuple[int, ...], subset: SubsetSplit, roots: dict[int, Fraction]
) -> tuple[BiPoly, BiPoly] | None:
    """Decision-mode lift of one subset: degree-capped, with the exact
    product of the truncated factors as the acceptance gate."""
    D = max(P.deg_outer, 0)
    cap_f = min(subset.size // 2, D)
    cap_g = min((len(indices) - subset.size) // 2, D)
    F0 = _root_product([roots[i] for i in subset.indices])
    G0 = _root_product([roots[i] for i in subset.complement])
    _, V = _bezout(F0, G0)
    run = _lift_core(
        _layers_of(P), F0, G0, V, D + 1, cap_f, cap_g, abort_on_obstruction=True
    )
    if run.aborted_at is not None:
        return None
    F = _as_bipoly(run.f[: cap_f + 1])
    G = _as_bipoly(run.g[: cap_g + 1])
    if F * G == P:
        return F, G
    return None


def _split_completely(
    P: BiPoly,
    indices: tuple[int, ...],
    roots: dict[int, Fraction],
    witnesses: list[SubsetSplit],
) -> list[tuple[BiPoly, tuple[int, ...]]]:
    if len(indices) == 1:
        return [(P, indices)]
    for subset in canonical_subsets(indices):
        split = _attempt_split(P, indices, subset, roots)
        if split is None:
            continue
        F, G = split
        witnesses.append(subset)
        return _split_completely(
            F, subset.indices, roots, witnesses
        ) + _split_completely(G, subset.complement, roots, witnesses)
    return [(P, indices)]


def decide(p: JacobiPencil) -> Decision:
    """Decide absolute irreducibility of the spectral curve and, when it
    is reducible, produce the complete exact factorization.

    Requires pairwise-distinct diagonal entries; raises
    UnsupportedPencilError otherwise (see the module docstring for why
    that case genuinely escapes this method)."""
    if not p.distinct_diagonal:
        raise UnsupportedPencilError(
            "repeated diagonal entries; the subset-lift decision does not "
            "apply (use mechanisms and monodromy instead)"
        )
    P = continuant(p)
    indices = tuple(range(1, p.n + 1))
    roots = {i: -p.a[i - 1] for i in indices}
    witnesses: list[SubsetSplit] = []
    parts = _split_completely(P, indices, roots, witnesses)
    factors_t = tuple(f for f, _ in parts)
    factor_indices = tuple(idx for _, idx in parts)
    status = REDUCIBLE if len(parts) > 1 else IRREDUCIBLE
    return Decision(
        status=status,
        factors_t=factors_t,
        factors_w=tuple(to_w_form(f) for f in factors_t),
        witnesses=tuple(witnesses),
        factor_indices=factor_indices,
    )

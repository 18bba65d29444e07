"""Buchberger-based Groebner engine for ideals in F_p[x] and submodules
of free modules.

Provides reduced bases, normal forms, membership tests with optional
cofactor certificates, zero-dimensionality and origin-support checks.
The default order is degrevlex; lex is available for debugging.
"""

from __future__ import annotations

import heapq
import itertools
from dataclasses import dataclass
from typing import Sequence

from .fp_poly import (AmbientMismatchError, DegreeGuardError, Poly, PolyRing,
                      grevlex_key, lex_key)


@dataclass(frozen=True)
class MonomialOrder:
    """A multiplicative well-order on monomials; `key` sorts ascending."""

    name: str

    def key(self, mono: tuple[int, ...]) -> tuple:
        if self.name == "grevlex":
            return grevlex_key(mono)
        return lex_key(mono)

    def nkey(self, mono: tuple[int, ...]) -> tuple:
        """Inverted key: min-heap on nkey pops the largest monomial first."""
        if self.name == "grevlex":
            return (-sum(mono), mono[::-1])
        return tuple(-e for e in mono)


GREVLEX = MonomialOrder("grevlex")
LEX = MonomialOrder("lex")

_ORDERS = {"grevlex": GREVLEX, "lex": LEX}


def order_by_name(name: str) -> MonomialOrder:
    try:
        return _ORDERS[name]
    except KeyError:
        raise ValueError(f"unknown monomial order {name!r}") from None


def _lead(terms: dict, order: MonomialOrder) -> tuple[tuple[int, ...], int]:
    lm = max(terms, key=order.key)
    return lm, terms[lm]


def _divides(a: tuple[int, ...], b: tuple[int, ...]) -> bool:
    for x, y in zip(a, b):
        if x > y:
            return False
    return True


def _mono_mul(a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(x + y for x, y in zip(a, b))


def _mono_div(a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(x - y for x, y in zip(a, b))


def _mono_lcm(a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(max(x, y) for x, y in zip(a, b))


def _reduce_full(fterms: dict, reducers: list, p: int, order: MonomialOrder,
                 quotients: list[dict] | None = None) -> dict:
    """Full normal form of a term dict against prepared reducers.

    Each reducer is (lm, lc_inv, tail_items).  When `quotients` is given
    (one dict per reducer) the division is tracked so that
    input = sum(quotient_i * reducer_i) + remainder.
    """
    nkey = order.nkey
    work = dict(fterms)
    heap = [(nkey(m), m) for m in work]
    heapq.heapify(heap)
    rem: dict = {}
    while heap:
        _, m = heapq.heappop(heap)
        c = work.get(m)
        if not c:
            continue
        hit = -1
        for idx, (lm, _, _) in enumerate(reducers):
            if _divides(lm, m):
                hit = idx
                break
        if hit < 0:
            rem[m] = c
            del work[m]
            continue
        del work[m]
        lm, lc_inv, tail = reducers[hit]
        factor = c * lc_inv % p
        shift = _mono_div(m, lm)
        if quotients is not None:
            q = quotients[hit]
            q[shift] = (q.get(shift, 0) + factor) % p
        for tm, tc in tail:
            mm = _mono_mul(tm, shift)
            prev = work.get(mm)
            if prev is None:
                cc = -factor * tc % p
                if cc:
                    work[mm] = cc
                    heapq.heappush(heap, (nkey(mm), mm))
            else:
                cc = (prev - factor * tc) % p
                if cc:
                    work[mm] = cc
                else:
                    del work[mm]
    return rem


def _prep_reducer(g: Poly, order: MonomialOrder, p: int) -> tuple:
    lm, lc = _lead(g.terms, order)
    tail = tuple((m, c) for m, c in g.terms.items() if m != lm)
    return (lm, pow(lc, p - 2, p), tail)


class GroebnerBasis:
    """A reduced, monic Groebner basis with a fixed monomial order.

    `reprs`, when present, expresses each generator as a combination of
    `original_generators` (cofactor tracking).
    """

    def __init__(self, generators: Sequence[Poly], order: MonomialOrder,
                 original_generators: Sequence[Poly],
                 reprs: Sequence[Sequence[Poly]] | None = None):
        self.generators = tuple(generators)
        self.order = order
        self.original_generators = tuple(original_generators)
        self.reprs = tuple(tuple(r) for r in reprs) if reprs is not None else None
        self.ring = self.generators[0].ring if self.generators else (
            self.original_generators[0].ring)
        p = self.ring.p
        self._reducers = [_prep_reducer(g, order, p) for g in self.generators]
        self.leading_monomials = tuple(r[0] for r in self._reducers)

    def __iter__(self):
        return iter(self.generators)

    def __len__(self):
        return len(self.generators)

    def contains_one(self) -> bool:
        zero = (0,) * self.ring.nvars
        return any(lm == zero for lm in self.leading_monomials)


def normal_form(f: Poly, basis: GroebnerBasis) -> Poly:
    """Remainder of f on division by the basis; unique for a reduced basis."""
    if not basis.ring.same_ambient(f.ring):
        raise AmbientMismatchError("polynomial and basis ambients differ")
    rem = _reduce_full(f.terms, basis._reducers, f.ring.p, basis.order)
    return Poly._make(f.ring, rem)


def normal_form_with_cofactors(f: Poly, basis: GroebnerBasis) -> tuple[Poly, list[Poly]]:
    """Normal form plus quotients q_i with f = sum(q_i g_i) + remainder."""
    if not basis.ring.same_ambient(f.ring):
        raise AmbientMismatchError("polynomial and basis ambients differ")
    quotients: list[dict] = [{} for _ in basis.generators]
    rem = _reduce_full(f.terms, basis._reducers, f.ring.p, basis.order, quotients)
    ring = f.ring
    return Poly._make(ring, rem), [Poly._make(ring, q) for q in quotients]


def reduce_by_generators(f: Poly, gens: Sequence[Poly],
                         order: MonomialOrder = GREVLEX) -> Poly:
    """Divide f by an arbitrary generator list (no basis completion).

    The remainder is not unique unless the list is a Groebner basis, but a
    zero remainder always proves membership in the generated ideal.
    """
    p = f.ring.p
    reducers = [_prep_reducer(g, order, p) for g in gens if not g.is_zero()]
    rem = _reduce_full(f.terms, reducers, p, order)
    return Poly._make(f.ring, rem)


def _spair_terms(fi: Poly, fj: Poly, lmi, lmj, order, p):
    lcm = _mono_lcm(lmi, lmj)
    si = _mono_div(lcm, lmi)
    sj = _mono_div(lcm, lmj)
    # both inputs are monic, so the S-polynomial is x^si*fi - x^sj*fj
    out: dict = {}
    for m, c in fi.terms.items():
        mm = _mono_mul(m, si)
        out[mm] = (out.get(mm, 0) + c) % p
    for m, c in fj.terms.items():
        mm = _mono_mul(m, sj)
        out[mm] = (out.get(mm, 0) - c) % p
    return {m: c for m, c in out.items() if c}, si, sj


def _poly_shift(f: Poly, shift: tuple[int, ...], sign: int, p: int) -> dict:
    if sign == 1:
        return {_mono_mul(m, shift): c for m, c in f.terms.items()}
    return {_mono_mul(m, shift): (p - c) % p for m, c in f.terms.items()}


def buchberger(gens: Sequence[Poly], order: MonomialOrder = GREVLEX, *,
               track: bool = False, known_gb_prefix: int = 0) -> GroebnerBasis:
    """Reduced Groebner basis of the ideal generated by `gens`.

    Pair selection follows the normal strategy (smallest lcm in the order,
    ties by input index); the coprimality and chain criteria prune pairs.
    Deterministic for a fixed input sequence.

    `known_gb_prefix` marks the first k generators as a Groebner basis of
    the subideal they generate, so their mutual S-pairs are skipped.
    With `track=True` every basis element carries its expression in the
    original generators.
    """
    gens = list(gens)
    if not gens:
        raise ValueError("generator list must be nonempty")
    ring = gens[0].ring
    for g in gens[1:]:
        if not g.ring.same_ambient(ring):
            raise AmbientMismatchError("generators live in different ambients")
    p = ring.p
    ngens = len(gens)

    basis: list[Poly] = []
    lms: list[tuple[int, ...]] = []
    reprs: list[list[Poly]] = []
    seed_count = 0
    for i, g in enumerate(gens):
        if g.is_zero():
            continue
        lm, lc = _lead(g.terms, order)
        inv = pow(lc, p - 2, p)
        basis.append(g.scale(inv))
        lms.append(lm)
        if track:
            reprs.append([ring.from_int(inv) if j == i else ring.zero()
                          for j in range(ngens)])
        if i < known_gb_prefix:
            seed_count += 1
    if not basis:
        raise ValueError("all generators are zero")

    key = order.key
    pairs: list[tuple[tuple, int, int]] = []
    for i, j in itertools.combinations(range(len(basis)), 2):
        if i < seed_count and j < seed_count:
            continue
        pairs.append((key(_mono_lcm(lms[i], lms[j])), i, j))
    heapq.heapify(pairs)
    done: set[tuple[int, int]] = set()
    if seed_count:
        done.update(itertools.combinations(range(seed_count), 2))

    while pairs:
        lk, i, j = heapq.heappop(pairs)
        done.add((i, j))
        lcm = _mono_lcm(lms[i], lms[j])
        if lcm == _mono_mul(lms[i], lms[j]):
            continue  # coprime leading monomials
        chain = False
        for k in range(len(basis)):
            if k == i or k == j:
                continue
            if _divides(lms[k], lcm) and \
                    (min(i, k), max(i, k)) in done and \
                    (min(j, k), max(j, k)) in done:
                chain = True
                break
        if chain:
            continue
        if sum(lcm) > ring.max_degree:
            raise DegreeGuardError(
                f"S-pair ({i}, {j}) with lcm degree {sum(lcm)} exceeds "
                f"guard {ring.max_degree}")
        sterms, si, sj = _spair_terms(basis[i], basis[j], lms[i], lms[j], order, p)
        reducers = [_prep_reducer(b, order, p) for b in basis]
        quotients = [{} for _ in basis] if track else None
        rem = _reduce_full(sterms, reducers, p, order, quotients)
        if not rem:
            continue
        lm, lc = _lead(rem, order)
        inv = pow(lc, p - 2, p)
        new = Poly._make(ring, {m: c * inv % p for m, c in rem.items()})
        if track:
            # s-poly = shift_i*basis[i] - shift_j*basis[j]; remainder =
            # s-poly - sum(q_k basis[k]); everything scaled by inv.
            combo = [ring.zero()] * ngens
            shift_i = Poly._make(ring, {si: 1})
            shift_j = Poly._make(ring, {sj: 1})
            for t in range(ngens):
                acc = shift_i * reprs[i][t] - shift_j * reprs[j][t]
                for k, q in enumerate(quotients):
                    if q:
                        acc = acc - Poly._make(ring, q) * reprs[k][t]
                combo[t] = acc.scale(inv)
            reprs.append(combo)
        idx = len(basis)
        basis.append(new)
        lms.append(lm)
        for k in range(idx):
            heapq.heappush(pairs, (key(_mono_lcm(lms[k], lm)), k, idx))

    return _interreduce(basis, reprs if track else None, gens, order, ring)


def _interreduce(basis: list[Poly], reprs: list[list[Poly]] | None,
                 original: Sequence[Poly], order: MonomialOrder,
                 ring: PolyRing) -> GroebnerBasis:
    p = ring.p
    # drop redundant leading monomials (minimalization)
    keep: list[int] = []
    lms = [_lead(b.terms, order)[0] for b in basis]
    for i, lm in enumerate(lms):
        redundant = False
        for j, other in enumerate(lms):
            if i == j:
                continue
            if _divides(other, lm) and (other != lm or j < i):
                redundant = True
                break
        if redundant:
            continue
        keep.append(i)
    basis = [basis[i] for i in keep]
    if reprs is not None:
        reprs = [reprs[i] for i in keep]

    # tail-reduce every element against the others until stable
    changed = True
    while changed:
        changed = False
        for i in range(len(basis)):
            others = [basis[j] for j in range(len(basis)) if j != i]
            if not others:
                continue
            reducers = [_prep_reducer(b, order, p) for b in others]
            quotients = [{} for _ in others] if reprs is not None else None
            rem = _reduce_full(basis[i].terms, reducers, p, order, quotients)
            new = Poly._make(ring, rem)
            if new != basis[i]:
                changed = True
                lm, lc = _lead(rem, order)
                inv = pow(lc, p - 2, p)
                basis[i] = new.scale(inv)
                if reprs is not None:
                    idxs = [j for j in range(len(basis)) if j != i]
                    newrep = []
                    for t in range(len(reprs[i])):
                        acc = reprs[i][t]
                        for pos, k in enumerate(idxs):
                            q = quotients[pos]
                            if q:
                                acc = acc - Poly._make(ring, q) * reprs[k][t]
                        newrep.append(acc.scale(inv))
                    reprs[i] = newrep

    key = order.key
    index = sorted(range(len(basis)),
                   key=lambda i: key(_lead(basis[i].terms, order)[0]),
                   reverse=True)
    basis = [basis[i] for i in index]
    if reprs is not None:
        reprs = [reprs[i] for i in index]
    return GroebnerBasis(basis, order, original, reprs)


def verify_buchberger(basis: GroebnerBasis) -> bool:
    """Re-check the Buchberger criterion: every S-polynomial reduces to 0."""
    gens = basis.generators
    order = basis.order
    p = basis.ring.p
    for i, j in itertools.combinations(range(len(gens)), 2):
        lmi = basis.leading_monomials[i]
        lmj = basis.leading_monomials[j]
        sterms, _, _ = _spair_terms(gens[i], gens[j], lmi, lmj, order, p)
        if _reduce_full(sterms, basis._reducers, p, order):
            return False
    return True


def ideal_membership(f: Poly, gens: Sequence[Poly],
                     order: MonomialOrder = GREVLEX, *,
                     certificate: bool = False):
    """Decide f in (gens).  With `certificate=True` returns
    (bool, cofactors) where f = sum(cofactor_i * gens_i); the expansion is
    re-checked before returning.
    """
    gb = buchberger(gens, order, track=certificate)
    if not certificate:
        return normal_form(f, gb).is_zero()
    rem, quotients = normal_form_with_cofactors(f, gb)
    if not rem.is_zero():
        return False, None
    ring = f.ring
    cofactors = [ring.zero()] * len(gens)
    for q, rep in zip(quotients, gb.reprs):
        if q.is_zero():
            continue
        for t in range(len(gens)):
            if not rep[t].is_zero():
                cofactors[t] = cofactors[t] + q * rep[t]
    check = ring.zero()
    for c, g in zip(cofactors, gens):
        check = check + c * g
    if check != f:
        raise RuntimeError("cofactor certificate failed re-expansion")
    return True, cofactors


def is_zero_dimensional(basis: GroebnerBasis) -> bool:
    """True iff every variable has a pure power among the leading monomials."""
    if basis.contains_one():
        return True
    n = basis.ring.nvars
    for v in range(n):
        if not any(lm[v] and all(e == 0 for k, e in enumerate(lm) if k != v)
                   for lm in basis.leading_monomials):
            return False
    return True


def quotient_dimension(basis: GroebnerBasis) -> int:
    """Number of standard monomials (k-dimension of the quotient ring)."""
    if basis.contains_one():
        return 0
    if not is_zero_dimensional(basis):
        raise ValueError("quotient is infinite-dimensional")
    n = basis.ring.nvars
    bounds = []
    for v in range(n):
        b = min(lm[v] for lm in basis.leading_monomials
                if lm[v] and all(e == 0 for k, e in enumerate(lm) if k != v))
        bounds.append(b)
    lms = basis.leading_monomials
    count = 0
    for mono in itertools.product(*(range(b) for b in bounds)):
        if not any(_divides(lm, mono) for lm in lms):
            count += 1
    return count


def supported_only_at_origin(basis: GroebnerBasis) -> bool:
    """True iff x_i^D lies in the ideal for every variable, D the quotient
    dimension; equivalently the zero locus is (at most) the origin.

    Powers are walked by repeated squaring of normal forms, which decides
    the same predicate with early exit.
    """
    d = quotient_dimension(basis)
    if d == 0:
        return True
    ring = basis.ring
    for v in range(ring.nvars):
        t = normal_form(ring.variable(v), basis)
        e = 1
        while not t.is_zero() and e < d:
            t = normal_form(t * t, basis)
            e *= 2
        if not t.is_zero():
            return False
    return True


# ---------------------------------------------------------------------------
# Submodules of free modules R^s, term-over-position order.


class ModuleVector:
    """An element of a free module R^s: a fixed-length tuple of polynomials."""

    __slots__ = ("coordinates", "ring")

    def __init__(self, coordinates: Sequence[Poly]):
        coords = tuple(coordinates)
        if not coords:
            raise ValueError("module vectors need at least one coordinate")
        ring = coords[0].ring
        for c in coords[1:]:
            if not c.ring.same_ambient(ring):
                raise AmbientMismatchError("coordinates live in different ambients")
        self.coordinates = coords
        self.ring = ring

    def __len__(self):
        return len(self.coordinates)

    def __iter__(self):
        return iter(self.coordinates)

    def __getitem__(self, i):
        return self.coordinates[i]

    def __eq__(self, other):
        return isinstance(other, ModuleVector) and self.coordinates == other.coordinates

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.coordinates)

    def _flat(self) -> dict:
        out = {}
        for pos, poly in enumerate(self.coordinates):
            for m, c in poly.terms.items():
                out[(m, pos)] = c
        return out

    @classmethod
    def _from_flat(cls, flat: dict, ring: PolyRing, size: int) -> "ModuleVector":
        coords = [dict() for _ in range(size)]
        for (m, pos), c in flat.items():
            coords[pos][m] = c
        return cls([Poly._make(ring, d) for d in coords])

    def __repr__(self):
        return "ModuleVector(" + ", ".join(str(c) for c in self.coordinates) + ")"


def _mod_nkey(order: MonomialOrder):
    mono_nkey = order.nkey

    def nk(term):
        return (mono_nkey(term[0]), term[1])

    return nk


def _mod_lead(flat: dict, order: MonomialOrder):
    nk = _mod_nkey(order)
    lt = min(flat, key=nk)
    return lt, flat[lt]


def _mod_reduce(fflat: dict, reducers: list, p: int, order: MonomialOrder,
                quotients: list[dict] | None = None) -> dict:
    nk = _mod_nkey(order)
    work = dict(fflat)
    heap = [(nk(t), t) for t in work]
    heapq.heapify(heap)
    rem: dict = {}
    while heap:
        _, t = heapq.heappop(heap)
        c = work.get(t)
        if not c:
            continue
        m, pos = t
        hit = -1
        for idx, ((lm, lpos), _, _) in enumerate(reducers):
            if lpos == pos and _divides(lm, m):
                hit = idx
                break
        if hit < 0:
            rem[t] = c
            del work[t]
            continue
        del work[t]
        (lm, _), lc_inv, tail = reducers[hit]
        factor = c * lc_inv % p
        shift = _mono_div(m, lm)
        if quotients is not None:
            q = quotients[hit]
            q[shift] = (q.get(shift, 0) + factor) % p
        for (tm, tpos), tc in tail:
            tt = (_mono_mul(tm, shift), tpos)
            prev = work.get(tt)
            if prev is None:
                cc = -factor * tc % p
                if cc:
                    work[tt] = cc
                    heapq.heappush(heap, (nk(tt), tt))
            else:
                cc = (prev - factor * tc) % p
                if cc:
                    work[tt] = cc
                else:
                    del work[tt]
    return rem


def _mod_prep(flat: dict, order: MonomialOrder, p: int):
    lt, lc = _mod_lead(flat, order)
    tail = tuple((t, c) for t, c in flat.items() if t != lt)
    return (lt, pow(lc, p - 2, p), tail)


class ModuleGroebnerBasis:
    """Reduced basis of a submodule of R^s under term-over-position order."""

    def __init__(self, generators: Sequence[ModuleVector], order: MonomialOrder,
                 original_generators: Sequence[ModuleVector],
                 reprs: Sequence[Sequence[Poly]] | None = None):
        self.generators = tuple(generators)
        self.order = order
        self.original_generators = tuple(original_generators)
        self.reprs = tuple(tuple(r) for r in reprs) if reprs is not None else None
        self.ring = self.generators[0].ring if self.generators else \
            self.original_generators[0].ring
        self.size = len(self.original_generators[0])
        p = self.ring.p
        self._flats = [g._flat() for g in self.generators]
        self._reducers = [_mod_prep(fl, order, p) for fl in self._flats]
        self.leading_terms = tuple(r[0] for r in self._reducers)

    def __len__(self):
        return len(self.generators)

    def __iter__(self):
        return iter(self.generators)


def module_buchberger(gens: Sequence[ModuleVector],
                      order: MonomialOrder = GREVLEX, *,
                      track: bool = False) -> ModuleGroebnerBasis:
    """Buchberger over R^s; S-pairs form only between vectors sharing the
    leading position (no pair criteria: the coprimality shortcut is not
    valid for modules).
    """
    gens = list(gens)
    if not gens:
        raise ValueError("generator list must be nonempty")
    size = len(gens[0])
    ring = gens[0].ring
    for g in gens[1:]:
        if len(g) != size:
            raise ValueError("coordinate-count mismatch between generators")
        if not g.ring.same_ambient(ring):
            raise AmbientMismatchError("generators live in different ambients")
    p = ring.p
    ngens = len(gens)

    flats: list[dict] = []
    lts: list = []
    reprs: list[list[Poly]] = []
    for i, g in enumerate(gens):
        fl = g._flat()
        if not fl:
            continue
        lt, lc = _mod_lead(fl, order)
        inv = pow(lc, p - 2, p)
        flats.append({t: c * inv % p for t, c in fl.items()})
        lts.append(lt)
        if track:
            reprs.append([ring.from_int(inv) if j == i else ring.zero()
                          for j in range(ngens)])
    if not flats:
        raise ValueError("all generators are zero")

    key = order.key
    pairs: list[tuple[tuple, int, int]] = []

    def pair_key(i, j):
        return (key(_mono_lcm(lts[i][0], lts[j][0])), i, j)

    for i, j in itertools.combinations(range(len(flats)), 2):
        if lts[i][1] == lts[j][1]:
            pairs.append(pair_key(i, j))
    heapq.heapify(pairs)

    while pairs:
        _, i, j = heapq.heappop(pairs)
        (lmi, pos), (lmj, _) = lts[i], lts[j]
        lcm = _mono_lcm(lmi, lmj)
        si = _mono_div(lcm, lmi)
        sj = _mono_div(lcm, lmj)
        sflat: dict = {}
        for (m, q), c in flats[i].items():
            t = (_mono_mul(m, si), q)
            sflat[t] = (sflat.get(t, 0) + c) % p
        for (m, q), c in flats[j].items():
            t = (_mono_mul(m, sj), q)
            sflat[t] = (sflat.get(t, 0) - c) % p
        sflat = {t: c for t, c in sflat.items() if c}
        reducers = [_mod_prep(fl, order, p) for fl in flats]
        quotients = [{} for _ in flats] if track else None
        rem = _mod_reduce(sflat, reducers, p, order, quotients)
        if not rem:
            continue
        lt, lc = _mod_lead(rem, order)
        inv = pow(lc, p - 2, p)
        new = {t: c * inv % p for t, c in rem.items()}
        if track:
            shift_i = Poly._make(ring, {si: 1})
            shift_j = Poly._make(ring, {sj: 1})
            combo = []
            for t in range(ngens):
                acc = shift_i * reprs[i][t] - shift_j * reprs[j][t]
                for k, q in enumerate(quotients):
                    if q:
                        acc = acc - Poly._make(ring, q) * reprs[k][t]
                combo.append(acc.scale(inv))
            reprs.append(combo)
        idx = len(flats)
        flats.append(new)
        lts.append(lt)
        for k in range(idx):
            if lts[k][1] == lt[1]:
                heapq.heappush(pairs, pair_key(k, idx))

    # minimalize and tail-reduce
    keep: list[int] = []
    for i, (lm, pos) in enumerate(lts):
        redundant = False
        for j, (olm, opos) in enumerate(lts):
            if i == j or opos != pos:
                continue
            if _divides(olm, lm) and ((olm, opos) != (lm, pos) or j < i):
                redundant = True
                break
        if not redundant:
            keep.append(i)
    flats = [flats[i] for i in keep]
    lts = [lts[i] for i in keep]
    if track:
        reprs = [reprs[i] for i in keep]

    changed = True
    while changed:
        changed = False
        for i in range(len(flats)):
            others = [flats[j] for j in range(len(flats)) if j != i]
            if not others:
                continue
            reducers = [_mod_prep(fl, order, p) for fl in others]
            quotients = [{} for _ in others] if track else None
            rem = _mod_reduce(flats[i], reducers, p, order, quotients)
            if rem != flats[i]:
                changed = True
                lt, lc = _mod_lead(rem, order)
                inv = pow(lc, p - 2, p)
                flats[i] = {t: c * inv % p for t, c in rem.items()}
                lts[i] = lt
                if track:
                    idxs = [j for j in range(len(flats)) if j != i]
                    newrep = []
                    for t in range(len(reprs[i])):
                        acc = reprs[i][t]
                        for posk, k in enumerate(idxs):
                            q = quotients[posk]
                            if q:
                                acc = acc - Poly._make(ring, q) * reprs[k][t]
                        newrep.append(acc.scale(inv))
                    reprs[i] = newrep

    nk = _mod_nkey(order)
    index = sorted(range(len(flats)), key=lambda i: nk(lts[i]))
    vectors = [ModuleVector._from_flat(flats[i], ring, size) for i in index]
    out_reprs = [reprs[i] for i in index] if track else None
    return ModuleGroebnerBasis(vectors, order, gens, out_reprs)


def module_normal_form(v: ModuleVector, basis: ModuleGroebnerBasis) -> ModuleVector:
    if len(v) != basis.size:
        raise ValueError("coordinate-count mismatch")
    rem = _mod_reduce(v._flat(), basis._reducers, basis.ring.p, basis.order)
    return ModuleVector._from_flat(rem, basis.ring, basis.size)


def module_membership(v: ModuleVector, gens: Sequence[ModuleVector],
                      order: MonomialOrder = GREVLEX, *,
                      certificate: bool = False):
    """Decide whether v lies in the submodule of R^s generated by gens."""
    if any(len(g) != len(v) for g in gens):
        raise ValueError("coordinate-count mismatch")
    gb = module_buchberger(gens, order, track=certificate)
    if not certificate:
        return module_normal_form(v, gb).is_zero()
    quotients: list[dict] = [{} for _ in gb.generators]
    rem = _mod_reduce(v._flat(), gb._reducers, gb.ring.p, gb.order, quotients)
    if rem:
        return False, None
    ring = v.ring
    cofactors = [ring.zero()] * len(gens)
    for q, rep in zip(quotients, gb.reprs):
        if not q:
            continue
        qp = Poly._make(ring, q)
        for t in range(len(gens)):
            if not rep[t].is_zero():
                cofactors[t] = cofactors[t] + qp * rep[t]
    for pos in range(len(v)):
        acc = ring.zero()
        for c, g in zip(cofactors, gens):
            acc = acc + c * g[pos]
        if acc != v[pos]:
            raise RuntimeError("module cofactor certificate failed re-expansion")
    return True, cofactors

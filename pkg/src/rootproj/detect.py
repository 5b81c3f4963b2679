"""Detection of root systems of maximal rank inside a projection.

The pipeline for one candidate basis is pairing matrix -> Dynkin-type
recognition -> reflection closure inside the projected set, which yields
a certificate that can be re-validated independently.  The search over
bases is an incremental backtracking over one representative per +-pair,
sorted by squared norm; partial bases are pruned with the Cartan-integer
constraints, tree-shape bounds of the target diagram, and the norm
census of the projection.

Raw subset enumeration would be hopeless at rank 7 over a hundred
vectors, but the census frequently forces the candidate classes to have
exactly the cardinality of the target system, in which case the only
possible copy is the class union itself and a direct closure test
decides the question without any search.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterator, List, Optional, Sequence, Set, Tuple

from .catalog import Target, TypeLabel
from .linalg import Matrix, Vector, dot, is_zero, neg, norm2, scale, sub
from .projection import ProjectionResult

_VALID_OFFDIAG = {0, -1, -2, -3}


def pairing_matrix(basis: Sequence[Vector]) -> Matrix:
    """Cartan pairings n_ij = 2 <b_i, b_j> / <b_j, b_j> of a candidate basis.

    Entries are exact and carry no integrality requirement at this stage;
    callers filter on them.
    """
    for b in basis:
        if is_zero(b):
            raise ValueError("zero vector in candidate basis")
    norms = [norm2(b) for b in basis]
    return tuple(
        tuple(2 * dot(a, b) / nb for b, nb in zip(basis, norms))
        for a in basis
    )


def reflect(v: Vector, b: Vector) -> Vector:
    """Image of v under the reflection through the hyperplane normal to b."""
    c = 2 * dot(v, b) / norm2(b)
    return sub(v, scale(c, b)) if c != 0 else v


def _classify_component(comp: List[int], n: Matrix) -> Optional[TypeLabel]:
    """Type of one connected component of an integral pairing matrix."""
    k = len(comp)
    if k == 1:
        return TypeLabel("A", 1)
    edges = []
    adj: Dict[int, List[int]] = {i: [] for i in comp}
    for ai, i in enumerate(comp):
        for j in comp[ai + 1:]:
            w = int(n[i][j] * n[j][i])
            if w:
                edges.append((i, j, w))
                adj[i].append(j)
                adj[j].append(i)
    if len(edges) != k - 1:
        return None  # a cycle: no finite type
    deg = {i: len(adj[i]) for i in comp}
    triple = [e for e in edges if e[2] == 3]
    double = [e for e in edges if e[2] == 2]
    if triple:
        if k == 2 and len(triple) == 1 and not double:
            return TypeLabel("G", 2)
        return None
    if double:
        if len(double) > 1 or any(deg[i] > 2 for i in comp):
            return None
        if k == 2:
            return TypeLabel("B", 2)
        u, v, _ = double[0]
        if deg[u] == 1 or deg[v] == 1:
            end, inner = (u, v) if deg[u] == 1 else (v, u)
            # |n[inner][end]| = 2 exactly when the end node is the short one
            if n[inner][end] == -2:
                return TypeLabel("B", k)
            return TypeLabel("C", k)
        # interior double edge: only the rank-4 path qualifies
        if k == 4 and deg[u] == 2 and deg[v] == 2:
            return TypeLabel("F", 4)
        return None
    # simply laced component
    branch = [i for i in comp if deg[i] >= 3]
    if any(deg[i] > 3 for i in comp) or len(branch) > 1:
        return None
    if not branch:
        return TypeLabel("A", k)
    center = branch[0]
    arms = []
    for start in adj[center]:
        length, prev, cur = 1, center, start
        while deg[cur] == 2:
            nxt = next(x for x in adj[cur] if x != prev)
            prev, cur = cur, nxt
            length += 1
        arms.append(length)
    arms.sort()
    if arms[:2] == [1, 1]:
        return TypeLabel("D", arms[2] + 3)
    if arms == [1, 2, 2]:
        return TypeLabel("E", 6)
    if arms == [1, 2, 3]:
        return TypeLabel("E", 7)
    if arms == [1, 2, 4]:
        return TypeLabel("E", 8)
    return None


def match_type(basis: Sequence[Vector]) -> Optional[List[Tuple[TypeLabel, Tuple[int, ...]]]]:
    """Decompose a candidate basis into typed Dynkin components.

    Returns one (label, indices) pair per connected component, ordered by
    smallest index, or None when the pairing matrix is not the Cartan
    matrix of any finite type (non-integral or positive pairings, cycles,
    unrecognized diagram shapes).
    """
    if not basis:
        raise ValueError("empty basis")
    n = pairing_matrix(basis)
    k = len(basis)
    for i in range(k):
        for j in range(k):
            if i == j:
                continue
            x = n[i][j]
            if x.denominator != 1 or int(x) not in _VALID_OFFDIAG:
                return None
            if int(n[i][j] * n[j][i]) not in (0, 1, 2, 3):
                return None
    seen: Set[int] = set()
    out = []
    for start in range(k):
        if start in seen:
            continue
        comp = [start]
        seen.add(start)
        queue = [start]
        while queue:
            i = queue.pop()
            for j in range(k):
                if j not in seen and n[i][j] != 0:
                    seen.add(j)
                    comp.append(j)
                    queue.append(j)
        comp.sort()
        label = _classify_component(comp, n)
        if label is None:
            return None
        out.append((label, tuple(comp)))
    out.sort(key=lambda item: item[1][0])
    return out


@dataclass(frozen=True)
class ClosureFailure:
    """Why a reflection closure did not certify a root system."""

    escaping: Optional[Vector] = None
    oversize: bool = False

    def __bool__(self) -> bool:
        return False


def reflection_closure(basis: Sequence[Vector], universe: frozenset,
                       max_size: Optional[int] = None):
    """Orbit of the basis under the reflections it generates.

    Applies every basis reflection to the growing set until a fixed point
    is reached.  Returns the orbit as a frozenset, or a ClosureFailure
    naming the first generated vector that leaves the universe (processed
    in sorted order, so the failure is deterministic) or flagging an
    orbit larger than max_size.
    """
    for b in basis:
        if b not in universe:
            return ClosureFailure(escaping=b)
    refl = [(b, norm2(b)) for b in basis]
    orbit: Set[Vector] = set(basis)
    frontier = sorted(orbit)
    while frontier:
        new: List[Vector] = []
        for v in frontier:
            for b, nb in refl:
                c = 2 * dot(v, b) / nb
                if c == 0:
                    continue
                w = sub(v, scale(c, b))
                if w in orbit:
                    continue
                if w not in universe:
                    return ClosureFailure(escaping=w)
                orbit.add(w)
                new.append(w)
                if max_size is not None and len(orbit) > max_size:
                    return ClosureFailure(oversize=True)
        frontier = sorted(new)
    return frozenset(orbit)


@dataclass(frozen=True)
class ComponentWitness:
    """One irreducible factor of a certified subsystem."""

    label: TypeLabel
    basis: Tuple[Vector, ...]
    roots: frozenset


@dataclass(frozen=True)
class ClosureCertificate:
    """A verifiable witness that the target occurs inside sigma_theta."""

    target: Target
    components: Tuple[ComponentWitness, ...]

    @property
    def basis(self) -> Tuple[Vector, ...]:
        return tuple(v for w in self.components for v in w.basis)

    @property
    def generated_roots(self) -> frozenset:
        out: Set[Vector] = set()
        for w in self.components:
            out |= w.roots
        return frozenset(out)

    @property
    def size(self) -> int:
        return len(self.generated_roots)


@dataclass(frozen=True)
class DetectionReport:
    target: Target
    found: bool
    restricted: bool
    basis_from_delta_theta: bool
    certificate: Optional[ClosureCertificate] = None


# ---------------------------------------------------------------------------
# norm profiles and census conditions


def _component_profiles(label: TypeLabel):
    """Relative squared-norm multisets (shortest root = 1).

    Returns (basis_profile, root_profile): how many simple roots and how
    many roots the standard copy has at each relative squared length.
    """
    f, k = label.family, label.rank
    if f in ("A", "D", "E") or (f in ("B", "C") and k == 1):
        return {1: k}, {1: label.root_count}
    if f == "B":
        return {1: 1, 2: k - 1}, {1: 2 * k, 2: 2 * k * (k - 1)}
    if f == "C":
        return {1: k - 1, 2: 1}, {1: 2 * k * (k - 1), 2: 2 * k}
    if f == "F":
        return {1: 2, 2: 2}, {1: 24, 2: 24}
    if f == "G":
        return {1: 1, 3: 1}, {1: 6, 3: 6}
    raise ValueError(f"no reduced profile for {label}")


def _bc_root_profile(k: int) -> Dict[int, int]:
    prof = {1: 2 * k, 4: 2 * k}
    if k >= 2:
        prof[2] = 2 * k * (k - 1)
    return prof


def census_scales(label: TypeLabel, census: Dict[Fraction, int]) -> List[Fraction]:
    """Base scales at which the census could host a copy of the label.

    For every relative length class of the label there must be a census
    class with at least as many distinct vectors; a copy of the label in
    the projection can exist only at these scales.  This is the pruning
    that eliminates most candidates before any search runs.
    """
    prof = _bc_root_profile(label.rank) if label.family == "BC" \
        else _component_profiles(label)[1]
    out = []
    for base in sorted(census):
        if all(census.get(base * rel, 0) >= need for rel, need in prof.items()):
            out.append(base)
    return out


def census_admits(target: Target, census: Dict[Fraction, int]) -> bool:
    """Necessary census condition, checked per component."""
    return all(census_scales(lab, census) for lab in target.normalized())


# ---------------------------------------------------------------------------
# basis search


_MAX_DEGREE = {"A": 2, "B": 2, "C": 2, "D": 3, "E": 3, "F": 2, "G": 1}
_MAX_EDGE_WEIGHT = {"A": 1, "B": 2, "C": 2, "D": 1, "E": 1, "F": 2, "G": 3}


def _try_class_union(label: TypeLabel, base: Fraction,
                     pr: ProjectionResult, pool_set: Set[Vector]):
    """Decide occurrence when census classes exactly match the copy's sizes.

    If each needed class has exactly as many vectors as the copy would
    contribute, any copy must equal the class union, so testing that
    union directly is both sound and complete at this scale.
    """
    root_prof = _component_profiles(label)[1]
    class_norms = {base * rel for rel in root_prof}
    union = [v for v in pr.sigma_theta if norm2(v) in class_norms]
    uset = set(union)
    for v in union:
        if max(v, neg(v)) not in pool_set:
            return None
    for a in union:
        na = norm2(a)
        for b in union:
            c = 2 * dot(a, b) / na
            if c.denominator != 1:
                return None
            if c != 0 and sub(b, scale(c, a)) not in uset:
                return None
    positives = [v for v in union if v > neg(v)]
    pset = set(positives)
    simples = [p for p in positives
               if not any((sub(p, q) in pset) for q in positives if q != p)]
    if len(simples) != label.rank:
        return None
    decomp = match_type(simples)
    if decomp is None or len(decomp) != 1 or decomp[0][0] != label:
        return None
    return tuple(sorted(simples)), frozenset(union)


def _iter_component_bases(label: TypeLabel, pool: List[Vector],
                          pr: ProjectionResult,
                          scales: Optional[List[Fraction]] = None
                          ) -> Iterator[Tuple[Tuple[Vector, ...], frozenset]]:
    """Yield (basis, orbit) realizations of an irreducible reduced label.

    Exhaustive over the pool in deterministic order.  The pool must hold
    one representative per +-pair: a subsystem always owns a simple
    system made of lexicographically positive vectors (positivity in the
    lex order is additive), so nothing is lost.
    """
    basis_prof, root_prof = _component_profiles(label)
    universe = pr.sigma_theta_set
    pool_set = set(pool)
    if scales is None:
        scales = census_scales(label, pr.census)
    maxdeg = _MAX_DEGREE[label.family]
    maxw = _MAX_EDGE_WEIGHT[label.family]
    branch_budget = 1 if label.family in ("D", "E") else 0
    heavy_budget = 1 if label.family in ("B", "C", "F", "G") else 0
    k = label.rank

    for base in scales:
        exact = all(pr.census.get(base * rel, 0) == need
                    for rel, need in root_prof.items())
        if exact:
            hit = _try_class_union(label, base, pr, pool_set)
            if hit is not None:
                yield hit
            continue
        need = {base * rel: cnt for rel, cnt in basis_prof.items()}
        sub_pool = [v for v in pool if norm2(v) in need]
        norms = [norm2(v) for v in sub_pool]

        def dfs(start: int, chosen: List[Vector], remaining: Dict[Fraction, int],
                deg: List[int], comp_id: List[int], ncomp: int,
                branches: int, heavies: int):
            if len(chosen) == k:
                decomp = match_type(chosen)
                if decomp and len(decomp) == 1 and decomp[0][0] == label:
                    orbit = reflection_closure(chosen, universe,
                                               max_size=label.root_count)
                    if not isinstance(orbit, ClosureFailure) \
                            and len(orbit) == label.root_count:
                        yield tuple(chosen), orbit
                return
            slots = k - len(chosen)
            if ncomp - (maxdeg - 1) * slots > 1:
                return  # cannot reconnect in the remaining steps
            for idx in range(start, len(sub_pool)):
                if len(sub_pool) - idx < slots:
                    break
                v = sub_pool[idx]
                nv = norms[idx]
                if remaining.get(nv, 0) == 0:
                    continue
                links = []  # (position in chosen, edge weight)
                ok = True
                for pos, u in enumerate(chosen):
                    a = 2 * dot(u, v) / nv
                    if a.denominator != 1 or int(a) not in _VALID_OFFDIAG:
                        ok = False
                        break
                    if a != 0:
                        b = 2 * dot(v, u) / norm2(u)
                        w = int(a * b)
                        if w < 1 or w > maxw:
                            ok = False
                            break
                        links.append((pos, w))
                if not ok:
                    continue
                if len(links) > maxdeg:
                    continue
                touched = {comp_id[p] for p, _ in links}
                if len(touched) != len(links):
                    continue  # two edges into one component close a cycle
                nheavy = heavies + sum(1 for _, w in links if w > 1)
                if nheavy > heavy_budget:
                    continue
                nbranch = branches + (1 if len(links) == 3 else 0)
                new_deg = deg + [len(links)]
                for p, _ in links:
                    new_deg[p] += 1
                    if new_deg[p] > maxdeg:
                        ok = False
                    elif new_deg[p] == 3:
                        nbranch += 1
                if not ok or nbranch > branch_budget:
                    continue
                # component ids are positions in `chosen`, never reused,
                # so ids of disjoint components can never collide
                own = len(chosen)
                new_comp = comp_id + [own]
                if links:
                    tgt = min(touched)
                    merged = touched | {own}
                    new_comp = [tgt if c in merged else c for c in new_comp]
                new_n = ncomp + 1 - len(links)
                remaining[nv] -= 1
                chosen.append(v)
                yield from dfs(idx + 1, chosen, remaining, new_deg,
                               new_comp, new_n, nbranch, nheavy)
                chosen.pop()
                remaining[nv] += 1

        yield from dfs(0, [], dict(need), [], [], 0, 0, 0)


def _iter_bc_bases(rank: int, pool: List[Vector], pr: ProjectionResult
                   ) -> Iterator[Tuple[Tuple[Vector, ...], frozenset]]:
    """Realizations of the non-reduced BC_rank.

    A BC copy is a B copy (A1 when rank is 1) whose short roots also
    appear doubled in the projection; the doubled vectors join the
    certified root set.
    """
    label = TypeLabel("A", 1) if rank == 1 else TypeLabel("B", rank)
    universe = pr.sigma_theta_set
    prof = _bc_root_profile(rank)
    scales = [b for b in sorted(pr.census)
              if all(pr.census.get(b * rel, 0) >= need for rel, need in prof.items())]
    for basis, orbit in _iter_component_bases(label, pool, pr, scales=scales):
        short_norm = min(norm2(v) for v in orbit)
        shorts = [v for v in orbit if norm2(v) == short_norm]
        doubles = [scale(Fraction(2), s) for s in shorts]
        if all(dv in universe for dv in doubles):
            yield basis, frozenset(orbit | set(doubles))


def _iter_bases(label: TypeLabel, pool: List[Vector], pr: ProjectionResult):
    if label.family == "BC":
        return _iter_bc_bases(label.rank, pool, pr)
    return _iter_component_bases(label, pool, pr)


def _find_unrestricted(pr: ProjectionResult, target: Target) -> DetectionReport:
    comps = list(target.normalized())
    if not census_admits(target, pr.census):
        return DetectionReport(target, False, False, False)
    witnesses: List[ComponentWitness] = []

    def search(ci: int, pool: List[Vector]) -> bool:
        if ci == len(comps):
            return True
        label = comps[ci]
        for basis, orbit in _iter_bases(label, pool, pr):
            if ci > 0 and comps[ci - 1] == label \
                    and basis <= witnesses[-1].basis:
                continue  # identical factors: enforce an order, halve the work
            witnesses.append(ComponentWitness(label, basis, orbit))
            rest = [v for v in pool if all(dot(v, b) == 0 for b in basis)]
            if search(ci + 1, rest):
                return True
            witnesses.pop()
        return False

    if search(0, list(pr.pool())):
        cert = ClosureCertificate(target, tuple(witnesses))
        basis_in_delta = set(cert.basis) <= set(pr.delta_theta)
        return DetectionReport(target, True, False, basis_in_delta, cert)
    return DetectionReport(target, False, False, False)


def _delta_subset_bases(label: TypeLabel, delta_pool: List[Vector],
                        pr: ProjectionResult
                        ) -> Iterator[Tuple[Tuple[Vector, ...], frozenset]]:
    """Realizations of a label whose basis is a subset of delta_theta.

    The projected simple roots are taken exactly as they come: if some
    sign-flipped selection formed a simple system, the vectors as given
    would too, because mixed signs inside a connected component would
    contradict the one-signed integral expansion of the projected roots.
    """
    from itertools import combinations

    universe = pr.sigma_theta_set
    cache = getattr(pr, "_delta_closure_cache", None)
    if cache is None:
        cache = {}
        setattr(pr, "_delta_closure_cache", cache)
    inner = TypeLabel("A", 1) if label.rank == 1 and label.family in ("A", "B", "BC") \
        else (TypeLabel("B", label.rank) if label.family == "BC" else label)
    for subset in combinations(range(len(delta_pool)), inner.rank):
        basis = tuple(delta_pool[i] for i in subset)
        key = (basis, label)
        if key not in cache:
            result = None
            decomp = match_type(basis)
            if decomp is not None and len(decomp) == 1 and decomp[0][0] == inner:
                orbit = reflection_closure(basis, universe,
                                           max_size=inner.root_count)
                if not isinstance(orbit, ClosureFailure) \
                        and len(orbit) == inner.root_count:
                    if label.family == "BC":
                        short_norm = min(norm2(v) for v in orbit)
                        doubles = [scale(Fraction(2), v) for v in orbit
                                   if norm2(v) == short_norm]
                        if all(dv in universe for dv in doubles):
                            result = frozenset(orbit | set(doubles))
                    else:
                        result = orbit
            cache[key] = result
        if cache[key] is not None:
            yield basis, cache[key]


def _find_restricted(pr: ProjectionResult, target: Target) -> DetectionReport:
    """Occurrence with the distinguished basis made of projected simple roots.

    For an irreducible target, and for every component of an all-classical
    product, the basis vectors must be projections of simple roots.  In a
    product with exceptional components, the exceptional bases are pinned
    to delta_theta while the classical factors may sit anywhere in
    sigma_theta orthogonal to the rest; that is the reading under which
    the bundled product tables are stated.
    """
    comps = list(target.normalized())
    pin_all = not target.has_exceptional_component
    ordered = sorted(
        comps, key=lambda c: (not (pin_all or c.is_exceptional), c.sort_key))
    witnesses: List[ComponentWitness] = []

    def search(ci: int, delta_pool: List[Vector], pool: List[Vector]) -> bool:
        if ci == len(ordered):
            return True
        label = ordered[ci]
        pinned = pin_all or label.is_exceptional
        gen = _delta_subset_bases(label, delta_pool, pr) if pinned \
            else _iter_bases(label, pool, pr)
        for basis, roots in gen:
            if ci > 0 and ordered[ci - 1] == label \
                    and basis <= witnesses[-1].basis:
                continue
            witnesses.append(ComponentWitness(label, basis, roots))
            rest_delta = [v for v in delta_pool
                          if all(dot(v, b) == 0 for b in basis)]
            rest_pool = [v for v in pool
                         if all(dot(v, b) == 0 for b in basis)]
            if search(ci + 1, rest_delta, rest_pool):
                return True
            witnesses.pop()
        return False

    if search(0, list(pr.delta_theta), list(pr.pool())):
        cert = ClosureCertificate(target, tuple(witnesses))
        return DetectionReport(target, True, True, True, cert)
    return DetectionReport(target, False, True, False)


def find_subsystem(pr: ProjectionResult, target: Target,
                   restrict_to_delta_theta: bool = False) -> DetectionReport:
    """Decide whether the target occurs in sigma_theta at maximal rank.

    The search is exhaustive over the allowed basis pool (delta_theta
    when restricted, otherwise all of sigma_theta up to sign), so a
    not-found answer is a proof of absence within that pool.
    """
    if target.rank != pr.d:
        raise ValueError(
            f"target rank {target.rank} differs from projection rank {pr.d}")
    if restrict_to_delta_theta:
        return _find_restricted(pr, target)
    return _find_unrestricted(pr, target)


def classify_max_rank(pr: ProjectionResult, reducible: bool = False,
                      require_exceptional: bool = True) -> List[DetectionReport]:
    """One report per applicable target of rank d.

    Irreducible targets carry the unrestricted answer in ``found`` and
    the delta_theta-basis answer in ``basis_from_delta_theta``; product
    targets are checked with bases from delta_theta only.
    """
    from .catalog import detection_targets

    reports = []
    for target in detection_targets(pr.d, reducible, require_exceptional):
        if target.is_irreducible:
            restricted = _find_restricted(pr, target)
            if restricted.found:
                reports.append(DetectionReport(
                    target, True, False, True, restricted.certificate))
                continue
            unres = _find_unrestricted(pr, target)
            reports.append(DetectionReport(
                target, unres.found, False, False, unres.certificate))
        else:
            reports.append(_find_restricted(pr, target))
    return reports


def revalidate(cert: ClosureCertificate, universe: frozenset) -> bool:
    """Re-check a certificate from scratch: types, closures, containment."""
    total = 0
    for wi, witness in enumerate(cert.components):
        label, basis = witness.label, witness.basis
        for other in cert.components[wi + 1:]:
            if any(dot(a, b) != 0 for a in basis for b in other.basis):
                return False
        reduced = TypeLabel("A", 1) if label.rank == 1 and label.family in ("A", "BC") \
            else (TypeLabel("B", label.rank) if label.family == "BC" else label)
        decomp = match_type(basis)
        if decomp is None or len(decomp) != 1 or decomp[0][0] != reduced:
            return False
        orbit = reflection_closure(basis, universe, max_size=reduced.root_count)
        if isinstance(orbit, ClosureFailure) or len(orbit) != reduced.root_count:
            return False
        roots = set(orbit)
        if label.family == "BC":
            short_norm = min(norm2(v) for v in orbit)
            doubles = [scale(Fraction(2), v) for v in orbit if norm2(v) == short_norm]
            if any(dv not in universe for dv in doubles):
                return False
            roots |= set(doubles)
        if frozenset(roots) != witness.roots:
            return False
        if len(roots) != label.root_count:
            return False
        total += len(roots)
    return total == cert.target.root_count

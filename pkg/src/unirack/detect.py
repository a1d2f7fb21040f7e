"""The classification engine: type-D and type-F witnesses, exhaustive
refutation certificates, and the combined verdict.

Everything a witness asserts is re-validated independently of the search
path that produced it: a type-D witness rechecks the collapse equation and
the disjointness of the two generated orbits, a type-F witness rechecks all
three family conditions by brute force over the materialized subracks.

Refutations rely on conjugation equivariance: conjugation by a group
element is a rack automorphism of the class carrying witnesses to
witnesses, so a scan that fixes one representative against the whole class
is exhaustive for pairs, and the compatibility graph used for the type-F
necessary condition is vertex-transitive, so one adjacency row plus
translation determines the whole graph.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .chevalley import (
    HypothesisError, FamilyRefusal, ab_property, torus_witness,
    torus_family, root_add,
)
from .matgroup import Mat, Orbit, class_orbit, orbit_under, subgroup_closure


class DetectError(ValueError):
    pass


@dataclass(frozen=True)
class Budget:
    "Deterministic search budgets; no wall-clock dependence anywhere."
    orbit_cap: int = 10**6
    subgroup_cap: int = 20000
    sample_pairs: int = 64
    torus_u_limit: int = 24
    block_pairs: int = 200
    refute_pair_cap: int | None = None
    allow_refute: bool = True


def mat_json(m: Mat) -> dict:
    return {"n": m.n, "field": [m.field.p, m.field.m], "rows": m.rows(),
            "text": m.text()}


# ---------------------------------------------------------------------------
# pair machinery


def collapse_eq_holds(r: Mat, s: Mat) -> bool:
    "r > (s > (r > s)) == s; equivalent to (rs)^2 == (sr)^2."
    ri, si = r.inverse(), s.inverse()
    inner = r * s * ri
    inner = s * inner * si
    inner = r * inner * ri
    holds = inner == s
    squares_equal = (r * s) ** 2 == (s * r) ** 2
    if holds != squares_equal:
        raise DetectError("group identity violated; arithmetic is broken")
    return holds


def _pair_orbits(r: Mat, s: Mat, cap: int):
    "The <r,s>-conjugation orbits of r and of s; None on cap overflow."
    orb_r = orbit_under(r, [r, s], cap=cap)
    if not orb_r.complete:
        return None
    orb_s = orbit_under(s, [r, s], cap=cap)
    if not orb_s.complete:
        return None
    return orb_r, orb_s


@dataclass(frozen=True)
class DWitness:
    """A verified type-D witness: r, s in one class with disjoint <r,s>-orbits
    and the collapse equation violated."""
    r: Mat
    s: Mat
    orbit_r: tuple            # sorted packed
    orbit_s: tuple
    subgroup_size: int | None
    strategy: str = "search"

    def verify(self) -> bool:
        if collapse_eq_holds(self.r, self.s):
            raise DetectError("witness fails the collapse inequality")
        got = _pair_orbits(self.r, self.s, cap=10**6)
        if got is None:
            raise DetectError("witness orbits exceed the revalidation cap")
        orb_r, orb_s = got
        if tuple(orb_r.sorted_packed()) != self.orbit_r:
            raise DetectError("stored r-orbit disagrees with recomputation")
        if tuple(orb_s.sorted_packed()) != self.orbit_s:
            raise DetectError("stored s-orbit disagrees with recomputation")
        if set(self.orbit_r) & set(self.orbit_s):
            raise DetectError("witness orbits are not disjoint")
        self._check_union_is_decomposable_subrack(orb_r, orb_s)
        return True

    def _check_union_is_decomposable_subrack(self, orb_r: Orbit, orb_s: Orbit):
        F, n = self.r.field, self.r.n
        union = [Mat(F, n, tuple(b)) for b in list(self.orbit_r) + list(self.orbit_s)]
        keys = set(self.orbit_r) | set(self.orbit_s)
        pairs = ((x, y) for x in union for y in union)
        if len(union) > 64:
            rng = random.Random(0)
            pairs = (((union[rng.randrange(len(union))],
                       union[rng.randrange(len(union))]))
                     for _ in range(2000))
        for x, y in pairs:
            if (x * y * x.inverse()).pack() not in keys:
                raise DetectError("witness union is not a subrack")

    def to_json(self) -> dict:
        return {
            "kind": "witness_D",
            "r": mat_json(self.r),
            "s": mat_json(self.s),
            "orbit_sizes": [len(self.orbit_r), len(self.orbit_s)],
            "subgroup_size": self.subgroup_size,
            "strategy": self.strategy,
            "check": {"rs_squared": mat_json((self.r * self.s) ** 2),
                      "sr_squared": mat_json((self.s * self.r) ** 2)},
        }


@dataclass(frozen=True)
class DPairResult:
    kind: str                  # degenerate_commuting | degenerate_square |
    #                            witness | same_orbit | cap_exceeded
    witness: DWitness | None = None
    note: str = ""


def d_pair(r: Mat, s: Mat, cap: int = 10**6, subgroup_cap: int = 20000,
           strategy: str = "search") -> DPairResult:
    """Evaluate one candidate pair.

    degenerate if rs = sr or the collapse equation holds; otherwise the two
    <r,s>-orbits are generated (without materializing the subgroup) and the
    pair is a witness iff they are disjoint.
    """
    if r.field is not s.field or r.n != s.n:
        raise DetectError("pair must live in one matrix group")
    if r == s or r * s == s * r:
        return DPairResult("degenerate_commuting")
    if collapse_eq_holds(r, s):
        return DPairResult("degenerate_square")
    got = _pair_orbits(r, s, cap)
    if got is None:
        return DPairResult("cap_exceeded", note=f"orbit cap {cap} exceeded")
    orb_r, orb_s = got
    if orb_r.packed & orb_s.packed:
        return DPairResult("same_orbit")
    size = None
    if subgroup_cap:
        closure = subgroup_closure([r, s], cap=subgroup_cap)
        size = closure.size if closure.complete else None
    w = DWitness(r, s, tuple(orb_r.sorted_packed()), tuple(orb_s.sorted_packed()),
                 size, strategy)
    w.verify()
    return DPairResult("witness", w)


# ---------------------------------------------------------------------------
# type-F families


@dataclass(frozen=True)
class FWitness:
    """Four mutually disjoint, mutually stable subracks with pairwise
    non-fixing representatives; all three conditions verified brute-force."""
    reps: tuple               # 4 Mats
    subracks: tuple           # 4 sorted packed tuples
    builder: str

    def verify(self) -> bool:
        F, n = self.reps[0].field, self.reps[0].n
        sets = [set(t) for t in self.subracks]
        for a in range(4):
            if self.reps[a].pack() not in sets[a]:
                raise DetectError(f"representative {a+1} is outside its subrack")
        for a in range(4):
            for b in range(4):
                if a < b and sets[a] & sets[b]:
                    raise DetectError(f"subracks {a+1} and {b+1} intersect")
        mats = [[Mat(F, n, tuple(p)) for p in t] for t in self.subracks]
        for a in range(4):
            for b in range(4):
                image = {(x * y * x.inverse()).pack()
                         for x in mats[a] for y in mats[b]}
                if image != sets[b]:
                    raise DetectError(f"stability fails for ({a+1},{b+1})")
        for a in range(4):
            for b in range(4):
                if a != b:
                    x, y = self.reps[a], self.reps[b]
                    if x * y * x.inverse() == y:
                        raise DetectError(f"representatives {a+1},{b+1} commute")
        return True

    def to_json(self) -> dict:
        return {
            "kind": "witness_F",
            "reps": [mat_json(m) for m in self.reps],
            "subrack_sizes": [len(t) for t in self.subracks],
            "builder": self.builder,
        }


@dataclass(frozen=True)
class FFailure:
    condition: str            # disjointness | stability | fixing | degenerate
    indices: tuple

    def __bool__(self):
        return False


def check_f_family(reps, u_group, builder: str = "torus_translates",
                   subracks=None):
    """Verify a 4-family: R_a = U > r_a (or explicit subracks).

    Returns an FWitness on success, otherwise a structured FFailure naming
    the violated condition and the indices involved.
    """
    reps = tuple(reps)
    if len(reps) != 4:
        raise DetectError("a type-F family has exactly 4 representatives")
    if subracks is None:
        subracks = []
        for r in reps:
            orb = {(u * r * u.inverse()).pack() for u in u_group}
            subracks.append(tuple(sorted(orb)))
    subracks = tuple(tuple(t) for t in subracks)
    sets = [set(t) for t in subracks]
    for a in range(4):
        for b in range(a + 1, 4):
            if reps[a] == reps[b]:
                return FFailure("disjointness", (a + 1, b + 1))
            if sets[a] & sets[b]:
                return FFailure("disjointness", (a + 1, b + 1))
    for a in range(4):
        for b in range(4):
            if a != b:
                x, y = reps[a], reps[b]
                if x * y * x.inverse() == y:
                    return FFailure("fixing", (a + 1, b + 1))
    w = FWitness(reps, subracks, builder)
    w.verify()
    return w


# ---------------------------------------------------------------------------
# certificates and refutations


@dataclass
class Certificate:
    kind: str                 # not_D | not_F
    basis: str                # exhaustive | necessary-condition | sampled
    stats: dict
    scan_log: dict
    complete: bool = True
    resume_state: dict | None = None

    def to_json(self) -> dict:
        return {"kind": self.kind, "verdict_basis": self.basis,
                "stats": self.stats, "scan_log": self.scan_log,
                "complete": self.complete}


EQUIVARIANCE_NOTE = ("fixed-representative scan; conjugation is a rack "
                     "automorphism of the class mapping witnesses to "
                     "witnesses, so pairs (r, s) with r fixed are exhaustive")


def refute_d(spec, orbit: Orbit, budget: Budget = Budget(), resume=None,
             checkpoint_cb=None, checkpoint_every: int = 100000):
    """Scan all pairs (rep, s) over the class; returns a not_D Certificate,
    or the DWitness if one turns up after all.

    The class is homogeneous, so fixing the canonical representative loses
    nothing (see EQUIVARIANCE_NOTE).  A pair-evaluation cap downgrades the
    certificate to sampled and records a resume state.
    """
    F, n = orbit.field, orbit.n
    packed = orbit.sorted_packed()
    rep = Mat(F, n, tuple(packed[0]))
    stats = {"class_size": len(packed), "pairs": 0, "degenerate": 0,
             "same_orbit": 0, "cap_skipped": 0}
    start = 0
    if resume:
        start = resume["next_index"]
        stats.update(resume["stats"])
    for idx in range(start, len(packed)):
        if budget.refute_pair_cap is not None and stats["pairs"] >= budget.refute_pair_cap:
            state = {"next_index": idx, "stats": dict(stats)}
            if checkpoint_cb:
                checkpoint_cb(state)
            return Certificate("not_D", "sampled", stats,
                               {"note": "pair cap reached", **_d_log(rep)},
                               complete=False, resume_state=state)
        s = Mat(F, n, tuple(packed[idx]))
        if s == rep:
            continue
        res = d_pair(rep, s, cap=budget.orbit_cap, subgroup_cap=0)
        stats["pairs"] += 1
        if res.kind == "witness":
            return res.witness
        if res.kind.startswith("degenerate"):
            stats["degenerate"] += 1
        elif res.kind == "same_orbit":
            stats["same_orbit"] += 1
        else:
            stats["cap_skipped"] += 1
        if checkpoint_cb and stats["pairs"] % checkpoint_every == 0:
            checkpoint_cb({"next_index": idx + 1, "stats": dict(stats)})
    basis = "exhaustive" if stats["cap_skipped"] == 0 else "sampled"
    return Certificate("not_D", basis, stats, _d_log(rep),
                       complete=stats["cap_skipped"] == 0)


def _d_log(rep: Mat) -> dict:
    return {"fixed_representative": rep.text(), "equivariance": EQUIVARIANCE_NOTE}


def f_edge(r: Mat, s: Mat, cap: int = 10**6) -> bool:
    "Compatibility-graph edge: r > s != s and the <r,s>-orbits differ."
    if r == s or r * s == s * r:
        return False
    got = _pair_orbits(r, s, cap)
    if got is None:
        raise DetectError("orbit cap exceeded in edge test")
    orb_r, orb_s = got
    return not (orb_r.packed & orb_s.packed)


def _orbit_hits(start: Mat, gen_pairs, targets: set, cap: int):
    "Conjugation orbit BFS with early exit when a target element appears."
    F, n = start.field, start.n
    from .matgroup import mul_flat
    seen = {start.pack()}
    if seen & targets:
        return True, seen
    frontier = [start.flat]
    while frontier:
        nxt = []
        for x in frontier:
            for g, gi in gen_pairs:
                y = mul_flat(F, n, mul_flat(F, n, g, x), gi)
                b = bytes(y)
                if b not in seen:
                    if b in targets:
                        return True, None
                    seen.add(b)
                    nxt.append(y)
                    if len(seen) > cap:
                        raise DetectError("orbit cap exceeded in the joint test")
        frontier = nxt
    return False, seen


def _family_orbits_disjoint(elems, cap: int) -> bool:
    """Necessary condition at the family level: the orbits of the elements
    under the subgroup generated by all of them stay pairwise disjoint
    (each stable subrack of a genuine family contains the orbit of its
    representative under conjugation by every family member)."""
    from .matgroup import inv_flat
    F, n = elems[0].field, elems[0].n
    gen_pairs = [(g.flat, inv_flat(F, n, g.flat)) for g in elems]
    done = []
    for i, x in enumerate(elems):
        others = {e.pack() for j, e in enumerate(elems) if j != i}
        hit, seen = _orbit_hits(x, gen_pairs, others, cap)
        if hit:
            return False
        for s in done:
            if s & seen:
                return False
        done.append(seen)
    return True


def refute_f(spec, class_rep: Mat, budget: Budget = Budget(),
             orbit: Orbit | None = None, resume=None, checkpoint_cb=None,
             checkpoint_every: int = 100000):
    """Certify the necessary condition for type F on the class.

    The compatibility graph has an edge (x, y) iff x > y != y and the
    <x,y>-orbits of x and y differ; a type-F family forces its four
    representatives to be pairwise adjacent (each O_{r_a}^{<r_a,r_b>} sits
    inside the stable subrack R_a), and moreover to have pairwise disjoint
    orbits under the subgroup generated by all four.  Every 4-clique of the
    pair-level graph is therefore re-verified at the joint level; the
    certificate asserts that no configuration satisfying the necessary
    conditions exists.

    The graph is vertex-transitive, so one adjacency row is computed
    directly and all other adjacencies are translated back to the fixed
    representative through the orbit transversal.  Returns a Certificate,
    or a dict describing a surviving 4-clique (type F then stays
    undecided: the conditions are only necessary).
    """
    if orbit is None or orbit.transversal is None:
        orbit = class_orbit(class_rep, spec, cap=budget.orbit_cap,
                            want_transversal=True)
    F, n = orbit.field, orbit.n
    packed = orbit.sorted_packed()
    rep = Mat(F, n, tuple(packed[0]))
    if rep.flat != orbit.rep_flat:
        orbit = class_orbit(rep, spec, cap=budget.orbit_cap, want_transversal=True)
    stats = {"class_size": len(packed), "row_edges": 0, "pair_tests": 0,
             "pair_level_cliques": 0, "joint_tests": 0}
    if resume:
        stats.update(resume.get("stats", {}))
    neighbors = []
    for b in packed:
        s = Mat(F, n, tuple(b))
        if s == rep:
            continue
        stats["pair_tests"] += 1
        if f_edge(rep, s, cap=budget.orbit_cap):
            neighbors.append(b)
    stats["row_edges"] = len(neighbors)
    nset = set(neighbors)
    m = len(neighbors)
    adj = [0] * m
    # translated adjacency: edge(x, y) iff g_x^-1 y g_x is a neighbor of rep
    for i, bx in enumerate(neighbors):
        g = orbit.conjugator_to(Mat(F, n, tuple(bx)))
        gi = g.inverse()
        for j in range(i + 1, m):
            y = Mat(F, n, tuple(neighbors[j]))
            z = (gi * y * g).pack()
            stats["pair_tests"] += 1
            if z in nset:
                adj[i] |= 1 << j
                adj[j] |= 1 << i
            if checkpoint_cb and stats["pair_tests"] % checkpoint_every == 0:
                checkpoint_cb({"stats": dict(stats)})
    # candidate 4-cliques through rep = triangles inside the neighborhood;
    # edges are pruned by the triple-level joint test, survivors re-verified
    # at the four-element level
    stats.setdefault("triple_pruned_edges", 0)
    mats = [Mat(F, n, tuple(b)) for b in neighbors]
    for i in range(m):
        ai = adj[i]
        if not ai:
            continue
        for j in range(i + 1, m):
            if not (ai >> j & 1):
                continue
            common = ai & adj[j] & ~((1 << (j + 1)) - 1)
            if not common:
                continue
            if not _family_orbits_disjoint([rep, mats[i], mats[j]],
                                           budget.orbit_cap):
                stats["triple_pruned_edges"] += 1
                continue
            rest = common
            while rest:
                k = (rest & -rest).bit_length() - 1
                rest &= rest - 1
                stats["pair_level_cliques"] += 1
                stats["joint_tests"] += 1
                if _family_orbits_disjoint([rep, mats[i], mats[j], mats[k]],
                                           budget.orbit_cap):
                    return {"clique": [rep.pack(), neighbors[i], neighbors[j],
                                       neighbors[k]],
                            "stats": stats}
                if checkpoint_cb and stats["joint_tests"] % max(checkpoint_every // 100, 1) == 0:
                    checkpoint_cb({"stats": dict(stats)})
    log = {"fixed_representative": rep.text(),
           "note": ("edge (x, y) iff x > y != y and the <x,y>-classes of x "
                    "and y differ; every pair-level 4-clique fails the "
                    "joint-orbit condition"),
           "equivariance": "one row computed, the rest translated"}
    return Certificate("not_F", "necessary-condition", stats, log)


# ---------------------------------------------------------------------------
# find strategies


@dataclass
class ClassContext:
    "Everything classify needs about one split class."
    spec: object
    rep: Mat
    orbit: Orbit
    label: object = None
    split_index: int = 0
    u_members: tuple = ()
    model: object = None
    blocks: tuple = ()
    u_group: tuple = ()
    name: str = ""

    def sorted_mats(self):
        F, n = self.orbit.field, self.orbit.n
        for b in self.orbit.sorted_packed():
            yield Mat(F, n, tuple(b))


def _supp_pairs(model, word):
    "Unordered support pairs whose sum is a root, non-degenerate, in order."
    rs = model.rs
    supp = sorted(word.support(), key=lambda r: (rs.height(r), r))
    out = []
    for i, a in enumerate(supp):
        for b in supp[i + 1:]:
            if not rs.is_root(root_add(a, b)):
                continue
            if rs.is_degenerate_pair(a, b, model.field.p):
                continue
            out.append((a, b))
    return out


def find_d_torus(ctx: ClassContext, budget: Budget) -> DWitness | None:
    "Torus conjugate witness from the support condition (odd q)."
    model = ctx.model
    if model is None or ctx.spec.q % 2 == 0:
        return None
    for u in ctx.u_members[:budget.torus_u_limit]:
        word = model.factorize(u)
        for a, b in _supp_pairs(model, word):
            if not ab_property(model, word, a, b):
                continue
            try:
                w = torus_witness(a, b, ctx.spec.q, "chevalley", model=model)
            except HypothesisError:
                continue
            t = w.torus.mat
            s = t * u * t.inverse()
            res = d_pair(u, s, cap=budget.orbit_cap,
                         subgroup_cap=budget.subgroup_cap, strategy="torus")
            if res.kind == "witness":
                return res.witness
    return None


def find_f_torus(ctx: ClassContext, budget: Budget) -> FWitness | None:
    """Torus-translate 4-families: the rank-2 diagonal family for even q > 2
    regular classes, and the generic family when q is large enough."""
    model = ctx.model
    if model is None or not ctx.u_group:
        return None
    q = ctx.spec.q
    F = model.field
    # rank-2 regular family, even q > 2
    if q % 2 == 0 and q > 2 and model.rank == 2:
        a1, a2 = model.rs.simple
        for u in ctx.u_members:
            word = model.factorize(u)
            supp = word.support()
            if a1 not in supp or a2 not in supp or root_add(a1, a2) in supp:
                continue
            ts = [model.torus((((2, 0), F.pow(F.generator, a)),
                               ((0, 2), F.pow(F.generator, b)))).mat
                  for a, b in ((0, 0), (0, 1), (1, 0), (1, 1))]
            reps = [t * u * t.inverse() for t in ts]
            got = check_f_family(reps, ctx.u_group, builder="torus_translates")
            if isinstance(got, FWitness):
                return got
    if q not in (2, 3, 4, 5, 7):
        for u in ctx.u_members[:budget.torus_u_limit]:
            word = model.factorize(u)
            for a, b in _supp_pairs(model, word):
                if not ab_property(model, word, a, b):
                    continue
                try:
                    fam = torus_family(a, b, q, "chevalley", model=model)
                except (FamilyRefusal, HypothesisError):
                    continue
                reps = [t * u * t.inverse() for t in fam.torus_mats]
                got = check_f_family(reps, ctx.u_group, builder="torus_translates")
                if isinstance(got, FWitness):
                    return got
    return None


def _eq21_pair_in_orbit(orbit_mats, limit):
    "First (a, b) in the orbit with the collapse equation violated."
    mats = orbit_mats
    a = mats[0]
    for b in mats[1:limit]:
        if a * b != b * a and not collapse_eq_holds(a, b):
            return a, b
    for a in mats[1:limit]:
        for b in mats[1:limit]:
            if a != b and a * b != b * a and not collapse_eq_holds(a, b):
                return a, b
    return None


def find_d_product(ctx: ClassContext, budget: Budget) -> DWitness | None:
    """Product-rack witness: a collapse-violating pair in one block times a
    distinct commuting pair in the complement (the two-factor construction
    for products of racks)."""
    for blk in ctx.blocks:
        if blk.component.is_identity() or blk.rest.is_identity():
            continue
        x_orb = orbit_under(blk.component, blk.gens, cap=budget.subgroup_cap)
        if not x_orb.complete:
            continue
        x_mats = list(x_orb.mats())
        pair = _eq21_pair_in_orbit(x_mats, budget.block_pairs)
        if pair is None:
            continue
        y_orb = orbit_under(blk.rest, blk.comp_gens, cap=budget.orbit_cap)
        if not y_orb.complete:
            continue
        y1 = blk.rest
        y2 = next((y for y in y_orb.mats() if y != y1 and y * y1 == y1 * y), None)
        if y2 is None:
            continue
        x1, x2 = pair
        r, s = x1 * y1, x2 * y2
        res = d_pair(r, s, cap=budget.orbit_cap,
                     subgroup_cap=budget.subgroup_cap, strategy="product")
        if res.kind == "witness" and ctx.orbit.contains(r) and ctx.orbit.contains(s):
            return res.witness
    return None


def find_d_block(ctx: ClassContext, budget: Budget) -> DWitness | None:
    """Witness embedded from a single block: a type-D pair of the block class
    times the untouched rest of the representative."""
    for blk in ctx.blocks:
        if blk.component.is_identity():
            continue
        x_orb = orbit_under(blk.component, blk.gens, cap=budget.subgroup_cap)
        if not x_orb.complete:
            continue
        a = blk.component
        count = 0
        for b in x_orb.mats():
            if b == a:
                continue
            count += 1
            if count > budget.block_pairs:
                break
            r, s = a * blk.rest, b * blk.rest
            res = d_pair(r, s, cap=budget.orbit_cap,
                         subgroup_cap=budget.subgroup_cap, strategy="block")
            if res.kind == "witness" and ctx.orbit.contains(r) and ctx.orbit.contains(s):
                return res.witness
    return None


def find_d_sampled(ctx: ClassContext, budget: Budget, seed: int) -> DWitness | None:
    """Deterministic cheap candidates (generator and torus conjugates of the
    representative) followed by a seeded sample of the class."""
    rep = ctx.rep
    spec = ctx.spec
    candidates = []
    seen = {rep.pack()}
    for g in sorted(spec.generators):
        s = g * rep * g.inverse()
        if s.pack() not in seen:
            seen.add(s.pack())
            candidates.append(s)
    for g in sorted(spec.generators)[:6]:
        for h in sorted(spec.generators)[:6]:
            s = (g * h) * rep * (g * h).inverse()
            if s.pack() not in seen:
                seen.add(s.pack())
                candidates.append(s)
    packed = ctx.orbit.sorted_packed()
    rng = random.Random(seed)
    F, n = ctx.orbit.field, ctx.orbit.n
    for _ in range(budget.sample_pairs):
        b = packed[rng.randrange(len(packed))]
        if b not in seen:
            seen.add(b)
            candidates.append(Mat(F, n, tuple(b)))
    for s in candidates:
        res = d_pair(rep, s, cap=budget.orbit_cap,
                     subgroup_cap=budget.subgroup_cap, strategy="sampled")
        if res.kind == "witness":
            return res.witness
    return None


def find_d(ctx: ClassContext, strategy: str = "auto",
           budget: Budget = Budget(), seed: int = 0):
    """Strategy dispatcher for the type-D search.

    torus / product / block / sampled run one strategy; exhaustive runs the
    fixed-representative scan and returns its witness or None; auto runs
    them in pipeline order and stops at the first witness."""
    if strategy == "torus":
        return find_d_torus(ctx, budget)
    if strategy == "product":
        return find_d_product(ctx, budget)
    if strategy == "block":
        return find_d_block(ctx, budget)
    if strategy == "sampled":
        return find_d_sampled(ctx, budget, seed)
    if strategy == "exhaustive":
        got = refute_d(ctx.spec, ctx.orbit, budget)
        return got if isinstance(got, DWitness) else None
    if strategy == "auto":
        for s in ("torus", "product", "block", "sampled", "exhaustive"):
            w = find_d(ctx, s, budget, seed)
            if w is not None:
                return w
        return None
    raise DetectError(f"unknown strategy {strategy!r}")


# ---------------------------------------------------------------------------
# the pipeline


@dataclass
class Verdict:
    kind: str                           # D | F | cthulhu | unknown
    witness_d: DWitness | None = None
    witness_f: FWitness | None = None
    cert_not_d: Certificate | None = None
    cert_not_f: Certificate | None = None
    strategy: str = ""
    seed: int = 0
    logs: tuple = ()
    clique: dict | None = None

    def to_json(self) -> dict:
        out = {"verdict": self.kind, "strategy": self.strategy, "seed": self.seed,
               "logs": list(self.logs)}
        if self.witness_d:
            out["witness"] = self.witness_d.to_json()
        if self.witness_f:
            out["witness"] = self.witness_f.to_json()
        if self.cert_not_d:
            out["cert_not_d"] = self.cert_not_d.to_json()
        if self.cert_not_f:
            out["cert_not_f"] = self.cert_not_f.to_json()
        if self.kind == "cthulhu":
            out["verdict_basis"] = [self.cert_not_d.basis, self.cert_not_f.basis]
        return out


def classify(ctx: ClassContext, budget: Budget = Budget(), seed: int = 0,
             resume=None, checkpoint_cb=None) -> Verdict:
    """Strategy pipeline, in fixed order: torus constructions (type D for
    odd q, type-F families for even q), the product and single-block
    constructions, a seeded sample, then the exhaustive refutations.
    cthulhu only when the not_D certificate is exhaustive and the not_F
    certificate holds at necessary-condition grade.
    """
    logs = []

    w = find_d_torus(ctx, budget)
    if w:
        return Verdict("D", witness_d=w, strategy="torus", seed=seed, logs=tuple(logs))
    logs.append("torus D: no applicable support pair")

    fw = find_f_torus(ctx, budget)
    if fw:
        return Verdict("F", witness_f=fw, strategy="torus", seed=seed, logs=tuple(logs))
    logs.append("torus F: no applicable family")

    w = find_d_product(ctx, budget)
    if w:
        return Verdict("D", witness_d=w, strategy="product", seed=seed, logs=tuple(logs))
    logs.append("product: no block split with both pair kinds")

    w = find_d_block(ctx, budget)
    if w:
        return Verdict("D", witness_d=w, strategy="block", seed=seed, logs=tuple(logs))
    logs.append("block: no embedded witness")

    w = find_d_sampled(ctx, budget, seed)
    if w:
        return Verdict("D", witness_d=w, strategy="sampled", seed=seed, logs=tuple(logs))
    logs.append("sampled: no witness among candidates")

    if not budget.allow_refute:
        return Verdict("unknown", strategy="budget", seed=seed, logs=tuple(logs))

    got = refute_d(ctx.spec, ctx.orbit, budget, resume=resume,
                   checkpoint_cb=checkpoint_cb)
    if isinstance(got, DWitness):
        return Verdict("D", witness_d=got, strategy="exhaustive", seed=seed,
                       logs=tuple(logs))
    cert_d = got
    if not cert_d.complete:
        return Verdict("unknown", cert_not_d=cert_d, strategy="budget",
                       seed=seed, logs=tuple(logs + ["refute_d capped"]))

    got_f = refute_f(ctx.spec, ctx.rep, budget)
    if isinstance(got_f, dict):
        return Verdict("unknown", cert_not_d=cert_d, clique=got_f,
                       strategy="clique-found", seed=seed,
                       logs=tuple(logs + ["4-clique exists; type F undecided"]))
    return Verdict("cthulhu", cert_not_d=cert_d, cert_not_f=got_f,
                   strategy="refutation", seed=seed, logs=tuple(logs))


# ---------------------------------------------------------------------------
# twisted rank-2 family and spot checks


def su3_f_family(q: int) -> FWitness:
    "The 4-family for the regular twisted rank-2 class, fully materialized."
    from .chevalley import su3_model
    su3 = su3_model(q)
    fam = torus_family(None, None, q, "su3")
    u = su3.regular_rep()
    reps = [t * u * t.inverse() for t in fam.torus_mats]
    got = check_f_family(reps, list(su3.u_elements()), builder="torus_translates")
    if not isinstance(got, FWitness):
        raise DetectError(f"twisted family failed: {got}")
    return got


def group_identity_spot_check(spec, rng, n_pairs: int = 10000) -> bool:
    "The collapse equation vs squared products, on random pairs."
    from .matgroup import random_element
    for _ in range(n_pairs):
        r = random_element(spec, rng, length=8)
        s = random_element(spec, rng, length=8)
        collapse_eq_holds(r, s)    # raises if the equivalence ever fails
    return True

"""Matrix elements of classical groups over small finite fields.

Matrices are immutable: a Mat is a flat tuple of field codes plus its Field.
Hot loops (orbit closures, conjugation scans) work on the flat tuples
directly and store visited sets as `bytes(flat)`, which is compact and
hashes at C speed.  All iteration orders are canonical so that orbit dumps,
certificates and reports are reproducible bit for bit.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass, field as dc_field

from .ffield import Field, FieldError, make_field

DEFAULT_CAP = 10**6


class GroupError(ValueError):
    pass


# ---------------------------------------------------------------------------
# flat-tuple matrix kernel


def identity_flat(n: int) -> tuple[int, ...]:
    return tuple(1 if i == j else 0 for i in range(n) for j in range(n))


def mul_flat(F: Field, n: int, A, B) -> tuple[int, ...]:
    out = [0] * (n * n)
    if F.p == 2 and F.m == 1:
        for i in range(n):
            io = i * n
            for k in range(n):
                if A[io + k]:
                    ko = k * n
                    for j in range(n):
                        if B[ko + j]:
                            out[io + j] ^= 1
        return tuple(out)
    mt, at, q = F._mul_t, F._add_t, F.q
    if mt is not None:
        for i in range(n):
            io = i * n
            for k in range(n):
                a = A[io + k]
                if a:
                    ko = k * n
                    aq = a * q
                    for j in range(n):
                        b = B[ko + j]
                        if b:
                            out[io + j] = at[out[io + j] * q + mt[aq + b]]
        return tuple(out)
    for i in range(n):
        io = i * n
        for k in range(n):
            a = A[io + k]
            if a:
                ko = k * n
                for j in range(n):
                    b = B[ko + j]
                    if b:
                        out[io + j] = F.add(out[io + j], F.mul(a, b))
    return tuple(out)


def transpose_flat(n: int, A) -> tuple[int, ...]:
    return tuple(A[j * n + i] for i in range(n) for j in range(n))


def inv_flat(F: Field, n: int, A) -> tuple[int, ...]:
    "Gauss-Jordan inverse; raises GroupError if singular."
    M = [list(A[i * n:(i + 1) * n]) + [1 if j == i else 0 for j in range(n)]
         for i in range(n)]
    for col in range(n):
        piv = next((r for r in range(col, n) if M[r][col]), None)
        if piv is None:
            raise GroupError("matrix is singular")
        M[col], M[piv] = M[piv], M[col]
        inv = F.inv(M[col][col])
        if inv != 1:
            M[col] = [F.mul(inv, x) for x in M[col]]
        for r in range(n):
            if r != col and M[r][col]:
                c = M[r][col]
                row, prow = M[r], M[col]
                for j in range(col, 2 * n):
                    if prow[j]:
                        row[j] = F.sub(row[j], F.mul(c, prow[j]))
    return tuple(M[i][n + j] for i in range(n) for j in range(n))


def rank_flat(F: Field, n: int, A) -> int:
    M = [list(A[i * n:(i + 1) * n]) for i in range(n)]
    rank, col = 0, 0
    while rank < n and col < n:
        piv = next((r for r in range(rank, n) if M[r][col]), None)
        if piv is None:
            col += 1
            continue
        M[rank], M[piv] = M[piv], M[rank]
        inv = F.inv(M[rank][col])
        if inv != 1:
            M[rank] = [F.mul(inv, x) for x in M[rank]]
        for r in range(n):
            if r != rank and M[r][col]:
                c = M[r][col]
                M[r] = [F.sub(x, F.mul(c, y)) for x, y in zip(M[r], M[rank])]
        rank += 1
        col += 1
    return rank


def det_flat(F: Field, n: int, A) -> int:
    M = [list(A[i * n:(i + 1) * n]) for i in range(n)]
    det = 1
    for col in range(n):
        piv = next((r for r in range(col, n) if M[r][col]), None)
        if piv is None:
            return 0
        if piv != col:
            M[col], M[piv] = M[piv], M[col]
            det = F.neg(det)
        det = F.mul(det, M[col][col])
        inv = F.inv(M[col][col])
        for r in range(col + 1, n):
            if M[r][col]:
                c = F.mul(inv, M[r][col])
                M[r] = [F.sub(x, F.mul(c, y)) for x, y in zip(M[r], M[col])]
    return det


class Mat:
    """An n-by-n matrix over one Field.  Equality and hashing are entrywise."""

    __slots__ = ("field", "n", "flat", "_hash")

    def __init__(self, field: Field, n: int, flat):
        self.field = field
        self.n = n
        self.flat = tuple(flat)
        if len(self.flat) != n * n:
            raise GroupError("entry count does not match the dimension")
        self._hash = hash((id(field), n, self.flat))

    @classmethod
    def identity(cls, field: Field, n: int) -> "Mat":
        return cls(field, n, identity_flat(n))

    @classmethod
    def from_rows(cls, field: Field, rows) -> "Mat":
        n = len(rows)
        flat = []
        for row in rows:
            if len(row) != n:
                raise GroupError("rows must be square")
            for x in row:
                code = x.code if hasattr(x, "code") else int(x) % field.p if not (
                    0 <= int(x) < field.q) else int(x)
                flat.append(code)
        return cls(field, n, flat)

    def rows(self):
        n = self.n
        return [list(self.flat[i * n:(i + 1) * n]) for i in range(n)]

    def entry(self, i: int, j: int) -> int:
        return self.flat[i * self.n + j]

    def __mul__(self, other: "Mat") -> "Mat":
        if not isinstance(other, Mat):
            return NotImplemented
        if other.field is not self.field or other.n != self.n:
            raise FieldError("matrix product across different fields or sizes")
        return Mat(self.field, self.n, mul_flat(self.field, self.n, self.flat, other.flat))

    def inverse(self) -> "Mat":
        return Mat(self.field, self.n, inv_flat(self.field, self.n, self.flat))

    def transpose(self) -> "Mat":
        return Mat(self.field, self.n, transpose_flat(self.n, self.flat))

    def __pow__(self, e: int) -> "Mat":
        if e < 0:
            return self.inverse() ** (-e)
        out = Mat.identity(self.field, self.n)
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def conj(self, g: "Mat") -> "Mat":
        "g * self * g^-1."
        return g * self * g.inverse()

    def frobenius(self, r: int = 1) -> "Mat":
        F = self.field
        return Mat(F, self.n, tuple(F.frobenius(x, r) for x in self.flat))

    def det(self) -> int:
        return det_flat(self.field, self.n, self.flat)

    def order(self, cap: int = 10**6) -> int:
        acc, k = self, 1
        ident = Mat.identity(self.field, self.n)
        while acc != ident:
            acc = acc * self
            k += 1
            if k > cap:
                raise GroupError("element order exceeds cap")
        return k

    def is_identity(self) -> bool:
        return self.flat == identity_flat(self.n)

    def map_to(self, emb) -> "Mat":
        "Entrywise image under a field Embedding."
        return Mat(emb.dst, self.n, tuple(emb.apply(x) for x in self.flat))

    def descend_to(self, emb) -> "Mat":
        return Mat(emb.src, self.n, tuple(emb.descend(x) for x in self.flat))

    def __eq__(self, other):
        return (isinstance(other, Mat) and other.field is self.field
                and other.n == self.n and other.flat == self.flat)

    def __hash__(self):
        return self._hash

    def __lt__(self, other):
        return self.flat < other.flat

    def pack(self) -> bytes:
        return bytes(self.flat)

    def text(self) -> str:
        "Row-major text form in the field's report format."
        F = self.field
        return ";".join(" ".join(F.format_element(x) for x in row) for row in self.rows())

    def __repr__(self):
        return f"Mat{self.n}x{self.n}[{self.text()}]"


def mat_from_ints(field: Field, rows) -> Mat:
    "Rows of small integers; negatives are reduced into the prime field."
    n = len(rows)
    flat = []
    for row in rows:
        for x in row:
            flat.append(x if 0 <= x < field.q else x % field.p)
    return Mat(field, n, flat)


def antidiag_flat(n: int) -> tuple[int, ...]:
    return tuple(1 if i + j == n - 1 else 0 for i in range(n) for j in range(n))


def j_mat(field: Field, n: int) -> Mat:
    "The anti-diagonal involution."
    return Mat(field, n, antidiag_flat(n))


# ---------------------------------------------------------------------------
# group specifications


@dataclass(frozen=True)
class GroupSpec:
    family: str                    # GL | SL | Sp | GU | SU
    n: int                         # matrix size
    q: int                         # defining field size (entries over q^2 for GU/SU)
    field: Field = dc_field(compare=False)
    form: Mat | None = dc_field(compare=False)
    generators: tuple[Mat, ...] = dc_field(compare=False)
    order: int = dc_field(compare=False)

    @property
    def name(self) -> str:
        return f"{self.family}{self.n}({self.q})"

    @property
    def det_one(self) -> bool:
        return self.family in ("SL", "SU", "Sp")

    def gen_pairs(self):
        "Generators with precomputed inverses, in canonical order."
        return _gen_pairs(self)

    def identity(self) -> Mat:
        return Mat.identity(self.field, self.n)

    def __repr__(self):
        return self.name


@functools.lru_cache(maxsize=None)
def _gen_pairs(spec: GroupSpec):
    out = []
    for g in sorted(spec.generators):
        out.append((g.flat, inv_flat(spec.field, spec.n, g.flat)))
    return tuple(out)


def classical_order(family: str, n: int, q: int) -> int:
    if family == "GL":
        o = q ** (n * (n - 1) // 2)
        for i in range(1, n + 1):
            o *= q**i - 1
        return o
    if family == "SL":
        return classical_order("GL", n, q) // (q - 1)
    if family == "Sp":
        if n % 2:
            raise GroupError("symplectic groups need even matrix size")
        r = n // 2
        o = q ** (r * r)
        for i in range(1, r + 1):
            o *= q ** (2 * i) - 1
        return o
    if family == "GU":
        o = q ** (n * (n - 1) // 2)
        for i in range(1, n + 1):
            o *= q**i - (-1) ** i
        return o
    if family == "SU":
        return classical_order("GU", n, q) // (q + 1)
    raise GroupError(f"unknown family {family!r}")


def symplectic_form(field: Field, n: int) -> Mat:
    """The invariant bilinear form: for odd q the block form with
    anti-diagonal J blocks and a minus sign, for even q the single
    anti-diagonal involution."""
    if n % 2:
        raise GroupError("even matrix size required")
    if field.p == 2:
        return j_mat(field, n)
    r = n // 2
    flat = [0] * (n * n)
    for i in range(r):
        flat[i * n + (n - 1 - i)] = 1                      # top-right J block
        flat[(r + i) * n + (r - 1 - i)] = field.neg(1)     # bottom-left -J block
    return Mat(field, n, flat)


def _field_basis_scalars(F: Field) -> list[int]:
    "Powers of the generator spanning F_q over F_p."
    return [F.pow(F.generator, j) for j in range(F.m)] if F.q > 2 else [1]


def _sl_generators(F: Field, n: int, general: bool) -> list[Mat]:
    gens = []
    for i in range(n - 1):
        for c in _field_basis_scalars(F):
            up = list(identity_flat(n))
            up[i * n + i + 1] = c
            gens.append(Mat(F, n, up))
            dn = list(identity_flat(n))
            dn[(i + 1) * n + i] = c
            gens.append(Mat(F, n, dn))
    if n >= 2 and F.q > 2:
        t = list(identity_flat(n))
        t[0] = F.generator
        t[n + 1] = F.inv(F.generator)
        gens.append(Mat(F, n, t))
    if general and F.q > 2:
        d = list(identity_flat(n))
        d[0] = F.generator
        gens.append(Mat(F, n, d))
    return gens


@functools.lru_cache(maxsize=None)
def group_spec(family: str, n: int, q: int) -> GroupSpec:
    """A classical group: invariant form, generating set, and order.

    `n` is the matrix size.  Unitary groups are implemented for n = 3 (the
    block constructions elsewhere only need those).
    """
    family = family.strip()
    fam_map = {"gl": "GL", "sl": "SL", "sp": "Sp", "gu": "GU", "su": "SU"}
    family = fam_map.get(family.lower(), family)
    if family not in ("GL", "SL", "Sp", "GU", "SU"):
        raise GroupError(f"unsupported family {family!r}")
    if n < 2 or n > 10 or q < 2 or q > 16:
        raise GroupError(f"{family}{n}({q}) is outside the supported desk-scale range")
    p, m = _prime_power(q)

    if family in ("GL", "SL"):
        F = make_field(p, m)
        gens = _sl_generators(F, n, family == "GL")
        return GroupSpec(family, n, q, F, None, tuple(gens), classical_order(family, n, q))

    if family == "Sp":
        from . import chevalley
        F = make_field(p, m)
        model = chevalley.symplectic_model(n // 2, q)
        gens = model.group_generators()
        return GroupSpec(family, n, q, F, symplectic_form(F, n),
                         tuple(gens), classical_order(family, n, q))

    # unitary families live over F_{q^2}
    if n != 3:
        raise GroupError("unitary groups are only realized for n = 3")
    from . import chevalley
    F2 = make_field(p, 2 * m)
    su3 = chevalley.su3_model(q)
    gens = list(su3.group_generators())
    if family == "GU":
        gens.append(su3.gu_torus_extension())
    return GroupSpec(family, n, q, F2, j_mat(F2, n),
                     tuple(gens), classical_order(family, n, q))


def _prime_power(q: int) -> tuple[int, int]:
    for p in (2, 3, 5, 7, 11, 13):
        if q % p == 0:
            m = 0
            while q % p == 0:
                q //= p
                m += 1
            if q != 1:
                raise GroupError("q must be a prime power")
            return p, m
    raise GroupError("q must be a prime power")


def membership(X: Mat, spec: GroupSpec) -> bool:
    "Determinant and invariant-form constraints for the family."
    if X.n != spec.n:
        raise GroupError("dimension mismatch")
    if X.field is not spec.field:
        raise FieldError("matrix entries live in the wrong field")
    fam = spec.family
    if fam == "GL":
        return X.det() != 0
    if fam == "SL":
        return X.det() == 1
    if fam == "Sp":
        B = spec.form
        return (X.transpose() * B * X == B) and X.det() == 1
    # unitary condition: conj-transpose against the anti-diagonal form
    p, m = _prime_power(spec.q)
    J = spec.form
    if X.frobenius(m).transpose() * J * X != J:
        return False
    return X.det() == 1 if fam == "SU" else True


# ---------------------------------------------------------------------------
# Jordan data


def is_unipotent(X: Mat) -> bool:
    N = _x_minus_one(X)
    acc = N
    for _ in range(X.n):
        if all(v == 0 for v in acc.flat):
            return True
        acc = acc * N
    return all(v == 0 for v in acc.flat)


def _x_minus_one(X: Mat) -> Mat:
    F = X.field
    flat = list(X.flat)
    for i in range(X.n):
        flat[i * X.n + i] = F.sub(flat[i * X.n + i], 1)
    return Mat(F, X.n, flat)


def jordan_partition(X: Mat) -> tuple[int, ...]:
    """Partition of n from the ranks of powers of (X - id); weakly
    decreasing.  Raises on non-unipotent input."""
    F, n = X.field, X.n
    N = _x_minus_one(X)
    ranks = [n]
    acc = Mat.identity(F, n)
    for _ in range(n):
        acc = acc * N
        r = rank_flat(F, n, acc.flat)
        ranks.append(r)
        if r == 0:
            break
    if ranks[-1] != 0:
        raise GroupError("matrix is not unipotent")
    while len(ranks) < n + 2:
        ranks.append(0)
    parts = []
    for s in range(1, n + 1):
        mult = ranks[s - 1] - 2 * ranks[s] + ranks[s + 1]
        parts.extend([s] * mult)
    parts.sort(reverse=True)
    assert sum(parts) == n
    return tuple(parts)


def format_partition(parts) -> str:
    "Ascending exponent form, e.g. (1^2,2)."
    from collections import Counter
    c = Counter(parts)
    bits = []
    for s in sorted(c):
        bits.append(f"{s}^{c[s]}" if c[s] > 1 else f"{s}")
    return "(" + ",".join(bits) + ")"


# ---------------------------------------------------------------------------
# orbits and closures


class Orbit:
    """A conjugation orbit: packed-element set plus canonical order.

    `transversal`, when requested, maps each packed element to a packed
    conjugator g with g * rep * g^-1 equal to that element.
    """

    __slots__ = ("field", "n", "packed", "rep_flat", "complete", "transversal")

    def __init__(self, field, n, packed: set, rep_flat, complete=True, transversal=None):
        self.field, self.n = field, n
        self.packed = packed
        self.rep_flat = rep_flat
        self.complete = complete
        self.transversal = transversal

    @property
    def size(self) -> int:
        return len(self.packed)

    def contains(self, X) -> bool:
        key = X.pack() if isinstance(X, Mat) else bytes(X)
        return key in self.packed

    def sorted_packed(self) -> list[bytes]:
        return sorted(self.packed)

    def rep(self) -> Mat:
        return Mat(self.field, self.n, self.rep_flat)

    def canonical_rep(self) -> Mat:
        return Mat(self.field, self.n, tuple(min(self.packed)))

    def mats(self):
        for b in self.sorted_packed():
            yield Mat(self.field, self.n, tuple(b))

    def conjugator_to(self, X) -> Mat:
        "g with g * rep * g^-1 = X; needs the transversal."
        if self.transversal is None:
            raise GroupError("orbit was computed without a transversal")
        key = X.pack() if isinstance(X, Mat) else bytes(X)
        return Mat(self.field, self.n, tuple(self.transversal[key]))

    def __len__(self):
        return len(self.packed)

    def __repr__(self):
        return f"Orbit(size={self.size}{'' if self.complete else ', capped'})"


def class_orbit(rep: Mat, spec: GroupSpec, cap: int = DEFAULT_CAP,
                want_transversal: bool = False) -> Orbit:
    """Breadth-first conjugation closure of `rep` under the spec's
    generators.  Exceeding the cap is reported on the orbit, not fatal."""
    if not membership(rep, spec):
        raise GroupError("representative fails membership")
    F, n = spec.field, spec.n
    gens = spec.gen_pairs()
    seen = {bytes(rep.flat)}
    trans = {bytes(rep.flat): identity_flat(n)} if want_transversal else None
    frontier = [rep.flat]
    complete = True
    while frontier:
        nxt = []
        for x in frontier:
            xb = bytes(x)
            for g, gi in gens:
                y = mul_flat(F, n, mul_flat(F, n, g, x), gi)
                b = bytes(y)
                if b not in seen:
                    seen.add(b)
                    nxt.append(y)
                    if trans is not None:
                        trans[b] = mul_flat(F, n, g, trans[xb])
                    if len(seen) > cap:
                        return Orbit(F, n, seen, rep.flat, False, trans)
        frontier = nxt
    return Orbit(F, n, seen, rep.flat, True, trans)


@dataclass
class Closure:
    field: Field
    n: int
    packed: set
    complete: bool

    @property
    def size(self):
        return len(self.packed)

    def contains(self, X: Mat) -> bool:
        return X.pack() in self.packed

    def mats(self):
        for b in sorted(self.packed):
            yield Mat(self.field, self.n, tuple(b))


def subgroup_closure(gens: list[Mat], cap: int = DEFAULT_CAP) -> Closure:
    "The generated subgroup as an explicit set (product closure)."
    if not gens:
        raise GroupError("need at least one generator")
    F, n = gens[0].field, gens[0].n
    for g in gens:
        if g.field is not F or g.n != n:
            raise GroupError("generators must share a field and size")
    gen_flats = sorted({g.flat for g in gens} | {identity_flat(n)})
    seen = {bytes(f) for f in gen_flats}
    frontier = list(gen_flats)
    while frontier:
        nxt = []
        for x in frontier:
            for g in gen_flats:
                y = mul_flat(F, n, x, g)
                b = bytes(y)
                if b not in seen:
                    seen.add(b)
                    nxt.append(y)
                    if len(seen) > cap:
                        return Closure(F, n, seen, False)
        frontier = nxt
    return Closure(F, n, seen, True)


def enumerate_group(spec: GroupSpec, cap: int = 3 * 10**6) -> Closure:
    "Full enumeration by closure of the generators (cross-validation)."
    return subgroup_closure(list(spec.generators), cap)


@dataclass
class SplitClass:
    orbit: Orbit
    members: tuple          # packed members of the input covered by this orbit

    @property
    def size(self):
        return self.orbit.size

    def rep(self) -> Mat:
        return self.orbit.canonical_rep()


def split_classes(elements, spec: GroupSpec, mode: str = "conjugation",
                  endo=None, cap: int = DEFAULT_CAP) -> list[SplitClass]:
    """Partition `elements` into orbits.

    conjugation: orbits of x -> g x g^-1 under the spec's generators, i.e.
    the G-classes meeting the input.  twisted: orbits of the twisted action
    x -> g x e(g)^-1 for the given endomorphism e.
    """
    mats = sorted(elements)
    if not mats:
        return []
    F, n = spec.field, spec.n
    pending: dict[bytes, Mat] = {m.pack(): m for m in mats}
    if len(pending) != len(mats):
        raise GroupError("duplicate elements in split_classes input")
    out = []
    if mode == "conjugation":
        while pending:
            x = pending[min(pending)]
            orb = class_orbit(x, spec, cap=cap)
            members = tuple(sorted(b for b in pending if b in orb.packed))
            for b in members:
                del pending[b]
            out.append(SplitClass(orb, members))
        return out
    if mode == "twisted":
        if endo is None:
            raise GroupError("twisted mode needs an endomorphism")
        gens = [(g.flat, inv_flat(F, n, apply_endo(g, endo).flat))
                for g in sorted(spec.generators)]
        while pending:
            x = pending[min(pending)]
            seen = {x.pack()}
            frontier = [x.flat]
            while frontier:
                nxt = []
                for f in frontier:
                    for g, egi in gens:
                        y = mul_flat(F, n, mul_flat(F, n, g, f), egi)
                        b = bytes(y)
                        if b not in seen:
                            seen.add(b)
                            nxt.append(y)
                frontier = nxt
            members = tuple(sorted(b for b in pending if b in seen))
            for b in members:
                del pending[b]
            out.append(SplitClass(Orbit(F, n, seen, x.flat), members))
        return out
    raise GroupError(f"unknown split mode {mode!r}")


# ---------------------------------------------------------------------------
# Steinberg endomorphisms


@dataclass(frozen=True)
class Endo:
    """frobenius_power(r), unitary_twist (J ^t Fr_q(X)^-1 J), conjugation_by,
    or a composite applied left to right."""
    kind: str
    r: int = 0
    q: int = 0
    g: Mat | None = None
    parts: tuple = ()

    @classmethod
    def frobenius_power(cls, r: int) -> "Endo":
        return cls("frobenius_power", r=r)

    @classmethod
    def unitary_twist(cls, q: int) -> "Endo":
        return cls("unitary_twist", q=q)

    @classmethod
    def conjugation_by(cls, g: Mat) -> "Endo":
        return cls("conjugation_by", g=g)

    @classmethod
    def composite(cls, *parts: "Endo") -> "Endo":
        return cls("composite", parts=parts)


def apply_endo(X: Mat, e: Endo) -> Mat:
    if e.kind == "frobenius_power":
        return X.frobenius(e.r)
    if e.kind == "unitary_twist":
        p, m = _prime_power(e.q)
        J = j_mat(X.field, X.n)
        return J * X.frobenius(m).inverse().transpose() * J
    if e.kind == "conjugation_by":
        return e.g * X * e.g.inverse()
    if e.kind == "composite":
        for part in e.parts:
            X = apply_endo(X, part)
        return X
    raise GroupError(f"unknown endomorphism kind {e.kind!r}")


def orbit_under(rep: Mat, gens, cap: int = DEFAULT_CAP) -> Orbit:
    "Conjugation orbit of rep under an explicit generator list."
    F, n = rep.field, rep.n
    pairs = [(g.flat, inv_flat(F, n, g.flat)) for g in sorted(gens)]
    seen = {bytes(rep.flat)}
    frontier = [rep.flat]
    complete = True
    while frontier:
        nxt = []
        for x in frontier:
            for g, gi in pairs:
                y = mul_flat(F, n, mul_flat(F, n, g, x), gi)
                b = bytes(y)
                if b not in seen:
                    seen.add(b)
                    nxt.append(y)
                    if len(seen) > cap:
                        return Orbit(F, n, seen, rep.flat, False)
        frontier = nxt
    return Orbit(F, n, seen, rep.flat, complete)


def random_element(spec: GroupSpec, rng, length: int = 12) -> Mat:
    "Random word in the generators (for property tests)."
    gens = sorted(spec.generators)
    out = spec.identity()
    for _ in range(length):
        out = out * gens[rng.randrange(len(gens))]
    return out

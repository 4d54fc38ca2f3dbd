"""Registry of EMD-family embedding schemes.

Every scheme reads a hidden symbol out of a pixel group with a weighted sum
modulo the symbol count M. Embedding picks a bounded change vector that
steers that sum onto the wanted symbol. Where a method defines its own
closed-form adjustment (EMD, IEMD, PVA, and the two split constructions)
that procedure is used; every other method goes through an exhaustive
minimal-distortion search over the scheme's change budget.

Feasibility (every residue reachable within the change budget) is checked
once at construction, so embedding never fails at run time.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field, replace
from typing import Sequence

import numpy as np

from .image import GrayImage, bits_to_symbols, clamp_for_scheme, symbols_to_bits

EXPLICIT_EMD = "explicit-emd"
EXPLICIT_IEMD = "explicit-iemd"
EXPLICIT_PVA = "explicit-pva"
EXPLICIT_EGEMD = "explicit-egemd"
EXPLICIT_2EMD = "explicit-2emd"
SOLVER = "solver"

OBJECTIVE_L2 = "L2-then-L1"
OBJECTIVE_L1 = "L1-then-L2"

# Exhaustive search space guard: (2z+1)^n candidate change vectors.
_MAX_SEARCH_STATES = 10_000_000


class SchemeError(ValueError):
    """Base class for scheme construction and embedding failures."""


class UnknownScheme(SchemeError):
    pass


class InvalidParameter(SchemeError):
    pass


class InvalidSplit(InvalidParameter):
    pass


class InfeasibleScheme(SchemeError):
    """Some residue cannot be reached within the change budget."""


class GroupSizeMismatch(SchemeError):
    pass


class SymbolOutOfRange(SchemeError):
    pass


class SolverInfeasible(SchemeError):
    """No feasible change vector for a residue; signals a hand-built spec."""


class NoCaseMatches(SchemeError):
    """IEMD case list exhausted; cannot happen for a feasible spec."""


class CapacityExceeded(SchemeError):
    pass


@dataclass(frozen=True)
class ChangeConstraint:
    """Change budget for one pixel group.

    per_pixel_max bounds |delta_i|, max_changed_pixels bounds the count of
    nonzero deltas, and l1_radius (when set) bounds sum(|delta_i|).
    """

    per_pixel_max: int
    max_changed_pixels: int
    l1_radius: int | None = None

    def allows(self, deltas: Sequence[int]) -> bool:
        total = 0
        changed = 0
        for d in deltas:
            if abs(d) > self.per_pixel_max:
                return False
            if d:
                changed += 1
                total += abs(d)
        if changed > self.max_changed_pixels:
            return False
        if self.l1_radius is not None and total > self.l1_radius:
            return False
        return True


@dataclass(frozen=True)
class SchemeSpec:
    """A fully-resolved scheme: weights, modulus, budget and embed strategy.

    solver_table / embed_table map a residue r = (target - current) mod M to
    a change vector: solver_table holds the distortion-optimal vector under
    the scheme objective, embed_table the vector the scheme's own embedding
    procedure produces (they coincide for solver-strategy schemes). Both are
    None for the split constructions, which delegate to sub_specs.
    """

    id: str
    n: int
    base: tuple[int, ...]
    modulus: int
    constraint: ChangeConstraint
    strategy: str
    objective: str = OBJECTIVE_L2
    key: int = 0
    params: dict = field(default_factory=dict, compare=False)
    solver_table: tuple[tuple[int, ...], ...] | None = field(
        default=None, compare=False, repr=False
    )
    embed_table: tuple[tuple[int, ...], ...] | None = field(
        default=None, compare=False, repr=False
    )
    sub_specs: tuple["SchemeSpec", ...] = field(default=(), compare=False, repr=False)

    @property
    def payload_bits_exact(self) -> float:
        return math.log2(self.modulus)

    @property
    def payload_bits_operational(self) -> int:
        return self.modulus.bit_length() - 1

    @property
    def rho(self) -> int:
        """Maximum change units per group: the L1 budget when set, else z*k."""
        c = self.constraint
        if c.l1_radius is not None:
            return c.l1_radius
        return c.per_pixel_max * c.max_changed_pixels

    @property
    def is_composite(self) -> bool:
        return bool(self.sub_specs)


def _cost_key(deltas: tuple[int, ...], objective: str):
    sq = sum(d * d for d in deltas)
    ab = sum(abs(d) for d in deltas)
    if objective == OBJECTIVE_L1:
        return (ab, sq, deltas)
    return (sq, ab, deltas)


def _feasible_vectors(n: int, constraint: ChangeConstraint):
    """Yield every change vector the constraint admits.

    Walks subsets of changed positions and nonzero values rather than the
    whole (2z+1)^n cube, so schemes that touch few pixels stay cheap at
    large n.
    """
    z = constraint.per_pixel_max
    limit = constraint.l1_radius
    yield (0,) * n
    nonzero = [v for v in range(-z, z + 1) if v]
    for count in range(1, min(constraint.max_changed_pixels, n) + 1):
        for positions in itertools.combinations(range(n), count):
            for values in itertools.product(nonzero, repeat=count):
                if limit is not None and sum(abs(v) for v in values) > limit:
                    continue
                delta = [0] * n
                for pos, value in zip(positions, values):
                    delta[pos] = value
                yield tuple(delta)


def _search_size(n: int, constraint: ChangeConstraint) -> int:
    z = constraint.per_pixel_max
    return 1 + sum(
        math.comb(n, j) * (2 * z) ** j
        for j in range(1, min(constraint.max_changed_pixels, n) + 1)
    )


def _optimal_delta_table(
    n: int,
    base: Sequence[int],
    modulus: int,
    constraint: ChangeConstraint,
    objective: str,
) -> tuple[tuple[int, ...], ...] | None:
    """Enumerate the change budget once and keep the best vector per residue.

    Returns None when some residue is unreachable. Ties break by squared
    then absolute change then lexicographic order (or L1-first for schemes
    with an L1 objective), which makes the table deterministic.
    """
    if _search_size(n, constraint) > _MAX_SEARCH_STATES:
        raise InvalidParameter(
            f"change budget enumeration too large for group size {n}"
        )
    best: list[tuple | None] = [None] * modulus
    for deltas in _feasible_vectors(n, constraint):
        r = sum(b * d for b, d in zip(base, deltas)) % modulus
        key = _cost_key(deltas, objective)
        if best[r] is None or key < best[r][0]:
            best[r] = (key, deltas)
    if any(entry is None for entry in best):
        return None
    return tuple(entry[1] for entry in best)  # type: ignore[index]


# ---------------------------------------------------------------------------
# extraction


def extraction_value(spec: SchemeSpec, group: Sequence[int]) -> int:
    """Symbol a receiver reads from a pixel group.

    Plain schemes: (sum(g_i * b_i) + key) mod M. The split constructions
    compose the sub-scheme values: high * sub-M + low for the paired-EMD
    split, and carry * 2^(n1+1) + remainder for the two-part GEMD split.
    """
    if len(group) != spec.n:
        raise GroupSizeMismatch(
            f"group has {len(group)} pixels, {spec.id} expects {spec.n}"
        )
    if spec.strategy == EXPLICIT_2EMD:
        sub = spec.sub_specs[0]
        h = spec.n // 2
        f_hi = extraction_value(sub, group[:h])
        f_lo = extraction_value(sub, group[h:])
        return f_hi * sub.modulus + f_lo
    if spec.strategy == EXPLICIT_EGEMD:
        low, high = spec.sub_specs
        n1 = low.n
        r = extraction_value(low, group[:n1])
        c = extraction_value(high, group[n1:])
        return c * low.modulus + r
    acc = spec.key
    for g, b in zip(group, spec.base):
        acc += g * b
    return acc % spec.modulus


# ---------------------------------------------------------------------------
# closed-form embedding procedures


def emd_embed_group(x: Sequence[int], s: int, n: int) -> tuple[int, ...]:
    """Classic single-change embedding on n pixels with M = 2n + 1.

    d = (s - f) mod M selects the pixel: d <= n increments pixel d, larger
    d decrements pixel 2n+1-d (a decrement of weight i shifts f by -i).
    """
    modulus = 2 * n + 1
    if not 0 <= s < modulus:
        raise SymbolOutOfRange(f"symbol {s} outside [0, {modulus})")
    if len(x) != n:
        raise GroupSizeMismatch(f"group has {len(x)} pixels, expected {n}")
    f = sum(v * i for v, i in zip(x, range(1, n + 1))) % modulus
    if s == f:
        return tuple(x)
    d = (s - f) % modulus
    out = list(x)
    if d <= n:
        out[d - 1] += 1
    else:
        out[modulus - d - 1] -= 1
    return tuple(out)


_IEMD_CASES = ((1, 0), (-1, 0), (0, 1), (0, -1), (1, 1), (1, -1), (-1, 1))


def iemd_embed_group(x: Sequence[int], s: int) -> tuple[int, int]:
    """Pair embedding with weights (1, 3) mod 8; first matching case wins."""
    if len(x) != 2:
        raise GroupSizeMismatch("expects a pixel pair")
    if not 0 <= s < 8:
        raise SymbolOutOfRange(f"symbol {s} outside [0, 8)")
    x1, x2 = x
    if (x1 + 3 * x2) % 8 == s:
        return (x1, x2)
    for d1, d2 in _IEMD_CASES:
        g1, g2 = x1 + d1, x2 + d2
        if (g1 + 3 * g2) % 8 == s:
            return (g1, g2)
    raise NoCaseMatches("no candidate pair carries the symbol")


def pva_embed_pixel(x: int, s: int, t: int) -> int:
    """Single-pixel embedding mod t^2: subtract the smallest residue shift.

    The shift r satisfies r = (x - s) mod t^2 taken in
    [-floor(t^2/2), floor(t^2/2)]; an exact tie goes to positive r, so the
    pixel moves down.
    """
    if not 2 <= t <= 4:
        raise InvalidParameter(f"t={t} outside [2, 4]")
    modulus = t * t
    if not 0 <= s < modulus:
        raise SymbolOutOfRange(f"symbol {s} outside [0, {modulus})")
    raw = (x - s) % modulus
    r = raw if raw <= modulus // 2 else raw - modulus
    return x - r


def twoemd_embed(x: Sequence[int], s: int) -> tuple[int, ...]:
    """Embed into 2n pixels as two independent n-pixel EMD halves.

    The symbol splits as s = s_hi * (2n+1) + s_lo; each half takes at most
    one unit change.
    """
    if len(x) % 2 or len(x) < 4:
        raise GroupSizeMismatch("needs an even group of at least 4 pixels")
    h = len(x) // 2
    m = 2 * h + 1
    if not 0 <= s < m * m:
        raise SymbolOutOfRange(f"symbol {s} outside [0, {m * m})")
    s_hi, s_lo = divmod(s, m)
    return emd_embed_group(x[:h], s_hi, h) + emd_embed_group(x[h:], s_lo, h)


def egemd_embed(x: Sequence[int], s: int, n1: int) -> tuple[int, ...]:
    """Split a group of n into n1 + (n - n1) pixels, each embedded by GEMD.

    The symbol splits as s = 2^(n1+1) * c + r with r < 2^(n1+1); r goes
    into the first n1 pixels, c into the rest.
    """
    n = len(x)
    if n < 2:
        raise GroupSizeMismatch("needs at least 2 pixels")
    if not 1 <= n1 < n:
        raise InvalidSplit(f"split size {n1} outside [1, {n - 1}]")
    modulus = 1 << (n + 2)
    if not 0 <= s < modulus:
        raise SymbolOutOfRange(f"symbol {s} outside [0, {modulus})")
    low = make_scheme("gemd", n=n1)
    high = make_scheme("gemd", n=n - n1)
    c, r = divmod(s, low.modulus)
    return solver_embed_group(low, x[:n1], r) + solver_embed_group(
        high, x[n1:], c
    )


def solver_embed_group(
    spec: SchemeSpec, x: Sequence[int], s: int
) -> tuple[int, ...]:
    """Minimal-distortion embedding via the precomputed residue table.

    Deterministic: cost ties were broken when the table was built. Pixels
    must have been pre-clamped into [z, 255 - z].
    """
    if len(x) != spec.n:
        raise GroupSizeMismatch(
            f"group has {len(x)} pixels, {spec.id} expects {spec.n}"
        )
    if not 0 <= s < spec.modulus:
        raise SymbolOutOfRange(f"symbol {s} outside [0, {spec.modulus})")
    if spec.solver_table is None:
        raise InvalidParameter(
            f"{spec.id} embeds through sub-schemes; use embed_group"
        )
    residue = (s - extraction_value(spec, x)) % spec.modulus
    deltas = spec.solver_table[residue]
    if deltas is None:
        raise SolverInfeasible(f"residue {residue} unreachable for {spec.id}")
    return tuple(v + d for v, d in zip(x, deltas))


def embed_group(spec: SchemeSpec, x: Sequence[int], s: int) -> tuple[int, ...]:
    """Embed one symbol into one pre-clamped group using the scheme's strategy."""
    if len(x) != spec.n:
        raise GroupSizeMismatch(
            f"group has {len(x)} pixels, {spec.id} expects {spec.n}"
        )
    if not 0 <= s < spec.modulus:
        raise SymbolOutOfRange(f"symbol {s} outside [0, {spec.modulus})")
    if spec.strategy == EXPLICIT_EMD:
        return emd_embed_group(x, s, spec.n)
    if spec.strategy == EXPLICIT_IEMD:
        return iemd_embed_group(x, s)
    if spec.strategy == EXPLICIT_PVA:
        return (pva_embed_pixel(x[0], s, spec.params["t"]),)
    if spec.strategy == EXPLICIT_2EMD:
        return twoemd_embed(x, s)
    if spec.strategy == EXPLICIT_EGEMD:
        return egemd_embed(x, s, spec.params["n1"])
    return solver_embed_group(spec, x, s)


# ---------------------------------------------------------------------------
# scheme construction


def _explicit_delta_table(spec: SchemeSpec) -> tuple[tuple[int, ...], ...]:
    """Tabulate the explicit procedure's change vector per residue.

    All closed-form procedures here depend on the group only through
    (s - f) mod M, so the vectors measured on an interior reference group
    apply to every interior group.
    """
    ref = (128,) * spec.n
    f_ref = extraction_value(spec, ref)
    rows = []
    for r in range(spec.modulus):
        g = embed_group(spec, ref, (f_ref + r) % spec.modulus)
        rows.append(tuple(gv - rv for gv, rv in zip(g, ref)))
    return tuple(rows)


def _finalize(
    *,
    id: str,
    n: int,
    base: Sequence[int],
    modulus: int,
    constraint: ChangeConstraint,
    strategy: str,
    objective: str = OBJECTIVE_L2,
    key: int = 0,
    params: dict,
    sub_specs: tuple[SchemeSpec, ...] = (),
) -> SchemeSpec:
    if modulus < 2:
        raise InvalidParameter(f"{id}: modulus {modulus} < 2")
    if len(base) != n or any(b < 1 for b in base):
        raise InvalidParameter(f"{id}: base vector must hold {n} positive weights")
    spec = SchemeSpec(
        id=id,
        n=n,
        base=tuple(base),
        modulus=modulus,
        constraint=constraint,
        strategy=strategy,
        objective=objective,
        key=key,
        params=dict(params),
        sub_specs=sub_specs,
    )
    if sub_specs:
        return spec
    table = _optimal_delta_table(n, spec.base, modulus, constraint, objective)
    if table is None:
        raise InfeasibleScheme(
            f"{id}: some residue mod {modulus} is unreachable within the budget"
        )
    spec = replace(spec, solver_table=table, embed_table=table)
    if strategy in (EXPLICIT_EMD, EXPLICIT_IEMD, EXPLICIT_PVA):
        spec = replace(spec, embed_table=_explicit_delta_table(spec))
    return spec


def _require_int(name: str, value, minimum: int | None = None) -> int:
    if not isinstance(value, int) or isinstance(value, bool):
        raise InvalidParameter(f"{name} must be an integer, got {value!r}")
    if minimum is not None and value < minimum:
        raise InvalidParameter(f"{name}={value} below minimum {minimum}")
    return value


def _make_emd(n: int) -> SchemeSpec:
    """Weights 1..n mod 2n+1; one pixel moves by one unit at most."""
    n = _require_int("n", n, 2)
    return _finalize(
        id="emd",
        n=n,
        base=range(1, n + 1),
        modulus=2 * n + 1,
        constraint=ChangeConstraint(1, 1),
        strategy=EXPLICIT_EMD,
        params={"n": n},
    )


def _make_iemd() -> SchemeSpec:
    """Pixel pair with weights (1, 3) mod 8; up to two unit changes."""
    return _finalize(
        id="iemd",
        n=2,
        base=(1, 3),
        modulus=8,
        constraint=ChangeConstraint(1, 2),
        strategy=EXPLICIT_IEMD,
        params={},
    )


def _make_pva(t: int) -> SchemeSpec:
    """Single pixel mod t^2, shifted by at most floor(t^2/2)."""
    t = _require_int("t", t)
    if not 2 <= t <= 4:
        raise InvalidParameter(f"t={t} outside [2, 4]")
    z = (t * t) // 2
    return _finalize(
        id="pva",
        n=1,
        base=(1,),
        modulus=t * t,
        constraint=ChangeConstraint(z, 1),
        strategy=EXPLICIT_PVA,
        params={"t": t},
    )


def _make_femd(t: int) -> SchemeSpec:
    """Pixel pair with weights (t-1, t) mod t^2, changes up to floor(t/2)."""
    t = _require_int("t", t, 2)
    return _finalize(
        id="femd",
        n=2,
        base=(t - 1, t),
        modulus=t * t,
        constraint=ChangeConstraint(t // 2, 2),
        strategy=SOLVER,
        params={"t": t},
    )


def _make_de(k: int) -> SchemeSpec:
    """Pixel pair with weights (2k+1, 1); candidates live in the L1 ball of radius k."""
    k = _require_int("k", k, 1)
    return _finalize(
        id="de",
        n=2,
        base=(2 * k + 1, 1),
        modulus=2 * k * k + 2 * k + 1,
        constraint=ChangeConstraint(k, 2, l1_radius=k),
        strategy=SOLVER,
        objective=OBJECTIVE_L1,
        params={"k": k},
    )


def _make_mpemd(n: int, key: int = 0) -> SchemeSpec:
    """EMD weights mod 2n with an additive integer key in [0, 2n)."""
    n = _require_int("n", n, 2)
    key = _require_int("key", key, 0)
    if key >= 2 * n:
        raise InvalidParameter(f"key={key} outside [0, {2 * n})")
    return _finalize(
        id="mpemd",
        n=n,
        base=range(1, n + 1),
        modulus=2 * n,
        constraint=ChangeConstraint(1, 1),
        strategy=SOLVER,
        key=key,
        params={"n": n, "key": key},
    )


def _emd2_weights(n: int) -> tuple[int, ...]:
    if n == 2:
        return (1, 3)
    return (1, 2) + tuple(6 + 5 * i for i in range(n - 2))


def _make_emd2(n: int) -> SchemeSpec:
    """Graded weights mod 2w+1 with w = 4 (pairs) or 8+5(n-3); two changes max."""
    n = _require_int("n", n, 2)
    w = 4 if n == 2 else 8 + 5 * (n - 3)
    return _finalize(
        id="emd2",
        n=n,
        base=_emd2_weights(n),
        modulus=2 * w + 1,
        constraint=ChangeConstraint(1, 2),
        strategy=SOLVER,
        params={"n": n},
    )


def _make_twoemd(n: int) -> SchemeSpec:
    """Two EMD halves of n pixels each; symbol space (2n+1)^2."""
    n = _require_int("n", n, 2)
    sub = _make_emd(n)
    m = sub.modulus
    return _finalize(
        id="twoemd",
        n=2 * n,
        base=sub.base + sub.base,
        modulus=m * m,
        constraint=ChangeConstraint(1, 2),
        strategy=EXPLICIT_2EMD,
        params={"n": n},
        sub_specs=(sub,),
    )


def _make_gemd(n: int) -> SchemeSpec:
    """Weights 2^i - 1 mod 2^(n+1); every pixel may move by one unit."""
    n = _require_int("n", n, 1)
    return _finalize(
        id="gemd",
        n=n,
        base=tuple((1 << i) - 1 for i in range(1, n + 1)),
        modulus=1 << (n + 1),
        constraint=ChangeConstraint(1, n),
        strategy=SOLVER,
        params={"n": n},
    )


def _make_egemd(n: int, n1: int | None = None) -> SchemeSpec:
    """GEMD on two subgroups carrying n+2 bits; split defaults to floor(n/2)."""
    n = _require_int("n", n, 2)
    if n1 is None:
        n1 = n // 2
    n1 = _require_int("n1", n1)
    if not 1 <= n1 < n:
        raise InvalidSplit(f"n1={n1} outside [1, {n - 1}]")
    low = _make_gemd(n1)
    high = _make_gemd(n - n1)
    return _finalize(
        id="egemd",
        n=n,
        base=low.base + high.base,
        modulus=1 << (n + 2),
        constraint=ChangeConstraint(1, n),
        strategy=EXPLICIT_EGEMD,
        params={"n": n, "n1": n1},
        sub_specs=(low, high),
    )


def _mbe_weights(n: int, k: int) -> tuple[int, ...]:
    weights = [1]
    for _ in range(n - 1):
        weights.append((weights[-1] << k) + 1)
    return tuple(weights)


def _make_mbe(n: int, k: int) -> SchemeSpec:
    """Chained weights b_i = 2^k b_(i-1) + 1 mod 2^(nk+1); changes up to 2^k - 1."""
    n = _require_int("n", n, 2)
    k = _require_int("k", k, 1)
    return _finalize(
        id="mbe",
        n=n,
        base=_mbe_weights(n, k),
        modulus=1 << (n * k + 1),
        constraint=ChangeConstraint((1 << k) - 1, n),
        strategy=SOLVER,
        params={"n": n, "k": k},
    )


def _msd_modulus(n: int) -> int:
    if n % 2:
        return 2 * ((4 ** ((n + 1) // 2) - 1) // 3) + 1
    return 4 * ((4 ** (n // 2) - 1) // 3) + 1


def _make_msd(n: int) -> SchemeSpec:
    """Binary weights 2^(i-1) mod t_n, unit changes on any pixel."""
    n = _require_int("n", n, 1)
    return _finalize(
        id="msd",
        n=n,
        base=tuple(1 << i for i in range(n)),
        modulus=_msd_modulus(n),
        constraint=ChangeConstraint(1, n),
        strategy=SOLVER,
        params={"n": n},
    )


def _make_hemd(n: int, w: int, wbase: int = 0) -> SchemeSpec:
    """Hypercube scheme mod w^n with odd w; changes up to (w-1)/2.

    The per-pixel weights are n^(i-1) as the method prints them; wbase=1
    switches to w^(i-1) (the two agree at n == w).
    """
    n = _require_int("n", n, 2)
    w = _require_int("w", w, 3)
    wbase = _require_int("wbase", wbase, 0)
    if w % 2 == 0:
        raise InvalidParameter(f"w={w} must be odd")
    if wbase not in (0, 1):
        raise InvalidParameter("wbase must be 0 or 1")
    root = w if wbase else n
    return _finalize(
        id="hemd",
        n=n,
        base=tuple(root**i for i in range(n)),
        modulus=w**n,
        constraint=ChangeConstraint((w - 1) // 2, n),
        strategy=SOLVER,
        params={"n": n, "w": w, "wbase": wbase},
    )


def _make_aemd(n: int, m: int) -> SchemeSpec:
    """Positional base-m weights mod m^n; changes up to ceil((m-1)/2)."""
    n = _require_int("n", n, 1)
    m = _require_int("m", m, 2)
    return _finalize(
        id="aemd",
        n=n,
        base=tuple(m**i for i in range(n)),
        modulus=m**n,
        constraint=ChangeConstraint(m // 2, n),
        strategy=SOLVER,
        params={"n": n, "m": m},
    )


_BUILDERS = {
    "emd": _make_emd,
    "iemd": _make_iemd,
    "pva": _make_pva,
    "femd": _make_femd,
    "de": _make_de,
    "mpemd": _make_mpemd,
    "emd2": _make_emd2,
    "twoemd": _make_twoemd,
    "gemd": _make_gemd,
    "egemd": _make_egemd,
    "mbe": _make_mbe,
    "msd": _make_msd,
    "hemd": _make_hemd,
    "aemd": _make_aemd,
}

SCHEME_NAMES = tuple(sorted(_BUILDERS))


def make_scheme(name: str, **params) -> SchemeSpec:
    """Build a SchemeSpec from a scheme token and its integer parameters.

    Raises UnknownScheme for a bad token, InvalidParameter for bad or
    missing parameters, and InfeasibleScheme when the change budget cannot
    reach every residue.
    """
    builder = _BUILDERS.get(name.strip().lower())
    if builder is None:
        raise UnknownScheme(
            f"unknown scheme {name!r}; known: {', '.join(SCHEME_NAMES)}"
        )
    try:
        return builder(**params)
    except TypeError as exc:
        raise InvalidParameter(f"{name}: {exc}") from None


# ---------------------------------------------------------------------------
# whole-image pipeline


def group_capacity(img: GrayImage, spec: SchemeSpec) -> int:
    """Number of whole groups the image offers."""
    return img.size // spec.n


def operational_capacity(img: GrayImage, spec: SchemeSpec) -> int:
    """Embeddable bits under floor(log2 M)-bit symbols."""
    return group_capacity(img, spec) * spec.payload_bits_operational


def _embed_table_array(spec: SchemeSpec) -> np.ndarray:
    return np.asarray(spec.embed_table, dtype=np.int64).reshape(spec.modulus, spec.n)


def _extract_groups(spec: SchemeSpec, groups: np.ndarray) -> np.ndarray:
    if spec.strategy == EXPLICIT_2EMD:
        sub = spec.sub_specs[0]
        h = spec.n // 2
        return _extract_groups(sub, groups[:, :h]) * sub.modulus + _extract_groups(
            sub, groups[:, h:]
        )
    if spec.strategy == EXPLICIT_EGEMD:
        low, high = spec.sub_specs
        r = _extract_groups(low, groups[:, : low.n])
        c = _extract_groups(high, groups[:, low.n :])
        return c * low.modulus + r
    base = np.asarray(spec.base, dtype=np.int64)
    return (groups @ base + spec.key) % spec.modulus


def _embed_groups(
    spec: SchemeSpec, groups: np.ndarray, symbols: np.ndarray
) -> np.ndarray:
    if spec.strategy == EXPLICIT_2EMD:
        sub = spec.sub_specs[0]
        h = spec.n // 2
        s_hi, s_lo = np.divmod(symbols, sub.modulus)
        return np.hstack(
            [_embed_groups(sub, groups[:, :h], s_hi), _embed_groups(sub, groups[:, h:], s_lo)]
        )
    if spec.strategy == EXPLICIT_EGEMD:
        low, high = spec.sub_specs
        c, r = np.divmod(symbols, low.modulus)
        return np.hstack(
            [_embed_groups(low, groups[:, : low.n], r), _embed_groups(high, groups[:, low.n :], c)]
        )
    residues = (symbols - _extract_groups(spec, groups)) % spec.modulus
    return groups + _embed_table_array(spec)[residues]


def embed_message(
    img: GrayImage, spec: SchemeSpec, bits: Sequence[int]
) -> tuple[GrayImage, int]:
    """Clamp, partition, and embed a bit stream; returns (stego, used groups).

    Groups past the message and the row-major tail keep their clamped
    values. Raises CapacityExceeded when the message does not fit.
    """
    if len(bits) > operational_capacity(img, spec):
        raise CapacityExceeded(
            f"{len(bits)} bits > capacity {operational_capacity(img, spec)}"
        )
    clamped = clamp_for_scheme(img, spec.constraint.per_pixel_max)
    symbols = bits_to_symbols(bits, spec.modulus)
    pixels = clamped.pixels.astype(np.int64)
    used = len(symbols)
    if used:
        head = pixels[: used * spec.n].reshape(used, spec.n)
        stego_head = _embed_groups(spec, head, np.asarray(symbols, dtype=np.int64))
        pixels[: used * spec.n] = stego_head.reshape(-1)
    return GrayImage(img.width, img.height, pixels), used


def extract_message(img: GrayImage, spec: SchemeSpec, bit_length: int) -> list[int]:
    """Read bit_length bits back out of a stego image; needs no cover."""
    if bit_length < 0:
        raise ValueError("bit_length must be >= 0")
    if bit_length > operational_capacity(img, spec):
        raise CapacityExceeded(
            f"{bit_length} bits > capacity {operational_capacity(img, spec)}"
        )
    if bit_length == 0:
        return []
    width = spec.payload_bits_operational
    used = -(-bit_length // width)
    groups = img.pixels[: used * spec.n].astype(np.int64).reshape(used, spec.n)
    symbols = [int(v) for v in _extract_groups(spec, groups)]
    return symbols_to_bits(symbols, spec.modulus, bit_length)

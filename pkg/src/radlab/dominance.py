"""The "better than" partial order on sign vectors and the quadratic
membership rules for the norm-reaching sets V_sd(a) and V_sd+(a).

For non-increasing nonnegative coefficient vectors, ``s <= t`` in the
order (every such vector gives ``a.t >= a.s``) holds exactly when every
prefix sum of ``t - s`` is nonnegative: the cone of admissible vectors is
generated by the prefix indicator vectors (1,..,1,0,..,0), so the
universal condition reduces to n prefix checks.  Equivalently, writing
each sign vector as its set of flipped positions, the flips of ``t`` must
be at most as many as those of ``s`` and sit at componentwise later
positions.
"""

from __future__ import annotations

from itertools import combinations

from .core import CoeffVec, SignAssignment, sign_sum
from .errors import (
    DimensionError,
    LemmaPreconditionViolated,
    NoWitness,
    TooLarge,
)

# A set of flipped positions J is the same bit layout as the sign vector
# (J)_n it induces, so one type serves both roles.
SignSet = SignAssignment

CLOSURE_CAP = 24
ORDER_RULES_CAP = 10


def dominates(s: SignAssignment, t: SignAssignment) -> bool:
    """True iff t is at least as good as s: a.t >= a.s for every
    non-increasing nonnegative coefficient vector (reflexive)."""
    if s.n != t.n:
        raise DimensionError(f"dimension mismatch {s.n} != {t.n}")
    sm, tm = s.mask, t.mask
    acc = 0
    for i in range(s.n):
        acc += ((sm >> i) & 1) - ((tm >> i) & 1)
        if acc < 0:
            return False
    return True


def upward_closure(s: SignAssignment) -> set[SignAssignment]:
    """All sign vectors at least as good as s, including s itself.

    Generated directly from the flipped-position characterization: choose
    any prefix-length q of s's flip positions i_1 < ... < i_p and any
    increasing j_1 < ... < j_q with j_r >= i_r.  Output-sensitive, so
    cheap for seeds with few flips even in larger dimensions.
    """
    if s.n > CLOSURE_CAP:
        raise TooLarge(f"n={s.n} exceeds closure cap {CLOSURE_CAP}")
    base = s.indices
    n = s.n
    masks: list[int] = []

    def extend(depth: int, next_free: int, mask: int) -> None:
        masks.append(mask)
        if depth == len(base):
            return
        for j in range(max(base[depth], next_free), n + 1):
            extend(depth + 1, j + 1, mask | (1 << (j - 1)))

    extend(0, 1, 0)
    return {SignAssignment(m, n) for m in masks}


def _closure_rows(n: int) -> list[int]:
    """rows[m] = bitmask over all masks t with (m)_n <= (t)_n."""
    rows = [0] * (1 << n)
    for m in range(1 << n):
        row = 0
        for t in upward_closure(SignAssignment(m, n)):
            row |= 1 << t.mask
        rows[m] = row
    return rows


def verify_order_rules(n: int) -> bool:
    """Exhaustively instantiate the five closure rules of the order and
    confirm each implied relation against the prefix-sum test.

    (i)   single flip moves right:        (i)_n < (j)_n for i < j
    (ii)  dropping flips improves:        J superset J' implies (J)_n < (J')_n
    (iii) transitivity
    (iv)  disjoint augmentation:          (J')_n < (J'')_n and J disjoint from
          both implies (J u J')_n < (J u J'')_n
    (v)   componentwise shift of equally many flips
    """
    if n > ORDER_RULES_CAP:
        raise TooLarge(f"n={n} exceeds order-rule cap {ORDER_RULES_CAP}")
    full = (1 << n) - 1
    rows = _closure_rows(n)

    # (i)
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            if not (rows[1 << (i - 1)] >> (1 << (j - 1))) & 1:
                return False

    # (ii)  proper submasks of every mask
    for m in range(1 << n):
        sub = (m - 1) & m
        while True:
            if not (rows[m] >> sub) & 1:
                return False
            if sub == 0:
                break
            sub = (sub - 1) & m

    # (iii)  every row absorbs the rows of its members
    for m in range(1 << n):
        r = rows[m]
        probe = r
        while probe:
            low = probe & -probe
            t = low.bit_length() - 1
            if rows[t] & ~r:
                return False
            probe ^= low

    # (iv)
    for m1 in range(1 << n):
        r = rows[m1] & ~(1 << m1)
        while r:
            low = r & -r
            m2 = low.bit_length() - 1
            r ^= low
            free = full & ~(m1 | m2)
            sub = free
            while True:
                if not (rows[sub | m1] >> (sub | m2)) & 1:
                    return False
                if sub == 0:
                    break
                sub = (sub - 1) & free

    # (v)
    for m in range(1, n + 1):
        for left in combinations(range(1, n + 1), m):
            lmask = 0
            for i in left:
                lmask |= 1 << (i - 1)
            for right in combinations(range(1, n + 1), m):
                if all(i <= j for i, j in zip(left, right)):
                    rmask = 0
                    for j in right:
                        rmask |= 1 << (j - 1)
                    if not (rows[lmask] >> rmask) & 1:
                        return False
    return True


def _pair_sum(values: list[int]) -> int:
    """Sum of products over unordered pairs, accumulated literally."""
    acc = 0
    run = 0
    for v in values:
        acc += v * run
        run += v
    return acc


def _split_by_mask(a: CoeffVec, mask: int) -> tuple[list[int], list[int]]:
    inside, outside = [], []
    for i, x in enumerate(a.entries):
        (inside if (mask >> i) & 1 else outside).append(x)
    return inside, outside


def membership_form(a: CoeffVec, J: SignSet) -> int:
    """The quadratic form whose sign decides whether (J)_n reaches the norm:

        sum over pairs inside J  +  sum over pairs inside its complement
        -  sum over cross pairs J x complement
    """
    if a.n != J.n:
        raise DimensionError(f"dimension mismatch {a.n} != {J.n}")
    inside, outside = _split_by_mask(a, J.mask)
    return _pair_sum(inside) + _pair_sum(outside) - sum(inside) * sum(outside)


def vsd_membership_quadratic(a: CoeffVec, J: SignSet, strict: bool = False) -> bool:
    """Decide (J)_n in V_sd(a) (strict=False) or V_sd+(a) (strict=True)
    by the sign of the quadratic form.

    Requires a.(J)_n >= 0; the form criterion is only valid on that side.
    """
    if sign_sum(a, J) < 0:
        raise LemmaPreconditionViolated(f"a.{J} < 0; the form criterion does not apply")
    q = membership_form(a, J)
    return q > 0 if strict else q >= 0


def pair_hypothesis_form(a: CoeffVec, J: SignSet, K: SignSet) -> int:
    """The averaged form for a disjoint pair of flip sets:

        pairs inside J + pairs inside K + pairs inside the joint complement
        -  cross pairs J x K

    Equals half the sum of the two individual membership forms.
    """
    if a.n != J.n or a.n != K.n:
        raise DimensionError("dimension mismatch")
    in_j, _ = _split_by_mask(a, J.mask)
    in_k, _ = _split_by_mask(a, K.mask)
    _, rest = _split_by_mask(a, J.mask | K.mask)
    return (
        _pair_sum(in_j)
        + _pair_sum(in_k)
        + _pair_sum(rest)
        - sum(in_j) * sum(in_k)
    )


def pair_lemma_select(
    a: CoeffVec, J: SignSet, K: SignSet, strict: bool = False
) -> str:
    """For disjoint J, K whose averaged form is nonnegative (positive in
    the strict variant), report which of (J)_n, (K)_n reaches the norm:
    "J", "K" or "both".  Never "neither" while the preconditions hold.
    """
    if J.mask & K.mask:
        raise LemmaPreconditionViolated("J and K must be disjoint")
    ok = (lambda v: v > 0) if strict else (lambda v: v >= 0)
    if not ok(sign_sum(a, J)):
        raise LemmaPreconditionViolated(f"a.{J} fails the sign precondition")
    if not ok(sign_sum(a, K)):
        raise LemmaPreconditionViolated(f"a.{K} fails the sign precondition")
    if not ok(pair_hypothesis_form(a, J, K)):
        raise LemmaPreconditionViolated("averaged form fails the hypothesis")
    in_j = vsd_membership_quadratic(a, J, strict)
    in_k = vsd_membership_quadratic(a, K, strict)
    if in_j and in_k:
        return "both"
    if in_j:
        return "J"
    if in_k:
        return "K"
    raise NoWitness(
        f"pair rule violated for a={a}, J={J}, K={K}; this falsifies the rule"
    )


_CASE7_CANDIDATES = ((2,), (3, 4), (5, 6, 7))


def case_lemma_7(a: CoeffVec, strict: bool = False) -> SignAssignment:
    """For any canonical 7-vector, one of the flips (2)_7, (3,4)_7,
    (5,6,7)_7 reaches the norm (strictly, if strict and all entries are
    positive).  Returns the first that does; failure to find one would
    falsify the rule and raises NoWitness.
    """
    if a.n != 7:
        raise DimensionError(f"expected dimension 7, got {a.n}")
    if strict and a.entries[6] == 0:
        raise LemmaPreconditionViolated("strict variant requires all entries positive")
    for idx in _CASE7_CANDIDATES:
        cand = SignAssignment.from_indices(idx, 7)
        if vsd_membership_quadratic(a, cand, strict):
            return cand
    raise NoWitness(f"no candidate reaches the norm for a={a}; rule falsified")


def in_vsd(a: CoeffVec, s: SignAssignment, strict: bool = False) -> bool:
    """Membership in V_sd(a) (a.s >= ||a||) or V_sd+(a) (strict >)."""
    d = sign_sum(a, s)
    if d < 0:
        return False
    return d * d > a.norm_sq if strict else d * d >= a.norm_sq


def vsd_count_lower_bound(a: CoeffVec, seeds: list[SignAssignment]) -> int:
    """Size of the union of upward closures of the seeds verified to lie
    in V_sd(a); a certified lower bound for |V_sd(a)| because membership
    propagates upward."""
    union: set[SignAssignment] = set()
    for s in seeds:
        if s.n == a.n and in_vsd(a, s):
            union |= upward_closure(s)
    return len(union)

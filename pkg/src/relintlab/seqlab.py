"""Exact sequence-space laboratory on finite-prefix geometric-tail vectors.

Every vector here is a finite rational prefix followed by an optional
geometric tail c*rho^j, so all three classical norms, inner products, and
the index constructions below are closed-form rational computations. The
module decides membership in the interior notions of two sets living in
the space of square-summable sequences: the unit one-norm ball, where the
intrinsic and quasi relative interiors genuinely differ, and the
nonnegative part of the unit two-norm ball, whose intrinsic relative
interior is empty; the latter is witnessed constructively, one candidate
at a time.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Tuple

from .errors import InputError, InternalInconsistency, NotMemberError, PreconditionFailed
from .ratlp import ONE, Rat, ZERO, rat


@dataclass(eq=False)
class TailSequence:
    """Coordinates 1..len(prefix) listed, then c*rho^(k-k0) for k >= k0.

    k0 = len(prefix) + 1. No tail means zero from k0 on.
    """

    prefix: tuple
    tail: Optional[tuple] = None  # (c, rho) with 0 < rho < 1

    def __post_init__(self):
        self.prefix = tuple(rat(p) for p in self.prefix)
        if self.tail is not None:
            c, rho = self.tail
            c, rho = rat(c), rat(rho)
            if not (ZERO < rho < ONE):
                raise InputError("tail ratio must lie strictly between 0 and 1")
            self.tail = (c, rho)

    @property
    def k0(self) -> int:
        return len(self.prefix) + 1

    def coordinate(self, k: int) -> Rat:
        if k < 1:
            raise InputError("coordinates are indexed from 1")
        if k <= len(self.prefix):
            return self.prefix[k - 1]
        if self.tail is None:
            return ZERO
        c, rho = self.tail
        return c * rho ** (k - self.k0)

    def finite_support(self) -> bool:
        return self.tail is None or self.tail[0] == 0

    def ell1(self) -> Rat:
        total = sum((abs(p) for p in self.prefix), ZERO)
        if self.tail is not None:
            c, rho = self.tail
            total += abs(c) / (ONE - rho)
        return total

    def ell2_sq(self) -> Rat:
        total = sum((p * p for p in self.prefix), ZERO)
        if self.tail is not None:
            c, rho = self.tail
            total += c * c / (ONE - rho * rho)
        return total

    def ellinf(self) -> Rat:
        best = ZERO
        for p in self.prefix:
            if abs(p) > best:
                best = abs(p)
        if self.tail is not None and abs(self.tail[0]) > best:
            best = abs(self.tail[0])
        return best

    def tail_abs_remainder(self, K: int) -> Rat:
        """Exact value of the one-norm mass strictly beyond coordinate K."""
        total = sum((abs(p) for p in self.prefix[K:]), ZERO)
        if self.tail is not None:
            c, rho = self.tail
            start = max(K + 1, self.k0)
            total += abs(c) * rho ** (start - self.k0) / (ONE - rho)
        return total

    def tail_sq_remainder(self, K: int) -> Rat:
        total = sum((p * p for p in self.prefix[K:]), ZERO)
        if self.tail is not None:
            c, rho = self.tail
            start = max(K + 1, self.k0)
            total += c * c * (rho * rho) ** (start - self.k0) / (ONE - rho * rho)
        return total


def inner(x: TailSequence, z: TailSequence) -> Rat:
    """Exact inner product: prefixes materialized to the later tail start,
    then a single geometric series for the overlapping tails."""
    K = max(x.k0, z.k0) - 1
    total = sum((x.coordinate(k) * z.coordinate(k) for k in range(1, K + 1)), ZERO)
    if x.tail is not None and z.tail is not None:
        cx, rx = x.tail
        cz, rz = z.tail
        lead = cx * rx ** (K + 1 - x.k0) * cz * rz ** (K + 1 - z.k0)
        total += lead / (ONE - rx * rz)
    return total


def sign_vector(x: TailSequence) -> TailSequence:
    """Componentwise signs of a finite-support vector, as a finite prefix."""
    if not x.finite_support():
        raise PreconditionFailed("sign vector needs finite support")
    signs = tuple(ONE if p > 0 else (-ONE if p < 0 else ZERO) for p in x.prefix)
    return TailSequence(prefix=signs, tail=None)


def ell1ball_iri(x: TailSequence) -> bool:
    """Intrinsic relative interior of the unit one-norm ball: open one-norm
    ball, decided exactly."""
    return x.ell1() < ONE


def ell1ball_qri(x: TailSequence) -> bool:
    """Quasi relative interior of the same ball: the whole ball minus its
    norm-one finite-support points."""
    n1 = x.ell1()
    if n1 > ONE:
        return False
    return not (n1 == ONE and x.finite_support())


def ell1ball_normal_test(x: TailSequence, z: TailSequence) -> bool:
    """Membership of z in the normal cone to the one-norm ball at x, which
    reduces to an exact equality between an inner product and a sup-norm."""
    if x.ell1() > ONE:
        raise PreconditionFailed("base point must lie in the one-norm ball")
    return inner(x, z) == z.ellinf()


@dataclass(eq=False)
class IriRefutationWitness:
    """Constructive proof that a candidate is not relatively absorbing in the
    nonnegative part of the unit two-norm ball.

    Indices k_1 < k_2 < ... pick coordinates of the candidate below
    epsilon/4^n; the comparison vector carries epsilon/2^n there instead and
    stays inside the set (the squared-norm bound below is certified at
    construction). For every rational alpha > 1 the affine combination
    (1-alpha)*comparison + alpha*candidate then goes negative in coordinate
    k_n once 2^n exceeds alpha/(alpha-1).
    """

    xbar: TailSequence
    epsilon: Rat
    preview_indices: tuple
    xtilde_norm_sq_bound: Rat
    _cache: list = field(default_factory=list, repr=False)

    def index_for(self, n: int) -> int:
        """Smallest admissible index k_n, strictly increasing in n."""
        if n < 1:
            raise InputError("indices are constructed from n = 1")
        while len(self._cache) < n:
            m = len(self._cache) + 1
            threshold = self.epsilon / rat(4) ** m
            k = self._cache[-1] + 1 if self._cache else 1
            k0 = self.xbar.k0
            while k < k0 and self.xbar.coordinate(k) > threshold:
                k += 1
            if k >= k0:
                c, rho = self.xbar.tail
                val = c * rho ** (k - k0)
                while val > threshold:
                    k += 1
                    val *= rho
            self._cache.append(k)
        return self._cache[n - 1]

    def xtilde_coordinate(self, k: int) -> Rat:
        """The comparison vector: the candidate with coordinate k_n lifted
        to epsilon/2^n."""
        n = 1
        while True:
            kn = self.index_for(n)
            if kn == k:
                return self.epsilon / rat(2) ** n
            if kn > k:
                return self.xbar.coordinate(k)
            n += 1

    def alpha_threshold(self, alpha) -> int:
        """Minimal n with 2^n * (alpha - 1) > alpha."""
        alpha = rat(alpha)
        if alpha <= ONE:
            raise InputError("the absorbing test concerns rational alpha > 1")
        n = 1
        pw = rat(2)
        while pw * (alpha - ONE) <= alpha:
            n += 1
            pw *= 2
        return n

    def negative_coordinate(self, alpha) -> Tuple[int, Rat]:
        """Index and exact value of a negative coordinate of the combination
        (1-alpha)*xtilde + alpha*xbar."""
        alpha = rat(alpha)
        n = self.alpha_threshold(alpha)
        k = self.index_for(n)
        value = (ONE - alpha) * self.xtilde_coordinate(k) + alpha * self.xbar.coordinate(k)
        if not value < ZERO:
            raise InternalInconsistency("refutation coordinate failed to go negative")
        return k, value


def nonneg_ball_iri_refutation(xbar: TailSequence, epsilon=rat(1, 4)) -> IriRefutationWitness:
    """Per-candidate emptiness witness for the intrinsic relative interior of
    the nonnegative unit two-norm ball.

    Boundary candidates and candidates with a vanishing coordinate are
    rejected with the argument that already excludes them: the scaled-copy
    norm argument on the sphere, and the separating coordinate functional
    otherwise. Admitted candidates (strictly positive, strictly inside the
    sphere) receive a witness object whose negative-coordinate method
    certifies failure of relative absorption at every rational alpha > 1.
    """
    epsilon = rat(epsilon)
    if not (ZERO < epsilon < ONE):
        raise InputError("epsilon must be a rational strictly between 0 and 1")
    for k, p in enumerate(xbar.prefix, start=1):
        if p < 0:
            raise NotMemberError(f"coordinate {k} is negative: not in the set")
    if xbar.tail is not None and xbar.tail[0] < 0:
        raise NotMemberError("tail coefficient is negative: not in the set")
    nsq = xbar.ell2_sq()
    if nsq > ONE:
        raise NotMemberError("two-norm exceeds 1: not in the set")
    if nsq == ONE:
        raise PreconditionFailed(
            "unit two-norm: a shrunk copy of the set already misses the "
            "candidate, the scaled-copy norm argument applies",
            norm_sq=nsq,
        )
    zero_at = None
    for k, p in enumerate(xbar.prefix, start=1):
        if p == 0:
            zero_at = k
            break
    if zero_at is None and (xbar.tail is None or xbar.tail[0] == 0):
        zero_at = xbar.k0
    if zero_at is not None:
        raise PreconditionFailed(
            "zero coordinate: the coordinate functional supports the set at "
            "the candidate, separating it from the quasi relative interior",
            index=zero_at,
            separator=f"e_{zero_at}",
        )
    # admitted: strictly positive coordinates, strictly inside the sphere
    while nsq + epsilon * epsilon / 3 > ONE:
        epsilon = epsilon / 2
    bound = nsq + epsilon * epsilon / 3
    witness = IriRefutationWitness(
        xbar=xbar,
        epsilon=epsilon,
        preview_indices=(),
        xtilde_norm_sq_bound=bound,
    )
    witness.preview_indices = tuple(witness.index_for(n) for n in range(1, 9))
    return witness

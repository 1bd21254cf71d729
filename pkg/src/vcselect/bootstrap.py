"""Double-bootstrap estimation of the discrepancy curve.

For each design point n_l the procedure repeats, b2 times, an outer
replicate whose value is the mean over b1 inner replicates of the summed
interval-wise gap between the discretized squared-error profiles of two
cross-evaluated half-sample fits:

    draw 2*n_l rows with replacement -> split into halves G1, G2
    fit the conjectured model on each half
    SE_1 = (predict(fit on G1, X of G2) - y of G2)^2, SE_2 symmetric
    bin both SE vectors into m uniform intervals of [0, B)
    nu_{h,j} = counts_h[j]/n_l * (2j+1)B/(2m),  gap_j = |nu_{1,j} - nu_{2,j}|

The outer average over replicates of sum_j mean_b gap_j is the curve value
xi_hat(n_l).  All randomness comes from counter-based streams keyed by
(seed, design-point index, outer index, inner index), so any execution
order and any worker count give identical output.
"""

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, Optional, Sequence, Tuple

import numpy as np

from .config import (
    FIXED_B,
    POOLED_MAX,
    BootstrapConfig,
    DesignPoints,
    DiscretizationConfig,
)
from .data import Dataset, validate_dataset
from .errors import LossExceedsBoundError, StratumTooSmallError
from .linear import min_norm_solve
from .rng import DOMAIN_XI, stream


@dataclass(frozen=True)
class LossProfile:
    """Interval counts for both halves of one inner replicate."""

    counts_1: np.ndarray
    counts_2: np.ndarray
    B: float
    m: int
    n_l: int

    def __post_init__(self):
        c1 = np.asarray(self.counts_1, dtype=np.int64)
        c2 = np.asarray(self.counts_2, dtype=np.int64)
        object.__setattr__(self, "counts_1", c1)
        object.__setattr__(self, "counts_2", c2)
        if c1.shape != (self.m,) or c2.shape != (self.m,):
            raise ValueError("counts must have length m")
        if (c1 < 0).any() or (c2 < 0).any():
            raise ValueError("counts must be nonnegative")
        if c1.sum() != self.n_l or c2.sum() != self.n_l:
            raise ValueError("counts must sum to n_l in each half")
        if not self.B > 0:
            raise ValueError("B must be positive")


@dataclass(frozen=True)
class XiCurve:
    """Estimated discrepancy curve and its outer-replicate values."""

    design_points: Tuple[int, ...]
    xi_hat: np.ndarray
    replicates: np.ndarray  # shape (L, b2)

    def __post_init__(self):
        object.__setattr__(self, "design_points", tuple(int(p) for p in self.design_points))
        object.__setattr__(self, "xi_hat", np.asarray(self.xi_hat, dtype=np.float64))
        object.__setattr__(self, "replicates", np.asarray(self.replicates, dtype=np.float64))
        if self.xi_hat.shape != (len(self.design_points),):
            raise ValueError("one xi_hat per design point")
        if self.replicates.shape[0] != len(self.design_points):
            raise ValueError("one replicate row per design point")

    def to_tsv(self, path):
        b2 = self.replicates.shape[1]
        header = ["n_l", "xi_hat"] + [f"r_{i + 1}" for i in range(b2)]
        with open(path, "w") as fh:
            fh.write("\t".join(header) + "\n")
            for l, n_l in enumerate(self.design_points):
                row = [str(n_l), format(self.xi_hat[l], ".17g")]
                row += [format(v, ".17g") for v in self.replicates[l]]
                fh.write("\t".join(row) + "\n")

    @classmethod
    def from_tsv(cls, path):
        with open(path) as fh:
            header = fh.readline().split()
            if header[:2] != ["n_l", "xi_hat"]:
                raise ValueError(f"{path}: not a discrepancy-curve TSV")
            rows = [line.split() for line in fh if line.strip()]
        pts = [int(r[0]) for r in rows]
        xi = [float(r[1]) for r in rows]
        reps = [[float(v) for v in r[2:]] for r in rows]
        return cls(tuple(pts), np.array(xi), np.array(reps))

    def to_json(self):
        return {
            "design_points": list(self.design_points),
            "xi_hat": self.xi_hat.tolist(),
            "replicates": self.replicates.tolist(),
        }

    @classmethod
    def from_json(cls, payload):
        return cls(
            tuple(payload["design_points"]),
            np.array(payload["xi_hat"]),
            np.array(payload["replicates"]),
        )


def interval_midpoints(m):
    """Midpoints of the m uniform intervals of [0, 1): (2j+1)/(2m)."""
    return (2.0 * np.arange(m) + 1.0) / (2.0 * m)


def _interval_edges(m, B):
    # interior edges only; searchsorted(side='right') then bins by index
    return np.arange(1, m) * (B / m)


def discretize_losses(se, m, B, fixed=False):
    """Count squared errors into m uniform intervals of [0, B).

    A loss exactly equal to B is clamped into the last interval.  Under a
    fixed bound (fixed=True), losses above B raise LossExceedsBoundError;
    under the pooled empirical max they cannot occur.
    """
    se = np.asarray(se, dtype=np.float64)
    if not B > 0:
        raise ValueError("B must be positive")
    if (se < 0).any():
        raise ValueError("squared errors must be nonnegative")
    if fixed and (se > B).any():
        raise LossExceedsBoundError(
            f"loss {se.max():g} exceeds fixed bound {B:g}"
        )
    bins = np.searchsorted(_interval_edges(m, B), se, side="right")
    np.minimum(bins, m - 1, out=bins)  # clamp se == B (and any fp spill)
    return np.bincount(bins, minlength=m).astype(np.int64)


def nu_values(profile: LossProfile):
    """Discretized empirical risks per interval for both halves."""
    mid = interval_midpoints(profile.m)
    w = mid * profile.B
    nu1 = profile.counts_1 * w / profile.n_l
    nu2 = profile.counts_2 * w / profile.n_l
    return nu1, nu2


def replicate_gap(profile: LossProfile):
    """|nu_1j - nu_2j| for j = 0..m-1."""
    nu1, nu2 = nu_values(profile)
    return np.abs(nu1 - nu2)


def _pair_indices(n, n_l, g):
    idx = g.integers(0, n, size=2 * n_l)
    perm = g.permutation(2 * n_l)
    return idx[perm[:n_l]], idx[perm[n_l:]]


def _stratum_allocation(counts, n_l):
    """Per-level half-sample sizes: proportional, largest remainder, >= 1."""
    counts = np.asarray(counts)
    V = counts.size
    if (counts < 2).any():
        raise StratumTooSmallError(
            "every block level needs at least 2 rows for stratified resampling"
        )
    if n_l < V:
        raise StratumTooSmallError(
            f"n_l={n_l} cannot cover {V} block levels with one row each"
        )
    share = n_l * counts / counts.sum()
    alloc = np.maximum(np.floor(share).astype(int), 1)
    while alloc.sum() > n_l:
        over = np.where(alloc > 1, alloc - share, -np.inf)
        alloc[int(np.argmax(over))] -= 1
    while alloc.sum() < n_l:
        alloc[int(np.argmax(share - alloc))] += 1
    return alloc


def _pair_indices_stratified(level_rows, alloc, g):
    g1, g2 = [], []
    for rows, k in zip(level_rows, alloc):
        draw = rows[g.integers(0, rows.size, size=2 * k)]
        perm = g.permutation(2 * k)
        g1.append(draw[perm[:k]])
        g2.append(draw[perm[k:]])
    return np.concatenate(g1), np.concatenate(g2)


def _level_rows(blocks):
    levels = np.unique(blocks)
    return [np.flatnonzero(blocks == v) for v in levels]


def bootstrap_pair(d: Dataset, n_l, g, stratified=False):
    """One resampled pair: 2*n_l rows with replacement, split into halves.

    With stratified=True the draw happens within each block level so every
    level appears in both halves; level shares follow the full dataset.
    """
    if n_l < 1:
        raise ValueError("n_l must be >= 1")
    if stratified:
        if d.blocks is None:
            raise StratumTooSmallError("stratified resampling needs a blocks column")
        rows = _level_rows(d.blocks)
        alloc = _stratum_allocation(np.array([r.size for r in rows]), n_l)
        i1, i2 = _pair_indices_stratified(rows, alloc, g)
    else:
        i1, i2 = _pair_indices(d.n, n_l, g)
    return d.take_rows(i1), d.take_rows(i2)


def _outer_replicate(Xd, y, n_l, dcfg, b1, streams, strata=None):
    """Value of one outer replicate: mean over b1 inner gap sums.

    Xd is the model's design matrix (intercept included) over the full
    dataset; streams(b) yields the generator for inner replicate b.  All b1
    half-fits are solved in one stacked SVD, which is bitwise identical to
    per-replicate solves.
    """
    n = y.shape[0]
    m = dcfg.m
    idx1 = np.empty((b1, n_l), dtype=np.intp)
    idx2 = np.empty((b1, n_l), dtype=np.intp)
    for b in range(b1):
        g = streams(b)
        if strata is None:
            idx1[b], idx2[b] = _pair_indices(n, n_l, g)
        else:
            idx1[b], idx2[b] = _pair_indices_stratified(strata[0], strata[1], g)
    D1 = Xd[idx1]
    D2 = Xd[idx2]
    y1 = y[idx1]
    y2 = y[idx2]
    beta1, _ = min_norm_solve(D1, y1[..., None])
    beta2, _ = min_norm_solve(D2, y2[..., None])
    # cross-evaluate per replicate: 2-D matvec here is bitwise reproducible
    # by a one-replicate-at-a-time rerun, unlike a stacked 3-D matmul
    se1 = np.empty((b1, n_l))
    se2 = np.empty((b1, n_l))
    for b in range(b1):
        se1[b] = np.square(D2[b] @ beta1[b, :, 0] - y2[b])
        se2[b] = np.square(D1[b] @ beta2[b, :, 0] - y1[b])
    if dcfg.bound_policy == FIXED_B:
        B = np.full(b1, float(dcfg.B))
        if (se1 > dcfg.B).any() or (se2 > dcfg.B).any():
            raise LossExceedsBoundError(
                f"loss exceeds fixed bound {dcfg.B:g} at n_l={n_l}"
            )
    else:
        B = np.maximum(se1.max(axis=1), se2.max(axis=1))
    mid = interval_midpoints(m)
    gaps = np.zeros((b1, m))
    for b in range(b1):
        if B[b] == 0.0:
            continue  # all losses zero: both halves bin identically
        edges = _interval_edges(m, B[b])
        bin1 = np.searchsorted(edges, se1[b], side="right")
        bin2 = np.searchsorted(edges, se2[b], side="right")
        np.minimum(bin1, m - 1, out=bin1)
        np.minimum(bin2, m - 1, out=bin2)
        c1 = np.bincount(bin1, minlength=m)
        c2 = np.bincount(bin2, minlength=m)
        w = mid * B[b]
        gaps[b] = np.abs(c1 * w / n_l - c2 * w / n_l)
    return float(gaps.mean(axis=0).sum())


def r_b1(d: Dataset, n_l, columns, dcfg: DiscretizationConfig, b1, streams):
    """Mean inner-replicate gap sum at one design point.

    streams is a callable giving the generator for inner replicate b; use
    functools.partial(vcselect.rng.stream, seed, DOMAIN_XI, l, i) to match
    the full pipeline's stream for outer replicate (l, i).
    """
    validate_dataset(d)
    Xd = np.concatenate([np.ones((d.n, 1)), d.X[:, list(columns)]], axis=1)
    return _outer_replicate(Xd, d.y, int(n_l), dcfg, b1, streams)


def xi_curve(
    d: Dataset,
    columns: Sequence[int],
    design: DesignPoints,
    dcfg: DiscretizationConfig = DiscretizationConfig(),
    bcfg: BootstrapConfig = BootstrapConfig(),
) -> XiCurve:
    """Estimate the discrepancy curve for one model over all design points."""
    validate_dataset(d)
    design = design if isinstance(design, DesignPoints) else DesignPoints(tuple(design))
    design.check_against(d.n)
    cols = list(columns)
    Xd = np.concatenate([np.ones((d.n, 1)), d.X[:, cols]], axis=1)
    strata_by_point = {}
    if bcfg.stratified:
        if d.blocks is None:
            raise StratumTooSmallError("stratified resampling needs a blocks column")
        rows = _level_rows(d.blocks)
        sizes = np.array([r.size for r in rows])
        for n_l in design:
            strata_by_point[n_l] = (rows, _stratum_allocation(sizes, n_l))
    L = len(design)
    reps = np.zeros((L, bcfg.b2))

    def task(l, i):
        n_l = design.points[l]
        streams = lambda b: stream(bcfg.seed, DOMAIN_XI, l, i, b)
        return _outer_replicate(
            Xd, d.y, n_l, dcfg, bcfg.b1, streams, strata_by_point.get(n_l)
        )

    pairs = [(l, i) for l in range(L) for i in range(bcfg.b2)]
    if bcfg.workers > 1:
        with ThreadPoolExecutor(max_workers=bcfg.workers) as pool:
            for (l, i), r in zip(pairs, pool.map(lambda t: task(*t), pairs)):
                reps[l, i] = r
    else:
        for l, i in pairs:
            reps[l, i] = task(l, i)
    return XiCurve(design.points, reps.mean(axis=1), reps)

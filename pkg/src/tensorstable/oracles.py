"""Independent numerical oracles and parameter-region cross-validation.

The closed-form criteria are checked against two optimization oracles:

* :func:`block_positivity_min` minimizes a Choi quadratic form over product
  vectors by alternating eigenvector descent (see-saw),
* :func:`min_output_eig` minimizes the smallest output eigenvalue of a
  tensor-product map over pure input states.

Both return upper bounds on the true minimum; a negative value certifies a
violation, values inside the marginal band ``(-1e-6, -1e-9)`` neither
confirm nor refute.  :func:`region_scan` sweeps a parameter grid and flags
disagreements between a named analytic criterion and its oracle.
"""

from __future__ import annotations

import dataclasses
import json
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .criteria import depolarizing_pair_positive, is_2tsp, is_3tsp
from .linalg import (
    PSD_CONFIRM_TOL,
    PSD_REFUTE_TOL,
    ConvergenceError,
    HermitianOperator,
)
from .maps import (
    PauliDiagonalMap,
    PauliMap,
    choi,
    classify,
    max_entangled_projector,
    tensor_apply,
)
from .nonunital import (
    NonUnitalFamilyMap,
    classify_nonunital_positive,
    ghz_output_conditions,
    is_2tsp_nonunital,
    reduce_to_unital,
)

__all__ = [
    "DecomposabilityReport",
    "OracleConfig",
    "RegionScanReport",
    "SeeSawResult",
    "block_positivity_min",
    "decomposability_fixtures",
    "ex2_family",
    "min_output_eig",
    "region_criteria",
    "region_scan",
    "symmetric_linspace",
]


@dataclass(frozen=True)
class OracleConfig:
    """Knobs for the numerical oracles; deterministic given ``seed``."""

    restarts: int = 64
    max_iters: int = 500
    convergence_tol: float = 1e-12
    seed: int = 0
    sample_count: int = 4096

    def __post_init__(self):
        if self.restarts < 1 or self.max_iters < 1 or self.sample_count < 1:
            raise ValueError("counts must be >= 1")
        if self.convergence_tol <= 0:
            raise ValueError("convergence_tol must be > 0")


@dataclass(frozen=True)
class SeeSawResult:
    """Full see-saw output: best value, witnessing vectors, value history."""

    value: float
    phi: np.ndarray
    chi: np.ndarray
    history: np.ndarray  # (steps, restarts), non-increasing along axis 0
    converged: bool


def _random_unit(rng, n: int, dim: int) -> np.ndarray:
    v = rng.standard_normal((n, dim)) + 1j * rng.standard_normal((n, dim))
    return v / np.linalg.norm(v, axis=1, keepdims=True)


def symmetric_linspace(lo: float, hi: float, steps: int) -> np.ndarray:
    """Evenly spaced grid whose floats are exactly symmetric about the center.

    ``np.linspace`` accumulates rounding asymmetrically, which makes exact
    boundary slacks (for example at ``l_j^2 = l_k^2``) flip sign between
    mirror grid points; integer-times-step construction keeps mirror points
    bitwise negatives of each other.
    """
    if steps < 2:
        raise ValueError("a grid needs at least two steps")
    mid = (lo + hi) / 2.0
    offsets = np.arange(steps) - (steps - 1) / 2.0
    return offsets * ((hi - lo) / (steps - 1)) + mid


def _min_eigvecs(mats: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Batched smallest eigenpair of a stack of Hermitian matrices."""
    mats = (mats + np.conj(np.swapaxes(mats, -1, -2))) / 2
    w, v = np.linalg.eigh(mats)
    return w[..., 0].real, v[..., :, 0]


def _see_saw(w4: np.ndarray, chi0: np.ndarray, cfg: OracleConfig) -> SeeSawResult:
    """Alternating eigenvector minimization of ``<phi chi|W|phi chi>``.

    ``w4`` is the operator reshaped to ``(dA, dB, dA, dB)``; ``chi0`` is a
    batch of starting vectors on the B side.
    """
    chi = chi0
    phi = None
    values = None
    history = []
    converged = np.zeros(len(chi0), dtype=bool)
    for _ in range(cfg.max_iters):
        ma = np.einsum("abcd,rb,rd->rac", w4, chi.conj(), chi, optimize=False)
        va, phi = _min_eigvecs(ma)
        history.append(va)
        mb = np.einsum("abcd,ra,rc->rbd", w4, phi.conj(), phi, optimize=False)
        vb, chi = _min_eigvecs(mb)
        history.append(vb)
        if values is not None:
            converged |= np.abs(vb - values) < cfg.convergence_tol
        values = vb
        if converged.all():
            break
    best = int(np.argmin(values))
    if not converged.any():
        raise ConvergenceError(
            f"see-saw did not converge in {cfg.max_iters} iterations",
            best=float(values[best]),
        )
    return SeeSawResult(
        value=float(values[best]),
        phi=phi[best],
        chi=chi[best],
        history=np.array(history),
        converged=bool(converged[best]),
    )


def block_positivity_min(
    omega: HermitianOperator,
    cut: Sequence[int],
    cfg: OracleConfig | None = None,
    full_output: bool = False,
):
    """Approximate minimum of ``<phi x chi|Omega|phi x chi>`` over unit products.

    ``cut`` lists the tensor factors spanned by ``phi``; the complement is
    spanned by ``chi``.  Restarts mix eigenvectors of the partially
    contracted operator with random unit vectors.  The result is an upper
    bound on the true minimum: a negative value certifies that ``omega`` is
    not block-positive.
    """
    cfg = cfg or OracleConfig()
    cut = sorted(set(int(k) for k in cut))
    n = omega.nfactors
    if not cut or cut[-1] >= n or cut[0] < 0 or len(cut) == n:
        raise ValueError(f"cut must be a proper nonempty subset of range({n})")
    rest = [k for k in range(n) if k not in cut]
    dims = omega.dims
    da = int(np.prod([dims[k] for k in cut]))
    db = int(np.prod([dims[k] for k in rest]))
    perm = cut + rest
    axes = perm + [n + k for k in perm]
    w4 = omega.matrix.reshape(dims + dims).transpose(axes).reshape(da, db, da, db)

    rng = np.random.default_rng(cfg.seed)
    # Restarts mix eigenvectors of the partially contracted operator with
    # random vectors, the latter pre-scored by their optimal phi response
    # (the landscape has local minima near criterion boundaries).
    contracted = np.einsum("abad->bd", w4)
    _, vecs = np.linalg.eigh((contracted + contracted.conj().T) / 2)
    n_eig = min(db, max(cfg.restarts // 2, 1))
    n_rand = max(cfg.restarts - n_eig, 1)
    samples = _random_unit(rng, cfg.sample_count, db)
    ma = np.einsum("abcd,rb,rd->rac", w4, samples.conj(), samples, optimize=False)
    scores, _ = _min_eigvecs(ma)
    inits = [samples[np.argsort(scores)[:n_rand]], vecs.T[:n_eig]]
    # When either side is a pair of equal factors, seed with the maximally
    # entangled pairing (for Choi operators of doubled maps the violating
    # product vector sits exactly there).
    ent = _entangled_inits(w4, [dims[k] for k in cut], [dims[k] for k in rest])
    if ent is not None:
        inits.append(ent)
    result = _see_saw(w4, np.concatenate(inits), cfg)
    return result if full_output else result.value


def _entangled_inits(w4, dims_a, dims_b) -> np.ndarray | None:
    chis = []
    if len(dims_b) == 2 and dims_b[0] == dims_b[1]:
        chis.append(np.eye(dims_b[0]).reshape(-1) / np.sqrt(dims_b[0]))
    if len(dims_a) == 2 and dims_a[0] == dims_a[1]:
        phi = np.eye(dims_a[0]).reshape(-1) / np.sqrt(dims_a[0])
        mb = np.einsum("abcd,a,c->bd", w4, phi.conj(), phi, optimize=False)
        _, v = np.linalg.eigh((mb + mb.conj().T) / 2)
        chis.append(v[:, 0])
    if not chis:
        return None
    return np.array(chis)


def _tensor_superop(maps) -> np.ndarray:
    """Row-major superoperator of the tensor product of qubit maps."""
    n = len(maps)
    d = 2**n
    tensors = [m.superop().reshape(2, 2, 2, 2) for m in maps]
    s = np.zeros((d * d, d * d), dtype=np.complex128)
    dims = (2,) * n
    for col in range(d * d):
        a, b = divmod(col, d)
        x = np.zeros((d, d), dtype=np.complex128)
        x[a, b] = 1.0
        t = x.reshape(dims + dims)
        for k, tk in enumerate(tensors):
            t = np.tensordot(tk, t, axes=[[2, 3], [k, n + k]])
            t = np.moveaxis(t, [0, 1], [k, n + k])
        s[:, col] = t.reshape(-1)
    return s


def min_output_eig(
    maps,
    cfg: OracleConfig | None = None,
    full_output: bool = False,
):
    """Approximate ``min`` over pure inputs of the smallest output eigenvalue.

    Samples ``cfg.sample_count`` Haar-like pure states of ``len(maps)``
    qubits, then refines the best candidates by alternating eigenvector
    descent on the bilinear form ``<v|(tensor maps)[psi psi*]|v>``.  Returns
    an upper bound on the true minimum.
    """
    cfg = cfg or OracleConfig()
    n = len(maps)
    d = 2**n
    s = _tensor_superop(maps)
    s_adj = s.conj().T
    rng = np.random.default_rng(cfg.seed)

    psis = _random_unit(rng, cfg.sample_count, d)
    rhos = np.einsum("ra,rb->rab", psis, psis.conj()).reshape(-1, d * d)
    outs = (rhos @ s.T).reshape(-1, d, d)
    vals, _ = _min_eigvecs(outs)
    order = np.argsort(vals)
    # Descend from the best candidates plus fresh random states; the best
    # samples tend to cluster in one basin of the bilinear landscape.
    n_best = min((cfg.restarts + 1) // 2, cfg.sample_count)
    keep = order[:n_best]

    psi = np.concatenate([psis[keep], _random_unit(rng, cfg.restarts - n_best, d)])
    values = None
    history = []
    for _ in range(cfg.max_iters):
        rho = np.einsum("ra,rb->rab", psi, psi.conj()).reshape(-1, d * d)
        outs = (rho @ s.T).reshape(-1, d, d)
        vout, v = _min_eigvecs(outs)
        history.append(vout)
        done = values is not None and np.abs(vout - values).max() < cfg.convergence_tol
        values = vout
        if done:
            break
        proj = np.einsum("ra,rb->rab", v, v.conj()).reshape(-1, d * d)
        kmats = (proj @ s_adj.T).reshape(-1, d, d)
        _, psi = _min_eigvecs(kmats)
    i = int(np.argmin(values))
    if not full_output:
        return float(values[i])
    return float(values[i]), psi[i], np.array(history)


# Analytic slacks this close to zero sit on a criterion boundary; the sign
# of such a point is below any oracle's resolution, so no flag is claimed.
ANALYTIC_BAND = 1e-9


def _flag(analytic: bool, slack: float, value: float) -> str:
    if not np.isfinite(value):
        return "marginal"
    if value >= -PSD_CONFIRM_TOL:
        ok = analytic
    elif value < -PSD_REFUTE_TOL:
        ok = not analytic
    else:
        return "marginal"
    if ok:
        return "agree"
    return "marginal" if abs(slack) <= ANALYTIC_BAND else "disagree"


@dataclass(frozen=True)
class RegionCriterion:
    """A named analytic predicate paired with its numerical oracle."""

    name: str
    axes: tuple[str, ...]
    bounds: tuple[tuple[float, float], ...]
    default_steps: int
    analytic: Callable[[np.ndarray, dict], tuple[bool, float]]
    oracle: Callable[[np.ndarray, dict, OracleConfig], float]
    params: tuple[tuple[str, float], ...] = ()


def _verdict_analytic(make_verdict):
    def wrapped(pt, params):
        v = make_verdict(pt, params)
        return v.satisfied, v.worst_slack

    return wrapped


def _depol_analytic(pt, params):
    q1, q2 = pt
    slack = min(q1 * q2 + 1.0 / 3.0, 1.0 - abs(q1), 1.0 - abs(q2))
    return depolarizing_pair_positive(q1, q2), float(slack)


def _depol_oracle(pt, params, cfg):
    return min_output_eig([PauliMap.depolarizing(pt[0]), PauliMap.depolarizing(pt[1])], cfg)


def _2tsp_oracle(pt, params, cfg):
    m = PauliMap.unital(pt)
    return block_positivity_min(choi([m, m]), cut=(0, 2), cfg=cfg)


def _3tsp_oracle(pt, params, cfg):
    from .witness import ghz_variants

    m = PauliMap.unital(pt)
    best = np.inf
    for state in ghz_variants(3):
        out = tensor_apply([m, m, m], state.rho)
        best = min(best, out.min_eig())
    return float(best)


def _nonunital(pt, params) -> NonUnitalFamilyMap:
    return NonUnitalFamilyMap(t=params["t"], lam3=tuple(pt))


def _nonunital_positive_oracle(pt, params, cfg):
    return block_positivity_min(choi(_nonunital(pt, params).to_general()), cut=(0,), cfg=cfg)


def _nonunital_ghz_oracle(pt, params, cfg):
    g = _nonunital(pt, params).to_general()
    return tensor_apply([g, g], max_entangled_projector(2)).min_eig()


def _nonunital_2tsp_analytic(pt, params):
    m = _nonunital(pt, params)
    if m.interior_gap() <= 1e-12:
        return False, float("nan")
    v = is_2tsp_nonunital(m)
    return v.satisfied, v.worst_slack


def _nonunital_2tsp_oracle(pt, params, cfg):
    m = _nonunital(pt, params)
    if m.interior_gap() <= 1e-12:
        return float("nan")  # criterion undefined; row is flagged marginal
    rr = reduce_to_unital(m)
    psi = np.zeros(4, dtype=np.complex128)
    psi[0] = psi[3] = 2**-0.5
    w = np.kron(rr.a_inv, rr.a_inv) @ psi
    w /= np.linalg.norm(w)
    rho = HermitianOperator(np.outer(w, w.conj()), (2, 2))
    g = m.to_general()
    return tensor_apply([g, g], rho).min_eig()


_CUBE3 = (("l1", "l2", "l3"), (((-1.0, 1.0),) * 3))

_REGION_CRITERIA = {
    "depolarizing": RegionCriterion(
        name="depolarizing",
        axes=("q1", "q2"),
        bounds=((-1.0, 1.0), (-1.0, 1.0)),
        default_steps=41,
        analytic=_depol_analytic,
        oracle=_depol_oracle,
    ),
    "2tsp": RegionCriterion(
        name="2tsp",
        axes=_CUBE3[0],
        bounds=_CUBE3[1],
        default_steps=21,
        analytic=_verdict_analytic(lambda pt, params: is_2tsp(pt)),
        oracle=_2tsp_oracle,
    ),
    "3tsp": RegionCriterion(
        name="3tsp",
        axes=_CUBE3[0],
        bounds=_CUBE3[1],
        default_steps=21,
        analytic=_verdict_analytic(lambda pt, params: is_3tsp(pt)),
        oracle=_3tsp_oracle,
    ),
    "nonunital-positive": RegionCriterion(
        name="nonunital-positive",
        axes=_CUBE3[0],
        bounds=_CUBE3[1],
        default_steps=21,
        analytic=_verdict_analytic(lambda pt, params: classify_nonunital_positive(_nonunital(pt, params))),
        oracle=_nonunital_positive_oracle,
        params=(("t", 0.8),),
    ),
    "nonunital-ghz": RegionCriterion(
        name="nonunital-ghz",
        axes=_CUBE3[0],
        bounds=_CUBE3[1],
        default_steps=21,
        analytic=_verdict_analytic(lambda pt, params: ghz_output_conditions(_nonunital(pt, params))),
        oracle=_nonunital_ghz_oracle,
        params=(("t", 0.8),),
    ),
    "nonunital-2tsp": RegionCriterion(
        name="nonunital-2tsp",
        axes=_CUBE3[0],
        bounds=_CUBE3[1],
        default_steps=21,
        analytic=_nonunital_2tsp_analytic,
        oracle=_nonunital_2tsp_oracle,
        params=(("t", 0.8),),
    ),
}


def region_criteria() -> tuple[str, ...]:
    """Names accepted by :func:`region_scan`."""
    return tuple(sorted(_REGION_CRITERIA))


@dataclass(frozen=True)
class RegionScanReport:
    """Grid of parameter points with analytic verdicts and oracle values."""

    criterion: str
    axes: tuple[str, ...]
    grids: tuple[np.ndarray, ...]
    params: dict
    points: np.ndarray  # (npoints, naxes), row-major over the grid
    analytic: np.ndarray  # bool
    analytic_slack: np.ndarray  # worst slack behind each analytic verdict
    oracle: np.ndarray  # float
    flags: np.ndarray  # "agree" | "disagree" | "marginal"
    summary: dict = field(default_factory=dict)

    def to_csv(self) -> str:
        header = ",".join([*self.axes, "analytic", "oracle", "flag"])
        lines = [header]
        for pt, a, o, f in zip(self.points, self.analytic, self.oracle, self.flags):
            coords = ",".join(f"{c:.12g}" for c in pt)
            lines.append(f"{coords},{int(a)},{o:.12g},{f}")
        return "\n".join(lines) + "\n"

    def to_json(self) -> str:
        payload = {
            "criterion": self.criterion,
            "axes": list(self.axes),
            "params": self.params,
            "summary": self.summary,
            "points": [
                {
                    "coords": [float(c) for c in pt],
                    "analytic": int(a),
                    "oracle": None if not np.isfinite(o) else float(o),
                    "flag": str(f),
                }
                for pt, a, o, f in zip(self.points, self.analytic, self.oracle, self.flags)
            ],
        }
        return json.dumps(payload, sort_keys=True)

    def save(self, path: str, fmt: str = "json") -> None:
        text = self.to_csv() if fmt == "csv" else self.to_json()
        with open(path, "w") as fh:
            fh.write(text)


def region_scan(
    criterion: str,
    steps: int | Sequence[int] | None = None,
    params: dict | None = None,
    cfg: OracleConfig | None = None,
    threads: int = 1,
) -> RegionScanReport:
    """Sweep a parameter grid, comparing an analytic criterion to its oracle.

    Per-point oracle seeds derive from ``(cfg.seed, point index)`` so the
    report is independent of evaluation order; ``threads > 1`` distributes
    points over a thread pool.
    """
    if criterion not in _REGION_CRITERIA:
        raise ValueError(
            f"unknown criterion {criterion!r}; known: {', '.join(region_criteria())}"
        )
    crit = _REGION_CRITERIA[criterion]
    cfg = cfg or OracleConfig(restarts=8, sample_count=256)
    merged = dict(crit.params)
    merged.update(params or {})
    if steps is None:
        steps = crit.default_steps
    if np.isscalar(steps):
        steps = (int(steps),) * len(crit.axes)
    if len(steps) != len(crit.axes):
        raise ValueError(f"{criterion} needs {len(spec.axes)} step counts")
    grids = tuple(
        symmetric_linspace(lo, hi, k) for (lo, hi), k in zip(crit.bounds, steps)
    )
    mesh = np.meshgrid(*grids, indexing="ij")
    points = np.stack([m.reshape(-1) for m in mesh], axis=1)
    npts = len(points)

    analytic = np.zeros(npts, dtype=bool)
    slack = np.zeros(npts, dtype=float)
    oracle = np.zeros(npts, dtype=float)

    def run(i: int) -> None:
        pt = points[i]
        analytic[i], slack[i] = crit.analytic(pt, merged)
        seed = int(np.random.SeedSequence((cfg.seed, i)).generate_state(1)[0])
        oracle[i] = crit.oracle(pt, merged, dataclasses.replace(cfg, seed=seed))

    if threads > 1:
        from concurrent.futures import ThreadPoolExecutor

        with ThreadPoolExecutor(max_workers=threads) as pool:
            list(pool.map(run, range(npts)))
    else:
        for i in range(npts):
            run(i)

    flags = np.array([_flag(a, sl, o) for a, sl, o in zip(analytic, slack, oracle)])
    summary = {
        "agree": int(np.sum(flags == "agree")),
        "disagree": int(np.sum(flags == "disagree")),
        "marginal": int(np.sum(flags == "marginal")),
    }
    return RegionScanReport(
        criterion=criterion,
        axes=crit.axes,
        grids=grids,
        params=merged,
        points=points,
        analytic=analytic,
        analytic_slack=slack,
        oracle=oracle,
        flags=flags,
        summary=summary,
    )


@dataclass(frozen=True)
class DecomposabilityReport:
    """Numbers behind the two decomposability fixtures."""

    ex1_choi_min_eig: float
    ex1_identity_residual: float
    ex2_choi_min_eig: float
    ex2_mu: float
    ex2_is_2tsp: bool
    ex2_cp: bool
    ex2_ccp: bool


# Coefficient tables of the two-qubit maps F in the decomposability examples.
_EX1_COEFFS = np.array(
    [
        [1.0, 2**-0.5, 0.5, 2**-0.5],
        [2**-0.5, 0.5, 0.25, 0.5],
        [0.5, 0.25, 0.0, 0.25],
        [2**-0.5, 0.5, 0.25, 0.5],
    ]
)

_EX2_COEFFS = np.array(
    [
        [(4.0 + (n == 0)) / 5.0 for n in range(4)],
        [(2.0 - (n == 0)) / 5.0 for n in range(4)],
        [(2.0 - (n == 0)) / 5.0 for n in range(4)],
        [(4.0 + (n == 0)) / 5.0 for n in range(4)],
    ]
)

EX2_MAP_A = PauliMap((1.0, 2 / 3, 2 / 3, 2 / 3))
EX2_MAP_B = PauliMap((1.0, 0.05, -0.05, 1.0))


def ex2_family(mu: float) -> PauliMap:
    """Convex mixture ``mu A + (1 - mu) B`` of the second example's maps."""
    lam = mu * np.asarray(EX2_MAP_A.lam) + (1.0 - mu) * np.asarray(EX2_MAP_B.lam)
    return PauliMap(tuple(lam))


def decomposability_fixtures(mu: float = 0.1) -> DecomposabilityReport:
    """Build and check the two decomposability examples.

    Example 1: the two-qubit map F from the coefficient table above is
    completely positive and ``(Y x Y) = F . (Id x Id + T x T) / 2`` holds as
    an identity of 16x16 superoperator matrices for the boundary map with
    scalings ``(1/sqrt 2, 0, 1/sqrt 2)``.

    Example 2: the second table's F is completely positive, and the convex
    family is 2-tensor-stable but neither CP nor CcP at the given ``mu``.
    """
    f1 = PauliDiagonalMap(_EX1_COEFFS)
    ex1_min = f1.choi().min_eig()

    lam_b = np.array([1.0, 2**-0.5, 0.0, 2**-0.5])
    doubled = PauliDiagonalMap(np.outer(lam_b, lam_b))
    eta = np.array([1.0, 1.0, -1.0, 1.0])
    id_plus_tt = PauliDiagonalMap(np.ones((4, 4)) + np.outer(eta, eta))
    rhs = f1.superop() @ id_plus_tt.superop() / 2.0
    residual = float(np.abs(doubled.superop() - rhs).max())

    f2 = PauliDiagonalMap(_EX2_COEFFS)
    ex2_min = f2.choi().min_eig()

    m = ex2_family(mu)
    rep = classify(m)
    return DecomposabilityReport(
        ex1_choi_min_eig=float(ex1_min),
        ex1_identity_residual=residual,
        ex2_choi_min_eig=float(ex2_min),
        ex2_mu=float(mu),
        ex2_is_2tsp=is_2tsp(m.lam3).satisfied,
        ex2_cp=rep.cp,
        ex2_ccp=rep.ccp,
    )

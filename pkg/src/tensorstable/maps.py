"""Linear qubit maps: representations, action, composition, Choi operators.

A qubit map is represented by its real 4x4 matrix ``E`` in the Pauli basis,
``E[i, j] = tr(sigma_i Phi[sigma_j]) / 2``, acting as

    Phi[X] = (1/2) * sum_i (E @ x)_i sigma_i,   x_j = tr(sigma_j X).

:class:`PauliMap` is the diagonal special case ``E = diag(lambda)``, which
also admits the conjugation form ``Phi[X] = sum_j q_j sigma_j X sigma_j``
with ``q = H4 @ lambda / 4`` (``H4`` the +-1 Hadamard pattern).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .linalg import (
    SIGMA,
    HermitianOperator,
    hermitian_spectrum,
    kron,
    partial_transpose,
    psd_verdict,
)

__all__ = [
    "H4",
    "ClassificationReport",
    "GeneralQubitMap",
    "PauliDiagonalMap",
    "PauliMap",
    "choi",
    "classify",
    "compose",
    "lambda_to_q",
    "map_from_json",
    "map_from_choi",
    "map_to_json",
    "max_entangled_projector",
    "q_to_lambda",
    "tensor_apply",
]

# +-1 Hadamard pattern relating the two Pauli-map parameterizations.
H4 = np.array(
    [
        [1, 1, 1, 1],
        [1, 1, -1, -1],
        [1, -1, 1, -1],
        [1, -1, -1, 1],
    ],
    dtype=float,
)

_VEC_SIGMA = np.array([s.reshape(-1) for s in SIGMA])  # (4, 4) rows vec(sigma_i)


def lambda_to_q(lam: Sequence[float]) -> np.ndarray:
    """Conjugation weights ``q = H4 @ lambda / 4``; involutive up to the 1/4."""
    lam = np.asarray(lam, dtype=float)
    if lam.shape != (4,):
        raise ValueError("lambda must have four components")
    return H4 @ lam / 4.0


def q_to_lambda(q: Sequence[float]) -> np.ndarray:
    """Inverse of :func:`lambda_to_q` (``H4 @ H4 = 4 I``)."""
    q = np.asarray(q, dtype=float)
    if q.shape != (4,):
        raise ValueError("q must have four components")
    return H4 @ q


def _check_2x2(x) -> np.ndarray:
    x = np.asarray(x, dtype=np.complex128)
    if x.shape != (2, 2):
        raise ValueError(f"expected a 2x2 matrix, got shape {x.shape}")
    return x


@dataclass(frozen=True)
class PauliMap:
    """Qubit map diagonal in the Pauli basis, parameters ``(l0, l1, l2, l3)``."""

    lam: tuple[float, float, float, float]

    def __post_init__(self):
        lam = tuple(float(v) for v in self.lam)
        if len(lam) != 4:
            raise ValueError("PauliMap takes four lambda values")
        object.__setattr__(self, "lam", lam)

    @classmethod
    def identity(cls) -> "PauliMap":
        return cls((1.0, 1.0, 1.0, 1.0))

    @classmethod
    def depolarizing(cls, q: float) -> "PauliMap":
        """``D_q[X] = q X + (1 - q) tr(X) I / 2``."""
        return cls((1.0, q, q, q))

    @classmethod
    def transposition(cls) -> "PauliMap":
        return cls((1.0, 1.0, -1.0, 1.0))

    @classmethod
    def reduction(cls) -> "PauliMap":
        """``R[X] = tr(X) I - X``."""
        return cls((1.0, -1.0, -1.0, -1.0))

    @classmethod
    def unital(cls, lam3: Sequence[float]) -> "PauliMap":
        """Trace-preserving map from the three Bloch scalings (l0 = 1)."""
        l1, l2, l3 = (float(v) for v in lam3)
        return cls((1.0, l1, l2, l3))

    @property
    def q(self) -> np.ndarray:
        return lambda_to_q(self.lam)

    @property
    def matrix(self) -> np.ndarray:
        return np.diag(np.asarray(self.lam, dtype=float))

    @property
    def lam3(self) -> np.ndarray:
        return np.asarray(self.lam[1:], dtype=float)

    def apply(self, x) -> np.ndarray:
        """Action in the lambda form, ``(1/2) sum_j l_j tr(sigma_j X) sigma_j``."""
        x = _check_2x2(x)
        coeffs = np.array([np.trace(s @ x) for s in SIGMA])
        out = np.zeros((2, 2), dtype=np.complex128)
        for lj, cj, s in zip(self.lam, coeffs, SIGMA):
            out += 0.5 * lj * cj * s
        return out

    def apply_conjugation(self, x) -> np.ndarray:
        """Action in the conjugation form, ``sum_j q_j sigma_j X sigma_j``."""
        x = _check_2x2(x)
        out = np.zeros((2, 2), dtype=np.complex128)
        for qj, s in zip(self.q, SIGMA):
            out += qj * (s @ x @ s)
        return out

    def adjoint(self) -> "PauliMap":
        return self  # diagonal real E is self-adjoint

    def superop(self) -> np.ndarray:
        return _superop_from_matrix(self.matrix)


class GeneralQubitMap:
    """Qubit map given by an arbitrary real 4x4 Pauli-basis matrix."""

    __slots__ = ("matrix",)

    def __init__(self, matrix):
        m = np.asarray(matrix, dtype=float)
        if m.shape != (4, 4):
            raise ValueError(f"expected a 4x4 real matrix, got shape {m.shape}")
        self.matrix = m.copy()

    @classmethod
    def from_pauli(cls, m: PauliMap) -> "GeneralQubitMap":
        return cls(m.matrix)

    @classmethod
    def from_translation(cls, t: Sequence[float], lam3: Sequence[float]) -> "GeneralQubitMap":
        """Trace-preserving map with Bloch translation ``t`` and scalings ``lam3``."""
        t = np.asarray(t, dtype=float)
        lam3 = np.asarray(lam3, dtype=float)
        if t.shape != (3,) or lam3.shape != (3,):
            raise ValueError("t and lam3 must each have three components")
        e = np.zeros((4, 4))
        e[0, 0] = 1.0
        e[1:, 0] = t
        e[1, 1], e[2, 2], e[3, 3] = lam3
        return cls(e)

    @property
    def translation(self) -> np.ndarray:
        return self.matrix[1:, 0].copy()

    @property
    def lam3(self) -> np.ndarray:
        return np.diag(self.matrix)[1:].copy()

    def apply(self, x) -> np.ndarray:
        x = _check_2x2(x)
        coeffs = np.array([np.trace(s @ x) for s in SIGMA])
        out_coeffs = self.matrix @ coeffs
        out = np.zeros((2, 2), dtype=np.complex128)
        for c, s in zip(out_coeffs, SIGMA):
            out += 0.5 * c * s
        return out

    def adjoint(self) -> "GeneralQubitMap":
        return GeneralQubitMap(self.matrix.T)

    def superop(self) -> np.ndarray:
        return _superop_from_matrix(self.matrix)

    def is_diagonal(self, tol: float = 0.0) -> bool:
        off = self.matrix - np.diag(np.diag(self.matrix))
        return bool(np.abs(off).max() <= tol)

    def __repr__(self) -> str:
        return f"GeneralQubitMap(lam3={self.lam3}, t={self.translation})"


def _superop_from_matrix(e: np.ndarray) -> np.ndarray:
    """4x4 superoperator on row-major ``vec(X)`` for a Pauli-basis matrix."""
    return 0.5 * (_VEC_SIGMA.T @ e @ _VEC_SIGMA.conj())


def _action_tensor(m) -> np.ndarray:
    """Superoperator reshaped to ``T[a, b, a', b'] = Phi[E_{a'b'}][a, b]``."""
    return m.superop().reshape(2, 2, 2, 2)


def compose(f, g):
    """Concatenation ``f . g``; matrix representations multiply."""
    if isinstance(f, PauliMap) and isinstance(g, PauliMap):
        return PauliMap(tuple(a * b for a, b in zip(f.lam, g.lam)))
    return GeneralQubitMap(np.asarray(f.matrix) @ np.asarray(g.matrix))


def max_entangled_projector(d: int = 2) -> HermitianOperator:
    """Projector onto ``(1/sqrt(d)) sum_i |ii>``, factor dims ``(d, d)``."""
    psi = np.zeros(d * d, dtype=np.complex128)
    for i in range(d):
        psi[i * d + i] = 1.0
    psi /= np.sqrt(d)
    return HermitianOperator(np.outer(psi, psi.conj()), (d, d))


def choi(maps) -> HermitianOperator:
    """Choi operator of a map or of an ordered list of qubit maps.

    For one map this is ``(Phi x Id)`` applied to the maximally entangled
    projector (4x4).  For ``k`` maps the result is the Kronecker product of
    the single-map Choi operators, so the factor ordering is
    ``A A' B B' ...`` with unprimed factors carrying the map inputs.
    """
    if isinstance(maps, (PauliMap, GeneralQubitMap)):
        maps = [maps]
    if not maps:
        raise ValueError("choi requires at least one map")
    singles = []
    for m in maps:
        t = _action_tensor(m)
        omega = np.zeros((4, 4), dtype=np.complex128)
        # (Phi x Id)[psi+ proj] = (1/2) sum_ab Phi[E_ab] (x) E_ab
        for a in range(2):
            for b in range(2):
                eab = np.zeros((2, 2))
                eab[a, b] = 1.0
                omega += 0.5 * np.kron(t[:, :, a, b], eab)
        singles.append(HermitianOperator(omega, (2, 2)))
    out = singles[0]
    for s in singles[1:]:
        out = kron(out, s)
    return out


def map_from_choi(omega: HermitianOperator) -> GeneralQubitMap:
    """Reconstruct a qubit map from its 4x4 Choi operator.

    Inverts the isomorphism via ``Phi[X] = 2 tr_2[Omega (I x X^T)]``.
    """
    w = omega.matrix if isinstance(omega, HermitianOperator) else np.asarray(omega)
    if w.shape != (4, 4):
        raise ValueError("expected a 4x4 Choi operator")
    e = np.zeros((4, 4))
    for j, s in enumerate(SIGMA):
        big = w @ np.kron(np.eye(2), s.T)
        phi_sj = big.reshape(2, 2, 2, 2).trace(axis1=1, axis2=3) * 2.0
        for i, si in enumerate(SIGMA):
            e[i, j] = np.trace(si @ phi_sj).real / 2.0
    return GeneralQubitMap(e)


def tensor_apply(maps, x: HermitianOperator) -> HermitianOperator:
    """Apply one qubit map per tensor factor of ``x``."""
    if not isinstance(x, HermitianOperator):
        raise ValueError("tensor_apply expects a HermitianOperator input")
    if len(maps) != x.nfactors or any(d != 2 for d in x.dims):
        raise ValueError(
            f"need one qubit factor per map: {len(maps)} maps, dims {x.dims}"
        )
    n = x.nfactors
    t = x.matrix.reshape(x.dims + x.dims).astype(np.complex128)
    for k, m in enumerate(maps):
        tk = _action_tensor(m)
        t = np.tensordot(tk, t, axes=[[2, 3], [k, n + k]])
        t = np.moveaxis(t, [0, 1], [k, n + k])
    return HermitianOperator(t.reshape(x.dim, x.dim), x.dims)


class PauliDiagonalMap:
    """Map on ``n`` qubits diagonal in the product-Pauli basis.

    ``Phi[X] = 2^-n sum_idx c_idx tr(sigma_idx X) sigma_idx`` with ``c`` an
    ``(4,)*n`` coefficient array.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        c = np.asarray(coeffs, dtype=float)
        if c.shape != (4,) * c.ndim:
            raise ValueError("coefficients must have shape (4,)*n")
        self.coeffs = c.copy()

    @property
    def nqubits(self) -> int:
        return self.coeffs.ndim

    @property
    def q(self) -> np.ndarray:
        """Conjugation weights: the Hadamard pattern applied on every axis."""
        q = self.coeffs
        for axis in range(q.ndim):
            q = np.moveaxis(np.tensordot(H4 / 4.0, q, axes=(1, axis)), 0, axis)
        return q

    def superop(self) -> np.ndarray:
        d = 2**self.nqubits
        mats = [np.eye(1, dtype=np.complex128)]
        for _ in range(self.nqubits):
            mats = [np.kron(a, s) for a in mats for s in SIGMA]
        vecs = np.array([m.reshape(-1) for m in mats])
        return (vecs.T * self.coeffs.reshape(-1)) @ vecs.conj() / d

    def apply(self, x) -> np.ndarray:
        d = 2**self.nqubits
        x = np.asarray(x, dtype=np.complex128)
        if x.shape != (d, d):
            raise ValueError(f"expected a {d}x{d} matrix")
        return (self.superop() @ x.reshape(-1)).reshape(d, d)

    def choi(self) -> HermitianOperator:
        """Choi operator, a ``4^n``-dimensional Hermitian matrix."""
        d = 2**self.nqubits
        s = self.superop()
        omega = np.zeros((d * d, d * d), dtype=np.complex128)
        for a in range(d):
            for b in range(d):
                eab = np.zeros((d, d), dtype=np.complex128)
                eab[a, b] = 1.0
                omega += np.kron(s[:, a * d + b].reshape(d, d), eab) / d
        return HermitianOperator(omega, (d, d))


@dataclass(frozen=True)
class ClassificationReport:
    """Boolean verdicts for a qubit map with the slack behind each verdict."""

    unital: bool
    trace_preserving: bool
    positive: bool
    cp: bool
    ccp: bool
    eb: bool
    margins: dict = field(default_factory=dict)
    positivity_method: str = "pauli-closed-form"


_E30 = np.zeros((4, 4))
_E30[3, 0] = 1.0


def classify(m, oracle_cfg=None) -> ClassificationReport:
    """Classify a qubit map (unital / TP / positive / CP / CcP / EB).

    Pauli maps use the closed-form parameter conditions.  General maps fall
    back on the Choi operator for CP / CcP / EB; positivity uses the exact
    translated-family conditions when the matrix has that shape and the
    numeric block-positivity oracle otherwise (the report records which).
    """
    atol = 1e-12
    e = np.asarray(m.matrix, dtype=float)
    unital = bool(np.allclose(e[:, 0], [1, 0, 0, 0], atol=atol))
    tp = bool(np.allclose(e[0, :], [1, 0, 0, 0], atol=atol))
    margins: dict = {}

    if isinstance(m, PauliMap) or (isinstance(m, GeneralQubitMap) and m.is_diagonal() and unital):
        lam = np.diag(e)
        q = lambda_to_q(lam)
        q_ccp = lambda_to_q(lam * np.array([1, 1, -1, 1]))
        positive = bool(lam[0] >= 0 and np.max(np.abs(lam[1:])) <= lam[0])
        cp = bool(q.min() >= 0)
        ccp = bool(q_ccp.min() >= 0)
        margins["positivity"] = float(min(lam[0], (lam[0] - np.abs(lam[1:])).min()))
        margins["cp"] = float(q.min())
        margins["ccp"] = float(q_ccp.min())
        margins["eb"] = float(min(q.min(), q_ccp.min()))
        return ClassificationReport(
            unital=unital,
            trace_preserving=tp,
            positive=positive,
            cp=cp,
            ccp=ccp,
            eb=cp and ccp,
            margins=margins,
            positivity_method="pauli-closed-form",
        )

    omega = choi(m)
    omega_eigs = hermitian_spectrum(omega)
    cp = psd_verdict(omega_eigs) == "psd"
    omega_ccp = choi(compose(PauliMap.transposition(), m))
    ccp_eigs = hermitian_spectrum(omega_ccp)
    ccp = psd_verdict(ccp_eigs) == "psd"
    pt_eigs = hermitian_spectrum(partial_transpose(omega, [1]))
    eb = cp and psd_verdict(pt_eigs) == "psd"
    margins["cp"] = float(omega_eigs[0])
    margins["ccp"] = float(ccp_eigs[0])
    margins["eb"] = float(min(omega_eigs[0], pt_eigs[0]))

    translated_family = (
        tp
        and np.allclose(e[1:3, 0], 0, atol=atol)
        and np.allclose(e - np.diag(np.diag(e)) - e[3, 0] * _E30, 0, atol=atol)
    )
    if translated_family:
        from .nonunital import NonUnitalFamilyMap, classify_nonunital_positive

        fam = NonUnitalFamilyMap(t=float(e[3, 0]), lam3=tuple(np.diag(e)[1:]))
        verdict = classify_nonunital_positive(fam)
        positive = verdict.satisfied
        margins["positivity"] = verdict.worst_slack
        method = "nonunital-closed-form"
    else:
        from .oracles import OracleConfig, block_positivity_min

        cfg = oracle_cfg if oracle_cfg is not None else OracleConfig(restarts=16)
        value = block_positivity_min(omega, cut=(0,), cfg=cfg)
        positive = value >= -1e-9
        margins["positivity"] = float(value)
        method = "numeric-block-positivity"

    return ClassificationReport(
        unital=unital,
        trace_preserving=tp,
        positive=positive,
        cp=cp,
        ccp=ccp,
        eb=eb,
        margins=margins,
        positivity_method=method,
    )


def map_to_json(m) -> str:
    """Serialize a diagonal-plus-translation qubit map to JSON.

    Schema: ``{"lambda": [...]}`` with an extra ``"t": [t1, t2, t3]`` entry
    for non-unital maps.
    """
    if isinstance(m, PauliMap):
        return json.dumps({"lambda": list(m.lam)}, sort_keys=True)
    e = np.asarray(m.matrix, dtype=float)
    off = e - np.diag(np.diag(e))
    off[1:, 0] = 0.0
    if np.abs(off).max() > 0 or e[0, 0] != 1.0:
        raise ValueError("JSON schema covers diagonal maps with a translation only")
    payload = {"lambda": [1.0, *np.diag(e)[1:].tolist()]}
    t = e[1:, 0]
    if np.any(t != 0):
        payload["t"] = t.tolist()
    return json.dumps(payload, sort_keys=True)


def map_from_json(text: str):
    """Inverse of :func:`map_to_json`; 3-component lambda implies l0 = 1."""
    data = json.loads(text)
    lam = [float(v) for v in data["lambda"]]
    if len(lam) == 3:
        lam = [1.0, *lam]
    if len(lam) != 4:
        raise ValueError("lambda must have three or four components")
    if "t" in data:
        t = data["t"]
        if np.isscalar(t):
            t = [0.0, 0.0, float(t)]
        t = [float(v) for v in t]
        if len(t) != 3:
            raise ValueError("t must have three components")
        if lam[0] != 1.0:
            raise ValueError("translated maps must have l0 = 1")
        return GeneralQubitMap.from_translation(t, lam[1:])
    return PauliMap(tuple(lam))

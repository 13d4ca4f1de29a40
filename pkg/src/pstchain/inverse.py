"""Spectrum to wire: mirror-symmetric weights and the unique reconstruction.

A persymmetric wire is determined by its spectrum alone.  The weights of
that unique wire are proportional to (-1)^(N+s) / prod_{k!=s}(l_s - l_k),
which is positive for every s because the alternating sign exactly cancels
the sign of the product over an increasing sequence.  Reconstruction then
runs the symmetric Lanczos process on the diagonal matrix of eigenvalues
with starting vector (sqrt(w_0), ..., sqrt(w_N)), i.e. a discrete
Stieltjes orthogonalization against the measure sum_s w_s delta_{l_s},
with full reorthogonalization at every step.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ReconstructionError, WeightInconsistencyError
from .jacobi import GAP_RTOL, MAX_SITES, JacobiMatrix, SpectralData, _readonly

# Lanczos residual norms at or below this fraction of the spectral scale
# mean the measure has effectively fewer support points than requested.
_BREAKDOWN_RTOL = 1e-12

# Offdiagonal asymmetry beyond this is a real failure, not round-off, and
# must not be averaged away.
_SYMMETRIZE_LIMIT = 1e-6


@dataclass(frozen=True)
class SpectrumRequest:
    """A prescribed simple spectrum for the inverse problem."""

    eigenvalues: np.ndarray

    def __post_init__(self):
        lam = _readonly(self.eigenvalues)
        if not 2 <= lam.size <= MAX_SITES:
            raise ValueError(
                f"spectrum size must be between 2 and {MAX_SITES}, got {lam.size}"
            )
        if not np.all(np.isfinite(lam)):
            raise ValueError("eigenvalues must be finite")
        scale = float(np.abs(lam).max())
        if not np.all(np.diff(lam) > GAP_RTOL * scale):
            raise ValueError(
                "eigenvalues must be strictly increasing with relative gaps "
                f"above {GAP_RTOL}"
            )
        object.__setattr__(self, "eigenvalues", lam)

    @property
    def n_sites(self) -> int:
        return int(self.eigenvalues.size)


def persymmetric_weights(req: SpectrumRequest) -> SpectralData:
    """Weights of the unique persymmetric wire with the requested spectrum.

    The products prod_{k!=s}(l_s - l_k) span a roughly factorial dynamic
    range, so they are accumulated in log space and exponentiated only
    after normalization.
    """
    lam = req.eigenvalues
    n = lam.size
    diffs = lam[:, None] - lam[None, :]
    np.fill_diagonal(diffs, 1.0)
    alt = np.where((np.arange(n) + n - 1) % 2 == 0, 1.0, -1.0)
    signs = alt * np.prod(np.sign(diffs), axis=1)
    if not np.all(signs > 0.0):
        bad = int(np.nonzero(signs <= 0.0)[0][0])
        raise WeightInconsistencyError(
            f"weight {bad} came out non-positive; the spectrum violates the "
            "gap tolerance"
        )
    logw = -np.sum(np.log(np.abs(diffs)), axis=1)
    logw -= logw.max()
    w = np.exp(logw)
    w /= w.sum()
    return SpectralData(eigenvalues=lam, weights=w)


def reconstruct_jacobi(sd: SpectralData) -> JacobiMatrix:
    """The Jacobi matrix whose spectral data equals ``sd``.

    Lanczos with full (double) reorthogonalization recovers the recurrence
    coefficients of the discrete measure; the exact answer for
    mirror-symmetric weights is persymmetric, so residual coupling
    asymmetry below ``1e-6`` is averaged away and anything larger raises
    :class:`ReconstructionError`.
    """
    lam = sd.eigenvalues
    n = lam.size
    scale = float(np.abs(lam).max())
    diag = np.zeros(n)
    off = np.zeros(n - 1)
    basis = np.zeros((n, n))
    q = np.sqrt(sd.weights)
    q /= np.linalg.norm(q)
    for k in range(n):
        basis[:, k] = q
        u = lam * q
        diag[k] = float(q @ u)
        u = u - diag[k] * q
        if k:
            u -= off[k - 1] * basis[:, k - 1]
        span = basis[:, : k + 1]
        for _ in range(2):
            u -= span @ (span.T @ u)
        if k < n - 1:
            norm = float(np.linalg.norm(u))
            if not norm > _BREAKDOWN_RTOL * scale:
                raise ReconstructionError(
                    f"orthogonalization broke down at step {k}: residual norm "
                    f"{norm:.3e} at scale {scale:.3e}",
                    step=k,
                )
            off[k] = norm
            q = u / norm
    asym = float(np.abs(off - off[::-1]).max())
    if asym >= _SYMMETRIZE_LIMIT * max(1.0, scale):
        raise ReconstructionError(
            f"reconstructed couplings are asymmetric by {asym:.3e}, beyond "
            "round-off for a persymmetric target"
        )
    off = 0.5 * (off + off[::-1])
    return JacobiMatrix(diag=diag, offdiag=off)


def surgery_spectrum(N: int) -> SpectrumRequest:
    """Unit-gap symmetric spectrum of size N+3 with the innermost pair removed.

    Returns {+-(2k+1)/2 : k = 1..(N+1)/2}, i.e. N+1 points.  N must be odd
    and at least 3.
    """
    if N < 3 or N % 2 == 0:
        raise ValueError("N must be an odd integer >= 3")
    upper = [(2 * k + 1) / 2 for k in range(1, (N + 1) // 2 + 1)]
    return SpectrumRequest([-v for v in reversed(upper)] + upper)

"""Value types and spectral kinematics of finite tridiagonal quantum wires.

A wire with N+1 sites is encoded as a real symmetric tridiagonal matrix
with strictly positive couplings.  The state that starts on site 0 evolves
as exp(-iJt) e_0, and every boundary observable used here is a function of
the eigenvalues together with the squared first components of the unit
eigenvectors (the spectral weights): the site-0 amplitude is
sum_s w_s exp(-i lambda_s t), and for mirror-symmetric (persymmetric)
wires the site-N amplitude is the same sum with alternating signs.

Eigenvalues are located by bisection on the Sturm sign count of the
shifted LDL^T pivots; eigenvectors are assembled from the three-term
recurrence of the associated orthonormal polynomials and normalized.  For
the supported sizes (at most ``MAX_SITES`` sites) and simple, well
separated spectra this gives weights close to working precision.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Literal

import numpy as np

from .errors import EigensolverError

# Weight hierarchies grow roughly factorially with size; 64-bit floats can
# absorb that (after normalization) only up to about 41 sites.
MAX_SITES = 41

# Computed gaps below this fraction of the spectral scale signal numerical
# trouble: couplings > 0 guarantee simple spectra in exact arithmetic.
GAP_RTOL = 1e-10

Site = Literal["first", "last"]

_UNITARITY_SLACK = 1e-9
_BISECT_MAX_ITER = 160


def _readonly(values, dtype=float) -> np.ndarray:
    arr = np.array(values, dtype=dtype)
    if arr.ndim != 1:
        raise ValueError("expected a one-dimensional sequence")
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True)
class JacobiMatrix:
    """Symmetric tridiagonal wire Hamiltonian.

    ``diag`` holds the site energies a_0..a_N and ``offdiag`` the couplings
    b_0..b_{N-1}.  Couplings must be strictly positive, which keeps the
    spectrum simple.
    """

    diag: np.ndarray
    offdiag: np.ndarray

    def __post_init__(self):
        diag = _readonly(self.diag)
        off = _readonly(self.offdiag)
        if not 2 <= diag.size <= MAX_SITES:
            raise ValueError(
                f"matrix order must be between 2 and {MAX_SITES}, got {diag.size}"
            )
        if off.size != diag.size - 1:
            raise ValueError("offdiag must be exactly one entry shorter than diag")
        if not (np.all(np.isfinite(diag)) and np.all(np.isfinite(off))):
            raise ValueError("matrix entries must be finite")
        if not np.all(off > 0.0):
            raise ValueError("all couplings must be strictly positive")
        object.__setattr__(self, "diag", diag)
        object.__setattr__(self, "offdiag", off)

    @property
    def n_sites(self) -> int:
        return int(self.diag.size)

    def to_dense(self) -> np.ndarray:
        """Dense (n_sites x n_sites) array, mainly for tests and debugging."""
        n = self.n_sites
        dense = np.zeros((n, n))
        idx = np.arange(n)
        dense[idx, idx] = self.diag
        dense[idx[:-1], idx[1:]] = self.offdiag
        dense[idx[1:], idx[:-1]] = self.offdiag
        return dense


@dataclass(frozen=True)
class SpectralData:
    """Simple ordered spectrum paired with positive first-component weights.

    ``weights[s]`` is the squared first component of the unit eigenvector
    for ``eigenvalues[s]``; the pair determines the wire uniquely.
    """

    eigenvalues: np.ndarray
    weights: np.ndarray

    def __post_init__(self):
        lam = _readonly(self.eigenvalues)
        w = _readonly(self.weights)
        if not 2 <= lam.size <= MAX_SITES:
            raise ValueError(
                f"spectrum size must be between 2 and {MAX_SITES}, got {lam.size}"
            )
        if w.size != lam.size:
            raise ValueError("eigenvalues and weights must have equal length")
        if not (np.all(np.isfinite(lam)) and np.all(np.isfinite(w))):
            raise ValueError("spectral data must be finite")
        scale = float(np.abs(lam).max())
        if not np.all(np.diff(lam) > GAP_RTOL * scale):
            raise ValueError(
                "eigenvalues must be strictly increasing with gaps above "
                f"{GAP_RTOL} of the spectral scale"
            )
        if not np.all((w > 0.0) & (w < 1.0)):
            raise ValueError("weights must lie strictly inside (0, 1)")
        if abs(float(w.sum()) - 1.0) > 1e-12:
            raise ValueError("weights must sum to 1 within 1e-12")
        object.__setattr__(self, "eigenvalues", lam)
        object.__setattr__(self, "weights", w)

    @property
    def n_sites(self) -> int:
        return int(self.eigenvalues.size)


@dataclass(frozen=True)
class PersymmetryReport:
    """Measured deviation from mirror symmetry about the antidiagonal."""

    is_persymmetric: bool
    max_diag_asymmetry: float
    max_offdiag_asymmetry: float
    tolerance: float


@dataclass(frozen=True)
class AmplitudeSeries:
    """Boundary amplitudes x_0(t) and x_N(t) sampled on a time grid."""

    times: np.ndarray
    x0: np.ndarray
    xN: np.ndarray

    def __post_init__(self):
        times = _readonly(self.times)
        x0 = _readonly(self.x0, dtype=complex)
        xN = _readonly(self.xN, dtype=complex)
        if times.size < 2 or x0.size != times.size or xN.size != times.size:
            raise ValueError("times, x0 and xN must share a length of at least 2")
        if not np.all(np.diff(times) > 0.0):
            raise ValueError("times must be strictly increasing")
        bound = 1.0 + _UNITARITY_SLACK
        if np.abs(x0).max() > bound or np.abs(xN).max() > bound:
            raise ValueError("amplitudes exceed the unitarity bound")
        if times[0] == 0.0 and abs(x0[0] - 1.0) > _UNITARITY_SLACK:
            raise ValueError("x0 must equal 1 at t = 0")
        object.__setattr__(self, "times", times)
        object.__setattr__(self, "x0", x0)
        object.__setattr__(self, "xN", xN)


def _sturm_counts(diag, off2, shifts, pivmin):
    """Number of eigenvalues strictly below each shift (vectorized)."""
    count = np.zeros(shifts.shape, dtype=np.int64)
    d = diag[0] - shifts
    small = np.abs(d) < pivmin
    if small.any():
        d = np.where(small, -pivmin, d)
    count += d < 0.0
    for i in range(1, diag.size):
        d = diag[i] - shifts - off2[i - 1] / d
        small = np.abs(d) < pivmin
        if small.any():
            d = np.where(small, -pivmin, d)
        count += d < 0.0
    return count


def _bisect_eigenvalues(diag: np.ndarray, off: np.ndarray) -> np.ndarray:
    """All eigenvalues of the tridiagonal matrix, in increasing order.

    Bisection on the Sturm count converges every interval down to the last
    representable bit, so the result is accurate to a few ulps of the
    spectral scale regardless of clustering.
    """
    n = diag.size
    off2 = off * off
    radius = np.zeros(n)
    radius[:-1] += np.abs(off)
    radius[1:] += np.abs(off)
    glo = float(np.min(diag - radius))
    ghi = float(np.max(diag + radius))
    if not (np.isfinite(glo) and np.isfinite(ghi)):
        raise EigensolverError("matrix entries produced non-finite bounds")
    pad = 1e-3 * max(ghi - glo, 1.0)
    lo = np.full(n, glo - pad)
    hi = np.full(n, ghi + pad)
    pivmin = np.finfo(float).tiny * max(1.0, float(off2.max()))
    want = np.arange(1, n + 1)
    for _ in range(_BISECT_MAX_ITER):
        mid = 0.5 * (lo + hi)
        active = (mid > lo) & (mid < hi)
        if not active.any():
            break
        counts = _sturm_counts(diag, off2, mid, pivmin)
        go_down = counts >= want
        hi = np.where(active & go_down, mid, hi)
        lo = np.where(active & ~go_down, mid, lo)
    return 0.5 * (lo + hi)


def _recurrence_vectors(diag, off, eigenvalues) -> np.ndarray:
    """Unnormalized eigenvector components p_k(lambda_s), rows k, columns s."""
    n = diag.size
    p = np.empty((n, n))
    p[0] = 1.0
    p[1] = (eigenvalues - diag[0]) / off[0]
    for k in range(1, n - 1):
        p[k + 1] = ((eigenvalues - diag[k]) * p[k] - off[k - 1] * p[k - 1]) / off[k]
    return p


def _shifted_solve(diag, off, shift, rhs):
    """Solve (T - shift I) x = rhs by LU with partial pivoting.

    The shifted matrix is close to singular by construction (shift is an
    eigenvalue), so vanishing pivots are nudged to the smallest safe value;
    the resulting huge solution components are exactly what inverse
    iteration wants.
    """
    n = diag.size
    dd = diag - shift
    dl = off.copy()
    du = off.copy()
    du2 = np.zeros(n)
    b = np.array(rhs, dtype=float)
    floor = np.finfo(float).eps * (
        float(np.abs(dd).max()) + 2.0 * float(np.abs(off).max())
    )
    floor = max(floor, np.finfo(float).tiny)
    tiny = np.finfo(float).tiny
    for i in range(n - 1):
        if abs(dd[i]) >= abs(dl[i]):
            if abs(dd[i]) < tiny:
                dd[i] = floor
            m = dl[i] / dd[i]
            dd[i + 1] -= m * du[i]
            b[i + 1] -= m * b[i]
        else:
            m = dd[i] / dl[i]
            dd[i] = dl[i]
            dd[i + 1], du[i] = du[i] - m * dd[i + 1], dd[i + 1]
            if i < n - 2:
                du2[i] = du[i + 1]
                du[i + 1] = -m * du[i + 1]
            b[i], b[i + 1] = b[i + 1], b[i] - m * b[i + 1]
    if abs(dd[n - 1]) < tiny:
        dd[n - 1] = floor
    x = np.empty(n)
    x[n - 1] = b[n - 1] / dd[n - 1]
    if n > 1:
        x[n - 2] = (b[n - 2] - du[n - 2] * x[n - 1]) / dd[n - 2]
    for i in range(n - 3, -1, -1):
        x[i] = (b[i] - du[i] * x[i + 1] - du2[i] * x[i + 2]) / dd[i]
    return x


def _tridiag_residual(diag, off, lam_s, v) -> float:
    r = (diag - lam_s) * v
    r[:-1] += off * v[1:]
    r[1:] += off * v[:-1]
    return float(np.abs(r).max())


def _eigensystem(J: JacobiMatrix) -> tuple[SpectralData, np.ndarray]:
    """Spectral data plus the full orthonormal eigenvector matrix."""
    lam = _bisect_eigenvalues(J.diag, J.offdiag)
    if not np.all(np.isfinite(lam)):
        bad = int(np.nonzero(~np.isfinite(lam))[0][0])
        raise EigensolverError(
            f"eigenvalue {bad} did not converge", index=bad
        )
    scale = float(np.abs(lam).max())
    gaps = np.diff(lam)
    tight = np.nonzero(gaps <= GAP_RTOL * scale)[0]
    if tight.size:
        bad = int(tight[0]) + 1
        raise EigensolverError(
            f"eigenvalue {bad} is numerically degenerate "
            f"(gap {gaps[tight[0]]:.3e} at scale {scale:.3e})",
            index=bad,
        )
    p = _recurrence_vectors(J.diag, J.offdiag, lam)
    norms = np.sqrt(np.sum(p * p, axis=0))
    vectors = p / norms
    # The recurrence seed is already exact for extended eigenvectors; for
    # localized ones it loses accuracy, so polish by inverse iteration
    # until the eigenpair residual sits at working precision.
    target = 1e-13 * max(scale, np.finfo(float).tiny)
    for s in range(lam.size):
        v = vectors[:, s]
        for _ in range(3):
            if _tridiag_residual(J.diag, J.offdiag, lam[s], v) <= target:
                break
            x = _shifted_solve(J.diag, J.offdiag, lam[s], v)
            v = x / np.linalg.norm(x)
        vectors[:, s] = v
    weights = vectors[0] ** 2
    weights = weights / weights.sum()
    return SpectralData(eigenvalues=lam, weights=weights), vectors


def eigendecompose(J: JacobiMatrix) -> SpectralData:
    """Eigenvalues (increasing) and first-component weights of the wire.

    Weights are renormalized to sum to exactly 1; couplings > 0 guarantee
    the spectrum is simple, and a computed gap below the simplicity
    tolerance raises :class:`EigensolverError` with the offending index.
    """
    sd, _ = _eigensystem(J)
    return sd


def check_persymmetry(J: JacobiMatrix, tol: float = 1e-12) -> PersymmetryReport:
    """Measure the deviation of J from symmetry about its antidiagonal."""
    if not tol > 0.0:
        raise ValueError("tolerance must be positive")
    diag_asym = float(np.abs(J.diag - J.diag[::-1]).max())
    off_asym = float(np.abs(J.offdiag - J.offdiag[::-1]).max())
    return PersymmetryReport(
        is_persymmetric=bool(diag_asym <= tol and off_asym <= tol),
        max_diag_asymmetry=diag_asym,
        max_offdiag_asymmetry=off_asym,
        tolerance=float(tol),
    )


def _boundary_coefficients(sd: SpectralData, site: Site) -> np.ndarray:
    if site == "first":
        return sd.weights
    if site == "last":
        # Valid for persymmetric wires only: the last eigenvector component
        # equals (-1)^(N+s) times the first one.
        s = np.arange(sd.n_sites)
        signs = np.where((sd.n_sites - 1 + s) % 2 == 0, 1.0, -1.0)
        return signs * sd.weights
    raise ValueError("site must be 'first' or 'last'")


def amplitude_values(sd: SpectralData, times, site: Site = "first") -> np.ndarray:
    """Boundary amplitude at every entry of ``times`` (vectorized)."""
    t = np.atleast_1d(np.asarray(times, dtype=float))
    coeff = _boundary_coefficients(sd, site)
    phases = np.exp(-1j * t[:, None] * sd.eigenvalues[None, :])
    return phases @ coeff


def amplitude(sd: SpectralData, site: Site, t: float) -> complex:
    """Exact boundary amplitude from spectral data.

    site "first" returns sum_s w_s exp(-i lambda_s t); site "last" returns
    the alternating-sign sum, which equals x_N(t) when the spectral data
    comes from a persymmetric wire.
    """
    return complex(amplitude_values(sd, [float(t)], site)[0])


def amplitude_series(
    sd: SpectralData, t0: float, t1: float, steps: int
) -> AmplitudeSeries:
    """Sample both boundary amplitudes on a uniform grid over [t0, t1]."""
    if not t0 < t1:
        raise ValueError("need t0 < t1")
    if steps < 2:
        raise ValueError("need steps >= 2")
    times = np.linspace(float(t0), float(t1), int(steps))
    return AmplitudeSeries(
        times=times,
        x0=amplitude_values(sd, times, "first"),
        xN=amplitude_values(sd, times, "last"),
    )


def full_evolution_column(J: JacobiMatrix, t: float) -> np.ndarray:
    """All components of exp(-iJt) e_0 via the full eigendecomposition."""
    sd, vectors = _eigensystem(J)
    phases = np.exp(-1j * sd.eigenvalues * float(t))
    return vectors @ (phases * vectors[0])

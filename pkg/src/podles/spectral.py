"""Truncated numeric model of the spinor Hilbert space over the quantum
sphere: the representations pi_+-, the approximants z_i, the Dirac operator,
grading, real structure and the eigenspinor transform W, with verification
of the spectrum, the representation relations and the decay rates that make
the real-structure axioms hold up to infinitesimals.

Spinors |j,m>_+- are indexed by j in 1/2, 3/2, ..., Jmax, -j <= m <= j and a
chirality.  Operators are dense numpy matrices on this finite basis wrapped
in BlockOperator; every assertion is restricted to interior blocks
j <= Jmax - margin where truncation cannot interfere.
"""

import csv
import io
import math
from fractions import Fraction

import numpy as np

from .report import Report
from .scalars import DomainError, HalfInt, eval_at, nu as nu_exact, q_pow, \
    qnum

NOISE_FLOOR = 1e-13
CHIRALITIES = ("+", "-")


class EmptyFit(ValueError):
    """Fewer than four usable points for a decay fit."""


class MissingStructureConstants(RuntimeError):
    pass


# ---------------------------------------------------------------------------
# configuration and index space

class SpectralConfig:
    """q in (0, 1), the truncation 2*Jmax (odd), a tolerance and the number
    of outermost j-blocks excluded from assertions."""

    def __init__(self, q, twoJmax=41, tol=1e-9, interior_margin=2):
        q = float(q)
        if not 0.0 < q < 1.0:
            raise DomainError(f"q must lie in (0, 1), got {q}")
        twoJmax = int(twoJmax)
        if twoJmax < 1 or twoJmax % 2 != 1:
            raise DomainError(f"2*Jmax must be a positive odd integer, got "
                              f"{twoJmax}")
        self.q = q
        self.twoJmax = twoJmax
        self.tol = float(tol)
        self.interior_margin = int(interior_margin)

    @classmethod
    def from_jmax(cls, q, jmax, **kw):
        two = Fraction(str(jmax)) * 2
        if two.denominator != 1:
            raise DomainError(f"jmax must be a half-odd integer, got {jmax}")
        return cls(q, int(two), **kw)

    @property
    def jmax(self):
        return self.twoJmax / 2

    def is_interior(self, j):
        return j <= self.jmax - self.interior_margin

    def to_dict(self):
        return {"q": self.q, "jmax": self.jmax, "tol": self.tol,
                "interior_margin": self.interior_margin}

    def __repr__(self):
        return (f"SpectralConfig(q={self.q}, jmax={self.jmax}, "
                f"tol={self.tol})")


class SpinorIndex:
    __slots__ = ("twoJ", "mIdx", "chirality")

    def __init__(self, twoJ, mIdx, chirality):
        if twoJ < 1 or twoJ % 2 != 1:
            raise DomainError(f"2j must be odd and positive, got {twoJ}")
        if not 0 <= mIdx <= twoJ:
            raise DomainError(f"m index {mIdx} outside [0, {twoJ}]")
        if chirality not in CHIRALITIES:
            raise DomainError(f"chirality must be + or -, got {chirality}")
        self.twoJ = twoJ
        self.mIdx = mIdx
        self.chirality = chirality

    @property
    def j(self):
        return self.twoJ / 2

    @property
    def m(self):
        return self.mIdx - self.twoJ / 2

    def key(self):
        return (self.twoJ, self.mIdx, self.chirality)

    def __eq__(self, other):
        return isinstance(other, SpinorIndex) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return f"|{self.j},{self.m}>{self.chirality}"


class SpinorSpace:
    """Ordered basis of the truncated spinor space.  Within a j-block the
    order is m ascending, chirality + before -."""

    def __init__(self, twoJmax):
        self.twoJmax = twoJmax
        self.indices = []
        self.offsets = {}
        for twoJ in range(1, twoJmax + 1, 2):
            self.offsets[twoJ] = len(self.indices)
            for mIdx in range(twoJ + 1):
                for ch in CHIRALITIES:
                    self.indices.append(SpinorIndex(twoJ, mIdx, ch))
        self.dim = len(self.indices)
        self._pos = {ix.key(): n for n, ix in enumerate(self.indices)}
        self.j = np.array([ix.j for ix in self.indices])
        self.m = np.array([ix.m for ix in self.indices])
        self.sign = np.array([1.0 if ix.chirality == "+" else -1.0
                              for ix in self.indices])

    def position(self, j, m, chirality):
        """Row of |j,m>_chirality, or None outside the truncation."""
        twoJ = round(2 * j)
        mIdx = round(m + j)
        return self._pos.get((twoJ, mIdx, chirality))

    def block_slice(self, twoJ):
        start = self.offsets[twoJ]
        return slice(start, start + 2 * (twoJ + 1))

    def twoJs(self):
        return list(self.offsets)

    def interior_mask(self, config):
        return self.j <= config.jmax - config.interior_margin


_SPACES = {}


def spinor_space(twoJmax):
    if twoJmax not in _SPACES:
        _SPACES[twoJmax] = SpinorSpace(twoJmax)
    return _SPACES[twoJmax]


# ---------------------------------------------------------------------------
# block operators

class BlockOperator:
    """Operator on a SpinorSpace.  Stored densely; `blocks` exposes the
    nonzero (2j_out, 2j_in) blocks and `bandwidth` the largest |j_out - j_in|
    among them."""

    def __init__(self, space, matrix):
        matrix = np.asarray(matrix)
        if matrix.shape != (space.dim, space.dim):
            raise ValueError(f"shape {matrix.shape} does not match the "
                             f"space dimension {space.dim}")
        self.space = space
        self.matrix = matrix

    @property
    def blocks(self):
        out = {}
        sp = self.space
        for to in sp.twoJs():
            rs = sp.block_slice(to)
            for ti in sp.twoJs():
                blk = self.matrix[rs, sp.block_slice(ti)]
                if np.any(blk):
                    out[(to, ti)] = blk
        return out

    def block(self, twoJ_out, twoJ_in):
        sp = self.space
        return self.matrix[sp.block_slice(twoJ_out), sp.block_slice(twoJ_in)]

    @property
    def bandwidth(self):
        keys = self.blocks
        if not keys:
            return 0
        return max(abs(a - b) for a, b in keys) // 2

    def adjoint(self):
        return BlockOperator(self.space, self.matrix.conj().T)

    def _wrap(self, m):
        return BlockOperator(self.space, m)

    def __matmul__(self, other):
        return self._wrap(self.matrix @ other.matrix)

    def __add__(self, other):
        return self._wrap(self.matrix + other.matrix)

    def __sub__(self, other):
        return self._wrap(self.matrix - other.matrix)

    def __neg__(self):
        return self._wrap(-self.matrix)

    def __mul__(self, c):
        return self._wrap(self.matrix * c)

    __rmul__ = __mul__

    def commutator(self, other):
        return self @ other - other @ self

    def anticommutator(self, other):
        return self @ other + other @ self

    def chirality_parts(self):
        """(chirality preserving part, chirality flipping part)."""
        same = np.equal.outer(self.space.sign, self.space.sign)
        return (self._wrap(np.where(same, self.matrix, 0)),
                self._wrap(np.where(same, 0, self.matrix)))

    def interior_max(self, config):
        """Largest absolute entry with both indices interior."""
        mask = self.space.interior_mask(config)
        sub = self.matrix[np.ix_(mask, mask)]
        return float(np.abs(sub).max()) if sub.size else 0.0

    def shift_component(self, dj):
        """The part mapping j to j + dj."""
        sp = self.space
        out = np.zeros_like(self.matrix)
        for ti in sp.twoJs():
            to = ti + 2 * dj
            if to in sp.offsets:
                rs, cs = sp.block_slice(to), sp.block_slice(ti)
                out[rs, cs] = self.matrix[rs, cs]
        return self._wrap(out)

    @classmethod
    def identity(cls, space):
        return cls(space, np.eye(space.dim))


class AntiUnitary:
    """J = M o (complex conjugation) with M a real signed permutation."""

    def __init__(self, space, matrix):
        self.space = space
        self.matrix = np.asarray(matrix, dtype=float)

    def apply(self, v):
        return self.matrix @ np.conj(v)

    def conjugate(self, op):
        """J op J^-1 = M conj(op) M^T."""
        return BlockOperator(self.space,
                             self.matrix @ np.conj(op.matrix) @ self.matrix.T)

    def square(self):
        """J^2 = M conj(M) = M^2 as a linear operator."""
        return BlockOperator(self.space, self.matrix @ self.matrix)


# ---------------------------------------------------------------------------
# coefficients

def _qn(x, q):
    return (q ** x - q ** -x) / (q - 1 / q)


def _sqrt0(x):
    return math.sqrt(x) if x > 0 else 0.0


BETA_VARIANTS = ("outer", "inner")
ALPHA_VARIANTS = ("full", "cancelled")


def alpha_N(j, N, q, variant="full"):
    """alpha_N(j) = ([2][j+N][j-N] / ([2j+1][2j]))^(1/2) q^N.  The
    'cancelled' variant drops the [2j+1][2j] factor."""
    val = _qn(2, q) * _qn(j + N, q) * _qn(j - N, q)
    if variant == "full":
        val /= _qn(2 * j + 1, q) * _qn(2 * j, q)
    elif variant != "cancelled":
        raise ValueError(f"unknown alpha variant {variant}")
    return _sqrt0(val) * q ** N


def beta_N(j, N, q, variant="outer"):
    """beta_N(j) = q^-1 [2j+2]^-1 (eps q^-eps - nu ([j][j+1] - [1/2][3/2]))
    with eps the sign of N (0 for N = 0).  The 'inner' variant closes the
    bracket after eps q^-eps - nu, a negative control."""
    eps = (N > 0) - (N < 0)
    nu = q - 1 / q
    cas = _qn(j, q) * _qn(j + 1, q) - _qn(0.5, q) * _qn(1.5, q)
    pre = 1 / (q * _qn(2 * j + 2, q))
    if variant == "outer":
        return pre * (eps * q ** -eps - nu * cas)
    if variant == "inner":
        return pre * (eps * q ** -eps - nu) * cas
    raise ValueError(f"unknown beta variant {variant}")


def _check_jm(j, m):
    tj, tm = 2 * j, 2 * m
    if abs(tj - round(tj)) > 1e-12 or round(tj) % 2 != 1 or tj < 0:
        raise DomainError(f"j must be a positive half-odd integer, got {j}")
    if abs(tm - round(tm)) > 1e-12 or round(tj - tm) % 2 != 0:
        raise DomainError(f"m = {m} is not compatible with j = {j}")
    if abs(m) > j:
        raise DomainError(f"|m| > j for j = {j}, m = {m}")


def alpha_coeffs(i, j, m, N, q, beta="outer", alpha="full"):
    """{nu: alpha^nu_i(j, m; N)} for nu in (1, 0, -1)."""
    j, m = float(j), float(m)
    _check_jm(j, m)
    qn = lambda x: _qn(x, q)       # noqa: E731
    A = lambda jj: alpha_N(jj, N, q, alpha)      # noqa: E731
    B = beta_N(j, N, q, beta)
    low = j > 0.5
    if i == 1:
        p = q ** (-j + m) * _sqrt0(qn(j + m + 1) * qn(j + m + 2)
                                   / (qn(2 * j + 1) * qn(2 * j + 2))) * A(j + 1)
        z = -q ** (m + 2) * _sqrt0(qn(2) * qn(j - m) * qn(j + m + 1)) \
            / qn(2 * j) * B
        mm = (-q ** (j + m + 1) * _sqrt0(qn(j - m - 1) * qn(j - m)
                                         / (qn(2 * j - 1) * qn(2 * j)))
              * A(j)) if low else 0.0
    elif i == 0:
        p = q ** m * _sqrt0(qn(2) * qn(j - m + 1) * qn(j + m + 1)
                            / (qn(2 * j + 1) * qn(2 * j + 2))) * A(j + 1)
        z = (qn(j - m + 1) * qn(j + m) - q ** 2 * qn(j - m) * qn(j + m + 1)) \
            / qn(2 * j) * B
        mm = (q ** m * _sqrt0(qn(2) * qn(j - m) * qn(j + m)
                              / (qn(2 * j - 1) * qn(2 * j)))
              * A(j)) if low else 0.0
    elif i == -1:
        p = q ** (j + m) * _sqrt0(qn(j - m + 1) * qn(j - m + 2)
                                  / (qn(2 * j + 1) * qn(2 * j + 2))) * A(j + 1)
        z = q ** m * _sqrt0(qn(2) * qn(j - m + 1) * qn(j + m)) \
            / qn(2 * j) * B
        mm = (-q ** (-j + m - 1) * _sqrt0(qn(j + m - 1) * qn(j + m)
                                          / (qn(2 * j - 1) * qn(2 * j)))
              * A(j)) if low else 0.0
    else:
        raise DomainError(f"i must be -1, 0 or 1, got {i}")
    out = {1: p, 0: z, -1: mm}
    if N == 0:
        for nv in (-1, 0, 1):
            if abs(m + i) > j + nv:
                out[nv] = 0.0
    return out


def alpha_coeff(i, nu, j, m, N, q, beta="outer", alpha="full"):
    """The single coefficient alpha^nu_i(j, m; N)."""
    if nu not in (-1, 0, 1):
        raise DomainError(f"nu must be -1, 0 or 1, got {nu}")
    return alpha_coeffs(i, j, m, N, q, beta, alpha)[nu]


# ---------------------------------------------------------------------------
# operators

def _build_rep(config, N_plus, N_minus, i, beta="outer", alpha="full"):
    sp = spinor_space(config.twoJmax)
    M = np.zeros((sp.dim, sp.dim))
    leak = 0.0
    for col, ix in enumerate(sp.indices):
        N = N_plus if ix.chirality == "+" else N_minus
        for nv, v in alpha_coeffs(i, ix.j, ix.m, N, config.q, beta,
                                  alpha).items():
            row = sp.position(ix.j + nv, ix.m + i, ix.chirality)
            if row is not None:
                M[row, col] += v
            elif abs(ix.m + i) > ix.j + nv or ix.j + nv < 0.5:
                leak = max(leak, abs(v))
    op = BlockOperator(sp, M)
    op.selection_leak = leak
    return op


def build_pi(config, N, i, beta="outer", alpha="full"):
    """pi_N(x_i) on both chiralities (the same N on each)."""
    return _build_rep(config, N, N, i, beta, alpha)


def build_x(config, i, beta="outer", alpha="full"):
    """pi(x_i): pi_+ on chirality + and pi_- on chirality -."""
    return _build_rep(config, 0.5, -0.5, i, beta, alpha)


def build_z(config, i):
    return _build_rep(config, 0, 0, i)


def _dirac_entries(config, j):
    q = config.q
    nu = q - 1 / q
    return nu ** 2 / q * _qn(j, q) * _qn(j + 1, q), _qn(j + 0.5, q)


def build_dirac(config, part="full"):
    """D|j,m>_+- = +-q^-1 nu^2 [j][j+1] |j,m>_+- + [j+1/2] |j,m>_-+.
    part='delta' keeps the first term, part='omega' the second."""
    sp = spinor_space(config.twoJmax)
    M = np.zeros((sp.dim, sp.dim))
    for col, ix in enumerate(sp.indices):
        diag, flip = _dirac_entries(config, ix.j)
        other = "-" if ix.chirality == "+" else "+"
        if part in ("full", "delta"):
            M[col, col] = (1 if ix.chirality == "+" else -1) * diag
        if part in ("full", "omega"):
            M[sp.position(ix.j, ix.m, other), col] = flip
    if part not in ("full", "delta", "omega"):
        raise ValueError(part)
    return BlockOperator(sp, M)


def mu_closed(config, j):
    """mu_j = (q^-2 nu^4 [j]^2 [j+1]^2 + [j+1/2]^2)^(1/2)."""
    diag, flip = _dirac_entries(config, j)
    return math.hypot(diag, flip)


def zeta_pair(config, j):
    diag, _ = _dirac_entries(config, j)
    mu = mu_closed(config, j)
    return math.sqrt(mu + diag), math.sqrt(max(mu - diag, 0.0))


def W_block(config, j):
    """W_j = (2 mu_j)^(-1/2) [[-z+, -z-], [-z-, z+]] on (|j,m>_+, |j,m>_-);
    row 0 is the up eigenspinor, row 1 the down one."""
    zp, zm = zeta_pair(config, j)
    return np.array([[-zp, -zm], [-zm, zp]]) / math.sqrt(
        2 * mu_closed(config, j))


def build_W(config):
    sp = spinor_space(config.twoJmax)
    M = np.zeros((sp.dim, sp.dim))
    for twoJ in sp.twoJs():
        Wj = W_block(config, twoJ / 2)
        s = sp.offsets[twoJ]
        for mIdx in range(twoJ + 1):
            k = s + 2 * mIdx
            M[k:k + 2, k:k + 2] = Wj
    return BlockOperator(sp, M)


def _eigen_J(sp):
    """J on the eigenbasis: |j,m;s> -> (-1)^(m+1/2) |j,-m;s>; the
    chirality slot of the index plays the role of up/down."""
    M = np.zeros((sp.dim, sp.dim))
    for col, ix in enumerate(sp.indices):
        row = sp.position(ix.j, -ix.m, ix.chirality)
        M[row, col] = (-1) ** round(ix.m + 0.5)
    return M


GAMMA_VARIANTS = ("phase", "swap")


def _eigen_gamma(sp, variant):
    M = np.zeros((sp.dim, sp.dim), dtype=complex)
    for col, ix in enumerate(sp.indices):
        other = "-" if ix.chirality == "+" else "+"
        row = sp.position(ix.j, ix.m, other)
        if variant == "swap":
            M[row, col] = 1
        elif variant == "phase":
            # up -> i down, down -> -i up
            M[row, col] = 1j if ix.chirality == "+" else -1j
        else:
            raise ValueError(variant)
    return M


def build_J(config):
    sp = spinor_space(config.twoJmax)
    W = build_W(config).matrix
    return AntiUnitary(sp, W.T @ _eigen_J(sp) @ W)


def build_gamma(config, variant="phase"):
    """Grading exchanging the up and down eigenspinors.  The default uses
    the phases up -> i down, down -> -i up, which anticommute with the
    antilinear J; 'swap' is the plain real exchange."""
    sp = spinor_space(config.twoJmax)
    W = build_W(config).matrix
    return BlockOperator(sp, W.T @ _eigen_gamma(sp, variant) @ W)


def build_Lq(config):
    sp = spinor_space(config.twoJmax)
    return BlockOperator(sp, np.diag(config.q ** sp.j))


# ---------------------------------------------------------------------------
# block norms and decay fits

def block_norms(op, config=None):
    """Per-j spectral norms of the compression of `op` to the columns and
    rows with index j (the larger of the two), interior j only when a
    config is given."""
    sp = op.space
    out = []
    for twoJ in sp.twoJs():
        j = twoJ / 2
        if config is not None and not config.is_interior(j):
            continue
        s = sp.block_slice(twoJ)
        cols = op.matrix[:, s]
        rows = op.matrix[s, :]
        n = max(np.linalg.norm(cols, 2), np.linalg.norm(rows, 2))
        out.append((j, float(n)))
    return out


class DecayReport:
    def __init__(self, name, per_block_norms, fitted_slope, target_slope):
        self.name = name
        self.per_block_norms = list(per_block_norms)
        self.fitted_slope = fitted_slope
        self.target_slope = target_slope
        self.rel_slope_error = abs(fitted_slope - target_slope) / abs(
            target_slope) if target_slope else abs(fitted_slope)

    @property
    def rate_ratio(self):
        """Fitted slope in units of the target (1 means exactly on rate)."""
        return self.fitted_slope / self.target_slope if self.target_slope \
            else float("nan")

    def within(self, rel=0.1):
        return self.rel_slope_error <= rel

    def to_dict(self):
        return {"name": self.name, "fitted_slope": self.fitted_slope,
                "target_slope": self.target_slope,
                "rel_slope_error": self.rel_slope_error,
                "rate_ratio": self.rate_ratio,
                "per_block_norms": self.per_block_norms}


def fit_decay(seq, target, name=""):
    """Least-squares slope of log(norm) against j, ignoring norms below the
    noise floor."""
    pts = [(j, math.log(v)) for j, v in seq if v > NOISE_FLOOR]
    if len(pts) < 4:
        raise EmptyFit(f"{name}: only {len(pts)} points above the noise "
                       "floor")
    x = np.array([p[0] for p in pts])
    y = np.array([p[1] for p in pts])
    slope = float(np.polyfit(x, y, 1)[0])
    return DecayReport(name, seq, slope, target)


def _decay_check(rep, id_, desc, seq, target):
    try:
        dr = fit_decay(seq, target, id_)
    except EmptyFit as exc:
        rep.add(id_, desc, False, witness=str(exc))
        return None
    rep.add(id_, desc, dr.within(0.1), residual=dr.rel_slope_error,
            witness=None if dr.within(0.1) else
            f"slope {dr.fitted_slope:.4f} = {dr.rate_ratio:.3f} x target")
    rep.extras.setdefault("decay", {})[id_] = dr.to_dict()
    return dr


# ---------------------------------------------------------------------------
# verification suites

IDX = (-1, 0, 1)


def _rel_err(a, b):
    return abs(a - b) / max(abs(b), 1e-300)


def verify_spectrum(config):
    rep = Report("spectral.spectrum", config.to_dict())
    sp = spinor_space(config.twoJmax)
    D = build_dirac(config)
    tol = config.tol
    # self-adjointness and +- symmetry
    rep.numeric("dirac.symmetric", "D is real symmetric",
                float(np.abs(D.matrix - D.matrix.T).max()), 0.0)
    worst_eig = worst_mult = worst_sq = 0.0
    mult_ok = True
    for twoJ in sp.twoJs():
        j = twoJ / 2
        if not config.is_interior(j):
            continue
        blk = D.block(twoJ, twoJ)
        ev = np.linalg.eigvalsh(blk)
        mu = mu_closed(config, j)
        pos, neg = ev[ev > 0], ev[ev < 0]
        if len(pos) != twoJ + 1 or len(neg) != twoJ + 1:
            mult_ok = False
            continue
        worst_eig = max(worst_eig, np.abs(pos - mu).max() / mu,
                        np.abs(neg + mu).max() / mu)
        worst_mult = max(worst_mult, _rel_err(np.sort(-neg)[0], pos[0]))
        # D^2 against the Casimir form
        c = _qn(j + 0.5, config.q) ** 2 - 0.25
        nu = config.q - 1 / config.q
        val = nu ** 4 / config.q ** 2 * (c + 0.25 - _qn(0.5, config.q) ** 2) \
            ** 2 + (c + 0.25)
        sq = blk @ blk
        worst_sq = max(worst_sq,
                       np.abs(sq - val * np.eye(len(sq))).max() / val)
    rep.add("spectrum.multiplicity", "each interior j contributes +mu_j and "
            "-mu_j with multiplicity 2j+1 each", mult_ok)
    rep.numeric("spectrum.eigenvalues", "eigensolver eigenvalues match "
                "+-(q^-2 nu^4 [j]^2 [j+1]^2 + [j+1/2]^2)^(1/2) (relative)",
                worst_eig, tol)
    rep.numeric("spectrum.symmetric", "spectrum symmetric about 0",
                worst_mult, tol)
    rep.numeric("spectrum.D2", "D^2 = q^-2 nu^4 (c_j + 1/4 - [1/2]^2)^2 + "
                "(c_j + 1/4) blockwise, c_j = [j+1/2]^2 - 1/4 (relative)",
                worst_sq, tol)
    # the closed form evaluated through exact scalars as an oracle
    j = HalfInt(1)
    exact_mu2 = (q_pow(-2) * nu_exact() ** 4 * (qnum(j) * qnum(j + 1)) ** 2
                 + qnum(j + HalfInt(1)) ** 2)
    mu_half = math.sqrt(eval_at(exact_mu2, config.q))
    rep.numeric("spectrum.mu_half.exact", "mu_1/2 from exact q-numbers "
                "matches the eigensolver (relative)",
                _rel_err(np.linalg.eigvalsh(D.block(1, 1)).max(), mu_half),
                tol)
    # analytic diagonalisation
    W = build_W(config)
    mask = sp.interior_mask(config)
    WWt = W.matrix @ W.matrix.T
    rep.numeric("W.orthogonal", "W W^T = 1", float(np.abs(
        WWt - np.eye(sp.dim)).max()), 1e-12)
    diag = W.matrix @ D.matrix @ W.matrix.T
    want = np.array([(1 if ix.chirality == "+" else -1)
                     * mu_closed(config, ix.j) for ix in sp.indices])
    scale = np.abs(want)[:, None]
    resid = np.abs(diag - np.diag(want)) / np.maximum(scale, scale.T)
    rep.numeric("W.diagonalises", "W D W^T = diag(+-mu_j) (relative)",
                float(resid[np.ix_(mask, mask)].max()), tol)
    # eigenvalue growth
    top = max(t for t in sp.twoJs() if config.is_interior(t / 2)) / 2
    mu_ratio = mu_closed(config, top) / mu_closed(config, top - 1)
    gamma_ratio = _qn(top + 0.5, config.q) / _qn(top - 0.5, config.q)
    rep.extras["growth"] = {"j": top, "mu_ratio": mu_ratio,
                            "gamma_ratio": gamma_ratio,
                            "q^-2": config.q ** -2, "q^-1": 1 / config.q}
    if config.q <= 0.5:
        rep.numeric("growth.mu", f"mu_j / mu_(j-1) within 5% of q^-2 at "
                    f"j = {top}", _rel_err(mu_ratio, config.q ** -2), 0.05)
        rep.numeric("growth.gamma", f"gamma_j / gamma_(j-1) within 5% of "
                    f"q^-1 at j = {top}",
                    _rel_err(gamma_ratio, 1 / config.q), 0.05)
    else:
        rep.skip("growth.mu", "mu_j growth ratio", "only asserted for q <= 0.5")
        rep.skip("growth.gamma", "gamma_j growth ratio",
                 "only asserted for q <= 0.5")
    # equivariance: D commutes with j-block operators acting alike on
    # both chiralities
    rng = np.random.default_rng(0)
    R = np.zeros((sp.dim, sp.dim))
    for twoJ in sp.twoJs():
        s = sp.offsets[twoJ]
        r = rng.standard_normal((twoJ + 1, twoJ + 1))
        R[s:s + 2 * (twoJ + 1), s:s + 2 * (twoJ + 1)] = np.kron(r, np.eye(2))
    C = D.matrix @ R - R @ D.matrix
    rep.numeric("dirac.equivariant", "D commutes with operators block "
                "diagonal in j acting identically on both chiralities "
                "(relative)", float(np.abs(C).max()
                                    / np.abs(D.matrix).max()), 1e-12)
    return rep.finish()


def _relation_residuals(config, X):
    I = BlockOperator.identity(X[0].space)
    x1, x0, xm = X[1], X[0], X[-1]
    q = config.q
    mu = q + 1 / q
    rels = {
        "rel1": ("x_-1 (x_0 - 1) = q^2 (x_0 - 1) x_-1",
                 xm @ (x0 - I) - q ** 2 * ((x0 - I) @ xm)),
        "rel2": ("x_1 (x_0 - 1) = q^-2 (x_0 - 1) x_1",
                 x1 @ (x0 - I) - q ** -2 * ((x0 - I) @ x1)),
        "rel3": ("(q^2 x_0 + 1)(x_0 - 1) = mu x_-1 x_1",
                 (q ** 2 * x0 + I) @ (x0 - I) - mu * (xm @ x1)),
        "rel4": ("(q^-2 x_0 + 1)(x_0 - 1) = mu x_1 x_-1",
                 (q ** -2 * x0 + I) @ (x0 - I) - mu * (x1 @ xm)),
    }
    return {k: (d, r.interior_max(config)) for k, (d, r) in rels.items()}


def verify_pi_relations(config, beta="outer", alpha="full", controls=True):
    rep = Report("spectral.relations", dict(config.to_dict(), beta=beta,
                                            alpha=alpha))
    X = {i: build_x(config, i, beta, alpha) for i in IDX}
    for k, (d, r) in _relation_residuals(config, X).items():
        rep.numeric(f"pi.{k}", d + " on interior blocks", r, config.tol)
    rep.numeric("pi.x0_selfadjoint", "pi(x_0) is self-adjoint",
                float(np.abs(X[0].matrix - X[0].matrix.T).max()), config.tol)
    rep.numeric("pi.x1_adjoint", "pi(x_1)^* = -q pi(x_-1)",
                float(np.abs(X[1].matrix.T + config.q * X[-1].matrix).max()),
                config.tol)
    leak = max(X[i].selection_leak for i in IDX)
    rep.numeric("pi.selection", "coefficients towards |j+nu, m+i> with "
                "|m+i| > j+nu vanish", leak, config.tol)
    bw = max(X[i].bandwidth for i in IDX)
    rep.add("pi.bandwidth", "pi(x_i) maps j into j-1, j, j+1",
            bw == 1, witness=None if bw == 1 else f"bandwidth {bw}")
    # each chirality separately
    for N, ch in ((0.5, "+"), (-0.5, "-")):
        P = {i: build_pi(config, N, i, beta, alpha) for i in IDX}
        worst = max(r for _, r in _relation_residuals(config, P).values())
        rep.numeric(f"pi_{ch}.relations", f"all four relations for "
                    f"pi_N with N = {N} alone", worst, config.tol)
    if controls:
        for b, a, label in (("inner", "full", "beta_inner"),
                            ("outer", "cancelled", "alpha_cancelled")):
            Xb = {i: build_x(config, i, b, a) for i in IDX}
            worst = max(r for _, r in _relation_residuals(config,
                                                          Xb).values())
            rep.add(f"control.{label}", f"mutated coefficients ({label}) "
                    "violate the relations (negative control)",
                    worst > config.tol, residual=worst)
    return rep.finish()


def _w_norms(config):
    out = []
    sp = spinor_space(config.twoJmax)
    for twoJ in sp.twoJs():
        j = twoJ / 2
        if not config.is_interior(j):
            continue
        M = W_block(config, j) @ W_block(config, j + 1).T - np.eye(2)
        out.append((j, float(np.linalg.norm(M, 2))))
    return out


def verify_real_structure(config, gamma="phase"):
    rep = Report("spectral.real", config.to_dict())
    sp = spinor_space(config.twoJmax)
    tol12 = 1e-12
    q = config.q
    logq = math.log(q)
    D = build_dirac(config)
    J = build_J(config)
    G = build_gamma(config, gamma)
    M = J.matrix
    scale = np.abs(D.matrix).max()
    mask = sp.interior_mask(config)

    def imax(A):
        return float(np.abs(A[np.ix_(mask, mask)]).max())

    rep.numeric("J.square", "J^2 = -1", imax(M @ M + np.eye(sp.dim)), tol12)
    rep.numeric("J.D", "JD = DJ (relative)",
                imax(M @ np.conj(D.matrix) - D.matrix @ M) / scale, tol12)
    rep.numeric("Gamma.J", "Gamma J = -J Gamma",
                imax(G.matrix @ M + M @ np.conj(G.matrix)), tol12)
    rep.numeric("Gamma.D", "Gamma D = -D Gamma (relative)",
                imax(G.matrix @ D.matrix + D.matrix @ G.matrix) / scale,
                tol12)
    rep.numeric("Gamma.square", "Gamma^2 = 1",
                imax(G.matrix @ G.matrix - np.eye(sp.dim)), tol12)
    rep.numeric("Gamma.selfadjoint", "Gamma = Gamma^*",
                imax(G.matrix - G.matrix.conj().T), tol12)
    if gamma != "swap":
        Gs = build_gamma(config, "swap")
        res = imax(Gs.matrix @ M + M @ np.conj(Gs.matrix))
        rep.add("Gamma.swap.J", "the plain real exchange of up and down "
                "anticommutes with J", res <= tol12, residual=res,
                erratum="a real exchange commutes with J since J acts alike "
                "on up and down; the phases up -> i down, down -> -i up give "
                "the anticommutation")
    # decay of W_j W_{j+1}^* - 1
    _decay_check(rep, "decay.W", "||W_j W_(j+1)^* - 1|| decays like q^j",
                 _w_norms(config), logq)
    X = {i: build_x(config, i) for i in IDX}
    Z = {i: build_z(config, i) for i in IDX}
    JX = {i: J.conjugate(X[i]) for i in IDX}
    JZ = {i: J.conjugate(Z[i]) for i in IDX}
    for i in IDX:
        _decay_check(rep, f"decay.pi_minus_z.{i}",
                     f"pi(x_{i}) - z_{i} decays like q^j",
                     block_norms(X[i] - Z[i], config), logq)
    worst = 0.0
    for i in IDX:
        for k in IDX:
            worst = max(worst, Z[i].commutator(JZ[k]).interior_max(config))
    rep.numeric("commut.z", "[z_i, J z_k J^-1] = 0 on interior blocks, all "
                "i, k", worst, tol12)
    for i in IDX:
        for k in IDX:
            _decay_check(rep, f"decay.commutant.{i}.{k}",
                         f"[pi(x_{i}), J pi(x_{k}) J^-1] decays like q^j",
                         block_norms(X[i].commutator(JX[k]), config), logq)
    parts = {"Delta": build_dirac(config, "delta"),
             "Omega": build_dirac(config, "omega")}
    for name, DX in parts.items():
        for i in IDX:
            C1 = DX.commutator(X[i])
            for k in IDX:
                _decay_check(rep, f"decay.first_order.{name}.{i}.{k}",
                             f"[[D_{name}, pi(x_{i})], J pi(x_{k}) J^-1] "
                             "decays like q^j",
                             block_norms(C1.commutator(JX[k]), config), logq)
    # weighted shifts of [[D_Omega, z_i], J z_k J^-1]
    DO = parts["Omega"]
    for i in IDX:
        Ci = DO.commutator(Z[i])
        for k in IDX:
            S = Ci.commutator(JZ[k])
            for dj in (-2, -1, 0, 1, 2):
                seq = block_norms(S.shift_component(dj), config)
                if all(v <= NOISE_FLOOR for _, v in seq):
                    rep.add(f"decay.shift.{i}.{k}.{dj}",
                            f"weight S^{dj} of [[D_Omega, z_{i}], J z_{k} "
                            "J^-1] vanishes", True)
                    continue
                _decay_check(rep, f"decay.shift.{i}.{k}.{dj}",
                             f"weight S^{dj} of [[D_Omega, z_{i}], J z_{k} "
                             "J^-1] decays like q^j", seq, logq)
    return rep.finish()


def spin1_dzero_matrix():
    """Exact matrix of D_0 on span{x_1, x_0, x_-1} from the symmetries
    module."""
    from .symmetries import spin1_structure_constants, ClosureViolation
    try:
        sc = spin1_structure_constants()
    except ClosureViolation as exc:
        raise MissingStructureConstants(str(exc)) from exc
    return sc["Dzero"]


def verify_commutator_structure(config, classical_q=0.999):
    rep = Report("spectral.commutator", config.to_dict())
    sp = spinor_space(config.twoJmax)
    X = {i: build_x(config, i) for i in IDX}
    DD = build_dirac(config, "delta")
    DO = build_dirac(config, "omega")
    D = DD + DO
    for i in IDX:
        same, flip = DO.commutator(X[i]).chirality_parts()
        rep.numeric(f"cross.omega_flip.{i}", f"[D_Omega, pi(x_{i})] is "
                    "chirality off-diagonal", same.interior_max(config), 0.0)
        same, flip = DD.commutator(X[i]).chirality_parts()
        rep.numeric(f"cross.delta_diag.{i}", f"[D_Delta, pi(x_{i})] is "
                    "chirality diagonal", flip.interior_max(config), 0.0)
    # the chirality-diagonal part against sigma_0 pi(D_0 > x_i)
    C = spin1_dzero_matrix()
    sigma = np.diag(sp.sign)
    order = (1, 0, -1)
    for col, i in enumerate(order):
        rhs = np.zeros((sp.dim, sp.dim))
        for row, k in enumerate(order):
            c = C[row][col]
            if c:
                rhs = rhs + eval_at(c, config.q) * X[k].matrix
        rhs = sigma @ rhs
        same, _ = D.commutator(X[i]).chirality_parts()
        diff = BlockOperator(sp, same.matrix - rhs)
        norm = max(BlockOperator(sp, rhs).interior_max(config), 1.0)
        rep.numeric(f"cross.dzero.{i}", f"chirality diagonal part of "
                    f"[D, pi(x_{i})] equals +-pi(D_0 > x_{i}) (relative)",
                    diff.interior_max(config) / norm, config.tol)
    # boundedness of [D, pi(x_i)] over the top half of the interior blocks
    for name, op in (("D", D), ("D_Omega", DO)):
        for i in IDX:
            seq = block_norms(op.commutator(X[i]), config)
            top = [v for _, v in seq[len(seq) // 2:]]
            spread = (max(top) - min(top)) / max(top)
            rep.numeric(f"bounded.{name}.{i}", f"block norms of [{name}, "
                        f"pi(x_{i})] stable within 10% over the top half",
                        spread, 0.1)
    # classical limit
    cl = SpectralConfig(classical_q, config.twoJmax, config.tol,
                        config.interior_margin)
    Xc = {i: build_x(cl, i) for i in IDX}
    DDc = build_dirac(cl, "delta")
    worst = max(DDc.commutator(Xc[i]).interior_max(cl) for i in IDX)
    rep.numeric("cross.classical", f"[D_Delta, pi(x_i)] nearly vanishes at "
                f"q = {classical_q}", worst, 1e-2)
    diag_max = max(abs(_dirac_entries(cl, ix.j)[0]) for ix in sp.indices
                   if cl.is_interior(ix.j))
    rep.numeric("dirac.classical", f"D_0 part of D nearly vanishes at "
                f"q = {classical_q}", diag_max, 1e-2)
    return rep.finish()


def verify_spectral(config):
    rep = Report("spectral", config.to_dict())
    rep.merge(verify_spectrum(config))
    rep.merge(verify_pi_relations(config))
    rep.merge(verify_real_structure(config))
    rep.merge(verify_commutator_structure(config))
    return rep.finish()


# ---------------------------------------------------------------------------
# CSV emission

SPECTRUM_COLUMNS = ("j", "mu_j_closed_form", "mu_j_numeric", "multiplicity")
DECAY_COLUMNS = ("j", "block_norm", "fitted_slope", "target_slope")


def spectrum_rows(config):
    D = build_dirac(config)
    rows = []
    for twoJ in D.space.twoJs():
        j = twoJ / 2
        ev = np.linalg.eigvalsh(D.block(twoJ, twoJ))
        rows.append((j, mu_closed(config, j), float(ev.max()), twoJ + 1))
    return rows


def decay_operator(config, op, i=0, k=0):
    """Named operators for the decay table."""
    X = build_x(config, i)
    if op == "W":
        return None
    if op == "approx":
        return X - build_z(config, i)
    J = build_J(config)
    Xk = J.conjugate(build_x(config, k))
    if op == "commutant":
        return X.commutator(Xk)
    if op in ("first-order-delta", "first-order-omega"):
        part = "delta" if op.endswith("delta") else "omega"
        return build_dirac(config, part).commutator(X).commutator(Xk)
    if op == "z-commutant":
        return build_z(config, i).commutator(J.conjugate(build_z(config, k)))
    raise ValueError(f"unknown decay operator {op}")


DECAY_OPS = ("W", "approx", "commutant", "first-order-delta",
             "first-order-omega", "z-commutant")


def decay_rows(config, op, i=0, k=0):
    if op == "W":
        seq = _w_norms(config)
    else:
        seq = block_norms(decay_operator(config, op, i, k), config)
    logq = math.log(config.q)
    try:
        slope = fit_decay(seq, logq, op).fitted_slope
    except EmptyFit:
        slope = float("nan")
    return [(j, v, slope, logq) for j, v in seq]


def to_csv(columns, rows):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(columns)
    for r in rows:
        w.writerow([repr(float(x)) if isinstance(x, float) else x
                    for x in r])
    return buf.getvalue()

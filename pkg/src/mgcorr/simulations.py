"""The 20 benchmark dependence structures.

Each generator draws (X, Y) with X in R^p and Y in R^q, where q = p for the
jointly-p-dimensional types (joint-normal, logarithmic, both sines, square,
diamond, multiplicative-noise, multimodal-independence) and q = 1 otherwise.
The weight vector is w_d = 1 / d, the noise level kappa is 1 for the usual
one-dimensional runs and 0 for increasing-dimension runs, and auxiliary
randomness is consumed in the order the quantities appear in each formula
(declared variables first, then the X and Y lines).

Standard normals are produced by the inverse CDF applied to open-interval
uniforms (r + 1/2) / 2^53 built from integer draws of a counter-based
generator, so a stream is fully specified by the seed and the documented
draw order.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np
from scipy.special import ndtri

from .distances import DataMatrix
from .errors import ParameterError

__all__ = [
    "SIMULATION_NAMES",
    "SamplePair",
    "SimSpec",
    "null_counterpart",
    "simulate",
]


def _generator(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(np.random.SeedSequence(int(seed))))


def _weights(p: int) -> np.ndarray:
    return 1.0 / np.arange(1.0, p + 1.0)


def _uniform(g, lo: float, hi: float, shape) -> np.ndarray:
    return lo + (hi - lo) * g.random(shape)


def _std_normal(g, shape) -> np.ndarray:
    r = g.integers(0, 1 << 53, size=shape, dtype=np.uint64)
    return ndtri((r + 0.5) * 2.0**-53)


def _bernoulli(g, shape) -> np.ndarray:
    return (g.random(shape) < 0.5).astype(np.float64)


# ---------------------------------------------------------------------------
# generators: g, n, p, kappa -> (x of shape (p, n), y of shape (q, n))
# ---------------------------------------------------------------------------


def _gen_linear(g, n, p, kappa):
    # X ~ U(-1,1)^p;  Y = w'X + kappa*eps
    x = _uniform(g, -1.0, 1.0, (p, n))
    eps = _std_normal(g, n)
    y = _weights(p) @ x + kappa * eps
    return x, y[None, :]


def _gen_exponential(g, n, p, kappa):
    # X ~ U(0,3)^p;  Y = exp(w'X) + 10*kappa*eps
    x = _uniform(g, 0.0, 3.0, (p, n))
    eps = _std_normal(g, n)
    y = np.exp(_weights(p) @ x) + 10.0 * kappa * eps
    return x, y[None, :]


def _gen_cubic(g, n, p, kappa):
    # Y = 128(w'X - 1/3)^3 + 48(w'X - 1/3)^2 - 12(w'X - 1/3) + 80*kappa*eps
    x = _uniform(g, -1.0, 1.0, (p, n))
    eps = _std_normal(g, n)
    t = _weights(p) @ x - 1.0 / 3.0
    y = 128.0 * t**3 + 48.0 * t**2 - 12.0 * t + 80.0 * kappa * eps
    return x, y[None, :]


def _gen_joint_normal(g, n, p, kappa):
    # (X, Y) ~ N(0, Sigma), Sigma = [[I, rho*J], [rho*J, (1 + 0.5*kappa) I]], rho = 1/(2p)
    rho = 1.0 / (2.0 * p)
    sigma = np.empty((2 * p, 2 * p))
    sigma[:p, :p] = np.eye(p)
    sigma[:p, p:] = rho * np.ones((p, p))
    sigma[p:, :p] = rho * np.ones((p, p))
    sigma[p:, p:] = (1.0 + 0.5 * kappa) * np.eye(p)
    chol = np.linalg.cholesky(sigma)
    z = chol @ _std_normal(g, (2 * p, n))
    return z[:p], z[p:]


def _gen_step(g, n, p, kappa):
    # Y = 1(w'X > 0) + kappa*eps
    x = _uniform(g, -1.0, 1.0, (p, n))
    eps = _std_normal(g, n)
    y = (_weights(p) @ x > 0).astype(np.float64) + kappa * eps
    return x, y[None, :]


def _gen_quadratic(g, n, p, kappa):
    # Y = (w'X)^2 + 0.5*kappa*eps
    x = _uniform(g, -1.0, 1.0, (p, n))
    eps = _std_normal(g, n)
    y = (_weights(p) @ x) ** 2 + 0.5 * kappa * eps
    return x, y[None, :]


def _gen_w_shape(g, n, p, kappa):
    # U ~ U(-1,1)^p;  Y = 4[((w'X)^2 - 1/2)^2 + w'U/500] + 0.5*kappa*eps
    u = _uniform(g, -1.0, 1.0, (p, n))
    x = _uniform(g, -1.0, 1.0, (p, n))
    eps = _std_normal(g, n)
    w = _weights(p)
    y = 4.0 * (((w @ x) ** 2 - 0.5) ** 2 + (w @ u) / 500.0) + 0.5 * kappa * eps
    return x, y[None, :]


def _spiral_coords(u: np.ndarray, p: int) -> np.ndarray:
    # X_d = U sin(pi U) cos^d(pi U) for d < p;  X_p = U cos^p(pi U)
    c = np.cos(np.pi * u)
    s = np.sin(np.pi * u)
    powers = c[None, :] ** np.arange(1, p + 1)[:, None]
    x = np.empty((p, u.shape[0]))
    x[: p - 1] = u * s * powers[: p - 1]
    x[p - 1] = u * powers[p - 1]
    return x


def _gen_spiral(g, n, p, kappa):
    # U ~ U(0,5);  Y = U sin(pi U) + 0.4 p eps  (noise as printed, not kappa-scaled)
    u = _uniform(g, 0.0, 5.0, n)
    eps = _std_normal(g, n)
    x = _spiral_coords(u, p)
    y = u * np.sin(np.pi * u) + 0.4 * p * eps
    return x, y[None, :]


def _gen_uncorrelated_bernoulli(g, n, p, kappa):
    # U ~ B(0.5);  X ~ B(0.5)^p + 0.5*eps1;  Y = (2U - 1) w'X + 0.5*eps2
    u = _bernoulli(g, n)
    eps1 = _std_normal(g, (p, n))
    eps2 = _std_normal(g, n)
    x = _bernoulli(g, (p, n)) + 0.5 * eps1
    y = (2.0 * u - 1.0) * (_weights(p) @ x) + 0.5 * eps2
    return x, y[None, :]


def _gen_logarithmic(g, n, p, kappa):
    # eps ~ N(0, I_p);  X ~ N(0, I_p);  Y_d = 2 log2|X_d| + 3*kappa*eps_d
    eps = _std_normal(g, (p, n))
    x = _std_normal(g, (p, n))
    y = 2.0 * np.log2(np.abs(x)) + 3.0 * kappa * eps
    return x, y


def _gen_fourth_root(g, n, p, kappa):
    # Y = |w'X|^(1/4) + (kappa/4)*eps
    x = _uniform(g, -1.0, 1.0, (p, n))
    eps = _std_normal(g, n)
    y = np.abs(_weights(p) @ x) ** 0.25 + 0.25 * kappa * eps
    return x, y[None, :]


def _gen_sine(g, n, p, kappa, theta, noise_scale):
    # U ~ U(-1,1); V ~ N(0,1)^p;  X_d = U + 0.02 p V_d;  Y = sin(theta X) + noise*eps
    u = _uniform(g, -1.0, 1.0, n)
    v = _std_normal(g, (p, n))
    x = u[None, :] + 0.02 * p * v
    eps = _std_normal(g, (p, n))
    y = np.sin(theta * x) + noise_scale * kappa * eps
    return x, y


def _gen_sine_4pi(g, n, p, kappa):
    return _gen_sine(g, n, p, kappa, theta=4.0 * np.pi, noise_scale=1.0)


def _gen_sine_16pi(g, n, p, kappa):
    return _gen_sine(g, n, p, kappa, theta=16.0 * np.pi, noise_scale=0.5)


def _gen_rotated_square(g, n, p, kappa, theta):
    # U, V ~ U(-1,1);  X_d = U cos(theta) + V sin(theta) + 0.05 p eps_d
    #                  Y_d = -U sin(theta) + V cos(theta)
    u = _uniform(g, -1.0, 1.0, n)
    v = _uniform(g, -1.0, 1.0, n)
    eps = _std_normal(g, (p, n))
    x = (u * np.cos(theta) + v * np.sin(theta))[None, :] + 0.05 * p * eps
    y = np.tile(-u * np.sin(theta) + v * np.cos(theta), (p, 1))
    return x, y


def _gen_square(g, n, p, kappa):
    return _gen_rotated_square(g, n, p, kappa, theta=-np.pi / 8.0)


def _gen_diamond(g, n, p, kappa):
    return _gen_rotated_square(g, n, p, kappa, theta=-np.pi / 4.0)


def _gen_two_parabolas(g, n, p, kappa):
    # eps ~ U(0,1); U ~ B(0.5);  Y = ((w'X)^2 + 2*kappa*eps) * (U - 1/2)
    eps = g.random(n)
    u = _bernoulli(g, n)
    x = _uniform(g, -1.0, 1.0, (p, n))
    y = ((_weights(p) @ x) ** 2 + 2.0 * kappa * eps) * (u - 0.5)
    return x, y[None, :]


def _gen_circle_like(g, n, p, kappa, radius):
    # U ~ U(-1,1)^p;  X_d = r(sin(pi U_{d+1}) prod_{j<=d} cos(pi U_j) + 0.4 eps_d)
    #                 X_p = r(prod_{j<=p} cos(pi U_j) + 0.4 eps_p);  Y = sin(pi U_1)
    u = _uniform(g, -1.0, 1.0, (p, n))
    eps = _std_normal(g, (p, n))
    cos_prod = np.cumprod(np.cos(np.pi * u), axis=0)
    x = np.empty((p, n))
    if p > 1:
        x[: p - 1] = radius * (np.sin(np.pi * u[1:]) * cos_prod[: p - 1] + 0.4 * eps[: p - 1])
    x[p - 1] = radius * (cos_prod[p - 1] + 0.4 * eps[p - 1])
    y = np.sin(np.pi * u[0])
    return x, y[None, :]


def _gen_circle(g, n, p, kappa):
    return _gen_circle_like(g, n, p, kappa, radius=1.0)


def _gen_ellipse(g, n, p, kappa):
    return _gen_circle_like(g, n, p, kappa, radius=5.0)


def _gen_multiplicative_noise(g, n, p, kappa):
    # U ~ N(0, I_p);  X ~ N(0, I_p);  Y_d = U_d X_d
    u = _std_normal(g, (p, n))
    x = _std_normal(g, (p, n))
    return x, u * x


def _gen_multimodal_independence(g, n, p, kappa):
    # U, V ~ N(0, I_p); U', V' ~ B(0.5)^p;  X = U/3 + 2U' - 1;  Y = V/3 + 2V' - 1
    u = _std_normal(g, (p, n))
    v = _std_normal(g, (p, n))
    u2 = _bernoulli(g, (p, n))
    v2 = _bernoulli(g, (p, n))
    x = u / 3.0 + 2.0 * u2 - 1.0
    y = v / 3.0 + 2.0 * v2 - 1.0
    return x, y


# (generator, y matches x's dimension) in the canonical ordering 1..20
_REGISTRY = {
    "linear": (_gen_linear, False),
    "exponential": (_gen_exponential, False),
    "cubic": (_gen_cubic, False),
    "joint-normal": (_gen_joint_normal, True),
    "step": (_gen_step, False),
    "quadratic": (_gen_quadratic, False),
    "w-shape": (_gen_w_shape, False),
    "spiral": (_gen_spiral, False),
    "uncorrelated-bernoulli": (_gen_uncorrelated_bernoulli, False),
    "logarithmic": (_gen_logarithmic, True),
    "fourth-root": (_gen_fourth_root, False),
    "sine-4pi": (_gen_sine_4pi, True),
    "sine-16pi": (_gen_sine_16pi, True),
    "square": (_gen_square, True),
    "two-parabolas": (_gen_two_parabolas, False),
    "circle": (_gen_circle, False),
    "ellipse": (_gen_ellipse, False),
    "diamond": (_gen_diamond, True),
    "multiplicative-noise": (_gen_multiplicative_noise, True),
    "multimodal-independence": (_gen_multimodal_independence, True),
}

SIMULATION_NAMES: tuple[str, ...] = tuple(_REGISTRY)


@dataclass(frozen=True)
class SimSpec:
    """One fully-specified draw: distribution, sizes, noise level, seed."""

    sim_type: str
    n: int
    p: int = 1
    kappa: float = 1.0
    seed: int = 0

    def __post_init__(self):
        if self.sim_type not in _REGISTRY:
            raise ParameterError(
                f"unknown simulation {self.sim_type!r}; valid names: "
                + ", ".join(SIMULATION_NAMES)
            )
        if self.n < 1:
            raise ParameterError(f"n must be >= 1, got {self.n}")
        if self.p < 1:
            raise ParameterError(f"p must be >= 1, got {self.p}")
        if self.kappa < 0:
            raise ParameterError(f"kappa must be >= 0, got {self.kappa}")

    @property
    def q(self) -> int:
        return self.p if _REGISTRY[self.sim_type][1] else 1


@dataclass(frozen=True)
class SamplePair:
    """A dependent draw (or a crossed null draw) of paired samples."""

    x: DataMatrix
    y: DataMatrix

    @property
    def n(self) -> int:
        return self.x.n


def simulate(spec: SimSpec) -> SamplePair:
    """Draw a SamplePair from ``spec``; same spec means identical output.

    Parameters
    ----------
    spec : SimSpec
        Distribution name (see SIMULATION_NAMES), sample size n, dimension p,
        noise level kappa, and the stream seed.
    """
    gen, _ = _REGISTRY[spec.sim_type]
    x, y = gen(_generator(spec.seed), spec.n, spec.p, spec.kappa)
    return SamplePair(x=DataMatrix(x), y=DataMatrix(y))


def null_counterpart(spec: SimSpec, seed2: int) -> SamplePair:
    """Independent null with the same marginals: X from one draw, Y from another.

    ``seed2`` must differ from ``spec.seed`` for the two draws to be
    independent.
    """
    if int(seed2) == int(spec.seed):
        raise ParameterError("null counterpart needs a second seed distinct from spec.seed")
    first = simulate(spec)
    second = simulate(replace(spec, seed=int(seed2)))
    return SamplePair(x=first.x, y=second.y)

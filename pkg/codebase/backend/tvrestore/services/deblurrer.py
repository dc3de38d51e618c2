"""
TV deblurring with an outer FISTA loop around the FGP denoiser.

Solves
    min_{T in C} ||A(T) - S||_F^2 + 2*lam*TV(T)
for a circulant blur A. Each outer iteration takes a gradient step on the
data term and then solves a denoising problem as the proximal step:

    g_n = y_n - (2/L) * A^T(A y_n - S)
    x_n = denoise(g_n) with regularization 2*lam/L

The inner denoiser is warm-started from the previous outer iteration's
dual variables.
"""

import logging
import math
import time
from typing import Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field

from .. import settings
from ..errors import ShapeError
from .blur import BlurSpectrum, apply, apply_adjoint
from .denoiser import Algorithm, SolveReport, SolverConfig, TvDenoiser, project_constraint
from .tensor_core import Tensor, as_tensor, relative_change
from .tv_ops import DualVars, TvFlavor, tv


class DeblurConfig(BaseModel):
    """
    Parameters of one deblurring solve.

    Attributes:
        inner: Denoiser configuration; its lam is the deblurring lam and its
            iteration budget is the inner budget per outer step
        outer_iters: Outer iteration budget
        algo: Outer acceleration scheme
        lipschitz: Manual Lipschitz constant; None derives it from the spectrum
        tol: Stop when the relative change of the outer iterate drops below this
    """

    model_config = ConfigDict(frozen=True)

    inner: SolverConfig
    outer_iters: int = Field(default=settings.OUTER_ITERS, ge=1)
    algo: Algorithm = Algorithm.FISTA
    lipschitz: Optional[float] = Field(default=None, gt=0.0, allow_inf_nan=False)
    tol: float = Field(default=0.0, ge=0.0)

    @classmethod
    def default_inner(cls, lam: float, **kwargs) -> SolverConfig:
        """Inner config with the warm-started default budget."""
        kwargs.setdefault('max_iters', settings.INNER_ITERS)
        return SolverConfig(lam=lam, **kwargs)


def data_lipschitz(b: BlurSpectrum) -> float:
    """Lipschitz constant 2*max|D|^2 of the gradient of ||A x - S||^2."""
    return 2.0 * b.max_gain ** 2


def deblur_objective(x: Tensor, s: Tensor, b: BlurSpectrum, lam: float, flavor: TvFlavor) -> float:
    """||A x - S||_F^2 + 2*lam*TV(x)."""
    residual = apply(b, x) - s
    return float((residual ** 2).sum() + 2.0 * lam * tv(x, flavor))


class TvDeblurrer:
    """
    Outer proximal-gradient solver for the TV deblurring problem.

    Attributes:
        config (DeblurConfig): Solver parameters
        logger (logging.Logger): Logger instance for this solver
    """

    def __init__(self, config: DeblurConfig):
        self.config = config
        self.logger = logging.getLogger(self.__class__.__name__)

    def deblur(self, s: Tensor, b: BlurSpectrum) -> Tuple[Tensor, SolveReport]:
        """
        Deblur observed tensor s.

        Args:
            s: Blurred, noisy observation
            b: Spectrum of the blur operator, same dims as s

        Returns:
            Tuple[Tensor, SolveReport]: Restored tensor and a report whose
            objective trace holds ||A x - S||^2 + 2*lam*TV(x)

        Raises:
            ShapeError: If s and b have different dims
            NumericError: If s contains non-finite values
        """
        cfg = self.config
        s = as_tensor(s, 'observed tensor')
        if s.shape != b.shape:
            raise ShapeError(f"observation dims {s.shape} differ from blur spectrum dims {b.shape}")
        start = time.perf_counter()

        lam = cfg.inner.lam
        flavor = cfg.inner.flavor
        constraint = cfg.inner.constraint
        L = cfg.lipschitz if cfg.lipschitz is not None else data_lipschitz(b)
        # prox of 2*lam*TV with weight L/2 is the denoiser at lam' = 2*lam/L
        inner = TvDenoiser(cfg.inner.model_copy(update={'lam': 2.0 * lam / L}), logging.DEBUG)
        self.logger.info(
            f"{cfg.algo.value} deblur: lam={lam:g}, L={L:.6g}, inner lam={2.0 * lam / L:.6g}, "
            f"outer iters={cfg.outer_iters}, inner iters={cfg.inner.max_iters}"
        )

        x_prev = project_constraint(s, constraint).copy()
        f_prev = deblur_objective(x_prev, s, b, lam, flavor)
        y = x_prev
        t = 1.0
        duals: Optional[DualVars] = None
        report = SolveReport(objective_kind='full')

        for n in range(1, cfg.outer_iters + 1):
            g = y - (2.0 / L) * apply_adjoint(b, apply(b, y) - s)
            z, inner_report = inner.denoise(g, init_duals=duals)
            duals = inner_report.duals
            f_z = deblur_objective(z, s, b, lam, flavor)
            rel = relative_change(z, x_prev)

            t_next = (1.0 + math.sqrt(1.0 + 4.0 * t * t)) / 2.0
            if cfg.algo is Algorithm.MFISTA:
                # ties keep the candidate
                x, f = (z, f_z) if f_z <= f_prev else (x_prev, f_prev)
                y = x + (t / t_next) * (z - x) + ((t - 1.0) / t_next) * (x - x_prev)
            elif cfg.algo is Algorithm.FISTA:
                x, f = z, f_z
                y = x + ((t - 1.0) / t_next) * (x - x_prev)
            else:
                x, f = z, f_z
                y = x

            report.objective_trace.append(f)
            report.primal_trace.append(f)
            report.rel_change_trace.append(rel)
            report.iterations = n
            self.logger.debug(f"outer iter {n}: objective {f:.10g}, rel change {rel:.3e}")

            x_prev, f_prev, t = x, f, t_next
            if rel < cfg.tol:
                break

        report.final_rel_change = report.rel_change_trace[-1]
        report.duals = duals
        report.wall_time = time.perf_counter() - start
        self.logger.info(
            f"deblur finished: {report.iterations} outer iterations, "
            f"objective {report.objective_trace[-1]:.6g}, {report.wall_time:.3f}s"
        )
        return x_prev, report


def deblur(s: Tensor, b: BlurSpectrum, cfg: DeblurConfig) -> Tuple[Tensor, SolveReport]:
    """Convenience wrapper around TvDeblurrer.deblur."""
    return TvDeblurrer(cfg).deblur(s, b)

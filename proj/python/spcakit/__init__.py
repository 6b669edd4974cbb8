"""Sparse PCA toolkit: spiked-model simulation, SPCA/ITPS solvers, metrics."""

from ._spcakit import (
    default_lambda1,
    diagnostics,
    dt_init,
    polar_orth,
    projector,
    run_itps,
    run_spca,
    simulate,
    soft_threshold,
    subspace_loss,
    support_of,
    tpr_fpr,
)

__all__ = [
    "default_lambda1",
    "diagnostics",
    "dt_init",
    "polar_orth",
    "projector",
    "run_itps",
    "run_spca",
    "simulate",
    "soft_threshold",
    "subspace_loss",
    "support_of",
    "tpr_fpr",
]

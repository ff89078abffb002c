# slosh: set retrieval via sliced-Wasserstein embeddings
#
# Copyright (c) 2026 The slosh authors
#
# This code is released under the
# Apache License Version 2.0 http://www.apache.org/licenses/.
"""Sliced-Wasserstein set embeddings with LSH set retrieval."""

from ._core import (
    cov_pool,
    evaluate_retrieval,
    fspool_di,
    gem_pool,
    gen_blobs,
    gsw_estimate,
    sample_slicers,
    swe_embed,
    wasserstein_1d,
)

__all__ = [
    "cov_pool",
    "evaluate_retrieval",
    "fspool_di",
    "gem_pool",
    "gen_blobs",
    "gsw_estimate",
    "sample_slicers",
    "swe_embed",
    "wasserstein_1d",
]

__version__ = "0.1.0"

"""Randomized embeddings: Fourier mixing, slice sampling, TensorSketch and leverage scores."""

from .hashing import (
    KWiseHash,
    TensorSketch,
    countsketch_core,
    countsketch_matrix,
    ordered_sketch_cores,
    tensorsketch_rhs,
    tensorsketch_subchain,
)
from .leverage import leverage_distribution, leverage_scores, leverage_summary
from .mixing import (
    FourierMixer,
    MixingOperator,
    SignFlip,
    draw_mixers,
    mix_core,
    mix_tensor,
    unmix_core,
)
from .random import derive_seed, make_rng
from .sampling import (
    UniformSampler,
    draw_joint_samples,
    exhaustive_samples,
    joint_probabilities,
    ksrft_sketch_rhs,
    sampled_rows,
    sampled_subchain,
)
from .sizing import recommend_embedding_size

__all__ = [
    "KWiseHash",
    "TensorSketch",
    "countsketch_core",
    "countsketch_matrix",
    "ordered_sketch_cores",
    "tensorsketch_rhs",
    "tensorsketch_subchain",
    "leverage_distribution",
    "leverage_scores",
    "leverage_summary",
    "FourierMixer",
    "MixingOperator",
    "SignFlip",
    "draw_mixers",
    "mix_core",
    "mix_tensor",
    "unmix_core",
    "derive_seed",
    "make_rng",
    "UniformSampler",
    "draw_joint_samples",
    "exhaustive_samples",
    "joint_probabilities",
    "ksrft_sketch_rhs",
    "sampled_rows",
    "sampled_subchain",
    "recommend_embedding_size",
]

"""Guided topic modeling: reduce, cluster, represent, refine."""
from docadopt.topics.clusterers import Clusterer, HdbscanClusterer, ThresholdClusterer
from docadopt.topics.config import PipelineConfig
from docadopt.topics.ctfidf import ctfidf
from docadopt.topics.estimator import GuidedTopicModel
from docadopt.topics.model import (
    DEFAULT_REPRESENTATION_SIZE,
    MODEL_FORMAT_VERSION,
    ModelFormatError,
    Topic,
    TopicModel,
    build_representation,
    fit,
    load_model,
    save_model,
)
from docadopt.topics.reducers import PcaReducer, Reducer, TruncateReducer
from docadopt.topics.representation import (
    DEFAULT_CANDIDATE_POOL_SIZE,
    DEFAULT_N_REPR_DOCS,
    kbi,
    mmr,
    representative_texts,
)
from docadopt.topics.seeding import (
    DEFAULT_SEED_MIN_SIMILARITY,
    SeedTopicSet,
    apply_seed,
    seed_embeddings,
)

__all__ = [
    "Clusterer",
    "DEFAULT_CANDIDATE_POOL_SIZE",
    "DEFAULT_N_REPR_DOCS",
    "DEFAULT_REPRESENTATION_SIZE",
    "DEFAULT_SEED_MIN_SIMILARITY",
    "GuidedTopicModel",
    "HdbscanClusterer",
    "MODEL_FORMAT_VERSION",
    "ModelFormatError",
    "PcaReducer",
    "PipelineConfig",
    "Reducer",
    "SeedTopicSet",
    "ThresholdClusterer",
    "Topic",
    "TopicModel",
    "TruncateReducer",
    "apply_seed",
    "build_representation",
    "ctfidf",
    "fit",
    "kbi",
    "load_model",
    "mmr",
    "representative_texts",
    "save_model",
    "seed_embeddings",
]

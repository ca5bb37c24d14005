"""Adoption mapping: merge topics into TOIs, predict section labels."""
from docadopt.adoptmap.estimator import AdoptionMapper
from docadopt.adoptmap.merge import (
    LabelTopic,
    MERGED_FORMAT_VERSION,
    MergePlan,
    MergedTopicModel,
    build_adoption_map,
    find_similar_topics,
    load_merged,
    merge,
    reduce_outliers,
    resolve_conflicts,
    save_merged,
    update_representations,
)
from docadopt.adoptmap.predict import (
    SectionPrediction,
    SentencePrediction,
    predict_corpus_sections,
    predict_section,
    predict_sentence,
    read_predictions,
    write_predictions,
)
from docadopt.adoptmap.tois import (
    LABELS,
    OUTLIER_LABEL,
    TOI_NAMES,
    Thresholds,
    ToiSpec,
    default_tois,
    seed_from_tois,
)

__all__ = [
    "AdoptionMapper",
    "LABELS",
    "LabelTopic",
    "MERGED_FORMAT_VERSION",
    "MergePlan",
    "MergedTopicModel",
    "OUTLIER_LABEL",
    "SectionPrediction",
    "SentencePrediction",
    "TOI_NAMES",
    "Thresholds",
    "ToiSpec",
    "build_adoption_map",
    "default_tois",
    "find_similar_topics",
    "load_merged",
    "merge",
    "predict_corpus_sections",
    "predict_section",
    "predict_sentence",
    "read_predictions",
    "reduce_outliers",
    "resolve_conflicts",
    "save_merged",
    "seed_from_tois",
    "update_representations",
    "write_predictions",
]

"""Cumulative Spectral Gradient (CSG) for knowledge-graph tail prediction."""

from ._core import (
    ClassIndex,
    ConfigError,
    CsgReport,
    DataError,
    EmbeddingStore,
    HashEmbedding,
    KgcsgError,
    NumericError,
    RunConfig,
    SampledPool,
    SweepCell,
    SweepGrid,
    TripleSet,
    build_similarity,
    compose,
    csg,
    dataset_stats,
    degree_matrix,
    eigenvalues_symmetric,
    filter_classes,
    group_by_tail,
    hash_embed,
    knn_exact,
    l2_distance_sq,
    load_embeddings,
    load_embeddings_file,
    normalized_laplacian,
    parse_triples,
    pearson,
    read_triple_files,
    run_csg,
    run_sweep,
    sample_pool,
    symmetrize,
    vocabulary,
)

__version__ = "0.1.0"

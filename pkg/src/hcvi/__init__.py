"""Hyper-ball granulation and the HCVI cluster validity index."""

from .baselines import baseline_indices, calinski_harabasz, davies_bouldin, silhouette
from .geometry import (BallDistance, DimensionMismatchError, DistanceMatrix, HyperBall,
                       ball_distance, diameter, fit_ball, pairwise_ball_distances)
from .granulation import Granulation, GranulationConfig, bisect, granulate, remove_noise
from .index import (ClusterScore, Clustering, IndexReport, assign_balls, canonical_labels,
                    compactness, hcvi_for_l, inter_fallback, intra_fallback, normalize_scores,
                    separation)
from .io import (Blobs, Dataset, Noise, Rings, RunResult, emit_result, generate_synthetic,
                 load_csv, load_labels)
from .sweep import SweepBoundError, SweepConfig, SweepReport, SweepRow, kmeans, run_sweep

__version__ = "0.1.0"

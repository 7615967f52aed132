"""AutoML: model selection, what-if simulation, streaming refits."""

from .encoding import FeatureEncoding
from .learners import KNNRegressor, RegressionTree, RidgeRegressor
from .metrics import Metric, score
from .simulate import SimulationRequest, SimulationResult, simulate
from .training import (
    Budget,
    ModelArtifact,
    TrainSpec,
    train,
    train_fixed,
    update_with_stream,
)

__all__ = [
    "Budget",
    "FeatureEncoding",
    "KNNRegressor",
    "Metric",
    "ModelArtifact",
    "RegressionTree",
    "RidgeRegressor",
    "SimulationRequest",
    "SimulationResult",
    "TrainSpec",
    "score",
    "simulate",
    "train",
    "train_fixed",
    "update_with_stream",
]

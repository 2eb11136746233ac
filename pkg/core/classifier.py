# core/classifier.py
"""
One-hidden-layer feed-forward cognate classifier.

    p(x) = sigmoid(w2 . act(W1 x + b1) + b2)

hidden_dim = 0 drops the hidden layer and leaves logistic regression,
p(x) = sigmoid(w2 . x + b2).

Training is mini-batch SGD on binary cross-entropy. The learning rate starts
at 0.4 and is halved every epoch whose validation error is worse than the
best seen so far; training stops once it falls below 0.001.
"""

import copy
import json
import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
import torch
import torch.nn.functional as F
from pydantic import BaseModel, ConfigDict, field_validator, model_validator
from torch import nn

from core.exceptions import DomainError, ResourceLoadError, TrainingError

logger = logging.getLogger(__name__)

MODEL_FORMAT_VERSION = 1
HIDDEN_DIMS = (30, 50, 100, 150)
# Order doubles as the grid-search tie-break
ACTIVATIONS = ("tanh", "hardtanh", "sigmoid", "relu")
VALIDATION_FRACTION = 0.1
DECISION_THRESHOLD = 0.5

_ACTIVATION_FNS = {
    "tanh": torch.tanh,
    "hardtanh": F.hardtanh,
    "sigmoid": torch.sigmoid,
    "relu": torch.relu,
}
_EPS = float(np.finfo(np.float64).eps)


class FFNNConfig(BaseModel):
    """Hyper-parameters of one network"""
    model_config = ConfigDict(frozen=True)

    hidden_dim: int = 50
    activation: str = "tanh"
    initial_lr: float = 0.4
    lr_floor: float = 0.001
    batch_size: int = 64
    seed: int = 42
    max_epochs: int = 500

    @field_validator("hidden_dim")
    @classmethod
    def _non_negative(cls, value: int) -> int:
        if value < 0:
            raise ValueError(f"hidden_dim must be >= 0, got {value}")
        return value

    @field_validator("activation")
    @classmethod
    def _known_activation(cls, value: str) -> str:
        if value not in ACTIVATIONS:
            raise ValueError(f"activation must be one of {ACTIVATIONS}, got {value!r}")
        return value

    @field_validator("batch_size", "max_epochs")
    @classmethod
    def _positive(cls, value: int) -> int:
        if value < 1:
            raise ValueError(f"must be positive, got {value}")
        return value

    @model_validator(mode="after")
    def _lr_order(self) -> "FFNNConfig":
        if not (self.initial_lr > self.lr_floor > 0):
            raise ValueError(
                f"need initial_lr > lr_floor > 0, got {self.initial_lr} and {self.lr_floor}"
            )
        return self

    @property
    def is_logistic(self) -> bool:
        return self.hidden_dim == 0

    @property
    def label(self) -> str:
        return "logreg" if self.is_logistic else f"{self.activation}-{self.hidden_dim}"


def logit(
    x: torch.Tensor,
    w1: Optional[torch.Tensor],
    b1: Optional[torch.Tensor],
    w2: torch.Tensor,
    b2: torch.Tensor,
    activation: str,
) -> torch.Tensor:
    """Pre-sigmoid output for a batch (n, input_dim) or a single row"""
    hidden = x if w1 is None else _ACTIVATION_FNS[activation](x @ w1.T + b1)
    return hidden @ w2 + b2


class CognateNet(nn.Module):
    def __init__(self, input_dim: int, config: FFNNConfig):
        super().__init__()
        self.input_dim = input_dim
        self.activation = config.activation
        opts = {"dtype": torch.float64}
        if config.is_logistic:
            self.w1 = None
            self.b1 = None
            self.w2 = nn.Parameter(torch.zeros(input_dim, **opts))
        else:
            self.w1 = nn.Parameter(torch.zeros(config.hidden_dim, input_dim, **opts))
            self.b1 = nn.Parameter(torch.zeros(config.hidden_dim, **opts))
            self.w2 = nn.Parameter(torch.zeros(config.hidden_dim, **opts))
        self.b2 = nn.Parameter(torch.zeros((), **opts))

    def reset_parameters(self, generator: torch.Generator) -> None:
        """Xavier-uniform weights, zero biases"""
        with torch.no_grad():
            if self.w1 is not None:
                _xavier_(self.w1, self.w1.shape[1], self.w1.shape[0], generator)
                self.b1.zero_()
            _xavier_(self.w2, self.w2.shape[0], 1, generator)
            self.b2.zero_()

    def forward(self, x: torch.Tensor) -> torch.Tensor:
        return logit(x, self.w1, self.b1, self.w2, self.b2, self.activation)


def _xavier_(tensor: torch.Tensor, fan_in: int, fan_out: int, generator: torch.Generator) -> None:
    bound = math.sqrt(6.0 / (fan_in + fan_out))
    sample = torch.rand(tensor.shape, generator=generator, dtype=tensor.dtype)
    tensor.copy_(sample * 2 * bound - bound)


@dataclass(frozen=True)
class EpochRecord:
    epoch: int
    train_loss: float
    val_error: float
    lr: float


@dataclass
class TrainingTrace:
    epochs: List[EpochRecord] = field(default_factory=list)
    stop_reason: str = ""
    final_lr: float = 0.0
    best_epoch: int = 0
    best_val_error: float = 1.0

    @property
    def lr_history(self) -> List[float]:
        return [record.lr for record in self.epochs]

    def to_dict(self) -> Dict:
        return asdict(self)


@dataclass(frozen=True)
class FFNNModel:
    """Trained network; read-only after training"""
    config: FFNNConfig
    input_dim: int
    net: CognateNet

    @property
    def w1(self) -> Optional[np.ndarray]:
        return None if self.net.w1 is None else self.net.w1.detach().numpy().copy()

    @property
    def b1(self) -> Optional[np.ndarray]:
        return None if self.net.b1 is None else self.net.b1.detach().numpy().copy()

    @property
    def w2(self) -> np.ndarray:
        return self.net.w2.detach().numpy().copy()

    @property
    def b2(self) -> float:
        return float(self.net.b2.detach())


@dataclass(frozen=True)
class Prediction:
    label: int
    probability: float


@dataclass
class GridResult:
    best: FFNNConfig
    model: FFNNModel
    trace: TrainingTrace
    accuracies: Dict[str, float] = field(default_factory=dict)


def build_model(
    input_dim: int,
    config: FFNNConfig,
    w1=None,
    b1=None,
    w2=None,
    b2: float = 0.0,
) -> FFNNModel:
    """Model with explicit parameters; omitted weights are zero"""
    if input_dim < 1:
        raise DomainError(f"input_dim must be positive, got {input_dim}")
    net = CognateNet(input_dim, config)
    with torch.no_grad():
        if net.w1 is not None:
            if w1 is not None:
                net.w1.copy_(torch.as_tensor(np.asarray(w1, dtype=np.float64)))
            if b1 is not None:
                net.b1.copy_(torch.as_tensor(np.asarray(b1, dtype=np.float64)))
        if w2 is not None:
            net.w2.copy_(torch.as_tensor(np.asarray(w2, dtype=np.float64)))
        net.b2.fill_(float(b2))
    net.eval()
    return FFNNModel(config=config, input_dim=input_dim, net=net)


def _as_rows(model: FFNNModel, x) -> torch.Tensor:
    array = np.asarray(x, dtype=np.float64)
    if array.ndim == 1:
        array = array[None, :]
    if array.ndim != 2 or array.shape[1] != model.input_dim:
        raise DomainError(f"expected input of dimension {model.input_dim}, got shape {np.shape(x)}")
    return torch.from_numpy(array)


def forward_batch(model: FFNNModel, X) -> np.ndarray:
    """Probabilities for every row of X, strictly inside (0, 1)"""
    with torch.no_grad():
        probs = torch.sigmoid(model.net(_as_rows(model, X)))
    return probs.clamp(_EPS, 1.0 - _EPS).numpy()


def forward(model: FFNNModel, x) -> float:
    """Probability that x is a cognate pair"""
    if np.asarray(x).ndim != 1:
        raise DomainError("forward takes a single feature vector")
    return float(forward_batch(model, x)[0])


def predict(model: FFNNModel, x) -> Prediction:
    probability = forward(model, x)
    return Prediction(label=int(probability >= DECISION_THRESHOLD), probability=probability)


def predict_batch(model: FFNNModel, X) -> Tuple[np.ndarray, np.ndarray]:
    """(labels, probabilities) for every row of X"""
    probs = forward_batch(model, X)
    return (probs >= DECISION_THRESHOLD).astype(int), probs


def validation_split(y: np.ndarray, seed: int) -> Tuple[np.ndarray, np.ndarray]:
    """Stratified 10% hold-out: (train_idx, val_idx), at least one example per class"""
    rng = np.random.default_rng(seed)
    train_idx, val_idx = [], []
    for cls in (0, 1):
        members = np.flatnonzero(y == cls)
        rng.shuffle(members)
        n_val = max(1, int(round(VALIDATION_FRACTION * len(members))))
        val_idx.extend(members[:n_val])
        train_idx.extend(members[n_val:])
    return np.sort(np.array(train_idx, dtype=int)), np.sort(np.array(val_idx, dtype=int))


def _check_training_data(X: np.ndarray, y: np.ndarray) -> None:
    if X.ndim != 2 or len(X) != len(y):
        raise DomainError(f"X must be (n, d) matching {len(y)} labels, got shape {X.shape}")
    if not np.all(np.isfinite(X)):
        raise DomainError("feature matrix contains non-finite values")
    counts = {cls: int(np.sum(y == cls)) for cls in (0, 1)}
    if set(np.unique(y)) - {0, 1}:
        raise TrainingError("labels must be 0 or 1")
    if min(counts.values()) < 2:
        raise TrainingError(
            f"need at least 2 examples of each class, got {counts[1]} cognate / {counts[0]} non-cognate"
        )


def _error_rate(net: CognateNet, X: torch.Tensor, y: torch.Tensor) -> float:
    with torch.no_grad():
        predicted = (torch.sigmoid(net(X)) >= DECISION_THRESHOLD).to(y.dtype)
    return float((predicted != y).to(torch.float64).mean())


def train(X, y, config: FFNNConfig) -> Tuple[FFNNModel, TrainingTrace]:
    """Fit one network; returns the best-validation snapshot and its trace"""
    X = np.asarray(X, dtype=np.float64)
    y = np.asarray(y, dtype=int)
    _check_training_data(X, y)

    train_idx, val_idx = validation_split(y, config.seed)
    X_train = torch.from_numpy(X[train_idx])
    y_train = torch.from_numpy(y[train_idx].astype(np.float64))
    X_val = torch.from_numpy(X[val_idx])
    y_val = torch.from_numpy(y[val_idx].astype(np.float64))

    generator = torch.Generator().manual_seed(config.seed)
    net = CognateNet(X.shape[1], config)
    net.reset_parameters(generator)
    optimizer = torch.optim.SGD(net.parameters(), lr=config.initial_lr)

    lr = config.initial_lr
    trace = TrainingTrace()
    best_state = copy.deepcopy(net.state_dict())
    best_error = math.inf
    n = len(train_idx)

    for epoch in range(1, config.max_epochs + 1):
        net.train()
        order = torch.randperm(n, generator=generator)
        for start in range(0, n, config.batch_size):
            batch = order[start:start + config.batch_size]
            optimizer.zero_grad()
            loss = F.binary_cross_entropy_with_logits(net(X_train[batch]), y_train[batch])
            if not torch.isfinite(loss):
                raise TrainingError(
                    f"non-finite loss at epoch {epoch}, batch offset {start}, lr {lr} "
                    f"({config.label})"
                )
            loss.backward()
            optimizer.step()

        net.eval()
        with torch.no_grad():
            train_loss = float(F.binary_cross_entropy_with_logits(net(X_train), y_train))
        val_error = _error_rate(net, X_val, y_val)
        trace.epochs.append(EpochRecord(epoch, train_loss, val_error, lr))

        if val_error <= best_error:
            best_error = val_error
            best_state = copy.deepcopy(net.state_dict())
            trace.best_epoch = epoch
        else:
            lr /= 2.0
            for group in optimizer.param_groups:
                group["lr"] = lr

        if lr < config.lr_floor:
            trace.stop_reason = "lr_floor"
            break
    else:
        trace.stop_reason = "max_epochs"

    trace.final_lr = lr
    trace.best_val_error = best_error
    net.load_state_dict(best_state)
    net.eval()
    logger.debug(
        f"{config.label}: {len(trace.epochs)} epochs, stop={trace.stop_reason}, "
        f"best val error {best_error:.4f} at epoch {trace.best_epoch}"
    )
    return FFNNModel(config=config, input_dim=X.shape[1], net=net), trace


def default_grid(
    base: Optional[FFNNConfig] = None,
    hidden_dims: Sequence[int] = HIDDEN_DIMS,
    activations: Sequence[str] = ACTIVATIONS,
    classifier: str = "ffnn",
) -> List[FFNNConfig]:
    """Activation x width grid, or the single logistic-regression config"""
    base = base or FFNNConfig()
    if classifier == "logreg":
        return [FFNNConfig(**{**base.model_dump(), "hidden_dim": 0})]
    if classifier != "ffnn":
        raise DomainError(f"unknown classifier: {classifier}")
    return [
        FFNNConfig(**{**base.model_dump(), "hidden_dim": h, "activation": a})
        for h in hidden_dims
        for a in activations
    ]


def _tie_break(config: FFNNConfig) -> Tuple[int, int]:
    return config.hidden_dim, ACTIVATIONS.index(config.activation)


def grid_search(X, y, grid: Sequence[FFNNConfig], threads: int = 1) -> GridResult:
    """Train every config on the same split; best validation accuracy wins"""
    if not grid:
        raise DomainError("grid must contain at least one configuration")

    def fit(config: FFNNConfig):
        return train(X, y, config)

    if threads > 1 and len(grid) > 1:
        with ThreadPoolExecutor(max_workers=threads) as executor:
            results = list(executor.map(fit, grid))
    else:
        results = [fit(config) for config in grid]

    accuracies = {config.label: 1.0 - trace.best_val_error for config, (_, trace) in zip(grid, results)}
    best_index = min(
        range(len(grid)),
        key=lambda i: (-(1.0 - results[i][1].best_val_error), *_tie_break(grid[i])),
    )
    model, trace = results[best_index]
    logger.info(
        f"🏁 Grid search over {len(grid)} config(s): {grid[best_index].label} "
        f"(val acc {accuracies[grid[best_index].label]:.3f})"
    )
    return GridResult(best=grid[best_index], model=model, trace=trace, accuracies=accuracies)


def save_model(model: FFNNModel, path: str, metadata: Optional[Dict] = None) -> None:
    """JSON with format_version, input_dim, config and every parameter"""
    payload = {
        "format_version": MODEL_FORMAT_VERSION,
        "input_dim": model.input_dim,
        "config": model.config.model_dump(),
        "parameters": {
            "w1": None if model.w1 is None else model.w1.tolist(),
            "b1": None if model.b1 is None else model.b1.tolist(),
            "w2": model.w2.tolist(),
            "b2": model.b2,
        },
        "metadata": metadata or {},
    }
    with open(path, "w", encoding="utf-8") as f:
        json.dump(payload, f, indent=2)
    logger.info(f"💾 Saved {model.config.label} model to {path}")


def load_model(path: str) -> FFNNModel:
    file_path = Path(path)
    if not file_path.exists():
        raise ResourceLoadError(file_path, "model file not found")
    try:
        with open(file_path, "r", encoding="utf-8") as f:
            payload = json.load(f)
    except json.JSONDecodeError as e:
        raise ResourceLoadError(file_path, f"invalid JSON: {e.msg}", line=e.lineno) from None

    version = payload.get("format_version")
    if version != MODEL_FORMAT_VERSION:
        raise ResourceLoadError(file_path, f"unsupported model format_version {version!r}")
    try:
        config = FFNNConfig(**payload["config"])
        params = payload["parameters"]
        return build_model(
            int(payload["input_dim"]),
            config,
            w1=params["w1"],
            b1=params["b1"],
            w2=params["w2"],
            b2=params["b2"],
        )
    except (KeyError, TypeError, ValueError, RuntimeError) as e:
        raise ResourceLoadError(file_path, f"malformed model: {e}") from None

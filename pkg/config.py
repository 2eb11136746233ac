# sajatiya/config.py
import json
import os
from pathlib import Path
from typing import Any, Dict, List, Optional

import yaml
from dotenv import load_dotenv
from pydantic import BaseModel, Field, ValidationError

from core.exceptions import ConfigurationError

load_dotenv()

ROOT_DIR = Path(__file__).resolve().parent
DATA_DIR = ROOT_DIR / "data"


class Config:
    """Application configuration (environment-driven defaults)"""

    # Logging
    LOG_LEVEL = os.getenv("SAJATIYA_LOG_LEVEL", "INFO")
    LOG_FILE = os.getenv("SAJATIYA_LOG_FILE")
    LOG_FORMAT = "[%(asctime)s] [%(levelname)s] %(name)s: %(message)s"

    # Reproducibility
    SEED = int(os.getenv("SAJATIYA_SEED", "42"))
    FOLDS = int(os.getenv("SAJATIYA_FOLDS", "5"))

    # Similarity settings
    Q_LEN = int(os.getenv("SAJATIYA_Q_LEN", "2"))
    CONTEXT_CAP = int(os.getenv("SAJATIYA_CONTEXT_CAP", "50"))
    PHONETIC_TABLE = os.getenv(
        "SAJATIYA_PHONETIC_TABLE", str(DATA_DIR / "phonetic_features.csv")
    )
    # Used for Hindi contexts when no --stopwords-src is given
    STOPWORDS_HI = os.getenv("SAJATIYA_STOPWORDS_HI", str(DATA_DIR / "stopwords_hi.txt"))

    # Classifier settings
    INITIAL_LR = float(os.getenv("SAJATIYA_INITIAL_LR", "0.4"))
    LR_FLOOR = float(os.getenv("SAJATIYA_LR_FLOOR", "0.001"))
    BATCH_SIZE = int(os.getenv("SAJATIYA_BATCH_SIZE", "64"))
    MAX_EPOCHS = int(os.getenv("SAJATIYA_MAX_EPOCHS", "500"))

    # Corpus preparation
    MERGE_COUNT = int(os.getenv("SAJATIYA_MERGE_COUNT", "2500"))

    # Parallelism
    THREADS = int(os.getenv("SAJATIYA_THREADS", str(os.cpu_count() or 1)))

    @classmethod
    def get_run_defaults(cls) -> Dict[str, Any]:
        """Defaults for RunConfig fields that come from the environment"""
        return {
            "seed": cls.SEED,
            "k": cls.FOLDS,
            "q_len": cls.Q_LEN,
            "context_cap": cls.CONTEXT_CAP,
            "phonetic_table": cls.PHONETIC_TABLE,
            "initial_lr": cls.INITIAL_LR,
            "lr_floor": cls.LR_FLOOR,
            "batch_size": cls.BATCH_SIZE,
            "max_epochs": cls.MAX_EPOCHS,
            "merge_count": cls.MERGE_COUNT,
            "threads": cls.THREADS,
        }


class RunConfig(BaseModel):
    """Everything needed to replay one run; embedded in every report"""

    subcommand: str = ""
    dataset: Optional[str] = None
    candidates: Optional[str] = None
    emb_src: Optional[str] = None
    emb_tgt: Optional[str] = None
    emb_tag: str = "MUSE"
    xl_sources: Dict[str, List[str]] = Field(default_factory=dict)
    context_src: Optional[str] = None
    context_tgt: Optional[str] = None
    stopwords_src: Optional[str] = None
    stopwords_tgt: Optional[str] = None
    phonetic_table: str = Field(default_factory=lambda: Config.PHONETIC_TABLE)
    feature_sets: List[str] = Field(default_factory=lambda: ["WLS"])
    classifier: str = "ffnn"
    seed: int = Field(default_factory=lambda: Config.SEED)
    k: int = Field(default_factory=lambda: Config.FOLDS)
    q_len: int = Field(default_factory=lambda: Config.Q_LEN)
    context_cap: int = Field(default_factory=lambda: Config.CONTEXT_CAP)
    skip_oov_context: bool = False
    initial_lr: float = Field(default_factory=lambda: Config.INITIAL_LR)
    lr_floor: float = Field(default_factory=lambda: Config.LR_FLOOR)
    batch_size: int = Field(default_factory=lambda: Config.BATCH_SIZE)
    max_epochs: int = Field(default_factory=lambda: Config.MAX_EPOCHS)
    hidden_dims: Optional[List[int]] = None
    activations: Optional[List[str]] = None
    merge_count: int = Field(default_factory=lambda: Config.MERGE_COUNT)
    threads: int = Field(default_factory=lambda: Config.THREADS)
    model_path: Optional[str] = None
    out: Optional[str] = None
    format: str = "json"

    def merged(self, overrides: Dict[str, Any]) -> "RunConfig":
        """Return a copy with every non-None override applied"""
        updates = {key: value for key, value in overrides.items() if value is not None}
        data = self.model_dump()
        data.update(updates)
        try:
            return RunConfig.model_validate(data)
        except ValidationError as e:
            raise ConfigurationError(f"invalid run configuration: {e}") from e


def load_run_config(path: Optional[str]) -> RunConfig:
    """Load a RunConfig from a JSON/YAML file, or a saved experiment report"""
    if not path:
        return RunConfig()
    file_path = Path(path)
    if not file_path.exists():
        raise ConfigurationError(f"config file not found: {path}")

    text = file_path.read_text(encoding="utf-8")
    try:
        if file_path.suffix.lower() in (".yaml", ".yml"):
            data = yaml.safe_load(text) or {}
        else:
            data = json.loads(text)
    except (yaml.YAMLError, json.JSONDecodeError) as e:
        raise ConfigurationError(f"cannot parse config file {path}: {e}") from e

    # A saved report carries its configuration under "run_config"
    if isinstance(data, dict) and "run_config" in data:
        data = data["run_config"]
    if not isinstance(data, dict):
        raise ConfigurationError(f"config file {path} must hold a mapping")

    try:
        return RunConfig.model_validate(data)
    except ValidationError as e:
        raise ConfigurationError(f"invalid config file {path}: {e}") from e

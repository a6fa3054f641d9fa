"""Constants module for JSON profile configuration."""

from enum import Enum


class Profile(Enum):
    """Enum class for run profiles."""

    QUICK = "quick"
    STANDARD = "standard"
    ACCEPTANCE = "acceptance"


class TopKey(Enum):
    """Enum class for top-level configuration keys."""

    CORPUS = "corpus"
    PERFORMANCE = "performance"


class CorpusFields(Enum):
    """Enum class for corpus size fields."""

    SEED = "seed"
    SNF_MATRICES = "snf_matrices"
    SNF_MAX_DIM = "snf_max_dim"
    HOM_EXT_PAIRS = "hom_ext_pairs"
    EXTENSIONS = "extensions"
    DIAGRAMS = "diagrams"
    DIAGRAM_MAX_VERTICES = "diagram_max_vertices"
    BRUTE_FORCE_INSTANCES = "brute_force_instances"
    CLASSIFICATION_INSTANCES = "classification_instances"
    Z_ACTIONS = "z_actions"
    NT_MAX_N = "nt_max_n"
    NT_MODULES_PER_N = "nt_modules_per_n"
    BRIDGE_MODULES = "bridge_modules"


class PerformanceFields(Enum):
    """Enum class for Performance configuration fields."""

    PERFORMANCE_THRESHOLD = "performance_threshold"

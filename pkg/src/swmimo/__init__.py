"""Circuit-consistent correlated Rician channels for super-wideband MIMO arrays."""

from .analysis import (
    SnrProfile,
    effective_corr_row,
    eigen_snrs,
    empirical_cdf,
    scattered_power,
    steering_magnitude_profile,
)
from .channel import ChannelRealization, path_gain, steering_vector
from .circuit import (
    ImpedanceSet,
    array_impedance_matrix,
    build_impedance_set,
    coupling_matrix_rx,
    coupling_matrix_tx,
    passivity_margin,
    regime_model,
)
from .config import ConfigError, ScenarioConfig, load_config, parse_config
from .fading import KFactorModel, SpatialCorrModel, build_block_factors, jakes_entry
from .geometry import FrequencyGrid, UlaConfig, build_frequency_grid
from .noise import NoiseModel, build_noise_model
from .simulator import Simulator

__version__ = "0.1.0"

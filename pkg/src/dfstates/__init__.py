"""Photon-added and photon-subtracted displaced Fock states: construction in
a truncated number basis, closed-form operator moments, nonclassicality
witnesses, and Husimi Q evaluation, each backed by an independent
amplitude-vector oracle."""

__version__ = "0.1.0"

from .combinatorics import (
    binomial,
    double_factorial,
    log_factorial,
    pochhammer_half,
    reciprocal_factorial,
    stirling2,
)
from .errors import (
    ConsistencyError,
    ConvergenceError,
    DegenerateStateError,
    DfstatesError,
    DimensionError,
    DomainError,
)
from .husimi import (
    QGrid,
    default_ranges,
    q_grid,
    q_min_scan,
    q_value,
    q_value_overlap,
    render_qgrid,
    save_qgrid,
)
from .moments import (
    DEFAULT_CONTROL,
    MomentValue,
    SeriesControl,
    moment_closed_form,
    moment_oracle,
    normalization_constant,
    quadrature_central_moment,
    quadrature_oracle,
)
from .presets import PRESET_IDS, PRESETS, FigurePreset, figure_preset
from .selftest import grid_state_specs, run_selftest
from .states import (
    ALPHA_MAG_MAX,
    Family,
    FockVector,
    StateSpec,
    build_dfs,
    build_padfs,
    build_psdfs,
    build_state,
    choose_dimension,
    load_amplitudes,
    photon_number_distribution,
    save_amplitudes,
)
from .sweep import SweepConfig, Table, emit, render, run_sweep
from .witnesses import (
    WITNESS_NAMES,
    WitnessResult,
    agarwal_tara_A3,
    antibunching_d,
    higher_order_sub_poissonian,
    hong_mandel_S,
    klyshko_B,
    mandel_q,
)

__all__ = [
    "ALPHA_MAG_MAX",
    "DEFAULT_CONTROL",
    "PRESETS",
    "PRESET_IDS",
    "WITNESS_NAMES",
    "ConsistencyError",
    "ConvergenceError",
    "DegenerateStateError",
    "DfstatesError",
    "DimensionError",
    "DomainError",
    "Family",
    "FigurePreset",
    "FockVector",
    "MomentValue",
    "QGrid",
    "SeriesControl",
    "StateSpec",
    "SweepConfig",
    "Table",
    "agarwal_tara_A3",
    "antibunching_d",
    "binomial",
    "build_dfs",
    "build_padfs",
    "build_psdfs",
    "build_state",
    "choose_dimension",
    "default_ranges",
    "double_factorial",
    "emit",
    "figure_preset",
    "grid_state_specs",
    "higher_order_sub_poissonian",
    "hong_mandel_S",
    "klyshko_B",
    "load_amplitudes",
    "log_factorial",
    "mandel_q",
    "moment_closed_form",
    "moment_oracle",
    "normalization_constant",
    "photon_number_distribution",
    "pochhammer_half",
    "q_grid",
    "q_min_scan",
    "q_value",
    "q_value_overlap",
    "quadrature_central_moment",
    "quadrature_oracle",
    "reciprocal_factorial",
    "render",
    "render_qgrid",
    "run_selftest",
    "run_sweep",
    "save_amplitudes",
    "save_qgrid",
    "stirling2",
    "__version__",
]

"""Monte-Carlo simulation of entanglement-based QKD (E91 and six-state)
over a turbulent free-space channel with orbital-angular-momentum qubits."""

__version__ = "0.1.0"

from .channel import SpiralSpectrum, TransferMatrix, coincidence_matrix, transfer_matrix
from .entanglement import (
    EntanglementReport,
    binary_entropy,
    concurrence,
    entanglement_report,
    eof,
    spin_flip_eigenvalues,
)
from .errors import ConfigurationError, DegenerateEnsembleError
from .grid import GridGeometry
from .link import (
    DecayEstimate,
    LinkBudget,
    cn2l_for_w,
    decay_distance,
    fried_parameter,
    scintillation_strength,
)
from .modes import ComplexField, OamModeSpec, apply_phase, inner_product, sample_lg_mode
from .protocols import (
    E91_A,
    E91_B,
    E91_C,
    SIX_STATE,
    STANDARD_PROTOCOLS,
    KeyRateReport,
    Mub,
    ProtocolSpec,
    build_mubs,
    key_rate,
    key_rate_e91,
    key_rate_report,
    key_rate_six_state,
    qber,
)
from .screens import (
    PhaseScreen,
    TurbulenceSpec,
    generate_screen,
    kolmogorov_psd,
    kolmogorov_structure_function,
    screen_to_csv,
    structure_function,
)
from .states import (
    BASIS_LABELS,
    RealizationResult,
    average_realizations,
    check_density_matrix,
    density_matrix_from_json,
    density_matrix_to_json,
    evolve_realization,
    ideal_bell_state,
)
from .sweep import (
    SWEEP_CSV_HEADER,
    SweepConfig,
    SweepRecord,
    compute_point,
    emit_csv,
    rates_csv,
    realization_screens,
    run_rates_table,
    run_sweep,
)
from .tomography import (
    PROJECTOR_LABELS,
    PROJECTOR_VECTORS,
    TomographyRecord,
    reconstruct,
    record_from_csv,
    record_to_csv,
    simulate_measurements,
)

__all__ = [name for name in dir() if not name.startswith("_")]

"""Exact diagonalization and pair-entanglement analysis of spin graphs.

The package diagonalizes isotropic exchange models on arbitrary weighted
graphs by total-S^z sector, reduces thermal or ground states to two-spin
density matrices, and evaluates Wootters concurrence both numerically and
from closed-form expressions for the completely symmetric states.
"""

from .analytic import (
    SymmetricRdmEntries,
    ZoneSpec,
    concurrence_pairwise_mixed,
    concurrence_symmetric,
    figure1_data,
    figure2_data,
    ground_mixture_entries,
    symmetric_rdm_entries,
    universal_rdm,
    zone,
    zone_mixture_concurrence,
)
from .graphs import (
    ChainParams,
    SpinGraph,
    cube_graph,
    grid_graph,
    is_connected,
    load_graph,
    make_graph,
    open_chain,
    random_graph,
    ring_chain,
    save_graph,
    star_graph,
)
from .hilbert import (
    SectorBasis,
    apply_hamiltonian,
    build_sector_hamiltonian,
    dicke_vector,
    sector_basis,
    sector_dimension,
)
from .rdm import (
    XStateRDM,
    concurrence_wootters,
    concurrence_wootters_raw,
    concurrence_x,
    concurrence_x_raw,
    pair_rdm_mixed,
    pair_rdm_pure,
    sxsx_correlator,
    x_state_from_matrix,
)
from .spectra import (
    MixedStateSpec,
    SectorSpectrum,
    eig_sym,
    energy_gap,
    full_spectrum,
    gibbs_weights,
    ground_degeneracy,
    ground_energy,
    ground_subspace,
)
from .sweep import (
    GeometrySpec,
    GraphThermalEngine,
    SweepConfig,
    VerifyReport,
    builtin_graph_set,
    run_sweep,
    verify_degeneracy,
    verify_universal,
    zero_temperature_scan,
)

__version__ = "0.1.0"

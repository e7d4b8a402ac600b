"""RF ion-trap cross-section simulator.

Thin python layer over the native module: geometry generation for the eight
trap families, a 2D boundary-element field solver, pseudopotential analysis
(trap depth, secular frequencies, RF calibration), cylindrical-harmonic
multipole fits and optical-aperture computation.
"""

from _trenchfield import (
    BemSolution,
    CrossSection,
    PanelMesh,
    TrenchfieldError,
    analyze,
    analyze_config,
    build_cross_section,
    mesh_panels,
    numerical_aperture,
    reference_table,
    regress_table1,
    solve_basis,
    strip_potential,
    sweep,
    sweep_csv,
    validate_solver,
    __version__,
)

FAMILIES = (
    "set_symmetric",
    "set_antisymmetric",
    "simple_trench_symmetric",
    "simple_trench_antisymmetric",
    "stacked_trench_symmetric",
    "stacked_trench_antisymmetric",
    "wafer_symmetric",
    "wafer_antisymmetric",
)

__all__ = [
    "BemSolution",
    "CrossSection",
    "FAMILIES",
    "PanelMesh",
    "TrenchfieldError",
    "analyze",
    "analyze_config",
    "build_cross_section",
    "mesh_panels",
    "numerical_aperture",
    "reference_table",
    "regress_table1",
    "solve_basis",
    "strip_potential",
    "sweep",
    "sweep_csv",
    "validate_solver",
    "__version__",
]

from polder.models.params import ModelParams, SpacetimePoint, MollifierSpec, RegulatorSpec
from polder.models.modes import Mode, ModeSet, DressedState, transverse_dyad
from polder.models.results import (
    KernelValue, QuadResult, EnergyDensityDelta, ForceEstimate, PotentialSample,
    ProfileRow, ProfileGrid, CertifiedPoint, CertificationReport,
)
from polder.models.sweep import SweepConfig

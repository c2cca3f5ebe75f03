"""Exact Reeb orbit index spectra and contact invariants of Brieskorn manifolds."""

from .catalog import (
    Brieskorn,
    Circle,
    Custom,
    Generator,
    OrbitStratum,
    Point,
    SigmaMinus,
    SigmaPlus,
    Sphere,
    StratumKind,
    UnitCotangent,
    Ustilovsky,
    UstilovskyPerturbed,
    appendix_a_mu,
    enumerate_brieskorn,
    enumerate_ustilovsky_perturbed,
    handle_spectrum,
    spectrum,
)
from .exact import EPS, InfRat, Rat, inf_ceil, inf_floor, rat_arith
from .exceptions import CertificateError, ParityError, ValidationError, WindowError
from .homology import (
    AfgBound,
    Justification,
    RankInterval,
    RankResult,
    Unknown,
    afg_bound,
    sh_plus_rank,
    sh_rank,
    sh_rank_bound,
)
from .index import (
    IndexInput,
    brieskorn_mu,
    f_p,
    general_mu,
    iteration_residual,
    mean_index,
    perturbed_mu_cz,
)
from .surgery import (
    Certificate,
    ContactDescriptor,
    EqualParameters,
    MeanEuler,
    connected_sum_rank,
    cor15_outcomes,
    cor17_solve,
    distinguish,
    mean_euler,
    mean_euler_connected_sum,
    mean_euler_copies,
    sweep,
    thm13_sequence,
    transport_afg,
    verify_certificate,
)

__version__ = "0.1.0"

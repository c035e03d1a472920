"""Perfectly safe sharing of dealt secrets over finite planes.

A deck of cards (any confidential items mapped to opaque ids) is dealt to
m+1 agents; public announcements let every agent learn the whole deal while
an eavesdropper's per-card posterior stays exactly at the dealing odds.  The
package provides the protocol, an exact-rational eavesdropper analyzer that
proves (or refutes) that claim by exhaustive enumeration, balanced parameter
search, and a CLI for running sessions, persisting transcripts and rendering
reports.
"""

from .errors import CardshareError
from .fields import FieldElement, FieldSpec, construct_field
from .geometry import (
    Point,
    TransversalHyperplane,
    enumerate_transversal,
    project,
    space_points,
    through_point,
    unique_hyperplane_containing,
)
from .protocol import (
    Assignment,
    Deal,
    DistributionType,
    Projection,
    Run,
    SuitableParams,
    VARIANT_SHIFTED,
    VARIANT_UNSHIFTED,
    alice_token,
    bob_token,
    bob_token_unshifted,
    deal_random,
    infer_hyperplane,
    is_valid_execution,
    reconstruct_deal,
    run_protocol,
    validate_suitable,
)
from .eavesdropper import (
    CandidateDeal,
    SafetyReport,
    brute_force_possible_deals,
    candidate_deal,
    check_perfect_safety,
    check_weak_safety,
    possible_deals,
    probability_report,
)
from .params import BalanceCertificate, balanced_tau, parameter_table, prime_power_above
from .session import Session, SessionResult, finish, new_session, play, step

__version__ = "0.1.0"

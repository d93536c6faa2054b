"""Concrete collectives."""

from .basic import (
    GO_TEAM,
    PRESENT,
    DistributionList,
    DonationBox,
    PredictionMarket,
    Reservation,
    SingleQuestionSurvey,
    Stakeholders,
    distribution_list,
    donation_box,
    prediction_market,
    reservation,
    single_question_survey,
    stakeholders,
)
from .categorical import (
    PRESHEAF_FIXTURES,
    FinSetCartesianClosed,
    FinSetCoproduct,
    PresheafCollective,
    ProbabilisticEvents,
    Simplices,
    finset_cartesian_closed,
    finset_coproduct,
    presheaf_collective,
    presheaf_fixture,
    probabilistic_events,
    simplices,
)
from .schedulers import (
    POTLUCK_VARIANTS,
    BalancedScheduler,
    FCFSScheduler,
    Potluck,
    balanced_scheduler,
    fcfs_scheduler,
    potluck,
)
from .tables import (
    CORRUPTED_FIXTURES,
    TABLE_FIXTURES,
    FiniteCollectiveTable,
    TableCollective,
    table_collective,
    table_fixture,
    tabulate,
)
from .trajectories import Poly, Trajectories, VectorField, ZERO_FIELD, trajectories

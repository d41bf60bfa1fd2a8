"""Exact q-supernomial coefficients, their partition combinatorics,
boson-fermion polynomial identities driven by continued fractions, and
truncated q-series limits, with a verification CLI."""

from .errors import (
    BudgetError,
    ConvergenceError,
    DomainError,
    ParityError,
    QSuperError,
    SupportError,
)
from .qpoly import (
    HalfInt,
    QPoly,
    eval_at_one,
    pochhammer,
    qbinomial,
    substitute_recip,
    truncate,
)
from .supernomial import (
    LVec,
    as_lvec,
    big_t,
    big_t_explicit,
    check_recurrence,
    check_recurrence_n,
    q_supernomial,
    supernomial_q1,
    tilde_t,
)
from .partitions import (
    Partition,
    admissible_genfun,
    durfee_dissection,
    durfee_rectangle,
    enumerate_admissible,
    is_admissible,
)
from .tsdecomp import TSData, build_ts, continued_fraction, takahashi_index
from .identities import (
    AGParams,
    BFParams,
    ag_bosonic,
    ag_fermionic,
    ag_recurrence_check,
    bosonic_b,
    compute_delta,
    dual_ag_check,
    fermionic_f,
    make_bf,
    stability_check,
)
from .qseries import (
    BranchParams,
    SeriesCtx,
    StringParams,
    b_function,
    branching_function,
    inv_pochhammer,
    limit_check_supernomial,
    string_function,
    vira_char_limit,
)
from .matprod import build_family, matrix_identity_check

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]

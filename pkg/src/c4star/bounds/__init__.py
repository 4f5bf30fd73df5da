from .formulas import (
    DomainTooSmall,
    PreconditionViolated,
    ceil_sqrt,
    counting_applies,
    thm5_applies,
    ub_cop3,
    ub_par3,
    ub_pro2,
    ub_square,
    ub_thm5,
    ub_unified,
)
from .propagate import (
    OutOfRange,
    ReplayError,
    dependencies,
    explain,
    lemma1_upper,
    propagate,
    lower_bound_gaps,
    replay,
)
from .table import (
    BoundInterval,
    BoundTable,
    DerivationRecord,
    Inconsistent,
    SeedFileMissing,
    SeedInconsistent,
    read_seed_file,
    seed_table,
)
from ..extremal import ExTable


def ub_counting(n: int, order: int, ex_table: ExTable) -> DerivationRecord | None:
    """hi(n) <= order when no C4-free graph on ``order`` vertices has enough edges for min degree order - n."""
    if not order > n >= 1:
        raise ValueError(f"needs order > n >= 1, got order={order}, n={n}")
    e = ex_table.get(order)
    if e is None or not e.confirmed or not counting_applies(n, order, e.value):
        return None
    return DerivationRecord(
        "counting", n, "hi", order,
        (("order", order), ("n", n), ("ex", e.value), ("ex_kind", e.kind), ("ex_provenance", e.provenance)),
    )

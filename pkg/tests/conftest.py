import pytest

from infobell.model import (
    MASK_A_B,
    MASK_A_BP,
    MASK_AP_B,
    MASK_AP_BP,
    ExperimentMatrix,
    OutcomeRecord,
)

MASKS = {
    "ab": MASK_A_B,
    "abp": MASK_A_BP,
    "apbp": MASK_AP_BP,
    "apb": MASK_AP_B,
}


def matrix_from_columns(a, ap, b, bp, masks=None):
    """Build an ExperimentMatrix from per-column bit lists."""
    n = len(a)
    if masks is None:
        masks = [MASK_AP_BP] * n
    elif isinstance(masks, (list, tuple)) and masks and isinstance(masks[0], str):
        masks = [MASKS[m] for m in masks]
    outcomes = tuple(
        OutcomeRecord(a[i], ap[i], b[i], bp[i], masks[i]) for i in range(n)
    )
    return ExperimentMatrix(outcomes)


@pytest.fixture
def spec_example_matrix():
    """The hand-worked 4-outcome example: a=(0,1,1,1), b=(0,0,1,1),
    b'=(0,1,1,1), a'=(1,1,1,1)."""
    return matrix_from_columns(
        a=[0, 1, 1, 1], ap=[1, 1, 1, 1], b=[0, 0, 1, 1], bp=[0, 1, 1, 1]
    )

"""Kernel backend selection.

The compiled extension is preferred when importable; set INFOBELL_KERNEL to
``pure`` or ``fast`` to force a backend (``fast`` raises if unavailable).
Both backends implement the same functions with identical numeric results:

    generate_experiment, deficit_parts, campaign_chunk, enum_distribution,
    canonical_key, mix_seed, backend_name
"""
import os

from . import pure

_choice = os.environ.get("INFOBELL_KERNEL", "auto").lower()

if _choice == "pure":
    _impl = pure
elif _choice in ("fast", "auto"):
    try:
        from . import fast as _impl  # type: ignore[attr-defined]
    except ImportError:
        if _choice == "fast":
            raise ImportError(
                "INFOBELL_KERNEL=fast but the compiled kernel is not built; "
                "reinstall with a C compiler or use INFOBELL_KERNEL=pure"
            )
        _impl = pure
else:
    raise ValueError(f"INFOBELL_KERNEL must be auto, pure, or fast, not {_choice!r}")


def get_backend(name: str | None = None):
    """Return a kernel module: the active one, or an explicit backend by name."""
    if name in (None, "active"):
        return _impl
    if name == "pure":
        return pure
    if name == "fast":
        from . import fast  # noqa: F811

        return fast
    raise ValueError(f"unknown kernel backend {name!r}")


generate_experiment = _impl.generate_experiment
deficit_parts = _impl.deficit_parts
campaign_chunk = _impl.campaign_chunk
enum_distribution = _impl.enum_distribution
canonical_key = _impl.canonical_key
mix_seed = _impl.mix_seed
backend_name = _impl.backend_name

STOCHASTIC = pure.STOCHASTIC
ANTICORRELATED = pure.ANTICORRELATED
FULL_MATRIX = pure.FULL_MATRIX
CROSS_TABLE = pure.CROSS_TABLE
SINGLE = pure.SINGLE
THREE = pure.THREE
FOUR = pure.FOUR
ZERO_TOL = pure.ZERO_TOL

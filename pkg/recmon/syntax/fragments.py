"""
Fragment classification of recHML formulas.
"""
from recmon.errors import FragmentError, OpenTermError, UnguardedError
from recmon.models.schemas import Fragment
from recmon.syntax import formula as fm


def classify(f: fm.Formula) -> Fragment:
    kinds = {type(node) for node in fm.subformulas(f)}
    has_max = fm.Max in kinds
    has_min = fm.Min in kinds
    has_box = fm.Box in kinds
    has_diamond = fm.Diamond in kinds
    has_and = fm.And in kinds
    has_or = fm.Or in kinds

    ltmu_s = not has_min
    ltmu_c = not has_max
    return Fragment(
        HML=not (has_max or has_min or fm.Var in kinds),
        ltmuS=ltmu_s,
        ltmuC=ltmu_c,
        ftmuS=ltmu_s and not has_diamond,
        ftmuC=ltmu_c and not has_box,
        sHML=ltmu_s and not has_diamond and not has_or,
        cHML=ltmu_c and not has_box and not has_and,
        closed=fm.is_closed(f),
        guarded=fm.is_guarded(f),
    )


def require(f: fm.Formula, *fragments: str, operation: str = "this operation") -> Fragment:
    """Check that ``f`` is closed, guarded and in one of ``fragments``."""
    fragment = classify(f)
    if not fragment.closed:
        raise OpenTermError(f"{operation} needs a closed formula; free: {sorted(fm.free_vars(f))}")
    if not fragment.guarded:
        raise UnguardedError(f"{operation} needs a guarded formula")
    if fragments and not any(getattr(fragment, name) for name in fragments):
        raise FragmentError(f"{operation} needs a formula in {' or '.join(fragments)}")
    return fragment


def require_evaluable(f: fm.Formula, operation: str = "evaluation") -> None:
    require(f, operation=operation)

"""Stable ``key=value`` analysis reports (element labels are 1-based)."""
from __future__ import annotations

from .analysis import (automorphic_class, derived_series, inn, is_simple, is_solvable_loop, mlt,
                       nilpotency_class, nuclei, upper_central_series)
from .associated import PropertyId, has_property
from .errors import NoTwoSidedInverse, NotPowerAssociative, ResourceLimit
from .perm import DEFAULT_CAP
from .table import LoopTable


def _b(v: bool) -> str:
    return "true" if v else "false"


def _set(S) -> str:
    return "{" + ",".join(str(x + 1) for x in sorted(S)) + "}"


def analysis_report(Q: LoopTable, cap: int = DEFAULT_CAP) -> list[tuple[str, str]]:
    ac = automorphic_class(Q)
    try:
        simple = is_simple(Q, cap=cap)
    except ResourceLimit:
        simple = is_simple(Q, cross_check=False)
    items = [
        ("order", str(Q.n)),
        ("automorphic", _b(ac.full)),
        ("nonassociative", _b(not Q.is_associative)),
        ("commutative", _b(Q.is_commutative)),
        ("simple", _b(simple)),
        ("left_automorphic", _b(ac.left)),
        ("right_automorphic", _b(ac.right)),
        ("middle_automorphic", _b(ac.middle)),
        ("two_sided_inverses", _b(Q.has_two_sided_inverses)),
        ("uniquely_2_divisible", _b(Q.is_uniquely_2_divisible())),
    ]
    for prop in PropertyId:
        try:
            val = _b(has_property(Q, prop))
        except NoTwoSidedInverse:
            val = "n/a"
        items.append((prop.value, val))
    try:
        items.append(("order_profile", ",".join(map(str, Q.order_profile))))
    except NotPowerAssociative:
        items.append(("order_profile", "n/a"))
    nu = nuclei(Q)
    for key in ("left", "middle", "right", "nucleus", "center"):
        items.append((f"{key}_nucleus" if key in ("left", "middle", "right") else key,
                      _set(getattr(nu, key))))
    items.append(("nuclei_normal", ",".join(
        f"{k}:{_b(v)}" for k, v in sorted(nu.normal.items()))))
    items.append(("derived_series", ",".join(str(D.n) for D in derived_series(Q))))
    items.append(("solvable", _b(is_solvable_loop(Q))))
    items.append(("upper_central_series", ",".join(str(len(Z)) for Z in upper_central_series(Q))))
    nc = nilpotency_class(Q)
    items.append(("nilpotency_class", "none" if nc is None else str(nc)))
    try:
        items.append(("mlt_order", str(mlt(Q, cap).order)))
        items.append(("inn_order", str(inn(Q, cap).order)))
    except ResourceLimit:
        items.append(("mlt_order", "cap_exceeded"))
        items.append(("inn_order", "cap_exceeded"))
    return items


def format_report(items: list[tuple[str, str]], label: str | None = None) -> str:
    head = " ".join(f"{k}={v}" for k, v in items[:5])
    lines = [f"label={label}"] if label else []
    lines.append(head)
    lines += [f"{k}={v}" for k, v in items[5:]]
    return "\n".join(lines) + "\n"

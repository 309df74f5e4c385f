"""Registry of verified identities and the exact comparison machinery.

Every identity is encoded as one or more (lhs, rhs) evaluator pairs producing
canonical Q[lam][x] polynomials per (n, k); a check is a structural equality
walk over a parameter grid, with no tolerances anywhere.  Suspected-typo
encodings are registered as named variants next to the printed form, never in
place of it: the verdict matrix itself is the product.

Variant classes:

* ``printed``    the formula with its exact printed index ranges and signs
* ``corrected``  a single-site alternative (index transposition, sign flip,
                 argument rescaling) registered alongside a suspect printing
* ``oracle``     a printed double sum compared against its own generating
                 expression evaluated by direct series composition
* ``reduction``  parameter reductions and specialization cross-checks
                 (k=1 collapses, lam=0 limits, the poly-Bernoulli k=1 relation)
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Iterable, Sequence

from .algebra import (
    LambdaPoly,
    OrderExceeded,
    TruncatedSeries,
    XLambdaPoly,
)
from .families import (
    UnknownIdentity,
    closed_form_rhs,
    deg_poly_euler,
    poly_euler,
    poly_euler_number,
    polylog_stirling_coeff,
    t34_lhs_oracle_series,
    t34_rhs_oracle_series,
    t35_lhs_oracle_series,
    t35_rhs_oracle_series,
    _lhs_t29,
    _lhs_t33,
    _lhs_t34,
    _lhs_t35,
    _rhs_t34,
    _rhs_t35,
)
from .sequences import (
    auto_order,
    classical_family,
    degenerate_family,
    exp_series,
    poly_bernoulli,
    poly_bernoulli_mirror,
    polylog_compose,
    stirling_table,
)

#: Default k grid for the suite (six values).
DEFAULT_K_SET: tuple[int, ...] = (-2, -1, 0, 1, 2, 3)

#: Default n ceilings: classical identities, and degenerate ones (symbolic
#: lam coefficients grow, so the ceiling is lower).
N_CLASSICAL = 12
N_DEGENERATE = 10

#: Identities gated by the verify exit code.  T3.3 is additionally gated at
#: n = 1 only (see must_pass_ok).
MUST_PASS_IDS = frozenset(
    {
        "R-k1-classical",
        "R-k1-degenerate",
        "R-lambda0-stirling1",
        "R-lambda0-stirling2",
        "R-lambda0-euler",
        "R-lambda0-bernoulli",
        "R-lambda0-poly-bernoulli",
        "R-lambda0-poly-euler",
        "L2.1",
        "T2.6",
        "T2.7",
        "T3.1",
    }
)

Evaluator = Callable[[int, int, int], XLambdaPoly]


@dataclass(frozen=True)
class IdentitySpec:
    """One registered check: an id, a variant tag, and two evaluators."""

    id: str
    variant: str
    variant_class: str
    description: str
    n_min: int
    n_cap: int
    fixed_k: tuple[int, ...] | None
    lhs: Evaluator
    rhs: Evaluator


@dataclass
class IdentityReport:
    """Verdict for one (id, variant) over a checked grid."""

    id: str
    variant: str
    variant_class: str
    description: str
    verdict: str
    n_min: int
    n_max: int
    k_set: tuple[int, ...]
    checked_count: int
    first_failure: tuple[int, int, XLambdaPoly] | None
    runtime_ms: float

    @property
    def empty(self) -> bool:
        return self.checked_count == 0


# ---------------------------------------------------------------------------
# evaluators that are not plain closed forms
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def _li_expansion_series(k: int, order: int) -> TruncatedSeries:
    return polylog_compose(k, TruncatedSeries.one(order) - exp_series(order, -2))


def _lhs_l21(n: int, k: int, order: int) -> XLambdaPoly:
    return _li_expansion_series(k, order).egf_coeff(n)


def _rhs_l21(n: int, k: int, order: int) -> XLambdaPoly:
    return XLambdaPoly.const(polylog_stirling_coeff(n, k))


def _stirling_row(kind: str, degenerate: bool, n: int, at_zero: bool) -> XLambdaPoly:
    """Row n of a Stirling table packed as sum(S(n,l) x^l)."""
    table = stirling_table(kind, degenerate)
    if at_zero:
        coeffs = [LambdaPoly.const(table.entry(n, l).eval_at(0)) for l in range(n + 1)]
    else:
        coeffs = [table.entry(n, l) for l in range(n + 1)]
    return XLambdaPoly(coeffs)


def _fixed(value_fn: Callable[[int, int], XLambdaPoly]) -> Evaluator:
    return lambda n, k, order: value_fn(n, k)


# ---------------------------------------------------------------------------
# registry
# ---------------------------------------------------------------------------


def register_builtin() -> list[IdentitySpec]:
    """The complete, duplicate-free registry of built-in checks."""

    specs: list[IdentitySpec] = []

    def add(
        ident: str,
        variant: str,
        variant_class: str,
        description: str,
        lhs: Evaluator,
        rhs: Evaluator,
        n_min: int = 0,
        degenerate: bool = False,
        fixed_k: tuple[int, ...] | None = None,
    ) -> None:
        specs.append(
            IdentitySpec(
                id=ident,
                variant=variant,
                variant_class=variant_class,
                description=description,
                n_min=n_min,
                n_cap=N_DEGENERATE if degenerate else N_CLASSICAL,
                fixed_k=fixed_k,
                lhs=lhs,
                rhs=rhs,
            )
        )

    def rhs_closed(ident: str, variant: str = "printed") -> Evaluator:
        return lambda n, k, order: closed_form_rhs(ident, n, k, variant)

    pe = _fixed(poly_euler)
    pe_num = _fixed(poly_euler_number)
    dpe = _fixed(deg_poly_euler)

    add(
        "L2.1",
        "printed",
        "printed",
        "Expansion coefficients of the polylogarithm at 1-e^(-2t): "
        "Stirling-sum closed form vs direct series composition",
        _lhs_l21,
        _rhs_l21,
        n_min=1,
    )
    add(
        "T2.2",
        "printed",
        "printed",
        "Poly-Euler polynomial as a triple Stirling sum over Bernoulli "
        "polynomials at half argument",
        pe,
        rhs_closed("T2.2"),
    )
    add(
        "C2.3",
        "printed",
        "printed",
        "Poly-Euler number form of the Bernoulli triple sum (x=0)",
        pe_num,
        rhs_closed("C2.3"),
    )
    add(
        "T2.4",
        "printed",
        "printed",
        "Poly-Euler polynomial as a Stirling sum over Euler polynomials",
        pe,
        rhs_closed("T2.4"),
    )
    add(
        "C2.5",
        "printed",
        "printed",
        "Poly-Euler number form of the Euler-polynomial sum (x=0)",
        pe_num,
        rhs_closed("C2.5"),
    )
    add(
        "T2.6",
        "printed",
        "printed",
        "Binomial expansion of the poly-Euler polynomial in powers of x",
        pe,
        rhs_closed("T2.6"),
    )
    add(
        "T2.7",
        "printed",
        "printed",
        "Formal x-derivative lowers the index: d/dx member_n = n * member_{n-1}",
        _fixed(lambda n, k: poly_euler(n, k).derivative_x()),
        rhs_closed("T2.7"),
    )
    add(
        "T2.8",
        "printed",
        "printed",
        "Poly-Euler polynomial via classical falling factorials and Stirling "
        "numbers, inner sum indexed as printed",
        pe,
        rhs_closed("T2.8"),
    )
    add(
        "T2.8",
        "transposed",
        "corrected",
        "Same sum with the Stirling indices transposed",
        pe,
        rhs_closed("T2.8", "transposed"),
    )
    add(
        "T2.9",
        "printed",
        "printed",
        "Shifted-argument poly-Euler sum vs a poly-Bernoulli difference, "
        "arguments as printed",
        _fixed(_lhs_t29),
        rhs_closed("T2.9"),
        n_min=1,
    )
    add(
        "T2.9",
        "rescaled-argument",
        "corrected",
        "Same with poly-Bernoulli arguments halved to undo the 2t rescale",
        _fixed(_lhs_t29),
        rhs_closed("T2.9", "rescaled-argument"),
        n_min=1,
    )
    add(
        "R-k1-classical",
        "reduction",
        "reduction",
        "Index 1 collapses to the classical Euler polynomials",
        pe,
        _fixed(lambda n, k: classical_family("euler", n)),
        fixed_k=(1,),
    )
    add(
        "T3.1",
        "printed",
        "printed",
        "Binomial convolution with degenerate falling factorials",
        dpe,
        rhs_closed("T3.1"),
        degenerate=True,
    )
    add(
        "T3.2",
        "printed",
        "printed",
        "Degenerate analogue via classical falling factorials and degenerate "
        "Stirling numbers, inner sum indexed as printed",
        dpe,
        rhs_closed("T3.2"),
        degenerate=True,
    )
    add(
        "T3.2",
        "transposed",
        "corrected",
        "Same sum with the Stirling indices transposed",
        dpe,
        rhs_closed("T3.2", "transposed"),
        degenerate=True,
    )
    add(
        "T3.3",
        "printed",
        "printed",
        "Degenerate poly-Euler numbers at arguments 1 and 0 vs a degenerate "
        "Stirling sum",
        _fixed(_lhs_t33),
        rhs_closed("T3.3"),
        n_min=1,
        degenerate=True,
    )
    add(
        "T3.4",
        "printed",
        "printed",
        "Two printed double sums from substituting 1-e_lam(-2t) into the "
        "defining relation",
        _fixed(_lhs_t34),
        _fixed(_rhs_t34),
        n_min=1,
        degenerate=True,
    )
    add(
        "T3.4",
        "series-oracle-lhs",
        "oracle",
        "First printed sum vs its generating expression composed directly",
        _fixed(_lhs_t34),
        lambda n, k, order: t34_lhs_oracle_series(k, order).egf_coeff(n),
        n_min=1,
        degenerate=True,
    )
    add(
        "T3.4",
        "series-oracle-rhs",
        "oracle",
        "Second printed sum vs its generating expression composed directly",
        _fixed(_rhs_t34),
        lambda n, k, order: t34_rhs_oracle_series(k, order).egf_coeff(n),
        n_min=1,
        degenerate=True,
    )
    add(
        "T3.5",
        "printed",
        "printed",
        "Two printed double sums from substituting -(1/2)log_lam(1+t) into "
        "the defining relation",
        _fixed(_lhs_t35),
        _fixed(_rhs_t35),
        n_min=1,
        degenerate=True,
    )
    add(
        "T3.5",
        "series-oracle-lhs",
        "oracle",
        "First printed sum vs its generating expression composed directly",
        _fixed(_lhs_t35),
        lambda n, k, order: t35_lhs_oracle_series(k, order).egf_coeff(n),
        n_min=1,
        degenerate=True,
    )
    add(
        "T3.5",
        "series-oracle-rhs",
        "oracle",
        "Second printed sum vs its generating expression composed directly",
        _fixed(_rhs_t35),
        lambda n, k, order: t35_rhs_oracle_series(k, order).egf_coeff(n),
        n_min=1,
        degenerate=True,
    )
    add(
        "T3.6",
        "printed",
        "printed",
        "Degenerate poly-Euler numbers via degenerate poly-Bernoulli and "
        "Euler numbers, signs as printed",
        _fixed(lambda n, k: deg_poly_euler(n, k).specialize(x=0)),
        rhs_closed("T3.6"),
        degenerate=True,
    )
    add(
        "T3.6",
        "sign-corrected",
        "corrected",
        "Same sum with the inner sign attached to the inner index",
        _fixed(lambda n, k: deg_poly_euler(n, k).specialize(x=0)),
        rhs_closed("T3.6", "sign-corrected"),
        degenerate=True,
    )
    add(
        "R-k1-degenerate",
        "reduction",
        "reduction",
        "Index 1 collapses to the degenerate Euler polynomials",
        dpe,
        _fixed(lambda n, k: degenerate_family("euler", n)),
        degenerate=True,
        fixed_k=(1,),
    )
    add(
        "R-lambda0-stirling1",
        "reduction",
        "reduction",
        "Degenerate Stirling numbers of the first kind reduce at lam=0",
        _fixed(lambda n, k: _stirling_row("first", True, n, at_zero=True)),
        _fixed(lambda n, k: _stirling_row("first", False, n, at_zero=False)),
        degenerate=True,
        fixed_k=(0,),
    )
    add(
        "R-lambda0-stirling2",
        "reduction",
        "reduction",
        "Degenerate Stirling numbers of the second kind reduce at lam=0",
        _fixed(lambda n, k: _stirling_row("second", True, n, at_zero=True)),
        _fixed(lambda n, k: _stirling_row("second", False, n, at_zero=False)),
        degenerate=True,
        fixed_k=(0,),
    )
    add(
        "R-lambda0-euler",
        "reduction",
        "reduction",
        "Degenerate Euler polynomials reduce at lam=0",
        _fixed(lambda n, k: degenerate_family("euler", n).specialize(lam=0)),
        _fixed(lambda n, k: classical_family("euler", n)),
        degenerate=True,
        fixed_k=(0,),
    )
    add(
        "R-lambda0-bernoulli",
        "reduction",
        "reduction",
        "Degenerate Bernoulli polynomials reduce at lam=0",
        _fixed(lambda n, k: degenerate_family("bernoulli", n).specialize(lam=0)),
        _fixed(lambda n, k: classical_family("bernoulli", n)),
        degenerate=True,
        fixed_k=(0,),
    )
    add(
        "R-lambda0-poly-bernoulli",
        "reduction",
        "reduction",
        "Degenerate poly-Bernoulli polynomials reduce at lam=0 to the "
        "classical construction with the same argument signs",
        _fixed(lambda n, k: poly_bernoulli(n, k, degenerate=True).specialize(lam=0)),
        _fixed(poly_bernoulli_mirror),
        degenerate=True,
    )
    add(
        "R-lambda0-poly-euler",
        "reduction",
        "reduction",
        "Degenerate poly-Euler polynomials reduce at lam=0",
        _fixed(lambda n, k: deg_poly_euler(n, k).specialize(lam=0)),
        pe,
        degenerate=True,
    )
    add(
        "PB-k1",
        "printed",
        "printed",
        "Index-1 poly-Bernoulli numbers vs minus the Bernoulli numbers, "
        "the relation as printed",
        _fixed(lambda n, k: poly_bernoulli(n, 1).specialize(x=0)),
        _fixed(lambda n, k: -classical_family("bernoulli", n).specialize(x=0)),
        fixed_k=(1,),
    )
    add(
        "PB-k1",
        "computed",
        "reduction",
        "Index-1 poly-Bernoulli numbers equal the Bernoulli numbers of "
        "t/(e^t-1) (B_1 = -1/2 convention)",
        _fixed(lambda n, k: poly_bernoulli(n, 1).specialize(x=0)),
        _fixed(lambda n, k: classical_family("bernoulli", n).specialize(x=0)),
        fixed_k=(1,),
    )

    seen = set()
    for spec in specs:
        key = (spec.id, spec.variant)
        if key in seen:
            raise ValueError(f"duplicate registration {key}")
        seen.add(key)
    return specs


def core_identity_ids(specs: Iterable[IdentitySpec] | None = None) -> set[str]:
    """Distinct lemma/theorem/corollary ids, ignoring variants and reductions."""
    specs = register_builtin() if specs is None else list(specs)
    return {s.id for s in specs if not s.id.startswith(("R-", "PB-"))}


# ---------------------------------------------------------------------------
# checking
# ---------------------------------------------------------------------------


def check_identity(
    spec: IdentitySpec,
    n_max: int | None = None,
    k_set: Sequence[int] | None = None,
    order: int | None = None,
) -> IdentityReport:
    """Compare LHS and RHS over the grid, in increasing n, stopping at the
    first mismatch.  Deterministic; exact structural comparison."""
    eff_n_max = spec.n_cap if n_max is None else n_max
    ks = spec.fixed_k if spec.fixed_k is not None else tuple(k_set or DEFAULT_K_SET)
    eff_order = auto_order(max(eff_n_max, 0)) if order is None else order
    if eff_order < eff_n_max + 2:
        raise OrderExceeded(
            f"order {eff_order} is below n_max + 2 = {eff_n_max + 2}"
        )
    started = time.perf_counter()
    checked = 0
    failure: tuple[int, int, XLambdaPoly] | None = None
    for n in range(spec.n_min, eff_n_max + 1):
        for k in ks:
            lhs = spec.lhs(n, k, eff_order)
            rhs = spec.rhs(n, k, eff_order)
            checked += 1
            if lhs != rhs:
                failure = (n, k, lhs - rhs)
                break
        if failure is not None:
            break
    runtime_ms = (time.perf_counter() - started) * 1000.0
    return IdentityReport(
        id=spec.id,
        variant=spec.variant,
        variant_class=spec.variant_class,
        description=spec.description,
        verdict="fail" if failure is not None else "pass",
        n_min=spec.n_min,
        n_max=eff_n_max,
        k_set=ks,
        checked_count=checked,
        first_failure=failure,
        runtime_ms=runtime_ms,
    )


def run_suite(
    n_max: int | None = None,
    k_set: Sequence[int] | None = None,
    variants: str = "all",
    order: int | None = None,
    ids: Sequence[str] | None = None,
) -> list[IdentityReport]:
    """Check every registered identity and return reports ordered by id.

    ``n_max=None`` uses the per-identity defaults (12 classical, 10
    degenerate); an explicit value applies uniformly.  ``variants`` is
    ``"all"`` or ``"printed-only"`` (printed forms and reductions, skipping
    corrected variants and series oracles).
    """
    if variants not in ("all", "printed-only"):
        raise ValueError(f"unknown variants mode {variants!r}")
    specs = register_builtin()
    if ids is not None:
        known = {s.id for s in specs}
        unknown = [i for i in ids if i not in known]
        if unknown:
            raise UnknownIdentity(f"unknown identity id(s): {', '.join(unknown)}")
        specs = [s for s in specs if s.id in set(ids)]
    if variants == "printed-only":
        specs = [s for s in specs if s.variant_class in ("printed", "reduction")]
    reports = [check_identity(s, n_max=n_max, k_set=k_set, order=order) for s in specs]
    reports.sort(key=lambda r: (r.id, r.variant))
    return reports


def must_pass_ok(reports: Iterable[IdentityReport]) -> bool:
    """Exit-code gate: the MUST-pass identities, with T3.3 gated at n=1."""
    for r in reports:
        if r.id == "T3.3" and r.variant == "printed":
            if r.verdict == "fail" and r.first_failure is not None and r.first_failure[0] <= 1:
                return False
        elif r.id in MUST_PASS_IDS and r.variant_class in ("printed", "reduction"):
            if r.verdict == "fail":
                return False
    return True


def summarize(reports: Sequence[IdentityReport]) -> dict:
    by_class: dict[str, dict[str, int]] = {}
    failed = 0
    empty = 0
    for r in reports:
        bucket = by_class.setdefault(r.variant_class, {"passed": 0, "failed": 0})
        if r.verdict == "fail":
            bucket["failed"] += 1
            failed += 1
        else:
            bucket["passed"] += 1
        if r.empty:
            empty += 1
    return {
        "total": len(reports),
        "passed": len(reports) - failed,
        "failed": failed,
        "empty": empty,
        "discrepancy_count": failed,
        "must_pass_ok": must_pass_ok(reports),
        "by_class": by_class,
    }


def reports_to_document(
    reports: Sequence[IdentityReport], config: dict, generated_at: str
) -> dict:
    """The structured verdict document; rationals rendered as "p/q" strings."""
    from .serialize import poly_to_lists

    rows = []
    for r in reports:
        failure = None
        if r.first_failure is not None:
            n, k, diff = r.first_failure
            failure = {"n": n, "k": k, "difference": poly_to_lists(diff)}
        rows.append(
            {
                "id": r.id,
                "variant": r.variant,
                "variant_class": r.variant_class,
                "description": r.description,
                "verdict": r.verdict,
                "checked_range": {
                    "n_min": r.n_min,
                    "n_max": r.n_max,
                    "k_set": list(r.k_set),
                },
                "checked_count": r.checked_count,
                "empty": r.empty,
                "first_failure": failure,
                "runtime_ms": round(r.runtime_ms, 3),
            }
        )
    return {
        "schema": "verdict-report/1",
        "generated_at": generated_at,
        "config": config,
        "reports": rows,
        "summary": summarize(reports),
    }

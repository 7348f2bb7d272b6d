from __future__ import annotations

import logging
import random
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, List, Optional, Sequence, Tuple

from ..config import MIN_PROPERTY_CASES, settings
from ..errors import TorelliError
from ..models.multivector import MultiVector
from ..models.report import CheckResult, CheckStatus, RunReport
from ..models.surface import Configuration
from .config_parser import parse_config, serialize_config
from .exterior import contract, lefschetz, lefschetz_commutator_constant, omega_form, stabilize, wedge
from .expr import parse_expr, serialize
from .fixtures import (
    SHIPPED,
    add_basepoint_handle,
    load_fixture,
    nested_chain,
    random_nested_chain,
    relabel_ids,
    single_bounding_pair,
    swap_pairs,
    with_cycle_order,
    with_separating_twist,
)
from .invariants import (
    certificate_report,
    certify,
    coefficients_even,
    compare,
    gysin_tau,
    tau0,
    tau_abelian,
    tau_by_recursion,
    tauJ_bp,
    tauJ_rank_check,
    tauJ_star,
)
from .sampling import random_element, random_grade, random_sp_product
from .sp_action import (
    contraction_nullity,
    induced_action,
    irrep_dimension,
    pair_shear,
    pair_swap,
    span_summary,
)
from .surface import classify, validate

logger = logging.getLogger(__name__)


@dataclass
class VerifyContext:
    fixtures_dir: Path
    golden_dir: Path
    time_budget: float
    property_cases: int
    seed: int

    @classmethod
    def from_settings(cls, **overrides) -> "VerifyContext":
        values = dict(
            fixtures_dir=settings.fixtures_path,
            golden_dir=settings.golden_path,
            time_budget=settings.time_budget,
            property_cases=settings.property_cases,
            seed=settings.seed,
        )
        values.update({k: v for k, v in overrides.items() if v is not None})
        return cls(**values)

    def fixture(self, name: str) -> Configuration:
        return load_fixture(name, self.fixtures_dir)


@dataclass(frozen=True)
class Check:
    """
    One verification entry.

    run() returns the actual canonical text; the expected text lives in
    golden/<id>.txt below its '# ref:' and '# provenance:' header lines.
    The reported ref is the golden '# ref:' header, which names the source
    statement before the title.
    """

    id: str
    title: str
    tags: Tuple[str, ...]
    run: Callable[[VerifyContext], str] = field(compare=False)

    def matches(self, needle: str) -> bool:
        n = needle.strip().lower()
        return not n or n in self.tags or n in self.id


# -------------------------
# Golden files
# -------------------------

@dataclass(frozen=True)
class Golden:
    ref: str
    provenance: str
    body: str


def read_golden(path: Path) -> Golden:
    ref, provenance = "", ""
    body: List[str] = []
    for raw in path.read_text(encoding="utf-8").splitlines():
        if raw.startswith("# ref:"):
            ref = raw[len("# ref:"):].strip()
        elif raw.startswith("# provenance:"):
            provenance = raw[len("# provenance:"):].strip()
        elif raw.startswith("#"):
            continue
        else:
            body.append(raw.rstrip())
    return Golden(ref=ref, provenance=provenance, body="\n".join(body).strip())


# -------------------------
# Helpers
# -------------------------

def _lines(items: Sequence[str]) -> str:
    return "\n".join(items)


def _value(x: MultiVector) -> str:
    return serialize(x)


def _run_property(
    ctx: VerifyContext,
    name: str,
    case: Callable[[random.Random], Optional[str]],
) -> str:
    """Run `case` on property_cases seeded generators; 'ok' or the first failure."""
    if ctx.property_cases < MIN_PROPERTY_CASES:
        return f"only {ctx.property_cases} cases (need {MIN_PROPERTY_CASES})"
    for i in range(ctx.property_cases):
        rng = random.Random(ctx.seed * 1_000 + i)
        failure = case(rng)
        if failure:
            logger.info("property %s failed on case %s: %s", name, i, failure)
            return f"case {i}: {failure}"
    return "ok"


# -------------------------
# Closed forms
# -------------------------

def check_tau0(ctx: VerifyContext) -> str:
    out = []
    for g in range(2, 6):
        value = tau0(g)
        same = "" if value == omega_form(g) else "  MISMATCH omega"
        out.append(f"g={g}: {_value(value)}{same}")
    return _lines(out)


SINGLE_BP_CASES = ((2, 1), (3, 1), (3, 2), (4, 2), (4, 3), (5, 2), (5, 3))


def check_johnson_formula(ctx: VerifyContext) -> str:
    out = []
    configs = [single_bounding_pair(g, far) for g, far in SINGLE_BP_CASES]
    configs.append(ctx.fixture("single_bp_g2"))
    for c in configs:
        (bp_id,) = c.cycle
        value = tauJ_bp(c, bp_id)
        same = "" if tau_abelian(c) == value else f"  MISMATCH tau={_value(tau_abelian(c))}"
        out.append(f"{c.label()}: {_value(value)}{same}")
    return _lines(out)


NESTED_FIXTURES = ("nested_g4_k3", "nested_g4_k2", "nested_gysin_g4", "closest_a_g5", "closest_b_g5", "nested_g6_k3")


def check_nested_recursion(ctx: VerifyContext) -> str:
    out = []
    for name in NESTED_FIXTURES:
        c = ctx.fixture(name)
        value = tau_abelian(c)
        same = "" if tau_by_recursion(c) == value else "  MISMATCH recursion"
        out.append(f"{name}: {_value(value)}{same}")
    rng = random.Random(ctx.seed)
    agree = 0
    for _ in range(50):
        c = random_nested_chain(rng, max_genus=6)
        if tau_abelian(c) == tau_by_recursion(c):
            agree += 1
    out.append(f"random nested chains: {agree}/50 agree")
    return _lines(out)


def check_vanishing(ctx: VerifyContext) -> str:
    configs = [
        ctx.fixture("ring_g3"),
        ctx.fixture("side_by_side_g4"),
        ctx.fixture("septwist_g3"),
        with_separating_twist(ctx.fixture("nested_g4_k2"), [2], name="nested_g4_k2+sep"),
        with_separating_twist(ctx.fixture("closest_a_g5"), [5], name="closest_a_g5+sep"),
    ]
    return _lines(f"{c.label()}: {classify(c)} {_value(tau_abelian(c))}" for c in configs)


def check_kernel_certificate(ctx: VerifyContext) -> str:
    c = ctx.fixture("ring_g3")
    cert = certify(c)
    independent = "independent" if tauJ_rank_check(c) else "dependent"
    return _lines([certificate_report(cert), f"rank check: {independent}"])


def check_contraction_chain(ctx: VerifyContext) -> str:
    c = ctx.fixture("nested_g4_k2")
    tau = tau_abelian(c)
    c4 = contract(tau)
    c2 = contract(c4)
    nu = induced_action(pair_shear(4, 1, 2), tau)
    diff = nu - tau
    return _lines(
        [
            f"tau = {_value(tau)}",
            f"C4(tau) = {_value(c4)}",
            f"C2(C4(tau)) = {_value(c2)}",
            f"nu = {_value(nu)}",
            f"nu - tau = {_value(diff)}",
            f"C4(nu - tau) = {_value(contract(diff))}",
        ]
    )


def check_gysin_chain(ctx: VerifyContext) -> str:
    c = ctx.fixture("nested_gysin_g4")
    value = gysin_tau(c)
    c6 = contract(value)
    c4 = contract(c6)
    c2 = contract(c4)
    return _lines(
        [
            f"gysin = {_value(value)}",
            f"C6 = {_value(c6)}",
            f"C4(C6) = {_value(c4)}",
            f"C2(C4(C6)) = {_value(c2)}",
        ]
    )


def check_gysin_parity(ctx: VerifyContext) -> str:
    out = []
    for name in ("single_bp_g2", "nested_g4_k3", "bare_g2"):
        c = ctx.fixture(name)
        out.append(f"{name} (k={c.k}): {_value(gysin_tau(c))}")
    w = omega_form(2)
    same = gysin_tau(ctx.fixture("bare_g2")) == wedge(w, w)
    out.append(f"bare_g2 equals omega^omega: {'yes' if same else 'no'}")
    for name in ("nested_gysin_g4", "closest_a_g5", "closest_b_g5"):
        even = coefficients_even(gysin_tau(ctx.fixture(name)))
        out.append(f"{name} coefficients even: {'yes' if even else 'no'}")
    return _lines(out)


def check_closest_subsurface(ctx: VerifyContext) -> str:
    first = certify(ctx.fixture("closest_a_g5"))
    second = certify(ctx.fixture("closest_b_g5"))
    comparison = compare(first, second)
    out = [
        f"tau: {_value(first.tau_value)} | {_value(second.tau_value)}",
        f"gysin: {_value(first.gysin_value)} | {_value(second.gysin_value)}",
    ]
    out.extend(comparison.verdicts())
    return _lines(out)


def check_classification(ctx: VerifyContext) -> str:
    out = []
    for name in SHIPPED:
        c = ctx.fixture(name)
        problems = validate(c)
        if problems:
            out.append(f"{name}: INVALID " + "; ".join(str(p) for p in problems))
            continue
        out.append(f"{name}: {classify(c)}")
    return _lines(out)


def check_validation_perturbation(ctx: VerifyContext) -> str:
    c = ctx.fixture("nested_g4_k2")
    text = serialize_config(c).replace("region R0 genus 1 pairs 1", "region R0 genus 2 pairs 1")
    broken = parse_config(text, name="nested_g4_k2-perturbed")
    kinds = sorted({v.kind.value for v in validate(broken)})
    return "violations: " + " ".join(kinds)


def check_tauj_rank(ctx: VerifyContext) -> str:
    out = []
    for name in SHIPPED:
        c = ctx.fixture(name)
        star = tauJ_star(c)
        by_rank = tauJ_rank_check(c)
        agree = "agree" if by_rank == (not star.is_zero) else "DISAGREE"
        out.append(f"{name}: {'independent' if by_rank else 'dependent'} {agree}")
    return _lines(out)


# -------------------------
# Representation bookkeeping
# -------------------------

def check_decomposition(ctx: VerifyContext) -> str:
    from math import comb

    out = []
    for g in range(1, 6):
        dims = [irrep_dimension(g, k) for k in range(g + 1)]
        out.append(f"g={g}: " + " ".join(str(d) for d in dims))
    bad_sums = [
        (g, k)
        for g in range(1, 6)
        for k in range(g + 1)
        if sum(irrep_dimension(g, k - 2 * j) for j in range(k // 2 + 1)) != comb(2 * g, k)
    ]
    out.append("chain sums: ok" if not bad_sums else f"chain sums: MISMATCH {bad_sums}")
    bad_oracle = [
        (g, k) for g in range(1, 5) for k in range(g + 1) if irrep_dimension(g, k) != contraction_nullity(g, k)
    ]
    out.append("nullity oracle: ok" if not bad_oracle else f"nullity oracle: MISMATCH {bad_oracle}")
    return _lines(out)


def check_injectivity(ctx: VerifyContext) -> str:
    return _lines(f"g={g}: nullity of C{g + 1} = {contraction_nullity(g, g + 1)}" for g in (2, 3, 4))


def check_top_degree(ctx: VerifyContext) -> str:
    out = []
    for g in (3, 4):
        c = nested_chain(g, list(range(2, g + 1)), [1], [[] for _ in range(g - 2)], [])
        tau = tau_abelian(c)
        out.append(f"g={g}: tau = {_value(tau)}, C{g + 1} = {_value(contract(tau))}")
    return _lines(out)


def _span_check(elements: Callable[[VerifyContext], List[MultiVector]]) -> Callable[[VerifyContext], str]:
    def run(ctx: VerifyContext) -> str:
        return span_summary(elements(ctx), budget_s=ctx.time_budget).line()

    return run


def _span_omega(ctx: VerifyContext) -> str:
    out = []
    for g in (2, 3, 4):
        summary = span_summary([omega_form(g)], budget_s=ctx.time_budget)
        out.append(f"g={g}: {summary.line()}")
    return _lines(out)


def _tau2_and_top(ctx: VerifyContext) -> List[MultiVector]:
    w = omega_form(4)
    return [tau_abelian(ctx.fixture("nested_g4_k2")), wedge(w, w)]


# -------------------------
# Stability and equivariance
# -------------------------

def check_stability(ctx: VerifyContext) -> str:
    out = []
    for name in NESTED_FIXTURES + ("single_bp_g2",):
        c = ctx.fixture(name)
        bigger = add_basepoint_handle(c)
        same = stabilize(tau_abelian(c), bigger.g) == tau_abelian(bigger)
        out.append(f"{name} -> g={bigger.g}: {_value(tau_abelian(bigger))} {'stable' if same else 'UNSTABLE'}")
    return _lines(out)


def check_pair_swap(ctx: VerifyContext) -> str:
    failures = []
    cases = [("nested_g4_k2", 1, 2), ("nested_g4_k2", 1, 3), ("nested_gysin_g4", 1, 4), ("closest_a_g5", 2, 5)]
    for name, i, j in cases:
        c = ctx.fixture(name)
        swapped = swap_pairs(c, i, j)
        m = pair_swap(c.g, i, j)
        if induced_action(m, tau_abelian(c)) != tau_abelian(swapped):
            failures.append(f"{name} swap {i}<->{j}: tau")
        if induced_action(m, gysin_tau(c)) != gysin_tau(swapped):
            failures.append(f"{name} swap {i}<->{j}: gysin")
        for bp in c.cycle:
            if induced_action(m, tauJ_bp(c, bp)) != tauJ_bp(swapped, bp):
                failures.append(f"{name} swap {i}<->{j}: tauJ {bp}")
    return "ok" if not failures else "\n".join(failures)


# -------------------------
# Property suites
# -------------------------

def prop_anticommutativity(ctx: VerifyContext) -> str:
    def case(rng: random.Random) -> Optional[str]:
        g = rng.randint(1, 5)
        p, q = random_grade(rng, g, high=4), random_grade(rng, g, high=4)
        x, y = random_element(rng, g, p), random_element(rng, g, q)
        lhs = wedge(x, y)
        rhs = wedge(y, x).scale((-1) ** (p * q))
        return None if lhs == rhs else f"g={g} x={serialize(x)} y={serialize(y)}"

    return _run_property(ctx, "anticommutativity", case)


def prop_associativity(ctx: VerifyContext) -> str:
    def case(rng: random.Random) -> Optional[str]:
        g = rng.randint(1, 5)
        x, y, z = (random_element(rng, g, random_grade(rng, g, high=3)) for _ in range(3))
        if wedge(wedge(x, y), z) == wedge(x, wedge(y, z)):
            return None
        return f"g={g} x={serialize(x)} y={serialize(y)} z={serialize(z)}"

    return _run_property(ctx, "associativity", case)


def prop_equivariance(ctx: VerifyContext) -> str:
    def case(rng: random.Random) -> Optional[str]:
        g = rng.randint(1, 4)
        k = random_grade(rng, g, low=2, high=6)
        x = random_element(rng, g, k)
        m = random_sp_product(rng, g)
        if contract(induced_action(m, x)) == induced_action(m, contract(x)):
            return None
        return f"g={g} x={serialize(x)} M={m}"

    return _run_property(ctx, "equivariance", case)


def prop_commutator(ctx: VerifyContext) -> str:
    for g in range(1, 5):
        for k in range(0, 2 * g + 1):
            found = lefschetz_commutator_constant(g, k)
            if found != g - k:
                return f"brute force g={g} k={k}: {found} != {g - k}"

    def case(rng: random.Random) -> Optional[str]:
        g = rng.randint(1, 4)
        k = random_grade(rng, g, high=2 * g)
        x = random_element(rng, g, k)
        lhs = contract(lefschetz(x))
        if k >= 2:
            lhs = lhs - lefschetz(contract(x))
        return None if lhs == x.scale(g - k) else f"g={g} x={serialize(x)}"

    return _run_property(ctx, "commutator", case)


def prop_expr_roundtrip(ctx: VerifyContext) -> str:
    def case(rng: random.Random) -> Optional[str]:
        g = rng.randint(1, 5)
        x = random_element(rng, g, random_grade(rng, g))
        text = serialize(x)
        back = parse_expr(text, g)
        if back != x:
            return f"value changed: {text}"
        if serialize(back) != text:
            return f"text changed: {text} -> {serialize(back)}"
        return None

    return _run_property(ctx, "expr round trip", case)


def prop_config_roundtrip(ctx: VerifyContext) -> str:
    def case(rng: random.Random) -> Optional[str]:
        c = random_nested_chain(rng, max_genus=6)
        back = parse_config(serialize_config(c))
        if back != c:
            return f"configuration changed: {c.label()}"
        if validate(back):
            return f"round trip invalid: {c.label()}"
        return None

    return _run_property(ctx, "config round trip", case)


def prop_relabel(ctx: VerifyContext) -> str:
    def case(rng: random.Random) -> Optional[str]:
        c = random_nested_chain(rng, max_genus=6)
        found = classify(c)
        mapping = {}
        for group in (c.regions, c.curves, c.bounding_pairs):
            for item in group:
                mapping[item.id] = f"x{rng.randrange(1_000_000)}_{item.id}"
        renamed = relabel_ids(c, mapping)
        order = list(renamed.cycle)
        rng.shuffle(order)
        renamed = with_cycle_order(renamed, order)
        again = classify(renamed)
        expected = tuple(mapping[gen] for gen in found.order)
        if again.verdict != found.verdict or again.order != expected:
            return f"{c.label()}: {found} vs {again}"
        return None

    return _run_property(ctx, "relabel", case)


# -------------------------
# Registry (declared order is report order)
# -------------------------

CHECKS: Tuple[Check, ...] = (
    Check("tau0_is_omega", "degree-zero generator maps to omega", ("tau", "closed-form"), check_tau0),
    Check("johnson_bp_formula", "Johnson formula for bounding pair maps; tau_1 = tau_J", ("tau", "johnson"), check_johnson_formula),
    Check("nested_recursion", "nested abelian-cycle formula equals the product recursion", ("tau", "nested"), check_nested_recursion),
    Check("vanishing", "non-nested and separating-twist cycles vanish", ("tau", "vanishing"), check_vanishing),
    Check("kernel_certificate", "tau vanishes on the ring cycle while (tau_J)_* does not", ("certificate", "taujstar"), check_kernel_certificate),
    Check("contraction_chain_i2", "contraction chain of the nested i=2 class", ("chains", "span"), check_contraction_chain),
    Check("gysin_chain_i4", "contraction chain of the doubled i=4 class", ("gysin", "chains"), check_gysin_chain),
    Check("gysin_parity", "odd doubled classes vanish; tau_2 of the surface is omega^omega", ("gysin",), check_gysin_parity),
    Check("closest_subsurface", "equal tau, different doubled invariants", ("comparison", "certificate"), check_closest_subsurface),
    Check("span_g3_grade3", "Sp-span of a1^b1^a2 fills the grade-3 part", ("span",), _span_check(lambda ctx: [parse_expr("a1^b1^a2", 3)])),
    Check("span_g4_grade4", "Sp-span of the nested i=2 value is V(l2)+V(l4)", ("span",), _span_check(lambda ctx: [tau_abelian(ctx.fixture("nested_g4_k2"))])),
    Check("span_omega", "omega spans a trivial representation", ("span",), _span_omega),
    Check("tau2_surjective", "tau_2 values together with omega^omega fill the grade-4 part", ("span", "surjectivity"), _span_check(_tau2_and_top)),
    Check("decomposition", "grade-k dimension splits into irreducible kernels", ("decomposition",), check_decomposition),
    Check("contraction_injective", "C_{g+1} is injective", ("decomposition",), check_injectivity),
    Check("top_degree", "top-degree nested class survives C_{g+1}", ("chains",), check_top_degree),
    Check("classification", "shipped fixtures classify as drawn", ("surface", "classify"), check_classification),
    Check("validation_perturbation", "raising a region genus breaks Euler and index bookkeeping", ("surface",), check_validation_perturbation),
    Check("taujstar_rank", "nested wedge vanishes exactly when the Johnson values are dependent", ("taujstar", "certificate"), check_tauj_rank),
    Check("stability", "invariants are stable under adding a handle", ("stability", "tau"), check_stability),
    Check("pair_swap_equivariance", "pair-swap relabeling acts by the induced action", ("properties", "equivariance"), check_pair_swap),
    Check("prop_anticommutativity", "graded anticommutativity", ("properties", "exterior"), prop_anticommutativity),
    Check("prop_associativity", "associativity of the wedge", ("properties", "exterior"), prop_associativity),
    Check("prop_equivariance", "contraction commutes with the symplectic action", ("properties", "equivariance"), prop_equivariance),
    Check("prop_commutator", "C(omega^x) - omega^C(x) = (g-k) x", ("properties", "exterior"), prop_commutator),
    Check("prop_expr_roundtrip", "expression serializer round trip", ("properties", "expr"), prop_expr_roundtrip),
    Check("prop_config_roundtrip", "configuration serializer round trip", ("properties", "surface"), prop_config_roundtrip),
    Check("prop_relabel", "classification ignores id names and cycle order", ("properties", "classify"), prop_relabel),
)


def select_checks(filter_text: str = "") -> List[Check]:
    return [c for c in CHECKS if c.matches(filter_text)]


def run_check(check: Check, ctx: VerifyContext) -> CheckResult:
    started = time.monotonic()
    golden_path = ctx.golden_dir / f"{check.id}.txt"
    detail = ""
    ref = check.title
    try:
        golden = read_golden(golden_path)
        expected = golden.body
        ref = golden.ref or ref
    except OSError as exc:
        expected = ""
        detail = f"golden file unreadable: {exc}"
    try:
        actual = check.run(ctx).strip()
    except TorelliError as exc:
        actual = f"error: {exc}"
        detail = detail or type(exc).__name__
    except Exception as exc:  # one broken check must not hide the others
        logger.exception("check %s crashed", check.id)
        actual = f"crash: {exc}"
        detail = detail or type(exc).__name__
    status = CheckStatus.PASS if (not detail and actual == expected) else CheckStatus.FAIL
    elapsed = time.monotonic() - started
    logger.debug("check %s: %s in %.2fs", check.id, status.value, elapsed)
    return CheckResult(
        check=check.id,
        ref=ref,
        status=status,
        expected=expected,
        actual=actual,
        tags=list(check.tags),
        elapsed_s=round(elapsed, 3),
        detail=detail,
    )


def run_suite(ctx: VerifyContext, filter_text: str = "", workers: int = 1) -> RunReport:
    """Run the selected checks; results keep declared order whatever the completion order."""
    checks = select_checks(filter_text)
    if workers > 1 and len(checks) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(lambda c: run_check(c, ctx), checks))
    else:
        results = [run_check(c, ctx) for c in checks]
    report = RunReport(entries=results)
    logger.info("verify: %s checks, %s passed, %s failed", len(results), report.passed, report.failed)
    return report

# rdqm/pipeline/records.py
"""
Registros de verificação: cada um é uma função pura que devolve um
Outcome, convertido em CheckRecord com tempo e tratamento de erros.
"""
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from ..api.schemas import CheckRecord, RecordStatus
from ..core.config import get_settings
from ..core.exact import format_rational
from ..core.exceptions import (
    DegenerateInstance,
    EvaluationPole,
    IdentityFalsified,
    PoleInSeries,
    RdqmError,
)
from ..services import casoratian, darboux, families, limits, twists
from ..services.families import ParamSet
from ..services.family_catalog import FamilyId
from ..services.twist_catalog import ADDING
from ..utils.logger import logger, record_context


@dataclass(frozen=True)
class Outcome:
    status: RecordStatus
    ratio: Optional[Fraction] = None
    skipped: Tuple[int, ...] = ()
    details: Dict[str, object] = field(default_factory=dict)


@dataclass(frozen=True)
class RecordTask:
    id: str
    kind: str
    family: FamilyId
    params: ParamSet
    run: Callable[[], Outcome] = field(compare=False)
    twist: Optional[str] = None
    index_sets: Optional[Dict[str, object]] = None


def _verdict(checks: Dict[str, bool]) -> RecordStatus:
    return RecordStatus.PASS if all(checks.values()) else RecordStatus.FAIL


def _base_record(task: RecordTask, **kwargs) -> CheckRecord:
    return CheckRecord(
        id=task.id,
        kind=task.kind,
        family=task.family.value,
        twist=task.twist,
        params=task.params.describe(),
        index_sets=task.index_sets,
        **kwargs,
    )


def failure_record(task: RecordTask, exc: BaseException, duration_ms: float = 0.0) -> CheckRecord:
    """Registro de erro; IdentityFalsified vira Mismatch, DegenerateInstance vira Degenerate."""
    if isinstance(exc, DegenerateInstance):
        status = RecordStatus.DEGENERATE
    elif isinstance(exc, IdentityFalsified):
        status = RecordStatus.MISMATCH
    else:
        status = RecordStatus.ERROR
    details = exc.to_details() if isinstance(exc, RdqmError) else {"error": type(exc).__name__, "message": str(exc)}
    return _base_record(task, status=status, duration_ms=duration_ms, details=details)


def execute_task(task: RecordTask) -> CheckRecord:
    with record_context(task.id):
        return _execute(task)


def _execute(task: RecordTask) -> CheckRecord:
    logger.debug("🎯 Iniciando")
    start = time.perf_counter()
    try:
        outcome = task.run()
    except RdqmError as exc:
        duration = round((time.perf_counter() - start) * 1000, 3)
        record = failure_record(task, exc, duration)
        marker = "⚠️" if record.status is RecordStatus.DEGENERATE else "❌"
        logger.warning(f"{marker} {record.status.value}: {exc.message}")
        return record

    duration = round((time.perf_counter() - start) * 1000, 3)
    record = _base_record(
        task,
        status=outcome.status,
        ratio=CheckRecord.ratio_text(outcome.ratio),
        skipped_points=list(outcome.skipped),
        duration_ms=duration,
        details=outcome.details,
    )
    if record.status.passed:
        logger.success(f"✅ {record.status.value} ({duration:.1f} ms)")
    else:
        logger.error(f"❌ {record.status.value}: {outcome.details}")
    return record


# ============================================
# IDENTIDADES DE CASORATI
# ============================================

def identity_outcome(ps: ParamSet, D: Sequence[int], calN: int, twist: Optional[str] = None) -> Outcome:
    inst = casoratian.run_identity(ps, D, calN, twist, strict=False)
    report = inst.report
    details: Dict[str, object] = {
        "M": inst.idx.M,
        "degree_bound": inst.idx.degree_bound,
        "grid": [inst.x_grid[0], inst.x_grid[-1]],
        "sums_consistent": inst.idx.sums_consistent(),
    }
    status = RecordStatus.PROPORTIONAL if report.proportional else RecordStatus.MISMATCH
    if not report.proportional and report.mismatch_index is not None:
        details["mismatch_x"] = inst.x_grid[report.mismatch_index]
    if inst.constant_A is not None:
        details["constant_A"] = format_rational(inst.constant_A)
        details["constant_A_matches"] = inst.constant_A == report.ratio
        if inst.constant_A != report.ratio:
            status = RecordStatus.MISMATCH
    if not inst.idx.sums_consistent():
        status = RecordStatus.FAIL
    return Outcome(status, report.ratio, inst.skipped, details)


def identity_task(
    ps: ParamSet,
    D: Sequence[int],
    calN: int,
    twist: Optional[str] = None,
    tag: str = "safe",
) -> RecordTask:
    """Pontos alternativos ganham o tag no id; o ponto seguro mantém o id curto."""
    token = twist or twists.default_twist(ps.family)
    idx = casoratian.build_index_sets(D, calN)
    degrees = ",".join(str(d) for d in idx.D)
    point = "" if tag == "safe" else f"/{tag}"
    return RecordTask(
        id=f"identity/{ps.family.value}/{token}{point}/M{idx.M}/D={degrees}/N={calN}",
        kind="identity",
        family=ps.family,
        params=ps,
        run=lambda: identity_outcome(ps, idx.D, calN, token),
        twist=token,
        index_sets=idx.describe(),
    )


# ============================================
# AXIOMAS DAS FAMÍLIAS
# ============================================

def _difference_equation(ps: ParamSet, degrees: Sequence[int], xs: Sequence[int]) -> Tuple[bool, List[int]]:
    skipped = []
    for x in xs:
        try:
            ok = all(families.check_difference_equation(ps, n, x) for n in degrees)
        except (EvaluationPole, PoleInSeries):
            skipped.append(x)
            continue
        if not ok:
            return False, skipped
    return True, skipped


def family_axioms_outcome(ps: ParamSet) -> Outcome:
    finite = ps.record.finite
    top = ps.N if finite else 5
    degrees = range(min(top, 4) + 1)
    xs = range(-3, ps.N + 4) if finite else range(-3, 9)

    checks: Dict[str, bool] = {
        "normalization": all(families.eval_polynomial(ps, n, 0) == 1 for n in range(top + 1)),
        "boundaries": families.check_boundaries(ps),
        "positivity": families.check_positivity(ps),
        "energy_ordering": families.check_energy_ordering(ps),
        "varphi": all(families.check_varphi_identity(ps, x) for x in range(top + 1)),
    }
    checks["difference_equation"], skipped = _difference_equation(ps, degrees, xs)
    for form, ok in families.check_polynomial_forms(ps, degrees, range(0, 9)).items():
        checks[f"form[{form}]"] = ok
    if finite:
        checks["phi0_forms"] = families.check_phi0_forms(ps)
        if ps.N <= 6:
            checks["orthogonality"] = all(
                families.orthogonality_check(ps, n, m).passed
                for n in range(ps.N + 1) for m in range(n, ps.N + 1)
            )
    return Outcome(_verdict(checks), skipped=tuple(skipped), details=checks)


def family_axioms_task(ps: ParamSet, tag: str = "safe") -> RecordTask:
    return RecordTask(
        id=f"family/{ps.family.value}/{tag}",
        kind="family_axioms",
        family=ps.family,
        params=ps,
        run=lambda: family_axioms_outcome(ps),
    )


def symmetry_outcome(ps: ParamSet) -> Outcome:
    """Reflexão (R, qR) e inversão de q (qR) para n ≤ 3, x ∈ [0,N]."""
    checks: Dict[str, object] = {}
    pole_degrees = []
    reflection = True
    for n in range(min(3, ps.N) + 1):
        try:
            reflection &= all(families.check_reflection_symmetry(ps, x, n) for x in range(ps.N + 1))
        except (EvaluationPole, PoleInSeries):
            pole_degrees.append(n)
    checks["reflection"] = reflection
    if ps.family is FamilyId.QR:
        checks["q_inversion"] = all(
            families.check_q_inversion(ps, n, x)
            for n in range(min(3, ps.N) + 1) for x in range(ps.N + 1)
        )
    status = RecordStatus.PASS if all(v for v in checks.values()) else RecordStatus.FAIL
    checks["reflection_pole_degrees"] = pole_degrees
    return Outcome(status, details=checks)


def symmetry_task(ps: ParamSet) -> RecordTask:
    return RecordTask(
        id=f"symmetry/{ps.family.value}",
        kind="symmetry",
        family=ps.family,
        params=ps,
        run=lambda: symmetry_outcome(ps),
    )


def shape_invariance_outcome(ps: ParamSet) -> Outcome:
    top = ps.N if ps.record.finite else 6
    checks = {"shape_invariance": families.check_shape_invariance(ps, range(0, top))}
    if families.B(ps, 0) != 0:
        checks["forward_shift"] = all(
            families.check_forward_shift(ps, n, x)
            for n in range(1, min(top, 3) + 1) for x in range(top)
        )
    return Outcome(_verdict(checks), details=checks)


def shape_invariance_task(ps: ParamSet) -> RecordTask:
    return RecordTask(
        id=f"shape/{ps.family.value}",
        kind="shape_invariance",
        family=ps.family,
        params=ps,
        run=lambda: shape_invariance_outcome(ps),
    )


# ============================================
# TORÇÕES
# ============================================

def twist_outcome(ps: ParamSet, token: str) -> Outcome:
    rule = twists.get_rule(ps.family, token)
    tp = twists.make_twist(ps, token)
    finite = ps.record.finite
    xs = list(range(-1, ps.N + 2)) if finite else list(range(0, 9))

    checks: Dict[str, object] = {
        "involution": twists.check_involution(ps, token),
        "relations": twists.check_twist_relations(tp, xs),
        "boundaries": (not finite) or (tp.Bprime(-1) == 0 and tp.Dprime(ps.N + 1) == 0),
        "pseudo_energy": all(twists.check_pseudo_energy(ps, token, v) for v in range(5)),
    }
    if rule.has_xi:
        v_top = min(3, twists.xi_v_max(ps))
        grid = list(range(0, ps.N + 1)) if finite else list(range(0, 6))
        checks["xi_difference_equation"] = all(
            twists.check_xi_difference_equation(ps, token, v, x)
            for v in range(v_top + 1) for x in grid
        )
        checks["xi_degree"] = all(twists.check_xi_degree(ps, token, v) for v in range(v_top + 1))
        for v in range(v_top + 1):
            for name, ok in twists.check_xi_forms(ps, token, v, grid).items():
                checks[f"form[{name}]"] = checks.get(f"form[{name}]", True) and ok

    status = _verdict({k: bool(v) for k, v in checks.items()})
    checks.update({
        "energy_relation": "adding" if rule.energy_relation == ADDING else "deleting",
        "alpha": format_rational(tp.alpha),
        "alpha_prime": format_rational(tp.alpha_prime),
        "alpha_source": tp.alpha_source,
        "alpha_prime_source": tp.alpha_prime_source,
    })
    return Outcome(status, details=checks)


def twist_task(ps: ParamSet, token: str) -> RecordTask:
    return RecordTask(
        id=f"twist/{ps.family.value}/{token}",
        kind="twist",
        family=ps.family,
        params=ps,
        run=lambda: twist_outcome(ps, token),
        twist=token,
    )


def xi_ratio_outcome(ps: ParamSet, first: str, second: str) -> Outcome:
    v_top = min(3, twists.xi_v_max(ps))
    details: Dict[str, object] = {}
    ok = True
    for v in range(v_top + 1):
        result = twists.check_xi_proportionality(ps, second, first, v)
        details[f"v={v}"] = {
            "status": result.report.status.value,
            "ratio": None if result.report.ratio is None else format_rational(result.report.ratio),
            "expected": None if result.expected is None else format_rational(result.expected),
            "potentials_match": result.potentials_match,
        }
        ok &= result.passed
    return Outcome(RecordStatus.PASS if ok else RecordStatus.FAIL, details=details)


def xi_ratio_task(ps: ParamSet, first: str, second: str) -> RecordTask:
    return RecordTask(
        id=f"xi_ratio/{ps.family.value}/{first}->{second}",
        kind="xi_ratio",
        family=ps.family,
        params=ps,
        run=lambda: xi_ratio_outcome(ps, first, second),
        twist=f"{second}/{first}",
    )


# ============================================
# LIMITES
# ============================================

def limit_outcome(edge: limits.LimitEdge, ps_target: ParamSet, threshold_exponent: int) -> Outcome:
    top = ps_target.N if ps_target.record.finite else 3
    details: Dict[str, object] = {}
    ok = True
    for n in range(1, min(top, 2) + 1):
        report = limits.limit_relation_check(
            edge.source, edge.target, ps_target, n, 1, threshold_exponent=threshold_exponent
        )
        details[f"n={n}"] = report.to_details()
        ok &= report.passed
    return Outcome(RecordStatus.PASS if ok else RecordStatus.FAIL, details=details)


def limit_task(edge: limits.LimitEdge, threshold_exponent: int) -> RecordTask:
    ps_target = families.safe_params(edge.target)
    return RecordTask(
        id=f"limit/{edge.source.value}->{edge.target.value}",
        kind="limit",
        family=edge.target,
        params=ps_target,
        run=lambda: limit_outcome(edge, ps_target, threshold_exponent),
        index_sets={"source": edge.source.value, "path": edge.description},
    )


# ============================================
# DARBOUX
# ============================================

def parameter_range_outcome(ps: ParamSet, twist: str, vs: Sequence[int]) -> Outcome:
    verdicts = darboux.validate_parameter_range(ps, twist, tuple(vs))
    details = {v.name: v.satisfied for v in verdicts}
    status = RecordStatus.PASS if darboux.range_satisfied(verdicts) else RecordStatus.FAIL
    return Outcome(status, details=details)


def ground_state_outcome(ps: ParamSet, precision_bits: Optional[int]) -> Outcome:
    bundle = darboux.build_hamiltonian(ps, precision_bits)
    report = darboux.ground_state(bundle)
    checks: Dict[str, object] = {
        "ground_state": report.passed,
        "phi0_forms": families.check_phi0_forms(ps),
        "htilde_eigen": all(darboux.check_htilde_eigen(bundle, n) for n in range(ps.N + 1)),
        "gauge_consistency": darboux.check_gauge_consistency(bundle),
    }
    status = _verdict(checks)
    checks["residual"] = str(report.residual)
    return Outcome(status, details=checks)


def defect_outcome(ps: ParamSet, twist: str, v: int, precision_bits: Optional[int]) -> Outcome:
    bundle = darboux.build_hamiltonian(ps, precision_bits)
    # interior não nulo só derruba o registro nas famílias com fronteira publicada
    strict = ps.family in (FamilyId.QR, FamilyId.R)
    report = darboux.pseudo_virtual_vector_defect(bundle, v, twist, strict=strict)
    checks: Dict[str, object] = {
        "interior_zero": report.interior_zero,
        "boundary_exact": report.boundary_exact,
        "gauge_positive": report.gauge_positive,
        "almost_zero_mode": report.almost_zero_mode,
        "residual_ok": report.residual <= report.tolerance,
        "zero_mode_residual_ok": report.zero_mode_residual <= report.tolerance,
    }
    if ps.family is FamilyId.QR:
        checks["phitilde0_closed_form"] = darboux.check_phitilde0_closed_form(ps, twist)
    status = _verdict(checks)
    checks["boundary"] = [format_rational(report.expected[0]), format_rational(report.expected[-1])]
    return Outcome(status, details=checks)


def spectrum_outcome(ps: ParamSet, twist: str, d1: int, precision_bits: Optional[int]) -> Outcome:
    bundle = darboux.build_deformed(ps, d1, twist, precision_bits)
    potentials = darboux.check_deformed_potentials(bundle)
    report = darboux.deformed_spectrum_check(bundle, strict=False)
    checks: Dict[str, object] = dict(potentials)
    checks["spectrum"] = report.passed
    status = _verdict(checks)
    checks.update(report.to_details())
    checks["Etilde"] = format_rational(bundle.Etilde)
    return Outcome(status, details=checks)


def deletion_outcome(ps: ParamSet, ell: int, twist: str) -> Outcome:
    inst = darboux.eigenstate_deletion_special_case(ps, ell, twist)
    report = inst.report
    checks: Dict[str, object] = {
        "proportional": report.proportional,
        "spectrum_shift": darboux.check_deletion_spectrum(ps, ell, twist),
    }
    if inst.constant_A is not None:
        checks["constant_A_matches"] = inst.constant_A == report.ratio
    status = RecordStatus.PROPORTIONAL if all(checks.values()) else RecordStatus.MISMATCH
    return Outcome(status, report.ratio, inst.skipped, checks)


def darboux_tasks(
    ps: ParamSet,
    d1_values: Sequence[int],
    twist: Optional[str] = None,
    precision_bits: Optional[int] = None,
) -> List[RecordTask]:
    token = twist or twists.default_twist(ps.family)
    fam = ps.family
    prefix = f"darboux/{fam.value}/{token}"
    tasks = [
        RecordTask(
            id=f"{prefix}/range",
            kind="parameter_range",
            family=fam,
            params=ps,
            run=lambda: parameter_range_outcome(ps, token, d1_values),
            twist=token,
        ),
        RecordTask(
            id=f"{prefix}/ground_state",
            kind="ground_state",
            family=fam,
            params=ps,
            run=lambda: ground_state_outcome(ps, precision_bits),
        ),
    ]
    for d1 in d1_values:
        tasks.append(RecordTask(
            id=f"{prefix}/defect/v={d1}",
            kind="pseudo_virtual_defect",
            family=fam,
            params=ps,
            run=lambda d1=d1: defect_outcome(ps, token, d1, precision_bits),
            twist=token,
        ))
        tasks.append(RecordTask(
            id=f"{prefix}/spectrum/d1={d1}",
            kind="deformed_spectrum",
            family=fam,
            params=ps,
            run=lambda d1=d1: spectrum_outcome(ps, token, d1, precision_bits),
            twist=token,
        ))
    return tasks


def deletion_task(ps: ParamSet, ell: int, twist: Optional[str] = None) -> RecordTask:
    token = twist or twists.default_twist(ps.family)
    idx = casoratian.build_index_sets([ell], ell)
    return RecordTask(
        id=f"darboux/{ps.family.value}/{token}/deletion/l={ell}",
        kind="eigenstate_deletion",
        family=ps.family,
        params=ps,
        run=lambda: deletion_outcome(ps, ell, token),
        twist=token,
        index_sets=idx.describe(),
    )


def limit_threshold() -> int:
    return get_settings().limit_threshold_exponent

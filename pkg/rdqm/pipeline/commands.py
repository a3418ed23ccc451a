# rdqm/pipeline/commands.py
"""
Comandos da CLI: verify, families, darboux, suite.

Cada comando monta a lista de RecordTask, executa e devolve o
ReportDocument; a escrita e o código de saída ficam com run.py.
"""
from typing import List, Optional

from ..api.schemas import CheckRecord, ReportDocument, RunConfig
from ..core.config import get_settings
from ..core.exceptions import InvalidInput
from ..services import casoratian, families, limits, twists
from ..services.families import ParamSet
from ..services.family_catalog import REGISTRY, FamilyId
from ..utils.logger import log_execution_time, logger
from . import records
from .records import RecordTask, execute_task
from .suite_parallel import run_records

# pontos validados (ver notas de SamplePoint no catálogo)
DARBOUX_D1 = (0, 1, 2)
DELETION_ELLS = (1, 2, 3)
IDENTITY_MAX_M = 3
IDENTITY_MAX_CALN = 4
REDUCED_MAX_M = 2
REDUCED_MAX_CALN = 3
EXTRA_TWIST_MAX_CALN = 2


def apply_overrides(config: RunConfig) -> None:
    """--precision e --tol-exp valem para esta execução."""
    settings = get_settings()
    if config.precision is not None:
        is_valid, error = settings.validate_precision(config.precision)
        if not is_valid:
            raise InvalidInput(error, precision=config.precision)
        settings.precision_bits = config.precision
    if config.tol_exp is not None:
        settings.tolerance_exponent = config.tol_exp


def config_params(config: RunConfig, family: Optional[FamilyId] = None) -> ParamSet:
    """ParamSet da configuração; sem --params usa o ponto seguro."""
    fam = family or families.resolve_family(config.family)
    if not config.params:
        if config.n is not None:
            raise InvalidInput("--n exige --params", family=fam.value)
        return families.safe_params(fam)
    return families.make_params(fam, config.rational_params(), config.n)


def _assemble(config: RunConfig, result: List[CheckRecord]) -> ReportDocument:
    settings = get_settings()
    return ReportDocument.assemble(settings.app_name, settings.app_version, config, result)


def _run_sequential(tasks: List[RecordTask]) -> List[CheckRecord]:
    return [execute_task(task) for task in tasks]


# ============================================
# VERIFY
# ============================================

@log_execution_time
def cmd_verify(config: RunConfig) -> ReportDocument:
    """Uma instância da identidade de Casorati (+ constante A em qR/i)."""
    if config.family is None or not config.dset or config.caln is None:
        raise InvalidInput("verify exige --family, --dset e --caln")
    apply_overrides(config)
    ps = config_params(config)
    token = config.twist or twists.default_twist(ps.family)
    twists.get_rule(ps.family, token)
    casoratian.build_index_sets(config.dset, config.caln)

    task = records.identity_task(ps, config.dset, config.caln, token)
    return _assemble(config, _run_sequential([task]))


# ============================================
# FAMILIES
# ============================================

def family_tasks(ps: ParamSet, tag: str = "safe") -> List[RecordTask]:
    """Axiomas, simetrias, invariância de forma, torções e razões de ξ̌."""
    fam = ps.family
    tasks = [records.family_axioms_task(ps, tag)]
    if tag != "safe":
        return tasks
    tasks.append(records.shape_invariance_task(ps))
    if fam in (FamilyId.R, FamilyId.QR):
        tasks.append(records.symmetry_task(ps))
    for token in twists.registered_twists(fam):
        tasks.append(records.twist_task(ps, token))
    for first, second in twists.ratio_pairs(fam):
        tasks.append(records.xi_ratio_task(ps, first, second))
    return tasks


def identity_tasks(ps: ParamSet, tag: str = "safe") -> List[RecordTask]:
    """Matriz de identidades num ponto: torção padrão completa, demais torções com M = 1."""
    fam = ps.family
    default = twists.default_twist(fam)
    full = fam in (FamilyId.R, FamilyId.QR)
    max_m = IDENTITY_MAX_M if full else REDUCED_MAX_M
    max_caln = IDENTITY_MAX_CALN if full else REDUCED_MAX_CALN
    tasks = [
        records.identity_task(ps, idx.D, idx.calN, default, tag)
        for idx in casoratian.enumerate_index_sets(max_m, max_caln)
    ]
    for token in twists.registered_twists(fam):
        if token == default or not twists.get_rule(fam, token).has_xi:
            continue
        for idx in casoratian.enumerate_index_sets(1, EXTRA_TWIST_MAX_CALN):
            tasks.append(records.identity_task(ps, idx.D, idx.calN, token, tag))
    return tasks


@log_execution_time
def cmd_families(config: RunConfig) -> ReportDocument:
    if config.family is None:
        raise InvalidInput("families exige --family")
    apply_overrides(config)
    ps = config_params(config)
    tasks = family_tasks(ps)
    if config.twist is not None:
        twists.get_rule(ps.family, config.twist)
        tasks = [t for t in tasks if t.twist is None or t.twist == config.twist]
    return _assemble(config, _run_sequential(tasks))


# ============================================
# DARBOUX
# ============================================

@log_execution_time
def cmd_darboux(config: RunConfig) -> ReportDocument:
    """Faixa de parâmetros, estado fundamental, defeito e espectro para cada d₁."""
    apply_overrides(config)
    fam = families.resolve_family(config.family or FamilyId.QR.value)
    if not REGISTRY[fam].finite:
        raise InvalidInput("darboux exige família finita", family=fam.value)
    ps = config_params(config, fam)
    token = config.twist or twists.default_twist(fam)
    twists.get_rule(fam, token)
    d1_values = tuple(config.dset) if config.dset else DARBOUX_D1

    tasks = records.darboux_tasks(ps, d1_values, token, get_settings().precision_bits)
    for ell in d1_values:
        if ell >= 1:
            tasks.append(records.deletion_task(ps, ell, token))
    return _assemble(config, _run_sequential(tasks))


# ============================================
# SUITE
# ============================================

def suite_tasks(precision_bits: Optional[int] = None) -> List[RecordTask]:
    """Matriz de aceitação completa, em ordem determinística."""
    tasks: List[RecordTask] = []

    for fam in REGISTRY:
        for index, ps in enumerate(families.sample_param_sets(fam)):
            tag = "safe" if index == 0 else f"alt{index}"
            tasks.extend(family_tasks(ps, tag))
            tasks.extend(identity_tasks(ps, tag))

    threshold = records.limit_threshold()
    for edge in limits.LIMIT_EDGES.values():
        tasks.append(records.limit_task(edge, threshold))

    qr = families.safe_params(FamilyId.QR)
    tasks.extend(records.darboux_tasks(qr, DARBOUX_D1, "i", precision_bits))
    for ell in DELETION_ELLS:
        tasks.append(records.deletion_task(qr, ell, "i"))

    return sorted(tasks, key=lambda task: task.id)


def _matches(task: RecordTask, only: dict) -> bool:
    for key, value in only.items():
        if key == "family" and task.family.value != families.resolve_family(value).value:
            return False
        if key == "kind" and task.kind != value:
            return False
        if key == "twist" and task.twist != value:
            return False
    return True


@log_execution_time
def cmd_suite(config: RunConfig) -> ReportDocument:
    apply_overrides(config)
    unknown = set(config.only) - {"family", "kind", "twist"}
    if unknown:
        raise InvalidInput(f"Filtro --only desconhecido: {sorted(unknown)}")

    settings = get_settings()
    tasks = [t for t in suite_tasks(settings.precision_bits) if _matches(t, config.only)]
    logger.info(f"📋 Suite com {len(tasks)} registro(s)")
    result = run_records(tasks, settings.max_workers)
    return _assemble(config, result)


COMMANDS = {
    "verify": cmd_verify,
    "families": cmd_families,
    "darboux": cmd_darboux,
    "suite": cmd_suite,
}

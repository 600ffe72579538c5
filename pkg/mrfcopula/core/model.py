"""
@fileoverview Construction and validation of MRF models: exposure sets,
              aggregated shapes, subset factor sets, bivariate Clayton
              parameters and the JSON model-file format.
@filepath mrfcopula/core/model.py
"""

import hashlib
import json
import logging
import math
from pathlib import Path
from typing import Any, Dict, Iterable, List, Sequence, Union

from ..classes.errors import ArtifactIOError, ErrorCode, ValidationFailure
from ..classes.portfolio.base_models import (
    BivariateClaytonParams, ExposureMatrix, MRFModel, RiskFactorSpec, SubsetSets
)
from ..classes.portfolio.types.enums import FactorKind

logger = logging.getLogger(__name__)


def build_model(factors: Sequence[RiskFactorSpec],
                exposure: Union[ExposureMatrix, Sequence[Sequence[int]]]) -> MRFModel:
    """
    Validate factors and exposure and derive the exposure sets.

    Every problem found is reported; the raised ValidationFailure carries the
    first code and the full issue list in its context.

    Args:
        factors: Factor specs in column order, ids 1..l+m.
        exposure: Binary matrix, one row per component.

    Returns:
        MRFModel: The validated model with rf_sets_l, rf_sets_m, rc_sets and
        agg_shape filled in.
    """
    rows = [tuple(row) for row in (exposure.entries if isinstance(exposure, ExposureMatrix) else exposure)]
    factors = tuple(factors)
    issues: List[Dict[str, Any]] = []

    if not rows:
        issues.append({"code": ErrorCode.DIMENSION_MISMATCH.value,
                       "message": "exposure matrix has no rows"})
    for position, factor in enumerate(factors, start=1):
        if factor.id != position:
            issues.append({"code": ErrorCode.INVALID_FACTOR_ID.value,
                           "message": f"factor at column {position} has id {factor.id}"})
        if not (factor.shape > 0 and math.isfinite(factor.shape)):
            issues.append({"code": ErrorCode.NON_POSITIVE_SHAPE.value,
                           "message": f"factor {factor.id} has shape {factor.shape}"})
    for i, row in enumerate(rows, start=1):
        if len(row) != len(factors):
            issues.append({"code": ErrorCode.DIMENSION_MISMATCH.value,
                           "message": f"row {i} has {len(row)} entries, expected {len(factors)}"})
            continue
        if any(entry not in (0, 1) for entry in row):
            issues.append({"code": ErrorCode.DIMENSION_MISMATCH.value,
                           "message": f"row {i} has entries outside {{0, 1}}"})
        elif not any(row):
            issues.append({"code": ErrorCode.EMPTY_ROW.value,
                           "message": f"component {i} is hit by no factor"})

    if issues:
        for issue in issues:
            logger.error(f"❌ [MODEL] {issue['code']}: {issue['message']}")
        raise ValidationFailure(issues[0]["code"], issues[0]["message"], issues=issues)

    rf_sets_l, rf_sets_m, agg_shape = [], [], []
    for row in rows:
        hit = [f for f, entry in zip(factors, row) if entry]
        rf_sets_l.append(frozenset(f.id for f in hit if f.kind is FactorKind.COMONOTONE))
        rf_sets_m.append(frozenset(f.id for f in hit if f.kind is FactorKind.INDEPENDENT))
        agg_shape.append(math.fsum(f.shape for f in hit))
    rc_sets = tuple(
        frozenset(i for i, row in enumerate(rows, start=1) if row[j])
        for j in range(len(factors))
    )

    model = MRFModel(
        factors=factors,
        exposure=ExposureMatrix(entries=tuple(rows)),
        rf_sets_l=tuple(rf_sets_l),
        rf_sets_m=tuple(rf_sets_m),
        rc_sets=rc_sets,
        agg_shape=tuple(agg_shape),
    )
    for factor_id in model.inert_factors:
        logger.warning(f"⚠️ [MODEL] factor {factor_id} hits no component and is inert")
    logger.debug(f"🔧 [MODEL] {model.summary()}")
    return model


def _check_indices(model: MRFModel, indices: Iterable[int]) -> List[int]:
    indices = list(indices)
    for i in indices:
        if not 1 <= i <= model.n:
            raise ValidationFailure(ErrorCode.INDEX_OUT_OF_RANGE,
                                    f"component index {i} not in 1..{model.n}", index=i)
    if len(set(indices)) != len(indices):
        raise ValidationFailure(ErrorCode.DUPLICATE_INDEX,
                                f"subset {indices} repeats an index", subset=indices)
    return indices


def factor_sets(model: MRFModel, subset: Iterable[int]) -> SubsetSets:
    """
    Factor sets of a subset of components.

    Args:
        model: The MRF model.
        subset: Component indices (1-based, distinct, non-empty).

    Returns:
        SubsetSets: union, intersection and rest of the per-component factor
        sets, split by kind, with |RC_j ∩ subset| for every factor in the union.
    """
    indices = _check_indices(model, subset)
    if not indices:
        raise ValidationFailure(ErrorCode.DIMENSION_MISMATCH, "subset is empty")

    per_component = [model.rf_set(i) for i in indices]
    rf_all = frozenset().union(*per_component)
    rf_common = frozenset.intersection(*per_component)
    rf_rest = rf_all - rf_common
    comonotone = frozenset(f.id for f in model.factors if f.kind is FactorKind.COMONOTONE)
    members = set(indices)

    return SubsetSets(
        subset=tuple(indices),
        rf_all=rf_all,
        rf_common=rf_common,
        rf_rest=rf_rest,
        rf_all_l=rf_all & comonotone,
        rf_all_m=rf_all - comonotone,
        rf_common_l=rf_common & comonotone,
        rf_common_m=rf_common - comonotone,
        rf_rest_l=rf_rest & comonotone,
        rf_rest_m=rf_rest - comonotone,
        restricted_cardinality={j: len(model.rc_sets[j - 1] & members) for j in sorted(rf_all)},
    )


def bivariate_params(model: MRFModel, i: int, k: int) -> BivariateClaytonParams:
    """Bivariate Clayton parameters of the pair (i, k)."""
    if i == k:
        raise ValidationFailure(ErrorCode.EQUAL_INDICES, f"pair ({i}, {k}) repeats an index")
    _check_indices(model, (i, k))
    rf_i, rf_k = model.rf_set(i), model.rf_set(k)
    common = rf_i & rf_k

    def total(ids):
        return math.fsum(model.shape(j) for j in ids)

    return BivariateClaytonParams.from_shares(
        xi_i_bar=total(rf_i - common),
        xi_k_bar=total(rf_k - common),
        alpha_common=total(j for j in common if model.factor(j).kind is FactorKind.COMONOTONE),
        gamma_common=total(j for j in common if model.factor(j).kind is FactorKind.INDEPENDENT),
    )


def model_from_dict(document: Dict[str, Any]) -> MRFModel:
    """Build a model from the parsed model-file document."""
    try:
        raw_factors = document["factors"]
        exposure = document["exposure"]
    except (KeyError, TypeError) as e:
        raise ValidationFailure(ErrorCode.DIMENSION_MISMATCH,
                                f"model document is missing {e}") from e

    factors = []
    for position, raw in enumerate(raw_factors, start=1):
        kind = raw.get("kind")
        if kind not in {k.value for k in FactorKind}:
            raise ValidationFailure(ErrorCode.INVALID_FACTOR_KIND,
                                    f"factor {position} has unknown kind {kind!r}", kind=kind)
        try:
            shape = float(raw["shape"])
        except (KeyError, TypeError, ValueError) as e:
            raise ValidationFailure(ErrorCode.NON_POSITIVE_SHAPE,
                                    f"factor {position} has no numeric shape") from e
        factors.append(RiskFactorSpec(id=raw.get("id", position), kind=kind, shape=shape))
    return build_model(factors, exposure)


def model_to_dict(model: MRFModel) -> Dict[str, Any]:
    return {
        "factors": [
            {"id": f.id, "kind": f.kind.value, "shape": f.shape} for f in model.factors
        ],
        "exposure": [list(row) for row in model.exposure.entries],
    }


def model_digest(model: MRFModel) -> str:
    """SHA-256 of the canonical JSON form of the model."""
    canonical = json.dumps(model_to_dict(model), sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(canonical.encode("utf-8")).hexdigest()


def load_model(path: Union[str, Path]) -> MRFModel:
    path = Path(path)
    logger.info(f"📂 [MODEL] Loading model file: {path}")
    try:
        document = json.loads(path.read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as e:
        raise ArtifactIOError(ErrorCode.MODEL_FILE_ERROR,
                              f"cannot read model file {path}: {e}", path=str(path)) from e
    return model_from_dict(document)

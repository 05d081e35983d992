"""Model comparison: information criteria and the nested independence fit.

The built-in comparison pits the full three-parameter model against its
delta = 0 submodel, whose maximum likelihood splits into two exact
univariate shape fits.  External model rows can be injected to extend
the table; winners minimize each criterion.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from bitl.bivariate import BitlParams
from bitl.dataio import Dataset
from bitl.estimate import FitOptions, fit_mle, itl_shape_mle, loglik

__all__ = [
    "ModelRow",
    "ComparisonReport",
    "information_criteria",
    "compare_models",
    "FULL_LABEL",
    "SUBMODEL_LABEL",
]

FULL_LABEL = "bitl_fgm"
SUBMODEL_LABEL = "independent_itl"


def information_criteria(loglik_value: float, k: int, n: int) -> tuple[float, float]:
    """(AIC, BIC) = (-2*ll + 2k, -2*ll + k*log n)."""
    if n < 1:
        raise ValueError("n must be >= 1")
    return (-2.0 * loglik_value + 2.0 * k, -2.0 * loglik_value + k * np.log(n))


@dataclass
class ModelRow:
    label: str
    k: int
    loglik: float
    aic: float
    bic: float
    dic: float | None = None

    def to_dict(self) -> dict:
        return {
            "label": self.label,
            "k": self.k,
            "loglik": self.loglik,
            "aic": self.aic,
            "bic": self.bic,
            "dic": self.dic,
        }


@dataclass
class ComparisonReport:
    rows: list
    winners: dict

    def to_dict(self) -> dict:
        return {"rows": [r.to_dict() for r in self.rows], "winners": self.winners}

    def render(self) -> str:
        """Aligned text table, one model per row."""
        header = ["model", "k", "loglik", "aic", "bic", "dic"]
        body = []
        for r in self.rows:
            body.append(
                [
                    r.label,
                    str(r.k),
                    f"{r.loglik:.6f}",
                    f"{r.aic:.6f}",
                    f"{r.bic:.6f}",
                    "-" if r.dic is None else f"{r.dic:.6f}",
                ]
            )
        widths = [max(len(row[i]) for row in [header] + body) for i in range(len(header))]
        lines = ["  ".join(h.ljust(w) for h, w in zip(header, widths)).rstrip()]
        for row in body:
            lines.append("  ".join(c.ljust(w) for c, w in zip(row, widths)).rstrip())
        for crit in ("aic", "bic", "dic"):
            winner = self.winners.get(crit)
            if winner is not None:
                lines.append(f"winner[{crit}]: {winner}")
        return "\n".join(lines)


def compare_models(
    data: Dataset,
    opts: FitOptions | None = None,
    dic: dict | None = None,
    extra_rows: tuple = (),
) -> ComparisonReport:
    """Fit full and independence models, rank them per criterion.

    `dic` optionally maps a model label to a DIC value computed from an
    MCMC run; `extra_rows` appends externally fitted ModelRow entries to
    the table before winners are decided.
    """
    dic = dic or {}
    n = data.n

    full_fit = fit_mle(data, opts)
    aic_full, bic_full = information_criteria(full_fit.loglik, 3, n)
    full_row = ModelRow(
        label=FULL_LABEL,
        k=3,
        loglik=full_fit.loglik,
        aic=aic_full,
        bic=bic_full,
        dic=dic.get(FULL_LABEL),
    )

    shape1 = itl_shape_mle(data.x)
    shape2 = itl_shape_mle(data.y)
    ll_sub = loglik(BitlParams(shape1, shape2, 0.0), data)
    aic_sub, bic_sub = information_criteria(ll_sub, 2, n)
    sub_row = ModelRow(
        label=SUBMODEL_LABEL,
        k=2,
        loglik=ll_sub,
        aic=aic_sub,
        bic=bic_sub,
        dic=dic.get(SUBMODEL_LABEL),
    )

    rows = [full_row, sub_row, *extra_rows]
    winners = {}
    for crit in ("aic", "bic"):
        winners[crit] = min(rows, key=lambda r: getattr(r, crit)).label
    with_dic = [r for r in rows if r.dic is not None]
    winners["dic"] = min(with_dic, key=lambda r: r.dic).label if with_dic else None
    return ComparisonReport(rows=rows, winners=winners)

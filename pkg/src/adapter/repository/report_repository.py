"""
Экспорт результатов: отчёт о покрытии (CSV + таблица), сводка бутстрэпа (JSON),
пачка оценок и ECDF (CSV), таблица масштабированных отклонений
"""

import json
from typing import List, Optional, Sequence

import numpy as np
import pandas as pd

from ...domain.entity.bootstrap_result import BootstrapBatch, ConfidenceInterval, EmpiricalCDF
from ...domain.entity.chain import TransitionMatrix
from ...domain.entity.coverage_report import CoverageReport
from ...domain.service.estimation.smoothing import DeviationRow


class ReportRepository:
    def __init__(self, decimals: int = 6):
        self.decimals = decimals

    @property
    def _float_format(self) -> str:
        return f"%.{self.decimals}f"

    def _csv(self, frame: pd.DataFrame) -> str:
        return frame.to_csv(index=False, float_format=self._float_format, lineterminator="\n")

    def coverage_frame(self, report: CoverageReport, layout: str = "wide") -> pd.DataFrame:
        """
        long: строка на (truth, n, u, ячейка)
        wide: строка на (truth, n, u), по паре столбцов coverage/mean_width на ячейку
        """
        records = [
            {
                "truth": c.truth,
                "n": c.n,
                "u": c.u.label,
                "cell_i": c.cell[0],
                "cell_j": c.cell[1],
                "coverage": c.coverage,
                "mean_width": c.mean_width,
                "R": c.replications,
            }
            for c in report
        ]
        frame = pd.DataFrame.from_records(
            records, columns=["truth", "n", "u", "cell_i", "cell_j", "coverage", "mean_width", "R"]
        )
        if layout == "long":
            return frame

        rows = []
        for (truth, n, u), cells in report.by_arm().items():
            row = {"truth": truth, "n": n, "u": u.label}
            for (i, j), cell in cells.items():
                row[f"coverage_{i}_{j}"] = cell.coverage
                row[f"mean_width_{i}_{j}"] = cell.mean_width
                row["R"] = cell.replications
            rows.append(row)
        wide = pd.DataFrame(rows)
        ordered = ["truth", "n", "u"] + [c for c in wide.columns if c not in ("truth", "n", "u", "R")] + ["R"]
        return wide[ordered]

    def coverage_csv(self, report: CoverageReport, layout: str = "wide") -> str:
        return self._csv(self.coverage_frame(report, layout))

    def render_coverage_table(self, report: CoverageReport) -> str:
        """Таблица в раскладке (n, u) × (truth, ячейка), покрытие в процентах"""
        frame = self.coverage_frame(report, layout="long")
        frame["column"] = frame.apply(lambda r: f"{r.truth} P_{r.cell_i}{r.cell_j}", axis=1)
        frame["percent"] = frame["coverage"] * 100.0
        table = frame.pivot_table(
            index=["n", "u"], columns="column", values="percent", sort=False, aggfunc="first"
        )
        table = table[list(dict.fromkeys(frame["column"]))]
        title = f"Empirical coverage (%), nominal {report.nominal * 100:.0f}%"
        body = table.to_string(float_format=lambda x: f"{x:.1f}")
        return f"{title}\n{body}\n"

    def bootstrap_summary(
        self,
        batch: BootstrapBatch,
        intervals: List[List[ConfidenceInterval]],
        n: int,
        generator: Optional[TransitionMatrix] = None,
    ) -> str:
        """JSON: mean (d×d), covariance (d²×d²), интервалы по ячейкам, смещение"""
        r = self._round
        summary = {
            "d": batch.d,
            "B": batch.B,
            "n": n,
            "alpha": intervals[0][0].alpha if intervals else None,
            "mean": r(batch.mean_matrix()),
            "covariance": r(batch.covariance),
            "intervals": [
                [{"lower": r(ci.lower), "upper": r(ci.upper)} for ci in row] for row in intervals
            ],
        }
        if generator is not None:
            summary["bias"] = r(batch.bias(generator).reshape(batch.d, batch.d))
        return json.dumps(summary, indent=2) + "\n"

    def _round(self, value):
        if isinstance(value, np.ndarray):
            return [self._round(v) for v in value]
        return round(float(value), self.decimals) + 0.0

    def batch_csv(self, batch: BootstrapBatch) -> str:
        """B строк × d² столбцов оценок, столбцы p_i_j"""
        d = batch.d
        columns = [f"p_{i}_{j}" for i in range(1, d + 1) for j in range(1, d + 1)]
        return self._csv(pd.DataFrame(batch.estimates, columns=columns))

    def ecdf_csv(self, ecdf: EmpiricalCDF) -> str:
        return self._csv(pd.DataFrame(ecdf.pairs(), columns=["value", "probability"]))

    def deviation_text(self, rows: Sequence[DeviationRow]) -> str:
        """Матрицы √n(P̂_n - P), √n(P̃_n - P) и их максимумы по n"""
        lines = []
        for row in rows:
            lines.append(f"n = {row.n}")
            for label, matrix in (("sqrt(n)(P_hat - P)", row.mle_deviation), ("sqrt(n)(P_tilde - P)", row.smoothed_deviation)):
                lines.append(f"  {label}:")
                for values in matrix:
                    lines.append("    " + " ".join(f"{x:+.{self.decimals}f}" for x in values))
            lines.append(f"  max|MLE| = {row.mle_max:.{self.decimals}f}, max|smoothed| = {row.smoothed_max:.{self.decimals}f}")
        return "\n".join(lines) + "\n"

"""Machine-readable result emission"""
import csv
import io
import json
import math
import sys
from pathlib import Path
from typing import Any, Dict, Iterable, List, Optional, Sequence

from ..exceptions import NumericalError, OutputError
from ..models import OutputFormat, OutputSpec, WaveSample


def _cell(value: Any) -> Any:
    if isinstance(value, bool):
        return value
    if isinstance(value, complex):
        raise TypeError("complex cells must be split into real and imaginary columns")
    if isinstance(value, float):
        if not math.isfinite(value):
            raise NumericalError(f"refusing to write non-finite value {value!r}")
        return repr(value)
    return value


def _json_value(value: Any) -> Any:
    if isinstance(value, float) and not math.isfinite(value):
        raise NumericalError(f"refusing to write non-finite value {value!r}")
    return value


def render_rows(rows: Sequence[Dict[str, Any]], fmt: OutputFormat) -> str:
    """Render rows in a byte-stable form: column order follows the first row"""
    if fmt is OutputFormat.JSON:
        payload = [{key: _json_value(value) for key, value in row.items()} for row in rows]
        return json.dumps(payload, indent=2) + "\n"
    buffer = io.StringIO()
    if rows:
        columns = list(rows[0])
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(columns)
        for row in rows:
            writer.writerow([_cell(row[column]) for column in columns])
    return buffer.getvalue()


class ResultWriter:
    """Writes command rows to a file or stdout and profiles for external plotting"""

    def __init__(self, spec: OutputSpec):
        self.spec = spec

    def write(self, rows: Sequence[Dict[str, Any]]) -> Optional[Path]:
        text = render_rows(rows, self.spec.format)
        if self.spec.path is None:
            sys.stdout.write(text)
            return None
        path = Path(self.spec.path)
        try:
            path.parent.mkdir(parents=True, exist_ok=True)
            path.write_text(text, encoding="utf-8")
        except OSError as e:
            raise OutputError(f"cannot write {path}: {e}") from e
        return path

    def write_profiles(self, samples: Iterable[WaveSample]) -> List[Path]:
        """One whitespace-separated file per t with columns x, |psi|^2, Re psi, Im psi"""
        if self.spec.plot_data is None:
            return []
        by_time: Dict[float, List[WaveSample]] = {}
        for sample in samples:
            by_time.setdefault(sample.t, []).append(sample)
        directory = Path(self.spec.plot_data)
        written = []
        try:
            directory.mkdir(parents=True, exist_ok=True)
            for t in sorted(by_time):
                lines = ["# x abs2 re im"]
                for sample in sorted(by_time[t], key=lambda s: s.x):
                    psi = sample.psi
                    values = [sample.x, abs(psi) ** 2, psi.real, psi.imag]
                    lines.append(" ".join(_cell(float(v)) for v in values))
                path = directory / f"profile_t{t!r}.dat"
                path.write_text("\n".join(lines) + "\n", encoding="utf-8")
                written.append(path)
        except OSError as e:
            raise OutputError(f"cannot write plot data to {directory}: {e}") from e
        return written

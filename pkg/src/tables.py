# -*- coding: utf-8 -*-
"""
Вывод и чтение таблиц: CSV (17 значащих цифр) и JSON (устойчивый порядок ключей).
"""

from __future__ import annotations

import io
import json
import math
import sys
from dataclasses import dataclass
from typing import Any, Dict, Iterable, List, Optional, Tuple, Union

import numpy as np
import pandas as pd

from .errors import EmitError
from .evaluation import RunReport
from .passage import DistributionTable

FLOAT_FORMAT = "%.17g"
FORMATS = ("csv", "json")

Emittable = Union[DistributionTable, RunReport, pd.DataFrame]


@dataclass
class TableInfo:
    """Информация о прочитанной таблице."""
    path: str
    num_rows: int
    num_columns: int
    columns: List[str]
    comments: List[str]


def _check_finite(df: pd.DataFrame) -> None:
    numeric = df.select_dtypes(include=[np.number, "bool"])
    if numeric.empty:
        return
    values = numeric.to_numpy(dtype=float)
    bad = ~np.isfinite(values)
    if bad.any():
        row, col = map(int, np.argwhere(bad)[0])
        raise EmitError(
            f"Значение в столбце '{numeric.columns[col]}' строки {row} не конечно: {values[row, col]}"
        )


def _frame_of(obj: Emittable) -> pd.DataFrame:
    if isinstance(obj, pd.DataFrame):
        return obj
    return obj.to_frame()


def _json_default(value: Any) -> Any:
    if isinstance(value, (np.floating, np.integer)):
        return value.item()
    if isinstance(value, np.bool_):
        return bool(value)
    raise TypeError(f"Тип {type(value).__name__} не сериализуется в JSON")


def _json_payload(obj: Emittable, frame: pd.DataFrame, comments: List[str]) -> Dict[str, Any]:
    if isinstance(obj, RunReport):
        return obj.to_dict()
    payload: Dict[str, Any] = {
        "columns": list(frame.columns),
        "rows": frame.to_dict(orient="records"),
    }
    if isinstance(obj, DistributionTable):
        payload["kind"] = obj.kind.value
        payload["total_mass"] = obj.total_mass if math.isfinite(obj.total_mass) else None
    if comments:
        payload["meta"] = dict(line.split("=", 1) if "=" in line else (line, "") for line in comments)
    return payload


def emit(obj: Emittable, fmt: str = "csv", comments: Iterable[str] = ()) -> bytes:
    """
    Сериализует таблицу или отчёт.

    CSV: строки-комментарии '# …', строка заголовка, затем данные с 17 значащими
    цифрами; пустая таблица даёт только заголовок. JSON: ключи отсортированы.
    """
    if fmt not in FORMATS:
        raise EmitError(f"Неизвестный формат вывода: {fmt}")
    frame = _frame_of(obj)
    _check_finite(frame)
    comments = list(comments)
    if fmt == "json":
        text = json.dumps(_json_payload(obj, frame, comments), sort_keys=True, ensure_ascii=False,
                          indent=2, default=_json_default, allow_nan=False)
        return (text + "\n").encode("utf-8")
    buf = io.StringIO()
    for line in comments:
        buf.write(f"# {line}\n")
    frame.to_csv(buf, index=False, float_format=FLOAT_FORMAT, lineterminator="\n")
    return buf.getvalue().encode("utf-8")


def write_output(data: bytes, path: Optional[str]) -> None:
    """Записывает байты в файл или в stdout (path = None или '-')."""
    if path is None or path == "-":
        sys.stdout.buffer.write(data)
        sys.stdout.buffer.flush()
        return
    with open(path, "wb") as f:
        f.write(data)


def read_table_csv(path: str, required_columns: Iterable[str] = ()) -> Tuple[pd.DataFrame, TableInfo]:
    """Чтение CSV, записанного emit (строки '#' возвращаются отдельно)."""
    with open(path, "r", encoding="utf-8") as f:
        text = f.read()
    comments = [line[1:].strip() for line in text.splitlines() if line.startswith("#")]
    df = pd.read_csv(io.StringIO(text), comment="#", float_precision="round_trip")
    missing = [c for c in required_columns if c not in df.columns]
    if missing:
        raise ValueError(
            f"Столбцы {missing} не найдены в файле {path}. "
            f"Доступные столбцы: {list(df.columns)}"
        )

    info = TableInfo(
        path=path,
        num_rows=df.shape[0],
        num_columns=df.shape[1],
        columns=list(df.columns),
        comments=comments,
    )
    return df, info

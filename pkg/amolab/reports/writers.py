import json
import logging
import os
from datetime import datetime
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict, Optional, Union

import numpy as np
import pandas as pd

logging.basicConfig(level=logging.INFO, format='%(asctime)s - %(name)s - %(levelname)s - %(message)s')
logger = logging.getLogger(__name__)

TABLE_FORMATS = ("csv", "json", "parquet")
FLOAT_FORMAT = "%.17g"


def _json_default(value: Any):
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, np.floating):
        return float(value)
    if isinstance(value, np.bool_):
        return bool(value)
    if isinstance(value, np.ndarray):
        return value.tolist()
    if isinstance(value, (Fraction, complex)):
        return str(value)
    if hasattr(value, "to_dict"):
        return value.to_dict()
    raise TypeError(f"Object of type {type(value).__name__} is not JSON serializable")


class ResultWriter:

    def __init__(self, output_dir: Optional[Union[str, Path]] = None, header: bool = True):
        self.output_dir = Path(output_dir) if output_dir else Path("data/results")
        self.header = header
        os.makedirs(self.output_dir, exist_ok=True)

    def _target(self, name: Union[str, Path], suffix: str) -> Path:
        path = Path(name)
        if not path.is_absolute() and path.parent == Path("."):
            path = self.output_dir / path
        if path.suffix == "":
            path = path.with_suffix(suffix)
        path.parent.mkdir(parents=True, exist_ok=True)
        return path

    def header_line(self) -> str:
        return f"# amolab {datetime.now().isoformat(timespec='seconds')}\n"

    def write_table(self, dataframe: pd.DataFrame, name: Union[str, Path], fmt: str = "csv") -> str:
        if fmt not in TABLE_FORMATS:
            raise ValueError(f"Unknown table format {fmt}, expected one of {TABLE_FORMATS}")
        output_file = self._target(name, f".{fmt}")

        if fmt == "csv":
            with open(output_file, "w", newline="") as file_handle:
                if self.header:
                    file_handle.write(self.header_line())
                dataframe.to_csv(file_handle, index=False, float_format=FLOAT_FORMAT, lineterminator="\n")
        elif fmt == "json":
            # json.dump writes floats with repr
            records = dataframe.to_dict("records")
            self._dump_json({"rows": records}, output_file)
        else:
            dataframe.to_parquet(output_file, compression="snappy", index=False)

        logger.info(f"Wrote {len(dataframe)} rows to {output_file}")
        return str(output_file)

    def write_report(self, report: Dict[str, Any], name: Union[str, Path]) -> str:
        output_file = self._target(name, ".json")
        self._dump_json(dict(report), output_file)
        logger.info(f"Wrote report to {output_file}")
        return str(output_file)

    def write_error(self, error: BaseException, command: str, name: Union[str, Path] = "error") -> str:
        payload = {"error": type(error).__name__, "message": str(error), "command": command}
        output_file = self._target(name, ".json")
        with open(output_file, "w") as file_handle:
            json.dump(payload, file_handle, indent=2, sort_keys=True)
            file_handle.write("\n")
        logger.error(f"{command} failed with {payload['error']}: {payload['message']}")
        return str(output_file)

    def _dump_json(self, payload: Dict[str, Any], output_file: Path):
        if self.header:
            payload = {"generated": self.header_line()[2:].strip(), **payload}
        with open(output_file, "w") as file_handle:
            json.dump(payload, file_handle, indent=2, sort_keys=True, default=_json_default)
            file_handle.write("\n")

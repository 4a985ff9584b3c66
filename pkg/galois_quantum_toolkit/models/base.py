"""
Base classes and shared field types for models
"""

from pathlib import Path
from typing import Annotated, Any, Type, TypeVar

import numpy as np
from pydantic import BaseModel, ConfigDict, PlainSerializer, PlainValidator

ModelSubclass = TypeVar("ModelSubclass", bound="Model")


class Model(BaseModel):
    model_config = ConfigDict(arbitrary_types_allowed=True)

    def save(self, path: Path | str):
        if isinstance(path, str):
            path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        with open(path, "w") as f:
            f.write(self.model_dump_json())

    @classmethod
    def load(cls: Type[ModelSubclass], path: Path | str) -> ModelSubclass:
        """Load a Model subclass from a JSON file with type validation."""
        if isinstance(path, str):
            path = Path(path)

        with open(path, "r") as f:
            json_data = f.read()

        return cls.model_validate_json(json_data)

    def toJSON(self) -> str:
        """
        Convert the model to a JSON string.
        """
        return self.model_dump_json()


def _to_complex(value: Any) -> complex:
    if isinstance(value, (list, tuple)):
        if len(value) != 2:
            raise ValueError(f"complex pair must have 2 entries, got {len(value)}")
        return complex(float(value[0]), float(value[1]))
    return complex(value)


def _complex_to_pair(value: complex) -> list[float]:
    return [float(value.real), float(value.imag)]


def _to_complex_array(value: Any) -> np.ndarray:
    array = np.asarray(value)
    if np.iscomplexobj(array):
        return array.astype(np.complex128)
    # real input is read as trailing [re, im] pairs
    array = array.astype(np.float64)
    if array.ndim == 0 or array.shape[-1] != 2:
        raise ValueError("real input for a complex array must end in [re, im] pairs")
    return array[..., 0] + 1j * array[..., 1]


def _complex_array_to_pairs(value: np.ndarray) -> list:
    return np.stack([value.real, value.imag], axis=-1).tolist()


def _to_int_array(value: Any) -> np.ndarray:
    return np.asarray(value, dtype=np.int64)


def _int_array_to_list(value: np.ndarray) -> list:
    return value.tolist()


ComplexValue = Annotated[
    complex,
    PlainValidator(_to_complex),
    PlainSerializer(_complex_to_pair, return_type=list[float]),
]

ComplexArray = Annotated[
    np.ndarray,
    PlainValidator(_to_complex_array),
    PlainSerializer(_complex_array_to_pairs, return_type=list),
]

IntArray = Annotated[
    np.ndarray,
    PlainValidator(_to_int_array),
    PlainSerializer(_int_array_to_list, return_type=list),
]

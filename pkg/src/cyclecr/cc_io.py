#!/usr/bin/env python3

import json
import logging
import math
import os.path as os_path
import sys
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Dict, List, Optional, Sequence, TextIO, Tuple, Union

from charset_normalizer import detect

from cyclecr import BUILTIN_CYCLES_PATH
from cyclecr.cc_cycles import Cycle
from cyclecr.cc_exceptions import InvalidCycleDocumentError
from cyclecr.cc_figures import ComplexCycle, CycleLike
from cyclecr.cc_numeric import Real
from cyclecr.cc_util import EXIT_OK, EXIT_PARSE_ERROR, CcProcedureResult

FIELDS = ("k", "l", "n", "m")


def _number(key: str, value: Any) -> Real:
    # bool is an int subclass, json true/false must not pass as 1/0
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise InvalidCycleDocumentError(f'"{key}" should be a number, got {value!r}.')
    if isinstance(value, float) and not math.isfinite(value):
        raise InvalidCycleDocumentError(f'"{key}" should be finite, got {value!r}.')
    return value


@dataclass(frozen=True)
class CycleDocument:
    """
    The JSON form of a cycle: {"k": .., "l": .., "n": .., "m": .., "label"?: ..,
    "oriented"?: ..}. Numbers are kept as json decoded them, so int input stays
    exact and float input serializes back to the same text.
    """

    k: Real
    l: Real  # noqa: E741
    n: Real
    m: Real
    label: Optional[str] = None
    # whether the sign of the vector (orientation) is meaningful
    oriented: Optional[bool] = None
    # imaginary parts (k, l, n, m) of a non-real cycle such as a complex intersection point
    imag: Optional[Tuple[Real, Real, Real, Real]] = None

    def __post_init__(self) -> None:
        if all(x == 0 for x in (self.k, self.l, self.n, self.m)) and not (
            self.imag is not None and any(x != 0 for x in self.imag)
        ):
            raise InvalidCycleDocumentError("k, l, n and m are all zero.")

    @classmethod
    def parse(cls, obj: Any) -> "CycleDocument":
        if not isinstance(obj, dict):
            raise InvalidCycleDocumentError(f"A cycle should be a json object, got {obj!r}.")
        missing = [key for key in FIELDS if key not in obj]
        if missing:
            raise InvalidCycleDocumentError(f"Cycle {obj!r} misses {', '.join(missing)}.")
        k, l, n, m = (_number(key, obj[key]) for key in FIELDS)  # noqa: E741

        label = obj.get("label", obj.get("name"))
        if label is not None and not isinstance(label, str):
            raise InvalidCycleDocumentError(f'"label" should be a string, got {label!r}.')
        oriented = obj.get("oriented")
        if oriented is not None and not isinstance(oriented, bool):
            raise InvalidCycleDocumentError(f'"oriented" should be true or false, got {oriented!r}.')

        imag = obj.get("imag")
        if imag is not None:
            if not isinstance(imag, dict) or any(key not in imag for key in FIELDS):
                raise InvalidCycleDocumentError(f'"imag" should hold k, l, n and m, got {imag!r}.')
            imag = tuple(_number(f"imag.{key}", imag[key]) for key in FIELDS)
        return cls(k, l, n, m, label, oriented, imag)  # type:ignore

    def serialize(self) -> Dict[str, Any]:
        obj: Dict[str, Any] = {"k": self.k, "l": self.l, "n": self.n, "m": self.m}
        if self.label is not None:
            obj["label"] = self.label
        if self.oriented is not None:
            obj["oriented"] = self.oriented
        if self.imag is not None:
            obj["imag"] = dict(zip(FIELDS, self.imag))
        return obj

    @property
    def is_real(self) -> bool:
        return self.imag is None or all(x == 0 for x in self.imag)

    def to_cycle(self) -> Cycle:
        if not self.is_real:
            raise InvalidCycleDocumentError(f"{self.label or 'cycle'} has non-real coordinates.")
        return Cycle(self.k, self.l, self.n, self.m)

    def to_cycle_like(self) -> CycleLike:
        if self.is_real:
            return self.to_cycle()
        return ComplexCycle.from_vector(
            [complex(re, im) for re, im in zip((self.k, self.l, self.n, self.m), self.imag)]  # type:ignore
        )

    @classmethod
    def from_cycle(cls, C: CycleLike, label: Optional[str] = None) -> "CycleDocument":
        if isinstance(C, ComplexCycle):
            re = tuple(float(complex(x).real) for x in C)
            im = tuple(float(complex(x).imag) for x in C)
            return cls(*re, label=label, imag=None if not any(im) else im)  # type:ignore
        # json has no rationals
        k, l, n, m = (float(x) if isinstance(x, Fraction) else x for x in C)  # noqa: E741
        return cls(k, l, n, m, label=label)


def parse_inline(text: str) -> CycleDocument:
    """'k,l,n,m' with json numbers, e.g. '1,0,0,-1' or '0,0,1,0'."""
    tokens = [token.strip() for token in text.split(",")]
    if len(tokens) != 4:
        raise InvalidCycleDocumentError(f'"{text}" should be 4 comma-separated numbers k,l,n,m.')
    values = []
    for key, token in zip(FIELDS, tokens):
        try:
            values.append(json.loads(token))
        except json.JSONDecodeError as e:
            raise InvalidCycleDocumentError(f'"{token}" in "{text}" is not a number.') from e
    return CycleDocument.parse(dict(zip(FIELDS, values)))


def parse_documents(obj: Any) -> List[CycleDocument]:
    """A single cycle, a list of cycles, or a figure {"cycles": [...], "relations": [...]}."""
    if isinstance(obj, dict) and "cycles" in obj:
        relations = obj.get("relations", [])
        if not isinstance(relations, list):
            raise InvalidCycleDocumentError('"relations" should be a list.')
        obj = obj["cycles"]
    if isinstance(obj, dict):
        return [CycleDocument.parse(obj)]
    if isinstance(obj, list):
        return [CycleDocument.parse(item) for item in obj]
    raise InvalidCycleDocumentError(f"Expected a cycle, a list of cycles or a figure, got {obj!r}.")


class Cc_IO:
    _builtin_cycles: Optional[List[CycleDocument]] = None

    def __init__(self) -> None:
        self.previous_encoding: str = "utf-8"

    def _read_txt(self, path: str, mode: str, encoding: Optional[str] = None) -> Union[str, bytes]:
        try:
            with open(path, mode=mode, encoding=encoding) as f:
                return f.read()
        except FileNotFoundError as e:
            raise InvalidCycleDocumentError(f"No such file as\n\n{path}") from e

    def read_txt(self, path: str, is_guess_encoding: bool = True) -> Optional[str]:
        if not is_guess_encoding:
            return self._read_txt(path, "r", "utf-8")  # type:ignore

        try:
            logging.debug(f"[Cc_IO] Attempting to read {path} with {self.previous_encoding} encoding...")
            content = self._read_txt(path, "r", self.previous_encoding)
        except UnicodeDecodeError:
            logging.debug(f"[Cc_IO] Attempt failed. Reading {path} in binary mode...")
            bytes_ = self._read_txt(path, "rb")
            encoding = detect(bytes_)["encoding"]  # type:ignore

            if encoding is None:
                logging.warning(f"[Cc_IO] {path} is of unsupported file type.")
                return None

            self.previous_encoding = encoding  # type:ignore
            logging.debug(f"[Cc_IO] Decoding the byte string with {encoding} encoding...")
            content = bytes_.decode(encoding=encoding)  # type:ignore

        return content  # type:ignore

    def read_json(self, path: str) -> Any:
        content = self.read_txt(path)
        if content is None:
            raise InvalidCycleDocumentError(f"{path} could not be decoded.")
        try:
            return json.loads(content)
        except json.JSONDecodeError as e:
            raise InvalidCycleDocumentError(f"{path} is not valid json: {e}") from e

    def load_cycles(self, spec: str) -> List[CycleDocument]:
        """
        Resolve a command-line cycle argument: '@name' for a built-in cycle,
        a path to a json document, or inline 'k,l,n,m'.
        """
        if spec.startswith("@"):
            return [self.builtin_cycle(spec[1:])]
        if os_path.isfile(spec) or spec.endswith(".json"):
            logging.debug(f"[Cc_IO] Loading cycles from {spec}")
            return parse_documents(self.read_json(spec))
        return [parse_inline(spec)]

    @classmethod
    def builtin_cycles(cls) -> List[CycleDocument]:
        if cls._builtin_cycles is None:
            with open(BUILTIN_CYCLES_PATH, encoding="utf-8") as f:
                cls._builtin_cycles = parse_documents(json.load(f))
        return cls._builtin_cycles

    @classmethod
    def builtin_descriptions(cls) -> List[Tuple[str, str]]:
        with open(BUILTIN_CYCLES_PATH, encoding="utf-8") as f:
            return [(item["name"], item["description"]) for item in json.load(f)["cycles"]]

    @classmethod
    def builtin_cycle(cls, name: str) -> CycleDocument:
        for doc in cls.builtin_cycles():
            if doc.label == name:
                return doc
        names = ", ".join(f"@{doc.label}" for doc in cls.builtin_cycles())
        raise InvalidCycleDocumentError(f'No built-in cycle named "@{name}". Available: {names}.')

    @classmethod
    def is_writable(cls, filename: str) -> CcProcedureResult:
        """check whether files are opened by such other processes as WPS"""
        if not os_path.exists(filename):
            return EXIT_OK, None
        try:
            with open(filename, "a", encoding="utf-8"):
                pass
        except PermissionError:
            return (
                EXIT_PARSE_ERROR,
                f"PermissionError: can not write to {filename}, because it is already in use"
                " by another process.",
            )
        return EXIT_OK, None

    @classmethod
    def write_json(cls, obj: Any, path: Optional[str] = None) -> None:
        """Write to path, or to stdout when path is None."""
        if path is None:
            json.dump(obj, sys.stdout, ensure_ascii=False, indent=2)
            sys.stdout.write("\n")
            return
        with open(path, "w", encoding="utf-8", newline="\n") as f:
            json.dump(obj, f, ensure_ascii=False, indent=2)
            f.write("\n")
        logging.debug(f"[Cc_IO] Json saved to {path}")

    @classmethod
    def write_table(
        cls, rows: Sequence[Dict[str, Any]], path: str, oformat: str, fieldnames: Optional[Sequence[str]] = None
    ) -> None:
        if oformat not in ("csv", "json"):
            raise ValueError(f'oformat {oformat} not in ("csv", "json")')

        with open(path, "w", encoding="utf-8", newline="") as handle:
            cls._write_rows(rows, handle, oformat, fieldnames)
        logging.debug(f"[Cc_IO] Table saved to {path}")

    @classmethod
    def _write_rows(
        cls, rows: Sequence[Dict[str, Any]], handle: TextIO, oformat: str, fieldnames: Optional[Sequence[str]]
    ) -> None:
        if oformat == "csv":
            import csv

            if fieldnames is None:
                fieldnames = list(rows[0].keys()) if rows else []
            writer = csv.DictWriter(handle, fieldnames=fieldnames)
            writer.writeheader()
            writer.writerows(rows)
        else:
            json.dump(list(rows), handle, indent=2)

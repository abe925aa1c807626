#!/usr/bin/env python3

import json
import logging
from copy import deepcopy
from os import PathLike
from typing import Any, Dict, List, Union

from cyclecr.cc_exceptions import InvalidConfigError
from cyclecr.cc_settings.cc_settings_default import settings_default


class Cc_Settings:
    # Don't have to instanciate this class, just use its classmethods.
    # Values live for the current process only; user files are merged over the
    #  defaults by load() and nothing is written back.
    settings: Dict[str, Any] = deepcopy(settings_default)

    @classmethod
    def allKeys(cls) -> List[str]:
        return list(cls.settings.keys())

    @classmethod
    def value(cls, key: str, default: Any = None) -> Any:
        """
        e.g.
            >>> Cc_Settings.value("Numeric/eps-abs")
            1e-09
            >>> Cc_Settings.value("Render/missing-key", 100)
            100
        """
        return cls.settings.get(key, default)

    @classmethod
    def setValue(cls, key: str, value: Any) -> None:
        cls.settings[key] = value

    @classmethod
    def remove(cls, key: str) -> None:
        cls.settings.pop(key, None)

    @classmethod
    def contains(cls, key: str) -> bool:
        return key in cls.settings

    @classmethod
    def reset(cls) -> None:
        cls.settings = deepcopy(settings_default)

    @classmethod
    def load(cls, path: Union[str, PathLike]) -> None:
        from cyclecr.cc_io import Cc_IO

        content = Cc_IO().read_txt(str(path))
        if content is None:
            raise InvalidConfigError(f"{path} could not be decoded.")
        try:
            user_settings = json.loads(content)
        except json.JSONDecodeError as e:
            raise InvalidConfigError(f"{path} is not valid json: {e}") from e
        if not isinstance(user_settings, dict):
            raise InvalidConfigError(f"{path} should hold a json object of settings.")

        for key, value in user_settings.items():
            if key not in settings_default:
                raise InvalidConfigError(f'Unknown setting "{key}" in {path}.')
            logging.debug(f"[Cc_Settings] {key} = {value!r}")
            cls.settings[key] = value

"""Glob selection of lemma and theorem ids."""

from __future__ import annotations

from collections.abc import Iterable, Sequence
from enum import StrEnum
from typing import TypeVar

import wcmatch.glob as wcglob

from walshsum.errors import ParameterError

IdT = TypeVar("IdT", bound=StrEnum)


def select_ids(choices: Iterable[IdT], patterns: Sequence[str] | None) -> tuple[IdT, ...]:
    """Ids among ``choices`` matching any of ``patterns`` (all of them when ``patterns`` is empty).

    Patterns are case-sensitive globs with brace expansion, e.g. ``BD4_*`` or
    ``{PALEY,FINE}``. Order follows ``choices``.

    Raises:
        ParameterError: If a pattern matches nothing.
    """
    ids = tuple(choices)
    if not patterns:
        return ids
    for pattern in patterns:
        if not any(wcglob.globmatch(str(i), pattern, flags=wcglob.BRACE) for i in ids):
            known = ", ".join(str(i) for i in ids)
            msg = f"Pattern {pattern!r} matches none of: {known}"
            raise ParameterError(msg)
    return tuple(i for i in ids if wcglob.globmatch(str(i), list(patterns), flags=wcglob.BRACE))

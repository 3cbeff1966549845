"""JSON serialization of towers.

Format "znfree-tower-v1": a UTF-8 JSON object with the base alphabet, the
stable letters in construction order (axes given as word expressions over
the already-built part), and optional aliases.  Unknown keys anywhere are
rejected so that fixtures fail loudly instead of drifting.
"""

from __future__ import annotations

import json

from . import tower as T
from .hnn import extend_hnn
from .tower import GroupTower, base_tower
from .wordexpr import parse_word, render

FORMAT = "znfree-tower-v1"


class TowerFileError(ValueError):
    """Malformed tower document (syntax, schema, or unknown keys)."""


_TOP_KEYS = {"format", "alphabet", "letters", "aliases"}
_LETTER_KEYS = {"name", "source_gens", "target_gens"}


def _check_keys(obj, allowed, where):
    extra = set(obj) - allowed
    if extra:
        raise TowerFileError(f"unknown key(s) in {where}: "
                             f"{', '.join(sorted(extra))}")


def to_dict(t: GroupTower) -> dict:
    letters = []
    for sl in t.letters_by_level():
        letters.append({
            "name": sl.name,
            "source_gens": [render(t, g) for g in sl.source_gens],
            "target_gens": [render(t, g) for g in sl.target_gens],
        })
    doc = {"format": FORMAT,
           "alphabet": list(t.symbols),
           "letters": letters}
    if t.aliases:
        doc["aliases"] = {k: render(t, v) for k, v in t.aliases.items()}
    return doc


def from_dict(doc) -> GroupTower:
    if not isinstance(doc, dict):
        raise TowerFileError("document must be a JSON object")
    _check_keys(doc, _TOP_KEYS, "tower document")
    if doc.get("format") != FORMAT:
        raise TowerFileError(f"format must be {FORMAT!r}")
    alphabet = doc.get("alphabet")
    if (not isinstance(alphabet, list)
            or not all(isinstance(s, str) for s in alphabet)):
        raise TowerFileError("alphabet must be a list of strings")
    t = base_tower(alphabet)
    for entry in doc.get("letters", []):
        if not isinstance(entry, dict):
            raise TowerFileError("letter entries must be objects")
        _check_keys(entry, _LETTER_KEYS, f"letter {entry.get('name')!r}")
        try:
            src = [parse_word(t, s) for s in entry["source_gens"]]
            tgt = [parse_word(t, s) for s in entry["target_gens"]]
        except KeyError as e:
            raise TowerFileError(f"letter entry missing {e.args[0]!r}")
        t = extend_hnn(t, entry["name"], src, tgt, auto_rotate=False)
    aliases = doc.get("aliases", {})
    if not isinstance(aliases, dict):
        raise TowerFileError("aliases must be an object")
    if aliases:
        t = GroupTower(t.symbols, t.letters.values(),
                       {k: parse_word(t, v) for k, v in aliases.items()})
    return t


def dumps(t: GroupTower) -> str:
    return json.dumps(to_dict(t), indent=2) + "\n"


def loads(text: str) -> GroupTower:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise TowerFileError(f"invalid JSON: {e}")
    return from_dict(doc)


def save_tower(t: GroupTower, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps(t))


def load_tower(path: str) -> GroupTower:
    with open(path, encoding="utf-8") as fh:
        return loads(fh.read())

import hashlib
from pathlib import Path
from typing import Dict, List, Optional, Union

import yaml
from pydantic import BaseModel, ConfigDict

from config.settings import settings
from src.models.report import CorpusFilter, TheoremId


class CorpusSlice(BaseModel):
    model_config = ConfigDict(frozen=True)

    name: str
    theorem: TheoremId
    filter: CorpusFilter


def manifest_hash(path: Optional[Union[str, Path]] = None) -> str:
    path = Path(path or settings.corpus_manifest_path)
    return hashlib.sha256(path.read_bytes()).hexdigest()


def load_manifest(path: Optional[Union[str, Path]] = None) -> Dict[str, CorpusSlice]:
    path = Path(path or settings.corpus_manifest_path)
    raw = yaml.safe_load(path.read_text()) or {}
    slices: Dict[str, CorpusSlice] = {}
    for name, entry in (raw.get("slices") or {}).items():
        entry = dict(entry)
        theorem = entry.pop("theorem")
        slices[name] = CorpusSlice(name=name, theorem=TheoremId(theorem), filter=CorpusFilter(**entry))
    return slices


def slices_for(theorem: TheoremId, path: Optional[Union[str, Path]] = None) -> List[CorpusSlice]:
    return [s for s in load_manifest(path).values() if s.theorem == theorem]

"""Paper records and the viral / control collections built from them."""

import csv
import io
import json
import logging
from typing import Annotated, Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, ValidationError, model_validator

from services.errors import (
    DuplicateRecordError,
    EmptyControlError,
    InsufficientDataError,
    RecordParseError,
)
from utils.text_segmenter import RawDocument

logger = logging.getLogger(__name__)

RECORD_FIELDS = ("id", "abstract", "downloads", "citations", "bookmarks")
COUNT_FIELDS = ("downloads", "citations", "bookmarks")
COLLECTION_NAMES = ("cited", "downloaded", "bookmarked", "control")

Count = Annotated[int, Field(ge=0, strict=True)]


class PaperRecord(BaseModel):
    model_config = ConfigDict(frozen=True, extra="forbid")

    id: Annotated[str, Field(min_length=1, strict=True)]
    abstract: Annotated[str, Field(strict=True)]
    downloads: Count
    citations: Count
    bookmarks: Count

    @property
    def is_zero_score(self) -> bool:
        return self.downloads == 0 and self.citations == 0 and self.bookmarks == 0

    def to_document(self) -> RawDocument:
        return RawDocument(id=self.id, text=self.abstract)


class CollectionSpec(BaseModel):
    model_config = ConfigDict(frozen=True)

    cite_min: int = Field(350, ge=1)
    download_min: int = Field(330, ge=1)
    bookmark_min: int = Field(8, ge=1)
    control_size: int = Field(3000, ge=1)
    seed: int = 13
    viral_cap: Optional[int] = Field(None, ge=1)


class CollectionSet(BaseModel):
    model_config = ConfigDict(frozen=True)

    cited: Tuple[str, ...]
    downloaded: Tuple[str, ...]
    bookmarked: Tuple[str, ...]
    control: Tuple[str, ...]

    @model_validator(mode="after")
    def _control_is_pure(self):
        viral = set(self.cited) | set(self.downloaded) | set(self.bookmarked)
        overlap = viral & set(self.control)
        if overlap:
            raise ValueError(f"control overlaps viral collections: {', '.join(sorted(overlap))}")
        return self

    def items(self) -> List[Tuple[str, Tuple[str, ...]]]:
        return [(name, getattr(self, name)) for name in COLLECTION_NAMES]


def _record_from_mapping(data, line: int) -> PaperRecord:
    if not isinstance(data, dict):
        raise RecordParseError("record must be a JSON object", line)
    for name in RECORD_FIELDS:
        if name not in data:
            raise RecordParseError(f"missing field '{name}'", line, field=name)
    try:
        return PaperRecord(**data)
    except ValidationError as exc:
        error = exc.errors()[0]
        field = str(error["loc"][0]) if error["loc"] else None
        raise RecordParseError(f"field '{field}': {error['msg']}", line, field=field) from exc


def _jsonl_rows(content: str):
    for number, line in enumerate(content.splitlines(), start=1):
        if not line.strip():
            continue
        try:
            data = json.loads(line)
        except json.JSONDecodeError as exc:
            raise RecordParseError(f"malformed record: {exc.msg}", number) from exc
        yield number, data


def _csv_rows(content: str):
    reader = csv.reader(io.StringIO(content))
    for row in reader:
        number = reader.line_num
        if not row or all(not cell.strip() for cell in row):
            continue
        if len(row) != len(RECORD_FIELDS):
            raise RecordParseError(f"expected {len(RECORD_FIELDS)} columns, got {len(row)}", number)
        data = dict(zip(RECORD_FIELDS, row))
        for name in COUNT_FIELDS:
            try:
                data[name] = int(data[name].strip())
            except ValueError as exc:
                raise RecordParseError(f"field '{name}' is not an integer", number, field=name) from exc
        yield number, data


def parse_records(content: str, fmt: str = "jsonl") -> List[PaperRecord]:
    """Parse newline-delimited JSON objects (or header-free CSV) into records, keeping input order."""
    if fmt == "jsonl":
        rows = _jsonl_rows(content)
    elif fmt == "csv":
        rows = _csv_rows(content)
    else:
        raise ValueError(f"unknown record format '{fmt}'")

    records = []
    seen: Dict[str, int] = {}
    for number, data in rows:
        record = _record_from_mapping(data, number)
        if record.id in seen:
            raise DuplicateRecordError(record.id, [seen[record.id], number])
        seen[record.id] = number
        records.append(record)
    logger.debug("parsed %d records (%s)", len(records), fmt)
    return records


def control_sample(candidates: Sequence[str], size: int, seed: int) -> Tuple[str, ...]:
    """Uniform sample without replacement, reproducible for a seed, returned in candidate order."""
    if not candidates:
        raise EmptyControlError("no candidates to sample from")
    if size >= len(candidates):
        return tuple(candidates)
    rng = np.random.default_rng(seed)
    picks = np.sort(rng.choice(len(candidates), size=size, replace=False))
    return tuple(candidates[int(i)] for i in picks)


def _viral(records: Iterable[PaperRecord], field: str, minimum: int) -> List[str]:
    return [record.id for record in records if getattr(record, field) >= minimum]


def build_collections(records: Sequence[PaperRecord], spec: CollectionSpec) -> CollectionSet:
    if not records:
        raise InsufficientDataError("no records to build collections from")

    cited = _viral(records, "citations", spec.cite_min)
    downloaded = _viral(records, "downloads", spec.download_min)
    bookmarked = _viral(records, "bookmarks", spec.bookmark_min)

    if spec.viral_cap is not None:
        # one seed offset per collection so the caps are independent
        cited = list(control_sample(cited, spec.viral_cap, spec.seed + 1)) if cited else cited
        downloaded = list(control_sample(downloaded, spec.viral_cap, spec.seed + 2)) if downloaded else downloaded
        bookmarked = list(control_sample(bookmarked, spec.viral_cap, spec.seed + 3)) if bookmarked else bookmarked

    candidates = [record.id for record in records if record.is_zero_score]
    if not candidates:
        raise EmptyControlError("no record scores zero on downloads, citations and bookmarks")
    control = control_sample(candidates, spec.control_size, spec.seed)

    collections = CollectionSet(
        cited=tuple(cited),
        downloaded=tuple(downloaded),
        bookmarked=tuple(bookmarked),
        control=control,
    )
    logger.info(
        "collections: cited=%d downloaded=%d bookmarked=%d control=%d (of %d candidates)",
        len(cited), len(downloaded), len(bookmarked), len(control), len(candidates),
    )
    return collections


def select_records(records: Sequence[PaperRecord], ids: Iterable[str], source: str = "collection") -> List[PaperRecord]:
    """Records for the given ids, in id-list order; unknown ids are an error."""
    by_id = {record.id: record for record in records}
    selected = []
    for record_id in ids:
        record = by_id.get(record_id)
        if record is None:
            raise RecordParseError(f"{source}: unknown record id '{record_id}'", field="id")
        selected.append(record)
    return selected

from __future__ import annotations

import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Dict, List, Optional, Set, Tuple

from ..errors import ConfigSyntaxError, DanglingReference, DuplicateId
from ..models.surface import BoundingPair, Configuration, Curve, Region, SeparatingTwist

logger = logging.getLogger(__name__)

# Line grammar ('#' starts a comment):
#   genus INT
#   basepoint REGION_ID
#   region REGION_ID genus INT pairs INT*
#   curve CURVE_ID class aINT regions REGION_ID REGION_ID
#   sepcurve CURVE_ID regions REGION_ID REGION_ID
#   bp BP_ID curves CURVE_ID CURVE_ID
#   sep SEP_ID curve CURVE_ID
#   cycle GEN_ID+

KEYWORDS = ("genus", "basepoint", "region", "curve", "sepcurve", "bp", "sep", "cycle")


def _is_int(text: str) -> bool:
    return bool(text) and all(ch in "0123456789" for ch in text)


@dataclass(frozen=True)
class _Word:
    text: str
    line: int
    column: int


def _words(raw: str, line_no: int) -> List[_Word]:
    body = raw.split("#", 1)[0]
    out: List[_Word] = []
    col = 0
    n = len(body)
    while col < n:
        if body[col].isspace():
            col += 1
            continue
        start = col
        while col < n and not body[col].isspace():
            col += 1
        out.append(_Word(body[start:col], line_no, start + 1))
    return out


class _ConfigReader:
    def __init__(self, text: str, name: str) -> None:
        self.text = text
        self.name = name
        self.g: Optional[int] = None
        self.basepoints: List[_Word] = []
        self.regions: List[Region] = []
        self.curves: List[Curve] = []
        self.pairs: List[BoundingPair] = []
        self.twists: List[SeparatingTwist] = []
        self.cycle: Optional[Tuple[str, ...]] = None
        self.cycle_words: List[_Word] = []
        self.ids: Dict[str, int] = {}
        self.refs: List[Tuple[str, _Word, Set[str]]] = []  # (expected kind, word, allowed kinds)
        self.kinds: Dict[str, str] = {}

    # -------------------------
    # Token helpers
    # -------------------------

    @staticmethod
    def _fail(message: str, word: _Word) -> ConfigSyntaxError:
        return ConfigSyntaxError(message, line=word.line, column=word.column)

    def _expect_keyword(self, words: List[_Word], i: int, keyword: str, head: _Word) -> None:
        if i >= len(words):
            raise ConfigSyntaxError(f"expected '{keyword}'", line=head.line, column=head.column)
        if words[i].text != keyword:
            raise self._fail(f"expected '{keyword}', found {words[i].text!r}", words[i])

    def _take(self, words: List[_Word], i: int, what: str, head: _Word) -> _Word:
        if i >= len(words):
            raise ConfigSyntaxError(f"expected {what}", line=head.line, column=head.column)
        return words[i]

    def _int(self, word: _Word, *, minimum: int = 0) -> int:
        if not _is_int(word.text):
            raise self._fail(f"expected an integer, found {word.text!r}", word)
        value = int(word.text)
        if value < minimum:
            raise self._fail(f"expected an integer >= {minimum}, found {value}", word)
        return value

    def _declare(self, word: _Word, kind: str) -> str:
        if word.text in KEYWORDS:
            raise self._fail(f"{word.text!r} is a keyword and cannot be an id", word)
        if word.text in self.ids:
            raise DuplicateId(
                f"id {word.text!r} already declared on line {self.ids[word.text]}", line=word.line
            )
        self.ids[word.text] = word.line
        self.kinds[word.text] = kind
        return word.text

    def _refer(self, word: _Word, *allowed: str) -> str:
        self.refs.append((allowed[0], word, set(allowed)))
        return word.text

    def _no_trailing(self, words: List[_Word], i: int) -> None:
        if i < len(words):
            raise self._fail(f"unexpected {words[i].text!r}", words[i])

    # -------------------------
    # Statements
    # -------------------------

    def read(self) -> Configuration:
        lines = self.text.splitlines()
        seen_any = False
        for line_no, raw in enumerate(lines, start=1):
            words = _words(raw, line_no)
            if not words:
                continue
            seen_any = True
            head = words[0]
            handler = getattr(self, f"_stmt_{head.text}", None)
            if handler is None:
                raise self._fail(f"unknown statement {head.text!r}", head)
            handler(words)

        if not seen_any:
            raise ConfigSyntaxError("empty configuration", line=1, column=1)
        if self.g is None:
            raise ConfigSyntaxError("missing 'genus' line", line=1, column=1)
        self._resolve()

        marked = {w.text for w in self.basepoints}
        regions = tuple(
            Region(r.id, r.genus, r.pair_indices, r.id in marked, r.line) for r in self.regions
        )
        config = Configuration(
            g=self.g,
            regions=regions,
            curves=tuple(self.curves),
            bounding_pairs=tuple(self.pairs),
            separating_twists=tuple(self.twists),
            cycle=self.cycle or (),
            name=self.name,
        )
        logger.debug(
            "parsed %s: g=%s regions=%s curves=%s bps=%s seps=%s cycle=%s",
            config.label(),
            config.g,
            len(config.regions),
            len(config.curves),
            len(config.bounding_pairs),
            len(config.separating_twists),
            " ".join(config.cycle) or "(empty)",
        )
        return config

    def _stmt_genus(self, words: List[_Word]) -> None:
        head = words[0]
        if self.g is not None:
            raise self._fail("'genus' declared twice", head)
        self.g = self._int(self._take(words, 1, "a genus", head), minimum=1)
        self._no_trailing(words, 2)

    def _stmt_basepoint(self, words: List[_Word]) -> None:
        head = words[0]
        word = self._take(words, 1, "a region id", head)
        self._refer(word, "region")
        self.basepoints.append(word)
        self._no_trailing(words, 2)

    def _stmt_region(self, words: List[_Word]) -> None:
        head = words[0]
        rid = self._declare(self._take(words, 1, "a region id", head), "region")
        self._expect_keyword(words, 2, "genus", head)
        genus = self._int(self._take(words, 3, "a genus", head))
        self._expect_keyword(words, 4, "pairs", head)
        pairs = tuple(self._int(w, minimum=1) for w in words[5:])
        if len(set(pairs)) != len(pairs):
            raise self._fail(f"region {rid!r} lists a pair index twice", head)
        self.regions.append(Region(rid, genus, tuple(sorted(pairs)), False, head.line))

    def _class_index(self, word: _Word) -> int:
        text = word.text
        if len(text) < 2 or text[0] != "a" or not _is_int(text[1:]):
            raise self._fail(f"expected a class of the form a<INT>, found {text!r}", word)
        value = int(text[1:])
        if value < 1:
            raise self._fail(f"class index must be >= 1, found {value}", word)
        return value

    def _stmt_curve(self, words: List[_Word]) -> None:
        head = words[0]
        cid = self._declare(self._take(words, 1, "a curve id", head), "curve")
        self._expect_keyword(words, 2, "class", head)
        index = self._class_index(self._take(words, 3, "a class", head))
        self._expect_keyword(words, 4, "regions", head)
        left = self._refer(self._take(words, 5, "a region id", head), "region")
        right = self._refer(self._take(words, 6, "a region id", head), "region")
        self._no_trailing(words, 7)
        self.curves.append(Curve(cid, index, (left, right), head.line))

    def _stmt_sepcurve(self, words: List[_Word]) -> None:
        head = words[0]
        cid = self._declare(self._take(words, 1, "a curve id", head), "curve")
        self._expect_keyword(words, 2, "regions", head)
        left = self._refer(self._take(words, 3, "a region id", head), "region")
        right = self._refer(self._take(words, 4, "a region id", head), "region")
        self._no_trailing(words, 5)
        self.curves.append(Curve(cid, None, (left, right), head.line))

    def _stmt_bp(self, words: List[_Word]) -> None:
        head = words[0]
        bid = self._declare(self._take(words, 1, "a bounding pair id", head), "bp")
        self._expect_keyword(words, 2, "curves", head)
        first = self._refer(self._take(words, 3, "a curve id", head), "curve")
        second = self._refer(self._take(words, 4, "a curve id", head), "curve")
        self._no_trailing(words, 5)
        self.pairs.append(BoundingPair(bid, (first, second), head.line))

    def _stmt_sep(self, words: List[_Word]) -> None:
        head = words[0]
        sid = self._declare(self._take(words, 1, "a separating twist id", head), "sep")
        self._expect_keyword(words, 2, "curve", head)
        curve = self._refer(self._take(words, 3, "a curve id", head), "curve")
        self._no_trailing(words, 4)
        self.twists.append(SeparatingTwist(sid, curve, head.line))

    def _stmt_cycle(self, words: List[_Word]) -> None:
        head = words[0]
        if self.cycle is not None:
            raise self._fail("'cycle' declared twice", head)
        if len(words) < 2:
            raise ConfigSyntaxError("cycle needs at least one generator id", line=head.line, column=head.column)
        for w in words[1:]:
            self._refer(w, "bp", "sep")
        self.cycle = tuple(w.text for w in words[1:])

    def _resolve(self) -> None:
        for expected, word, allowed in self.refs:
            kind = self.kinds.get(word.text)
            if kind is None:
                raise DanglingReference(f"undeclared {expected} id {word.text!r}", line=word.line)
            if kind not in allowed:
                wanted = " or ".join(sorted(allowed))
                raise DanglingReference(f"{word.text!r} is a {kind}, expected {wanted}", line=word.line)


def parse_config(text: str, name: str = "") -> Configuration:
    """
    Parse configuration text into a structurally well-formed Configuration.

    Ids are checked for uniqueness and referential integrity; topology is left
    to validate().
    """
    return _ConfigReader(text, name).read()


def load_config(path: Path | str) -> Configuration:
    p = Path(path)
    data = p.read_bytes()
    try:
        text = data.decode("utf-8")
    except UnicodeDecodeError as exc:
        before = data[: exc.start]
        line = before.count(b"\n") + 1
        column = exc.start - (before.rfind(b"\n") + 1) + 1
        raise ConfigSyntaxError(f"not valid UTF-8 (byte {exc.start})", line=line, column=column) from None
    return parse_config(text, name=p.stem)


def serialize_config(c: Configuration) -> str:
    """Canonical configuration text; parse_config(serialize_config(c)) == c."""
    lines: List[str] = [f"genus {c.g}"]
    for rid in c.basepoint_regions:
        lines.append(f"basepoint {rid}")
    for r in c.regions:
        pairs = " ".join(str(p) for p in r.pair_indices)
        lines.append(f"region {r.id} genus {r.genus} pairs {pairs}".rstrip())
    for cv in c.curves:
        left, right = cv.endpoints
        if cv.class_index is None:
            lines.append(f"sepcurve {cv.id} regions {left} {right}")
        else:
            lines.append(f"curve {cv.id} class a{cv.class_index} regions {left} {right}")
    for bp in c.bounding_pairs:
        lines.append(f"bp {bp.id} curves {bp.curve_ids[0]} {bp.curve_ids[1]}")
    for s in c.separating_twists:
        lines.append(f"sep {s.id} curve {s.curve_id}")
    if c.cycle:
        lines.append("cycle " + " ".join(c.cycle))
    return "\n".join(lines) + "\n"

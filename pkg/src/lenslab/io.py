"""JSON documents for categories, functors, lenses and named diagrams, plus DOT export.

A document is one JSON object with ``format_version`` and ``kind`` at the
top.  Nested structures (the source of a functor, the functor of a lens,
the items of a diagram) use the same layout minus ``format_version``, and a
category or functor may also be given as ``"file:relative/path.json"``.
``serialize`` always writes everything inline, including identity
composites, so ``serialize(parse_document(serialize(x)))`` is byte-identical.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass
from pathlib import Path
from typing import Any

from .errors import LensLabError, MalformedError, ValidationError, Violation
from .fincat import FinCat, Functor, validate_category, validate_functor
from .lens import Lens, validate_lens

FORMAT_VERSION = 1
KINDS = ("category", "functor", "lens", "diagram")

_FIELDS = {
    "category": {"kind", "label", "objects", "morphisms", "identities", "compose"},
    "functor": {"kind", "source", "target", "object_map", "morphism_map"},
    "lens": {"kind", "functor", "lift"},
    "diagram": {"kind", "items"},
}


class DocumentError(LensLabError, ValueError):
    """Base for document errors; ``field`` is a JSON path such as ``lift[2].to``."""

    def __init__(self, message: str, field: str | None = None, line: int | None = None,
                 column: int | None = None):
        self.field = field
        self.line = line
        self.column = column
        where = []
        if line is not None:
            where.append(f"line {line}, column {column}")
        if field:
            where.append(f"field {field}")
        super().__init__(f"{message} ({'; '.join(where)})" if where else message)


class DocumentSyntaxError(DocumentError):
    pass


class UnknownField(DocumentError):
    pass


class ValidationFailed(DocumentError):
    def __init__(self, message: str, violations: list[Violation], field: str | None = None):
        self.violations = list(violations)
        detail = "; ".join(str(v) for v in self.violations[:5])
        super().__init__(f"{message}: {detail}" if detail else message, field)

    @property
    def kinds(self) -> set[str]:
        return {v.kind for v in self.violations}


class UnsupportedKind(DocumentError):
    pass


@dataclass(frozen=True, eq=True)
class Document:
    kind: str
    payload: Any
    format_version: int = FORMAT_VERSION


# ---------------------------------------------------------------------------
# parsing


def _bad(path: str, what: str) -> ValidationFailed:
    return ValidationFailed(f"bad field {path}", [Violation("BadField", (path,), what)], path)


def _expect(value, typ, path: str):
    if not isinstance(value, typ):
        raise _bad(path, f"expected {typ.__name__ if isinstance(typ, type) else 'value'}")
    return value


def _check_fields(obj: dict, kind: str, path: str, top: bool):
    allowed = _FIELDS[kind] | ({"format_version"} if top else set())
    for key in obj:
        if key not in allowed:
            raise UnknownField(f"unknown field {key!r} in {kind}", f"{path}.{key}" if path else key)
    required = allowed - {"label", "kind", "format_version"}
    for key in sorted(required):
        if key not in obj:
            raise _bad(f"{path}.{key}" if path else key, "missing")


def _join(path: str, key: str) -> str:
    return f"{path}.{key}" if path else key


class _Parser:
    def __init__(self, base_dir: Path | None, stack: tuple[Path, ...] = ()):
        self.base_dir = base_dir
        self.stack = stack

    def reference(self, ref: str, kind: str, path: str):
        if self.base_dir is None:
            raise _bad(path, "file references need a base directory")
        target = (self.base_dir / ref[len("file:"):]).resolve()
        if target in self.stack:
            raise _bad(path, f"circular reference to {target}")
        try:
            text = target.read_text(encoding="utf-8")
        except OSError as exc:
            raise _bad(path, f"cannot read {target}: {exc.strerror}") from None
        doc = parse_document(text, base_dir=target.parent, _stack=self.stack + (target,))
        if doc.kind != kind:
            raise _bad(path, f"{target.name} holds a {doc.kind}, not a {kind}")
        return doc.payload

    def value(self, obj, kind: str, path: str, top: bool = False):
        if isinstance(obj, str) and obj.startswith("file:") and kind in ("category", "functor"):
            return self.reference(obj, kind, path)
        _expect(obj, dict, path or "<document>")
        if "kind" in obj and obj["kind"] != kind:
            raise _bad(_join(path, "kind"), f"expected {kind!r}")
        _check_fields(obj, kind, path, top)
        return getattr(self, kind)(obj, path)

    def category(self, obj, path):
        objects = _expect(obj["objects"], list, _join(path, "objects"))
        for i, o in enumerate(objects):
            _expect(o, str, f"{_join(path, 'objects')}[{i}]")
        mors = []
        for i, m in enumerate(_expect(obj["morphisms"], list, _join(path, "morphisms"))):
            p = f"{_join(path, 'morphisms')}[{i}]"
            _expect(m, dict, p)
            for key in m:
                if key not in ("name", "src", "tgt"):
                    raise UnknownField(f"unknown field {key!r} in morphism", f"{p}.{key}")
            for key in ("name", "src", "tgt"):
                _expect(m.get(key), str, f"{p}.{key}")
            mors.append((m["name"], m["src"], m["tgt"]))
        ids = _expect(obj["identities"], dict, _join(path, "identities"))
        for k, v in ids.items():
            _expect(v, str, f"{_join(path, 'identities')}.{k}")
        compose: dict[tuple[str, str], str] = {}
        for i, t in enumerate(_expect(obj["compose"], list, _join(path, "compose"))):
            p = f"{_join(path, 'compose')}[{i}]"
            if not (isinstance(t, list) and len(t) == 3 and all(isinstance(x, str) for x in t)):
                raise _bad(p, "expected a triple [g, f, gf] of names")
            g, f, gf = t
            if (g, f) in compose and compose[(g, f)] != gf:
                raise ValidationFailed("conflicting composites",
                                       [Violation("ConflictingCompose", (g, f), f"{compose[(g, f)]} vs {gf}")], p)
            compose[(g, f)] = gf
        # identity composites may be omitted
        ends = {name: (s, t) for name, s, t in mors}
        for name, (s, t) in ends.items():
            if t in ids:
                compose.setdefault((ids[t], name), name)
            if s in ids:
                compose.setdefault((name, ids[s]), name)
        label = obj.get("label")
        if label is not None:
            _expect(label, str, _join(path, "label"))
        try:
            cat = FinCat(objects, mors, ids, compose, label=label)
        except MalformedError as exc:
            raise ValidationFailed("malformed category", [Violation("Malformed", (), str(exc))], path) from None
        try:
            return validate_category(cat)
        except ValidationError as exc:
            raise ValidationFailed("invalid category", exc.violations, path) from None

    def functor(self, obj, path):
        A = self.value(obj["source"], "category", _join(path, "source"))
        B = self.value(obj["target"], "category", _join(path, "target"))
        om = _expect(obj["object_map"], dict, _join(path, "object_map"))
        mm = _expect(obj["morphism_map"], dict, _join(path, "morphism_map"))
        try:
            F = Functor(A, B, om, mm)
        except MalformedError as exc:
            raise ValidationFailed("malformed functor", [Violation("Malformed", (), str(exc))], path) from None
        try:
            return validate_functor(F)
        except ValidationError as exc:
            raise ValidationFailed("invalid functor", exc.violations, path) from None

    def lens(self, obj, path):
        F = self.value(obj["functor"], "functor", _join(path, "functor"))
        lift = {}
        for i, row in enumerate(_expect(obj["lift"], list, _join(path, "lift"))):
            p = f"{_join(path, 'lift')}[{i}]"
            _expect(row, dict, p)
            for key in row:
                if key not in ("at", "over", "to"):
                    raise UnknownField(f"unknown field {key!r} in lift row", f"{p}.{key}")
            for key in ("at", "over", "to"):
                _expect(row.get(key), str, f"{p}.{key}")
            lift[(row["at"], row["over"])] = row["to"]
        try:
            lens = Lens(F, lift)
        except MalformedError as exc:
            raise ValidationFailed("malformed lens", [Violation("Malformed", (), str(exc))], path) from None
        try:
            return validate_lens(lens)
        except ValidationError as exc:
            raise ValidationFailed("invalid lens", exc.violations, path) from None

    def diagram(self, obj, path):
        items = _expect(obj["items"], dict, _join(path, "items"))
        out = {}
        for name, item in items.items():
            p = f"{_join(path, 'items')}.{name}"
            _expect(item, dict, p)
            kind = item.get("kind")
            if kind not in ("category", "functor", "lens"):
                raise _bad(f"{p}.kind", "diagram items must be categories, functors or lenses")
            out[name] = self.value(item, kind, p)
        return out


def parse_document(text: str, base_dir: str | os.PathLike | None = None, _stack=()) -> Document:
    """Parse and validate one document."""
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentSyntaxError(exc.msg, line=exc.lineno, column=exc.colno) from None
    if not isinstance(obj, dict):
        raise _bad("<document>", "top level must be an object")
    version = obj.get("format_version")
    if version != FORMAT_VERSION:
        raise _bad("format_version", f"expected {FORMAT_VERSION}, got {version!r}")
    kind = obj.get("kind")
    if kind not in KINDS:
        raise _bad("kind", f"expected one of {', '.join(KINDS)}")
    parser = _Parser(Path(base_dir) if base_dir is not None else None, tuple(_stack))
    return Document(kind, parser.value(obj, kind, "", top=True), version)


def load_document(path: str | os.PathLike) -> Document:
    path = Path(path)
    text = path.read_text(encoding="utf-8")
    return parse_document(text, base_dir=path.parent, _stack=(path.resolve(),))


# ---------------------------------------------------------------------------
# serialization


def _category_body(cat: FinCat) -> dict:
    body: dict[str, Any] = {"kind": "category"}
    if cat.label is not None:
        body["label"] = cat.label
    body["objects"] = list(cat.objects)
    body["morphisms"] = [{"name": m.name, "src": m.src, "tgt": m.tgt} for m in cat.morphisms]
    body["identities"] = dict(cat.identities)
    body["compose"] = [[g, f, gf] for (g, f), gf in cat.compose.items()]
    return body


def _functor_body(F: Functor) -> dict:
    return {
        "kind": "functor",
        "source": _category_body(F.source),
        "target": _category_body(F.target),
        "object_map": F.object_map,
        "morphism_map": F.morphism_map,
    }


def _lens_body(lens: Lens) -> dict:
    return {
        "kind": "lens",
        "functor": _functor_body(lens.functor),
        "lift": [{"at": a, "over": u, "to": w} for (a, u), w in lens.lift.items()],
    }


def _body(x) -> dict:
    if isinstance(x, FinCat):
        return _category_body(x)
    if isinstance(x, Functor):
        return _functor_body(x)
    if isinstance(x, Lens):
        return _lens_body(x)
    if isinstance(x, dict):
        return {"kind": "diagram", "items": {name: _body(v) for name, v in x.items()}}
    raise UnsupportedKind(f"cannot serialize {type(x).__name__}")


def to_document(x) -> Document:
    if isinstance(x, Document):
        return x
    return Document(_body(x)["kind"], x)


def serialize(x) -> str:
    """Canonical JSON text for a structure or :class:`Document`."""
    doc = to_document(x)
    body = _body(doc.payload)
    out = {"format_version": doc.format_version, **body}
    return _dump(out, 0) + "\n"


def _is_leaf(x) -> bool:
    if isinstance(x, list):
        return all(not isinstance(y, (list, dict)) for y in x)
    if isinstance(x, dict):
        return len(x) <= 3 and all(not isinstance(y, (list, dict)) for y in x.values())
    return True


def _dump(x, depth: int) -> str:
    """Indented JSON that keeps short flat rows (triples, morphisms, lift rows) on one line."""
    if _is_leaf(x) and not (isinstance(x, dict) and depth == 0):
        return json.dumps(x, ensure_ascii=False, separators=(", ", ": "))
    pad, inner = "  " * depth, "  " * (depth + 1)
    if isinstance(x, list):
        items = [inner + _dump(y, depth + 1) for y in x]
        return "[\n" + ",\n".join(items) + "\n" + pad + "]"
    items = [f"{inner}{json.dumps(k, ensure_ascii=False)}: {_dump(v, depth + 1)}" for k, v in x.items()]
    return "{\n" + ",\n".join(items) + "\n" + pad + "}"


def save_document(x, path: str | os.PathLike):
    Path(path).write_text(serialize(x), encoding="utf-8")


# ---------------------------------------------------------------------------
# DOT


def _q(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def _category_dot(cat: FinCat, name: str) -> list[str]:
    lines = [f"digraph {_q(name)} {{"]
    for o in cat.objects:
        lines.append(f"  {_q(o)};")
    for m in cat.morphisms:
        if not cat.is_identity(m.name):
            lines.append(f"  {_q(m.src)} -> {_q(m.tgt)} [label={_q(m.name)}];")
    lines.append("}")
    return lines


def _lens_dot(lens: Lens, name: str) -> list[str]:
    A, B = lens.source, lens.target
    F = lens.functor
    chosen: dict[str, list[str]] = {}
    for (a, u), w in lens.lift.items():
        if not B.is_identity(u):
            chosen.setdefault(w, []).append(u)
    lines = [f"digraph {_q(name)} {{", "  compound=true;"]
    for i, b in enumerate(B.objects):
        lines.append(f"  subgraph {_q(f'cluster_{i}')} {{")
        lines.append(f"    label={_q(b)};")
        for a in A.objects:
            if F.on_object(a) == b:
                lines.append(f"    {_q(a)};")
        lines.append("  }")
    for m in A.morphisms:
        if A.is_identity(m.name):
            continue
        attrs = [f"label={_q(m.name)}"]
        if m.name in chosen:
            attrs.append(f"lift={_q(','.join(chosen[m.name]))}")
            attrs.append("style=bold")
        else:
            attrs.append("style=dashed")
        lines.append(f"  {_q(m.src)} -> {_q(m.tgt)} [{', '.join(attrs)}];")
    lines.append("}")
    return lines


def export_dot(doc) -> str:
    """DOT text for a category, or for a lens with its domain clustered by fibre.

    Lens edges that are chosen lifts are bold and carry ``lift=`` naming the
    codomain morphisms they lift; the other domain morphisms are dashed.
    """
    doc = to_document(doc)
    x = doc.payload
    if doc.kind == "category":
        lines = _category_dot(x, x.label or "category")
    elif doc.kind == "lens":
        lines = _lens_dot(x, "lens")
    else:
        raise UnsupportedKind(f"cannot export a {doc.kind} document to DOT")
    return "\n".join(lines) + "\n"

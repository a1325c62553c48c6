import json

import pytest
from hypothesis import given

from lenslab.examples import FIXTURE_DIR, build_codesign_example, fixture_names, load_fixture
from lenslab.fincat import walking_arrow
from lenslab.io import (
    Document, DocumentSyntaxError, UnknownField, UnsupportedKind, ValidationFailed, export_dot,
    load_document, parse_document, save_document, serialize, to_document,
)
from lenslab.lens import identity_lens
from lenslab.seeds import SEED_DIR
from strategies import categories, lenses

TWO = walking_arrow()


def corpus():
    return sorted(SEED_DIR.glob("*.json")) + sorted(FIXTURE_DIR.glob("*.json"))


class TestRoundTrip:
    def test_corpus_byte_identical(self):
        files = corpus()
        assert len(files) >= 25
        for path in files:
            text = path.read_text(encoding="utf-8")
            assert serialize(load_document(path)) == text, path.name

    def test_swept_lenses(self, all_swept):
        for l in all_swept:
            text = serialize(l)
            doc = parse_document(text)
            assert doc.kind == "lens" and doc.payload == l
            assert serialize(doc) == text

    def test_diagram(self):
        doc = load_document(FIXTURE_DIR / "codesign_experts.json")
        assert doc.kind == "diagram" and set(doc.payload) == {"main", "alternative"}
        assert doc.payload["main"] == build_codesign_example().opinion

    def test_save(self, tmp_path):
        save_document(TWO, tmp_path / "two.json")
        assert load_document(tmp_path / "two.json").payload == TWO

    def test_to_document(self):
        assert to_document(TWO) == Document("category", TWO)
        with pytest.raises(UnsupportedKind):
            serialize(42)


@given(categories())
def test_category_round_trip(c):
    assert parse_document(serialize(c)).payload == c


@given(lenses())
def test_lens_round_trip(l):
    text = serialize(l)
    assert serialize(parse_document(text)) == text


def two_doc():
    return json.loads(serialize(TWO))


class TestErrors:
    def test_syntax(self):
        with pytest.raises(DocumentSyntaxError) as exc:
            parse_document('{"kind": "category",\n  "objects": [}')
        assert exc.value.line == 2

    def test_unknown_field(self):
        d = two_doc()
        d["colour"] = "red"
        with pytest.raises(UnknownField) as exc:
            parse_document(json.dumps(d))
        assert exc.value.field == "colour"

    def test_unknown_nested_field(self):
        d = two_doc()
        d["morphisms"][2]["weight"] = 1
        with pytest.raises(UnknownField) as exc:
            parse_document(json.dumps(d))
        assert exc.value.field == "morphisms[2].weight"

    def test_missing_field(self):
        d = two_doc()
        del d["identities"]
        with pytest.raises(ValidationFailed) as exc:
            parse_document(json.dumps(d))
        assert exc.value.kinds == {"BadField"} and exc.value.field == "identities"

    def test_wrong_version_and_kind(self):
        d = two_doc()
        d["format_version"] = 2
        with pytest.raises(ValidationFailed):
            parse_document(json.dumps(d))
        d["format_version"] = 1
        d["kind"] = "monad"
        with pytest.raises(ValidationFailed):
            parse_document(json.dumps(d))

    def test_bad_composite(self):
        d = two_doc()
        d["compose"] = [t for t in d["compose"] if t[:2] != ["u", "1x"]] + [["u", "1x", "1y"]]
        with pytest.raises(ValidationFailed) as exc:
            parse_document(json.dumps(d))
        assert exc.value.kinds

    def test_lens_axiom1(self):
        d = json.loads(serialize(identity_lens(TWO)))
        for row in d["lift"]:
            if row["over"] == "u":
                row["to"] = "1x"
        with pytest.raises(ValidationFailed) as exc:
            parse_document(json.dumps(d))
        assert "Axiom1" in exc.value.kinds

    def test_lens_missing_lift(self):
        d = json.loads(serialize(identity_lens(TWO)))
        d["lift"] = [row for row in d["lift"] if row["over"] != "u"]
        with pytest.raises(ValidationFailed) as exc:
            parse_document(json.dumps(d))
        assert exc.value.kinds == {"MissingLift"}

    def test_lens_unknown_name(self):
        d = json.loads(serialize(identity_lens(TWO)))
        d["lift"][0]["to"] = "nope"
        with pytest.raises(ValidationFailed) as exc:
            parse_document(json.dumps(d))
        assert exc.value.kinds == {"Malformed"}


class TestReferences:
    def test_file_reference(self, tmp_path):
        save_document(TWO, tmp_path / "two.json")
        d = json.loads(serialize(identity_lens(TWO)))
        d["functor"]["source"] = "file:two.json"
        d["functor"]["target"] = "file:two.json"
        (tmp_path / "id.json").write_text(json.dumps(d))
        doc = load_document(tmp_path / "id.json")
        assert doc.payload == identity_lens(TWO)
        # serialization inlines the reference
        assert serialize(doc) == serialize(identity_lens(TWO))

    def test_reference_needs_base(self):
        d = json.loads(serialize(identity_lens(TWO)))
        d["functor"]["source"] = "file:two.json"
        with pytest.raises(ValidationFailed):
            parse_document(json.dumps(d))

    def test_missing_and_wrong_kind(self, tmp_path):
        save_document(identity_lens(TWO), tmp_path / "lens.json")
        d = json.loads(serialize(identity_lens(TWO)))
        d["functor"]["source"] = "file:lens.json"
        with pytest.raises(ValidationFailed, match="not a category"):
            parse_document(json.dumps(d), base_dir=tmp_path)
        d["functor"]["source"] = "file:absent.json"
        with pytest.raises(ValidationFailed, match="cannot read"):
            parse_document(json.dumps(d), base_dir=tmp_path)

    def test_cycle(self, tmp_path):
        f = {"format_version": 1, "kind": "functor", "source": "file:a.json", "target": "file:a.json",
             "object_map": {}, "morphism_map": {}}
        (tmp_path / "a.json").write_text(json.dumps(f))
        with pytest.raises(ValidationFailed, match="circular"):
            load_document(tmp_path / "a.json")


class TestDot:
    def test_category(self):
        text = export_dot(TWO)
        assert text.startswith('digraph "2" {')
        assert '"x" -> "y" [label="u"];' in text
        assert "1x" not in text

    def test_lens_clusters_and_lifts(self):
        text = export_dot(load_fixture("codesign"))
        assert text.count("subgraph") == 2
        assert 'lift="false<=true"' in text and "style=bold" in text
        assert "style=dashed" in text

    def test_identity_lens_all_bold(self):
        text = export_dot(identity_lens(TWO))
        assert '"x" -> "y" [label="u", lift="u", style=bold];' in text

    def test_diagram_unsupported(self):
        with pytest.raises(UnsupportedKind):
            export_dot(load_document(FIXTURE_DIR / "codesign_experts.json"))


def test_fixture_names():
    assert "codesign" in fixture_names() and "state_lens" in fixture_names()

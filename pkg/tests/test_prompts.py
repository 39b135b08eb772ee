import hashlib

import pytest

from semkit.errors import SemkitError
from semkit.prompts import (PromptSpec, build_prompt, count_prompt_tokens, dd_names,
                            default_template, load_dd_source, render_dd)
from semkit.pymr import binding_names
from semkit.resources import dd_path

METHOD = [{"kind": "class", "name": "GeoModel"},
          {"kind": "method", "parent": "GeoModel", "name": "find_state",
           "params": [{"name": "name", "type": "str"}], "returns": "State"}]

# frozen digests of deterministic renderings (see test_golden_prompt_snapshot)
GOLDEN_PROMPT_SHA256 = "a3ab7991c64ebb20508a21fe1bf2a2532054ef7341d04c9ae36f384de6d51ab3"
GOLDEN_PROMPT_TOKENS = 150


def test_render_variants_for_a_method():
    full = render_dd(METHOD, "full")
    assert "def find_state(name: str) -> State: ..." in full
    untyped = render_dd(METHOD, "no-typing")
    assert "def find_state(name): ..." in untyped
    assert "str" not in untyped and "State" not in untyped.replace("GeoModel", "")
    listing = render_dd(METHOD, "operator-list")
    assert listing.splitlines() == ["GeoModel", "find_state"]
    assert render_dd(METHOD, "none") == ""


def test_render_empty_source():
    assert render_dd([], "full") == ""


@pytest.mark.parametrize("environment,dialect", [
    ("geo", "pymr"), ("social", "pymr"), ("calendar", "pymr")])
def test_operator_list_matches_binding_closure(environment, dialect):
    declarations = load_dd_source(dd_path(environment, dialect))
    listed = set(render_dd(declarations, "operator-list").splitlines())
    assert listed == set(binding_names(environment))
    assert listed == set(dd_names(declarations))


def test_no_typing_keeps_every_operator_name():
    declarations = load_dd_source(dd_path("geo", "pymr"))
    untyped = render_dd(declarations, "no-typing")
    for name in render_dd(declarations, "operator-list").splitlines():
        assert name in untyped
    for annotation in (": str", ": int", ": float", "-> State", "List["):
        assert annotation not in untyped


def spec(dd_variant="full", dd_text="DDTEXT", demos=(("q1", "s1"),), test="qt"):
    return PromptSpec(dd_variant=dd_variant, dd_text=dd_text,
                      demonstrations=tuple(demos), test_utterance=test, dialect="pymr")


def test_prompt_without_dd_drops_header_lines():
    text = build_prompt(spec(dd_variant="none", dd_text=""))
    assert text.splitlines()[0] == "query: q1"
    assert "description of the domain" not in text


def test_prompt_with_dd_and_zero_demos():
    text = build_prompt(spec(demos=()))
    assert "DDTEXT" in text
    assert "query: qt" in text
    assert "q1" not in text


def test_prompt_demo_and_test_slots():
    text = build_prompt(spec(demos=(("first q", "first s"), ("second q", "second s"))))
    assert text.index("first q") < text.index("first s") < text.index("second q")
    assert text.rstrip().endswith("solution:")
    assert "query: qt" in text


def test_empty_spec_rejected():
    with pytest.raises(SemkitError):
        build_prompt(spec(dd_variant="none", dd_text="", demos=()))
    with pytest.raises(SemkitError):
        build_prompt(spec(dd_variant="none", dd_text="oops"))


def test_prompt_injective_in_demo_order():
    a = build_prompt(spec(demos=(("q1", "s1"), ("q2", "s2"))))
    b = build_prompt(spec(demos=(("q2", "s2"), ("q1", "s1"))))
    assert a != b


def test_prompt_length_monotone_in_k(geoquery):
    demos = [(ex.utterance, ex.programs["pymr"]) for ex in geoquery.examples[:6]]
    lengths = [len(build_prompt(spec(demos=tuple(demos[:k])))) for k in range(1, 7)]
    assert lengths == sorted(lengths)


def golden_prompt(geoquery):
    declarations = load_dd_source(dd_path("geo", "pymr"))
    demos = tuple((ex.utterance, ex.programs["pymr"]) for ex in geoquery.examples[:2])
    return build_prompt(PromptSpec(
        dd_variant="full", dd_text=render_dd(declarations, "full"),
        demonstrations=demos, test_utterance="what is the longest river ?", dialect="pymr"))


def test_golden_prompt_snapshot(geoquery):
    text = golden_prompt(geoquery)
    assert hashlib.sha256(text.encode()).hexdigest() == GOLDEN_PROMPT_SHA256
    assert count_prompt_tokens(text) == GOLDEN_PROMPT_TOKENS


def test_count_prompt_tokens():
    assert count_prompt_tokens("") == 0
    assert count_prompt_tokens("a b  c") == 3
    assert count_prompt_tokens("a b", tokenizer=lambda t: list(t)) == 3
    assert count_prompt_tokens("a b", tokenizer=lambda t: 42) == 42


def test_template_resource_loads():
    template = default_template("v1")
    for slot in ("[DD]", "[query-i]", "[solution-i]", "[query-test]"):
        assert slot in template

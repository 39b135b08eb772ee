import datetime as dt
import random

import pytest

from semkit.calflow import (Call, DateTimeClause, DateTimeValues, Word,
                            exec_dfs, extract_operators, parse_dfs, render_dfs,
                            resolve_datetime)
from semkit.errors import MrExecError, MrParseError
from semkit.execute import run_program

SHOWCASE = "CreateEvent( AND( at_location( Central Park ) , starts_at( NextDOW( FRIDAY ) ) ) )"
ANCHOR = dt.datetime(2023, 1, 2, 8, 0)  # a Monday


def test_parse_showcase_tree():
    ast = parse_dfs(SHOWCASE)
    assert ast == Call("CreateEvent", (Call("AND", (
        Call("at_location", (Word("Central Park"),)),
        Call("starts_at", (Call("NextDOW", (Word("FRIDAY"),)),)),
    )),))


def test_parse_empty_constraint():
    assert parse_dfs("CreateEvent()") == Call("CreateEvent", ())


def test_syntax_error():
    with pytest.raises(MrParseError):
        parse_dfs("CreateEvent(AND(")


def test_unknown_head_and_arity():
    with pytest.raises(MrParseError, match="unknown head"):
        parse_dfs("MakeParty( now )")
    with pytest.raises(MrParseError, match="argument"):
        parse_dfs("CreateEvent( AND() )")


def test_render_round_trip():
    ast = parse_dfs(SHOWCASE)
    assert render_dfs(ast) == SHOWCASE
    assert parse_dfs(render_dfs(ast)) == ast
    assert render_dfs(parse_dfs("CreateEvent()")) == "CreateEvent()"


def test_bare_word_spans_close_at_comma_or_paren():
    ast = parse_dfs("CreateEvent( AND( at_location( Room 12 ) , has_subject( One on One ) ) )")
    and_node = ast.args[0]
    assert and_node.args[0].args[0] == Word("Room 12")
    assert and_node.args[1].args[0] == Word("One on One")


def test_resolve_next_dow():
    start, end = resolve_datetime([DateTimeClause.get_next_dow("Friday")], ANCHOR)
    assert start == dt.datetime(2023, 1, 6, 9, 0)
    assert end == start + dt.timedelta(minutes=30)


def test_resolve_time_only_uses_anchor_date():
    start, _ = resolve_datetime([DateTimeClause.time_by_hm(11, "am")], ANCHOR)
    assert start == dt.datetime(2023, 1, 2, 11, 0)


def test_resolve_mdy_plus_time():
    clauses = [DateTimeClause.date_by_mdy(11, 3), DateTimeClause.time_by_hm(11, "am")]
    start, _ = resolve_datetime(clauses, ANCHOR)
    assert start == dt.datetime(2023, 11, 3, 11, 0)


def test_mdy_year_inference_rolls_forward():
    start, _ = resolve_datetime([DateTimeClause.date_by_mdy(1, 1)], ANCHOR)
    assert start.date() == dt.date(2024, 1, 1)


def test_conflicting_and_invalid_clauses():
    with pytest.raises(MrExecError, match="conflicting-clause"):
        resolve_datetime([DateTimeValues.Today, DateTimeValues.Tomorrow], ANCHOR)
    with pytest.raises(MrExecError, match="invalid-datetime"):
        DateTimeClause.time_by_hm(13, "pm")
    with pytest.raises(MrExecError, match="invalid-datetime"):
        resolve_datetime([DateTimeClause.date_by_mdy(2, 31)], ANCHOR)


def test_next_dow_always_within_week():
    rng = random.Random(7)
    days = ["monday", "tuesday", "wednesday", "thursday", "friday", "saturday", "sunday"]
    for _ in range(10):
        anchor = dt.datetime(2023, 1, 1) + dt.timedelta(days=rng.randrange(365),
                                                        hours=rng.randrange(24))
        for index, day in enumerate(days):
            start, _ = resolve_datetime([DateTimeClause.get_next_dow(day)], anchor)
            assert start.weekday() == index
            assert anchor.date() < start.date() <= anchor.date() + dt.timedelta(days=7)


def test_exec_showcase(calendar_world):
    world, delta = exec_dfs(parse_dfs(SHOWCASE), calendar_world)
    assert len(delta.created) == 1
    event = delta.created[0]
    assert event.location == "Central Park"
    assert event.start == "2023-01-06T09:00:00"
    assert event.end == "2023-01-06T09:30:00"
    assert world.events[-1] == event
    assert calendar_world.events == ()  # input world untouched


def test_exec_defaults(calendar_world):
    _, delta = exec_dfs(parse_dfs("CreateEvent()"), calendar_world)
    event = delta.created[0]
    assert event.start == "2023-01-02T09:00:00"
    assert event.end == "2023-01-02T09:30:00"
    assert event.subject is None and event.location is None
    assert event.attendees == frozenset()


def test_exec_is_pure(calendar_world):
    ast = parse_dfs(SHOWCASE)
    _, first = exec_dfs(ast, calendar_world)
    _, second = exec_dfs(ast, calendar_world)
    assert first == second


def test_find_manager_of_ceo_fails(calendar_world):
    outcome = run_program("dataflow-simple",
                          "CreateEvent( with_attendee( FindManager( olivia ) ) )",
                          "calendar", calendar_world)
    assert not outcome.ok and outcome.error == "unresolvable-constraint"


def test_unknown_person(calendar_world):
    outcome = run_program("dataflow-simple", "CreateEvent( with_attendee( zorp ) )",
                          "calendar", calendar_world)
    assert not outcome.ok and outcome.error == "unknown-person"


def test_team_is_subset_of_people_and_includes_self(calendar_world):
    for person in calendar_world.people:
        team = calendar_world.team_of(person)
        assert person in team
        assert set(team) <= set(calendar_world.people)


def test_avoid_attendee_removes_from_team(calendar_world):
    text = ("CreateEvent( AND( with_attendee( FindTeamOf( sarah ) ) , "
            "avoid_attendee( michael ) ) )")
    _, delta = exec_dfs(parse_dfs(text), calendar_world)
    event = delta.created[0]
    assert event.attendees == frozenset({"p1"})
    assert event.avoided == frozenset({"p2"})


def test_duration_and_ends_at(calendar_world):
    _, delta = exec_dfs(parse_dfs("CreateEvent( has_duration( 60 ) )"), calendar_world)
    assert delta.created[0].end == "2023-01-02T10:00:00"
    _, delta = exec_dfs(parse_dfs(
        "CreateEvent( AND( starts_at( TODAY ) , ends_at( time_by_hm( 5 , pm ) ) ) )"),
        calendar_world)
    assert delta.created[0].end == "2023-01-02T17:00:00"
    with pytest.raises(MrExecError, match="conflicting-clause"):
        exec_dfs(parse_dfs("CreateEvent( AND( has_duration( 30 ) , "
                           "ends_at( time_by_hm( 5 , pm ) ) ) )"), calendar_world)


def test_extract_operators():
    assert extract_operators(parse_dfs(SHOWCASE)) == frozenset(
        {"CreateEvent", "AND", "at_location", "starts_at", "NextDOW"})
    assert extract_operators(parse_dfs("CreateEvent()")) == frozenset({"CreateEvent"})


def test_extract_operators_golden(smcalflow):
    ast = parse_dfs(smcalflow["sm-11"].programs["dataflow-simple"])
    assert extract_operators(ast) == frozenset(
        {"CreateEvent", "AND", "with_attendee", "FindManager", "CurrentUser",
         "starts_at", "NextDOW", "time_by_hm", "has_duration"})

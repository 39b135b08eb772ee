"""Restricted-Python meaning representations: parser, sandboxed evaluator, bindings.

A program is a single ``def answer():`` function (no parameters, optional
return annotation) whose body uses only the supported subset:

* statements: single-target assignment, expression statement, ``return``,
  ``for ... in ...``, ``if``/``else``;
* expressions: literals, list displays, calls with positional/keyword
  arguments, attribute access, single indexing, list comprehensions,
  generator expressions (only as the sole argument of any/all/max/min/sum/
  list/set), one-parameter lambdas in argument position, single-operator
  comparisons, ``and``/``or``/``not``, ``+ - * /``, ``in``/``not in``;
* builtins: max, min, len, sum, sorted, list, set, any, all, abs;
  collection methods: list.append/extend/remove, set.add/update.

Anything else is rejected at parse time with a structured
unsupported-construct error (string methods, which cannot be detected
statically in untyped code, are rejected when evaluated).  Evaluation is
sandboxed: the only resolvable names are the environment binding (below), the
builtin registry, and local assignments; unknown names and attributes become
captured failures, never host behavior.

Bindings expose, per environment:

* geo: ``geo_model`` (a loaded :class:`semkit.geo.GeoModel`);
* social: ``api`` (``api.people``, ``api.find_person_by_id``) and the
  ``Gender`` namespace;
* calendar: ``api`` (``find_person``, ``get_current_user``, ``add_event``),
  the ``Event`` constructor, and the ``DateTimeClause`` / ``DateTimeValues``
  namespaces.

Runtime errors (name-not-found, attribute-not-found, type-mismatch,
index-out-of-range, empty-input, ...) are captured into failure outcomes so a
batch run can score them as incorrect without crashing.
"""

from __future__ import annotations

import ast as pyast
from dataclasses import dataclass

from . import calflow, social as social_mod
from .errors import MrExecError, MrParseError, UnsupportedConstructError
from .funql import entity_ref
from .geo import City, Country, GeoModel, Place, River, State
from .outcomes import Denotation, Outcome, WorldDelta
from .social import EducationRecord, EmploymentRecord, Person, SocialDb

BUILTIN_NAMES = ("max", "min", "len", "sum", "sorted", "list", "set", "any", "all", "abs")
_GENEXP_HOSTS = ("any", "all", "max", "min", "sum", "list", "set")
LIST_METHODS = ("append", "extend", "remove")
SET_METHODS = ("add", "update")


@dataclass(frozen=True)
class PymrAst:
    source: str
    func: pyast.FunctionDef


# --- parsing ----------------------------------------------------------------

_STMT_NAMES = {
    pyast.While: "while", pyast.With: "with", pyast.Try: "try", pyast.Raise: "raise",
    pyast.Import: "import", pyast.ImportFrom: "import", pyast.ClassDef: "class",
    pyast.FunctionDef: "nested function", pyast.AsyncFunctionDef: "async function",
    pyast.AugAssign: "augmented assignment", pyast.AnnAssign: "annotated assignment",
    pyast.Delete: "del", pyast.Global: "global", pyast.Nonlocal: "nonlocal",
    pyast.Assert: "assert", pyast.Match: "match",
    pyast.Break: "break", pyast.Continue: "continue", pyast.Pass: "pass",
}

_EXPR_NAMES = {
    pyast.Dict: "dict display", pyast.Set: "set display", pyast.DictComp: "dict comprehension",
    pyast.SetComp: "set comprehension", pyast.Await: "await", pyast.Yield: "yield",
    pyast.YieldFrom: "yield", pyast.JoinedStr: "f-string", pyast.Starred: "starred expression",
    pyast.NamedExpr: "walrus assignment", pyast.IfExp: "conditional expression",
    pyast.Slice: "slice", pyast.Tuple: "tuple display",
}

_ALLOWED_BINOPS = (pyast.Add, pyast.Sub, pyast.Mult, pyast.Div)
_ALLOWED_CMPOPS = (pyast.Eq, pyast.NotEq, pyast.Lt, pyast.LtE, pyast.Gt, pyast.GtE,
                   pyast.In, pyast.NotIn)


def parse_pymr(text: str) -> PymrAst:
    """Parse program text, enforcing the construct subset."""
    try:
        module = pyast.parse(text)
    except SyntaxError as exc:
        raise MrParseError(f"syntax error: {exc.msg}", line=exc.lineno) from exc
    body = [s for s in module.body if not _is_docstring(s)]
    if len(body) != 1 or not isinstance(body[0], pyast.FunctionDef):
        for stmt in module.body:
            if isinstance(stmt, (pyast.Import, pyast.ImportFrom)):
                raise UnsupportedConstructError("import", line=stmt.lineno)
        raise MrParseError("program must be exactly one top-level function")
    func = body[0]
    if func.name != "answer":
        raise MrParseError(f"the function must be named 'answer', not {func.name!r}")
    args = func.args
    if (args.args or args.posonlyargs or args.kwonlyargs or args.vararg or args.kwarg
            or args.defaults or args.kw_defaults):
        raise MrParseError("answer() takes no parameters")
    for stmt in func.body:
        _check_stmt(stmt)
    return PymrAst(source=text, func=func)


def _is_docstring(stmt) -> bool:
    return (isinstance(stmt, pyast.Expr) and isinstance(stmt.value, pyast.Constant)
            and isinstance(stmt.value.value, str))


def _check_stmt(stmt) -> None:
    for cls, name in _STMT_NAMES.items():
        if isinstance(stmt, cls):
            raise UnsupportedConstructError(name, line=stmt.lineno)
    if isinstance(stmt, pyast.Assign):
        if len(stmt.targets) != 1:
            raise UnsupportedConstructError("chained assignment", line=stmt.lineno)
        target = stmt.targets[0]
        if isinstance(target, pyast.Attribute):
            raise UnsupportedConstructError("attribute assignment", line=stmt.lineno)
        if not isinstance(target, pyast.Name):
            raise UnsupportedConstructError("destructuring assignment", line=stmt.lineno)
        _check_expr(stmt.value)
    elif isinstance(stmt, pyast.Expr):
        _check_expr(stmt.value)
    elif isinstance(stmt, pyast.Return):
        if stmt.value is not None:
            _check_expr(stmt.value)
    elif isinstance(stmt, pyast.For):
        if stmt.orelse:
            raise UnsupportedConstructError("for-else", line=stmt.lineno)
        if not isinstance(stmt.target, pyast.Name):
            raise UnsupportedConstructError("destructuring loop target", line=stmt.lineno)
        _check_expr(stmt.iter)
        for inner in stmt.body:
            _check_stmt(inner)
    elif isinstance(stmt, pyast.If):
        _check_expr(stmt.test)
        for inner in [*stmt.body, *stmt.orelse]:
            _check_stmt(inner)
    else:
        raise UnsupportedConstructError(type(stmt).__name__.lower(),
                                        line=getattr(stmt, "lineno", None))


def _check_expr(expr, in_call_args: bool = False) -> None:
    for cls, name in _EXPR_NAMES.items():
        if isinstance(expr, cls):
            raise UnsupportedConstructError(name, line=getattr(expr, "lineno", None))
    if isinstance(expr, (pyast.Constant, pyast.Name)):
        return
    if isinstance(expr, pyast.List):
        for item in expr.elts:
            _check_expr(item)
    elif isinstance(expr, pyast.Attribute):
        _check_expr(expr.value)
    elif isinstance(expr, pyast.Subscript):
        if isinstance(expr.slice, pyast.Slice):
            raise UnsupportedConstructError("slice", line=expr.lineno)
        _check_expr(expr.value)
        _check_expr(expr.slice)
    elif isinstance(expr, pyast.Call):
        _check_expr(expr.func)
        host = expr.func.id if isinstance(expr.func, pyast.Name) else None
        for arg in expr.args:
            if isinstance(arg, pyast.GeneratorExp):
                if host not in _GENEXP_HOSTS or len(expr.args) != 1:
                    raise UnsupportedConstructError(
                        "generator expression",
                        "generator expressions may only be the sole argument of "
                        "any/all/max/min/sum/list/set", line=arg.lineno)
                _check_comprehension(arg)
            else:
                _check_expr(arg, in_call_args=True)
        for kw in expr.keywords:
            if kw.arg is None:
                raise UnsupportedConstructError("**kwargs", line=expr.lineno)
            _check_expr(kw.value, in_call_args=True)
    elif isinstance(expr, pyast.Lambda):
        if not in_call_args:
            raise UnsupportedConstructError(
                "lambda", "lambda is only allowed as a call argument", line=expr.lineno)
        args = expr.args
        if (len(args.args) != 1 or args.posonlyargs or args.kwonlyargs
                or args.vararg or args.kwarg or args.defaults):
            raise UnsupportedConstructError(
                "lambda", "lambda must take exactly one parameter", line=expr.lineno)
        _check_expr(expr.body)
    elif isinstance(expr, pyast.ListComp):
        _check_comprehension(expr)
    elif isinstance(expr, pyast.GeneratorExp):
        raise UnsupportedConstructError(
            "generator expression",
            "generator expressions may only be the sole argument of "
            "any/all/max/min/sum/list/set", line=expr.lineno)
    elif isinstance(expr, pyast.Compare):
        if len(expr.ops) != 1 or not isinstance(expr.ops[0], _ALLOWED_CMPOPS):
            raise UnsupportedConstructError("chained comparison", line=expr.lineno)
        _check_expr(expr.left)
        _check_expr(expr.comparators[0])
    elif isinstance(expr, pyast.BoolOp):
        for value in expr.values:
            _check_expr(value)
    elif isinstance(expr, pyast.UnaryOp):
        if not isinstance(expr.op, (pyast.Not, pyast.USub)):
            raise UnsupportedConstructError("unary operator", line=expr.lineno)
        _check_expr(expr.operand)
    elif isinstance(expr, pyast.BinOp):
        if not isinstance(expr.op, _ALLOWED_BINOPS):
            raise UnsupportedConstructError(
                f"operator {type(expr.op).__name__}", line=expr.lineno)
        _check_expr(expr.left)
        _check_expr(expr.right)
    else:
        raise UnsupportedConstructError(type(expr).__name__.lower(),
                                        line=getattr(expr, "lineno", None))


def _check_comprehension(comp) -> None:
    if not isinstance(comp.elt, pyast.expr):  # pragma: no cover - ast guarantees
        raise UnsupportedConstructError("comprehension")
    _check_expr(comp.elt)
    for gen in comp.generators:
        if gen.is_async:
            raise UnsupportedConstructError("async comprehension")
        if not isinstance(gen.target, pyast.Name):
            raise UnsupportedConstructError("destructuring comprehension target")
        _check_expr(gen.iter)
        for cond in gen.ifs:
            _check_expr(cond)


# --- environment bindings ----------------------------------------------------

class Gender:
    male = "en.gender.male"
    female = "en.gender.female"


class SocialApi:
    def __init__(self, db: SocialDb):
        self.people = db.people
        self._db = db

    def find_person_by_id(self, person_id: str) -> Person:
        return self._db.find_person_by_id(person_id)


class CalendarPerson:
    """pymr-facing handle around one org-chart person."""

    def __init__(self, person: calflow.CalPerson, world: calflow.CalendarWorld):
        self._person = person
        self._world = world

    @property
    def name(self) -> str:
        return self._person.name

    def find_manager_of(self) -> "CalendarPerson":
        return CalendarPerson(self._world.manager_of(self._person), self._world)

    def find_team_of(self) -> list["CalendarPerson"]:
        return [CalendarPerson(p, self._world) for p in self._world.team_of(self._person)]

    def __eq__(self, other):
        return isinstance(other, CalendarPerson) and other._person is self._person

    def __hash__(self):
        return hash(id(self._person))

    def __repr__(self):
        return f"<person {self.name}>"


class Event:
    """Unresolved event request; api.add_event resolves and stores it."""

    def __init__(self, subject=None, starts_at=None, ends_at=None, location=None,
                 attendees=None, attendees_to_avoid=None, duration=None):
        self.subject = subject
        self.starts_at = list(starts_at) if starts_at is not None else []
        self.ends_at = list(ends_at) if ends_at is not None else []
        self.location = location
        self.attendees = list(attendees) if attendees is not None else []
        self.attendees_to_avoid = list(attendees_to_avoid) if attendees_to_avoid is not None else []
        self.duration = duration


class CalendarApi:
    def __init__(self, world: calflow.CalendarWorld):
        self._world = world
        self._created = []

    def find_person(self, name: str) -> CalendarPerson:
        if not isinstance(name, str):
            raise MrExecError("type-mismatch", "find_person expects a name string")
        return CalendarPerson(self._world.find_person(name), self._world)

    def get_current_user(self) -> CalendarPerson:
        return CalendarPerson(self._world.current_user, self._world)

    def add_event(self, event: Event) -> None:
        if not isinstance(event, Event):
            raise MrExecError("type-mismatch", "add_event expects an Event")
        draft = calflow._EventDraft()
        draft.subject = _opt_str(event.subject, "subject")
        draft.location = _opt_str(event.location, "location")
        draft.start_clauses = [_clause(c) for c in event.starts_at]
        draft.end_clauses = [_clause(c) for c in event.ends_at]
        if event.duration is not None:
            if not isinstance(event.duration, (int, float)) or isinstance(event.duration, bool):
                raise MrExecError("type-mismatch", "duration must be minutes")
            draft.duration = int(event.duration)
        draft.attendees = [_unwrap_person(p) for p in event.attendees]
        draft.avoided = [_unwrap_person(p) for p in event.attendees_to_avoid]
        self._created.append(calflow.build_event(draft, self._world))


def _opt_str(value, what):
    if value is not None and not isinstance(value, str):
        raise MrExecError("type-mismatch", f"{what} must be a string")
    return value


def _clause(value):
    if isinstance(value, (calflow.DateClause, calflow.TimeClause)):
        return value
    raise MrExecError("type-mismatch", f"{value!r} is not a date/time clause")


def _unwrap_person(value) -> calflow.CalPerson:
    if isinstance(value, CalendarPerson):
        return value._person
    raise MrExecError("type-mismatch", f"{value!r} is not a person")


ENVIRONMENTS = ("geo", "social", "calendar")


def make_binding(environment: str, env_object) -> dict:
    """Top-level names a program may resolve, per environment."""
    if environment == "geo":
        return {"geo_model": env_object}
    if environment == "social":
        return {"api": SocialApi(env_object), "Gender": Gender}
    if environment == "calendar":
        return {
            "api": CalendarApi(env_object),
            "Event": Event,
            "DateTimeClause": calflow.DateTimeClause,
            "DateTimeValues": calflow.DateTimeValues,
        }
    raise ValueError(f"unknown environment {environment!r}")


def binding_names(environment: str) -> frozenset[str]:
    """The closed name surface of an environment: roots, classes, members.

    This is exactly the set of names the corresponding full domain
    description declares (tests assert both directions).
    """
    if environment == "geo":
        return frozenset({
            "geo_model", "GeoModel", "State", "City", "River", "Place", "Country",
            "find_state", "find_city", "find_river", "find_place",
            "states", "cities", "rivers", "places", "country",
            "name", "abbreviation", "capital", "area", "population", "density",
            "high_point", "low_point", "next_to", "size", "is_major",
            "length", "traverses", "elevation", "state", "kind",
        })
    if environment == "social":
        return frozenset({
            "api", "SocialApi", "Person", "EducationRecord", "EmploymentRecord", "Gender",
            "people", "find_person_by_id",
            "id", "name", "gender", "birthdate", "birthplace", "height",
            "relationship_status", "is_student", "friends", "education", "employment",
            "institution", "employer", "job_title", "start_date", "end_date",
            "male", "female",
        })
    if environment == "calendar":
        return frozenset({
            "api", "CalendarApi", "Person", "Event", "DateTimeClause", "DateTimeValues",
            "find_person", "get_current_user", "add_event",
            "name", "find_manager_of", "find_team_of",
            "subject", "starts_at", "ends_at", "location", "attendees",
            "attendees_to_avoid", "duration",
            "get_next_dow", "date_by_mdy", "time_by_hm", "Today", "Tomorrow",
        })
    raise ValueError(f"unknown environment {environment!r}")


# --- evaluation ---------------------------------------------------------------

class _Return(Exception):
    def __init__(self, value):
        self.value = value


_DOMAIN_TYPES = (State, City, River, Place, Country, GeoModel,
                 Person, EducationRecord, EmploymentRecord, SocialApi,
                 CalendarApi, CalendarPerson, Event)
_NAMESPACE_TYPES = (Gender, calflow.DateTimeClause, calflow.DateTimeValues)


class _Lambda:
    def __init__(self, node: pyast.Lambda, interp: "_Interpreter", scope: dict):
        self.node = node
        self.interp = interp
        self.scope = scope

    def __call__(self, value):
        inner = dict(self.scope)
        inner[self.node.args.args[0].arg] = value
        return self.interp.eval(self.node.body, inner)


class _Interpreter:
    def __init__(self, binding: dict):
        self.binding = binding
        self.builtins = {name: getattr(__import__("builtins"), name) for name in BUILTIN_NAMES}

    def run(self, func: pyast.FunctionDef):
        scope: dict = {}
        try:
            for stmt in func.body:
                self.exec_stmt(stmt, scope)
        except _Return as ret:
            return ret.value
        return None

    def exec_stmt(self, stmt, scope: dict) -> None:
        if isinstance(stmt, pyast.Assign):
            scope[stmt.targets[0].id] = self.eval(stmt.value, scope)
        elif isinstance(stmt, pyast.Expr):
            self.eval(stmt.value, scope)
        elif isinstance(stmt, pyast.Return):
            raise _Return(self.eval(stmt.value, scope) if stmt.value is not None else None)
        elif isinstance(stmt, pyast.For):
            iterable = self.eval(stmt.iter, scope)
            for item in self._iter(iterable):
                scope[stmt.target.id] = item
                for inner in stmt.body:
                    self.exec_stmt(inner, scope)
        elif isinstance(stmt, pyast.If):
            branch = stmt.body if self.eval(stmt.test, scope) else stmt.orelse
            for inner in branch:
                self.exec_stmt(inner, scope)
        else:  # pragma: no cover - parser rejects everything else
            raise MrExecError("unsupported-construct", type(stmt).__name__)

    @staticmethod
    def _iter(value):
        if isinstance(value, (list, tuple, set, frozenset)):
            return list(value)
        raise MrExecError("type-mismatch", f"cannot iterate over {type(value).__name__}")

    def eval(self, expr, scope: dict):
        if isinstance(expr, pyast.Constant):
            return expr.value
        if isinstance(expr, pyast.Name):
            return self._lookup(expr.id, scope)
        if isinstance(expr, pyast.List):
            return [self.eval(e, scope) for e in expr.elts]
        if isinstance(expr, pyast.Attribute):
            return self._attribute(self.eval(expr.value, scope), expr.attr)
        if isinstance(expr, pyast.Subscript):
            return self._index(self.eval(expr.value, scope), self.eval(expr.slice, scope))
        if isinstance(expr, pyast.Call):
            return self._call(expr, scope)
        if isinstance(expr, pyast.Lambda):
            return _Lambda(expr, self, scope)
        if isinstance(expr, pyast.ListComp):
            return self._comprehension(expr, scope)
        if isinstance(expr, pyast.Compare):
            return self._compare(expr, scope)
        if isinstance(expr, pyast.BoolOp):
            result = None
            for value_expr in expr.values:
                result = self.eval(value_expr, scope)
                if isinstance(expr.op, pyast.And) and not result:
                    return result
                if isinstance(expr.op, pyast.Or) and result:
                    return result
            return result
        if isinstance(expr, pyast.UnaryOp):
            operand = self.eval(expr.operand, scope)
            if isinstance(expr.op, pyast.Not):
                return not operand
            return self._arith(lambda a, b: -a, operand, 0, "-")
        if isinstance(expr, pyast.BinOp):
            left = self.eval(expr.left, scope)
            right = self.eval(expr.right, scope)
            ops = {pyast.Add: lambda a, b: a + b, pyast.Sub: lambda a, b: a - b,
                   pyast.Mult: lambda a, b: a * b, pyast.Div: lambda a, b: a / b}
            return self._arith(ops[type(expr.op)], left, right, type(expr.op).__name__)
        raise MrExecError("unsupported-construct", type(expr).__name__)  # pragma: no cover

    @staticmethod
    def _arith(op, left, right, label):
        try:
            return op(left, right)
        except ZeroDivisionError as exc:
            raise MrExecError("division-by-zero", str(exc)) from exc
        except TypeError as exc:
            raise MrExecError("type-mismatch", f"{label}: {exc}") from exc

    def _lookup(self, name: str, scope: dict):
        if name in scope:
            return scope[name]
        if name in self.binding:
            return self.binding[name]
        if name in self.builtins:
            return self.builtins[name]
        raise MrExecError("name-not-found", f"name {name!r} is not defined")

    def _attribute(self, base, attr: str):
        if attr.startswith("_"):
            raise MrExecError("attribute-not-found", f"no attribute {attr!r}")
        if isinstance(base, list):
            if attr in LIST_METHODS:
                return getattr(base, attr)
            raise MrExecError("attribute-not-found", f"lists have no attribute {attr!r}")
        if isinstance(base, set):
            if attr in SET_METHODS:
                return getattr(base, attr)
            raise MrExecError("attribute-not-found", f"sets have no attribute {attr!r}")
        if isinstance(base, _DOMAIN_TYPES) or (isinstance(base, type) and base in _NAMESPACE_TYPES):
            try:
                return getattr(base, attr)
            except AttributeError as exc:
                raise MrExecError("attribute-not-found", str(exc)) from exc
        raise MrExecError(
            "attribute-not-found",
            f"values of type {type(base).__name__} expose no attributes")

    @staticmethod
    def _index(base, key):
        if not isinstance(base, (list, str)):
            raise MrExecError("type-mismatch", f"cannot index {type(base).__name__}")
        if not isinstance(key, int) or isinstance(key, bool):
            raise MrExecError("type-mismatch", "indices must be integers")
        try:
            return base[key]
        except IndexError as exc:
            raise MrExecError("index-out-of-range", str(exc)) from exc

    def _call(self, expr: pyast.Call, scope: dict):
        func = self.eval(expr.func, scope)
        args = []
        for arg in expr.args:
            if isinstance(arg, pyast.GeneratorExp):
                args.append(self._comprehension(arg, scope))
            else:
                args.append(self.eval(arg, scope))
        kwargs = {kw.arg: self.eval(kw.value, scope) for kw in expr.keywords}
        if not callable(func):
            raise MrExecError("type-mismatch", f"{type(func).__name__} is not callable")
        try:
            return func(*args, **kwargs)
        except MrExecError:
            raise
        except ValueError as exc:
            raise MrExecError("empty-input", str(exc)) from exc
        except TypeError as exc:
            raise MrExecError("type-mismatch", str(exc)) from exc

    def _comprehension(self, comp, scope: dict):
        results = []

        def loop(generators, inner_scope):
            if not generators:
                results.append(self.eval(comp.elt, inner_scope))
                return
            gen = generators[0]
            for item in self._iter(self.eval(gen.iter, inner_scope)):
                child = dict(inner_scope)
                child[gen.target.id] = item
                if all(self.eval(cond, child) for cond in gen.ifs):
                    loop(generators[1:], child)

        loop(list(comp.generators), dict(scope))
        return results

    def _compare(self, expr: pyast.Compare, scope: dict):
        left = self.eval(expr.left, scope)
        right = self.eval(expr.comparators[0], scope)
        op = expr.ops[0]
        try:
            if isinstance(op, pyast.Eq):
                return left == right
            if isinstance(op, pyast.NotEq):
                return left != right
            if isinstance(op, pyast.Is):
                return left is right
            if isinstance(op, pyast.IsNot):
                return left is not right
            if isinstance(op, pyast.In):
                return left in right
            if isinstance(op, pyast.NotIn):
                return left not in right
            if isinstance(op, pyast.Lt):
                return left < right
            if isinstance(op, pyast.LtE):
                return left <= right
            if isinstance(op, pyast.Gt):
                return left > right
            return left >= right
        except TypeError as exc:
            raise MrExecError("type-mismatch", str(exc)) from exc


# --- outcome normalization ----------------------------------------------------

_GEO_ENTITY_TYPES = (State, City, River, Place, Country)


def _normalize_geo(value) -> Denotation:
    if value is None:
        return Denotation.of_entities([])
    if isinstance(value, bool):
        return Denotation.of_number(1.0 if value else 0.0)
    if isinstance(value, (int, float)):
        return Denotation.of_number(value)
    if isinstance(value, _GEO_ENTITY_TYPES):
        return Denotation.of_entities([entity_ref(value)])
    if isinstance(value, (list, set, frozenset, tuple)):
        items = list(value)
        if all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in items) and items:
            return Denotation.of_numbers(items)
        refs = []
        for item in items:
            if not isinstance(item, _GEO_ENTITY_TYPES):
                raise MrExecError("type-mismatch", f"cannot interpret {item!r} as an answer")
            refs.append(entity_ref(item))
        return Denotation.of_entities(refs)
    raise MrExecError("type-mismatch", f"cannot interpret {value!r} as an answer")


def _normalize_social(value) -> Denotation:
    if value is None:
        return Denotation.of_entities([])
    if isinstance(value, bool):
        return Denotation.of_number(1.0 if value else 0.0)
    if isinstance(value, (int, float)):
        return Denotation.of_number(value)
    if isinstance(value, (Person, str)):
        return Denotation.of_entities([social_mod.value_ref(value)])
    if isinstance(value, (list, set, frozenset, tuple)):
        items = list(value)
        if all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in items) and items:
            return Denotation.of_numbers(items)
        refs = []
        for item in items:
            if not isinstance(item, (Person, str)):
                raise MrExecError("type-mismatch", f"cannot interpret {item!r} as an answer")
            refs.append(social_mod.value_ref(item))
        return Denotation.of_entities(refs)
    raise MrExecError("type-mismatch", f"cannot interpret {value!r} as an answer")


def exec_pymr(ast: PymrAst, environment: str, env_object) -> Outcome:
    """Run a parsed program against an environment; failures are captured."""
    binding = make_binding(environment, env_object)
    interp = _Interpreter(binding)
    try:
        result = interp.run(ast.func)
        if environment == "calendar":
            return Outcome.success(WorldDelta(created=tuple(binding["api"]._created)))
        if environment == "geo":
            return Outcome.success(_normalize_geo(result))
        return Outcome.success(_normalize_social(result))
    except MrExecError as exc:
        return Outcome.from_exception(exc)
    except Exception as exc:  # noqa: BLE001 - captured by contract, never fatal
        return Outcome.failure("execution-error", f"{type(exc).__name__}: {exc}")


def extract_operators(ast: PymrAst) -> frozenset[str]:
    """Accessed attributes, called non-builtin names, constructors, enum members."""
    found: set[str] = set()

    class Visitor(pyast.NodeVisitor):
        def visit_Attribute(self, node):
            if not node.attr.startswith("_"):
                found.add(node.attr)
            self.generic_visit(node)

        def visit_Call(self, node):
            if isinstance(node.func, pyast.Name) and node.func.id not in BUILTIN_NAMES:
                found.add(node.func.id)
            self.generic_visit(node)

    Visitor().visit(ast.func)
    return frozenset(found)

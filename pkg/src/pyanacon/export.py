"""XML form of CL clauses.

One element per constructor, attributes only for action names::

    <contract><obligation><atom name="a"/></obligation></contract>

:func:`from_xml` reads back exactly what :func:`to_xml` writes.
"""

from __future__ import annotations

import logging

from lxml import etree

from .actions import (
    IMPOSSIBLE,
    SKIP,
    ActionExpr,
    Atom,
    AtomicAction,
    Choice,
    Concurrent,
    Impossible,
    Negation,
    Sequence,
    Skip,
    Star,
)
from .clauses import (
    BOTTOM,
    TOP,
    And,
    Bottom,
    Box,
    Clause,
    Obligation,
    Permission,
    Prohibition,
    Top,
    XChoice,
    xchoice,
)
from .exceptions import InvalidClauseError, XmlSchemaError

_LOGGER = logging.getLogger(__name__)

ROOT_TAG = "contract"

_BINARY_ACTIONS: dict[str, type[Concurrent | Sequence | Choice]] = {
    "concurrent": Concurrent,
    "sequence": Sequence,
    "choice": Choice,
}


def to_xml(clause: Clause) -> str:
    """Serialize *clause* as a compact ``<contract>`` document."""
    root = etree.Element(ROOT_TAG)
    root.append(clause_element(clause))
    return etree.tostring(root, encoding="unicode")


def clause_element(clause: Clause) -> etree._Element:
    """Return the element representing *clause*."""
    match clause:
        case Top():
            return etree.Element("top")
        case Bottom():
            return etree.Element("bottom")
        case Obligation(action, reparation):
            return _modal_element("obligation", action, reparation)
        case Prohibition(action, reparation):
            return _modal_element("prohibition", action, reparation)
        case Permission(action):
            return _modal_element("permission", action, None)
        case Box(guard, body):
            elt = etree.Element("box")
            etree.SubElement(elt, "guard").append(action_element(guard))
            elt.append(clause_element(body))
            return elt
        case And(items):
            elt = etree.Element("and")
            for item in items:
                elt.append(clause_element(item))
            return elt
        case XChoice(left, right):
            elt = etree.Element("xchoice")
            elt.append(clause_element(left))
            elt.append(clause_element(right))
            return elt


def _modal_element(
    tag: str, action: ActionExpr, reparation: Clause | None
) -> etree._Element:
    elt = etree.Element(tag)
    elt.append(action_element(action))
    if reparation is not None:
        etree.SubElement(elt, "reparation").append(clause_element(reparation))
    return elt


def action_element(action: ActionExpr) -> etree._Element:
    """Return the element representing an action expression."""
    match action:
        case Impossible():
            return etree.Element("impossible")
        case Skip():
            return etree.Element("skip")
        case Atom(atomic):
            return etree.Element("atom", name=atomic.name)
        case Concurrent(left, right) | Sequence(left, right) | Choice(left, right):
            elt = etree.Element(type(action).__name__.lower())
            elt.append(action_element(left))
            elt.append(action_element(right))
            return elt
        case Negation(operand):
            elt = etree.Element("not")
            elt.append(action_element(operand))
            return elt
        case Star(operand):
            elt = etree.Element("star")
            elt.append(action_element(operand))
            return elt


def from_xml(text: str | bytes) -> Clause:
    """Read a ``<contract>`` document back into a clause.

    Raises XmlSchemaError for malformed XML or any element outside the
    schema, naming the element's path.
    """
    data = text.encode() if isinstance(text, str) else text
    parser = etree.XMLParser(
        resolve_entities=False, no_network=True, remove_comments=True
    )
    try:
        root = etree.fromstring(data, parser)
    except etree.XMLSyntaxError as err:
        raise XmlSchemaError(f"Malformed XML: {err}") from err
    if root.tag != ROOT_TAG:
        raise XmlSchemaError(f"Root element must be <{ROOT_TAG}>", _path(root))
    (body,) = _children(root, 1)
    clause = parse_clause_element(body)
    _LOGGER.debug("Read clause from XML")
    return clause


def _path(elt: etree._Element) -> str:
    return str(elt.getroottree().getpath(elt))


def _children(elt: etree._Element, count: int | None = None) -> list[etree._Element]:
    """Element children of *elt*, checking their number when *count* is set."""
    if elt.text and elt.text.strip():
        raise XmlSchemaError(f"Unexpected text in <{elt.tag}>", _path(elt))
    children = list(elt.iterchildren(tag=etree.Element))
    for child in children:
        if child.tail and child.tail.strip():
            raise XmlSchemaError(f"Unexpected text in <{elt.tag}>", _path(elt))
    if count is not None and len(children) != count:
        raise XmlSchemaError(
            f"<{elt.tag}> needs {count} child element(s), found {len(children)}",
            _path(elt),
        )
    return children


def parse_clause_element(elt: etree._Element) -> Clause:
    """Read one clause element."""
    try:
        return _parse_clause(elt)
    except InvalidClauseError as err:
        raise XmlSchemaError(str(err), _path(elt)) from err


def _parse_clause(elt: etree._Element) -> Clause:
    match elt.tag:
        case "top":
            _children(elt, 0)
            return TOP
        case "bottom":
            _children(elt, 0)
            return BOTTOM
        case "obligation" | "prohibition":
            children = _children(elt)
            if len(children) not in (1, 2):
                raise XmlSchemaError(
                    f"<{elt.tag}> needs an action and an optional <reparation>",
                    _path(elt),
                )
            action = parse_action_element(children[0])
            reparation = None
            if len(children) == 2:
                reparation = _parse_reparation(children[1])
            if elt.tag == "obligation":
                return Obligation(action, reparation)
            return Prohibition(action, reparation)
        case "permission":
            (action_elt,) = _children(elt, 1)
            return Permission(parse_action_element(action_elt))
        case "box":
            guard_elt, body_elt = _children(elt, 2)
            if guard_elt.tag != "guard":
                raise XmlSchemaError("<box> starts with <guard>", _path(guard_elt))
            (action_elt,) = _children(guard_elt, 1)
            return Box(parse_action_element(action_elt), parse_clause_element(body_elt))
        case "and":
            children = _children(elt)
            if len(children) < 2:
                raise XmlSchemaError("<and> needs at least two clauses", _path(elt))
            return And(tuple(parse_clause_element(child) for child in children))
        case "xchoice":
            left, right = _children(elt, 2)
            return xchoice(parse_clause_element(left), parse_clause_element(right))
        case _:
            raise XmlSchemaError(f"Unknown clause element <{elt.tag}>", _path(elt))


def _parse_reparation(elt: etree._Element) -> Clause:
    if elt.tag != "reparation":
        raise XmlSchemaError(f"Expected <reparation>, found <{elt.tag}>", _path(elt))
    (body,) = _children(elt, 1)
    return parse_clause_element(body)


def parse_action_element(elt: etree._Element) -> ActionExpr:
    """Read one action element."""
    try:
        return _parse_action(elt)
    except InvalidClauseError as err:
        raise XmlSchemaError(str(err), _path(elt)) from err


def _parse_action(elt: etree._Element) -> ActionExpr:
    match elt.tag:
        case "impossible":
            _children(elt, 0)
            return IMPOSSIBLE
        case "skip":
            _children(elt, 0)
            return SKIP
        case "atom":
            _children(elt, 0)
            name = elt.get("name")
            if name is None:
                raise XmlSchemaError("<atom> needs a name attribute", _path(elt))
            return Atom(AtomicAction(name))
        case "concurrent" | "sequence" | "choice":
            left, right = _children(elt, 2)
            build = _BINARY_ACTIONS[str(elt.tag)]
            return build(parse_action_element(left), parse_action_element(right))
        case "not":
            (operand,) = _children(elt, 1)
            return Negation(parse_action_element(operand))
        case "star":
            (operand,) = _children(elt, 1)
            return Star(parse_action_element(operand))
        case _:
            raise XmlSchemaError(f"Unknown action element <{elt.tag}>", _path(elt))

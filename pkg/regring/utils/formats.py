"""
Text formats shared by the command surface and golden files.

    ring spec   M2(F2)xM1(F3)
    matrix      2:2x2:[0,1,0,0]
    element     0,1,0,0;2          (row-major per component, ';' between components)
                2:2x2:[0,1,0,0];2  (a component may be written as a matrix)
"""
from typing import List, NamedTuple

import pyparsing as pp

from ..errors import FormatError


class MatrixBlock(NamedTuple):
    p: int
    rows: int
    cols: int
    entries: List[int]


_int = pp.Word(pp.nums).set_parse_action(lambda t: int(t[0]))

_component = pp.Group(
    pp.Suppress('M') + _int + pp.Suppress('(') + pp.Suppress('F') + _int + pp.Suppress(')')
)
RING_SPEC = pp.DelimitedList(_component, delim='x')

MATRIX_TEXT = (
    _int + pp.Suppress(':') + _int + pp.Suppress(pp.CaselessLiteral('x')) + _int + pp.Suppress(':')
    + pp.Suppress('[') + pp.Group(pp.Opt(pp.DelimitedList(_int))) + pp.Suppress(']')
)

ELEMENT_TEXT = pp.DelimitedList(pp.Group(MATRIX_TEXT) | pp.Group(pp.DelimitedList(_int)), delim=';')


def _parse(grammar, text, what):
    try:
        return grammar.parse_string(text, parse_all=True)
    except pp.ParseException as e:
        raise FormatError(f"invalid {what} '{text}': {e.msg} at column {e.col}") from e


def parse_ring_components(text):
    """'M2(F2)xM1(F3)' -> [(2, 2), (1, 3)]"""
    return [(int(n), int(p)) for n, p in _parse(RING_SPEC, text.strip(), 'ring spec')]


def parse_element_blocks(text):
    """'0,1,0,0;2' -> [[0, 1, 0, 0], [2]]

    A block written as a matrix comes back as a MatrixBlock.
    """
    blocks = []
    for block in _parse(ELEMENT_TEXT, text.strip(), 'element'):
        if isinstance(block[-1], pp.ParseResults):
            p, rows, cols, entries = block
            blocks.append(MatrixBlock(p, rows, cols, list(entries)))
        else:
            blocks.append(list(block))
    return blocks

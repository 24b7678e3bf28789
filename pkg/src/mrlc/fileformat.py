"""Line-oriented text format for code instances.

    mrlc v1
    kind local|datalocal
    k <int> r <int> h <int>
    field <degree> <modulus hex>
    <one line per local group: r+1 generators (local) or r generators (datalocal)>
    <datalocal only: one line with the h heavy-parity generators>

Hex values are lowercase with a 0x prefix, separated by single spaces; every
line ends in a newline.  Parsing accepts only this canonical spelling, so
``dumps(loads(text)) == text`` for every accepted file.
"""
from .gf2 import format_element, make_field
from .topology import CodeInstance, Kind, LocalTopology

HEADER = "mrlc v1"


class FormatError(ValueError):
    pass


def dumps(code):
    t, f = code.topology, code.field
    lines = [HEADER, f"kind {t.kind.value}", f"k {t.k} r {t.r} h {t.h}",
             f"field {f.degree} {format_element(f.modulus)}"]
    a = code.alphas
    if t.kind is Kind.LOCAL:
        w = t.r + 1
        rows = [a[i * w:(i + 1) * w] for i in range(t.ell)]
    else:
        rows = [a[i * t.r:(i + 1) * t.r] for i in range(t.ell)] + [a[t.k:]]
    lines += [" ".join(format_element(x) for x in row) for row in rows]
    return "\n".join(lines) + "\n"


def _hex(tok, lineno):
    try:
        value = int(tok, 16)
    except ValueError:
        raise FormatError(f"line {lineno}: {tok!r} is not a hex value") from None
    if format_element(value) != tok:
        raise FormatError(f"line {lineno}: {tok!r} is not canonical lowercase 0x-hex")
    return value


def _int(tok, lineno):
    if not tok.isdigit() or (len(tok) > 1 and tok[0] == "0"):
        raise FormatError(f"line {lineno}: {tok!r} is not a decimal integer")
    return int(tok)


def loads(text):
    if not text.endswith("\n"):
        raise FormatError("file must end with a newline")
    lines = text[:-1].split("\n")
    if len(lines) < 4 or lines[0] != HEADER:
        raise FormatError(f"line 1: expected header {HEADER!r}")
    kind_tok = lines[1].split(" ")
    if len(kind_tok) != 2 or kind_tok[0] != "kind" or kind_tok[1] not in ("local", "datalocal"):
        raise FormatError("line 2: expected 'kind local' or 'kind datalocal'")
    params = lines[2].split(" ")
    if len(params) != 6 or params[0::2] != ["k", "r", "h"]:
        raise FormatError("line 3: expected 'k <int> r <int> h <int>'")
    k, r, h = (_int(x, 3) for x in params[1::2])
    ftok = lines[3].split(" ")
    if len(ftok) != 3 or ftok[0] != "field":
        raise FormatError("line 4: expected 'field <degree> <modulus>'")
    try:
        topo = LocalTopology(k, r, h, Kind(kind_tok[1]))
        field = make_field(_int(ftok[1], 4), None, _hex(ftok[2], 4))
    except FormatError:
        raise
    except ValueError as exc:
        raise FormatError(str(exc)) from None
    widths = [r + 1] * topo.ell if topo.kind is Kind.LOCAL else [r] * topo.ell + [h]
    body = lines[4:]
    if len(body) != len(widths):
        raise FormatError(f"expected {len(widths)} generator lines, got {len(body)}")
    alphas = []
    for i, (line, w) in enumerate(zip(body, widths)):
        toks = line.split(" ")
        if len(toks) != w:
            raise FormatError(f"line {i + 5}: expected {w} values, got {len(toks)}")
        alphas.extend(_hex(tok, i + 5) for tok in toks)
    try:
        return CodeInstance(topo, field, tuple(alphas))
    except ValueError as exc:
        raise FormatError(str(exc)) from None


def dump(code, path):
    with open(path, "w", newline="\n") as fh:
        fh.write(dumps(code))


def load(path):
    with open(path, newline="") as fh:
        return loads(fh.read())

"""Text interchange in the CPLEX LP layout, plus an exact-rationals sidecar.

Numbers that have a terminating decimal expansion are written exactly. Any
other rational is written with 17 significant digits and its exact value goes
to the sidecar as ``<key> num/den``, where the key is ``row.var`` for a
coefficient, ``row.rhs`` for a right-hand side, ``var.lb`` / ``var.ub`` for
bounds and ``obj.var`` for objective coefficients.
"""

from __future__ import annotations

import re
from fractions import Fraction

from ..errors import ParseError
from .model import BINARY, CONTINUOUS, INTEGER, MipConstraint, MipModel, MipVariable

__all__ = ["format_number", "emit_model", "parse_lp", "parse_sidecar"]

LINE_WIDTH = 100


def _terminating(q: Fraction) -> bool:
    d = q.denominator
    for p in (2, 5):
        while d % p == 0:
            d //= p
    return d == 1


def format_number(q, key: str | None = None, sidecar: list[str] | None = None) -> str:
    """Exact decimal when possible; otherwise 17 significant digits and a sidecar entry."""
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    if _terminating(q):
        k = 0
        while (q.numerator * 10**k) % q.denominator:
            k += 1
        digits = str(abs(q.numerator) * 10**k // q.denominator).rjust(k + 1, "0")
        return ("-" if q < 0 else "") + digits[:-k] + "." + digits[-k:]
    if sidecar is not None and key is not None:
        sidecar.append(f"{key} {q.numerator}/{q.denominator}")
    return format(float(q), ".17g")


def _linear(terms, prefix: str, sidecar) -> list[str]:
    out = []
    for k, (coef, var) in enumerate(terms):
        coef = Fraction(coef)
        sign = "-" if coef < 0 else "+"
        mag = abs(coef)
        body = var if mag == 1 else f"{format_number(mag, f'{prefix}.{var}', sidecar)} {var}"
        out.append(("- " if sign == "-" else "") + body if k == 0 else f"{sign} {body}")
    return out


def _wrap(head: str, tokens: list[str]) -> list[str]:
    lines, cur = [], head
    for tok in tokens:
        if len(cur) + 1 + len(tok) > LINE_WIDTH and cur.strip():
            lines.append(cur)
            cur = "   " + tok
        else:
            cur = f"{cur} {tok}" if cur else tok
    lines.append(cur)
    return lines


def _meta_lines(meta: dict) -> list[str]:
    out = []
    for k in sorted(meta):
        v = meta[k]
        if k == "edges":
            v = ",".join(f"{i + 1}-{j + 1}" for i, j in v)
        elif isinstance(v, Fraction):
            v = f"{v.numerator}/{v.denominator}"
        out.append(f"\\ meta {k} = {v}")
    return out


def emit_model(model: MipModel) -> tuple[str, str]:
    """Return (LP text, sidecar text); the sidecar is empty when every number is a terminating decimal."""
    side: list[str] = []
    out = ["\\ graph coupling model"] + _meta_lines(model.meta)
    out.append("Minimize")
    out += _wrap(" obj:", _linear(model.objective, "obj", side))
    out.append("Subject To")
    for c in model.constraints:
        toks = _linear(c.terms, c.name, side) + [c.sense, format_number(c.rhs, f"{c.name}.rhs", side)]
        out += _wrap(f" {c.name}:", toks)
    out.append("Bounds")
    for v in model.variables:
        if v.lower is None and v.upper is None:
            out.append(f" {v.name} free")
        else:
            lo = "-inf" if v.lower is None else format_number(v.lower, f"{v.name}.lb", side)
            hi = "+inf" if v.upper is None else format_number(v.upper, f"{v.name}.ub", side)
            out.append(f" {lo} <= {v.name} <= {hi}")
    for section, kind in (("Binaries", BINARY), ("Generals", INTEGER)):
        names = [v.name for v in model.variables if v.kind == kind]
        if names:
            out.append(section)
            out += _wrap("", names)
    out.append("End")
    return "\n".join(out) + "\n", "\n".join(side) + ("\n" if side else "")


# ---------------------------------------------------------------- parsing

_SECTIONS = {
    "minimize": "obj", "minimum": "obj", "min": "obj",
    "subject to": "st", "such that": "st", "st": "st", "s.t.": "st",
    "bounds": "bounds", "binaries": "bin", "binary": "bin", "generals": "gen", "general": "gen", "end": "end",
}
_NAME = re.compile(r"^\s*([A-Za-z_][\w.]*)\s*:\s*(.*)$")


def parse_sidecar(text: str) -> dict[str, Fraction]:
    out = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        if not line.strip():
            continue
        parts = line.split()
        if len(parts) != 2:
            raise ParseError(f"sidecar line {lineno}: expected 'key num/den'")
        try:
            out[parts[0]] = Fraction(parts[1])
        except (ValueError, ZeroDivisionError) as exc:
            raise ParseError(f"sidecar line {lineno}: bad rational") from exc
    return out


def _num(tok: str, key: str, exact: dict) -> Fraction:
    if key in exact:
        return exact[key]
    try:
        return Fraction(tok)
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"bad number {tok!r}") from exc


def _norm(q: Fraction):
    return q.numerator if q.denominator == 1 else q


def _parse_linear(tokens: list[str], prefix: str, exact: dict) -> list[tuple]:
    terms, sign, coef_tok = [], 1, None
    for tok in tokens:
        if tok in "+-":
            sign = -1 if tok == "-" else 1
        elif re.fullmatch(r"[-+]?(\d+\.?\d*|\.\d+)([eE][-+]?\d+)?", tok):
            coef_tok = tok
        else:
            coef = _num(coef_tok, f"{prefix}.{tok}", exact) if coef_tok is not None else Fraction(1)
            terms.append((_norm(sign * coef), tok))
            sign, coef_tok = 1, None
    return terms


def _tokens(s: str) -> list[str]:
    return re.findall(r"<=|>=|=<|=>|=|[+-](?=\s)|[^\s]+", s)


def parse_lp(text: str, sidecar: str = "") -> MipModel:
    """Parse text written by :func:`emit_model` (and similar LP files) back into a model."""
    exact = parse_sidecar(sidecar) if sidecar else {}
    meta: dict = {}
    section = None
    chunks: dict[str, list[str]] = {"obj": [], "st": [], "bounds": [], "bin": [], "gen": []}
    for raw in text.splitlines():
        line = raw.strip()
        if line.startswith("\\"):
            m = re.match(r"\\ meta (\w+) =\s*(.*)$", line)
            if m:
                meta[m.group(1)] = m.group(2)
            continue
        if not line:
            continue
        key = line.lower()
        if key in _SECTIONS:
            section = _SECTIONS[key]
            if section == "end":
                break
            continue
        if section is None:
            raise ParseError(f"content before the first section: {line!r}")
        if section in ("obj", "st") and chunks[section] and not _NAME.match(line):
            chunks[section][-1] += " " + line
        else:
            chunks[section].append(line)

    objective = []
    for entry in chunks["obj"]:
        m = _NAME.match(entry)
        body = m.group(2) if m else entry
        objective += _parse_linear(_tokens(body), "obj", exact)

    constraints = []
    for entry in chunks["st"]:
        m = _NAME.match(entry)
        if not m:
            raise ParseError(f"unnamed constraint: {entry!r}")
        name, body = m.group(1), _tokens(m.group(2))
        senses = [k for k, t in enumerate(body) if t in ("<=", ">=", "=", "=<", "=>")]
        if len(senses) != 1 or senses[0] != len(body) - 2:
            raise ParseError(f"constraint {name}: expected 'terms sense rhs'")
        k = senses[0]
        sense = {"=<": "<=", "=>": ">="}.get(body[k], body[k])
        terms = _parse_linear(body[:k], name, exact)
        rhs = _norm(_num(body[k + 1], f"{name}.rhs", exact))
        tag = name[1:].split("_")[0] if name.startswith("c") else name
        constraints.append(MipConstraint(name, tuple(terms), sense, rhs, tag))

    kinds = {}
    for sec, kind in (("bin", BINARY), ("gen", INTEGER)):
        for line in chunks[sec]:
            for nm in line.split():
                kinds[nm] = kind
    variables = []
    for line in chunks["bounds"]:
        toks = line.split()
        if len(toks) == 2 and toks[1].lower() == "free":
            variables.append(MipVariable(toks[0], kinds.get(toks[0], CONTINUOUS), None, None))
            continue
        if len(toks) != 5 or toks[1] != "<=" or toks[3] != "<=":
            raise ParseError(f"unsupported bound line {line!r}")
        name = toks[2]
        lo = None if toks[0] == "-inf" else _norm(_num(toks[0], f"{name}.lb", exact))
        hi = None if toks[4] in ("+inf", "inf") else _norm(_num(toks[4], f"{name}.ub", exact))
        variables.append(MipVariable(name, kinds.get(name, CONTINUOUS), lo, hi))
    return MipModel(tuple(variables), tuple(constraints), tuple(objective), _decode_meta(meta))


def _decode_meta(raw: dict) -> dict:
    out: dict = {}
    for k, v in raw.items():
        if k == "edges":
            out[k] = tuple(tuple(int(x) - 1 for x in e.split("-")) for e in v.split(",") if e)
        elif v in ("True", "False"):
            out[k] = v == "True"
        elif v == "None":
            out[k] = None
        elif re.fullmatch(r"-?\d+", v):
            out[k] = int(v)
        elif re.fullmatch(r"-?\d+/\d+", v):
            out[k] = Fraction(v)
        else:
            out[k] = v
    return out

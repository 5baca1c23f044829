"""File formats: truth tables, permutations, and the circuit dialect.

Truth table: header ".n <int>" followed by 2^n binary output words in
input order (row x is F(x)). Permutation: same header, a ".perm" line,
then 2^n decimal outputs. Circuits use a RevLib-style dialect: header
".numvars"/".variables", gates between ".begin" and ".end" written as
"t<k> <lines...>" with the last line the target; a negative control
carries a "-" prefix on the variable name.
"""
from __future__ import annotations

from .function_model import ReversibleFunction, from_truth_table
from .gate_model import Circuit, Gate


class BadHeader(ValueError):
    pass


class BadRow(ValueError):
    pass


class UnknownGate(ValueError):
    pass


class LineMismatch(ValueError):
    pass


def _content_lines(text: str) -> list[str]:
    out = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            out.append(line)
    return out


# -- truth tables -----------------------------------------------------------

def parse_tt(text: str) -> ReversibleFunction:
    lines = _content_lines(text)
    if not lines or not lines[0].startswith(".n"):
        raise BadHeader("expected '.n <int>' header")
    try:
        n = int(lines[0].split()[1])
    except (IndexError, ValueError):
        raise BadHeader("expected '.n <int>' header") from None
    body = lines[1:]
    if body and body[0] == ".perm":
        words = " ".join(body[1:]).split()
        try:
            rows = [int(w) for w in words]
        except ValueError as exc:
            raise BadRow(str(exc)) from None
        return from_truth_table(rows, n)
    if len(body) != 1 << n:
        raise BadRow(f"expected {1 << n} rows, got {len(body)}")
    rows = []
    for row in body:
        if len(row) != n or any(ch not in "01" for ch in row):
            raise BadRow(f"bad output word {row!r}")
        rows.append(int(row, 2))
    return from_truth_table(rows, n)


def write_tt(f: ReversibleFunction) -> str:
    lines = [f".n {f.n}"]
    lines.extend(format(w, f"0{f.n}b") for w in f.perm)
    return "\n".join(lines) + "\n"


def write_perm(f: ReversibleFunction) -> str:
    lines = [f".n {f.n}", ".perm"]
    lines.extend(str(w) for w in f.perm)
    return "\n".join(lines) + "\n"


# -- circuit dialect ---------------------------------------------------------

def parse_real(text: str) -> Circuit:
    lines = _content_lines(text)
    n = None
    names: list[str] = []
    gates: list[Gate] = []
    in_body = False
    for line in lines:
        if line.startswith(".numvars"):
            n = int(line.split()[1])
        elif line.startswith(".variables"):
            names = line.split()[1:]
        elif line == ".begin":
            if n is None:
                raise BadHeader("missing .numvars before .begin")
            if not names:
                names = [f"x{i}" for i in range(1, n + 1)]
            if len(names) != n:
                raise LineMismatch(f".variables lists {len(names)} names for "
                                   f".numvars {n}")
            in_body = True
        elif line == ".end":
            in_body = False
        elif in_body:
            gates.append(_parse_gate_line(line, names))
    if n is None:
        raise BadHeader("missing .numvars header")
    return Circuit(n, tuple(gates))


def _parse_gate_line(line: str, names: list[str]) -> Gate:
    parts = line.split()
    kind = parts[0]
    if not kind.startswith("t"):
        raise UnknownGate(f"unsupported gate {kind!r}")
    try:
        k = int(kind[1:])
    except ValueError:
        raise UnknownGate(f"unsupported gate {kind!r}") from None
    args = parts[1:]
    if len(args) != k:
        raise LineMismatch(f"{kind} expects {k} lines, got {len(args)}")
    index = {name: i + 1 for i, name in enumerate(names)}

    def resolve(token: str) -> tuple[int, bool]:
        pol = True
        if token.startswith("-"):
            pol = False
            token = token[1:]
        if token not in index:
            raise LineMismatch(f"unknown variable {token!r}")
        return index[token], pol

    *ctl_tokens, target_token = args
    target, target_pol = resolve(target_token)
    if not target_pol:
        raise UnknownGate("target line cannot be negated")
    controls = frozenset(resolve(tok) for tok in ctl_tokens)
    return Gate(target, controls)


def write_real(circuit: Circuit) -> str:
    names = [f"x{i}" for i in range(1, circuit.n + 1)]
    out = [f".numvars {circuit.n}", ".variables " + " ".join(names), ".begin"]
    for g in circuit.gates:
        ctl = sorted(g.controls)
        tokens = [("" if pol else "-") + names[line - 1] for line, pol in ctl]
        tokens.append(names[g.target - 1])
        out.append(f"t{len(tokens)} " + " ".join(tokens))
    out.append(".end")
    return "\n".join(out) + "\n"

"""Text file formats for groups, designs and search problems.

Group file::

    q=2 v=4
    gen            # optional: gen frob=1
    0 0 0 1
    ...            # v rows of v element indices per generator

Design file::

    q=2 v=4 k=3 t=3 lambda=1
    1 0 0 0        # one block per paragraph: k rows of v indices,
    0 1 0 0        # any basis, canonicalized on load
    0 0 1 0

    ...

``#`` starts a comment in both formats.
"""

from __future__ import annotations

import json
from importlib import resources
from pathlib import Path

from .action import GroupPresentation, SemilinearMap
from .design import QDesign, QDesignParams
from .errors import ParseError, QtdError
from .lambdas import LambdaTensor
from .search import SearchProblem
from .subspace import format_subspace, rref


def _lines(text: str):
    for no, raw in enumerate(text.splitlines(), 1):
        yield no, raw.split("#", 1)[0].strip()


def _header(line: str, keys: tuple[str, ...], path, no) -> dict[str, int]:
    out = {}
    for tok in line.split():
        if "=" not in tok:
            raise ParseError(f"expected key=value, got {tok!r}", path, no)
        key, val = tok.split("=", 1)
        try:
            out[key] = int(val)
        except ValueError:
            raise ParseError(f"{key} must be an integer, got {val!r}", path, no) from None
    missing = [k for k in keys if k not in out]
    if missing:
        raise ParseError(f"header lacks {', '.join(missing)}", path, no)
    return out


def _row(line: str, v: int, q: int, path, no) -> tuple[int, ...]:
    try:
        row = tuple(int(x) for x in line.split())
    except ValueError:
        raise ParseError(f"non-integer entry in {line!r}", path, no) from None
    if len(row) != v:
        raise ParseError(f"expected {v} entries, got {len(row)}", path, no)
    if any(not 0 <= x < q for x in row):
        raise ParseError(f"entry outside GF({q}) in {line!r}", path, no)
    return row


def parse_group(text: str, path=None) -> GroupPresentation:
    header = None
    gens: list[tuple[int, list, int]] = []  # (frob, rows, line of 'gen')
    for no, line in _lines(text):
        if not line:
            continue
        if header is None:
            header = _header(line, ("q", "v"), path, no)
            q, v = header["q"], header["v"]
            continue
        if line.startswith("gen"):
            opts = _header(line[3:], (), path, no)
            gens.append((opts.get("frob", 0), [], no))
            continue
        if not gens:
            raise ParseError("matrix row before any 'gen' line", path, no)
        if len(gens[-1][1]) == v:
            raise ParseError(f"generator has more than {v} rows", path, no)
        gens[-1][1].append(_row(line, v, q, path, no))
    if header is None:
        raise ParseError("empty group file", path)
    maps = []
    for frob, rows, no in gens:
        if len(rows) != v:
            raise ParseError(f"generator has {len(rows)} rows, expected {v}", path, no)
        try:
            maps.append(SemilinearMap(tuple(rows), q, frob))
        except QtdError as exc:
            raise ParseError(str(exc), path, no) from None
    return GroupPresentation(v, q, tuple(maps))


def format_group(G: GroupPresentation) -> str:
    out = [f"q={G.q} v={G.v}"]
    for g in G.generators:
        out.append("gen" + (f" frob={g.frob}" if g.frob else ""))
        out.extend(" ".join(map(str, r)) for r in g.matrix)
    return "\n".join(out) + "\n"


def parse_design(text: str, path=None) -> QDesign:
    header = None
    blocks, cur, start = [], [], None

    def flush():
        if cur:
            if len(cur) != header["k"]:
                raise ParseError(f"block has {len(cur)} rows, expected {header['k']}", path, start)
            S = rref(cur, header["q"], header["v"])
            if S.dim != header["k"]:
                raise ParseError(f"block rows span dimension {S.dim}, expected {header['k']}",
                                 path, start)
            blocks.append(S)
            cur.clear()

    for no, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if header is None:
            if line:
                header = _header(line, ("q", "v", "k", "t", "lambda"), path, no)
            continue
        if not line:
            if not raw.strip().startswith("#"):
                flush()
            continue
        if not cur:
            start = no
        cur.append(_row(line, header["v"], header["q"], path, no))
    if header is None:
        raise ParseError("empty design file", path)
    flush()
    try:
        params = QDesignParams(header["t"], header["v"], header["k"], header["q"], header["lambda"])
    except QtdError as exc:
        raise ParseError(str(exc), path, 1) from None
    return QDesign(params, tuple(blocks))


def format_design(d: QDesign) -> str:
    p = d.params
    parts = [f"q={p.q} v={p.v} k={p.k} t={p.t} lambda={p.lambda_t}"]
    parts.extend(format_subspace(B) for B in d.blocks)
    return "\n\n".join(parts) + "\n"


def problem_from_dict(data: dict) -> SearchProblem:
    pr = data["params"]
    params = QDesignParams(pr["t"], pr["v"], pr["k"], pr["q"], pr.get("lambda", pr.get("lambda_t")))
    tensor = LambdaTensor.from_dict({**data["tensor"], "v": pr["v"], "q": pr["q"]})
    return SearchProblem(params, list(data["point_sizes"]), list(data["block_sizes"]), tensor)


def problem_to_dict(prob: SearchProblem) -> dict:
    p = prob.params
    return {
        "params": {"t": p.t, "v": p.v, "k": p.k, "q": p.q, "lambda": p.lambda_t},
        "point_sizes": prob.point_sizes,
        "block_sizes": prob.block_sizes,
        "tensor": prob.tensor.to_dict(),
    }


def read_text(path) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise ParseError(f"cannot read file: {exc.strerror}", path) from None


def load_group(path) -> GroupPresentation:
    return parse_group(read_text(path), path)


def load_design(path) -> QDesign:
    return parse_design(read_text(path), path)


def load_problem(path) -> SearchProblem:
    try:
        data = json.loads(read_text(path))
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, path, exc.lineno) from None
    try:
        return problem_from_dict(data)
    except (KeyError, TypeError) as exc:
        raise ParseError(f"malformed problem document ({exc})", path) from None
    except QtdError as exc:
        raise ParseError(str(exc), path) from None


def bundled(name: str) -> Path:
    """Path of a data file shipped with the package."""
    return Path(str(resources.files("qtd") / "data" / name))

"""Certificate text format and the independent certificate checker.

Certificates are fully self-contained: they embed the graph, the
decomposition, any deletion sets, and (for refutations) the
counterexample drawings, so the checker needs no other inputs and never
re-runs the search.  Serialization is deterministic; identical runs
produce byte-identical certificates.
"""

from __future__ import annotations

import math
from fractions import Fraction

from .bounds import Certificate, LevelStats
from .drawing import parse_drawing, serialize_drawing
from .errors import FormatError
from .graphs import (
    TransitiveDecomposition,
    WindowRef,
    parse_decomposition,
    parse_graph,
)

_HEADER = "crossbound-certificate 1"


def serialize_certificate(cert: Certificate) -> str:
    lines = [_HEADER]
    lines.append(f"engine crossbound {cert.engine_version}")
    lines.append(f"mode {cert.mode}")
    lines.append(f"outcome {cert.outcome}")
    lines.append(f"c {cert.c.numerator}/{cert.c.denominator}")
    lines.append(f"t {cert.t}")
    lines.append(f"ct-ceil {math.ceil(cert.c * cert.t)}")
    lines.append(f"ell {'-' if cert.ell is None else cert.ell}")
    lines.append(f"graph-sha256 {cert.graph_sha}")
    lines.append(f"decomposition-sha256 {cert.decomposition_sha}")
    lines.append(f"deletion-d {'-' if cert.deletion_d is None else cert.deletion_d}")
    prior = cert.prior_note.replace("\n", " ").strip()
    lines.append(f"prior {prior if prior else '-'}")
    lines.append(
        "config " + " ".join(f"{k}={v}" for k, v in cert.config_echo)
    )
    lines.append(f"levels {len(cert.levels)}")
    for ls in cert.levels:
        lines.append(
            f"level {ls.level} candidates {ls.candidates} "
            f"pruned-latent {ls.pruned_latent} kept {ls.kept} "
            f"budget-rejects {ls.budget_rejects}"
        )
    lines.append("begin-graph")
    lines.append(cert.graph.canonical_text().rstrip("\n"))
    lines.append("end-graph")
    lines.append("begin-decomposition")
    lines.append(cert.decomposition.canonical_text().rstrip("\n"))
    lines.append("end-decomposition")
    for idx, es in enumerate(cert.deletion_sets, start=1):
        lines.append(f"begin-deletion-set {idx}")
        lines += [f"e {u} {v}" for u, v in sorted(es)]
        lines.append(f"end-deletion-set")
    for idx, d in enumerate(cert.drawings, start=1):
        lines.append(f"begin-drawing {idx}")
        lines.append(f"crossings-claimed {d.num_crossings()}")
        lines.append(serialize_drawing(d).rstrip("\n"))
        lines.append("end-drawing")
    lines.append("end-certificate")
    return "\n".join(lines) + "\n"


def _take_block(lines: list[str], pos: int, opener: str, closer: str):
    if not lines[pos].startswith(opener):
        raise FormatError(f"expected {opener!r} at line {pos + 1}")
    body = []
    pos += 1
    while pos < len(lines) and not lines[pos].startswith(closer):
        body.append(lines[pos])
        pos += 1
    if pos == len(lines):
        raise FormatError(f"unterminated block {opener!r}")
    return body, pos + 1


def parse_certificate(text: str) -> Certificate:
    lines = [ln.rstrip() for ln in text.splitlines() if ln.strip()]
    if not lines or lines[0] != _HEADER:
        raise FormatError("not a crossbound certificate")

    fields: dict[str, str] = {}
    pos = 1
    while pos < len(lines) and not lines[pos].startswith("level"):
        key, _, value = lines[pos].partition(" ")
        fields[key] = value
        pos += 1
    for needed in ("engine", "mode", "outcome", "c", "t", "ell",
                   "graph-sha256", "decomposition-sha256", "config"):
        if needed not in fields:
            raise FormatError(f"missing field {needed!r}")
    if not lines[pos].startswith("levels "):
        raise FormatError("missing levels count")
    n_levels = int(lines[pos].split()[1])
    pos += 1
    levels = []
    for _ in range(n_levels):
        f = lines[pos].split()
        if f[0] != "level":
            raise FormatError(f"expected level line, got {lines[pos]!r}")
        levels.append(
            LevelStats(int(f[1]), int(f[3]), int(f[5]), int(f[7]), int(f[9]))
        )
        pos += 1
    gbody, pos = _take_block(lines, pos, "begin-graph", "end-graph")
    graph = parse_graph("\n".join(gbody))
    dbody, pos = _take_block(lines, pos, "begin-decomposition", "end-decomposition")
    parts = parse_decomposition("\n".join(dbody), graph)
    decomposition = TransitiveDecomposition(graph, parts, None)
    deletion_sets = []
    while pos < len(lines) and lines[pos].startswith("begin-deletion-set"):
        body, pos = _take_block(lines, pos, "begin-deletion-set", "end-deletion-set")
        es = set()
        for ln in body:
            f = ln.split()
            es.add((min(int(f[1]), int(f[2])), max(int(f[1]), int(f[2]))))
        deletion_sets.append(frozenset(es))
    drawings = []
    claims = []
    while pos < len(lines) and lines[pos].startswith("begin-drawing"):
        body, pos = _take_block(lines, pos, "begin-drawing", "end-drawing")
        if not body or not body[0].startswith("crossings-claimed"):
            raise FormatError("drawing block missing crossings-claimed")
        claims.append(int(body[0].split()[1]))
        drawings.append(parse_drawing("\n".join(body[1:])))
    if pos >= len(lines) or lines[pos] != "end-certificate":
        raise FormatError("missing end-certificate")

    num, _, den = fields["c"].partition("/")
    c = Fraction(int(num), int(den) if den else 1)
    config_echo = tuple(
        tuple(item.split("=", 1)) for item in fields["config"].split()
    )
    cert = Certificate(
        outcome=fields["outcome"],
        mode=fields["mode"],
        c=c,
        t=int(fields["t"]),
        graph_sha=fields["graph-sha256"],
        decomposition_sha=fields["decomposition-sha256"],
        config_echo=config_echo,
        engine_version=fields["engine"].split()[-1],
        levels=tuple(levels),
        ell=None if fields["ell"] == "-" else int(fields["ell"]),
        drawings=tuple(drawings),
        graph=graph,
        decomposition=decomposition,
        deletion_d=None if fields.get("deletion-d", "-") == "-" else int(fields["deletion-d"]),
        deletion_sets=tuple(deletion_sets),
        prior_note="" if fields.get("prior", "-") == "-" else fields["prior"],
    )
    object.__setattr__(cert, "_claims", tuple(claims))
    object.__setattr__(cert, "_ct_ceil_claim", int(fields.get("ct-ceil", "-1")))
    return cert


def check_certificate(text: str) -> list[str]:
    """Re-validate a certificate without re-running any search.

    Checks the ceiling arithmetic, the fingerprints against the embedded
    problem, the level statistics of a bound outcome, and, for
    refutations, re-validates every embedded drawing and re-counts every
    budget inequality with exact arithmetic.  Returns the list of failed
    checks (empty means consistent).
    """
    try:
        cert = parse_certificate(text)
    except Exception as exc:  # untrusted input: report, never crash
        return [f"parse: {exc}"]
    bad: list[str] = []
    ct = cert.c * cert.t
    if getattr(cert, "_ct_ceil_claim") != math.ceil(ct):
        bad.append("ct-ceil does not match ceil(c*t)")
    if cert.graph.sha256() != cert.graph_sha:
        bad.append("graph fingerprint mismatch")
    if cert.decomposition.sha256() != cert.decomposition_sha:
        bad.append("decomposition fingerprint mismatch")
    if cert.t != cert.decomposition.t:
        bad.append("t does not match the embedded decomposition")
    covered = set()
    for part in cert.decomposition.parts:
        if part & covered:
            bad.append("decomposition parts overlap")
            break
        covered |= part
    if covered != cert.graph.edges:
        bad.append("decomposition does not cover the graph")

    if cert.outcome == "bound":
        if cert.ell is None or not 1 <= cert.ell <= cert.t:
            bad.append("bound outcome needs 1 <= ell <= t")
        if cert.drawings:
            bad.append("bound outcome must not embed drawings")
        if cert.levels:
            if cert.levels[-1].kept != 0:
                bad.append("bound outcome must end with an empty level")
            if any(ls.kept == 0 for ls in cert.levels[:-1]):
                bad.append("intermediate level reports an empty frontier")
            if cert.ell is not None and cert.levels[-1].level != cert.ell:
                bad.append("ell does not match the last level")
        else:
            bad.append("bound outcome needs level statistics")
    elif cert.outcome == "refuted":
        if not cert.drawings:
            bad.append("refuted outcome needs at least one drawing")
        claims = getattr(cert, "_claims")
        for idx, d in enumerate(cert.drawings, start=1):
            violations = d.validate()
            if violations:
                bad.append(f"drawing {idx} invalid: {violations[0]}")
                continue
            if d.graph.edges != cert.graph.edges:
                bad.append(f"drawing {idx} does not draw the whole graph")
                continue
            if d.num_crossings() != claims[idx - 1]:
                bad.append(f"drawing {idx} crossing count differs from claim")
            if d.num_crossings() * ct.denominator >= ct.numerator:
                bad.append(f"drawing {idx} has cr >= c*t; not a counterexample")
            for s in range(1, cert.t + 1):
                win = cert.decomposition.window_edges(WindowRef(1, s))
                if d.f_charge(win).cmp(cert.c * s) >= 0:
                    bad.append(
                        f"drawing {idx} violates the window budget at length {s}"
                    )
                    break
            if cert.deletion_sets and cert.deletion_d is not None:
                cap = cert.c * cert.deletion_d
                for es in cert.deletion_sets:
                    inside = es & d.graph.edges
                    if not inside:
                        continue
                    q = d.cr_between(inside, inside) + d.cr_between(
                        inside, d.graph.edges - inside
                    )
                    if q * cap.denominator >= cap.numerator:
                        bad.append(f"drawing {idx} violates a deletion-set cap")
                        break
    elif cert.outcome == "inconclusive":
        if cert.drawings:
            bad.append("inconclusive outcome must not embed drawings")
    else:
        bad.append(f"unknown outcome {cert.outcome!r}")
    return bad

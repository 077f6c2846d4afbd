"""JSON-reporting command line front end.

Every invocation prints exactly one JSON report to stdout. The envelope
records the resolved configuration (budgets included), package and
python versions, and the seed, so a report can be reproduced from its
own header; two runs with the same config and seed differ at most in
the timestamp field. Invalid input still produces a report, with
``ok: false`` and a machine-readable error record, and exit status 2.
Exit status 1 means the input was fine but an assertion-style command
(``suite all``, ``lattice check``, a sampled soundness check) found a
failure.

Configuration is layered, later layers winning: dataclass defaults,
then the DOMWORD_BUDGETS environment variable (comma-separated
``key=value`` pairs for max_len, max_exp, chain_depth), then a
``--config`` JSON file mirroring RunConfig, then explicit flags.

Word syntax is whitespace-separated tokens. On a pants backend,
``D<i>`` names the i-th connected domain in canonical order, and any
other bare identifier is bound to the next unbound connected domain at
its first appearance, so ``"D D"`` is a two-letter word on a single
domain. ``g<k>`` or ``g<k>^n`` names the k-th symbolic generator
(sorted by name) when the backend carries generators, and generator
names such as ``twist_a^2`` work directly. On the torus backend the
tokens are ``A_p/q`` (the annulus at a slope), ``full``, ``T_p/q^n``
(a twist power), and a bare slope as shorthand for its annulus.
Reports echo the binding table so a rendered word reads back the same
way it was written.
"""

from __future__ import annotations

import dataclasses
import json
import os
import platform
import random
import re
from dataclasses import dataclass
from datetime import datetime, timezone
from pathlib import Path

import click

from . import __version__
from .farey import behrstock_scan, displacement_K, generic_witness, sample_related
from .fragments import (
    Fragment,
    check_gate_property,
    check_weakly_convex,
    delta_search,
    holds_R_w,
    matrix_to_json,
)
from .graphs import CATALOG_BUILDERS, builtin_catalog, graph_report, k_of_graph, rank_bound
from .groups import dumbbell_symbolic_backend
from .pants import PantsBackend, enumerate_chains, enumerate_pants_graphs
from .rank import morley_rank_theory, morley_upper_bound
from .slopes import (
    IDENT,
    Slope,
    annular_distance,
    farey_distance,
    mat_apply,
    slopes_up_to,
    twist_matrix,
)
from .surfaces import (
    Signature,
    complexity,
    curve_system_size,
    euler_characteristic,
    is_sporadic,
    max_chain_length,
)
from .torus import T_FULL, TorusBackend, annulus
from .words import (
    DomainLetter,
    GroupLetter,
    PreceqUndecided,
    dl,
    gl,
    ordinal_of,
    perm_canonical,
    preceq,
    reduce_nc,
    star,
    symmetric_decomposition,
    triangle_decomposition,
)

BUDGET_ENV = "DOMWORD_BUDGETS"
_BUDGET_KEYS = ("max_len", "max_exp", "chain_depth")


@dataclass(frozen=True)
class RunConfig:
    """Resolved run parameters; every report embeds one."""

    g: int = 2
    b: int = 0
    backend: str = "pants:0"
    max_len: int = 12
    max_exp: int = 50
    chain_depth: int = 6
    seed: int = 0
    output: str | None = None

    def validate(self) -> "RunConfig":
        if self.g < 0 or self.b < 0:
            raise ValueError("signature entries must be nonnegative")
        for key in _BUDGET_KEYS:
            if getattr(self, key) <= 0:
                raise ValueError(f"budget {key} must be positive")
        if not re.fullmatch(r"torus|symbolic|pants:\d+", self.backend):
            raise ValueError(
                f"unknown backend {self.backend!r}; use pants:<graph index>, symbolic, or torus"
            )
        return self


def _resolve_config(params: dict) -> RunConfig:
    values = dataclasses.asdict(RunConfig())
    env = os.environ.get(BUDGET_ENV, "")
    for pair in filter(None, (p.strip() for p in env.split(","))):
        key, sep, val = pair.partition("=")
        key = key.strip().replace("-", "_")
        if not sep or key not in _BUDGET_KEYS:
            raise ValueError(
                f"{BUDGET_ENV} entries must be key=value with key in {_BUDGET_KEYS}, got {pair!r}"
            )
        values[key] = int(val)
    path = params.get("config_path")
    if path:
        data = json.loads(Path(path).read_text())
        if not isinstance(data, dict):
            raise ValueError("the config file must hold a JSON object")
        unknown = sorted(set(data) - set(values))
        if unknown:
            raise ValueError(f"unknown config keys: {', '.join(unknown)}")
        values.update(data)
    for key in values:
        if params.get(key) is not None:
            values[key] = params[key]
    return RunConfig(**values).validate()


# ----------------------------------------------------------------- envelope


def _json_default(obj):
    if isinstance(obj, Slope):
        return str(obj)
    if isinstance(obj, frozenset):
        return sorted(map(repr, obj))
    return str(obj)


def _emit(command: str, cfg: RunConfig | None, result=None, ok=True, error=None) -> None:
    report = {
        "command": command,
        "config": dataclasses.asdict(cfg) if cfg is not None else None,
        "versions": {"package": __version__, "python": platform.python_version()},
        "seed": cfg.seed if cfg is not None else None,
        "timestamp": datetime.now(timezone.utc).isoformat(timespec="seconds"),
        "ok": ok,
    }
    if error is not None:
        report["error"] = error
    else:
        report["result"] = result
    text = json.dumps(report, indent=2, sort_keys=True, default=_json_default)
    click.echo(text)
    if cfg is not None and cfg.output:
        Path(cfg.output).write_text(text + "\n")


def _run(command: str, params: dict, body) -> None:
    """Resolve config, run the body, and print one report.

    The body returns (result, ok). Exceptions become error records with
    exit status 2; ok=False exits 1.
    """
    try:
        cfg = _resolve_config(params)
    except Exception as exc:
        _emit(command, None, ok=False, error={"type": type(exc).__name__, "message": str(exc)})
        raise SystemExit(2)
    try:
        result, ok = body(cfg)
    except Exception as exc:
        _emit(command, cfg, ok=False, error={"type": type(exc).__name__, "message": str(exc)})
        raise SystemExit(2)
    _emit(command, cfg, result=result, ok=ok)
    if not ok:
        raise SystemExit(1)


def common_options(f):
    opts = [
        click.option("--g", "g", type=int, default=None, help="genus"),
        click.option("--b", "b", type=int, default=None, help="boundary components"),
        click.option(
            "--backend",
            default=None,
            help="pants:<graph index>, symbolic, or torus",
        ),
        click.option("--max-len", "max_len", type=int, default=None, help="word-length budget L"),
        click.option("--max-exp", "max_exp", type=int, default=None, help="exponent budget E"),
        click.option("--chain-depth", "chain_depth", type=int, default=None),
        click.option("--seed", type=int, default=None),
        click.option(
            "--config",
            "config_path",
            default=None,
            help="JSON file mirroring RunConfig",
        ),
        click.option("--output", default=None, help="also write the report to this path"),
    ]
    for opt in reversed(opts):
        f = opt(f)
    return f


# ----------------------------------------------------------------- backends


def _make_backend(cfg: RunConfig):
    if cfg.backend == "torus":
        return TorusBackend()
    sig = Signature(cfg.g, cfg.b)
    if cfg.backend == "symbolic":
        if (cfg.g, cfg.b) != (2, 0):
            raise ValueError("the symbolic backend lives on the closed genus-two surface")
        return dumbbell_symbolic_backend()
    idx = int(cfg.backend.split(":", 1)[1])
    graphs = enumerate_pants_graphs(sig)
    if idx >= len(graphs):
        raise ValueError(
            f"pants graph index {idx} out of range; signature {sig} has {len(graphs)} graphs"
        )
    return PantsBackend(graphs[idx])


# ----------------------------------------------------------------- words


_DOM_INDEX = re.compile(r"D(\d+)")
_GEN_INDEX = re.compile(r"g(\d+)")
_BARE_NAME = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")


def _parse_slope(text: str) -> Slope:
    try:
        return Slope.parse(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"cannot parse slope {text!r}") from exc


def _parse_power(tok: str, exp: str) -> int:
    try:
        return int(exp)
    except ValueError:
        raise ValueError(f"bad exponent in token {tok!r}") from None


class WordParser:
    """Token grammar over one backend, with a name-binding table.

    Bare identifiers bind to connected domains in canonical order by
    first appearance; the table is echoed into reports and reused to
    render result words with the caller's own names.
    """

    def __init__(self, be):
        self.be = be
        self.torus = isinstance(be, TorusBackend)
        self.doms = [] if self.torus else list(be.connected_domains())
        self.binding: dict[str, int] = {}

    def parse(self, text: str | None) -> tuple:
        if text is None or not text.strip():
            raise ValueError("missing word argument")
        return tuple(self._letter(tok) for tok in text.split())

    def _letter(self, tok: str):
        if self.torus:
            return self._torus_letter(tok)
        return self._pants_letter(tok)

    def _torus_letter(self, tok: str):
        if tok == "full":
            return dl(T_FULL)
        base, sep, exp = tok.partition("^")
        if base.startswith("A_"):
            if sep:
                raise ValueError(f"annular letters carry no exponent: {tok!r}")
            return dl(annulus(_parse_slope(base[2:])))
        if base.startswith("T_"):
            power = _parse_power(tok, exp) if sep else 1
            return gl(twist_matrix(_parse_slope(base[2:]), power))
        if sep:
            raise ValueError(f"cannot parse token {tok!r}")
        return dl(annulus(_parse_slope(tok)))

    def _pants_letter(self, tok: str):
        m = _DOM_INDEX.fullmatch(tok)
        if m:
            idx = int(m.group(1))
            if idx >= len(self.doms):
                raise ValueError(
                    f"domain index {idx} out of range; the backend has "
                    f"{len(self.doms)} connected domains"
                )
            return dl(self.doms[idx])
        base, sep, exp = tok.partition("^")
        power = _parse_power(tok, exp) if sep else 1
        gens = getattr(self.be, "generators", None)
        if gens is not None:
            m = _GEN_INDEX.fullmatch(base)
            if m:
                names = sorted(gens)
                k = int(m.group(1))
                if k >= len(names):
                    raise ValueError(f"generator index {k} out of range; have {names}")
                return gl(self.be.gen(names[k], power))
            if base in gens:
                return gl(self.be.gen(base, power))
        elif _GEN_INDEX.fullmatch(base):
            raise ValueError("group tokens need the symbolic backend; pass --backend symbolic")
        if sep or not _BARE_NAME.fullmatch(tok):
            raise ValueError(f"cannot parse token {tok!r}")
        if tok not in self.binding:
            nxt = len(self.binding)
            if nxt >= len(self.doms):
                raise ValueError(
                    f"more distinct names than connected domains ({len(self.doms)})"
                )
            self.binding[tok] = nxt
        return dl(self.doms[self.binding[tok]])

    # -- rendering

    def binding_table(self) -> dict:
        return {name: f"D{idx}" for name, idx in sorted(self.binding.items())}

    def render(self, word) -> list:
        return [self._render_letter(letter) for letter in word]

    def _render_letter(self, letter):
        if self.torus:
            if isinstance(letter, DomainLetter):
                dom = letter.dom
                if dom.rank == 2:
                    return "full"
                if dom.rank == 1:
                    return f"A_{dom.slope}"
                return "empty"
            return {"matrix": [list(row) for row in letter.g]}
        if isinstance(letter, DomainLetter):
            try:
                idx = self.doms.index(letter.dom)
            except ValueError:
                return {"domain": self.be.domain_to_json(letter.dom)}
            names = {v: k for k, v in self.binding.items()}
            return names.get(idx, f"D{idx}")
        return {"group": self.render_elem(letter.g)}

    def render_elem(self, g):
        if self.torus:
            return {"matrix": [list(row) for row in g]}
        if hasattr(self.be, "group_to_json"):
            return self.be.group_to_json(g)
        return "e" if g == self.be.identity else repr(g)


# ----------------------------------------------------------------- lattice


def _lattice_identities(be) -> dict:
    doms = be.all_domains()
    involution = sum(1 for d in doms if be.complement(be.complement(d)) != d)
    join_fail = meet_fail = 0
    for d1 in doms:
        for d2 in doms:
            if be.complement(be.join(d1, d2)) != be.meet(be.complement(d1), be.complement(d2)):
                join_fail += 1
            if be.complement(be.meet(d1, d2)) != be.join(be.complement(d1), be.complement(d2)):
                meet_fail += 1
    return {
        "domains": len(doms),
        "involution_failures": involution,
        "de_morgan_join_failures": join_fail,
        "de_morgan_meet_failures": meet_fail,
    }


# ----------------------------------------------------------------- suite


def _random_symbolic_word(be, rng: random.Random, max_len: int) -> tuple:
    doms = be.connected_domains()
    names = sorted(be.generators)
    out = []
    for _ in range(rng.randint(1, max_len)):
        if rng.random() < 0.5:
            out.append(dl(rng.choice(doms)))
        else:
            out.append(gl(be.gen(rng.choice(names), rng.choice([-2, -1, 1, 2]))))
    return tuple(out)


def _suite_lattice(cfg, rng):
    be = _make_backend(cfg)
    if isinstance(be, TorusBackend):
        raise ValueError("the identity suite needs a finite backend; pick pants:<i>")
    detail = _lattice_identities(be)
    assert detail["involution_failures"] == 0, detail
    assert detail["de_morgan_join_failures"] == 0, detail
    assert detail["de_morgan_meet_failures"] == 0, detail
    return detail


def _suite_chain_formula(cfg, rng):
    sig = Signature(cfg.g, cfg.b)
    best, _witness = enumerate_chains(sig)
    assert best == max_chain_length(sig), (best, max_chain_length(sig))
    return {"sig": [sig.g, sig.b], "max": best}


def _suite_confluence(cfg, rng):
    be = dumbbell_symbolic_backend()
    length = min(cfg.max_len, 8)
    n = 150
    for _ in range(n):
        word = _random_symbolic_word(be, rng, length)
        canon = perm_canonical(reduce_nc(word, be).word, be)
        for _ in range(2):
            other = reduce_nc(word, be, rng=random.Random(rng.randrange(10**6)))
            assert perm_canonical(other.word, be) == canon, word
    return {"words": n, "max_len": length}


def _suite_star_assoc(cfg, rng):
    be = dumbbell_symbolic_backend()
    length = min(cfg.max_len, 6)
    n = 60
    for _ in range(n):
        a, b, c = (
            reduce_nc(_random_symbolic_word(be, rng, length), be) for _ in range(3)
        )
        left = star(star(a, b, be), c, be)
        right = star(a, star(b, c, be), be)
        assert perm_canonical(left.word, be) == perm_canonical(right.word, be)
    return {"triples": n, "max_len": length}


def _suite_ordinal_monotone(cfg, rng):
    # the ordinal only counts domain letters, so group-letter absorptions
    # preserve it; strict decrease happens exactly when the multiset of
    # domain complexities changed (a domain absorption or a C move fired)
    be = dumbbell_symbolic_backend()
    length = min(cfg.max_len, 8)
    n = 100

    def domain_trace(w):
        return sorted(be.complexity_of(l.dom) for l in w if isinstance(l, DomainLetter))

    for _ in range(n):
        word = _random_symbolic_word(be, rng, length)
        red = reduce_nc(word, be)
        before = ordinal_of(word, be)
        after = ordinal_of(red.word, be)
        if domain_trace(red.word) == domain_trace(word):
            assert after == before, (word, str(before), str(after))
        else:
            assert after < before, (word, str(before), str(after))
    return {"words": n}


def _suite_rank_pins(cfg, rng):
    assert str(morley_rank_theory(Signature(2, 0))) == "w^4"
    assert str(morley_rank_theory(Signature(1, 2))) == "w^3"
    assert str(morley_upper_bound(Signature(2, 0), 2)) == "w^4*3"
    return {"pins": 3}


def _suite_graph_catalog(cfg, rng):
    sig = Signature(cfg.g, cfg.b)
    catalog = builtin_catalog(sig)
    theory = morley_rank_theory(sig)
    for name in sorted(catalog):
        assert rank_bound(catalog[name], sig) <= theory, name
    if "pants" in catalog:
        assert k_of_graph(catalog["pants"], sig) == 2
    return {"graphs": sorted(catalog)}


def _suite_behrstock(cfg, rng):
    report = behrstock_scan(8)
    assert report.C_emp <= 10, report.C_emp
    return {"bound": 8, "C_emp": report.C_emp}


def _suite_displacement(cfg, rng):
    pool = slopes_up_to(2)
    letters = [dl(annulus(s)) for s in pool]
    for _ in range(10):
        word = tuple(rng.choice(letters) for _ in range(rng.randint(1, 3)))
        alpha = rng.choice(pool)
        bound = displacement_K(word, alpha)
        for _ in range(30):
            g = sample_related(word, rng, cfg.max_exp)
            assert farey_distance(alpha, mat_apply(g, alpha)) <= bound
    return {"words": 10, "samples": 30}


def _suite_delta_example(cfg, rng):
    frag = Fragment(points={"e": IDENT, "t3": twist_matrix(Slope(0, 1), 3)})
    found = delta_search(frag, "e", "t3")
    assert found.status == "verified", found.status
    assert len(found.cls.word) == 1
    letter = found.cls.word[0]
    assert isinstance(letter, DomainLetter) and letter.dom.slope == Slope(0, 1)
    return {"status": found.status, "checked": found.checked}


_SUITE = [
    ("lattice-identities", _suite_lattice),
    ("chain-formula", _suite_chain_formula),
    ("confluence", _suite_confluence),
    ("star-associativity", _suite_star_assoc),
    ("ordinal-monotone", _suite_ordinal_monotone),
    ("rank-pins", _suite_rank_pins),
    ("graph-catalog", _suite_graph_catalog),
    ("behrstock", _suite_behrstock),
    ("displacement", _suite_displacement),
    ("delta-example", _suite_delta_example),
]


# ----------------------------------------------------------------- commands


@click.group()
def main():
    """Domain-lattice toolkit; every command prints one JSON report."""


@main.group()
def surface():
    """Signature arithmetic."""


@surface.command("info")
@common_options
def surface_info(**params):
    def body(cfg):
        sig = Signature(cfg.g, cfg.b)
        try:
            chain = max_chain_length(sig)
        except ValueError:
            chain = None
        return {
            "sig": [sig.g, sig.b],
            "euler": euler_characteristic(sig),
            "curve_system_size": curve_system_size(sig),
            "complexity": complexity(sig),
            "sporadic": is_sporadic(sig),
            "max_chain": chain,
        }, True

    _run("surface info", params, body)


@main.group()
def lattice():
    """Connected-domain lattices over pants decompositions."""


@lattice.command("chains")
@common_options
def lattice_chains(**params):
    def body(cfg):
        sig = Signature(cfg.g, cfg.b)
        best, (graph, chain) = enumerate_chains(sig)
        be = PantsBackend(graph)
        return {
            "max": best,
            "witness": [be.domain_to_json(d) for d in chain],
            "graph": graph.to_json(),
            "formula": max_chain_length(sig),
        }, True

    _run("lattice chains", params, body)


@lattice.command("check")
@common_options
def lattice_check(**params):
    def body(cfg):
        be = _make_backend(cfg)
        if isinstance(be, TorusBackend):
            raise ValueError("the torus lattice is infinite; pick a pants backend")
        detail = _lattice_identities(be)
        ok = (
            detail["involution_failures"] == 0
            and detail["de_morgan_join_failures"] == 0
            and detail["de_morgan_meet_failures"] == 0
        )
        return detail, ok

    _run("lattice check", params, body)


@main.group()
def word():
    """Rewriting of words over domain and group letters."""


def _word_command(command, params, text, handler):
    """Shared scaffold: backend, parser, and a handler on parsed input."""

    def body(cfg):
        be = _make_backend(cfg)
        parser = WordParser(be)
        result = handler(cfg, be, parser, text)
        if parser.binding:
            result.setdefault("binding", parser.binding_table())
        return result, True

    _run(command, params, body)


@word.command("reduce")
@click.argument("text", required=False, default=None)
@common_options
def word_reduce(text, **params):
    def handler(cfg, be, parser, text):
        cls = reduce_nc(parser.parse(text), be)
        return {
            "class": parser.render(cls.word),
            "ordinal": str(ordinal_of(cls.word, be)),
        }

    _word_command("word reduce", params, text, handler)


@word.command("nf")
@click.argument("text", required=False, default=None)
@common_options
def word_nf(text, **params):
    def handler(cfg, be, parser, text):
        return {"nf": parser.render(perm_canonical(parser.parse(text), be))}

    _word_command("word nf", params, text, handler)


@word.command("star")
@click.argument("left", required=False, default=None)
@click.argument("right", required=False, default=None)
@common_options
def word_star(left, right, **params):
    def handler(cfg, be, parser, _):
        u = reduce_nc(parser.parse(left), be)
        v = reduce_nc(parser.parse(right), be)
        out = star(u, v, be)
        return {"class": parser.render(out.word), "ordinal": str(ordinal_of(out.word, be))}

    _word_command("word star", params, left, handler)


@word.command("preceq")
@click.argument("left", required=False, default=None)
@click.argument("right", required=False, default=None)
@click.option("--budget", type=int, default=200_000, help="search-node budget")
@common_options
def word_preceq(left, right, budget, **params):
    def handler(cfg, be, parser, _):
        u = parser.parse(left)
        v = parser.parse(right)
        try:
            return {"holds": preceq(u, v, be, budget=budget)}
        except PreceqUndecided as exc:
            return {"holds": None, "undecided": str(exc)}

    _word_command("word preceq", params, left, handler)


@word.command("decompose")
@click.argument("left", required=False, default=None)
@click.argument("right", required=False, default=None)
@common_options
def word_decompose(left, right, **params):
    def handler(cfg, be, parser, _):
        u = reduce_nc(parser.parse(left), be).word
        v = reduce_nc(parser.parse(right), be).word
        g, u1, up, mid, vp, v1, h = symmetric_decomposition(u, v, be)
        return {
            "g": parser.render_elem(g),
            "u1": parser.render(u1),
            "u_absorbed": parser.render(up),
            "middle": parser.render(mid),
            "v_absorbed": parser.render(vp),
            "v1": parser.render(v1),
            "h": parser.render_elem(h),
        }

    _word_command("word decompose", params, left, handler)


@word.command("triangle")
@click.argument("left", required=False, default=None)
@click.argument("right", required=False, default=None)
@common_options
def word_triangle(left, right, **params):
    def handler(cfg, be, parser, _):
        u = reduce_nc(parser.parse(left), be).word
        v = reduce_nc(parser.parse(right), be).word
        u1, alpha, s, beta, v1, x = triangle_decomposition(u, v, be)
        return {
            "u1": parser.render(u1),
            "alpha": parser.render(alpha),
            "s": parser.render(s),
            "beta": parser.render(beta),
            "v1": parser.render(v1),
            "x": parser.render(x),
        }

    _word_command("word triangle", params, left, handler)


@word.command("ordinal")
@click.argument("text", required=False, default=None)
@common_options
def word_ordinal(text, **params):
    def handler(cfg, be, parser, text):
        value = ordinal_of(parser.parse(text), be)
        return {"ordinal": str(value), "terms": [list(t) for t in value.terms]}

    _word_command("word ordinal", params, text, handler)


@main.group()
def rank():
    """Rank bookkeeping for domain lattices and geometric graphs."""


@rank.command("theory")
@common_options
def rank_theory(**params):
    def body(cfg):
        sig = Signature(cfg.g, cfg.b)
        return {"rank": str(morley_rank_theory(sig))}, True

    _run("rank theory", params, body)


@rank.command("upper")
@click.option("--r", "r", type=int, default=None, help="number of named elements")
@common_options
def rank_upper(r, **params):
    def body(cfg):
        if r is None:
            raise ValueError("pass --r, the number of named elements")
        sig = Signature(cfg.g, cfg.b)
        return {"r": r, "upper": str(morley_upper_bound(sig, r))}, True

    _run("rank upper", params, body)


@rank.command("graph")
@click.option("--name", default=None, help="catalog graph name")
@click.option("--k", type=int, default=None, help="decoration for separating/multicurve/multiarc")
@common_options
def rank_graph(name, k, **params):
    def body(cfg):
        sig = Signature(cfg.g, cfg.b)
        if name is None:
            raise ValueError(f"pass --name, one of: {', '.join(sorted(CATALOG_BUILDERS))}")
        if name not in CATALOG_BUILDERS:
            raise ValueError(f"unknown graph {name!r}; choose from {sorted(CATALOG_BUILDERS)}")
        builder = CATALOG_BUILDERS[name]
        if k is not None:
            if name not in ("separating", "multicurve", "multiarc"):
                raise ValueError(f"--k does not apply to {name!r}")
            spec = builder(sig, k=k)
        else:
            spec = builder(sig)
        return graph_report(spec, sig), True

    _run("rank graph", params, body)


@main.group()
def farey():
    """Slope distances, projections, and witnesses on the torus."""


@farey.command("dist")
@click.argument("left", required=False, default=None)
@click.argument("right", required=False, default=None)
@common_options
def farey_dist(left, right, **params):
    def body(cfg):
        if left is None or right is None:
            raise ValueError("pass two slopes, e.g. farey dist 0/1 1/2")
        return {"distance": farey_distance(_parse_slope(left), _parse_slope(right))}, True

    _run("farey dist", params, body)


@farey.command("proj")
@click.option("--core", default=None, help="slope of the projection annulus")
@click.argument("left", required=False, default=None)
@click.argument("right", required=False, default=None)
@common_options
def farey_proj(core, left, right, **params):
    def body(cfg):
        if core is None or left is None or right is None:
            raise ValueError("pass --core and two slopes")
        return {
            "core": core,
            "distance": annular_distance(
                _parse_slope(core), _parse_slope(left), _parse_slope(right)
            ),
        }, True

    _run("farey proj", params, body)


@farey.command("behrstock")
@click.option("--bound", type=int, default=10, help="slope denominator bound")
@common_options
def farey_behrstock(bound, **params):
    def body(cfg):
        return behrstock_scan(bound).to_json(), True

    _run("farey behrstock", params, body)


@farey.command("displacement")
@click.argument("text", required=False, default=None)
@click.option("--alpha", default=None, help="slope whose orbit is bounded")
@click.option("--samples", type=int, default=0, help="verify on sampled relation solutions")
@common_options
def farey_displacement(text, alpha, samples, **params):
    def body(cfg):
        if alpha is None:
            raise ValueError("pass --alpha, the displaced slope")
        parser = WordParser(TorusBackend())
        word = parser.parse(text)
        slope = _parse_slope(alpha)
        bound = displacement_K(word, slope)
        result = {"K": bound, "alpha": alpha, "word": parser.render(word)}
        ok = True
        if samples > 0:
            rng = random.Random(cfg.seed)
            violations = 0
            for _ in range(samples):
                g = sample_related(word, rng, cfg.max_exp)
                if farey_distance(slope, mat_apply(g, slope)) > bound:
                    violations += 1
            result["samples"] = samples
            result["violations"] = violations
            ok = violations == 0
        return result, ok

    _run("farey displacement", params, body)


@farey.command("witness")
@click.option("--core", default=None, help="slope of the twisting annulus")
@click.option("--forbid", "forbid", multiple=True, help="forbidden word (repeatable)")
@click.option("--budget", type=int, default=200, help="largest twist power tried")
@common_options
def farey_witness(core, forbid, budget, **params):
    def body(cfg):
        if core is None:
            raise ValueError("pass --core, the slope of the twisting annulus")
        parser = WordParser(TorusBackend())
        forbidden = [parser.parse(u) for u in forbid]
        g = generic_witness(annulus(_parse_slope(core)), forbidden, budget)
        return {
            "core": core,
            "witness": matrix_to_json(g),
            "forbidden": [parser.render(u) for u in forbidden],
        }, True

    _run("farey witness", params, body)


@main.group()
def fragment():
    """First-order fragment checks over explicit budgets."""


def _load_fragment(cfg: RunConfig, path: str | None, params: dict) -> Fragment:
    if path is None:
        raise ValueError("pass --fragment FILE (JSON with points, budgets, slopes)")
    frag = Fragment.from_json(json.loads(Path(path).read_text()))
    # explicit budget flags override the file's budgets
    if params.get("max_len") is not None or params.get("max_exp") is not None:
        frag = Fragment(
            points=frag.points,
            max_len=cfg.max_len if params.get("max_len") is not None else frag.max_len,
            max_exp=cfg.max_exp if params.get("max_exp") is not None else frag.max_exp,
            slopes=frag.slopes,
        )
    return frag


def _point_list(text: str | None) -> list[str]:
    if not text:
        raise ValueError("pass --points as a comma-separated list of point names")
    return [p.strip() for p in text.split(",") if p.strip()]


@fragment.command("rw")
@click.option("--fragment", "frag_path", default=None, help="fragment JSON file")
@click.argument("x", required=False, default=None)
@click.argument("y", required=False, default=None)
@click.argument("text", required=False, default=None)
@common_options
def fragment_rw(frag_path, x, y, text, **params):
    def body(cfg):
        frag = _load_fragment(cfg, frag_path, params)
        if x is None or y is None:
            raise ValueError("pass two point names and a word")
        parser = WordParser(TorusBackend())
        verdict = holds_R_w(frag, x, y, parser.parse(text))
        return {"x": x, "y": y, "verdict": verdict.to_json()}, True

    _run("fragment rw", params, body)


@fragment.command("delta")
@click.option("--fragment", "frag_path", default=None, help="fragment JSON file")
@click.argument("start", required=False, default=None)
@click.argument("end", required=False, default=None)
@common_options
def fragment_delta(frag_path, start, end, **params):
    def body(cfg):
        frag = _load_fragment(cfg, frag_path, params)
        if start is None or end is None:
            raise ValueError("pass two point names")
        return {"a": start, "b": end, "delta": delta_search(frag, start, end).to_json()}, True

    _run("fragment delta", params, body)


@fragment.command("gate")
@click.option("--fragment", "frag_path", default=None, help="fragment JSON file")
@click.option("--points", default=None, help="comma-separated point set A")
@click.option("--base", default=None, help="basepoint a0 in A")
@click.option("--gate", "gate_slope", default=None, help="slope of the gate annulus")
@click.argument("target", required=False, default=None)
@common_options
def fragment_gate(frag_path, points, base, gate_slope, target, **params):
    def body(cfg):
        frag = _load_fragment(cfg, frag_path, params)
        if base is None or gate_slope is None or target is None:
            raise ValueError("pass --points, --base, --gate, and the outside point")
        names = _point_list(points)
        report = check_gate_property(
            frag, names, base, annulus(_parse_slope(gate_slope)), target
        )
        return {
            "points": names,
            "base": base,
            "gate": gate_slope,
            "target": target,
            "report": report.to_json(),
        }, True

    _run("fragment gate", params, body)


@fragment.command("wc")
@click.option("--fragment", "frag_path", default=None, help="fragment JSON file")
@click.option("--points", default=None, help="comma-separated point set A")
@common_options
def fragment_wc(frag_path, points, **params):
    def body(cfg):
        frag = _load_fragment(cfg, frag_path, params)
        names = _point_list(points)
        return {"points": names, "report": check_weakly_convex(frag, names).to_json()}, True

    _run("fragment wc", params, body)


@main.group()
def suite():
    """Bundled assertion suites."""


@suite.command("all")
@common_options
def suite_all(**params):
    def body(cfg):
        rng = random.Random(cfg.seed)
        items = []
        for name, fn in _SUITE:
            try:
                detail = fn(cfg, rng)
                items.append({"name": name, "ok": True, "detail": detail})
            except AssertionError as exc:
                items.append({"name": name, "ok": False, "error": str(exc) or "assertion failed"})
            except Exception as exc:
                items.append(
                    {"name": name, "ok": False, "error": f"{type(exc).__name__}: {exc}"}
                )
        passed = sum(1 for item in items if item["ok"])
        return {
            "items": items,
            "passed": passed,
            "failed": len(items) - passed,
        }, passed == len(items)

    _run("suite all", params, body)


if __name__ == "__main__":
    main()

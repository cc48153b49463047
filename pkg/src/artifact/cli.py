"""Command-line front end.

Every subcommand reads JSON input files, runs one computation and prints a
report.  JSON output is compact with sorted keys; ``--text`` prints the
flags as a header followed by the report.  Exit codes: 0 success, 1 input or
computation error, 2 property-suite failure.
"""

from __future__ import annotations

import json
import random
import sys
from fractions import Fraction

import click

from . import adic, fgab, rigidity, simplicial, steinitz, towers
from .fgab import FgGroup


class SchemaError(ValueError):
    pass


class PropertyFailure(Exception):
    pass


# ---------------------------------------------------------------------------
# input files


def _load(path):
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as e:
        raise SchemaError(f"{path}: cannot read file: {e.strerror}") from None
    except json.JSONDecodeError as e:
        raise SchemaError(f"{path}: invalid JSON at line {e.lineno} column {e.colno}: {e.msg}") from None


class _Checker:
    def __init__(self, path):
        self.path = path

    def fail(self, where, field, msg):
        raise SchemaError(f"{self.path}: {where or '$'}: field {field!r}: {msg}")

    def obj(self, v, where, keys, optional=()):
        if not isinstance(v, dict):
            raise SchemaError(f"{self.path}: {where or '$'}: expected an object")
        for k in keys:
            if k not in v:
                self.fail(where, k, "missing")
        for k in v:
            if k not in keys and k not in optional:
                self.fail(where, k, "unexpected field")
        return v

    def lst(self, v, where, field):
        if not isinstance(v, list):
            self.fail(where, field, "expected a list")
        return v

    def int(self, v, where, field):
        if not isinstance(v, int) or isinstance(v, bool):
            self.fail(where, field, f"expected an integer, got {v!r}")
        return v

    def int_list(self, v, where, field):
        for x in self.lst(v, where, field):
            self.int(x, where, field)
        return v

    def matrix(self, v, where, field):
        if isinstance(v, dict):
            self.obj(v, f"{where}.{field}", ["rows", "cols", "entries"])
            r, c = self.int(v["rows"], where, "rows"), self.int(v["cols"], where, "cols")
            e = self.lst(v["entries"], f"{where}.{field}", "entries")
            if len(e) != r:
                self.fail(f"{where}.{field}", "entries", f"has {len(e)} rows, header says {r}")
            for i, row in enumerate(e):
                self.int_list(row, f"{where}.{field}.entries[{i}]", "entries")
                if len(row) != c:
                    self.fail(f"{where}.{field}.entries[{i}]", "entries", f"has {len(row)} columns, header says {c}")
            return e
        for i, row in enumerate(self.lst(v, where, field)):
            self.int_list(row, f"{where}.{field}[{i}]", field)
        return v

    def group(self, v, where):
        self.obj(v, where, ["rank"], ["torsion"])
        self.int(v["rank"], where, "rank")
        self.int_list(v.get("torsion", []), where, "torsion")
        try:
            return FgGroup(v["rank"], tuple(v.get("torsion", [])))
        except ValueError as e:
            self.fail(where, "torsion", str(e))


def load_complex(path, key=None):
    raw = _load(path)
    c = _Checker(path)
    if key is not None:
        c.obj(raw, "", [key], [k for k in raw if k != key] if isinstance(raw, dict) else ())
        raw, where = raw[key], f"$.{key}"
    else:
        where = "$"
    c.obj(raw, where, ["vertices", "facets"])
    c.lst(raw["vertices"], where, "vertices")
    for i, f in enumerate(c.lst(raw["facets"], where, "facets")):
        c.lst(f, f"{where}.facets[{i}]", "facets")
    try:
        return simplicial.SimplicialComplex.from_json(raw)
    except simplicial.SimplicialError as e:
        c.fail(where, "facets", str(e))


def load_faces(path):
    raw = _load(path)
    c = _Checker(path)
    if isinstance(raw, dict):
        c.obj(raw, "$", ["faces"])
        raw = raw["faces"]
        where = "$.faces"
    else:
        where = "$"
    for i, f in enumerate(c.lst(raw, where, "faces")):
        c.lst(f, f"{where}[{i}]", "faces")
    return raw


def load_cover(path):
    raw = _load(path)
    c = _Checker(path)
    c.obj(raw, "$", ["sets"])
    for i, s in enumerate(c.lst(raw["sets"], "$", "sets")):
        c.lst(s, f"$.sets[{i}]", "sets")
    return [set(map(_hashable, s)) for s in raw["sets"]]


def _hashable(x):
    return tuple(x) if isinstance(x, list) else x


def load_sequence(path):
    raw = _load(path)
    c = _Checker(path)
    c.obj(raw, "$", ["prefix"], ["cycle"])
    c.int_list(raw["prefix"], "$", "prefix")
    c.int_list(raw.get("cycle", [1]), "$", "cycle")
    try:
        return steinitz.DivisorSequence.from_json(raw)
    except steinitz.SequenceError as e:
        c.fail("$", "prefix", str(e))


def load_tower(path):
    raw = _load(path)
    c = _Checker(path)
    c.obj(raw, "$", ["groups"], ["maps", "tail"])
    groups = [c.group(g, f"$.groups[{i}]") for i, g in enumerate(c.lst(raw["groups"], "$", "groups"))]
    maps = [c.matrix(m, "$.maps", f"[{i}]") for i, m in enumerate(raw.get("maps", []))]
    tail = raw.get("tail")
    if tail is not None:
        c.obj(tail, "$.tail", ["type"], ["cycle"])
        if tail["type"] == "periodic":
            if "cycle" not in tail:
                c.fail("$.tail", "cycle", "missing")
            for i, m in enumerate(c.lst(tail["cycle"], "$.tail", "cycle")):
                c.matrix(m, "$.tail.cycle", f"[{i}]")
        elif tail["type"] != "identity":
            c.fail("$.tail", "type", f"unknown tail type {tail['type']!r}")
    if len(maps) != max(len(groups) - 1, 0):
        c.fail("$", "maps", f"{len(groups)} groups need {len(groups) - 1} maps, got {len(maps)}")

    def shape(m, r, k, where):
        if len(m) != r or any(len(row) != k for row in m):
            c.fail(where, "entries", f"expected a {r}x{k} matrix")
    for i, m in enumerate(maps):
        shape(m, groups[i].ngens, groups[i + 1].ngens, f"$.maps[{i}]")
    if tail is not None and tail["type"] == "periodic" and groups:
        g = groups[-1].ngens
        for i, m in enumerate(tail["cycle"]):
            shape(m["entries"] if isinstance(m, dict) else m, g, g, f"$.tail.cycle[{i}]")
    try:
        return towers.Tower(groups, maps, towers.Tower.from_json(raw).tail)
    except (towers.TowerError, fgab.DimensionError, fgab.RelationError) as e:
        raise SchemaError(f"{path}: $.maps: field 'maps': {e}") from None


def load_element(path):
    raw = _load(path)
    c = _Checker(path)
    c.obj(raw, "$", ["prefix"], ["tail"])
    for i, x in enumerate(c.lst(raw["prefix"], "$", "prefix")):
        c.int_list(x, f"$.prefix[{i}]", "prefix")
    tail = raw.get("tail", "zero")
    if tail != "zero":
        c.obj(tail, "$.tail", ["type", "block"])
        if tail["type"] != "periodic":
            c.fail("$.tail", "type", "expected 'periodic'")
    return towers.TowerElement.from_json(raw)


def load_chain(path):
    raw = _load(path)
    c = _Checker(path)
    c.obj(raw, "$", ["d", "cycle"], ["transitions"])
    c.int(raw["d"], "$", "d")
    for key in ("transitions", "cycle"):
        for i, m in enumerate(c.lst(raw.get(key, []), "$", key)):
            c.matrix(m, f"$.{key}", f"[{i}]")
    norm = dict(raw)
    norm["transitions"] = [m["entries"] if isinstance(m, dict) else m for m in raw.get("transitions", [])]
    norm["cycle"] = [m["entries"] if isinstance(m, dict) else m for m in raw["cycle"]]
    try:
        return adic.LatticeChain.from_json(norm)
    except adic.ChainError as e:
        c.fail("$", "cycle", str(e))


def load_adic_operand(value, base, precision):
    """An integer literal or a digit file {"digits": [...], "tail": "zero"|"max"}."""
    try:
        return adic.from_int(int(value), base, precision)
    except ValueError:
        pass
    raw = _load(value)
    c = _Checker(value)
    c.obj(raw, "$", ["digits"], ["tail"])
    digits = c.int_list(raw["digits"], "$", "digits")
    tail = raw.get("tail")
    if tail not in (None, "zero", "max", "unknown"):
        c.fail("$", "tail", f"expected 'zero' or 'max', got {tail!r}")
    for i, x in enumerate(digits):
        if not 0 <= x < base.cofactor(i):
            c.fail(f"$.digits[{i}]", "digits", f"digit {x} outside 0..{base.cofactor(i) - 1}")
    if len(digits) != precision:
        digits = (list(digits) + [0 if tail != "max" else None] * precision)[:precision]
        digits = [base.cofactor(i) - 1 if x is None else x for i, x in enumerate(digits)]
    return adic.AdicInteger(base, tuple(digits), None if tail == "unknown" else tail)


def load_generators(path):
    raw = _load(path)
    c = _Checker(path)
    c.obj(raw, "$", ["generators"])
    out = []
    for i, g in enumerate(c.lst(raw["generators"], "$", "generators")):
        row = []
        for x in c.lst(g, f"$.generators[{i}]", "generators"):
            try:
                row.append(Fraction(x))
            except (ValueError, TypeError):
                c.fail(f"$.generators[{i}]", "generators", f"not a rational number: {x!r}")
        out.append(row)
    return out


def load_homs(path, chain):
    raw = _load(path)
    c = _Checker(path)
    c.obj(raw, "$", ["homs"])
    out = []
    for i, h in enumerate(c.lst(raw["homs"], "$", "homs")):
        c.obj(h, f"$.homs[{i}]", ["level", "W"])
        c.int(h["level"], f"$.homs[{i}]", "level")
        W = c.matrix(h["W"], f"$.homs[{i}]", "W")
        try:
            out.append(rigidity.TrivialHom(h["level"], tuple(map(tuple, W)), chain, chain))
        except fgab.DimensionError as e:
            c.fail(f"$.homs[{i}]", "W", str(e))
    return out


# ---------------------------------------------------------------------------
# output


def _jsonable(x):
    if isinstance(x, FgGroup):
        return x.to_json()
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple, set, frozenset)):
        items = [_jsonable(v) for v in x]
        return sorted(items, key=repr) if isinstance(x, (set, frozenset)) else items
    if hasattr(x, "to_json"):
        return x.to_json()
    return x


def emit(ctx, result):
    out = _jsonable(result)
    if ctx.obj.get("text"):
        for k, v in sorted(ctx.obj.get("header", {}).items()):
            click.echo(f"# {k} = {v}")
        if isinstance(out, dict):
            for k in sorted(out):
                click.echo(f"{k}: {json.dumps(out[k], sort_keys=True, ensure_ascii=False)}")
        else:
            click.echo(json.dumps(out, sort_keys=True, ensure_ascii=False))
    else:
        click.echo(json.dumps(out, sort_keys=True, separators=(",", ":"), ensure_ascii=False))


def _header(ctx, **flags):
    ctx.obj.setdefault("header", {}).update({k.replace("_", "-"): v for k, v in flags.items()})


def _fmt(f):
    return click.option("--json", "fmt", flag_value="json", default=True, help="Compact JSON output (default).")(
        click.option("--text", "fmt", flag_value="text", help="Header plus one line per report field.")(f))


def _common(*names):
    opts = {
        "depth": click.option("--depth", type=click.IntRange(0), default=8, show_default=True),
        "precision": click.option("--precision", type=click.IntRange(1), default=8, show_default=True),
        "bound": click.option("--bound", type=click.IntRange(0), default=3, show_default=True),
        "prime_bound": click.option("--prime-bound", type=click.IntRange(2), default=steinitz.DEFAULT_PRIME_BOUND,
                                    show_default=True),
        "seed": click.option("--seed", type=int, default=0, show_default=True),
    }

    def deco(f):
        for n in reversed(names):
            f = opts[n](f)
        return _fmt(f)
    return deco


def _setup(ctx, fmt, **flags):
    ctx.ensure_object(dict)
    ctx.obj["text"] = fmt == "text"
    _header(ctx, **flags)


@click.group()
@click.pass_context
def main(ctx):
    """Computations with towers of finitely generated abelian groups, simplicial
    complexes, solenoids and completions of Z^d."""
    ctx.ensure_object(dict)


# ---------------------------------------------------------------------------
# simplicial


@main.command()
@click.option("--complex", "cpath", required=True, type=click.Path())
@click.option("--degree", type=click.IntRange(0), required=True)
@click.option("--reduced", is_flag=True)
@_fmt
@click.pass_context
def homology(ctx, cpath, degree, reduced, fmt):
    """Simplicial homology group in one degree."""
    _setup(ctx, fmt, degree=degree, reduced=reduced)
    emit(ctx, simplicial.homology(load_complex(cpath), degree, reduced))


@main.command()
@click.option("--complex", "cpath", required=True, type=click.Path())
@click.option("--degree", type=click.IntRange(0), required=True)
@click.option("--reduced", is_flag=True)
@_fmt
@click.pass_context
def cohomology(ctx, cpath, degree, reduced, fmt):
    """Simplicial cohomology group in one degree."""
    _setup(ctx, fmt, degree=degree, reduced=reduced)
    emit(ctx, simplicial.cohomology(load_complex(cpath), degree, reduced))


def _homology_summary(K, reduced=True):
    return [simplicial.homology(K, n, reduced) for n in range(max(K.dim, 0) + 1)] if K.vertices else []


@main.command()
@click.option("--cover", "path", required=True, type=click.Path())
@_fmt
@click.pass_context
def nerve(ctx, path, fmt):
    """Nerve of a finite cover given as {"sets": [[...], ...]}."""
    _setup(ctx, fmt)
    N = simplicial.nerve(load_cover(path))
    emit(ctx, {"complex": N.to_json(), "reduced_homology": _homology_summary(N)})


@main.command()
@click.option("--complex", "cpath", required=True, type=click.Path())
@click.option("--rounds", type=click.IntRange(0), default=1, show_default=True)
@_fmt
@click.pass_context
def subdivide(ctx, cpath, rounds, fmt):
    """Iterated barycentric subdivision."""
    _setup(ctx, fmt, rounds=rounds)
    K = load_complex(cpath)
    S, carrier = simplicial.subdivide(K, rounds)
    emit(ctx, {"complex": S.to_json(), "counts": [S.count(n) for n in range(S.dim + 1)],
               "carriers": {str(v): sorted(carrier[v], key=repr) for v in S.vertices}})


@main.command()
@click.option("--complex", "cpath", required=True, type=click.Path())
@click.option("--vertices", "vpath", required=True, type=click.Path(), help='{"faces": [[v], ...]} or a list of vertices')
@click.option("--rounds", type=click.IntRange(0), default=2, show_default=True)
@_fmt
@click.pass_context
def neighborhood(ctx, cpath, vpath, rounds, fmt):
    """Neighborhood L of a vertex set and its complement T after subdivision."""
    _setup(ctx, fmt, rounds=rounds)
    K = load_complex(cpath)
    faces = load_faces(vpath)
    X = [v for f in faces for v in (f if isinstance(f, list) else [f])]
    Km, carrier = simplicial.subdivide(K, rounds)
    xs = set(X)
    xm = [v for v in Km.vertices if carrier[v] <= xs] if rounds else X
    L, T = simplicial.neighborhood_pair(Km, xm)
    emit(ctx, {"L": {"vertices": len(L.vertices), "reduced_homology": _homology_summary(L)},
               "T": {"vertices": len(T.vertices), "reduced_homology": _homology_summary(T)}})


@main.command("duality-check")
@click.option("--complex", "cpath", required=True, type=click.Path())
@click.option("--subcomplex", "xpath", required=True, type=click.Path(), help='{"faces": [[...], ...]}')
@click.option("--rounds", type=click.IntRange(0), default=2, show_default=True)
@_fmt
@click.pass_context
def duality_check(ctx, cpath, xpath, rounds, fmt):
    """Level-wise comparison of H^k(T_m) with H_{n-k}(X_m) in a sphere."""
    _setup(ctx, fmt, rounds=rounds)
    res = simplicial.duality_check(load_complex(cpath), load_faces(xpath), rounds)
    emit(ctx, res)


# ---------------------------------------------------------------------------
# towers


@main.group()
def tower():
    """lim, lim^1, Milnor sequences, six-term sequences and the E0 reduction."""


@tower.command("lim")
@click.option("--tower", "tpath", required=True, type=click.Path())
@click.option("--verbose", is_flag=True)
@_common("depth")
@click.pass_context
def tower_lim(ctx, tpath, verbose, depth, fmt):
    """Inverse limit of a tower, with its descriptor kind."""
    _setup(ctx, fmt, depth=depth)
    emit(ctx, towers.lim_of(load_tower(tpath), depth).to_json(verbose))


@tower.command("lim1")
@click.option("--tower", "tpath", required=True, type=click.Path())
@click.option("--verbose", is_flag=True)
@_common("depth")
@click.pass_context
def tower_lim1(ctx, tpath, verbose, depth, fmt):
    """lim^1 of a tower: zero, or a pro-chain described by its supernatural number."""
    _setup(ctx, fmt, depth=depth)
    emit(ctx, towers.lim1_of(load_tower(tpath), depth).to_json(verbose))


@tower.command("milnor")
@click.option("--degree", type=click.IntRange(0), default=0, show_default=True)
@click.option("--reduced/--unreduced", default=True, show_default=True)
@click.option("--trials", type=click.IntRange(0), default=3, show_default=True)
@_common("depth", "seed")
@click.pass_context
def tower_milnor(ctx, degree, reduced, trials, depth, seed, fmt):
    """Milnor sequence for the tower of 2^m-gons under the doubling maps."""
    _setup(ctx, fmt, degree=degree, reduced=reduced, trials=trials, depth=depth, seed=seed)
    if depth < 2:
        raise click.BadParameter("the polygon tower needs depth >= 2", param_hint="--depth")
    ct = towers.polygon_tower(depth)
    m = towers.milnor_homology(ct, degree, reduced)
    rt = towers.milnor_roundtrip(ct, degree, trials, seed) if degree == 0 else []
    out = {"Hw": m["Hw"].to_json(), "Hinf": m["Hinf"].to_json(), "tail_inferred": m["tail_inferred"],
           "roundtrip": {"trials": len(rt), "certified": sum(rt)}}
    if "structure" in m:
        out["structure"] = m["structure"]
        out["fin"] = m["fin"]
    emit(ctx, out)


@tower.command("sixterm")
@click.option("--sequence", "spath", required=True, type=click.Path())
@click.option("--samples", type=click.IntRange(0), default=5, show_default=True)
@_common("depth", "seed")
@click.pass_context
def tower_sixterm(ctx, spath, samples, depth, seed, fmt):
    """Six-term sequence of 0 -> (Z, x a_{n+1}/a_n) -> (Z, id) -> (Z/a_n) -> 0."""
    _setup(ctx, fmt, samples=samples, depth=depth, seed=seed)
    a = load_sequence(spath)
    A, B, C, i, q = towers.canonical_sequence(a)
    six = towers.six_term(A, B, C, i, q, max(depth, 3), samples, seed)
    emit(ctx, {"lim": [d.to_json() for d in six["lim"]], "lim1": [d.to_json() for d in six["lim1"]],
               "samples_ok": six["all_ok"], "samples": len(six["samples"]),
               "matches_expected": towers.canonical_expectation(a, six)})


@tower.command("e0")
@click.option("--tower", "tpath", required=True, type=click.Path())
@click.option("--element", "epath", required=True, type=click.Path())
@click.option("--start", type=click.IntRange(0), default=0, show_default=True)
@_common("depth")
@click.pass_context
def tower_e0(ctx, tpath, epath, start, depth, fmt):
    """Truncated E0 reduction f_start(b) as coset representatives."""
    _setup(ctx, fmt, start=start, depth=depth)
    t = load_tower(tpath)
    b = load_element(epath)
    emit(ctx, {"start": start, "cosets": [list(c) for c in towers.e0_reduce(t, b, start, depth)]})


# ---------------------------------------------------------------------------
# solenoids and adic numbers


@main.command("classify-solenoid")
@click.option("--a", "apath", required=True, type=click.Path())
@click.option("--b", "bpath", required=True, type=click.Path())
@_common("depth", "prime_bound")
@click.pass_context
def classify_solenoid(ctx, apath, bpath, depth, prime_bound, fmt):
    """Baer equivalence, homeomorphism and Steenrod isomorphism of two solenoids."""
    _setup(ctx, fmt, depth=depth, prime_bound=prime_bound)
    emit(ctx, steinitz.classify_pair(load_sequence(apath), load_sequence(bpath), depth, prime_bound))


@main.command()
@click.option("--k", type=click.IntRange(2), required=True)
@click.option("--prime", type=int, default=2, show_default=True)
@_fmt
@click.pass_context
def family(ctx, k, prime, fmt):
    """k pairwise non-homeomorphic solenoids with isomorphic Steenrod homology."""
    _setup(ctx, fmt, k=k, prime=prime)
    seqs = steinitz.family_same_steenrod(k, prime)
    emit(ctx, {"sequences": [s.to_json() for s in seqs],
               "supernatural": [str(steinitz.supernatural_of(s)) for s in seqs]})


@main.group("adic")
def adic_group():
    """Arithmetic in Z_a along a divisor sequence."""


@adic_group.command("calc")
@click.option("--sequence", "spath", required=True, type=click.Path())
@click.option("--op", type=click.Choice(["from_int", "add", "neg", "mul"]), required=True)
@click.option("--x", "xs", required=True, help="integer or digit file")
@click.option("--y", "ys", default=None, help="integer or digit file")
@_common("precision")
@click.pass_context
def adic_calc(ctx, spath, op, xs, ys, precision, fmt):
    """from_int, add, neg or mul in Z_a at a fixed precision."""
    _setup(ctx, fmt, op=op, precision=precision)
    a = load_sequence(spath)
    x = load_adic_operand(xs, a, precision)
    if op in ("add", "mul"):
        if ys is None:
            raise click.BadParameter(f"{op} needs --y", param_hint="--y")
        r = adic.adic_op(op, x, load_adic_operand(ys, a, precision))
    elif op == "from_int":
        r = x
    else:
        r = adic.adic_op(op, x)
    emit(ctx, {"digits": list(r.digits), "tail": r.tail or "unknown", "integer": adic.integer_detect(r)})


@adic_group.command("divide")
@click.option("--sequence", "spath", required=True, type=click.Path())
@click.option("--x", "xs", required=True, help="integer or digit file")
@click.option("--q", type=int, required=True)
@_common("precision", "prime_bound")
@click.pass_context
def adic_divide(ctx, spath, xs, q, precision, prime_bound, fmt):
    """y with q*y - x an integer."""
    _setup(ctx, fmt, q=q, precision=precision, prime_bound=prime_bound)
    a = load_sequence(spath)
    x = load_adic_operand(xs, a, precision)
    w = adic.solve_divisibility(x, q, prime_bound)
    emit(ctx, {"y": list(w.y.digits), "method": w.method, "remainder": w.remainder,
               "verified": adic.divisibility_check(x, q, w)})


@main.command("dual-lattice")
@click.option("--generators", "gpath", required=True, type=click.Path())
@_fmt
@click.pass_context
def dual_lattice(ctx, gpath, fmt):
    """Dual of a lattice A ⊆ Q^d containing Z^d."""
    _setup(ctx, fmt)
    res = adic.dual_lattice(load_generators(gpath))
    out = {"basis": [[str(x) for x in r] for r in res.basis]}
    if res.lattice is not None:
        out["hnf"] = [list(r) for r in res.lattice.basis]
        out["index"] = abs(fgab.det([list(r) for r in res.lattice.basis]))
    emit(ctx, out)


# ---------------------------------------------------------------------------
# rigidity


@main.group("rigidity")
def rigidity_group():
    """Trivial homomorphisms and conjugacy of lattice chains."""


@rigidity_group.command("enumerate")
@click.option("--r", "rpath", required=True, type=click.Path())
@click.option("--l", "lpath", required=True, type=click.Path())
@_common("depth", "bound")
@click.pass_context
def rig_enumerate(ctx, rpath, lpath, depth, bound, fmt):
    """Continuous trivial homomorphisms between two chains, up to homotopy, in a search box."""
    _setup(ctx, fmt, depth=depth, bound=bound)
    homs, certs = rigidity.enumerate_trivial_homs(load_chain(rpath), load_chain(lpath), depth, bound)
    emit(ctx, {"homs": [h.to_json() for h in homs], "certificates": [c.to_json() for c in certs],
               "complete_within_bounds": True})


@rigidity_group.command("conjugate")
@click.option("--r", "rpath", required=True, type=click.Path())
@click.option("--l", "lpath", required=True, type=click.Path())
@_common("depth", "bound")
@click.pass_context
def rig_conjugate(ctx, rpath, lpath, depth, bound, fmt):
    """Search for a unimodular conjugacy between two lattice chains."""
    _setup(ctx, fmt, depth=depth, bound=bound)
    emit(ctx, rigidity.chains_conjugate(load_chain(rpath), load_chain(lpath), depth, bound).to_json())


@rigidity_group.command("orbit")
@click.option("--chain", "cpath", required=True, type=click.Path())
@click.option("--homs", "hpath", required=True, type=click.Path())
@click.option("--x", "xs", required=True, help="integer vector, comma separated")
@click.option("--steps", type=click.IntRange(0), default=4, show_default=True)
@_common("precision")
@click.pass_context
def rig_orbit(ctx, cpath, hpath, xs, steps, precision, fmt):
    """Orbit of a profinite point under a set of trivial homomorphisms."""
    _setup(ctx, fmt, steps=steps, precision=precision)
    chain = load_chain(cpath)
    try:
        v = [int(s) for s in xs.split(",")]
    except ValueError:
        raise click.BadParameter(f"not an integer vector: {xs!r}", param_hint="--x")
    if len(v) != chain.d:
        raise click.BadParameter(f"vector has {len(v)} entries, chain has d = {chain.d}", param_hint="--x")
    x = adic.profinite_reduce(v, chain, precision)
    res = rigidity.apply_hom_orbit(load_homs(hpath, chain), x, steps)
    emit(ctx, {"size": res["size"], "cosets_mod_Zd": res["cosets_mod_Zd"],
               "orbit": [[list(d) for d in p.element.digits] for p in res["orbit"]]})


# ---------------------------------------------------------------------------
# property suites


@main.command()
@click.argument("suite")
@click.option("--trials", type=click.IntRange(0), default=100, show_default=True)
@_common("depth", "seed")
@click.pass_context
def props(ctx, suite, trials, depth, seed, fmt):
    """Run a randomized invariant suite; exit 2 on failure."""
    from . import props as suites
    _setup(ctx, fmt, suite=suite, trials=trials, depth=depth, seed=seed)
    if suite not in suites.SUITES:
        raise click.BadParameter(f"unknown suite {suite!r}; choose from {', '.join(sorted(suites.SUITES))}",
                                 param_hint="SUITE")
    report = suites.run(suite, trials, seed, depth)
    emit(ctx, report)
    if not report["pass"]:
        raise PropertyFailure()


def run(argv=None):
    """Entry point with the documented exit codes."""
    try:
        main.main(args=argv, standalone_mode=False)
    except PropertyFailure:
        return 2
    except click.exceptions.Exit as e:
        return e.exit_code
    except click.ClickException as e:
        e.show()
        return 1
    except click.exceptions.Abort:
        return 1
    except (SchemaError, ValueError, ArithmeticError) as e:
        click.echo(f"error: {e}", err=True)
        return 1
    return 0


def entry():
    sys.exit(run())

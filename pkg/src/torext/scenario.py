"""Scenario files: a small block grammar describing rings, modules, families
and checks, with a printer that round-trips.

    ring H2 { char 101; vars x, y; weights 1, 1; relations x^2; }
    module I1 over H2 { degrees 0, 0; relations [x, 0] [y, -x]; }
    family F { seeds I1; close syz, tr; depth 3; assert-cm 0; }
    check collapse { x F; y F; n 0; }

Besides a relation matrix a module may be given as ``ideal <polys>;``,
``quotient <polys>;``, ``canonical;`` or ``apply <op> <module>;``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from .poly import PolyRing, StructuralError, homogeneous_degree

OPS = ("syz", "tr", "dual", "cosyz")
LIMIT_KEYS = ("max-degree", "res-length", "window", "oracle-degree", "jobs", "seed")
RING_KEYS = ("char", "vars", "weights", "relations")
MODULE_KEYS = ("degrees", "relations", "ideal", "quotient", "canonical", "apply")
FAMILY_KEYS = ("seeds", "close", "depth", "assert-cm")

# key -> (value type, required)
CHECKS: dict[str, dict[str, tuple[str, bool]]] = {
    "annihilator": {"kind": ("tor-ext", True), "left": ("module", True), "right": ("module", True),
                    "indices": ("ints", True), "expect": ("polys", True), "copies-of": ("module", False)},
    "family_ideal": {"kind": ("tor-ext", True), "n": ("int", True), "x": ("family", True), "y": ("family", True),
                     "expect": ("polys", False), "radical-of": ("polys", False), "source": ("text", False),
                     "window": ("int", False)},
    "collapse": {"x": ("family", True), "y": ("family", True), "n": ("int", True), "window": ("int", False)},
    "radical_equal": {"x": ("family", True), "y": ("family", True), "n": ("int", True),
                      "window": ("int", False)},
    "transpose_swap": {"left": ("module", True), "right": ("module", True)},
    "stable_ann": {"module": ("module", True), "witnesses": ("modules", True), "imax": ("int", False)},
    "spectral_bound": {"left": ("module", True), "right": ("module", True), "index": ("int", True),
                       "t": ("int", True), "mode": ("mode", False)},
    "trace_shift": {"left": ("module", True), "right": ("module", True), "index": ("int", True),
                    "r": ("int", True)},
    "trace_kills": {"module": ("module", True), "lmax": ("int", False)},
    "syzygy_chain": {"x": ("family", True), "y": ("family", True), "n": ("int", True)},
    "power_annihilation": {"ring": ("ring", True), "element": ("polys", True), "n": ("int", True),
                           "pairs": ("pairs", False), "random": ("int", False), "certified": ("polys", False),
                           "source": ("text", False), "extra": ("int", False)},
    "sing_equality": {"x": ("family", True), "y": ("family", True), "n": ("int", True),
                      "certified": ("polys", False), "source": ("text", False), "window": ("int", False)},
    "tor_ext_probe": {"family": ("family", True), "window": ("int", False)},
    "dimension_bounds": {"family": ("family", True), "t": ("int", True), "n": ("int", True),
                         "window": ("int", False)},
    "oracle": {"kind": ("tor-ext", True), "left": ("module", True), "right": ("module", True),
               "indices": ("ints", True), "degree": ("int", False)},
}


class ScenarioError(StructuralError):
    """Input error in a scenario file, with a 1-based position."""

    def __init__(self, msg: str, line: int = 0, col: int = 0):
        self.msg, self.line, self.col = msg, line, col
        super().__init__(f"{line}:{col}: {msg}" if line else msg)


class DanglingReference(ScenarioError):
    def __init__(self, name: str, kind: str, line: int = 0, col: int = 0):
        self.name = name
        super().__init__(f"undefined {kind} {name!r}", line, col)


class NonPrimeCharacteristic(ScenarioError):
    pass


@dataclass
class RingDef:
    name: str
    char: int
    vars: list
    weights: list | None
    relations: list


@dataclass
class ModuleDef:
    name: str
    ring: str
    kind: str  # matrix | ideal | quotient | canonical | apply
    degrees: list = field(default_factory=list)
    columns: list = field(default_factory=list)
    gens: list = field(default_factory=list)
    op: str | None = None
    arg: str | None = None


@dataclass
class FamilyDef:
    name: str
    seeds: list
    close: list = field(default_factory=list)
    depth: int = 0
    assert_cm: int | None = None


@dataclass
class CheckDef:
    kind: str
    params: dict


@dataclass
class ScenarioLimits:
    max_degree: int | None = None
    res_length: int | None = None
    window: int | None = None
    oracle_degree: int | None = None
    jobs: int | None = None
    seed: int | None = None


@dataclass
class Scenario:
    name: str
    rings: dict = field(default_factory=dict)
    modules: dict = field(default_factory=dict)
    families: dict = field(default_factory=dict)
    checks: list = field(default_factory=list)
    limits: ScenarioLimits = field(default_factory=ScenarioLimits)

    def module_ring(self, name: str) -> str:
        return self.modules[name].ring

    def family_ring(self, name: str) -> str:
        return self.module_ring(self.families[name].seeds[0])


# --- lexing -------------------------------------------------------------------

_IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")
_KEY = re.compile(r"[A-Za-z_][A-Za-z0-9_-]*")


class _Src:
    def __init__(self, text: str):
        self.text = text
        self.i = 0

    def pos(self, i: int | None = None) -> tuple[int, int]:
        i = self.i if i is None else i
        line = self.text.count("\n", 0, i) + 1
        col = i - (self.text.rfind("\n", 0, i) + 1) + 1
        return line, col

    def error(self, msg: str, i: int | None = None):
        raise ScenarioError(msg, *self.pos(i))

    def skip(self):
        t = self.text
        while self.i < len(t):
            c = t[self.i]
            if c.isspace():
                self.i += 1
            elif c == "#":
                j = t.find("\n", self.i)
                self.i = len(t) if j < 0 else j
            else:
                break

    def eof(self) -> bool:
        self.skip()
        return self.i >= len(self.text)

    def word(self, what: str = "identifier", pattern=_IDENT) -> tuple[str, int]:
        self.skip()
        m = pattern.match(self.text, self.i)
        if not m:
            self.error(f"expected {what}")
        start = self.i
        self.i = m.end()
        return m.group(0), start

    def expect(self, ch: str):
        self.skip()
        if not self.text.startswith(ch, self.i):
            self.error(f"expected {ch!r}")
        self.i += len(ch)

    def statements(self) -> list[tuple[str, str, int, str]]:
        """Statements of a ``{ ... }`` block as (key, value, offset, whole statement)."""
        self.expect("{")
        out = []
        t = self.text
        while True:
            self.skip()
            if self.i >= len(t):
                self.error("unterminated block")
            if t[self.i] == "}":
                self.i += 1
                return out
            start = self.i
            depth = 0
            quoted = False
            while True:
                if self.i >= len(t):
                    self.error("unterminated statement", start)
                c = t[self.i]
                if quoted:
                    if c == '"':
                        quoted = False
                elif c == '"':
                    quoted = True
                elif c == "[":
                    depth += 1
                elif c == "]":
                    depth -= 1
                    if depth < 0:
                        self.error("unbalanced ']'")
                elif c == "#":
                    j = t.find("\n", self.i)
                    self.i = len(t) if j < 0 else j
                    continue
                elif depth == 0 and c in ";}":
                    break
                self.i += 1
            body = re.sub(r"#[^\n]*", "", t[start:self.i]).strip()
            if t[self.i] == ";":
                self.i += 1
            if not body:
                self.error("empty statement", start)
            m = _KEY.match(body)
            key = m.group(0) if m else ""
            out.append((key, " ".join(body[len(key):].split()), start, " ".join(body.split())))


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    k = 2
    while k * k <= p:
        if p % k == 0:
            return False
        k += 1
    return True


def _split_list(value: str) -> list[str]:
    return [v.strip() for v in re.split(r"[,\s]+", value) if v.strip()] if value else []


def _split_polys(value: str) -> list[str]:
    return [v.strip() for v in value.split(",") if v.strip()]


# --- parsing ------------------------------------------------------------------

class _Parser:
    def __init__(self, text: str, name: str):
        self.src = _Src(text)
        self.sc = Scenario(name)
        self.poly_rings: dict[str, PolyRing] = {}

    def err(self, msg, at):
        self.src.error(msg, at)

    def int_value(self, v: str, at: int, what: str) -> int:
        try:
            return int(v)
        except ValueError:
            self.err(f"{what} must be an integer, got {v!r}", at)

    def ints(self, v: str, at: int, what: str) -> list[int]:
        return [self.int_value(x, at, what) for x in _split_list(v)]

    def poly(self, ring: str, text: str, at: int) -> str:
        try:
            return str(self.poly_rings[ring].parse(text))
        except (StructuralError, SyntaxError) as e:
            self.err(f"bad polynomial {text!r}: {e}", at)

    def parse(self) -> Scenario:
        src = self.src
        while not src.eof():
            kw, at = src.word("block keyword")
            if kw == "scenario":
                self.sc.name, _ = src.word("scenario name")
                src.expect(";")
            elif kw == "limits":
                self.limits(src.statements())
            elif kw == "ring":
                name, nat = src.word("ring name")
                self.ring(name, nat, src.statements())
            elif kw == "module":
                name, nat = src.word("module name")
                over, _ = src.word("'over'")
                if over != "over":
                    self.err("expected 'over'", nat)
                rname, rat = src.word("ring name")
                if rname not in self.sc.rings:
                    raise DanglingReference(rname, "ring", *src.pos(rat))
                self.module(name, nat, rname, src.statements())
            elif kw == "family":
                name, nat = src.word("family name")
                self.family(name, nat, src.statements())
            elif kw == "check":
                kind, kat = src.word("check kind")
                self.check(kind, kat, src.statements())
            else:
                self.err(f"unknown block {kw!r}", at)
        return self.sc

    def _fresh(self, name, at):
        if name in self.sc.rings or name in self.sc.modules or name in self.sc.families:
            self.err(f"name {name!r} defined twice", at)

    def limits(self, stmts):
        lim = self.sc.limits
        for key, v, at, _ in stmts:
            if key not in LIMIT_KEYS:
                self.err(f"unknown limit {key!r}", at)
            val = self.int_value(v, at, key)
            if val < 0 or (val == 0 and key != "seed"):
                self.err(f"limit {key} must be positive", at)
            setattr(lim, key.replace("-", "_"), val)

    def ring(self, name, nat, stmts):
        self._fresh(name, nat)
        char, vs, ws, rels = None, None, None, []
        last = None
        for key, v, at, whole in stmts:
            if key not in RING_KEYS:
                if last == "relations":
                    rels.append(whole)
                    continue
                self.err(f"unknown ring key {key!r}", at)
            last = key
            if key == "char":
                char = self.int_value(v, at, "char")
                if not _is_prime(char):
                    raise NonPrimeCharacteristic(f"characteristic {char} is not prime", *self.src.pos(at))
            elif key == "vars":
                vs = _split_list(v)
                for x in vs:
                    if not _IDENT.fullmatch(x):
                        self.err(f"bad variable name {x!r}", at)
            elif key == "weights":
                ws = self.ints(v, at, "weight")
            else:
                if v:
                    rels.append(v)
        if char is None or not vs:
            self.err(f"ring {name} needs char and vars", nat)
        if ws is not None and (len(ws) != len(vs) or min(ws) < 1):
            self.err(f"ring {name}: weights must be positive, one per variable", nat)
        try:
            S = PolyRing(vs, ws, char)
        except StructuralError as e:
            self.err(str(e), nat)
        self.poly_rings[name] = S
        rels = [self.poly(name, r, nat) for r in rels]
        for r in rels:
            if homogeneous_degree(S.parse(r)) is None:
                self.err(f"ring {name}: relation {r} is not homogeneous for the weights", nat)
        self.sc.rings[name] = RingDef(name, char, vs, ws, rels)

    def module(self, name, nat, rname, stmts):
        self._fresh(name, nat)
        md = ModuleDef(name, rname, "")
        for key, v, at, _ in stmts:
            if key not in MODULE_KEYS:
                self.err(f"unknown module key {key!r}", at)
            if key == "degrees":
                md.degrees = self.ints(v, at, "degree")
                md.kind = md.kind or "matrix"
            elif key == "relations":
                md.kind = md.kind or "matrix"
                cols = re.findall(r"\[([^\]]*)\]", v)
                rest = re.sub(r"\[[^\]]*\]", "", v).strip()
                if rest:
                    self.err("relations must be bracketed columns", at)
                md.columns = [[self.poly(rname, e, at) for e in _split_polys(c)] for c in cols]
            elif key in ("ideal", "quotient"):
                md.kind = key
                md.gens = [self.poly(rname, g, at) for g in _split_polys(v)]
            elif key == "canonical":
                md.kind = "canonical"
            elif key == "apply":
                parts = v.split()
                if len(parts) != 2 or parts[0] not in OPS:
                    self.err(f"apply {v!r}: need one of {', '.join(OPS)} and a module", at)
                if parts[1] not in self.sc.modules:
                    raise DanglingReference(parts[1], "module", *self.src.pos(at))
                if self.sc.modules[parts[1]].ring != rname:
                    self.err(f"module {parts[1]} is over another ring", at)
                md.kind, md.op, md.arg = "apply", parts[0], parts[1]
        if not md.kind:
            self.err(f"module {name} has no definition", nat)
        if md.kind == "matrix":
            for c in md.columns:
                if len(c) != len(md.degrees):
                    self.err(f"module {name}: column length {len(c)} != {len(md.degrees)} generators", nat)
        self.sc.modules[name] = md

    def family(self, name, nat, stmts):
        self._fresh(name, nat)
        fd = FamilyDef(name, [])
        for key, v, at, _ in stmts:
            if key not in FAMILY_KEYS:
                self.err(f"unknown family key {key!r}", at)
            if key == "seeds":
                fd.seeds = _split_list(v)
                for s in fd.seeds:
                    if s not in self.sc.modules:
                        raise DanglingReference(s, "module", *self.src.pos(at))
            elif key == "close":
                ops = [o for o in _split_list(v) if o != "none"]
                for o in ops:
                    if o not in OPS:
                        self.err(f"unknown closure operation {o!r}", at)
                fd.close = ops
            elif key == "depth":
                fd.depth = self.int_value(v, at, "depth")
            else:
                fd.assert_cm = self.int_value(v, at, "assert-cm")
        if not fd.seeds:
            self.err(f"family {name} needs seeds", nat)
        rings = {self.sc.modules[s].ring for s in fd.seeds}
        if len(rings) > 1:
            self.err(f"family {name} mixes rings", nat)
        self.sc.families[name] = fd

    def check(self, kind, kat, stmts):
        schema = CHECKS.get(kind)
        if schema is None:
            self.err(f"unknown check kind {kind!r}", kat)
        params: dict = {}
        spots: dict = {}
        for key, v, at, _ in stmts:
            if key not in schema:
                self.err(f"check {kind}: unknown key {key!r}", at)
            params[key] = v
            spots[key] = at
        for key, (_, req) in schema.items():
            if req and key not in params:
                if kind == "power_annihilation" and key == "ring":
                    continue
                self.err(f"check {kind}: missing key {key!r}", kat)
        ring = None
        for key, v in params.items():
            at = spots[key]
            typ = schema[key][0]
            if typ in ("module", "modules", "pairs"):
                names = _split_list(v.replace("(", " ").replace(")", " "))
                if typ == "module" and len(names) != 1:
                    self.err(f"{key} takes one module", at)
                if typ == "pairs" and len(names) % 2:
                    self.err("pairs must list modules two at a time", at)
                for nm in names:
                    if nm not in self.sc.modules:
                        raise DanglingReference(nm, "module", *self.src.pos(at))
                    ring = ring or self.sc.modules[nm].ring
                params[key] = " ".join(names) if typ == "module" else ", ".join(names)
            elif typ == "family":
                if v not in self.sc.families:
                    raise DanglingReference(v, "family", *self.src.pos(at))
                ring = ring or self.sc.family_ring(v)
            elif typ == "ring":
                if v not in self.sc.rings:
                    raise DanglingReference(v, "ring", *self.src.pos(at))
                ring = v
            elif typ == "int":
                self.int_value(v, at, key)
            elif typ == "ints":
                params[key] = ", ".join(str(x) for x in self.ints(v, at, key))
            elif typ == "tor-ext" and v not in ("tor", "ext"):
                self.err(f"{key} must be tor or ext", at)
            elif typ == "mode" and v not in ("inclusion", "equality"):
                self.err("mode must be inclusion or equality", at)
            elif typ == "text":
                if not (len(v) >= 2 and v[0] == v[-1] == '"'):
                    self.err(f"{key} must be a quoted string", at)
        if kind == "power_annihilation":
            if "ring" in params:
                ring = params["ring"]
            elif ring is None:
                self.err("power_annihilation needs a ring or pairs", kat)
            if "pairs" not in params and "random" not in params:
                self.err("power_annihilation needs pairs or random", kat)
        for key, v in params.items():
            if schema[key][0] == "polys":
                params[key] = ", ".join(self.poly(ring, g, spots[key]) for g in _split_polys(v))
        self.sc.checks.append(CheckDef(kind, params))


def parse_scenario(text: str, name: str = "scenario") -> Scenario:
    """Parse and validate; raises :class:`ScenarioError` with line and column."""
    return _Parser(text, name).parse()


# --- printing -----------------------------------------------------------------

def format_scenario(sc: Scenario) -> str:
    out = [f"scenario {sc.name};", ""]
    lim = [(k, getattr(sc.limits, k.replace("-", "_"))) for k in LIMIT_KEYS]
    lim = [(k, v) for k, v in lim if v is not None]
    if lim:
        out.append("limits { " + " ".join(f"{k} {v};" for k, v in lim) + " }")
        out.append("")
    for r in sc.rings.values():
        parts = [f"char {r.char};", f"vars {', '.join(r.vars)};"]
        if r.weights is not None:
            parts.append(f"weights {', '.join(map(str, r.weights))};")
        if r.relations:
            parts.append("relations " + "; ".join(r.relations) + ";")
        out.append(f"ring {r.name} {{ " + " ".join(parts) + " }")
    for m in sc.modules.values():
        if m.kind == "matrix":
            body = f"degrees {', '.join(map(str, m.degrees))};"
            if m.columns:
                body += " relations " + " ".join("[" + ", ".join(c) + "]" for c in m.columns) + ";"
        elif m.kind in ("ideal", "quotient"):
            body = f"{m.kind} {', '.join(m.gens)};"
        elif m.kind == "canonical":
            body = "canonical;"
        else:
            body = f"apply {m.op} {m.arg};"
        out.append(f"module {m.name} over {m.ring} {{ {body} }}")
    for f in sc.families.values():
        body = f"seeds {', '.join(f.seeds)}; close {', '.join(f.close) if f.close else 'none'}; depth {f.depth};"
        if f.assert_cm is not None:
            body += f" assert-cm {f.assert_cm};"
        out.append(f"family {f.name} {{ {body} }}")
    for c in sc.checks:
        out.append(f"check {c.kind} {{ " + " ".join(f"{k} {v};" for k, v in c.params.items()) + " }")
    return "\n".join(out) + "\n"

"""Finite families of modules, the Tor/Ext annihilator ideals they define,
and one checker per pairwise-valid annihilator statement.

Every checker returns a :class:`CheckResult`.  Family ideals are only upper
bounds for the category-level ideals they approximate, so statements that
quantify over the true ideal take a :class:`CertifiedIdeal` instead.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

from .groebner import ResourceLimitError
from .homological import (
    DomainError, canonical_dual, cosyzygy, ext, omega, stable_end_ann, syzygy, tor, trace_ideal, transpose,
)
from .modules import FPModule, dim_nf, free_resolution, is_mcm, poly_times_vec
from .poly import Polynomial, StructuralError
from .ring import Ideal, NotCohenMacaulayError, intersect, radical_equal, singular_locus, unit_ideal

STATUSES = ("pass", "fail", "hypothesis-violation", "resource-bound")
OPS = ("syz", "tr", "dual", "cosyz")
MAX_POWER_DIM = 3


class HypothesisViolation(StructuralError):
    """Inputs do not satisfy the hypotheses a check relies on."""

    def __init__(self, msg: str, witness: dict | None = None):
        super().__init__(msg)
        self.witness = dict(witness or {})
        self.witness.setdefault("reason", msg)


# --- results ------------------------------------------------------------------

@dataclass
class CheckResult:
    name: str
    anchor: str
    status: str
    witness: dict | None = None
    ideals: dict = field(default_factory=dict)
    details: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.status not in STATUSES:
            raise ValueError(f"unknown status {self.status!r}")
        if self.status == "fail" and not self.witness:
            raise ValueError("a failing check must carry a witness")

    @property
    def passed(self) -> bool:
        return self.status == "pass"

    def to_dict(self) -> dict:
        out = {"name": self.name, "anchor": self.anchor, "status": self.status}
        if self.witness is not None and self.status != "pass":
            out["witness"] = self.witness
        out["ideals"] = {k: list(v) for k, v in sorted(self.ideals.items())}
        return out


@dataclass(frozen=True)
class CertifiedIdeal:
    """An ideal known (from outside the engine) to equal a category-level ideal."""

    ideal: Ideal
    source: str

    def contains(self, f: Polynomial) -> bool:
        return self.ideal.contains(f)


@dataclass
class IdealReport:
    """A finite-family ideal: an over-approximation of the category-level ideal."""

    ideal: Ideal
    kind: str
    n: int
    window: int
    provenance: list = field(default_factory=list)

    def to_strings(self) -> list[str]:
        return self.ideal.to_strings()


def _strings(J: Ideal) -> list[str]:
    return J.to_strings()


# --- families -----------------------------------------------------------------

def module_signature(M: FPModule, D: int = 8) -> tuple:
    """Hilbert prefix, annihilator and Betti numbers over the ambient ring."""
    sig = M._cache.get(("lab-sig", D))
    if sig is None:
        betti = free_resolution(M, M.ring.n + 1, level="overS").betti()
        sig = (M.signature(D), tuple(M.annihilator().to_strings()), tuple(betti))
        M._cache[("lab-sig", D)] = sig
    return sig


def apply_op(op: str, M: FPModule) -> FPModule:
    if op == "syz":
        return syzygy(M, 1)
    if op == "tr":
        return transpose(M)
    if op == "dual":
        return canonical_dual(M)
    if op == "cosyz":
        return cosyzygy(M, 1)
    raise StructuralError(f"unknown closure operation {op!r}")


OP_SYMBOL = {"syz": "Om", "tr": "Tr", "dual": "Dual", "cosyz": "CoOm"}


class Family:
    """A finite list of nonzero modules over one ring, deduplicated by signature.

    ``flags`` only ever holds verified facts: ``closed:<op>`` means the image of
    every member under the operation is zero or has the signature of a member.
    """

    def __init__(self, ring, modules: Iterable[FPModule] = (), labels: Sequence[str] | None = None, *,
                 name: str | None = None):
        self.ring = ring
        self.name = name
        self.members: list[FPModule] = []
        self.labels: list[str] = []
        self._sigs: dict[tuple, int] = {}
        self.seeds: list[str] = []
        self.ops: tuple = ()
        self.depth = 0
        self.flags: set[str] = set()
        mods = list(modules)
        labels = list(labels) if labels is not None else [m.name or f"M{k}" for k, m in enumerate(mods)]
        for M, lab in zip(mods, labels):
            self.add(M, lab)
        self.seeds = list(self.labels)

    def __len__(self):
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    def items(self):
        return list(zip(self.labels, self.members))

    def add(self, M: FPModule, label: str) -> bool:
        if M.ring is not self.ring:
            raise StructuralError("family members must share one ring")
        if M.is_zero():
            return False
        sig = module_signature(M)
        if sig in self._sigs:
            return False
        self._sigs[sig] = len(self.members)
        self.members.append(M)
        self.labels.append(label)
        return True

    def contains_like(self, M: FPModule) -> bool:
        return M.is_zero() or module_signature(M) in self._sigs

    def label_of(self, M: FPModule) -> str | None:
        k = self._sigs.get(module_signature(M))
        return None if k is None else self.labels[k]

    def includes(self, other: "Family") -> bool:
        return all(self.contains_like(M) for M in other)

    def verify_closed(self, op: str) -> bool:
        for M in self.members:
            try:
                img = apply_op(op, M)
            except DomainError:
                return False
            if not self.contains_like(img):
                return False
        return True

    def cm_offenders(self, t: int) -> list[tuple[str, str]]:
        """Members that are not MCM or have nonfree locus of dimension > t."""
        bad = []
        for lab, M in self.items():
            if not is_mcm(M):
                bad.append((lab, "not maximal Cohen-Macaulay"))
            elif dim_nf(M) > t:
                bad.append((lab, f"nonfree locus of dimension {dim_nf(M)} > {t}"))
        return bad

    def require_cm(self, t: int):
        bad = self.cm_offenders(t)
        if bad:
            lab, why = bad[0]
            raise HypothesisViolation(f"family member {lab} is {why}",
                                      {"family": self.name, "member": lab, "reason": why})

    def __repr__(self):
        return f"Family({self.name or ''}: {', '.join(self.labels)})"


def close_family(seeds: Sequence[FPModule], ops: Iterable[str], depth: int, labels: Sequence[str] | None = None,
                 *, name: str | None = None, max_members: int = 64) -> Family:
    """Orbit of the seeds under the operations up to ``depth`` steps."""
    ops = set(ops)
    unknown = ops - set(OPS)
    if unknown:
        raise StructuralError(f"unknown closure operations {sorted(unknown)}")
    ops = tuple(o for o in OPS if o in ops)
    if depth < 0:
        raise StructuralError("closure depth must be nonnegative")
    if not seeds:
        raise StructuralError("a family needs at least one seed")
    F = Family(seeds[0].ring, seeds, labels, name=name)
    F.ops = ops
    F.depth = depth
    layer = F.items()
    for _ in range(depth):
        new = []
        for lab, M in layer:
            for op in ops:
                try:
                    img = apply_op(op, M)
                except DomainError:
                    continue
                nl = f"{OP_SYMBOL[op]}({lab})"
                if F.add(img, nl):
                    new.append((nl, img))
                    if len(F) > max_members:
                        raise ResourceLimitError("family size", len(F), max_members)
        layer = new
        if not new:
            break
    for op in ops:
        if F.verify_closed(op):
            F.flags.add(f"closed:{op}")
    return F


def default_window(X: Family) -> int:
    return 1 if "closed:syz" in X.flags else 3


def _pair_ideal(kind: str, M: FPModule, N: FPModule, i: int) -> Ideal:
    T = tor(M, N, i) if kind == "tor" else ext(M, N, i)
    return T.annihilator()


def family_ideal(kind: str, n: int, X: Family, Y: Family, window: int | None = None) -> IdealReport:
    """Intersection of ann Tor_i(M, N) (or ann Ext^i) over M in X, N in Y, n < i <= n + window."""
    if kind not in ("tor", "ext"):
        raise StructuralError(f"unknown family ideal kind {kind!r}")
    if X.ring is not Y.ring:
        raise StructuralError("families over different rings")
    W = default_window(X) if window is None else window
    if W < 1:
        raise StructuralError("window must be at least 1")
    parts, prov = [], []
    for xl, M in X.items():
        for yl, N in Y.items():
            for i in range(n + 1, n + W + 1):
                J = _pair_ideal(kind, M, N, i)
                prov.append((xl, yl, i, tuple(J.to_strings())))
                parts.append(J)
    J = intersect(parts) if parts else unit_ideal(X.ring)
    return IdealReport(J, kind, n, W, prov)


def family_tor_ideal(n: int, X: Family, Y: Family, window: int | None = None) -> IdealReport:
    return family_ideal("tor", n, X, Y, window)


def family_ext_ideal(n: int, X: Family, Y: Family, window: int | None = None) -> IdealReport:
    return family_ideal("ext", n, X, Y, window)


def kills(f: Polynomial, T: FPModule) -> bool:
    """f * T = 0."""
    p = T.ring.char
    for g in T.generators():
        if T.reduce(poly_times_vec(f.terms, g, p)):
            return False
    return True


# --- the checker harness ------------------------------------------------------

def _guarded(name: str, anchor: str):
    def wrap(fn: Callable) -> Callable:
        def run(*args, **kw) -> CheckResult:
            try:
                return fn(*args, **kw)
            except HypothesisViolation as e:
                return CheckResult(name, anchor, "hypothesis-violation", e.witness)
            except NotCohenMacaulayError as e:
                return CheckResult(name, anchor, "hypothesis-violation", {"reason": str(e)})
            except ResourceLimitError as e:
                return CheckResult(name, anchor, "resource-bound",
                                   {"cap": e.cap, "value": e.value, "limit": e.limit})
        run.__name__ = fn.__name__
        run.__doc__ = fn.__doc__
        run.check_name = name
        return run
    return wrap


def _verdict(name, anchor, failures: list[dict], ideals: dict, details: dict | None = None) -> CheckResult:
    if failures:
        return CheckResult(name, anchor, "fail", failures[0], ideals, dict(details or {}, failures=len(failures)))
    return CheckResult(name, anchor, "pass", None, ideals, details or {})


def _label(M: FPModule, default: str) -> str:
    return M.name or default


# --- pairwise checks ----------------------------------------------------------

@_guarded("transpose_swap", "Ext^1(Tr Om Tr Om M, N) = Tor_1(Tr Om M, N)")
def check_transpose_swap(M: FPModule, N: FPModule, D: int = 8) -> CheckResult:
    """Compare annihilators and Hilbert prefixes of the two sides."""
    name, anchor = "transpose_swap", "Ext^1(Tr Om Tr Om M, N) = Tor_1(Tr Om M, N)"
    if M.ring is not N.ring:
        raise StructuralError("modules over different rings")
    X = transpose(syzygy(M, 1))
    A = ext(transpose(syzygy(X, 1)), N, 1)
    B = tor(X, N, 1)
    a, b = A.annihilator(), B.annihilator()
    sa, sb = A.signature(D), B.signature(D)
    fails = []
    if a != b:
        fails.append({"pair": [_label(M, "M"), _label(N, "N")], "index": 1, "reason": "annihilators differ"})
    if sa != sb:
        fails.append({"pair": [_label(M, "M"), _label(N, "N")], "index": 1, "reason": "Hilbert prefixes differ",
                      "ext": list(sa), "tor": list(sb)})
    return _verdict(name, anchor, fails, {"ann_ext": _strings(a), "ann_tor": _strings(b)}, {"hilbert": list(sa)})


@_guarded("stable_ann", "ann Ext^1(M, Om M) = ann Tor_1(M, Tr M) kills Tor_i(M, -) and Ext^i(M, -)")
def check_stable_ann(M: FPModule, witnesses: Iterable[FPModule] | Family, imax: int = 3) -> CheckResult:
    """The two stable-endomorphism annihilators agree and kill higher Tor and Ext."""
    name, anchor = "stable_ann", "ann Ext^1(M, Om M) = ann Tor_1(M, Tr M) kills Tor_i(M, -) and Ext^i(M, -)"
    a = ext(M, syzygy(M, 1), 1).annihilator()
    b = tor(M, transpose(M), 1).annihilator()
    ideals = {"ann_ext1": _strings(a), "ann_tor1": _strings(b)}
    if a != b:
        return CheckResult(name, anchor, "fail", {"module": _label(M, "M"), "reason": "the two ideals differ"},
                           ideals)
    items = witnesses.items() if isinstance(witnesses, Family) else [
        (_label(N, f"N{k}"), N) for k, N in enumerate(witnesses)]
    fails = []
    for lab, N in items:
        for i in range(1, imax + 1):
            for kind in ("tor", "ext"):
                J = _pair_ideal(kind, M, N, i)
                if not a <= J:
                    fails.append({"pair": [_label(M, "M"), lab], "index": i, "kind": kind,
                                  "ann": _strings(J)})
    return _verdict(name, anchor, fails, ideals)


def _prod(ideals: Sequence[Ideal], ring) -> Ideal:
    out = unit_ideal(ring)
    for J in ideals:
        out = out * J
    return out


@_guarded("spectral_bound", "prod_j ann Ext^{d-j}(Tor_{i+j}(M,N), w) in ann Ext^{d+i}(M, N^dag)")
def check_spectral_bound(M: FPModule, N: FPModule, i: int, t: int, mode: str = "inclusion") -> CheckResult:
    """Products of annihilators of dualized Tor/Ext bound those against N^dag.

    ``mode="equality"`` (t = 0) compares ann Tor_i(M, N) with ann Ext^{d+i}(M, N^dag)
    and ann Tor_i(M, N^dag) with ann Ext^{d+i}(M, N).
    """
    name, anchor = "spectral_bound", "prod_j ann Ext^{d-j}(Tor_{i+j}(M,N), w) in ann Ext^{d+i}(M, N^dag)"
    ring = M.ring
    d = ring.d
    if mode not in ("inclusion", "equality"):
        raise StructuralError(f"unknown mode {mode!r}")
    if i < 1:
        raise HypothesisViolation("index i must be at least 1", {"index": i})
    if not 0 <= t <= d:
        raise HypothesisViolation(f"t = {t} outside 0..{d}", {"t": t})
    if mode == "equality" and t != 0:
        raise HypothesisViolation("equality mode needs t = 0", {"t": t})
    if not is_mcm(N):
        raise HypothesisViolation("second module is not maximal Cohen-Macaulay", {"module": _label(N, "N")})
    nf = dim_nf(M)
    if nf > t:
        raise HypothesisViolation(f"dim NF(M) = {nf} > t = {t}", {"module": _label(M, "M"), "dim_nf": nf})
    w = omega(ring)
    Nd = canonical_dual(N)
    pair = [_label(M, "M"), _label(N, "N")]
    if mode == "equality":
        a1 = tor(M, N, i).annihilator()
        b1 = ext(M, Nd, d + i).annihilator()
        a2 = tor(M, Nd, i).annihilator()
        b2 = ext(M, N, d + i).annihilator()
        ideals = {"ann_tor": _strings(a1), "ann_ext_dual": _strings(b1),
                  "ann_tor_dual": _strings(a2), "ann_ext": _strings(b2)}
        fails = []
        if a1 != b1:
            fails.append({"pair": pair, "index": i, "reason": "ann Tor_i(M,N) != ann Ext^{d+i}(M,N^dag)"})
        if a2 != b2:
            fails.append({"pair": pair, "index": i, "reason": "ann Tor_i(M,N^dag) != ann Ext^{d+i}(M,N)"})
        return _verdict(name, anchor, fails, ideals)
    P1 = _prod([ext(tor(M, N, i + j), w, d - j).annihilator() for j in range(t + 1)], ring)
    T1 = ext(M, Nd, d + i).annihilator()
    P2 = _prod([ext(ext(M, N, d + i - j), w, d - j).annihilator() for j in range(t + 1)], ring)
    T2 = tor(M, Nd, i).annihilator()
    ideals = {"product_tor": _strings(P1), "ann_ext_dual": _strings(T1),
              "product_ext": _strings(P2), "ann_tor_dual": _strings(T2)}
    fails = []
    if not P1 <= T1:
        fails.append({"pair": pair, "index": i, "reason": "Tor-side product not contained"})
    if not P2 <= T2:
        fails.append({"pair": pair, "index": i, "reason": "Ext-side product not contained"})
    return _verdict(name, anchor, fails, ideals)


@_guarded("trace_shift", "(tr w)^r ann Ext^{r+i}(N, Om^r M) in ann Ext^i(N, M)")
def check_trace_shift(N: FPModule, M: FPModule, i: int, r: int) -> CheckResult:
    """Both (tr w)^r-twisted containments, via syzygies of M and cosyzygies of N."""
    name, anchor = "trace_shift", "(tr w)^r ann Ext^{r+i}(N, Om^r M) in ann Ext^i(N, M)"
    ring = N.ring
    if i < 1 or r < 0:
        raise HypothesisViolation("need i >= 1 and r >= 0", {"index": i, "r": r})
    if not is_mcm(N):
        raise HypothesisViolation("first module is not maximal Cohen-Macaulay", {"module": _label(N, "N")})
    tw = trace_ideal(omega(ring))
    target = ext(N, M, i).annihilator()
    twr = tw ** r
    left = twr * ext(N, syzygy(M, r), r + i).annihilator()
    right = twr * ext(cosyzygy(N, r), M, r + i).annihilator()
    ideals = {"target": _strings(target), "via_syzygy": _strings(left), "via_cosyzygy": _strings(right),
              "trace_omega": _strings(tw)}
    pair = [_label(N, "N"), _label(M, "M")]
    fails = []
    if not left <= target:
        fails.append({"pair": pair, "index": i, "r": r, "reason": "syzygy-side product not contained"})
    if not right <= target:
        fails.append({"pair": pair, "index": i, "r": r, "reason": "cosyzygy-side product not contained"})
    return _verdict(name, anchor, fails, ideals)


@_guarded("trace_kills", "tr w kills Ext^l(X, R) and Ext^l(w, X) for MCM X, l > 0")
def check_trace_kills(X: FPModule, lmax: int = 3) -> CheckResult:
    name, anchor = "trace_kills", "tr w kills Ext^l(X, R) and Ext^l(w, X) for MCM X, l > 0"
    ring = X.ring
    if not is_mcm(X):
        raise HypothesisViolation("module is not maximal Cohen-Macaulay", {"module": _label(X, "X")})
    w = omega(ring)
    tw = trace_ideal(w)
    R = FPModule(ring, [0], [])
    fails = []
    for l in range(1, lmax + 1):
        for kind, T in (("Ext(X,R)", ext(X, R, l)), ("Ext(w,X)", ext(w, X, l))):
            for g in tw.gens:
                if not kills(g, T):
                    fails.append({"module": _label(X, "X"), "index": l, "kind": kind, "element": str(g)})
                    break
    return _verdict(name, anchor, fails, {"trace_omega": _strings(tw)})


# --- family checks ------------------------------------------------------------

@_guarded("syzygy_chain", "ann End(Om^n X) kills Tor_{n+1}(X, -) and Ext^{n+1}(X, -)")
def check_syzygy_chain(X: Family, Y: Family, n: int) -> CheckResult:
    """Pairwise containments, then family-level containments when membership allows."""
    name, anchor = "syzygy_chain", "ann End(Om^n X) kills Tor_{n+1}(X, -) and Ext^{n+1}(X, -)"
    if not Y.includes(X):
        raise HypothesisViolation("second family does not contain the first", {"families": [X.name, Y.name]})
    fails = []
    ext_ok = tr_ok = True
    for xl, M in X.items():
        s = stable_end_ann(syzygy(M, n))
        for yl, N in Y.items():
            for kind in ("tor", "ext"):
                J = _pair_ideal(kind, M, N, n + 1)
                if not s <= J:
                    fails.append({"pair": [xl, yl], "index": n + 1, "kind": kind, "stable_ann": _strings(s)})
        ext_ok = ext_ok and Y.contains_like(syzygy(M, n + 1))
        tr_ok = tr_ok and Y.contains_like(transpose(syzygy(M, n)))
    E = family_ideal("ext", n, X, Y, 1).ideal
    T = family_ideal("tor", n, X, Y, 1).ideal
    ideals = {"family_ext": _strings(E), "family_tor": _strings(T)}
    level = "skipped"
    if ext_ok:
        level = "containment"
        if not E <= T:
            fails.append({"families": [X.name, Y.name], "index": n + 1, "reason": "family Ext ideal not in Tor ideal"})
        if tr_ok:
            level = "equality"
            if not T <= E:
                fails.append({"families": [X.name, Y.name], "index": n + 1,
                              "reason": "family Tor ideal not in Ext ideal"})
    return _verdict(name, anchor, fails, ideals, {"family_level": level})


def certified_ideal(ring, gens: Iterable, source: str) -> CertifiedIdeal:
    if not source:
        raise StructuralError("a certified ideal needs a recorded source")
    return CertifiedIdeal(ring.ideal(list(gens)), source)


@_guarded("power_annihilation", "a in T_n(CM_0) gives a^(2^(2d)) Tor_i = 0 for i > n+4d")
def check_power_annihilation(a: Polynomial, n: int, pairs: Sequence[tuple[FPModule, FPModule]],
                             certificate: CertifiedIdeal | None, extra: int = 2) -> CheckResult:
    """Powers of a certified element kill Tor and Ext far enough out."""
    name, anchor = "power_annihilation", "a in T_n(CM_0) gives a^(2^(2d)) Tor_i = 0 for i > n+4d"
    if not pairs:
        raise StructuralError("no sample pairs")
    ring = pairs[0][0].ring
    d = ring.d
    if d > MAX_POWER_DIM:
        raise ResourceLimitError("ring dimension", d, MAX_POWER_DIM)
    if certificate is None:
        raise HypothesisViolation("element is not certified", {"element": str(a)})
    if not certificate.contains(a):
        raise HypothesisViolation("element is not in the certified ideal",
                                  {"element": str(a), "certified": _strings(certificate.ideal)})
    e_tor = 2 ** (2 * d)
    e_ext = e_tor * (d + 1)
    fa, fe = a ** e_tor, a ** e_ext
    fails = []
    for k, (M, N) in enumerate(pairs):
        pair = [_label(M, f"M{k}"), _label(N, f"N{k}")]
        for i in range(n + 4 * d + 1, n + 4 * d + extra + 1):
            if not kills(fa, tor(M, N, i)):
                fails.append({"pair": pair, "index": i, "kind": "tor", "element": str(fa)})
        for i in range(n + d + 1, n + d + extra + 1):
            if not kills(fe, ext(M, N, i)):
                fails.append({"pair": pair, "index": i, "kind": "ext", "element": str(fe)})
    return _verdict(name, anchor, fails, {"certified": _strings(certificate.ideal)},
                    {"exponents": [e_tor, e_ext], "source": certificate.source})


@_guarded("sing_equality", "Sing R = V(T_n(X, Y)) = V(E^n(X, Y))")
def check_sing_equality(X: Family, Y: Family, n: int, certified: CertifiedIdeal | None = None,
                        window: int | None = None) -> CheckResult:
    """Singular locus against family ideals, and exactly against a certified ideal.

    A finite family only bounds the category ideal from above, so Sing R lies in
    V(family ideal) only if the family witnesses every singular prime.  With a
    certified ideal the verdict rests on Sing R = V(certified) and on the
    certified ideal lying inside both family ideals; the family containment is
    then reported as a detail.  Without one, a family that misses a singular
    prime gives a hypothesis violation rather than a failure.
    """
    name, anchor = "sing_equality", "Sing R = V(T_n(X, Y)) = V(E^n(X, Y))"
    ring = X.ring
    sing = singular_locus(ring)
    T = family_ideal("tor", n, X, Y, window).ideal
    E = family_ideal("ext", n, X, Y, window).ideal
    ideals = {"singular": _strings(sing), "family_tor": _strings(T), "family_ext": _strings(E)}
    witnessed = T.radical_le(sing) and E.radical_le(sing)
    details = {"family_witnesses_sing": witnessed}
    if certified is None:
        if not witnessed:
            return CheckResult(name, anchor, "hypothesis-violation",
                               {"reason": "family does not witness every singular prime"}, ideals, details)
        return CheckResult(name, anchor, "pass", None, ideals, details)
    C = certified.ideal
    ideals["certified"] = _strings(C)
    details["source"] = certified.source
    fails = []
    if not radical_equal(sing, C):
        fails.append({"reason": "singular locus differs from V(certified)", "certified": _strings(C)})
    for lab, J in (("family_tor", T), ("family_ext", E)):
        if not C <= J:
            fails.append({"reason": f"certified ideal not contained in {lab}"})
    return _verdict(name, anchor, fails, ideals, details)


@_guarded("tor_ext_probe", "T_0(CM_0) = E^0(CM_0) on a finite family")
def probe_tor_ext_equality(family: Family, window: int | None = None) -> CheckResult:
    """Compare the family Tor and Ext ideals of a family of MCM modules free on the punctured spectrum.

    Passing means radical equality.  An exact mismatch on a family closed under
    syzygies and transposes is only flagged as a lead: finite families bound the
    true ideals from above and cannot refute anything.
    """
    name, anchor = "tor_ext_probe", "T_0(CM_0) = E^0(CM_0) on a finite family"
    family.require_cm(0)
    T = family_ideal("tor", 0, family, family, window).ideal
    E = family_ideal("ext", 0, family, family, window).ideal
    exact = T == E
    rad = radical_equal(T, E)
    closed = {"closed:syz", "closed:tr"} <= family.flags
    details = {"exact": exact, "radical": rad, "lead": bool(closed and not exact)}
    ideals = {"family_tor": _strings(T), "family_ext": _strings(E)}
    if not rad:
        return CheckResult(name, anchor, "fail", {"family": family.name, "reason": "radicals differ"}, ideals,
                           details)
    return CheckResult(name, anchor, "pass", None, ideals, details)


@_guarded("dimension_bounds", "dim Sing R <= dim V(T_n(CM_t))")
def check_dimension_bounds(family: Family, t: int, n: int, window: int | None = None) -> CheckResult:
    """dim Sing R against the dimensions of the family ideals' zero sets."""
    name, anchor = "dimension_bounds", "dim Sing R <= dim V(T_n(CM_t))"
    ring = family.ring
    if not 0 <= t <= ring.d:
        raise HypothesisViolation(f"t = {t} outside 0..{ring.d}", {"t": t})
    family.require_cm(t)
    sing = singular_locus(ring)
    T = family_ideal("tor", n, family, family, window).ideal
    E = family_ideal("ext", n, family, family, window).ideal
    ds, dt, de = sing.dim(), T.dim(), E.dim()
    ideals = {"singular": _strings(sing), "family_tor": _strings(T), "family_ext": _strings(E)}
    details = {"dim_sing": ds, "dim_tor": dt, "dim_ext": de}
    if ds > dt:
        return CheckResult(name, anchor, "hypothesis-violation",
                           {"reason": "family does not witness the singular locus", "dim_sing": ds, "dim_tor": dt},
                           ideals, details)
    return CheckResult(name, anchor, "pass", None, ideals, details)


@_guarded("annihilator", "ann of Tor_i / Ext^i for a fixed pair")
def check_annihilator(kind: str, M: FPModule, N: FPModule, indices: Iterable[int], expect: Ideal,
                      copies_of: FPModule | None = None, D: int = 8) -> CheckResult:
    """ann Tor_i(M, N) (or Ext) equals ``expect``; optionally the Hilbert function
    equals that of copies of a module twisted to the minimal generator degrees."""
    name, anchor = "annihilator", "ann of Tor_i / Ext^i for a fixed pair"
    fails = []
    ideals = {"expected": _strings(expect)}
    for i in indices:
        T = tor(M, N, i) if kind == "tor" else ext(M, N, i)
        J = T.annihilator()
        ideals[f"ann_{kind}_{i}"] = _strings(J)
        pair = [_label(M, "M"), _label(N, "N")]
        if J != expect:
            fails.append({"pair": pair, "index": i, "kind": kind, "ann": _strings(J)})
        if copies_of is not None and not twisted_sum_matches(T, copies_of, D):
            fails.append({"pair": pair, "index": i, "kind": kind, "reason": "Hilbert function differs"})
    return _verdict(name, anchor, fails, ideals)


def twisted_sum_matches(T: FPModule, B: FPModule, D: int = 8) -> bool:
    """Hilbert function of T equals sum_k H_B(delta - g_k) over T's minimal generator degrees g_k,
    where B is generated in degree 0; compared on D+1 degrees."""
    if T.is_zero():
        return B.is_zero()
    degs = sorted(T.minimalize().degrees)
    lo = degs[0]
    hb = B.hilbert(-max(degs) + lo, lo + D)
    base = -max(degs) + lo
    want = [sum(hb[delta - g - base] if delta - g >= base else 0 for g in degs)
            for delta in range(lo, lo + D + 1)]
    return T.hilbert(lo, lo + D) == want


@_guarded("family_ideal", "family Tor / Ext ideal")
def check_family_ideal(kind: str, n: int, X: Family, Y: Family, expect: Ideal | None = None,
                       radical_of: CertifiedIdeal | None = None, window: int | None = None) -> CheckResult:
    """Family ideal equals ``expect``; certified generators lie in its radical."""
    name, anchor = "family_ideal", "family Tor / Ext ideal"
    rep = family_ideal(kind, n, X, Y, window)
    J = rep.ideal
    ideals = {f"family_{kind}": _strings(J)}
    fails = []
    if expect is not None:
        ideals["expected"] = _strings(expect)
        if J != expect:
            fails.append({"families": [X.name, Y.name], "reason": "family ideal differs from expected"})
    if radical_of is not None:
        for g in radical_of.ideal.gens:
            if not J.radical_contains(g):
                fails.append({"element": str(g), "reason": "certified generator not in the radical"})
    return _verdict(name, anchor, fails, ideals, {"window": rep.window, "pairs": len(rep.provenance)})


@_guarded("radical_equal", "sqrt T_n = sqrt E^n")
def check_radical_equal(X: Family, Y: Family, n: int, window: int | None = None) -> CheckResult:
    name, anchor = "radical_equal", "sqrt T_n = sqrt E^n"
    T = family_ideal("tor", n, X, Y, window).ideal
    E = family_ideal("ext", n, X, Y, window).ideal
    ideals = {"family_tor": _strings(T), "family_ext": _strings(E)}
    if not radical_equal(T, E):
        return CheckResult(name, anchor, "fail", {"families": [X.name, Y.name], "reason": "radicals differ"}, ideals)
    return CheckResult(name, anchor, "pass", None, ideals, {"exact": T == E})


@_guarded("collapse", "T_n(X, Y) = E^n(X, Y) exactly")
def check_collapse(X: Family, Y: Family, n: int, window: int | None = None) -> CheckResult:
    name, anchor = "collapse", "T_n(X, Y) = E^n(X, Y) exactly"
    T = family_ideal("tor", n, X, Y, window).ideal
    E = family_ideal("ext", n, X, Y, window).ideal
    ideals = {"family_tor": _strings(T), "family_ext": _strings(E)}
    if T != E:
        return CheckResult(name, anchor, "fail", {"families": [X.name, Y.name], "index": n + 1,
                                                  "reason": "family ideals differ"}, ideals)
    return CheckResult(name, anchor, "pass", None, ideals)

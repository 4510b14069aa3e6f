"""Abstract pointed-category contract, strictness classification and audits.

A :class:`CategoryInstance` packages a pointed category with computable
kernels and cokernels, mediating-map solvers, and (for the finite
instances) exhaustive enumerators.  On top of that contract this module
implements the generic machinery: classification of strict
monomorphisms/epimorphisms from kernel-cokernel comparisons, validation
of short exact sequences, lifting-property checks, and exhaustive audits
of the proto-exact, totality and obscure axioms with replayable failure
witnesses.
"""

from __future__ import annotations

import random
from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from typing import Any, Callable, Iterable, Optional

from .errors import BudgetExceeded, NotComposable, SolverUnavailable

Obj = Any
Mor = Any


@dataclass(frozen=True)
class Strictness:
    strict_mono: bool
    strict_epi: bool

    @property
    def label(self) -> str:
        if self.strict_mono and self.strict_epi:
            return "both"
        if self.strict_mono:
            return "strict_mono"
        if self.strict_epi:
            return "strict_epi"
        return "neither"


class CategoryInstance(ABC):
    """Pointed category with computable kernels, cokernels and solvers.

    Morphism equality is value equality; objects are compared by identity
    of presentation.  Implementations must be immutable and safe for
    concurrent read-only use.
    """

    name: str = "category"

    @abstractmethod
    def zero_object(self) -> Obj: ...

    @abstractmethod
    def identity(self, X: Obj) -> Mor: ...

    @abstractmethod
    def compose(self, g: Mor, f: Mor) -> Mor: ...

    @abstractmethod
    def dom(self, f: Mor) -> Obj: ...

    @abstractmethod
    def cod(self, f: Mor) -> Obj: ...

    @abstractmethod
    def zero_morphism(self, X: Obj, Y: Obj) -> Mor: ...

    @abstractmethod
    def kernel(self, f: Mor) -> tuple[Obj, Mor]: ...

    @abstractmethod
    def cokernel(self, f: Mor) -> tuple[Obj, Mor]: ...

    @abstractmethod
    def factor_through_kernel(self, k_incl: Mor, f: Mor) -> Optional[Mor]:
        """v with k_incl o v = f, or None if no such morphism exists."""

    @abstractmethod
    def factor_through_cokernel(self, q_proj: Mor, f: Mor) -> Optional[Mor]:
        """u with u o q_proj = f, or None if no such morphism exists."""

    @abstractmethod
    def is_iso(self, f: Mor) -> bool: ...

    def mor_equal(self, f: Mor, g: Mor) -> bool:
        return f == g

    def is_zero_morphism(self, f: Mor) -> bool:
        return self.mor_equal(f, self.zero_morphism(self.dom(f), self.cod(f)))

    # enumeration; only the finite instances provide these
    @property
    def enumerable(self) -> bool:
        return False

    def objects(self) -> list[Obj]:
        raise SolverUnavailable(f"{self.name} cannot enumerate objects")

    def morphisms(self, X: Obj, Y: Obj) -> tuple[Mor, ...]:
        raise SolverUnavailable(f"{self.name} cannot enumerate morphisms")

    # squares; results expose .mediate(leg1, leg2)
    def pullback(self, f: Mor, g: Mor):
        raise SolverUnavailable(f"{self.name} does not construct pullbacks")

    def pushout(self, i: Mor, g: Mor):
        raise SolverUnavailable(f"{self.name} does not construct pushouts")

    def solve_lift(self, g: Mor, u: Mor, f: Mor, v: Mor) -> tuple[bool, Optional[Mor]]:
        """Instance shortcut for lifting problems: (decided, lift-or-None)."""
        return False, None

    def solve_rlp(self, f: Mor, g: Mor) -> tuple[bool, bool]:
        """Instance shortcut deciding RLP of f against g for all squares at once."""
        return False, False

    def strictness(self, f: Mor) -> Strictness:
        """Instance classification; the default derives it from (co)kernels."""
        return classify_strictness(self, f)

    def describe_object(self, X: Obj) -> Any:
        return repr(X)

    def describe_morphism(self, f: Mor) -> Any:
        return repr(f)


# ---------------------------------------------------------------------------
# Generic classification and sequence validation
# ---------------------------------------------------------------------------


def classify_strictness(C: CategoryInstance, f: Mor) -> Strictness:
    """Strictness from kernel-cokernel comparison maps.

    f is a strict epi iff the induced map Coker(Ker(f) -> X) -> Y is an
    isomorphism, and dually for strict monos.
    """
    _, k = C.kernel(f)
    _, q = C.cokernel(k)
    u = C.factor_through_cokernel(q, f)
    strict_epi = u is not None and C.is_iso(u)

    _, c = C.cokernel(f)
    _, k2 = C.kernel(c)
    v = C.factor_through_kernel(k2, f)
    strict_mono = v is not None and C.is_iso(v)
    return Strictness(strict_mono, strict_epi)


@dataclass(frozen=True)
class ShortExactSequence:
    f: Mor
    g: Mor


@dataclass(frozen=True)
class SesVerdict:
    ok: bool
    failing_clause: Optional[str] = None


def validate_ses(C: CategoryInstance, ses: ShortExactSequence) -> SesVerdict:
    """Checks g o f = 0, f = Ker(g) and g = Coker(f) up to isomorphism."""
    f, g = ses.f, ses.g
    if C.cod(f) != C.dom(g):
        raise NotComposable("the two maps of the sequence do not compose")
    gf = C.compose(g, f)
    if not C.is_zero_morphism(gf):
        return SesVerdict(False, "compose_nonzero")
    _, k = C.kernel(g)
    v = C.factor_through_kernel(k, f)
    if v is None or not C.is_iso(v):
        return SesVerdict(False, "first_map_not_kernel")
    _, q = C.cokernel(f)
    u = C.factor_through_cokernel(q, g)
    if u is None or not C.is_iso(u):
        return SesVerdict(False, "second_map_not_cokernel")
    return SesVerdict(True)


# ---------------------------------------------------------------------------
# Lifting properties
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class RlpResult:
    ok: bool
    witness: Optional[dict]
    squares_checked: int


def has_rlp(
    C: CategoryInstance,
    f: Mor,
    against: Iterable[Mor],
    budget: Optional[int] = None,
) -> RlpResult:
    """True iff every commutative square from `against` to f has a diagonal filler.

    Squares are enumerated exhaustively (the instance must be enumerable
    unless its lift solver decides every problem); on failure the first
    unfillable square is returned as a witness.
    """
    checked = 0
    X, Y = C.dom(f), C.cod(f)
    for g in against:
        decided, ok = C.solve_rlp(f, g)
        if decided:
            checked += 1
            if not ok:
                return RlpResult(False, {"generator": C.describe_morphism(g)}, checked)
            continue
        A, B = C.dom(g), C.cod(g)
        for u in C.morphisms(A, X):
            ru = C.compose(f, u)
            for v in C.morphisms(B, Y):
                if not C.mor_equal(ru, C.compose(v, g)):
                    continue
                checked += 1
                if budget is not None and checked > budget:
                    raise BudgetExceeded(f"lifting budget {budget} exceeded")
                if _find_lift(C, g, u, f, v) is None:
                    witness = {
                        "generator": C.describe_morphism(g),
                        "top": C.describe_morphism(u),
                        "bottom": C.describe_morphism(v),
                    }
                    return RlpResult(False, witness, checked)
    return RlpResult(True, None, checked)


def _find_lift(C: CategoryInstance, g: Mor, u: Mor, f: Mor, v: Mor) -> Optional[Mor]:
    decided, d = C.solve_lift(g, u, f, v)
    if decided:
        return d
    for d in C.morphisms(C.cod(g), C.dom(f)):
        if C.mor_equal(C.compose(d, g), u) and C.mor_equal(C.compose(f, d), v):
            return d
    return None


def admissible_monos(C: CategoryInstance) -> list[Mor]:
    """All strict monomorphisms between enumerated objects."""
    out = []
    for A in C.objects():
        for B in C.objects():
            for g in C.morphisms(A, B):
                if C.strictness(g).strict_mono:
                    out.append(g)
    return out


def is_injective_object(C: CategoryInstance, I: Obj, budget: Optional[int] = None) -> RlpResult:
    """Right lifting property of I -> 0 against every admissible mono in bounds."""
    f = C.zero_morphism(I, C.zero_object())
    return has_rlp(C, f, admissible_monos(C), budget)


# ---------------------------------------------------------------------------
# Audits
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class AuditEntry:
    axiom: str
    verdict: str  # "pass" | "pass (sampled)" | "fail" | "skipped"
    witness: Optional[dict] = None

    def as_dict(self) -> dict:
        return {"axiom": self.axiom, "verdict": self.verdict, "witness": self.witness}


@dataclass(frozen=True)
class AuditReport:
    instance: str
    bounds: dict
    entries: tuple[AuditEntry, ...]

    @property
    def passed(self) -> bool:
        return all(e.verdict.startswith("pass") for e in self.entries)

    def entry(self, axiom: str) -> AuditEntry:
        for e in self.entries:
            if e.axiom == axiom:
                return e
        raise KeyError(axiom)

    def as_dict(self) -> dict:
        return {
            "instance": self.instance,
            "bounds": self.bounds,
            "passed": self.passed,
            "entries": [e.as_dict() for e in self.entries],
        }


class _Classified:
    """Morphism tables of an enumerable instance with memoized strictness."""

    def __init__(self, C: CategoryInstance):
        self.C = C
        self.objects = list(C.objects())
        self._strict: dict = {}
        self._homs: dict = {}

    def homs(self, X, Y):
        key = (X, Y)
        if key not in self._homs:
            self._homs[key] = tuple(self.C.morphisms(X, Y))
        return self._homs[key]

    def strictness(self, f) -> Strictness:
        if f not in self._strict:
            self._strict[f] = self.C.strictness(f)
        return self._strict[f]

    def monos_into(self, Z):
        return [
            f for X in self.objects for f in self.homs(X, Z) if self.strictness(f).strict_mono
        ]

    def epis_into(self, Z):
        return [
            f for X in self.objects for f in self.homs(X, Z) if self.strictness(f).strict_epi
        ]

    def monos_from(self, X):
        return [
            f for Z in self.objects for f in self.homs(X, Z) if self.strictness(f).strict_mono
        ]

    def epis_from(self, X):
        return [
            f for Z in self.objects for f in self.homs(X, Z) if self.strictness(f).strict_epi
        ]


def _witness(C, **mors) -> dict:
    return {k: C.describe_morphism(m) for k, m in mors.items()}


def audit_axioms(
    C: CategoryInstance,
    total: bool = True,
    budget: Optional[int] = None,
    jobs: int = 1,
    sampler=None,
    samples: int = 1000,
    seed: int = 0,
) -> AuditReport:
    """Audit of the proto-exact axioms for the canonical strict class.

    Checks identity admissibility, closure of the admissible classes under
    composition, stability of admissible epis under pullback along
    admissible monos (along all morphisms when ``total``), and dually for
    pushouts.  Enumerable instances are audited exhaustively; otherwise a
    diagram sampler must be supplied and verdicts read "pass (sampled)".
    Every failure carries a replayable witness.
    """
    if not C.enumerable:
        if sampler is None:
            raise SolverUnavailable(
                f"{C.name} is not enumerable; supply a diagram sampler"
            )
        return _audit_axioms_sampled(C, total, sampler, samples, seed)
    t = _Classified(C)
    counter = _Budget(budget)
    entries = [
        _audit_identities(C, t, counter),
        _audit_mono_composition(C, t, counter),
        _audit_epi_composition(C, t, counter),
        _audit_pullback_stability(C, t, counter, total=False, jobs=jobs),
        _audit_pushout_stability(C, t, counter, total=False, jobs=jobs),
    ]
    if total:
        entries.append(_audit_pullback_stability(C, t, counter, total=True, jobs=jobs))
        entries.append(_audit_pushout_stability(C, t, counter, total=True, jobs=jobs))
    return AuditReport(C.name, _bounds_of(C, budget), tuple(entries))


def _audit_axioms_sampled(C, total, sampler, samples, seed) -> AuditReport:
    entries = []

    def sweep(name, draw, check):
        rng = random.Random(f"{seed}:{name}")
        for _ in range(samples):
            drawn = draw(rng)
            bad = check(drawn)
            if bad is not None:
                return AuditEntry(name, "fail", bad)
        return AuditEntry(name, "pass (sampled)")

    entries.append(
        sweep(
            "identity_admissible",
            sampler.object,
            lambda X: None
            if (lambda s: s.strict_mono and s.strict_epi)(C.strictness(C.identity(X)))
            else {"object": C.describe_object(X)},
        )
    )
    entries.append(
        sweep(
            "mono_composition",
            sampler.mono_pair,
            lambda pair: None
            if C.strictness(C.compose(pair[1], pair[0])).strict_mono
            else _witness(C, first=pair[0], second=pair[1]),
        )
    )
    entries.append(
        sweep(
            "epi_composition",
            sampler.epi_pair,
            lambda pair: None
            if C.strictness(C.compose(pair[1], pair[0])).strict_epi
            else _witness(C, first=pair[0], second=pair[1]),
        )
    )

    def pullback_check(case):
        return None if _pullback_case(C, case) is None else _witness(
            C, epi=case[0], along=case[1]
        )

    def pushout_check(case):
        return None if _pushout_case(C, case) is None else _witness(
            C, mono=case[0], along=case[1]
        )

    entries.append(
        sweep(
            "epi_pullback_along_mono",
            lambda rng: sampler.pullback_case(rng, total=False),
            pullback_check,
        )
    )
    entries.append(
        sweep(
            "mono_pushout_along_epi",
            lambda rng: sampler.pushout_case(rng, total=False),
            pushout_check,
        )
    )
    if total:
        entries.append(
            sweep(
                "epi_pullback_total",
                lambda rng: sampler.pullback_case(rng, total=True),
                pullback_check,
            )
        )
        entries.append(
            sweep(
                "mono_pushout_total",
                lambda rng: sampler.pushout_case(rng, total=True),
                pushout_check,
            )
        )
    bounds = _bounds_of(C, None)
    bounds.update({"samples": samples, "seed": seed})
    return AuditReport(C.name, bounds, tuple(entries))


def audit_obscure(
    C: CategoryInstance,
    budget: Optional[int] = None,
    jobs: int = 1,
    sampler=None,
    samples: int = 1000,
    seed: int = 0,
) -> AuditReport:
    """Audit of the left/right obscure axioms and their strong variants.

    The instances shipped here are finitely complete and cocomplete, so
    the plain and strong variants coincide; the scan is shared and the
    verdicts are reported under both names.  Non-enumerable instances are
    sampled through the supplied diagram sampler.
    """
    if not C.enumerable:
        if sampler is None:
            raise SolverUnavailable(
                f"{C.name} is not enumerable; supply a diagram sampler"
            )
        return _audit_obscure_sampled(C, sampler, samples, seed)
    t = _Classified(C)
    counter = _Budget(budget)
    left = _audit_obscure_left(C, t, counter)
    right = _audit_obscure_right(C, t, counter)
    entries = (
        left,
        right,
        AuditEntry("strong_left_obscure", left.verdict, left.witness),
        AuditEntry("strong_right_obscure", right.verdict, right.witness),
    )
    return AuditReport(C.name, _bounds_of(C, budget), entries)


def _audit_obscure_sampled(C, sampler, samples, seed) -> AuditReport:
    rng = random.Random(f"{seed}:obscure")
    left_witness = None
    right_witness = None
    for _ in range(samples):
        i, j = sampler.composable_pair(rng)
        s_ji = C.strictness(C.compose(j, i))
        if left_witness is None and s_ji.strict_mono and not C.strictness(i).strict_mono:
            left_witness = _witness(C, first=i, second=j)
        if right_witness is None and s_ji.strict_epi and not C.strictness(j).strict_epi:
            right_witness = _witness(C, first=i, second=j)
    left = AuditEntry(
        "left_obscure", "fail" if left_witness else "pass (sampled)", left_witness
    )
    right = AuditEntry(
        "right_obscure", "fail" if right_witness else "pass (sampled)", right_witness
    )
    entries = (
        left,
        right,
        AuditEntry("strong_left_obscure", left.verdict, left.witness),
        AuditEntry("strong_right_obscure", right.verdict, right.witness),
    )
    bounds = _bounds_of(C, None)
    bounds.update({"samples": samples, "seed": seed})
    return AuditReport(C.name, bounds, entries)


class _Budget:
    def __init__(self, limit: Optional[int]):
        self.limit = limit
        self.used = 0

    def tick(self, n: int = 1):
        self.used += n
        if self.limit is not None and self.used > self.limit:
            raise BudgetExceeded(f"audit budget {self.limit} exceeded")


def _bounds_of(C, budget) -> dict:
    bounds = {"budget": budget}
    describe = getattr(C, "bounds_descriptor", None)
    if describe is not None:
        bounds.update(describe())
    return bounds


def _audit_identities(C, t: _Classified, counter) -> AuditEntry:
    for X in t.objects:
        counter.tick()
        s = t.strictness(C.identity(X))
        if not (s.strict_mono and s.strict_epi):
            return AuditEntry(
                "identity_admissible", "fail", {"object": C.describe_object(X)}
            )
    return AuditEntry("identity_admissible", "pass")


def _audit_mono_composition(C, t: _Classified, counter) -> AuditEntry:
    for Y in t.objects:
        incoming = [f for f in t.monos_into(Y)]
        outgoing = [g for g in t.monos_from(Y)]
        for f in incoming:
            for g in outgoing:
                counter.tick()
                if not t.strictness(C.compose(g, f)).strict_mono:
                    return AuditEntry(
                        "mono_composition", "fail", _witness(C, first=f, second=g)
                    )
    return AuditEntry("mono_composition", "pass")


def _audit_epi_composition(C, t: _Classified, counter) -> AuditEntry:
    for Y in t.objects:
        incoming = [f for f in t.epis_into(Y)]
        outgoing = [g for g in t.epis_from(Y)]
        for f in incoming:
            for g in outgoing:
                counter.tick()
                if not t.strictness(C.compose(g, f)).strict_epi:
                    return AuditEntry(
                        "epi_composition", "fail", _witness(C, first=f, second=g)
                    )
    return AuditEntry("epi_composition", "pass")


def _audit_pullback_stability(C, t: _Classified, counter, total: bool, jobs: int) -> AuditEntry:
    name = "epi_pullback_total" if total else "epi_pullback_along_mono"
    cases = []
    for Z in t.objects:
        epis = t.epis_into(Z)
        others = (
            [g for X in t.objects for g in t.homs(X, Z)]
            if total
            else t.monos_into(Z)
        )
        for e in epis:
            for g in others:
                cases.append((e, g))
    counter.tick(len(cases))
    for bad in _map_cases(_pullback_case, C, cases, jobs):
        if bad is not None:
            return AuditEntry(name, "fail", _witness(C, epi=bad[0], along=bad[1]))
    return AuditEntry(name, "pass")


def _audit_pushout_stability(C, t: _Classified, counter, total: bool, jobs: int) -> AuditEntry:
    name = "mono_pushout_total" if total else "mono_pushout_along_epi"
    cases = []
    for K in t.objects:
        monos = [i for i in t.monos_from(K)]
        others = (
            [g for Y in t.objects for g in t.homs(K, Y)]
            if total
            else t.epis_from(K)
        )
        for i in monos:
            for g in others:
                cases.append((i, g))
    counter.tick(len(cases))
    for bad in _map_cases(_pushout_case, C, cases, jobs):
        if bad is not None:
            return AuditEntry(name, "fail", _witness(C, mono=bad[0], along=bad[1]))
    return AuditEntry(name, "pass")


def _audit_obscure_left(C, t: _Classified, counter) -> AuditEntry:
    for Y in t.objects:
        for X in t.objects:
            for i in t.homs(X, Y):
                i_strict = t.strictness(i).strict_mono
                if i_strict:
                    continue
                for Z in t.objects:
                    for j in t.homs(Y, Z):
                        counter.tick()
                        if t.strictness(C.compose(j, i)).strict_mono:
                            return AuditEntry(
                                "left_obscure", "fail", _witness(C, first=i, second=j)
                            )
    return AuditEntry("left_obscure", "pass")


def _audit_obscure_right(C, t: _Classified, counter) -> AuditEntry:
    for Y in t.objects:
        for Z in t.objects:
            for e in t.homs(Y, Z):
                if t.strictness(e).strict_epi:
                    continue
                for X in t.objects:
                    for j in t.homs(X, Y):
                        counter.tick()
                        if t.strictness(C.compose(e, j)).strict_epi:
                            return AuditEntry(
                                "right_obscure", "fail", _witness(C, second=e, first=j)
                            )
    return AuditEntry("right_obscure", "pass")


def _pullback_case(C, case):
    e, g = case
    square = C.pullback(e, g)
    if C.strictness(square.p2).strict_epi:
        return None
    return case


def _pushout_case(C, case):
    i, g = case
    square = C.pushout(i, g)
    if C.strictness(square.j2).strict_mono:
        return None
    return case


def _map_cases(fn: Callable, C, cases: list, jobs: int):
    """Run fn(C, case) over cases, optionally in a process pool; order preserved."""
    if jobs <= 1 or len(cases) < 64:
        return (fn(C, case) for case in cases)
    from concurrent.futures import ProcessPoolExecutor
    from functools import partial

    chunk = max(8, len(cases) // (jobs * 8))
    with ProcessPoolExecutor(max_workers=jobs) as ex:
        results = list(ex.map(partial(fn, C), cases, chunksize=chunk))
    return iter(results)

"""Verification suites behind ``paritypoly verify``.

Each suite replays one family of structural checks (move invariance, the
symmetry identities, skein identities, odd-switch stability, the Fox
identity, the minor-gcd proposition) over fixture diagrams and seeded
random input, and reports per-check pass/fail lines.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

from . import foxcalc as fx
from .alexander import (
    build_full_matrix_M, build_matrix_A, check_even_skein, check_symmetries,
    determinant, gcd_of_minors, parity_alexander, switch_crossing,
)
from .diagram import (
    EVEN, ODD, VIRTUAL, DiagramCode, MoveError, Pass, apply_move, parity,
    random_code, relabel, removal_sites, semi_arcs, shift_basepoint,
)
Check = Tuple[str, bool, str]  # label, passed, detail


@dataclass
class VerifyReport:
    suite: str
    checks: List[Check] = field(default_factory=list)

    def add(self, label: str, ok: bool, detail: str = "") -> None:
        self.checks.append((label, ok, detail))

    @property
    def passed(self) -> bool:
        return all(ok for _label, ok, _d in self.checks)

    def summary(self) -> str:
        good = sum(1 for _l, ok, _d in self.checks if ok)
        return f"suite {self.suite}: {good}/{len(self.checks)} checks passed"


_R2_VARIANTS = [p + o + s for p in "pa" for o in "ou" for s in "+-"]


def _random_insert(rng: random.Random, code: DiagramCode) -> Tuple:
    arcs = semi_arcs(code).count
    kind = rng.choice(["r1", "v1", "r2", "v2"])
    a1 = rng.randint(1, arcs)
    a2 = rng.randint(1, arcs)
    if kind == "r1":
        return ("r1_insert", a1, rng.choice("ou"), rng.choice([1, -1]))
    if kind == "v1":
        return ("v1_insert", a1) if rng.random() < 0.5 else ("v1_insert", a1, "y")
    if kind == "r2":
        return ("r2_insert", a1, a2, rng.choice(_R2_VARIANTS))
    return ("v2_insert", a1, a2, rng.choice(["par", "anti"]))


def random_move(rng: random.Random, code: DiagramCode) -> Tuple[str, DiagramCode]:
    """One random applicable move, basepoint shift or relabeling.

    Removals that would empty the code are skipped: the 0-crossing code is a
    documented convention corner (its 0x0 matrix has determinant 1).
    """
    n = len(code.crossing_ids())
    options = ["insert", "shift", "relabel"]
    removals = [mv for mv in removal_sites(code)
                if n > (2 if mv[0] in ("r2_remove", "v2_remove") else 1)]
    if removals:
        options += ["remove"] * (3 if n >= 7 else 1)
    if n >= 9:
        options = [o for o in options if o != "insert"] or ["shift"]
    choice = rng.choice(options)
    if choice == "shift":
        k = rng.randrange(0, max(len(code.passes), 1))
        return f"shift_basepoint({k})", shift_basepoint(code, k)
    if choice == "relabel":
        ids = code.crossing_ids()
        new = rng.sample(range(1, 3 * len(ids) + 2), len(ids))
        return "relabel", relabel(code, dict(zip(ids, new)))
    if choice == "remove":
        mv = rng.choice(removals)
        return repr(mv), apply_move(code, mv)
    mv = _random_insert(rng, code)
    return repr(mv), apply_move(code, mv)


def suite_moves(diagrams: Sequence[Tuple[str, DiagramCode]], trials: int = 1000,
                seed: int = 0, max_moves: int = 6) -> VerifyReport:
    """Randomized move sequences must never change the canonical invariant."""
    rng = random.Random(seed)
    report = VerifyReport("moves")
    bases = [(name, code) for name, code in diagrams if code.passes]
    for t in range(trials):
        if bases and t % 3 == 0:
            name, code = bases[t // 3 % len(bases)]
        else:
            name, code = f"random[{t}]", random_code(rng, max_crossings=6)
        expected = parity_alexander(code).canonical
        ok = True
        for _step in range(rng.randint(1, max_moves)):
            label, moved = random_move(rng, code)
            got = parity_alexander(moved).canonical
            if got != expected:
                report.add(
                    f"trial {t} ({name})", False,
                    f"move {label} changed the invariant:\n"
                    f"  before: {code.to_text()}\n  after:  {moved.to_text()}\n"
                    f"  phi(before) = {expected.to_text()}\n  phi(after)  = {got.to_text()}")
                ok = False
                break
            code = moved
        if ok:
            report.add(f"trial {t} ({name})", True)
    return report


def suite_symmetry(diagrams: Sequence[Tuple[str, DiagramCode]]) -> VerifyReport:
    report = VerifyReport("symmetry")
    for name, code in diagrams:
        res = check_symmetries(code)
        for op, ok in res.outcomes.items():
            report.add(f"{name}: {op}", ok,
                       "" if ok else f"base invariant {res.base.to_text()}")
    return report


def suite_skein(diagrams: Sequence[Tuple[str, DiagramCode]]) -> VerifyReport:
    """At least one candidate identity must hold at every even crossing, and
    the same identity must hold across the whole corpus."""
    report = VerifyReport("skein")
    theorem_all, proof_all = True, True
    n_sites = 0
    for name, code in diagrams:
        par = parity(code)
        for cid in sorted(code.signs):
            if par[cid] != EVEN:
                continue
            n_sites += 1
            rep = check_even_skein(code, cid)
            theorem_all &= rep.theorem_form_holds
            proof_all &= rep.proof_form_holds
            report.add(
                f"{name}: crossing {cid}",
                rep.theorem_form_holds or rep.proof_form_holds,
                f"theorem-form={'holds' if rep.theorem_form_holds else 'fails'}, "
                f"proof-form={'holds' if rep.proof_form_holds else 'fails'}")
    if n_sites:
        which = ([] if not theorem_all else ["D+ - D- = (1-st)Dv"]) + \
                ([] if not proof_all else ["D+ - st D- = (1-st)Dv"])
        report.add("uniform identity across corpus", bool(which),
                   "holding uniformly: " + (", ".join(which) if which else "none"))
    return report


def suite_oddswitch(diagrams: Sequence[Tuple[str, DiagramCode]]) -> VerifyReport:
    """Switching odd crossings must leave the invariant exactly unchanged."""
    report = VerifyReport("oddswitch")
    for name, code in diagrams:
        par = parity(code)
        base = parity_alexander(code).canonical
        odd_ids = [cid for cid in sorted(code.signs) if par[cid] == ODD]
        for cid in odd_ids:
            got = parity_alexander(switch_crossing(code, cid)).canonical
            report.add(f"{name}: switch odd crossing {cid}", got == base,
                       "" if got == base else f"{base.to_text()} -> {got.to_text()}")
        if odd_ids:
            switched = code
            for cid in odd_ids:
                switched = switch_crossing(switched, cid)
            got = parity_alexander(switched).canonical
            report.add(f"{name}: switch all {len(odd_ids)} odd crossings",
                       got == base,
                       "" if got == base else f"{base.to_text()} -> {got.to_text()}")
    return report


def random_word(rng: random.Random, max_len: int = 20, n_arcs: int = 4) -> fx.Word:
    gens = [fx.arc(i) for i in range(1, n_arcs + 1)] + [fx.S_GEN, fx.Q_GEN, fx.H_GEN]
    letters = [(rng.choice(gens), rng.choice([1, -1]))
               for _ in range(rng.randint(0, max_len))]
    return fx.reduce_word(letters)


def suite_foxid(diagrams: Sequence[Tuple[str, DiagramCode]] = (),
                trials: int = 1000, seed: int = 0) -> VerifyReport:
    """Fox's fundamental identity on random words; det(M) = 0 per diagram."""
    rng = random.Random(seed)
    report = VerifyReport("foxid")
    bad = 0
    for t in range(trials):
        w = random_word(rng)
        if not fx.fundamental_identity_check(w):
            bad += 1
            report.add(f"word trial {t}", False, fx.word_to_string(w))
    report.add(f"fundamental identity on {trials} random words", bad == 0,
               f"{bad} failures")
    for name, code in diagrams:
        d = determinant(build_full_matrix_M(code))
        report.add(f"{name}: det(M) = 0", d.is_zero(),
                   "" if d.is_zero() else d.to_text())
    return report


def enumerate_small_codes(max_crossings: int = 2) -> List[DiagramCode]:
    """Every valid code with at most max_crossings crossings (any classes)."""
    def flavors(cid: int) -> List[Tuple[Pass, Pass, Optional[int]]]:
        out = []
        for over_first in (True, False):
            for sign in (1, -1):
                a = Pass(cid, "O" if over_first else "U")
                b = Pass(cid, "U" if over_first else "O")
                out.append((a, b, sign))
        out.append((Pass(cid, VIRTUAL, True), Pass(cid, VIRTUAL, False), None))
        out.append((Pass(cid, VIRTUAL, False), Pass(cid, VIRTUAL, True), None))
        return out

    codes: List[DiagramCode] = []
    for f1 in flavors(1):
        a, b, s1 = f1
        signs = {1: s1} if s1 else {}
        codes.append(DiagramCode((a, b), dict(signs)))
    if max_crossings >= 2:
        pairings = [((0, 1), (2, 3)), ((0, 2), (1, 3)), ((0, 3), (1, 2))]
        for (p1, p2) in pairings:
            for f1 in flavors(1):
                for f2 in flavors(2):
                    passes: List[Optional[Pass]] = [None] * 4
                    passes[p1[0]], passes[p1[1]] = f1[0], f1[1]
                    passes[p2[0]], passes[p2[1]] = f2[0], f2[1]
                    signs = {}
                    if f1[2]:
                        signs[1] = f1[2]
                    if f2[2]:
                        signs[2] = f2[2]
                    codes.append(DiagramCode(tuple(passes), signs))  # type: ignore[arg-type]
    return codes


def suite_prop1(diagrams: Sequence[Tuple[str, DiagramCode]] = ()) -> VerifyReport:
    """gcd of the corank-1 minors of M equals det(A) up to unit, checked by
    enumeration on every code with <= 2 crossings."""
    report = VerifyReport("prop1")
    cases = [(f"enum[{i}] {c.to_text()}", c)
             for i, c in enumerate(enumerate_small_codes())]
    cases += [(name, code) for name, code in diagrams
              if len(code.crossing_ids()) <= 2]
    for name, code in cases:
        det_a = determinant(build_matrix_A(code))
        g = gcd_of_minors(build_full_matrix_M(code), corank=1)
        ok = g.equal_up_to_unit(det_a)
        report.add(name, ok,
                   "" if ok else f"gcd={g.to_text()} det(A)={det_a.to_text()}")
    return report


SUITES = {
    "moves": suite_moves,
    "symmetry": suite_symmetry,
    "skein": suite_skein,
    "oddswitch": suite_oddswitch,
    "foxid": suite_foxid,
    "prop1": suite_prop1,
}


def run_suite(name: str, diagrams: Sequence[Tuple[str, DiagramCode]],
              trials: int = 1000, seed: int = 0) -> VerifyReport:
    if name == "moves":
        return suite_moves(diagrams, trials=trials, seed=seed)
    if name == "foxid":
        return suite_foxid(diagrams, trials=trials, seed=seed)
    if name in ("symmetry", "skein", "oddswitch"):
        return SUITES[name](diagrams)
    if name == "prop1":
        return suite_prop1(diagrams)
    raise ValueError(f"unknown suite {name!r}")

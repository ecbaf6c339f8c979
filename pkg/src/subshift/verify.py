"""Verification suites: bounded, seeded replays of the theorems.

Every suite returns a ``Report`` naming the bounds it used.  Reports hold
no timings or addresses, so a rerun with the same configuration prints
the same bytes.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .algebra import Element, FreeWord, p, s, s_star
from .errors import NotAField, SubshiftError
from .ideals import LinePath, ideal_normalize, is_line_path, minimality_witness, psi, psi_inverse, reduced_initial_pair
from .orbit import (
    FIELD_REQUIRED,
    decide_equiv,
    disambiguating_prefix,
    equivalent,
    inequivalence_witness,
    reach,
    transporter,
)
from .representation import Report, Vector, apply, apply_generator, faithfulness_probe, nonzero_witness, verify_relations
from .rings import INT, Ring
from .sampling import Sampler
from .sets import find_cycle_without_exit
from .shift import Point, Presentation, shift


class ConfigError(SubshiftError):
    """The suite cannot run under this configuration (exit code 2)."""


@dataclass
class RunConfig:
    pres: Presentation
    ring: Ring = INT
    bound: int = 6
    word_bound: Optional[int] = None
    ray_cap: int = 8
    trials: int = 100
    seed: int = 0
    line: Optional[Point] = None
    extra: dict = field(default_factory=dict)

    @property
    def words(self) -> int:
        return min(self.bound, 4) if self.word_bound is None else self.word_bound

    def sampler(self, salt: int = 0, **kw) -> Sampler:
        return Sampler(self.pres, self.ring, self.seed * 1000003 + salt, ray_cap=self.ray_cap, **kw)

    def bounds(self, **more) -> dict:
        out = {"presentation": self.pres.name or self.pres.kind, "ring": self.ring.name}
        out.update(more)
        return out


def _field(cfg: RunConfig):
    if not cfg.ring.is_field:
        raise NotAField(FIELD_REQUIRED)


def _letters(cfg: RunConfig) -> tuple:
    return cfg.pres.letters(index_bound=cfg.ray_cap) if cfg.pres.kind == "graph-ray" else cfg.pres.letters()


def _words(cfg: RunConfig, n: int) -> list:
    out = []
    for k in range(n + 1):
        if cfg.pres.kind == "graph-ray":
            out.extend(cfg.pres.enumerate_language(k, index_bound=cfg.ray_cap))
        else:
            out.extend(cfg.pres.enumerate_language(k))
    return out


def _fw(pres, w) -> str:
    return pres.format_word(w, "ω")


# -- relations --------------------------------------------------------------------


def suite_relations(cfg: RunConfig) -> Report:
    """Relations (i)-(iii) as operators, then as normal-form identities."""
    rep = verify_relations(cfg.pres, cfg.bound, word_bound=cfg.words, ray_cap=cfg.ray_cap, ring=cfg.ring)
    pres, ring = cfg.pres, cfg.ring
    words = _words(cfg, min(cfg.words, 3))
    sets = pres.sets
    for al in words:
        for be in words:
            lhs = s(be, pres, ring) * s_star(al, pres, ring) * s(al, pres, ring) * s_star(be, pres, ring)
            rep.check(
                lhs == p(sets.generator(al, be), ring),
                lambda: f"normal form of s_β s_α* s_α s_β* != p_C(α,β) for α={_fw(pres, al)}, β={_fw(pres, be)}",
            )
    for a in _letters(cfg):
        sa, sa_ = s((a,), pres, ring), s_star((a,), pres, ring)
        rep.check(sa * sa_ * sa == sa, lambda: f"s_a s_a* s_a != s_a in normal form for a={a}")
        rep.check(sa_ * sa * sa_ == sa_, lambda: f"s_a* s_a s_a* != s_a* in normal form for a={a}")
    rep.check(p(sets.whole(), ring) == Element.one(pres, ring), "p_X != 1")
    rep.check(p(sets.empty(), ring).is_zero(), "p_0 != 0")
    rep.bounds["normal_form_words"] = min(cfg.words, 3)
    return rep


# -- grading and algebra laws ---------------------------------------------------------


def suite_grading(cfg: RunConfig) -> Report:
    pres, ring = cfg.pres, cfg.ring
    rep = Report("grading", cfg.bounds(trials=cfg.trials, seed=cfg.seed))
    sm = cfg.sampler(1)
    rep.check(not Element.zero(pres, ring).terms, "zero element has terms")
    for t in range(cfg.trials):
        a, b, c = sm.element(), sm.element(), sm.element()
        ab = a * b
        rep.check((ab) * c == a * (b * c), lambda: f"trial {t}: associativity fails for {a} | {b} | {c}")
        rep.check(ab.adjoint() == b.adjoint() * a.adjoint(), lambda: f"trial {t}: (ab)* != b* a* for {a} | {b}")
        for e in (a, b, ab):
            for (cw, dw), _ in e.terms:
                rep.check(not (cw and dw and cw[-1] == dw[-1]), lambda: f"trial {t}: unreduced slot in {e}")
        m1, m2 = sm.monomial(), sm.monomial()
        prod = m1 * m2
        if m1 and m2 and prod:
            rep.check(
                prod.degrees() == [m1.degrees()[0] * m2.degrees()[0]],
                lambda: f"trial {t}: degree not multiplicative for {m1} * {m2}",
            )
        if m1:
            rep.check(
                m1.adjoint().degrees() == [FreeWord.inverse(m1.degrees()[0])],
                lambda: f"trial {t}: adjoint does not invert the degree of {m1}",
            )
    return rep


def suite_homomorphism(cfg: RunConfig) -> Report:
    """apply(a b, v) = apply(a, apply(b, v)) and linearity of apply."""
    pres, ring = cfg.pres, cfg.ring
    rep = Report("homomorphism", cfg.bounds(trials=cfg.trials, seed=cfg.seed, point_size=5, ray_cap=cfg.ray_cap))
    sm = cfg.sampler(2)
    nonzero = 0
    for t in range(cfg.trials):
        a, b, u, v = sm.element(), sm.element(), sm.vector(), sm.vector()
        # make b act nonzero on v where possible, so the check is not vacuous
        x = nonzero_witness(b, ()) if b else None
        if x is not None:
            v = v + Vector.delta(x, pres, ring).scale(sm.coeff())
        lhs = apply(a * b, v)
        nonzero += bool(lhs)
        rep.check(lhs == apply(a, apply(b, v)), lambda: f"trial {t}: apply(ab, v) != apply(a, apply(b, v)) for {a} | {b} | {v}")
        k = sm.coeff()
        rep.check(
            apply(a, u.scale(k) + v) == apply(a, u).scale(k) + apply(a, v),
            lambda: f"trial {t}: apply not linear for {a}",
        )
    rep.notes.append(f"  {nonzero}/{cfg.trials} products acted nonzero on their sample vector")
    return rep


# -- faithfulness ----------------------------------------------------------------------


def suite_faithful(cfg: RunConfig) -> Report:
    predicted = "NotFaithful" if find_cycle_without_exit(cfg.pres, cfg.bound) is not None else "NoCycleFound"
    trials = cfg.extra.get("faithful_trials", min(cfg.trials, 50))
    v = faithfulness_probe(cfg.pres, cfg.bound, trials=trials, seed=cfg.seed, ray_cap=cfg.ray_cap, ring=cfg.ring)
    rep = v.report
    rep.bounds = cfg.bounds(**rep.bounds)
    rep.check(v.verdict == predicted, f"verdict {v.verdict} disagrees with the prediction {predicted}")
    rep.notes.insert(0, f"  verdict {v.verdict}; predicted {predicted} (cycle-without-exit criterion)")
    return rep


# -- orbit -------------------------------------------------------------------------------


def suite_orbit(cfg: RunConfig) -> Report:
    pres, ring = cfg.pres, cfg.ring
    rep = Report("orbit", cfg.bounds(points=cfg.bound, ray_cap=cfg.ray_cap, trials=cfg.trials, seed=cfg.seed))
    pts = pres.points(cfg.bound, ray_cap=cfg.ray_cap)
    fmt = pres.format_point
    witnesses = {}
    for x in pts:
        for y in pts:
            w = decide_equiv(x, y)
            witnesses[x, y] = w
            rep.check((w is not None) == (x.tail_class == y.tail_class), lambda: f"decision disagrees with class key on {fmt(x)}, {fmt(y)}")
            if w is None:
                continue
            rep.check(
                shift(x, w.n) == shift(y, w.m) == w.xi
                and pres.prepend(w.c, w.xi) == x
                and pres.prepend(w.d, w.xi) == y,
                lambda: f"invalid witness for {fmt(x)} ~ {fmt(y)}",
            )
    for x in pts:
        rep.check(witnesses[x, x] is not None and (witnesses[x, x].n, witnesses[x, x].m) == (0, 0), lambda: f"not reflexive at {fmt(x)}")
    for (x, y), w in witnesses.items():
        v = witnesses[y, x]
        # ties make the least witness direction dependent; the swapped pair
        # must still be a witness of the same total length
        rep.check(
            (w is None) == (v is None)
            and (w is None or (w.n + w.m == v.n + v.m and shift(y, w.m) == shift(x, w.n))),
            lambda: f"not symmetric on {fmt(x)}, {fmt(y)}",
        )
    # transitivity: exhaustive over triples drawn from classes of at most 40 sampled points
    sm = cfg.sampler(3)
    sample = sm.rng.sample(pts, min(40, len(pts)))
    for x in sample:
        for y in sample:
            if witnesses[x, y] is None:
                continue
            for z in sample:
                if witnesses[y, z] is not None:
                    rep.check(witnesses[x, z] is not None, lambda: f"not transitive on {fmt(x)}, {fmt(y)}, {fmt(z)}")

    # transporter correctness
    big = [c for c in sm.classes if len(c) >= 2] or sm.classes
    for t in range(cfg.trials):
        cls = sm.rng.choice(big)
        y, z = sm.rng.choice(cls), sm.rng.choice(cls)
        a = transporter(y, z, pres, ring)
        rep.check(apply(a, Vector.delta(y, pres, ring)) == Vector.delta(z, pres, ring), lambda: f"trial {t}: transporter {fmt(y)} -> {fmt(z)} fails")

    # class invariance of every generator action
    gens = [("S", a) for a in _letters(cfg)] + [("S*", a) for a in _letters(cfg)]
    gens += [("P", pres.sets.cylinder(w)) for w in _words(cfg, 1)]
    for x in pts:
        d = Vector.delta(x, pres, ring)
        for kind, arg in gens:
            for y in apply_generator(kind, arg, d).support():
                rep.check(equivalent(x, y), lambda: f"{kind}({arg}) moves {fmt(x)} out of its class")
    return rep


def suite_irreducible(cfg: RunConfig) -> Report:
    _field(cfg)
    pres, ring = cfg.pres, cfg.ring
    rep = Report("irreducible", cfg.bounds(point_size=5, ray_cap=cfg.ray_cap, trials=cfg.trials, seed=cfg.seed))
    sm = cfg.sampler(4)
    for t in range(cfg.trials):
        cls = sm.rng.choice(sm.classes)
        v = sm.vector(pool=cls)
        z = sm.rng.choice(cls)
        a = reach(v, z)
        rep.check(apply(a, v) == Vector.delta(z, pres, ring), lambda: f"trial {t}: reach({v}, {pres.format_point(z)}) = {a} misses")
    return rep


def suite_schur(cfg: RunConfig) -> Report:
    _field(cfg)
    pres, ring = cfg.pres, cfg.ring
    rep = Report("schur", cfg.bounds(point_size=5, ray_cap=cfg.ray_cap, trials=cfg.trials, seed=cfg.seed))
    sm = cfg.sampler(5)
    letters = _letters(cfg)
    refuted = 0
    for t in range(cfg.trials):
        # scalar maps commute with the generators
        v, k = sm.vector(), sm.coeff()
        a = sm.rng.choice(letters)
        for kind, arg in (("S", a), ("S*", a), ("P", sm.set())):
            rep.check(
                apply_generator(kind, arg, v.scale(k)) == apply_generator(kind, arg, v).scale(k),
                lambda: f"trial {t}: scalar map does not commute with {kind}({arg})",
            )
        # a candidate image of δ_z that is not a multiple of δ_z is refuted by p_{Z_α}
        z = sm.point()
        cls = next(c for c in sm.classes if z in c)
        others = [x for x in cls if x != z]
        if not others:
            continue
        image = sm.vector(pool=others)
        if sm.rng.random() < 0.5:
            image = image + Vector.delta(z, pres, ring).scale(sm.coeff())
        rest = [x for x in image.support() if x != z]
        alpha = disambiguating_prefix(z, rest)
        proj = pres.sets.cylinder(alpha)
        keep = apply_generator("P", proj, Vector.delta(z, pres, ring)) == Vector.delta(z, pres, ring)
        kill = all(apply_generator("P", proj, Vector.delta(x, pres, ring)).is_zero() for x in rest)
        contradiction = apply_generator("P", proj, image) != image
        rep.check(keep and kill and contradiction, lambda: f"trial {t}: kill/keep pattern fails for image {image} of {pres.format_point(z)}")
        refuted += 1
    rep.notes.append(f"  {refuted} candidate non-scalar images refuted")
    return rep


def suite_inequiv(cfg: RunConfig) -> Report:
    pres, ring = cfg.pres, cfg.ring
    rep = Report("inequiv", cfg.bounds(point_size=5, ray_cap=cfg.ray_cap, trials=cfg.trials, seed=cfg.seed))
    sm = cfg.sampler(6)
    if len(sm.classes) < 2:
        rep.notes.append("  only one tail-equivalence class among the sampled points; nothing to separate")
        return rep
    for t in range(cfg.trials):
        cx, cy = sm.rng.sample(sm.classes, 2)
        x = sm.rng.choice(cx)
        images = sm.rng.sample(cy, sm.rng.randint(1, min(3, len(cy))))
        alpha = inequivalence_witness(x, images)
        proj = p(pres.sets.cylinder(alpha), ring)
        keep = apply(proj, Vector.delta(x, pres, ring)) == Vector.delta(x, pres, ring)
        kill = all(apply(proj, Vector.delta(y, pres, ring)).is_zero() for y in images)
        rep.check(keep and kill, lambda: f"trial {t}: witness {_fw(pres, alpha)} fails for {pres.format_point(x)}")
    return rep


# -- ideals ----------------------------------------------------------------------------------


def line_path(cfg: RunConfig) -> LinePath:
    pres = cfg.pres
    if cfg.line is not None:
        L = is_line_path(cfg.line, pres)
        if L is None:
            raise ConfigError(f"{pres.format_point(cfg.line)} is not a line path")
        return L
    for x in pres.points(cfg.bound, ray_cap=cfg.ray_cap):
        L = is_line_path(x, pres)
        if L is not None:
            return L
    raise ConfigError(f"no line path among the points of size <= {cfg.bound}")


def _class_points(cfg: RunConfig, L: LinePath, size: int = 6) -> list:
    return [x for x in cfg.pres.points(size, ray_cap=cfg.ray_cap) if equivalent(x, L.q)]


def suite_linepath(cfg: RunConfig) -> Report:
    pres = cfg.pres
    rep = Report("linepath", cfg.bounds(points=cfg.bound, ray_cap=cfg.ray_cap, factor_len=6, trials=cfg.trials, seed=cfg.seed))
    pts = pres.points(cfg.bound, ray_cap=cfg.ray_cap)
    found = [x for x in pts if is_line_path(x, pres) is not None]
    for x in found:
        rep.check(x.tail_class[0] == "ray", f"line path {pres.format_point(x)} has a periodic tail")
    rep.notes.append(f"  line paths among {len(pts)} points: {', '.join(pres.format_point(x) for x in found) or 'none'}")
    if not found:
        return rep
    L = line_path(cfg)
    pool = []
    for x in _class_points(cfg, L):
        rp = reduced_initial_pair(x, L)
        if max(len(rp.beta), len(rp.alpha)) <= 6:
            pool.append(x)
    sm = cfg.sampler(7)
    for t in range(cfg.trials):
        x = sm.rng.choice(pool)
        pairs = []
        for i in range(7):
            for j in range(7):
                if shift(x, i) == shift(L.q, j):
                    beta, alpha = x.initial(i), L.q.initial(j)
                    if not (beta and alpha and beta[-1] == alpha[-1]):
                        pairs.append((beta, alpha))
        rp = reduced_initial_pair(x, L)
        rep.check(
            pairs == [(rp.beta, rp.alpha)],
            lambda: f"trial {t}: reduced pairs of {pres.format_point(x)} found by enumeration: {pairs}",
        )
    return rep


def suite_psi(cfg: RunConfig) -> Report:
    pres, ring = cfg.pres, cfg.ring
    L = line_path(cfg)
    rep = Report("psi", cfg.bounds(line=str(L), ray_cap=cfg.ray_cap, trials=cfg.trials, seed=cfg.seed))
    pool = _class_points(cfg, L)
    sm = cfg.sampler(8)
    letters = _letters(cfg)
    for t in range(cfg.trials):
        v = sm.vector(pool=pool)
        pv = psi(v, L)
        gens = [("S", a, s((a,), pres, ring)) for a in letters] + [("S*", a, s_star((a,), pres, ring)) for a in letters]
        A = sm.set()
        gens.append(("P", A, p(A, ring)))
        for kind, arg, g in gens:
            rep.check(
                psi(apply_generator(kind, arg, v), L) == g * pv,
                lambda: f"trial {t}: psi does not intertwine {kind}({arg}) at {v}",
            )
        rep.check(psi_inverse(pv, L) == v, lambda: f"trial {t}: psi_inverse(psi(v)) != v for {v}")
        e = ideal_normalize(sm.element(), L)
        rep.check(psi(psi_inverse(e, L), L) == e, lambda: f"trial {t}: psi(psi_inverse(e)) != e for {e}")
    return rep


def suite_minimal(cfg: RunConfig) -> Report:
    _field(cfg)
    pres, ring = cfg.pres, cfg.ring
    L = line_path(cfg)
    trials = cfg.extra.get("minimal_trials", min(cfg.trials, 50))
    rep = Report("minimal", cfg.bounds(line=str(L), ray_cap=cfg.ray_cap, trials=trials, seed=cfg.seed))
    sm = cfg.sampler(9)
    target = p(L.cylinder, ring)
    done = 0
    while done < trials:
        j = ideal_normalize(sm.element(), L)
        if j.is_zero():
            continue
        b = minimality_witness(j, L)
        rep.check(b * j == target, lambda: f"trial {done}: b j != p_Z for j={j}, b={b}")
        done += 1
    return rep


SUITES = {
    "relations": suite_relations,
    "grading": suite_grading,
    "homomorphism": suite_homomorphism,
    "faithful": suite_faithful,
    "orbit": suite_orbit,
    "irreducible": suite_irreducible,
    "schur": suite_schur,
    "inequiv": suite_inequiv,
    "linepath": suite_linepath,
    "psi": suite_psi,
    "minimal": suite_minimal,
}

FIELD_SUITES = frozenset({"irreducible", "schur", "minimal"})


def run_suite(name: str, cfg: RunConfig) -> Report:
    if name not in SUITES:
        raise ConfigError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
    return SUITES[name](cfg)

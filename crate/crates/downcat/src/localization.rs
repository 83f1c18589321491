//! Finite certificates for the 1-localization property of `last`.

use serde::Serialize;

use crate::corpus::{self, w3_ids};
use crate::down::{build_down, last_of, DownCategory, LastFunctor, WeqSet};
use crate::error::{Error, Result};
use crate::fincat::{
    build, enumerate_functors, find_natural_isos, find_natural_transformations, FinCategory, FunctorData, MorId,
    NatTransData, SearchBudget,
};
use crate::ladder::{LadderCategory, LadderMorphism, LadderObject, LadderVariant};
use crate::reedy::ReedyCategory;
use crate::report::{expect, SuiteReport};
use crate::simplex::SimplexMor;

/// Functors into a fixed target, each inverting a given weq set.
#[derive(Clone, Debug)]
pub struct LocalizationProbe {
    pub name: String,
    pub target: FinCategory,
    pub functors: Vec<FunctorData>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorizationCertificate {
    pub lifted: FunctorData,
    pub iso: NatTransData,
}

pub fn inverts_weq(target: &FinCategory, f: &FunctorData, w: &WeqSet) -> bool {
    w.morphisms.iter().all(|&m| target.is_iso(f.mor(m)))
}

/// The unique `H` on bounded `Down⁎(C)` with `H ∘ q = f`, for `f` defined on the
/// bounded MP ladder category underlying `star`.
///
/// Besides comparing `f` on each morphism and its class maximum, every step of
/// the interpolation between the two is replayed through the auxiliary
/// morphism out of `([m+1], X∘σ_k)` whenever that object lies within the bound.
pub fn factor_strict_quotient(
    rc: &ReedyCategory,
    star: &DownCategory,
    target: &FinCategory,
    f: &FunctorData,
) -> Result<FunctorData> {
    let mp = &star.ladder;
    let lad = mp.ladder(rc);
    let c = &rc.cat;
    let img = |m: &LadderMorphism| -> Option<MorId> { mp.mor_id(m).map(|i| f.mor(i)) };
    for (i, m) in mp.morphisms.iter().enumerate() {
        let top = lad.up_max(m);
        if f.mor(i as MorId) != img(&top).expect("maximum in bound") {
            return Err(Error::DoesNotRespectEquivalence(format!("{} vs {}", m.label(c), top.label(c))));
        }
    }
    for (i, m) in mp.morphisms.iter().enumerate() {
        let info = lad.gamma_classify(m);
        if info.class == crate::ladder::GammaClass::GammaMinus && !target.is_iso(f.mor(i as MorId)) {
            return Err(Error::NotWeqInverting(m.label(c)));
        }
    }
    for m in &mp.morphisms {
        let top = lad.up_max(m);
        interpolate(rc, mp, target, f, m, &top)?;
    }
    let on_morphisms = (0..star.decode.len()).map(|k| f.mor(star.max_ladder_id(k as MorId))).collect();
    Ok(FunctorData { on_objects: f.on_objects.clone(), on_morphisms })
}

fn interpolate(
    rc: &ReedyCategory,
    mp: &LadderCategory,
    target: &FinCategory,
    f: &FunctorData,
    lo: &LadderMorphism,
    hi: &LadderMorphism,
) -> Result<()> {
    let c = &rc.cat;
    let lad = mp.ladder(rc);
    let m = lo.alpha.m;
    let n = lo.alpha.n;
    let step = |k: usize| -> LadderMorphism {
        let pick = |i: usize| if i < k { (lo.alpha.at(i), lo.theta[i]) } else { (hi.alpha.at(i), hi.theta[i]) };
        let (values, theta): (Vec<usize>, Vec<MorId>) = (0..=m).map(pick).unzip();
        LadderMorphism { src: lo.src.clone(), dst: lo.dst.clone(), alpha: SimplexMor::raw(n, values), theta }
    };
    let fail = |what: String| Error::DoesNotRespectEquivalence(format!("{} <= {}: {what}", lo.label(c), hi.label(c)));
    // step(0) = hi, step(m+1) = lo.
    for k in 0..=m {
        let (a, b) = (step(k), step(k + 1));
        let (fa, fb) = (
            mp.mor_id(&a).map(|i| f.mor(i)).ok_or_else(|| fail(format!("step {k} outside the bound")))?,
            mp.mor_id(&b).map(|i| f.mor(i)).ok_or_else(|| fail(format!("step {} outside the bound", k + 1)))?,
        );
        let x = &lo.src;
        let sig = SimplexMor::sigma(m, k);
        let doubled = x.restrict(c, &sig);
        if mp.obj_id(&doubled).is_some() {
            let ids = |o: &LadderObject| -> Vec<MorId> { (0..=o.len()).map(|i| c.id(o.at(c, i))).collect() };
            let degen = LadderMorphism { src: doubled.clone(), dst: x.clone(), alpha: sig, theta: ids(&doubled) };
            let sec = |l: usize| LadderMorphism {
                src: x.clone(),
                dst: doubled.clone(),
                alpha: SimplexMor::delta(m + 1, l),
                theta: ids(x),
            };
            let aux_values: Vec<usize> =
                (0..=m + 1).map(|i| if i <= k { lo.alpha.at(i) } else { hi.alpha.at(i - 1) }).collect();
            let aux_theta: Vec<MorId> =
                (0..=m + 1).map(|i| if i <= k { lo.theta[i] } else { hi.theta[i - 1] }).collect();
            let aux = LadderMorphism {
                src: doubled.clone(),
                dst: lo.dst.clone(),
                alpha: SimplexMor::raw(n, aux_values),
                theta: aux_theta,
            };
            lad.check_morphism(&aux).map_err(|e| fail(format!("auxiliary morphism invalid: {e}")))?;
            let (sk, sk1) = (sec(k), sec(k + 1));
            if lad.compose_unchecked(&aux, &sk) != a || lad.compose_unchecked(&aux, &sk1) != b {
                return Err(fail(format!("auxiliary morphism does not restrict at step {k}")));
            }
            let id_of = |mm: &LadderMorphism| mp.mor_id(mm).expect("in bound");
            if !target.is_iso(f.mor(id_of(&degen))) {
                return Err(Error::NotWeqInverting(degen.label(c)));
            }
            if f.mor(id_of(&sk)) != f.mor(id_of(&sk1)) {
                return Err(fail(format!("sections at step {k} have different images")));
            }
        }
        if fa != fb {
            return Err(fail(format!("images differ at step {k}")));
        }
    }
    Ok(())
}

fn class_of(rc: &ReedyCategory, src: &DownCategory, m: &LadderMorphism) -> Result<MorId> {
    src.encode(rc, m).ok_or_else(|| Error::Invalid(format!("{} is outside the materialized source", m.label(&rc.cat))))
}

/// Builds `F̃: C → E` and the natural iso `F̃ ∘ last ⇒ F` for a weq-inverting `F`
/// on `Down(C)` or bounded `Down⁎(C)`.
pub fn factor_through_last(
    rc: &ReedyCategory,
    src: &DownCategory,
    target: &FinCategory,
    f: &FunctorData,
    w: &WeqSet,
) -> Result<FactorizationCertificate> {
    let c = &rc.cat;
    if !inverts_weq(target, f, w) {
        let bad = w.morphisms.iter().find(|&&m| !target.is_iso(f.mor(m))).expect("some weq fails");
        return Err(Error::NotWeqInverting(src.cat.label(*bad).to_string()));
    }
    let point = |x| -> Result<MorId> {
        src.obj_id(&LadderObject::point(x))
            .ok_or_else(|| Error::Invalid("singleton chain missing from the source".into()))
    };
    let on_objects = c.objects().map(|x| point(x).map(|o| f.obj(o))).collect::<Result<Vec<_>>>()?;
    let on_plus = |d: MorId| -> Result<MorId> {
        let m = LadderMorphism {
            src: LadderObject::point(c.src(d)),
            dst: LadderObject::point(c.dst(d)),
            alpha: SimplexMor::identity(0),
            theta: vec![d],
        };
        Ok(f.mor(class_of(rc, src, &m)?))
    };
    let on_minus = |s: MorId| -> Result<MorId> {
        if c.is_identity(s) {
            return Ok(target.id(on_objects[c.src(s) as usize]));
        }
        let (x, y) = (c.src(s), c.dst(s));
        let arrow = LadderObject { base: x, chain: vec![s] };
        let from_x = LadderMorphism {
            src: LadderObject::point(x),
            dst: arrow.clone(),
            alpha: SimplexMor::delta(1, 1),
            theta: vec![c.id(x)],
        };
        let from_y =
            LadderMorphism { src: LadderObject::point(y), dst: arrow, alpha: SimplexMor::delta(1, 0), theta: vec![c.id(y)] };
        let back = f.mor(class_of(rc, src, &from_y)?);
        let inv = target.inverse(back).ok_or_else(|| Error::NotWeqInverting(from_y.label(c)))?;
        Ok(target.comp(inv, f.mor(class_of(rc, src, &from_x)?)))
    };
    let on_morphisms = c
        .morphism_ids()
        .map(|u| {
            let (s, d) = rc.factorize(u)?;
            Ok(target.comp(on_plus(d)?, on_minus(s)?))
        })
        .collect::<Result<Vec<_>>>()?;
    let lifted = FunctorData { on_objects, on_morphisms };
    let report = lifted.check(c, target);
    if !report.is_empty() {
        return Err(Error::Invalid(format!("lifted assignment is not a functor: {report}")));
    }
    let components = src
        .ladder
        .objects
        .iter()
        .map(|x| {
            let n = x.len();
            let top = x.last(c);
            let m = LadderMorphism {
                src: LadderObject::point(top),
                dst: x.clone(),
                alpha: SimplexMor::iota(n, &[n]),
                theta: vec![c.id(top)],
            };
            Ok(f.mor(class_of(rc, src, &m)?))
        })
        .collect::<Result<Vec<_>>>()?;
    let iso = NatTransData { components };
    let last = LastFunctor::on_down(rc, src);
    let composite = last.functor.then(&lifted);
    iso.check(&src.cat, target, &composite, f)?;
    if !iso.is_iso(target) {
        return Err(Error::NotNatural("certificate components are not invertible".into()));
    }
    Ok(FactorizationCertificate { lifted, iso })
}

/// The unique `ε̃: f ⇒ g` with `ε̃ ▹ last = eps`, read off the singleton chains.
pub fn whisker_lift(
    rc: &ReedyCategory,
    src: &DownCategory,
    target: &FinCategory,
    f: &FunctorData,
    g: &FunctorData,
    eps: &NatTransData,
) -> Result<NatTransData> {
    let c = &rc.cat;
    let components = c
        .objects()
        .map(|x| {
            src.obj_id(&LadderObject::point(x))
                .map(|o| eps.components[o as usize])
                .ok_or_else(|| Error::Invalid("singleton chain missing from the source".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    let lift = NatTransData { components };
    lift.check(c, target, f, g)?;
    let last = LastFunctor::on_down(rc, src);
    if lift.whisker(&last.functor) != *eps {
        return Err(Error::NotNatural("lift does not restrict to the given transformation".into()));
    }
    Ok(lift)
}

/// Default probes: terminal, walking iso, `C`, `C` with an iso copy of object 0,
/// and `C′`.
pub fn default_probes(rc: &ReedyCategory) -> Vec<(String, FinCategory)> {
    let mut v = vec![
        ("terminal".to_string(), build::terminal()),
        ("walking-iso".to_string(), build::walking_iso()),
        ("C".to_string(), rc.cat.clone()),
    ];
    if rc.cat.num_objects() > 0 {
        v.push(("C+iso".to_string(), build::adjoin_iso_copy(&rc.cat, 0)));
    }
    v.push(("C'".to_string(), corpus::c_prime().cat));
    v
}

#[derive(Clone, Debug, Default, Serialize, PartialEq, Eq)]
pub struct ProbeTally {
    pub functors: usize,
    pub weq_inverting: usize,
    pub certificates: usize,
    pub lift_pairs: usize,
    pub transformations: usize,
}

/// For every probe and every weq-inverting functor out of `src`, builds and
/// validates the certificate, then checks whisker-lift uniqueness for every pair.
pub fn weak_localization_report(
    rc: &ReedyCategory,
    src: &DownCategory,
    probes: &[(String, FinCategory)],
    budget: SearchBudget,
) -> SuiteReport {
    let mut report = SuiteReport::new("localize");
    report.note("probe family is a heuristic: passing it does not decide weak 1-localization for all targets");
    let last = LastFunctor::on_down(rc, src);
    let w = last.weq(&rc.cat);
    for (name, e) in probes {
        let mut tally = ProbeTally::default();
        report.run(format!("probe {name}"), || -> Result<Option<String>> {
            let all = enumerate_functors(&src.cat, e, None, budget)?;
            tally.functors = all.len();
            let inv: Vec<&FunctorData> = all.iter().filter(|f| inverts_weq(e, f, &w)).collect();
            tally.weq_inverting = inv.len();
            let mut lifts = Vec::new();
            for f in &inv {
                let cert = factor_through_last(rc, src, e, f, &w)?;
                tally.certificates += 1;
                lifts.push(cert.lifted);
            }
            lifts.sort();
            lifts.dedup();
            for g1 in &lifts {
                for g2 in &lifts {
                    let (a, b) = (last.functor.then(g1), last.functor.then(g2));
                    let on_down = find_natural_transformations(&src.cat, e, &a, &b, false, budget)?;
                    let on_c = find_natural_transformations(&rc.cat, e, g1, g2, false, budget)?;
                    tally.lift_pairs += 1;
                    if on_down.len() != on_c.len() {
                        return Ok(Some(format!(
                            "{} transformations after whiskering vs {} on C",
                            on_down.len(),
                            on_c.len()
                        )));
                    }
                    for eps in &on_down {
                        let lift = whisker_lift(rc, src, e, g1, g2, eps)?;
                        let matches = on_c.iter().filter(|t| t.whisker(&last.functor) == *eps).count();
                        tally.transformations += 1;
                        if matches != 1 || !on_c.contains(&lift) {
                            return Ok(Some(format!("{matches} lifts restrict to one transformation")));
                        }
                    }
                }
            }
            Ok(None)
        });
        report.note(format!(
            "probe {name}: {} functors, {} invert weq, {} certificates, {} lift pairs, {} transformations",
            tally.functors, tally.weq_inverting, tally.certificates, tally.lift_pairs, tally.transformations
        ));
    }
    report
}

/// The fixture of the counterexample: `F` on the conservative ladder category
/// of `W3` into `C′`.
pub struct Counterexample {
    pub w3: ReedyCategory,
    pub c_prime: ReedyCategory,
    pub ladder: LadderCategory,
    pub f: FunctorData,
    pub last: LastFunctor,
}

impl Counterexample {
    pub fn build(limit: usize) -> Result<Self> {
        use w3_ids::*;
        let w3 = corpus::w3();
        let c_prime = corpus::c_prime();
        let ladder = LadderCategory::build(&w3, LadderVariant::Strict, w3.cat.num_objects(), limit)?;
        let c = &w3.cat;
        let last = LastFunctor::on_ladder(&w3, &ladder);
        // W3's ids embed into C′ unchanged.
        let on_morphisms = ladder
            .morphisms
            .iter()
            .map(|m| {
                let special = m.alpha.m == 0 && m.src.at(c, 0) == 0 && m.dst.at(c, m.alpha.at(0)) == 1 && m.theta[0] == GF;
                if special {
                    H
                } else {
                    last_of(c, m)
                }
            })
            .collect();
        let f = FunctorData { on_objects: last.functor.on_objects.clone(), on_morphisms };
        Ok(Counterexample { w3, c_prime, ladder, f, last })
    }

    /// The parallel pair `(δ¹₁, f), (δ¹₀, g∘f): ([0],0) → ([1], g)`.
    pub fn parallel_pair(&self) -> (MorId, MorId) {
        use w3_ids::*;
        let x = LadderObject::point(0);
        let y = LadderObject { base: 2, chain: vec![G] };
        let a = LadderMorphism { src: x.clone(), dst: y.clone(), alpha: SimplexMor::delta(1, 1), theta: vec![F] };
        let b = LadderMorphism { src: x, dst: y, alpha: SimplexMor::delta(1, 0), theta: vec![GF] };
        (self.ladder.mor_id(&a).unwrap(), self.ladder.mor_id(&b).unwrap())
    }

    /// Every `(G, θ)` with `G: W3 → C′` and `θ: G ∘ last ≅ F`.
    pub fn factorizations(&self, budget: SearchBudget) -> Result<Vec<(FunctorData, NatTransData)>> {
        let mut out = Vec::new();
        for g in enumerate_functors(&self.w3.cat, &self.c_prime.cat, None, budget)? {
            let gl = self.last.functor.then(&g);
            for iso in find_natural_isos(&self.ladder.cat, &self.c_prime.cat, &gl, &self.f)? {
                out.push((g.clone(), iso));
            }
        }
        Ok(out)
    }
}

pub fn counterexample_suite(limit: usize, budget: SearchBudget) -> SuiteReport {
    use w3_ids::*;
    let mut report = SuiteReport::new("counterexample");
    let cx = match Counterexample::build(limit) {
        Ok(cx) => cx,
        Err(e) => {
            report.push("fixture", false, Some(e.to_string()), 0);
            return report;
        }
    };
    let cp = &cx.c_prime.cat;
    report.run("F is a functor", || -> Result<Option<String>> {
        let r = cx.f.check(&cx.ladder.cat, cp);
        Ok(expect(r.is_empty(), || r.to_string()))
    });
    report.run("F inverts weq", || -> Result<Option<String>> {
        let w = cx.last.weq(&cx.w3.cat);
        Ok(expect(inverts_weq(cp, &cx.f, &w), || "a weq is not inverted".into()))
    });
    let (a, b) = cx.parallel_pair();
    report.run("F separates the parallel pair", || -> Result<Option<String>> {
        let got = (cx.f.mor(a), cx.f.mor(b));
        Ok(expect(got == (GF, H), || format!("images {got:?}")))
    });
    report.run("last merges the parallel pair", || -> Result<Option<String>> {
        let got = (cx.last.functor.mor(a), cx.last.functor.mor(b));
        Ok(expect(got == (GF, GF), || format!("images {got:?}")))
    });
    report.run("no factorization through last up to iso", || -> Result<Option<String>> {
        let found = cx.factorizations(budget)?;
        Ok(expect(found.is_empty(), || format!("{} factorizations found", found.len())))
    });
    report
}

/// `last` on the materialized source, for convenience.
pub fn down_and_weq(rc: &ReedyCategory, limit: usize) -> Result<(DownCategory, LastFunctor, WeqSet)> {
    let d = build_down(rc, limit)?;
    let last = LastFunctor::on_down(rc, &d);
    let w = last.weq(&rc.cat);
    Ok((d, last, w))
}

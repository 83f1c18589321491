//! The check suites run by `selftest` and the acceptance target, one per
//! area, each returning a [`SuiteReport`].

use crate::config::Bounds;
use crate::corpus::{self, w3_ids::*, CorpusEntry};
use crate::down::{build_down, build_down_star, check_direct, LastFunctor};
use crate::error::{Error, Result};
use crate::fincat::{FunctorData, MorId, ObjId, SearchBudget};
use crate::ladder::{Ladder, LadderCategory, LadderObject, LadderVariant};
use crate::localization::{counterexample_suite, default_probes, factor_strict_quotient, weak_localization_report};
use crate::reedy::ReedyCategory;
use crate::report::{expect, SuiteReport};
use crate::simplex::SimplexMor;
use crate::sset::comparison::{build_comparison_maps, GammaVariant};
use crate::sset::complex::{nerve_map, standard_simplex, UnionFind};
use crate::sset::cylinder::{mapping_cylinder, CountAudit};
use crate::sset::endofunctors::endofunctor_suite;
use crate::sset::horns::{Flavor, HornComplex};
use crate::sset::maps::{check_diagram, check_transformation, connecting_map, Connecting};
use crate::sset::{nerve_truncated, SimplicialMap};

fn budget(b: &Bounds) -> SearchBudget {
    SearchBudget { max_nodes: b.search_nodes }
}

/// Longest chain of `<′` steps ending at each object, by plain recursion.
pub fn degree_oracle(rc: &ReedyCategory) -> Vec<u32> {
    let edges = rc.degree_edges();
    fn depth(x: ObjId, edges: &[(ObjId, ObjId)], seen: usize) -> u32 {
        assert!(seen <= edges.len() + 1, "cycle in the degree relation");
        edges.iter().filter(|e| e.1 == x).map(|e| depth(e.0, edges, seen + 1) + 1).max().unwrap_or(0)
    }
    rc.cat.objects().map(|x| depth(x, &edges, 0)).collect()
}

/// Validation of every corpus entry and the degree of `W3`.
pub fn corpus_suite(corpus: &[CorpusEntry]) -> SuiteReport {
    let mut rep = SuiteReport::new("corpus");
    for e in corpus {
        rep.run(format!("{} validates", e.name), || {
            let r = e.data.validate();
            Ok::<_, Error>(expect(r.is_empty(), || r.to_string()))
        });
        rep.run(format!("{} degree is the longest-path layering", e.name), || {
            let d = e.data.degree()?;
            let c = &e.data.cat;
            let strict = c.morphism_ids().filter(|&m| !c.is_identity(m)).all(|m| {
                let (a, b) = (d[c.src(m) as usize], d[c.dst(m) as usize]);
                (!e.data.is_plus(m) || a < b) && (!e.data.is_minus(m) || a > b)
            });
            let oracle = degree_oracle(&e.data);
            Ok::<_, Error>(expect(strict && d == oracle.as_slice(), || format!("{d:?} against {oracle:?}")))
        });
    }
    rep.run("W3 degree = {0:0, 1:1, 2:2}", || {
        let w = corpus::w3();
        let d = w.degree()?.to_vec();
        Ok::<_, Error>(expect(d == [0, 1, 2], || format!("{d:?}")))
    });
    rep
}

/// `Down(W3)` and `Down(TS(1))`.
pub fn down_suite(bounds: &Bounds) -> SuiteReport {
    let mut rep = SuiteReport::new("down");
    let rc = corpus::w3();
    let d = match build_down(&rc, bounds.max_morphisms) {
        Ok(d) => d,
        Err(e) => {
            rep.push("build Down(W3)", false, Some(e.to_string()), 0);
            return rep;
        }
    };
    rep.run("Down(W3) has 4 objects", || Ok::<_, Error>(expect(d.cat.num_objects() == 4, || d.cat.summary())));
    rep.run("Down(W3) is a category", || {
        let r = d.cat.validate();
        Ok::<_, Error>(expect(r.is_empty(), || r.to_string()))
    });
    rep.run("Down(W3) is direct", || {
        let dc = check_direct(&d.cat);
        Ok::<_, Error>(expect(dc.direct, || format!("{dc:?}")))
    });
    rep.run("Hom(([0],0), ([1],g)) = {(δ¹₀, g∘f)}", || {
        let a = d.obj_id(&LadderObject::point(0)).ok_or_else(|| Error::Invalid("([0],0) missing".into()))?;
        let g = LadderObject { base: 2, chain: vec![G] };
        let b = d.obj_id(&g).ok_or_else(|| Error::Invalid("([1],g) missing".into()))?;
        let h = d.cat.hom(a, b);
        let ok = h.len() == 1 && {
            let m = &d.decode[h[0] as usize];
            m.alpha == SimplexMor::delta(1, 0) && m.theta == [GF]
        };
        Ok::<_, Error>(expect(ok, || format!("{} classes", h.len())))
    });
    rep.run("last is a functor on Down(W3)", || {
        let last = LastFunctor::on_down(&rc, &d);
        let r = last.functor.check(&d.cat, &rc.cat);
        Ok::<_, Error>(expect(r.is_empty(), || r.to_string()))
    });
    rep.run("Down(TS(1)) is finite and direct", || {
        let ts1 = corpus::truncated_simplex(1, bounds)?;
        let d1 = build_down(&ts1, bounds.max_morphisms)?;
        let dc = check_direct(&d1.cat);
        Ok::<_, Error>(expect(dc.direct && d1.cat.validate().is_empty(), || format!("{dc:?}")))
    });
    rep
}

/// Poset laws, maxima, upward intervals and the equivalence relation on
/// every hom-set, against a transitive-closure oracle.
pub fn hom_poset_check(lad: &Ladder<'_>, objects: &[LadderObject]) -> Result<Option<String>> {
    let c = &lad.rc.cat;
    for x in objects {
        for y in objects {
            let homs = lad.homs(x, y);
            let n = homs.len();
            let leq: Vec<Vec<bool>> = homs.iter().map(|a| homs.iter().map(|b| lad.hom_leq(a, b)).collect::<Result<_>>()).collect::<Result<_>>()?;
            let mut uf = UnionFind::new(n);
            for i in 0..n {
                if !leq[i][i] {
                    return Ok(Some(format!("{} is not ≤ itself", homs[i].label(c))));
                }
                for j in 0..n {
                    if leq[i][j] {
                        uf.union(i, j);
                        if i != j && leq[j][i] {
                            return Ok(Some(format!("antisymmetry fails at {}", homs[i].label(c))));
                        }
                        if (0..n).any(|k| leq[j][k] && !leq[i][k]) {
                            return Ok(Some(format!("transitivity fails above {}", homs[i].label(c))));
                        }
                    }
                }
            }
            for (i, m) in homs.iter().enumerate() {
                let top = lad.up_max(m);
                let Some(t) = homs.iter().position(|h| *h == top) else {
                    return Ok(Some(format!("up_max of {} is not in the hom-set", m.label(c))));
                };
                if lad.up_max(&top) != top || !leq[i][t] || (0..n).any(|j| leq[i][j] && !leq[j][t]) {
                    return Ok(Some(format!("{} is not the maximum above {}", top.label(c), m.label(c))));
                }
                if !lad.upward_interval_check(m).passed() {
                    return Ok(Some(format!("upward interval of {} is not [α, α′]", m.label(c))));
                }
                for j in 0..n {
                    if lad.are_equivalent(m, &homs[j])? != (uf.find(i) == uf.find(j)) {
                        return Ok(Some(format!("equivalence of {} and {} disagrees with the closure", m.label(c), homs[j].label(c))));
                    }
                }
            }
        }
    }
    Ok(None)
}

pub fn hom_poset_suite(bounds: &Bounds) -> SuiteReport {
    let mut rep = SuiteReport::new("hom-posets");
    for (name, rc) in [("W3", Ok(corpus::w3())), ("TS(2)", corpus::truncated_simplex(2, bounds))] {
        for (variant, len) in [(LadderVariant::Strict, None), (LadderVariant::Mp, Some(bounds.max_len))] {
            let label = match len {
                Some(l) => format!("{variant:?} over {name}, max_len {l}"),
                None => format!("{variant:?} over {name}"),
            };
            rep.run(label, || {
                let rc = rc.as_ref().map_err(|e| Error::Invalid(e.to_string()))?;
                let lad = Ladder::new(rc, variant);
                let objs = lad.objects(len.unwrap_or_else(|| crate::down::strict_length_bound(rc)), bounds.max_morphisms)?;
                hom_poset_check(&lad, &objs)
            });
        }
    }
    rep
}

/// `gamma_factorize` against the exhaustive scan, on MP morphisms between
/// strict objects.
pub fn gamma_check(rc: &ReedyCategory, bounds: &Bounds) -> Result<Option<String>> {
    let c = &rc.cat;
    let strict = Ladder::new(rc, LadderVariant::Strict).objects(crate::down::strict_length_bound(rc), bounds.max_morphisms)?;
    let mp = Ladder::new(rc, LadderVariant::Mp);
    let mut count = 0;
    for x in &strict {
        for y in &strict {
            for m in mp.homs(x, y) {
                let got = mp.gamma_factorize(&m)?;
                let scan = mp.gamma_factorizations_scan(&m);
                count += 1;
                if scan != [got.clone()] {
                    return Ok(Some(format!("{}: scan finds {} factorizations", m.label(c), scan.len())));
                }
            }
        }
    }
    Ok(expect(count > 0, || "no morphisms".into()))
}

pub fn gamma_suite(bounds: &Bounds) -> SuiteReport {
    let mut rep = SuiteReport::new("gamma-factorization");
    rep.run("W3", || gamma_check(&corpus::w3(), bounds));
    rep.run("TS(1)", || gamma_check(&corpus::truncated_simplex(1, bounds)?, bounds));
    rep
}

/// Every idempotent splits as `d ∘ s` with `s ∘ d = id`, and no other
/// `(C₋, C₊)` pair composes to it.
pub fn idempotent_check(rc: &ReedyCategory) -> Result<Option<String>> {
    let c = &rc.cat;
    let mut count = 0;
    for e in c.morphism_ids().filter(|&e| c.src(e) == c.dst(e) && c.compose(e, e) == Some(e)) {
        let (s, d) = rc.split_idempotent(e)?;
        count += 1;
        if c.comp(d, s) != e || c.comp(s, d) != c.id(c.dst(s)) {
            return Ok(Some(format!("{} does not split through {}", c.label(e), c.obj_label(c.dst(s)))));
        }
        let x = c.src(e);
        let pairs: Vec<(MorId, MorId)> = c
            .out_of(x)
            .into_iter()
            .filter(|&s2| rc.is_minus(s2))
            .flat_map(|s2| c.hom(c.dst(s2), x).iter().map(move |&d2| (s2, d2)))
            .filter(|&(s2, d2)| rc.is_plus(d2) && c.comp(d2, s2) == e)
            .collect();
        if pairs != [(s, d)] {
            return Ok(Some(format!("{} has {} splittings", c.label(e), pairs.len())));
        }
    }
    Ok(expect(count > 0, || "no idempotents".into()))
}

pub fn idempotent_suite(bounds: &Bounds) -> SuiteReport {
    let mut rep = SuiteReport::new("idempotents");
    rep.run(format!("MP ladder over W3, max_len {}", bounds.max_len), || {
        let rc = corpus::w3();
        let lc = LadderCategory::build(&rc, LadderVariant::Mp, bounds.max_len, bounds.max_morphisms)?;
        let gr = lc.gamma_reedy(&rc);
        let r = gr.validate();
        if !r.is_empty() {
            return Ok(Some(r.to_string()));
        }
        idempotent_check(&gr)
    });
    rep.run("TS(2)", || idempotent_check(&corpus::truncated_simplex(2, bounds)?));
    rep
}

/// The probe report over `Down(W3)` plus the strict quotient round trip.
pub fn localization_suite(bounds: &Bounds) -> SuiteReport {
    let rc = corpus::w3();
    let mut rep = SuiteReport::new("localization");
    match build_down(&rc, bounds.max_morphisms) {
        Ok(d) => rep.merge(weak_localization_report(&rc, &d, &default_probes(&rc), budget(bounds))),
        Err(e) => rep.push("build Down(W3)", false, Some(e.to_string()), 0),
    }
    let star = build_down_star(&rc, bounds.max_len, bounds.max_morphisms);
    rep.run(format!("last on MP (max_len {}) factors through the quotient", bounds.max_len), || {
        let star = star.as_ref().map_err(|e| Error::Invalid(e.to_string()))?;
        let f = LastFunctor::on_ladder(&rc, &star.ladder).functor;
        let h = factor_strict_quotient(&rc, star, &rc.cat, &f)?;
        let ok = star.projection.then(&h) == f && h == LastFunctor::on_down(&rc, star).functor;
        Ok::<_, Error>(expect(ok, || "H ∘ q differs from last".into()))
    });
    rep.run("a map breaking the equivalence is rejected", || -> Result<Option<String>> {
        let star = star.as_ref().map_err(|e| Error::Invalid(e.to_string()))?;
        let mut f = LastFunctor::on_ladder(&rc, &star.ladder).functor;
        let lad = star.ladder.ladder(&rc);
        let Some(i) = star.ladder.morphisms.iter().position(|m| lad.up_max(m) != *m) else {
            return Ok(Some("every morphism is maximal".into()));
        };
        let c = &rc.cat;
        let m = &star.ladder.morphisms[i];
        let (a, b) = (m.src.last(c), m.dst.last(c));
        let other = c.hom(a, b).iter().copied().find(|&u| u != f.on_morphisms[i]);
        match other {
            Some(u) => f.on_morphisms[i] = u,
            None => return Ok(None),
        }
        Ok(match factor_strict_quotient(&rc, star, &rc.cat, &f) {
            Err(Error::DoesNotRespectEquivalence(_)) => None,
            other => Some(format!("perturbed map gives {:?}", other.map(|_| ()))),
        })
    });
    rep
}

pub fn counterexample(bounds: &Bounds) -> SuiteReport {
    counterexample_suite(bounds.max_morphisms, budget(bounds))
}

pub fn endofunctors(bounds: &Bounds) -> SuiteReport {
    match corpus::default_corpus(bounds) {
        Ok(c) => endofunctor_suite(&c, bounds, 3),
        Err(e) => {
            let mut rep = SuiteReport::new("endofunctors");
            rep.push("corpus", false, Some(e.to_string()), 0);
            rep
        }
    }
}

/// Transformations on representables, the connecting diagram (on `[k] ≤ [3]`,
/// levels `≤ 3`), and surjectivity or injectivity of each map on `Δk`, `k ≤ n`.
/// Surjectivity of the `Dcp` family needs `n, d` at most the `Dcp` bound.
pub fn connecting_suite(bounds: &Bounds, n: usize, d: usize) -> SuiteReport {
    let mut rep = SuiteReport::new("connecting");
    let (m, lim) = (bounds.endofunctor_dim, bounds.max_cells);
    for c in Connecting::ALL {
        rep.run(format!("{c:?} is natural on [k] ≤ [{n}], levels ≤ {d}"), || check_transformation(c, n, d, m, lim).map(|()| None));
    }
    match check_diagram(n.max(3), d.max(3), m, lim) {
        Ok(squares) => {
            for (label, bad) in squares {
                rep.push(format!("square {label}"), bad.is_none(), bad, 0);
            }
        }
        Err(e) => rep.push("diagram", false, Some(e.to_string()), 0),
    }
    for c in Connecting::ALL {
        let what = if c.is_surjective_family() { "surjective" } else { "injective" };
        rep.run(format!("{c:?} is {what} on Δk, k ≤ {n}"), || {
            for k in 0..=n {
                let x = standard_simplex(Some(k), k);
                let cm = connecting_map(c, &x, d, m, lim)?;
                let ok = if c.is_surjective_family() { cm.map.is_surjective_onto(&cm.dst.result) } else { cm.map.is_injective() };
                if !ok {
                    return Ok(Some(format!("fails on Δ{k}")));
                }
            }
            Ok::<_, Error>(None)
        });
    }
    rep
}

/// Outsiders matched into inner horn pairs and the schedule replayed.
pub fn horn_check(n: usize, flavor: Flavor, limit: usize) -> Result<Option<String>> {
    let hc = HornComplex::new(n, flavor, limit)?;
    if let Some(b) = hc.base_checks.iter().find(|b| !b.holds) {
        return Ok(Some(format!("base audit failed: {}", b.label)));
    }
    let pairs = hc.pairs(limit)?;
    let mut outs = hc.outsiders();
    outs.sort();
    let mut matched: Vec<(usize, u32)> = pairs.iter().flat_map(|p| [(p.dim, p.core), (p.dim - 1, p.periphery)]).collect();
    matched.sort();
    if matched != outs {
        return Ok(Some(format!("{} outsiders, {} pairs do not match them", outs.len(), pairs.len())));
    }
    if let Some(p) = pairs.iter().find(|p| p.position == 0 || p.position >= p.dim) {
        return Ok(Some(format!("position {} of ({}) is not inner", p.position, p.core_label)));
    }
    let cert = hc.replay(&pairs)?;
    Ok(expect(cert.complete, || format!("replay stops at {:?}", cert.final_nondeg)))
}

pub fn horn_suite(bounds: &Bounds) -> SuiteReport {
    let mut rep = SuiteReport::new("horns");
    let lim = bounds.max_cells;
    for n in 0..=bounds.horn_n {
        rep.run(format!("plain n={n}"), || horn_check(n, Flavor::Plain, lim));
    }
    for n in 0..=bounds.horn_i_n {
        rep.run(format!("I n={n}"), || horn_check(n, Flavor::I, lim));
    }
    if bounds.horn_n < 3 {
        rep.note(format!("profile {:?} skips plain n > {}", bounds.profile, bounds.horn_n));
    }
    rep.run("plain n=1 pair is ((00,01,11), 00→11) at 1", || {
        let ps = HornComplex::new(1, Flavor::Plain, lim)?.pairs(lim)?;
        let got: Vec<(&str, &str, usize)> = ps.iter().map(|p| (p.core_label.as_str(), p.periphery_label.as_str(), p.position)).collect();
        Ok::<_, Error>(expect(got == [("00,01,11", "00,11", 1)], || format!("{got:?}")))
    });
    rep
}

pub fn comparison_suite(bounds: &Bounds) -> SuiteReport {
    let rc = corpus::w3();
    let d = bounds.comparison_dim;
    let mut rep = SuiteReport::new("comparison");
    for v in GammaVariant::ALL {
        match build_comparison_maps(&rc, v, d, bounds.max_cells, bounds.max_cells) {
            Ok(cm) => {
                let mut r = cm.check(bounds.max_cells);
                r.suite = format!("{v:?}");
                rep.merge(r);
            }
            Err(e) => rep.push(format!("{v:?}: build"), false, Some(e.to_string()), 0),
        }
    }
    rep
}

/// The point cylinder and the cylinder of `last : N(Down W3) → N(W3)`.
pub fn cylinder_suite(bounds: &Bounds, d: usize) -> SuiteReport {
    let mut rep = SuiteReport::new("cylinder");
    let lim = bounds.max_cells;
    rep.run("cylinder of the identity of Δ0", || {
        let p = standard_simplex(Some(0), d);
        let cyl = mapping_cylinder(&p, &p, &SimplicialMap::identity(&p), d, lim)?;
        Ok::<_, Error>(expect(cyl.audit.iter().all(CountAudit::holds) && !cyl.weq.is_empty(), || format!("{:?}", cyl.audit)))
    });
    rep.run(format!("cylinder of last on W3 at d={d}"), || {
        let rc = corpus::w3();
        let down = build_down(&rc, bounds.max_morphisms)?;
        let last: FunctorData = LastFunctor::on_down(&rc, &down).functor;
        let x = nerve_truncated(&down.cat, d, lim)?;
        let y = nerve_truncated(&rc.cat, d, lim)?;
        let f = nerve_map(&x, &y, &last)?;
        let cyl = mapping_cylinder(&x, &y, &f, d, lim)?;
        Ok::<_, Error>(expect(cyl.audit.iter().all(CountAudit::holds) && !cyl.weq.is_empty(), || format!("{:?}", cyl.audit)))
    });
    rep
}

/// Everything `selftest` runs, in a fixed order.
pub fn all_suites(bounds: &Bounds) -> Vec<SuiteReport> {
    let corpus = corpus::default_corpus(bounds).unwrap_or_default();
    vec![
        corpus_suite(&corpus),
        down_suite(bounds),
        hom_poset_suite(bounds),
        gamma_suite(bounds),
        idempotent_suite(bounds),
        localization_suite(bounds),
        counterexample(bounds),
        endofunctors(bounds),
        connecting_suite(bounds, 2, 2),
        horn_suite(bounds),
        comparison_suite(bounds),
        cylinder_suite(bounds, 2),
    ]
}

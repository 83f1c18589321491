//! Acceptance target: one line per criterion, exit status 1 if any fails.
//!
//! Each criterion recomputes its key facts with a small oracle written here,
//! compares them with frozen values and with the library, and must finish
//! inside its pinned time bound.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use downcat::config::Bounds;
use downcat::corpus::{self, w3_ids::*};
use downcat::down::{build_down, check_direct, strict_length_bound};
use downcat::fincat::{enumerate_functors, FinCategory, MorId, ObjId, SearchBudget};
use downcat::ladder::{Ladder, LadderCategory, LadderMorphism, LadderObject, LadderVariant};
use downcat::localization::{default_probes, Counterexample};
use downcat::reedy::ReedyCategory;
use downcat::report::SuiteReport;
use downcat::simplex::SimplexMor;
use downcat::sset::endofunctors::evaluate_endofunctor;
use downcat::sset::horns::{Flavor, HornComplex};
use downcat::sset::{standard_simplex, EndofunctorKind};
use downcat::suites;

type Outcome = Result<String, String>;
type Criterion = (&'static str, Duration, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn suite_ok(r: SuiteReport) -> Result<usize, String> {
    match r.checks.iter().find(|c| !c.passed) {
        None => Ok(r.checks.len()),
        Some(c) => Err(format!("{}/{}: {}", r.suite, c.name, c.witness.clone().unwrap_or_default())),
    }
}

/// Longest path ending at each object in the digraph of non-identity
/// morphisms, with `C₋` arrows reversed, by repeated relaxation.
fn degree_by_relaxation(rc: &ReedyCategory) -> Option<Vec<u32>> {
    let c = &rc.cat;
    let mut edges = Vec::new();
    for m in c.morphism_ids().filter(|&m| !c.is_identity(m)) {
        if rc.is_plus(m) {
            edges.push((c.src(m), c.dst(m)));
        }
        if rc.is_minus(m) {
            edges.push((c.dst(m), c.src(m)));
        }
    }
    let n = c.num_objects();
    let mut d = vec![0u32; n];
    for _ in 0..=n {
        let mut changed = false;
        for &(a, b) in &edges {
            if d[b as usize] < d[a as usize] + 1 {
                d[b as usize] = d[a as usize] + 1;
                changed = true;
            }
        }
        if !changed {
            return Some(d);
        }
    }
    None
}

/// Chains of composable non-identity `C₋` morphisms, the empty chain at each
/// object included.
fn strict_chains(rc: &ReedyCategory) -> Vec<(ObjId, Vec<MorId>)> {
    let c = &rc.cat;
    let mut out = Vec::new();
    let mut stack: Vec<(ObjId, Vec<MorId>)> = c.objects().map(|x| (x, Vec::new())).collect();
    while let Some((x, ch)) = stack.pop() {
        let end = ch.last().map_or(x, |&m| c.dst(m));
        for m in c.out_of(end) {
            if rc.is_minus(m) && !c.is_identity(m) {
                let mut next = ch.clone();
                next.push(m);
                stack.push((x, next));
            }
        }
        out.push((x, ch));
    }
    out
}

/// No non-identity endomorphisms and no cycle among distinct objects, by DFS.
fn is_direct_by_dfs(c: &FinCategory) -> bool {
    if c.morphism_ids().any(|m| c.src(m) == c.dst(m) && !c.is_identity(m)) {
        return false;
    }
    let n = c.num_objects();
    let reach = |from: ObjId| {
        let mut seen = vec![false; n];
        let mut todo = vec![from];
        while let Some(x) = todo.pop() {
            for m in c.out_of(x) {
                let y = c.dst(m);
                if y != x && !seen[y as usize] {
                    seen[y as usize] = true;
                    todo.push(y);
                }
            }
        }
        seen
    };
    c.objects().all(|x| !reach(x)[x as usize])
}

fn criterion_1() -> Outcome {
    let b = Bounds::default();
    let corpus = corpus::default_corpus(&b).map_err(|e| e.to_string())?;
    ensure(corpus.len() == 9, || format!("{} corpus entries", corpus.len()))?;
    for e in &corpus {
        let r = e.data.validate();
        ensure(r.is_empty(), || format!("{}: {r}", e.name))?;
        let lib = e.data.degree().map_err(|e| e.to_string())?.to_vec();
        let oracle = degree_by_relaxation(&e.data).ok_or_else(|| format!("{}: oracle finds a cycle", e.name))?;
        ensure(lib == oracle, || format!("{}: degree {lib:?}, oracle {oracle:?}", e.name))?;
    }
    let w3 = corpus::w3();
    let d = w3.degree().map_err(|e| e.to_string())?.to_vec();
    ensure(d == [0, 1, 2], || format!("W3 degree {d:?}"))?;
    Ok("9 entries validate; W3 degree {0:0, 1:1, 2:2}".into())
}

fn criterion_2() -> Outcome {
    let rc = corpus::w3();
    let chains = strict_chains(&rc);
    ensure(chains.len() == 4, || format!("oracle finds {} chains", chains.len()))?;
    let d = build_down(&rc, 200_000).map_err(|e| e.to_string())?;
    ensure(d.cat.num_objects() == chains.len(), || format!("{} objects", d.cat.num_objects()))?;
    ensure(d.cat.validate().is_empty(), || "Down(W3) fails the category laws".into())?;
    ensure(is_direct_by_dfs(&d.cat) && check_direct(&d.cat).direct, || "Down(W3) is not direct".into())?;
    ensure(d.cat.morphism_ids().all(|m| d.cat.is_identity(m) || !d.cat.is_iso(m)), || "non-identity iso".into())?;
    let a = d.obj_id(&LadderObject::point(0)).ok_or("([0],0) missing")?;
    let g = d.obj_id(&LadderObject { base: 2, chain: vec![G] }).ok_or("([1],g) missing")?;
    let hom = d.cat.hom(a, g);
    ensure(hom.len() == 1, || format!("|Hom| = {}", hom.len()))?;
    let m = &d.decode[hom[0] as usize];
    ensure(m.alpha == SimplexMor::delta(1, 0) && m.theta == [GF], || format!("max is {:?} {:?}", m.alpha, m.theta))?;
    Ok("4 objects, direct, Hom(([0],0),([1],g)) = {(δ¹₀, g∘f)}".into())
}

/// `≤`'s symmetric-transitive closure by Warshall, against `are_equivalent`;
/// composition monotone in both arguments.
fn hom_oracle(lad: &Ladder<'_>, objects: &[LadderObject]) -> Result<usize, String> {
    let e = |r: downcat::Result<bool>| r.map_err(|e| e.to_string());
    let mut hom_sets = 0;
    for x in objects {
        for y in objects {
            let hs = lad.homs(x, y);
            let n = hs.len();
            hom_sets += 1;
            let mut rel = vec![vec![false; n]; n];
            for i in 0..n {
                for j in 0..n {
                    rel[i][j] = e(lad.hom_leq(&hs[i], &hs[j]))? || e(lad.hom_leq(&hs[j], &hs[i]))?;
                }
            }
            for k in 0..n {
                for i in 0..n {
                    for j in 0..n {
                        rel[i][j] |= rel[i][k] && rel[k][j];
                    }
                }
            }
            for i in 0..n {
                for j in 0..n {
                    let lib = e(lad.are_equivalent(&hs[i], &hs[j]))?;
                    if lib != rel[i][j] {
                        return Err(format!("{} ~ {}: library {lib}, closure {}", i, j, rel[i][j]));
                    }
                }
            }
            for z in objects {
                let hz = lad.homs(y, z);
                for (a, a2) in hs.iter().flat_map(|a| hs.iter().map(move |a2| (a, a2))) {
                    if !e(lad.hom_leq(a, a2))? {
                        continue;
                    }
                    for (b, b2) in hz.iter().flat_map(|b| hz.iter().map(move |b2| (b, b2))) {
                        if e(lad.hom_leq(b, b2))? {
                            let (l, r) = (lad.compose(b, a).map_err(|e| e.to_string())?, lad.compose(b2, a2).map_err(|e| e.to_string())?);
                            if !e(lad.hom_leq(&l, &r))? {
                                return Err("composition is not monotone".into());
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(hom_sets)
}

fn criterion_3() -> Outcome {
    let b = Bounds::default();
    let checks = suite_ok(suites::hom_poset_suite(&b))?;
    let mut sets = 0;
    for rc in [corpus::w3(), corpus::truncated_simplex(2, &b).map_err(|e| e.to_string())?] {
        for (v, len) in [(LadderVariant::Strict, strict_length_bound(&rc)), (LadderVariant::Mp, 2)] {
            let lc = LadderCategory::build(&rc, v, len, b.max_morphisms).map_err(|e| e.to_string())?;
            sets += hom_oracle(&lc.ladder(&rc), &lc.objects)?;
            if v == LadderVariant::Mp {
                let strict = Ladder::new(&rc, LadderVariant::Strict);
                let lad = lc.ladder(&rc);
                for x in &lc.objects {
                    let id = lad.identity(x);
                    let class = lad.homs(x, x).into_iter().filter(|m| lad.are_equivalent(m, &id).unwrap_or(false)).count();
                    ensure((class == 1) == strict.is_object(x), || format!("{}: identity class {class}", x.label(&rc.cat)))?;
                }
            }
        }
    }
    Ok(format!("{checks} suite checks; closure and monotonicity oracle on {sets} hom-sets"))
}

/// Surjective on indices with identity components.
fn is_gamma_minus(c: &FinCategory, m: &LadderMorphism) -> bool {
    let hit: BTreeSet<usize> = m.alpha.values.iter().copied().collect();
    hit.len() == m.dst.len() + 1 && m.theta.iter().all(|&t| c.is_identity(t))
}

fn criterion_4() -> Outcome {
    let b = Bounds::default();
    let checks = suite_ok(suites::gamma_suite(&b))?;
    let mut total = 0;
    for rc in [corpus::w3(), corpus::truncated_simplex(1, &b).map_err(|e| e.to_string())?] {
        let len = strict_length_bound(&rc);
        let mp = LadderCategory::build(&rc, LadderVariant::Mp, len, b.max_morphisms).map_err(|e| e.to_string())?;
        let lad = mp.ladder(&rc);
        let strict = Ladder::new(&rc, LadderVariant::Strict);
        let objs: Vec<&LadderObject> = mp.objects.iter().filter(|x| strict.is_object(x)).collect();
        for x in &objs {
            for y in &objs {
                for m in lad.homs(x, y) {
                    let mut found = Vec::new();
                    for z in &mp.objects {
                        for a in lad.homs(x, z).into_iter().filter(|a| is_gamma_minus(&rc.cat, a)) {
                            for p in lad.homs(z, y).into_iter().filter(|p| p.alpha.is_injective()) {
                                if lad.compose(&p, &a).map_err(|e| e.to_string())? == m {
                                    found.push((a.clone(), p));
                                }
                            }
                        }
                    }
                    let got = lad.gamma_factorize(&m).map_err(|e| e.to_string())?;
                    ensure(found == [got], || format!("{}: oracle finds {}", m.label(&rc.cat), found.len()))?;
                    total += 1;
                }
            }
        }
    }
    Ok(format!("{checks} suite checks; {total} morphisms factor uniquely"))
}

fn splittings(rc: &ReedyCategory, e: MorId) -> Vec<(MorId, MorId)> {
    let c = &rc.cat;
    let mut out = Vec::new();
    for s in c.morphism_ids().filter(|&s| rc.is_minus(s) && c.src(s) == c.src(e)) {
        for d in c.morphism_ids().filter(|&d| rc.is_plus(d) && c.src(d) == c.dst(s) && c.dst(d) == c.src(e)) {
            if c.comp(d, s) == e && c.comp(s, d) == c.id(c.dst(s)) {
                out.push((s, d));
            }
        }
    }
    out
}

fn criterion_5() -> Outcome {
    let b = Bounds::default();
    let checks = suite_ok(suites::idempotent_suite(&b))?;
    let w3 = corpus::w3();
    let gr = LadderCategory::build(&w3, LadderVariant::Mp, b.max_len, b.max_morphisms).map_err(|e| e.to_string())?.gamma_reedy(&w3);
    let mut idem = 0;
    for rc in [gr, corpus::truncated_simplex(2, &b).map_err(|e| e.to_string())?] {
        let c = &rc.cat;
        for e in c.morphism_ids().filter(|&e| c.src(e) == c.dst(e) && c.comp(e, e) == e) {
            let split = rc.split_idempotent(e).map_err(|e| e.to_string())?;
            let all = splittings(&rc, e);
            ensure(all == [split], || format!("{} splits {} ways", c.label(e), all.len()))?;
            idem += 1;
        }
    }
    Ok(format!("{checks} suite checks; {idem} idempotents split uniquely"))
}

/// Functors by assigning objects, then each morphism within its hom-set, and
/// filtering by the laws at the end of each branch.
fn count_functors(src: &FinCategory, dst: &FinCategory) -> usize {
    let (no, nm) = (src.num_objects(), src.num_morphisms());
    let mut count = 0;
    let mut objs = vec![0u32; no];
    fn objects_rec(i: usize, objs: &mut Vec<u32>, src: &FinCategory, dst: &FinCategory, nm: usize, count: &mut usize) {
        if i == objs.len() {
            let mut mors = vec![0u32; nm];
            morphisms_rec(0, objs, &mut mors, src, dst, count);
            return;
        }
        for y in 0..dst.num_objects() as u32 {
            objs[i] = y;
            objects_rec(i + 1, objs, src, dst, nm, count);
        }
    }
    fn morphisms_rec(j: usize, objs: &[u32], mors: &mut Vec<u32>, src: &FinCategory, dst: &FinCategory, count: &mut usize) {
        if j == mors.len() {
            let ids = src.objects().all(|x| mors[src.id(x) as usize] == dst.id(objs[x as usize]));
            let comp = src.morphism_ids().all(|f| {
                src.out_of(src.dst(f))
                    .into_iter()
                    .all(|g| dst.comp(mors[g as usize], mors[f as usize]) == mors[src.comp(g, f) as usize])
            });
            *count += (ids && comp) as usize;
            return;
        }
        let m = j as MorId;
        for &t in dst.hom(objs[src.src(m) as usize], objs[src.dst(m) as usize]) {
            mors[j] = t;
            morphisms_rec(j + 1, objs, mors, src, dst, count);
        }
    }
    objects_rec(0, &mut objs, src, dst, nm, &mut count);
    count
}

fn criterion_6() -> Outcome {
    let b = Bounds::default();
    let checks = suite_ok(suites::localization_suite(&b))?;
    let rc = corpus::w3();
    let d = build_down(&rc, b.max_morphisms).map_err(|e| e.to_string())?;
    let mut counts = Vec::new();
    for (name, e) in default_probes(&rc) {
        let lib = enumerate_functors(&d.cat, &e, None, SearchBudget { max_nodes: b.search_nodes }).map_err(|e| e.to_string())?.len();
        let oracle = count_functors(&d.cat, &e);
        ensure(lib == oracle, || format!("probe {name}: {lib} functors, oracle {oracle}"))?;
        counts.push(format!("{name}:{oracle}"));
    }
    Ok(format!("{checks} suite checks; functor counts {}", counts.join(" ")))
}

fn criterion_7() -> Outcome {
    let b = Bounds::default();
    let checks = suite_ok(suites::counterexample(&b))?;
    let cx = Counterexample::build(b.max_morphisms).map_err(|e| e.to_string())?;
    let (p, q) = cx.parallel_pair();
    let pair = (cx.f.mor(p), cx.f.mor(q));
    let (x, y) = (cx.ladder.morphism(p), cx.ladder.morphism(q));
    ensure(x.alpha == SimplexMor::delta(1, 1) && x.theta == [F], || "first arrow is not (δ¹₁, f)".into())?;
    ensure(y.alpha == SimplexMor::delta(1, 0) && y.theta == [GF], || "second arrow is not (δ¹₀, g∘f)".into())?;
    ensure(pair == (GF, H), || format!("F sends the pair to {pair:?}"))?;
    Ok(format!("{checks} suite checks; F(δ¹₁, f) = g∘f, F(δ¹₀, g∘f) = h, no factorization"))
}

fn criterion_8() -> Outcome {
    let b = Bounds::default();
    let checks = suite_ok(suites::endofunctors(&b))?;
    let lim = b.max_cells;
    let esdi = evaluate_endofunctor(EndofunctorKind::ESdI, &standard_simplex(Some(1), 1), 1, 0, lim).map_err(|e| e.to_string())?;
    let esd = evaluate_endofunctor(EndofunctorKind::ESd, &standard_simplex(Some(2), 2), 2, 0, lim).map_err(|e| e.to_string())?;
    // Vertices and arrows of the two pictures, and the four small triangles.
    let (a, bb) = (esdi.result.nondeg_profile(), esd.result.nondeg_profile());
    ensure(a[..2] == [5, 7], || format!("ESdI Δ1 nondegenerate cells {a:?}"))?;
    ensure(bb[..3] == [6, 9, 4], || format!("ESd Δ2 nondegenerate cells {bb:?}"))?;
    Ok(format!("{checks} suite checks; ESdI Δ1 has 5 vertices, 7 arrows; ESd Δ2 has 6, 9, 4"))
}

fn criterion_9() -> Outcome {
    let b = Bounds::default();
    ensure(b.horn_n == 3 && b.horn_i_n == 2, || "default bounds changed".into())?;
    let checks = suite_ok(suites::horn_suite(&b))?;
    let mut steps = 0;
    for (flavor, top) in [(Flavor::Plain, 3), (Flavor::I, 2)] {
        for n in 0..=top {
            let hc = HornComplex::new(n, flavor, b.max_cells).map_err(|e| e.to_string())?;
            let pairs = hc.pairs(b.max_cells).map_err(|e| e.to_string())?;
            let cores: BTreeSet<(usize, u32)> = pairs.iter().map(|p| (p.dim, p.core)).collect();
            let peris: BTreeSet<(usize, u32)> = pairs.iter().map(|p| (p.dim - 1, p.periphery)).collect();
            let outs: BTreeSet<(usize, u32)> = hc.outsiders().into_iter().collect();
            ensure(cores.len() == pairs.len() && peris.len() == pairs.len(), || format!("{flavor:?} n={n}: repeated cell"))?;
            ensure(cores.is_disjoint(&peris), || format!("{flavor:?} n={n}: a core is also a periphery"))?;
            let union: BTreeSet<_> = cores.union(&peris).copied().collect();
            ensure(union == outs, || format!("{flavor:?} n={n}: matching misses outsiders"))?;
            ensure(pairs.iter().all(|p| 0 < p.position && p.position < p.dim), || format!("{flavor:?} n={n}: outer position"))?;
            let cert = hc.replay(&pairs).map_err(|e| e.to_string())?;
            ensure(cert.complete && cert.final_nondeg == hc.y.nondeg_profile(), || format!("{flavor:?} n={n}: replay incomplete"))?;
            if (flavor, n) == (Flavor::Plain, 1) {
                let got: Vec<(&str, &str, usize)> = pairs.iter().map(|p| (p.core_label.as_str(), p.periphery_label.as_str(), p.position)).collect();
                ensure(got == [("00,01,11", "00,11", 1)], || format!("n=1 pairs {got:?}"))?;
            }
            steps += pairs.len();
        }
    }
    Ok(format!("{checks} suite checks; {steps} pairs over plain n ≤ 3 and I n ≤ 2"))
}

fn criterion_10() -> Outcome {
    let b = Bounds::default();
    ensure(b.comparison_dim == 2, || "comparison truncation changed".into())?;
    let checks = suite_ok(suites::comparison_suite(&b))?;
    Ok(format!("{checks} checks over Down, Down⁎ and MP at d=2"))
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("corpus validation and W3 degree", Duration::from_secs(1), criterion_1),
        ("Down(W3) shape", Duration::from_secs(1), criterion_2),
        ("hom-poset suite", Duration::from_secs(120), criterion_3),
        ("Γ-factorization", Duration::from_secs(60), criterion_4),
        ("idempotent splitting", Duration::from_secs(60), criterion_5),
        ("localization certificates", Duration::from_secs(300), criterion_6),
        ("counterexample", Duration::from_secs(30), criterion_7),
        ("endofunctor formulas", Duration::from_secs(60), criterion_8),
        ("horn machinery", Duration::from_secs(600), criterion_9),
        ("comparison maps", Duration::from_secs(300), criterion_10),
    ];
    let mut failed = 0;
    for (i, (name, bound, f)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let r = f();
        let el = t.elapsed();
        let ok = r.is_ok() && el <= *bound;
        failed += !ok as usize;
        let detail = match &r {
            Ok(s) if el <= *bound => s.clone(),
            Ok(_) => format!("over the {} s bound", bound.as_secs()),
            Err(e) => e.clone(),
        };
        println!(
            "criterion {:>2} {} {name} ({:.2} s of {} s): {detail}",
            i + 1,
            if ok { "PASS" } else { "FAIL" },
            el.as_secs_f64(),
            bound.as_secs()
        );
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}

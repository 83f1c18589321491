//! The comparison maps `D: Dcp S → T`, `Dᴵ: DcpI T → T`, `E: ESd′ S → S` and
//! `Eᴵ: ESdI′ T → S` for `S = N(C)` and `T = N(Γ)`, with `Γ` one of `Down(C)`,
//! the bounded `Down⁎(C)` or the bounded MP ladder, and `λ = N(last)`.
//!
//! The maps are evaluated on presentation nodes `(ψ, a)`, where `ψ` is a
//! simplex of the input nerve and `a` a cell of the representable value over
//! `[n]`. Targets are nerves, so a cell is its chain of objects and arrows.
//! Checks run over non-degenerate `ψ` and cells `a` that avoid every face of
//! `[n]`. Naturality in `ψ` carries the verdicts to all other nodes, and
//! simplices of a nerve are determined by their spines, so the equalities
//! between simplicial maps are compared on vertices and edges.

use std::cell::RefCell;
use std::collections::{HashMap, HashSet};

use clap::ValueEnum;
use serde::Serialize;

use super::complex::{nerve_truncated, Key, TruncatedSSet};
use super::kinds::{DcpIString, DcpString, DcpVertex, EndofunctorKind as K, Model, Shape};
use super::maps::Connecting;
use crate::down::{build_down, build_down_star, inclusion, normalization_functor, DownCategory, LastFunctor};
use crate::error::{Error, Result};
use crate::fincat::{FinCategory, FunctorData, MorId, ObjId};
use crate::ladder::{LadderMorphism, LadderObject};
use crate::reedy::ReedyCategory;
use crate::report::SuiteReport;
use crate::simplex::SimplexMor;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, ValueEnum)]
pub enum GammaVariant {
    Down,
    DownStar,
    Mp,
}

impl GammaVariant {
    pub const ALL: [GammaVariant; 3] = [GammaVariant::Down, GammaVariant::DownStar, GammaVariant::Mp];
}

/// A simplex of a nerve, read as a functor `[n] → C`.
pub type Chain = LadderObject;

pub struct ComparisonMaps<'a> {
    pub rc: &'a ReedyCategory,
    pub variant: GammaVariant,
    pub d: usize,
    pub s: TruncatedSSet,
    pub t: TruncatedSSet,
    /// `(C₋, C₊)` factorization of every morphism.
    pub phi: Vec<(MorId, MorId)>,
    /// Midpoint of the factorization.
    pub q: Vec<ObjId>,
    /// The `C₊` leg.
    pub eta: Vec<MorId>,
    pub last: FunctorData,
    star: DownCategory,
    /// `Down(C)` with the inclusion into `Down⁎(C)` and the normalization back.
    down: Option<(DownCategory, FunctorData, FunctorData)>,
    /// `D_φ` on `Dcp` strings; `φ` ranges over the few simplices of `S`.
    d_memo: RefCell<HashMap<(Chain, DcpString), Chain>>,
    /// Projected `(0, v) → (1, y)` edges over `ψ`.
    edge_memo: RefCell<HashMap<(Chain, DcpVertex, u32), MorId>>,
}

fn unit(x: u32) -> usize {
    x as usize
}

fn simplex_of(n: usize, key: &[u32]) -> Result<SimplexMor> {
    SimplexMor::new(n, key.iter().map(|&v| unit(v)).collect())
}

pub fn chain_of(x: &TruncatedSSet, cat: &FinCategory, k: usize, c: u32) -> Chain {
    let key = x.key(k, c);
    if k == 0 {
        LadderObject::point(key[0])
    } else {
        LadderObject::from_chain(cat, key.clone())
    }
}

/// Cells of `model[n]_k` that lie on no face of `[n]`.
fn interior_cells(model: &Model, n: usize, k: usize, limit: usize) -> Result<Vec<Key>> {
    let cells = model.cells(n, k, limit)?;
    if n == 0 {
        return Ok(cells);
    }
    let mut boundary = HashSet::new();
    for a in model.cells(n - 1, k, limit)? {
        for j in 0..=n {
            boundary.insert(model.act(&SimplexMor::delta(n, j), &a));
        }
    }
    Ok(cells.into_iter().filter(|a| !boundary.contains(a)).collect())
}

/// `s_j d_j y = y` for some `j`, for the `ESd`-cell `y ∈ X_{2k+1}`.
fn esd_degenerate(cat: &FinCategory, k: usize, y: &Chain) -> Result<bool> {
    let m = Model::kind(K::ESd, 0);
    let id: Key = (0..=2 * k as u32 + 1).collect();
    for j in 0..k {
        let w = m.degen(k - 1, &m.face(k, &id, j), j);
        if y.restrict(cat, &simplex_of(2 * k + 1, &w)?) == *y {
            return Ok(true);
        }
    }
    Ok(false)
}

/// The same for the `ESdI`-cell `(l, y)`, `y ∈ X_{k+l}`.
fn esdi_degenerate(cat: &FinCategory, k: usize, l: u32, y: &Chain) -> Result<bool> {
    let m = Model::kind(K::ESdI, 0);
    let mut id: Key = vec![l];
    id.extend(0..=k as u32 + l);
    for j in 0..k {
        let w = m.degen(k - 1, &m.face(k, &id, j), j);
        if w[0] == l && y.restrict(cat, &simplex_of(k + unit(l), &w[1..])?) == *y {
            return Ok(true);
        }
    }
    Ok(false)
}

pub fn build_comparison_maps(rc: &ReedyCategory, variant: GammaVariant, d: usize, max_cells: usize, limit: usize) -> Result<ComparisonMaps<'_>> {
    let c = &rc.cat;
    let phi = c.morphism_ids().map(|f| rc.factorize(f)).collect::<Result<Vec<_>>>()?;
    let q = phi.iter().map(|&(s, _)| c.dst(s)).collect();
    let eta = phi.iter().map(|&(_, e)| e).collect();
    let star = build_down_star(rc, d, limit)?;
    let down = match variant {
        GammaVariant::Down => {
            let down = build_down(rc, limit)?;
            let incl = inclusion(rc, &down, &star)?;
            let norm = normalization_functor(rc, &down, &star)?;
            Some((down, incl, norm))
        }
        _ => None,
    };
    let last = match (variant, &down) {
        (GammaVariant::Mp, _) => LastFunctor::on_ladder(rc, &star.ladder).functor,
        (GammaVariant::DownStar, _) => LastFunctor::on_down(rc, &star).functor,
        (GammaVariant::Down, Some((dc, _, _))) => LastFunctor::on_down(rc, dc).functor,
        _ => unreachable!(),
    };
    let s = nerve_truncated(c, d, max_cells)?;
    let gamma = match (variant, &down) {
        (GammaVariant::Mp, _) => &star.ladder.cat,
        (GammaVariant::DownStar, _) => &star.cat,
        (_, Some((dc, _, _))) => &dc.cat,
        _ => unreachable!(),
    };
    let t = nerve_truncated(gamma, d, max_cells)?;
    Ok(ComparisonMaps { rc, variant, d, s, t, phi, q, eta, last, star, down, d_memo: RefCell::default(), edge_memo: RefCell::default() })
}

impl ComparisonMaps<'_> {
    pub fn gamma(&self) -> &FinCategory {
        match (&self.variant, &self.down) {
            (GammaVariant::Mp, _) => &self.star.ladder.cat,
            (GammaVariant::DownStar, _) => &self.star.cat,
            (_, Some((dc, _, _))) => &dc.cat,
            _ => unreachable!(),
        }
    }

    /// A simplex of `N(MP)` over `ψ`: spine arrows go to an MP representative
    /// (the class maximum), longer arrows to composites of those.
    fn lift_chain(&self, psi: &Chain) -> Chain {
        match (&self.variant, &self.down) {
            (GammaVariant::Mp, _) => psi.clone(),
            (GammaVariant::DownStar, _) => {
                LadderObject { base: psi.base, chain: psi.chain.iter().map(|&m| self.star.max_ladder_id(m)).collect() }
            }
            (_, Some((_, incl, _))) => LadderObject {
                base: incl.on_objects[psi.base as usize],
                chain: psi.chain.iter().map(|&m| self.star.max_ladder_id(incl.on_morphisms[m as usize])).collect(),
            },
            _ => unreachable!(),
        }
    }

    fn project(&self, m: &LadderMorphism) -> Result<MorId> {
        let missing = || Error::Invalid(format!("{} is not a bounded ladder morphism", m.label(&self.rc.cat)));
        match (&self.variant, &self.down) {
            (GammaVariant::Mp, _) => self.star.ladder.mor_id(m).ok_or_else(missing),
            (GammaVariant::DownStar, _) => self.star.encode(self.rc, m).ok_or_else(missing),
            (_, Some((_, _, norm))) => Ok(norm.on_morphisms[self.star.encode(self.rc, m).ok_or_else(missing)? as usize]),
            _ => unreachable!(),
        }
    }

    fn project_obj(&self, x: &LadderObject) -> Result<ObjId> {
        let id = self.star.obj_id(x).ok_or_else(|| Error::Invalid(format!("{} is not a bounded ladder object", x.label(&self.rc.cat))))?;
        Ok(match &self.down {
            Some((_, _, norm)) => norm.on_objects[id as usize],
            None => id,
        })
    }

    pub fn lambda(&self, psi: &Chain) -> Chain {
        LadderObject {
            base: self.last.on_objects[psi.base as usize],
            chain: psi.chain.iter().map(|&m| self.last.on_morphisms[m as usize]).collect(),
        }
    }

    fn is_weq(&self, m: MorId) -> bool {
        self.rc.cat.is_identity(self.last.on_morphisms[m as usize])
    }

    /// `Q(f, g): Q(u) → Q(v)` for a square `g∘u = v∘f`.
    pub fn q2(&self, f: MorId, g: MorId, u: MorId, v: MorId) -> Result<MorId> {
        let c = &self.rc.cat;
        let (su, eu) = self.phi[u as usize];
        let (sv, ev) = self.phi[v as usize];
        let (s1, d1) = self.rc.factorize(c.comp(sv, f))?;
        let (s2, d2) = self.rc.factorize(c.comp(g, eu))?;
        if c.dst(s1) != c.dst(s2) || s1 != c.comp(s2, su) || c.comp(ev, d1) != d2 {
            return Err(Error::Invalid(format!("factorizations of the square ({}, {}) disagree", c.label(f), c.label(g))));
        }
        Ok(c.comp(d1, s2))
    }

    fn d_vertex(&self, phi: &Chain, v: &DcpVertex) -> Result<LadderObject> {
        let c = &self.rc.cat;
        let x = unit(v.x);
        let us: Vec<MorId> = v.alpha.iter().map(|&a| phi.link(c, x, unit(a))).collect();
        let idx = c.id(phi.at(c, x));
        let chain = (0..us.len() - 1)
            .map(|j| self.q2(idx, phi.link(c, unit(v.alpha[j]), unit(v.alpha[j + 1])), us[j], us[j + 1]))
            .collect::<Result<Vec<_>>>()?;
        Ok(LadderObject { base: self.q[us[0] as usize], chain })
    }

    fn d_edge(&self, phi: &Chain, v: &DcpVertex, w: &DcpVertex, beta: &[u32]) -> Result<LadderMorphism> {
        let c = &self.rc.cat;
        let (src, dst) = (self.d_vertex(phi, v)?, self.d_vertex(phi, w)?);
        let (x, x2) = (unit(v.x), unit(w.x));
        let f = phi.link(c, x, x2);
        let theta = v
            .alpha
            .iter()
            .map(|&a| {
                let a = unit(a);
                self.q2(f, c.id(phi.at(c, a)), phi.link(c, x, a), phi.link(c, x2, a))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(LadderMorphism { alpha: simplex_of(dst.len(), beta)?, src, dst, theta })
    }

    /// `D_φ` on a `Dcp` key.
    pub fn d_on(&self, phi: &Chain, key: &[u32]) -> Result<Chain> {
        let s = DcpString::decode(key);
        self.d_string(phi, &s)
    }

    fn d_string(&self, phi: &Chain, s: &DcpString) -> Result<Chain> {
        let memo_key = (phi.clone(), s.clone());
        if let Some(hit) = self.d_memo.borrow().get(&memo_key) {
            return Ok(hit.clone());
        }
        let out = self.d_string_uncached(phi, s)?;
        self.d_memo.borrow_mut().insert(memo_key, out.clone());
        Ok(out)
    }

    fn d_string_uncached(&self, phi: &Chain, s: &DcpString) -> Result<Chain> {
        let base = self.project_obj(&self.d_vertex(phi, &s.verts[0])?)?;
        let chain = s
            .betas
            .iter()
            .enumerate()
            .map(|(i, b)| self.project(&self.d_edge(phi, &s.verts[i], &s.verts[i + 1], b)?))
            .collect::<Result<Vec<_>>>()?;
        Ok(LadderObject { base, chain })
    }

    /// The image of `(0, (x, α)) → (1, y)` in MP terms.
    fn zero_to_one(&self, psi: &Chain, lp: &Chain, v: &DcpVertex, y: usize) -> Result<LadderMorphism> {
        let (c, mp) = (&self.rc.cat, &self.star.ladder);
        let lifted = self.lift_chain(psi);
        let dst = mp.object(lifted.at(&mp.cat, y)).clone();
        let src = self.d_vertex(lp, v)?;
        let mut beta = Vec::with_capacity(v.alpha.len());
        let mut theta = Vec::with_capacity(v.alpha.len());
        for &a in &v.alpha {
            let a = unit(a);
            let l = mp.morphism(lifted.link(&mp.cat, a, y));
            let top = l.alpha.m;
            beta.push(l.alpha.at(top));
            theta.push(c.comp(l.theta[top], self.eta[lp.link(c, unit(v.x), a) as usize]));
        }
        Ok(LadderMorphism { alpha: SimplexMor::new(dst.len(), beta)?, src, dst, theta })
    }

    /// `Dᴵ_ψ` on a `DcpI` key.
    pub fn di_on(&self, psi: &Chain, key: &[u32]) -> Result<Chain> {
        let g = self.gamma();
        let s = DcpIString::decode(key);
        let lp = self.lambda(psi);
        let z = &s.zero;
        if z.verts.is_empty() {
            return Ok(psi.restrict(g, &simplex_of(psi.len(), &s.ones)?));
        }
        let mut out = self.d_string(&lp, z)?;
        if let Some(&y) = s.ones.first() {
            let v = z.verts.last().expect("nonempty");
            let memo_key = (psi.clone(), v.clone(), y);
            let hit = self.edge_memo.borrow().get(&memo_key).copied();
            let e = match hit {
                Some(e) => e,
                None => {
                    let e = self.project(&self.zero_to_one(psi, &lp, v, unit(y))?)?;
                    self.edge_memo.borrow_mut().insert(memo_key, e);
                    e
                }
            };
            out.chain.push(e);
            for w in s.ones.windows(2) {
                out.chain.push(psi.link(g, unit(w[0]), unit(w[1])));
            }
        }
        Ok(out)
    }

    /// `E_φ` on an `ESd′` key.
    pub fn e_on(&self, phi: &Chain, key: &[u32]) -> Result<Chain> {
        let c = &self.rc.cat;
        let p: Vec<(usize, usize)> = key.chunks(2).map(|w| (unit(w[0]), unit(w[1]))).collect();
        let us: Vec<MorId> = p.iter().map(|&(a, b)| phi.link(c, a, b)).collect();
        let chain = p
            .windows(2)
            .enumerate()
            .map(|(i, w)| self.q2(phi.link(c, w[0].0, w[1].0), phi.link(c, w[0].1, w[1].1), us[i], us[i + 1]))
            .collect::<Result<Vec<_>>>()?;
        Ok(LadderObject { base: self.q[us[0] as usize], chain })
    }

    /// `Eᴵ_ψ` on an `ESdI′` key: drop the tags, then `E_{λψ}`.
    pub fn ei_on(&self, psi: &Chain, key: &[u32]) -> Result<Chain> {
        let pairs: Key = key.chunks(3).flat_map(|w| [w[1], w[2]]).collect();
        self.e_on(&self.lambda(psi), &pairs)
    }

    /// Runs `f` over `(ψ, a)` with `ψ` non-degenerate in `x` and `a` interior in `model[n]_k`.
    fn over_nodes(
        &self,
        x: &TruncatedSSet,
        cat: &FinCategory,
        model: &Model,
        levels: &[usize],
        limit: usize,
        mut f: impl FnMut(&Chain, &Key, usize) -> Result<Option<String>>,
    ) -> Result<Option<String>> {
        for n in 0..=self.d.min(x.dim) {
            let cells: Vec<(usize, Vec<Key>)> = levels.iter().map(|&k| Ok((k, interior_cells(model, n, k, limit)?))).collect::<Result<_>>()?;
            for c in x.nondeg_cells(n) {
                let psi = chain_of(x, cat, n, c);
                for (k, keys) in &cells {
                    for a in keys {
                        if let Some(w) = f(&psi, a, *k)? {
                            return Ok(Some(format!("at {} on {a:?}: {w}", psi.label(cat))));
                        }
                    }
                }
            }
        }
        Ok(None)
    }

    /// Compatibility of a node-level map with faces and degeneracies of the key.
    fn simplicial(
        &self,
        x: &TruncatedSSet,
        src_cat: &FinCategory,
        dst_cat: &FinCategory,
        model: &Model,
        filter: impl Fn(usize, &Key) -> bool,
        eval: impl Fn(&Chain, &[u32]) -> Result<Chain>,
        limit: usize,
    ) -> Result<Option<String>> {
        self.over_nodes(x, src_cat, model, &[0, 1, 2], limit, |psi, a, k| {
            if !filter(k, a) {
                return Ok(None);
            }
            let img = eval(psi, a)?;
            if img.len() != k {
                return Ok(Some(format!("image has dimension {}", img.len())));
            }
            for j in 0..=k {
                if k > 0 && eval(psi, &model.face(k, a, j))? != img.restrict(dst_cat, &SimplexMor::delta(k, j)) {
                    return Ok(Some(format!("face {j}")));
                }
                if k < 2 && eval(psi, &model.degen(k, a, j))? != img.restrict(dst_cat, &SimplexMor::sigma(k, j)) {
                    return Ok(Some(format!("degeneracy {j}")));
                }
            }
            Ok(None)
        })
    }

    /// `M_{ψ∘θ}(a) = M_ψ(θ_* a)` for cofaces at non-degenerate `ψ` and codegeneracies at all `ψ`.
    fn natural(
        &self,
        x: &TruncatedSSet,
        cat: &FinCategory,
        model: &Model,
        filter: impl Fn(usize, &Key) -> bool,
        eval: impl Fn(&Chain, &[u32]) -> Result<Chain>,
        limit: usize,
    ) -> Result<Option<String>> {
        let top = self.d.min(x.dim);
        let mut cells: Vec<Vec<Key>> = Vec::with_capacity(top + 1);
        for m in 0..=top {
            let mut level = Vec::new();
            for k in 0..=1 {
                level.extend(model.cells(m, k, limit)?.into_iter().filter(|a| filter(k, a)));
            }
            cells.push(level);
        }
        let compare = |psi: &Chain, th: &SimplexMor, m: usize| -> Result<Option<String>> {
            let pf = psi.restrict(cat, th);
            for a in &cells[m] {
                if eval(&pf, a)? != eval(psi, &model.act(th, a))? {
                    return Ok(Some(format!("along {th} at {} on {a:?}", psi.label(cat))));
                }
            }
            Ok(None)
        };
        for n in 1..=top {
            for c in x.nondeg_cells(n) {
                let psi = chain_of(x, cat, n, c);
                for j in 0..=n {
                    if let Some(w) = compare(&psi, &SimplexMor::delta(n, j), n - 1)? {
                        return Ok(Some(w));
                    }
                }
            }
        }
        for n in 0..top {
            for c in 0..x.num_cells(n) as u32 {
                let psi = chain_of(x, cat, n, c);
                for j in 0..=n {
                    if let Some(w) = compare(&psi, &SimplexMor::sigma(n, j), n + 1)? {
                        return Ok(Some(w));
                    }
                }
            }
        }
        Ok(None)
    }

    /// Functoriality of `Q` on squares and preservation of `C₋` and `C₊`.
    pub fn check_gadget(&self) -> Result<Option<String>> {
        let c = &self.rc.cat;
        let mut squares: Vec<(MorId, MorId, MorId, MorId)> = Vec::new();
        for u in c.morphism_ids() {
            for v in c.morphism_ids() {
                for &f in c.hom(c.src(u), c.src(v)) {
                    for &g in c.hom(c.dst(u), c.dst(v)) {
                        if c.comp(g, u) == c.comp(v, f) {
                            squares.push((f, g, u, v));
                        }
                    }
                }
            }
        }
        for &(f, g, u, v) in &squares {
            let qq = self.q2(f, g, u, v)?;
            if c.src(qq) != self.q[u as usize] || c.dst(qq) != self.q[v as usize] {
                return Ok(Some(format!("Q({}, {}) has the wrong ends", c.label(f), c.label(g))));
            }
            if self.rc.is_minus(f) && !self.rc.is_minus(qq) {
                return Ok(Some(format!("Q({}, {}) leaves C₋", c.label(f), c.label(g))));
            }
            if self.rc.is_plus(g) && !self.rc.is_plus(qq) {
                return Ok(Some(format!("Q({}, {}) leaves C₊", c.label(f), c.label(g))));
            }
            if f == c.id(c.src(u)) && g == c.id(c.dst(u)) && u == v && !c.is_identity(qq) {
                return Ok(Some(format!("Q(id, id) at {} is not an identity", c.label(u))));
            }
        }
        for &(f, g, u, v) in &squares {
            for &(f2, g2, u2, w) in &squares {
                if u2 != v {
                    continue;
                }
                let lhs = self.q2(c.comp(f2, f), c.comp(g2, g), u, w)?;
                if lhs != c.comp(self.q2(f2, g2, v, w)?, self.q2(f, g, u, v)?) {
                    return Ok(Some(format!("Q does not respect composition at {} → {} → {}", c.label(u), c.label(v), c.label(w))));
                }
            }
        }
        Ok(None)
    }

    /// All properties, one record each.
    pub fn check(&self, limit: usize) -> SuiteReport {
        let mut rep = SuiteReport::new(format!("comparison {:?} d={}", self.variant, self.d));
        let (c, g) = (&self.rc.cat, self.gamma());
        let (s, t) = (&self.s, &self.t);
        let b = self.d;
        let dcp = Model::kind(K::Dcp, b);
        let dcpi = Model::kind(K::DcpI, b);
        let esdp = Model::kind(K::ESdP, b);
        let esdpi = Model::kind(K::ESdPI, b);
        let delta = Model::new(Shape::Delta, b);
        let cyl = Model::new(Shape::Cyl, b);
        rep.note(format!("S = N(C): {:?} cells, T = N(Γ): {:?} cells", s.cell_profile(), t.cell_profile()));
        rep.run("Q functorial, preserves C₋ and C₊", || self.check_gadget());
        rep.run("D simplicial", || self.simplicial(s, c, g, &dcp, |_, _| true, |p, a| self.d_on(p, a), limit));
        // On cells entirely in one part Dᴵ is D∘Dcp(λ) or ψ itself, so only mixed cells need a separate check.
        let mixed = |_: usize, a: &Key| a[1] >= 1 && a[1] < a[0];
        rep.run("Dᴵ simplicial", || self.simplicial(t, g, g, &dcpi, mixed, |p, a| self.di_on(p, a), limit));
        rep.run("E simplicial", || self.simplicial(s, c, c, &esdp, |_, _| true, |p, a| self.e_on(p, a), limit));
        rep.run("Eᴵ simplicial", || self.simplicial(t, g, c, &esdpi, |_, _| true, |p, a| self.ei_on(p, a), limit));
        rep.run("D natural", || self.natural(s, c, &dcp, |_, _| true, |p, a| self.d_on(p, a), limit));
        rep.run("Dᴵ natural", || self.natural(t, g, &dcpi, mixed, |p, a| self.di_on(p, a), limit));
        rep.run("E natural", || self.natural(s, c, &esdp, |_, _| true, |p, a| self.e_on(p, a), limit));
        rep.run("Eᴵ natural", || self.natural(t, g, &esdpi, |_, _| true, |p, a| self.ei_on(p, a), limit));
        let levels = [0, 1];
        rep.run("diagram: λ∘D = E∘(ESd→ESd′)∘(Dcp→ESd)", || {
            self.over_nodes(s, c, &dcp, &levels, limit, |p, a, k| {
                let lhs = self.lambda(&self.d_on(p, a)?);
                let rhs = self.e_on(p, &Connecting::ESdToESdP.apply(0, k, &Connecting::DcpToESd.apply(0, k, a)))?;
                Ok((lhs != rhs).then(|| format!("{} vs {}", lhs.label(c), rhs.label(c))))
            })
        });
        rep.run("diagram: λ∘Dᴵ = Eᴵ∘(ESdI→ESdI′)∘(DcpI→ESdI)", || {
            self.over_nodes(t, g, &dcpi, &levels, limit, |p, a, k| {
                let lhs = self.lambda(&self.di_on(p, a)?);
                let rhs = self.ei_on(p, &Connecting::ESdIToESdPI.apply(0, k, &Connecting::DcpIToESdI.apply(0, k, a)))?;
                Ok((lhs != rhs).then(|| format!("{} vs {}", lhs.label(c), rhs.label(c))))
            })
        });
        rep.run("diagram: Dᴵ∘(Dcp→DcpI) = D∘Dcp(λ)", || {
            self.over_nodes(t, g, &dcp, &levels, limit, |p, a, k| {
                let lhs = self.di_on(p, &Connecting::DcpToDcpI.apply(0, k, a))?;
                let rhs = self.d_on(&self.lambda(p), a)?;
                Ok((lhs != rhs).then(|| format!("{} vs {}", lhs.label(g), rhs.label(g))))
            })
        });
        rep.run("diagram: Eᴵ∘(ESd′→ESdI′) = E∘ESd′(λ)", || {
            self.over_nodes(t, g, &esdp, &levels, limit, |p, a, k| {
                let lhs = self.ei_on(p, &Connecting::ESdPToESdPI.apply(0, k, a))?;
                let rhs = self.e_on(&self.lambda(p), a)?;
                Ok((lhs != rhs).then(|| format!("{} vs {}", lhs.label(c), rhs.label(c))))
            })
        });
        rep.run("Dᴵ retracts T → DcpI T", || {
            self.over_nodes(t, g, &delta, &levels, limit, |p, a, k| {
                let lhs = self.di_on(p, &Connecting::XToDcpI.apply(0, k, a))?;
                let rhs = p.restrict(g, &simplex_of(p.len(), a)?);
                Ok((lhs != rhs).then(|| format!("{} vs {}", lhs.label(g), rhs.label(g))))
            })
        });
        rep.run("E retracts S → ESd′ S", || {
            self.over_nodes(s, c, &delta, &levels, limit, |p, a, k| {
                let lhs = self.e_on(p, &Connecting::XToESdP.apply(0, k, a))?;
                let rhs = p.restrict(c, &simplex_of(p.len(), a)?);
                Ok((lhs != rhs).then(|| format!("{} vs {}", lhs.label(c), rhs.label(c))))
            })
        });
        rep.run("Eᴵ∘(T×Δ1→ESdI′ T) = λ∘proj", || {
            self.over_nodes(t, g, &cyl, &levels, limit, |p, a, k| {
                let lhs = self.ei_on(p, &Connecting::CylToESdPI.apply(0, k, a))?;
                let vs: Key = a.chunks(2).map(|w| w[0]).collect();
                let rhs = self.lambda(&p.restrict(g, &simplex_of(p.len(), &vs)?));
                Ok((lhs != rhs).then(|| format!("{} vs {}", lhs.label(c), rhs.label(c))))
            })
        });
        rep.run("D sends collapsed edges to weq", || {
            self.over_nodes(s, c, &dcp, &[1], limit, |p, a, _| {
                let y = p.restrict(c, &simplex_of(p.len(), &Connecting::DcpToESd.apply(0, 1, a))?);
                if !esd_degenerate(c, 1, &y)? {
                    return Ok(None);
                }
                let e = self.d_on(p, a)?;
                Ok((!self.is_weq(e.chain[0])).then(|| format!("{} is not a weak equivalence", g.label(e.chain[0]))))
            })
        });
        rep.run("Dᴵ sends collapsed and 0-skeleton edges to weq", || {
            self.over_nodes(t, g, &dcpi, &[1], limit, |p, a, _| {
                let key = Connecting::DcpIToESdI.apply(0, 1, a);
                let l = key[0];
                let y = p.restrict(g, &simplex_of(p.len(), &key[1..])?);
                let in_sk0 = y.chain.iter().all(|&m| g.is_identity(m));
                if !in_sk0 && !esdi_degenerate(g, 1, l, &y)? {
                    return Ok(None);
                }
                let e = self.di_on(p, a)?;
                Ok((!self.is_weq(e.chain[0])).then(|| format!("{} is not a weak equivalence", g.label(e.chain[0]))))
            })
        });
        rep
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::w3;
    use crate::corpus::w3_ids::*;

    #[test]
    fn gadget_on_w3() {
        let rc = w3();
        let cm = build_comparison_maps(&rc, GammaVariant::Down, 2, 1 << 20, 1 << 20).unwrap();
        assert_eq!(cm.check_gadget().unwrap(), None);
        // g∘f lies in C₊, so it factors through its source; g lies in C₋.
        assert_eq!(cm.q[GF as usize], 0);
        assert_eq!(cm.eta[GF as usize], GF);
        assert_eq!(cm.q[G as usize], 1);
        assert_eq!(cm.q2(F, ID1, GF, G).unwrap(), GF);
    }

    #[test]
    fn e_on_the_edge_f() {
        let rc = w3();
        let cm = build_comparison_maps(&rc, GammaVariant::Mp, 2, 1 << 20, 1 << 20).unwrap();
        let phi = LadderObject::from_chain(&rc.cat, vec![F]);
        let bases: Vec<ObjId> = [[0, 0], [0, 1], [1, 1]].iter().map(|k| cm.e_on(&phi, k).unwrap().base).collect();
        assert_eq!(bases, vec![0, 0, 2]);
    }

    #[test]
    fn down_variant_passes() {
        let rc = w3();
        let cm = build_comparison_maps(&rc, GammaVariant::Down, 2, 1 << 20, 1 << 20).unwrap();
        let rep = cm.check(1 << 20);
        assert!(rep.passed(), "{rep}");
    }

    #[test]
    fn naturality_check_rejects_a_constant_map() {
        let rc = w3();
        let cm = build_comparison_maps(&rc, GammaVariant::Down, 2, 1 << 20, 1 << 20).unwrap();
        let c = &rc.cat;
        let esdp = Model::kind(K::ESdP, 2);
        let bad = cm.natural(&cm.s, c, &esdp, |_, _| true, |p, _| Ok(LadderObject::point(p.at(c, 0))), 1 << 20).unwrap();
        assert!(bad.is_some());
        let good = cm.natural(&cm.s, c, &esdp, |_, _| true, |p, a| cm.e_on(p, a), 1 << 20).unwrap();
        assert_eq!(good, None);
    }
}

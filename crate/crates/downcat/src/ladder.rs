//! Skew-ladder categories of chains in `C₋`, their hom-posets and the
//! `(Γ₋, Γ₊)` structure.

use std::collections::HashMap;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::fincat::{FinCategory, MorId, Morphism, ObjId};
use crate::reedy::ReedyCategory;
use crate::simplex::SimplexMor;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, clap::ValueEnum)]
#[serde(rename_all = "UPPERCASE")]
pub enum LadderVariant {
    /// Arbitrary chains and components.
    All,
    /// Chains in `C₋`, components in `C₊`.
    Mp,
    /// Chains of non-identities in `C₋`, components in `C₊`.
    Strict,
}

/// A chain `X(0) → X(1) → ... → X(n)`; `base` is `X(0)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LadderObject {
    pub base: ObjId,
    pub chain: Vec<MorId>,
}

impl LadderObject {
    pub fn point(x: ObjId) -> Self {
        LadderObject { base: x, chain: Vec::new() }
    }

    pub fn from_chain(c: &FinCategory, chain: Vec<MorId>) -> Self {
        assert!(!chain.is_empty());
        LadderObject { base: c.src(chain[0]), chain }
    }

    pub fn len(&self) -> usize {
        self.chain.len()
    }

    pub fn is_empty(&self) -> bool {
        self.chain.is_empty()
    }

    /// `X(i)`.
    pub fn at(&self, c: &FinCategory, i: usize) -> ObjId {
        if i == 0 {
            self.base
        } else {
            c.dst(self.chain[i - 1])
        }
    }

    pub fn last(&self, c: &FinCategory) -> ObjId {
        self.at(c, self.len())
    }

    /// `X(j → k)` for `j ≤ k`.
    pub fn link(&self, c: &FinCategory, j: usize, k: usize) -> MorId {
        debug_assert!(j <= k && k <= self.len());
        c.comp_path(self.at(c, j), &self.chain[j..k])
    }

    /// `X ∘ a` for a monotone `a: [l] → [n]`.
    pub fn restrict(&self, c: &FinCategory, a: &SimplexMor) -> LadderObject {
        let base = self.at(c, a.at(0));
        let chain = (0..a.m).map(|j| self.link(c, a.at(j), a.at(j + 1))).collect();
        LadderObject { base, chain }
    }

    pub fn sort_key(&self) -> (usize, &[MorId], ObjId) {
        (self.len(), &self.chain, self.base)
    }

    pub fn label(&self, c: &FinCategory) -> String {
        if self.chain.is_empty() {
            format!("[0]:{}", c.obj_label(self.base))
        } else {
            let ls: Vec<&str> = self.chain.iter().map(|&m| c.label(m)).collect();
            format!("[{}]:{}", self.len(), ls.join(","))
        }
    }
}

/// A pair `(α, θ)` with `θ_i : X(i) → Y(α(i))`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LadderMorphism {
    pub src: LadderObject,
    pub dst: LadderObject,
    pub alpha: SimplexMor,
    pub theta: Vec<MorId>,
}

impl LadderMorphism {
    pub fn label(&self, c: &FinCategory) -> String {
        let vs: Vec<String> = self.alpha.values.iter().map(|v| v.to_string()).collect();
        let ts: Vec<&str> = self.theta.iter().map(|&m| c.label(m)).collect();
        format!("({}|{})", vs.join(""), ts.join(","))
    }

    pub fn is_parallel(&self, other: &LadderMorphism) -> bool {
        self.src == other.src && self.dst == other.dst
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum GammaClass {
    GammaMinus,
    GammaPlus,
    Neither,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct GammaInfo {
    pub class: GammaClass,
    pub is_identity: bool,
}

/// Result of comparing `↑m` with the interval `[α, α′]` of `Hom_Δ`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IntervalCheck {
    pub up_size: usize,
    pub interval_size: usize,
    pub bijective: bool,
    pub order_iso: bool,
}

impl IntervalCheck {
    pub fn passed(&self) -> bool {
        self.bijective && self.order_iso && self.up_size == self.interval_size
    }
}

/// Operations of one ladder variant over a fixed Reedy category.
#[derive(Clone, Copy, Debug)]
pub struct Ladder<'a> {
    pub rc: &'a ReedyCategory,
    pub variant: LadderVariant,
}

impl<'a> Ladder<'a> {
    pub fn new(rc: &'a ReedyCategory, variant: LadderVariant) -> Self {
        Ladder { rc, variant }
    }

    fn c(&self) -> &'a FinCategory {
        &self.rc.cat
    }

    fn link_ok(&self, m: MorId) -> bool {
        match self.variant {
            LadderVariant::All => true,
            LadderVariant::Mp => self.rc.is_minus(m),
            LadderVariant::Strict => self.rc.is_minus(m) && !self.c().is_identity(m),
        }
    }

    fn component_ok(&self, m: MorId) -> bool {
        match self.variant {
            LadderVariant::All => true,
            _ => self.rc.is_plus(m),
        }
    }

    pub fn is_object(&self, x: &LadderObject) -> bool {
        let c = self.c();
        (x.base as usize) < c.num_objects()
            && x.chain.iter().enumerate().all(|(i, &m)| {
                (m as usize) < c.num_morphisms() && self.link_ok(m) && c.src(m) == x.at(c, i)
            })
    }

    /// All objects with chain length at most `max_len`, in canonical order.
    pub fn objects(&self, max_len: usize, limit: usize) -> Result<Vec<LadderObject>> {
        let c = self.c();
        let mut out: Vec<LadderObject> = c.objects().map(LadderObject::point).collect();
        let mut frontier = out.clone();
        for _ in 0..max_len {
            let mut next = Vec::new();
            for x in &frontier {
                for m in c.out_of(x.last(c)) {
                    if self.link_ok(m) {
                        let mut chain = x.chain.clone();
                        chain.push(m);
                        next.push(LadderObject { base: x.base, chain });
                    }
                }
            }
            out.extend(next.iter().cloned());
            if out.len() > limit {
                return Err(Error::size("ladder objects", limit));
            }
            frontier = next;
        }
        out.sort_by(|a, b| a.sort_key().cmp(&b.sort_key()));
        Ok(out)
    }

    pub fn identity(&self, x: &LadderObject) -> LadderMorphism {
        let c = self.c();
        LadderMorphism {
            src: x.clone(),
            dst: x.clone(),
            alpha: SimplexMor::identity(x.len()),
            theta: (0..=x.len()).map(|i| c.id(x.at(c, i))).collect(),
        }
    }

    /// Checks endpoints, the variant's constraints and naturality on consecutive indices.
    pub fn check_morphism(&self, m: &LadderMorphism) -> Result<()> {
        let c = self.c();
        let (x, y) = (&m.src, &m.dst);
        if m.alpha.m != x.len() || m.alpha.n != y.len() || m.theta.len() != x.len() + 1 {
            return Err(Error::Invalid("ladder morphism has wrong shape".into()));
        }
        for (i, &t) in m.theta.iter().enumerate() {
            if c.src(t) != x.at(c, i) || c.dst(t) != y.at(c, m.alpha.at(i)) {
                return Err(Error::Invalid(format!("component {i} has wrong endpoints")));
            }
            if !self.component_ok(t) {
                return Err(Error::Invalid(format!("component {i} is not in C+")));
            }
        }
        for i in 0..x.len() {
            let lhs = c.comp(y.link(c, m.alpha.at(i), m.alpha.at(i + 1)), m.theta[i]);
            let rhs = c.comp(m.theta[i + 1], x.chain[i]);
            if lhs != rhs {
                return Err(Error::NotNatural(format!("square {i}->{} fails", i + 1)));
            }
        }
        Ok(())
    }

    /// Components `θ` over a fixed `α`, in lexicographic order.
    pub fn thetas(&self, x: &LadderObject, y: &LadderObject, alpha: &SimplexMor) -> Vec<Vec<MorId>> {
        let c = self.c();
        let mut out = Vec::new();
        let mut cur: Vec<MorId> = Vec::with_capacity(x.len() + 1);
        self.theta_dfs(c, x, y, alpha, &mut cur, &mut out);
        out
    }

    fn theta_dfs(
        &self,
        c: &FinCategory,
        x: &LadderObject,
        y: &LadderObject,
        alpha: &SimplexMor,
        cur: &mut Vec<MorId>,
        out: &mut Vec<Vec<MorId>>,
    ) {
        let i = cur.len();
        if i == x.len() + 1 {
            out.push(cur.clone());
            return;
        }
        for &t in c.hom(x.at(c, i), y.at(c, alpha.at(i))) {
            if !self.component_ok(t) {
                continue;
            }
            if i > 0 {
                let lhs = c.comp(y.link(c, alpha.at(i - 1), alpha.at(i)), cur[i - 1]);
                if lhs != c.comp(t, x.chain[i - 1]) {
                    continue;
                }
            }
            cur.push(t);
            self.theta_dfs(c, x, y, alpha, cur, out);
            cur.pop();
        }
    }

    /// Every morphism `x → y`, ordered by `α` then `θ`.
    pub fn homs(&self, x: &LadderObject, y: &LadderObject) -> Vec<LadderMorphism> {
        let mut out = Vec::new();
        for alpha in SimplexMor::all(x.len(), y.len()) {
            for theta in self.thetas(x, y, &alpha) {
                out.push(LadderMorphism { src: x.clone(), dst: y.clone(), alpha: alpha.clone(), theta });
            }
        }
        out
    }

    /// `m2 ∘ m1`.
    pub fn compose(&self, m2: &LadderMorphism, m1: &LadderMorphism) -> Result<LadderMorphism> {
        if m1.dst != m2.src {
            let c = self.c();
            return Err(Error::NotComposable { g: m2.label(c), f: m1.label(c) });
        }
        Ok(self.compose_unchecked(m2, m1))
    }

    pub(crate) fn compose_unchecked(&self, m2: &LadderMorphism, m1: &LadderMorphism) -> LadderMorphism {
        let c = self.c();
        LadderMorphism {
            src: m1.src.clone(),
            dst: m2.dst.clone(),
            alpha: m2.alpha.after(&m1.alpha),
            theta: m1.theta.iter().enumerate().map(|(i, &t)| c.comp(m2.theta[m1.alpha.at(i)], t)).collect(),
        }
    }

    /// The pointwise order on a hom-set.
    pub fn hom_leq(&self, m1: &LadderMorphism, m2: &LadderMorphism) -> Result<bool> {
        if !m1.is_parallel(m2) {
            return Err(Error::NotParallel(format!("{} vs {}", m1.label(self.c()), m2.label(self.c()))));
        }
        Ok(self.leq_unchecked(m1, m2))
    }

    pub(crate) fn leq_unchecked(&self, m1: &LadderMorphism, m2: &LadderMorphism) -> bool {
        let c = self.c();
        m1.alpha.leq(&m2.alpha)
            && (0..m1.theta.len()).all(|i| {
                m2.theta[i] == c.comp(m1.dst.link(c, m1.alpha.at(i), m2.alpha.at(i)), m1.theta[i])
            })
    }

    /// The maximum of the upward interval `↑m`.
    pub fn up_max(&self, m: &LadderMorphism) -> LadderMorphism {
        let c = self.c();
        let y = &m.dst;
        let n = y.len();
        let mut values = Vec::with_capacity(m.alpha.m + 1);
        let mut theta = Vec::with_capacity(m.theta.len());
        for (i, &t) in m.theta.iter().enumerate() {
            let a = m.alpha.at(i);
            let k = match self.variant {
                LadderVariant::All => n,
                _ => (a..=n).rev().find(|&k| self.rc.is_plus(c.comp(y.link(c, a, k), t))).unwrap_or(a),
            };
            values.push(k);
            theta.push(c.comp(y.link(c, a, k), t));
        }
        LadderMorphism { src: m.src.clone(), dst: m.dst.clone(), alpha: SimplexMor::raw(n, values), theta }
    }

    pub fn are_equivalent(&self, m1: &LadderMorphism, m2: &LadderMorphism) -> Result<bool> {
        if !m1.is_parallel(m2) {
            return Err(Error::NotParallel(format!("{} vs {}", m1.label(self.c()), m2.label(self.c()))));
        }
        Ok(self.up_max(m1) == self.up_max(m2))
    }

    /// Compares `↑m` with `[α, α′]` through the projection to `α`.
    pub fn upward_interval_check(&self, m: &LadderMorphism) -> IntervalCheck {
        let top = self.up_max(m);
        let up: Vec<LadderMorphism> =
            self.homs(&m.src, &m.dst).into_iter().filter(|m2| self.leq_unchecked(m, m2)).collect();
        let interval: Vec<SimplexMor> = SimplexMor::all(m.alpha.m, m.alpha.n)
            .into_iter()
            .filter(|b| m.alpha.leq(b) && b.leq(&top.alpha))
            .collect();
        let mut images: Vec<&SimplexMor> = up.iter().map(|u| &u.alpha).collect();
        images.sort();
        let injective = images.windows(2).all(|w| w[0] != w[1]);
        let onto = interval.iter().all(|b| images.binary_search(&b).is_ok());
        let inside = images.iter().all(|b| interval.contains(b));
        let order_iso = up.iter().all(|u| {
            up.iter().all(|v| self.leq_unchecked(u, v) == u.alpha.leq(&v.alpha))
        });
        IntervalCheck {
            up_size: up.len(),
            interval_size: interval.len(),
            bijective: injective && onto && inside,
            order_iso,
        }
    }

    pub fn gamma_classify(&self, m: &LadderMorphism) -> GammaInfo {
        let c = self.c();
        let is_identity = m.src == m.dst && m.alpha.is_identity() && m.theta.iter().all(|&t| c.is_identity(t));
        let class = if m.alpha.is_injective() {
            GammaClass::GammaPlus
        } else if m.alpha.is_surjective() && m.theta.iter().all(|&t| c.is_identity(t)) {
            GammaClass::GammaMinus
        } else {
            GammaClass::Neither
        };
        GammaInfo { class, is_identity }
    }

    /// `m = mPlus ∘ mMinus` through `([l], X∘ε)` with `ε` the largest section.
    pub fn gamma_factorize(&self, m: &LadderMorphism) -> Result<(LadderMorphism, LadderMorphism)> {
        let c = self.c();
        let (sigma, delta) = m.alpha.image_factorization();
        let eps = sigma.largest_section()?;
        let mid = m.src.restrict(c, &eps);
        let minus = LadderMorphism {
            src: m.src.clone(),
            dst: mid.clone(),
            alpha: sigma.clone(),
            theta: (0..=m.src.len()).map(|i| c.id(m.src.at(c, i))).collect(),
        };
        let plus = LadderMorphism {
            src: mid,
            dst: m.dst.clone(),
            alpha: delta,
            theta: eps.values.iter().map(|&i| m.theta[i]).collect(),
        };
        self.check_morphism(&minus)?;
        self.check_morphism(&plus)?;
        Ok((minus, plus))
    }

    /// Every `(Γ₋, Γ₊)` factorization of `m`, found by scanning surjections out of
    /// the source and `Γ₊` morphisms into the target.
    pub fn gamma_factorizations_scan(&self, m: &LadderMorphism) -> Vec<(LadderMorphism, LadderMorphism)> {
        let c = self.c();
        let x = &m.src;
        let mut out = Vec::new();
        for l in 0..=x.len() {
            for sigma in SimplexMor::all(x.len(), l).into_iter().filter(|s| s.is_surjective()) {
                let eps = sigma.largest_section().expect("surjective");
                let mid = x.restrict(c, &eps);
                let minus = LadderMorphism {
                    src: x.clone(),
                    dst: mid.clone(),
                    alpha: sigma,
                    theta: (0..=x.len()).map(|i| c.id(x.at(c, i))).collect(),
                };
                if self.check_morphism(&minus).is_err() || !self.is_object(&mid) {
                    continue;
                }
                for plus in self.homs(&mid, &m.dst) {
                    if plus.alpha.is_injective() && self.compose_unchecked(&plus, &minus) == *m {
                        out.push((minus.clone(), plus));
                    }
                }
            }
        }
        out
    }
}

/// A ladder variant materialized up to a chain-length bound as a finite category.
#[derive(Clone, Debug)]
pub struct LadderCategory {
    pub variant: LadderVariant,
    pub max_len: usize,
    pub objects: Vec<LadderObject>,
    pub morphisms: Vec<LadderMorphism>,
    pub cat: FinCategory,
    obj_index: HashMap<LadderObject, ObjId>,
    mor_index: HashMap<(ObjId, ObjId, Vec<usize>, Vec<MorId>), MorId>,
}

impl LadderCategory {
    pub fn build(rc: &ReedyCategory, variant: LadderVariant, max_len: usize, limit: usize) -> Result<Self> {
        let lad = Ladder::new(rc, variant);
        let objects = lad.objects(max_len, limit)?;
        Self::from_objects(rc, variant, max_len, objects, limit)
    }

    /// The full subcategory on the given objects, which must be closed under the
    /// composites that arise (any bounded family is).
    pub fn from_objects(
        rc: &ReedyCategory,
        variant: LadderVariant,
        max_len: usize,
        objects: Vec<LadderObject>,
        limit: usize,
    ) -> Result<Self> {
        let lad = Ladder::new(rc, variant);
        let c = &rc.cat;
        let obj_index: HashMap<LadderObject, ObjId> =
            objects.iter().enumerate().map(|(i, x)| (x.clone(), i as ObjId)).collect();
        let mut morphisms = Vec::new();
        let mut mor_index = HashMap::new();
        let mut identity = vec![0; objects.len()];
        for (a, x) in objects.iter().enumerate() {
            for (b, y) in objects.iter().enumerate() {
                for m in lad.homs(x, y) {
                    let key = (a as ObjId, b as ObjId, m.alpha.values.clone(), m.theta.clone());
                    if a == b && m == lad.identity(x) {
                        identity[a] = morphisms.len() as MorId;
                    }
                    mor_index.insert(key, morphisms.len() as MorId);
                    morphisms.push(m);
                    if morphisms.len() > limit {
                        return Err(Error::size("ladder morphisms", limit));
                    }
                }
            }
        }
        let fin_morphisms = morphisms
            .iter()
            .map(|m| Morphism { src: obj_index[&m.src], dst: obj_index[&m.dst], label: m.label(c) })
            .collect();
        let labels = objects.iter().map(|x| x.label(c)).collect();
        let lookup = |m: &LadderMorphism| -> MorId {
            mor_index[&(obj_index[&m.src], obj_index[&m.dst], m.alpha.values.clone(), m.theta.clone())]
        };
        let cat = FinCategory::from_fn(labels, fin_morphisms, identity, |g, f| {
            lookup(&lad.compose_unchecked(&morphisms[g as usize], &morphisms[f as usize]))
        })?;
        Ok(LadderCategory { variant, max_len, objects, morphisms, cat, obj_index, mor_index })
    }

    pub fn ladder<'a>(&self, rc: &'a ReedyCategory) -> Ladder<'a> {
        Ladder::new(rc, self.variant)
    }

    pub fn obj_id(&self, x: &LadderObject) -> Option<ObjId> {
        self.obj_index.get(x).copied()
    }

    pub fn mor_id(&self, m: &LadderMorphism) -> Option<MorId> {
        let a = self.obj_id(&m.src)?;
        let b = self.obj_id(&m.dst)?;
        self.mor_index.get(&(a, b, m.alpha.values.clone(), m.theta.clone())).copied()
    }

    pub fn object(&self, x: ObjId) -> &LadderObject {
        &self.objects[x as usize]
    }

    pub fn morphism(&self, m: MorId) -> &LadderMorphism {
        &self.morphisms[m as usize]
    }

    /// `(Γ₋, Γ₊)` as a Reedy structure on the materialized category.
    pub fn gamma_reedy(&self, rc: &ReedyCategory) -> ReedyCategory {
        let lad = self.ladder(rc);
        let mut minus = Vec::with_capacity(self.morphisms.len());
        let mut plus = Vec::with_capacity(self.morphisms.len());
        for m in &self.morphisms {
            let info = lad.gamma_classify(m);
            minus.push(info.is_identity || info.class == GammaClass::GammaMinus);
            plus.push(info.class == GammaClass::GammaPlus);
        }
        ReedyCategory::from_flags(self.cat.clone(), minus, plus)
    }
}

impl fmt::Display for LadderCategory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?} ladder (max_len {}): {}", self.variant, self.max_len, self.cat.summary())
    }
}

/// A hom-poset with its Hasse edges and class maxima.
#[derive(Clone, Debug, Serialize)]
pub struct HomPoset {
    pub elements: Vec<String>,
    pub hasse: Vec<(usize, usize)>,
    /// For each element, the index of its class maximum.
    pub max_of: Vec<usize>,
}

pub fn hom_poset(lad: &Ladder<'_>, x: &LadderObject, y: &LadderObject) -> HomPoset {
    let c = &lad.rc.cat;
    let elems = lad.homs(x, y);
    let n = elems.len();
    let leq: Vec<Vec<bool>> =
        (0..n).map(|i| (0..n).map(|j| lad.leq_unchecked(&elems[i], &elems[j])).collect()).collect();
    let mut hasse = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i != j && leq[i][j] && !(0..n).any(|k| k != i && k != j && leq[i][k] && leq[k][j]) {
                hasse.push((i, j));
            }
        }
    }
    let max_of = elems
        .iter()
        .map(|m| {
            let top = lad.up_max(m);
            elems.iter().position(|e| *e == top).expect("maximum lies in the hom-set")
        })
        .collect();
    HomPoset { elements: elems.iter().map(|m| m.label(c)).collect(), hasse, max_of }
}

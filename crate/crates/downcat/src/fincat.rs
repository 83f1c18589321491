//! Finite categories, functors and natural transformations stored as dense
//! integer tables, together with exhaustive enumeration and quotients.

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};

pub type ObjId = u32;
pub type MorId = u32;

const NONE: u32 = u32::MAX;
const DENSE_LIMIT: usize = 4096;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Morphism {
    pub src: ObjId,
    pub dst: ObjId,
    pub label: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum CompTable {
    Dense { n: usize, cells: Vec<u32> },
    Sparse(HashMap<(MorId, MorId), MorId>),
}

impl CompTable {
    fn new(n: usize) -> Self {
        if n <= DENSE_LIMIT {
            CompTable::Dense { n, cells: vec![NONE; n * n] }
        } else {
            CompTable::Sparse(HashMap::new())
        }
    }

    fn get(&self, g: MorId, f: MorId) -> Option<MorId> {
        match self {
            CompTable::Dense { n, cells } => {
                let v = cells[g as usize * n + f as usize];
                (v != NONE).then_some(v)
            }
            CompTable::Sparse(m) => m.get(&(g, f)).copied(),
        }
    }

    fn set(&mut self, g: MorId, f: MorId, r: MorId) {
        match self {
            CompTable::Dense { n, cells } => cells[g as usize * *n + f as usize] = r,
            CompTable::Sparse(m) => {
                m.insert((g, f), r);
            }
        }
    }
}

/// A finite category. Objects and morphisms carry dense ids; the composition
/// table is total on composable pairs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinCategory {
    objects: Vec<String>,
    morphisms: Vec<Morphism>,
    identity: Vec<MorId>,
    table: CompTable,
    homs: Vec<Vec<MorId>>,
}

impl FinCategory {
    /// Builds a category from explicit tables. Every composable pair must have an
    /// entry; entries on non-composable pairs, out-of-range ids and conflicting
    /// duplicates are load errors. Axioms are not checked here; see
    /// [`FinCategory::validate`].
    pub fn new(
        objects: Vec<String>,
        morphisms: Vec<Morphism>,
        identity: Vec<MorId>,
        compose: impl IntoIterator<Item = (MorId, MorId, MorId)>,
    ) -> Result<Self> {
        let no = objects.len();
        let nm = morphisms.len();
        if identity.len() != no {
            return Err(Error::Parse(format!("{} identities for {} objects", identity.len(), no)));
        }
        for (i, m) in morphisms.iter().enumerate() {
            if m.src as usize >= no || m.dst as usize >= no {
                return Err(Error::Parse(format!("morphism {i} has an unknown endpoint")));
            }
        }
        for (x, &e) in identity.iter().enumerate() {
            if e as usize >= nm {
                return Err(Error::Parse(format!("identity of object {x} is unknown morphism {e}")));
            }
        }
        let mut table = CompTable::new(nm);
        for (g, f, r) in compose {
            if g as usize >= nm || f as usize >= nm || r as usize >= nm {
                return Err(Error::Parse(format!("compose entry ({g},{f},{r}) out of range")));
            }
            if morphisms[f as usize].dst != morphisms[g as usize].src {
                return Err(Error::Parse(format!("compose entry ({g},{f}) on a non-composable pair")));
            }
            match table.get(g, f) {
                Some(old) if old != r => {
                    return Err(Error::Parse(format!("conflicting compose entries for ({g},{f})")));
                }
                _ => table.set(g, f, r),
            }
        }
        let mut homs = vec![Vec::new(); no * no];
        for (i, m) in morphisms.iter().enumerate() {
            homs[m.src as usize * no + m.dst as usize].push(i as MorId);
        }
        let cat = FinCategory { objects, morphisms, identity, table, homs };
        for f in 0..nm as MorId {
            for &g in cat.out_of(cat.dst(f)).iter() {
                if cat.table.get(g, f).is_none() {
                    return Err(Error::Parse(format!(
                        "composable pair ({g},{f}) is missing from the compose table"
                    )));
                }
            }
        }
        Ok(cat)
    }

    /// Builds a category whose composition is given by a closure, called on every
    /// composable pair.
    pub fn from_fn(
        objects: Vec<String>,
        morphisms: Vec<Morphism>,
        identity: Vec<MorId>,
        mut comp: impl FnMut(MorId, MorId) -> MorId,
    ) -> Result<Self> {
        let nm = morphisms.len();
        let mut entries = Vec::new();
        for f in 0..nm {
            for g in 0..nm {
                if morphisms[f].dst == morphisms[g].src {
                    entries.push((g as MorId, f as MorId, comp(g as MorId, f as MorId)));
                }
            }
        }
        Self::new(objects, morphisms, identity, entries)
    }

    pub fn num_objects(&self) -> usize {
        self.objects.len()
    }

    pub fn num_morphisms(&self) -> usize {
        self.morphisms.len()
    }

    pub fn objects(&self) -> impl Iterator<Item = ObjId> + '_ {
        0..self.objects.len() as ObjId
    }

    pub fn morphism_ids(&self) -> impl Iterator<Item = MorId> + '_ {
        0..self.morphisms.len() as MorId
    }

    pub fn obj_label(&self, x: ObjId) -> &str {
        &self.objects[x as usize]
    }

    pub fn obj_labels(&self) -> &[String] {
        &self.objects
    }

    pub fn morphism(&self, m: MorId) -> &Morphism {
        &self.morphisms[m as usize]
    }

    pub fn morphisms(&self) -> &[Morphism] {
        &self.morphisms
    }

    pub fn label(&self, m: MorId) -> &str {
        &self.morphisms[m as usize].label
    }

    pub fn src(&self, m: MorId) -> ObjId {
        self.morphisms[m as usize].src
    }

    pub fn dst(&self, m: MorId) -> ObjId {
        self.morphisms[m as usize].dst
    }

    pub fn id(&self, x: ObjId) -> MorId {
        self.identity[x as usize]
    }

    pub fn identities(&self) -> &[MorId] {
        &self.identity
    }

    pub fn is_identity(&self, m: MorId) -> bool {
        self.identity[self.src(m) as usize] == m
    }

    /// `g ∘ f`, or `None` when the pair is not composable.
    pub fn compose(&self, g: MorId, f: MorId) -> Option<MorId> {
        self.table.get(g, f)
    }

    /// `g ∘ f` for a pair known to be composable.
    pub fn comp(&self, g: MorId, f: MorId) -> MorId {
        self.table.get(g, f).unwrap_or_else(|| panic!("({g},{f}) not composable"))
    }

    /// Composite of a path given first-to-last; the identity of `start` when empty.
    pub fn comp_path(&self, start: ObjId, path: &[MorId]) -> MorId {
        path.iter().fold(self.id(start), |acc, &m| self.comp(m, acc))
    }

    /// Hom-set in ascending id order.
    pub fn hom(&self, a: ObjId, b: ObjId) -> &[MorId] {
        &self.homs[a as usize * self.objects.len() + b as usize]
    }

    /// All morphisms with the given source.
    pub fn out_of(&self, a: ObjId) -> Vec<MorId> {
        (0..self.objects.len() as ObjId).flat_map(|b| self.hom(a, b).iter().copied()).collect()
    }

    /// The two-sided inverse of `m`, if any.
    pub fn inverse(&self, m: MorId) -> Option<MorId> {
        let (a, b) = (self.src(m), self.dst(m));
        self.hom(b, a)
            .iter()
            .copied()
            .find(|&n| self.compose(n, m) == Some(self.id(a)) && self.compose(m, n) == Some(self.id(b)))
    }

    pub fn is_iso(&self, m: MorId) -> bool {
        self.inverse(m).is_some()
    }

    /// Object id by label.
    pub fn find_object(&self, label: &str) -> Option<ObjId> {
        self.objects.iter().position(|l| l == label).map(|i| i as ObjId)
    }

    /// First morphism with the given label.
    pub fn find_morphism(&self, label: &str) -> Option<MorId> {
        self.morphisms.iter().position(|m| m.label == label).map(|i| i as MorId)
    }

    /// Lists every violated axiom. An empty report means the tables form a category.
    pub fn validate(&self) -> ValidationReport {
        let mut report = ValidationReport::default();
        for (x, &e) in self.identity.iter().enumerate() {
            let m = self.morphism(e);
            if m.src as usize != x || m.dst as usize != x {
                report.push(Violation::IdentityEndpoints { obj: x as ObjId });
            }
        }
        let nm = self.num_morphisms() as MorId;
        for f in 0..nm {
            for &g in self.out_of(self.dst(f)).iter() {
                let r = self.comp(g, f);
                if self.src(r) != self.src(f) || self.dst(r) != self.dst(g) {
                    report.push(Violation::EndpointMismatch { g, f });
                }
            }
            if self.compose(self.id(self.dst(f)), f) != Some(f) {
                report.push(Violation::LeftUnit { f });
            }
            if self.compose(f, self.id(self.src(f))) != Some(f) {
                report.push(Violation::RightUnit { f });
            }
        }
        if !report.is_empty() {
            return report;
        }
        for f in 0..nm {
            for &g in self.out_of(self.dst(f)).iter() {
                let gf = self.comp(g, f);
                for &h in self.out_of(self.dst(g)).iter() {
                    if self.comp(h, gf) != self.comp(self.comp(h, g), f) {
                        report.push(Violation::Associativity { h, g, f });
                    }
                }
            }
        }
        report
    }

    /// The dual category: endpoints swapped and composition transposed.
    pub fn opposite(&self) -> FinCategory {
        let morphisms = self
            .morphisms
            .iter()
            .map(|m| Morphism { src: m.dst, dst: m.src, label: m.label.clone() })
            .collect();
        FinCategory::from_fn(self.objects.clone(), morphisms, self.identity.clone(), |g, f| self.comp(f, g))
            .expect("opposite of a loaded category")
    }

    /// Renders a one-line summary.
    pub fn summary(&self) -> String {
        format!("{} objects, {} morphisms", self.num_objects(), self.num_morphisms())
    }
}

impl fmt::Display for FinCategory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "objects: {}", self.objects.join(", "))?;
        for (i, m) in self.morphisms.iter().enumerate() {
            writeln!(f, "  #{i} {}: {} -> {}", m.label, self.objects[m.src as usize], self.objects[m.dst as usize])?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    IdentityEndpoints { obj: ObjId },
    EndpointMismatch { g: MorId, f: MorId },
    LeftUnit { f: MorId },
    RightUnit { f: MorId },
    Associativity { h: MorId, g: MorId, f: MorId },
    /// Reedy-level entries.
    NotWide { which: &'static str, detail: String },
    Factorization { mor: MorId, count: usize },
    DegreeCycle { cycle: Vec<ObjId> },
    Functor(String),
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::IdentityEndpoints { obj } => write!(f, "identity of object {obj} has wrong endpoints"),
            Violation::EndpointMismatch { g, f: ff } => write!(f, "compose({g},{ff}) has wrong endpoints"),
            Violation::LeftUnit { f: ff } => write!(f, "left unit law fails for {ff}"),
            Violation::RightUnit { f: ff } => write!(f, "right unit law fails for {ff}"),
            Violation::Associativity { h, g, f: ff } => write!(f, "associativity fails for ({h},{g},{ff})"),
            Violation::NotWide { which, detail } => write!(f, "{which} is not a wide subcategory: {detail}"),
            Violation::Factorization { mor, count } => {
                write!(f, "morphism {mor} has {count} (minus, plus) factorizations")
            }
            Violation::DegreeCycle { cycle } => write!(f, "degree relation has a cycle {cycle:?}"),
            Violation::Functor(s) => write!(f, "{s}"),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub entries: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn push(&mut self, v: Violation) {
        self.entries.push(v);
    }

    pub fn extend(&mut self, other: ValidationReport) {
        self.entries.extend(other.entries);
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.entries.is_empty() {
            return write!(f, "ok");
        }
        for v in &self.entries {
            writeln!(f, "{v}")?;
        }
        Ok(())
    }
}

/// Standard small categories.
pub mod build {
    use super::*;

    /// The category with no objects.
    pub fn empty() -> FinCategory {
        FinCategory::new(vec![], vec![], vec![], std::iter::empty()).unwrap()
    }

    pub fn terminal() -> FinCategory {
        discrete(1)
    }

    pub fn discrete(k: usize) -> FinCategory {
        poset((0..k).map(|i| i.to_string()).collect(), |a, b| a == b)
    }

    /// The poset on the given labels with order `leq`, which must be a partial order.
    /// Morphisms are the pairs `a ≤ b` in lexicographic order, labelled `a<b` or `id<a>`.
    pub fn poset(labels: Vec<String>, leq: impl Fn(usize, usize) -> bool) -> FinCategory {
        let n = labels.len();
        let mut morphisms = Vec::new();
        let mut idx = HashMap::new();
        let mut identity = vec![0; n];
        for a in 0..n {
            for b in 0..n {
                if leq(a, b) {
                    let label = if a == b { format!("id{}", labels[a]) } else { format!("{}<{}", labels[a], labels[b]) };
                    if a == b {
                        identity[a] = morphisms.len() as MorId;
                    }
                    idx.insert((a, b), morphisms.len() as MorId);
                    morphisms.push(Morphism { src: a as ObjId, dst: b as ObjId, label });
                }
            }
        }
        let ms = morphisms.clone();
        FinCategory::from_fn(labels, morphisms, identity, |g, f| {
            idx[&(ms[f as usize].src as usize, ms[g as usize].dst as usize)]
        })
        .expect("poset tables")
    }

    /// The ordinal `[n] = {0 < 1 < ... < n}` as a category.
    pub fn ordinal(n: usize) -> FinCategory {
        poset((0..=n).map(|i| i.to_string()).collect(), |a, b| a <= b)
    }

    /// Two objects and two mutually inverse arrows.
    pub fn walking_iso() -> FinCategory {
        let objects = vec!["a".to_string(), "b".to_string()];
        let morphisms = vec![
            Morphism { src: 0, dst: 0, label: "ida".into() },
            Morphism { src: 1, dst: 1, label: "idb".into() },
            Morphism { src: 0, dst: 1, label: "u".into() },
            Morphism { src: 1, dst: 0, label: "v".into() },
        ];
        let table = [(0, 0, 0), (1, 1, 1), (2, 0, 2), (1, 2, 2), (3, 1, 3), (0, 3, 3), (3, 2, 0), (2, 3, 1)];
        FinCategory::new(objects, morphisms, vec![0, 1], table).unwrap()
    }

    /// Two objects with two distinct parallel arrows between them.
    pub fn parallel_pair() -> FinCategory {
        let objects = vec!["0".to_string(), "1".to_string()];
        let morphisms = vec![
            Morphism { src: 0, dst: 0, label: "id0".into() },
            Morphism { src: 1, dst: 1, label: "id1".into() },
            Morphism { src: 0, dst: 1, label: "a".into() },
            Morphism { src: 0, dst: 1, label: "b".into() },
        ];
        let table = [(0, 0, 0), (1, 1, 1), (2, 0, 2), (1, 2, 2), (3, 0, 3), (1, 3, 3)];
        FinCategory::new(objects, morphisms, vec![0, 1], table).unwrap()
    }

    /// `c` with a new object isomorphic to `x`: every hom-set touching the copy is a
    /// copy of the corresponding hom-set touching `x`.
    pub fn adjoin_iso_copy(c: &FinCategory, x: ObjId) -> FinCategory {
        let n = c.num_objects();
        let copy = n as ObjId;
        let mut objects = c.obj_labels().to_vec();
        objects.push(format!("{}'", c.obj_label(x)));
        let lift = |o: ObjId| if o == copy { x } else { o };
        // (a, b, m) with a, b objects of the extended category and m a morphism of c.
        let mut keys: Vec<(ObjId, ObjId, MorId)> = Vec::new();
        for a in 0..=n as ObjId {
            for b in 0..=n as ObjId {
                for &m in c.hom(lift(a), lift(b)) {
                    keys.push((a, b, m));
                }
            }
        }
        let index: HashMap<(ObjId, ObjId, MorId), MorId> =
            keys.iter().enumerate().map(|(i, &k)| (k, i as MorId)).collect();
        let morphisms = keys
            .iter()
            .map(|&(a, b, m)| {
                let label = if a == copy || b == copy {
                    format!("{}'{}{}", c.label(m), if a == copy { "s" } else { "" }, if b == copy { "t" } else { "" })
                } else {
                    c.label(m).to_string()
                };
                Morphism { src: a, dst: b, label }
            })
            .collect();
        let identity = (0..=n as ObjId).map(|a| index[&(a, a, c.id(lift(a)))]).collect();
        FinCategory::from_fn(objects, morphisms, identity, |g, f| {
            let (a, _, mf) = keys[f as usize];
            let (_, b, mg) = keys[g as usize];
            index[&(a, b, c.comp(mg, mf))]
        })
        .expect("iso copy tables")
    }
}

/// The join `a ⋆ b`: disjoint union plus one arrow from every object of `a` to
/// every object of `b`.
pub fn join_categories(a: &FinCategory, b: &FinCategory) -> FinCategory {
    let na = a.num_objects() as ObjId;
    let ma = a.num_morphisms() as MorId;
    let mb = b.num_morphisms() as MorId;
    let mut objects: Vec<String> = a.obj_labels().iter().map(|l| format!("0.{l}")).collect();
    objects.extend(b.obj_labels().iter().map(|l| format!("1.{l}")));
    let mut morphisms: Vec<Morphism> = a.morphisms().to_vec();
    morphisms.extend(b.morphisms().iter().map(|m| Morphism {
        src: m.src + na,
        dst: m.dst + na,
        label: m.label.clone(),
    }));
    let bridge_base = ma + mb;
    let nb = b.num_objects() as ObjId;
    for x in 0..na {
        for y in 0..nb {
            morphisms.push(Morphism {
                src: x,
                dst: y + na,
                label: format!("{}>{}", a.obj_label(x), b.obj_label(y)),
            });
        }
    }
    let bridge = |x: ObjId, y: ObjId| bridge_base + x * nb + y;
    let mut identity: Vec<MorId> = a.identities().to_vec();
    identity.extend(b.identities().iter().map(|&e| e + ma));
    let ms = morphisms.clone();
    FinCategory::from_fn(objects, morphisms, identity, |g, f| {
        let (fs, gd) = (ms[f as usize].src, ms[g as usize].dst);
        match (f < ma, g < ma, f >= ma && f < bridge_base, g >= ma && g < bridge_base) {
            (true, true, _, _) => a.comp(g, f),
            (_, _, true, true) => b.comp(g - ma, f - ma) + ma,
            _ => bridge(fs, gd - na),
        }
    })
    .expect("join tables")
}

/// An assignment of objects and morphisms; functoriality is checked separately.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FunctorData {
    pub on_objects: Vec<ObjId>,
    pub on_morphisms: Vec<MorId>,
}

impl FunctorData {
    pub fn identity(c: &FinCategory) -> Self {
        FunctorData { on_objects: c.objects().collect(), on_morphisms: c.morphism_ids().collect() }
    }

    pub fn obj(&self, x: ObjId) -> ObjId {
        self.on_objects[x as usize]
    }

    pub fn mor(&self, m: MorId) -> MorId {
        self.on_morphisms[m as usize]
    }

    /// `g ∘ self`.
    pub fn then(&self, g: &FunctorData) -> FunctorData {
        FunctorData {
            on_objects: self.on_objects.iter().map(|&x| g.obj(x)).collect(),
            on_morphisms: self.on_morphisms.iter().map(|&m| g.mor(m)).collect(),
        }
    }

    /// Lists every violated functor law.
    pub fn check(&self, src: &FinCategory, dst: &FinCategory) -> ValidationReport {
        let mut r = ValidationReport::default();
        if self.on_objects.len() != src.num_objects() || self.on_morphisms.len() != src.num_morphisms() {
            r.push(Violation::Functor("table sizes do not match the source".into()));
            return r;
        }
        if self.on_objects.iter().any(|&x| x as usize >= dst.num_objects())
            || self.on_morphisms.iter().any(|&m| m as usize >= dst.num_morphisms())
        {
            r.push(Violation::Functor("image id out of range".into()));
            return r;
        }
        for m in src.morphism_ids() {
            let fm = self.mor(m);
            if dst.src(fm) != self.obj(src.src(m)) || dst.dst(fm) != self.obj(src.dst(m)) {
                r.push(Violation::Functor(format!("image of {} has wrong endpoints", src.label(m))));
            }
        }
        if !r.is_empty() {
            return r;
        }
        for x in src.objects() {
            if self.mor(src.id(x)) != dst.id(self.obj(x)) {
                r.push(Violation::Functor(format!("identity of {} not preserved", src.obj_label(x))));
            }
        }
        for f in src.morphism_ids() {
            for g in src.out_of(src.dst(f)) {
                if self.mor(src.comp(g, f)) != dst.comp(self.mor(g), self.mor(f)) {
                    r.push(Violation::Functor(format!(
                        "composite {} o {} not preserved",
                        src.label(g),
                        src.label(f)
                    )));
                }
            }
        }
        r
    }

    pub fn is_functor(&self, src: &FinCategory, dst: &FinCategory) -> bool {
        self.check(src, dst).is_empty()
    }
}

/// Components indexed by source objects.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NatTransData {
    pub components: Vec<MorId>,
}

impl NatTransData {
    pub fn identity(f: &FunctorData, dst: &FinCategory) -> Self {
        NatTransData { components: f.on_objects.iter().map(|&x| dst.id(x)).collect() }
    }

    /// Checks endpoints and every naturality square for `self: f ⇒ g`.
    pub fn check(&self, src: &FinCategory, dst: &FinCategory, f: &FunctorData, g: &FunctorData) -> Result<()> {
        if self.components.len() != src.num_objects() {
            return Err(Error::NotNatural("wrong number of components".into()));
        }
        for x in src.objects() {
            let c = self.components[x as usize];
            if dst.src(c) != f.obj(x) || dst.dst(c) != g.obj(x) {
                return Err(Error::NotNatural(format!("component at {} has wrong endpoints", src.obj_label(x))));
            }
        }
        for m in src.morphism_ids() {
            let (a, b) = (src.src(m), src.dst(m));
            let lhs = dst.comp(g.mor(m), self.components[a as usize]);
            let rhs = dst.comp(self.components[b as usize], f.mor(m));
            if lhs != rhs {
                return Err(Error::NotNatural(format!("square at {} does not commute", src.label(m))));
            }
        }
        Ok(())
    }

    pub fn is_iso(&self, dst: &FinCategory) -> bool {
        self.components.iter().all(|&c| dst.is_iso(c))
    }

    /// Whiskering `self ▹ h` along a functor `h: b → src`.
    pub fn whisker(&self, h: &FunctorData) -> NatTransData {
        NatTransData { components: h.on_objects.iter().map(|&x| self.components[x as usize]).collect() }
    }
}

/// Exhaustive search budget shared by the enumerators.
#[derive(Clone, Copy, Debug)]
pub struct SearchBudget {
    pub max_nodes: usize,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget { max_nodes: 50_000_000 }
    }
}

/// Every functor `src → dst`, sorted by (object table, morphism table).
///
/// Objects are assigned in `order` (ids by default); a morphism is assigned as soon
/// as both endpoints are, and each composition constraint is checked at the point
/// where its last member is assigned.
pub fn enumerate_functors(
    src: &FinCategory,
    dst: &FinCategory,
    order: Option<&[ObjId]>,
    budget: SearchBudget,
) -> Result<Vec<FunctorData>> {
    let no = src.num_objects();
    let default_order: Vec<ObjId> = src.objects().collect();
    let order = order.unwrap_or(&default_order);
    let mut pos = vec![0usize; no];
    for (i, &x) in order.iter().enumerate() {
        pos[x as usize] = i;
    }
    // Non-identity morphisms grouped by the step that makes them assignable.
    let mut step_mors: Vec<Vec<MorId>> = vec![Vec::new(); no];
    for m in src.morphism_ids() {
        if !src.is_identity(m) {
            let s = pos[src.src(m) as usize].max(pos[src.dst(m) as usize]);
            step_mors[s].push(m);
        }
    }
    let seq: Vec<MorId> = step_mors.iter().flatten().copied().collect();
    let mut rank = vec![usize::MAX; src.num_morphisms()];
    for (i, &m) in seq.iter().enumerate() {
        rank[m as usize] = i;
    }
    // A constraint (g, f, r) is checked when its highest-ranked non-identity member is set.
    let mut checks: Vec<Vec<(MorId, MorId, MorId)>> = vec![Vec::new(); seq.len()];
    for f in src.morphism_ids() {
        for g in src.out_of(src.dst(f)) {
            let r = src.comp(g, f);
            let last = [f, g, r].iter().filter(|&&m| rank[m as usize] != usize::MAX).map(|&m| rank[m as usize]).max();
            if let Some(l) = last {
                checks[l].push((g, f, r));
            }
        }
    }
    let mut st = FunctorSearch {
        src,
        dst,
        order,
        step_mors: &step_mors,
        rank: &rank,
        checks: &checks,
        objs: vec![NONE; no],
        mors: vec![NONE; src.num_morphisms()],
        nodes: 0,
        budget: budget.max_nodes,
        out: Vec::new(),
    };
    st.assign_object(0)?;
    let mut out = st.out;
    out.sort();
    Ok(out)
}

struct FunctorSearch<'a> {
    src: &'a FinCategory,
    dst: &'a FinCategory,
    order: &'a [ObjId],
    step_mors: &'a [Vec<MorId>],
    rank: &'a [usize],
    checks: &'a [Vec<(MorId, MorId, MorId)>],
    objs: Vec<ObjId>,
    mors: Vec<MorId>,
    nodes: usize,
    budget: usize,
    out: Vec<FunctorData>,
}

impl FunctorSearch<'_> {
    fn tick(&mut self) -> Result<()> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(Error::size("functor enumeration", self.budget));
        }
        Ok(())
    }

    fn assign_object(&mut self, step: usize) -> Result<()> {
        if step == self.order.len() {
            self.out.push(FunctorData { on_objects: self.objs.clone(), on_morphisms: self.mors.clone() });
            return Ok(());
        }
        let x = self.order[step];
        for y in self.dst.objects() {
            self.tick()?;
            self.objs[x as usize] = y;
            self.mors[self.src.id(x) as usize] = self.dst.id(y);
            self.assign_morphism(step, 0)?;
        }
        self.objs[x as usize] = NONE;
        self.mors[self.src.id(x) as usize] = NONE;
        Ok(())
    }

    fn assign_morphism(&mut self, step: usize, i: usize) -> Result<()> {
        let list = &self.step_mors[step];
        if i == list.len() {
            return self.assign_object(step + 1);
        }
        let m = list[i];
        let a = self.objs[self.src.src(m) as usize];
        let b = self.objs[self.src.dst(m) as usize];
        let cands: Vec<MorId> = self.dst.hom(a, b).to_vec();
        for c in cands {
            self.tick()?;
            self.mors[m as usize] = c;
            if self.consistent(self.rank[m as usize]) {
                self.assign_morphism(step, i + 1)?;
            }
        }
        self.mors[m as usize] = NONE;
        Ok(())
    }

    fn consistent(&self, r: usize) -> bool {
        self.checks[r].iter().all(|&(g, f, c)| {
            self.dst.compose(self.mors[g as usize], self.mors[f as usize]) == Some(self.mors[c as usize])
        })
    }
}

/// All natural transformations `f ⇒ g` (only invertible ones when `iso_only`),
/// sorted by component table.
pub fn find_natural_transformations(
    src: &FinCategory,
    dst: &FinCategory,
    f: &FunctorData,
    g: &FunctorData,
    iso_only: bool,
    budget: SearchBudget,
) -> Result<Vec<NatTransData>> {
    let no = src.num_objects();
    let cands: Vec<Vec<MorId>> = src
        .objects()
        .map(|x| {
            dst.hom(f.obj(x), g.obj(x)).iter().copied().filter(|&c| !iso_only || dst.is_iso(c)).collect()
        })
        .collect();
    // Squares to check once both endpoint components are set.
    let mut squares: Vec<Vec<MorId>> = vec![Vec::new(); no];
    for m in src.morphism_ids() {
        let last = src.src(m).max(src.dst(m));
        squares[last as usize].push(m);
    }
    let mut comps = vec![NONE; no];
    let mut out = Vec::new();
    let mut nodes = 0usize;
    fn go(
        x: usize,
        src: &FinCategory,
        dst: &FinCategory,
        f: &FunctorData,
        g: &FunctorData,
        cands: &[Vec<MorId>],
        squares: &[Vec<MorId>],
        comps: &mut Vec<MorId>,
        out: &mut Vec<NatTransData>,
        nodes: &mut usize,
        budget: usize,
    ) -> Result<()> {
        if x == cands.len() {
            out.push(NatTransData { components: comps.clone() });
            return Ok(());
        }
        for &c in &cands[x] {
            *nodes += 1;
            if *nodes > budget {
                return Err(Error::size("natural transformation search", budget));
            }
            comps[x] = c;
            let ok = squares[x].iter().all(|&m| {
                let (a, b) = (src.src(m) as usize, src.dst(m) as usize);
                dst.comp(g.mor(m), comps[a]) == dst.comp(comps[b], f.mor(m))
            });
            if ok {
                go(x + 1, src, dst, f, g, cands, squares, comps, out, nodes, budget)?;
            }
        }
        comps[x] = NONE;
        Ok(())
    }
    go(0, src, dst, f, g, &cands, &squares, &mut comps, &mut out, &mut nodes, budget.max_nodes)?;
    Ok(out)
}

/// All natural isomorphisms `f ⇒ g`; empty when the functors are not isomorphic.
pub fn find_natural_isos(
    src: &FinCategory,
    dst: &FinCategory,
    f: &FunctorData,
    g: &FunctorData,
) -> Result<Vec<NatTransData>> {
    find_natural_transformations(src, dst, f, g, true, SearchBudget::default())
}

/// A partition of each hom-set, given as a class label per morphism. Labels are
/// only compared between parallel morphisms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomCongruence {
    pub class_of: Vec<u32>,
}

impl HomCongruence {
    pub fn discrete(c: &FinCategory) -> Self {
        HomCongruence { class_of: c.morphism_ids().collect() }
    }

    pub fn related(&self, c: &FinCategory, a: MorId, b: MorId) -> bool {
        c.src(a) == c.src(b) && c.dst(a) == c.dst(b) && self.class_of[a as usize] == self.class_of[b as usize]
    }
}

/// The quotient category and its projection. Classes are numbered by their least
/// member, which also provides the label.
pub fn quotient_by_congruence(c: &FinCategory, cong: &HomCongruence) -> Result<(FinCategory, FunctorData)> {
    let mut rep_of: HashMap<(ObjId, ObjId, u32), MorId> = HashMap::new();
    let mut reps: Vec<MorId> = Vec::new();
    let mut proj = vec![0; c.num_morphisms()];
    for m in c.morphism_ids() {
        let key = (c.src(m), c.dst(m), cong.class_of[m as usize]);
        let next = reps.len() as MorId;
        let id = *rep_of.entry(key).or_insert_with(|| {
            reps.push(m);
            next
        });
        proj[m as usize] = id;
    }
    // Congruence check: the class of g∘f depends only on the classes of g and f.
    let mut seen: HashMap<(MorId, MorId), MorId> = HashMap::new();
    for f in c.morphism_ids() {
        for g in c.out_of(c.dst(f)) {
            let key = (proj[g as usize], proj[f as usize]);
            let r = proj[c.comp(g, f) as usize];
            if let Some(&old) = seen.get(&key) {
                if old != r {
                    return Err(Error::NotACongruence(format!(
                        "class of {} o {} is not determined by the classes of its factors",
                        c.label(g),
                        c.label(f)
                    )));
                }
            } else {
                seen.insert(key, r);
            }
        }
    }
    let morphisms: Vec<Morphism> = reps.iter().map(|&m| c.morphism(m).clone()).collect();
    let identity = c.objects().map(|x| proj[c.id(x) as usize]).collect();
    let q = FinCategory::from_fn(c.obj_labels().to_vec(), morphisms, identity, |g, f| {
        proj[c.comp(reps[g as usize], reps[f as usize]) as usize]
    })?;
    let functor = FunctorData { on_objects: c.objects().collect(), on_morphisms: proj };
    Ok((q, functor))
}

#[cfg(test)]
mod tests {
    use super::build::*;
    use super::*;

    #[test]
    fn terminal_is_valid_and_self_dual() {
        let t = terminal();
        assert!(t.validate().is_empty());
        assert_eq!(t.opposite(), t);
    }

    #[test]
    fn endpoint_mismatch_is_reported() {
        let objects = vec!["0".to_string(), "1".to_string()];
        let morphisms = vec![
            Morphism { src: 0, dst: 0, label: "id0".into() },
            Morphism { src: 1, dst: 1, label: "id1".into() },
            Morphism { src: 0, dst: 1, label: "a".into() },
        ];
        // compose(id1, a) claims to be id0.
        let table = [(0, 0, 0), (1, 1, 1), (2, 0, 2), (1, 2, 0)];
        let c = FinCategory::new(objects, morphisms, vec![0, 1], table).unwrap();
        let r = c.validate();
        assert!(r.entries.contains(&Violation::EndpointMismatch { g: 1, f: 2 }));
    }

    #[test]
    fn missing_pair_is_a_load_error() {
        let objects = vec!["0".to_string()];
        let morphisms = vec![Morphism { src: 0, dst: 0, label: "id".into() }];
        assert!(FinCategory::new(objects, morphisms, vec![0], []).is_err());
    }

    #[test]
    fn opposite_reverses_the_arrow() {
        let c = ordinal(1);
        let op = c.opposite();
        let a = op.find_morphism("0<1").unwrap();
        assert_eq!((op.src(a), op.dst(a)), (1, 0));
        assert_eq!(op.opposite(), c);
    }

    #[test]
    fn join_units_and_ordinals() {
        let b = ordinal(2);
        let j = join_categories(&empty(), &b);
        assert_eq!(j.num_objects(), 3);
        assert_eq!(j.num_morphisms(), b.num_morphisms());
        assert!(j.validate().is_empty());
        let p = join_categories(&terminal(), &terminal());
        assert_eq!(p.num_morphisms(), ordinal(1).num_morphisms());
        let q = join_categories(&ordinal(1), &ordinal(1));
        assert!(q.validate().is_empty());
        let o3 = ordinal(3);
        for a in 0..4 {
            for b in 0..4 {
                assert_eq!(q.hom(a, b).len(), o3.hom(a, b).len());
            }
        }
        assert!(q.hom(2, 0).is_empty());
    }

    #[test]
    fn functor_counts() {
        let fs = enumerate_functors(&terminal(), &ordinal(2), None, SearchBudget::default()).unwrap();
        assert_eq!(fs.len(), 3);
        let fs = enumerate_functors(&ordinal(1), &ordinal(2), None, SearchBudget::default()).unwrap();
        assert_eq!(fs.len(), 6);
        for f in &fs {
            assert!(f.is_functor(&ordinal(1), &ordinal(2)));
        }
    }

    #[test]
    fn natural_isos() {
        let p = ordinal(1);
        let t = terminal();
        let f0 = FunctorData { on_objects: vec![0], on_morphisms: vec![p.id(0)] };
        let f1 = FunctorData { on_objects: vec![1], on_morphisms: vec![p.id(1)] };
        assert!(find_natural_isos(&t, &p, &f0, &f1).unwrap().is_empty());
        let same = find_natural_isos(&t, &p, &f0, &f0).unwrap();
        assert_eq!(same, vec![NatTransData { components: vec![p.id(0)] }]);
        let w = walking_iso();
        let ca = FunctorData { on_objects: vec![0], on_morphisms: vec![0] };
        let cb = FunctorData { on_objects: vec![1], on_morphisms: vec![1] };
        let isos = find_natural_isos(&t, &w, &ca, &cb).unwrap();
        assert_eq!(isos, vec![NatTransData { components: vec![2] }]);
    }

    #[test]
    fn quotient_of_parallel_pair() {
        let c = parallel_pair();
        let (q, p) = quotient_by_congruence(&c, &HomCongruence::discrete(&c)).unwrap();
        assert_eq!(q.num_morphisms(), c.num_morphisms());
        assert!(p.is_functor(&c, &q));
        let cong = HomCongruence { class_of: vec![0, 1, 2, 2] };
        let (q, p) = quotient_by_congruence(&c, &cong).unwrap();
        assert_eq!(q.num_morphisms(), 3);
        assert!(q.validate().is_empty());
        assert!(p.is_functor(&c, &q));
    }

    #[test]
    fn iso_copy_is_valid() {
        let c = ordinal(1);
        let d = adjoin_iso_copy(&c, 0);
        assert!(d.validate().is_empty());
        assert_eq!(d.num_objects(), 3);
        let u = d.hom(0, 2)[0];
        assert!(d.is_iso(u));
    }
}

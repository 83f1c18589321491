//! `Down(C)`, bounded `Down⁎(C)`, the functor `last` and directness checks.

use std::collections::HashMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::fincat::{FinCategory, FunctorData, MorId, Morphism, ObjId};
use crate::ladder::{Ladder, LadderCategory, LadderMorphism, LadderObject, LadderVariant};
use crate::reedy::{longest_path_layers, ReedyCategory};

/// A hom-set quotient of a materialized ladder category, with morphisms keyed
/// by class maxima.
#[derive(Clone, Debug)]
pub struct DownCategory {
    /// `true` for the bounded `Down⁎(C)` built from chains in `C₋`.
    pub star: bool,
    pub ladder: LadderCategory,
    pub cat: FinCategory,
    /// Class maximum of each morphism.
    pub decode: Vec<LadderMorphism>,
    /// The quotient functor from `ladder.cat`.
    pub projection: FunctorData,
    ladder_id: Vec<MorId>,
    down_id: HashMap<MorId, MorId>,
}

impl DownCategory {
    fn from_ladder(rc: &ReedyCategory, ladder: LadderCategory, star: bool) -> Result<Self> {
        let lad = ladder.ladder(rc);
        let mut ladder_id = Vec::new();
        let mut down_id = HashMap::new();
        for (i, m) in ladder.morphisms.iter().enumerate() {
            if lad.up_max(m) == *m {
                down_id.insert(i as MorId, ladder_id.len() as MorId);
                ladder_id.push(i as MorId);
            }
        }
        let class_of = |m: &LadderMorphism| -> MorId {
            let top = lad.up_max(m);
            down_id[&ladder.mor_id(&top).expect("class maximum lies in the bounded category")]
        };
        let on_morphisms: Vec<MorId> = ladder.morphisms.iter().map(class_of).collect();
        let decode: Vec<LadderMorphism> = ladder_id.iter().map(|&i| ladder.morphism(i).clone()).collect();
        let morphisms = ladder_id.iter().map(|&i| ladder.cat.morphism(i).clone()).collect::<Vec<Morphism>>();
        let identity = ladder.cat.identities().iter().map(|e| on_morphisms[*e as usize]).collect();
        let cat = FinCategory::from_fn(ladder.cat.obj_labels().to_vec(), morphisms, identity, |g, f| {
            on_morphisms[ladder.cat.comp(ladder_id[g as usize], ladder_id[f as usize]) as usize]
        })?;
        let projection = FunctorData { on_objects: ladder.cat.objects().collect(), on_morphisms };
        Ok(DownCategory { star, ladder, cat, decode, projection, ladder_id, down_id })
    }

    pub fn ladder_view<'a>(&self, rc: &'a ReedyCategory) -> Ladder<'a> {
        self.ladder.ladder(rc)
    }

    pub fn object(&self, x: ObjId) -> &LadderObject {
        self.ladder.object(x)
    }

    pub fn obj_id(&self, x: &LadderObject) -> Option<ObjId> {
        self.ladder.obj_id(x)
    }

    /// The class of an arbitrary representative.
    pub fn encode(&self, rc: &ReedyCategory, m: &LadderMorphism) -> Option<MorId> {
        let top = self.ladder_view(rc).up_max(m);
        self.ladder.mor_id(&top).and_then(|i| self.down_id.get(&i).copied())
    }

    /// Ladder id of the class maximum.
    pub fn max_ladder_id(&self, m: MorId) -> MorId {
        self.ladder_id[m as usize]
    }

    /// Splits the maximum of the identity class at `x` through a conservative chain:
    /// returns the strict object and a mutually inverse pair `x → s`, `s → x`.
    pub fn normalize_object(&self, rc: &ReedyCategory, x: ObjId) -> Result<Normalized> {
        let lad = self.ladder_view(rc);
        let obj = self.object(x);
        let e = lad.up_max(&lad.identity(obj));
        let (s, d) = lad.gamma_factorize(&e)?;
        let back = lad.compose_unchecked(&s, &d);
        if back != lad.identity(&s.dst) {
            return Err(Error::Invalid(format!("identity maximum at {} does not split", obj.label(&rc.cat))));
        }
        let strict = s.dst.clone();
        let to = self.encode(rc, &s).ok_or_else(|| Error::Invalid("split leaves the bound".into()))?;
        let from = self.encode(rc, &d).ok_or_else(|| Error::Invalid("split leaves the bound".into()))?;
        let strict_id = self.obj_id(&strict).ok_or_else(|| Error::Invalid("split leaves the bound".into()))?;
        Ok(Normalized { strict, strict_id, to_strict: to, from_strict: from })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Normalized {
    pub strict: LadderObject,
    pub strict_id: ObjId,
    pub to_strict: MorId,
    pub from_strict: MorId,
}

/// Chain-length bound large enough for every conservative chain.
pub fn strict_length_bound(rc: &ReedyCategory) -> usize {
    rc.cat.num_objects()
}

pub fn build_down(rc: &ReedyCategory, limit: usize) -> Result<DownCategory> {
    let ladder = LadderCategory::build(rc, LadderVariant::Strict, strict_length_bound(rc), limit)?;
    DownCategory::from_ladder(rc, ladder, false)
}

pub fn build_down_star(rc: &ReedyCategory, max_len: usize, limit: usize) -> Result<DownCategory> {
    let ladder = LadderCategory::build(rc, LadderVariant::Mp, max_len, limit)?;
    DownCategory::from_ladder(rc, ladder, true)
}

/// `Y(α(m) → n) ∘ θ_m`.
pub fn last_of(c: &FinCategory, m: &LadderMorphism) -> MorId {
    let top = m.alpha.at(m.alpha.m);
    c.comp(m.dst.link(c, top, m.dst.len()), m.theta[m.alpha.m])
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LastFunctor {
    pub functor: FunctorData,
}

impl LastFunctor {
    pub fn on_ladder(rc: &ReedyCategory, lc: &LadderCategory) -> Self {
        let c = &rc.cat;
        LastFunctor {
            functor: FunctorData {
                on_objects: lc.objects.iter().map(|x| x.last(c)).collect(),
                on_morphisms: lc.morphisms.iter().map(|m| last_of(c, m)).collect(),
            },
        }
    }

    pub fn on_down(rc: &ReedyCategory, d: &DownCategory) -> Self {
        let c = &rc.cat;
        LastFunctor {
            functor: FunctorData {
                on_objects: d.ladder.objects.iter().map(|x| x.last(c)).collect(),
                on_morphisms: d.decode.iter().map(|m| last_of(c, m)).collect(),
            },
        }
    }

    pub fn weq(&self, c: &FinCategory) -> WeqSet {
        WeqSet {
            morphisms: self
                .functor
                .on_morphisms
                .iter()
                .enumerate()
                .filter(|(_, &m)| c.is_identity(m))
                .map(|(i, _)| i as MorId)
                .collect(),
        }
    }
}

/// Morphisms sent to identities by `last`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct WeqSet {
    pub morphisms: Vec<MorId>,
}

impl WeqSet {
    pub fn contains(&self, m: MorId) -> bool {
        self.morphisms.binary_search(&m).is_ok()
    }
}

/// The inclusion `Down(C) → Down⁎(C)` on objects and classes.
pub fn inclusion(rc: &ReedyCategory, down: &DownCategory, star: &DownCategory) -> Result<FunctorData> {
    let on_objects = down
        .ladder
        .objects
        .iter()
        .map(|x| star.obj_id(x).ok_or_else(|| Error::Invalid("strict object missing from the bound".into())))
        .collect::<Result<Vec<_>>>()?;
    let on_morphisms = down
        .decode
        .iter()
        .map(|m| star.encode(rc, m).ok_or_else(|| Error::Invalid("class missing from the bound".into())))
        .collect::<Result<Vec<_>>>()?;
    Ok(FunctorData { on_objects, on_morphisms })
}

/// A quasi-inverse `Down⁎(C) → Down(C)` built from [`DownCategory::normalize_object`]:
/// `m: a → b` goes to `p_b ∘ m ∘ s_a`.
pub fn normalization_functor(rc: &ReedyCategory, down: &DownCategory, star: &DownCategory) -> Result<FunctorData> {
    let incl = inclusion(rc, down, star)?;
    let mut back_obj: HashMap<ObjId, ObjId> = HashMap::new();
    for (i, &x) in incl.on_objects.iter().enumerate() {
        back_obj.insert(x, i as ObjId);
    }
    let mut back_mor: HashMap<MorId, MorId> = HashMap::new();
    for (i, &m) in incl.on_morphisms.iter().enumerate() {
        back_mor.insert(m, i as MorId);
    }
    let normals = star.cat.objects().map(|x| star.normalize_object(rc, x)).collect::<Result<Vec<_>>>()?;
    let on_objects = normals.iter().map(|n| back_obj[&n.strict_id]).collect();
    let sc = &star.cat;
    let on_morphisms = sc
        .morphism_ids()
        .map(|m| {
            let (a, b) = (sc.src(m), sc.dst(m));
            let k = sc.comp(normals[b as usize].to_strict, sc.comp(m, normals[a as usize].from_strict));
            back_mor[&k]
        })
        .collect();
    Ok(FunctorData { on_objects, on_morphisms })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DirectCheck {
    pub direct: bool,
    /// Non-identity endomorphisms, each already a violation.
    pub non_identity_endos: Vec<MorId>,
    pub cycle: Option<Vec<ObjId>>,
    /// Longest-path layering of the non-identity reachability relation.
    pub degree: Option<Vec<u32>>,
}

pub fn check_direct(cat: &FinCategory) -> DirectCheck {
    let non_identity_endos: Vec<MorId> =
        cat.morphism_ids().filter(|&m| cat.src(m) == cat.dst(m) && !cat.is_identity(m)).collect();
    let mut edges: Vec<(ObjId, ObjId)> = cat
        .morphism_ids()
        .filter(|&m| !cat.is_identity(m) && cat.src(m) != cat.dst(m))
        .map(|m| (cat.src(m), cat.dst(m)))
        .collect();
    edges.sort_unstable();
    edges.dedup();
    let (cycle, degree) = match longest_path_layers(cat.num_objects(), &edges) {
        Ok(d) => (None, Some(d)),
        Err(c) => (Some(c), None),
    };
    let cycle = cycle.or_else(|| non_identity_endos.first().map(|&m| vec![cat.src(m)]));
    DirectCheck { direct: non_identity_endos.is_empty() && cycle.is_none(), non_identity_endos, cycle, degree }
}

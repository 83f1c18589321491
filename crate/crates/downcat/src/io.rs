//! The JSON category format, its Reedy extension, DOT export and the JSON
//! dump of `Down(C)` with decode tables.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::config::Bounds;
use crate::corpus::{self, CorpusEntry, Source};
use crate::down::{check_direct, DownCategory};
use crate::error::{Error, Result};
use crate::fincat::{FinCategory, MorId, Morphism};
use crate::reedy::ReedyCategory;

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MorphismJson {
    pub id: MorId,
    pub src: String,
    pub dst: String,
    #[serde(default)]
    pub label: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ReedyJson {
    pub minus: Vec<MorId>,
    pub plus: Vec<MorId>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CategoryJson {
    pub objects: Vec<String>,
    pub morphisms: Vec<MorphismJson>,
    pub identities: BTreeMap<String, MorId>,
    pub compose: Vec<[MorId; 3]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reedy: Option<ReedyJson>,
}

/// A loaded file: the category, and its Reedy structure when the file has one.
#[derive(Clone, Debug)]
pub struct Loaded {
    pub cat: FinCategory,
    pub reedy: Option<ReedyCategory>,
}

impl Loaded {
    pub fn into_reedy(self, name: &str) -> Result<ReedyCategory> {
        self.reedy.ok_or_else(|| Error::Invalid(format!("{name} has no \"reedy\" section")))
    }
}

impl CategoryJson {
    pub fn into_loaded(self) -> Result<Loaded> {
        let mut index = HashMap::new();
        for (i, o) in self.objects.iter().enumerate() {
            if index.insert(o.as_str(), i as u32).is_some() {
                return Err(Error::Parse(format!("object {o:?} is listed twice")));
            }
        }
        let lookup = |o: &str| index.get(o).copied().ok_or_else(|| Error::Parse(format!("unknown object {o:?}")));
        let n = self.morphisms.len();
        let mut slots: Vec<Option<Morphism>> = vec![None; n];
        for m in &self.morphisms {
            let slot = slots
                .get_mut(m.id as usize)
                .ok_or_else(|| Error::Parse(format!("morphism id {} out of range 0..{n}", m.id)))?;
            if slot.is_some() {
                return Err(Error::Parse(format!("morphism id {} is listed twice", m.id)));
            }
            let label = if m.label.is_empty() { format!("m{}", m.id) } else { m.label.clone() };
            *slot = Some(Morphism { src: lookup(&m.src)?, dst: lookup(&m.dst)?, label });
        }
        let morphisms: Vec<Morphism> = slots.into_iter().map(|m| m.expect("ids are a permutation")).collect();
        let mut identity = Vec::with_capacity(self.objects.len());
        for o in &self.objects {
            identity.push(*self.identities.get(o).ok_or_else(|| Error::Parse(format!("object {o:?} has no identity")))?);
        }
        if let Some(extra) = self.identities.keys().find(|k| !index.contains_key(k.as_str())) {
            return Err(Error::Parse(format!("identity given for unknown object {extra:?}")));
        }
        let cat = FinCategory::new(self.objects, morphisms, identity, self.compose.iter().map(|e| (e[0], e[1], e[2])))?;
        let reedy = self.reedy.map(|r| ReedyCategory::new(cat.clone(), &r.minus, &r.plus)).transpose()?;
        Ok(Loaded { cat, reedy })
    }

    pub fn from_category(cat: &FinCategory, reedy: Option<&ReedyCategory>) -> Self {
        let name = |x: u32| cat.obj_label(x).to_string();
        let morphisms = cat
            .morphism_ids()
            .map(|m| MorphismJson { id: m, src: name(cat.src(m)), dst: name(cat.dst(m)), label: cat.label(m).to_string() })
            .collect();
        let identities = cat.objects().map(|x| (name(x), cat.id(x))).collect();
        let mut compose = Vec::new();
        for f in cat.morphism_ids() {
            for &g in cat.out_of(cat.dst(f)).iter() {
                compose.push([g, f, cat.comp(g, f)]);
            }
        }
        compose.sort_unstable();
        let reedy = reedy.map(|r| ReedyJson { minus: r.minus_ids(), plus: r.plus_ids() });
        CategoryJson { objects: cat.obj_labels().to_vec(), morphisms, identities, compose, reedy }
    }
}

pub fn parse_category(text: &str) -> Result<Loaded> {
    let j: CategoryJson = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    j.into_loaded()
}

pub fn load_file(path: &Path) -> Result<Loaded> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    parse_category(&text).map_err(|e| match e {
        Error::Parse(s) => Error::Parse(format!("{}: {s}", path.display())),
        e => e,
    })
}

/// Resolves `builtin:NAME` or a file path. Builtins always carry their Reedy
/// structure.
pub fn load_spec(spec: &str, bounds: &Bounds) -> Result<(String, Loaded)> {
    if let Some(name) = spec.strip_prefix("builtin:") {
        let e = corpus::builtin(name, bounds)?;
        Ok((e.name, Loaded { cat: e.data.cat.clone(), reedy: Some(e.data) }))
    } else {
        Ok((spec.to_string(), load_file(Path::new(spec))?))
    }
}

/// Like [`load_spec`] but insists on a Reedy structure.
pub fn load_entry(spec: &str, bounds: &Bounds) -> Result<CorpusEntry> {
    let (name, l) = load_spec(spec, bounds)?;
    let source = if spec.starts_with("builtin:") { Source::Builtin } else { Source::File };
    Ok(CorpusEntry { data: l.into_reedy(&name)?, name, source })
}

pub fn to_json(cat: &FinCategory, reedy: Option<&ReedyCategory>) -> String {
    serde_json::to_string_pretty(&CategoryJson::from_category(cat, reedy)).expect("category JSON")
}

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// Objects as nodes, non-identity morphisms as labelled edges.
pub fn to_dot(cat: &FinCategory, name: &str) -> String {
    let mut s = format!("digraph {} {{\n", quote(name));
    for x in cat.objects() {
        let _ = writeln!(s, "  {};", quote(cat.obj_label(x)));
    }
    for m in cat.morphism_ids().filter(|&m| !cat.is_identity(m)) {
        let _ = writeln!(
            s,
            "  {} -> {} [label={}];",
            quote(cat.obj_label(cat.src(m))),
            quote(cat.obj_label(cat.dst(m))),
            quote(cat.label(m))
        );
    }
    s.push_str("}\n");
    s
}

#[derive(Serialize)]
struct ObjectDecode {
    id: u32,
    base: String,
    /// The chain in `C₋` as morphism labels, first arrow first.
    chain: Vec<String>,
}

#[derive(Serialize)]
struct MorphismDecode {
    id: MorId,
    alpha: Vec<usize>,
    theta: Vec<String>,
}

#[derive(Serialize)]
struct DownJson {
    star: bool,
    direct: bool,
    category: CategoryJson,
    objects: Vec<ObjectDecode>,
    morphisms: Vec<MorphismDecode>,
}

/// `Down(C)` in the category format, with its direct Reedy structure
/// (everything in `C₊`) and the decode tables.
pub fn down_to_json(rc: &ReedyCategory, d: &DownCategory) -> String {
    let c = &rc.cat;
    let labels = |ms: &[MorId]| ms.iter().map(|&m| c.label(m).to_string()).collect::<Vec<_>>();
    let direct = check_direct(&d.cat).direct;
    let structure = direct.then(|| {
        let all: Vec<MorId> = d.cat.morphism_ids().collect();
        ReedyCategory::new(d.cat.clone(), d.cat.identities(), &all).expect("ids in range")
    });
    let out = DownJson {
        star: d.star,
        direct,
        category: CategoryJson::from_category(&d.cat, structure.as_ref()),
        objects: d
            .cat
            .objects()
            .map(|x| {
                let o = d.object(x);
                ObjectDecode { id: x, base: c.obj_label(o.base).to_string(), chain: labels(&o.chain) }
            })
            .collect(),
        morphisms: d
            .decode
            .iter()
            .enumerate()
            .map(|(i, m)| MorphismDecode { id: i as MorId, alpha: m.alpha.values.clone(), theta: labels(&m.theta) })
            .collect(),
    };
    serde_json::to_string_pretty(&out).expect("down JSON")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn w3_round_trips() {
        let w = corpus::w3();
        let back = parse_category(&to_json(&w.cat, Some(&w))).unwrap();
        assert_eq!(back.cat, w.cat);
        assert_eq!(back.reedy.unwrap(), w);
    }

    #[test]
    fn missing_pair_is_a_parse_error() {
        let w = corpus::w3();
        let mut j = CategoryJson::from_category(&w.cat, None);
        j.compose.retain(|e| e[..2] != [4, 3]);
        assert!(matches!(j.into_loaded(), Err(Error::Parse(_))));
    }

    #[test]
    fn dot_skips_identities() {
        let dot = to_dot(&corpus::w3().cat, "W3");
        assert_eq!(dot.matches("->").count(), 3);
        assert!(dot.contains("\"0\" -> \"2\" [label=\"f\"]"));
    }
}

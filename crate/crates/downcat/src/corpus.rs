//! Builtin Reedy categories, generated in code so ids are reproducible.

use crate::config::Bounds;
use crate::error::{Error, Result};
use crate::fincat::{build, FinCategory, MorId, Morphism, ObjId};
use crate::reedy::{truncated_simplex_category, ReedyCategory};

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Source {
    Builtin,
    File,
}

#[derive(Clone, Debug)]
pub struct CorpusEntry {
    pub name: String,
    pub source: Source,
    pub data: ReedyCategory,
}

/// Morphism ids of [`w3`].
pub mod w3_ids {
    use crate::fincat::MorId;
    pub const ID0: MorId = 0;
    pub const ID1: MorId = 1;
    pub const ID2: MorId = 2;
    pub const F: MorId = 3;
    pub const G: MorId = 4;
    pub const GF: MorId = 5;
    /// Only in `C′`.
    pub const H: MorId = 6;
}

fn three_chain(with_h: bool) -> FinCategory {
    use w3_ids::*;
    let objects = vec!["0".to_string(), "1".to_string(), "2".to_string()];
    let mut morphisms = vec![
        Morphism { src: 0, dst: 0, label: "id0".into() },
        Morphism { src: 1, dst: 1, label: "id1".into() },
        Morphism { src: 2, dst: 2, label: "id2".into() },
        Morphism { src: 0, dst: 2, label: "f".into() },
        Morphism { src: 2, dst: 1, label: "g".into() },
        Morphism { src: 0, dst: 1, label: "g∘f".into() },
    ];
    if with_h {
        morphisms.push(Morphism { src: 0, dst: 1, label: "h".into() });
    }
    let ids: [MorId; 3] = [ID0, ID1, ID2];
    FinCategory::from_fn(objects, morphisms, ids.to_vec(), |g, f| {
        if ids.contains(&f) {
            g
        } else if ids.contains(&g) {
            f
        } else {
            debug_assert_eq!((g, f), (G, F));
            GF
        }
    })
    .expect("three-object chain tables")
}

/// The poset `0 ≤ 2 ≤ 1` with `g: 2 → 1` in `C₋` and `f`, `g∘f` in `C₊`.
pub fn w3() -> ReedyCategory {
    use w3_ids::*;
    ReedyCategory::new(three_chain(false), &[ID0, ID1, ID2, G], &[ID0, ID1, ID2, F, GF]).unwrap()
}

/// [`w3`] with a free arrow `h: 0 → 1` adjoined, placed in `C₊`.
pub fn c_prime() -> ReedyCategory {
    use w3_ids::*;
    ReedyCategory::new(three_chain(true), &[ID0, ID1, ID2, G], &[ID0, ID1, ID2, F, GF, H]).unwrap()
}

pub fn discrete(k: usize) -> ReedyCategory {
    ReedyCategory::trivial(build::discrete(k))
}

pub fn truncated_simplex(top: usize, bounds: &Bounds) -> Result<ReedyCategory> {
    Ok(truncated_simplex_category(top, bounds.max_morphisms)?.0)
}

/// Names accepted by [`builtin`].
pub fn builtin_names() -> Vec<String> {
    let mut v = vec!["W3".to_string(), "C'".to_string()];
    v.extend((0..=3).map(|n| format!("TS{n}")));
    v.extend((1..=3).map(|k| format!("discrete{k}")));
    v
}

/// Resolves `W3`, `C'`, `TS<n>` / `TS(<n>)` and `discrete<k>` / `discrete(<k>)`.
pub fn builtin(name: &str, bounds: &Bounds) -> Result<CorpusEntry> {
    let squashed: String = name.chars().filter(|c| !matches!(c, '(' | ')')).collect();
    let data = match squashed.as_str() {
        "W3" | "w3" => w3(),
        "C'" | "Cprime" | "c'" => c_prime(),
        s if s.starts_with("TS") => {
            let n: usize = s[2..].parse().map_err(|_| Error::Parse(format!("unknown builtin {name}")))?;
            truncated_simplex(n, bounds)?
        }
        s if s.starts_with("discrete") => {
            let k: usize = s[8..].parse().map_err(|_| Error::Parse(format!("unknown builtin {name}")))?;
            discrete(k)
        }
        _ => return Err(Error::Parse(format!("unknown builtin {name}"))),
    };
    Ok(CorpusEntry { name: name.to_string(), source: Source::Builtin, data })
}

/// The default corpus in a fixed order.
pub fn default_corpus(bounds: &Bounds) -> Result<Vec<CorpusEntry>> {
    builtin_names().iter().map(|n| builtin(n, bounds)).collect()
}

/// Object id of a labelled object, panicking on typos in fixtures.
pub fn obj(c: &FinCategory, label: &str) -> ObjId {
    c.find_object(label).unwrap_or_else(|| panic!("no object {label}"))
}

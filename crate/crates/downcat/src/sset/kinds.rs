//! Cosimplicial simplicial sets `Δ → sSet` given by explicit cell keys.
//!
//! Each [`Shape`] describes the simplicial set `F[n]` for every `n` together
//! with the action `F(θ)` of monotone maps, which is all the left Kan
//! extension along the Yoneda embedding needs.
//!
//! Key layouts at level `k`:
//! - `Delta`: the values of a monotone map `[k] → [n]`.
//! - `Cyl`: interleaved pairs `(v, e)` of a chain in `[n] × [1]`.
//! - `ESd`: the values of a monotone map `[2k+1] → [n]`.
//! - `ESdI`: `[l, values]` with values a monotone map `I⋆I⋆J → [n]`, `|I| = l`.
//! - `ESdP`: pairs `(a, b)`, `a ≤ b`, of a chain in `Fun([1],[n])`.
//! - `ESdPI`: triples `(t, a, b)`; the vertex `(1, x)` is `(1, x, x)`.
//! - `Dcp`: `[k+1, (x, m, α(0..=m))…, β…]`, a string of `k` morphisms.
//! - `DcpI`: `[k+1, p, Dcp part on p vertices…, y…]`, `p` vertices tagged 0.

use std::collections::HashMap;

use clap::ValueEnum;
use serde::Serialize;

use super::complex::{CellModel, Key};
use crate::error::{Error, Result};
use crate::simplex::SimplexMor;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, ValueEnum)]
pub enum EndofunctorKind {
    Dcp,
    DcpI,
    ESd,
    ESdI,
    ESdP,
    ESdPI,
}

impl EndofunctorKind {
    pub const ALL: [EndofunctorKind; 6] =
        [EndofunctorKind::Dcp, EndofunctorKind::DcpI, EndofunctorKind::ESd, EndofunctorKind::ESdI, EndofunctorKind::ESdP, EndofunctorKind::ESdPI];

    pub fn name(self) -> &'static str {
        match self {
            EndofunctorKind::Dcp => "Dcp",
            EndofunctorKind::DcpI => "DcpI",
            EndofunctorKind::ESd => "ESd",
            EndofunctorKind::ESdI => "ESdI",
            EndofunctorKind::ESdP => "ESd'",
            EndofunctorKind::ESdPI => "ESdI'",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Shape {
    Delta,
    /// `Δⁿ × Δ¹`.
    Cyl,
    Kind(EndofunctorKind),
}

/// A cosimplicial simplicial set. `dcp_bound` caps the source dimension `m`
/// of the `α : [m] → [n]` in the `Dcp` shapes, whose categories are
/// otherwise infinite.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Model {
    pub shape: Shape,
    pub dcp_bound: usize,
}

fn u(v: usize) -> u32 {
    v as u32
}

fn map_values(theta: &SimplexMor, vs: &[u32]) -> Vec<u32> {
    vs.iter().map(|&v| u(theta.at(v as usize))).collect()
}

fn monotone_keys(len_minus_one: usize, n: usize) -> Vec<Key> {
    SimplexMor::all(len_minus_one, n).into_iter().map(|s| s.values.into_iter().map(u).collect()).collect()
}

/// One object `(x, α)` of `Dcp_C[n]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DcpVertex {
    pub x: u32,
    pub alpha: Vec<u32>,
}

impl DcpVertex {
    pub fn last(&self) -> u32 {
        *self.alpha.last().expect("α has a value")
    }
}

/// A string of `Dcp` morphisms: vertices and the `β` between consecutive ones.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DcpString {
    pub verts: Vec<DcpVertex>,
    pub betas: Vec<Vec<u32>>,
}

impl DcpString {
    fn push_body(&self, out: &mut Key) {
        for v in &self.verts {
            out.push(v.x);
            out.push(u(v.alpha.len() - 1));
            out.extend_from_slice(&v.alpha);
        }
        for b in &self.betas {
            out.extend_from_slice(b);
        }
    }

    pub fn encode(&self) -> Key {
        let mut out = vec![u(self.verts.len())];
        self.push_body(&mut out);
        out
    }

    /// Parses `count` vertices starting at `pos`; returns the string and the end position.
    fn parse(key: &[u32], mut pos: usize, count: usize) -> (DcpString, usize) {
        let mut verts = Vec::with_capacity(count);
        for _ in 0..count {
            let x = key[pos];
            let m = key[pos + 1] as usize;
            verts.push(DcpVertex { x, alpha: key[pos + 2..pos + 3 + m].to_vec() });
            pos += 3 + m;
        }
        let mut betas = Vec::with_capacity(count.saturating_sub(1));
        for v in verts.iter().take(count.saturating_sub(1)) {
            let len = v.alpha.len();
            betas.push(key[pos..pos + len].to_vec());
            pos += len;
        }
        (DcpString { verts, betas }, pos)
    }

    pub fn decode(key: &[u32]) -> DcpString {
        DcpString::parse(key, 1, key[0] as usize).0
    }

    fn face(&self, j: usize) -> DcpString {
        let mut s = self.clone();
        let k = s.verts.len() - 1;
        s.verts.remove(j);
        if k == 0 {
            return s;
        }
        if j == 0 {
            s.betas.remove(0);
        } else if j == k {
            s.betas.pop();
        } else {
            let second = s.betas.remove(j);
            let first = &s.betas[j - 1];
            s.betas[j - 1] = first.iter().map(|&i| second[i as usize]).collect();
        }
        s
    }

    fn degen(&self, j: usize) -> DcpString {
        let mut s = self.clone();
        let v = s.verts[j].clone();
        s.betas.insert(j, (0..u(v.alpha.len())).collect());
        s.verts.insert(j, v);
        s
    }

    fn act(&self, theta: &SimplexMor) -> DcpString {
        DcpString {
            verts: self.verts.iter().map(|v| DcpVertex { x: u(theta.at(v.x as usize)), alpha: map_values(theta, &v.alpha) }).collect(),
            betas: self.betas.clone(),
        }
    }
}

/// A `DcpI` string: a `Dcp` prefix followed by tag-1 vertices.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DcpIString {
    pub zero: DcpString,
    pub ones: Vec<u32>,
}

impl DcpIString {
    pub fn encode(&self) -> Key {
        let mut out = vec![u(self.zero.verts.len() + self.ones.len()), u(self.zero.verts.len())];
        self.zero.push_body(&mut out);
        out.extend_from_slice(&self.ones);
        out
    }

    pub fn decode(key: &[u32]) -> DcpIString {
        let total = key[0] as usize;
        let p = key[1] as usize;
        let (zero, pos) = DcpString::parse(key, 2, p);
        DcpIString { zero, ones: key[pos..pos + total - p].to_vec() }
    }
}

/// Objects of the truncated `Dcp_C[n]` and their morphisms.
#[derive(Clone, Debug)]
struct DcpGraph {
    verts: Vec<DcpVertex>,
    /// `(target, β)` for each source.
    out: Vec<Vec<(usize, Vec<u32>)>>,
}

impl DcpGraph {
    fn new(n: usize, bound: usize) -> DcpGraph {
        let mut verts = Vec::new();
        for m in 0..=bound {
            for a in SimplexMor::all(m, n) {
                for x in 0..=a.at(0) {
                    verts.push(DcpVertex { x: u(x), alpha: a.values.iter().map(|&v| u(v)).collect() });
                }
            }
        }
        verts.sort();
        let mut out = vec![Vec::new(); verts.len()];
        for (i, s) in verts.iter().enumerate() {
            for (j, t) in verts.iter().enumerate() {
                if s.x > t.x {
                    continue;
                }
                let (ms, mt) = (s.alpha.len() - 1, t.alpha.len() - 1);
                for b in SimplexMor::all(ms, mt) {
                    if b.values.iter().zip(&s.alpha).all(|(&bi, &ai)| t.alpha[bi] == ai) {
                        out[i].push((j, b.values.iter().map(|&v| u(v)).collect()));
                    }
                }
            }
        }
        DcpGraph { verts, out }
    }

    fn strings(&self, k: usize, limit: usize) -> Result<Vec<DcpString>> {
        let mut acc: Vec<(usize, DcpString)> =
            self.verts.iter().enumerate().map(|(i, v)| (i, DcpString { verts: vec![v.clone()], betas: vec![] })).collect();
        for _ in 0..k {
            let mut next = Vec::new();
            for (i, s) in &acc {
                for (j, b) in &self.out[*i] {
                    let mut t = s.clone();
                    t.verts.push(self.verts[*j].clone());
                    t.betas.push(b.clone());
                    next.push((*j, t));
                }
                if next.len() > limit {
                    return Err(Error::size("Dcp strings", limit));
                }
            }
            acc = next;
        }
        Ok(acc.into_iter().map(|(_, s)| s).collect())
    }
}

impl Model {
    pub fn new(shape: Shape, dcp_bound: usize) -> Self {
        Model { shape, dcp_bound }
    }

    pub fn kind(kind: EndofunctorKind, dcp_bound: usize) -> Self {
        Model { shape: Shape::Kind(kind), dcp_bound }
    }

    pub fn name(&self) -> String {
        match self.shape {
            Shape::Delta => "Δ".into(),
            Shape::Cyl => "Δ×Δ1".into(),
            Shape::Kind(k) => k.name().into(),
        }
    }

    /// Element width for the poset-nerve shapes.
    fn poset_width(&self) -> Option<usize> {
        match self.shape {
            Shape::Delta => Some(1),
            Shape::Cyl | Shape::Kind(EndofunctorKind::ESdP) => Some(2),
            Shape::Kind(EndofunctorKind::ESdPI) => Some(3),
            _ => None,
        }
    }

    fn poset_elements(&self, n: usize) -> Vec<Key> {
        let n = u(n);
        let mut out = Vec::new();
        match self.shape {
            Shape::Delta => (0..=n).for_each(|v| out.push(vec![v])),
            Shape::Cyl => (0..=n).for_each(|v| (0..=1).for_each(|e| out.push(vec![v, e]))),
            Shape::Kind(EndofunctorKind::ESdP) => (0..=n).for_each(|a| (a..=n).for_each(|b| out.push(vec![a, b]))),
            Shape::Kind(EndofunctorKind::ESdPI) => {
                (0..=n).for_each(|a| (a..=n).for_each(|b| out.push(vec![0, a, b])));
                (0..=n).for_each(|x| out.push(vec![1, x, x]));
            }
            _ => unreachable!(),
        }
        out.sort();
        out
    }

    /// All `k`-cells of `F[n]`, sorted.
    pub fn cells(&self, n: usize, k: usize, limit: usize) -> Result<Vec<Key>> {
        let mut out = if let Some(w) = self.poset_width() {
            let elems = self.poset_elements(n);
            let leq = |a: &[u32], b: &[u32]| a.iter().zip(b).all(|(x, y)| x <= y);
            let mut acc: Vec<Key> = elems.clone();
            for _ in 0..k {
                let mut next = Vec::new();
                for s in &acc {
                    let last = &s[s.len() - w..];
                    for e in &elems {
                        if leq(last, e) {
                            let mut t = s.clone();
                            t.extend_from_slice(e);
                            next.push(t);
                        }
                    }
                }
                if next.len() > limit {
                    return Err(Error::size(format!("{} cells", self.name()), limit));
                }
                acc = next;
            }
            acc
        } else {
            match self.shape {
                Shape::Kind(EndofunctorKind::ESd) => monotone_keys(2 * k + 1, n),
                Shape::Kind(EndofunctorKind::ESdI) => {
                    let mut v = Vec::new();
                    for l in 0..=k + 1 {
                        for mut key in monotone_keys(k + l, n) {
                            key.insert(0, u(l));
                            v.push(key);
                        }
                    }
                    v
                }
                Shape::Kind(EndofunctorKind::Dcp) => {
                    DcpGraph::new(n, self.dcp_bound).strings(k, limit)?.iter().map(DcpString::encode).collect()
                }
                Shape::Kind(EndofunctorKind::DcpI) => {
                    let g = DcpGraph::new(n, self.dcp_bound);
                    let mut v = Vec::new();
                    for p in 0..=k + 1 {
                        let zeros = if p == 0 { vec![DcpString { verts: vec![], betas: vec![] }] } else { g.strings(p - 1, limit)? };
                        let q = k + 1 - p;
                        for z in zeros {
                            let floor = z.verts.last().map_or(0, |v| v.last() as usize);
                            if q == 0 {
                                v.push(DcpIString { zero: z.clone(), ones: vec![] }.encode());
                                continue;
                            }
                            for ys in SimplexMor::all(q - 1, n) {
                                if ys.at(0) >= floor {
                                    v.push(DcpIString { zero: z.clone(), ones: ys.values.iter().map(|&y| u(y)).collect() }.encode());
                                }
                            }
                        }
                        if v.len() > limit {
                            return Err(Error::size("DcpI cells", limit));
                        }
                    }
                    v
                }
                _ => unreachable!(),
            }
        };
        out.sort();
        out.dedup();
        Ok(out)
    }

    pub fn face(&self, k: usize, key: &[u32], j: usize) -> Key {
        if let Some(w) = self.poset_width() {
            let mut v = key.to_vec();
            v.drain(j * w..(j + 1) * w);
            return v;
        }
        match self.shape {
            Shape::Kind(EndofunctorKind::ESd) => {
                let mut v = key.to_vec();
                v.remove(k + 1 + j);
                v.remove(j);
                v
            }
            Shape::Kind(EndofunctorKind::ESdI) => {
                let l = key[0] as usize;
                let mut v = key[1..].to_vec();
                let l2 = if j < l {
                    v.remove(l + j);
                    v.remove(j);
                    l - 1
                } else {
                    v.remove(l + j);
                    l
                };
                v.insert(0, u(l2));
                v
            }
            Shape::Kind(EndofunctorKind::Dcp) => DcpString::decode(key).face(j).encode(),
            Shape::Kind(EndofunctorKind::DcpI) => {
                let mut s = DcpIString::decode(key);
                let p = s.zero.verts.len();
                if j < p {
                    s.zero = s.zero.face(j);
                } else {
                    s.ones.remove(j - p);
                }
                s.encode()
            }
            _ => unreachable!(),
        }
    }

    pub fn degen(&self, _k: usize, key: &[u32], j: usize) -> Key {
        if let Some(w) = self.poset_width() {
            let mut v = key.to_vec();
            let e: Vec<u32> = key[j * w..(j + 1) * w].to_vec();
            v.splice(j * w..j * w, e);
            return v;
        }
        match self.shape {
            Shape::Kind(EndofunctorKind::ESd) => {
                let k = (key.len() - 2) / 2;
                let (a, b) = key.split_at(k + 1);
                let mut a = a.to_vec();
                let mut b = b.to_vec();
                a.insert(j, a[j]);
                b.insert(j, b[j]);
                a.extend(b);
                a
            }
            Shape::Kind(EndofunctorKind::ESdI) => {
                let l = key[0] as usize;
                let vals = &key[1..];
                let (mut i1, mut i2, mut jj) = (vals[..l].to_vec(), vals[l..2 * l].to_vec(), vals[2 * l..].to_vec());
                let l2 = if j < l {
                    i1.insert(j, i1[j]);
                    i2.insert(j, i2[j]);
                    l + 1
                } else {
                    jj.insert(j - l, jj[j - l]);
                    l
                };
                let mut out = vec![u(l2)];
                out.extend(i1);
                out.extend(i2);
                out.extend(jj);
                out
            }
            Shape::Kind(EndofunctorKind::Dcp) => DcpString::decode(key).degen(j).encode(),
            Shape::Kind(EndofunctorKind::DcpI) => {
                let mut s = DcpIString::decode(key);
                let p = s.zero.verts.len();
                if j < p {
                    s.zero = s.zero.degen(j);
                } else {
                    s.ones.insert(j - p, s.ones[j - p]);
                }
                s.encode()
            }
            _ => unreachable!(),
        }
    }

    /// `F(θ)` on a cell of `F[θ.m]`, landing in `F[θ.n]`.
    pub fn act(&self, theta: &SimplexMor, key: &[u32]) -> Key {
        match self.shape {
            Shape::Delta | Shape::Kind(EndofunctorKind::ESd) => map_values(theta, key),
            Shape::Cyl => key.chunks(2).flat_map(|c| [u(theta.at(c[0] as usize)), c[1]]).collect(),
            Shape::Kind(EndofunctorKind::ESdP) => map_values(theta, key),
            Shape::Kind(EndofunctorKind::ESdPI) => {
                key.chunks(3).flat_map(|c| [c[0], u(theta.at(c[1] as usize)), u(theta.at(c[2] as usize))]).collect()
            }
            Shape::Kind(EndofunctorKind::ESdI) => {
                let mut v = vec![key[0]];
                v.extend(map_values(theta, &key[1..]));
                v
            }
            Shape::Kind(EndofunctorKind::Dcp) => DcpString::decode(key).act(theta).encode(),
            Shape::Kind(EndofunctorKind::DcpI) => {
                let s = DcpIString::decode(key);
                DcpIString { zero: s.zero.act(theta), ones: map_values(theta, &s.ones) }.encode()
            }
        }
    }

    /// Truncation at which the representable `F[n]` has no further
    /// non-degenerate cells, when known.
    pub fn representable_height(&self, n: usize) -> Option<usize> {
        match self.shape {
            Shape::Delta => Some(n),
            Shape::Cyl => Some(n + 1),
            Shape::Kind(EndofunctorKind::ESdP) => Some(2 * n),
            Shape::Kind(EndofunctorKind::ESdPI) => Some(2 * n + 1),
            _ => None,
        }
    }
}

/// Cached cell tables of `F[n]_k`.
#[derive(Clone, Debug)]
pub struct Tables {
    pub model: Model,
    pub limit: usize,
    tables: HashMap<(usize, usize), CellTable>,
}

#[derive(Clone, Debug, Default)]
pub struct CellTable {
    pub keys: Vec<Key>,
    index: HashMap<Key, u32>,
}

impl CellTable {
    pub fn len(&self) -> usize {
        self.keys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.keys.is_empty()
    }

    pub fn find(&self, key: &[u32]) -> Option<u32> {
        self.index.get(key).copied()
    }
}

impl Tables {
    pub fn new(model: Model, limit: usize) -> Self {
        Tables { model, limit, tables: HashMap::new() }
    }

    pub fn ensure(&mut self, n: usize, k: usize) -> Result<()> {
        if !self.tables.contains_key(&(n, k)) {
            let keys = self.model.cells(n, k, self.limit)?;
            let index = keys.iter().enumerate().map(|(i, key)| (key.clone(), i as u32)).collect();
            self.tables.insert((n, k), CellTable { keys, index });
        }
        Ok(())
    }

    pub fn get(&self, n: usize, k: usize) -> &CellTable {
        &self.tables[&(n, k)]
    }
}

/// `F[n]` itself as a cell model.
pub struct Representable {
    pub model: Model,
    pub n: usize,
    pub limit: usize,
}

impl CellModel for Representable {
    fn cells(&self, k: usize) -> Result<Vec<Key>> {
        self.model.cells(self.n, k, self.limit)
    }

    fn face(&self, k: usize, key: &[u32], j: usize) -> Key {
        self.model.face(k, key, j)
    }

    fn degen(&self, k: usize, key: &[u32], j: usize) -> Key {
        self.model.degen(k, key, j)
    }

    fn complete_at(&self, dim: usize) -> bool {
        self.model.representable_height(self.n).is_some_and(|h| dim >= h)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sset::complex::TruncatedSSet;

    fn rep(shape: Shape, n: usize, d: usize) -> TruncatedSSet {
        TruncatedSSet::build("F", d, &Representable { model: Model::new(shape, d), n, limit: usize::MAX }, usize::MAX).unwrap()
    }

    #[test]
    fn representables_satisfy_identities() {
        let shapes = [
            Shape::Delta,
            Shape::Cyl,
            Shape::Kind(EndofunctorKind::Dcp),
            Shape::Kind(EndofunctorKind::DcpI),
            Shape::Kind(EndofunctorKind::ESd),
            Shape::Kind(EndofunctorKind::ESdI),
            Shape::Kind(EndofunctorKind::ESdP),
            Shape::Kind(EndofunctorKind::ESdPI),
        ];
        for s in shapes {
            for n in 0..=2 {
                rep(s, n, 2).check_identities().unwrap_or_else(|e| panic!("{s:?} n={n}: {e}"));
            }
        }
    }

    #[test]
    fn small_vertex_counts() {
        assert_eq!(rep(Shape::Kind(EndofunctorKind::ESdI), 1, 1).num_cells(0), 5);
        assert_eq!(rep(Shape::Kind(EndofunctorKind::ESd), 2, 1).num_cells(0), 6);
        assert_eq!(rep(Shape::Kind(EndofunctorKind::ESdP), 1, 2).nondeg_profile(), vec![3, 3, 1]);
    }

    #[test]
    fn action_is_functorial() {
        let shapes = [Shape::Kind(EndofunctorKind::Dcp), Shape::Kind(EndofunctorKind::DcpI), Shape::Kind(EndofunctorKind::ESdI)];
        for s in shapes {
            let m = Model::new(s, 1);
            for a in m.cells(1, 1, usize::MAX).unwrap() {
                for t in SimplexMor::all(1, 2) {
                    for t2 in SimplexMor::all(2, 2) {
                        let lhs = m.act(&t2.after(&t), &a);
                        let rhs = m.act(&t2, &m.act(&t, &a));
                        assert_eq!(lhs, rhs);
                    }
                    let img = m.act(&t, &a);
                    assert!(m.cells(2, 1, usize::MAX).unwrap().contains(&img));
                    for j in 0..=1 {
                        assert_eq!(m.act(&t, &m.face(1, &a, j)), m.face(1, &img, j));
                    }
                }
            }
        }
    }
}

//! Left Kan extensions along the Yoneda embedding as explicit colimits.
//!
//! A node is a pair `(x, a)` with `x` a non-degenerate `n`-simplex of the
//! input and `a` a cell of `F[n]`. For every face `d_j x = s^* y` (with `y`
//! non-degenerate) and every cell `a'` of `F[n-1]` the nodes
//! `(x, F(δ_j) a')` and `(y, F(s) a')` are glued.

use super::complex::{Key, SimplicialMap, TruncatedSSet, UnionFind};
use super::kinds::{Model, Tables};
use crate::error::{Error, Result};
use crate::simplex::SimplexMor;

/// The nodes of `F X` without the gluing: every cell of the colimit is
/// represented by at least one node.
#[derive(Clone, Debug)]
pub struct Presentation {
    pub tables: Tables,
    pub dim: usize,
    /// Input dimensions used: non-degenerate simplices up to this level.
    pub input_dim: usize,
    /// Non-degenerate input simplices by level.
    pub simplices: Vec<Vec<u32>>,
    /// `offsets[k][n][i]`: first node id of simplex `simplices[n][i]` at level `k`.
    offsets: Vec<Vec<Vec<u64>>>,
    node_counts: Vec<u64>,
}

/// A node `(n, x, a)`: `x` a cell id in the input at level `n`, `a` an index into `F[n]_k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Node {
    pub n: usize,
    pub x: u32,
    pub a: u32,
}

impl Presentation {
    /// Uses non-degenerate simplices of `x` up to `x.dim`. The result is the
    /// extension of the `x.dim`-skeleton; exact in every level when `x` is complete.
    pub fn new(model: Model, x: &TruncatedSSet, dim: usize, limit: usize) -> Result<Self> {
        let input_dim = x.dim;
        let mut tables = Tables::new(model, limit);
        let simplices: Vec<Vec<u32>> = (0..=input_dim).map(|n| x.nondeg_cells(n).collect()).collect();
        let mut offsets = Vec::new();
        let mut node_counts = Vec::new();
        for k in 0..=dim {
            let mut total = 0u64;
            let mut per = Vec::new();
            for (n, cells) in simplices.iter().enumerate() {
                if cells.is_empty() {
                    per.push(Vec::new());
                    continue;
                }
                tables.ensure(n, k)?;
                let size = tables.get(n, k).len() as u64;
                let mut row = Vec::with_capacity(cells.len());
                for _ in cells {
                    row.push(total);
                    total += size;
                }
                per.push(row);
            }
            if total > limit as u64 {
                return Err(Error::size(format!("{} nodes at level {k}", model.name()), limit));
            }
            offsets.push(per);
            node_counts.push(total);
        }
        for n in 1..=input_dim {
            for k in 0..=dim {
                tables.ensure(n - 1, k)?;
            }
        }
        Ok(Presentation { tables, dim, input_dim, simplices, offsets, node_counts })
    }

    pub fn model(&self) -> &Model {
        &self.tables.model
    }

    pub fn node_count(&self, k: usize) -> u64 {
        self.node_counts[k]
    }

    fn local(&self, n: usize, x: u32) -> usize {
        self.simplices[n].binary_search(&x).expect("non-degenerate simplex")
    }

    pub fn node_id(&self, k: usize, node: Node) -> u64 {
        self.offsets[k][node.n][self.local(node.n, node.x)] + node.a as u64
    }

    pub fn key(&self, k: usize, node: Node) -> &Key {
        &self.tables.get(node.n, k).keys[node.a as usize]
    }

    /// Node of `(n, x, key)`.
    pub fn node_of(&self, k: usize, n: usize, x: u32, key: &[u32]) -> Result<Node> {
        let a = self
            .tables
            .get(n, k)
            .find(key)
            .ok_or_else(|| Error::Invalid(format!("{} has no cell {key:?} over [{n}] at level {k}", self.model().name())))?;
        Ok(Node { n, x, a })
    }

    /// All nodes at level `k`, in id order.
    pub fn nodes(&self, k: usize) -> impl Iterator<Item = Node> + '_ {
        self.simplices.iter().enumerate().flat_map(move |(n, cells)| {
            let size = if cells.is_empty() { 0 } else { self.tables.get(n, k).len() as u32 };
            cells.iter().flat_map(move |&x| (0..size).map(move |a| Node { n, x, a }))
        })
    }

    /// Generating identifications at level `k`. Calls `f(lhs, rhs)`.
    pub fn relations(&self, input: &TruncatedSSet, k: usize, mut f: impl FnMut(Node, Node) -> Result<()>) -> Result<()> {
        let model = *self.model();
        for n in 1..=self.input_dim {
            let faces_srcs = self.tables.get(n - 1, k);
            for &x in &self.simplices[n] {
                for j in 0..=n {
                    let dj = SimplexMor::delta(n, j);
                    let y = input.face(n, x, j);
                    let ez = input.ez(n - 1, y);
                    for key in &faces_srcs.keys {
                        let lhs = self.node_of(k, n, x, &model.act(&dj, key))?;
                        let rhs = self.node_of(k, ez.level, ez.cell, &model.act(&ez.surj, key))?;
                        f(lhs, rhs)?;
                    }
                }
            }
        }
        Ok(())
    }

    /// Node of `θ^* x`-style data: a cell `c` of the input at level `n`
    /// paired with `key ∈ F[n]_k`, moved to its Eilenberg–Zilber core.
    pub fn node_over(&self, input: &TruncatedSSet, k: usize, n: usize, c: u32, key: &[u32]) -> Result<Node> {
        let ez = input.ez(n, c);
        let moved = self.model().act(&ez.surj, key);
        self.node_of(k, ez.level, ez.cell, &moved)
    }
}

/// `F X` with the gluing carried out.
#[derive(Clone, Debug)]
pub struct KanExtension {
    pub pres: Presentation,
    pub result: TruncatedSSet,
    /// Class of each node id, per level.
    class_of: Vec<Vec<u32>>,
    /// Least node of each class, per level.
    reps: Vec<Vec<Node>>,
}

impl KanExtension {
    pub fn build(model: Model, input: &TruncatedSSet, dim: usize, limit: usize) -> Result<Self> {
        let pres = Presentation::new(model, input, dim, limit)?;
        let mut class_of = Vec::new();
        let mut reps: Vec<Vec<Node>> = Vec::new();
        for k in 0..=dim {
            let mut uf = UnionFind::new(pres.node_count(k) as usize);
            pres.relations(input, k, |a, b| {
                uf.union(pres.node_id(k, a) as usize, pres.node_id(k, b) as usize);
                Ok(())
            })?;
            let (cls, count) = uf.classes();
            let mut rep: Vec<Option<Node>> = vec![None; count];
            for node in pres.nodes(k) {
                let c = cls[pres.node_id(k, node) as usize] as usize;
                if rep[c].is_none() {
                    rep[c] = Some(node);
                }
            }
            class_of.push(cls);
            reps.push(rep.into_iter().map(|r| r.expect("every class has a node")).collect());
        }
        let keys: Vec<Vec<Key>> = reps
            .iter()
            .enumerate()
            .map(|(k, rs)| {
                rs.iter()
                    .map(|r| {
                        let mut key = vec![r.n as u32, r.x];
                        key.extend_from_slice(pres.key(k, *r));
                        key
                    })
                    .collect()
            })
            .collect();
        let model = *pres.model();
        let mut faces = Vec::new();
        let mut degens = Vec::new();
        for k in 0..=dim {
            let mut fk = Vec::with_capacity(reps[k].len());
            let mut dk = Vec::with_capacity(reps[k].len());
            for r in &reps[k] {
                let key = pres.key(k, *r);
                if k > 0 {
                    let mut row = Vec::with_capacity(k + 1);
                    for j in 0..=k {
                        let node = pres.node_of(k - 1, r.n, r.x, &model.face(k, key, j))?;
                        row.push(class_of[k - 1][pres.node_id(k - 1, node) as usize]);
                    }
                    fk.push(row);
                } else {
                    fk.push(Vec::new());
                }
                if k < dim {
                    let mut row = Vec::with_capacity(k + 1);
                    for j in 0..=k {
                        // level k+1 tables exist because k < dim
                        let node = pres.node_of(k + 1, r.n, r.x, &model.degen(k, key, j))?;
                        row.push(node);
                    }
                    dk.push(row);
                }
            }
            faces.push(fk);
            degens.push(dk);
        }
        let degens: Vec<Vec<Vec<u32>>> = degens
            .into_iter()
            .enumerate()
            .map(|(k, rows)| {
                rows.into_iter().map(|row| row.into_iter().map(|node| class_of[k + 1][pres.node_id(k + 1, node) as usize]).collect()).collect()
            })
            .collect();
        let result = TruncatedSSet::from_tables(format!("{} {}", model.name(), input.name), dim, false, keys, faces, degens);
        Ok(KanExtension { pres, result, class_of, reps })
    }

    pub fn class(&self, k: usize, node: Node) -> u32 {
        self.class_of[k][self.pres.node_id(k, node) as usize]
    }

    pub fn rep(&self, k: usize, c: u32) -> Node {
        self.reps[k][c as usize]
    }

    pub fn class_of_key(&self, k: usize, n: usize, x: u32, key: &[u32]) -> Result<u32> {
        Ok(self.class(k, self.pres.node_of(k, n, x, key)?))
    }

    /// The map induced by a natural transformation `F ⇒ G` given on keys.
    pub fn natural_map(&self, target: &KanExtension, eta: impl Fn(usize, usize, &[u32]) -> Key) -> Result<SimplicialMap> {
        let dim = self.result.dim.min(target.result.dim);
        let mut levels = Vec::new();
        for k in 0..=dim {
            let mut row = Vec::with_capacity(self.reps[k].len());
            for r in &self.reps[k] {
                let key = eta(r.n, k, self.pres.key(k, *r));
                row.push(target.class_of_key(k, r.n, r.x, &key)?);
            }
            levels.push(row);
        }
        let map = SimplicialMap { levels };
        map.check(&self.result, &target.result)?;
        Ok(map)
    }

    /// `F(g)` for a simplicial map `g : X → Y`, where `target` is `F Y`.
    pub fn induced_map(&self, y: &TruncatedSSet, g: &SimplicialMap, target: &KanExtension) -> Result<SimplicialMap> {
        let dim = self.result.dim.min(target.result.dim);
        let mut levels = Vec::new();
        for k in 0..=dim {
            let mut row = Vec::with_capacity(self.reps[k].len());
            for r in &self.reps[k] {
                let gx = g.at(r.n, r.x);
                let node = target.pres.node_over(y, k, r.n, gx, self.pres.key(k, *r))?;
                row.push(target.class(k, node));
            }
            levels.push(row);
        }
        let map = SimplicialMap { levels };
        map.check(&self.result, &target.result)?;
        Ok(map)
    }

    /// `X → F X` from a transformation `Δ ⇒ F` given on `Δ`-keys.
    pub fn unit_map(&self, input: &TruncatedSSet, eta: impl Fn(usize, usize, &[u32]) -> Key) -> Result<SimplicialMap> {
        let dim = input.dim.min(self.result.dim);
        let mut levels = Vec::new();
        for k in 0..=dim {
            let mut row = Vec::with_capacity(input.num_cells(k));
            for c in 0..input.num_cells(k) as u32 {
                let ez = input.ez(k, c);
                let dkey: Key = ez.surj.values.iter().map(|&v| v as u32).collect();
                let key = eta(ez.level, k, &dkey);
                row.push(self.class_of_key(k, ez.level, ez.cell, &key)?);
            }
            levels.push(row);
        }
        let map = SimplicialMap { levels };
        map.check(input, &self.result)?;
        Ok(map)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sset::complex::{boundary_simplex, standard_simplex};
    use crate::sset::kinds::{EndofunctorKind, Shape};

    #[test]
    fn delta_extension_recovers_the_input() {
        let b = boundary_simplex(2, 2);
        let k = KanExtension::build(Model::new(Shape::Delta, 2), &b, 2, 1 << 20).unwrap();
        k.result.check_identities().unwrap();
        assert_eq!(k.result.cell_profile(), b.cell_profile());
    }

    #[test]
    fn esdi_of_interval_has_five_vertices() {
        let d1 = standard_simplex(Some(1), 1);
        let k = KanExtension::build(Model::kind(EndofunctorKind::ESdI, 1), &d1, 1, 1 << 20).unwrap();
        assert_eq!(k.result.num_cells(0), 5);
    }
}

//! Truncated simplicial sets with explicit face and degeneracy tables.

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::fincat::FinCategory;
use crate::simplex::SimplexMor;

/// Cell keys. Their layout depends on the construction.
pub type Key = Vec<u32>;

/// Source of cells for [`TruncatedSSet::build`].
pub trait CellModel {
    /// Sorted, duplicate-free keys of the `k`-cells.
    fn cells(&self, k: usize) -> Result<Vec<Key>>;
    fn face(&self, k: usize, key: &[u32], j: usize) -> Key;
    fn degen(&self, k: usize, key: &[u32], j: usize) -> Key;
    /// `true` when every cell above `dim` is degenerate.
    fn complete_at(&self, _dim: usize) -> bool {
        false
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Level {
    pub keys: Vec<Key>,
    pub faces: Vec<Vec<u32>>,
    /// Absent at the top level.
    pub degens: Vec<Vec<u32>>,
    pub nondeg: Vec<bool>,
    index: HashMap<Key, u32>,
}

impl Level {
    pub fn len(&self) -> usize {
        self.keys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.keys.is_empty()
    }
}

/// Eilenberg–Zilber data: `x = s^* y` with `y` non-degenerate.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Ez {
    pub level: usize,
    pub cell: u32,
    pub surj: SimplexMor,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedSSet {
    pub name: String,
    pub dim: usize,
    /// All cells above `dim` are degenerate.
    pub complete: bool,
    pub levels: Vec<Level>,
    ez: Vec<Vec<Ez>>,
}

impl TruncatedSSet {
    pub fn build(name: impl Into<String>, dim: usize, model: &impl CellModel, max_cells: usize) -> Result<Self> {
        let mut keys = Vec::with_capacity(dim + 1);
        for k in 0..=dim {
            let ks = model.cells(k)?;
            if ks.len() > max_cells {
                return Err(Error::size(format!("cells at level {k}"), max_cells));
            }
            keys.push(ks);
        }
        let complete = model.complete_at(dim);
        Self::from_keys(name, dim, complete, keys, |k, key, j| model.face(k, key, j), |k, key, j| model.degen(k, key, j))
    }

    /// Builds from per-level keys and key-level structure maps.
    pub fn from_keys(
        name: impl Into<String>,
        dim: usize,
        complete: bool,
        keys: Vec<Vec<Key>>,
        face: impl Fn(usize, &[u32], usize) -> Key,
        degen: impl Fn(usize, &[u32], usize) -> Key,
    ) -> Result<Self> {
        let mut levels: Vec<Level> = keys
            .into_iter()
            .map(|ks| {
                let index = ks.iter().enumerate().map(|(i, k)| (k.clone(), i as u32)).collect::<HashMap<_, _>>();
                Level { keys: ks, index, ..Level::default() }
            })
            .collect();
        let lookup = |levels: &[Level], k: usize, key: &Key| -> Result<u32> {
            levels[k]
                .index
                .get(key)
                .copied()
                .ok_or_else(|| Error::Invalid(format!("structure map leaves the cell set at level {k}: {key:?}")))
        };
        for k in 1..=dim {
            let mut faces = Vec::with_capacity(levels[k].len());
            for key in &levels[k].keys {
                let row = (0..=k).map(|j| lookup(&levels, k - 1, &face(k, key, j))).collect::<Result<Vec<_>>>()?;
                faces.push(row);
            }
            levels[k].faces = faces;
        }
        for k in 0..dim {
            let mut degens = Vec::with_capacity(levels[k].len());
            for key in &levels[k].keys {
                let row = (0..=k).map(|j| lookup(&levels, k + 1, &degen(k, key, j))).collect::<Result<Vec<_>>>()?;
                degens.push(row);
            }
            levels[k].degens = degens;
        }
        Ok(Self::finish(name.into(), dim, complete, levels))
    }

    /// Builds from explicit tables (keys may be arbitrary labels).
    pub fn from_tables(
        name: impl Into<String>,
        dim: usize,
        complete: bool,
        keys: Vec<Vec<Key>>,
        faces: Vec<Vec<Vec<u32>>>,
        degens: Vec<Vec<Vec<u32>>>,
    ) -> Self {
        let levels = keys
            .into_iter()
            .zip(faces)
            .zip(degens)
            .map(|((ks, f), d)| {
                let index = ks.iter().enumerate().map(|(i, k)| (k.clone(), i as u32)).collect();
                Level { keys: ks, faces: f, degens: d, nondeg: Vec::new(), index }
            })
            .collect();
        Self::finish(name.into(), dim, complete, levels)
    }

    fn finish(name: String, dim: usize, complete: bool, mut levels: Vec<Level>) -> Self {
        let mut ez: Vec<Vec<Ez>> = Vec::with_capacity(dim + 1);
        for k in 0..=dim {
            let n = levels[k].len();
            let mut nondeg = vec![true; n];
            let mut row = Vec::with_capacity(n);
            for c in 0..n {
                let hit = if k == 0 {
                    None
                } else {
                    (0..k).find(|&j| {
                        let y = levels[k].faces[c][j];
                        levels[k - 1].degens[y as usize][j] == c as u32
                    })
                };
                match hit {
                    None => row.push(Ez { level: k, cell: c as u32, surj: SimplexMor::identity(k) }),
                    Some(j) => {
                        nondeg[c] = false;
                        let y = levels[k].faces[c][j];
                        let inner = &ez[k - 1][y as usize];
                        row.push(Ez {
                            level: inner.level,
                            cell: inner.cell,
                            surj: inner.surj.after(&SimplexMor::sigma(k - 1, j)),
                        });
                    }
                }
            }
            levels[k].nondeg = nondeg;
            ez.push(row);
        }
        TruncatedSSet { name, dim, complete, levels, ez }
    }

    pub fn num_cells(&self, k: usize) -> usize {
        self.levels.get(k).map_or(0, Level::len)
    }

    pub fn key(&self, k: usize, c: u32) -> &Key {
        &self.levels[k].keys[c as usize]
    }

    pub fn find(&self, k: usize, key: &[u32]) -> Option<u32> {
        self.levels.get(k)?.index.get(key).copied()
    }

    pub fn face(&self, k: usize, c: u32, j: usize) -> u32 {
        self.levels[k].faces[c as usize][j]
    }

    pub fn degen(&self, k: usize, c: u32, j: usize) -> u32 {
        self.levels[k].degens[c as usize][j]
    }

    pub fn is_nondeg(&self, k: usize, c: u32) -> bool {
        self.levels[k].nondeg[c as usize]
    }

    pub fn nondeg_cells(&self, k: usize) -> impl Iterator<Item = u32> + '_ {
        let lv = &self.levels[k];
        (0..lv.len() as u32).filter(move |&c| lv.nondeg[c as usize])
    }

    pub fn nondeg_count(&self, k: usize) -> usize {
        self.levels.get(k).map_or(0, |l| l.nondeg.iter().filter(|&&b| b).count())
    }

    pub fn ez(&self, k: usize, c: u32) -> &Ez {
        &self.ez[k][c as usize]
    }

    /// The `i`-th vertex.
    pub fn vertex(&self, k: usize, c: u32, i: usize) -> u32 {
        self.act(k, c, &SimplexMor::iota(k, &[i]))
    }

    /// `θ^* c` for `θ : [m] → [k]`, with `m ≤ dim`.
    pub fn act(&self, k: usize, c: u32, theta: &SimplexMor) -> u32 {
        assert_eq!(theta.n, k);
        let (sigma, delta) = theta.image_factorization();
        let mut level = k;
        let mut cell = c;
        let hit: Vec<bool> = (0..=k).map(|v| delta.values.contains(&v)).collect();
        for v in (0..=k).rev() {
            if !hit[v] {
                cell = self.face(level, cell, v);
                level -= 1;
            }
        }
        for i in 1..=sigma.m {
            if sigma.values[i] == sigma.values[i - 1] {
                cell = self.degen(level, cell, i - 1);
                level += 1;
            }
        }
        cell
    }

    /// Full scan of the simplicial identities on stored levels.
    pub fn check_identities(&self) -> Result<()> {
        let bad = |what: &str, k: usize, c: u32, i: usize, j: usize| {
            Err(Error::Invalid(format!("{}: {what} fails at level {k}, cell {c}, indices ({i},{j})", self.name)))
        };
        for k in 2..=self.dim {
            for c in 0..self.num_cells(k) as u32 {
                for j in 1..=k {
                    for i in 0..j {
                        if self.face(k - 1, self.face(k, c, j), i) != self.face(k - 1, self.face(k, c, i), j - 1) {
                            return bad("d_i d_j = d_{j-1} d_i", k, c, i, j);
                        }
                    }
                }
            }
        }
        for k in 0..self.dim {
            for c in 0..self.num_cells(k) as u32 {
                for j in 0..=k {
                    let s = self.degen(k, c, j);
                    for i in 0..=k + 1 {
                        let lhs = self.face(k + 1, s, i);
                        let ok = if i == j || i == j + 1 {
                            lhs == c
                        } else if i < j {
                            lhs == self.degen(k - 1, self.face(k, c, i), j - 1)
                        } else {
                            lhs == self.degen(k - 1, self.face(k, c, i - 1), j)
                        };
                        if !ok {
                            return bad("d_i s_j", k, c, i, j);
                        }
                    }
                    if k + 1 < self.dim {
                        for i in 0..=j {
                            if self.degen(k + 1, s, i) != self.degen(k + 1, self.degen(k, c, i), j + 1) {
                                return bad("s_i s_j = s_{j+1} s_i", k, c, i, j);
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// Non-degenerate cells per level.
    pub fn nondeg_profile(&self) -> Vec<usize> {
        (0..=self.dim).map(|k| self.nondeg_count(k)).collect()
    }

    pub fn cell_profile(&self) -> Vec<usize> {
        (0..=self.dim).map(|k| self.num_cells(k)).collect()
    }

    /// Fails unless level `k` is exactly the untruncated one.
    pub fn require_level(&self, k: usize) -> Result<()> {
        if k <= self.dim {
            Ok(())
        } else {
            Err(Error::InsufficientTruncation(format!("{} is stored up to level {}, level {k} is needed", self.name, self.dim)))
        }
    }
}

impl fmt::Display for TruncatedSSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (dim {}): cells {:?}, non-degenerate {:?}", self.name, self.dim, self.cell_profile(), self.nondeg_profile())
    }
}

/// A levelwise cell map.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialMap {
    pub levels: Vec<Vec<u32>>,
}

impl SimplicialMap {
    pub fn identity(x: &TruncatedSSet) -> Self {
        SimplicialMap { levels: (0..=x.dim).map(|k| (0..x.num_cells(k) as u32).collect()).collect() }
    }

    pub fn at(&self, k: usize, c: u32) -> u32 {
        self.levels[k][c as usize]
    }

    pub fn dim(&self) -> usize {
        self.levels.len().saturating_sub(1)
    }

    /// `self` followed by `g`.
    pub fn then(&self, g: &SimplicialMap) -> SimplicialMap {
        SimplicialMap {
            levels: self.levels.iter().zip(&g.levels).map(|(a, b)| a.iter().map(|&c| b[c as usize]).collect()).collect(),
        }
    }

    pub fn check(&self, src: &TruncatedSSet, dst: &TruncatedSSet) -> Result<()> {
        let top = src.dim.min(dst.dim).min(self.dim());
        for k in 0..=top {
            if self.levels[k].len() != src.num_cells(k) {
                return Err(Error::Invalid(format!("map has {} cells at level {k}, source has {}", self.levels[k].len(), src.num_cells(k))));
            }
            for c in 0..src.num_cells(k) as u32 {
                let fc = self.at(k, c);
                if k > 0 {
                    for j in 0..=k {
                        if self.at(k - 1, src.face(k, c, j)) != dst.face(k, fc, j) {
                            return Err(Error::Invalid(format!("map does not commute with d_{j} at level {k}, cell {c}")));
                        }
                    }
                }
                if k < top {
                    for j in 0..=k {
                        if self.at(k + 1, src.degen(k, c, j)) != dst.degen(k, fc, j) {
                            return Err(Error::Invalid(format!("map does not commute with s_{j} at level {k}, cell {c}")));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    pub fn is_injective(&self) -> bool {
        self.levels.iter().all(|l| {
            let mut v = l.clone();
            v.sort_unstable();
            v.windows(2).all(|w| w[0] != w[1])
        })
    }

    /// Levelwise surjectivity onto a target with the given cell counts.
    pub fn is_surjective_onto(&self, dst: &TruncatedSSet) -> bool {
        self.levels.iter().enumerate().all(|(k, l)| {
            let mut hit = vec![false; dst.num_cells(k)];
            for &c in l {
                hit[c as usize] = true;
            }
            hit.into_iter().all(|b| b)
        })
    }

    /// Image as a per-level membership mask.
    pub fn image(&self, dst: &TruncatedSSet) -> Subcomplex {
        let mut s = Subcomplex::empty(dst);
        for (k, l) in self.levels.iter().enumerate() {
            for &c in l {
                s.member[k][c as usize] = true;
            }
        }
        s
    }
}

/// Per-level membership masks over a fixed simplicial set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subcomplex {
    pub member: Vec<Vec<bool>>,
}

impl Subcomplex {
    pub fn empty(x: &TruncatedSSet) -> Self {
        Subcomplex { member: (0..=x.dim).map(|k| vec![false; x.num_cells(k)]).collect() }
    }

    pub fn contains(&self, k: usize, c: u32) -> bool {
        self.member[k][c as usize]
    }

    pub fn union_with(&mut self, other: &Subcomplex) {
        for (a, b) in self.member.iter_mut().zip(&other.member) {
            for (x, &y) in a.iter_mut().zip(b) {
                *x |= y;
            }
        }
    }

    pub fn intersection(&self, other: &Subcomplex) -> Subcomplex {
        Subcomplex {
            member: self.member.iter().zip(&other.member).map(|(a, b)| a.iter().zip(b).map(|(&x, &y)| x && y).collect()).collect(),
        }
    }

    /// Adds a cell with all its faces and all degeneracies within the stored range.
    pub fn insert_closed(&mut self, x: &TruncatedSSet, k: usize, c: u32) {
        let mut stack = vec![(k, c)];
        while let Some((k, c)) = stack.pop() {
            if self.member[k][c as usize] {
                continue;
            }
            self.member[k][c as usize] = true;
            if k > 0 {
                for j in 0..=k {
                    stack.push((k - 1, x.face(k, c, j)));
                }
            }
            if k < x.dim {
                for j in 0..=k {
                    stack.push((k + 1, x.degen(k, c, j)));
                }
            }
        }
    }

    /// Closed under faces and degeneracies.
    pub fn is_closed(&self, x: &TruncatedSSet) -> bool {
        (0..=x.dim).all(|k| {
            (0..x.num_cells(k) as u32).filter(|&c| self.contains(k, c)).all(|c| {
                (k == 0 || (0..=k).all(|j| self.contains(k - 1, x.face(k, c, j))))
                    && (k == x.dim || (0..=k).all(|j| self.contains(k + 1, x.degen(k, c, j))))
            })
        })
    }

    pub fn is_full(&self) -> bool {
        self.member.iter().all(|l| l.iter().all(|&b| b))
    }

    pub fn count(&self, k: usize) -> usize {
        self.member[k].iter().filter(|&&b| b).count()
    }
}

/// The nerve of a finite category. Vertices are `[obj]`, `k`-cells the
/// composable strings `[m_1, ..., m_k]` read first to last.
pub struct NerveModel<'a> {
    pub cat: &'a FinCategory,
}

impl NerveModel<'_> {
    fn vertex_of(&self, key: &[u32], k: usize, i: usize) -> u32 {
        let c = self.cat;
        if k == 0 {
            key[0]
        } else if i == 0 {
            c.src(key[0])
        } else {
            c.dst(key[i - 1])
        }
    }

    /// Whether a string of `len` composable non-identity morphisms exists.
    fn has_nondeg_string(&self, len: usize) -> bool {
        let c = self.cat;
        let nonid: Vec<u32> = c.morphism_ids().filter(|&m| !c.is_identity(m)).collect();
        let mut ends: Vec<bool> = vec![false; c.num_objects()];
        for &m in &nonid {
            ends[c.dst(m) as usize] = true;
        }
        if len == 0 {
            return true;
        }
        for _ in 1..len {
            let mut next = vec![false; c.num_objects()];
            for &g in &nonid {
                if ends[c.src(g) as usize] {
                    next[c.dst(g) as usize] = true;
                }
            }
            ends = next;
        }
        ends.into_iter().any(|b| b)
    }
}

impl CellModel for NerveModel<'_> {
    fn cells(&self, k: usize) -> Result<Vec<Key>> {
        let c = self.cat;
        if k == 0 {
            return Ok(c.objects().map(|x| vec![x]).collect());
        }
        let mut out: Vec<Key> = c.morphism_ids().map(|m| vec![m]).collect();
        for _ in 1..k {
            let mut next = Vec::new();
            for s in &out {
                let end = c.dst(*s.last().unwrap());
                for g in c.out_of(end) {
                    let mut t = s.clone();
                    t.push(g);
                    next.push(t);
                }
            }
            out = next;
        }
        out.sort_unstable();
        Ok(out)
    }

    fn face(&self, k: usize, key: &[u32], j: usize) -> Key {
        let c = self.cat;
        if k == 1 {
            return vec![if j == 0 { c.dst(key[0]) } else { c.src(key[0]) }];
        }
        let mut v = key.to_vec();
        if j == 0 {
            v.remove(0);
        } else if j == k {
            v.pop();
        } else {
            let g = v.remove(j);
            v[j - 1] = c.comp(g, v[j - 1]);
        }
        v
    }

    fn degen(&self, k: usize, key: &[u32], j: usize) -> Key {
        let x = self.vertex_of(key, k, j);
        let idm = self.cat.id(x);
        if k == 0 {
            return vec![idm];
        }
        let mut v = key.to_vec();
        v.insert(j, idm);
        v
    }

    fn complete_at(&self, dim: usize) -> bool {
        !self.has_nondeg_string(dim + 1)
    }
}

pub fn nerve_truncated(cat: &FinCategory, d: usize, max_cells: usize) -> Result<TruncatedSSet> {
    TruncatedSSet::build("N", d, &NerveModel { cat }, max_cells)
}

/// `N(F)` for a functor between the categories of two nerves.
pub fn nerve_map(x: &TruncatedSSet, y: &TruncatedSSet, f: &crate::fincat::FunctorData) -> Result<SimplicialMap> {
    let dim = x.dim.min(y.dim);
    let mut levels = Vec::with_capacity(dim + 1);
    for k in 0..=dim {
        let table = if k == 0 { &f.on_objects } else { &f.on_morphisms };
        let row = (0..x.num_cells(k) as u32)
            .map(|c| {
                let key: Key = x.key(k, c).iter().map(|&m| table[m as usize]).collect();
                y.find(k, &key).ok_or_else(|| Error::Invalid(format!("image {key:?} is not a cell of {}", y.name)))
            })
            .collect::<Result<Vec<_>>>()?;
        levels.push(row);
    }
    let map = SimplicialMap { levels };
    map.check(x, y)?;
    Ok(map)
}

/// Monotone maps `[k] → [n]`; `n = -1` gives the empty set.
pub struct SimplexModel {
    pub n: Option<usize>,
    /// Keep only non-surjective maps (the boundary).
    pub boundary: bool,
}

impl CellModel for SimplexModel {
    fn cells(&self, k: usize) -> Result<Vec<Key>> {
        let Some(n) = self.n else { return Ok(Vec::new()) };
        Ok(SimplexMor::all(k, n)
            .into_iter()
            .filter(|s| !self.boundary || !s.is_surjective())
            .map(|s| s.values.iter().map(|&v| v as u32).collect())
            .collect())
    }

    fn face(&self, _k: usize, key: &[u32], j: usize) -> Key {
        let mut v = key.to_vec();
        v.remove(j);
        v
    }

    fn degen(&self, _k: usize, key: &[u32], j: usize) -> Key {
        let mut v = key.to_vec();
        v.insert(j, key[j]);
        v
    }

    fn complete_at(&self, dim: usize) -> bool {
        match self.n {
            None => true,
            Some(n) => dim >= n,
        }
    }
}

/// `Δⁿ` truncated at `d`; `n = None` is `Δ⁻¹ = ∅`.
pub fn standard_simplex(n: Option<usize>, d: usize) -> TruncatedSSet {
    let name = match n {
        Some(n) => format!("Δ{n}"),
        None => "∅".to_string(),
    };
    TruncatedSSet::build(name, d, &SimplexModel { n, boundary: false }, usize::MAX).expect("simplex cells are closed")
}

pub fn boundary_simplex(n: usize, d: usize) -> TruncatedSSet {
    TruncatedSSet::build(format!("∂Δ{n}"), d, &SimplexModel { n: Some(n), boundary: true }, usize::MAX)
        .expect("boundary cells are closed")
}

/// Inclusion of Δ-model sets by key (e.g. `∂Δⁿ ⊆ Δⁿ`).
pub fn inclusion_by_key(src: &TruncatedSSet, dst: &TruncatedSSet) -> Result<SimplicialMap> {
    let levels = (0..=src.dim.min(dst.dim))
        .map(|k| {
            src.levels[k]
                .keys
                .iter()
                .map(|key| dst.find(k, key).ok_or_else(|| Error::Invalid(format!("{key:?} missing from {}", dst.name))))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SimplicialMap { levels })
}

/// The 0-skeleton inclusion `sk₀ X ⊆ X`, with `sk₀ X` truncated like `X`.
pub fn skeleton0(x: &TruncatedSSet) -> (TruncatedSSet, SimplicialMap) {
    let mut keys = Vec::new();
    let mut map = Vec::new();
    for k in 0..=x.dim {
        let cells: Vec<u32> = (0..x.num_cells(k) as u32).filter(|&c| x.ez(k, c).level == 0).collect();
        keys.push(cells.iter().map(|&c| vec![c]).collect::<Vec<Key>>());
        map.push(cells);
    }
    let faces = (0..=x.dim)
        .map(|k| {
            if k == 0 {
                vec![Vec::new(); map[0].len()]
            } else {
                map[k].iter().map(|&c| (0..=k).map(|j| pos(&map[k - 1], x.face(k, c, j))).collect()).collect()
            }
        })
        .collect();
    let degens = (0..=x.dim)
        .map(|k| {
            if k == x.dim {
                Vec::new()
            } else {
                map[k].iter().map(|&c| (0..=k).map(|j| pos(&map[k + 1], x.degen(k, c, j))).collect()).collect()
            }
        })
        .collect();
    let sk = TruncatedSSet::from_tables(format!("sk0 {}", x.name), x.dim, true, keys, faces, degens);
    (sk, SimplicialMap { levels: map })
}

fn pos(sorted: &[u32], c: u32) -> u32 {
    sorted.binary_search(&c).expect("skeleton is closed") as u32
}

/// Pushout of `b ← a → c` with `g : a → c` injective, glued by union-find.
/// Returns the pushout and the two legs.
pub fn pushout(
    a: &TruncatedSSet,
    b: &TruncatedSSet,
    c: &TruncatedSSet,
    f: &SimplicialMap,
    g: &SimplicialMap,
    name: impl Into<String>,
) -> Result<(TruncatedSSet, SimplicialMap, SimplicialMap)> {
    let dim = a.dim.min(b.dim).min(c.dim);
    let mut keys = Vec::new();
    let mut class_b = Vec::new();
    let mut class_c = Vec::new();
    for k in 0..=dim {
        let nb = b.num_cells(k);
        let mut uf = UnionFind::new(nb + c.num_cells(k));
        for x in 0..a.num_cells(k) as u32 {
            uf.union(f.at(k, x) as usize, nb + g.at(k, x) as usize);
        }
        let (cls, count) = uf.classes();
        let mut ks: Vec<Key> = vec![Vec::new(); count];
        for (node, &cl) in cls.iter().enumerate().rev() {
            ks[cl as usize] = if node < nb { vec![0, node as u32] } else { vec![1, (node - nb) as u32] };
        }
        keys.push(ks);
        class_b.push(cls[..nb].to_vec());
        class_c.push(cls[nb..].to_vec());
    }
    let rep = |key: &[u32]| -> (bool, u32) { (key[0] == 0, key[1]) };
    let mut faces = Vec::new();
    let mut degens = Vec::new();
    for k in 0..=dim {
        faces.push(
            keys[k]
                .iter()
                .map(|key| {
                    if k == 0 {
                        return Vec::new();
                    }
                    let (in_b, x) = rep(key);
                    (0..=k)
                        .map(|j| if in_b { class_b[k - 1][b.face(k, x, j) as usize] } else { class_c[k - 1][c.face(k, x, j) as usize] })
                        .collect()
                })
                .collect(),
        );
        degens.push(if k == dim {
            Vec::new()
        } else {
            keys[k]
                .iter()
                .map(|key| {
                    let (in_b, x) = rep(key);
                    (0..=k)
                        .map(|j| if in_b { class_b[k + 1][b.degen(k, x, j) as usize] } else { class_c[k + 1][c.degen(k, x, j) as usize] })
                        .collect()
                })
                .collect()
        });
    }
    let p = TruncatedSSet::from_tables(name, dim, false, keys, faces, degens);
    let lb = SimplicialMap { levels: class_b };
    let lc = SimplicialMap { levels: class_c };
    lb.check(b, &p)?;
    lc.check(c, &p)?;
    Ok((p, lb, lc))
}

/// Plain union-find with path halving; classes numbered by least member.
#[derive(Clone, Debug)]
pub struct UnionFind {
    parent: Vec<u32>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind { parent: (0..n as u32).collect() }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] as usize != x {
            let p = self.parent[x] as usize;
            self.parent[x] = self.parent[p];
            x = p;
        }
        x
    }

    pub fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi] = lo as u32;
        }
    }

    /// Class index of every node, classes ordered by least member.
    pub fn classes(&mut self) -> (Vec<u32>, usize) {
        let n = self.parent.len();
        let mut id = vec![u32::MAX; n];
        let mut out = vec![0u32; n];
        let mut count = 0u32;
        for x in 0..n {
            let r = self.find(x);
            if id[r] == u32::MAX {
                id[r] = count;
                count += 1;
            }
            out[x] = id[r];
        }
        (out, count as usize)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    #[test]
    fn simplex_counts() {
        assert_eq!(standard_simplex(None, 2).cell_profile(), vec![0, 0, 0]);
        assert_eq!(standard_simplex(Some(0), 2).cell_profile(), vec![1, 1, 1]);
        assert_eq!(standard_simplex(Some(2), 2).num_cells(1), 6);
        let d3 = standard_simplex(Some(3), 4);
        d3.check_identities().unwrap();
        assert_eq!(d3.nondeg_profile(), vec![4, 6, 4, 1, 0]);
        assert_eq!(boundary_simplex(3, 3).nondeg_profile(), vec![4, 6, 4, 0]);
    }

    #[test]
    fn act_matches_composition() {
        let d = standard_simplex(Some(2), 3);
        for k in 0..=3 {
            for c in 0..d.num_cells(k) as u32 {
                let x: Vec<usize> = d.key(k, c).iter().map(|&v| v as usize).collect();
                let x = SimplexMor::new(2, x).unwrap();
                for m in 0..=3 {
                    for th in SimplexMor::all(m, k) {
                        let want: Key = x.after(&th).values.iter().map(|&v| v as u32).collect();
                        assert_eq!(d.key(m, d.act(k, c, &th)), &want);
                    }
                }
            }
        }
    }

    #[test]
    fn nerve_of_w3() {
        let rc = corpus::w3();
        let n = nerve_truncated(&rc.cat, 3, usize::MAX).unwrap();
        n.check_identities().unwrap();
        assert_eq!(n.num_cells(1), 6);
        assert_eq!(n.nondeg_profile(), vec![3, 3, 1, 0]);
        let tri: Vec<u32> = n.nondeg_cells(2).collect();
        assert_eq!(n.key(2, tri[0]), &vec![corpus::w3_ids::F, corpus::w3_ids::G]);
        assert!(n.complete);
        let e = n.ez(3, n.degen(2, tri[0], 1));
        assert_eq!((e.level, e.cell), (2, tri[0]));
    }

    #[test]
    fn terminal_nerve_is_a_point() {
        let t = crate::fincat::build::terminal();
        let n = nerve_truncated(&t, 3, usize::MAX).unwrap();
        assert_eq!(n.cell_profile(), vec![1, 1, 1, 1]);
    }
}

//! Reedy structures on finite categories.

use std::collections::HashMap;
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::fincat::{FinCategory, MorId, Morphism, ObjId, ValidationReport, Violation};
use crate::simplex::{hom_count, SimplexMor};

/// A finite category with explicit `C₋`/`C₊` membership.
#[derive(Debug)]
pub struct ReedyCategory {
    pub cat: FinCategory,
    minus: Vec<bool>,
    plus: Vec<bool>,
    degree: OnceLock<std::result::Result<Vec<u32>, Vec<ObjId>>>,
    factors: OnceLock<Vec<Vec<(MorId, MorId)>>>,
}

impl Clone for ReedyCategory {
    fn clone(&self) -> Self {
        ReedyCategory::from_flags(self.cat.clone(), self.minus.clone(), self.plus.clone())
    }
}

impl PartialEq for ReedyCategory {
    fn eq(&self, other: &Self) -> bool {
        self.cat == other.cat && self.minus == other.minus && self.plus == other.plus
    }
}

impl ReedyCategory {
    pub fn new(cat: FinCategory, minus: &[MorId], plus: &[MorId]) -> Result<Self> {
        let n = cat.num_morphisms();
        let mut mf = vec![false; n];
        let mut pf = vec![false; n];
        for (set, flags) in [(minus, &mut mf), (plus, &mut pf)] {
            for &m in set {
                if m as usize >= n {
                    return Err(Error::Parse(format!("Reedy membership names unknown morphism {m}")));
                }
                flags[m as usize] = true;
            }
        }
        Ok(Self::from_flags(cat, mf, pf))
    }

    pub fn from_flags(cat: FinCategory, minus: Vec<bool>, plus: Vec<bool>) -> Self {
        ReedyCategory { cat, minus, plus, degree: OnceLock::new(), factors: OnceLock::new() }
    }

    /// Only identities in either class; valid exactly when `cat` has no
    /// non-identity morphisms.
    pub fn trivial(cat: FinCategory) -> Self {
        let mut flags = vec![false; cat.num_morphisms()];
        for &e in cat.identities() {
            flags[e as usize] = true;
        }
        Self::from_flags(cat, flags.clone(), flags)
    }

    pub fn is_minus(&self, m: MorId) -> bool {
        self.minus[m as usize]
    }

    pub fn is_plus(&self, m: MorId) -> bool {
        self.plus[m as usize]
    }

    pub fn minus_ids(&self) -> Vec<MorId> {
        self.cat.morphism_ids().filter(|&m| self.is_minus(m)).collect()
    }

    pub fn plus_ids(&self) -> Vec<MorId> {
        self.cat.morphism_ids().filter(|&m| self.is_plus(m)).collect()
    }

    /// Non-identity `C₋` morphisms out of `x`.
    pub fn minus_out(&self, x: ObjId) -> Vec<MorId> {
        self.cat.out_of(x).into_iter().filter(|&m| self.is_minus(m) && !self.cat.is_identity(m)).collect()
    }

    /// All `(s, d)` with `s ∈ C₋`, `d ∈ C₊` and `d ∘ s = f`.
    pub fn factorizations(&self, f: MorId) -> Vec<(MorId, MorId)> {
        let c = &self.cat;
        let mut out = Vec::new();
        for s in c.out_of(c.src(f)) {
            if !self.is_minus(s) {
                continue;
            }
            for &d in c.hom(c.dst(s), c.dst(f)) {
                if self.is_plus(d) && c.comp(d, s) == f {
                    out.push((s, d));
                }
            }
        }
        out
    }

    fn factor_table(&self) -> &Vec<Vec<(MorId, MorId)>> {
        self.factors.get_or_init(|| self.cat.morphism_ids().map(|f| self.factorizations(f)).collect())
    }

    /// The unique `(C₋, C₊)` factorization of `f`.
    pub fn factorize(&self, f: MorId) -> Result<(MorId, MorId)> {
        match self.factor_table()[f as usize].as_slice() {
            [one] => Ok(*one),
            _ => Err(Error::NotFactorizable(f)),
        }
    }

    /// The midpoint object of the factorization of `f`.
    pub fn midpoint(&self, f: MorId) -> Result<ObjId> {
        let (s, _) = self.factorize(f)?;
        Ok(self.cat.dst(s))
    }

    /// Edges of the relation `x <′ y`.
    pub fn degree_edges(&self) -> Vec<(ObjId, ObjId)> {
        let c = &self.cat;
        let mut edges = Vec::new();
        for m in c.morphism_ids() {
            if c.is_identity(m) {
                continue;
            }
            if self.is_plus(m) {
                edges.push((c.src(m), c.dst(m)));
            }
            if self.is_minus(m) {
                edges.push((c.dst(m), c.src(m)));
            }
        }
        edges.sort_unstable();
        edges.dedup();
        edges
    }

    /// Longest-path degree along `<′`, or the cycle found.
    pub fn degree(&self) -> Result<&[u32]> {
        let r = self
            .degree
            .get_or_init(|| longest_path_layers(self.cat.num_objects(), &self.degree_edges()));
        match r {
            Ok(d) => Ok(d),
            Err(cycle) => Err(Error::CycleDetected(cycle.clone())),
        }
    }

    pub fn validate(&self) -> ValidationReport {
        let mut report = self.cat.validate();
        if !report.is_empty() {
            return report;
        }
        let c = &self.cat;
        for (which, flags) in [("minus", &self.minus), ("plus", &self.plus)] {
            for x in c.objects() {
                if !flags[c.id(x) as usize] {
                    report.push(Violation::NotWide { which, detail: format!("misses the identity of {}", c.obj_label(x)) });
                }
            }
            for f in c.morphism_ids().filter(|&f| flags[f as usize]) {
                for g in c.out_of(c.dst(f)).into_iter().filter(|&g| flags[g as usize]) {
                    if !flags[c.comp(g, f) as usize] {
                        report.push(Violation::NotWide {
                            which,
                            detail: format!("{} o {} escapes", c.label(g), c.label(f)),
                        });
                    }
                }
            }
        }
        for (f, fs) in self.factor_table().iter().enumerate() {
            if fs.len() != 1 {
                report.push(Violation::Factorization { mor: f as MorId, count: fs.len() });
            }
        }
        if let Err(cycle) = longest_path_layers(c.num_objects(), &self.degree_edges()) {
            report.push(Violation::DegreeCycle { cycle });
        }
        report
    }

    /// Splits an idempotent as `e = d ∘ s` with `s ∘ d = id`.
    pub fn split_idempotent(&self, e: MorId) -> Result<(MorId, MorId)> {
        let c = &self.cat;
        if c.compose(e, e) != Some(e) {
            return Err(Error::NotIdempotent(e));
        }
        let (s, d) = self.factorize(e)?;
        if c.comp(s, d) != c.id(c.dst(s)) {
            return Err(Error::Invalid(format!("factorization of idempotent {e} does not split")));
        }
        Ok((s, d))
    }
}

/// Longest-path layering of a finite digraph; `Err` carries a cycle.
pub fn longest_path_layers(n: usize, edges: &[(ObjId, ObjId)]) -> std::result::Result<Vec<u32>, Vec<ObjId>> {
    let mut succ = vec![Vec::new(); n];
    let mut indeg = vec![0usize; n];
    for &(a, b) in edges {
        succ[a as usize].push(b);
        indeg[b as usize] += 1;
    }
    let mut layer = vec![0u32; n];
    let mut queue: Vec<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
    let mut seen = 0;
    while let Some(v) = queue.pop() {
        seen += 1;
        for &w in &succ[v] {
            let w = w as usize;
            layer[w] = layer[w].max(layer[v] + 1);
            indeg[w] -= 1;
            if indeg[w] == 0 {
                queue.push(w);
            }
        }
    }
    if seen == n {
        return Ok(layer);
    }
    Err(find_cycle(n, &succ))
}

fn find_cycle(n: usize, succ: &[Vec<ObjId>]) -> Vec<ObjId> {
    // 0 unvisited, 1 on stack, 2 done.
    let mut state = vec![0u8; n];
    let mut stack: Vec<(usize, usize)> = Vec::new();
    for start in 0..n {
        if state[start] != 0 {
            continue;
        }
        stack.push((start, 0));
        state[start] = 1;
        while let Some(&mut (v, ref mut i)) = stack.last_mut() {
            if *i < succ[v].len() {
                let w = succ[v][*i] as usize;
                *i += 1;
                if state[w] == 1 {
                    let pos = stack.iter().position(|&(u, _)| u == w).unwrap();
                    return stack[pos..].iter().map(|&(u, _)| u as ObjId).collect();
                }
                if state[w] == 0 {
                    state[w] = 1;
                    stack.push((w, 0));
                }
            } else {
                state[v] = 2;
                stack.pop();
            }
        }
    }
    Vec::new()
}

/// Lookup between monotone maps and morphism ids of a truncated simplex category.
#[derive(Clone, Debug)]
pub struct SimplexIndex {
    pub top: usize,
    offsets: HashMap<(usize, usize), u32>,
    maps: Vec<SimplexMor>,
}

impl SimplexIndex {
    pub fn id_of(&self, a: &SimplexMor) -> MorId {
        self.offsets[&(a.m, a.n)] + a.rank() as u32
    }

    pub fn map_of(&self, id: MorId) -> &SimplexMor {
        &self.maps[id as usize]
    }
}

/// `Δ_{≤N}` with surjections as `C₋` and injections as `C₊`. Ids are grouped in
/// `(m, n)` blocks, lexicographically ranked within a block.
pub fn truncated_simplex_category(top: usize, max_morphisms: usize) -> Result<(ReedyCategory, SimplexIndex)> {
    let total: usize = (0..=top).flat_map(|m| (0..=top).map(move |n| hom_count(m, n))).sum();
    if total > max_morphisms {
        return Err(Error::size(format!("TS({top}) morphisms"), max_morphisms));
    }
    let mut offsets = HashMap::new();
    let mut maps = Vec::with_capacity(total);
    for m in 0..=top {
        for n in 0..=top {
            offsets.insert((m, n), maps.len() as u32);
            maps.extend(SimplexMor::all(m, n));
        }
    }
    let objects = (0..=top).map(|i| format!("[{i}]")).collect();
    let morphisms = maps
        .iter()
        .map(|a| Morphism { src: a.m as ObjId, dst: a.n as ObjId, label: format!("{a}") })
        .collect();
    let index = SimplexIndex { top, offsets, maps };
    let identity = (0..=top).map(|n| index.id_of(&SimplexMor::identity(n))).collect();
    let cat = FinCategory::from_fn(objects, morphisms, identity, |g, f| {
        index.id_of(&index.map_of(g).after(index.map_of(f)))
    })?;
    let minus = index.maps.iter().map(|a| a.is_surjective()).collect();
    let plus = index.maps.iter().map(|a| a.is_injective()).collect();
    Ok((ReedyCategory::from_flags(cat, minus, plus), index))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cycle_witness() {
        let r = longest_path_layers(3, &[(0, 1), (1, 2), (2, 1)]);
        let cycle = r.unwrap_err();
        assert_eq!(cycle.len(), 2);
    }

    #[test]
    fn simplex_sizes() {
        let (ts0, _) = truncated_simplex_category(0, 1000).unwrap();
        assert_eq!(ts0.cat.num_morphisms(), 1);
        let (ts1, _) = truncated_simplex_category(1, 1000).unwrap();
        assert_eq!(ts1.cat.hom(1, 1).len(), 3);
        let (ts3, _) = truncated_simplex_category(3, 1000).unwrap();
        assert_eq!(ts3.cat.num_morphisms(), 121);
        assert!(truncated_simplex_category(3, 100).is_err());
    }
}

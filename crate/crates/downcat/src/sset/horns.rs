//! Horn pairs and replayable filling schedules for the inclusions
//! `ESd Δⁿ ∪ ESd′ ∂Δⁿ ⊆ ESd′ Δⁿ` (plain) and
//! `ESd′ Δⁿ ∪ ESdI Δⁿ ∪ ESdI′ ∂Δⁿ ⊆ ESdI′ Δⁿ` (I-flavor).
//!
//! The codomain is the nerve of a finite poset, built up to the height where
//! it has no further non-degenerate cells. Plain keys are flattened pairs
//! `(a₀, b₀, a₁, b₁, …)` (the adjunct matrix `u(j,0)=aⱼ`, `u(j,1)=bⱼ`);
//! I-flavor keys are flattened triples `(t, a, b)`.

use std::collections::HashMap;
use std::fmt;

use clap::ValueEnum;
use serde::Serialize;

use super::complex::{Key, Subcomplex, TruncatedSSet};
use super::kinds::{EndofunctorKind as K, Model, Representable};
use super::maps::Connecting;
use crate::error::{Error, Result};
use crate::simplex::SimplexMor;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, ValueEnum)]
pub enum Flavor {
    Plain,
    I,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HornPairRecord {
    pub flavor: Flavor,
    /// Dimension of the core.
    pub dim: usize,
    pub core: u32,
    pub periphery: u32,
    pub position: usize,
    pub core_label: String,
    pub periphery_label: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct ScheduleCertificate {
    pub flavor: Flavor,
    pub n: usize,
    pub base_nondeg: Vec<usize>,
    pub steps: Vec<HornPairRecord>,
    pub final_nondeg: Vec<usize>,
    pub complete: bool,
}

/// One labelled intersection audit of the base.
#[derive(Clone, Debug, Serialize)]
pub struct BaseCheck {
    pub label: String,
    pub holds: bool,
}

pub struct HornComplex {
    pub flavor: Flavor,
    pub n: usize,
    pub y: TruncatedSSet,
    pub base: Subcomplex,
    pub base_checks: Vec<BaseCheck>,
}

/// The `(a, b)` pairs of a plain key.
fn pairs(key: &[u32]) -> Vec<(u32, u32)> {
    key.chunks(2).map(|c| (c[0], c[1])).collect()
}

/// The `(t, a, b)` triples of an I-flavor key.
fn triples(key: &[u32]) -> Vec<(u32, u32, u32)> {
    key.chunks(3).map(|c| (c[0], c[1], c[2])).collect()
}

pub fn label(flavor: Flavor, key: &[u32]) -> String {
    match flavor {
        Flavor::Plain => pairs(key).iter().map(|(a, b)| format!("{a}{b}")).collect::<Vec<_>>().join(","),
        Flavor::I => triples(key)
            .iter()
            .map(|&(t, a, b)| if t == 0 { format!("{a}{b}") } else { format!("^{a}") })
            .collect::<Vec<_>>()
            .join(","),
    }
}

/// Number of indices `j` with `u(j,1) < u(k,0)`.
pub fn anticipated_position(key: &[u32]) -> usize {
    let p = pairs(key);
    let last = p[p.len() - 1].0;
    p.iter().filter(|&&(_, b)| b < last).count()
}

/// The inner index at which `σ` is the core of a plain horn pair, if any.
pub fn plain_core_position(key: &[u32]) -> Option<usize> {
    let u = pairs(key);
    let k = u.len() - 1;
    (1..k).find(|&i| u[i - 1].0 == u[i].0 && u[i - 1].1 < u[i].1 && u[i].1 == u[k].0)
}

impl HornComplex {
    pub fn new(n: usize, flavor: Flavor, limit: usize) -> Result<Self> {
        let (kind, height) = match flavor {
            Flavor::Plain => (K::ESdP, 2 * n),
            Flavor::I => (K::ESdPI, 2 * n + 1),
        };
        let model = Model::kind(kind, height);
        let y = TruncatedSSet::build(format!("{}Δ{n}", kind.name()), height, &Representable { model, n, limit }, limit)?;
        let base = Subcomplex::empty(&y);
        let mut hc = HornComplex { flavor, n, y, base, base_checks: Vec::new() };
        hc.assemble_base(limit)?;
        Ok(hc)
    }

    /// Marks the cells of `y` hit by `f` applied to every cell of `src[m]`.
    fn image(&self, src: K, m: Option<usize>, f: impl Fn(usize, &[u32]) -> Key, limit: usize) -> Result<Subcomplex> {
        let mut out = Subcomplex::empty(&self.y);
        let Some(m) = m else { return Ok(out) };
        let model = Model::kind(src, self.y.dim);
        for k in 0..=self.y.dim {
            for key in model.cells(m, k, limit)? {
                let img = f(k, &key);
                let c = self.y.find(k, &img).ok_or_else(|| Error::Invalid(format!("{} cell {key:?} maps outside {}", src.name(), self.y.name)))?;
                out.member[k][c as usize] = true;
            }
        }
        Ok(out)
    }

    /// Image through all coface inclusions `[n−1] → [n]`.
    fn boundary_image(&self, src: K, g: impl Fn(usize, &[u32]) -> Key, limit: usize) -> Result<Subcomplex> {
        let mut out = Subcomplex::empty(&self.y);
        if self.n == 0 {
            return Ok(out);
        }
        let model = Model::kind(src, self.y.dim);
        for j in 0..=self.n {
            let d = SimplexMor::delta(self.n, j);
            out.union_with(&self.image(src, Some(self.n - 1), |k, key| g(k, &model.act(&d, key)), limit)?);
        }
        Ok(out)
    }

    fn injective(&self, src: K, f: impl Fn(usize, &[u32]) -> Key, limit: usize) -> Result<bool> {
        let model = Model::kind(src, self.y.dim);
        for k in 0..=self.y.dim {
            let mut seen: Vec<Key> = model.cells(self.n, k, limit)?.iter().map(|key| f(k, key)).collect();
            let total = seen.len();
            seen.sort();
            seen.dedup();
            if seen.len() != total {
                return Ok(false);
            }
        }
        Ok(true)
    }

    fn assemble_base(&mut self, limit: usize) -> Result<()> {
        let n = self.n;
        let id = |_: usize, key: &[u32]| key.to_vec();
        let mut checks = Vec::new();
        let base = match self.flavor {
            Flavor::Plain => {
                let e2p = |k: usize, key: &[u32]| Connecting::ESdToESdP.apply(n, k, key);
                let a = self.image(K::ESd, Some(n), e2p, limit)?;
                let c = self.boundary_image(K::ESdP, id, limit)?;
                let ab = self.boundary_image(K::ESd, e2p, limit)?;
                checks.push(("ESd→ESd′ injective".to_string(), self.injective(K::ESd, e2p, limit)?));
                checks.push(("ESd Δ ∩ ESd′ ∂Δ = ESd ∂Δ".to_string(), a.intersection(&c) == ab));
                let mut s = a;
                s.union_with(&c);
                s
            }
            Flavor::I => {
                let p2pi = |k: usize, key: &[u32]| Connecting::ESdPToESdPI.apply(n, k, key);
                let i2pi = |k: usize, key: &[u32]| Connecting::ESdIToESdPI.apply(n, k, key);
                let e2pi = |k: usize, key: &[u32]| p2pi(k, &Connecting::ESdToESdP.apply(n, k, key));
                let a = self.image(K::ESdP, Some(n), p2pi, limit)?;
                let b = self.image(K::ESdI, Some(n), i2pi, limit)?;
                let c = self.boundary_image(K::ESdPI, id, limit)?;
                let ab = self.image(K::ESd, Some(n), e2pi, limit)?;
                let ac = self.boundary_image(K::ESdP, p2pi, limit)?;
                let bc = self.boundary_image(K::ESdI, i2pi, limit)?;
                let abc = self.boundary_image(K::ESd, e2pi, limit)?;
                checks.push(("ESd′→ESdI′ injective".to_string(), self.injective(K::ESdP, p2pi, limit)?));
                checks.push(("ESdI→ESdI′ injective".to_string(), self.injective(K::ESdI, i2pi, limit)?));
                checks.push(("ESd′ Δ ∩ ESdI Δ = ESd Δ".to_string(), a.intersection(&b) == ab));
                checks.push(("ESd′ Δ ∩ ESdI′ ∂Δ = ESd′ ∂Δ".to_string(), a.intersection(&c) == ac));
                checks.push(("ESdI Δ ∩ ESdI′ ∂Δ = ESdI ∂Δ".to_string(), b.intersection(&c) == bc));
                checks.push(("triple intersection = ESd ∂Δ".to_string(), a.intersection(&b).intersection(&c) == abc));
                let mut s = a;
                s.union_with(&b);
                s.union_with(&c);
                s
            }
        };
        checks.push(("base is a subcomplex".to_string(), base.is_closed(&self.y)));
        self.base_checks = checks.into_iter().map(|(label, holds)| BaseCheck { label, holds }).collect();
        self.base = base;
        Ok(())
    }

    /// Non-degenerate cells of the codomain outside the base, as `(level, cell)`.
    pub fn outsiders(&self) -> Vec<(usize, u32)> {
        (0..=self.y.dim).flat_map(|k| self.y.nondeg_cells(k).filter(move |&c| !self.base.contains(k, c)).map(move |c| (k, c))).collect()
    }

    fn record(&self, k: usize, core: u32, position: usize) -> HornPairRecord {
        let periphery = self.y.face(k, core, position);
        HornPairRecord {
            flavor: self.flavor,
            dim: k,
            core,
            periphery,
            position,
            core_label: label(self.flavor, self.y.key(k, core)),
            periphery_label: label(self.flavor, self.y.key(k - 1, periphery)),
        }
    }

    /// Horn pairs in schedule order, checked to be a perfect matching of the outsiders.
    pub fn pairs(&self, limit: usize) -> Result<Vec<HornPairRecord>> {
        let out = self.outsiders();
        let is_out = |k: usize, c: u32| self.y.is_nondeg(k, c) && !self.base.contains(k, c);
        let mut found: Vec<(Vec<u64>, HornPairRecord)> = Vec::new();
        match self.flavor {
            Flavor::Plain => {
                for &(k, c) in &out {
                    let key = self.y.key(k, c);
                    if let Some(i) = plain_core_position(key) {
                        let r = self.record(k, c, i);
                        let order = vec![k as u64, pairs(key)[k].0 as u64, i as u64];
                        found.push((order, r));
                    }
                }
            }
            Flavor::I => {
                // Plain pairs over every [m], keyed by core, with their rank.
                let mut plain: Vec<HashMap<Key, (usize, usize)>> = Vec::new();
                for m in 0..=self.n {
                    let hc = HornComplex::new(m, Flavor::Plain, limit)?;
                    let ps = hc.pairs(limit)?;
                    plain.push(ps.iter().enumerate().map(|(r, p)| (hc.y.key(p.dim, p.core).clone(), (p.position, r))).collect());
                }
                for &(k, c) in &out {
                    let t = triples(self.y.key(k, c));
                    let zero: Vec<(u32, u32, u32)> = t.iter().copied().take_while(|e| e.0 == 0).collect();
                    let first: Vec<u32> = t[zero.len()..].iter().map(|e| e.1).collect();
                    let (Some(&(_, _, nprime)), false) = (zero.last(), first.is_empty()) else { continue };
                    let n = self.n as u32;
                    let straight = *first.last().unwrap() == n
                        && (first[0] == nprime || first[0] == nprime + 1)
                        && first.len() as u32 == n - first[0] + 1;
                    if !straight {
                        continue;
                    }
                    let zkey: Key = zero.iter().flat_map(|&(_, a, b)| [a, b]).collect();
                    if let Some(&(i, rank)) = plain[nprime as usize].get(&zkey) {
                        let r = self.record(k, c, i);
                        found.push((vec![k as u64, nprime as u64, rank as u64], r));
                    }
                }
            }
        }
        let mut used: HashMap<(usize, u32), usize> = HashMap::new();
        for (_, r) in &found {
            if !is_out(r.dim, r.core) || !is_out(r.dim - 1, r.periphery) {
                return Err(Error::PairingFailure(format!("pair ({}, {}) leaves the outsiders", r.core_label, r.periphery_label)));
            }
            if r.position == 0 || r.position >= r.dim {
                return Err(Error::PairingFailure(format!("{} at non-inner position {}", r.core_label, r.position)));
            }
            if self.flavor == Flavor::Plain {
                let (ks, kt) = (self.y.key(r.dim, r.core), self.y.key(r.dim - 1, r.periphery));
                if anticipated_position(ks) != r.position || anticipated_position(kt) != r.position {
                    return Err(Error::PairingFailure(format!("{}: anticipated positions disagree", r.core_label)));
                }
            }
            *used.entry((r.dim, r.core)).or_default() += 1;
            *used.entry((r.dim - 1, r.periphery)).or_default() += 1;
        }
        for &(k, c) in &out {
            match used.get(&(k, c)) {
                Some(1) => {}
                Some(m) => return Err(Error::PairingFailure(format!("{} lies in {m} pairs", label(self.flavor, self.y.key(k, c))))),
                None => return Err(Error::PairingFailure(label(self.flavor, self.y.key(k, c)))),
            }
        }
        found.sort_by(|a, b| a.0.cmp(&b.0).then_with(|| self.y.key(a.1.dim, a.1.core).cmp(self.y.key(b.1.dim, b.1.core))));
        Ok(found.into_iter().map(|(_, r)| r).collect())
    }

    /// Replays the pairs from the base, certifying each step as an inner horn filling.
    pub fn replay(&self, steps: &[HornPairRecord]) -> Result<ScheduleCertificate> {
        let mut s = self.base.clone();
        let nondeg = |s: &Subcomplex| (0..=self.y.dim).map(|k| self.y.nondeg_cells(k).filter(|&c| s.contains(k, c)).count()).collect::<Vec<_>>();
        let base_nondeg = nondeg(&s);
        let mut total: usize = base_nondeg.iter().sum();
        for (step, r) in steps.iter().enumerate() {
            let broken = |reason: String| Error::ScheduleBroken { step, reason };
            let k = r.dim;
            if r.position == 0 || r.position >= k {
                return Err(broken(format!("position {} is not inner for dimension {k}", r.position)));
            }
            if self.y.face(k, r.core, r.position) != r.periphery {
                return Err(broken(format!("{} is not face {} of {}", r.periphery_label, r.position, r.core_label)));
            }
            if s.contains(k, r.core) || s.contains(k - 1, r.periphery) {
                return Err(broken(format!("{} or {} already present", r.core_label, r.periphery_label)));
            }
            if let Some(j) = (0..=k).find(|&j| j != r.position && !s.contains(k - 1, self.y.face(k, r.core, j))) {
                return Err(broken(format!("face {j} of {} missing", r.core_label)));
            }
            s.insert_closed(&self.y, k, r.core);
            let now: usize = nondeg(&s).iter().sum();
            if now != total + 2 {
                return Err(broken(format!("filling {} added {} non-degenerate cells", r.core_label, now - total)));
            }
            total = now;
        }
        let final_nondeg = nondeg(&s);
        Ok(ScheduleCertificate { flavor: self.flavor, n: self.n, base_nondeg, steps: steps.to_vec(), complete: s.is_full(), final_nondeg })
    }
}

impl fmt::Display for ScheduleCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{:?} n={}: {} steps, complete={}", self.flavor, self.n, self.steps.len(), self.complete)?;
        for (i, s) in self.steps.iter().enumerate() {
            writeln!(f, "  {i}: ({}) ⊇ ({}) at {}", s.core_label, s.periphery_label, s.position)?;
        }
        Ok(())
    }
}

pub fn outsiders(n: usize, flavor: Flavor, limit: usize) -> Result<Vec<String>> {
    let hc = HornComplex::new(n, flavor, limit)?;
    Ok(hc.outsiders().into_iter().map(|(k, c)| label(flavor, hc.y.key(k, c))).collect())
}

pub fn horn_pairs(n: usize, flavor: Flavor, limit: usize) -> Result<Vec<HornPairRecord>> {
    HornComplex::new(n, flavor, limit)?.pairs(limit)
}

pub fn filling_schedule(n: usize, flavor: Flavor, limit: usize) -> Result<ScheduleCertificate> {
    let hc = HornComplex::new(n, flavor, limit)?;
    if let Some(b) = hc.base_checks.iter().find(|b| !b.holds) {
        return Err(Error::Invalid(format!("base audit failed: {}", b.label)));
    }
    let steps = hc.pairs(limit)?;
    hc.replay(&steps)
}

#[cfg(test)]
mod tests {
    use super::*;

    const LIMIT: usize = 1 << 22;

    #[test]
    fn plain_interval() {
        let mut out = outsiders(1, Flavor::Plain, LIMIT).unwrap();
        out.sort();
        assert_eq!(out, vec!["00,01,11".to_string(), "00,11".to_string()]);
        let ps = horn_pairs(1, Flavor::Plain, LIMIT).unwrap();
        assert_eq!(ps.len(), 1);
        assert_eq!((ps[0].core_label.as_str(), ps[0].periphery_label.as_str(), ps[0].position), ("00,01,11", "00,11", 1));
    }

    #[test]
    fn point_has_no_outsiders() {
        assert!(outsiders(0, Flavor::Plain, LIMIT).unwrap().is_empty());
        assert!(outsiders(0, Flavor::I, LIMIT).unwrap().is_empty());
        assert!(horn_pairs(0, Flavor::Plain, LIMIT).unwrap().is_empty());
    }

    #[test]
    fn small_schedules_complete() {
        for (n, fl) in [(1, Flavor::Plain), (2, Flavor::Plain), (3, Flavor::Plain), (1, Flavor::I), (2, Flavor::I)] {
            let hc = HornComplex::new(n, fl, LIMIT).unwrap();
            assert!(hc.base_checks.iter().all(|b| b.holds), "{:?}", hc.base_checks);
            let ps = hc.pairs(LIMIT).unwrap();
            assert_eq!(2 * ps.len(), hc.outsiders().len());
            let cert = hc.replay(&ps).unwrap();
            assert!(cert.complete, "{cert}");
        }
    }

    #[test]
    fn reversed_schedule_breaks() {
        let hc = HornComplex::new(2, Flavor::Plain, LIMIT).unwrap();
        let mut ps = hc.pairs(LIMIT).unwrap();
        ps.reverse();
        assert!(matches!(hc.replay(&ps), Err(Error::ScheduleBroken { .. })));
    }
}

//! Mapping cylinders `DcpC f = Dcp Y ⊔_{Dcp X} DcpI X` and
//! `ESdC′ f = ESd′ Y ⊔_{ESd′ X} ESdI′ X`, the canonical map between them and
//! the edges it sends to degenerate edges.

use serde::Serialize;

use super::complex::{pushout, SimplicialMap, TruncatedSSet};
use super::kan::KanExtension;
use super::kinds::{EndofunctorKind as K, Model};
use super::maps::Connecting;
use crate::error::{Error, Result};

pub struct MappingCylinder {
    pub dcp: TruncatedSSet,
    pub esd: TruncatedSSet,
    pub map: SimplicialMap,
    /// Edges of `DcpC f` sent to degenerate edges.
    pub weq: Vec<u32>,
    pub audit: Vec<CountAudit>,
}

/// `|P_k| = |B_k| + |C_k| − |A_k|` for a pushout glued along a monomorphism.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct CountAudit {
    pub label: String,
    pub pushout: Vec<usize>,
    pub expected: Vec<usize>,
}

impl CountAudit {
    pub fn holds(&self) -> bool {
        self.pushout == self.expected
    }
}

struct Side {
    a: KanExtension,
    b: KanExtension,
    c: KanExtension,
    f: SimplicialMap,
    g: SimplicialMap,
}

fn side(plain: K, flagged: K, via: Connecting, x: &TruncatedSSet, y: &TruncatedSSet, f: &SimplicialMap, d: usize, limit: usize) -> Result<Side> {
    let a = KanExtension::build(Model::kind(plain, d), x, d, limit)?;
    let b = KanExtension::build(Model::kind(plain, d), y, d, limit)?;
    let c = KanExtension::build(Model::kind(flagged, d), x, d, limit)?;
    let fa = a.induced_map(y, f, &b)?;
    let g = a.natural_map(&c, |n, k, key| via.apply(n, k, key))?;
    if !g.is_injective() {
        return Err(Error::Invalid(format!("{} → {} is not injective", plain.name(), flagged.name())));
    }
    Ok(Side { a, b, c, f: fa, g })
}

fn audit(label: &str, s: &Side, p: &TruncatedSSet) -> CountAudit {
    CountAudit {
        label: label.into(),
        pushout: p.cell_profile(),
        expected: (0..=p.dim).map(|k| s.b.result.num_cells(k) + s.c.result.num_cells(k) - s.a.result.num_cells(k)).collect(),
    }
}

/// Both cylinders of `f: X → Y` at truncation `d`.
pub fn mapping_cylinder(x: &TruncatedSSet, y: &TruncatedSSet, f: &SimplicialMap, d: usize, limit: usize) -> Result<MappingCylinder> {
    f.check(x, y)?;
    let dside = side(K::Dcp, K::DcpI, Connecting::DcpToDcpI, x, y, f, d, limit)?;
    let eside = side(K::ESdP, K::ESdPI, Connecting::ESdPToESdPI, x, y, f, d, limit)?;
    let (dcp, dy, dx) = pushout(&dside.a.result, &dside.b.result, &dside.c.result, &dside.f, &dside.g, "DcpC")?;
    let (esd, ey, ex) = pushout(&eside.a.result, &eside.b.result, &eside.c.result, &eside.f, &eside.g, "ESdC′")?;
    let hy = dside.b.natural_map(&eside.b, |n, k, key| Connecting::ESdToESdP.apply(n, k, &Connecting::DcpToESd.apply(n, k, key)))?;
    let hx = dside.c.natural_map(&eside.c, |n, k, key| Connecting::ESdIToESdPI.apply(n, k, &Connecting::DcpIToESdI.apply(n, k, key)))?;
    let dim = dcp.dim.min(esd.dim);
    let mut levels = Vec::with_capacity(dim + 1);
    for k in 0..=dim {
        let mut row: Vec<Option<u32>> = vec![None; dcp.num_cells(k)];
        let legs = [(&dy, &hy, &ey, dside.b.result.num_cells(k)), (&dx, &hx, &ex, dside.c.result.num_cells(k))];
        for (leg, h, eleg, count) in legs {
            for c in 0..count as u32 {
                let target = eleg.at(k, h.at(k, c));
                let slot = &mut row[leg.at(k, c) as usize];
                match *slot {
                    Some(t) if t != target => return Err(Error::Invalid(format!("canonical map is not well defined at level {k}"))),
                    _ => *slot = Some(target),
                }
            }
        }
        levels.push(row.into_iter().map(|t| t.expect("pushout cells come from a leg")).collect());
    }
    let map = SimplicialMap { levels };
    map.check(&dcp, &esd)?;
    let weq = if dim >= 1 { (0..dcp.num_cells(1) as u32).filter(|&e| !esd.is_nondeg(1, map.at(1, e))).collect() } else { Vec::new() };
    let audit = vec![audit("DcpC", &dside, &dcp), audit("ESdC′", &eside, &esd)];
    Ok(MappingCylinder { dcp, esd, map, weq, audit })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sset::complex::standard_simplex;
    use crate::sset::kinds::DcpIString;

    #[test]
    fn cylinder_of_a_point() {
        let p = standard_simplex(Some(0), 2);
        let id = SimplicialMap::identity(&p);
        let cyl = mapping_cylinder(&p, &p, &id, 2, 1 << 20).unwrap();
        assert!(cyl.audit.iter().all(CountAudit::holds), "{:?}", cyl.audit);
        // ESdI′ Δ⁰ is the nerve of a two-element chain.
        assert_eq!(cyl.esd.nondeg_profile(), vec![2, 1, 0]);
        // Here DcpC is DcpI Δ⁰; the collapsed edges are exactly those inside one part.
        let dix = KanExtension::build(Model::kind(K::DcpI, 2), &p, 2, 1 << 20).unwrap();
        let mut collapsed = Vec::new();
        for e in 0..cyl.dcp.num_cells(1) as u32 {
            let key = cyl.dcp.key(1, e);
            // Cells glued to Dcp Y are represented there and lie in the zero part.
            let inside = key[0] == 0 || {
                let s = DcpIString::decode(&dix.result.key(1, key[1])[2..]);
                s.zero.verts.is_empty() || s.ones.is_empty()
            };
            if inside {
                collapsed.push(e);
            }
        }
        assert_eq!(cyl.weq, collapsed);
        assert!(collapsed.len() < cyl.dcp.num_cells(1));
    }

    #[test]
    fn cylinder_of_last_on_w3() {
        let rc = crate::corpus::w3();
        let down = crate::down::build_down(&rc, 1 << 20).unwrap();
        let last = crate::down::LastFunctor::on_down(&rc, &down);
        let x = crate::sset::nerve_truncated(&down.cat, 2, 1 << 20).unwrap();
        let y = crate::sset::nerve_truncated(&rc.cat, 2, 1 << 20).unwrap();
        let f = crate::sset::complex::nerve_map(&x, &y, &last.functor).unwrap();
        let cyl = mapping_cylinder(&x, &y, &f, 2, 1 << 22).unwrap();
        assert!(cyl.audit.iter().all(CountAudit::holds), "{:?}", cyl.audit);
        assert!(!cyl.weq.is_empty());
    }
}

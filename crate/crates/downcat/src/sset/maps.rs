//! The natural maps between the endofunctors, given on representable keys.

use clap::ValueEnum;
use serde::Serialize;

use super::complex::{Key, SimplicialMap, TruncatedSSet};
use super::kan::KanExtension;
use super::kinds::{DcpIString, DcpString, EndofunctorKind as K, Model, Shape};
use crate::error::{Error, Result};
use crate::simplex::SimplexMor;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, ValueEnum)]
pub enum Connecting {
    DcpToESd,
    DcpIToESdI,
    ESdToESdP,
    ESdIToESdPI,
    XToESdP,
    CylToESdPI,
    DcpToDcpI,
    ESdToESdI,
    ESdPToESdPI,
    XToDcpI,
    XToESdI,
    /// `X × {e} ⊆ X × Δ¹`.
    XToCyl0,
    XToCyl1,
}

impl Connecting {
    pub const ALL: [Connecting; 13] = [
        Connecting::DcpToESd,
        Connecting::DcpIToESdI,
        Connecting::ESdToESdP,
        Connecting::ESdIToESdPI,
        Connecting::XToESdP,
        Connecting::CylToESdPI,
        Connecting::DcpToDcpI,
        Connecting::ESdToESdI,
        Connecting::ESdPToESdPI,
        Connecting::XToDcpI,
        Connecting::XToESdI,
        Connecting::XToCyl0,
        Connecting::XToCyl1,
    ];

    pub fn source(self) -> Shape {
        match self {
            Connecting::DcpToESd | Connecting::DcpToDcpI => Shape::Kind(K::Dcp),
            Connecting::DcpIToESdI => Shape::Kind(K::DcpI),
            Connecting::ESdToESdP | Connecting::ESdToESdI => Shape::Kind(K::ESd),
            Connecting::ESdIToESdPI => Shape::Kind(K::ESdI),
            Connecting::ESdPToESdPI => Shape::Kind(K::ESdP),
            Connecting::CylToESdPI => Shape::Cyl,
            Connecting::XToESdP | Connecting::XToDcpI | Connecting::XToESdI | Connecting::XToCyl0 | Connecting::XToCyl1 => Shape::Delta,
        }
    }

    pub fn target(self) -> Shape {
        match self {
            Connecting::DcpToESd => Shape::Kind(K::ESd),
            Connecting::DcpIToESdI | Connecting::ESdToESdI | Connecting::XToESdI => Shape::Kind(K::ESdI),
            Connecting::ESdToESdP | Connecting::XToESdP => Shape::Kind(K::ESdP),
            Connecting::ESdIToESdPI | Connecting::CylToESdPI | Connecting::ESdPToESdPI => Shape::Kind(K::ESdPI),
            Connecting::DcpToDcpI | Connecting::XToDcpI => Shape::Kind(K::DcpI),
            Connecting::XToCyl0 | Connecting::XToCyl1 => Shape::Cyl,
        }
    }

    /// Surjective on every input (the `Dcp → ESd` family).
    pub fn is_surjective_family(self) -> bool {
        matches!(self, Connecting::DcpToESd | Connecting::DcpIToESdI)
    }

    /// The component at `[n]` on a `k`-cell.
    pub fn apply(self, _n: usize, k: usize, key: &[u32]) -> Key {
        match self {
            Connecting::DcpToESd => {
                let s = DcpString::decode(key);
                s.verts.iter().map(|v| v.x).chain(s.verts.iter().map(|v| v.last())).collect()
            }
            Connecting::DcpIToESdI => {
                let s = DcpIString::decode(key);
                let z = &s.zero.verts;
                let mut out = vec![z.len() as u32];
                out.extend(z.iter().map(|v| v.x));
                out.extend(z.iter().map(|v| v.last()));
                out.extend_from_slice(&s.ones);
                out
            }
            Connecting::ESdToESdP => (0..=k).flat_map(|j| [key[j], key[k + 1 + j]]).collect(),
            Connecting::ESdIToESdPI => {
                let l = key[0] as usize;
                let v = &key[1..];
                (0..=k).flat_map(|i| if i < l { [0, v[i], v[l + i]] } else { [1, v[l + i], v[l + i]] }).collect()
            }
            Connecting::XToESdP => key.iter().flat_map(|&v| [v, v]).collect(),
            Connecting::CylToESdPI => key.chunks(2).flat_map(|c| [c[1], c[0], c[0]]).collect(),
            Connecting::DcpToDcpI => {
                let mut out = vec![key[0], key[0]];
                out.extend_from_slice(&key[1..]);
                out
            }
            Connecting::ESdToESdI => {
                let mut out = vec![(k + 1) as u32];
                out.extend_from_slice(key);
                out
            }
            Connecting::ESdPToESdPI => key.chunks(2).flat_map(|c| [0, c[0], c[1]]).collect(),
            Connecting::XToDcpI => DcpIString { zero: DcpString { verts: vec![], betas: vec![] }, ones: key.to_vec() }.encode(),
            Connecting::XToESdI => {
                let mut out = vec![0];
                out.extend_from_slice(key);
                out
            }
            Connecting::XToCyl0 => key.iter().flat_map(|&v| [v, 0]).collect(),
            Connecting::XToCyl1 => key.iter().flat_map(|&v| [v, 1]).collect(),
        }
    }
}

/// Both Kan extensions and the induced map.
pub struct ConnectingMap {
    pub which: Connecting,
    pub src: KanExtension,
    pub dst: KanExtension,
    pub map: SimplicialMap,
}

pub fn connecting_map(which: Connecting, x: &TruncatedSSet, d: usize, dcp_bound: usize, limit: usize) -> Result<ConnectingMap> {
    let src = KanExtension::build(Model::new(which.source(), dcp_bound), x, d, limit)?;
    let dst = KanExtension::build(Model::new(which.target(), dcp_bound), x, d, limit)?;
    let map = src.natural_map(&dst, |n, k, key| which.apply(n, k, key))?;
    Ok(ConnectingMap { which, src, dst, map })
}

/// Representable-level audit of one transformation: values land in the
/// target, commute with faces, degeneracies and the cosimplicial action.
pub fn check_transformation(which: Connecting, max_n: usize, max_k: usize, dcp_bound: usize, limit: usize) -> Result<()> {
    let sm = Model::new(which.source(), dcp_bound);
    let tm = Model::new(which.target(), dcp_bound);
    for n in 0..=max_n {
        for k in 0..=max_k {
            let targets = tm.cells(n, k, limit)?;
            for a in sm.cells(n, k, limit)? {
                let b = which.apply(n, k, &a);
                if targets.binary_search(&b).is_err() {
                    return Err(Error::Invalid(format!("{which:?}: {a:?} goes to {b:?}, not a cell over [{n}]")));
                }
                for j in 0..=k {
                    if k > 0 && which.apply(n, k - 1, &sm.face(k, &a, j)) != tm.face(k, &b, j) {
                        return Err(Error::Invalid(format!("{which:?} does not commute with d_{j} on {a:?}")));
                    }
                    if which.apply(n, k + 1, &sm.degen(k, &a, j)) != tm.degen(k, &b, j) {
                        return Err(Error::Invalid(format!("{which:?} does not commute with s_{j} on {a:?}")));
                    }
                }
                if n < max_n {
                    for t in SimplexMor::all(n, n + 1) {
                        if which.apply(n + 1, k, &sm.act(&t, &a)) != tm.act(&t, &b) {
                            return Err(Error::Invalid(format!("{which:?} is not natural along {t} on {a:?}")));
                        }
                    }
                }
                if n > 0 {
                    for t in SimplexMor::all(n, n - 1) {
                        if which.apply(n - 1, k, &sm.act(&t, &a)) != tm.act(&t, &b) {
                            return Err(Error::Invalid(format!("{which:?} is not natural along {t} on {a:?}")));
                        }
                    }
                }
            }
        }
    }
    Ok(())
}

/// The commuting squares of the connecting diagram, checked cell by cell on
/// representables. Returns the squares with their verdicts.
pub fn check_diagram(max_n: usize, max_k: usize, dcp_bound: usize, limit: usize) -> Result<Vec<(String, Option<String>)>> {
    use Connecting as C;
    // (label, source shape, left path, right path)
    let squares: [(&str, Shape, &[C], &[C]); 5] = [
        ("Dcp→ESd→ESdI = Dcp→DcpI→ESdI", Shape::Kind(K::Dcp), &[C::DcpToESd, C::ESdToESdI], &[C::DcpToDcpI, C::DcpIToESdI]),
        ("ESd→ESd'→ESdI' = ESd→ESdI→ESdI'", Shape::Kind(K::ESd), &[C::ESdToESdP, C::ESdPToESdPI], &[C::ESdToESdI, C::ESdIToESdPI]),
        ("X→ESd'→ESdI' = X→X×Δ1→ESdI' (at 0)", Shape::Delta, &[C::XToESdP, C::ESdPToESdPI], &[C::XToCyl0, C::CylToESdPI]),
        ("X→DcpI→ESdI = X→ESdI (at 1)", Shape::Delta, &[C::XToDcpI, C::DcpIToESdI], &[C::XToESdI]),
        ("X→ESdI→ESdI' = X→X×Δ1→ESdI' (at 1)", Shape::Delta, &[C::XToESdI, C::ESdIToESdPI], &[C::XToCyl1, C::CylToESdPI]),
    ];
    let run = |path: &[C], n: usize, k: usize, a: &[u32]| path.iter().fold(a.to_vec(), |acc, c| c.apply(n, k, &acc));
    let mut out = Vec::new();
    for (label, shape, l, r) in squares {
        let m = Model::new(shape, dcp_bound);
        let mut bad = None;
        'outer: for n in 0..=max_n {
            for k in 0..=max_k {
                for a in m.cells(n, k, limit)? {
                    let (lhs, rhs) = (run(l, n, k, &a), run(r, n, k, &a));
                    if lhs != rhs {
                        bad = Some(format!("[{n}] level {k}: {a:?} gives {lhs:?} and {rhs:?}"));
                        break 'outer;
                    }
                }
            }
        }
        out.push((label.to_string(), bad));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sset::complex::standard_simplex;

    #[test]
    fn transformations_are_natural() {
        for c in Connecting::ALL {
            check_transformation(c, 2, 2, 2, 1 << 22).unwrap_or_else(|e| panic!("{e}"));
        }
    }

    #[test]
    fn diagram_commutes_on_small_simplices() {
        for (label, bad) in check_diagram(2, 2, 2, 1 << 22).unwrap() {
            assert!(bad.is_none(), "{label}: {bad:?}");
        }
    }

    #[test]
    fn esd_to_esdp_misses_the_long_edge() {
        let d1 = standard_simplex(Some(1), 1);
        let cm = connecting_map(Connecting::ESdToESdP, &d1, 2, 2, 1 << 20).unwrap();
        assert!(cm.map.is_injective());
        let img = cm.map.image(&cm.dst.result);
        let missed: Vec<&Key> =
            (0..cm.dst.result.num_cells(1) as u32).filter(|&c| !img.contains(1, c) && cm.dst.result.is_nondeg(1, c)).map(|c| cm.dst.result.key(1, c)).collect();
        assert_eq!(missed.len(), 1);
        assert_eq!(&missed[0][2..], &[0, 0, 1, 1]);
    }

    #[test]
    fn dcp_to_esd_is_surjective_on_the_interval() {
        let d1 = standard_simplex(Some(1), 1);
        let cm = connecting_map(Connecting::DcpToESd, &d1, 2, 2, 1 << 22).unwrap();
        assert!(cm.map.is_surjective_onto(&cm.dst.result));
    }
}

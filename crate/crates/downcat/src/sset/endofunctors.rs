//! Evaluating the six endofunctors on truncated inputs and the level
//! formulas they satisfy.

use super::complex::{boundary_simplex, inclusion_by_key, nerve_truncated, standard_simplex, TruncatedSSet};
use super::kan::{KanExtension, Presentation};
use super::kinds::{EndofunctorKind as K, Model, Shape};
use crate::config::Bounds;
use crate::corpus::CorpusEntry;
use crate::error::{Error, Result};
use crate::fincat::FinCategory;
use crate::report::{expect, SuiteReport};
use crate::simplex::SimplexMor;

/// Largest `n` such that some `k`-cell of `F[n]` is not a face of a cell of
/// `F[n-1]`: a `k`-cell touches at most this many values plus one.
pub fn input_dim_needed(model: &Model, k: usize) -> usize {
    match model.shape {
        Shape::Delta => k,
        Shape::Cyl => k,
        Shape::Kind(K::ESd | K::ESdI | K::ESdP | K::ESdPI) => 2 * k + 1,
        Shape::Kind(K::Dcp | K::DcpI) => (k + 1) * (model.dcp_bound + 2) - 1,
    }
}

/// `F X` up to level `d`. Fails unless `X` is complete or stored high enough
/// for every level to be exact.
pub fn evaluate_endofunctor(kind: K, x: &TruncatedSSet, d: usize, dcp_bound: usize, limit: usize) -> Result<KanExtension> {
    let model = Model::kind(kind, dcp_bound);
    let need = input_dim_needed(&model, d);
    if !x.complete && x.dim < need {
        return Err(Error::InsufficientTruncation(format!(
            "{} at level {d} reads {} up to level {need}, stored up to {}",
            kind.name(),
            x.name,
            x.dim
        )));
    }
    KanExtension::build(model, x, d, limit)
}

fn mor(n: usize, key: &[u32]) -> SimplexMor {
    SimplexMor::new(n, key.iter().map(|&v| v as usize).collect()).expect("cell keys are monotone")
}

/// `(ESd X)_k = X_{2k+1}` for `k ≤ d`: the map sending the class of `(x, a)`
/// to `a^* x` is a bijection commuting with the reindexed faces and
/// degeneracies. Returns a witness on failure.
pub fn esd_level_identity(x: &TruncatedSSet, d: usize, limit: usize) -> Result<Option<String>> {
    let model = Model::kind(K::ESd, 0);
    let esd = evaluate_endofunctor(K::ESd, x, d, 0, limit)?;
    let y = &esd.result;
    let phi_at = |k: usize, c: u32| {
        let r = esd.rep(k, c);
        x.act(r.n, r.x, &mor(r.n, esd.pres.key(k, r)))
    };
    let phi: Vec<Vec<u32>> = (0..=d).map(|k| (0..y.num_cells(k) as u32).map(|c| phi_at(k, c)).collect()).collect();
    for k in 0..=d {
        let top = 2 * k + 1;
        if y.num_cells(k) != x.num_cells(top) {
            return Ok(Some(format!("|(ESd {})_{k}| = {} but |X_{top}| = {}", x.name, y.num_cells(k), x.num_cells(top))));
        }
        let mut hit = vec![false; x.num_cells(top)];
        for (c, &v) in phi[k].iter().enumerate() {
            if std::mem::replace(&mut hit[v as usize], true) {
                return Ok(Some(format!("two cells of (ESd {})_{k} go to {v}; the second is {c}", x.name)));
            }
        }
        let id: Vec<u32> = (0..=top as u32).collect();
        for c in 0..y.num_cells(k) as u32 {
            for j in 0..=k {
                if k > 0 {
                    let theta = mor(top, &model.face(k, &id, j));
                    let (lhs, rhs) = (phi[k - 1][y.face(k, c, j) as usize], x.act(top, phi[k][c as usize], &theta));
                    if lhs != rhs {
                        return Ok(Some(format!("d_{j} of cell {c} at level {k}: {lhs} against {rhs}")));
                    }
                }
                if k < d {
                    let theta = mor(top, &model.degen(k, &id, j));
                    let (lhs, rhs) = (phi[k + 1][y.degen(k, c, j) as usize], x.act(top, phi[k][c as usize], &theta));
                    if lhs != rhs {
                        return Ok(Some(format!("s_{j} of cell {c} at level {k}: {lhs} against {rhs}")));
                    }
                }
            }
        }
    }
    Ok(None)
}

/// `|(ESdI X)_k| = Σ_{i=0..k+1} |X_{k+i}|` for `k ≤ d`.
pub fn esdi_count_formula(x: &TruncatedSSet, d: usize, limit: usize) -> Result<Option<String>> {
    let esdi = evaluate_endofunctor(K::ESdI, x, d, 0, limit)?;
    for k in 0..=d {
        let expected: usize = (0..=k + 1).map(|i| x.num_cells(k + i)).sum();
        let got = esdi.result.num_cells(k);
        if got != expected {
            return Ok(Some(format!("|(ESdI {})_{k}| = {got}, the sum is {expected}", x.name)));
        }
    }
    Ok(None)
}

/// `F(∂Δⁿ) → F(Δⁿ)` is injective in levels `≤ d`.
pub fn preserves_boundary_inclusion(kind: K, n: usize, d: usize, dcp_bound: usize, limit: usize) -> Result<Option<String>> {
    let (b, s) = (boundary_simplex(n, n), standard_simplex(Some(n), n));
    let inc = inclusion_by_key(&b, &s)?;
    let fb = evaluate_endofunctor(kind, &b, d, dcp_bound, limit)?;
    let fs = evaluate_endofunctor(kind, &s, d, dcp_bound, limit)?;
    let map = fb.induced_map(&s, &inc, &fs)?;
    Ok(expect(map.is_injective(), || format!("{}(∂Δ{n}) → {}(Δ{n}) identifies two cells", kind.name(), kind.name())))
}

/// The largest `k ≤ d` for which the nerve of `cat` stored up to `2k+1`
/// fits in `max_cells` and its `ESdI` presentation in `limit` nodes.
pub fn affordable_nerve(cat: &FinCategory, name: &str, d: usize, max_cells: usize, limit: usize) -> Option<(usize, TruncatedSSet)> {
    (0..=d).rev().find_map(|k| {
        let mut x = nerve_truncated(cat, 2 * k + 1, max_cells).ok()?;
        Presentation::new(Model::kind(K::ESdI, 0), &x, k, limit).ok()?;
        x.name = format!("N({name})");
        Some((k, x))
    })
}

/// The endofunctor suite: level formulas on the nerves of `corpus`, the two
/// vertex counts, and preservation of `∂Δⁿ ⊆ Δⁿ` for `n ≤ mono_n`.
pub fn endofunctor_suite(corpus: &[CorpusEntry], bounds: &Bounds, mono_n: usize) -> SuiteReport {
    let (d, limit) = (bounds.endofunctor_dim, bounds.max_cells);
    let dcp_bound = bounds.endofunctor_dim;
    let mut rep = SuiteReport::new("endofunctors");
    for e in corpus {
        match affordable_nerve(&e.data.cat, &e.name, d, bounds.max_cells, limit) {
            Some((k, x)) => {
                rep.run(format!("(ESd N({}))_k = N_(2k+1), k ≤ {k}", e.name), || esd_level_identity(&x, k, limit));
                rep.run(format!("|(ESdI N({}))_k| = Σ|N_(k+i)|, k ≤ {k}", e.name), || esdi_count_formula(&x, k, limit));
                if k < d {
                    rep.note(format!("{}: level formulas checked up to level {k}; level {} exceeds the size bounds", e.name, k + 1));
                }
            }
            None => rep.push(format!("level formulas on N({})", e.name), false, Some("level 0 exceeds the size bounds".into()), 0),
        }
    }
    rep.run("|(ESdI Δ1)_0| = 5", || {
        let c = evaluate_endofunctor(K::ESdI, &standard_simplex(Some(1), 1), 0, 0, limit)?.result.num_cells(0);
        Ok::<_, Error>(expect(c == 5, || format!("{c} vertices")))
    });
    rep.run("|(ESd Δ2)_0| = 6", || {
        let c = evaluate_endofunctor(K::ESd, &standard_simplex(Some(2), 2), 0, 0, limit)?.result.num_cells(0);
        Ok::<_, Error>(expect(c == 6, || format!("{c} vertices")))
    });
    for kind in K::ALL {
        rep.run(format!("{} preserves ∂Δn ⊆ Δn, n ≤ {mono_n}, levels ≤ {d}", kind.name()), || {
            for n in 1..=mono_n {
                if let Some(w) = preserves_boundary_inclusion(kind, n, d, dcp_bound, limit)? {
                    return Ok(Some(w));
                }
            }
            Ok::<_, Error>(None)
        });
    }
    rep
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::w3;

    #[test]
    fn esd_of_w3_is_the_odd_levels() {
        let x = nerve_truncated(&w3().cat, 5, 1 << 20).unwrap();
        assert_eq!(esd_level_identity(&x, 2, 1 << 20).unwrap(), None);
        assert_eq!(esdi_count_formula(&x, 2, 1 << 20).unwrap(), None);
    }

    #[test]
    fn short_inputs_are_rejected() {
        let ts1 = crate::corpus::truncated_simplex(1, &Bounds::default()).unwrap();
        let x = nerve_truncated(&ts1.cat, 2, 1 << 20).unwrap();
        assert!(!x.complete);
        assert!(matches!(evaluate_endofunctor(K::ESd, &x, 1, 0, 1 << 20), Err(Error::InsufficientTruncation(_))));
    }

    #[test]
    fn vertex_counts_of_small_pictures() {
        let esdi = evaluate_endofunctor(K::ESdI, &standard_simplex(Some(1), 1), 1, 0, 1 << 20).unwrap();
        assert_eq!(esdi.result.num_cells(0), 5);
        let esd = evaluate_endofunctor(K::ESd, &standard_simplex(Some(2), 2), 1, 0, 1 << 20).unwrap();
        assert_eq!(esd.result.num_cells(0), 6);
    }

    #[test]
    fn monos_are_preserved_on_small_boundaries() {
        for kind in K::ALL {
            for n in 1..=2 {
                assert_eq!(preserves_boundary_inclusion(kind, n, 1, 1, 1 << 22).unwrap(), None, "{kind:?} n={n}");
            }
        }
    }
}

use downcat::config::Bounds;
use downcat::corpus;
use downcat::sset::complex::boundary_simplex;
use downcat::sset::endofunctors::{esd_level_identity, esdi_count_formula, evaluate_endofunctor};
use downcat::sset::horns::{filling_schedule, Flavor};
use downcat::sset::{nerve_truncated, standard_simplex, EndofunctorKind};

const LIM: usize = 1 << 20;

fn binom(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

#[test]
fn standard_simplex_counts() {
    for n in 0..4 {
        let x = standard_simplex(Some(n), 3);
        x.check_identities().unwrap();
        for k in 0..=3 {
            // Monotone maps [k] → [n].
            assert_eq!(x.num_cells(k), binom(n + k + 1, k + 1), "n={n} k={k}");
            assert_eq!(x.nondeg_count(k), binom(n + 1, k + 1));
        }
        if n > 0 {
            let b = boundary_simplex(n, 3);
            assert_eq!(b.nondeg_count(n), 0);
            assert_eq!(b.nondeg_count(n - 1), n + 1);
        }
    }
}

#[test]
fn nerves_of_the_corpus_satisfy_the_identities() {
    for e in corpus::default_corpus(&Bounds::default()).unwrap().iter().take(7) {
        let x = nerve_truncated(&e.data.cat, 2, LIM).unwrap();
        x.check_identities().unwrap();
        assert_eq!(x.num_cells(0), e.data.cat.num_objects());
        assert_eq!(x.num_cells(1), e.data.cat.num_morphisms());
    }
}

#[test]
fn level_formulas_on_c_prime() {
    let x = nerve_truncated(&corpus::c_prime().cat, 5, LIM).unwrap();
    assert_eq!(esd_level_identity(&x, 2, LIM).unwrap(), None);
    assert_eq!(esdi_count_formula(&x, 2, LIM).unwrap(), None);
}

#[test]
fn every_endofunctor_output_is_simplicial() {
    let x = standard_simplex(Some(1), 1);
    for kind in EndofunctorKind::ALL {
        let f = evaluate_endofunctor(kind, &x, 1, 1, LIM).unwrap();
        f.result.check_identities().unwrap();
        assert!(f.result.num_cells(0) >= 2, "{kind:?}");
    }
}

#[test]
fn schedules_are_deterministic() {
    for flavor in [Flavor::Plain, Flavor::I] {
        let a = serde_json::to_string(&filling_schedule(2, flavor, LIM).unwrap()).unwrap();
        let b = serde_json::to_string(&filling_schedule(2, flavor, LIM).unwrap()).unwrap();
        assert_eq!(a, b);
    }
}

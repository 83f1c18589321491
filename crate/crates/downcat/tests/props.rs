use proptest::prelude::*;

use downcat::down::{build_down, check_direct, LastFunctor};
use downcat::fincat::{build, FinCategory, MorId};
use downcat::io;
use downcat::ladder::{LadderCategory, LadderVariant};
use downcat::reedy::ReedyCategory;
use downcat::simplex::SimplexMor;
use downcat::suites::hom_poset_check;

/// The chain `0 < 1 < ... < n` with `i → j` in `C₊` when `deg i < deg j` and
/// in `C₋` when `deg i > deg j`.
fn zigzag(deg: &[usize]) -> ReedyCategory {
    let c = build::ordinal(deg.len() - 1);
    let (mut minus, mut plus) = (Vec::new(), Vec::new());
    for m in c.morphism_ids() {
        let (a, b) = (deg[c.src(m) as usize], deg[c.dst(m) as usize]);
        if a <= b {
            plus.push(m);
        }
        if a >= b {
            minus.push(m);
        }
    }
    ReedyCategory::new(c, &minus, &plus).unwrap()
}

fn has_valley(deg: &[usize]) -> bool {
    (0..deg.len()).any(|i| (i + 1..deg.len()).any(|j| (i + 1..j).any(|k| deg[k] < deg[i] && deg[k] < deg[j])))
}

/// Distinct degrees rising to a peak and then falling.
fn unimodal() -> impl Strategy<Value = Vec<usize>> {
    (1usize..5).prop_flat_map(|n| proptest::collection::vec(any::<bool>(), n)).prop_map(|left| {
        let n = left.len();
        let mut l: Vec<usize> = (0..n).filter(|&v| left[v]).collect();
        let r: Vec<usize> = (0..n).rev().filter(|&v| !left[v]).collect();
        l.push(n);
        l.extend(r);
        l
    })
}

fn permutation() -> impl Strategy<Value = Vec<usize>> {
    (2usize..6).prop_flat_map(|n| Just((0..n).collect::<Vec<_>>()).prop_shuffle())
}

/// A random partial order on up to 5 points, as the transitive closure of
/// forward edges.
fn poset() -> impl Strategy<Value = FinCategory> {
    (1usize..6).prop_flat_map(|n| proptest::collection::vec(any::<bool>(), n * n)).prop_map(|edges| {
        let n = (edges.len() as f64).sqrt() as usize;
        let mut leq = vec![vec![false; n]; n];
        for i in 0..n {
            leq[i][i] = true;
            for j in i + 1..n {
                leq[i][j] = edges[i * n + j];
            }
        }
        for k in 0..n {
            for i in 0..n {
                for j in 0..n {
                    leq[i][j] |= leq[i][k] && leq[k][j];
                }
            }
        }
        build::poset((0..n).map(|i| format!("p{i}")).collect(), |a, b| leq[a][b])
    })
}

fn monotone(m: usize, n: usize) -> impl Strategy<Value = SimplexMor> {
    proptest::collection::vec(0..=n, m + 1).prop_map(move |mut v| {
        v.sort_unstable();
        SimplexMor::new(n, v).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn reedy_iff_no_valley(deg in permutation()) {
        let rc = zigzag(&deg);
        prop_assert!(rc.cat.validate().is_empty());
        prop_assert_eq!(rc.validate().is_empty(), !has_valley(&deg));
    }

    #[test]
    fn zigzag_factorizations_and_degrees(deg in unimodal()) {
        let rc = zigzag(&deg);
        prop_assert!(rc.validate().is_empty());
        let c = &rc.cat;
        let d = rc.degree().unwrap();
        for m in c.morphism_ids() {
            let scan: Vec<(MorId, MorId)> = c.morphism_ids()
                .filter(|&s| rc.is_minus(s) && c.src(s) == c.src(m))
                .flat_map(|s| c.hom(c.dst(s), c.dst(m)).iter().map(move |&p| (s, p)))
                .filter(|&(s, p)| rc.is_plus(p) && c.comp(p, s) == m)
                .collect();
            prop_assert_eq!(scan, vec![rc.factorize(m).unwrap()]);
            if !c.is_identity(m) {
                let (a, b) = (d[c.src(m) as usize], d[c.dst(m) as usize]);
                prop_assert!(!rc.is_plus(m) || a < b);
                prop_assert!(!rc.is_minus(m) || a > b);
            }
        }
    }

    #[test]
    fn down_is_finite_direct_and_last_is_a_functor(deg in unimodal()) {
        let rc = zigzag(&deg);
        let d = build_down(&rc, 200_000).unwrap();
        prop_assert!(d.cat.validate().is_empty());
        prop_assert!(check_direct(&d.cat).direct);
        let last = LastFunctor::on_down(&rc, &d);
        prop_assert!(last.functor.check(&d.cat, &rc.cat).is_empty());
        prop_assert_eq!(d.projection.then(&last.functor), LastFunctor::on_ladder(&rc, &d.ladder).functor);
    }

    #[test]
    fn strict_hom_posets(deg in unimodal()) {
        let rc = zigzag(&deg);
        let lc = LadderCategory::build(&rc, LadderVariant::Strict, deg.len(), 200_000).unwrap();
        prop_assert_eq!(hom_poset_check(&lc.ladder(&rc), &lc.objects).unwrap(), None);
    }

    #[test]
    fn json_round_trip(deg in unimodal()) {
        let rc = zigzag(&deg);
        let back = io::parse_category(&io::to_json(&rc.cat, Some(&rc))).unwrap();
        prop_assert_eq!(&back.cat, &rc.cat);
        prop_assert_eq!(back.reedy.unwrap(), rc);
    }

    #[test]
    fn posets_are_categories(c in poset()) {
        prop_assert!(c.validate().is_empty());
        prop_assert_eq!(c.opposite().opposite(), c.clone());
        let dot = io::to_dot(&c, "P");
        prop_assert_eq!(dot.matches("->").count(), c.num_morphisms() - c.num_objects());
        prop_assert_eq!(io::parse_category(&io::to_json(&c, None)).unwrap().cat, c);
    }

    #[test]
    fn simplex_composition_is_associative(
        (f, g, h) in (0usize..4, 0usize..4, 0usize..4, 0usize..4)
            .prop_flat_map(|(a, b, c, d)| (monotone(a, b), monotone(b, c), monotone(c, d)))
    ) {
        prop_assert_eq!(h.after(&g).after(&f), h.after(&g.after(&f)));
        prop_assert_eq!(SimplexMor::identity(g.n).after(&g), g.clone());
        prop_assert_eq!(g.after(&SimplexMor::identity(g.m)), g);
    }
}

use downcat::config::Bounds;
use downcat::corpus::{self, w3_ids::*};
use downcat::down::{self, check_direct, LastFunctor};
use downcat::fincat::{enumerate_functors, quotient_by_congruence, HomCongruence, SearchBudget};
use downcat::ladder::{GammaClass, Ladder, LadderCategory, LadderObject, LadderVariant};
use downcat::simplex::SimplexMor;

const LIMIT: usize = 200_000;

fn g_chain() -> LadderObject {
    LadderObject { base: 2, chain: vec![G] }
}

#[test]
fn strict_objects_over_w3() {
    let rc = corpus::w3();
    let lad = Ladder::new(&rc, LadderVariant::Strict);
    let objs = lad.objects(5, LIMIT).unwrap();
    assert_eq!(objs, vec![LadderObject::point(0), LadderObject::point(1), LadderObject::point(2), g_chain()]);
}

#[test]
fn mp_objects_over_w3() {
    let rc = corpus::w3();
    let lad = Ladder::new(&rc, LadderVariant::Mp);
    assert_eq!(lad.objects(1, LIMIT).unwrap().len(), 7);
}

#[test]
fn strict_hom_point_to_g() {
    let rc = corpus::w3();
    let lad = Ladder::new(&rc, LadderVariant::Strict);
    let homs = lad.homs(&LadderObject::point(0), &g_chain());
    let got: Vec<(Vec<usize>, Vec<u32>)> = homs.iter().map(|m| (m.alpha.values.clone(), m.theta.clone())).collect();
    assert_eq!(got, vec![(vec![0], vec![F]), (vec![1], vec![GF])]);
    assert!(lad.hom_leq(&homs[0], &homs[1]).unwrap());
    assert!(!lad.hom_leq(&homs[1], &homs[0]).unwrap());
    assert_eq!(lad.up_max(&homs[0]), homs[1]);
    assert!(lad.are_equivalent(&homs[0], &homs[1]).unwrap());
    let ic = lad.upward_interval_check(&homs[0]);
    assert_eq!((ic.up_size, ic.interval_size), (2, 2));
    assert!(ic.passed());
    assert_eq!(lad.gamma_classify(&homs[0]).class, GammaClass::GammaPlus);
    assert!(lad.homs(&g_chain(), &LadderObject::point(0)).is_empty());
}

#[test]
fn down_w3_shape() {
    let rc = corpus::w3();
    let d = down::build_down(&rc, LIMIT).unwrap();
    assert_eq!(d.cat.num_objects(), 4);
    assert!(d.cat.validate().is_empty());
    assert!(check_direct(&d.cat).direct);
    let a = d.obj_id(&LadderObject::point(0)).unwrap();
    let b = d.obj_id(&g_chain()).unwrap();
    let h = d.cat.hom(a, b);
    assert_eq!(h.len(), 1);
    assert_eq!(d.decode[h[0] as usize].alpha, SimplexMor::delta(1, 0));
    assert_eq!(d.decode[h[0] as usize].theta, vec![GF]);
    let last = LastFunctor::on_down(&rc, &d);
    assert!(last.functor.is_functor(&d.cat, &rc.cat));
    // quotient route agrees in size
    let lc = &d.ladder;
    let lad = lc.ladder(&rc);
    let class_of = lc.morphisms.iter().map(|m| lc.mor_id(&lad.up_max(m)).unwrap()).collect();
    let (q, p) = quotient_by_congruence(&lc.cat, &HomCongruence { class_of }).unwrap();
    assert_eq!(q.num_morphisms(), d.cat.num_morphisms());
    assert!(p.is_functor(&lc.cat, &q));
}

#[test]
fn star_and_normalization() {
    let rc = corpus::w3();
    let d = down::build_down(&rc, LIMIT).unwrap();
    let s = down::build_down_star(&rc, 2, LIMIT).unwrap();
    assert!(s.cat.validate().is_empty());
    let incl = down::inclusion(&rc, &d, &s).unwrap();
    assert!(incl.is_functor(&d.cat, &s.cat));
    let n = down::normalization_functor(&rc, &d, &s).unwrap();
    assert!(n.is_functor(&s.cat, &d.cat));
    let x = s.obj_id(&LadderObject { base: 0, chain: vec![ID0] }).unwrap();
    let nx = s.normalize_object(&rc, x).unwrap();
    assert_eq!(nx.strict, LadderObject::point(0));
    let y = s.obj_id(&LadderObject { base: 2, chain: vec![ID2, G] }).unwrap();
    assert_eq!(s.normalize_object(&rc, y).unwrap().strict, g_chain());
}

#[test]
fn functors_into_minus_part() {
    let rc = corpus::w3();
    // C- of W3 as a category: objects 0,1,2, morphisms ids and g.
    let cm = downcat::fincat::FinCategory::from_fn(
        rc.cat.obj_labels().to_vec(),
        [ID0, ID1, ID2, G].iter().map(|&m| rc.cat.morphism(m).clone()).collect(),
        vec![0, 1, 2],
        |g, f| if f < 3 { g } else { f },
    )
    .unwrap();
    let fs = enumerate_functors(&downcat::fincat::build::ordinal(1), &cm, None, SearchBudget::default()).unwrap();
    assert_eq!(fs.len(), 4);
    let _ = Bounds::default();
    let lc = LadderCategory::build(&rc, LadderVariant::Mp, 2, LIMIT).unwrap();
    let gr = lc.gamma_reedy(&rc);
    assert!(gr.validate().is_empty(), "{}", gr.validate());
}

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use ninfty::catalog::RUNNING_GROUPS;
use ninfty::grp::{group_by_name, Perm};
use ninfty::indexing::{indexing_of_transfer, transfer_of_indexing};
use ninfty::operad::free_model;
use ninfty::rewrite::{is_reduced, reduce, setups, Strategy as Reduction, Term, TermGen};
use ninfty::transfer::{cogenerate, generate, join, meet, validate, Relation, TransferSystem};

const SETUPS: [&str; 3] = ["coproduct", "coproduct-mixed", "tensor"];

fn random_system(name: &str, seed: u64) -> TransferSystem {
    let g = group_by_name(name).unwrap();
    let lat = g.lattice();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut r = Relation::equality(&g);
    for k in 0..lat.len() {
        for h in 0..lat.len() {
            if k != h && lat.leq(k, h) && rng.gen_bool(0.25) {
                r.insert(k, h);
            }
        }
    }
    generate(&r).unwrap()
}

fn arb_perm(n: usize) -> impl Strategy<Value = Perm> {
    Just((0..n).collect::<Vec<_>>()).prop_shuffle().prop_map(|v| Perm::from_images(v).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn group_action_on_terms(setup in 0..SETUPS.len(), seed: u64) {
        let (sig, mode) = setups::by_name(SETUPS[setup]).unwrap();
        let g = sig.group().clone();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let t = TermGen::new(&sig, mode).term(&mut rng, 10);
        prop_assert_eq!(sig.act_g(0, &t), t.clone());
        for a in 0..g.order() {
            for b in 0..g.order() {
                prop_assert_eq!(sig.act_g(a, &sig.act_g(b, &t)), sig.act_g(g.mul(a, b), &t));
            }
        }
    }

    #[test]
    fn symmetric_action_on_terms(setup in 0..SETUPS.len(), seed: u64, a: u64, b: u64) {
        let (sig, mode) = setups::by_name(SETUPS[setup]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let t = TermGen::new(&sig, mode).term(&mut rng, 10);
        let n = t.arity();
        let count = ninfty::grp::factorial(n);
        let (s, u) = (Perm::unrank(n, a % count), Perm::unrank(n, b % count));
        let lhs = t.act_sigma(&s).unwrap().act_sigma(&u).unwrap();
        prop_assert_eq!(lhs, t.act_sigma(&s.compose(&u)).unwrap());
        prop_assert_eq!(t.act_sigma(&Perm::identity(n)).unwrap(), t);
    }

    #[test]
    fn composition_is_unital_and_associative(setup in 0..SETUPS.len(), seed: u64) {
        let (sig, mode) = setups::by_name(SETUPS[setup]).unwrap();
        let gen = TermGen::new(&sig, mode);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let t = gen.term(&mut rng, 5);
        let k = t.arity();
        let units = vec![Term::var(1); k];
        prop_assert_eq!(t.gamma(&units).unwrap(), t.clone());
        prop_assert_eq!(Term::var(1).gamma(std::slice::from_ref(&t)).unwrap(), t.clone());

        let us: Vec<Term> = (0..k).map(|_| gen.term(&mut rng, 3)).collect();
        let total: usize = us.iter().map(Term::arity).sum();
        let vs: Vec<Term> = (0..total).map(|_| gen.term(&mut rng, 2)).collect();
        let left = t.gamma(&us).unwrap().gamma(&vs).unwrap();
        let mut offset = 0;
        let mut inner = Vec::new();
        for u in &us {
            let j = u.arity();
            inner.push(u.gamma(&vs[offset..offset + j]).unwrap());
            offset += j;
        }
        prop_assert_eq!(left, t.gamma(&inner).unwrap());
    }

    #[test]
    fn normal_forms_are_reduced_fixed_points(setup in 0..SETUPS.len(), seed: u64, strategy_seed: u64) {
        let (sig, mode) = setups::by_name(SETUPS[setup]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let t = TermGen::new(&sig, mode).term(&mut rng, 12);
        let (nf, _) = reduce(&sig, mode, &t, Reduction::LeftmostInnermost).unwrap();
        prop_assert!(is_reduced(&sig, mode, &nf));
        prop_assert_eq!(reduce(&sig, mode, &nf, Reduction::LeftmostInnermost).unwrap().0, nf.clone());
        prop_assert_eq!(reduce(&sig, mode, &t, Reduction::Random(strategy_seed)).unwrap().0, nf);
    }

    #[test]
    fn lattice_operations_stay_in_the_lattice(group in 0..RUNNING_GROUPS.len(), a: u64, b: u64) {
        let name = RUNNING_GROUPS[group];
        let (s, t) = (random_system(name, a), random_system(name, b));
        let (m, j) = (meet(&s, &t).unwrap(), join(&s, &t).unwrap());
        prop_assert!(validate(m.relation()).is_ok());
        prop_assert!(validate(j.relation()).is_ok());
        prop_assert_eq!(&m, &meet(&t, &s).unwrap());
        prop_assert_eq!(&j, &join(&t, &s).unwrap());
        prop_assert_eq!(&join(&s, &m).unwrap(), &s);
        prop_assert_eq!(&meet(&s, &j).unwrap(), &s);
        prop_assert!(m.refines(&s) && s.refines(&j));
    }

    #[test]
    fn closures_fix_transfer_systems(group in 0..RUNNING_GROUPS.len(), seed: u64) {
        let t = random_system(RUNNING_GROUPS[group], seed);
        prop_assert_eq!(&generate(t.relation()).unwrap(), &t);
        prop_assert_eq!(&cogenerate(t.relation()).unwrap(), &t);
    }

    #[test]
    fn indexing_and_free_models_round_trip(group in 0..RUNNING_GROUPS.len(), seed: u64) {
        let t = random_system(RUNNING_GROUPS[group], seed);
        prop_assert_eq!(&transfer_of_indexing(&indexing_of_transfer(&t)).unwrap(), &t);
        prop_assert_eq!(&free_model(&t).transfer().unwrap(), &t);
    }

    #[test]
    fn permutations_form_a_group((p, q, r) in (0usize..6).prop_flat_map(|n| (arb_perm(n), arb_perm(n), arb_perm(n)))) {
        prop_assert_eq!(p.compose(&q).compose(&r), p.compose(&q.compose(&r)));
        prop_assert!(p.compose(&p.inverse()).is_identity());
        prop_assert_eq!(Perm::unrank(p.degree(), p.rank()), p);
    }
}

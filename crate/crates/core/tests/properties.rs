mod common;

use std::sync::Arc;

use common::*;
use gradalg::algebra::{is_division_graded, GradedAlgebra};
use gradalg::cohomology::{
    class_order, classes_equivalent, coboundary_from, h2_of_subgroup, is_cocycle, ExpCocycle, ExpFunction,
};
use gradalg::embeddings::{matrix_embed, twisted_embed};
use gradalg::graded_matrix::{lambda_membership, regrade_iso, GradedMatrixAlgebra, LambdaWitness};
use gradalg::group::{enumerate_subgroups, normalizer, FiniteGroup, Subgroup};
use gradalg::io::{self, Workspace};
use gradalg::pi::{identity_space, DegreeAssignment};
use gradalg::twisted::TwistedGroupAlgebra;
use proptest::prelude::*;
use proptest::sample::Index;

const GROUPS: &[&str] = &["C2", "C4", "C2xC2", "C6", "S3", "C2xC4", "D4", "Q8", "C3xC3"];

fn pick<T: Clone>(xs: &[T], i: &Index) -> T {
    xs[i.index(xs.len())].clone()
}

fn classes(g: &Arc<FiniteGroup>, h: &Subgroup) -> Vec<ExpCocycle> {
    h2_of_subgroup(g, h, 64).unwrap().all_classes()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn class_sums_are_cocycles_with_dividing_order(gi: Index, hi: Index, a: Index, b: Index) {
        let g = grp(pick(GROUPS, &gi));
        let h = pick(&enumerate_subgroups(&g), &hi);
        let cs = classes(&g, &h);
        let (x, y) = (pick(&cs, &a), pick(&cs, &b));
        let s = x.add(&y).unwrap();
        prop_assert!(is_cocycle(&s));
        let table = s.matrix();
        let entry = |p: usize, q: usize| table[h.position(p).unwrap()][h.position(q).unwrap()];
        prop_assert!(satisfies_cocycle_identity(&g, h.members(), s.modulus(), entry));
        prop_assert_eq!(h.exponent(&g) as u64 % class_order(&s).unwrap(), 0);
    }

    #[test]
    fn coboundaries_are_trivial(gi: Index, hi: Index, vals in proptest::collection::vec(0u64..12, 16)) {
        let g = grp(pick(GROUPS, &gi));
        let h = pick(&enumerate_subgroups(&g), &hi);
        let f = ExpFunction::new(g.clone(), h.clone(), 12, vals[..h.len()].to_vec()).unwrap();
        let d = coboundary_from(&f);
        prop_assert!(is_cocycle(&d));
        prop_assert!(classes_equivalent(&d, &ExpCocycle::trivial(g.clone(), h, 12)).unwrap().is_some());
    }

    #[test]
    fn regrading_is_an_isomorphism(gi: Index, hi: Index, ci: Index, picks in proptest::collection::vec(any::<Index>(), 10)) {
        let g = grp(pick(GROUPS, &gi));
        let h = pick(&enumerate_subgroups(&g), &hi);
        let n = normalizer(&g, &h).unwrap();
        let k = 1 + picks[0].index(3);
        let theta: Vec<usize> = (0..k).map(|i| pick(n.members(), &picks[1 + i])).collect();
        let a = GradedMatrixAlgebra::new(TwistedGroupAlgebra::new(pick(&classes(&g, &h), &ci)).unwrap(), theta.clone()).unwrap();
        let delta = pick(n.members(), &picks[4]);
        let mut alpha: Vec<usize> = (0..k).collect();
        alpha.rotate_left(picks[5].index(k));
        let xis: Vec<usize> = (0..k).map(|i| pick(h.members(), &picks[6 + i])).collect();
        let target: Vec<usize> = (0..k).map(|j| g.mul(g.mul(delta, xis[j]), theta[alpha[j]])).collect();
        prop_assert!(lambda_brute(&g, &h, &theta, &target));
        let w = LambdaWitness::new(&a, target.clone(), delta, alpha, xis).unwrap();
        let (b, map) = regrade_iso(&a, &w).unwrap();
        prop_assert_eq!(b.theta(), &target[..]);
        prop_assert!(monomial_map_is_embedding(&map, &a, &b));
        prop_assert_eq!(a.dim(), b.dim());
        prop_assert!(lambda_membership(&target, &a).unwrap().is_some());
    }

    #[test]
    fn embeddings_compose(gi: Index, picks in proptest::collection::vec(any::<Index>(), 9)) {
        let g = grp(pick(GROUPS, &gi));
        let subs = enumerate_subgroups(&g);
        let alg = |o: usize| {
            let h = pick(&subs, &picks[o]);
            let n = normalizer(&g, &h).unwrap();
            let k = 1 + picks[o + 1].index(2);
            let theta = (0..k).map(|i| pick(n.members(), &picks[(o + 2 + i) % 9])).collect();
            GradedMatrixAlgebra::new(TwistedGroupAlgebra::new(pick(&classes(&g, &h), &picks[o + 2])).unwrap(), theta).unwrap()
        };
        let (a, b, c) = (alg(0), alg(3), alg(6));
        if matrix_embed(&a, &b).unwrap().is_yes() && matrix_embed(&b, &c).unwrap().is_yes() {
            prop_assert!(matrix_embed(&a, &c).unwrap().is_yes());
        }
        prop_assert!(matrix_embed(&a, &a).unwrap().is_yes());
    }

    #[test]
    fn identity_dimension_is_symmetric_in_variables(gi: Index, hi: Index, ci: Index, d in proptest::collection::vec(any::<Index>(), 3)) {
        let g = grp(pick(&["C2xC2", "C4", "S3", "C2xC4"], &gi));
        let h = pick(&enumerate_subgroups(&g), &hi);
        let a = TwistedGroupAlgebra::new(pick(&classes(&g, &h), &ci)).unwrap();
        let degs: Vec<usize> = d.iter().map(|i| pick(h.members(), i)).collect();
        let mut rev = degs.clone();
        rev.reverse();
        let s1 = identity_space(&a, &DegreeAssignment::new(degs).unwrap()).unwrap();
        let s2 = identity_space(&a, &DegreeAssignment::new(rev).unwrap()).unwrap();
        prop_assert_eq!(s1.dim(), s2.dim());
        for p in &s1.basis {
            prop_assert!(s2.contains(&p.relabel(&[2, 1, 0])));
        }
    }

    #[test]
    fn json_round_trip(gi: Index, hi: Index, ci: Index, t in proptest::collection::vec(any::<Index>(), 3)) {
        let g = grp(pick(GROUPS, &gi));
        let h = pick(&enumerate_subgroups(&g), &hi);
        let s = pick(&classes(&g, &h), &ci);
        let ws = Workspace::default();
        let text = serde_json::to_string(&io::cocycle_to_json(&s)).unwrap();
        prop_assert_eq!(&ws.cocycle(&serde_json::from_str(&text).unwrap()).unwrap(), &s);
        let theta = t.iter().map(|i| i.index(g.order())).collect();
        let a = GradedMatrixAlgebra::new(TwistedGroupAlgebra::new(s).unwrap(), theta).unwrap();
        let text = serde_json::to_string(&io::algebra_to_json(&a)).unwrap();
        prop_assert_eq!(ws.algebra(&serde_json::from_str(&text).unwrap()).unwrap(), a);
    }
}

/// Two division graded algebras over V4 that do not both embed into a common
/// twisted group algebra of V4 do not embed into each other.
#[test]
fn division_algebras_without_common_envelope() {
    let g = grp("C2xC2");
    let whole = classes(&g, &Subgroup::full(&g));
    let envelopes: Vec<TwistedGroupAlgebra> =
        whole.iter().map(|s| TwistedGroupAlgebra::new(s.clone()).unwrap()).collect();
    let all: Vec<TwistedGroupAlgebra> = enumerate_subgroups(&g)
        .iter()
        .flat_map(|h| classes(&g, h))
        .map(|s| TwistedGroupAlgebra::new(s).unwrap())
        .collect();
    let mut separated = 0;
    for d1 in &all {
        assert!(is_division_graded(d1));
        for d2 in &all {
            let common = envelopes
                .iter()
                .any(|e| twisted_embed(d1, e).unwrap().is_yes() && twisted_embed(d2, e).unwrap().is_yes());
            if !common {
                separated += 1;
                assert!(!twisted_embed(d1, d2).unwrap().is_yes());
                assert!(!twisted_embed(d2, d1).unwrap().is_yes());
            }
        }
    }
    // F[V4] and its twisted form share no envelope
    assert!(separated >= 2);
}

#[test]
fn support_matches_enumeration() {
    for name in GROUPS {
        let g = grp(name);
        for h in enumerate_subgroups(&g) {
            let a = GradedMatrixAlgebra::new(
                TwistedGroupAlgebra::untwisted(g.clone(), h.clone()).unwrap(),
                vec![0, g.order() - 1],
            )
            .unwrap();
            let mut expect = Vec::new();
            for &ti in a.theta() {
                for &tj in a.theta() {
                    for &z in h.members() {
                        expect.push(g.mul(g.mul(g.inv(ti), z), tj));
                    }
                }
            }
            expect.sort_unstable();
            expect.dedup();
            assert_eq!(a.support(), expect, "{name} {:?}", h.members());
        }
    }
}

use cptagg_core::*;
use proptest::prelude::*;

/// A random CPT over `n` attributes with a parent set of at most `max_parents`.
fn cpt_strategy(n: usize, max_parents: usize) -> impl Strategy<Value = Cpt> {
    (any::<u32>(), any::<u64>()).prop_map(move |(mask, prefs)| {
        let mut parents = AttributeSet::from_bits(mask & AttributeSet::full(n).bits());
        while parents.len() > max_parents {
            parents = parents.without(parents.iter().next().unwrap());
        }
        let rules = parents.context_count();
        Cpt::from_votes(n, parents, (0..rules).map(|i| (prefs >> (i % 64)) & 1 == 1)).unwrap()
    })
}

fn instance_strategy(n: usize, max_t: usize, max_parents: usize) -> impl Strategy<Value = Instance> {
    prop::collection::vec(cpt_strategy(n, max_parents), 1..=max_t)
        .prop_map(move |cpts| Instance::new(n, cpts).unwrap())
}

fn triple(n: usize) -> impl Strategy<Value = (Cpt, Cpt, Cpt)> {
    (cpt_strategy(n, 5), cpt_strategy(n, 5), cpt_strategy(n, 5))
}

proptest! {
    #[test]
    fn disagreement_is_a_metric((a, b, c) in (2usize..=6).prop_flat_map(triple)) {
        let ab = swap_disagreement(&a, &b).unwrap();
        let bc = swap_disagreement(&b, &c).unwrap();
        let ac = swap_disagreement(&a, &c).unwrap();
        prop_assert_eq!(swap_disagreement(&a, &a).unwrap(), 0);
        prop_assert_eq!(ab, swap_disagreement(&b, &a).unwrap());
        prop_assert!(ac <= ab + bc);
    }

    #[test]
    fn disagreement_is_column_hamming_distance(
        (a, b) in (2usize..=8).prop_flat_map(|n| (cpt_strategy(n, 7), cpt_strategy(n, 7)))
    ) {
        let inst = Instance::new(a.n(), vec![a.clone(), b.clone()]).unwrap();
        let m = build_matrix(&inst, 20).unwrap();
        let hamming = m.rows().iter().filter(|r| r[0] != r[1]).count() as u64;
        prop_assert_eq!(swap_disagreement(&a, &b).unwrap(), hamming);
    }

    #[test]
    fn objective_is_row_wise_mismatch_count(
        (inst, cand) in (2usize..=6).prop_flat_map(|n| (instance_strategy(n, 6, 5), cpt_strategy(n, 5)))
    ) {
        let m = build_matrix(&inst, 20).unwrap();
        let mut total = 0u64;
        for (row, votes) in m.rows().iter().enumerate() {
            let mine = cand.vote_on(m.row_assignment(row));
            total += votes.iter().filter(|v| **v != mine).count() as u64;
        }
        prop_assert_eq!(objective(&inst, &cand).unwrap(), total);
        let f = freq(&m, &Selection::all()).unwrap();
        prop_assert_eq!(f.total(), inst.t() as u64 * inst.swap_count());
        prop_assert_eq!(config_histogram(&m).total(), inst.swap_count());
    }

    #[test]
    fn irrelevant_parent_removal_preserves_semantics(c in (2usize..=7).prop_flat_map(|n| cpt_strategy(n, 6))) {
        let reduced = remove_irrelevant_parents(&c);
        prop_assert_eq!(swap_disagreement(&c, &reduced).unwrap(), 0);
        prop_assert!(reduced.parents().is_subset_of(c.parents()));
        prop_assert_eq!(remove_irrelevant_parents(&reduced), reduced.clone());
        let free = AttributeSet::full(c.n()).difference(c.parents()).iter().next();
        if let Some(extra) = free {
            let wider = c.parents().with(extra);
            let padded = Cpt::from_votes(
                c.n(),
                wider,
                (0..wider.context_count()).map(|i| c.vote_on(wider.expand(i))),
            ).unwrap();
            prop_assert_eq!(remove_irrelevant_parents(&padded), reduced);
        }
    }

    #[test]
    fn algorithm_ordering(inst in (2usize..=6).prop_flat_map(|n| instance_strategy(n, 6, 4))) {
        let limits = Limits::default();
        let trivial = trivial_best_input(&inst).unwrap();
        let alg1 = algorithm1(&inst, &limits).unwrap();
        let exact = exact_union_majority(&inst, &limits).unwrap();
        prop_assert!(exact.objective <= alg1.objective);
        prop_assert!(alg1.objective <= trivial.objective);
        prop_assert!(trivial.objective <= 2 * exact.objective);
        if exact.objective > 0 {
            prop_assert!(trivial.objective < 2 * exact.objective);
        }
        for r in [&trivial, &alg1, &exact] {
            prop_assert_eq!(r.per_input.iter().sum::<u64>(), r.objective);
            if let Some(p) = r.chosen_parent_set {
                prop_assert!(r.output.parents().is_subset_of(p));
            }
        }
        prop_assert_eq!(algorithm1(&inst, &limits).unwrap(), alg1);
    }

    #[test]
    fn tkn_structure(n in 3usize..=7, k_off in 0usize..5) {
        let k = 2 + k_off % (n - 2);
        let inst = gen_tkn(n, k).unwrap();
        let binom = (0..k).fold(1usize, |acc, i| acc * (n - 1 - i) / (i + 1));
        prop_assert_eq!(inst.t(), binom << k);
        for group in inst.cpts().chunks(1 << k) {
            let parents = group[0].parents();
            prop_assert_eq!(parents.len(), k);
            prop_assert!(group.iter().all(|c| c.parents() == parents));
            for ctx in 0..(1u64 << k) {
                prop_assert_eq!(group.iter().filter(|c| c.vote(ctx)).count(), 1);
            }
        }
    }

    #[test]
    fn symmetric_disjoint_structure(t in 3usize..=6, extra in 0usize..3, seed in any::<u64>()) {
        let n = t + 1 + extra;
        let inst = gen_symmetric_disjoint(n, t, seed).unwrap();
        for (i, a) in inst.cpts().iter().enumerate() {
            prop_assert!(is_symmetric(a));
            for b in &inst.cpts()[i + 1..] {
                prop_assert!(a.parents().is_disjoint(b.parents()));
            }
        }
        prop_assert_eq!(gen_symmetric_disjoint(n, t, seed).unwrap(), inst);
    }
}

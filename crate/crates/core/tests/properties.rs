use std::collections::HashSet;

use proptest::prelude::*;

use ssbp_core::avgfree::{build_behrend_set, verify_average_free};
use ssbp_core::generate::{
    random_bicriteria, random_cnf, random_csp, random_dag, random_exact_bicrit_kpath, random_exact_kpath,
    random_subset_sum, seeded,
};
use ssbp_core::graph::{digit_expand, exactpath_to_bicriteria, ksum_to_multigraph, or_to_bicriteria};
use ssbp_core::instances::{
    BicriteriaInstance, Edge, Instance, LayeredGraph, KSumInstance, OrBundle, SolutionCertificate, SubsetSumInstance,
};
use ssbp_core::numeric::{
    csp_to_subset_sum, decode_ss_solution, group_to_csp, lift_csp_assignment, split_to_ksum, LayoutMode,
    DEFAULT_TUPLE_CAP,
};
use ssbp_core::solvers::brute::{
    brute_bicriteria, brute_cnf_sat, brute_csp_sat, brute_exact_bicrit_kpath, brute_exact_kpath, brute_ksum,
    brute_subset_sum, count_subset_sum, enumerate_st_paths,
};
use ssbp_core::solvers::{
    solve_bicriteria_distinct_dp, solve_bicriteria_joksch, solve_exact_bicrit_kpath_mim, solve_exact_kpath_mim,
    solve_ksum, solve_subset_sum_dp, solve_subset_sum_mim, JokschAxis, DEFAULT_DP_CAP, DEFAULT_JOKSCH_CAP,
    DEFAULT_MIM_CAP,
};
use ssbp_core::threshold::{
    absorb_endpoints, colored_copy, colorings, pair_weight, prefix, scale_thresholds, width_of, ColorStrategy,
};

fn joksch(g: &BicriteriaInstance) -> bool {
    solve_bicriteria_joksch(g, JokschAxis::Auto, DEFAULT_JOKSCH_CAP).unwrap().is_yes()
}

fn path_weights(g: &BicriteriaInstance) -> Vec<(u128, u128)> {
    let mut w: Vec<_> = enumerate_st_paths(g).unwrap().iter().map(|p| (p.length, p.cost)).collect();
    w.sort();
    w
}

fn small_ksum() -> impl Strategy<Value = KSumInstance> {
    (2usize..=3, 0u64..=40).prop_flat_map(|(k, t)| {
        prop::collection::vec(prop::collection::vec(0..=t, 1..=3), k)
            .prop_map(move |groups| {
                let refs: Vec<&[u64]> = groups.iter().map(|g| g.as_slice()).collect();
                KSumInstance::from_u64(&refs, t)
            })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn digit_expansion_keeps_every_path_weight(inst in small_ksum(), tau in 1u32..=3) {
        let (g, _) = ksum_to_multigraph(&inst).unwrap();
        let h = digit_expand(&g, tau).unwrap();
        prop_assert_eq!(path_weights(&g), path_weights(&h));
        let (dl, dc) = h.distinct_weights();
        prop_assert!(dl <= tau as usize + 1 && dc <= tau as usize + 1);
        prop_assert!(!h.has_parallel_edges());
        prop_assert!(h.topological_order().is_some());
    }

    #[test]
    fn ksum_graph_matches_brute_force(inst in small_ksum()) {
        let (g, trace) = ksum_to_multigraph(&inst).unwrap();
        let r = solve_bicriteria_joksch(&g, JokschAxis::Auto, DEFAULT_JOKSCH_CAP).unwrap();
        prop_assert_eq!(r.is_yes(), brute_ksum(&inst).unwrap().is_yes());
        prop_assert_eq!(solve_ksum(&inst).unwrap().is_yes(), r.is_yes());
        if let Some(SolutionCertificate::Path { edges }) = &r.certificate {
            let picks = ssbp_core::graph::decode_ksum_path(&trace, edges).unwrap();
            let cert = SolutionCertificate::Tuple { picks };
            prop_assert!(inst.check_certificate(&cert).unwrap());
        }
    }

    #[test]
    fn one_dimensional_threshold_family(
        cap in 1u64..=64,
        raw in prop::collection::vec(any::<u64>(), 1..=6),
        budget_raw in any::<u64>(),
        k_raw in 0usize..3,
    ) {
        let weights: Vec<u64> = raw.iter().map(|w| w % (cap + 1)).collect();
        let budget = budget_raw % (cap + 1);
        let n = weights.len();
        let k = 1 + k_raw % n.min(3);
        let fam = scale_thresholds(&weights, budget, k, cap).unwrap();
        prop_assert!(fam.iter().all(|e| e.weights.len() == n));
        for mask in 0u32..1 << n {
            if mask.count_ones() as usize != k {
                continue;
            }
            let x: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
            let within = x.iter().map(|&i| weights[i]).sum::<u64>() <= budget;
            let hit = fam.iter().any(|e| x.iter().map(|&i| e.weights[i]).sum::<u64>() == e.target);
            prop_assert_eq!(within, hit);
        }
    }

    #[test]
    fn prefix_carry_bound(cap in 2u64..=1 << 20, raw in prop::collection::vec(any::<u64>(), 1..=4)) {
        let ws: Vec<u64> = raw.iter().map(|w| w % (cap + 1)).collect();
        let width = width_of(cap);
        let total: u64 = ws.iter().sum();
        for x in 1..=width {
            let scaled: u64 = ws.iter().map(|&w| prefix(w, x, width)).sum();
            let whole = prefix(total, x, width);
            prop_assert!(scaled <= whole && whole <= scaled + ws.len() as u64);
        }
    }

    #[test]
    fn pair_weight_is_injective(w in 1u64..=1000, k in 1usize..=5, a in any::<(u64, u64, u64, u64)>()) {
        let (p, q) = ((a.0 % (w + 1), a.1 % (w + 1)), (a.2 % (w + 1), a.3 % (w + 1)));
        let fp = pair_weight(p.0, p.1, k, w).unwrap();
        let fq = pair_weight(q.0, q.1, k, w).unwrap();
        prop_assert_eq!(fp == fq, p == q);
    }

    #[test]
    fn exact_mim_matches_brute_force(seed in any::<u64>(), k in 1usize..=4, w in 0u64..=32) {
        let inst = random_exact_kpath(&mut seeded(seed), k, 3, 0.6, w);
        let r = solve_exact_kpath_mim(&inst).unwrap();
        prop_assert_eq!(r.is_yes(), brute_exact_kpath(&inst).unwrap().is_yes());
        if let Some(cert) = &r.certificate {
            prop_assert!(inst.check_certificate(cert).unwrap());
        }
        let pair = random_exact_bicrit_kpath(&mut seeded(seed), k, 3, 0.6, w.min(8));
        let r = solve_exact_bicrit_kpath_mim(&pair).unwrap();
        prop_assert_eq!(r.is_yes(), brute_exact_bicrit_kpath(&pair).unwrap().is_yes());
    }

    #[test]
    fn exact_path_to_bicriteria_preserves_answer(seed in any::<u64>(), k in 1usize..=4, w in 0u64..=12) {
        let inst = random_exact_kpath(&mut seeded(seed), k, 3, 0.6, w);
        let truth = brute_exact_kpath(&inst).unwrap().is_yes();
        let outs = exactpath_to_bicriteria(&inst).unwrap();
        let any = outs.iter().any(|g| brute_bicriteria(g).unwrap().is_yes());
        prop_assert_eq!(truth, any);
        prop_assert_eq!(truth, outs.iter().any(joksch));
    }

    #[test]
    fn joksch_is_monotone_in_both_budgets(seed in any::<u64>(), dl in 0u64..20, dc in 0u64..20) {
        let mut rng = seeded(seed);
        let g = random_bicriteria(&mut rng, 7, 0.35, 10, (15, 15));
        let bigger = BicriteriaInstance { budget_length: g.budget_length + dl, budget_cost: g.budget_cost + dc, ..g.clone() };
        if joksch(&g) {
            prop_assert!(joksch(&bigger));
        }
        prop_assert_eq!(joksch(&g), brute_bicriteria(&g).unwrap().is_yes());
        let r = solve_bicriteria_joksch(&g, JokschAxis::Length, DEFAULT_JOKSCH_CAP).unwrap();
        prop_assert!(r.stats.states <= (g.budget_length + 1) * g.n as u64);
    }

    #[test]
    fn joksch_and_distinct_dp_agree_on_dags(seed in any::<u64>(), lengths in prop::collection::vec(0u64..8, 1..=3)) {
        let mut rng = seeded(seed);
        let mut g = random_dag(&mut rng, 8, 0.4, 10, (12, 20));
        for (i, e) in g.edges.iter_mut().enumerate() {
            e.length = lengths[i % lengths.len()];
        }
        let r = solve_bicriteria_distinct_dp(&g, 3).unwrap();
        prop_assert_eq!(r.is_yes(), joksch(&g));
        if let Some(cert) = &r.certificate {
            prop_assert!(g.check_certificate(cert).unwrap());
        }
    }

    #[test]
    fn or_gadget_matches_member_answers(seed in any::<u64>(), members in 1usize..=4) {
        let mut rng = seeded(seed);
        let instances: Vec<SubsetSumInstance> = (0..members).map(|i| random_subset_sum(&mut rng, i % 4 + 1, 12, 20)).collect();
        let bundle = OrBundle { instances };
        let truth = bundle.instances.iter().any(|i| brute_subset_sum(i).unwrap().is_yes());
        let (g, trace) = or_to_bicriteria(&bundle, 20).unwrap();
        prop_assert_eq!(g.edges.len(), trace.origins.len());
        prop_assert!(!g.has_parallel_edges());
        prop_assert_eq!(brute_bicriteria(&g).unwrap().is_yes(), truth);
        prop_assert_eq!(joksch(&g), truth);
    }

    #[test]
    fn split_preserves_answers(seed in any::<u64>(), k in 2usize..=5) {
        let inst = random_subset_sum(&mut seeded(seed), 9, 40, 150);
        let ks = split_to_ksum(&inst, k).unwrap();
        prop_assert_eq!(ks.k(), k);
        prop_assert_eq!(solve_ksum(&ks).unwrap().is_yes(), brute_subset_sum(&inst).unwrap().is_yes());
    }

    #[test]
    fn subset_sum_solvers_agree(seed in any::<u64>()) {
        let inst = random_subset_sum(&mut seeded(seed), 14, 200, 1500);
        let dp = solve_subset_sum_dp(&inst, DEFAULT_DP_CAP).unwrap();
        let mim = solve_subset_sum_mim(&inst, DEFAULT_MIM_CAP).unwrap();
        prop_assert_eq!(dp.answer, mim.answer);
        prop_assert_eq!(dp.is_yes(), count_subset_sum(&inst).unwrap() > 0);
        let target = u64::try_from(&inst.target).unwrap();
        prop_assert!(dp.stats.states <= target + 1);
    }

    #[test]
    fn grouping_keeps_satisfiability(seed in any::<u64>(), vars in 1usize..=6, clauses in 0usize..=6, a in 1u32..=3) {
        let phi = random_cnf(&mut seeded(seed), vars, clauses, 3);
        let psi = group_to_csp(&phi, a, DEFAULT_TUPLE_CAP).unwrap();
        let cnf = brute_cnf_sat(&phi).unwrap();
        let csp = brute_csp_sat(&psi).unwrap();
        // spare bits of the last super-variable are free
        let spare = psi.num_vars * a as usize - phi.num_vars;
        prop_assert_eq!(csp.count, cnf.count << spare);
        if let Some(values) = csp.first {
            prop_assert!(phi.is_satisfied_by(&lift_csp_assignment(&values, a, phi.num_vars)));
        }
    }

    #[test]
    fn csp_encoding_decodes_to_satisfying_assignments(seed in any::<u64>()) {
        let psi = random_csp(&mut seeded(seed), 3, 2, 3, 4);
        let set = build_behrend_set(psi.degree_bound.max(2), 0.5, psi.universe_size() as usize).unwrap();
        let (inst, map) = csp_to_subset_sum(&psi, &set, LayoutMode::Minimal).unwrap();
        prop_assert!(inst.items.iter().all(|x| x.bits() as u32 <= map.layout.total_bits()));
        if inst.items.len() <= 20 {
            let r = brute_subset_sum(&inst).unwrap();
            prop_assert_eq!(r.is_yes(), brute_csp_sat(&psi).unwrap().count > 0);
            if let Some(cert) = &r.certificate {
                let values = decode_ss_solution(&inst, cert, &map).unwrap();
                prop_assert!(psi.is_satisfied_by(&values));
            }
        }
    }

    #[test]
    fn behrend_sets_are_average_free(k in 2usize..=5, n in 1usize..=40) {
        let s = build_behrend_set(k, 0.5, n).unwrap();
        prop_assert_eq!(s.len(), n);
        prop_assert!(s.elements.windows(2).all(|w| w[0] < w[1]));
        prop_assert!(verify_average_free(&s.elements, k));
    }
}

/// Weights of every `s -> V_1 -> ... -> V_k -> t` path in a colored copy.
fn copy_path_weights(g: &BicriteriaInstance, k: usize, class_of: &[Option<usize>]) -> Vec<(u64, u64)> {
    let mut out = Vec::new();
    let mut stack = vec![(g.s, 0usize, (0u64, 0u64))];
    while let Some((v, depth, w)) = stack.pop() {
        for e in g.edges.iter().filter(|e| e.tail == v) {
            let next = (w.0 + e.length, w.1 + e.cost);
            if depth == k && e.head == g.t {
                out.push(next);
            } else if depth < k && class_of[e.head] == Some(depth) {
                stack.push((e.head, depth + 1, next));
            }
        }
    }
    out.sort();
    out
}

/// Weights of every path crossing all layers of `g`.
fn layered_path_weights(g: &LayeredGraph<(u64, u64)>) -> Vec<(u64, u64)> {
    let last = g.num_layers - 1;
    let mut out = Vec::new();
    let mut stack: Vec<(usize, (u64, u64))> =
        (0..g.layer_of.len()).filter(|&v| g.layer_of[v] == 0).map(|v| (v, (0, 0))).collect();
    while let Some((v, w)) = stack.pop() {
        if g.layer_of[v] == last {
            out.push(w);
            continue;
        }
        for e in g.edges.iter().filter(|e| e.from == v) {
            stack.push((e.to, (w.0 + e.weight.0, w.1 + e.weight.1)));
        }
    }
    out.sort();
    out
}

#[test]
fn absorption_preserves_path_weights() {
    for seed in 0..150 {
        let mut rng = seeded(seed);
        let g = random_bicriteria(&mut rng, 6, 0.5, 9, (99, 99));
        for k in 1..=3 {
            for p in colorings(&g, k, ColorStrategy::default()).unwrap() {
                let expected = copy_path_weights(&g, k, &p.class_of);
                let a = absorb_endpoints(&colored_copy(&g, k, p), k);
                let layered = layered_path_weights(&a.graph);
                assert_eq!(expected, layered, "seed {seed} k {k}");
            }
        }
    }
}

#[test]
fn exhaustive_coloring_keeps_every_path_colorful() {
    for seed in 0..40 {
        let g = random_bicriteria(&mut seeded(seed), 6, 0.5, 5, (99, 99));
        for k in 1..=3 {
            let parts: Vec<_> = colorings(&g, k, ColorStrategy::default()).unwrap().collect();
            for path in enumerate_st_paths(&g).unwrap().iter().filter(|p| p.edges.len() == k + 1) {
                let inner: Vec<usize> = path.edges[..k].iter().map(|&e| g.edges[e].head).collect();
                let found = parts
                    .iter()
                    .any(|p| inner.iter().enumerate().all(|(i, &v)| p.class_of[v] == Some(i)));
                assert!(found, "seed {seed} k {k}: {inner:?}");
            }
        }
    }
}

#[test]
fn randomized_coloring_finds_short_paths() {
    // a single path with two internal vertices; 2 trials x 2 orderings
    let g = BicriteriaInstance::new(4, vec![Edge::new(0, 1, 1, 1), Edge::new(1, 2, 1, 1), Edge::new(2, 3, 1, 1)], 0, 3, 3, 3);
    let strategy = ColorStrategy::Randomized { trials: 8, seed: 1 };
    let r = ssbp_core::solvers::solve_bicriteria_kpath(&g, 2, strategy).unwrap();
    assert!(r.is_yes());
}

#[test]
fn instances_round_trip_through_json() {
    use ssbp_core::instances::format::{parse_any, to_canonical_json, write_any};
    let mut seen = HashSet::new();
    for seed in 0..30 {
        let mut rng = seeded(seed);
        let docs = [
            to_canonical_json(&random_subset_sum(&mut rng, 5, 99, 200)),
            to_canonical_json(&random_csp(&mut rng, 3, 2, 3, 4)),
            to_canonical_json(&random_bicriteria(&mut rng, 5, 0.4, 9, (10, 10))),
            to_canonical_json(&random_exact_kpath(&mut rng, 3, 2, 0.6, 9)),
            to_canonical_json(&random_exact_bicrit_kpath(&mut rng, 3, 2, 0.6, 9)),
        ];
        for doc in docs {
            let parsed = parse_any(&doc).unwrap();
            seen.insert(parsed.kind());
            assert_eq!(write_any(&parsed), doc);
        }
    }
    assert_eq!(seen.len(), 5);
}

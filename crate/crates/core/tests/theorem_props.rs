use linesand::critical::{
    critical_group, enumerate_arborescences, kappa, laplacian_matrix, phi_matrix, rho_bar,
    structural_maps, verify_divisibility, verify_main_theorem,
};
use linesand::digraph::random_k_out_regular;
use linesand::fuzz::trial_seed;
use linesand::{BasePoint, IntMatrix, Multidigraph, Order};
use num_bigint::BigInt;
use num_traits::Zero;
use proptest::prelude::*;

fn multidigraph(max_v: usize, max_e: usize) -> impl Strategy<Value = Multidigraph> {
    (1..=max_v).prop_flat_map(move |n| {
        proptest::collection::vec((0..n, 0..n), 0..=max_e)
            .prop_map(move |edges| Multidigraph::with_vertex_count(n, edges).unwrap())
    })
}

fn with_base_edge(max_v: usize, max_e: usize) -> impl Strategy<Value = (Multidigraph, BasePoint)> {
    (1..=max_v)
        .prop_flat_map(move |n| proptest::collection::vec((0..n, 0..n), 1..=max_e).prop_map(move |e| (n, e)))
        .prop_flat_map(|(n, edges)| {
            let m = edges.len();
            (Just(Multidigraph::with_vertex_count(n, edges).unwrap()), 0..m)
        })
        .prop_map(|(g, e)| {
            let bp = BasePoint::from_edge(&g, e).unwrap();
            (g, bp)
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn line_graph_counts(g in multidigraph(6, 12)) {
        let lg = g.line_graph();
        prop_assert_eq!(lg.vertex_count(), g.edge_count());
        let expected: usize = g.edges().iter().map(|e| g.out_degree(e.head).unwrap()).sum();
        prop_assert_eq!(lg.edge_count(), expected);
        if let Some(k) = g.is_k_out_regular().unwrap() {
            if lg.vertex_count() > 0 {
                prop_assert_eq!(lg.is_k_out_regular().unwrap(), Some(k));
            }
        }
    }

    #[test]
    fn laplacian_columns_sum_to_zero(g in multidigraph(6, 12), s in 0usize..6) {
        let lap = laplacian_matrix(&g);
        for col in lap.columns() {
            prop_assert!(col.iter().sum::<BigInt>().is_zero());
        }
        let sink = s % g.vertex_count();
        let phi = phi_matrix(&g, sink).unwrap();
        let differing: Vec<usize> = (0..g.vertex_count()).filter(|&j| phi.column(j) != lap.column(j)).collect();
        prop_assert!(differing.is_empty() || differing == vec![sink]);
    }

    #[test]
    fn matrix_tree_theorem(g in multidigraph(5, 10)) {
        for root in 0..g.vertex_count() {
            prop_assert_eq!(kappa(&g, root).unwrap(), BigInt::from(enumerate_arborescences(&g, root).unwrap()));
        }
    }

    #[test]
    fn sandpile_order_is_kappa(g in multidigraph(5, 10), s in 0usize..5) {
        let sink = s % g.vertex_count();
        let k = kappa(&g, sink).unwrap();
        let group = critical_group(&g, sink).unwrap();
        if g.reachable_to(sink).unwrap().len() == g.vertex_count() && !k.is_zero() {
            prop_assert_eq!(group.order(), Order::Finite(k));
        }
    }

    #[test]
    fn diagram_commutes_without_hypotheses((g, bp) in with_base_edge(5, 9)) {
        let maps = structural_maps(&g, &bp).unwrap();
        let n = g.vertex_count();
        prop_assert_eq!(&maps.rho0 * &maps.rho0, IntMatrix::identity(n));
        let lg = g.line_graph();
        let phi_lg = phi_matrix(&lg, bp.base_edge).unwrap();
        prop_assert_eq!(&maps.tau * &phi_lg, &maps.psi * &maps.tau);
        prop_assert_eq!(&maps.rho0 * &maps.psi, phi_matrix(&g, bp.sink).unwrap());
        // ρ̄ always descends
        prop_assert!(rho_bar(&g, &bp).is_ok());
    }

    #[test]
    fn surjective_under_hypotheses((g, bp) in with_base_edge(5, 10)) {
        let hyp = g.check_hypotheses(&bp).unwrap();
        if hyp.ok {
            prop_assert!(rho_bar(&g, &bp).unwrap().is_surjective());
            prop_assert!(verify_divisibility(&g, &bp).unwrap());
        }
    }
}

#[test]
fn kernel_is_k_torsion_on_random_regular_graphs() {
    for i in 0..60 {
        let n = 2 + i % 5;
        let k = 2 + i % 2;
        let (g, bp) = random_k_out_regular(n, k, trial_seed(11, i)).unwrap();
        let r = verify_main_theorem(&g, &bp).unwrap();
        assert!(r.all_binding_pass(), "instance {i}: {r}");
        assert_eq!(r.kernel_equals_ktorsion, Some(true));
        assert_eq!(r.sigma_tau_is_k, Some(true));
    }
}

/// All functional graphs (out-degree exactly 1) on n vertices.
fn functional_graphs(n: usize) -> impl Iterator<Item = Multidigraph> {
    let total = n.pow(n as u32);
    (0..total).map(move |mut code| {
        let edges = (0..n)
            .map(|v| {
                let head = code % n;
                code /= n;
                (v, head)
            })
            .collect();
        Multidigraph::with_vertex_count(n, edges).unwrap()
    })
}

#[test]
fn one_out_regular_graphs_never_qualify() {
    let mut surjective_indegree = 0;
    for n in 1..=5 {
        for g in functional_graphs(n) {
            let all_hit = (0..n).all(|v| g.in_degree(v).unwrap() >= 1);
            if !all_hit {
                continue;
            }
            surjective_indegree += 1;
            for e in 0..g.edge_count() {
                let bp = BasePoint::from_edge(&g, e).unwrap();
                assert!(!g.check_hypotheses(&bp).unwrap().ok);
            }
        }
    }
    // permutations: 1 + 2 + 6 + 24 + 120
    assert_eq!(surjective_indegree, 153);
}

#[test]
fn disconnected_instance_has_free_part() {
    // Two disjoint bidirected 2-cycles with doubled edges: 2-out-regular,
    // every in-degree 2, but half the graph cannot reach the sink.
    let g = Multidigraph::with_vertex_count(
        4,
        vec![(0, 1), (0, 1), (1, 0), (1, 0), (2, 3), (2, 3), (3, 2), (3, 2)],
    )
    .unwrap();
    let bp = BasePoint::from_edge(&g, 0).unwrap();
    let r = verify_main_theorem(&g, &bp).unwrap();
    assert!(r.hypotheses_ok);
    assert!(r.graph_group.contains("Z^"), "{}", r.graph_group);
    assert!(r.free_rank_note.is_some());
    assert!(r.all_binding_pass(), "{r}");
    assert_eq!(r.order_factorization_ok, None);
}

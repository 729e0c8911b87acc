use gsnet::stabilizer::{all_graphs, check_measurement_rule, random_graph, tableau_from_graph, trial_rng};
use gsnet::*;
use proptest::prelude::*;
use std::collections::BTreeSet;

fn graph_from_mask(n: usize, bits: &[bool]) -> Graph {
    let mut g = Graph::with_vertices(n);
    let mut k = 0;
    for a in 0..n as u32 {
        for b in a + 1..n as u32 {
            if bits[k] {
                g.add_edge(VertexId(a), VertexId(b)).unwrap();
            }
            k += 1;
        }
    }
    g
}

fn graphs(max: usize) -> impl Strategy<Value = Graph> {
    (1..=max).prop_flat_map(|n| {
        prop::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |b| graph_from_mask(n, &b))
    })
}

fn graph_and_vertex(max: usize) -> impl Strategy<Value = (Graph, VertexId)> {
    graphs(max).prop_flat_map(|g| {
        let n = g.order() as u32;
        (Just(g), (0..n).prop_map(VertexId))
    })
}

fn edge_set(g: &Graph) -> BTreeSet<(VertexId, VertexId)> {
    g.edges().collect()
}

/// One representative per isomorphism class of graphs on `n` vertices.
fn iso_classes(n: usize) -> Vec<Graph> {
    let mut seen = BTreeSet::new();
    all_graphs(n)
        .filter(|g| seen.insert(canonical_graph(g).unwrap().form))
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn lc_is_an_involution((g, v) in graph_and_vertex(8)) {
        let twice = g.local_complement(v).unwrap().local_complement(v).unwrap();
        prop_assert_eq!(twice, g);
    }

    #[test]
    fn complement_is_an_involution(g in graphs(8)) {
        prop_assert_eq!(g.complement().complement(), g.clone());
        let union: BTreeSet<_> = edge_set(&g).union(&edge_set(&g.complement())).copied().collect();
        prop_assert_eq!(union, edge_set(&build_complete(g.order()).unlabeled()));
        prop_assert!(edge_set(&g).is_disjoint(&edge_set(&g.complement())));
    }

    #[test]
    fn lc_only_touches_the_neighbourhood((g, v) in graph_and_vertex(8)) {
        let h = g.local_complement(v).unwrap();
        let nv = g.neighborhood(v).unwrap().clone();
        let a: BTreeSet<_> = edge_set(&g).symmetric_difference(&edge_set(&h)).copied().collect();
        for (x, y) in a {
            prop_assert!(nv.contains(&x) && nv.contains(&y), "edge {x}-{y} changed outside N_v");
        }
    }

    #[test]
    fn delete_counts((g, v) in graph_and_vertex(8)) {
        let d = g.delete_vertex(v).unwrap();
        prop_assert_eq!(d.order(), g.order() - 1);
        prop_assert_eq!(d.size(), g.size() - g.degree(v).unwrap());
    }

    #[test]
    fn bicoloring_is_proper(g in graphs(9)) {
        match g.bicoloring() {
            Ok(c) => prop_assert!(c.is_proper_for(&g)),
            Err(e) => {
                let (a, b) = e.conflict;
                prop_assert!(g.has_edge(a, b));
            }
        }
    }

    #[test]
    fn classification_ignores_relabelling(g in graphs(9), seed in any::<u64>()) {
        use rand::seq::SliceRandom;
        let mut ids: Vec<u32> = (0..g.order() as u32).map(|i| 100 + 7 * i).collect();
        ids.shuffle(&mut trial_rng(seed, 0));
        let h = g.relabel(|v| VertexId(ids[v.index()]));
        prop_assert_eq!(classify_topology(&g).shape(), classify_topology(&h).shape());
        prop_assert_eq!(classify_topology(&g).kind_name(), classify_topology(&h).kind_name());
    }

    #[test]
    fn lc_equivalence_is_reflexive_and_symmetric(a in graphs(6), b in graphs(6), (c, v) in graph_and_vertex(6)) {
        prop_assert!(are_lc_equivalent(&a, &a, DEFAULT_MAX_ORBIT).unwrap());
        if a.order() == b.order() {
            prop_assert_eq!(
                are_lc_equivalent(&a, &b, DEFAULT_MAX_ORBIT).unwrap(),
                are_lc_equivalent(&b, &a, DEFAULT_MAX_ORBIT).unwrap()
            );
        }
        let d = c.local_complement(v).unwrap();
        prop_assert!(are_lc_equivalent(&c, &d, DEFAULT_MAX_ORBIT).unwrap());
        prop_assert!(are_lc_equivalent(&d, &c, DEFAULT_MAX_ORBIT).unwrap());
    }

    #[test]
    fn measurements_remove_one_vertex((g, v) in graph_and_vertex(9)) {
        prop_assert_eq!(measure_z(&g, v).unwrap().order(), g.order() - 1);
        prop_assert_eq!(measure_y(&g, v).unwrap().order(), g.order() - 1);
        let k0 = g.neighborhood(v).unwrap().iter().next().copied();
        prop_assert_eq!(measure_x(&g, v, k0).unwrap().order(), g.order() - 1);
    }

    #[test]
    fn cost_report_is_consistent(g in graphs(9), picks in prop::collection::vec((0u8..3, any::<prop::sample::Index>(), any::<prop::sample::Index>()), 0..6)) {
        let mut steps = Vec::new();
        let mut cur = g.clone();
        for (b, vi, ki) in picks {
            if cur.order() == 0 {
                break;
            }
            let vs: Vec<VertexId> = cur.vertices().collect();
            let v = vs[vi.index(vs.len())];
            let nb: Vec<VertexId> = cur.neighborhood(v).unwrap().iter().copied().collect();
            let step = match b {
                0 => MeasurementStep::z(v),
                1 => MeasurementStep::y(v),
                _ if nb.is_empty() => MeasurementStep::x_isolated(v),
                _ => MeasurementStep::x(v, nb[ki.index(nb.len())]),
            };
            cur = step.apply(&cur).unwrap();
            steps.push(step);
        }
        let run = apply_protocol(&g, &Protocol::new(steps)).unwrap();
        prop_assert!(run.cost.is_consistent());
        prop_assert_eq!(run.cost.total, g.order() - run.graph.order());
        prop_assert_eq!(run.graph, cur);
    }

    #[test]
    fn heterogeneous_survivors(counts in prop::collection::vec(0usize..=4, 1..=5).prop_map(|mut v| { if v.len() % 2 == 0 { v.pop(); } v })) {
        prop_assume!(!counts.is_empty());
        let spec = MultiStarSpec::new(counts.clone()).unwrap();
        let out = generate_max_connect(&spec).unwrap();
        prop_assert_eq!(out.alpha, predicted_alpha_hetero(&counts).unwrap());
        prop_assert_eq!(out.alpha + out.cost.total, spec.total_vertices());
        prop_assert!(is_star_graph(&out.final_graph));
    }

    #[test]
    fn json_round_trips(g in graphs(8)) {
        prop_assert_eq!(Graph::from_json(&g.to_json()).unwrap(), g);
    }
}

#[test]
fn k0_choice_does_not_matter_up_to_lc() {
    for n in 2..=6 {
        for g in iso_classes(n) {
            for v in g.vertices() {
                let outs: Vec<Graph> = g
                    .neighborhood(v)
                    .unwrap()
                    .iter()
                    .map(|&k| measure_x(&g, v, Some(k)).unwrap())
                    .collect();
                for w in outs.windows(2) {
                    assert!(
                        are_lc_equivalent(&w[0], &w[1], DEFAULT_MAX_ORBIT).unwrap(),
                        "{}",
                        g.to_json()
                    );
                }
            }
        }
    }
}

/// Every rule, vertex and k0 on one graph of each isomorphism class with six
/// vertices; both the rules and the check commute with relabelling, so this
/// covers all labelled six-vertex cases.
#[test]
fn oracle_agrees_on_all_six_vertex_classes() {
    let classes = iso_classes(6);
    assert_eq!(classes.len(), 156);
    for g in classes {
        for c in gsnet::stabilizer::cases_for(&g) {
            assert!(
                check_measurement_rule(&c.graph, c.basis, c.vertex, c.k0).unwrap(),
                "{c:?}"
            );
        }
    }
}

#[test]
fn oracle_agrees_on_random_ten_vertex_graphs() {
    for t in 0..60 {
        let mut rng = trial_rng(99, t);
        let g = random_graph(&mut rng, 10);
        let v = VertexId((t % 10) as u32);
        for c in gsnet::stabilizer::cases_for(&g).into_iter().filter(|c| c.vertex == v) {
            assert!(
                check_measurement_rule(&c.graph, c.basis, c.vertex, c.k0).unwrap(),
                "{c:?}"
            );
        }
    }
}

#[test]
fn tableaux_stay_valid_after_measurement() {
    for g in iso_classes(5) {
        let t = tableau_from_graph(&g).unwrap();
        for q in 0..g.order() {
            for b in PauliBasis::ALL {
                t.measure_postselect(b, q).unwrap().validate().unwrap();
            }
        }
    }
}

#[test]
fn builder_outputs_classify_as_themselves() {
    for n in 2..=7 {
        assert_eq!(classify_topology(&build_star(n)).shape(), Shape::Star(n));
    }
    for a in 1..=3 {
        for b in 1..=3 {
            assert_eq!(
                classify_topology(&build_bi_star(a, b)).shape(),
                Shape::BiStar(a.min(b), a.max(b))
            );
            for c in 1..=2 {
                if a + b + c + 3 <= 8 {
                    let s = classify_topology(&build_tri_star(a, b, c)).shape();
                    assert_eq!(s, classify_topology(&build_tri_star(c, b, a)).shape());
                    assert!(matches!(s, Shape::TriStar(..)), "{a},{b},{c}: {s:?}");
                }
            }
        }
    }
    for n in 3..=8 {
        assert_eq!(classify_topology(&build_complete(n)).shape(), Shape::Complete(n));
    }
    for a in 2..=4 {
        for b in a..=(8 - a) {
            assert_eq!(
                classify_topology(&build_complete_bipartite(a, b)).shape(),
                Shape::CompleteBipartite(a, b)
            );
        }
    }
    for m in 5..=8 {
        assert_eq!(classify_topology(&build_path(m)).shape(), Shape::Path(m));
    }
}

#[test]
fn builders_are_bicolorable_except_complete() {
    let mut all = vec![
        build_star(4),
        build_bi_star(2, 3),
        build_tri_star(1, 2, 1),
        build_path(6),
        build_complete_bipartite(3, 3),
    ];
    for m in 1..=7 {
        for n in 0..=3 {
            all.push(build_multi_star(&MultiStarSpec::homogeneous(m, n).unwrap()));
        }
    }
    all.push(build_multi_star(&MultiStarSpec::new(vec![2, 3, 1, 4, 0]).unwrap()));
    for g in &all {
        assert!(g.is_bicolorable(), "{}", g.to_json());
    }
    assert!(build_complete(2).is_bicolorable());
    for n in 3..=6 {
        assert!(!build_complete(n).is_bicolorable());
    }
}

#[test]
fn homogeneous_spec_matches_uniform_builder() {
    let a = build_multi_star(&MultiStarSpec::homogeneous(5, 2).unwrap());
    let b = build_multi_star(&MultiStarSpec::new(vec![2; 5]).unwrap());
    assert_eq!(a, b);
    assert_eq!((a.order(), a.size()), (15, 14));
}

#[test]
fn minimal_cell_becomes_a_star() {
    // switches 2i-1, 2i, 2i+1, 2i+2 on a path, n leaves on 2i and 2i+2
    for i in 1..=3u32 {
        for n in 1..=3u32 {
            let sw = |k: u32| VertexId(k);
            let mut g = Graph::new();
            for k in 2 * i - 1..=2 * i + 2 {
                g.add_labeled_vertex(sw(k), Role::Switch(k as usize)).unwrap();
            }
            for k in 2 * i - 1..2 * i + 2 {
                g.add_edge(sw(k), sw(k + 1)).unwrap();
            }
            let mut next = 100;
            for c in [2 * i, 2 * i + 2] {
                for _ in 0..n {
                    g.add_vertex(VertexId(next)).unwrap();
                    g.add_edge(VertexId(next), sw(c)).unwrap();
                    next += 1;
                }
            }
            let r = measure_x(&g, sw(2 * i + 1), Some(sw(2 * i))).unwrap();
            match classify_topology(&r) {
                TopologyClass::Star { center, leaves } => {
                    assert_eq!(center, sw(2 * i + 2));
                    assert_eq!(leaves as u32, 2 * n + 2);
                }
                other => panic!("i={i} n={n}: {other}"),
            }
            assert!(check_measurement_rule(&g, PauliBasis::X, sw(2 * i + 1), Some(sw(2 * i))).unwrap());
        }
    }
}

#[test]
fn traces_stay_bicolorable() {
    for m in [1, 3, 5, 7, 9] {
        for n in 0..=4 {
            let g = build_multi_star(&MultiStarSpec::homogeneous(m, n).unwrap());
            let out = generate_max_connect_with(
                &g,
                MaxConnectOptions {
                    keep_trace: true,
                    ..Default::default()
                },
            )
            .unwrap();
            assert!(out.trace.iter().all(Graph::is_bicolorable), "m={m} n={n}");
        }
    }
}

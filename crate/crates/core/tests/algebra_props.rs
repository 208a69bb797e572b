mod support;

use std::sync::Arc;

use graphalg::corpus;
use graphalg::graph::Graph;
use graphalg::leavitt::{
    basis_monomials_up_to, dimension_acyclic, generator_element, normal_form, normal_form_with,
    parse_element, relations, Element, MonomialPool, RedexOrder, SpecialEdges,
};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use support::oracle::{build, random_acyclic_graph, RawGraph};

fn graph_strategy(max_vertices: usize, max_edges: usize) -> impl Strategy<Value = Arc<Graph>> {
    (1..=max_vertices).prop_flat_map(move |n| {
        prop::collection::vec((0..n, 0..n), 0..=max_edges)
            .prop_map(move |edges| Arc::new(build("G", n, &edges)))
    })
}

fn samples(g: &Arc<Graph>, seed: u64, count: usize) -> Vec<Element> {
    let pool = MonomialPool::new(g, 2);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| pool.random_element(&mut rng, 4))
        .collect()
}

fn nf(x: &Element, sp: &SpecialEdges) -> Element {
    normal_form(x, sp).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rewrite_orders_agree(g in graph_strategy(3, 5), seed in any::<u64>()) {
        let sp = SpecialEdges::least(&g);
        for x in samples(&g, seed, 4) {
            let a = normal_form_with(&x, &sp, RedexOrder::TermByTerm).unwrap();
            prop_assert_eq!(&a, &normal_form_with(&x, &sp, RedexOrder::SmallestFirst).unwrap());
            prop_assert_eq!(&a, &normal_form_with(&x, &sp, RedexOrder::LargestFirst).unwrap());
            prop_assert_eq!(&nf(&a, &sp), &a);
        }
    }

    #[test]
    fn ring_laws(g in graph_strategy(3, 5), seed in any::<u64>()) {
        let sp = SpecialEdges::least(&g);
        let xs = samples(&g, seed, 3);
        let (x, y, z) = (&xs[0], &xs[1], &xs[2]);
        let xy_z = x.mul(y).unwrap().mul(z).unwrap();
        let x_yz = x.mul(&y.mul(z).unwrap()).unwrap();
        prop_assert_eq!(nf(&xy_z, &sp), nf(&x_yz, &sp));
        let left = x.mul(&y.add(z).unwrap()).unwrap();
        let right = x.mul(y).unwrap().add(&x.mul(z).unwrap()).unwrap();
        prop_assert_eq!(nf(&left, &sp), nf(&right, &sp));
        // (xy)* = y*x*
        prop_assert_eq!(
            nf(&x.mul(y).unwrap().adjoint(), &sp),
            nf(&y.adjoint().mul(&x.adjoint()).unwrap(), &sp)
        );
        // multiplication respects normal forms
        prop_assert_eq!(
            nf(&nf(x, &sp).mul(&nf(y, &sp)).unwrap(), &sp),
            nf(&x.mul(y).unwrap(), &sp)
        );
    }

    #[test]
    fn normal_form_keeps_graded_components(g in graph_strategy(3, 5), seed in any::<u64>(), degree in -2i64..=2) {
        let sp = SpecialEdges::least(&g);
        let pool = MonomialPool::new(&g, 2);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = pool.random_homogeneous(&mut rng, degree, 4);
        let reduced = nf(&x, &sp);
        prop_assert!(reduced.degrees().iter().all(|&d| d == degree));
        let mixed = x.add(&pool.random_element(&mut rng, 3)).unwrap();
        let reduced = nf(&mixed, &sp);
        for d in mixed.degrees() {
            prop_assert_eq!(nf(&mixed.graded_component(d), &sp), reduced.graded_component(d));
        }
    }

    #[test]
    fn relations_vanish_under_any_special_choice(g in graph_strategy(3, 5), pick in any::<u64>()) {
        let mut sp = SpecialEdges::least(&g);
        for v in 0..g.vertex_count() {
            let out = g.out_edges(v);
            if !out.is_empty() {
                let e = out[(pick as usize >> v) % out.len()];
                sp = sp.with_choice(g.vertex(v), &g.edge(e).id).unwrap();
            }
        }
        for rel in relations(&g) {
            let value = rel.evaluate(&g, |x| generator_element(&g, x)).unwrap();
            prop_assert!(nf(&value, &sp).is_empty(), "{}", rel.label);
        }
    }

    #[test]
    fn literals_round_trip(g in graph_strategy(3, 5), seed in any::<u64>()) {
        for x in samples(&g, seed, 3) {
            let back = parse_element(&g, &x.to_string()).unwrap();
            prop_assert_eq!(back, x);
        }
    }
}

#[test]
fn acyclic_dimension_matches_path_count() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..30 {
        let g = Arc::new(random_acyclic_graph(&mut rng, 6));
        let expected = RawGraph::of(&g).acyclic_dimension();
        let sp = SpecialEdges::least(&g);
        assert_eq!(basis_monomials_up_to(&sp, g.vertex_count()).len(), expected);
        assert_eq!(dimension_acyclic(&g).unwrap(), expected);
    }
}

#[test]
fn corpus_relations_vanish() {
    for ex in corpus::list() {
        let g = Arc::new(ex.graph.clone());
        let sp = SpecialEdges::least(&g);
        for rel in relations(&g) {
            let value = rel.evaluate(&g, |x| generator_element(&g, x)).unwrap();
            assert!(nf(&value, &sp).is_empty(), "{}: {}", ex.key, rel.label);
        }
    }
}

mod common;

use common::{all_of_order, connected_of_order, g, Graph};
use proptest::prelude::*;
use threshold_spectra::extremal::enumerate_threshold_graphs;
use threshold_spectra::graph_model::{
    parse_composition, parse_graph_spec, BzpSequence, CompositionSpec, FopSequence,
    GeneratingSequence,
};
use threshold_spectra::{Error, ThresholdGraph};

#[test]
fn encodings_round_trip_up_to_ten() {
    for n in 1..=10 {
        for h in all_of_order(n) {
            let text = h.generating().to_string();
            assert_eq!(ThresholdGraph::parse_bits(&text).unwrap(), h);
            assert_eq!(parse_graph_spec(&format!("gen:{text}")).unwrap(), h);

            let comp = h.to_composition();
            let reparsed = parse_composition(&comp.to_string()).unwrap();
            assert_eq!(reparsed, comp);
            assert_eq!(ThresholdGraph::from_composition(&comp).unwrap(), h, "{text}");
            assert_eq!(parse_graph_spec(&format!("comp:{comp}")).unwrap(), h);
            assert_eq!(h.to_string(), comp.to_string());

            if !h.is_connected() {
                assert!(comp.isolated() > 0);
                assert_eq!(h.to_bzp(), Err(Error::Disconnected));
                assert_eq!(h.to_fop(), Err(Error::Disconnected));
                continue;
            }
            let fop = h.to_fop().unwrap();
            assert_eq!(ThresholdGraph::from_fop(fop.parts(), n).unwrap(), h);
            assert_eq!(fop.parts()[0], 0);
            assert_eq!(*fop.parts().last().unwrap(), h.z());
            if h.z() == 0 {
                assert_eq!(h.to_bzp(), Err(Error::NoTypeZero));
                continue;
            }
            let bzp = h.to_bzp().unwrap();
            assert_eq!(ThresholdGraph::from_bzp(bzp.c(), bzp.parts()).unwrap(), h);
            assert_eq!(bzp.to_fop(), fop);
            assert_eq!(bzp.size(), h.m());
            let spec = format!(
                "bzp:{}:{}",
                bzp.c(),
                bzp.parts().iter().map(|b| b.to_string()).collect::<Vec<_>>().join(",")
            );
            assert_eq!(parse_graph_spec(&spec).unwrap(), h);
        }
    }
}

#[test]
fn bzp_fop_duality() {
    // both sums count the (type-0, later type-1) pairs, i.e. the edges
    // between the two classes
    for n in 2..=10 {
        for h in connected_of_order(n) {
            if h.z() == 0 {
                continue;
            }
            let b = h.to_bzp().unwrap();
            let f = h.to_fop().unwrap();
            let pairs_b: usize = b.parts().iter().sum();
            let pairs_f: usize = f.sum();
            assert_eq!(pairs_b, pairs_f);
        }
    }
}

#[test]
fn adjacency_structure_up_to_ten() {
    for n in 1..=10 {
        for h in all_of_order(n) {
            let a = h.adjacency_matrix();
            assert!(a.is_symmetric() && a.has_zero_diagonal());
            assert!(a.is_stepwise(), "{}", h.generating());
            assert_eq!(a.is_connected(), h.is_connected(), "{}", h.generating());
            assert_eq!(a.row_sums().iter().sum::<usize>(), 2 * h.m());
            let graph = Graph::from_threshold(&h);
            assert!(graph.is_threshold());
            assert_eq!(graph.is_connected(), h.is_connected());

            let types = h.vertex_types();
            assert_eq!(types.iter().filter(|&&t| t).count(), h.c());
            if !h.is_connected() {
                continue;
            }
            let d = h.degree_sequence().unwrap();
            assert_eq!(d, a.row_sums());
            assert!(d.windows(2).all(|w| w[0] >= w[1]));
            for i in 1..n {
                if d[i - 1] == d[i] {
                    assert!(types[i - 1] || !types[i]);
                }
            }
            let c = h.c();
            assert_eq!(d[c - 1], c - 1);
            assert!(types[..c].iter().all(|&t| t));
            for (i, &bi) in h.bzp_parts().iter().enumerate() {
                assert_eq!(d[c + i], bi);
            }
        }
    }
}

#[test]
fn partition_census_matches_bitstring_sweep() {
    for n in 1..=10 {
        let all = all_of_order(n);
        for m in 0..=n * (n - 1) / 2 {
            let mut sweep: Vec<ThresholdGraph> = all.iter().filter(|h| h.m() == m).cloned().collect();
            sweep.sort();
            assert_eq!(enumerate_threshold_graphs(n, m, false), sweep, "n={n} m={m}");
            let connected: Vec<ThresholdGraph> =
                sweep.into_iter().filter(|h| h.is_connected()).collect();
            assert_eq!(enumerate_threshold_graphs(n, m, true), connected, "n={n} m={m}");
        }
    }
}

#[test]
fn census_sizes_by_order() {
    for n in 1..=10usize {
        let total: usize = (0..=n * (n - 1) / 2)
            .map(|m| enumerate_threshold_graphs(n, m, true).len())
            .sum();
        assert_eq!(total, if n == 1 { 1 } else { 1 << (n - 2) });
    }
}

#[test]
fn threshold_classes_are_distinct_graphs() {
    for n in 1..=8 {
        let mut codes: Vec<u128> = all_of_order(n)
            .iter()
            .map(|h| Graph::from_threshold(h).canonical())
            .collect();
        let before = codes.len();
        codes.sort_unstable();
        codes.dedup();
        assert_eq!(codes.len(), before, "n={n}");
    }
}

#[test]
fn summary_fields() {
    let s = g("10101").summary();
    assert_eq!((s.n, s.m, s.c, s.z), (5, 6, 3, 2));
    assert_eq!(s.generating, "10101");
    assert_eq!(s.composition, "G{2,1,1,1}");
    assert_eq!(s.bzp, Some(vec![2, 1]));
    assert_eq!(s.fop, Some(vec![0, 1, 2]));
    assert_eq!(s.degrees, Some(vec![4, 3, 2, 2, 1]));
    let s = g("1100").summary();
    assert!(!s.connected);
    assert_eq!(s.composition, "G{2}+2K1");
    assert_eq!((s.bzp, s.fop, s.degrees), (None, None, None));
}

#[test]
fn grammar_errors_carry_positions() {
    let pos = |s: &str| match parse_graph_spec(s) {
        Err(Error::Parse(p)) => p.position,
        other => panic!("{s}: {other:?}"),
    };
    assert_eq!(pos(""), 0);
    assert_eq!(pos("gen:"), 4);
    assert_eq!(pos("gen:1021"), 6);
    assert_eq!(pos("comp:G{}"), 7);
    assert_eq!(pos("comp:G{3,1"), 10);
    assert_eq!(pos("comp:G{3}+1K2"), 12);
    assert_eq!(pos("comp:G{0}"), 7);
    assert_eq!(pos("bzp::1"), 4);
    assert_eq!(pos("bzp:4"), 5);
    assert_eq!(pos("bzp:4:1,"), 8);
    assert!(matches!(parse_graph_spec("bzp:3:1,2"), Err(Error::InvalidBzp(_))));
    assert!(matches!(parse_graph_spec("bzp:0:"), Err(Error::InvalidBzp(_))));
    assert!(matches!(parse_graph_spec("bzp:3:0"), Err(Error::InvalidBzp(_))));
}

#[test]
fn constructor_errors() {
    assert_eq!(GeneratingSequence::new(vec![]), Err(Error::EmptySequence));
    assert!(matches!(
        CompositionSpec::new(vec![2, 0, 1]),
        Err(Error::NonPositiveBlock { index: 1 })
    ));
    assert!(matches!(BzpSequence::new(3, vec![1, 2]), Err(Error::InvalidBzp(_))));
    assert!(matches!(FopSequence::new(vec![1, 2], 4), Err(Error::InvalidFop(_))));
    assert!(matches!(FopSequence::new(vec![0, 2, 1], 5), Err(Error::InvalidFop(_))));
    assert!(matches!(FopSequence::new(vec![0, 1], 4), Err(Error::InvalidFop(_))));
    assert!(matches!(
        ThresholdGraph::from_composition(&CompositionSpec::new(vec![5000]).unwrap()),
        Err(Error::TooLarge { .. })
    ));
}

fn bitstring() -> impl Strategy<Value = Vec<bool>> {
    prop::collection::vec(any::<bool>(), 1..40)
}

proptest! {
    #[test]
    fn canonical_form_ignores_first_bit(mut bits in bitstring()) {
        let a = ThresholdGraph::from_generating_sequence(&bits).unwrap();
        bits[0] = !bits[0];
        let b = ThresholdGraph::from_generating_sequence(&bits).unwrap();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn composition_round_trip(blocks in prop::collection::vec(1usize..6, 1..8), isolated in 0usize..3) {
        let spec = CompositionSpec::with_isolated(blocks, isolated).unwrap();
        let text = spec.to_string();
        prop_assert_eq!(parse_composition(&text).unwrap(), spec.clone());
        let h = ThresholdGraph::from_composition(&spec).unwrap();
        prop_assert_eq!(h.n(), spec.order());
        prop_assert_eq!(h.is_connected(), isolated == 0);
        let again = ThresholdGraph::from_composition(&h.to_composition()).unwrap();
        prop_assert_eq!(again, h);
    }

    #[test]
    fn size_formula(bits in bitstring()) {
        let h = ThresholdGraph::from_generating_sequence(&bits).unwrap();
        let edges = h.adjacency_matrix().row_sums().iter().sum::<usize>() / 2;
        prop_assert_eq!(edges, h.m());
        if h.is_connected() {
            let c = h.c();
            prop_assert_eq!(h.m(), c * (c - 1) / 2 + h.bzp_parts().iter().sum::<usize>());
        }
    }

    #[test]
    fn parser_never_panics(text in "\\PC{0,24}") {
        let _ = parse_graph_spec(&text);
        let _ = parse_composition(&text);
        let _ = GeneratingSequence::parse(&text);
    }
}

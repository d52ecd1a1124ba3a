mod common;

use common::{comp, connected_graphs, Graph};
use threshold_spectra::extremal::*;
use threshold_spectra::spectral::spectral_radius;
use threshold_spectra::Error;

fn names(gs: &[threshold_spectra::ThresholdGraph]) -> Vec<String> {
    gs.iter().map(|g| g.to_string()).collect()
}

#[test]
fn small_table_rows() {
    for n in 5..=9usize {
        let expect = [
            (n - 1, format!("G{{{},1}}", n - 1)),
            (n, format!("G{{2,{},1}}", n - 3)),
            (n + 1, format!("G{{2,1,{},1}}", n - 4)),
            (n + 2, format!("G{{3,{},1}}", n - 4)),
        ];
        for (m, name) in expect {
            let result = find_extremal(n, m).unwrap();
            assert_eq!(names(&result.maximizers), vec![name.clone()], "n={n} m={m}");
            let predicted = table_one_prediction(n, m);
            assert!(predicted[0].row.is_asserted());
            assert_eq!(names(&predicted[0].candidates), vec![name]);
        }
    }
}

#[test]
fn clique_plus_pendant_cell() {
    let result = find_extremal(10, 15).unwrap();
    let allowed = [comp("G{4,5,1}"), comp("G{6,1,2,1}")];
    assert!(!result.maximizers.is_empty());
    assert!(result.maximizers.iter().all(|g| allowed.contains(g)));
    let rows: Vec<TableRow> = table_one_prediction(10, 15).iter().map(|p| p.row).collect();
    assert!(rows.contains(&TableRow::CliquePlusPendant { k: 4 }));
}

#[test]
fn conjecture_candidates() {
    let pair = ConjecturePair::new(10, 3, 1);
    let names: Vec<String> = pair.candidates().iter().map(|g| g.to_string()).collect();
    assert!(names.iter().all(|s| s.starts_with("G{")));
    for g in pair.candidates() {
        assert_eq!((g.n(), g.m()), (10, 13));
    }
    let p = table_one_prediction(10, 13);
    assert!(p.iter().any(|p| p.row == TableRow::Conjecture { k: 3, t: 1 }));
}

#[test]
fn census_bookkeeping() {
    let r = find_extremal(7, 9).unwrap();
    assert_eq!(names(&r.maximizers), vec!["G{3,3,1}"]);
    assert_eq!(r.census.len(), r.census_size);
    assert_eq!(r.census_size, enumerate_threshold_graphs(7, 9, true).len());
    for entry in &r.census {
        assert!(entry.rho <= r.rho_max + TIE_TOL);
        assert!((spectral_radius(&entry.graph, 1e-12).unwrap() - entry.rho).abs() < 1e-9);
    }
    assert!(r.is_maximizer(&comp("G{3,3,1}")));
    assert_eq!(find_extremal(7, 5), Err(Error::Infeasible { n: 7, m: 5 }));
    assert_eq!(find_extremal(4, 7), Err(Error::Infeasible { n: 4, m: 7 }));
}

#[test]
fn deterministic_results() {
    let a = find_extremal(12, 30).unwrap();
    let b = find_extremal(12, 30).unwrap();
    assert_eq!(a, b);
}

#[test]
fn verify_through_order_twelve() {
    let report = verify_table(4..=12).unwrap();
    assert_eq!(report.mismatches, 0);
    assert!(report.cells.iter().any(|c| matches!(c.row, TableRow::AlmostClique { .. })));
    assert!(matches!(verify_table(25..=25), Err(Error::TooLarge { .. })));
}

#[test]
fn partitions() {
    assert_eq!(bounded_partitions(4, 2, 3), vec![vec![3, 1], vec![2, 2]]);
    assert_eq!(bounded_partitions(0, 0, 3), vec![Vec::<usize>::new()]);
    for total in 0..12 {
        for parts in 0..6 {
            for max in 1..5 {
                for p in bounded_partitions(total, parts, max) {
                    assert_eq!(p.len(), parts);
                    assert_eq!(p.iter().sum::<usize>(), total);
                    assert!(p.iter().all(|&x| (1..=max).contains(&x)));
                    assert!(p.windows(2).all(|w| w[0] >= w[1]));
                }
            }
        }
    }
}

#[test]
fn graph_class_counts() {
    let counts: Vec<usize> = (1..=7).map(|n| connected_graphs(n).len()).collect();
    assert_eq!(counts, vec![1, 1, 2, 6, 21, 112, 853]);
}

#[test]
fn all_graph_maximizers_are_threshold() {
    for n in 2..=7usize {
        let graphs = connected_graphs(n);
        for m in n - 1..=n * (n - 1) / 2 {
            let ranked: Vec<(f64, &Graph)> = graphs
                .iter()
                .filter(|g| g.size() == m)
                .map(|g| (g.spectral_radius(), g))
                .collect();
            let best = ranked.iter().map(|r| r.0).fold(f64::NEG_INFINITY, f64::max);
            for (rho, g) in &ranked {
                if best - rho <= TIE_TOL {
                    assert!(g.is_threshold(), "n={n} m={m}");
                }
            }
            let result = find_extremal(n, m).unwrap();
            assert!((result.rho_max - best).abs() <= 1e-9, "n={n} m={m}");
        }
    }
}

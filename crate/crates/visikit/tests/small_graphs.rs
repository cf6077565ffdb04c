//! Exhaustive small-graph studies that back up design choices in the exact
//! oracles.
//!
//! The headline question: is the equal-membership kind (`mud`) hereditary,
//! i.e. does deleting a vertex from a verified set always leave a verified
//! set? For the other four kinds the answer is yes (deleting a member only
//! shrinks both the pair scope and the blocker set), and the branch-and-bound
//! oracle leans on that. For `mud` the scope *grows*: pairs between the
//! deleted vertex and the outside become newly constrained. The search below
//! settles it with a concrete counterexample, which is why the `mud` oracle
//! enumerates subsets by descending size instead of pruning on prefixes.

use visikit::generate::connected_graphs;
use visikit::visibility::verify_set;
use visikit::{Graph, SetKind, Sigma, VertexSet};

fn subsets(n: usize) -> impl Iterator<Item = VertexSet> {
    (0u32..1 << n).map(move |mask| {
        VertexSet::new((0..n).filter(|&v| mask >> v & 1 == 1).collect())
    })
}

fn verified(g: &Graph, x: &VertexSet, kind: SetKind) -> bool {
    verify_set(g, x, kind, Sigma::ONE).unwrap().ok()
}

fn drop_one(x: &VertexSet, w: usize) -> VertexSet {
    VertexSet::new(x.iter().copied().filter(|&v| v != w).collect())
}

#[test]
fn mud_is_not_hereditary() {
    let mut found: Option<(Graph, VertexSet, usize)> = None;
    'search: for n in 2..=5 {
        for g in connected_graphs(n).unwrap() {
            for x in subsets(n) {
                if !verified(&g, &x, SetKind::MuD) {
                    continue;
                }
                for &w in x.iter() {
                    if !verified(&g, &drop_one(&x, w), SetKind::MuD) {
                        found = Some((g, x, w));
                        break 'search;
                    }
                }
            }
        }
    }

    let (g, x, w) = found.expect("exhaustive search found no counterexample");
    println!(
        "mud heredity fails: n={} edges={:?} set={:?} minus {} is no longer valid",
        g.n(),
        g.edges().collect::<Vec<_>>(),
        x.as_slice(),
        w
    );
    // Pin the witness down so the doc comment stays honest.
    assert!(verified(&g, &x, SetKind::MuD));
    assert!(!verified(&g, &drop_one(&x, w), SetKind::MuD));
    // The earliest counterexample lives on 3 vertices: a path with the set
    // {center, leaf}. Removing the leaf leaves the lone center, which puts
    // the leaf-to-leaf pair newly in scope with its only midpoint blocked.
    assert_eq!(g.n(), 3);
}

#[test]
fn the_other_four_kinds_are_hereditary_on_small_graphs() {
    for n in 2..=4 {
        for g in connected_graphs(n).unwrap() {
            for x in subsets(n) {
                for kind in [SetKind::Mu, SetKind::MuO, SetKind::MuT, SetKind::Gp] {
                    if !verified(&g, &x, kind) {
                        continue;
                    }
                    for &w in x.iter() {
                        assert!(
                            verified(&g, &drop_one(&x, w), kind),
                            "{kind} set {:?} minus {w} failed on {:?}",
                            x.as_slice(),
                            g.edges().collect::<Vec<_>>()
                        );
                    }
                }
            }
        }
    }
}

#[test]
fn empty_sets_always_verify_and_singletons_mostly_do() {
    for n in 1..=5 {
        for g in connected_graphs(n).unwrap() {
            // The empty set blocks nothing, so every kind accepts it; the
            // descending-size oracle relies on that as its floor.
            for kind in [SetKind::Mu, SetKind::MuD, SetKind::MuO, SetKind::MuT, SetKind::Gp] {
                assert!(verified(&g, &VertexSet::empty(), kind));
            }
            // A singleton puts no pair fully inside the set and never blocks
            // a pair it belongs to.
            for kind in [SetKind::Mu, SetKind::MuO, SetKind::Gp] {
                assert!(verified(&g, &VertexSet::new(vec![0]), kind));
            }
        }
    }

    // For the kinds that constrain outside pairs, a singleton can fail: the
    // center of a star blocks every leaf-to-leaf pair.
    let star = Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
    let center = VertexSet::new(vec![0]);
    assert!(!verified(&star, &center, SetKind::MuD));
    assert!(!verified(&star, &center, SetKind::MuT));
    assert!(verified(&star, &VertexSet::new(vec![1]), SetKind::MuD));
}

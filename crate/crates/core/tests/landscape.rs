use lapsoft::canon::canonical_form;
use lapsoft::catalog::CatalogSet;
use lapsoft::graph::{chain, cycle};
use lapsoft::landscape::{reachability, Landscape};

fn minimal_names(l: &Landscape) -> Vec<String> {
    let mut v: Vec<String> = l.minimal().iter().map(|e| e.name()).collect();
    v.sort();
    v
}

#[test]
fn minimal_members_up_to_six_vertices() {
    let cat = CatalogSet::bundled().unwrap();
    let want: [&[&str]; 5] = [&["5.3"], &["5.7"], &["5.2", "5.22", "6.106"], &["5.5", "6.73", "6.93"], &["5.13", "5.15", "6.70"]];
    for (lambda, w) in (1..=5).zip(want) {
        let l = Landscape::compute(lambda, 6, &cat).unwrap();
        assert_eq!(minimal_names(&l), w, "lambda {lambda}");
    }
}

#[test]
fn hexagon_is_minimal_at_three() {
    // Neither the 3-chain nor the 6-chain is 3-soft, so no proper subgraph of C6 is.
    let cat = CatalogSet::bundled().unwrap();
    let l = Landscape::compute(3, 6, &cat).unwrap();
    let c6 = canonical_form(&cycle(6)).unwrap();
    assert!(l.family.iter().any(|e| e.class == c6 && e.is_minimal));
    assert!(!l.family.iter().any(|e| e.class == canonical_form(&chain(6)).unwrap()));
}

#[test]
fn one_soft_family_is_reachable_from_the_three_chain() {
    let cat = CatalogSet::bundled().unwrap();
    let l = Landscape::compute(1, 6, &cat).unwrap();
    assert_eq!(l.family.len(), 34);
    let dist = reachability(canonical_form(&chain(3)).unwrap(), &l.edges);
    assert!(l.family.iter().all(|e| dist.contains_key(&e.class)));
    assert_eq!(dist.values().max(), Some(&6));
}

#[test]
fn square_is_a_non_soft_generator_at_four() {
    let cat = CatalogSet::bundled().unwrap();
    let l = Landscape::compute(4, 5, &cat).unwrap();
    let c4 = canonical_form(&cycle(4)).unwrap();
    assert!(l.generators.iter().any(|e| e.class == c4));
    assert!(!l.family.iter().any(|e| e.class == c4));
    assert!(l.to_dot().starts_with("digraph") || l.to_dot().starts_with("graph"));
}

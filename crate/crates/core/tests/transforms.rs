use lapsoft::canon::canonical_form;
use lapsoft::catalog::CatalogSet;
use lapsoft::graph::{chain, clique, cycle, Graph};
use lapsoft::quad::QuadNum;
use lapsoft::spectrum::{analyze_spectrum, exact_eigenspace};
use lapsoft::transform::*;

fn first_pair(g: &Graph, lambda: i64) -> ExactPair {
    let q = QuadNum::from_int(lambda);
    let b = exact_eigenspace(g, &q).unwrap();
    ExactPair::new(q, b[0].clone())
}

#[test]
fn complement_maps_catalog_pair() {
    let cat = CatalogSet::bundled().unwrap();
    let g = cat.lookup("6.35").unwrap().graph();
    let r = complement_eigenpair(&g, &first_pair(&g, 3)).unwrap();
    assert!(r.verified);
    assert_eq!(r.output_pair.value, QuadNum::from_int(3));
    assert_eq!(canonical_form(&r.output).unwrap(), canonical_form(&cat.lookup("6.101").unwrap().graph()).unwrap());
}

#[test]
fn product_of_chains_sums_eigenvalues() {
    let p3 = chain(3);
    let prod = Graph::cartesian_product(&p3, &p3).unwrap();
    let ints: Vec<i64> = analyze_spectrum(&prod)
        .unwrap()
        .integer_roots
        .iter()
        .map(|r| i64::try_from(r).unwrap())
        .collect();
    assert_eq!(ints, [0, 1, 1, 2, 3, 3, 4, 4, 6]);
    let r = product_eigenpair(&p3, &ExactPair::integer(1, &[1, 0, -1]), &p3, &ExactPair::integer(3, &[1, -2, 1])).unwrap();
    assert!(r.verified);
    assert_eq!(r.output_pair.value, QuadNum::from_int(4));
}

#[test]
fn global_soft_node_on_an_edge() {
    let r = add_global_soft_node(&clique(2), &ExactPair::integer(2, &[1, -1])).unwrap();
    assert!(r.verified);
    assert_eq!(r.output, clique(3));
    assert_eq!(r.output_pair.value, QuadNum::from_int(3));
}

#[test]
fn script_chain_keeps_every_step_verified() {
    let ops = parse_script("# two pendants on the soft centre, then join them\nART 2\nART 2\nLINK 4 5\nADDSOFT\n").unwrap();
    let recs = run_script(&chain(3), &ExactPair::integer(1, &[1, 0, -1]), &ops).unwrap();
    assert_eq!(recs.len(), 4);
    assert!(recs.iter().all(|r| r.verified));
    assert_eq!(recs[3].output.n(), 6);
    assert_eq!(recs[3].output_pair.value, QuadNum::from_int(2));
}

#[test]
fn matching_toggle_shifts_by_two() {
    let p = ExactPair::integer(4, &[1, -1, 1, -1]);
    let c4 = cycle(4);
    let r = matching_toggle(&c4, &p, &[(1, 4), (2, 3)], false).unwrap();
    assert!(r.verified);
    assert_eq!(r.output_pair.value, QuadNum::from_int(2));
    assert!(matching_toggle(&c4, &p, &[(1, 2), (3, 4)], true).is_err());
}

#[test]
fn preconditions_are_enforced() {
    let p = ExactPair::integer(1, &[1, 0, -1]);
    assert!(articulation(&chain(3), &p, 1, None).is_err());
    assert!(link_toggle(&chain(3), &p, 1, 3).is_err());
    assert!(square_gadget(&chain(3), &p, 1, 2, &lapsoft::quad::rat(1, 2)).is_err());
}

#[test]
fn every_single_step_on_a_soft_graph_is_verified() {
    let cat = CatalogSet::bundled().unwrap();
    let g = cat.lookup("5.16").unwrap().graph();
    let recs = single_steps(&g, &first_pair(&g, 3), &StepBounds::default()).unwrap();
    assert!(!recs.is_empty());
    assert!(recs.iter().all(|r| r.verified), "{:?}", recs.iter().find(|r| !r.verified).map(|r| r.kind));
}

use lapsoft::canon::CanonicalForm;
use lapsoft::graph::{star, Graph};
use lapsoft::subgraph::{classify_case, dichotomy_check, scan_embeddings, split_embedding, Case};
use lapsoft::transform::{certify, ExactPair};
use num_bigint::BigInt;

fn host(s: &str) -> Graph {
    let (n, bits) = s.split_once(':').unwrap();
    CanonicalForm { n: n.parse().unwrap(), bits: u32::from_str_radix(bits, 2).unwrap() }.to_graph()
}

#[test]
fn structural_identities_hold_on_every_small_split() {
    let r = scan_embeddings(5).unwrap();
    assert!(r.splits > 500);
    assert!(r.reconstruction_failures.is_empty());
    assert!(r.abc_failures.is_empty());
    assert!(r.delta_failures.is_empty());
    assert!(r.zero_delta_failures.is_empty());
    assert!(r.dichotomy_proven_violations.is_empty());
    assert_eq!(r.case_counts[&Case::ZeroEigenvalue], r.splits);
}

#[test]
fn link_case_can_change_boundary_size() {
    // A path attached by two edges to the centre of another path.
    let g = host("6:000000001111110");
    let d = classify_case(&g, &[3, 4, 5], &BigInt::from(3)).unwrap();
    let link: Vec<_> = d.cases.iter().filter(|c| c.case == Case::Link).collect();
    assert!(!link.is_empty());
    assert!(link.iter().any(|c| c.link_structure == Some(false)));
    assert_ne!(d.split.p, d.split.p_prime);
}

#[test]
fn case_four_with_a_host_eigenvector() {
    let g = host("6:000001110111010");
    let d = classify_case(&g, &[1, 5, 6], &BigInt::from(3)).unwrap();
    let c = d.cases.iter().find(|c| c.case == Case::NoSolution).expect("case iv");
    assert!(c.counterexample());
    assert!(c.extends_nonzero());
    assert!(certify(&g, &ExactPair::integer(3, &[-2, -2, -2, 4, 1, 1])));
}

#[test]
fn rank_deficient_interior_breaks_the_dichotomy() {
    let rep = dichotomy_check(&star(4), &[1, 2, 3], &BigInt::from(1)).unwrap();
    assert!(rep.stated_scope());
    assert!(!rep.proof_applies());
    assert!(rep.violations() > 0);
}

#[test]
fn schur_complement_is_a_generalized_laplacian() {
    let g = host("6:000001110111010");
    for sub in [vec![1], vec![1, 5], vec![1, 5, 6]] {
        let Ok(s) = split_embedding(&g, &sub) else { continue };
        assert!(s.delta_is_laplacian());
        assert_eq!(s.reconstruct(), s.host_laplacian_ordered());
    }
}

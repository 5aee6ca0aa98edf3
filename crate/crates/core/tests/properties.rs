use lapsoft::canon::canonical_form;
use lapsoft::graph::Graph;
use lapsoft::jacobi::numeric_spectrum;
use lapsoft::quad::QuadNum;
use lapsoft::spectrum::{analyze_spectrum, exact_eigenspace, is_exact_eigenvector};
use proptest::prelude::*;

fn graph_strategy() -> impl Strategy<Value = Graph> {
    (2usize..=7).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |bits| {
            let mut e = Vec::new();
            let mut k = 0;
            for j in 2..=n {
                for i in 1..j {
                    if bits[k] {
                        e.push((i, j));
                    }
                    k += 1;
                }
            }
            Graph::unit(n, &e).unwrap()
        })
    })
}

fn exact_approx(g: &Graph) -> Vec<f64> {
    let mut v = Vec::new();
    for e in analyze_spectrum(g).unwrap().eigenvalues {
        v.extend(std::iter::repeat_n(e.approx(), e.multiplicity));
    }
    v
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn exact_spectrum_matches_jacobi(g in graph_strategy()) {
        let exact = exact_approx(&g);
        let numeric: Vec<f64> = numeric_spectrum(&g.laplacian()).unwrap().iter().map(|p| p.value).collect();
        prop_assert_eq!(exact.len(), numeric.len());
        for (a, b) in exact.iter().zip(&numeric) {
            prop_assert!((a - b).abs() < 1e-8, "{} vs {}", a, b);
        }
    }

    #[test]
    fn canonical_form_ignores_labels(g in graph_strategy(), seed in any::<u64>()) {
        let n = g.n();
        let mut perm: Vec<usize> = (1..=n).collect();
        let mut s = seed;
        for i in (1..n).rev() {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            perm.swap(i, (s >> 33) as usize % (i + 1));
        }
        let edges: Vec<(usize, usize)> = g.edge_list().iter().map(|&(i, j)| (perm[i - 1], perm[j - 1])).collect();
        let h = Graph::unit(n, &edges).unwrap();
        prop_assert_eq!(canonical_form(&g).unwrap(), canonical_form(&h).unwrap());
    }

    #[test]
    fn complement_reflects_the_nontrivial_spectrum(g in graph_strategy()) {
        let n = g.n() as f64;
        let mut mapped: Vec<f64> = exact_approx(&g)[1..].iter().map(|x| n - x).collect();
        mapped.sort_by(f64::total_cmp);
        let comp = exact_approx(&g.complement().unwrap());
        for (a, b) in mapped.iter().zip(&comp[1..]) {
            prop_assert!((a - b).abs() < 1e-8);
        }
    }

    #[test]
    fn integer_eigenspaces_are_exact(g in graph_strategy()) {
        for r in analyze_spectrum(&g).unwrap().integer_roots {
            let q = QuadNum::from_int(i64::try_from(&r).unwrap());
            for v in exact_eigenspace(&g, &q).unwrap() {
                prop_assert!(is_exact_eigenvector(&g, &q, &v));
            }
        }
    }
}

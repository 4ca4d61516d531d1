use cosetcx::buildings::{
    building_flag_complex, enumerate_subspaces, gallery_distance, gaussian_binomial, ChamberSystem, Subspace, WeylElement,
};
use cosetcx::homology::{reduced_homology, Coefficients};
use cosetcx::simplicial::Simplex;

#[test]
fn subspace_counts_match_gaussian_binomials() {
    for (n, p) in [(3, 2), (4, 2), (3, 3), (2, 5)] {
        for k in 1..n {
            let subs = enumerate_subspaces(n, p, k).unwrap();
            // closed form: prod (p^(n-i) - 1) / (p^(i+1) - 1)
            let num: usize = (0..k).map(|i| p.pow((n - i) as u32) - 1).product();
            let den: usize = (0..k).map(|i| p.pow((i + 1) as u32) - 1).product();
            assert_eq!(subs.len(), num / den);
            assert_eq!(gaussian_binomial(n, k, p), num / den);
        }
    }
}

#[test]
fn spans_and_intersections() {
    let a = Subspace::span(3, 2, &[vec![1, 0, 0], vec![0, 1, 0]]);
    let b = Subspace::span(3, 2, &[vec![0, 1, 0], vec![0, 0, 1]]);
    assert_eq!(a.dim(), 2);
    assert_eq!(a.intersection_dim(&b), 1);
    let line = Subspace::span(3, 2, &[vec![0, 1, 0]]);
    assert!(line.is_subspace_of(&a) && line.is_subspace_of(&b));
}

#[test]
fn rank_one_buildings_are_discrete() {
    for p in [2, 3, 5] {
        let b = building_flag_complex(2, p, 1_000_000).unwrap();
        assert_eq!(b.complex.f_vector(), vec![p + 1]);
    }
}

#[test]
fn building_a2_f3() {
    let b = building_flag_complex(3, 3, 1_000_000).unwrap();
    assert_eq!(b.complex.f_vector(), vec![26, 52]);
    assert_eq!(reduced_homology(&b.complex, Coefficients::Integers).betti(1), 52 - 26 + 1);
    let c = b.chamber_index(&b.standard_flag()).unwrap();
    let d = b.chamber_index(&b.reversed_flag()).unwrap();
    assert_eq!(b.weyl_distance(c, d).unwrap(), WeylElement::longest(3));
    assert_eq!(gallery_distance(&b.complex, c, d).unwrap(), 3);
    assert!(b.verify_weyl_transitivity(&b.action).unwrap().is_verified());
}

#[test]
fn generic_opposition_agrees_with_complements() {
    let b = building_flag_complex(4, 2, 1_000_000).unwrap();
    let x = &b.complex;
    let chambers = ChamberSystem::new(x).unwrap();
    assert_eq!(chambers.diameter, 6);
    let std = b.standard_flag();
    let rev = b.reversed_flag();
    assert!(chambers.opposite_simplices(&std, &rev).unwrap());
    assert!(b.opposite_simplices(&std, &rev).unwrap());
    let v = Simplex::new(vec![std[0]]);
    assert!(!b.opposite_simplices(&v, &Simplex::new(vec![rev[1]])).unwrap());
    assert!(b.opposite_simplices(&v, &Simplex::new(vec![rev[2]])).unwrap());
}

#[test]
fn weyl_lengths() {
    assert_eq!(WeylElement::longest(4).length(), 6);
    assert_eq!(WeylElement::identity(4).length(), 0);
    assert_eq!(WeylElement(vec![1, 0, 2]).length(), 1);
}

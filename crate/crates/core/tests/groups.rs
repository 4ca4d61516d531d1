use std::sync::Arc;

use cosetcx::catalog::alt5_family;
use cosetcx::permgroup::{
    generate_group, gl_order, intersect, left_cosets, matrix_group_as_permutations, matrix_of, matrix_to_permutation,
    normalizer, parse_generators, stabilizer, FiniteGroup, Permutation, Subgroup,
};
use cosetcx::Error;

fn gl_order_oracle(n: u32, p: u64) -> u64 {
    (0..n).map(|i| p.pow(n) - p.pow(i)).product()
}

#[test]
fn general_linear_orders() {
    for (n, p) in [(2, 2), (2, 3), (3, 2), (2, 5), (3, 3), (4, 2)] {
        let g = matrix_group_as_permutations(n, p, 1_000_000).unwrap();
        assert_eq!(g.order() as u64, gl_order_oracle(n as u32, p as u64), "GL({n},{p})");
        assert_eq!(gl_order(n as u32, p as u64), Some(g.order() as u64));
        assert_eq!(g.degree(), p.pow(n as u32) - 1);
    }
}

#[test]
fn matrices_round_trip() {
    let p = 3;
    let g = matrix_group_as_permutations(2, p, 1_000_000).unwrap();
    let labels = g.labels().unwrap().to_vec();
    for e in 0..g.order() {
        let m = matrix_of(&g, e, p).unwrap();
        assert_eq!(&matrix_to_permutation(&m, &labels, p).unwrap(), g.element(e));
    }
}

#[test]
fn alt5_family_orders() {
    let fam = alt5_family().unwrap();
    let orders: Vec<usize> = fam.members().iter().map(Subgroup::order).collect();
    assert_eq!(orders, vec![12, 10, 6]);
    let m = fam.members();
    // 80 edges = sum of 60 / |Hi ∩ Hj|, 60 triangles = 60 / |H1 ∩ H2 ∩ H3|
    let pairs: Vec<usize> =
        [(0, 1), (0, 2), (1, 2)].iter().map(|&(i, j)| intersect(&[m[i].clone(), m[j].clone()]).unwrap().order()).collect();
    assert_eq!(pairs, vec![2, 3, 2]);
    assert_eq!(pairs.iter().map(|k| 60 / k).sum::<usize>(), 80);
    assert_eq!(intersect(m).unwrap().order(), 1);
}

#[test]
fn stabilizers_normalizers_and_cosets() {
    let g = Arc::new(FiniteGroup::symmetric(4).unwrap());
    let h = stabilizer(&g, 0).unwrap();
    assert_eq!(h.order(), 6);
    assert_eq!(normalizer(&g, &h).unwrap(), h);
    let cosets = left_cosets(&g, &h).unwrap();
    assert_eq!(cosets.len(), 4);
    let v4 = parse_generators("(0 1)(2 3)\n(0 2)(1 3)", Some(4)).unwrap();
    let idx: Vec<usize> = v4.iter().map(|p| g.index_of(p).unwrap()).collect();
    let k = Subgroup::generated(&g, &idx);
    assert_eq!(k.order(), 4);
    assert_eq!(normalizer(&g, &k).unwrap().order(), 24);
    assert_eq!(Subgroup::whole(&g).derived_subgroup().order(), 12);
}

#[test]
fn cap_is_enforced() {
    let gens = vec![
        Permutation::from_cycles(10, &[vec![0, 1]]).unwrap(),
        Permutation::from_cycles(10, &[(0..10).collect()]).unwrap(),
    ];
    assert!(matches!(generate_group(10, &gens, 1000), Err(Error::CapExceeded { .. })));
}

#[test]
fn inversions_count() {
    let w0 = Permutation::from_images(vec![3, 2, 1, 0]).unwrap();
    assert_eq!(w0.inversions(), 6);
    assert_eq!(Permutation::identity(4).inversions(), 0);
}

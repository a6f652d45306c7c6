use kronwit_core::symgroup::{enumerate_group, enumerate_partitions, enumerate_tableaux, irrep_dimension};
use kronwit_core::{factorial, Error, Limits, Partition, Permutation, SymmetricGroup};
use proptest::prelude::*;

// Weakly decreasing compositions of n, generated by recursion on the largest
// allowed part; sorted afterwards so the order comes from sorting, not from
// the recursion.
fn brute_partitions(n: usize) -> Vec<Vec<usize>> {
    fn go(rest: usize, max: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest == 0 {
            out.push(prefix.clone());
            return;
        }
        for part in 1..=rest.min(max) {
            prefix.push(part);
            go(rest - part, part, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out.sort_by(|a, b| b.cmp(a));
    out
}

// Every bijective filling of the shape, kept when rows and columns increase.
fn brute_tableaux(shape: &[usize]) -> Vec<Vec<Vec<usize>>> {
    let n: usize = shape.iter().sum();
    let mut out = Vec::new();
    let mut perm: Vec<usize> = (1..=n).collect();
    loop {
        let mut rows = Vec::new();
        let mut k = 0;
        for &len in shape {
            rows.push(perm[k..k + len].to_vec());
            k += len;
        }
        let rows_ok = rows.iter().all(|r| r.windows(2).all(|w| w[0] < w[1]));
        let cols_ok = (1..rows.len()).all(|r| (0..rows[r].len()).all(|c| rows[r - 1][c] < rows[r][c]));
        if rows_ok && cols_ok {
            out.push(rows);
        }
        if !next_permutation(&mut perm) {
            break;
        }
    }
    out
}

fn next_permutation(v: &mut [usize]) -> bool {
    let Some(i) = (1..v.len()).rev().find(|&i| v[i - 1] < v[i]) else { return false };
    let j = (i..v.len()).rev().find(|&j| v[j] > v[i - 1]).unwrap();
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

fn compose_adjacent(n: usize, word: &[usize]) -> Vec<usize> {
    // product s_{i1} s_{i2} ... acting on the right: x -> s_{i1}(s_{i2}(...(x)))
    (1..=n)
        .map(|x| {
            word.iter().rev().fold(x, |y, &i| {
                if y == i {
                    i + 1
                } else if y == i + 1 {
                    i
                } else {
                    y
                }
            })
        })
        .collect()
}

fn cycle_type_oracle(images: &[usize]) -> Vec<usize> {
    let n = images.len();
    let mut seen = vec![false; n];
    let mut lens = Vec::new();
    for s in 0..n {
        if !seen[s] {
            let (mut x, mut len) = (s, 0);
            while !seen[x] {
                seen[x] = true;
                x = images[x] - 1;
                len += 1;
            }
            lens.push(len);
        }
    }
    lens.sort_unstable_by(|a, b| b.cmp(a));
    lens
}

#[test]
fn partitions_match_brute_force() {
    for n in 1..=8 {
        let got: Vec<Vec<usize>> = enumerate_partitions(n).unwrap().iter().map(|p| p.parts().to_vec()).collect();
        assert_eq!(got, brute_partitions(n), "n = {n}");
    }
    assert_eq!(enumerate_partitions(4).unwrap().len(), 5);
    assert_eq!(enumerate_partitions(6).unwrap().len(), 11);
    assert!(matches!(enumerate_partitions(0), Err(Error::InvalidArgument(_))));
}

#[test]
fn tableaux_match_exhaustive_fillings() {
    for n in 1..=6 {
        for lambda in enumerate_partitions(n).unwrap() {
            let got: Vec<Vec<Vec<usize>>> = enumerate_tableaux(&lambda).iter().map(|t| t.rows().to_vec()).collect();
            let mut expected = brute_tableaux(lambda.parts());
            expected.sort_by_key(|rows| rows.concat());
            assert_eq!(got, expected, "shape {lambda}");
            assert_eq!(irrep_dimension(&lambda), expected.len());
        }
    }
}

#[test]
fn squared_dimensions_sum_to_group_order() {
    for n in 1..=6 {
        let total: usize = enumerate_partitions(n).unwrap().iter().map(|l| l.dimension().pow(2)).sum();
        assert_eq!(total as u128, factorial(n));
    }
}

#[test]
fn axial_distance_examples() {
    let t = kronwit_core::StandardTableau::from_rows(vec![vec![1, 2], vec![3]]).unwrap();
    assert_eq!(t.axial_distance(1).unwrap(), 1);
    assert_eq!(t.axial_distance(2).unwrap(), -2);
    let u = kronwit_core::StandardTableau::from_rows(vec![vec![1, 3], vec![2]]).unwrap();
    assert_eq!(u.axial_distance(1).unwrap(), -1);
}

#[test]
fn group_enumeration() {
    assert_eq!(enumerate_group(3).unwrap().len(), 6);
    assert_eq!(enumerate_group(4).unwrap().len(), 24);
    let g = enumerate_group(4).unwrap();
    assert!(g.windows(2).all(|w| w[0].one_line() < w[1].one_line()));
    assert_eq!(g, enumerate_group(4).unwrap());
    let cycle = Permutation::from_one_line(&[2, 3, 1]).unwrap();
    assert_eq!(SymmetricGroup::new(3).unwrap().conjugacy_class_of(&cycle), Partition::new(vec![3]).unwrap());
    match SymmetricGroup::with_limits(8, &Limits::default()) {
        Err(Error::ResourceLimit(msg)) => assert!(msg.contains("40320"), "{msg}"),
        other => panic!("expected a resource limit, got {other:?}"),
    }
}

#[test]
fn every_small_permutation_decomposes() {
    for n in 1..=5 {
        for g in enumerate_group(n).unwrap() {
            let word = g.adjacent_transposition_decomposition();
            assert!(word.len() <= n * (n - 1) / 2);
            assert_eq!(compose_adjacent(n, &word), g.one_line());
            assert_eq!(compose_adjacent(n, &g.adjacent_transposition_decomposition_left()), g.one_line());
        }
    }
    let cycle = Permutation::from_one_line(&[2, 3, 1]).unwrap();
    let w = cycle.adjacent_transposition_decomposition();
    assert_eq!(w.len(), 2);
    assert_eq!(compose_adjacent(3, &w), vec![2, 3, 1]);
    assert!(Permutation::identity(4).adjacent_transposition_decomposition().is_empty());
}

fn permutation(max_n: usize) -> impl Strategy<Value = Vec<usize>> {
    (1..=max_n).prop_flat_map(|n| Just((1..=n).collect::<Vec<usize>>()).prop_shuffle())
}

proptest! {
    #[test]
    fn decomposition_reproduces_permutation(images in permutation(9)) {
        let g = Permutation::from_one_line(&images).unwrap();
        let n = images.len();
        let word = g.adjacent_transposition_decomposition();
        prop_assert!(word.len() <= n * (n - 1) / 2);
        prop_assert_eq!(compose_adjacent(n, &word), images.clone());
        prop_assert_eq!(Permutation::from_adjacent_word(n, &word).unwrap(), g);
    }

    #[test]
    fn inverse_and_cycle_type(images in permutation(9)) {
        let g = Permutation::from_one_line(&images).unwrap();
        prop_assert!(g.compose(&g.inverse()).is_identity());
        prop_assert!(g.inverse().compose(&g).is_identity());
        prop_assert_eq!(g.cycle_type().parts().to_vec(), cycle_type_oracle(&images));
    }

    #[test]
    fn composition_is_function_composition(a in Just((1..=6usize).collect::<Vec<_>>()).prop_shuffle(),
                                           b in Just((1..=6usize).collect::<Vec<_>>()).prop_shuffle()) {
        let g = Permutation::from_one_line(&a).unwrap();
        let h = Permutation::from_one_line(&b).unwrap();
        let expected: Vec<usize> = (0..6).map(|x| a[b[x] - 1]).collect();
        prop_assert_eq!(g.compose(&h).one_line(), expected);
    }

    #[test]
    fn partition_text_round_trips(n in 1usize..=9, pick in 0usize..1000) {
        let all = enumerate_partitions(n).unwrap();
        let p = &all[pick % all.len()];
        let back: Partition = p.to_string().parse().unwrap();
        prop_assert_eq!(&back, p);
        prop_assert_eq!(p.conjugate().conjugate(), p.clone());
        prop_assert_eq!(p.conjugate().dimension(), p.dimension());
    }
}

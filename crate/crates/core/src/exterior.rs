//! Exterior powers over Z^n in the lexicographic wedge basis
//! { e_{i1} ∧ ... ∧ e_{ip} : i1 < ... < ip }.

use crate::arith::Int;
use crate::matrix::Mat;
use num_traits::{One, Zero};

/// All strictly increasing p-subsets of {0, .., n-1} in lexicographic order.
pub fn lex_subsets(n: usize, p: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if p > n {
        return out;
    }
    let mut cur: Vec<usize> = (0..p).collect();
    loop {
        out.push(cur.clone());
        // advance
        let mut i = p;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if cur[i] + 1 <= n - (p - i) {
                cur[i] += 1;
                for j in i + 1..p {
                    cur[j] = cur[j - 1] + 1;
                }
                break;
            }
        }
    }
}

pub fn binomial(n: usize, p: usize) -> usize {
    if p > n {
        return 0;
    }
    let p = p.min(n - p);
    let mut acc: usize = 1;
    for i in 0..p {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

fn subset_index(subset: &[usize], subsets: &[Vec<usize>]) -> Option<usize> {
    subsets.binary_search_by(|s| s.as_slice().cmp(subset)).ok()
}

/// Matrix of ∧^p T in the lexicographic basis; entries are p×p minors.
pub fn exterior_power_matrix(t: &Mat, p: usize) -> Mat {
    assert_eq!(t.rows(), t.cols(), "exterior power of non-square matrix");
    let n = t.rows();
    assert!(p <= n, "wedge degree out of range");
    let subsets = lex_subsets(n, p);
    let m = subsets.len();
    Mat::from_fn(m, m, |r, c| t.submatrix(&subsets[r], &subsets[c]).det())
}

/// Sign of the permutation sorting the concatenation of two disjoint
/// ascending index sets; None if they overlap.
fn shuffle_sign(a: &[usize], b: &[usize]) -> Option<i8> {
    let mut inversions = 0usize;
    for &x in a {
        for &y in b {
            if x == y {
                return None;
            }
            if x > y {
                inversions += 1;
            }
        }
    }
    Some(if inversions % 2 == 0 { 1 } else { -1 })
}

/// Wedge product ∧^p x ∧^q -> ∧^{p+q} on coordinate vectors.
pub fn wedge_vectors(n: usize, p: usize, xi: &[Int], q: usize, eta: &[Int]) -> Vec<Int> {
    let sp = lex_subsets(n, p);
    let sq = lex_subsets(n, q);
    let spq = lex_subsets(n, p + q);
    assert_eq!(xi.len(), sp.len());
    assert_eq!(eta.len(), sq.len());
    let mut out = vec![Int::zero(); spq.len()];
    for (i, a) in sp.iter().enumerate() {
        if xi[i].is_zero() {
            continue;
        }
        for (j, b) in sq.iter().enumerate() {
            if eta[j].is_zero() {
                continue;
            }
            if let Some(sign) = shuffle_sign(a, b) {
                let mut merged: Vec<usize> = a.iter().chain(b.iter()).copied().collect();
                merged.sort_unstable();
                let k = subset_index(&merged, &spq).expect("merged subset");
                let term = &xi[i] * &eta[j];
                if sign > 0 {
                    out[k] += term;
                } else {
                    out[k] -= term;
                }
            }
        }
    }
    out
}

/// The integer k with xi ∧ eta = k * Omega, where Omega = omega_sign * e_1∧...∧e_n.
pub fn wedge_ratio(n: usize, p: usize, xi: &[Int], eta: &[Int], omega_sign: i8) -> Int {
    assert!(omega_sign == 1 || omega_sign == -1);
    assert!(p <= n);
    let top = wedge_vectors(n, p, xi, n - p, eta);
    assert_eq!(top.len(), 1);
    if omega_sign > 0 {
        top[0].clone()
    } else {
        -top[0].clone()
    }
}

/// Matrix of the contraction  ∧^p Λ -> Hom(∧^{n-p} Λ, Z) = ∧^{n-p} Λ̌,
/// ξ ↦ (η ↦ (ξ∧η)/Ω), in lexicographic bases on both sides: row J (an
/// (n-p)-subset, indexing the dual basis vector e*_J), column I (a p-subset).
pub fn omega_contraction_matrix(n: usize, p: usize, omega_sign: i8) -> Mat {
    let sp = lex_subsets(n, p);
    let sq = lex_subsets(n, n - p);
    Mat::from_fn(sq.len(), sp.len(), |r, c| match shuffle_sign(&sp[c], &sq[r]) {
        Some(s) => {
            let v = if s > 0 { Int::one() } else { -Int::one() };
            if omega_sign > 0 {
                v
            } else {
                -v
            }
        }
        None => Int::zero(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::int;

    #[test]
    fn lex_order() {
        assert_eq!(
            lex_subsets(4, 2),
            vec![
                vec![0, 1],
                vec![0, 2],
                vec![0, 3],
                vec![1, 2],
                vec![1, 3],
                vec![2, 3]
            ]
        );
        assert_eq!(lex_subsets(3, 0), vec![Vec::<usize>::new()]);
    }

    #[test]
    fn wedge_of_identity_and_diag() {
        let id3 = Mat::identity(3);
        assert!(exterior_power_matrix(&id3, 2).is_identity());
        let t = Mat::from_rows_i64(&[&[1, 2], &[3, 4]]);
        assert_eq!(exterior_power_matrix(&t, 1), t);
        let d = Mat::from_rows_i64(&[&[1, 0, 0], &[0, 2, 0], &[0, 0, 3]]);
        let w = exterior_power_matrix(&d, 2);
        // lex basis: e12, e13, e23 -> minors 2, 3, 6
        assert_eq!(
            w,
            Mat::from_rows_i64(&[&[2, 0, 0], &[0, 3, 0], &[0, 0, 6]])
        );
    }

    #[test]
    fn wedge_ratio_signs() {
        // e1 ∧ e2 vs Ω = e1∧e2
        let e1 = vec![int(1), int(0)];
        let e2 = vec![int(0), int(1)];
        assert_eq!(wedge_ratio(2, 1, &e1, &e2, 1), int(1));
        assert_eq!(wedge_ratio(2, 1, &e2, &e1, 1), int(-1));
        let e1p2 = vec![int(1), int(1)];
        assert_eq!(wedge_ratio(2, 1, &e1p2, &e2, 1), int(1));
    }

    #[test]
    fn functorial() {
        let mut rng = crate::arith::XorShift::new(5);
        for _ in 0..40 {
            // random unimodular-ish products of elementary matrices
            let mut s = Mat::identity(3);
            let mut t = Mat::identity(3);
            for _ in 0..4 {
                let i = rng.int_in(0, 2) as usize;
                let mut j = rng.int_in(0, 2) as usize;
                if i == j {
                    j = (j + 1) % 3;
                }
                let mut e = Mat::identity(3);
                e.set(i, j, int(rng.int_in(-2, 2)));
                s = s.mul(&e);
                let mut f = Mat::identity(3);
                f.set(j, i, int(rng.int_in(-2, 2)));
                t = t.mul(&f);
            }
            for p in 0..=3 {
                let lhs = exterior_power_matrix(&s.mul(&t), p);
                let rhs = exterior_power_matrix(&s, p).mul(&exterior_power_matrix(&t, p));
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn contraction_composes_to_sign() {
        // contracting twice is ± identity
        for n in 1..=4usize {
            for p in 0..=n {
                let c1 = omega_contraction_matrix(n, p, 1);
                let c2 = omega_contraction_matrix(n, n - p, 1);
                let comp = c2.mul(&c1);
                let sign = if (p * (n - p)) % 2 == 0 { 1 } else { -1 };
                let want = Mat::identity(binomial(n, p)).scale(&int(sign));
                assert_eq!(comp, want, "n={} p={}", n, p);
            }
        }
    }
}

//! Exact dense linear algebra: fraction-free Gaussian elimination and
//! nullspace extraction, over big integers and over univariate polynomial
//! entries (the rational-function field in one variable).
//!
//! Bareiss one-step division keeps every intermediate entry equal to a minor
//! of the input matrix, which bounds coefficient growth in both rings.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::rat::BigRat;
use crate::unipoly::UniPoly;

/// Row-echelon reduction of an integer matrix in place (Bareiss).
/// Returns the pivot columns in order.
fn bareiss_int(rows: &mut [Vec<BigInt>]) -> Vec<usize> {
    let m = rows.len();
    if m == 0 {
        return vec![];
    }
    let n = rows[0].len();
    let mut pivots = Vec::new();
    let mut prev = BigInt::one();
    let mut r = 0usize;
    for c in 0..n {
        if r >= m {
            break;
        }
        let Some(sel) = (r..m).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, sel);
        let (top, rest) = rows.split_at_mut(r + 1);
        let pivot_row = &top[r];
        for row in rest.iter_mut() {
            if row[c].is_zero() {
                // still rescale to keep the Bareiss invariant
                for j in (c + 1)..n {
                    let t = &pivot_row[c] * &row[j];
                    row[j] = t / &prev;
                }
            } else {
                for j in (c + 1)..n {
                    let t = &pivot_row[c] * &row[j] - &row[c] * &pivot_row[j];
                    row[j] = t / &prev;
                }
                row[c] = BigInt::zero();
            }
        }
        prev = rows[r][c].clone();
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Rank and kernel basis of an integer matrix; kernel vectors are primitive
/// integer vectors (content 1, first nonzero entry positive).
pub fn int_kernel(mut rows: Vec<Vec<BigInt>>) -> (usize, Vec<Vec<BigInt>>) {
    if rows.is_empty() {
        return (0, vec![]);
    }
    let n = rows[0].len();
    let pivots = bareiss_int(&mut rows);
    let rank = pivots.len();
    let is_pivot: Vec<Option<usize>> = {
        let mut v = vec![None; n];
        for (i, &c) in pivots.iter().enumerate() {
            v[c] = Some(i);
        }
        v
    };
    let mut basis = Vec::new();
    for free in 0..n {
        if is_pivot[free].is_some() {
            continue;
        }
        // back-substitute over the rationals
        let mut x = vec![BigRat::zero(); n];
        x[free] = BigRat::one();
        for i in (0..rank).rev() {
            let p = pivots[i];
            let mut acc = BigRat::zero();
            for j in (p + 1)..n {
                if !rows[i][j].is_zero() && !x[j].is_zero() {
                    acc += BigRat::from_integer(rows[i][j].clone()) * &x[j];
                }
            }
            x[p] = -acc / BigRat::from_integer(rows[i][p].clone());
        }
        basis.push(clear_rat_vector(&x));
    }
    (rank, basis)
}

/// Scale a rational vector to a primitive integer vector with a canonical sign.
pub fn clear_rat_vector(x: &[BigRat]) -> Vec<BigInt> {
    let mut lcm = BigInt::one();
    for v in x {
        lcm = lcm.lcm(v.denom());
    }
    let mut ints: Vec<BigInt> = x.iter().map(|v| v.numer() * (&lcm / v.denom())).collect();
    let mut g = BigInt::zero();
    for v in &ints {
        g = g.gcd(v);
    }
    if !g.is_zero() {
        if let Some(first) = ints.iter().find(|v| !v.is_zero()) {
            if first.is_negative() {
                g = -g;
            }
        }
        for v in ints.iter_mut() {
            *v = &*v / &g;
        }
    }
    ints
}

/// Kernel of a matrix with rational entries, via row-wise clearing to integers.
pub fn rat_kernel(rows: &[Vec<BigRat>]) -> (usize, Vec<Vec<BigInt>>) {
    let int_rows: Vec<Vec<BigInt>> = rows
        .iter()
        .map(|row| {
            let mut lcm = BigInt::one();
            for v in row {
                lcm = lcm.lcm(v.denom());
            }
            row.iter().map(|v| v.numer() * (&lcm / v.denom())).collect()
        })
        .collect();
    int_kernel(int_rows)
}

/// Row-echelon reduction with univariate-polynomial entries (Bareiss over
/// the polynomial ring). Returns pivot columns.
fn bareiss_poly(rows: &mut [Vec<UniPoly>], var: &str) -> Vec<usize> {
    let m = rows.len();
    if m == 0 {
        return vec![];
    }
    let n = rows[0].len();
    let mut pivots = Vec::new();
    let mut prev = UniPoly::one(var);
    let mut r = 0usize;
    for c in 0..n {
        if r >= m {
            break;
        }
        // prefer a low-degree pivot to limit growth
        let mut sel: Option<usize> = None;
        for i in r..m {
            if rows[i][c].is_zero() {
                continue;
            }
            match sel {
                None => sel = Some(i),
                Some(s) => {
                    if rows[i][c].degree() < rows[s][c].degree() {
                        sel = Some(i);
                    }
                }
            }
        }
        let Some(sel) = sel else {
            continue;
        };
        rows.swap(r, sel);
        let (top, rest) = rows.split_at_mut(r + 1);
        let pivot_row = &top[r];
        for row in rest.iter_mut() {
            if row[c].is_zero() {
                for j in (c + 1)..n {
                    let t = pivot_row[c].mul(&row[j]);
                    row[j] = t.divexact(&prev).expect("Bareiss division is exact");
                }
            } else {
                for j in (c + 1)..n {
                    let t = pivot_row[c].mul(&row[j]).sub(&row[c].mul(&pivot_row[j]));
                    row[j] = t.divexact(&prev).expect("Bareiss division is exact");
                }
                row[c] = UniPoly::zero(var);
            }
        }
        prev = rows[r][c].clone();
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Rank and kernel basis of a matrix over the rational-function field in one
/// variable. Kernel vectors come back as polynomial vectors with the overall
/// polynomial gcd and scalar content removed.
pub fn poly_kernel(mut rows: Vec<Vec<UniPoly>>, var: &str) -> (usize, Vec<Vec<UniPoly>>) {
    if rows.is_empty() {
        return (0, vec![]);
    }
    let n = rows[0].len();
    let pivots = bareiss_poly(&mut rows, var);
    let rank = pivots.len();
    let is_pivot: Vec<Option<usize>> = {
        let mut v = vec![None; n];
        for (i, &c) in pivots.iter().enumerate() {
            v[c] = Some(i);
        }
        v
    };
    let mut basis = Vec::new();
    for free in 0..n {
        if is_pivot[free].is_some() {
            continue;
        }
        // back-substitution with num/den pairs over the polynomial ring
        let one = UniPoly::one(var);
        let zero = UniPoly::zero(var);
        let mut num = vec![zero.clone(); n];
        let mut den = vec![one.clone(); n];
        num[free] = one.clone();
        for i in (0..rank).rev() {
            let p = pivots[i];
            // acc = sum_j rows[i][j] * x[j]
            let mut acc_n = zero.clone();
            let mut acc_d = one.clone();
            for j in (p + 1)..n {
                if rows[i][j].is_zero() || num[j].is_zero() {
                    continue;
                }
                let tn = rows[i][j].mul(&num[j]);
                let td = den[j].clone();
                // acc += tn/td
                let new_n = acc_n.mul(&td).add(&tn.mul(&acc_d));
                let new_d = acc_d.mul(&td);
                let g = new_n.gcd(&new_d);
                acc_n = new_n.divexact(&g).expect("gcd divides");
                acc_d = new_d.divexact(&g).expect("gcd divides");
            }
            // x[p] = -acc / pivot
            let pn = acc_n.neg();
            let pd = acc_d.mul(&rows[i][p]);
            let g = pn.gcd(&pd);
            num[p] = pn.divexact(&g).expect("gcd divides");
            den[p] = pd.divexact(&g).expect("gcd divides");
        }
        // clear denominators: multiply by lcm of dens
        let mut lcm = one.clone();
        for d in &den {
            let g = lcm.gcd(d);
            lcm = lcm.mul(&d.divexact(&g).expect("gcd divides"));
        }
        let mut vec_poly: Vec<UniPoly> = (0..n)
            .map(|j| num[j].mul(&lcm.divexact(&den[j]).expect("lcm divides")))
            .collect();
        // remove the overall polynomial gcd and scalar content
        let mut g = UniPoly::zero(var);
        for p in &vec_poly {
            g = g.gcd(p);
        }
        if !g.is_zero() && g.degree().unwrap_or(0) > 0 {
            vec_poly = vec_poly
                .iter()
                .map(|p| p.divexact(&g).expect("gcd divides"))
                .collect();
        }
        let mut content = BigRat::zero();
        for p in &vec_poly {
            content = crate::rat::gcd_rat(&content, &p.content());
        }
        if !content.is_zero() {
            let inv = content.recip();
            vec_poly = vec_poly.iter().map(|p| p.mul_scalar(&inv)).collect();
        }
        basis.push(vec_poly);
    }
    (rank, basis)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::int;

    fn bi(n: i64) -> BigInt {
        BigInt::from(n)
    }

    #[test]
    fn kernel_of_singular_integer_matrix() {
        // rows: [1 2 3; 2 4 6; 1 0 1] -> rank 2, kernel spanned by (1, 1, -1)... let's check:
        // x + 2y + 3z = 0 and x + z = 0 -> x = -z, 2y = -3z + z = -2z -> y = -z
        // kernel: (-1, -1, 1) ~ (1, 1, -1)
        let rows = vec![
            vec![bi(1), bi(2), bi(3)],
            vec![bi(2), bi(4), bi(6)],
            vec![bi(1), bi(0), bi(1)],
        ];
        let (rank, basis) = int_kernel(rows);
        assert_eq!(rank, 2);
        assert_eq!(basis.len(), 1);
        assert_eq!(basis[0], vec![bi(1), bi(1), bi(-1)]);
    }

    #[test]
    fn full_rank_has_empty_kernel() {
        let rows = vec![vec![bi(2), bi(1)], vec![bi(1), bi(1)]];
        let (rank, basis) = int_kernel(rows);
        assert_eq!(rank, 2);
        assert!(basis.is_empty());
    }

    #[test]
    fn random_kernel_vectors_annihilate() {
        let mut state = 99u64;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            state
        };
        for _ in 0..50 {
            let m = 4 + (next() % 3) as usize;
            let n = m + 1 + (next() % 2) as usize; // wide: kernel nonempty
            let rows: Vec<Vec<BigInt>> = (0..m)
                .map(|_| (0..n).map(|_| bi((next() % 21) as i64 - 10)).collect())
                .collect();
            let (rank, basis) = int_kernel(rows.clone());
            assert_eq!(rank + basis.len(), n);
            for v in &basis {
                for row in &rows {
                    let dot: BigInt = row.iter().zip(v).map(|(a, b)| a * b).sum();
                    assert!(dot.is_zero());
                }
            }
        }
    }

    #[test]
    fn poly_kernel_simple() {
        // [z, -1; z^2, -z] has rank 1; kernel (1, z)
        let z1 = UniPoly::from_ints("z", &[0, 1]);
        let rows = vec![
            vec![z1.clone(), UniPoly::from_ints("z", &[-1])],
            vec![z1.mul(&z1), z1.neg()],
        ];
        let (rank, basis) = poly_kernel(rows.clone(), "z");
        assert_eq!(rank, 1);
        assert_eq!(basis.len(), 1);
        for row in &rows {
            let dot = row[0].mul(&basis[0][0]).add(&row[1].mul(&basis[0][1]));
            assert!(dot.is_zero());
        }
        // canonical: gcd removed, so the kernel is (1, z) up to sign/scalar
        assert_eq!(basis[0][0].degree(), Some(0));
        assert_eq!(basis[0][1].degree(), Some(1));
    }

    #[test]
    fn poly_kernel_random_annihilates() {
        let mut state = 3u64;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            state
        };
        for _ in 0..20 {
            let m = 3usize;
            let n = 4usize;
            let rows: Vec<Vec<UniPoly>> = (0..m)
                .map(|_| {
                    (0..n)
                        .map(|_| {
                            UniPoly::new(
                                "z",
                                (0..=(next() % 3) as usize)
                                    .map(|_| int((next() % 11) as i64 - 5))
                                    .collect(),
                            )
                        })
                        .collect()
                })
                .collect();
            let (rank, basis) = poly_kernel(rows.clone(), "z");
            assert_eq!(rank + basis.len(), n);
            for v in &basis {
                for row in &rows {
                    let mut dot = UniPoly::zero("z");
                    for (a, b) in row.iter().zip(v) {
                        dot = dot.add(&a.mul(b));
                    }
                    assert!(dot.is_zero(), "kernel vector does not annihilate");
                }
            }
        }
    }
}

//! Floating-point cross-check of the ground-state energy: Lanczos with full
//! reorthogonalization on the sparse sector Hamiltonian, with the extreme
//! eigenvalue of the tridiagonal recovered by Sturm bisection.

use super::sector::{BondKind, SpinSector};

/// Minimal eigenvalue of H restricted to the odd sector at a float zeta.
pub fn min_sector_eigenvalue_f64(sector: &SpinSector, zeta: f64) -> f64 {
    let n = sector.n_sites;
    let dim = sector.configs.len();
    let den = zeta * zeta + 3.0;
    let par = -2.0 * zeta / den;
    let anti = -2.0 / den;

    // precompute sparse rows over sector indices
    let mut index_of = vec![usize::MAX; 1 << n];
    for (i, &c) in sector.configs.iter().enumerate() {
        index_of[c as usize] = i;
    }
    let mut diag = vec![0.0f64; dim];
    let mut flips: Vec<Vec<(usize, f64)>> = vec![Vec::with_capacity(n); dim];
    for (i, &c) in sector.configs.iter().enumerate() {
        let act = sector.row_actions(c);
        let a = act.anti_bonds as f64;
        diag[i] = (a * zeta * zeta + (2 * n) as f64 - a) / den - n as f64 / 2.0;
        for (target, kind) in act.flips {
            let j = index_of[target as usize];
            let w = match kind {
                BondKind::Parallel => par,
                BondKind::Antiparallel => anti,
            };
            flips[i].push((j, w));
        }
    }
    let matvec = |v: &[f64], out: &mut [f64]| {
        for i in 0..dim {
            let mut acc = diag[i] * v[i];
            for &(j, w) in &flips[i] {
                acc += w * v[j];
            }
            out[i] = acc;
        }
    };

    // Lanczos with full reorthogonalization
    let m = 220.min(dim);
    let mut alphas = Vec::with_capacity(m);
    let mut betas = Vec::with_capacity(m);
    let mut basis: Vec<Vec<f64>> = Vec::with_capacity(m);
    let mut v = vec![0.0f64; dim];
    let mut state = 0x12345678u64;
    for x in v.iter_mut() {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        *x = (state % 1000) as f64 / 1000.0 - 0.5;
    }
    normalize(&mut v);
    let mut w = vec![0.0f64; dim];
    for step in 0..m {
        matvec(&v, &mut w);
        let alpha = dot(&v, &w);
        alphas.push(alpha);
        for (wi, vi) in w.iter_mut().zip(&v) {
            *wi -= alpha * vi;
        }
        if let Some(prev) = basis.last() {
            let beta_prev = *betas.last().unwrap_or(&0.0);
            for (wi, pi) in w.iter_mut().zip(prev) {
                *wi -= beta_prev * pi;
            }
        }
        // full reorthogonalization
        basis.push(v.clone());
        for b in &basis {
            let c = dot(&w, b);
            for (wi, bi) in w.iter_mut().zip(b) {
                *wi -= c * bi;
            }
        }
        let beta = norm(&w);
        if step + 1 == m || beta < 1e-13 {
            break;
        }
        betas.push(beta);
        v = w.iter().map(|x| x / beta).collect();
    }
    tridiag_min_eigenvalue(&alphas, &betas)
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

fn normalize(a: &mut [f64]) {
    let n = norm(a);
    for x in a.iter_mut() {
        *x /= n;
    }
}

/// Smallest eigenvalue of a symmetric tridiagonal matrix by bisection on
/// the Sturm sequence count.
fn tridiag_min_eigenvalue(alphas: &[f64], betas: &[f64]) -> f64 {
    let n = alphas.len();
    assert!(n > 0);
    // Gershgorin bounds
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for i in 0..n {
        let b_prev = if i > 0 { betas[i - 1].abs() } else { 0.0 };
        let b_next = if i < betas.len() { betas[i].abs() } else { 0.0 };
        lo = lo.min(alphas[i] - b_prev - b_next);
        hi = hi.max(alphas[i] + b_prev + b_next);
    }
    let count_below = |x: f64| -> usize {
        // number of eigenvalues < x via the Sturm sequence
        let mut count = 0;
        let mut d = alphas[0] - x;
        if d < 0.0 {
            count += 1;
        }
        for i in 1..n {
            let b2 = betas[i - 1] * betas[i - 1];
            d = alphas[i]
                - x
                - b2 / if d.abs() < 1e-300 {
                    1e-300_f64.copysign(d)
                } else {
                    d
                };
            if d < 0.0 {
                count += 1;
            }
        }
        count
    };
    let mut a = lo - 1e-8;
    let mut b = hi + 1e-8;
    for _ in 0..200 {
        let mid = 0.5 * (a + b);
        if count_below(mid) >= 1 {
            b = mid;
        } else {
            a = mid;
        }
        if b - a < 1e-13 * (1.0 + b.abs()) {
            break;
        }
    }
    0.5 * (a + b)
}

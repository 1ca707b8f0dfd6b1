//! Univariate polynomial factorization over the integers.
//!
//! Zassenhaus pipeline at desk scale (degrees up to ~50): Yun square-free
//! decomposition, distinct-degree factorization modulo a small prime,
//! Cantor-Zassenhaus equal-degree splitting, linear Hensel lifting to a
//! Mignotte-style bound, and subset recombination.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::rat::BigRat;
use crate::unipoly::UniPoly;

/// Full factorization over Q: returns the rational content and the primitive
/// irreducible integer factors with multiplicities, positive leading
/// coefficients, sorted for determinism.
pub fn factor_over_q(p: &UniPoly) -> Result<(BigRat, Vec<(UniPoly, usize)>)> {
    if p.is_zero() {
        return Err(Error::NoSolution {
            detail: "factor of zero polynomial".into(),
        });
    }
    let prim = p.primitive();
    let content = p.coeff(first_nonzero(p)) / prim.coeff(first_nonzero(p));
    let mut factors: Vec<(UniPoly, usize)> = Vec::new();
    for (sqfree, mult) in yun_squarefree(&prim) {
        if sqfree.degree().unwrap_or(0) == 0 {
            continue;
        }
        for irr in factor_squarefree(&sqfree)? {
            factors.push((irr, mult));
        }
    }
    factors.sort_by(|a, b| {
        a.0.degree()
            .cmp(&b.0.degree())
            .then_with(|| format!("{}", a.0).cmp(&format!("{}", b.0)))
    });
    Ok((content, factors))
}

fn first_nonzero(p: &UniPoly) -> usize {
    p.coeffs().iter().position(|c| !c.is_zero()).unwrap_or(0)
}

/// Yun's algorithm: p = prod_i out[i].0 ^ out[i].1 with square-free parts.
pub fn yun_squarefree(p: &UniPoly) -> Vec<(UniPoly, usize)> {
    let mut out = Vec::new();
    let dp = p.derivative();
    if dp.is_zero() {
        // constant
        return vec![(p.clone(), 1)];
    }
    let g0 = p.gcd(&dp);
    let mut w = p.divexact(&g0).expect("gcd divides");
    let mut y = dp.divexact(&g0).expect("gcd divides");
    let mut i = 1usize;
    loop {
        let z = y.sub(&w.derivative());
        if z.is_zero() {
            if w.degree().unwrap_or(0) > 0 {
                out.push((w.primitive(), i));
            }
            break;
        }
        let g = w.gcd(&z);
        if g.degree().unwrap_or(0) > 0 {
            out.push((g.primitive(), i));
        }
        w = w.divexact(&g).expect("gcd divides");
        y = z.divexact(&g).expect("gcd divides");
        i += 1;
    }
    out
}

// ---------------------------------------------------------------------------
// arithmetic modulo a small prime
// ---------------------------------------------------------------------------

/// Dense polynomial over Z/p with trimmed leading zeros.
#[derive(Clone, Debug, PartialEq)]
struct ModPoly {
    c: Vec<u64>,
}

fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn powmod_u(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(acc, a, p);
        }
        a = mulmod(a, a, p);
        e >>= 1;
    }
    acc
}

fn invmod(a: u64, p: u64) -> u64 {
    powmod_u(a, p - 2, p)
}

impl ModPoly {
    fn new(mut c: Vec<u64>) -> Self {
        while c.last() == Some(&0) {
            c.pop();
        }
        ModPoly { c }
    }

    fn zero() -> Self {
        ModPoly { c: vec![] }
    }

    fn x() -> Self {
        ModPoly { c: vec![0, 1] }
    }

    fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    fn deg(&self) -> usize {
        self.c.len().saturating_sub(1)
    }

    fn lead(&self) -> u64 {
        *self.c.last().unwrap_or(&0)
    }

    fn monic(&self, p: u64) -> ModPoly {
        if self.is_zero() {
            return self.clone();
        }
        let inv = invmod(self.lead(), p);
        ModPoly::new(self.c.iter().map(|&a| mulmod(a, inv, p)).collect())
    }

    fn sub(&self, o: &ModPoly, p: u64) -> ModPoly {
        let n = self.c.len().max(o.c.len());
        ModPoly::new(
            (0..n)
                .map(|i| {
                    (p + self.c.get(i).copied().unwrap_or(0) - o.c.get(i).copied().unwrap_or(0) % p)
                        % p
                })
                .collect(),
        )
    }

    fn mul(&self, o: &ModPoly, p: u64) -> ModPoly {
        if self.is_zero() || o.is_zero() {
            return ModPoly::zero();
        }
        let mut out = vec![0u64; self.c.len() + o.c.len() - 1];
        for (i, &a) in self.c.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in o.c.iter().enumerate() {
                out[i + j] = (out[i + j] + a as u128 as u64 * 0 + mulmod(a, b, p)) % p;
            }
        }
        ModPoly::new(out)
    }

    fn rem(&self, m: &ModPoly, p: u64) -> ModPoly {
        assert!(!m.is_zero());
        let mut r = self.c.clone();
        let dm = m.deg();
        let inv = invmod(m.lead(), p);
        while r.len() > dm {
            let k = r.len() - 1;
            let q = mulmod(*r.last().unwrap(), inv, p);
            if q != 0 {
                for (j, &b) in m.c.iter().enumerate() {
                    let idx = k - dm + j;
                    r[idx] = (r[idx] + p - mulmod(q, b, p)) % p;
                }
            }
            r.pop();
        }
        ModPoly::new(r)
    }

    fn divrem(&self, m: &ModPoly, p: u64) -> (ModPoly, ModPoly) {
        assert!(!m.is_zero());
        let dm = m.deg();
        if self.c.len() <= dm {
            return (ModPoly::zero(), self.clone());
        }
        let mut r = self.c.clone();
        let mut q = vec![0u64; r.len() - dm];
        let inv = invmod(m.lead(), p);
        while r.len() > dm {
            let k = r.len() - 1;
            let qc = mulmod(*r.last().unwrap(), inv, p);
            if qc != 0 {
                for (j, &b) in m.c.iter().enumerate() {
                    let idx = k - dm + j;
                    r[idx] = (r[idx] + p - mulmod(qc, b, p)) % p;
                }
            }
            q[k - dm] = qc;
            r.pop();
        }
        (ModPoly::new(q), ModPoly::new(r))
    }

    fn gcd(&self, o: &ModPoly, p: u64) -> ModPoly {
        let mut a = self.clone();
        let mut b = o.clone();
        while !b.is_zero() {
            let r = a.rem(&b, p);
            a = b;
            b = r;
        }
        a.monic(p)
    }

    fn mulrem(&self, o: &ModPoly, m: &ModPoly, p: u64) -> ModPoly {
        self.mul(o, p).rem(m, p)
    }

    fn powmod(&self, e: &BigUint, m: &ModPoly, p: u64) -> ModPoly {
        let mut acc = ModPoly::new(vec![1]);
        let mut sq = self.rem(m, p);
        for bit in 0..e.bits() {
            if e.bit(bit) {
                acc = acc.mulrem(&sq, m, p);
            }
            if bit + 1 < e.bits() {
                sq = sq.mulrem(&sq, m, p);
            }
        }
        acc
    }

    fn derivative(&self, p: u64) -> ModPoly {
        if self.c.len() <= 1 {
            return ModPoly::zero();
        }
        ModPoly::new(
            self.c
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, &a)| mulmod(a, (i as u64) % p, p))
                .collect(),
        )
    }
}

fn to_mod(p_int: &[BigInt], p: u64) -> ModPoly {
    let pm = BigInt::from(p);
    ModPoly::new(
        p_int
            .iter()
            .map(|c| {
                let r = c.mod_floor(&pm);
                r.to_u64().expect("reduced residue fits")
            })
            .collect(),
    )
}

// ---------------------------------------------------------------------------
// distinct-degree + equal-degree factorization mod p
// ---------------------------------------------------------------------------

/// Irreducible monic factors of a square-free monic polynomial mod p.
fn factor_mod_p(f: &ModPoly, p: u64) -> Vec<ModPoly> {
    let mut out = Vec::new();
    let mut rest = f.clone();
    let mut h = ModPoly::x();
    let mut d = 0usize;
    while rest.deg() >= 1 {
        d += 1;
        if 2 * d > rest.deg() {
            out.push(rest.monic(p));
            break;
        }
        h = h.powmod(&BigUint::from(p), &rest, p);
        let diff = h.sub(&ModPoly::x(), p);
        let g = diff.gcd(&rest, p);
        if g.deg() >= 1 {
            // product of all irreducible factors of degree exactly d
            equal_degree_split(&g, d, p, &mut out);
            rest = rest.divrem(&g, p).0;
            h = h.rem(&rest, p);
        }
    }
    out
}

/// Cantor-Zassenhaus split of a product of degree-d irreducibles.
fn equal_degree_split(f: &ModPoly, d: usize, p: u64, out: &mut Vec<ModPoly>) {
    if f.deg() == d {
        out.push(f.monic(p));
        return;
    }
    let exponent = (BigUint::from(p).pow(d as u32) - BigUint::one()) / BigUint::from(2u32);
    let mut state = 0x853c49e6748fea9bu64 ^ (f.deg() as u64).wrapping_mul(0x9e3779b9);
    loop {
        // random polynomial of degree < deg f
        state = state
            .wrapping_mul(6364136223846793005)
            .wrapping_add(1442695040888963407);
        let mut coeffs = Vec::with_capacity(f.deg());
        let mut s = state;
        for _ in 0..f.deg() {
            s ^= s << 13;
            s ^= s >> 7;
            s ^= s << 17;
            coeffs.push(s % p);
        }
        let a = ModPoly::new(coeffs);
        if a.is_zero() {
            continue;
        }
        let b = a.powmod(&exponent, f, p);
        let candidate = b.sub(&ModPoly::new(vec![1]), p).gcd(f, p);
        if candidate.deg() >= 1 && candidate.deg() < f.deg() {
            equal_degree_split(&candidate, d, p, out);
            equal_degree_split(&f.divrem(&candidate, p).0, d, p, out);
            return;
        }
    }
}

// ---------------------------------------------------------------------------
// Hensel lifting
// ---------------------------------------------------------------------------

fn mod_sym(c: &BigInt, m: &BigInt) -> BigInt {
    let r = c.mod_floor(m);
    if &r * 2 > *m {
        r - m
    } else {
        r
    }
}

/// Lift a monic factorization f/lc = prod g_i (mod p) to mod p^k, linearly.
/// `f_int` need not be monic; the lift tracks f/lc with lc inverted mod p^j.
fn hensel_lift(f_int: &[BigInt], factors_mod_p: &[ModPoly], p: u64, k: u32) -> Vec<Vec<BigInt>> {
    let pb = BigInt::from(p);
    let r = factors_mod_p.len();
    // current lift g_i as BigInt coefficient vectors (monic)
    let mut lifted: Vec<Vec<BigInt>> = factors_mod_p
        .iter()
        .map(|g| g.c.iter().map(|&c| BigInt::from(c)).collect())
        .collect();
    // Bezout data mod p: h_i = prod_{l != i} g_l, lam_i = h_i^{-1} mod g_i
    let cofactor = |i: usize, polys: &[ModPoly]| -> ModPoly {
        let mut acc = ModPoly::new(vec![1]);
        for (l, g) in polys.iter().enumerate() {
            if l != i {
                acc = acc.mul(g, p);
            }
        }
        acc
    };
    let mod_p_view: Vec<ModPoly> = factors_mod_p.to_vec();
    let lambdas: Vec<ModPoly> = (0..r)
        .map(|i| {
            let h = cofactor(i, &mod_p_view).rem(&mod_p_view[i], p);
            // extended Euclid inverse of h mod g_i over F_p
            modpoly_inverse(&h, &mod_p_view[i], p)
        })
        .collect();

    let lc = f_int.last().unwrap().clone();
    let mut modulus = pb.clone();
    for _step in 1..k {
        let next_modulus = &modulus * &pb;
        // E = (f/lc - prod g_i) / p^step  (exact integer division)
        let lc_inv = bigint_invmod(&lc, &next_modulus);
        let f_over_lc: Vec<BigInt> = f_int
            .iter()
            .map(|c| (c * &lc_inv).mod_floor(&next_modulus))
            .collect();
        let mut prod = vec![BigInt::one()];
        for g in &lifted {
            prod = bigint_poly_mul_mod(&prod, g, &next_modulus);
        }
        let mut e: Vec<BigInt> = Vec::with_capacity(f_over_lc.len());
        let n = f_over_lc.len().max(prod.len());
        for i in 0..n {
            let a = f_over_lc.get(i).cloned().unwrap_or_else(BigInt::zero);
            let b = prod.get(i).cloned().unwrap_or_else(BigInt::zero);
            e.push((a - b).mod_floor(&next_modulus));
        }
        let e_div: Vec<BigInt> = e.iter().map(|c| c / &modulus).collect();
        let e_mod_p = to_mod(&e_div, p);
        if e_mod_p.is_zero() {
            modulus = next_modulus;
            continue;
        }
        // d_i = lambda_i * E mod g_i (mod p); g_i += p^step * d_i
        for i in 0..r {
            let di = lambdas[i]
                .mul(&e_mod_p.rem(&mod_p_view[i], p), p)
                .rem(&mod_p_view[i], p);
            for (j, &c) in di.c.iter().enumerate() {
                lifted[i][j] =
                    (&lifted[i][j] + &modulus * BigInt::from(c)).mod_floor(&next_modulus);
            }
        }
        modulus = next_modulus;
    }
    lifted
}

fn modpoly_inverse(a: &ModPoly, m: &ModPoly, p: u64) -> ModPoly {
    // extended Euclid over F_p[x]
    let (mut r0, mut r1) = (m.clone(), a.rem(m, p));
    let (mut t0, mut t1) = (ModPoly::zero(), ModPoly::new(vec![1]));
    while !r1.is_zero() {
        let (q, r) = r0.divrem(&r1, p);
        let t = t0.sub(&q.mul(&t1, p), p);
        r0 = r1;
        r1 = r;
        t0 = t1;
        t1 = t;
    }
    assert_eq!(r0.deg(), 0, "inverse exists only for coprime inputs");
    let inv = invmod(r0.lead(), p);
    ModPoly::new(t0.c.iter().map(|&c| mulmod(c, inv, p)).collect()).rem(m, p)
}

fn bigint_invmod(a: &BigInt, m: &BigInt) -> BigInt {
    let e = a.extended_gcd(m);
    assert!(e.gcd.is_one(), "inverse exists");
    e.x.mod_floor(m)
}

fn bigint_poly_mul_mod(a: &[BigInt], b: &[BigInt], m: &BigInt) -> Vec<BigInt> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] = (&out[i + j] + x * y).mod_floor(m);
        }
    }
    out
}

// ---------------------------------------------------------------------------
// recombination driver
// ---------------------------------------------------------------------------

const PRIMES: &[u64] = &[
    5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97, 101,
    103, 107, 109, 113, 127, 131,
];

/// Factor a primitive square-free integer polynomial into irreducibles.
fn factor_squarefree(g: &UniPoly) -> Result<Vec<UniPoly>> {
    let deg = g.degree().unwrap_or(0);
    if deg <= 1 {
        return Ok(vec![g.primitive()]);
    }
    let ints: Vec<BigInt> = g
        .primitive()
        .coeffs()
        .iter()
        .map(|c| c.numer().clone())
        .collect();
    let lc = ints.last().unwrap().clone();

    // prime with invertible lead and square-free reduction
    let mut chosen = None;
    for &p in PRIMES {
        let pb = BigInt::from(p);
        if (&lc).mod_floor(&pb).is_zero() {
            continue;
        }
        let fm = to_mod(&ints, p).monic(p);
        let d = fm.derivative(p);
        if d.is_zero() {
            continue;
        }
        if fm.gcd(&d, p).deg() == 0 {
            chosen = Some(p);
            break;
        }
    }
    let p = chosen.ok_or_else(|| Error::NoSolution {
        detail: "no usable small prime for factorization".into(),
    })?;

    let fm = to_mod(&ints, p).monic(p);
    let mut modular = factor_mod_p(&fm, p);
    modular.sort_by_key(|f| (f.deg(), f.c.clone()));
    if modular.len() == 1 {
        return Ok(vec![g.primitive()]);
    }

    // coefficient bound: |factor coeffs| <= 2^deg * ||g||_1 * |lc|
    let norm1: BigInt = ints.iter().map(|c| c.abs()).sum();
    let bound: BigInt = (BigInt::one() << deg) * &norm1 * lc.abs();
    let mut k = 1u32;
    let mut pk = BigInt::from(p);
    while pk <= &bound * 2 {
        pk *= BigInt::from(p);
        k += 1;
    }
    let lifted = hensel_lift(&ints, &modular, p, k);

    // subset recombination
    let mut remaining: Vec<Vec<BigInt>> = lifted;
    let mut current = g.primitive();
    let mut out = Vec::new();
    let mut subset_size = 1usize;
    'outer: while 2 * subset_size <= remaining.len() {
        let indices: Vec<usize> = (0..remaining.len()).collect();
        for subset in subsets_of(&indices, subset_size) {
            let cand = candidate_factor(&current, &remaining, &subset, &pk);
            if let Some(fact) = cand {
                current = current.divexact(&fact).expect("candidate divides");
                out.push(fact);
                let keep: Vec<Vec<BigInt>> = remaining
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| !subset.contains(i))
                    .map(|(_, v)| v.clone())
                    .collect();
                remaining = keep;
                continue 'outer;
            }
        }
        subset_size += 1;
    }
    if current.degree().unwrap_or(0) > 0 {
        out.push(current.primitive());
    }
    Ok(out)
}

fn subsets_of(indices: &[usize], size: usize) -> Vec<Vec<usize>> {
    fn rec(
        indices: &[usize],
        size: usize,
        start: usize,
        cur: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if cur.len() == size {
            out.push(cur.clone());
            return;
        }
        for i in start..indices.len() {
            cur.push(indices[i]);
            rec(indices, size, i + 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(indices, size, 0, &mut Vec::new(), &mut out);
    out
}

/// Build the balanced-coefficient candidate lc * prod_{i in subset} g_i
/// mod p^k, take its primitive part, and keep it when it divides `current`.
fn candidate_factor(
    current: &UniPoly,
    remaining: &[Vec<BigInt>],
    subset: &[usize],
    pk: &BigInt,
) -> Option<UniPoly> {
    let lc = current.leading_coeff();
    let lc_int = lc.numer().clone();
    let mut prod = vec![lc_int.mod_floor(pk)];
    for &i in subset {
        prod = bigint_poly_mul_mod(&prod, &remaining[i], pk);
    }
    let balanced: Vec<BigRat> = prod
        .iter()
        .map(|c| BigRat::from_integer(mod_sym(c, pk)))
        .collect();
    let cand = UniPoly::new(current.var(), balanced).primitive();
    if cand.degree().unwrap_or(0) == 0 {
        return None;
    }
    match current.divexact(&cand) {
        Ok(_) => Some(cand),
        Err(_) => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::int;

    fn y(ints: &[i64]) -> UniPoly {
        UniPoly::from_ints("y", ints)
    }

    #[test]
    fn squarefree_decomposition() {
        // (y+1)^2 (y-2)
        let p = y(&[1, 1]).pow(2).mul(&y(&[-2, 1]));
        let parts = yun_squarefree(&p);
        assert_eq!(parts.len(), 2);
        assert_eq!(parts[0], (y(&[-2, 1]), 1));
        assert_eq!(parts[1], (y(&[1, 1]), 2));
    }

    #[test]
    fn factors_products_of_irreducibles() {
        // (1 + y + 2y^2)(1 - y + 2y^2) = 1 + 3y^2 + 4y^4
        let f = y(&[1, 0, 3, 0, 4]);
        let (content, factors) = factor_over_q(&f).unwrap();
        assert_eq!(content, int(1));
        assert_eq!(factors.len(), 2);
        let expect_a = y(&[1, 1, 2]);
        let expect_b = y(&[1, -1, 2]);
        let got: Vec<&UniPoly> = factors.iter().map(|(f, _)| f).collect();
        assert!(got.contains(&&expect_a) && got.contains(&&expect_b));
    }

    #[test]
    fn keeps_irreducible_whole() {
        // y^4 + 1 is irreducible over Q
        let f = y(&[1, 0, 0, 0, 1]);
        let (_, factors) = factor_over_q(&f).unwrap();
        assert_eq!(factors.len(), 1);
        assert_eq!(factors[0].1, 1);
    }

    #[test]
    fn handles_content_and_multiplicity() {
        // 6 (y-1)^2 (y^2+1)
        let f = y(&[-1, 1]).pow(2).mul(&y(&[1, 0, 1])).mul_scalar(&int(6));
        let (content, factors) = factor_over_q(&f).unwrap();
        assert_eq!(content, int(6));
        assert_eq!(factors.len(), 2);
        let mut mults: Vec<usize> = factors.iter().map(|(_, m)| *m).collect();
        mults.sort();
        assert_eq!(mults, vec![1, 2]);
    }

    #[test]
    fn random_products_reassemble() {
        let mut state = 11u64;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            state
        };
        for _ in 0..30 {
            let mk = |next: &mut dyn FnMut() -> u64| {
                let d = 1 + (next() % 3) as usize;
                let mut c: Vec<i64> = (0..=d).map(|_| (next() % 11) as i64 - 5).collect();
                if c[d] == 0 {
                    c[d] = 1;
                }
                UniPoly::from_ints("y", &c)
            };
            let a = mk(&mut next);
            let b = mk(&mut next);
            let f = a.mul(&b);
            if f.is_zero() || f.degree().unwrap_or(0) == 0 {
                continue;
            }
            let (content, factors) = factor_over_q(&f).unwrap();
            // reassemble
            let mut prod = UniPoly::constant("y", content);
            for (g, m) in &factors {
                for _ in 0..*m {
                    prod = prod.mul(g);
                }
            }
            assert_eq!(prod, f, "reassembly failed for {} * {}", a, b);
        }
    }

    #[test]
    fn factors_a_degree_12_structured_poly() {
        // p3-like structure: product of two degree-6 polynomials
        let a = y(&[1, -3, 12, -30, 81, -63, 66]);
        let b = y(&[1, 3, 12, 30, 81, 63, 66]);
        let f = a.mul(&b);
        let (_, factors) = factor_over_q(&f).unwrap();
        assert_eq!(factors.len(), 2);
        let got: Vec<&UniPoly> = factors.iter().map(|(f, _)| f).collect();
        assert!(got.contains(&&a) && got.contains(&&b));
    }
}

//! Factorization of squarefree monic polynomials over Q.
//!
//! Classic Zassenhaus: rescale to a monic integer polynomial, factor modulo a
//! small odd prime that keeps it squarefree (distinct-degree plus
//! Cantor-Zassenhaus splitting), Hensel-lift the modular factors past the
//! Mignotte bound, and recombine subsets by trial division over Z.
//!
//! Degrees here stay desk-sized (the simultaneous-preperiodicity search
//! produces gcds of modest degree), so subset recombination is fine.

use super::poly::DensePoly;
use super::rational::Rational;
use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Factors a squarefree monic polynomial over Q into monic irreducibles,
/// sorted by degree then by coefficient order.
///
/// The input must be monic and squarefree; use
/// [`DensePoly::squarefree_decomposition`] first for general input.
pub fn factor_squarefree_monic(f: &DensePoly) -> Vec<DensePoly> {
    assert!(f.is_monic(), "factorization input must be monic");
    let n = f.deg();
    if n == 0 {
        return Vec::new();
    }
    if n == 1 {
        return vec![f.clone()];
    }

    // T -> U/c turns the monic rational polynomial into a monic integer one.
    let mut c = BigInt::one();
    for coeff in f.coeffs() {
        c = c.lcm(coeff.denom());
    }
    let c = Rational::from(c);
    let h = rescale_to_integer(f, &c);
    let int_factors = factor_monic_integer(&h);

    let inv_c = Rational::one() / &c;
    let mut out: Vec<DensePoly> = int_factors
        .iter()
        .map(|g| {
            let back = g.compose_scale(&c);
            let norm = super::rational::pow_u32(&inv_c, back.deg() as u32);
            back.scale(&norm)
        })
        .collect();
    out.sort_by(|a, b| {
        a.deg()
            .cmp(&b.deg())
            .then_with(|| a.coeffs().iter().rev().cmp(b.coeffs().iter().rev()))
    });
    out
}

/// `c^n f(U/c)` as an integer-coefficient monic polynomial.
fn rescale_to_integer(f: &DensePoly, c: &Rational) -> DensePoly {
    let n = f.deg() as u32;
    let coeffs = f
        .coeffs()
        .iter()
        .enumerate()
        .map(|(i, a)| {
            let scaled = a * super::rational::pow_u32(c, n - i as u32);
            debug_assert!(scaled.is_integer());
            scaled
        })
        .collect();
    DensePoly::from_coeffs(coeffs)
}

/// Zassenhaus on a squarefree monic polynomial over Z.
fn factor_monic_integer(f: &DensePoly) -> Vec<DensePoly> {
    let n = f.deg();
    if n <= 1 {
        return vec![f.clone()];
    }

    // Pick an odd prime keeping f squarefree mod p; among a few candidates
    // prefer the one with the fewest modular factors.
    let mut best: Option<(u64, Vec<FpPoly>)> = None;
    let mut tried = 0;
    for &p in SMALL_PRIMES {
        let fp = FpPoly::from_poly(f, p);
        if fp.coeffs.len() != n + 1 {
            continue; // degree dropped (cannot happen for monic f, kept for safety)
        }
        if !fp.is_squarefree() {
            continue;
        }
        let factors = fp.factor_squarefree(p ^ 0x9e3779b97f4a7c15);
        let count = factors.len();
        if best.as_ref().map_or(true, |(_, b)| count < b.len()) {
            best = Some((p, factors));
        }
        tried += 1;
        if tried >= 3 || count == 1 {
            break;
        }
    }
    let (p, modular) = best.expect("no usable prime found for factorization");
    if modular.len() == 1 {
        return vec![f.clone()];
    }

    // Hensel-lift past twice the Mignotte bound.
    let bound = mignotte_bound(f);
    let target = &bound * 2;
    let mut modulus = BigInt::from(p);
    let mut e = 1u32;
    while modulus <= target {
        modulus = &modulus * BigInt::from(p);
        e += 1;
    }
    let lifted = hensel_lift_tree(f, &modular, p, e);
    let modulus = BigInt::from(p).pow(e);

    recombine(f, lifted, &modulus)
}

/// `sqrt(n+1) * 2^n * max |coeff|`, rounded up: bounds the coefficients of
/// any monic factor of the monic integer polynomial `f`.
fn mignotte_bound(f: &DensePoly) -> BigInt {
    let n = f.deg() as u32;
    let max_c = f
        .coeffs()
        .iter()
        .map(|c| c.numer().abs())
        .max()
        .unwrap_or_else(BigInt::zero);
    let sqrt_part = BigInt::from(((n as f64 + 1.0).sqrt().ceil()) as u64 + 1);
    sqrt_part * (BigInt::one() << n) * (max_c + BigInt::one())
}

/// Symmetric representative of `x mod m` in `(-m/2, m/2]`.
fn symmetric(x: &BigInt, m: &BigInt) -> BigInt {
    let mut r = x.mod_floor(m);
    if &r * 2 > *m {
        r -= m;
    }
    r
}

fn recombine(f: &DensePoly, lifted: Vec<ZmodPoly>, modulus: &BigInt) -> Vec<DensePoly> {
    let mut remaining = f.clone();
    let mut pool: Vec<ZmodPoly> = lifted;
    let mut out = Vec::new();

    let mut size = 1usize;
    while 2 * size <= pool.len() {
        let mut combined_any = true;
        while combined_any && 2 * size <= pool.len() {
            combined_any = false;
            let indices: Vec<usize> = (0..pool.len()).collect();
            for subset in combinations(&indices, size) {
                let mut prod = ZmodPoly::one(modulus.clone());
                for &i in &subset {
                    prod = prod.mul(&pool[i]);
                }
                let candidate = prod.to_symmetric_poly();
                let (q, r) = remaining.divrem(&candidate);
                if r.is_zero() {
                    out.push(candidate);
                    remaining = q;
                    let mut keep = Vec::new();
                    for (i, w) in pool.into_iter().enumerate() {
                        if !subset.contains(&i) {
                            keep.push(w);
                        }
                    }
                    pool = keep;
                    combined_any = true;
                    break;
                }
            }
        }
        size += 1;
    }
    if remaining.deg() > 0 {
        out.push(remaining);
    }
    out
}

fn combinations(items: &[usize], k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let n = items.len();
    if k > n {
        return out;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(idx.iter().map(|&i| items[i]).collect());
        // advance
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if idx[i] != i + n - k {
                break;
            }
            if i == 0 {
                return out;
            }
        }
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

// ---------------------------------------------------------------------------
// Arithmetic over Z/m for Hensel lifting
// ---------------------------------------------------------------------------

/// Polynomial over Z/m, coefficients reduced to [0, m).
#[derive(Clone, Debug)]
struct ZmodPoly {
    m: BigInt,
    coeffs: Vec<BigInt>,
}

impl ZmodPoly {
    fn one(m: BigInt) -> Self {
        ZmodPoly {
            m,
            coeffs: vec![BigInt::one()],
        }
    }

    fn from_poly(p: &DensePoly, m: &BigInt) -> Self {
        let coeffs = p
            .coeffs()
            .iter()
            .map(|c| {
                debug_assert!(c.is_integer());
                c.numer().mod_floor(m)
            })
            .collect();
        ZmodPoly {
            m: m.clone(),
            coeffs,
        }
        .trimmed()
    }

    fn from_fp(p: &FpPoly, m: &BigInt) -> Self {
        ZmodPoly {
            m: m.clone(),
            coeffs: p.coeffs.iter().map(|&c| BigInt::from(c)).collect(),
        }
        .trimmed()
    }

    fn trimmed(mut self) -> Self {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
        self
    }

    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn reduce_mod(&self, m: &BigInt) -> ZmodPoly {
        ZmodPoly {
            m: m.clone(),
            coeffs: self.coeffs.iter().map(|c| c.mod_floor(m)).collect(),
        }
        .trimmed()
    }

    fn add(&self, rhs: &ZmodPoly) -> ZmodPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for i in 0..n {
            let a = self.coeffs.get(i).cloned().unwrap_or_else(BigInt::zero);
            let b = rhs.coeffs.get(i).cloned().unwrap_or_else(BigInt::zero);
            coeffs.push((a + b).mod_floor(&self.m));
        }
        ZmodPoly {
            m: self.m.clone(),
            coeffs,
        }
        .trimmed()
    }

    fn sub(&self, rhs: &ZmodPoly) -> ZmodPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for i in 0..n {
            let a = self.coeffs.get(i).cloned().unwrap_or_else(BigInt::zero);
            let b = rhs.coeffs.get(i).cloned().unwrap_or_else(BigInt::zero);
            coeffs.push((a - b).mod_floor(&self.m));
        }
        ZmodPoly {
            m: self.m.clone(),
            coeffs,
        }
        .trimmed()
    }

    fn mul(&self, rhs: &ZmodPoly) -> ZmodPoly {
        if self.is_zero() || rhs.is_zero() {
            return ZmodPoly {
                m: self.m.clone(),
                coeffs: Vec::new(),
            };
        }
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        for c in coeffs.iter_mut() {
            *c = c.mod_floor(&self.m);
        }
        ZmodPoly {
            m: self.m.clone(),
            coeffs,
        }
        .trimmed()
    }

    /// Division by a monic divisor over Z/m.
    fn divrem_monic(&self, div: &ZmodPoly) -> (ZmodPoly, ZmodPoly) {
        debug_assert!(div.coeffs.last().is_some_and(One::is_one));
        let dn = div.coeffs.len();
        if self.coeffs.len() < dn {
            return (
                ZmodPoly {
                    m: self.m.clone(),
                    coeffs: Vec::new(),
                },
                self.clone(),
            );
        }
        let mut rem = self.coeffs.clone();
        let mut q = vec![BigInt::zero(); rem.len() - dn + 1];
        for i in (0..q.len()).rev() {
            let c = rem[i + dn - 1].clone();
            if c.is_zero() {
                continue;
            }
            for (j, dc) in div.coeffs.iter().enumerate() {
                let t = dc * &c;
                rem[i + j] = (&rem[i + j] - t).mod_floor(&self.m);
            }
            q[i] = c;
        }
        (
            ZmodPoly {
                m: self.m.clone(),
                coeffs: q,
            }
            .trimmed(),
            ZmodPoly {
                m: self.m.clone(),
                coeffs: rem,
            }
            .trimmed(),
        )
    }

    /// Lifts to an integer polynomial with symmetric coefficients.
    fn to_symmetric_poly(&self) -> DensePoly {
        DensePoly::from_coeffs(
            self.coeffs
                .iter()
                .map(|c| Rational::from(symmetric(c, &self.m)))
                .collect(),
        )
    }
}

/// One quadratic Hensel step: from `f = g h (mod m)` with Bezout data
/// `s g + t h = 1 (mod m)` to the same data mod `m^2`.
fn hensel_step(
    f: &ZmodPoly,
    g: &ZmodPoly,
    h: &ZmodPoly,
    s: &ZmodPoly,
    t: &ZmodPoly,
    m2: &BigInt,
) -> (ZmodPoly, ZmodPoly, ZmodPoly, ZmodPoly) {
    let f = f.reduce_mod(m2);
    let g = g.reduce_mod(m2);
    let h = h.reduce_mod(m2);
    let s = s.reduce_mod(m2);
    let t = t.reduce_mod(m2);

    let e = f.sub(&g.mul(&h));
    let (q, r) = s.mul(&e).divrem_monic(&h);
    let g_star = g.add(&t.mul(&e)).add(&q.mul(&g));
    let h_star = h.add(&r);

    let b = s.mul(&g_star).add(&t.mul(&h_star)).sub(&ZmodPoly::one(m2.clone()));
    let (c, d) = s.mul(&b).divrem_monic(&h_star);
    let s_star = s.sub(&d);
    let t_star = t.sub(&t.mul(&b)).sub(&c.mul(&g_star));
    (g_star, h_star, s_star, t_star)
}

/// Lifts the modular factorization `f = prod w_i (mod p)` to mod `p^e`.
fn hensel_lift_tree(f: &DensePoly, ws: &[FpPoly], p: u64, e: u32) -> Vec<ZmodPoly> {
    let target = BigInt::from(p).pow(e);
    if ws.len() == 1 {
        return vec![ZmodPoly::from_poly(f, &target)];
    }
    let mid = ws.len() / 2;
    let (left, right) = ws.split_at(mid);

    let g0 = left.iter().fold(FpPoly::one(p), |acc, w| acc.mul(w));
    let h0 = right.iter().fold(FpPoly::one(p), |acc, w| acc.mul(w));
    let (s0, t0) = g0.bezout(&h0);

    let bp = BigInt::from(p);
    let mut m = bp.clone();
    let mut g = ZmodPoly::from_fp(&g0, &bp);
    let mut h = ZmodPoly::from_fp(&h0, &bp);
    let mut s = ZmodPoly::from_fp(&s0, &bp);
    let mut t = ZmodPoly::from_fp(&t0, &bp);
    let f_full = ZmodPoly::from_poly(f, &target);
    while m < target {
        // m^2 may overshoot p^e; the lift stays valid mod any divisor.
        let m2 = &m * &m;
        let (g2, h2, s2, t2) = hensel_step(&f_full.reduce_mod(&m2), &g, &h, &s, &t, &m2);
        g = g2;
        h = h2;
        s = s2;
        t = t2;
        m = m2;
    }
    let g_poly = g.reduce_mod(&target).to_symmetric_poly();
    let h_poly = h.reduce_mod(&target).to_symmetric_poly();

    let mut out = hensel_lift_tree(&g_poly, left, p, e);
    out.extend(hensel_lift_tree(&h_poly, right, p, e));
    out
}

// ---------------------------------------------------------------------------
// F_p polynomial arithmetic
// ---------------------------------------------------------------------------

const SMALL_PRIMES: &[u64] = &[
    3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97,
    101, 103, 107, 109, 113, 127, 131, 137, 139, 149, 151, 157, 163, 167, 173, 179, 181, 191,
];

/// Dense polynomial over F_p, `p` an odd prime below 2^32.
#[derive(Clone, Debug, PartialEq, Eq)]
struct FpPoly {
    p: u64,
    coeffs: Vec<u64>,
}

impl FpPoly {
    fn zero(p: u64) -> Self {
        FpPoly { p, coeffs: vec![] }
    }

    fn one(p: u64) -> Self {
        FpPoly { p, coeffs: vec![1] }
    }

    fn x(p: u64) -> Self {
        FpPoly { p, coeffs: vec![0, 1] }
    }

    fn from_poly(f: &DensePoly, p: u64) -> Self {
        let bp = BigInt::from(p);
        let coeffs = f
            .coeffs()
            .iter()
            .map(|c| {
                debug_assert!(c.is_integer());
                let r = c.numer().mod_floor(&bp);
                r.to_u64().unwrap()
            })
            .collect();
        FpPoly { p, coeffs }.trimmed()
    }

    fn trimmed(mut self) -> Self {
        while self.coeffs.last() == Some(&0) {
            self.coeffs.pop();
        }
        self
    }

    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn deg(&self) -> usize {
        self.coeffs.len() - 1
    }

    fn addm(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    fn subm(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    fn mulm(&self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.p as u128) as u64
    }

    fn powm(&self, mut a: u64, mut e: u64) -> u64 {
        let mut r = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mulm(r, a);
            }
            a = self.mulm(a, a);
            e >>= 1;
        }
        r
    }

    fn invm(&self, a: u64) -> u64 {
        self.powm(a, self.p - 2)
    }

    fn sub(&self, rhs: &FpPoly) -> FpPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for i in 0..n {
            let a = self.coeffs.get(i).copied().unwrap_or(0);
            let b = rhs.coeffs.get(i).copied().unwrap_or(0);
            coeffs.push(self.subm(a, b));
        }
        FpPoly { p: self.p, coeffs }.trimmed()
    }

    fn mul(&self, rhs: &FpPoly) -> FpPoly {
        if self.is_zero() || rhs.is_zero() {
            return FpPoly::zero(self.p);
        }
        let mut coeffs = vec![0u64; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] = self.addm(coeffs[i + j], self.mulm(a, b));
            }
        }
        FpPoly { p: self.p, coeffs }.trimmed()
    }

    fn scale(&self, c: u64) -> FpPoly {
        FpPoly {
            p: self.p,
            coeffs: self.coeffs.iter().map(|&a| self.mulm(a, c)).collect(),
        }
        .trimmed()
    }

    fn monic(&self) -> FpPoly {
        match self.coeffs.last() {
            None => self.clone(),
            Some(&l) if l == 1 => self.clone(),
            Some(&l) => self.scale(self.invm(l)),
        }
    }

    fn divrem(&self, div: &FpPoly) -> (FpPoly, FpPoly) {
        assert!(!div.is_zero());
        let dn = div.coeffs.len();
        if self.coeffs.len() < dn {
            return (FpPoly::zero(self.p), self.clone());
        }
        let lead_inv = self.invm(*div.coeffs.last().unwrap());
        let mut rem = self.coeffs.clone();
        let mut q = vec![0u64; rem.len() - dn + 1];
        for i in (0..q.len()).rev() {
            let c = self.mulm(rem[i + dn - 1], lead_inv);
            if c == 0 {
                continue;
            }
            for (j, &dc) in div.coeffs.iter().enumerate() {
                rem[i + j] = self.subm(rem[i + j], self.mulm(dc, c));
            }
            q[i] = c;
        }
        (
            FpPoly { p: self.p, coeffs: q }.trimmed(),
            FpPoly { p: self.p, coeffs: rem }.trimmed(),
        )
    }

    fn rem(&self, div: &FpPoly) -> FpPoly {
        self.divrem(div).1
    }

    fn gcd(&self, rhs: &FpPoly) -> FpPoly {
        let mut a = self.clone();
        let mut b = rhs.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Extended Euclid: returns `(s, t)` with `s*self + t*rhs = 1`;
    /// panics if the inputs are not coprime.
    fn bezout(&self, rhs: &FpPoly) -> (FpPoly, FpPoly) {
        let mut r0 = self.clone();
        let mut r1 = rhs.clone();
        let mut s0 = FpPoly::one(self.p);
        let mut s1 = FpPoly::zero(self.p);
        let mut t0 = FpPoly::zero(self.p);
        let mut t1 = FpPoly::one(self.p);
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1);
            let s = s0.sub(&q.mul(&s1));
            let t = t0.sub(&q.mul(&t1));
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s;
            t0 = t1;
            t1 = t;
        }
        assert_eq!(r0.deg(), 0, "bezout of non-coprime polynomials");
        let inv = self.invm(r0.coeffs[0]);
        (s0.scale(inv), t0.scale(inv))
    }

    fn derivative(&self) -> FpPoly {
        if self.coeffs.len() <= 1 {
            return FpPoly::zero(self.p);
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| self.mulm(c, (i as u64) % self.p))
            .collect();
        FpPoly { p: self.p, coeffs }.trimmed()
    }

    fn is_squarefree(&self) -> bool {
        let d = self.derivative();
        if d.is_zero() {
            return false;
        }
        self.gcd(&d).deg() == 0
    }

    fn powmod(&self, mut e: u64, modulus: &FpPoly) -> FpPoly {
        let mut base = self.rem(modulus);
        let mut result = FpPoly::one(self.p);
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base).rem(modulus);
            }
            base = base.mul(&base).rem(modulus);
            e >>= 1;
        }
        result
    }

    /// Full factorization of a squarefree monic polynomial over F_p.
    fn factor_squarefree(&self, seed: u64) -> Vec<FpPoly> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut out = Vec::new();
        let f = self.monic();

        // distinct-degree stage
        let mut rest = f;
        let x = FpPoly::x(self.p);
        let mut h = x.clone();
        let mut k = 0usize;
        while !rest.is_zero() && rest.deg() >= 1 {
            k += 1;
            if 2 * k > rest.deg() {
                out.push((rest.clone(), rest.deg()));
                break;
            }
            h = h.powmod(self.p, &rest);
            let g = rest.gcd(&h.sub(&x));
            if g.deg() > 0 {
                out.push((g.clone(), k));
                rest = rest.divrem(&g).0;
                h = h.rem(&rest);
            }
        }

        // equal-degree stage
        let mut irreducibles = Vec::new();
        for (prod, k) in out {
            self.equal_degree_split(&prod, k, &mut rng, &mut irreducibles);
        }
        irreducibles.sort_by(|a, b| a.deg().cmp(&b.deg()).then_with(|| a.coeffs.cmp(&b.coeffs)));
        irreducibles
    }

    /// Cantor-Zassenhaus splitting of a product of degree-`k` irreducibles.
    fn equal_degree_split(
        &self,
        f: &FpPoly,
        k: usize,
        rng: &mut ChaCha8Rng,
        out: &mut Vec<FpPoly>,
    ) {
        if f.deg() == k {
            out.push(f.monic());
            return;
        }
        // exponent (p^k - 1) / 2 as a big integer power chain
        let exp = (BigInt::from(self.p).pow(k as u32) - BigInt::one()) / BigInt::from(2);
        loop {
            let deg = f.deg();
            let mut coeffs: Vec<u64> = (0..deg).map(|_| rng.gen_range(0..self.p)).collect();
            coeffs.push(1);
            let u = FpPoly { p: self.p, coeffs }.trimmed();
            let pw = u.powmod_big(&exp, f);
            let g = f.gcd(&pw.sub(&FpPoly::one(self.p)));
            if g.deg() > 0 && g.deg() < f.deg() {
                let (q, _) = f.divrem(&g);
                self.equal_degree_split(&g, k, rng, out);
                self.equal_degree_split(&q, k, rng, out);
                return;
            }
        }
    }

    fn powmod_big(&self, e: &BigInt, modulus: &FpPoly) -> FpPoly {
        let mut result = FpPoly::one(self.p);
        let mut base = self.rem(modulus);
        let (_, bytes) = e.to_bytes_le();
        let bits = e.bits();
        for i in 0..bits {
            let byte = bytes[(i / 8) as usize];
            if (byte >> (i % 8)) & 1 == 1 {
                result = result.mul(&base).rem(modulus);
            }
            base = base.mul(&base).rem(modulus);
        }
        debug_assert_ne!(e.sign(), Sign::Minus);
        result
    }
}

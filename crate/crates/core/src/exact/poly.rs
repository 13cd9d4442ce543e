//! Dense univariate polynomials over the exact rationals.
//!
//! Coefficients are stored by ascending degree with no trailing zeros, so the
//! zero polynomial is the empty vector. GCDs and resultants go through the
//! primitive / subresultant remainder sequences over the integers to avoid
//! the coefficient explosion of naive Euclid over Q.

use super::rational::Rational;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::fmt;

/// Dense polynomial in one variable `T` over Q.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct DensePoly {
    coeffs: Vec<Rational>,
}

impl DensePoly {
    pub fn zero() -> Self {
        DensePoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        DensePoly::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        if c.is_zero() {
            DensePoly::zero()
        } else {
            DensePoly { coeffs: vec![c] }
        }
    }

    /// The monomial `T`.
    pub fn var() -> Self {
        DensePoly {
            coeffs: vec![Rational::zero(), Rational::one()],
        }
    }

    /// Builds from ascending-degree coefficients, trimming trailing zeros.
    pub fn from_coeffs(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        DensePoly { coeffs }
    }

    pub fn from_i64s(cs: &[i64]) -> Self {
        DensePoly::from_coeffs(cs.iter().map(|&c| Rational::from(BigInt::from(c))).collect())
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree of a nonzero polynomial (panics on zero).
    pub fn deg(&self) -> usize {
        self.degree().expect("degree of zero polynomial")
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(One::is_one)
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn derivative(&self) -> DensePoly {
        if self.coeffs.len() <= 1 {
            return DensePoly::zero();
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * Rational::from(BigInt::from(i)))
            .collect();
        DensePoly::from_coeffs(coeffs)
    }

    pub fn neg(&self) -> DensePoly {
        DensePoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn add(&self, rhs: &DensePoly) -> DensePoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for i in 0..n {
            coeffs.push(self.coeff(i) + rhs.coeff(i));
        }
        DensePoly::from_coeffs(coeffs)
    }

    pub fn sub(&self, rhs: &DensePoly) -> DensePoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for i in 0..n {
            coeffs.push(self.coeff(i) - rhs.coeff(i));
        }
        DensePoly::from_coeffs(coeffs)
    }

    pub fn mul(&self, rhs: &DensePoly) -> DensePoly {
        if self.is_zero() || rhs.is_zero() {
            return DensePoly::zero();
        }
        // Convolve over the integers after clearing denominators; reducing
        // one rational per output coefficient beats one gcd per product term.
        let (da, a) = IntPoly::from_rational_scaled(self);
        let (db, b) = IntPoly::from_rational_scaled(rhs);
        let mut coeffs = vec![BigInt::zero(); a.coeffs.len() + b.coeffs.len() - 1];
        for (i, ai) in a.coeffs.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            for (j, bj) in b.coeffs.iter().enumerate() {
                coeffs[i + j] += ai * bj;
            }
        }
        let den = da * db;
        DensePoly::from_coeffs(
            coeffs
                .into_iter()
                .map(|c| Rational::new(c, den.clone()))
                .collect(),
        )
    }

    pub fn scale(&self, c: &Rational) -> DensePoly {
        if c.is_zero() {
            return DensePoly::zero();
        }
        DensePoly {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// `self^k` by repeated squaring.
    pub fn pow(&self, k: u32) -> DensePoly {
        let mut result = DensePoly::one();
        let mut base = self.clone();
        let mut e = k;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        result
    }

    /// Euclidean division: `self = q * div + r` with `deg r < deg div`.
    pub fn divrem(&self, div: &DensePoly) -> (DensePoly, DensePoly) {
        assert!(!div.is_zero(), "division by zero polynomial");
        if self.coeffs.len() < div.coeffs.len() {
            return (DensePoly::zero(), self.clone());
        }
        let mut rem = self.coeffs.clone();
        let dn = div.coeffs.len();
        let lead = div.coeffs.last().unwrap();
        let mut q = vec![Rational::zero(); rem.len() - dn + 1];
        for i in (0..q.len()).rev() {
            let c = &rem[i + dn - 1] / lead;
            if c.is_zero() {
                continue;
            }
            for (j, dc) in div.coeffs.iter().enumerate() {
                let t = dc * &c;
                rem[i + j] -= t;
            }
            q[i] = c;
        }
        (DensePoly::from_coeffs(q), DensePoly::from_coeffs(rem))
    }

    /// Exact division; panics if the remainder is nonzero.
    pub fn div_exact(&self, div: &DensePoly) -> DensePoly {
        let (q, r) = self.divrem(div);
        assert!(r.is_zero(), "division was not exact");
        q
    }

    /// Monic normalization (zero stays zero).
    pub fn monic(&self) -> DensePoly {
        match self.leading() {
            None => DensePoly::zero(),
            Some(l) if l.is_one() => self.clone(),
            Some(l) => {
                let inv = Rational::one() / l;
                self.scale(&inv)
            }
        }
    }

    /// Monic GCD via the primitive remainder sequence over Z.
    pub fn gcd(&self, other: &DensePoly) -> DensePoly {
        if self.is_zero() {
            return other.monic();
        }
        if other.is_zero() {
            return self.monic();
        }
        let a = IntPoly::from_rational(self).primitive();
        let b = IntPoly::from_rational(other).primitive();
        let g = IntPoly::gcd_primitive(a, b);
        g.to_rational().monic()
    }

    /// The squarefree part `self / gcd(self, self')`, monic.
    pub fn squarefree_part(&self) -> DensePoly {
        assert!(!self.is_zero(), "squarefree part of zero polynomial");
        if self.deg() == 0 {
            return DensePoly::one();
        }
        let g = self.gcd(&self.derivative());
        self.div_exact(&g).monic()
    }

    /// Yun's squarefree decomposition: returns `(g_i, i)` with
    /// `self = lc * prod g_i^i`, each `g_i` monic squarefree, pairwise coprime.
    pub fn squarefree_decomposition(&self) -> Vec<(DensePoly, u32)> {
        assert!(!self.is_zero());
        let f = self.monic();
        if f.deg() == 0 {
            return Vec::new();
        }
        let fp = f.derivative();
        let mut a = f.gcd(&fp);
        let mut b = f.div_exact(&a);
        let mut c = fp.div_exact(&a);
        let mut out = Vec::new();
        let mut i = 1u32;
        loop {
            let d = c.sub(&b.derivative());
            if d.is_zero() {
                if b.deg() > 0 {
                    out.push((b.monic(), i));
                }
                break;
            }
            a = b.gcd(&d);
            if a.deg() > 0 {
                out.push((a.monic(), i));
            }
            b = b.div_exact(&a);
            c = d.div_exact(&a);
            i += 1;
            if b.deg() == 0 {
                break;
            }
        }
        out
    }

    /// Resultant of `self` and `other` over Q.
    pub fn resultant(&self, other: &DensePoly) -> Rational {
        if self.is_zero() || other.is_zero() {
            return Rational::zero();
        }
        let (fa, a) = IntPoly::from_rational_scaled(self);
        let (fb, b) = IntPoly::from_rational_scaled(other);
        // res(f, g) with f = A/fa, g = B/fb:
        // res(f, g) = res(A, B) / (fa^deg g * fb^deg f)
        let r = IntPoly::resultant(&a, &b);
        let da = a.deg() as u32;
        let db = b.deg() as u32;
        let denom = super::rational::pow_u32(&Rational::from(fa), db)
            * super::rational::pow_u32(&Rational::from(fb), da);
        Rational::from(r) / denom
    }

    /// Discriminant: `(-1)^(n(n-1)/2) res(f, f') / lc(f)`.
    pub fn discriminant(&self) -> Rational {
        let n = self.deg();
        assert!(n >= 1);
        let r = self.resultant(&self.derivative());
        let sign = if (n * (n - 1) / 2) % 2 == 0 {
            Rational::one()
        } else {
            -Rational::one()
        };
        sign * r / self.leading().unwrap()
    }

    /// Substitutes `T -> c*T`, i.e. returns `self(c T)`.
    pub fn compose_scale(&self, c: &Rational) -> DensePoly {
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        let mut ck = Rational::one();
        for a in &self.coeffs {
            coeffs.push(a * &ck);
            ck *= c;
        }
        DensePoly::from_coeffs(coeffs)
    }

    /// Substitutes `T -> T + c`.
    pub fn compose_shift(&self, c: &Rational) -> DensePoly {
        // Horner on (T + c)
        let mut acc = DensePoly::zero();
        let shift = DensePoly::from_coeffs(vec![c.clone(), Rational::one()]);
        for a in self.coeffs.iter().rev() {
            acc = acc.mul(&shift).add(&DensePoly::constant(a.clone()));
        }
        acc
    }
}

impl fmt::Debug for DensePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "DensePoly({})", self)
    }
}

impl fmt::Display for DensePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if i == 0 {
                write!(f, "{mag}")?;
            } else {
                if !mag.is_one() {
                    write!(f, "{mag}*")?;
                }
                if i == 1 {
                    write!(f, "T")?;
                } else {
                    write!(f, "T^{i}")?;
                }
            }
        }
        Ok(())
    }
}

/// Integer polynomial used internally by the PRS routines.
#[derive(Clone, Debug, PartialEq, Eq)]
struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    fn trim(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn deg(&self) -> usize {
        self.coeffs.len().checked_sub(1).expect("degree of zero")
    }

    fn lc(&self) -> &BigInt {
        self.coeffs.last().expect("lc of zero")
    }

    /// Clears denominators, ignoring the overall scale.
    fn from_rational(p: &DensePoly) -> IntPoly {
        Self::from_rational_scaled(p).1
    }

    /// Returns `(D, A)` with `A = D * p` integral, `D` the lcm of denominators.
    fn from_rational_scaled(p: &DensePoly) -> (BigInt, IntPoly) {
        let mut d = BigInt::one();
        for c in p.coeffs() {
            d = d.lcm(c.denom());
        }
        let coeffs = p
            .coeffs()
            .iter()
            .map(|c| c.numer() * (&d / c.denom()))
            .collect();
        (d, IntPoly::trim(coeffs))
    }

    fn to_rational(&self) -> DensePoly {
        DensePoly::from_coeffs(self.coeffs.iter().cloned().map(Rational::from).collect())
    }

    fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in &self.coeffs {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    fn primitive(&self) -> IntPoly {
        if self.is_zero() {
            return self.clone();
        }
        let c = self.content();
        IntPoly {
            coeffs: self.coeffs.iter().map(|a| a / &c).collect(),
        }
    }

    /// Pseudo-remainder: exactly `lc(b)^(da-db+1) * a mod b`, as the
    /// subresultant recurrences require.
    fn pseudo_rem(&self, b: &IntPoly) -> IntPoly {
        let da = self.deg();
        let db = b.deg();
        let lead = b.lc().clone();
        let needed = (da - db + 1) as u32;
        let mut applied = 0u32;
        let mut rem = self.coeffs.clone();
        while rem.len() > db {
            let ra = rem.last().unwrap().clone();
            if ra.is_zero() {
                rem.pop();
                continue;
            }
            let shift = rem.len() - 1 - db;
            for c in rem.iter_mut() {
                *c *= &lead;
            }
            applied += 1;
            for (j, bc) in b.coeffs.iter().enumerate() {
                let t = bc * &ra;
                rem[shift + j] -= t;
            }
            while rem.last().is_some_and(Zero::is_zero) {
                rem.pop();
            }
        }
        if applied < needed {
            let factor = lead.pow(needed - applied);
            for c in rem.iter_mut() {
                *c *= &factor;
            }
        }
        IntPoly::trim(rem)
    }

    /// GCD of primitive polynomials via the primitive PRS; result primitive.
    fn gcd_primitive(mut a: IntPoly, mut b: IntPoly) -> IntPoly {
        if a.is_zero() {
            return b;
        }
        if b.is_zero() {
            return a;
        }
        if a.deg() < b.deg() {
            std::mem::swap(&mut a, &mut b);
        }
        loop {
            let r = a.pseudo_rem(&b);
            if r.is_zero() {
                return b;
            }
            if r.deg() == 0 {
                return IntPoly { coeffs: vec![BigInt::one()] };
            }
            a = b;
            b = r.primitive();
        }
    }

    /// Resultant by the subresultant PRS (Cohen, Algorithm 3.3.7).
    fn resultant(fa: &IntPoly, fb: &IntPoly) -> BigInt {
        if fa.is_zero() || fb.is_zero() {
            return BigInt::zero();
        }
        let mut s = BigInt::one();
        let (mut a, mut b);
        if fa.deg() >= fb.deg() {
            a = fa.clone();
            b = fb.clone();
        } else {
            a = fb.clone();
            b = fa.clone();
            if fa.deg() % 2 == 1 && fb.deg() % 2 == 1 {
                s = -s;
            }
        }
        // pull out contents: res(ca*A, cb*B) = ca^db * cb^da * res(A, B)
        let ca = a.content();
        let cb = b.content();
        let acc = ca.pow(b.deg() as u32) * cb.pow(a.deg() as u32);
        a = a.primitive();
        b = b.primitive();

        if a.deg() == 0 {
            return s * acc;
        }
        if b.deg() == 0 {
            return s * acc * b.lc().pow(a.deg() as u32);
        }

        let mut g = BigInt::one();
        let mut h = BigInt::one();
        loop {
            let da = a.deg();
            let db = b.deg();
            let delta = (da - db) as u32;
            if da % 2 == 1 && db % 2 == 1 {
                s = -s;
            }
            let r = a.pseudo_rem(&b);
            a = b;
            let divisor = &g * h.pow(delta);
            b = IntPoly::trim(r.coeffs.iter().map(|c| c / &divisor).collect());
            g = a.lc().clone();
            h = if delta == 0 {
                h
            } else {
                g.pow(delta) / h.pow(delta - 1)
            };
            if b.is_zero() {
                return BigInt::zero();
            }
            if b.deg() == 0 {
                let da = a.deg() as u32;
                let res_pp = b.lc().pow(da) / h.pow(da.saturating_sub(1));
                return s * acc * res_pp;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(cs: &[i64]) -> DensePoly {
        DensePoly::from_i64s(cs)
    }

    #[test]
    fn arithmetic_roundtrip() {
        let f = p(&[1, 2, 3]); // 3T^2 + 2T + 1
        let g = p(&[-1, 1]); // T - 1
        let fg = f.mul(&g);
        let (q, r) = fg.divrem(&g);
        assert_eq!(q, f);
        assert!(r.is_zero());
        let (q2, r2) = fg.add(&p(&[5])).divrem(&g);
        assert_eq!(q2, f);
        assert_eq!(r2, p(&[5]));
    }

    #[test]
    fn gcd_of_products() {
        let a = p(&[1, 1]); // T + 1
        let b = p(&[2, 1]); // T + 2
        let c = p(&[3, 1]); // T + 3
        let f = a.mul(&b).mul(&a); // (T+1)^2 (T+2)
        let g = a.mul(&c); // (T+1)(T+3)
        assert_eq!(f.gcd(&g), a.monic());
        // coprime
        assert_eq!(b.gcd(&c), DensePoly::one());
        // gcd with zero
        assert_eq!(f.gcd(&DensePoly::zero()), f.monic());
    }

    #[test]
    fn squarefree_part_examples() {
        // T^2 -> T
        assert_eq!(p(&[0, 0, 1]).squarefree_part(), p(&[0, 1]));
        // (T+1)(T+2) stays itself (already monic here)
        let f = p(&[1, 1]).mul(&p(&[2, 1]));
        assert_eq!(f.squarefree_part(), f);
        // T^4 + 2T^3 + T^2 -> T^2 + T
        assert_eq!(p(&[0, 0, 1, 2, 1]).squarefree_part(), p(&[0, 1, 1]));
    }

    #[test]
    fn yun_decomposition() {
        // T^2 (T+1)^3
        let f = p(&[0, 1]).pow(2).mul(&p(&[1, 1]).pow(3));
        let dec = f.squarefree_decomposition();
        assert_eq!(dec, vec![(p(&[0, 1]), 2), (p(&[1, 1]), 3)]);
        let rebuilt = dec
            .iter()
            .fold(DensePoly::one(), |acc, (g, m)| acc.mul(&g.pow(*m)));
        assert_eq!(rebuilt, f);
    }

    #[test]
    fn resultant_and_discriminant() {
        // res(T^2 - 1, T - 2) = (2^2 - 1) = 3
        let r = p(&[-1, 0, 1]).resultant(&p(&[-2, 1]));
        assert_eq!(r, Rational::from(BigInt::from(3)));
        // disc(T^2 + bT + c) = b^2 - 4c, with rational coefficients
        let f = DensePoly::from_coeffs(vec![
            Rational::new(1.into(), 4096.into()),
            Rational::new(33.into(), 32.into()),
            Rational::one(),
        ]);
        let d = f.discriminant();
        // (33/32)^2 - 4/4096 = 1089/1024 - 1/1024 = 1088/1024 = 17/16
        assert_eq!(d, Rational::new(17.into(), 16.into()));
        // disc of a poly with a double root vanishes
        let g = p(&[1, 1]).pow(2);
        assert!(g.discriminant().is_zero());
    }

    #[test]
    fn composition_helpers() {
        let f = p(&[1, 2, 1]); // (T+1)^2
        let shifted = f.compose_shift(&Rational::from(BigInt::from(-1))); // T^2
        assert_eq!(shifted, p(&[0, 0, 1]));
        let scaled = f.compose_scale(&Rational::from(BigInt::from(2)));
        assert_eq!(scaled.eval(&Rational::from(BigInt::from(3))), f.eval(&Rational::from(BigInt::from(6))));
    }

    #[test]
    fn display_form() {
        assert_eq!(p(&[16, 9, 1]).to_string(), "T^2 + 9*T + 16");
        assert_eq!(p(&[0, -1, 0, 2]).to_string(), "2*T^3 - T");
        assert_eq!(DensePoly::zero().to_string(), "0");
    }
}

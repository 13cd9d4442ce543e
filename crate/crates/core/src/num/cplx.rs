//! Complex arithmetic at configurable precision: exact-endpoint points for
//! root finding and rectangle enclosures for certified orbit iteration.

use astro_float::{BigFloat, RoundingMode};

use super::interval::RInterval;
use super::real::{bigfloat_from_rational, bigfloat_to_f64};
use crate::exact::rational::Rational;

const NEAREST: RoundingMode = RoundingMode::ToEven;

/// Complex point with big-float components (values are exact dyadics; the
/// arithmetic rounds to the stated precision).
#[derive(Debug, Clone)]
pub struct CPoint {
    pub re: BigFloat,
    pub im: BigFloat,
}

impl CPoint {
    pub fn new(re: BigFloat, im: BigFloat) -> Self {
        CPoint { re, im }
    }

    pub fn zero(prec: usize) -> Self {
        CPoint {
            re: BigFloat::from_i8(0, prec),
            im: BigFloat::from_i8(0, prec),
        }
    }

    pub fn from_f64(re: f64, im: f64, prec: usize) -> Self {
        CPoint {
            re: BigFloat::from_f64(re, prec),
            im: BigFloat::from_f64(im, prec),
        }
    }

    pub fn from_rational(re: &Rational, im: &Rational, prec: usize) -> Self {
        CPoint {
            re: bigfloat_from_rational(re, prec, NEAREST),
            im: bigfloat_from_rational(im, prec, NEAREST),
        }
    }

    pub fn to_f64_pair(&self) -> (f64, f64) {
        (bigfloat_to_f64(&self.re), bigfloat_to_f64(&self.im))
    }

    pub fn is_finite(&self) -> bool {
        !(self.re.is_nan() || self.re.is_inf() || self.im.is_nan() || self.im.is_inf())
    }

    pub fn add(&self, rhs: &CPoint, prec: usize) -> CPoint {
        CPoint {
            re: self.re.add(&rhs.re, prec, NEAREST),
            im: self.im.add(&rhs.im, prec, NEAREST),
        }
    }

    pub fn sub(&self, rhs: &CPoint, prec: usize) -> CPoint {
        CPoint {
            re: self.re.sub(&rhs.re, prec, NEAREST),
            im: self.im.sub(&rhs.im, prec, NEAREST),
        }
    }

    pub fn mul(&self, rhs: &CPoint, prec: usize) -> CPoint {
        let ac = self.re.mul(&rhs.re, prec, NEAREST);
        let bd = self.im.mul(&rhs.im, prec, NEAREST);
        let ad = self.re.mul(&rhs.im, prec, NEAREST);
        let bc = self.im.mul(&rhs.re, prec, NEAREST);
        CPoint {
            re: ac.sub(&bd, prec, NEAREST),
            im: ad.add(&bc, prec, NEAREST),
        }
    }

    pub fn div(&self, rhs: &CPoint, prec: usize) -> CPoint {
        let den = rhs.norm_sq(prec);
        let ac = self.re.mul(&rhs.re, prec, NEAREST);
        let bd = self.im.mul(&rhs.im, prec, NEAREST);
        let bc = self.im.mul(&rhs.re, prec, NEAREST);
        let ad = self.re.mul(&rhs.im, prec, NEAREST);
        CPoint {
            re: ac.add(&bd, prec, NEAREST).div(&den, prec, NEAREST),
            im: bc.sub(&ad, prec, NEAREST).div(&den, prec, NEAREST),
        }
    }

    pub fn neg(&self) -> CPoint {
        CPoint {
            re: self.re.neg(),
            im: self.im.neg(),
        }
    }

    pub fn scale(&self, c: &BigFloat, prec: usize) -> CPoint {
        CPoint {
            re: self.re.mul(c, prec, NEAREST),
            im: self.im.mul(c, prec, NEAREST),
        }
    }

    pub fn norm_sq(&self, prec: usize) -> BigFloat {
        let rr = self.re.mul(&self.re, prec, NEAREST);
        let ii = self.im.mul(&self.im, prec, NEAREST);
        rr.add(&ii, prec, NEAREST)
    }

    pub fn abs(&self, prec: usize) -> BigFloat {
        self.norm_sq(prec).sqrt(prec, NEAREST)
    }

    /// Euclidean distance to another point.
    pub fn dist(&self, rhs: &CPoint, prec: usize) -> BigFloat {
        self.sub(rhs, prec).abs(prec)
    }

    /// `self^k` by repeated squaring, `k >= 1`.
    pub fn powi(&self, k: u32, prec: usize) -> CPoint {
        debug_assert!(k >= 1);
        let mut result: Option<CPoint> = None;
        let mut base = self.clone();
        let mut e = k;
        while e > 0 {
            if e & 1 == 1 {
                result = Some(match result {
                    None => base.clone(),
                    Some(r) => r.mul(&base, prec),
                });
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base, prec);
            }
        }
        result.unwrap()
    }
}

/// Axis-aligned complex rectangle: certified enclosure of a complex value.
#[derive(Debug, Clone)]
pub struct CBox {
    pub re: RInterval,
    pub im: RInterval,
}

impl CBox {
    pub fn point(p: &CPoint) -> Self {
        CBox {
            re: RInterval::point(p.re.clone()),
            im: RInterval::point(p.im.clone()),
        }
    }

    pub fn from_rational(re: &Rational, im: &Rational, prec: usize) -> Self {
        CBox {
            re: RInterval::from_rational(re, prec),
            im: RInterval::from_rational(im, prec),
        }
    }

    pub fn add(&self, rhs: &CBox, prec: usize) -> CBox {
        CBox {
            re: self.re.add(&rhs.re, prec),
            im: self.im.add(&rhs.im, prec),
        }
    }

    pub fn mul(&self, rhs: &CBox, prec: usize) -> CBox {
        let ac = self.re.mul(&rhs.re, prec);
        let bd = self.im.mul(&rhs.im, prec);
        let ad = self.re.mul(&rhs.im, prec);
        let bc = self.im.mul(&rhs.re, prec);
        CBox {
            re: ac.sub(&bd, prec),
            im: ad.add(&bc, prec),
        }
    }

    /// `z^k` by repeated multiplication (k is the family degree, tiny).
    pub fn powi(&self, k: u32, prec: usize) -> CBox {
        debug_assert!(k >= 1);
        let mut out = self.clone();
        for _ in 1..k {
            out = out.mul(self, prec);
        }
        out
    }

    /// Interval of `|z|^2`.
    pub fn norm_sq(&self, prec: usize) -> RInterval {
        self.re.sqr(prec).add(&self.im.sqr(prec), prec)
    }

    /// Interval of `|z|`.
    pub fn norm(&self, prec: usize) -> RInterval {
        self.norm_sq(prec).sqrt(prec)
    }

    /// Width of the wider side (diagnostic for precision escalation).
    pub fn max_width(&self, prec: usize) -> BigFloat {
        self.re.width(prec).max(&self.im.width(prec))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn point_arithmetic() {
        let p = 128;
        let a = CPoint::from_f64(1.0, 2.0, p);
        let b = CPoint::from_f64(3.0, -1.0, p);
        let c = a.mul(&b, p);
        let (re, im) = c.to_f64_pair();
        assert!((re - 5.0).abs() < 1e-30 && (im - 5.0).abs() < 1e-30);
        let q = c.div(&b, p);
        let (re, im) = q.to_f64_pair();
        assert!((re - 1.0).abs() < 1e-25 && (im - 2.0).abs() < 1e-25);
    }

    #[test]
    fn powers_match_repeated_mul() {
        let p = 128;
        let z = CPoint::from_f64(0.7, -1.3, p);
        let z5 = z.powi(5, p);
        let mut w = z.clone();
        for _ in 1..5 {
            w = w.mul(&z, p);
        }
        let (a, b) = z5.to_f64_pair();
        let (c, d) = w.to_f64_pair();
        assert!((a - c).abs() < 1e-14 && (b - d).abs() < 1e-14);
    }

    #[test]
    fn box_norm_encloses() {
        let p = 128;
        let z = CBox::from_rational(
            &Rational::new(3.into(), 1.into()),
            &Rational::new(4.into(), 1.into()),
            p,
        );
        let n = z.norm(p);
        let g = n.to_green();
        assert!(g.lo <= 5.0 && 5.0 <= g.hi);
        assert!(g.width() < 1e-14);
    }

    #[test]
    fn box_iteration_keeps_enclosure() {
        // iterate z -> z^2 + t and check the true f64 orbit stays inside
        let p = 192;
        let t = CBox::from_rational(&Rational::new(1.into(), 4.into()), &Rational::new(0.into(), 1.into()), p);
        let mut z = t.clone();
        let (mut zr, mut zi) = (0.25f64, 0.0f64);
        for _ in 0..20 {
            z = z.powi(2, p).add(&t, p);
            let (nr, ni) = (zr * zr - zi * zi + 0.25, 2.0 * zr * zi);
            zr = nr;
            zi = ni;
        }
        let re = z.re.to_green();
        let im = z.im.to_green();
        assert!(re.lo <= zr + 1e-12 && zr - 1e-12 <= re.hi);
        assert!(im.lo <= zi + 1e-12 && zi - 1e-12 <= im.hi);
    }
}

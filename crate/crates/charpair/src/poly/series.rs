//! Polynomials truncated at a total degree, used as finite-precision
//! power series. A series of order `N` carries exactly the terms of total
//! degree below `N`; operations truncate their results and propagate the
//! weakest precision of their inputs.

use crate::algebra::{nth_root, Ring, Scalar};
use crate::error::{Error, Result};

use super::Polynomial;

#[derive(Clone, PartialEq, Eq)]
pub struct TruncatedSeries {
    poly: Polynomial,
    order: u32,
}

impl TruncatedSeries {
    pub fn new(poly: &Polynomial, order: u32) -> TruncatedSeries {
        assert!(order > 0, "series order must be positive");
        TruncatedSeries {
            poly: truncate_poly(poly, order),
            order,
        }
    }

    pub fn poly(&self) -> &Polynomial {
        &self.poly
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn truncate(&self, order: u32) -> TruncatedSeries {
        assert!(order <= self.order, "cannot gain precision by truncation");
        TruncatedSeries::new(&self.poly, order)
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    pub fn constant_term(&self) -> Scalar {
        self.poly.constant_term()
    }

    pub fn add(&self, other: &TruncatedSeries) -> TruncatedSeries {
        TruncatedSeries::new(&self.poly.add(&other.poly), self.order.min(other.order))
    }

    pub fn sub(&self, other: &TruncatedSeries) -> TruncatedSeries {
        TruncatedSeries::new(&self.poly.sub(&other.poly), self.order.min(other.order))
    }

    pub fn mul(&self, other: &TruncatedSeries) -> TruncatedSeries {
        TruncatedSeries::new(&self.poly.mul(&other.poly), self.order.min(other.order))
    }

    pub fn mul_poly(&self, other: &Polynomial) -> TruncatedSeries {
        TruncatedSeries::new(&self.poly.mul(other), self.order)
    }

    /// The inverse series, by the geometric expansion around the unit
    /// constant term.
    pub fn invert(&self) -> Result<TruncatedSeries> {
        let c0 = self.constant_term();
        let c0_inv = c0
            .inv()
            .map_err(|_| Error::arithmetic("series with non-unit constant term"))?;
        let vars = self.poly.vars();
        let ring = self.poly.ring();
        let one = Polynomial::one(vars, ring);
        // s = 1 - self * c0^{-1} has positive lowest degree, so the
        // geometric sum stabilizes within `order` rounds.
        let s = TruncatedSeries::new(&one.sub(&self.poly.mul_scalar(&c0_inv)), self.order);
        let mut acc = TruncatedSeries::new(&one, self.order);
        for _ in 0..self.order {
            acc = acc.mul(&s).add(&TruncatedSeries::new(&one, self.order));
        }
        let result = TruncatedSeries::new(&acc.poly.mul_scalar(&c0_inv), self.order);
        debug_assert!(result.mul(self).poly == one);
        Ok(result)
    }

    /// Composition: substitutes one series for each ambient variable. The
    /// assignments must have zero constant term, which keeps every
    /// coefficient below the truncation order exact.
    pub fn substitute(&self, assignments: &[TruncatedSeries]) -> TruncatedSeries {
        assert_eq!(assignments.len(), self.poly.vars().len());
        let mut order = self.order;
        for a in assignments {
            assert!(
                a.constant_term().is_zero(),
                "series composition needs assignments without constant term"
            );
            order = order.min(a.order);
        }
        let polys: Vec<Polynomial> = assignments.iter().map(|a| a.poly.clone()).collect();
        TruncatedSeries::new(&self.poly.substitute(&polys), order)
    }

    /// An `n`-th root with unit constant term context: Newton iteration,
    /// valid when `n` is invertible in the coefficient field. The constant
    /// term of the result is the canonical root of the constant term.
    pub fn root(&self, n: u64) -> Result<TruncatedSeries> {
        let ring = self.poly.ring().clone();
        let Ring::Fq(field) = &ring else {
            return Err(Error::data("series roots are implemented over finite fields"));
        };
        if n % field.characteristic() == 0 {
            return Err(Error::arithmetic(
                "root index divisible by the characteristic",
            ));
        }
        let c0 = self.constant_term();
        let Scalar::Fq(c0) = &c0 else { unreachable!() };
        if c0.is_zero() {
            return Err(Error::arithmetic("series root needs a unit constant term"));
        }
        let y0 = nth_root(c0, n)?;
        let vars = self.poly.vars();
        let n_scalar = ring.from_i64(n as i64);
        let mut h = TruncatedSeries::new(
            &Polynomial::constant(vars, &ring, Scalar::Fq(y0)),
            1,
        );
        let mut prec = 1u32;
        while prec < self.order {
            prec = (prec * 2).min(self.order);
            let hp = TruncatedSeries::new(&h.poly, prec);
            let target = self.truncate(prec);
            // h <- h - (h^n - f) / (n h^(n-1))
            let mut hn1 = TruncatedSeries::new(&Polynomial::one(vars, &ring), prec);
            for _ in 0..n - 1 {
                hn1 = hn1.mul(&hp);
            }
            let hn = hn1.mul(&hp);
            let denom = TruncatedSeries::new(&hn1.poly.mul_scalar(&n_scalar), prec);
            let correction = hn.sub(&target).mul(&denom.invert()?);
            h = hp.sub(&correction);
        }
        let result = TruncatedSeries::new(&h.poly, self.order);
        // Newton convergence is quadratic, so this must already hold.
        let mut check = TruncatedSeries::new(&Polynomial::one(vars, &ring), self.order);
        for _ in 0..n {
            check = check.mul(&result);
        }
        if check != *self {
            return Err(Error::Precision(format!(
                "series root verification failed at order {}",
                self.order
            )));
        }
        Ok(result)
    }
}

impl std::fmt::Debug for TruncatedSeries {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({}) + O(deg {})", self.poly, self.order)
    }
}

fn truncate_poly(poly: &Polynomial, order: u32) -> Polynomial {
    let terms = poly
        .terms()
        .filter(|(m, _)| m.degree() < order)
        .map(|(m, c)| (m.clone(), c.clone()))
        .collect();
    Polynomial::from_map(poly.vars(), poly.ring(), terms)
}

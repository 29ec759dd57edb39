//! Dense univariate polynomials.
//!
//! The coefficient vector is indexed by degree and kept trimmed, so the
//! zero polynomial is the empty vector. Division, gcd, and root finding
//! require the coefficient ring to be a field.

use std::fmt;
use std::sync::Arc;

use crate::algebra::{field_elements, FqField, Ring, Scalar};
use crate::error::{Error, Result};

use super::Polynomial;

#[derive(Clone, PartialEq, Eq)]
pub struct UniPoly {
    ring: Ring,
    c: Vec<Scalar>,
}

impl UniPoly {
    pub fn zero(ring: &Ring) -> UniPoly {
        UniPoly {
            ring: ring.clone(),
            c: Vec::new(),
        }
    }

    pub fn constant(ring: &Ring, c: Scalar) -> UniPoly {
        let mut p = UniPoly {
            ring: ring.clone(),
            c: vec![c],
        };
        p.trim();
        p
    }

    pub fn one(ring: &Ring) -> UniPoly {
        Self::constant(ring, ring.one())
    }

    pub fn var(ring: &Ring) -> UniPoly {
        UniPoly {
            ring: ring.clone(),
            c: vec![ring.zero(), ring.one()],
        }
    }

    pub fn from_coeffs(ring: &Ring, c: Vec<Scalar>) -> UniPoly {
        let mut p = UniPoly {
            ring: ring.clone(),
            c,
        };
        p.trim();
        p
    }

    /// Converts a polynomial in a single-variable ambient.
    pub fn from_polynomial(poly: &Polynomial) -> Result<UniPoly> {
        if poly.vars().len() != 1 {
            return Err(Error::data("expected a univariate polynomial"));
        }
        let deg = poly.total_degree().map(|d| d as usize);
        let mut c = vec![poly.ring().zero(); deg.map_or(0, |d| d + 1)];
        for (m, s) in poly.terms() {
            c[m.exps()[0] as usize] = s.clone();
        }
        Ok(UniPoly::from_coeffs(poly.ring(), c))
    }

    /// Collects the coefficients of `var`, treating all other variables as
    /// belonging to the coefficient polynomials. Used for eliminants.
    pub fn coefficients_in(poly: &Polynomial, var: usize) -> Vec<Polynomial> {
        let deg = poly.degree_in(var) as usize;
        let mut out = vec![Polynomial::zero(poly.vars(), poly.ring()); deg + 1];
        for (m, c) in poly.terms() {
            let e = m.exps()[var] as usize;
            let mut exps = m.exps().to_vec();
            exps[var] = 0;
            let t = Polynomial::term(
                poly.vars(),
                poly.ring(),
                super::Monomial::from_exps(exps),
                c.clone(),
            );
            out[e] = out[e].add(&t);
        }
        out
    }

    fn trim(&mut self) {
        while self.c.last().is_some_and(Scalar::is_zero) {
            self.c.pop();
        }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    /// Degree, with `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    pub fn coeff(&self, i: usize) -> Scalar {
        self.c.get(i).cloned().unwrap_or_else(|| self.ring.zero())
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.c
    }

    pub fn leading_coeff(&self) -> Option<&Scalar> {
        self.c.last()
    }

    pub fn add(&self, other: &UniPoly) -> UniPoly {
        assert_eq!(self.ring, other.ring);
        let n = self.c.len().max(other.c.len());
        let mut c = Vec::with_capacity(n);
        for i in 0..n {
            c.push(self.coeff(i).add(&other.coeff(i)));
        }
        UniPoly::from_coeffs(&self.ring, c)
    }

    pub fn neg(&self) -> UniPoly {
        UniPoly {
            ring: self.ring.clone(),
            c: self.c.iter().map(Scalar::neg).collect(),
        }
    }

    pub fn sub(&self, other: &UniPoly) -> UniPoly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &UniPoly) -> UniPoly {
        assert_eq!(self.ring, other.ring);
        if self.is_zero() || other.is_zero() {
            return UniPoly::zero(&self.ring);
        }
        let mut c = vec![self.ring.zero(); self.c.len() + other.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.c.iter().enumerate() {
                c[i + j] = c[i + j].add(&a.mul(b));
            }
        }
        UniPoly::from_coeffs(&self.ring, c)
    }

    pub fn mul_scalar(&self, s: &Scalar) -> UniPoly {
        UniPoly::from_coeffs(
            &self.ring,
            self.c.iter().map(|x| x.mul(s)).collect(),
        )
    }

    pub fn pow(&self, e: usize) -> UniPoly {
        let mut acc = UniPoly::one(&self.ring);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Quotient and remainder; the coefficient ring must be a field.
    pub fn div_rem(&self, divisor: &UniPoly) -> Result<(UniPoly, UniPoly)> {
        assert_eq!(self.ring, divisor.ring);
        if divisor.is_zero() {
            return Err(Error::arithmetic("univariate division by zero"));
        }
        if !self.ring.is_field() {
            return Err(Error::arithmetic("univariate division needs a field"));
        }
        let dlead = divisor.leading_coeff().unwrap().inv()?;
        let ddeg = divisor.degree().unwrap();
        let mut rem = self.c.clone();
        let mut quot = vec![self.ring.zero(); self.c.len().saturating_sub(ddeg)];
        while rem.len() > ddeg || (rem.len() == ddeg + 1 && ddeg == 0) {
            while rem.last().is_some_and(Scalar::is_zero) {
                rem.pop();
            }
            if rem.len() <= ddeg {
                break;
            }
            let shift = rem.len() - 1 - ddeg;
            let q = rem.last().unwrap().mul(&dlead);
            for (j, d) in divisor.c.iter().enumerate() {
                let t = rem[shift + j].sub(&q.mul(d));
                rem[shift + j] = t;
            }
            quot[shift] = q;
        }
        Ok((
            UniPoly::from_coeffs(&self.ring, quot),
            UniPoly::from_coeffs(&self.ring, rem),
        ))
    }

    /// Monic gcd over a field; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &UniPoly) -> Result<UniPoly> {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b)?;
            a = b;
            b = r;
        }
        if a.is_zero() {
            return Ok(a);
        }
        a.monic()
    }

    pub fn monic(&self) -> Result<UniPoly> {
        let Some(lead) = self.leading_coeff() else {
            return Err(Error::arithmetic("the zero polynomial has no monic form"));
        };
        Ok(self.mul_scalar(&lead.inv()?))
    }

    pub fn derivative(&self) -> UniPoly {
        if self.c.len() <= 1 {
            return UniPoly::zero(&self.ring);
        }
        let c = self
            .c
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, x)| x.mul(&self.ring.from_i64(i as i64)))
            .collect();
        UniPoly::from_coeffs(&self.ring, c)
    }

    pub fn eval(&self, x: &Scalar) -> Scalar {
        let mut acc = self.ring.zero();
        for c in self.c.iter().rev() {
            acc = acc.mul(x).add(c);
        }
        acc
    }

    /// The multiplicity of `r` as a root, by repeated exact division.
    pub fn root_multiplicity(&self, r: &Scalar) -> Result<usize> {
        if self.is_zero() {
            return Err(Error::arithmetic(
                "root multiplicity of the zero polynomial",
            ));
        }
        let linear = UniPoly::from_coeffs(&self.ring, vec![r.neg(), self.ring.one()]);
        let mut f = self.clone();
        let mut m = 0;
        loop {
            if !f.eval(r).is_zero() {
                return Ok(m);
            }
            let (q, rem) = f.div_rem(&linear)?;
            debug_assert!(rem.is_zero());
            f = q;
            m += 1;
        }
    }

    /// All roots in the coefficient field, with multiplicities, by direct
    /// scan. Only for finite fields.
    pub fn roots_in_field(&self) -> Result<Vec<(Scalar, usize)>> {
        let Ring::Fq(field) = &self.ring else {
            return Err(Error::data("root scan needs a finite field"));
        };
        if self.is_zero() {
            return Err(Error::arithmetic("every point is a root of zero"));
        }
        let mut out = Vec::new();
        for x in field_elements(field) {
            let s = Scalar::Fq(x);
            if self.eval(&s).is_zero() {
                let m = self.root_multiplicity(&s)?;
                out.push((s, m));
            }
        }
        Ok(out)
    }

    /// Lifts every coefficient into an extension of the base field.
    pub fn embed_into(&self, target: &Arc<FqField>) -> Result<UniPoly> {
        let ring = Ring::Fq(target.clone());
        let c = self
            .c
            .iter()
            .map(|x| {
                let Scalar::Fq(e) = x else {
                    return Err(Error::data("embedding needs finite field coefficients"));
                };
                Ok(Scalar::Fq(crate::algebra::embed(e, target)?))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(UniPoly::from_coeffs(&ring, c))
    }

    /// The monic product of the distinct irreducible factors.
    ///
    /// `w = f / gcd(f, f')` collects the factors whose multiplicity is not
    /// divisible by the characteristic; the remaining factors survive in
    /// the gcd, are stripped of anything shared with `w`, and what is left
    /// is a p-th power handled by coefficientwise p-th roots.
    pub fn squarefree_part(&self) -> Result<UniPoly> {
        if self.is_zero() {
            return Ok(self.clone());
        }
        if self.degree() == Some(0) {
            return Ok(UniPoly::one(&self.ring));
        }
        let f = self.monic()?;
        let d = f.derivative();
        if d.is_zero() {
            return f.pth_root()?.squarefree_part();
        }
        let g = f.gcd(&d)?;
        if g.degree() == Some(0) {
            return Ok(f);
        }
        let (w, r) = f.div_rem(&g)?;
        debug_assert!(r.is_zero());
        let mut y = g;
        loop {
            let h = y.gcd(&w)?;
            if h.degree() == Some(0) {
                break;
            }
            let (q, r) = y.div_rem(&h)?;
            debug_assert!(r.is_zero());
            y = q;
        }
        if y.degree() == Some(0) {
            return w.monic();
        }
        w.mul(&y.squarefree_part()?).monic()
    }

    /// For `f` with vanishing derivative over a finite field: the `h` with
    /// `h^p = f`, formed by taking p-th roots of the coefficients of `x^p`
    /// powers.
    fn pth_root(&self) -> Result<UniPoly> {
        let Ring::Fq(field) = &self.ring else {
            return Err(Error::arithmetic("inseparable over characteristic zero"));
        };
        let p = field.characteristic() as usize;
        let mut c = Vec::new();
        for (i, x) in self.c.iter().enumerate() {
            if i % p == 0 {
                let Scalar::Fq(e) = x else { unreachable!() };
                let mut root = e.clone();
                for _ in 0..field.degree() - 1 {
                    root = root.frobenius();
                }
                c.push(Scalar::Fq(root));
            } else if !x.is_zero() {
                return Err(Error::arithmetic("derivative zero but not a p-th power"));
            }
        }
        Ok(UniPoly::from_coeffs(&self.ring, c))
    }
}

impl fmt::Debug for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "UniPoly(0)");
        }
        write!(f, "UniPoly(")?;
        let mut first = true;
        for (i, c) in self.c.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})*x")?,
                _ => write!(f, "({c})*x^{i}")?,
            }
        }
        write!(f, ")")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::FqField;

    fn f4() -> Ring {
        Ring::Fq(FqField::new(2, 2).unwrap())
    }

    fn upoly(ring: &Ring, coeffs: &[i64]) -> UniPoly {
        UniPoly::from_coeffs(
            ring,
            coeffs.iter().map(|&x| ring.from_i64(x)).collect(),
        )
    }

    #[test]
    fn division_with_remainder() {
        let ring = Ring::Fq(FqField::new(5, 1).unwrap());
        // x^3 + 2x + 1 = (x^2 + 3x + 2)(x + 2) + (3x + 2) over F_5.
        let f = upoly(&ring, &[1, 2, 0, 1]);
        let d = upoly(&ring, &[2, 1]);
        let (q, r) = f.div_rem(&d).unwrap();
        assert_eq!(f, q.mul(&d).add(&r));
        assert!(r.degree() < d.degree());
    }

    #[test]
    fn gcd_of_shared_factor() {
        let ring = f4();
        let a = upoly(&ring, &[1, 1]); // x + 1
        let b = upoly(&ring, &[0, 1]); // x
        let f = a.mul(&a).mul(&b);
        let g = a.mul(&b).mul(&b);
        let d = f.gcd(&g).unwrap();
        assert_eq!(d, a.mul(&b));
    }

    #[test]
    fn roots_and_multiplicities_over_f4() {
        let ring = f4();
        let Ring::Fq(field) = &ring else { unreachable!() };
        let g = Scalar::Fq(crate::algebra::FqElem::generator(field));
        // (x + g)^2 * (x + 1)
        let f = UniPoly::from_coeffs(&ring, vec![g.clone(), ring.one()])
            .pow(2)
            .mul(&upoly(&ring, &[1, 1]));
        let mut roots = f.roots_in_field().unwrap();
        roots.sort_by_key(|(_, m)| *m);
        assert_eq!(roots.len(), 2);
        assert_eq!(roots[0].1, 1);
        assert_eq!(roots[1], (g, 2));
    }

    #[test]
    fn root_scan_within_extension() {
        // x^2 + x + 1 has no roots over F_2 but two simple roots over F_4.
        let f2 = Ring::Fq(FqField::new(2, 1).unwrap());
        let f = upoly(&f2, &[1, 1, 1]);
        assert!(f.roots_in_field().unwrap().is_empty());
        let f4 = FqField::new(2, 2).unwrap();
        let lifted = f.embed_into(&f4).unwrap();
        let roots = lifted.roots_in_field().unwrap();
        assert_eq!(roots.len(), 2);
        assert!(roots.iter().all(|(_, m)| *m == 1));
    }

    #[test]
    fn squarefree_part_strips_repeated_factors() {
        let ring = f4();
        let x = UniPoly::var(&ring);
        let a = upoly(&ring, &[1, 1]);
        let f = x.pow(4).mul(&a.pow(2));
        let sf = f.squarefree_part().unwrap();
        assert_eq!(sf, x.mul(&a));
        // An inseparable example: x^4 + 1 = (x + 1)^4 over F_4.
        let g = upoly(&ring, &[1, 0, 0, 0, 1]);
        assert_eq!(g.squarefree_part().unwrap(), a);
    }

    #[test]
    fn conversion_from_multivariate() {
        let vars = super::super::VarSet::new(&["t"]);
        let f = Polynomial::parse("t^3+2*t", &vars, &Ring::Int).unwrap();
        let u = UniPoly::from_polynomial(&f).unwrap();
        assert_eq!(u.degree(), Some(3));
        assert_eq!(u.coeff(1), Ring::Int.from_i64(2));
        assert_eq!(u.coeff(2), Ring::Int.from_i64(0));
    }
}

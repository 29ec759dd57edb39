//! Quotients of polynomials.
//!
//! Univariate quotients over a field are kept fully reduced with a monic
//! denominator, so equal functions have equal representations. In several
//! variables only the common monomial factor is cancelled and the
//! denominator is scaled to leading coefficient one; equality is decided
//! by cross multiplication, which is sound over the integral domains used
//! here.

use std::fmt;

use crate::algebra::{Ring, Scalar};
use crate::error::{Error, Result};

use super::{Monomial, Polynomial, UniPoly};

#[derive(Clone)]
pub struct RationalFunction {
    num: Polynomial,
    den: Polynomial,
}

impl RationalFunction {
    pub fn new(num: Polynomial, den: Polynomial) -> Result<RationalFunction> {
        if den.is_zero() {
            return Err(Error::arithmetic("zero denominator"));
        }
        assert!(num.vars() == den.vars() && num.ring() == den.ring());
        let mut rf = RationalFunction { num, den };
        rf.normalize()?;
        Ok(rf)
    }

    pub fn from_polynomial(p: &Polynomial) -> RationalFunction {
        RationalFunction {
            num: p.clone(),
            den: Polynomial::one(p.vars(), p.ring()),
        }
    }

    pub fn num(&self) -> &Polynomial {
        &self.num
    }

    pub fn den(&self) -> &Polynomial {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den == Polynomial::one(self.den.vars(), self.den.ring())
    }

    fn normalize(&mut self) -> Result<()> {
        if self.num.is_zero() {
            self.den = Polynomial::one(self.den.vars(), self.den.ring());
            return Ok(());
        }
        if self.num.vars().len() == 1 && self.num.ring().is_field() {
            let n = UniPoly::from_polynomial(&self.num)?;
            let d = UniPoly::from_polynomial(&self.den)?;
            let g = n.gcd(&d)?;
            let (n, r1) = n.div_rem(&g)?;
            let (d, r2) = d.div_rem(&g)?;
            debug_assert!(r1.is_zero() && r2.is_zero());
            let lead_inv = d.leading_coeff().unwrap().inv()?;
            self.num = unipoly_to_multivariate(&n.mul_scalar(&lead_inv), &self.num);
            self.den = unipoly_to_multivariate(&d.mul_scalar(&lead_inv), &self.den);
            return Ok(());
        }
        // Cancel the common monomial factor.
        let mono_gcd = |p: &Polynomial| -> Monomial {
            let mut it = p.terms();
            let first = it.next().unwrap().0.clone();
            it.fold(first, |acc, (m, _)| acc.gcd(m))
        };
        let common = mono_gcd(&self.num).gcd(&mono_gcd(&self.den));
        if !common.is_one() {
            let divisor = Polynomial::term(
                self.num.vars(),
                self.num.ring(),
                common,
                self.num.ring().one(),
            );
            self.num = self.num.exact_divide(&divisor)?;
            self.den = self.den.exact_divide(&divisor)?;
        }
        match self.den.ring() {
            Ring::Int => {
                let (Scalar::Int(cn), Scalar::Int(cd)) =
                    (self.num.content()?, self.den.content()?)
                else {
                    unreachable!()
                };
                let mut g = num_integer::Integer::gcd(&cn, &cd);
                if crate::algebra::scalar_is_negative(self.den.leading().unwrap().1) {
                    g = -g;
                }
                let divisor =
                    Polynomial::constant(self.den.vars(), &Ring::Int, Scalar::Int(g));
                self.num = self.num.exact_divide(&divisor)?;
                self.den = self.den.exact_divide(&divisor)?;
            }
            _ => {
                let lead_inv = self.den.leading().unwrap().1.inv()?;
                self.den = self.den.mul_scalar(&lead_inv);
                self.num = self.num.mul_scalar(&lead_inv);
            }
        }
        Ok(())
    }

    pub fn add(&self, other: &RationalFunction) -> Result<RationalFunction> {
        RationalFunction::new(
            self.num.mul(&other.den).add(&other.num.mul(&self.den)),
            self.den.mul(&other.den),
        )
    }

    pub fn sub(&self, other: &RationalFunction) -> Result<RationalFunction> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> RationalFunction {
        RationalFunction {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn mul(&self, other: &RationalFunction) -> Result<RationalFunction> {
        RationalFunction::new(self.num.mul(&other.num), self.den.mul(&other.den))
    }

    pub fn div(&self, other: &RationalFunction) -> Result<RationalFunction> {
        if other.is_zero() {
            return Err(Error::arithmetic("division by the zero function"));
        }
        RationalFunction::new(self.num.mul(&other.den), self.den.mul(&other.num))
    }

    pub fn inv(&self) -> Result<RationalFunction> {
        if self.is_zero() {
            return Err(Error::arithmetic("inverse of the zero function"));
        }
        RationalFunction::new(self.den.clone(), self.num.clone())
    }

    /// Evaluation where the denominator does not vanish.
    pub fn eval(&self, point: &[Scalar]) -> Result<Scalar> {
        let d = self.den.eval(point);
        if d.is_zero() {
            return Err(Error::arithmetic("pole at the evaluation point"));
        }
        Ok(self.num.eval(point).mul(&d.inv()?))
    }
}

fn unipoly_to_multivariate(u: &UniPoly, template: &Polynomial) -> Polynomial {
    let mut acc = Polynomial::zero(template.vars(), template.ring());
    for (i, c) in u.coeffs().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        acc = acc.add(&Polynomial::term(
            template.vars(),
            template.ring(),
            Monomial::var(1, 0, i as u32),
            c.clone(),
        ));
    }
    acc
}

impl PartialEq for RationalFunction {
    fn eq(&self, other: &Self) -> bool {
        self.num.mul(&other.den) == other.num.mul(&self.den)
    }
}

impl Eq for RationalFunction {}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_polynomial() {
            return write!(f, "{}", self.num);
        }
        let num = if self.num.num_terms() > 1 {
            format!("({})", self.num)
        } else {
            self.num.to_string()
        };
        let den = if self.den.num_terms() > 1 {
            format!("({})", self.den)
        } else {
            self.den.to_string()
        };
        write!(f, "{num}/{den}")
    }
}

impl fmt::Debug for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RationalFunction({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::FqField;
    use crate::poly::VarSet;

    #[test]
    fn bivariate_monomial_cancellation() {
        let vars = VarSet::new(&["s", "t"]);
        let ring = Ring::Fq(FqField::new(2, 1).unwrap());
        let num = Polynomial::parse("s*t+s^2", &vars, &ring).unwrap();
        let den = Polynomial::parse("s^2", &vars, &ring).unwrap();
        let rf = RationalFunction::new(num, den).unwrap();
        assert_eq!(rf.num().to_string(), "s+t");
        assert_eq!(rf.den().to_string(), "s");
    }

    #[test]
    fn univariate_reduction_is_canonical() {
        let vars = VarSet::new(&["t"]);
        let ring = Ring::Fq(FqField::new(5, 1).unwrap());
        let parse = |s: &str| Polynomial::parse(s, &vars, &ring).unwrap();
        // (t^2 - 1) / (2t - 2) reduces to (t + 1)/2 with monic denominator.
        let rf = RationalFunction::new(parse("t^2+4"), parse("2*t+3")).unwrap();
        assert_eq!(rf.den().to_string(), "1");
        assert_eq!(rf.num().to_string(), "3*t+3");
    }

    #[test]
    fn field_arithmetic_on_quotients() {
        let vars = VarSet::new(&["t"]);
        let ring = Ring::Fq(FqField::new(2, 1).unwrap());
        let parse = |s: &str| Polynomial::parse(s, &vars, &ring).unwrap();
        let a = RationalFunction::new(parse("1"), parse("t")).unwrap();
        let b = RationalFunction::new(parse("1"), parse("t+1")).unwrap();
        // 1/t + 1/(t+1) = 1/(t^2 + t) in characteristic 2.
        let s = a.add(&b).unwrap();
        let expected = RationalFunction::new(parse("1"), parse("t^2+t")).unwrap();
        assert_eq!(s, expected);
        assert_eq!(a.mul(&b).unwrap(), expected);
        assert_eq!(s.div(&a).unwrap(), RationalFunction::new(parse("1"), parse("t+1")).unwrap());
    }

    #[test]
    fn cross_multiplied_equality() {
        let vars = VarSet::new(&["s", "t"]);
        let parse = |s: &str| Polynomial::parse(s, &vars, &Ring::Int).unwrap();
        let a = RationalFunction::new(parse("s*t"), parse("s^2")).unwrap();
        let b = RationalFunction::new(parse("3*t"), parse("3*s")).unwrap();
        assert_eq!(a, b);
    }
}

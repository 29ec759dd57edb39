//! Sparse multivariate polynomials with exact coefficients.
//!
//! A [`Polynomial`] is a map from exponent vectors to nonzero scalars over
//! a fixed ambient [`VarSet`] and [`Ring`]. Terms are stored under the
//! graded reverse lexicographic order, which is also the canonical printing
//! order; other term orders are applied externally by the Groebner-basis
//! code. Integer coefficients are first-class so that identities such as
//! the exact division of a determinant by 2 can be checked in `Z[u, v, w]`
//! before any reduction mod `p`.
//!
//! Invariant: `terms` never stores a zero scalar, every stored monomial has
//! exactly `vars.len()` exponents, and every scalar belongs to `ring`.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::algebra::{scalar_is_negative, FqField, Ring, Scalar};
use crate::error::{Error, Result};

mod json;
mod parse;
mod ratfunc;
mod series;
mod univar;

pub use json::{polynomial_from_json, polynomial_to_json, ring_from_json, ring_to_json};
pub use ratfunc::RationalFunction;
pub use series::TruncatedSeries;
pub use univar::UniPoly;

// ---------------------------------------------------------------------------
// Variable sets.
// ---------------------------------------------------------------------------

/// An ordered list of variable names, shared by every polynomial of one
/// computation. Two polynomials interoperate only when their variable sets
/// are equal as lists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VarSet {
    names: Vec<String>,
}

impl VarSet {
    pub fn new(names: &[&str]) -> Arc<VarSet> {
        assert!(!names.is_empty(), "empty variable set");
        let mut seen = Vec::new();
        for n in names {
            assert!(!seen.contains(n), "duplicate variable name {n}");
            seen.push(n);
        }
        Arc::new(VarSet {
            names: names.iter().map(|s| s.to_string()).collect(),
        })
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// A new set with the variable at `pos` removed.
    pub fn without(&self, pos: usize) -> Arc<VarSet> {
        let mut names = self.names.clone();
        names.remove(pos);
        Arc::new(VarSet { names })
    }

    /// A new set with `name` inserted at position `pos`.
    pub fn inserted(&self, pos: usize, name: &str) -> Arc<VarSet> {
        assert!(self.index_of(name).is_none(), "duplicate variable {name}");
        let mut names = self.names.clone();
        names.insert(pos, name.to_string());
        Arc::new(VarSet { names })
    }
}

fn same_vars(a: &Arc<VarSet>, b: &Arc<VarSet>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

// ---------------------------------------------------------------------------
// Monomials under grevlex.
// ---------------------------------------------------------------------------

/// An exponent vector. `Ord` is graded reverse lexicographic: higher total
/// degree wins; on equal degree the monomial with the smaller exponent at
/// the last differing position wins.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial {
    e: Vec<u32>,
}

impl Monomial {
    pub fn one(nvars: usize) -> Monomial {
        Monomial { e: vec![0; nvars] }
    }

    pub fn var(nvars: usize, index: usize, exp: u32) -> Monomial {
        let mut e = vec![0; nvars];
        e[index] = exp;
        Monomial { e }
    }

    pub fn from_exps(e: Vec<u32>) -> Monomial {
        Monomial { e }
    }

    pub fn exps(&self) -> &[u32] {
        &self.e
    }

    pub fn degree(&self) -> u32 {
        self.e.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.e.iter().all(|&x| x == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial {
            e: self
                .e
                .iter()
                .zip(&other.e)
                .map(|(&a, &b)| a.checked_add(b).expect("exponent overflow"))
                .collect(),
        }
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.e.iter().zip(&other.e).all(|(&a, &b)| a <= b)
    }

    /// `other / self`, when defined.
    pub fn divide_into(&self, other: &Monomial) -> Option<Monomial> {
        if self.divides(other) {
            Some(Monomial {
                e: other.e.iter().zip(&self.e).map(|(&b, &a)| b - a).collect(),
            })
        } else {
            None
        }
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial {
            e: self
                .e
                .iter()
                .zip(&other.e)
                .map(|(&a, &b)| a.max(b))
                .collect(),
        }
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        Monomial {
            e: self
                .e
                .iter()
                .zip(&other.e)
                .map(|(&a, &b)| a.min(b))
                .collect(),
        }
    }

    pub fn is_coprime_with(&self, other: &Monomial) -> bool {
        self.e.iter().zip(&other.e).all(|(&a, &b)| a == 0 || b == 0)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        use std::cmp::Ordering;
        debug_assert_eq!(self.e.len(), other.e.len(), "mixed ambient monomials");
        match self.degree().cmp(&other.degree()) {
            Ordering::Equal => {}
            ord => return ord,
        }
        for i in (0..self.e.len()).rev() {
            if self.e[i] != other.e[i] {
                // Reverse sense on the last differing exponent.
                return if self.e[i] < other.e[i] {
                    Ordering::Greater
                } else {
                    Ordering::Less
                };
            }
        }
        Ordering::Equal
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

// ---------------------------------------------------------------------------
// Polynomials.
// ---------------------------------------------------------------------------

#[derive(Clone, PartialEq, Eq)]
pub struct Polynomial {
    vars: Arc<VarSet>,
    ring: Ring,
    terms: BTreeMap<Monomial, Scalar>,
}

impl Polynomial {
    pub fn zero(vars: &Arc<VarSet>, ring: &Ring) -> Polynomial {
        Polynomial {
            vars: vars.clone(),
            ring: ring.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(vars: &Arc<VarSet>, ring: &Ring, c: Scalar) -> Polynomial {
        debug_assert!(ring.contains(&c));
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial::one(vars.len()), c);
        }
        Polynomial {
            vars: vars.clone(),
            ring: ring.clone(),
            terms,
        }
    }

    pub fn one(vars: &Arc<VarSet>, ring: &Ring) -> Polynomial {
        Self::constant(vars, ring, ring.one())
    }

    pub fn var(vars: &Arc<VarSet>, ring: &Ring, index: usize) -> Polynomial {
        Self::term(vars, ring, Monomial::var(vars.len(), index, 1), ring.one())
    }

    pub fn term(vars: &Arc<VarSet>, ring: &Ring, m: Monomial, c: Scalar) -> Polynomial {
        assert_eq!(m.exps().len(), vars.len());
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Polynomial {
            vars: vars.clone(),
            ring: ring.clone(),
            terms,
        }
    }

    pub(crate) fn from_map(
        vars: &Arc<VarSet>,
        ring: &Ring,
        mut terms: BTreeMap<Monomial, Scalar>,
    ) -> Polynomial {
        terms.retain(|_, c| !c.is_zero());
        Polynomial {
            vars: vars.clone(),
            ring: ring.clone(),
            terms,
        }
    }

    /// Convenience constructor from text; see the module grammar.
    pub fn parse(text: &str, vars: &Arc<VarSet>, ring: &Ring) -> Result<Polynomial> {
        parse::parse_polynomial(text, vars, ring)
    }

    pub fn vars(&self) -> &Arc<VarSet> {
        &self.vars
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending grevlex order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_else(|| self.ring.zero())
    }

    pub fn constant_term(&self) -> Scalar {
        self.coefficient(&Monomial::one(self.vars.len()))
    }

    /// Leading term under grevlex.
    pub fn leading(&self) -> Option<(&Monomial, &Scalar)> {
        self.terms.iter().next_back()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.degree()).max()
    }

    pub fn lowest_total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.degree()).min()
    }

    /// The sum of the terms of minimal total degree.
    pub fn lowest_degree_part(&self) -> Polynomial {
        let Some(d) = self.lowest_total_degree() else {
            return self.clone();
        };
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| m.degree() == d)
            .map(|(m, c)| (m.clone(), c.clone()))
            .collect();
        Polynomial::from_map(&self.vars, &self.ring, terms)
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.keys().map(|m| m.exps()[var]).max().unwrap_or(0)
    }

    /// True for the zero polynomial and for forms of a single total degree.
    pub fn is_homogeneous(&self) -> bool {
        match self.total_degree() {
            None => true,
            Some(d) => self.terms.keys().all(|m| m.degree() == d),
        }
    }

    fn assert_compatible(&self, other: &Polynomial) {
        assert!(
            same_vars(&self.vars, &other.vars) && self.ring == other.ring,
            "polynomials over different ambients"
        );
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        self.assert_compatible(other);
        let mut terms = self.terms.clone();
        for (m, c) in &other.terms {
            match terms.entry(m.clone()) {
                std::collections::btree_map::Entry::Vacant(e) => {
                    e.insert(c.clone());
                }
                std::collections::btree_map::Entry::Occupied(mut e) => {
                    let s = e.get().add(c);
                    if s.is_zero() {
                        e.remove();
                    } else {
                        *e.get_mut() = s;
                    }
                }
            }
        }
        Polynomial {
            vars: self.vars.clone(),
            ring: self.ring.clone(),
            terms,
        }
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Polynomial {
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| (m.clone(), c.neg()))
            .collect();
        Polynomial {
            vars: self.vars.clone(),
            ring: self.ring.clone(),
            terms,
        }
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        self.assert_compatible(other);
        let mut terms: BTreeMap<Monomial, Scalar> = BTreeMap::new();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                let m = m1.mul(m2);
                let c = c1.mul(c2);
                match terms.entry(m) {
                    std::collections::btree_map::Entry::Vacant(e) => {
                        e.insert(c);
                    }
                    std::collections::btree_map::Entry::Occupied(mut e) => {
                        let s = e.get().add(&c);
                        if s.is_zero() {
                            e.remove();
                        } else {
                            *e.get_mut() = s;
                        }
                    }
                }
            }
        }
        Polynomial {
            vars: self.vars.clone(),
            ring: self.ring.clone(),
            terms,
        }
    }

    pub fn mul_scalar(&self, c: &Scalar) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.vars, &self.ring);
        }
        let terms = self
            .terms
            .iter()
            .map(|(m, x)| (m.clone(), x.mul(c)))
            .filter(|(_, x)| !x.is_zero())
            .collect();
        Polynomial {
            vars: self.vars.clone(),
            ring: self.ring.clone(),
            terms,
        }
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &Scalar) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.vars, &self.ring);
        }
        let terms = self
            .terms
            .iter()
            .map(|(mm, x)| (mm.mul(m), x.mul(c)))
            .filter(|(_, x)| !x.is_zero())
            .collect();
        Polynomial {
            vars: self.vars.clone(),
            ring: self.ring.clone(),
            terms,
        }
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut acc = Polynomial::one(&self.vars, &self.ring);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Exact division, failing if `other` does not divide `self` in the
    /// coefficient ring. Works over `Z` as well as over fields: at each
    /// step the grevlex-leading term of the remainder must be divisible,
    /// termwise, by the leading term of the divisor.
    pub fn exact_divide(&self, other: &Polynomial) -> Result<Polynomial> {
        self.assert_compatible(other);
        if other.is_zero() {
            return Err(Error::arithmetic("division by the zero polynomial"));
        }
        let (dm, dc) = other.leading().unwrap();
        let mut rem = self.clone();
        let mut quot = Polynomial::zero(&self.vars, &self.ring);
        while let Some((rm, rc)) = rem.leading() {
            let Some(qm) = dm.divide_into(rm) else {
                return Err(Error::arithmetic(format!(
                    "inexact polynomial division (monomial obstruction at {})",
                    self.render_monomial(rm)
                )));
            };
            let qc = rc.div_exact(dc).map_err(|_| {
                Error::arithmetic("inexact polynomial division (coefficient obstruction)")
            })?;
            let t = Polynomial::term(&self.vars, &self.ring, qm, qc);
            rem = rem.sub(&t.mul(other));
            quot = quot.add(&t);
        }
        Ok(quot)
    }

    /// Substitutes `assignments[i]` for variable `i`. All assignments must
    /// share one ambient, which becomes the ambient of the result.
    pub fn substitute(&self, assignments: &[Polynomial]) -> Polynomial {
        assert_eq!(assignments.len(), self.vars.len());
        let target_vars = assignments[0].vars.clone();
        let target_ring = assignments[0].ring.clone();
        for a in assignments {
            assert!(
                same_vars(&a.vars, &target_vars) && a.ring == target_ring,
                "assignments over different ambients"
            );
        }
        assert_eq!(
            self.ring, target_ring,
            "substitution must preserve the coefficient ring"
        );
        // Cache powers of each assignment up to the needed exponent.
        let mut powers: Vec<Vec<Polynomial>> = Vec::with_capacity(assignments.len());
        for (i, a) in assignments.iter().enumerate() {
            let maxe = self.degree_in(i);
            let mut pws = Vec::with_capacity(maxe as usize + 1);
            pws.push(Polynomial::one(&target_vars, &target_ring));
            for e in 1..=maxe {
                let prev = &pws[(e - 1) as usize];
                pws.push(prev.mul(a));
            }
            powers.push(pws);
        }
        let mut acc = Polynomial::zero(&target_vars, &target_ring);
        for (m, c) in &self.terms {
            let mut t = Polynomial::constant(&target_vars, &target_ring, c.clone());
            for (i, &e) in m.exps().iter().enumerate() {
                if e > 0 {
                    t = t.mul(&powers[i][e as usize]);
                }
            }
            acc = acc.add(&t);
        }
        acc
    }

    /// Substitutes a scalar for one variable, keeping the ambient.
    pub fn substitute_scalar(&self, var: usize, value: &Scalar) -> Polynomial {
        let mut terms: BTreeMap<Monomial, Scalar> = BTreeMap::new();
        for (m, c) in &self.terms {
            let e = m.exps()[var];
            let mut exps = m.exps().to_vec();
            exps[var] = 0;
            let c = c.mul(&value.pow(e as u64));
            if c.is_zero() {
                continue;
            }
            let key = Monomial::from_exps(exps);
            match terms.entry(key) {
                std::collections::btree_map::Entry::Vacant(en) => {
                    en.insert(c);
                }
                std::collections::btree_map::Entry::Occupied(mut en) => {
                    let s = en.get().add(&c);
                    if s.is_zero() {
                        en.remove();
                    } else {
                        *en.get_mut() = s;
                    }
                }
            }
        }
        Polynomial {
            vars: self.vars.clone(),
            ring: self.ring.clone(),
            terms,
        }
    }

    /// Sets the given variable to 1 and removes it from the ambient.
    pub fn dehomogenize(&self, var: usize) -> Polynomial {
        let new_vars = self.vars.without(var);
        let mut terms: BTreeMap<Monomial, Scalar> = BTreeMap::new();
        for (m, c) in &self.terms {
            let mut exps = m.exps().to_vec();
            exps.remove(var);
            let key = Monomial::from_exps(exps);
            match terms.entry(key) {
                std::collections::btree_map::Entry::Vacant(en) => {
                    en.insert(c.clone());
                }
                std::collections::btree_map::Entry::Occupied(mut en) => {
                    let s = en.get().add(c);
                    if s.is_zero() {
                        en.remove();
                    } else {
                        *en.get_mut() = s;
                    }
                }
            }
        }
        Polynomial::from_map(&new_vars, &self.ring, terms)
    }

    /// Inserts a fresh, unused variable at position `pos`.
    pub fn insert_var(&self, pos: usize, new_vars: &Arc<VarSet>) -> Polynomial {
        assert_eq!(new_vars.len(), self.vars.len() + 1);
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut exps = m.exps().to_vec();
                exps.insert(pos, 0);
                (Monomial::from_exps(exps), c.clone())
            })
            .collect();
        Polynomial {
            vars: new_vars.clone(),
            ring: self.ring.clone(),
            terms,
        }
    }

    pub fn eval(&self, point: &[Scalar]) -> Scalar {
        assert_eq!(point.len(), self.vars.len());
        let mut acc = self.ring.zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in m.exps().iter().enumerate() {
                if e > 0 {
                    t = t.mul(&point[i].pow(e as u64));
                }
            }
            acc = acc.add(&t);
        }
        acc
    }

    pub fn derivative(&self, var: usize) -> Polynomial {
        let mut terms: BTreeMap<Monomial, Scalar> = BTreeMap::new();
        for (m, c) in &self.terms {
            let e = m.exps()[var];
            if e == 0 {
                continue;
            }
            let c = c.mul(&self.ring.from_i64(e as i64));
            if c.is_zero() {
                continue;
            }
            let mut exps = m.exps().to_vec();
            exps[var] = e - 1;
            terms.insert(Monomial::from_exps(exps), c);
        }
        Polynomial {
            vars: self.vars.clone(),
            ring: self.ring.clone(),
            terms,
        }
    }

    /// Reduces an integer or rational polynomial mod `p` into the given
    /// finite field. Rational coefficients must have denominator prime
    /// to `p`.
    pub fn reduce_mod_p(&self, field: &Arc<FqField>) -> Result<Polynomial> {
        let target = Ring::Fq(field.clone());
        let p = BigInt::from(field.characteristic());
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            let s = match c {
                Scalar::Int(a) => target.from_bigint(a),
                Scalar::Rat(a) => {
                    if (a.denom() % &p).is_zero() {
                        return Err(Error::data(format!(
                            "denominator of {a} is divisible by {p}"
                        )));
                    }
                    let num = target.from_bigint(a.numer());
                    let den = target.from_bigint(a.denom());
                    num.mul(&den.inv()?)
                }
                Scalar::Fq(_) => {
                    return Err(Error::data(
                        "reduce_mod_p expects integer or rational coefficients",
                    ))
                }
            };
            if !s.is_zero() {
                terms.insert(m.clone(), s);
            }
        }
        Ok(Polynomial {
            vars: self.vars.clone(),
            ring: target,
            terms,
        })
    }

    /// Lifts every coefficient into an extension of its field.
    pub fn embed_coeffs(&self, target: &Arc<FqField>) -> Result<Polynomial> {
        let ring = Ring::Fq(target.clone());
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            let Scalar::Fq(e) = c else {
                return Err(Error::data("embedding needs finite field coefficients"));
            };
            terms.insert(m.clone(), Scalar::Fq(crate::algebra::embed(e, target)?));
        }
        Ok(Polynomial {
            vars: self.vars.clone(),
            ring,
            terms,
        })
    }

    /// Reinterprets the coefficients in another ring when lossless:
    /// `Z -> Q` always, `Q -> Z` when all coefficients are integers.
    pub fn convert_ring(&self, ring: &Ring) -> Result<Polynomial> {
        if *ring == self.ring {
            return Ok(self.clone());
        }
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            let s = match (c, ring) {
                (Scalar::Int(a), Ring::Rat) => ring.from_bigint(a),
                (Scalar::Rat(a), Ring::Int) => {
                    if a.denom().is_one() {
                        Scalar::Int(a.numer().clone())
                    } else {
                        return Err(Error::data(format!("{a} is not an integer")));
                    }
                }
                _ => return Err(Error::data("unsupported ring conversion")),
            };
            terms.insert(m.clone(), s);
        }
        Ok(Polynomial {
            vars: self.vars.clone(),
            ring: ring.clone(),
            terms,
        })
    }

    /// Integer content (over `Z`: gcd of coefficients; over `Q`: the
    /// positive rational `c` with `self = c * primitive integer part`).
    pub fn content(&self) -> Result<Scalar> {
        match self.ring {
            Ring::Int => {
                let mut g = BigInt::zero();
                for c in self.terms.values() {
                    g = num_integer::Integer::gcd(&g, c.as_int().unwrap());
                }
                Ok(Scalar::Int(g))
            }
            Ring::Rat => {
                let mut num_gcd = BigInt::zero();
                let mut den_lcm = BigInt::one();
                for c in self.terms.values() {
                    let Scalar::Rat(r) = c else { unreachable!() };
                    num_gcd = num_integer::Integer::gcd(&num_gcd, r.numer());
                    den_lcm = num_integer::Integer::lcm(&den_lcm, r.denom());
                }
                if num_gcd.is_zero() {
                    return Ok(Scalar::Rat(num_rational::BigRational::zero()));
                }
                Ok(Scalar::Rat(num_rational::BigRational::new(
                    num_gcd, den_lcm,
                )))
            }
            Ring::Fq(_) => Err(Error::data("content is defined over Z and Q only")),
        }
    }

    /// Divides out the content, making an integer or rational polynomial
    /// primitive with a positive leading coefficient.
    pub fn primitive_part(&self) -> Result<Polynomial> {
        if self.is_zero() {
            return Ok(self.clone());
        }
        let c = self.content()?;
        let mut out = match (&self.ring, &c) {
            (Ring::Int, Scalar::Int(g)) => {
                let mut terms = BTreeMap::new();
                for (m, x) in &self.terms {
                    terms.insert(m.clone(), Scalar::Int(x.as_int().unwrap() / g));
                }
                Polynomial {
                    vars: self.vars.clone(),
                    ring: self.ring.clone(),
                    terms,
                }
            }
            (Ring::Rat, Scalar::Rat(r)) => self.mul_scalar(&Scalar::Rat(r.recip())),
            _ => unreachable!(),
        };
        if scalar_is_negative(out.leading().unwrap().1) {
            out = out.neg();
        }
        Ok(out)
    }

    fn render_monomial(&self, m: &Monomial) -> String {
        let mut parts = Vec::new();
        for (i, &e) in m.exps().iter().enumerate() {
            if e == 0 {
                continue;
            }
            if e == 1 {
                parts.push(self.vars.name(i).to_string());
            } else {
                parts.push(format!("{}^{}", self.vars.name(i), e));
            }
        }
        parts.join("*")
    }

    fn render_coefficient(c: &Scalar) -> String {
        match c {
            Scalar::Fq(x) => {
                let s = x.to_string();
                if s.contains('+') {
                    format!("({s})")
                } else {
                    s
                }
            }
            _ => c.to_string(),
        }
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        // Descending grevlex, the canonical printing order.
        for (m, c) in self.terms.iter().rev() {
            let negative = scalar_is_negative(c);
            let abs = if negative { c.neg() } else { c.clone() };
            if first {
                if negative {
                    write!(f, "-")?;
                }
                first = false;
            } else if negative {
                write!(f, "-")?;
            } else {
                write!(f, "+")?;
            }
            let mono = self.render_monomial(m);
            if mono.is_empty() {
                write!(f, "{}", Self::render_coefficient(&abs))?;
            } else if abs.is_one() {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{}*{mono}", Self::render_coefficient(&abs))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn zring() -> Ring {
        Ring::Int
    }

    fn uvw() -> Arc<VarSet> {
        VarSet::new(&["u", "v", "w"])
    }

    fn p(text: &str) -> Polynomial {
        Polynomial::parse(text, &uvw(), &zring()).unwrap()
    }

    #[test]
    fn grevlex_order_of_monomials() {
        // Standard grevlex facts in three variables.
        let m = |a, b, c| Monomial::from_exps(vec![a, b, c]);
        assert!(m(2, 1, 0) > m(1, 0, 2)); // u^2 v > u w^2
        assert!(m(1, 1, 0) > m(0, 2, 0)); // u v > v^2
        assert!(m(0, 0, 3) < m(0, 3, 0)); // w^3 < v^3
        assert!(m(1, 0, 0) > m(0, 1, 0)); // u > v
    }

    #[test]
    fn square_expansion_identity() {
        let lhs = p("(u+v+w)^2").sub(&p("u^2+v^2+w^2"));
        let rhs = p("2*u*v+2*u*w+2*v*w");
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn display_and_parse_round_trip() {
        let cases = [
            "u^3-6*u^2*v+12*u*v^2-8*v^3",
            "u*v*w",
            "0",
            "-u+5",
            "u^2+u*w+w^2",
        ];
        for c in cases {
            let q = p(c);
            assert_eq!(p(&q.to_string()), q, "round trip through {c}");
        }
    }

    #[test]
    fn display_round_trip_over_finite_field() {
        let f4 = FqField::new(2, 2).unwrap();
        let ring = Ring::Fq(f4);
        let vars = uvw();
        let q = Polynomial::parse("(g+1)*u*v^2+g*w^3+u", &vars, &ring).unwrap();
        let r = Polynomial::parse(&q.to_string(), &vars, &ring).unwrap();
        assert_eq!(q, r);
    }

    #[test]
    fn exact_division_and_obstructions() {
        let f = p("(u+v)^2*(u-2*v)");
        let q = f.exact_divide(&p("u-2*v")).unwrap();
        assert_eq!(q, p("(u+v)^2"));
        // 2 divides every coefficient here.
        let g = p("2*u^2+4*u*v");
        assert_eq!(g.exact_divide(&p("2")).unwrap(), p("u^2+2*u*v"));
        // Coefficient obstruction over Z.
        assert!(p("u^2+1").exact_divide(&p("2")).is_err());
        // Monomial obstruction.
        assert!(p("u^2+v").exact_divide(&p("u")).is_err());
    }

    #[test]
    fn reduction_mod_two_kills_even_part() {
        let f2 = FqField::new(2, 1).unwrap();
        let f = p("u^3+6*u^2*v+12*u*v^2+8*v^3"); // (u + 2v)^3
        let r = f.reduce_mod_p(&f2).unwrap();
        let vars = uvw();
        assert_eq!(
            r,
            Polynomial::parse("u^3", &vars, &Ring::Fq(FqField::new(2, 1).unwrap())).unwrap()
        );
    }

    #[test]
    fn derivative_in_characteristic_two() {
        let f2 = FqField::new(2, 1).unwrap();
        let ring = Ring::Fq(f2);
        let vars = uvw();
        let f = Polynomial::parse("u^2*w+u*v", &vars, &ring).unwrap();
        // d/du: 2uw + v = v in characteristic 2.
        assert_eq!(
            f.derivative(0),
            Polynomial::parse("v", &vars, &ring).unwrap()
        );
        // Over Z the same derivative keeps the 2uw term.
        let g = p("u^2*w+u*v");
        assert_eq!(g.derivative(0), p("2*u*w+v"));
    }

    #[test]
    fn substitution_composes_linear_changes() {
        // u -> u + v, v -> v, w -> w applied to a symmetric form.
        let vars = uvw();
        let f = p("u^2+v^2+w^2");
        let img = f.substitute(&[p("u+v"), p("v"), p("w")]);
        assert_eq!(img, p("u^2+2*u*v+2*v^2+w^2"));
        let point = [
            zring().from_i64(1),
            zring().from_i64(2),
            zring().from_i64(3),
        ];
        assert_eq!(img.eval(&point), f.eval(&[
            zring().from_i64(3),
            zring().from_i64(2),
            zring().from_i64(3),
        ]));
        let _ = vars;
    }

    #[test]
    fn dehomogenize_merges_terms() {
        let f = p("u^2*w+u^2*w^2");
        let d = f.dehomogenize(2);
        let uv = VarSet::new(&["u", "v"]);
        assert_eq!(d, Polynomial::parse("2*u^2", &uv, &zring()).unwrap());
    }

    #[test]
    fn homogeneity_and_degrees() {
        assert!(p("u^2+v*w").is_homogeneous());
        assert!(!p("u^2+v").is_homogeneous());
        assert!(p("0").is_homogeneous());
        assert_eq!(p("u^2*v+w").total_degree(), Some(3));
        assert_eq!(p("u^2*v+w").lowest_total_degree(), Some(1));
        assert_eq!(p("u^4+u*v*w").lowest_degree_part(), p("u*v*w"));
    }

    #[test]
    fn content_and_primitive_part() {
        let f = p("6*u^2-9*v^2");
        assert_eq!(f.content().unwrap(), zring().from_i64(3));
        assert_eq!(f.primitive_part().unwrap(), p("2*u^2-3*v^2"));
        let g = p("-2*u");
        assert_eq!(g.primitive_part().unwrap(), p("u"));
    }

    #[test]
    fn parse_error_positions() {
        let e = Polynomial::parse("u^2 + ", &uvw(), &zring()).unwrap_err();
        assert!(matches!(e, Error::Parse { .. }), "{e}");
        let e = Polynomial::parse("u^2 + q", &uvw(), &zring()).unwrap_err();
        match e {
            Error::Parse { pos, .. } => assert_eq!(pos, 6),
            other => panic!("unexpected {other}"),
        }
    }
}

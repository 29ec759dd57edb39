//! Ground rings: the integers, the rationals, and finite fields `F_{p^k}`.
//!
//! A finite field is represented as `F_p[T]/(m)` where `m` is the canonical
//! modulus for `(p, k)`: the lexicographically first monic irreducible of
//! degree `k`, "first" meaning smallest when the coefficient vector
//! `(c_{k-1}, ..., c_1, c_0)` is read as the base-`p` digits of an integer.
//! This makes every field descriptor, every element encoding and every
//! embedding reproducible across runs. The residue class of `T` is called
//! `g` in all printed output.
//!
//! Field code is written for a general prime `p`; the characteristic-2
//! specific entry points (`frobenius_sqrt`) insist on `p = 2`. Extensions
//! are handled as a growable tower: operations that need roots embed into a
//! compatible larger field, up to a caller-supplied degree bound.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Default bound on the extension degree `k` when operations grow the
/// field tower on their own.
pub const DEFAULT_KMAX: usize = 12;

// ---------------------------------------------------------------------------
// Prime-field word arithmetic.
// ---------------------------------------------------------------------------

#[inline]
fn addm(a: u64, b: u64, p: u64) -> u64 {
    let s = a + b;
    if s >= p {
        s - p
    } else {
        s
    }
}

#[inline]
fn subm(a: u64, b: u64, p: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        a + p - b
    }
}

#[inline]
fn mulm(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn powm(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mulm(acc, a, p);
        }
        a = mulm(a, a, p);
        e >>= 1;
    }
    acc
}

#[inline]
fn invm(a: u64, p: u64) -> u64 {
    debug_assert!(a % p != 0);
    powm(a, p - 2, p)
}

/// Trial-division primality test; the primes in play are tiny.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

// ---------------------------------------------------------------------------
// Dense univariate arithmetic over F_p, used only for modulus bookkeeping.
// Polynomials are coefficient vectors, index = degree, no trailing zeros.
// ---------------------------------------------------------------------------

fn up_trim(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

fn up_mul(p: u64, a: &[u64], b: &[u64]) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &ai) in a.iter().enumerate() {
        if ai == 0 {
            continue;
        }
        for (j, &bj) in b.iter().enumerate() {
            out[i + j] = addm(out[i + j], mulm(ai, bj, p), p);
        }
    }
    up_trim(&mut out);
    out
}

/// Remainder of `a` modulo the monic polynomial `m`.
fn up_rem(p: u64, a: &[u64], m: &[u64]) -> Vec<u64> {
    debug_assert_eq!(*m.last().unwrap(), 1, "modulus must be monic");
    let mut r = a.to_vec();
    let dm = m.len() - 1;
    while r.len() > dm {
        let lead = *r.last().unwrap();
        let shift = r.len() - 1 - dm;
        if lead != 0 {
            for (i, &mi) in m.iter().enumerate() {
                let idx = i + shift;
                r[idx] = subm(r[idx], mulm(lead, mi, p), p);
            }
        }
        r.pop();
        up_trim(&mut r);
        if r.len() <= dm {
            break;
        }
    }
    up_trim(&mut r);
    r
}

fn up_is_irreducible(p: u64, m: &[u64]) -> bool {
    let k = m.len() - 1;
    if k == 1 {
        return true;
    }
    // Trial division by every monic polynomial of degree 1..=k/2.
    for d in 1..=k / 2 {
        let count = (p as u128).pow(d as u32);
        for code in 0..count {
            let mut div = Vec::with_capacity(d + 1);
            let mut c = code;
            for _ in 0..d {
                div.push((c % p as u128) as u64);
                c /= p as u128;
            }
            div.push(1);
            if up_rem(p, m, &div).is_empty() {
                return false;
            }
        }
    }
    true
}

// ---------------------------------------------------------------------------
// Field descriptors.
// ---------------------------------------------------------------------------

/// A finite field `F_{p^k}` with its canonical modulus.
///
/// Invariant: `modulus` is monic of degree `k`, irreducible over `F_p`, and
/// is the canonical (lexicographically first) such polynomial, so two
/// descriptors with equal `(p, k)` are equal. Descriptors are shared via
/// `Arc` and never mutated.
#[derive(Debug, PartialEq, Eq)]
pub struct FqField {
    p: u64,
    k: usize,
    /// Monic modulus, index = degree, length `k + 1`.
    modulus: Vec<u64>,
}

impl FqField {
    /// Constructs `F_{p^k}` with the canonical modulus.
    pub fn new(p: u64, k: usize) -> Result<Arc<FqField>> {
        if !is_prime(p) {
            return Err(Error::data(format!("{p} is not prime")));
        }
        if k == 0 {
            return Err(Error::data("extension degree must be at least 1"));
        }
        let q = (p as u128).checked_pow(k as u32);
        match q {
            Some(q) if q <= 1 << 32 => {}
            _ => {
                return Err(Error::data(format!(
                    "field F_{{{p}^{k}}} is too large for this crate"
                )))
            }
        }
        let count = (p as u128).pow(k as u32);
        for code in 0..count {
            let mut m = Vec::with_capacity(k + 1);
            let mut c = code;
            for _ in 0..k {
                m.push((c % p as u128) as u64);
                c /= p as u128;
            }
            m.push(1);
            if up_is_irreducible(p, &m) {
                return Ok(Arc::new(FqField { p, k, modulus: m }));
            }
        }
        unreachable!("an irreducible polynomial of every degree exists over F_p")
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> usize {
        self.k
    }

    /// Number of elements `p^k`.
    pub fn order(&self) -> u128 {
        (self.p as u128).pow(self.k as u32)
    }

    /// The modulus as a human-readable polynomial in `T`.
    pub fn modulus_string(&self) -> String {
        let mut parts = Vec::new();
        for (i, &c) in self.modulus.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let body = match i {
                0 => format!("{c}"),
                1 => {
                    if c == 1 {
                        "T".to_string()
                    } else {
                        format!("{c}*T")
                    }
                }
                _ => {
                    if c == 1 {
                        format!("T^{i}")
                    } else {
                        format!("{c}*T^{i}")
                    }
                }
            };
            parts.push(body);
        }
        parts.join("+")
    }
}

/// An element of a finite field.
///
/// Invariant: `c` has length `field.k` with entries in `[0, p)`.
#[derive(Clone, PartialEq, Eq)]
pub struct FqElem {
    field: Arc<FqField>,
    c: Vec<u64>,
}

impl fmt::Debug for FqElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "FqElem({} in F_{}^{})",
            self,
            self.field.p,
            self.field.k
        )
    }
}

fn same_field(a: &FqElem, b: &FqElem) -> bool {
    Arc::ptr_eq(&a.field, &b.field) || a.field == b.field
}

impl FqElem {
    pub fn zero(field: &Arc<FqField>) -> FqElem {
        FqElem {
            field: field.clone(),
            c: vec![0; field.k],
        }
    }

    pub fn one(field: &Arc<FqField>) -> FqElem {
        Self::from_prime(field, 1)
    }

    /// The residue class of `T`, printed as `g`. In a prime field this is 0.
    pub fn generator(field: &Arc<FqField>) -> FqElem {
        if field.k == 1 {
            return Self::zero(field);
        }
        let mut c = vec![0; field.k];
        c[1] = 1;
        FqElem {
            field: field.clone(),
            c,
        }
    }

    /// Embeds an integer via reduction mod `p`.
    pub fn from_prime(field: &Arc<FqField>, value: i64) -> FqElem {
        let p = field.p as i64;
        let v = ((value % p) + p) % p;
        let mut c = vec![0; field.k];
        c[0] = v as u64;
        FqElem {
            field: field.clone(),
            c,
        }
    }

    /// Builds an element from coefficients of `1, g, g^2, ...`; shorter
    /// vectors are zero-padded, entries are reduced mod `p`.
    pub fn from_coeffs(field: &Arc<FqField>, coeffs: &[u64]) -> Result<FqElem> {
        if coeffs.len() > field.k {
            return Err(Error::data(format!(
                "coefficient vector of length {} in a degree-{} field",
                coeffs.len(),
                field.k
            )));
        }
        let mut c = vec![0; field.k];
        for (i, &x) in coeffs.iter().enumerate() {
            c[i] = x % field.p;
        }
        Ok(FqElem {
            field: field.clone(),
            c,
        })
    }

    /// The element with the given integer encoding: base-`p` digits of
    /// `code` are the coefficients of `1, g, g^2, ...`.
    pub fn from_code(field: &Arc<FqField>, code: u128) -> FqElem {
        let mut c = vec![0; field.k];
        let mut v = code;
        for slot in c.iter_mut() {
            *slot = (v % field.p as u128) as u64;
            v /= field.p as u128;
        }
        debug_assert_eq!(v, 0, "code out of range");
        FqElem {
            field: field.clone(),
            c,
        }
    }

    /// Inverse of [`FqElem::from_code`].
    pub fn code(&self) -> u128 {
        let mut v = 0u128;
        for &x in self.c.iter().rev() {
            v = v * self.field.p as u128 + x as u128;
        }
        v
    }

    pub fn field(&self) -> &Arc<FqField> {
        &self.field
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(|&x| x == 0)
    }

    pub fn is_one(&self) -> bool {
        self.c[0] == 1 && self.c[1..].iter().all(|&x| x == 0)
    }

    pub fn add(&self, other: &FqElem) -> FqElem {
        assert!(same_field(self, other), "elements of different fields");
        let p = self.field.p;
        let c = self
            .c
            .iter()
            .zip(&other.c)
            .map(|(&a, &b)| addm(a, b, p))
            .collect();
        FqElem {
            field: self.field.clone(),
            c,
        }
    }

    pub fn sub(&self, other: &FqElem) -> FqElem {
        assert!(same_field(self, other), "elements of different fields");
        let p = self.field.p;
        let c = self
            .c
            .iter()
            .zip(&other.c)
            .map(|(&a, &b)| subm(a, b, p))
            .collect();
        FqElem {
            field: self.field.clone(),
            c,
        }
    }

    pub fn neg(&self) -> FqElem {
        let p = self.field.p;
        let c = self.c.iter().map(|&a| subm(0, a, p)).collect();
        FqElem {
            field: self.field.clone(),
            c,
        }
    }

    pub fn mul(&self, other: &FqElem) -> FqElem {
        assert!(same_field(self, other), "elements of different fields");
        let p = self.field.p;
        let prod = up_mul(p, &self.c, &other.c);
        let rem = up_rem(p, &prod, &self.field.modulus);
        let mut c = rem;
        c.resize(self.field.k, 0);
        FqElem {
            field: self.field.clone(),
            c,
        }
    }

    pub fn inv(&self) -> Result<FqElem> {
        if self.is_zero() {
            return Err(Error::arithmetic("inverse of zero"));
        }
        // Extended Euclid in F_p[T] on (modulus, self).
        let p = self.field.p;
        let mut r0: Vec<u64> = self.field.modulus.clone();
        let mut r1: Vec<u64> = {
            let mut v = self.c.clone();
            up_trim(&mut v);
            v
        };
        let mut s0: Vec<u64> = Vec::new(); // coefficient of `self` for r0
        let mut s1: Vec<u64> = vec![1];
        while !r1.is_empty() {
            // Divide r0 by r1.
            let mut q: Vec<u64> = vec![0; r0.len().saturating_sub(r1.len()) + 1];
            let inv_lead = invm(*r1.last().unwrap(), p);
            let mut rem = r0.clone();
            while rem.len() >= r1.len() && !rem.is_empty() {
                let shift = rem.len() - r1.len();
                let coef = mulm(*rem.last().unwrap(), inv_lead, p);
                q[shift] = addm(q[shift], coef, p);
                for (i, &bi) in r1.iter().enumerate() {
                    rem[i + shift] = subm(rem[i + shift], mulm(coef, bi, p), p);
                }
                up_trim(&mut rem);
            }
            up_trim(&mut q);
            // (r0, r1) <- (r1, rem); (s0, s1) <- (s1, s0 - q*s1)
            let qs1 = up_mul(p, &q, &s1);
            let mut s2 = s0.clone();
            s2.resize(s2.len().max(qs1.len()), 0);
            for (i, &x) in qs1.iter().enumerate() {
                s2[i] = subm(s2[i], x, p);
            }
            up_trim(&mut s2);
            r0 = r1;
            r1 = rem;
            s0 = s1;
            s1 = s2;
        }
        // r0 = gcd (a nonzero constant since the modulus is irreducible).
        debug_assert_eq!(r0.len(), 1);
        let scale = invm(r0[0], p);
        let mut c: Vec<u64> = s0.iter().map(|&x| mulm(x, scale, p)).collect();
        c.resize(self.field.k, 0);
        let out = FqElem {
            field: self.field.clone(),
            c,
        };
        debug_assert!(out.mul(self).is_one());
        Ok(out)
    }

    pub fn pow(&self, mut e: u128) -> FqElem {
        let mut base = self.clone();
        let mut acc = FqElem::one(&self.field);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// `x -> x^p`, the absolute Frobenius.
    pub fn frobenius(&self) -> FqElem {
        self.pow(self.field.p as u128)
    }

    /// True when the element lies in the subfield `F_{p^d}`.
    pub fn in_subfield(&self, d: usize) -> bool {
        debug_assert!(self.field.k % d == 0);
        let q = (self.field.p as u128).pow(d as u32);
        self.pow(q) == *self
    }
}

impl fmt::Display for FqElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        for (i, &c) in self.c.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let part = match i {
                0 => format!("{c}"),
                1 => {
                    if c == 1 {
                        "g".to_string()
                    } else {
                        format!("{c}*g")
                    }
                }
                _ => {
                    if c == 1 {
                        format!("g^{i}")
                    } else {
                        format!("{c}*g^{i}")
                    }
                }
            };
            parts.push(part);
        }
        write!(f, "{}", parts.join("+"))
    }
}

/// Iterates over all elements of the field in encoding order.
pub fn field_elements(field: &Arc<FqField>) -> impl Iterator<Item = FqElem> {
    let field = field.clone();
    (0..field.order()).map(move |code| FqElem::from_code(&field, code))
}

// ---------------------------------------------------------------------------
// Frobenius square root, trace, Artin-Schreier.
// ---------------------------------------------------------------------------

/// The unique square root in characteristic 2: `c^(2^(k-1))`.
pub fn frobenius_sqrt(c: &FqElem) -> Result<FqElem> {
    let f = c.field();
    if f.p != 2 {
        return Err(Error::data(
            "frobenius_sqrt is specific to characteristic 2",
        ));
    }
    let r = c.pow(1u128 << (f.k - 1));
    debug_assert!(r.mul(&r) == *c);
    Ok(r)
}

/// An n-th root of `c` in its own field, when one exists. When `n` is
/// coprime to the group order the root is unique and computed by a power;
/// otherwise the elements are scanned in encoding order and the first root
/// is returned, which makes the choice canonical.
pub fn nth_root(c: &FqElem, n: u64) -> Result<FqElem> {
    assert!(n > 0);
    if c.is_zero() {
        return Ok(c.clone());
    }
    let f = c.field().clone();
    let group_order = f.order() - 1;
    let g = {
        let mut a = u128::from(n);
        let mut b = group_order;
        while b != 0 {
            (a, b) = (b, a % b);
        }
        a
    };
    if g == 1 {
        // Invert n modulo the group order.
        let (mut r0, mut r1) = (group_order as i128, (u128::from(n) % group_order) as i128);
        let (mut s0, mut s1) = (0i128, 1i128);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (s0, s1) = (s1, s0 - q * s1);
        }
        debug_assert_eq!(r0, 1);
        let m = s0.rem_euclid(group_order as i128) as u128;
        return Ok(c.pow(m));
    }
    if f.order() > 1 << 20 {
        return Err(Error::Resource(format!(
            "n-th root scan over a field of order {} refused",
            f.order()
        )));
    }
    for x in field_elements(&f) {
        if x.pow(u128::from(n)) == *c {
            return Ok(x);
        }
    }
    Err(Error::arithmetic(format!("no {n}-th root exists")))
}

/// Absolute trace `c + c^p + ... + c^(p^(k-1))`, returned as an element of
/// the prime field.
pub fn absolute_trace(c: &FqElem) -> u64 {
    let mut acc = c.clone();
    let mut power = c.clone();
    for _ in 1..c.field().k {
        power = power.frobenius();
        acc = acc.add(&power);
    }
    debug_assert!(
        acc.c[1..].iter().all(|&x| x == 0),
        "trace must land in the prime field"
    );
    acc.c[0]
}

/// The Artin-Schreier operator `wp(x) = x^p - x`.
pub fn artin_schreier_op(x: &FqElem) -> FqElem {
    x.frobenius().sub(x)
}

/// Solves `x^p - x = c` if possible.
///
/// The operator is `F_p`-linear, so this is Gaussian elimination over `F_p`
/// in the basis `1, g, ..., g^(k-1)`. Returns the solution with the
/// smallest integer encoding (solutions differ by constants), which makes
/// the answer canonical. Fails with a trace obstruction when no solution
/// exists in the field itself.
pub fn artin_schreier_solve(c: &FqElem) -> Result<FqElem> {
    let field = c.field().clone();
    let p = field.p;
    let k = field.k;
    // Column j = coefficients of wp(g^j).
    let mut m = vec![vec![0u64; k + 1]; k];
    for j in 0..k {
        let mut basis = vec![0u64; k];
        basis[j] = 1;
        let gj = FqElem::from_coeffs(&field, &basis).unwrap();
        let im = artin_schreier_op(&gj);
        for i in 0..k {
            m[i][j] = im.c[i];
        }
    }
    for i in 0..k {
        m[i][k] = c.c[i];
    }
    // Row-reduce [M | c].
    let mut pivot_cols = Vec::new();
    let mut row = 0;
    for col in 0..k {
        let Some(pr) = (row..k).find(|&r| m[r][col] != 0) else {
            continue;
        };
        m.swap(row, pr);
        let inv = invm(m[row][col], p);
        for x in m[row].iter_mut() {
            *x = mulm(*x, inv, p);
        }
        for r in 0..k {
            if r != row && m[r][col] != 0 {
                let factor = m[r][col];
                for cidx in 0..=k {
                    let sub = mulm(factor, m[row][cidx], p);
                    m[r][cidx] = subm(m[r][cidx], sub, p);
                }
            }
        }
        pivot_cols.push(col);
        row += 1;
        if row == k {
            break;
        }
    }
    for r in row..k {
        if m[r][k] != 0 {
            return Err(Error::TraceObstruction(format!(
                "x^{p} - x = {c} has no solution in F_{{{p}^{k}}} (trace {})",
                absolute_trace(c)
            )));
        }
    }
    let mut sol = vec![0u64; k];
    for (r, &col) in pivot_cols.iter().enumerate() {
        sol[col] = m[r][k];
    }
    let x0 = FqElem::from_coeffs(&field, &sol)?;
    debug_assert!(artin_schreier_op(&x0) == *c);
    // Canonical representative: minimize the encoding over x0 + F_p.
    let mut best = x0.clone();
    for t in 0..p {
        let cand = x0.add(&FqElem::from_prime(&field, t as i64));
        if cand.code() < best.code() {
            best = cand;
        }
    }
    Ok(best)
}

// ---------------------------------------------------------------------------
// Embeddings and the field tower.
// ---------------------------------------------------------------------------

/// Embeds `x` into `target`, which must be an extension with the same `p`
/// and `source.k | target.k`. The embedding sends the source generator to
/// the root of the source modulus in `target` with the smallest encoding,
/// so it is deterministic.
pub fn embed(x: &FqElem, target: &Arc<FqField>) -> Result<FqElem> {
    let src = x.field();
    if src.p != target.p {
        return Err(Error::data(format!(
            "cannot embed characteristic {} into characteristic {}",
            src.p, target.p
        )));
    }
    if target.k % src.k != 0 {
        return Err(Error::data(format!(
            "F_{{{}^{}}} does not embed into F_{{{}^{}}}",
            src.p, src.k, target.p, target.k
        )));
    }
    if src.k == target.k {
        return Ok(FqElem {
            field: target.clone(),
            c: x.c.clone(),
        });
    }
    let root = canonical_root(src, target)?;
    // Horner evaluation of the coefficient vector at the root.
    let mut acc = FqElem::zero(target);
    for &coef in x.c.iter().rev() {
        acc = acc.mul(&root);
        acc = acc.add(&FqElem::from_prime(target, coef as i64));
    }
    Ok(acc)
}

/// Smallest-encoding root of `src.modulus` in `target`.
fn canonical_root(src: &Arc<FqField>, target: &Arc<FqField>) -> Result<FqElem> {
    for cand in field_elements(target) {
        let mut acc = FqElem::zero(target);
        for &coef in src.modulus.iter().rev() {
            acc = acc.mul(&cand);
            acc = acc.add(&FqElem::from_prime(target, coef as i64));
        }
        if acc.is_zero() {
            return Ok(cand);
        }
    }
    unreachable!("the modulus splits in every extension of compatible degree")
}

/// The smallest field containing both arguments, subject to `kmax`.
pub fn common_field(a: &Arc<FqField>, b: &Arc<FqField>, kmax: usize) -> Result<Arc<FqField>> {
    if a.p != b.p {
        return Err(Error::data("fields of different characteristic"));
    }
    let l = num_integer::lcm(a.k, b.k);
    if l > kmax {
        return Err(Error::TowerBound(format!(
            "needed F_{{{}^{}}} but the extension bound is {}",
            a.p, l, kmax
        )));
    }
    if l == a.k {
        return Ok(a.clone());
    }
    if l == b.k {
        return Ok(b.clone());
    }
    FqField::new(a.p, l)
}

// ---------------------------------------------------------------------------
// Coefficient rings and scalars.
// ---------------------------------------------------------------------------

/// The coefficient ring of a polynomial: `Z`, `Q`, or a finite field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Ring {
    Int,
    Rat,
    Fq(Arc<FqField>),
}

impl Ring {
    pub fn characteristic(&self) -> u64 {
        match self {
            Ring::Int | Ring::Rat => 0,
            Ring::Fq(f) => f.p,
        }
    }

    pub fn is_field(&self) -> bool {
        !matches!(self, Ring::Int)
    }

    pub fn zero(&self) -> Scalar {
        match self {
            Ring::Int => Scalar::Int(BigInt::zero()),
            Ring::Rat => Scalar::Rat(BigRational::zero()),
            Ring::Fq(f) => Scalar::Fq(FqElem::zero(f)),
        }
    }

    pub fn one(&self) -> Scalar {
        match self {
            Ring::Int => Scalar::Int(BigInt::one()),
            Ring::Rat => Scalar::Rat(BigRational::one()),
            Ring::Fq(f) => Scalar::Fq(FqElem::one(f)),
        }
    }

    pub fn from_i64(&self, v: i64) -> Scalar {
        match self {
            Ring::Int => Scalar::Int(BigInt::from(v)),
            Ring::Rat => Scalar::Rat(BigRational::from_integer(BigInt::from(v))),
            Ring::Fq(f) => Scalar::Fq(FqElem::from_prime(f, v)),
        }
    }

    pub fn from_bigint(&self, v: &BigInt) -> Scalar {
        match self {
            Ring::Int => Scalar::Int(v.clone()),
            Ring::Rat => Scalar::Rat(BigRational::from_integer(v.clone())),
            Ring::Fq(f) => {
                let p = BigInt::from(f.p);
                let r = ((v % &p) + &p) % &p;
                let digits = r.to_u64_digits().1;
                let r64 = digits.first().copied().unwrap_or(0);
                Scalar::Fq(FqElem::from_prime(f, r64 as i64))
            }
        }
    }

    /// True when `s` belongs to this ring.
    pub fn contains(&self, s: &Scalar) -> bool {
        match (self, s) {
            (Ring::Int, Scalar::Int(_)) => true,
            (Ring::Rat, Scalar::Rat(_)) => true,
            (Ring::Fq(f), Scalar::Fq(x)) => **f == **x.field() || Arc::ptr_eq(f, x.field()),
            _ => false,
        }
    }
}

/// A coefficient: an integer, a rational, or a finite-field element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Scalar {
    Int(BigInt),
    Rat(BigRational),
    Fq(FqElem),
}

macro_rules! scalar_binop {
    ($name:ident, $int_op:expr, $rat_op:expr, $fq_op:expr) => {
        pub fn $name(&self, other: &Scalar) -> Scalar {
            match (self, other) {
                (Scalar::Int(a), Scalar::Int(b)) => Scalar::Int($int_op(a, b)),
                (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat($rat_op(a, b)),
                (Scalar::Fq(a), Scalar::Fq(b)) => Scalar::Fq($fq_op(a, b)),
                _ => panic!("scalar ring mismatch"),
            }
        }
    };
}

impl Scalar {
    scalar_binop!(add, |a, b| a + b, |a, b| a + b, FqElem::add);
    scalar_binop!(sub, |a, b| a - b, |a, b| a - b, FqElem::sub);
    scalar_binop!(mul, |a, b| a * b, |a, b| a * b, FqElem::mul);

    pub fn neg(&self) -> Scalar {
        match self {
            Scalar::Int(a) => Scalar::Int(-a),
            Scalar::Rat(a) => Scalar::Rat(-a),
            Scalar::Fq(a) => Scalar::Fq(a.neg()),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Int(a) => a.is_zero(),
            Scalar::Rat(a) => a.is_zero(),
            Scalar::Fq(a) => a.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Int(a) => a.is_one(),
            Scalar::Rat(a) => a.is_one(),
            Scalar::Fq(a) => a.is_one(),
        }
    }

    /// Multiplicative inverse; integers only invert to integers.
    pub fn inv(&self) -> Result<Scalar> {
        match self {
            Scalar::Int(a) => {
                if a.is_one() || (-a).is_one() {
                    Ok(Scalar::Int(a.clone()))
                } else {
                    Err(Error::arithmetic(format!("{a} is not a unit in Z")))
                }
            }
            Scalar::Rat(a) => {
                if a.is_zero() {
                    Err(Error::arithmetic("inverse of zero"))
                } else {
                    Ok(Scalar::Rat(a.recip()))
                }
            }
            Scalar::Fq(a) => Ok(Scalar::Fq(a.inv()?)),
        }
    }

    /// Exact division; fails for integers when the quotient is not integral.
    pub fn div_exact(&self, other: &Scalar) -> Result<Scalar> {
        match (self, other) {
            (Scalar::Int(a), Scalar::Int(b)) => {
                if b.is_zero() {
                    return Err(Error::arithmetic("division by zero"));
                }
                let (q, r) = num_integer::Integer::div_rem(a, b);
                if r.is_zero() {
                    Ok(Scalar::Int(q))
                } else {
                    Err(Error::arithmetic(format!("{a} is not divisible by {b}")))
                }
            }
            _ => Ok(self.mul(&other.inv()?)),
        }
    }

    pub fn pow(&self, e: u64) -> Scalar {
        match self {
            Scalar::Int(a) => Scalar::Int(num_traits::pow::pow(a.clone(), e as usize)),
            Scalar::Rat(a) => Scalar::Rat(num_traits::pow::pow(a.clone(), e as usize)),
            Scalar::Fq(a) => Scalar::Fq(a.pow(e as u128)),
        }
    }

    /// The underlying finite-field element, if any.
    pub fn as_fq(&self) -> Option<&FqElem> {
        match self {
            Scalar::Fq(x) => Some(x),
            _ => None,
        }
    }

    pub fn as_int(&self) -> Option<&BigInt> {
        match self {
            Scalar::Int(x) => Some(x),
            _ => None,
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Int(a) => write!(f, "{a}"),
            Scalar::Rat(a) => {
                if a.denom().is_one() {
                    write!(f, "{}", a.numer())
                } else {
                    write!(f, "{}/{}", a.numer(), a.denom())
                }
            }
            Scalar::Fq(a) => write!(f, "{a}"),
        }
    }
}

/// True when the scalar, printed as a leading coefficient, needs a minus
/// sign pulled out (integers and rationals only).
pub fn scalar_is_negative(s: &Scalar) -> bool {
    match s {
        Scalar::Int(a) => a.is_negative(),
        Scalar::Rat(a) => a.is_negative(),
        Scalar::Fq(_) => false,
    }
}

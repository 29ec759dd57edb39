//! Ternary quadratic forms, with the characteristic-2 degeneracy analysis
//! as the primary case.
//!
//! In characteristic 2 the polar form `b(u, v) = q(u + v) - q(u) - q(v)`
//! is alternating, so its 3x3 matrix has rank 0 or 2. When the rank is 2
//! the kernel is spanned by the vector of mixed coefficients
//! `(a_yz, a_xz, a_xy)`, and evaluating `q` there gives the
//! characteristic-2 discriminant. Over a perfect field this splits the
//! nonzero forms into exactly four classes: smooth conics, crosses (two
//! distinct lines, rational or conjugate), and double lines.

use crate::algebra::{absolute_trace, frobenius_sqrt, Ring, Scalar};
use crate::error::{Error, Result};
use crate::poly::{Monomial, Polynomial, VarSet};
use std::sync::Arc;

/// Coefficient layout: `[xx, yy, zz, xy, xz, yz]`.
pub const XX: usize = 0;
pub const YY: usize = 1;
pub const ZZ: usize = 2;
pub const XY: usize = 3;
pub const XZ: usize = 4;
pub const YZ: usize = 5;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TernaryForm {
    ring: Ring,
    c: [Scalar; 6],
}

impl TernaryForm {
    pub fn new(ring: &Ring, c: [Scalar; 6]) -> TernaryForm {
        debug_assert!(c.iter().all(|x| ring.contains(x)));
        TernaryForm {
            ring: ring.clone(),
            c,
        }
    }

    /// Reads the six coefficients off a homogeneous quadric in three
    /// variables.
    pub fn from_polynomial(p: &Polynomial) -> Result<TernaryForm> {
        if p.vars().len() != 3 {
            return Err(Error::data("expected a form in three variables"));
        }
        if !p.is_homogeneous() || p.total_degree().unwrap_or(2) != 2 {
            if !p.is_zero() {
                return Err(Error::data("expected a homogeneous quadric"));
            }
        }
        let m = |e: [u32; 3]| Monomial::from_exps(e.to_vec());
        Ok(TernaryForm {
            ring: p.ring().clone(),
            c: [
                p.coefficient(&m([2, 0, 0])),
                p.coefficient(&m([0, 2, 0])),
                p.coefficient(&m([0, 0, 2])),
                p.coefficient(&m([1, 1, 0])),
                p.coefficient(&m([1, 0, 1])),
                p.coefficient(&m([0, 1, 1])),
            ],
        })
    }

    pub fn to_polynomial(&self, vars: &Arc<VarSet>) -> Polynomial {
        assert_eq!(vars.len(), 3);
        let m = |e: [u32; 3]| Monomial::from_exps(e.to_vec());
        let monos = [
            m([2, 0, 0]),
            m([0, 2, 0]),
            m([0, 0, 2]),
            m([1, 1, 0]),
            m([1, 0, 1]),
            m([0, 1, 1]),
        ];
        let mut acc = Polynomial::zero(vars, &self.ring);
        for (mono, c) in monos.into_iter().zip(&self.c) {
            acc = acc.add(&Polynomial::term(vars, &self.ring, mono, c.clone()));
        }
        acc
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn coefficients(&self) -> &[Scalar; 6] {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(Scalar::is_zero)
    }

    pub fn eval(&self, v: &[Scalar; 3]) -> Scalar {
        let sq = |i: usize| v[i].mul(&v[i]);
        self.c[XX]
            .mul(&sq(0))
            .add(&self.c[YY].mul(&sq(1)))
            .add(&self.c[ZZ].mul(&sq(2)))
            .add(&self.c[XY].mul(&v[0].mul(&v[1])))
            .add(&self.c[XZ].mul(&v[0].mul(&v[2])))
            .add(&self.c[YZ].mul(&v[1].mul(&v[2])))
    }

    /// The polar form `q(u + v) - q(u) - q(v)`.
    pub fn polar(&self, u: &[Scalar; 3], v: &[Scalar; 3]) -> Scalar {
        let sum = [u[0].add(&v[0]), u[1].add(&v[1]), u[2].add(&v[2])];
        self.eval(&sum).sub(&self.eval(u)).sub(&self.eval(v))
    }

    /// In characteristic 2: the kernel vector `(a_yz, a_xz, a_xy)` of the
    /// rank-2 polar form, or `None` when the polar form vanishes.
    pub fn radical_vector(&self) -> Option<[Scalar; 3]> {
        if self.c[XY].is_zero() && self.c[XZ].is_zero() && self.c[YZ].is_zero() {
            return None;
        }
        Some([self.c[YZ].clone(), self.c[XZ].clone(), self.c[XY].clone()])
    }

    /// The form `v -> q(M v)` for a 3x3 matrix with columns the images of
    /// the basis vectors.
    pub fn substitute_linear(&self, m: &[[Scalar; 3]; 3]) -> TernaryForm {
        let vars = VarSet::new(&["x", "y", "z"]);
        let p = self.to_polynomial(&vars);
        let assignments: Vec<Polynomial> = (0..3)
            .map(|row| {
                let mut acc = Polynomial::zero(&vars, &self.ring);
                for (col, mcol) in m.iter().enumerate() {
                    acc = acc.add(&Polynomial::term(
                        &vars,
                        &self.ring,
                        Monomial::var(3, col, 1),
                        mcol[row].clone(),
                    ));
                }
                acc
            })
            .collect();
        TernaryForm::from_polynomial(&p.substitute(&assignments)).expect("still a quadric")
    }

    /// The characteristic-2 discriminant, the value of the form on the
    /// polar kernel vector:
    /// `a_xy a_xz a_yz + a_xz^2 a_yy + a_yz^2 a_xx + a_xy^2 a_zz`.
    pub fn disc_char2(&self) -> Scalar {
        let c = &self.c;
        c[XY].mul(&c[XZ])
            .mul(&c[YZ])
            .add(&c[XZ].mul(&c[XZ]).mul(&c[YY]))
            .add(&c[YZ].mul(&c[YZ]).mul(&c[XX]))
            .add(&c[XY].mul(&c[XY]).mul(&c[ZZ]))
    }
}

/// Determinant of a 3x3 scalar matrix (rows of rows).
pub fn det3(m: &[[Scalar; 3]; 3]) -> Scalar {
    let minor = |r1: usize, r2: usize, c1: usize, c2: usize| {
        m[r1][c1].mul(&m[r2][c2]).sub(&m[r1][c2].mul(&m[r2][c1]))
    };
    m[0][0]
        .mul(&minor(1, 2, 1, 2))
        .sub(&m[0][1].mul(&minor(1, 2, 0, 2)))
        .add(&m[0][2].mul(&minor(1, 2, 0, 1)))
}

// ---------------------------------------------------------------------------
// Discriminants with polynomial coefficients.
// ---------------------------------------------------------------------------

/// `4 a_xx a_yy a_zz + a_xy a_xz a_yz - a_xz^2 a_yy - a_yz^2 a_xx -
/// a_xy^2 a_zz`, half the determinant of the matrix of the polar form.
/// Valid over any coefficient ring; in characteristic 2 it degenerates to
/// the same expression as [`disc_char2_poly`].
pub fn disc_general_poly(c: &[Polynomial; 6]) -> Polynomial {
    let four = c[XX].ring().from_i64(4);
    let t1 = c[XX].mul(&c[YY]).mul(&c[ZZ]).mul_scalar(&four);
    let t2 = c[XY].mul(&c[XZ]).mul(&c[YZ]);
    let t3 = c[XZ].mul(&c[XZ]).mul(&c[YY]);
    let t4 = c[YZ].mul(&c[YZ]).mul(&c[XX]);
    let t5 = c[XY].mul(&c[XY]).mul(&c[ZZ]);
    t1.add(&t2).sub(&t3).sub(&t4).sub(&t5)
}

/// `a_xy a_xz a_yz + a_xz^2 a_yy + a_yz^2 a_xx + a_xy^2 a_zz`, the
/// characteristic-2 discriminant with polynomial coefficients.
pub fn disc_char2_poly(c: &[Polynomial; 6]) -> Polynomial {
    let t2 = c[XY].mul(&c[XZ]).mul(&c[YZ]);
    let t3 = c[XZ].mul(&c[XZ]).mul(&c[YY]);
    let t4 = c[YZ].mul(&c[YZ]).mul(&c[XX]);
    let t5 = c[XY].mul(&c[XY]).mul(&c[ZZ]);
    t2.add(&t3).add(&t4).add(&t5)
}

// ---------------------------------------------------------------------------
// Classification over finite fields of characteristic 2.
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FiberClass {
    SmoothConic,
    CrossSplit,
    CrossConjugate,
    DoubleLine,
}

impl FiberClass {
    pub fn is_degenerate(&self) -> bool {
        !matches!(self, FiberClass::SmoothConic)
    }

    /// Sort rank used by the degenerate-fiber table: double lines first,
    /// then split crosses, then conjugate crosses.
    pub fn table_rank(&self) -> u8 {
        match self {
            FiberClass::DoubleLine => 0,
            FiberClass::CrossSplit => 1,
            FiberClass::CrossConjugate => 2,
            FiberClass::SmoothConic => 3,
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            FiberClass::SmoothConic => "smooth-conic",
            FiberClass::CrossSplit => "cross-split",
            FiberClass::CrossConjugate => "cross-conjugate",
            FiberClass::DoubleLine => "double-line",
        }
    }
}

impl std::fmt::Display for FiberClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.label())
    }
}

fn require_char2(q: &TernaryForm) -> Result<()> {
    match &q.ring {
        Ring::Fq(f) if f.characteristic() == 2 => Ok(()),
        _ => Err(Error::data(
            "classification runs over finite fields of characteristic 2",
        )),
    }
}

/// Swap the roles of y and z.
fn swap_yz(c: &[Scalar; 6]) -> [Scalar; 6] {
    [
        c[XX].clone(),
        c[ZZ].clone(),
        c[YY].clone(),
        c[XZ].clone(),
        c[XY].clone(),
        c[YZ].clone(),
    ]
}

/// Swap the roles of x and y.
fn swap_xy(c: &[Scalar; 6]) -> [Scalar; 6] {
    [
        c[YY].clone(),
        c[XX].clone(),
        c[ZZ].clone(),
        c[XY].clone(),
        c[YZ].clone(),
        c[XZ].clone(),
    ]
}

/// For a cross (rank-2 polar form, discriminant zero): the residue of the
/// normal form `x^2 + xz + (AC) z^2`-side data, namely the product of the
/// outer coefficients after the form is brought to `A x^2 + xz + C z^2`.
/// The cross splits into two rational lines exactly when the absolute
/// trace of this invariant vanishes.
pub fn artin_schreier_invariant(q: &TernaryForm) -> Result<Scalar> {
    require_char2(q)?;
    // Move a nonzero mixed coefficient into the xz slot, trying xz, xy,
    // yz in that order.
    let mut c = if !q.c[XZ].is_zero() {
        q.c.clone()
    } else if !q.c[XY].is_zero() {
        swap_yz(&q.c)
    } else if !q.c[YZ].is_zero() {
        swap_xy(&q.c)
    } else {
        return Err(Error::data("polar form vanishes: not a cross"));
    };
    // Scale x by the inverse of the xz coefficient.
    let b_inv = c[XZ].inv()?;
    c[XX] = c[XX].mul(&b_inv).mul(&b_inv);
    c[XY] = c[XY].mul(&b_inv);
    c[XZ] = q.ring.one();
    // Shear x -> x + a_yz y and z -> z + a_xy y, which clears both other
    // mixed coefficients and sends the y^2 coefficient to the (rescaled)
    // discriminant.
    let beta = c[XY].clone();
    let gamma = c[YZ].clone();
    let new_yy = c[YY]
        .add(&c[XX].mul(&gamma).mul(&gamma))
        .add(&c[ZZ].mul(&beta).mul(&beta))
        .add(&beta.mul(&gamma));
    if !new_yy.is_zero() {
        return Err(Error::data(
            "nonzero discriminant: a smooth conic has no splitting invariant",
        ));
    }
    c[YY] = new_yy;
    c[XY] = q.ring.zero();
    c[YZ] = q.ring.zero();
    Ok(c[XX].mul(&c[ZZ]))
}

/// Classifies a nonzero ternary quadratic form over a finite field of
/// characteristic 2 into the four degeneracy classes.
pub fn classify(q: &TernaryForm) -> Result<FiberClass> {
    require_char2(q)?;
    if q.is_zero() {
        return Err(Error::data("the zero form has no class"));
    }
    let Some(v) = q.radical_vector() else {
        // Vanishing polar form over a perfect field: q is the square of a
        // linear form.
        return Ok(FiberClass::DoubleLine);
    };
    if !q.eval(&v).is_zero() {
        return Ok(FiberClass::SmoothConic);
    }
    let inv = artin_schreier_invariant(q)?;
    let Scalar::Fq(inv) = inv else { unreachable!() };
    if absolute_trace(&inv) == 0 {
        Ok(FiberClass::CrossSplit)
    } else {
        Ok(FiberClass::CrossConjugate)
    }
}

/// For a double line `q = (r x + s y + t z)^2` over a perfect field of
/// characteristic 2: the coefficients `(r, s, t)` of the repeated line.
pub fn double_line_components(q: &TernaryForm) -> Result<[Scalar; 3]> {
    require_char2(q)?;
    if q.radical_vector().is_some() {
        return Err(Error::data("polar form does not vanish: not a double line"));
    }
    let root = |s: &Scalar| -> Result<Scalar> {
        let Scalar::Fq(x) = s else { unreachable!() };
        Ok(Scalar::Fq(frobenius_sqrt(x)?))
    };
    Ok([root(&q.c[XX])?, root(&q.c[YY])?, root(&q.c[ZZ])?])
}

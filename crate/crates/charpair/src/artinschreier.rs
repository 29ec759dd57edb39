//! Double covers of discriminant lines and their Artin-Schreier classes.
//!
//! Along a line component of the discriminant the fibers are generically
//! crosses, and the choice between the two line components of each cross
//! traces out a double cover of the line. In characteristic 2 the cover
//! is the Artin-Schreier extension `y^2 + y = alpha` of the function
//! field of the line, and its isomorphism class over the algebraic
//! closure is the coset of `alpha` modulo the image of `f -> f^2 + f`
//! and modulo constants.
//!
//! [`reduce_class`] computes a canonical coset representative: a
//! rational function whose finite poles all have odd order, whose
//! polynomial part has only odd-degree terms, and with no constant term.
//! Such a representative is unique, because a nonzero function of that
//! shape cannot lie in the image of `f -> f^2 + f` (squaring doubles
//! every pole order). [`line_cover`] assembles the descriptor for a
//! concrete line: ramification point, affine class, and its reduction.

use crate::algebra::{frobenius_sqrt, FqElem, FqField, Ring, Scalar};
use crate::bundle::{line_points, line_span, normalize_point, ConicBundle};
use crate::error::{Error, Result};
use crate::poly::{Monomial, Polynomial, RationalFunction, UniPoly, VarSet};
use crate::quadform::{disc_char2_poly, XX, XY, XZ, YY, YZ, ZZ};
use std::sync::Arc;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ResidueClass {
    /// The cover splits: the class reduces to zero.
    Trivial,
    /// The class reduces to the affine coordinate itself, a single
    /// odd-order pole at the ramification point.
    CanonicalPole,
}

impl std::fmt::Display for ResidueClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ResidueClass::Trivial => write!(f, "trivial"),
            ResidueClass::CanonicalPole => write!(f, "canonical-pole"),
        }
    }
}

#[derive(Debug, Clone)]
pub struct LineCover {
    /// The linear form cutting the line out of the base.
    pub line: Polynomial,
    /// Base point of the parameterization, at the affine coordinate 0.
    pub base_point: Vec<FqElem>,
    /// Ramification point of the cover, placed at infinity.
    pub ramification: Vec<FqElem>,
    /// The class `a c / b^2` in the affine coordinate, before reduction.
    pub raw_class: RationalFunction,
    /// Canonical representative of the class modulo `f^2 + f` and
    /// constants, possibly over an extension field.
    pub reduced: RationalFunction,
    pub class: ResidueClass,
}

/// Analyzes the double cover of a discriminant line. `line` must be a
/// linear form over the bundle's (characteristic-2) base field whose
/// zero locus lies inside the discriminant. The line is parameterized
/// so that the unique ramification point sits at infinity; the cover
/// class is then reduced and matched against the two classes a single
/// odd ramification point allows.
pub fn line_cover(bundle: &ConicBundle, line: &Polynomial, kmax: usize) -> Result<LineCover> {
    let Ring::Fq(field) = bundle.ring().clone() else {
        return Err(Error::data("expected a bundle over a finite field"));
    };
    if field.characteristic() != 2 {
        return Err(Error::data("residue classes live in characteristic 2"));
    }
    if line.vars() != bundle.base_vars() || line.ring() != bundle.ring() {
        return Err(Error::data("the line must live on the same base"));
    }
    if line.is_zero() || line.total_degree() != Some(1) || !line.is_homogeneous() {
        return Err(Error::data("expected a nonzero linear form"));
    }
    let line_coeffs: Vec<FqElem> = (0..3)
        .map(|i| match line.coefficient(&Monomial::var(3, i, 1)) {
            Scalar::Fq(e) => e,
            _ => unreachable!(),
        })
        .collect();

    // Provisional parameterization by the kernel basis, to locate the
    // ramification point.
    let span = line_span(&line_coeffs, &field)?;
    let restricted = bundle.restrict_to_line(&span[0], &span[1])?;
    let disc = disc_char2_poly(&restricted);
    if !disc.is_zero() {
        return Err(Error::hypothesis(
            "the line is not contained in the discriminant",
        ));
    }
    let mixed: Vec<&Polynomial> = [XY, XZ, YZ]
        .iter()
        .map(|&i| &restricted[i])
        .filter(|p| !p.is_zero())
        .collect();
    if mixed.is_empty() {
        return Err(Error::hypothesis(
            "every fiber over the line is a double line; there is no cover",
        ));
    }
    let (s_mult, gcd_t) = binary_forms_gcd(&mixed, bundle.coefficient_degree())?;
    let gcd_degree = s_mult + gcd_t.degree().unwrap_or(0);
    if gcd_degree != 1 {
        return Err(Error::hypothesis(format!(
            "the cover ramifies in a divisor of degree {gcd_degree}, not at a single simple point"
        )));
    }
    let ramification = if s_mult == 1 {
        span[1].clone()
    } else {
        // gcd_t is monic linear: t + r vanishes at t = -r.
        let r = gcd_t.coeff(0).neg();
        let Scalar::Fq(r) = r else { unreachable!() };
        let pt: Vec<FqElem> = (0..3)
            .map(|i| span[0][i].add(&r.mul(&span[1][i])))
            .collect();
        normalize_point(&pt)?
    };

    // Final parameterization: infinity at the ramification point, zero
    // at the first other rational point of the line.
    let base_point = line_points(&line_coeffs, &field)?
        .into_iter()
        .find(|p| *p != ramification)
        .expect("a projective line has at least three rational points");
    let restricted = bundle.restrict_to_line(&base_point, &ramification)?;

    let radical = [&restricted[YZ], &restricted[XZ], &restricted[XY]];
    let Some(pivot) = radical.iter().position(|p| !p.is_zero()) else {
        return Err(Error::hypothesis(
            "every fiber over the line is a double line; there is no cover",
        ));
    };
    let complement: Vec<usize> = (0..3).filter(|&i| i != pivot).collect();
    let square_index = [XX, YY, ZZ];
    let mixed_index = |i: usize, j: usize| match (i, j) {
        (0, 1) => XY,
        (0, 2) => XZ,
        (1, 2) => YZ,
        _ => unreachable!(),
    };
    let a = &restricted[square_index[complement[0]]];
    let b = &restricted[mixed_index(complement[0], complement[1])];
    let c = &restricted[square_index[complement[1]]];
    debug_assert!(!b.is_zero());
    let num = a.mul(c).dehomogenize(0);
    let den = b.mul(b).dehomogenize(0);
    let raw_class = RationalFunction::new(num, den)?;
    let reduced = reduce_class(&raw_class, kmax)?;
    let class = if reduced.is_zero() {
        ResidueClass::Trivial
    } else if reduced == affine_coordinate(&reduced) {
        ResidueClass::CanonicalPole
    } else {
        return Err(Error::hypothesis(format!(
            "the cover class reduces to {reduced}, which is neither trivial nor the affine coordinate"
        )));
    };
    Ok(LineCover {
        line: line.clone(),
        base_point,
        ramification,
        raw_class,
        reduced,
        class,
    })
}

/// The affine coordinate as a rational function over the same ring and
/// variable as `model`.
fn affine_coordinate(model: &RationalFunction) -> RationalFunction {
    let vars = model.num().vars();
    let ring = model.num().ring();
    RationalFunction::from_polynomial(&Polynomial::var(vars, ring, 0))
}

/// Greatest common divisor of nonzero binary forms of one homogeneous
/// degree in `s, t`, returned as the multiplicity of `s` together with
/// the monic gcd of the dehomogenizations in `t`.
fn binary_forms_gcd(forms: &[&Polynomial], degree: u32) -> Result<(usize, UniPoly)> {
    let mut s_mult = usize::MAX;
    let mut gcd: Option<UniPoly> = None;
    for form in forms {
        let dehom = UniPoly::from_polynomial(&form.dehomogenize(0))?;
        let deg_t = dehom.degree().expect("nonzero form stays nonzero");
        s_mult = s_mult.min(degree as usize - deg_t);
        gcd = Some(match gcd {
            None => dehom.monic()?,
            Some(g) => g.gcd(&dehom)?,
        });
    }
    Ok((s_mult, gcd.expect("at least one form")))
}

/// The smallest extension of the coefficient field of `f`, of absolute
/// degree at most `kmax`, over which `f` splits into linear factors.
fn splitting_field(f: &UniPoly, kmax: usize) -> Result<Arc<FqField>> {
    let Ring::Fq(base) = f.ring() else {
        return Err(Error::data("expected finite-field coefficients"));
    };
    let deg = f.degree().unwrap_or(0);
    if deg == 0 {
        return Ok(base.clone());
    }
    let k0 = base.degree();
    let mut m = k0;
    while m <= kmax {
        let ext = FqField::new(base.characteristic(), m)?;
        let lifted = f.embed_into(&ext)?;
        let count: usize = lifted.roots_in_field()?.iter().map(|(_, mu)| mu).sum();
        if count == deg {
            return Ok(ext);
        }
        m += k0;
    }
    Err(Error::TowerBound(format!(
        "a degree-{deg} denominator does not split within extension degree {kmax}"
    )))
}

/// Canonical representative of a rational function modulo the image of
/// `f -> f^2 + f` and modulo constants, over the smallest extension (up
/// to absolute degree `kmax`) splitting the denominator. The result has
/// only odd-order finite poles, only odd-degree polynomial terms, and no
/// constant term; zero means the class is trivial over the algebraic
/// closure.
pub fn reduce_class(alpha: &RationalFunction, kmax: usize) -> Result<RationalFunction> {
    let vars = alpha.num().vars().clone();
    if vars.len() != 1 {
        return Err(Error::data("expected a univariate rational function"));
    }
    let Ring::Fq(base) = alpha.num().ring().clone() else {
        return Err(Error::data("expected finite-field coefficients"));
    };
    if base.characteristic() != 2 {
        return Err(Error::data("reduction runs in characteristic 2"));
    }
    let den0 = UniPoly::from_polynomial(alpha.den())?;
    let field = splitting_field(&den0, kmax)?;
    let ring = Ring::Fq(field.clone());
    let num = UniPoly::from_polynomial(alpha.num())?.embed_into(&field)?;
    let mut den = den0.embed_into(&field)?;

    // Separate the polynomial part from the proper fraction.
    let (mut poly_part, mut frac_num) = num.div_rem(&den)?;

    // Principal parts: peel one root of the denominator at a time by
    // evaluation and exact division.
    let mut parts: Vec<(Scalar, Vec<Scalar>)> = Vec::new();
    let roots = den.roots_in_field()?;
    for (root, mult) in roots {
        let linear = UniPoly::from_coeffs(&ring, vec![root.neg(), ring.one()]);
        let (h2, rem) = den.div_rem(&linear.pow(mult))?;
        debug_assert!(rem.is_zero());
        let mut orders = vec![ring.zero(); mult + 1];
        for k in (1..=mult).rev() {
            let value = frac_num.eval(&root);
            let c = value.mul(&h2.eval(&root).inv()?);
            orders[k] = c;
            // frac_num/( (t-r)^k h2 ) - c/(t-r)^k has numerator divisible
            // by t - r.
            let (next, rem) = frac_num.sub(&h2.mul_scalar(&orders[k])).div_rem(&linear)?;
            debug_assert!(rem.is_zero());
            frac_num = next;
        }
        parts.push((root, orders));
        den = h2;
    }
    debug_assert!(frac_num.is_zero(), "proper fraction fully decomposed");

    // Halve even pole orders: c/(t-r)^{2m} differs from sqrt(c)/(t-r)^m
    // by an element of the image of f -> f^2 + f.
    for (_, orders) in parts.iter_mut() {
        for k in (2..orders.len()).rev() {
            if k % 2 == 0 && !orders[k].is_zero() {
                let Scalar::Fq(c) = orders[k].clone() else { unreachable!() };
                let root = Scalar::Fq(frobenius_sqrt(&c)?);
                orders[k / 2] = orders[k / 2].add(&root);
                orders[k] = ring.zero();
            }
        }
    }

    // Same for the polynomial part at infinity, then drop the constant:
    // over the algebraic closure every constant is of the form f^2 + f.
    let mut coeffs = poly_part.coeffs().to_vec();
    for e in (2..coeffs.len()).rev() {
        if e % 2 == 0 && !coeffs[e].is_zero() {
            let Scalar::Fq(c) = coeffs[e].clone() else { unreachable!() };
            let root = Scalar::Fq(frobenius_sqrt(&c)?);
            coeffs[e / 2] = coeffs[e / 2].add(&root);
            coeffs[e] = ring.zero();
        }
    }
    if !coeffs.is_empty() {
        coeffs[0] = ring.zero();
    }
    poly_part = UniPoly::from_coeffs(&ring, coeffs);

    // Reassemble.
    let mut acc = RationalFunction::from_polynomial(&unipoly_to_poly(&poly_part, &vars));
    for (root, orders) in &parts {
        let linear = Polynomial::var(&vars, &ring, 0).sub(&Polynomial::constant(
            &vars,
            &ring,
            root.clone(),
        ));
        for (k, c) in orders.iter().enumerate().skip(1) {
            if c.is_zero() {
                continue;
            }
            let term = RationalFunction::new(
                Polynomial::constant(&vars, &ring, c.clone()),
                linear.pow(k as u32),
            )?;
            acc = acc.add(&term)?;
        }
    }
    Ok(acc)
}

/// Whether two classes agree modulo the image of `f -> f^2 + f` and
/// constants, over the algebraic closure.
pub fn classes_equal(
    a: &RationalFunction,
    b: &RationalFunction,
    kmax: usize,
) -> Result<bool> {
    let (a, b) = common_field_pair(a, b)?;
    Ok(reduce_class(&a.sub(&b)?, kmax)?.is_zero())
}

/// The image of `f` under `f -> f^2 + f`, for building test classes.
pub fn artin_schreier_image(f: &RationalFunction) -> Result<RationalFunction> {
    f.mul(f)?.add(f)
}

fn common_field_pair(
    a: &RationalFunction,
    b: &RationalFunction,
) -> Result<(RationalFunction, RationalFunction)> {
    let Ring::Fq(fa) = a.num().ring().clone() else {
        return Err(Error::data("expected finite-field coefficients"));
    };
    let Ring::Fq(fb) = b.num().ring().clone() else {
        return Err(Error::data("expected finite-field coefficients"));
    };
    if fa == fb {
        return Ok((a.clone(), b.clone()));
    }
    let ka = fa.degree();
    let kb = fb.degree();
    let lcm = ka / gcd_usize(ka, kb) * kb;
    let field = FqField::new(fa.characteristic(), lcm)?;
    let lift = |f: &RationalFunction| -> Result<RationalFunction> {
        RationalFunction::new(f.num().embed_coeffs(&field)?, f.den().embed_coeffs(&field)?)
    };
    Ok((lift(a)?, lift(b)?))
}

fn gcd_usize(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd_usize(b, a % b)
    }
}

fn unipoly_to_poly(p: &UniPoly, vars: &Arc<VarSet>) -> Polynomial {
    let mut acc = Polynomial::zero(vars, p.ring());
    for (e, c) in p.coeffs().iter().enumerate() {
        if !c.is_zero() {
            acc = acc.add(&Polynomial::term(
                vars,
                p.ring(),
                Monomial::var(1, 0, e as u32),
                c.clone(),
            ));
        }
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::DEFAULT_KMAX;
    use crate::fixtures;
    use rand::{Rng, SeedableRng};

    fn tau_ring() -> (Arc<VarSet>, Ring) {
        (
            VarSet::new(&["t"]),
            Ring::Fq(FqField::new(2, 1).unwrap()),
        )
    }

    fn rational(num: &str, den: &str) -> RationalFunction {
        let (vars, ring) = tau_ring();
        RationalFunction::new(
            Polynomial::parse(num, &vars, &ring).unwrap(),
            Polynomial::parse(den, &vars, &ring).unwrap(),
        )
        .unwrap()
    }

    #[test]
    fn reduction_halves_even_orders_and_drops_constants() {
        let kmax = DEFAULT_KMAX;
        // t^4 + t^2 + t = (t^2 + t)^2 + (t^2 + t) + t.
        assert_eq!(
            reduce_class(&rational("t^4+t^2+t", "1"), kmax).unwrap(),
            rational("t", "1")
        );
        // A double pole becomes a simple pole at the same point.
        assert_eq!(
            reduce_class(&rational("1", "t^2+1"), kmax).unwrap(),
            rational("1", "t+1")
        );
        // Constants vanish over the algebraic closure.
        assert!(reduce_class(&rational("1", "1"), kmax).unwrap().is_zero());
        assert_eq!(
            reduce_class(&rational("t+1", "1"), kmax).unwrap(),
            rational("t", "1")
        );
    }

    #[test]
    fn images_of_the_operator_reduce_to_zero() {
        let kmax = DEFAULT_KMAX;
        for (num, den) in [
            ("t^2+t+1", "t+1"),
            ("t^3", "t^2+t+1"),
            ("1", "t^3+t+1"),
            ("t^5+t", "t^2+1"),
        ] {
            let f = rational(num, den);
            let image = artin_schreier_image(&f).unwrap();
            let reduced = reduce_class(&image, kmax).unwrap();
            assert!(reduced.is_zero(), "\u{2118}({num}/{den}) reduced to {reduced}");
        }
    }

    #[test]
    fn coset_invariance_on_random_shifts() {
        let kmax = DEFAULT_KMAX;
        let field = FqField::new(2, 2).unwrap();
        let ring = Ring::Fq(field.clone());
        let vars = VarSet::new(&["t"]);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(23);
        let alpha = RationalFunction::new(
            Polynomial::parse("t^3+g*t", &vars, &ring).unwrap(),
            Polynomial::parse("t^2+t+g", &vars, &ring).unwrap(),
        )
        .unwrap();
        let base = reduce_class(&alpha, kmax).unwrap();
        for _ in 0..10 {
            let coeffs: Vec<String> = (0..3)
                .map(|e| format!("{}*t^{e}", ["0", "1", "g", "g+1"][rng.gen_range(0..4)]))
                .collect();
            let f_num = coeffs.join("+");
            let f = RationalFunction::new(
                Polynomial::parse(&f_num, &vars, &ring).unwrap(),
                Polynomial::parse("t+g", &vars, &ring).unwrap(),
            )
            .unwrap();
            let shifted = alpha.add(&artin_schreier_image(&f).unwrap()).unwrap();
            let reduced = reduce_class(&shifted, kmax).unwrap();
            assert_eq!(reduced, base);
            assert!(classes_equal(&alpha, &shifted, kmax).unwrap());
        }
        assert!(!classes_equal(&alpha, &rational("0", "1"), kmax).unwrap());
    }

    #[test]
    fn line_covers_of_the_main_example_are_canonical() {
        let field = FqField::new(2, 1).unwrap();
        let b = fixtures::primary_bundle().reduce_mod_p(&field).unwrap();
        let vars = b.base_vars().clone();
        let ring = b.ring().clone();
        for text in ["u", "w", "u+w"] {
            let line = Polynomial::parse(text, &vars, &ring).unwrap();
            let cover = line_cover(&b, &line, DEFAULT_KMAX).unwrap();
            assert_eq!(cover.class, ResidueClass::CanonicalPole, "line {text}");
            // All three covers ramify exactly over the double-line point.
            let codes: Vec<u128> = cover.ramification.iter().map(|c| c.code()).collect();
            assert_eq!(codes, vec![0, 1, 0], "line {text}");
            assert_eq!(
                cover.reduced,
                affine_coordinate(&cover.reduced),
                "line {text}"
            );
        }
    }

    #[test]
    fn line_covers_of_the_companion_example_are_canonical() {
        let b = fixtures::companion_bundle();
        let vars = b.base_vars().clone();
        let ring = b.ring().clone();
        for text in ["u", "w", "u+w"] {
            let line = Polynomial::parse(text, &vars, &ring).unwrap();
            let cover = line_cover(&b, &line, DEFAULT_KMAX).unwrap();
            assert_eq!(cover.class, ResidueClass::CanonicalPole, "line {text}");
            let codes: Vec<u128> = cover.ramification.iter().map(|c| c.code()).collect();
            assert_eq!(codes, vec![0, 1, 0], "line {text}");
        }
    }

    #[test]
    fn a_split_cover_reduces_to_the_trivial_class() {
        let field = FqField::new(2, 1).unwrap();
        let ring = Ring::Fq(field);
        let vars = VarSet::new(&["u", "v", "w"]);
        let p = |t: &str| Polynomial::parse(t, &vars, &ring).unwrap();
        let b = ConicBundle::new([p("v"), p("w"), p("u+v"), p("0"), p("u"), p("0")]).unwrap();
        let line = p("w");
        let cover = line_cover(&b, &line, DEFAULT_KMAX).unwrap();
        assert_eq!(cover.class, ResidueClass::Trivial);
        assert!(cover.reduced.is_zero());
    }

    #[test]
    fn lines_outside_the_discriminant_are_rejected() {
        let field = FqField::new(2, 1).unwrap();
        let b = fixtures::primary_bundle().reduce_mod_p(&field).unwrap();
        let vars = b.base_vars().clone();
        let line = Polynomial::parse("v", &vars, b.ring()).unwrap();
        let err = line_cover(&b, &line, DEFAULT_KMAX).unwrap_err();
        assert!(err.to_string().contains("discriminant"), "{err}");
    }
}

//! Conic bundles over the projective plane: a ternary quadratic form
//! whose six coefficients are homogeneous polynomials of a common degree
//! in the base coordinates.
//!
//! The module covers the family-level geometry: the discriminant curve,
//! per-point fiber classification, the bihomogeneous equation of the
//! total space inside P^2 x P^2, its Jacobian charts, and a census of
//! the singular points of the total space over a finite field of
//! characteristic 2, certified complete by comparing the sum of local
//! lengths against the global length of the singular scheme.

use crate::algebra::{embed, field_elements, FqElem, FqField, Ring, Scalar};
use crate::error::{Error, Result};
use crate::groebner::{glued_chart_length, local_length_at, Chart, GroebnerOptions, Length};
use crate::poly::{Monomial, Polynomial, VarSet};
use crate::quadform::{
    classify, disc_char2_poly, disc_general_poly, double_line_components, FiberClass, TernaryForm,
    XX, XY, XZ, YY, YZ, ZZ,
};
use std::sync::Arc;

/// Fiber coordinate names used for the total-space equation.
const FIBER_NAMES: [&str; 3] = ["x", "y", "z"];

#[derive(Debug, Clone)]
pub struct ConicBundle {
    ring: Ring,
    base_vars: Arc<VarSet>,
    coeffs: [Polynomial; 6],
    degree: u32,
}

impl ConicBundle {
    /// Builds a bundle from the six coefficient polynomials in the layout
    /// `[xx, yy, zz, xy, xz, yz]`. The nonzero coefficients must be
    /// homogeneous of one common degree in a three-variable base.
    pub fn new(coeffs: [Polynomial; 6]) -> Result<ConicBundle> {
        let base_vars = coeffs[0].vars().clone();
        if base_vars.len() != 3 {
            return Err(Error::data("expected a three-variable base"));
        }
        let ring = coeffs[0].ring().clone();
        let mut degree = None;
        for c in &coeffs {
            if c.vars() != &base_vars || c.ring() != &ring {
                return Err(Error::data(
                    "coefficients must share one base ring and variable set",
                ));
            }
            if c.is_zero() {
                continue;
            }
            if !c.is_homogeneous() {
                return Err(Error::data("coefficients must be homogeneous"));
            }
            let d = c.total_degree().unwrap();
            if *degree.get_or_insert(d) != d {
                return Err(Error::data(
                    "coefficients must share one homogeneous degree",
                ));
            }
        }
        let Some(degree) = degree else {
            return Err(Error::data("the zero bundle is not allowed"));
        };
        Ok(ConicBundle {
            ring,
            base_vars,
            coeffs,
            degree,
        })
    }

    /// Builds a bundle from the symmetric matrix of its polar form, whose
    /// diagonal carries twice the square coefficients. Requires 2 to be
    /// a nonzerodivisor, so characteristic 2 is rejected.
    pub fn from_polar_matrix(m: &[[Polynomial; 3]; 3]) -> Result<ConicBundle> {
        let ring = m[0][0].ring().clone();
        if ring.characteristic() == 2 {
            return Err(Error::data(
                "the polar matrix does not determine the form in characteristic 2",
            ));
        }
        for i in 0..3 {
            for j in (i + 1)..3 {
                if m[i][j] != m[j][i] {
                    return Err(Error::data("polar matrix must be symmetric"));
                }
            }
        }
        let vars = m[0][0].vars();
        let two = Polynomial::constant(vars, &ring, ring.from_i64(2));
        let half = |p: &Polynomial| -> Result<Polynomial> {
            p.exact_divide(&two).map_err(|_| {
                Error::data("diagonal entries of the polar matrix must be divisible by 2")
            })
        };
        ConicBundle::new([
            half(&m[0][0])?,
            half(&m[1][1])?,
            half(&m[2][2])?,
            m[0][1].clone(),
            m[0][2].clone(),
            m[1][2].clone(),
        ])
    }

    /// The symmetric matrix of the polar form: diagonal `2 a_ii`,
    /// off-diagonal `a_ij`.
    pub fn polar_matrix(&self) -> [[Polynomial; 3]; 3] {
        let two = |p: &Polynomial| p.mul_scalar(&self.ring.from_i64(2));
        [
            [two(&self.coeffs[XX]), self.coeffs[XY].clone(), self.coeffs[XZ].clone()],
            [self.coeffs[XY].clone(), two(&self.coeffs[YY]), self.coeffs[YZ].clone()],
            [self.coeffs[XZ].clone(), self.coeffs[YZ].clone(), two(&self.coeffs[ZZ])],
        ]
    }

    pub fn coefficients(&self) -> &[Polynomial; 6] {
        &self.coeffs
    }

    pub fn base_vars(&self) -> &Arc<VarSet> {
        &self.base_vars
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn coefficient_degree(&self) -> u32 {
        self.degree
    }

    pub fn reduce_mod_p(&self, field: &Arc<FqField>) -> Result<ConicBundle> {
        let c: Vec<Polynomial> = self
            .coeffs
            .iter()
            .map(|p| p.reduce_mod_p(field))
            .collect::<Result<_>>()?;
        ConicBundle::new(c.try_into().unwrap())
    }

    pub fn embed_coeffs(&self, field: &Arc<FqField>) -> Result<ConicBundle> {
        let c: Vec<Polynomial> = self
            .coeffs
            .iter()
            .map(|p| p.embed_coeffs(field))
            .collect::<Result<_>>()?;
        ConicBundle::new(c.try_into().unwrap())
    }

    /// The discriminant of the family: the characteristic-2 kernel-value
    /// formula over fields of characteristic 2, half the polar
    /// determinant otherwise.
    pub fn discriminant(&self) -> Polynomial {
        if self.ring.characteristic() == 2 {
            disc_char2_poly(&self.coeffs)
        } else {
            disc_general_poly(&self.coeffs)
        }
    }

    fn require_fq(&self) -> Result<Arc<FqField>> {
        match &self.ring {
            Ring::Fq(f) => Ok(f.clone()),
            _ => Err(Error::data("expected a bundle over a finite field")),
        }
    }

    /// Evaluates the six coefficients at a base point, embedding the
    /// coefficients into the point's field when that field is larger.
    pub fn fiber_at(&self, point: &[FqElem]) -> Result<TernaryForm> {
        assert_eq!(point.len(), 3);
        let own = self.require_fq()?;
        let target = point[0].field().clone();
        let scalars: Vec<Scalar> = point.iter().map(|x| Scalar::Fq(x.clone())).collect();
        let evaluate = |coeffs: &[Polynomial; 6]| -> [Scalar; 6] {
            std::array::from_fn(|i| coeffs[i].eval(&scalars))
        };
        if *own == *target {
            Ok(TernaryForm::new(&self.ring, evaluate(&self.coeffs)))
        } else {
            let lifted = self.embed_coeffs(&target)?;
            Ok(TernaryForm::new(&lifted.ring, evaluate(&lifted.coeffs)))
        }
    }

    /// Coefficientwise derivative with respect to one base variable, in
    /// the same layout.
    pub fn base_partial(&self, var: usize) -> [Polynomial; 6] {
        std::array::from_fn(|i| self.coeffs[i].derivative(var))
    }

    /// Restricts the coefficients to the line through `p0` and `p1`,
    /// parameterized by `(s, t) -> s p0 + t p1`. Returns binary forms in
    /// the variables `s, t`.
    pub fn restrict_to_line(&self, p0: &[FqElem], p1: &[FqElem]) -> Result<[Polynomial; 6]> {
        assert_eq!(p0.len(), 3);
        assert_eq!(p1.len(), 3);
        let field = self.require_fq()?;
        let st = VarSet::new(&["s", "t"]);
        let assignments: Vec<Polynomial> = (0..3)
            .map(|i| -> Result<Polynomial> {
                let a = Scalar::Fq(embed(&p0[i], &field)?);
                let b = Scalar::Fq(embed(&p1[i], &field)?);
                Ok(
                    Polynomial::term(&st, &self.ring, Monomial::var(2, 0, 1), a).add(
                        &Polynomial::term(&st, &self.ring, Monomial::var(2, 1, 1), b),
                    ),
                )
            })
            .collect::<Result<_>>()?;
        Ok(std::array::from_fn(|i| {
            self.coeffs[i].substitute(&assignments)
        }))
    }

    /// The bihomogeneous equation of the total space inside P^2 x P^2,
    /// in the six variables base + `x, y, z`.
    pub fn total_space_equation(&self) -> Polynomial {
        let mut names: Vec<&str> = self.base_vars.names().iter().map(String::as_str).collect();
        for f in FIBER_NAMES {
            assert!(
                !names.contains(&f),
                "base variables must not collide with fiber names"
            );
            names.push(f);
        }
        let full = VarSet::new(&names);
        let lift = |p: &Polynomial| -> Polynomial {
            let mut cur = p.clone();
            for len in 4..=6 {
                let vs = VarSet::new(&names[..len]);
                cur = cur.insert_var(len - 1, &vs);
            }
            debug_assert_eq!(cur.vars(), &full);
            cur
        };
        let fiber_monos = [
            Monomial::from_exps(vec![0, 0, 0, 2, 0, 0]),
            Monomial::from_exps(vec![0, 0, 0, 0, 2, 0]),
            Monomial::from_exps(vec![0, 0, 0, 0, 0, 2]),
            Monomial::from_exps(vec![0, 0, 0, 1, 1, 0]),
            Monomial::from_exps(vec![0, 0, 0, 1, 0, 1]),
            Monomial::from_exps(vec![0, 0, 0, 0, 1, 1]),
        ];
        let mut acc = Polynomial::zero(&full, &self.ring);
        for (c, m) in self.coeffs.iter().zip(&fiber_monos) {
            acc = acc.add(&lift(c).mul_monomial(m, &self.ring.one()));
        }
        acc
    }

    /// The nine affine Jacobian charts of the total space. On the chart
    /// where base coordinate `i` and fiber coordinate `j` are set to 1,
    /// the singular locus is cut out by the dehomogenized equation and
    /// its four partials in the remaining affine coordinates; the missing
    /// two partials are recovered by the bidegree-(2, ...) Euler
    /// relations. Fresh-coordinate markers make the charts gluable.
    pub fn jacobian_charts(&self) -> Vec<Chart> {
        let q = self.total_space_equation();
        let mut charts = Vec::with_capacity(9);
        for i in 0..3 {
            for j in 0..3 {
                let f = q.dehomogenize(i).dehomogenize(2 + j);
                let mut gens = vec![f.clone()];
                for var in 0..4 {
                    gens.push(f.derivative(var));
                }
                let fresh_coords = (0..i).chain((0..j).map(|l| 2 + l)).collect();
                charts.push(Chart { gens, fresh_coords });
            }
        }
        charts
    }

    /// Total length of the singular scheme of the total space, glued
    /// from the nine Jacobian charts.
    pub fn singular_total_length(&self, opts: &GroebnerOptions) -> Result<Length> {
        glued_chart_length(&self.jacobian_charts(), opts)
    }

    pub fn is_total_space_smooth(&self, opts: &GroebnerOptions) -> Result<bool> {
        Ok(self.singular_total_length(opts)? == Length::Finite(0))
    }

    /// Classifies every fiber over the rational points of the base and
    /// returns the degenerate rows, sorted with double lines first, then
    /// split crosses, then conjugate crosses, and within a class by
    /// coordinate codes.
    pub fn degenerate_fiber_table(&self) -> Result<Vec<FiberRow>> {
        let field = self.require_fq()?;
        if field.characteristic() != 2 {
            return Err(Error::data("fiber classification runs in characteristic 2"));
        }
        let mut rows = Vec::new();
        for point in projective_points(&field, 3) {
            let q = self.fiber_at(&point)?;
            if q.is_zero() {
                return Err(Error::hypothesis(format!(
                    "the fiber vanishes identically at {}",
                    format_point(&point)
                )));
            }
            let class = classify(&q)?;
            if class.is_degenerate() {
                rows.push(FiberRow { point, class });
            }
        }
        rows.sort_by_key(|r| {
            (
                r.class.table_rank(),
                r.point.iter().map(|c| c.code()).collect::<Vec<_>>(),
            )
        });
        Ok(rows)
    }

    /// Searches extensions of the base field, in increasing degree up to
    /// `max_degree`, for one point with a split cross fiber and one with
    /// a conjugate cross fiber on the given component of the
    /// discriminant. Such a pair certifies that the double cover of the
    /// component induced by the two line components of the generic
    /// degenerate fiber is irreducible: a disconnected cover would make
    /// the splitting behavior constant along the component.
    pub fn frobenius_cover_witness(
        &self,
        component: &Polynomial,
        max_degree: usize,
    ) -> Result<CoverWitness> {
        let field = self.require_fq()?;
        if component.vars() != &self.base_vars || component.ring() != &self.ring {
            return Err(Error::data("component must live on the same base"));
        }
        let k0 = field.degree();
        let mut split = None;
        let mut conjugate = None;
        for step in 1..=max_degree {
            let ext = FqField::new(field.characteristic(), k0 * step)?;
            let comp = component.embed_coeffs(&ext)?;
            for point in projective_points(&ext, 3) {
                let scalars: Vec<Scalar> =
                    point.iter().map(|x| Scalar::Fq(x.clone())).collect();
                if !comp.eval(&scalars).is_zero() {
                    continue;
                }
                let q = self.fiber_at(&point)?;
                if q.is_zero() {
                    continue;
                }
                match classify(&q)? {
                    FiberClass::CrossSplit if split.is_none() => split = Some(point),
                    FiberClass::CrossConjugate if conjugate.is_none() => {
                        conjugate = Some(point)
                    }
                    _ => {}
                }
                if let (Some(s), Some(c)) = (&split, &conjugate) {
                    return Ok(CoverWitness {
                        split: s.clone(),
                        conjugate: c.clone(),
                    });
                }
            }
        }
        Err(Error::hypothesis(format!(
            "no split/conjugate witness pair on the component within degree {max_degree}"
        )))
    }

    /// Enumerates the singular points of the total space over the
    /// algebraic closure of the base field (characteristic 2). The scan
    /// walks extensions of increasing degree; completeness is certified
    /// by matching the sum of the local lengths against the global
    /// length of the singular scheme, so the result is exact or an
    /// error, never silently truncated.
    pub fn singular_census(&self, opts: &GroebnerOptions) -> Result<SingularCensus> {
        let field = self.require_fq()?;
        if field.characteristic() != 2 {
            return Err(Error::data("the census runs in characteristic 2"));
        }
        let total = match self.singular_total_length(opts)? {
            Length::Finite(n) => n,
            Length::Infinite => {
                return Err(Error::hypothesis(
                    "the singular locus of the total space is not finite",
                ))
            }
        };
        let mut census = SingularCensus {
            total_length: total,
            points: Vec::new(),
        };
        if total == 0 {
            return Ok(census);
        }
        let charts = self.jacobian_charts();
        let k0 = field.degree();
        let p = field.characteristic();
        let mut accumulated = 0u64;
        for step in 1..=total.max(1) as usize {
            let m = k0 * step;
            let ext = FqField::new(p, m)?;
            let lifted = self.embed_coeffs(&ext)?;
            let disc = lifted.discriminant();
            let partials: [[Polynomial; 6]; 3] =
                std::array::from_fn(|t| lifted.base_partial(t));
            let chart_gens: Vec<Vec<Polynomial>> = charts
                .iter()
                .map(|ch| {
                    ch.gens
                        .iter()
                        .map(|g| g.embed_coeffs(&ext))
                        .collect::<Result<_>>()
                })
                .collect::<Result<_>>()?;
            for base in projective_points(&ext, 3) {
                let scalars: Vec<Scalar> =
                    base.iter().map(|x| Scalar::Fq(x.clone())).collect();
                if !disc.eval(&scalars).is_zero() {
                    continue;
                }
                let q = lifted.fiber_at(&base)?;
                if q.is_zero() {
                    return Err(Error::hypothesis(format!(
                        "the fiber vanishes identically at {}",
                        format_point(&base)
                    )));
                }
                let class = classify(&q)?;
                let candidates: Vec<Vec<FqElem>> = match class {
                    FiberClass::SmoothConic => continue,
                    FiberClass::CrossSplit | FiberClass::CrossConjugate => {
                        let v = q.radical_vector().unwrap();
                        let v: Vec<FqElem> = v
                            .iter()
                            .map(|s| match s {
                                Scalar::Fq(e) => e.clone(),
                                _ => unreachable!(),
                            })
                            .collect();
                        vec![normalize_point(&v)?]
                    }
                    FiberClass::DoubleLine => {
                        let comps = double_line_components(&q)?;
                        let comps: Vec<FqElem> = comps
                            .iter()
                            .map(|s| match s {
                                Scalar::Fq(e) => e.clone(),
                                _ => unreachable!(),
                            })
                            .collect();
                        line_points(&comps, &ext)?
                    }
                };
                for fiber in candidates {
                    let fiber_scalars: [Scalar; 3] =
                        std::array::from_fn(|i| Scalar::Fq(fiber[i].clone()));
                    let singular = partials.iter().all(|coeffs| {
                        let vals: [Scalar; 6] =
                            std::array::from_fn(|i| coeffs[i].eval(&scalars));
                        TernaryForm::new(&lifted.ring, vals)
                            .eval(&fiber_scalars)
                            .is_zero()
                    });
                    if !singular {
                        continue;
                    }
                    // Keep only points whose minimal field of definition
                    // is the current extension.
                    let mut minimal = true;
                    for d_step in 1..step {
                        if step % d_step != 0 {
                            continue;
                        }
                        let d = k0 * d_step;
                        if base
                            .iter()
                            .chain(fiber.iter())
                            .all(|c| c.in_subfield(d))
                        {
                            minimal = false;
                            break;
                        }
                    }
                    if !minimal {
                        continue;
                    }
                    let (chart_index, affine) = chart_point(&base, &fiber);
                    let local = local_length_at(
                        &chart_gens[chart_index],
                        &affine,
                        total,
                        opts,
                    )?;
                    accumulated += local;
                    census.points.push(SingularPoint {
                        base: base.clone(),
                        fiber,
                        field_degree: m,
                        local_length: local,
                        fiber_class: class,
                    });
                }
            }
            if accumulated == total {
                census.points.sort_by_key(|pt| {
                    (
                        pt.field_degree,
                        pt.base.iter().map(|c| c.code()).collect::<Vec<_>>(),
                        pt.fiber.iter().map(|c| c.code()).collect::<Vec<_>>(),
                    )
                });
                return Ok(census);
            }
            if accumulated > total {
                return Err(Error::arithmetic(
                    "census overcounted the singular scheme; chart bookkeeping is inconsistent",
                ));
            }
        }
        Err(Error::hypothesis(format!(
            "census found length {accumulated} of {total} within the scanned extensions"
        )))
    }
}

#[derive(Debug, Clone)]
pub struct FiberRow {
    pub point: Vec<FqElem>,
    pub class: FiberClass,
}

#[derive(Debug, Clone)]
pub struct CoverWitness {
    pub split: Vec<FqElem>,
    pub conjugate: Vec<FqElem>,
}

#[derive(Debug, Clone)]
pub struct SingularPoint {
    pub base: Vec<FqElem>,
    pub fiber: Vec<FqElem>,
    /// Absolute degree of the smallest field containing all coordinates.
    pub field_degree: usize,
    pub local_length: u64,
    pub fiber_class: FiberClass,
}

#[derive(Debug, Clone)]
pub struct SingularCensus {
    /// Length of the singular scheme of the total space over the base
    /// field, from the glued Jacobian charts.
    pub total_length: u64,
    pub points: Vec<SingularPoint>,
}

/// The rational points of projective space with the given number of
/// homogeneous coordinates, each normalized so its first nonzero
/// coordinate is 1. Points with an earlier pivot come first; within one
/// pivot the free coordinates increase lexicographically by code.
pub fn projective_points(field: &Arc<FqField>, coords: usize) -> Vec<Vec<FqElem>> {
    let elems: Vec<FqElem> = field_elements(field).collect();
    let q = elems.len();
    let mut points = Vec::new();
    for pivot in 0..coords {
        let free = coords - pivot - 1;
        let count = q.pow(free as u32);
        for code in 0..count {
            let mut point = vec![FqElem::zero(field); pivot];
            point.push(FqElem::one(field));
            let mut rest = code;
            let mut tail = vec![FqElem::zero(field); free];
            for slot in (0..free).rev() {
                tail[slot] = elems[rest % q].clone();
                rest /= q;
            }
            point.extend(tail);
            points.push(point);
        }
    }
    points
}

/// Scales a nonzero coordinate vector so its first nonzero entry is 1.
pub fn normalize_point(coords: &[FqElem]) -> Result<Vec<FqElem>> {
    let Some(first) = coords.iter().find(|c| !c.is_zero()) else {
        return Err(Error::data("cannot normalize the zero vector"));
    };
    let inv = first.inv()?;
    Ok(coords.iter().map(|c| c.mul(&inv)).collect())
}

pub fn format_point(coords: &[FqElem]) -> String {
    let inner: Vec<String> = coords.iter().map(|c| c.to_string()).collect();
    format!("({})", inner.join(":"))
}

/// Two points spanning the projective line `{r x + s y + t z = 0}` with
/// coefficient vector `coeffs`, normalized.
pub fn line_span(coeffs: &[FqElem], field: &Arc<FqField>) -> Result<[Vec<FqElem>; 2]> {
    assert_eq!(coeffs.len(), 3);
    let coeffs: Vec<FqElem> = coeffs
        .iter()
        .map(|c| embed(c, field))
        .collect::<Result<_>>()?;
    let Some(pivot) = coeffs.iter().position(|c| !c.is_zero()) else {
        return Err(Error::data("the zero form is not a line"));
    };
    // Basis of the kernel: c_pivot e_j - c_j e_pivot for the other two
    // indices j.
    let others: Vec<usize> = (0..3).filter(|&j| j != pivot).collect();
    let mut basis = Vec::with_capacity(2);
    for &j in &others {
        let mut v = vec![FqElem::zero(field); 3];
        v[j] = coeffs[pivot].clone();
        v[pivot] = coeffs[j].neg();
        basis.push(normalize_point(&v)?);
    }
    Ok([basis.remove(0), basis.remove(0)])
}

/// The rational points of the projective line `{r x + s y + t z = 0}`
/// with coefficient vector `coeffs`, normalized.
pub fn line_points(coeffs: &[FqElem], field: &Arc<FqField>) -> Result<Vec<Vec<FqElem>>> {
    let basis = line_span(coeffs, field)?;
    projective_points(field, 2)
        .into_iter()
        .map(|ab| {
            let pt: Vec<FqElem> = (0..3)
                .map(|i| {
                    ab[0]
                        .mul(&basis[0][i])
                        .add(&ab[1].mul(&basis[1][i]))
                })
                .collect();
            normalize_point(&pt)
        })
        .collect()
}

/// Chart index and affine coordinates of a total-space point whose base
/// and fiber coordinates are normalized with leading 1.
fn chart_point(base: &[FqElem], fiber: &[FqElem]) -> (usize, Vec<Scalar>) {
    let i = base.iter().position(|c| c.is_one()).unwrap();
    let j = fiber.iter().position(|c| c.is_one()).unwrap();
    debug_assert!(base[..i].iter().all(|c| c.is_zero()));
    debug_assert!(fiber[..j].iter().all(|c| c.is_zero()));
    let mut affine = Vec::with_capacity(4);
    for (t, c) in base.iter().enumerate() {
        if t != i {
            affine.push(Scalar::Fq(c.clone()));
        }
    }
    for (t, c) in fiber.iter().enumerate() {
        if t != j {
            affine.push(Scalar::Fq(c.clone()));
        }
    }
    (3 * i + j, affine)
}

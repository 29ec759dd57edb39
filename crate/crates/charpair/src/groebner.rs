//! Groebner bases and the scheme-theoretic length computations built on
//! them.
//!
//! The basis computation is Buchberger's algorithm with the sugar
//! selection strategy and the product and chain criteria, over any field
//! coefficient ring (integer input is promoted to the rationals). Every
//! leading-term cancellation counts against a step budget so that runaway
//! computations fail loudly instead of hanging; the default budget can be
//! overridden through the `CHARPAIR_BUDGET` environment variable.
//!
//! On top of bases: normal forms, vector-space lengths of zero-dimensional
//! quotients, saturation, lengths of finite subschemes of projective
//! spaces and products (with charts deduplicated by power-trick
//! localization), local lengths and intersection multiplicities at points,
//! tangent cones, an irreducibility certificate for plane curves, and a
//! small solver for zero-dimensional systems over finite fields.

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashSet};
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::algebra::{FqElem, Ring, Scalar};
use crate::error::{Error, Result};
use crate::poly::{Monomial, Polynomial, UniPoly, VarSet};

// ---------------------------------------------------------------------------
// Term orders.
// ---------------------------------------------------------------------------

/// A monomial order on a fixed ambient. Variables are compared in their
/// ambient positions: earlier variables are larger.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TermOrder {
    /// Graded reverse lexicographic (the default).
    Grevlex,
    /// Pure lexicographic.
    Lex,
    /// Block order eliminating the first `k` variables: graded reverse
    /// lexicographic within each block, first block decides.
    Elimination(usize),
}

fn grevlex_slice(a: &[u32], b: &[u32]) -> Ordering {
    let da: u32 = a.iter().sum();
    let db: u32 = b.iter().sum();
    match da.cmp(&db) {
        Ordering::Equal => {}
        ord => return ord,
    }
    for i in (0..a.len()).rev() {
        if a[i] != b[i] {
            return if a[i] < b[i] {
                Ordering::Greater
            } else {
                Ordering::Less
            };
        }
    }
    Ordering::Equal
}

impl TermOrder {
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        let (ae, be) = (a.exps(), b.exps());
        match self {
            TermOrder::Grevlex => grevlex_slice(ae, be),
            TermOrder::Lex => {
                for i in 0..ae.len() {
                    match ae[i].cmp(&be[i]) {
                        Ordering::Equal => {}
                        ord => return ord,
                    }
                }
                Ordering::Equal
            }
            TermOrder::Elimination(k) => match grevlex_slice(&ae[..*k], &be[..*k]) {
                Ordering::Equal => grevlex_slice(&ae[*k..], &be[*k..]),
                ord => ord,
            },
        }
    }
}

// ---------------------------------------------------------------------------
// Options and budgets.
// ---------------------------------------------------------------------------

pub const DEFAULT_BUDGET: u64 = 1_000_000;

/// The step budget taken from `CHARPAIR_BUDGET` when set, else the default.
pub fn budget_from_env() -> u64 {
    std::env::var("CHARPAIR_BUDGET")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(DEFAULT_BUDGET)
}

#[derive(Debug, Clone)]
pub struct GroebnerOptions {
    pub order: TermOrder,
    pub budget: u64,
}

impl Default for GroebnerOptions {
    fn default() -> Self {
        GroebnerOptions {
            order: TermOrder::Grevlex,
            budget: budget_from_env(),
        }
    }
}

impl GroebnerOptions {
    pub fn with_order(order: TermOrder) -> Self {
        GroebnerOptions {
            order,
            ..Default::default()
        }
    }
}

// ---------------------------------------------------------------------------
// Internal ordered representation.
// ---------------------------------------------------------------------------

type Term = (Monomial, Scalar);

/// Terms sorted strictly descending under the active order.
#[derive(Clone)]
struct OPoly {
    t: Vec<Term>,
}

impl OPoly {
    fn from_polynomial(p: &Polynomial, ord: &TermOrder) -> OPoly {
        let mut t: Vec<Term> = p.terms().map(|(m, c)| (m.clone(), c.clone())).collect();
        t.sort_by(|x, y| ord.cmp(&y.0, &x.0));
        OPoly { t }
    }

    fn to_polynomial(&self, vars: &Arc<VarSet>, ring: &Ring) -> Polynomial {
        Polynomial::from_map(vars, ring, self.t.iter().cloned().collect())
    }

    fn is_zero(&self) -> bool {
        self.t.is_empty()
    }

    fn leading(&self) -> &Term {
        &self.t[0]
    }
}

/// `a - b` for term lists sorted descending under `ord`.
fn sub_merge(a: &[Term], b: &[Term], ord: &TermOrder) -> Vec<Term> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match ord.cmp(&a[i].0, &b[j].0) {
            Ordering::Greater => {
                out.push(a[i].clone());
                i += 1;
            }
            Ordering::Less => {
                out.push((b[j].0.clone(), b[j].1.neg()));
                j += 1;
            }
            Ordering::Equal => {
                let c = a[i].1.sub(&b[j].1);
                if !c.is_zero() {
                    out.push((a[i].0.clone(), c));
                }
                i += 1;
                j += 1;
            }
        }
    }
    out.extend(a[i..].iter().cloned());
    out.extend(b[j..].iter().map(|(m, c)| (m.clone(), c.neg())));
    out
}

fn scale_shift(terms: &[Term], c: &Scalar, shift: &Monomial) -> Vec<Term> {
    terms
        .iter()
        .map(|(m, x)| (m.mul(shift), x.mul(c)))
        .collect()
}

fn charge(budget: &mut u64) -> Result<()> {
    if *budget == 0 {
        return Err(Error::Resource(
            "step budget exhausted during basis computation (raise CHARPAIR_BUDGET)".into(),
        ));
    }
    *budget -= 1;
    Ok(())
}

/// Canonical stored form: monic over finite fields; over the rationals a
/// primitive integer multiple with positive leading coefficient, which
/// keeps numerators and denominators small.
fn normalize_store(mut t: Vec<Term>, ring: &Ring) -> Vec<Term> {
    if t.is_empty() {
        return t;
    }
    match ring {
        Ring::Fq(_) => {
            let inv = t[0].1.inv().expect("nonzero leading coefficient");
            for term in &mut t {
                term.1 = term.1.mul(&inv);
            }
        }
        Ring::Rat => {
            let mut num_gcd = BigInt::zero();
            let mut den_lcm = BigInt::from(1);
            for (_, c) in &t {
                let Scalar::Rat(r) = c else { unreachable!() };
                num_gcd = num_integer::Integer::gcd(&num_gcd, r.numer());
                den_lcm = num_integer::Integer::lcm(&den_lcm, r.denom());
            }
            let mut factor = num_rational::BigRational::new(den_lcm, num_gcd);
            if crate::algebra::scalar_is_negative(&t[0].1) {
                factor = -factor;
            }
            let factor = Scalar::Rat(factor);
            for term in &mut t {
                term.1 = term.1.mul(&factor);
            }
        }
        Ring::Int => unreachable!("basis computation runs over a field"),
    }
    t
}

/// Full normal form of `terms` against `basis`. Charges one budget step
/// per cancellation and tracks the sugar degree of the result.
fn reduce_terms(
    mut terms: Vec<Term>,
    basis: &[OPoly],
    sugars: &[u32],
    sugar: &mut u32,
    ord: &TermOrder,
    budget: &mut u64,
) -> Result<Vec<Term>> {
    let mut i = 0;
    'scan: while i < terms.len() {
        let (m, c) = terms[i].clone();
        for (g, gsug) in basis.iter().zip(sugars) {
            if g.is_zero() {
                continue;
            }
            let (gm, gc) = g.leading();
            if let Some(shift) = gm.divide_into(&m) {
                charge(budget)?;
                *sugar = (*sugar).max(gsug + shift.degree());
                let factor = c.mul(&gc.inv().expect("field coefficient"));
                let scaled_tail = scale_shift(&g.t[1..], &factor, &shift);
                let tail = sub_merge(&terms[i + 1..], &scaled_tail, ord);
                terms.truncate(i);
                terms.extend(tail);
                continue 'scan;
            }
        }
        i += 1;
    }
    Ok(terms)
}

// ---------------------------------------------------------------------------
// Buchberger.
// ---------------------------------------------------------------------------

#[derive(Debug, Clone)]
pub struct GroebnerBasis {
    vars: Arc<VarSet>,
    ring: Ring,
    order: TermOrder,
    budget: u64,
    gens: Vec<Polynomial>,
}

pub fn groebner_basis(gens: &[Polynomial], opts: &GroebnerOptions) -> Result<GroebnerBasis> {
    let Some(first) = gens.first() else {
        return Err(Error::data("empty generator list"));
    };
    let vars = first.vars().clone();
    let ring = match first.ring() {
        Ring::Int => Ring::Rat,
        r => r.clone(),
    };
    let ord = opts.order;
    if let TermOrder::Elimination(k) = ord {
        assert!(k > 0 && k < vars.len(), "bad elimination block size");
    }
    let mut budget = opts.budget;

    let mut basis: Vec<OPoly> = Vec::new();
    let mut sugars: Vec<u32> = Vec::new();
    for g in gens {
        assert!(g.vars() == &vars, "mixed ambients");
        let g = match g.ring() {
            Ring::Int => g.convert_ring(&Ring::Rat)?,
            _ => g.clone(),
        };
        assert!(*g.ring() == ring, "mixed coefficient rings");
        if g.is_zero() {
            continue;
        }
        sugars.push(g.total_degree().unwrap());
        basis.push(OPoly {
            t: normalize_store(OPoly::from_polynomial(&g, &ord).t, &ring),
        });
    }
    if basis.is_empty() {
        return Ok(GroebnerBasis {
            vars,
            ring,
            order: ord,
            budget: opts.budget,
            gens: Vec::new(),
        });
    }

    // Pending pairs keyed by (sugar, lcm degree, i, j) for the sugar
    // selection strategy; the mirror set supports the chain criterion.
    let mut queue: BTreeSet<(u32, u32, usize, usize)> = BTreeSet::new();
    let mut pending: HashSet<(usize, usize)> = HashSet::new();
    let pair_key = |basis: &[OPoly], sugars: &[u32], i: usize, j: usize| {
        let li = &basis[i].leading().0;
        let lj = &basis[j].leading().0;
        let lcm = li.lcm(lj);
        let sugar = (sugars[i] + lcm.degree() - li.degree())
            .max(sugars[j] + lcm.degree() - lj.degree());
        (sugar, lcm.degree(), i, j)
    };
    for j in 1..basis.len() {
        for i in 0..j {
            queue.insert(pair_key(&basis, &sugars, i, j));
            pending.insert((i, j));
        }
    }

    let mut found_unit = false;
    while let Some(&key) = queue.iter().next() {
        queue.remove(&key);
        let (pair_sugar, _, i, j) = key;
        pending.remove(&(i, j));
        let li = basis[i].leading().0.clone();
        let lj = basis[j].leading().0.clone();
        if li.is_coprime_with(&lj) {
            continue;
        }
        let lcm = li.lcm(&lj);
        let chain_skip = (0..basis.len()).any(|k| {
            k != i
                && k != j
                && !basis[k].is_zero()
                && basis[k].leading().0.divides(&lcm)
                && !pending.contains(&(i.min(k), i.max(k)))
                && !pending.contains(&(j.min(k), j.max(k)))
        });
        if chain_skip {
            continue;
        }
        charge(&mut budget)?;
        let (ci, cj) = (
            basis[i].leading().1.inv().expect("field"),
            basis[j].leading().1.inv().expect("field"),
        );
        let si = scale_shift(&basis[i].t, &ci, &li.divide_into(&lcm).unwrap());
        let sj = scale_shift(&basis[j].t, &cj, &lj.divide_into(&lcm).unwrap());
        let spoly = sub_merge(&si, &sj, &ord);
        let mut sugar = pair_sugar;
        let reduced = reduce_terms(spoly, &basis, &sugars, &mut sugar, &ord, &mut budget)?;
        if reduced.is_empty() {
            continue;
        }
        if reduced[0].0.is_one() {
            found_unit = true;
            break;
        }
        let reduced = normalize_store(reduced, &ring);
        let t = basis.len();
        basis.push(OPoly { t: reduced });
        sugars.push(sugar);
        for k in 0..t {
            if !basis[k].is_zero() {
                queue.insert(pair_key(&basis, &sugars, k, t));
                pending.insert((k, t));
            }
        }
    }

    if found_unit {
        return Ok(GroebnerBasis {
            gens: vec![Polynomial::one(&vars, &ring)],
            vars,
            ring,
            order: ord,
            budget: opts.budget,
        });
    }

    // Minimize: keep only generators whose leading monomial is not a
    // multiple of another kept leading monomial.
    let mut order_idx: Vec<usize> = (0..basis.len()).collect();
    order_idx.sort_by(|&a, &b| ord.cmp(&basis[a].leading().0, &basis[b].leading().0));
    let mut kept: Vec<usize> = Vec::new();
    for idx in order_idx {
        let lt = &basis[idx].leading().0;
        if !kept.iter().any(|&k| basis[k].leading().0.divides(lt)) {
            kept.push(idx);
        }
    }
    // Tail-reduce each kept generator against the others.
    let mut reduced_gens: Vec<OPoly> = Vec::new();
    for (pos, &idx) in kept.iter().enumerate() {
        let others: Vec<OPoly> = kept
            .iter()
            .enumerate()
            .filter(|&(q, _)| q != pos)
            .map(|(_, &k)| basis[k].clone())
            .collect();
        let dummy_sugars = vec![0u32; others.len()];
        let mut sugar = 0;
        let t = reduce_terms(
            basis[idx].t.clone(),
            &others,
            &dummy_sugars,
            &mut sugar,
            &ord,
            &mut budget,
        )?;
        debug_assert!(!t.is_empty());
        reduced_gens.push(OPoly { t });
    }
    reduced_gens.sort_by(|a, b| ord.cmp(&a.leading().0, &b.leading().0));
    let gens = reduced_gens
        .iter()
        .map(|g| {
            let inv = g.leading().1.inv().expect("field");
            let t: Vec<Term> = g.t.iter().map(|(m, c)| (m.clone(), c.mul(&inv))).collect();
            OPoly { t }.to_polynomial(&vars, &ring)
        })
        .collect();
    Ok(GroebnerBasis {
        vars,
        ring,
        order: ord,
        budget: opts.budget,
        gens,
    })
}

impl GroebnerBasis {
    pub fn order(&self) -> TermOrder {
        self.order
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn vars(&self) -> &Arc<VarSet> {
        &self.vars
    }

    /// The reduced basis, monic, sorted ascending by leading monomial.
    pub fn generators(&self) -> &[Polynomial] {
        &self.gens
    }

    pub fn contains_one(&self) -> bool {
        self.gens
            .first()
            .and_then(|g| g.leading().map(|(m, _)| m.is_one()))
            .unwrap_or(false)
    }

    /// The unique fully reduced remainder of `f`.
    pub fn normal_form(&self, f: &Polynomial) -> Result<Polynomial> {
        let f = match f.ring() {
            Ring::Int => f.convert_ring(&Ring::Rat)?,
            _ => f.clone(),
        };
        assert!(f.vars() == &self.vars && *f.ring() == self.ring);
        let basis: Vec<OPoly> = self
            .gens
            .iter()
            .map(|g| OPoly::from_polynomial(g, &self.order))
            .collect();
        let sugars = vec![0u32; basis.len()];
        let mut sugar = 0;
        let mut budget = self.budget;
        let t = reduce_terms(
            OPoly::from_polynomial(&f, &self.order).t,
            &basis,
            &sugars,
            &mut sugar,
            &self.order,
            &mut budget,
        )?;
        Ok(OPoly { t }.to_polynomial(&self.vars, &self.ring))
    }

    /// Membership test via the normal form.
    pub fn contains(&self, f: &Polynomial) -> Result<bool> {
        Ok(self.normal_form(f)?.is_zero())
    }

    /// The dimension of the quotient as a vector space, finite exactly
    /// when the staircase has a pure power of every variable.
    pub fn quotient_length(&self) -> Result<Length> {
        if self.contains_one() {
            return Ok(Length::Finite(0));
        }
        if self.gens.is_empty() {
            return Ok(Length::Infinite);
        }
        let n = self.vars.len();
        let lts: Vec<&Monomial> = self
            .gens
            .iter()
            .map(|g| {
                let mut best: Option<&Monomial> = None;
                for (m, _) in g.terms() {
                    best = Some(match best {
                        None => m,
                        Some(b) => {
                            if self.order.cmp(m, b) == Ordering::Greater {
                                m
                            } else {
                                b
                            }
                        }
                    });
                }
                best.unwrap()
            })
            .collect();
        let mut box_dims = vec![0u32; n];
        for i in 0..n {
            let d = lts
                .iter()
                .filter(|m| m.exps().iter().enumerate().all(|(j, &e)| e == 0 || j == i))
                .map(|m| m.exps()[i])
                .min();
            match d {
                Some(d) => box_dims[i] = d,
                None => return Ok(Length::Infinite),
            }
        }
        let mut size: u128 = 1;
        for &d in &box_dims {
            size = size.saturating_mul(u128::from(d.max(1)));
            if size > 20_000_000 {
                return Err(Error::Resource(format!(
                    "standard monomial box of size {size} refused"
                )));
            }
        }
        let mut count = 0u64;
        let mut exps = vec![0u32; n];
        loop {
            let m = Monomial::from_exps(exps.clone());
            if !lts.iter().any(|lt| lt.divides(&m)) {
                count += 1;
            }
            let mut pos = 0;
            loop {
                if pos == n {
                    return Ok(Length::Finite(count));
                }
                exps[pos] += 1;
                if exps[pos] < box_dims[pos] {
                    break;
                }
                exps[pos] = 0;
                pos += 1;
            }
        }
    }
}

// ---------------------------------------------------------------------------
// Lengths of finite schemes.
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Length {
    Finite(u64),
    Infinite,
}

impl Length {
    pub fn finite(&self) -> Option<u64> {
        match self {
            Length::Finite(n) => Some(*n),
            Length::Infinite => None,
        }
    }
}

impl std::fmt::Display for Length {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Length::Finite(n) => write!(f, "{n}"),
            Length::Infinite => write!(f, "infinite"),
        }
    }
}

/// Length of the affine quotient by the ideal the generators span.
pub fn ideal_length(gens: &[Polynomial], opts: &GroebnerOptions) -> Result<Length> {
    groebner_basis(gens, opts)?.quotient_length()
}

/// True when the generators span the unit ideal.
pub fn ideal_contains_one(gens: &[Polynomial], opts: &GroebnerOptions) -> Result<bool> {
    Ok(groebner_basis(gens, opts)?.contains_one())
}

/// One affine chart of a covered finite scheme: its ideal generators plus
/// the chart variables whose simultaneous vanishing marks a point as new
/// (not visible in any earlier chart).
pub struct Chart {
    pub gens: Vec<Polynomial>,
    pub fresh_coords: Vec<usize>,
}

/// Total length of a finite scheme presented by affine charts that cover
/// it. Each chart first reports its full length `M`; points already seen
/// in earlier charts are then suppressed by adjoining `x^M` for each
/// marked coordinate, which is exact because the local lengths are at
/// most `M` and the maximal ideal of each local factor is nilpotent of
/// index at most its length.
pub fn glued_chart_length(charts: &[Chart], opts: &GroebnerOptions) -> Result<Length> {
    let mut total = 0u64;
    for chart in charts {
        let full = ideal_length(&chart.gens, opts)?;
        let Length::Finite(full) = full else {
            return Ok(Length::Infinite);
        };
        if chart.fresh_coords.is_empty() {
            total += full;
            continue;
        }
        if full == 0 {
            continue;
        }
        let template = &chart.gens[0];
        let mut gens = chart.gens.clone();
        for &i in &chart.fresh_coords {
            gens.push(Polynomial::var(template.vars(), template.ring(), i).pow(full as u32));
        }
        let fresh = ideal_length(&gens, opts)?;
        let Length::Finite(fresh) = fresh else {
            unreachable!("localized chart of a finite chart");
        };
        total += fresh;
    }
    Ok(Length::Finite(total))
}

/// Length of the subscheme of projective space cut out by homogeneous
/// generators, or `Infinite` when it is not zero-dimensional.
pub fn projective_scheme_length(
    gens: &[Polynomial],
    opts: &GroebnerOptions,
) -> Result<Length> {
    let Some(first) = gens.first() else {
        return Err(Error::data("empty generator list"));
    };
    let n = first.vars().len();
    let mut charts = Vec::with_capacity(n);
    for i in 0..n {
        let chart_gens: Vec<Polynomial> = gens.iter().map(|g| g.dehomogenize(i)).collect();
        charts.push(Chart {
            gens: chart_gens,
            // Earlier variables keep their positions after dropping
            // variable i, since only later indices shift.
            fresh_coords: (0..i).collect(),
        });
    }
    glued_chart_length(&charts, opts)
}

/// Length of a subscheme of a product of two projective spaces; the first
/// `split` variables are the coordinates of the first factor.
pub fn biprojective_scheme_length(
    gens: &[Polynomial],
    split: usize,
    opts: &GroebnerOptions,
) -> Result<Length> {
    let Some(first) = gens.first() else {
        return Err(Error::data("empty generator list"));
    };
    let n = first.vars().len();
    assert!(split > 0 && split < n);
    let mut charts = Vec::new();
    for i in 0..split {
        for j in 0..n - split {
            let chart_gens: Vec<Polynomial> = gens
                .iter()
                .map(|g| g.dehomogenize(i).dehomogenize(split + j - 1))
                .collect();
            let mut fresh: Vec<usize> = (0..i).collect();
            // After removing variable i from the first block, the second
            // block starts at split - 1.
            fresh.extend((0..j).map(|l| split - 1 + l));
            charts.push(Chart {
                gens: chart_gens,
                fresh_coords: fresh,
            });
        }
    }
    glued_chart_length(&charts, opts)
}

/// Length of the singular subscheme of the projective hypersurface `f`,
/// cut out by `f` together with all its partial derivatives.
pub fn singular_scheme_length(f: &Polynomial, opts: &GroebnerOptions) -> Result<Length> {
    if !f.is_homogeneous() || f.is_zero() {
        return Err(Error::data("expected a nonzero homogeneous form"));
    }
    let mut gens = vec![f.clone()];
    for i in 0..f.vars().len() {
        gens.push(f.derivative(i));
    }
    projective_scheme_length(&gens, opts)
}

// ---------------------------------------------------------------------------
// Saturation.
// ---------------------------------------------------------------------------

/// Generators of the saturation of the span of `gens` by `f`, computed by
/// adjoining an inverse for `f` and eliminating it.
pub fn saturate(
    gens: &[Polynomial],
    f: &Polynomial,
    opts: &GroebnerOptions,
) -> Result<Vec<Polynomial>> {
    let Some(first) = gens.first() else {
        return Err(Error::data("empty generator list"));
    };
    let vars = first.vars();
    let ext_vars = vars.inserted(0, "_sat");
    let mut ext_gens: Vec<Polynomial> = gens.iter().map(|g| g.insert_var(0, &ext_vars)).collect();
    let t = Polynomial::var(&ext_vars, ext_gens[0].ring(), 0);
    let one = Polynomial::one(&ext_vars, ext_gens[0].ring());
    let f_ext = f.insert_var(0, &ext_vars).convert_ring(ext_gens[0].ring())?;
    ext_gens.push(one.sub(&t.mul(&f_ext)));
    let gb = groebner_basis(
        &ext_gens,
        &GroebnerOptions {
            order: TermOrder::Elimination(1),
            budget: opts.budget,
        },
    )?;
    let mut out = Vec::new();
    for g in gb.generators() {
        if g.degree_in(0) == 0 {
            out.push(g.dehomogenize(0));
        }
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Local lengths and intersection multiplicities.
// ---------------------------------------------------------------------------

/// Length of the local ring at `point` of the affine scheme the
/// generators cut out. Localization is by the power trick with doubled
/// exponents; `cap` bounds the exponent and exceeding it reports a
/// non-isolated point.
pub fn local_length_at(
    gens: &[Polynomial],
    point: &[Scalar],
    cap: u64,
    opts: &GroebnerOptions,
) -> Result<u64> {
    let Some(first) = gens.first() else {
        return Err(Error::data("empty generator list"));
    };
    let vars = first.vars().clone();
    let ring = first.ring().clone();
    assert_eq!(point.len(), vars.len());
    // Translate the point to the origin.
    let assignments: Vec<Polynomial> = (0..vars.len())
        .map(|i| {
            Polynomial::var(&vars, &ring, i).add(&Polynomial::constant(
                &vars,
                &ring,
                point[i].clone(),
            ))
        })
        .collect();
    let translated: Vec<Polynomial> = gens.iter().map(|g| g.substitute(&assignments)).collect();
    let mut m = 4u64;
    loop {
        let mut local_gens = translated.clone();
        for i in 0..vars.len() {
            local_gens.push(Polynomial::var(&vars, &ring, i).pow(m as u32));
        }
        let len = ideal_length(&local_gens, opts)?;
        let Length::Finite(len) = len else {
            unreachable!("quotient by a power box is finite");
        };
        if len < m {
            return Ok(len);
        }
        m *= 2;
        if m > cap.max(8) {
            return Err(Error::hypothesis(format!(
                "point is not isolated (local length exceeds {cap})"
            )));
        }
    }
}

/// Intersection multiplicity of two projective plane curves at a common
/// point. A degree-one factor takes the fast path through the line's
/// parameterization; otherwise the local length of the pair is computed
/// in an affine chart.
pub fn intersection_multiplicity(
    f: &Polynomial,
    g: &Polynomial,
    point: &[Scalar],
) -> Result<u64> {
    intersection_multiplicity_with(f, g, point, &GroebnerOptions::default())
}

pub fn intersection_multiplicity_with(
    f: &Polynomial,
    g: &Polynomial,
    point: &[Scalar],
    opts: &GroebnerOptions,
) -> Result<u64> {
    let vars = f.vars().clone();
    let ring = f.ring().clone();
    assert!(vars.len() == 3 && point.len() == 3);
    assert!(g.vars() == &vars && *g.ring() == ring);
    if !f.is_homogeneous() || !g.is_homogeneous() {
        return Err(Error::data("expected homogeneous forms"));
    }
    if !f.eval(point).is_zero() || !g.eval(point).is_zero() {
        return Ok(0);
    }
    let (df, dg) = (
        f.total_degree().ok_or_else(|| Error::data("zero form"))?,
        g.total_degree().ok_or_else(|| Error::data("zero form"))?,
    );
    if df == 1 || dg == 1 {
        let (line, curve) = if df == 1 { (f, g) } else { (g, f) };
        return line_multiplicity(line, curve, point);
    }
    let chart = point
        .iter()
        .position(|c| !c.is_zero())
        .expect("projective point");
    let scale = point[chart].inv()?;
    let mut affine_point: Vec<Scalar> = point.iter().map(|c| c.mul(&scale)).collect();
    affine_point.remove(chart);
    let fa = f.dehomogenize(chart);
    let ga = g.dehomogenize(chart);
    let cap = 2 * u64::from(df) * u64::from(dg) + 4;
    local_length_at(&[fa, ga], &affine_point, cap, opts)
}

/// Multiplicity of `point` as a zero of `curve` restricted to `line`.
fn line_multiplicity(line: &Polynomial, curve: &Polynomial, point: &[Scalar]) -> Result<u64> {
    let ring = line.ring().clone();
    // Coefficients of the linear form.
    let coeffs: Vec<Scalar> = (0..3)
        .map(|i| line.coefficient(&Monomial::var(3, i, 1)))
        .collect();
    let pivot = coeffs
        .iter()
        .position(|c| !c.is_zero())
        .ok_or_else(|| Error::data("degenerate line"))?;
    // A second point on the line, independent of the given one.
    let pivot_inv = coeffs[pivot].inv()?;
    let mut second: Option<Vec<Scalar>> = None;
    for i in 0..3 {
        if i == pivot {
            continue;
        }
        let mut q = vec![ring.zero(), ring.zero(), ring.zero()];
        q[i] = ring.one();
        q[pivot] = coeffs[i].mul(&pivot_inv).neg();
        // Independence from `point` via a nonzero cross product entry.
        let indep = (0..3).any(|a| {
            (0..3).any(|b| {
                a < b
                    && !point[a]
                        .mul(&q[b])
                        .sub(&point[b].mul(&q[a]))
                        .is_zero()
            })
        });
        if indep {
            second = Some(q);
            break;
        }
    }
    let second = second.ok_or_else(|| Error::data("could not span the line"))?;
    // Parameterize as s * point + t * second and read off the order of
    // vanishing in t at (s : t) = (1 : 0).
    let st = VarSet::new(&["s", "t"]);
    let assignments: Vec<Polynomial> = (0..3)
        .map(|i| {
            let sp = Polynomial::term(
                &st,
                &ring,
                Monomial::var(2, 0, 1),
                point[i].clone(),
            );
            let tq = Polynomial::term(&st, &ring, Monomial::var(2, 1, 1), second[i].clone());
            sp.add(&tq)
        })
        .collect();
    let restricted = curve.substitute(&assignments);
    if restricted.is_zero() {
        return Err(Error::hypothesis(
            "line is a component of the curve: multiplicity is not finite",
        ));
    }
    Ok(restricted
        .terms()
        .map(|(m, _)| u64::from(m.exps()[1]))
        .min()
        .unwrap())
}

/// Tangent cone of a projective hypersurface at a point: the lowest
/// degree part after moving the point to the origin of the chart of its
/// first nonzero coordinate. Returned in that chart's ambient.
pub fn tangent_cone_at(f: &Polynomial, point: &[Scalar]) -> Result<Polynomial> {
    if !f.is_homogeneous() || f.is_zero() {
        return Err(Error::data("expected a nonzero homogeneous form"));
    }
    let n = f.vars().len();
    assert_eq!(point.len(), n);
    if !f.eval(point).is_zero() {
        return Err(Error::data("point does not lie on the hypersurface"));
    }
    let chart = point
        .iter()
        .position(|c| !c.is_zero())
        .expect("projective point");
    let scale = point[chart].inv()?;
    let mut affine_point: Vec<Scalar> = point.iter().map(|c| c.mul(&scale)).collect();
    affine_point.remove(chart);
    let fa = f.dehomogenize(chart);
    let vars = fa.vars().clone();
    let ring = fa.ring().clone();
    let assignments: Vec<Polynomial> = (0..vars.len())
        .map(|i| {
            Polynomial::var(&vars, &ring, i).add(&Polynomial::constant(
                &vars,
                &ring,
                affine_point[i].clone(),
            ))
        })
        .collect();
    Ok(fa.substitute(&assignments).lowest_degree_part())
}

// ---------------------------------------------------------------------------
// Irreducibility certificate for plane curves.
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IrreducibilityOutcome {
    /// Certified geometrically irreducible (and reduced).
    Irreducible,
    /// The criterion does not apply; nothing is claimed.
    Inconclusive,
}

/// Certificate for plane curves of degree at least 3: a reducible or
/// non-reduced curve of such degree has singular scheme length at least 2
/// (components of positive degree meet with total multiplicity at least
/// 2, and a repeated factor makes the singular scheme one-dimensional),
/// so a singular scheme length of 0 or 1 certifies irreducibility.
pub fn irreducibility_certificate(
    f: &Polynomial,
    opts: &GroebnerOptions,
) -> Result<IrreducibilityOutcome> {
    if f.vars().len() != 3 {
        return Err(Error::data("expected a plane curve"));
    }
    if !f.is_homogeneous() || f.total_degree().unwrap_or(0) < 3 {
        return Err(Error::data(
            "the certificate needs a homogeneous form of degree at least 3",
        ));
    }
    match singular_scheme_length(f, opts)? {
        Length::Finite(n) if n <= 1 => Ok(IrreducibilityOutcome::Irreducible),
        _ => Ok(IrreducibilityOutcome::Inconclusive),
    }
}

// ---------------------------------------------------------------------------
// Zero-dimensional solving over finite fields.
// ---------------------------------------------------------------------------

/// All points of a zero-dimensional affine scheme over the algebraic
/// closure, up to field extensions of degree at most `kmax` over the
/// prime field. Each point is returned with all coordinates embedded in
/// one common field; conjugate points are listed separately.
pub fn solve_zero_dim(
    gens: &[Polynomial],
    kmax: usize,
    opts: &GroebnerOptions,
) -> Result<Vec<Vec<FqElem>>> {
    let Some(first) = gens.first() else {
        return Err(Error::data("empty generator list"));
    };
    let Ring::Fq(_) = first.ring() else {
        return Err(Error::data("solving needs finite field coefficients"));
    };
    let mut points = solve_rec(gens, kmax, opts)?;
    points.sort_by_key(|p| {
        (
            p.first().map_or(0, |c| c.field().degree()),
            p.iter().map(|c| c.code()).collect::<Vec<_>>(),
        )
    });
    Ok(points)
}

fn solve_rec(
    gens: &[Polynomial],
    kmax: usize,
    opts: &GroebnerOptions,
) -> Result<Vec<Vec<FqElem>>> {
    let lex = GroebnerOptions {
        order: TermOrder::Lex,
        budget: opts.budget,
    };
    let gb = groebner_basis(gens, &lex)?;
    if gb.contains_one() {
        return Ok(Vec::new());
    }
    let n = gb.vars().len();
    let Ring::Fq(base) = gb.ring().clone() else {
        unreachable!()
    };
    let k0 = base.degree();
    // The reduced lex basis of a zero-dimensional ideal contains exactly
    // one generator univariate in the last (smallest) variable.
    let eliminant = gb
        .generators()
        .iter()
        .find(|g| {
            g.leading()
                .is_some_and(|(m, _)| m.exps()[..n - 1].iter().all(|&e| e == 0))
        })
        .cloned()
        .ok_or_else(|| Error::data("system is not zero-dimensional"))?;
    debug_assert!(eliminant.terms().all(|(m, _)| m.exps()[..n - 1].iter().all(|&e| e == 0)));

    let mut out = Vec::new();
    for m in 1..=kmax {
        if m % k0 != 0 {
            continue;
        }
        let target = crate::algebra::FqField::new(base.characteristic(), m)?;
        let lifted = eliminant.embed_coeffs(&target)?;
        let uni = {
            // Strip the other (absent) variables down to one.
            let mut p = lifted;
            for i in (0..n - 1).rev() {
                p = p.dehomogenize(i);
            }
            UniPoly::from_polynomial(&p)?
        };
        for (root, _) in uni.roots_in_field()? {
            let Scalar::Fq(r) = &root else { unreachable!() };
            let is_new = !(1..m).any(|d| m % d == 0 && d % k0 == 0 && r.in_subfield(d));
            if !is_new {
                continue;
            }
            if n == 1 {
                out.push(vec![r.clone()]);
                continue;
            }
            let reduced: Vec<Polynomial> = gb
                .generators()
                .iter()
                .map(|g| {
                    Ok(g.embed_coeffs(&target)?
                        .substitute_scalar(n - 1, &root)
                        .dehomogenize(n - 1))
                })
                .collect::<Result<_>>()?;
            let nonzero: Vec<Polynomial> =
                reduced.into_iter().filter(|g| !g.is_zero()).collect();
            if nonzero.is_empty() {
                return Err(Error::data("system is not zero-dimensional"));
            }
            for sub in solve_rec(&nonzero, kmax, opts)? {
                let field = sub[0].field().clone();
                let r_emb = crate::algebra::embed(r, &field)?;
                let mut point = sub;
                point.push(r_emb);
                out.push(point);
            }
        }
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Minors of linear systems.
// ---------------------------------------------------------------------------

/// Gcd of all 2x2 minors of the integer coefficient matrix of a list of
/// linear forms (rows are forms, columns are variables). Zero when there
/// are fewer than two rows or columns.
pub fn minor_gcd(forms: &[Polynomial]) -> Result<BigInt> {
    let Some(first) = forms.first() else {
        return Err(Error::data("empty form list"));
    };
    let n = first.vars().len();
    let mut matrix: Vec<Vec<BigInt>> = Vec::new();
    for f in forms {
        assert!(f.vars() == first.vars());
        if *f.ring() != Ring::Int {
            return Err(Error::data("minor gcd expects integer coefficients"));
        }
        if f.terms().any(|(m, _)| m.degree() != 1) {
            return Err(Error::data("minor gcd expects linear forms"));
        }
        let row: Vec<BigInt> = (0..n)
            .map(|i| match f.coefficient(&Monomial::var(n, i, 1)) {
                Scalar::Int(c) => c,
                _ => unreachable!(),
            })
            .collect();
        matrix.push(row);
    }
    let mut g = BigInt::zero();
    for r1 in 0..matrix.len() {
        for r2 in r1 + 1..matrix.len() {
            for c1 in 0..n {
                for c2 in c1 + 1..n {
                    let minor = &matrix[r1][c1] * &matrix[r2][c2]
                        - &matrix[r1][c2] * &matrix[r2][c1];
                    g = num_integer::Integer::gcd(&g, &minor);
                }
            }
        }
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::FqField;

    fn fq(p: u64, k: usize) -> Ring {
        Ring::Fq(FqField::new(p, k).unwrap())
    }

    fn polys(texts: &[&str], names: &[&str], ring: &Ring) -> Vec<Polynomial> {
        let vars = VarSet::new(names);
        texts
            .iter()
            .map(|t| Polynomial::parse(t, &vars, ring).unwrap())
            .collect()
    }

    #[test]
    fn lex_and_elimination_orders() {
        let m = |e: &[u32]| Monomial::from_exps(e.to_vec());
        // Lex: x > y^5.
        assert_eq!(
            TermOrder::Lex.cmp(&m(&[1, 0]), &m(&[0, 5])),
            Ordering::Greater
        );
        // Grevlex: y^5 > x.
        assert_eq!(
            TermOrder::Grevlex.cmp(&m(&[1, 0]), &m(&[0, 5])),
            Ordering::Less
        );
        // Eliminating the first variable: anything with it beats anything
        // without it.
        assert_eq!(
            TermOrder::Elimination(1).cmp(&m(&[1, 0, 0]), &m(&[0, 7, 7])),
            Ordering::Greater
        );
    }

    #[test]
    fn basis_of_a_simple_complete_intersection() {
        let gens = polys(&["x^2-y", "x^3-x"], &["x", "y"], &Ring::Rat);
        let gb = groebner_basis(&gens, &GroebnerOptions::default()).unwrap();
        // x^3 - x = x (x^2 - y) + xy - x, so xy - x joins the basis, and
        // y^2 - y follows.
        let nf = gb
            .normal_form(&Polynomial::parse("y^2-y", gens[0].vars(), &Ring::Rat).unwrap())
            .unwrap();
        assert!(nf.is_zero());
        assert_eq!(gb.quotient_length().unwrap(), Length::Finite(3));
    }

    #[test]
    fn unit_ideal_short_circuits() {
        let gens = polys(&["x", "x+1"], &["x", "y"], &fq(2, 1));
        let gb = groebner_basis(&gens, &GroebnerOptions::default()).unwrap();
        assert!(gb.contains_one());
        assert_eq!(gb.quotient_length().unwrap(), Length::Finite(0));
    }

    #[test]
    fn normal_form_is_canonical() {
        let gens = polys(&["x^2-y"], &["x", "y"], &Ring::Rat);
        let gb = groebner_basis(&gens, &GroebnerOptions::default()).unwrap();
        let f = Polynomial::parse("x^4", gens[0].vars(), &Ring::Rat).unwrap();
        assert_eq!(
            gb.normal_form(&f).unwrap(),
            Polynomial::parse("y^2", gens[0].vars(), &Ring::Rat).unwrap()
        );
    }

    #[test]
    fn quotient_lengths_and_staircases() {
        let gens = polys(&["x^2", "y^3"], &["x", "y"], &fq(5, 1));
        assert_eq!(
            ideal_length(&gens, &GroebnerOptions::default()).unwrap(),
            Length::Finite(6)
        );
        let line = polys(&["x"], &["x", "y"], &fq(5, 1));
        assert_eq!(
            ideal_length(&line, &GroebnerOptions::default()).unwrap(),
            Length::Infinite
        );
    }

    #[test]
    fn elimination_recovers_the_implicit_equation() {
        // Parameterized cubic: x = t^2, y = t^3 implicitizes to x^3 - y^2.
        let gens = polys(&["x-t^2", "y-t^3"], &["t", "x", "y"], &Ring::Rat);
        let gb = groebner_basis(&gens, &GroebnerOptions::with_order(TermOrder::Elimination(1)))
            .unwrap();
        let vars = gens[0].vars();
        let target = Polynomial::parse("x^3-y^2", vars, &Ring::Rat).unwrap();
        assert!(gb
            .generators()
            .iter()
            .any(|g| g.degree_in(0) == 0 && *g == target));
    }

    #[test]
    fn saturation_removes_a_component() {
        let gens = polys(&["x^2*y"], &["x", "y"], &Ring::Rat);
        let x = Polynomial::parse("x", gens[0].vars(), &Ring::Rat).unwrap();
        let sat = saturate(&gens, &x, &GroebnerOptions::default()).unwrap();
        let uv = VarSet::new(&["x", "y"]);
        assert_eq!(sat, vec![Polynomial::parse("y", &uv, &Ring::Rat).unwrap()]);
    }

    #[test]
    fn budget_exhaustion_is_an_error() {
        let gens = polys(&["x^2+y", "x*y+1"], &["x", "y"], &fq(2, 1));
        let err = groebner_basis(
            &gens,
            &GroebnerOptions {
                order: TermOrder::Grevlex,
                budget: 1,
            },
        )
        .unwrap_err();
        assert!(matches!(err, Error::Resource(_)), "{err}");
    }

    #[test]
    fn projective_length_deduplicates_charts() {
        // One point visible in every chart.
        let diag = polys(&["u-v", "v-w"], &["u", "v", "w"], &fq(2, 1));
        assert_eq!(
            projective_scheme_length(&diag, &GroebnerOptions::default()).unwrap(),
            Length::Finite(1)
        );
        // Two reduced points: (1:1:0) and (0:0:1).
        let two = polys(&["u*w", "v*w", "u-v"], &["u", "v", "w"], &fq(2, 1));
        assert_eq!(
            projective_scheme_length(&two, &GroebnerOptions::default()).unwrap(),
            Length::Finite(2)
        );
        // A projective line is not finite.
        let line = polys(&["u"], &["u", "v", "w"], &fq(2, 1));
        assert_eq!(
            projective_scheme_length(&line, &GroebnerOptions::default()).unwrap(),
            Length::Infinite
        );
    }

    #[test]
    fn biprojective_length_deduplicates_charts() {
        let names = ["u", "v", "w", "x", "y", "z"];
        // A point on the diagonal visible in four charts.
        let diag = polys(&["u-v", "w", "x-y", "z"], &names, &fq(2, 1));
        assert_eq!(
            biprojective_scheme_length(&diag, 3, &GroebnerOptions::default()).unwrap(),
            Length::Finite(1)
        );
        // P^1 x pt is infinite.
        let inf = polys(&["u", "x", "y"], &names, &fq(2, 1));
        assert_eq!(
            biprojective_scheme_length(&inf, 3, &GroebnerOptions::default()).unwrap(),
            Length::Infinite
        );
    }

    #[test]
    fn singular_length_of_a_triangle_of_lines() {
        // Three coordinate lines meet pairwise in three reduced points.
        let vars = VarSet::new(&["u", "v", "w"]);
        let f = Polynomial::parse("u*v*w", &vars, &fq(5, 1)).unwrap();
        assert_eq!(
            singular_scheme_length(&f, &GroebnerOptions::default()).unwrap(),
            Length::Finite(3)
        );
    }

    #[test]
    fn smooth_conic_has_empty_singular_scheme() {
        let vars = VarSet::new(&["u", "v", "w"]);
        let f = Polynomial::parse("u^2+v*w", &vars, &fq(2, 1)).unwrap();
        assert_eq!(
            singular_scheme_length(&f, &GroebnerOptions::default()).unwrap(),
            Length::Finite(0)
        );
    }

    #[test]
    fn certificate_on_nodal_cubic_and_friends() {
        let vars = VarSet::new(&["u", "v", "w"]);
        let opts = GroebnerOptions::default();
        // Nodal cubic: one ordinary double point, certified irreducible.
        let nodal = Polynomial::parse("v^2*w-u^3-u^2*w", &vars, &fq(5, 1)).unwrap();
        assert_eq!(
            singular_scheme_length(&nodal, &opts).unwrap(),
            Length::Finite(1)
        );
        assert_eq!(
            irreducibility_certificate(&nodal, &opts).unwrap(),
            IrreducibilityOutcome::Irreducible
        );
        // A cusp has local length 2: inconclusive, no claim either way.
        let cusp = Polynomial::parse("v^2*w-u^3", &vars, &fq(5, 1)).unwrap();
        assert_eq!(
            singular_scheme_length(&cusp, &opts).unwrap(),
            Length::Finite(2)
        );
        assert_eq!(
            irreducibility_certificate(&cusp, &opts).unwrap(),
            IrreducibilityOutcome::Inconclusive
        );
        // Three lines: reducible, and indeed inconclusive.
        let triangle = Polynomial::parse("u*v*w", &vars, &fq(5, 1)).unwrap();
        assert_eq!(
            irreducibility_certificate(&triangle, &opts).unwrap(),
            IrreducibilityOutcome::Inconclusive
        );
        // Degree two is out of scope for the certificate.
        let conic = Polynomial::parse("u^2+v*w", &vars, &fq(2, 1)).unwrap();
        assert!(irreducibility_certificate(&conic, &opts).is_err());
    }

    #[test]
    fn line_multiplicities_match_local_lengths() {
        let vars = VarSet::new(&["u", "v", "w"]);
        let ring = fq(5, 1);
        let parabola = Polynomial::parse("v*w-u^2", &vars, &ring).unwrap();
        let tangent = Polynomial::parse("v", &vars, &ring).unwrap();
        let secant = Polynomial::parse("u", &vars, &ring).unwrap();
        let point = [ring.from_i64(0), ring.from_i64(0), ring.from_i64(1)];
        // v = 0 is tangent at (0:0:1): multiplicity 2 through the fast path.
        assert_eq!(
            intersection_multiplicity(&parabola, &tangent, &point).unwrap(),
            2
        );
        // u = 0 is transverse.
        assert_eq!(
            intersection_multiplicity(&parabola, &secant, &point).unwrap(),
            1
        );
        // The general path agrees with the tangent case: use two conics.
        let double = Polynomial::parse("v*w-2*u^2", &vars, &ring).unwrap();
        assert_eq!(
            intersection_multiplicity(&parabola, &double, &point).unwrap(),
            2
        );
        // Off-curve points have multiplicity zero.
        let off = [ring.from_i64(1), ring.from_i64(1), ring.from_i64(1)];
        assert_eq!(
            intersection_multiplicity(&parabola, &tangent, &off).unwrap(),
            0
        );
    }

    #[test]
    fn shared_component_is_detected() {
        let vars = VarSet::new(&["u", "v", "w"]);
        let ring = fq(5, 1);
        let f = Polynomial::parse("u*v", &vars, &ring).unwrap();
        let g = Polynomial::parse("u*(u+v)", &vars, &ring).unwrap();
        let point = [ring.from_i64(0), ring.from_i64(0), ring.from_i64(1)];
        let err = intersection_multiplicity(&f, &g, &point).unwrap_err();
        assert!(matches!(err, Error::Hypothesis(_)), "{err}");
    }

    #[test]
    fn tangent_cone_of_a_node_splits() {
        let vars = VarSet::new(&["u", "v", "w"]);
        let ring = fq(5, 1);
        let nodal = Polynomial::parse("v^2*w-u^3-u^2*w", &vars, &ring).unwrap();
        let point = [ring.from_i64(0), ring.from_i64(0), ring.from_i64(1)];
        let cone = tangent_cone_at(&nodal, &point).unwrap();
        let uv = VarSet::new(&["u", "v"]);
        assert_eq!(
            cone,
            Polynomial::parse("v^2-u^2", &uv, &ring).unwrap()
        );
    }

    #[test]
    fn zero_dimensional_solving_across_extensions() {
        let ring = fq(2, 1);
        let gens = polys(&["x^2+x+1", "x+y"], &["x", "y"], &ring);
        let points = solve_zero_dim(&gens, 4, &GroebnerOptions::default()).unwrap();
        assert_eq!(points.len(), 2);
        for p in &points {
            assert_eq!(p[0].field().degree(), 2);
            assert_eq!(p[0], p[1]);
            assert!(!p[0].in_subfield(1));
        }
        // A system with rational and quadratic points together.
        let mixed = polys(&["(x+1)*(x^2+x+1)", "y"], &["x", "y"], &ring);
        let points = solve_zero_dim(&mixed, 4, &GroebnerOptions::default()).unwrap();
        assert_eq!(points.len(), 3);
        assert_eq!(points[0][0].field().degree(), 1);
    }

    #[test]
    fn minor_gcds_of_linear_systems() {
        let vars = VarSet::new(&["u", "v", "w"]);
        let parse = |s: &str| Polynomial::parse(s, &vars, &Ring::Int).unwrap();
        // Two forms: minors 0, 2, 4.
        let two = [parse("u+2*v"), parse("2*u+4*v+2*w")];
        assert_eq!(minor_gcd(&two).unwrap(), BigInt::from(2));
        // Adding a third row introduces a unit minor.
        let three = [parse("u+2*v"), parse("2*u+4*v+2*w"), parse("w")];
        assert_eq!(minor_gcd(&three).unwrap(), BigInt::from(1));
    }
}

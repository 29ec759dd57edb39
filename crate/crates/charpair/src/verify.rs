//! End-to-end verification pipeline for the worked example: an ordered
//! list of named checks, each timed and scored, assembled into a report
//! that renders to JSON or markdown.
//!
//! The pipeline starts from the integral bundle, confirms the polar
//! matrix reproduces the sextic discriminant, certifies smoothness of
//! the total space over the rationals, certifies irreducibility of the
//! discriminant modulo a configurable list of odd primes, and then works
//! modulo 2: the factorization into three concurrent lines and a cubic,
//! the geometry of the cubic, the table of degenerate fibers over the
//! prime field, irreducibility of the component double covers, the
//! companion bundle's hypotheses, residue matching along the lines, and
//! the blow-up census of the singular total space.

use crate::algebra::{FqElem, FqField, Ring, Scalar};
use crate::artinschreier::{classes_equal, line_cover, ResidueClass};
use crate::blowup::{resolution_report, QuadricKind};
use crate::bundle::{format_point, projective_points, ConicBundle};
use crate::error::{Error, Result};
use crate::fixtures;
use crate::groebner::{
    ideal_contains_one, intersection_multiplicity_with, singular_scheme_length, GroebnerOptions,
    Length,
};
use crate::poly::Polynomial;
use crate::quadform::{classify, FiberClass};
use serde_json::{json, Value};
use std::time::Instant;

/// Settings for a pipeline run. `primes` is the list of odd primes for
/// the irreducibility checks; `kmax` bounds the field extensions used in
/// point searches; `series_order` is the truncation order of the local
/// models in the blow-up census.
#[derive(Debug, Clone)]
pub struct PipelineConfig {
    pub primes: Vec<u64>,
    pub kmax: usize,
    pub series_order: u32,
    pub opts: GroebnerOptions,
    /// When set, checks skipped for resource reasons do not fail the
    /// report. Off by default: a skip is a failure to verify.
    pub allow_skips: bool,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        PipelineConfig {
            primes: vec![3, 5, 7, 11, 13, 17, 19, 23, 29, 31],
            kmax: 12,
            series_order: 8,
            opts: GroebnerOptions::default(),
            allow_skips: false,
        }
    }
}

impl PipelineConfig {
    /// Sorts and deduplicates the prime list, rejecting 2 (the
    /// characteristic the factorization checks own) and non-primes.
    pub fn validate(&mut self) -> Result<()> {
        if self.primes.is_empty() {
            return Err(Error::Config("the prime list is empty".into()));
        }
        self.primes.sort_unstable();
        self.primes.dedup();
        for &p in &self.primes {
            if p == 2 {
                return Err(Error::Config(
                    "2 is not a valid reduction prime here; the mod-2 factorization check covers it"
                        .into(),
                ));
            }
            if !is_prime(p) {
                return Err(Error::Config(format!("{p} is not prime")));
            }
        }
        if self.series_order < 4 {
            return Err(Error::Config(
                "series order below 4 cannot resolve a tangential contact".into(),
            ));
        }
        Ok(())
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CheckStatus {
    Pass,
    Fail,
    /// The check could not finish within its resource bounds. Counts as
    /// a failure unless the configuration waives skips.
    SkippedResource,
}

impl std::fmt::Display for CheckStatus {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CheckStatus::Pass => write!(f, "PASS"),
            CheckStatus::Fail => write!(f, "FAIL"),
            CheckStatus::SkippedResource => write!(f, "SKIPPED-resource"),
        }
    }
}

/// One named check: what it claims, how it scored, what it measured.
#[derive(Debug, Clone)]
pub struct Check {
    pub name: String,
    pub claim: String,
    pub status: CheckStatus,
    pub evidence: Value,
    pub millis: u64,
}

#[derive(Debug, Clone)]
pub struct VerificationReport {
    pub checks: Vec<Check>,
    pub passed: bool,
}

impl VerificationReport {
    pub fn to_json(&self) -> Value {
        json!({
            "passed": self.passed,
            "checks": self.checks.iter().map(|c| json!({
                "name": c.name,
                "claim": c.claim,
                "status": c.status.to_string(),
                "millis": c.millis,
                "evidence": c.evidence,
            })).collect::<Vec<_>>(),
        })
    }

    pub fn to_markdown(&self) -> String {
        let mut out = String::new();
        out.push_str("# Verification report\n\n");
        let failed = self
            .checks
            .iter()
            .filter(|c| c.status == CheckStatus::Fail)
            .count();
        let skipped = self
            .checks
            .iter()
            .filter(|c| c.status == CheckStatus::SkippedResource)
            .count();
        out.push_str(&format!(
            "Overall: **{}** ({} checks, {} failed, {} skipped)\n\n",
            if self.passed { "PASS" } else { "FAIL" },
            self.checks.len(),
            failed,
            skipped,
        ));
        out.push_str("| check | status | time (ms) |\n|---|---|---|\n");
        for c in &self.checks {
            out.push_str(&format!("| {} | {} | {} |\n", c.name, c.status, c.millis));
        }
        out.push('\n');
        for c in &self.checks {
            out.push_str(&format!("## {} — {}\n\n{}\n\n", c.name, c.status, c.claim));
            match c.name.as_str() {
                "rational-fiber-table" => render_fiber_table(&c.evidence, &mut out),
                "resolution-census" => render_census(&c.evidence, &mut out),
                _ => {
                    let pretty = serde_json::to_string_pretty(&c.evidence)
                        .unwrap_or_else(|_| c.evidence.to_string());
                    out.push_str(&format!("```json\n{pretty}\n```\n"));
                }
            }
            out.push('\n');
        }
        out
    }
}

fn render_fiber_table(evidence: &Value, out: &mut String) {
    let Some(rows) = evidence.get("rows").and_then(Value::as_array) else {
        out.push_str(&format!("```json\n{evidence}\n```\n"));
        return;
    };
    out.push_str("| point | fiber | lies on |\n|---|---|---|\n");
    for row in rows {
        let point = row.get("point").and_then(Value::as_str).unwrap_or("?");
        let fiber = row.get("fiber").and_then(Value::as_str).unwrap_or("?");
        let on = row
            .get("on")
            .and_then(Value::as_array)
            .map(|v| {
                v.iter()
                    .filter_map(Value::as_str)
                    .collect::<Vec<_>>()
                    .join(", ")
            })
            .unwrap_or_default();
        out.push_str(&format!("| {point} | {fiber} | {on} |\n"));
    }
    if let Some(matched) = evidence.get("matches_expected") {
        out.push_str(&format!("\nMatches the expected table: {matched}\n"));
    }
}

fn render_census(evidence: &Value, out: &mut String) {
    let Some(chains) = evidence.get("chains").and_then(Value::as_array) else {
        out.push_str(&format!("```json\n{evidence}\n```\n"));
        return;
    };
    if let Some(total) = evidence.get("total_singular_length") {
        out.push_str(&format!("Total singular length: {total}\n\n"));
    }
    for chain in chains {
        let base = chain.get("base").and_then(Value::as_str).unwrap_or("?");
        let deg = chain.get("field_degree").and_then(Value::as_u64).unwrap_or(0);
        let fiber = chain.get("fiber").and_then(Value::as_str).unwrap_or("?");
        let contact = chain.get("contact").and_then(Value::as_u64).unwrap_or(0);
        let len = chain.get("local_length").and_then(Value::as_u64).unwrap_or(0);
        out.push_str(&format!(
            "- base {base} (field degree {deg}), {fiber} fiber, contact order {contact}, local length {len}\n",
        ));
        if let Some(steps) = chain.get("steps").and_then(Value::as_array) {
            for (i, step) in steps.iter().enumerate() {
                let kind = step.get("kind").and_then(Value::as_str).unwrap_or("?");
                let rank = step.get("rank").and_then(Value::as_u64).unwrap_or(0);
                out.push_str(&format!(
                    "    - blow-up {}: exceptional {kind}, rank {rank}\n",
                    i + 1
                ));
            }
        }
    }
    if let Some(note) = evidence.get("note").and_then(Value::as_str) {
        out.push_str(&format!("\n{note}\n"));
    }
}

fn run_check<F>(checks: &mut Vec<Check>, name: &str, claim: &str, body: F)
where
    F: FnOnce() -> Result<(bool, Value)>,
{
    let start = Instant::now();
    let (status, evidence) = match body() {
        Ok((true, ev)) => (CheckStatus::Pass, ev),
        Ok((false, ev)) => (CheckStatus::Fail, ev),
        Err(Error::Resource(m)) | Err(Error::Precision(m)) | Err(Error::TowerBound(m)) => {
            (CheckStatus::SkippedResource, json!({ "reason": m }))
        }
        Err(e) => (CheckStatus::Fail, json!({ "error": e.to_string() })),
    };
    checks.push(Check {
        name: name.to_string(),
        claim: claim.to_string(),
        status,
        evidence,
        millis: start.elapsed().as_millis() as u64,
    });
}

/// Runs every check against `bundle`, which must have integer
/// coefficients so that both the characteristic-0 and the mod-p stages
/// apply. The companion bundle of the residue-matching stage is the
/// built-in fixture. The report lists checks in a fixed order; growing
/// the prime list only adds rows to the mod-p block.
pub fn run_pipeline(bundle: &ConicBundle, config: &PipelineConfig) -> Result<VerificationReport> {
    let mut config = config.clone();
    config.validate()?;
    if !matches!(bundle.ring(), Ring::Int) {
        return Err(Error::Config(
            "the pipeline starts from a bundle with integer coefficients".into(),
        ));
    }

    let mut checks = Vec::new();
    let d_int = bundle.discriminant();

    run_check(
        &mut checks,
        "polar-matrix-import",
        "The symmetric coefficient matrix has determinant exactly twice a nonzero sextic, \
         the discriminant of the bundle.",
        || check_matrix_import(bundle, &d_int),
    );

    run_check(
        &mut checks,
        "total-space-smooth-char-0",
        "Over the rationals the Jacobian ideal of the total space contains 1 on all nine \
         product charts, so the total space is smooth.",
        || check_smooth_char0(bundle, &config.opts),
    );

    for &p in &config.primes {
        let name = format!("mod-p-irreducible-{p:02}");
        run_check(
            &mut checks,
            &name,
            "Modulo this prime the discriminant stays a sextic whose singular scheme has \
             length at most 1, which certifies it geometrically irreducible and reduced.",
            || check_mod_p(&d_int, p, &config.opts),
        );
    }

    let f2 = FqField::new(2, 1)?;
    let bundle2 = bundle.reduce_mod_p(&f2)?;

    run_check(
        &mut checks,
        "mod-2-factorization",
        "Modulo 2 the discriminant is exactly the product of three concurrent lines and a \
         smooth cubic.",
        || check_mod2_factorization(&bundle2),
    );

    run_check(
        &mut checks,
        "cubic-component-geometry",
        "The cubic factor is smooth, avoids the common point of the three lines, meets one \
         line at a single point with contact order 3, and meets each of the other two lines \
         transversally in three conjugate points.",
        || check_cubic_geometry(&bundle2, config.kmax, &config.opts),
    );

    run_check(
        &mut checks,
        "rational-fiber-table",
        "The seven points of the discriminant over the prime field carry exactly the \
         expected degenerate fibers, with the expected component memberships.",
        || check_fiber_table(&bundle2),
    );

    run_check(
        &mut checks,
        "component-cover-irreducibility",
        "Each of the four discriminant components carries a rational point with a split \
         cross and one with a conjugate cross, so all four double covers are irreducible.",
        || check_cover_irreducibility(&bundle2, config.kmax),
    );

    run_check(
        &mut checks,
        "companion-bundle-hypotheses",
        "The companion bundle has the three lines as its discriminant, a canonically \
         ramified cover on each line, and cross fibers over every point where a line meets \
         the cubic.",
        || check_companion(&bundle2, config.kmax, &config.opts),
    );

    run_check(
        &mut checks,
        "line-residue-matching",
        "Along each of the three lines, the example and the companion induce double covers \
         with the same ramification point and equal residue classes.",
        || check_residue_matching(&bundle2, config.kmax),
    );

    run_check(
        &mut checks,
        "resolution-census",
        "Blowing up resolves every singular point of the mod-2 total space: one chain of \
         three cone steps ending smooth at the tangential point, and six single smooth-quadric \
         steps, for total singular length 11.",
        || check_resolution_census(&bundle2, config.series_order, &config.opts),
    );

    let passed = checks.iter().all(|c| match c.status {
        CheckStatus::Pass => true,
        CheckStatus::Fail => false,
        CheckStatus::SkippedResource => config.allow_skips,
    });
    Ok(VerificationReport { checks, passed })
}

// ---------------------------------------------------------------------------
// Individual checks.
// ---------------------------------------------------------------------------

fn det3_poly(m: &[[Polynomial; 3]; 3]) -> Polynomial {
    let c0 = m[1][1].mul(&m[2][2]).sub(&m[1][2].mul(&m[2][1]));
    let c1 = m[1][0].mul(&m[2][2]).sub(&m[1][2].mul(&m[2][0]));
    let c2 = m[1][0].mul(&m[2][1]).sub(&m[1][1].mul(&m[2][0]));
    m[0][0]
        .mul(&c0)
        .sub(&m[0][1].mul(&c1))
        .add(&m[0][2].mul(&c2))
}

fn check_matrix_import(bundle: &ConicBundle, d: &Polynomial) -> Result<(bool, Value)> {
    let det = det3_poly(&bundle.polar_matrix());
    let twice = d.add(d);
    let matches = det == twice;
    let degree = d.total_degree();
    let ok = matches && !d.is_zero() && degree == Some(6);
    Ok((
        ok,
        json!({
            "determinant_is_twice_discriminant": matches,
            "degree": degree,
            "discriminant": d.to_string(),
        }),
    ))
}

fn check_smooth_char0(bundle: &ConicBundle, opts: &GroebnerOptions) -> Result<(bool, Value)> {
    let charts = bundle.jacobian_charts();
    let mut unit = Vec::with_capacity(charts.len());
    for chart in &charts {
        unit.push(ideal_contains_one(&chart.gens, opts)?);
    }
    let ok = charts.len() == 9 && unit.iter().all(|&b| b);
    Ok((ok, json!({ "charts": charts.len(), "unit_ideal": unit })))
}

fn check_mod_p(d: &Polynomial, p: u64, opts: &GroebnerOptions) -> Result<(bool, Value)> {
    let field = FqField::new(p, 1)?;
    let dp = d.reduce_mod_p(&field)?;
    let degree = dp.total_degree();
    let length = singular_scheme_length(&dp, opts)?;
    let len = match length {
        Length::Finite(n) => Some(n),
        Length::Infinite => None,
    };
    let ok = degree == Some(6) && matches!(len, Some(n) if n <= 1);
    Ok((
        ok,
        json!({
            "prime": p,
            "degree": degree,
            "singular_length": len,
        }),
    ))
}

/// The four factors of the mod-2 discriminant, parsed in the bundle's
/// own variables: the three lines first, the cubic last.
fn mod2_factors(bundle: &ConicBundle) -> Result<[(String, Polynomial); 4]> {
    let vars = bundle.base_vars();
    let ring = bundle.ring();
    let mut out = Vec::with_capacity(4);
    for text in ["u", "w", "u+w", "(v^2+u*v+v*w+w^2)*u+v^3"] {
        out.push((text.to_string(), Polynomial::parse(text, vars, ring)?));
    }
    Ok(out.try_into().expect("four factors"))
}

fn check_mod2_factorization(bundle: &ConicBundle) -> Result<(bool, Value)> {
    let d = bundle.discriminant();
    let factors = mod2_factors(bundle)?;
    let mut product = factors[0].1.clone();
    for (_, f) in &factors[1..] {
        product = product.mul(f);
    }
    let ok = product == d;
    Ok((
        ok,
        json!({
            "discriminant": d.to_string(),
            "factors": factors.iter().map(|(t, _)| t.clone()).collect::<Vec<_>>(),
            "product_matches": ok,
        }),
    ))
}

#[derive(Debug, Clone)]
pub struct ProfileEntry {
    pub point: Vec<FqElem>,
    pub field_degree: usize,
    pub multiplicity: u64,
}

/// All geometric intersection points of two plane curves, with their
/// intersection multiplicities, enumerated by the degree of the smallest
/// field containing them. Certified complete against the product of the
/// degrees; ends with a tower-bound error if `kmax` is too small.
pub fn curve_intersection_profile(
    f: &Polynomial,
    g: &Polynomial,
    kmax: usize,
    opts: &GroebnerOptions,
) -> Result<Vec<ProfileEntry>> {
    let Ring::Fq(base) = f.ring().clone() else {
        return Err(Error::data("intersection profiles run over finite fields"));
    };
    let (Some(df), Some(dg)) = (f.total_degree(), g.total_degree()) else {
        return Err(Error::data("intersection profiles need nonzero forms"));
    };
    let target = u64::from(df) * u64::from(dg);
    let step = base.degree();
    let mut found = Vec::new();
    let mut total = 0u64;
    let mut k = step;
    while k <= kmax && total < target {
        let ext = FqField::new(base.characteristic(), k)?;
        let fe = f.embed_coeffs(&ext)?;
        let ge = g.embed_coeffs(&ext)?;
        let proper: Vec<usize> = (1..k).filter(|d| k % d == 0 && d % step == 0).collect();
        'points: for point in projective_points(&ext, 3) {
            for &d in &proper {
                if point.iter().all(|z| z.in_subfield(d)) {
                    continue 'points;
                }
            }
            let scalars: Vec<Scalar> = point.iter().cloned().map(Scalar::Fq).collect();
            if !fe.eval(&scalars).is_zero() || !ge.eval(&scalars).is_zero() {
                continue;
            }
            let m = intersection_multiplicity_with(&fe, &ge, &scalars, opts)?;
            total += m;
            found.push(ProfileEntry {
                point,
                field_degree: k,
                multiplicity: m,
            });
        }
        k += step;
    }
    if total != target {
        return Err(Error::TowerBound(format!(
            "accounted intersection length {total} of {target} within field degree {kmax}"
        )));
    }
    Ok(found)
}

fn profile_json(entries: &[ProfileEntry]) -> Value {
    Value::Array(
        entries
            .iter()
            .map(|e| {
                json!({
                    "point": format_point(&e.point),
                    "field_degree": e.field_degree,
                    "multiplicity": e.multiplicity,
                })
            })
            .collect(),
    )
}

fn point_codes(point: &[FqElem]) -> Vec<u128> {
    point.iter().map(|z| z.code()).collect()
}

fn check_cubic_geometry(
    bundle: &ConicBundle,
    kmax: usize,
    opts: &GroebnerOptions,
) -> Result<(bool, Value)> {
    let factors = mod2_factors(bundle)?;
    let cubic = &factors[3].1;
    let smooth = singular_scheme_length(cubic, opts)? == Length::Finite(0);

    let ring = bundle.ring();
    let vertex = [ring.zero(), ring.one(), ring.zero()];
    let off_vertex = !cubic.eval(&vertex).is_zero();

    let tangent = curve_intersection_profile(&factors[0].1, cubic, kmax, opts)?;
    let tangent_ok = tangent.len() == 1
        && tangent[0].multiplicity == 3
        && tangent[0].field_degree == 1
        && point_codes(&tangent[0].point) == [0, 0, 1];

    let transverse_a = curve_intersection_profile(&factors[1].1, cubic, kmax, opts)?;
    let a_degrees: Vec<usize> = transverse_a.iter().map(|e| e.field_degree).collect();
    let a_ok = transverse_a.iter().all(|e| e.multiplicity == 1)
        && a_degrees == [1, 2, 2]
        && point_codes(&transverse_a[0].point) == [1, 0, 0];

    let transverse_b = curve_intersection_profile(&factors[2].1, cubic, kmax, opts)?;
    let b_degrees: Vec<usize> = transverse_b.iter().map(|e| e.field_degree).collect();
    let b_ok = transverse_b.iter().all(|e| e.multiplicity == 1) && b_degrees == [3, 3, 3];

    let ok = smooth && off_vertex && tangent_ok && a_ok && b_ok;
    Ok((
        ok,
        json!({
            "cubic_smooth": smooth,
            "cubic_avoids_line_meeting_point": off_vertex,
            "profiles": {
                &factors[0].0: profile_json(&tangent),
                &factors[1].0: profile_json(&transverse_a),
                &factors[2].0: profile_json(&transverse_b),
            },
        }),
    ))
}

/// The expected degenerate-fiber table over the prime field: point
/// codes, fiber class, and membership in each of the four components,
/// in the table's own sort order.
fn expected_fiber_rows() -> [([u128; 3], FiberClass, [bool; 4]); 7] {
    [
        ([0, 1, 0], FiberClass::DoubleLine, [true, true, true, false]),
        ([0, 1, 1], FiberClass::CrossSplit, [true, false, false, false]),
        ([1, 0, 0], FiberClass::CrossSplit, [false, true, false, true]),
        ([1, 0, 1], FiberClass::CrossSplit, [false, false, true, false]),
        ([0, 0, 1], FiberClass::CrossConjugate, [true, false, false, true]),
        ([1, 1, 0], FiberClass::CrossConjugate, [false, true, false, false]),
        ([1, 1, 1], FiberClass::CrossConjugate, [false, false, true, false]),
    ]
}

fn check_fiber_table(bundle: &ConicBundle) -> Result<(bool, Value)> {
    let table = bundle.degenerate_fiber_table()?;
    let factors = mod2_factors(bundle)?;
    let expected = expected_fiber_rows();

    let mut rows = Vec::new();
    let mut ok = table.len() == expected.len();
    for (i, row) in table.iter().enumerate() {
        let scalars: Vec<Scalar> = row.point.iter().cloned().map(Scalar::Fq).collect();
        let membership: Vec<bool> = factors
            .iter()
            .map(|(_, f)| f.eval(&scalars).is_zero())
            .collect();
        if let Some((codes, class, on)) = expected.get(i) {
            ok &= point_codes(&row.point) == codes.to_vec()
                && row.class == *class
                && membership == on.to_vec();
        }
        let on_names: Vec<&str> = factors
            .iter()
            .zip(&membership)
            .filter(|(_, &m)| m)
            .map(|((t, _), _)| t.as_str())
            .collect();
        rows.push(json!({
            "point": format_point(&row.point),
            "fiber": row.class.label(),
            "on": on_names,
        }));
    }
    Ok((ok, json!({ "rows": rows, "matches_expected": ok })))
}

fn check_cover_irreducibility(bundle: &ConicBundle, kmax: usize) -> Result<(bool, Value)> {
    let factors = mod2_factors(bundle)?;
    let mut entries = Vec::new();
    let mut ok = true;
    for (text, f) in &factors {
        match bundle.frobenius_cover_witness(f, kmax) {
            Ok(w) => entries.push(json!({
                "component": text,
                "split_witness": format_point(&w.split),
                "conjugate_witness": format_point(&w.conjugate),
            })),
            Err(e) => {
                ok = false;
                entries.push(json!({ "component": text, "error": e.to_string() }));
            }
        }
    }
    Ok((ok, json!({ "components": entries })))
}

fn check_companion(
    example: &ConicBundle,
    kmax: usize,
    opts: &GroebnerOptions,
) -> Result<(bool, Value)> {
    let companion = fixtures::companion_bundle();
    let vars = companion.base_vars();
    let ring = companion.ring();

    let disc = companion.discriminant();
    let expected_disc = Polynomial::parse("u*w*(u+w)", vars, ring)?;
    let disc_ok = disc == expected_disc;

    let mut covers = Vec::new();
    let mut covers_ok = true;
    for text in ["u", "w", "u+w"] {
        let line = Polynomial::parse(text, vars, ring)?;
        let cover = line_cover(&companion, &line, kmax)?;
        let canonical = cover.class == ResidueClass::CanonicalPole
            && point_codes(&cover.ramification) == [0, 1, 0];
        covers_ok &= canonical;
        covers.push(json!({
            "line": text,
            "class": cover.class.to_string(),
            "ramification": format_point(&cover.ramification),
        }));
    }

    let factors = mod2_factors(example)?;
    let cubic = &factors[3].1;
    let mut crossings = Vec::new();
    let mut crossings_ok = true;
    for (text, line) in &factors[..3] {
        for entry in curve_intersection_profile(line, cubic, kmax, opts)? {
            let fiber = classify(&companion.fiber_at(&entry.point)?)?;
            let is_cross =
                matches!(fiber, FiberClass::CrossSplit | FiberClass::CrossConjugate);
            crossings_ok &= is_cross;
            crossings.push(json!({
                "line": text,
                "point": format_point(&entry.point),
                "field_degree": entry.field_degree,
                "fiber": fiber.label(),
            }));
        }
    }

    let ok = disc_ok && covers_ok && crossings_ok;
    Ok((
        ok,
        json!({
            "discriminant": disc.to_string(),
            "discriminant_matches": disc_ok,
            "line_covers": covers,
            "crossing_fibers": crossings,
        }),
    ))
}

fn check_residue_matching(example: &ConicBundle, kmax: usize) -> Result<(bool, Value)> {
    let companion = fixtures::companion_bundle();
    let mut lines = Vec::new();
    let mut ok = true;
    for text in ["u", "w", "u+w"] {
        let lx = Polynomial::parse(text, example.base_vars(), example.ring())?;
        let ly = Polynomial::parse(text, companion.base_vars(), companion.ring())?;
        let cx = line_cover(example, &lx, kmax)?;
        let cy = line_cover(&companion, &ly, kmax)?;
        let same_class = cx.class == ResidueClass::CanonicalPole
            && cy.class == ResidueClass::CanonicalPole;
        let same_ramification =
            point_codes(&cx.ramification) == point_codes(&cy.ramification);
        let equal = classes_equal(&cx.raw_class, &cy.raw_class, kmax)?;
        ok &= same_class && same_ramification && equal;
        lines.push(json!({
            "line": text,
            "example_reduced": cx.reduced.to_string(),
            "companion_reduced": cy.reduced.to_string(),
            "ramification": format_point(&cx.ramification),
            "classes_equal": equal,
        }));
    }
    Ok((ok, json!({ "lines": lines })))
}

fn check_resolution_census(
    bundle: &ConicBundle,
    order: u32,
    opts: &GroebnerOptions,
) -> Result<(bool, Value)> {
    let factors = mod2_factors(bundle)?;
    let polys: Vec<Polynomial> = factors.iter().map(|(_, f)| f.clone()).collect();
    let report = resolution_report(bundle, &polys, order, opts)?;

    let degrees: Vec<usize> = report.chains.iter().map(|c| c.field_degree).collect();
    let mut ok = report.total_singular_length == 11
        && report.chains.len() == 7
        && degrees == [1, 1, 2, 2, 3, 3, 3];
    if let Some(first) = report.chains.first() {
        let kinds: Vec<QuadricKind> = first.steps.iter().map(|s| s.kind).collect();
        ok &= point_codes(&first.base_point) == [0, 0, 1]
            && first.contact_order == 3
            && first.local_length == 5
            && kinds
                == [
                    QuadricKind::ConeOneSingular,
                    QuadricKind::ConeOneSingular,
                    QuadricKind::SmoothQuadric,
                ];
    }
    for chain in report.chains.iter().skip(1) {
        ok &= chain.contact_order == 1
            && chain.local_length == 1
            && chain.steps.len() == 1
            && chain.steps[0].kind == QuadricKind::SmoothQuadric;
    }

    let chains: Vec<Value> = report
        .chains
        .iter()
        .map(|c| {
            json!({
                "base": format_point(&c.base_point),
                "field_degree": c.field_degree,
                "fiber": c.fiber_class.label(),
                "contact": c.contact_order,
                "local_length": c.local_length,
                "steps": c.steps.iter().map(|s| json!({
                    "kind": s.kind.to_string(),
                    "rank": s.rank,
                })).collect::<Vec<_>>(),
            })
        })
        .collect();
    Ok((
        ok,
        json!({
            "total_singular_length": report.total_singular_length,
            "chains": chains,
            "note": report.triviality_note,
        }),
    ))
}

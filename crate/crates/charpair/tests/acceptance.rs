//! Acceptance suite: one test per headline claim about the worked
//! example, each printing a single PASS/FAIL line and holding a pinned
//! wall-time budget. Run with `--nocapture` to see the lines.

use charpair::algebra::{FqElem, FqField, Ring, Scalar};
use charpair::artinschreier::{artin_schreier_image, classes_equal, line_cover, ResidueClass};
use charpair::blowup::{resolution_chain, resolution_report, LocalConicModel, QuadricKind};
use charpair::bundle::ConicBundle;
use charpair::fixtures;
use charpair::groebner::{
    ideal_contains_one, singular_scheme_length, tangent_cone_at, GroebnerOptions, Length,
};
use charpair::poly::{Monomial, Polynomial, RationalFunction, TruncatedSeries, VarSet};
use charpair::quadform::{
    classify, det3, disc_char2_poly, disc_general_poly, FiberClass, TernaryForm,
};
use charpair::verify::curve_intersection_profile;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::sync::Arc;
use std::time::{Duration, Instant};

const KMAX: usize = 12;

fn criterion(number: u32, name: &str, budget: Duration, body: impl FnOnce() -> bool) {
    let start = Instant::now();
    let ok = body();
    let elapsed = start.elapsed();
    let within = elapsed <= budget;
    println!(
        "criterion {number:02} {name}: {} ({elapsed:.2?} of {budget:?} budget)",
        if ok && within { "PASS" } else { "FAIL" }
    );
    assert!(ok, "criterion {number:02} {name}: checks failed");
    assert!(
        within,
        "criterion {number:02} {name}: took {elapsed:?}, budget {budget:?}"
    );
}

fn example_mod2() -> ConicBundle {
    let f2 = FqField::new(2, 1).unwrap();
    fixtures::primary_bundle().reduce_mod_p(&f2).unwrap()
}

/// The four factors of the mod-2 discriminant: three lines, then the cubic.
fn factors(bundle: &ConicBundle) -> [Polynomial; 4] {
    let vars = bundle.base_vars();
    let ring = bundle.ring();
    ["u", "w", "u+w", "(v^2+u*v+v*w+w^2)*u+v^3"]
        .map(|t| Polynomial::parse(t, vars, ring).unwrap())
}

fn codes(point: &[FqElem]) -> Vec<u128> {
    point.iter().map(|z| z.code()).collect()
}

#[test]
fn criterion_01_discriminant_factorization() {
    criterion(1, "discriminant-factorization", Duration::from_secs(1), || {
        let b = example_mod2();
        let [l1, l2, l3, cubic] = factors(&b);
        let product = l1.mul(&l2).mul(&l3).mul(&cubic);
        product == b.discriminant()
    });
}

#[test]
fn criterion_02_degenerate_fiber_table() {
    criterion(2, "degenerate-fiber-table", Duration::from_secs(1), || {
        let b = example_mod2();
        let fs = factors(&b);
        let expected: [([u128; 3], FiberClass, [bool; 4]); 7] = [
            ([0, 1, 0], FiberClass::DoubleLine, [true, true, true, false]),
            ([0, 1, 1], FiberClass::CrossSplit, [true, false, false, false]),
            ([1, 0, 0], FiberClass::CrossSplit, [false, true, false, true]),
            ([1, 0, 1], FiberClass::CrossSplit, [false, false, true, false]),
            ([0, 0, 1], FiberClass::CrossConjugate, [true, false, false, true]),
            ([1, 1, 0], FiberClass::CrossConjugate, [false, true, false, false]),
            ([1, 1, 1], FiberClass::CrossConjugate, [false, false, true, false]),
        ];
        let table = b.degenerate_fiber_table().unwrap();
        if table.len() != expected.len() {
            return false;
        }
        table.iter().zip(&expected).all(|(row, (pt, class, on))| {
            let scalars: Vec<Scalar> = row.point.iter().cloned().map(Scalar::Fq).collect();
            let membership: Vec<bool> =
                fs.iter().map(|f| f.eval(&scalars).is_zero()).collect();
            codes(&row.point) == pt.to_vec() && row.class == *class && membership == on.to_vec()
        })
    });
}

#[test]
fn criterion_03_mod_p_irreducibility() {
    criterion(
        3,
        "mod-p-irreducibility",
        Duration::from_secs(300),
        || {
            let opts = GroebnerOptions::default();
            let d = fixtures::primary_bundle().discriminant();
            let per_prime = Duration::from_secs(30);
            [3u64, 5, 7, 11, 13, 17, 19, 23, 29, 31].iter().all(|&p| {
                let start = Instant::now();
                let field = FqField::new(p, 1).unwrap();
                let dp = d.reduce_mod_p(&field).unwrap();
                let len = singular_scheme_length(&dp, &opts).unwrap();
                let ok = dp.total_degree() == Some(6)
                    && matches!(len, Length::Finite(n) if n <= 1);
                ok && start.elapsed() <= per_prime
            })
        },
    );
}

#[test]
fn criterion_04_cubic_component_geometry() {
    criterion(4, "cubic-component-geometry", Duration::from_secs(5), || {
        let opts = GroebnerOptions::default();
        let b = example_mod2();
        let [l1, l2, l3, cubic] = factors(&b);
        if singular_scheme_length(&cubic, &opts).unwrap() != Length::Finite(0) {
            return false;
        }
        let ring = b.ring();
        let vertex = [ring.zero(), ring.one(), ring.zero()];
        if cubic.eval(&vertex).is_zero() {
            return false;
        }
        let tangent = curve_intersection_profile(&l1, &cubic, KMAX, &opts).unwrap();
        let t_ok = tangent.len() == 1
            && tangent[0].multiplicity == 3
            && tangent[0].field_degree == 1
            && codes(&tangent[0].point) == [0, 0, 1];
        let a = curve_intersection_profile(&l2, &cubic, KMAX, &opts).unwrap();
        let a_ok = a.iter().all(|e| e.multiplicity == 1)
            && a.iter().map(|e| e.field_degree).collect::<Vec<_>>() == [1, 2, 2];
        let bpr = curve_intersection_profile(&l3, &cubic, KMAX, &opts).unwrap();
        let b_ok = bpr.iter().all(|e| e.multiplicity == 1)
            && bpr.iter().map(|e| e.field_degree).collect::<Vec<_>>() == [3, 3, 3];
        t_ok && a_ok && b_ok
    });
}

#[test]
fn criterion_05_residue_covers() {
    criterion(5, "residue-covers", Duration::from_secs(5), || {
        let b = example_mod2();
        let fs = factors(&b);
        let witnesses = fs
            .iter()
            .all(|f| b.frobenius_cover_witness(f, KMAX).is_ok());
        let lines_canonical = fs[..3].iter().all(|line| {
            let cover = line_cover(&b, line, KMAX).unwrap();
            cover.class == ResidueClass::CanonicalPole
                && codes(&cover.ramification) == [0, 1, 0]
                && cover.reduced.to_string() == "t"
        });
        witnesses && lines_canonical
    });
}

#[test]
fn criterion_06_companion_bundle() {
    criterion(6, "companion-bundle", Duration::from_secs(10), || {
        let opts = GroebnerOptions::default();
        let x = example_mod2();
        let y = fixtures::companion_bundle();
        let expected_disc =
            Polynomial::parse("u*w*(u+w)", y.base_vars(), y.ring()).unwrap();
        if y.discriminant() != expected_disc {
            return false;
        }
        let fs = factors(&x);
        for line in &fs[..3] {
            let cx = line_cover(&x, line, KMAX).unwrap();
            let cy = line_cover(&y, line, KMAX).unwrap();
            let matched = cy.class == ResidueClass::CanonicalPole
                && codes(&cy.ramification) == [0, 1, 0]
                && codes(&cx.ramification) == codes(&cy.ramification)
                && classes_equal(&cx.raw_class, &cy.raw_class, KMAX).unwrap();
            if !matched {
                return false;
            }
        }
        for line in &fs[..3] {
            for entry in curve_intersection_profile(line, &fs[3], KMAX, &opts).unwrap() {
                let fiber = classify(&y.fiber_at(&entry.point).unwrap()).unwrap();
                if !matches!(fiber, FiberClass::CrossSplit | FiberClass::CrossConjugate) {
                    return false;
                }
            }
        }
        true
    });
}

#[test]
fn criterion_07_smooth_over_the_rationals() {
    criterion(
        7,
        "smooth-over-the-rationals",
        Duration::from_secs(300),
        || {
            let opts = GroebnerOptions::default();
            let b = fixtures::primary_bundle();
            let charts = b.jacobian_charts();
            charts.len() == 9
                && charts
                    .iter()
                    .all(|chart| ideal_contains_one(&chart.gens, &opts).unwrap())
        },
    );
}

#[test]
fn criterion_08_resolution_census() {
    criterion(8, "resolution-census", Duration::from_secs(120), || {
        let opts = GroebnerOptions::default();
        let b = example_mod2();
        let fs = factors(&b).to_vec();
        let report = resolution_report(&b, &fs, 8, &opts).unwrap();
        let degrees: Vec<usize> = report.chains.iter().map(|c| c.field_degree).collect();
        let shape_ok = report.total_singular_length == 11
            && report.chains.len() == 7
            && degrees == [1, 1, 2, 2, 3, 3, 3];
        if !shape_ok {
            return false;
        }
        let first = &report.chains[0];
        let first_kinds: Vec<QuadricKind> = first.steps.iter().map(|s| s.kind).collect();
        let first_ok = codes(&first.base_point) == [0, 0, 1]
            && first.contact_order == 3
            && first.local_length == 5
            && first_kinds
                == [
                    QuadricKind::ConeOneSingular,
                    QuadricKind::ConeOneSingular,
                    QuadricKind::SmoothQuadric,
                ];
        let rest_ok = report.chains[1..].iter().all(|c| {
            c.contact_order == 1
                && c.local_length == 1
                && c.steps.len() == 1
                && c.steps[0].kind == QuadricKind::SmoothQuadric
        });
        first_ok && rest_ok
    });
}

// ---------------------------------------------------------------------------
// Criterion 9: randomized property suites.
// ---------------------------------------------------------------------------

fn random_scalar(rng: &mut ChaCha8Rng, field: &Arc<FqField>) -> Scalar {
    Scalar::Fq(FqElem::from_code(field, rng.gen_range(0..field.order() as u128)))
}

/// 200 samples of the determinant-squared covariance of the pointwise
/// discriminant under linear substitutions, across F_2, F_4, and F_8.
fn covariance_suite() -> bool {
    let mut rng = ChaCha8Rng::seed_from_u64(101);
    let fields: Vec<Arc<FqField>> = [1, 2, 3]
        .iter()
        .map(|&k| FqField::new(2, k).unwrap())
        .collect();
    let mut done = 0;
    let mut attempts = 0;
    while done < 200 && attempts < 2000 {
        attempts += 1;
        let field = &fields[attempts % fields.len()];
        let ring = Ring::Fq(field.clone());
        let c: [Scalar; 6] = std::array::from_fn(|_| random_scalar(&mut rng, field));
        let m: [[Scalar; 3]; 3] =
            std::array::from_fn(|_| std::array::from_fn(|_| random_scalar(&mut rng, field)));
        let det = det3(&m);
        if det.is_zero() {
            continue;
        }
        let q = TernaryForm::new(&ring, c);
        let lhs = q.substitute_linear(&m).disc_char2();
        let rhs = det.mul(&det).mul(&q.disc_char2());
        if lhs != rhs {
            return false;
        }
        done += 1;
    }
    done == 200
}

/// The characteristic-free sextic discriminant formula reduces mod 2 to
/// the characteristic-2 formula, as polynomials in six symbolic
/// coefficients.
fn symbolic_reduction_suite() -> bool {
    let vars = VarSet::new(&["axx", "ayy", "azz", "axy", "axz", "ayz"]);
    let ring = Ring::Int;
    let c: [Polynomial; 6] = std::array::from_fn(|i| Polynomial::var(&vars, &ring, i));
    let f2 = FqField::new(2, 1).unwrap();
    let general = disc_general_poly(&c).reduce_mod_p(&f2).unwrap();
    let char2 = disc_char2_poly(&c).reduce_mod_p(&f2).unwrap();
    !general.is_zero() && general == char2
}

/// 200 random shifts of a residue class by images of the operator
/// `f -> f^2 + f` leave the class unchanged; the class itself stays
/// distinct from zero.
fn coset_invariance_suite() -> bool {
    let field = FqField::new(2, 2).unwrap();
    let ring = Ring::Fq(field);
    let vars = VarSet::new(&["t"]);
    let parse = |t: &str| Polynomial::parse(t, &vars, &ring).unwrap();
    let alpha =
        RationalFunction::new(parse("t^3+g*t"), parse("t^2+t+g")).unwrap();
    let zero = RationalFunction::new(parse("0"), parse("1")).unwrap();
    if classes_equal(&alpha, &zero, KMAX).unwrap() {
        return false;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(211);
    let names = ["0", "1", "g", "g+1"];
    for _ in 0..200 {
        let num: String = (0..4)
            .map(|e| format!("({})*t^{e}", names[rng.gen_range(0..4)]))
            .collect::<Vec<_>>()
            .join("+");
        let den = ["1", "t", "t+1", "t+g"][rng.gen_range(0..4)];
        let f = RationalFunction::new(parse(&num), parse(den)).unwrap();
        let shifted = alpha.add(&artin_schreier_image(&f).unwrap()).unwrap();
        if !classes_equal(&alpha, &shifted, KMAX).unwrap() {
            return false;
        }
    }
    true
}

/// 100 random bundles over F_4 with a forced double-line fiber at
/// (0:0:1): the tangent cone of the discriminant there is never a pair
/// of distinct lines.
fn tangent_cone_suite() -> bool {
    let field = FqField::new(2, 2).unwrap();
    let ring = Ring::Fq(field.clone());
    let vars = VarSet::new(&["u", "v", "w"]);
    let mut rng = ChaCha8Rng::seed_from_u64(307);
    let mut done = 0;
    let mut attempts = 0;
    while done < 100 && attempts < 1000 {
        attempts += 1;
        let mut coeff = |vanishing: bool| -> Polynomial {
            let mut p = Polynomial::zero(&vars, &ring);
            for i in 0..3 {
                if vanishing && i == 2 {
                    continue;
                }
                let c = FqElem::from_code(&field, rng.gen_range(0..4u128));
                p = p.add(&Polynomial::var(&vars, &ring, i).mul_scalar(&Scalar::Fq(c)));
            }
            p
        };
        let coeffs = [
            coeff(false),
            coeff(false),
            coeff(false),
            coeff(true),
            coeff(true),
            coeff(true),
        ];
        if coeffs.iter().any(|c| c.is_zero()) {
            continue;
        }
        let Ok(b) = ConicBundle::new(coeffs) else {
            continue;
        };
        let disc = b.discriminant();
        if disc.is_zero() {
            continue;
        }
        let zero = Scalar::Fq(FqElem::zero(&field));
        let one = Scalar::Fq(FqElem::one(&field));
        let point = [zero.clone(), zero, one];
        if !disc.eval(&point).is_zero() {
            continue;
        }
        let cone = tangent_cone_at(&disc, &point).unwrap();
        let two_distinct_lines = cone.total_degree() == Some(2)
            && !cone.coefficient(&Monomial::from_exps(vec![1, 1])).is_zero();
        if two_distinct_lines {
            return false;
        }
        done += 1;
    }
    done == 100
}

/// 50 random local models with contact exponents 1, 2, 3: each blow-up
/// chain has exactly `n` steps, cones until the last, which is smooth.
fn recursion_suite() -> bool {
    let field = FqField::new(2, 2).unwrap();
    let ring = Ring::Fq(field);
    let vars = VarSet::new(&["u", "v"]);
    let mut rng = ChaCha8Rng::seed_from_u64(401);
    let names = ["0", "1", "g", "g+1"];
    let random_unit = |rng: &mut ChaCha8Rng| -> TruncatedSeries {
        let body: String = [(1, 0), (0, 1), (1, 1), (2, 0), (0, 2)]
            .iter()
            .map(|(a, b)| format!("({})*u^{a}*v^{b}", names[rng.gen_range(0..4)]))
            .collect::<Vec<_>>()
            .join("+");
        let text = format!("1+{body}");
        TruncatedSeries::new(&Polynomial::parse(&text, &vars, &ring).unwrap(), 8)
    };
    for i in 0..50u32 {
        let n = 1 + i % 3;
        let alpha = random_unit(&mut rng);
        let beta = random_unit(&mut rng);
        let model = LocalConicModel::new(n, alpha, beta).unwrap();
        let chain = resolution_chain(&model).unwrap();
        if chain.len() != n as usize {
            return false;
        }
        for (j, step) in chain.iter().enumerate() {
            let expected = if j + 1 == n as usize {
                QuadricKind::SmoothQuadric
            } else {
                QuadricKind::ConeOneSingular
            };
            if step.kind != expected {
                return false;
            }
        }
    }
    true
}

#[test]
fn criterion_09_property_suites() {
    criterion(9, "property-suites", Duration::from_secs(120), || {
        covariance_suite()
            && symbolic_reduction_suite()
            && coset_invariance_suite()
            && tangent_cone_suite()
            && recursion_suite()
    });
}

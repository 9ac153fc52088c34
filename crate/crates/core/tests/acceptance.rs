//! End-to-end acceptance run: one PASS/FAIL line per criterion.

mod common;

use std::sync::Arc;
use std::time::Instant;

use common::fixtures::grassmann_candidates;
use common::*;
use proptest::strategy::{Strategy, ValueTree};
use proptest::test_runner::{Config, RngAlgorithm, TestCaseError, TestRng, TestRunner};
use starmorita::algebra::{
    density_functional, functional_positivity, grassmann, matrix_algebra, nilpotent_normal_scan, scalars,
    tensor_product, LinearFunctional, StarAlgebra,
};
use starmorita::bimodule::{
    corner_bimodule, finite_rank_algebra, free_module_bimodule, Bimodule, Level, ValidationOptions,
};
use starmorita::classical::{cl_bimodule, deformed_homomorphism_bimodule, naturality_check, rotation_conjugation};
use starmorita::linalg::{basis_vector, forced_zero_entries, form, kernel_basis, psd_decide, Matrix};
use starmorita::prehilbert::{defining_representation, direct_sum, gns, intertwiners, InnerProductModule, Representation};
use starmorita::rieffel::{center_isomorphism, gns_via_induction_compare, morita_context_check, roundtrip_unitary};
use starmorita::rings::{BaseElement, FracScalar, Scalar, Sign};

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err(e: impl std::fmt::Debug) -> String {
    format!("{e:?}")
}

/// Deterministic draws from the shared generators.
struct Sampler(TestRunner);

impl Sampler {
    fn new() -> Self {
        Sampler(TestRunner::deterministic())
    }

    fn draw<S: Strategy>(&mut self, s: S) -> S::Value {
        s.new_tree(&mut self.0).expect("strategy").current()
    }
}

/// Runs `test` on `cases` deterministic instances, with shrinking on failure.
fn suite<S: Strategy>(
    cases: u32,
    strategy: S,
    test: impl Fn(S::Value) -> Result<(), TestCaseError>,
) -> Result<u32, String> {
    let config = Config {
        cases,
        failure_persistence: None,
        ..Config::default()
    };
    let mut runner = TestRunner::new_with_rng(config, TestRng::deterministic_rng(RngAlgorithm::ChaCha));
    runner.run(&strategy, test).map(|()| cases).map_err(|e| e.to_string())
}

/// `tr(AB) = Σ a_ij b_ji`.
fn trace_of_product(a: &Matrix, b: &Matrix) -> FracScalar {
    let n = a.rows();
    (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .fold(FracScalar::zero(), |acc, (i, j)| &acc + &(&a[(i, j)] * &b[(j, i)]))
}

/// `M = N / d` with `N` polynomial, so sampled forms avoid fraction gcds.
struct Cleared {
    d: BaseElement,
    n: Vec<Vec<Scalar>>,
}

impl Cleared {
    fn new(m: &Matrix) -> Self {
        let size = m.rows();
        let mut d = BaseElement::one();
        for i in 0..size {
            for j in 0..size {
                let den = m[(i, j)].denominator();
                d = (&d * den).exact_div(&d.gcd(den));
            }
        }
        let n = (0..size)
            .map(|i| {
                (0..size)
                    .map(|j| {
                        let e = &m[(i, j)];
                        e.numerator().scale(&d.exact_div(e.denominator()))
                    })
                    .collect()
            })
            .collect();
        Cleared { d, n }
    }

    /// Sign of `⟨v, M v⟩` for a vector with Gaussian-integer entries.
    fn form_sign(&self, v: &[FracScalar]) -> Sign {
        let v: Vec<&Scalar> = v.iter().map(|x| x.numerator()).collect();
        let mut acc = Scalar::zero();
        for (i, row) in self.n.iter().enumerate() {
            let mut inner = Scalar::zero();
            for (j, e) in row.iter().enumerate() {
                inner = &inner + &(e * v[j]);
            }
            acc = &acc + &(&v[i].conj() * &inner);
        }
        match acc.sign().as_i8() * self.d.sign().as_i8() {
            1 => Sign::Positive,
            -1 => Sign::Negative,
            _ => Sign::Zero,
        }
    }
}

fn psd_suite() -> Outcome {
    let mut s = Sampler::new();
    let mut positives: Vec<Matrix> = Vec::new();
    let (mut total, mut negatives, mut samples) = (0, 0, 0);
    for i in 0..120usize {
        let n = i % 6 + 1;
        let deformed_ring = (i / 6) % 2 == 1;
        let general = (i / 12) % 2 == 1;
        let m = match (deformed_ring, general) {
            (false, false) => s.draw(psd(n, gaussian_rational())),
            (false, true) => s.draw(hermitian(n, gaussian_rational())),
            (true, false) => s.draw(psd(n, deformed())),
            (true, true) => s.draw(hermitian(n, deformed())),
        };
        let cert = psd_decide(&m).map_err(err)?;
        cert.replay(&m).map_err(|e| format!("matrix {i}: certificate does not replay: {e}"))?;
        total += 1;
        if cert.is_positive() {
            let cleared = Cleared::new(&m);
            for (k, v) in s.draw(proptest::collection::vec(rational_vector(n), 200)).into_iter().enumerate() {
                let sign = cleared.form_sign(&v);
                if k == 0 {
                    ensure(sign == form(&m, &v, &v).sign(), || format!("matrix {i}: cleared form disagrees"))?;
                }
                ensure(sign != Sign::Negative, || format!("matrix {i}: sampled vector refutes PSD verdict"))?;
                samples += 1;
            }
            positives.push(m);
        } else {
            negatives += 1;
            let w = cert.witness.as_ref().ok_or("negative verdict without witness")?;
            ensure(form(&m, w, w).sign() == Sign::Negative, || format!("matrix {i}: witness is not negative"))?;
        }
    }
    let mut pairs = 0;
    for (k, a) in positives.iter().enumerate() {
        for b in positives[k..].iter().filter(|b| b.rows() == a.rows()) {
            let t = trace_of_product(a, b);
            ensure(t.im().is_zero() && t.re().sign().is_non_negative(), || "tr(AB) < 0 for a PSD pair".into())?;
            pairs += 1;
        }
    }
    Ok(format!(
        "{total} matrices ({negatives} refuted), {samples} sampled forms, {pairs} trace pairs"
    ))
}

/// Diagonal projections `Σ_{i∈S} E_ii` for every nonempty `S`, `n ∈ {2, 3}`.
fn densities() -> Vec<(usize, usize, Matrix)> {
    let mut out = Vec::new();
    for n in 2..=3usize {
        for mask in 1u32..(1 << n) {
            let d: Vec<FracScalar> = (0..n)
                .map(|i| if mask & (1 << i) != 0 { FracScalar::one() } else { FracScalar::zero() })
                .collect();
            out.push((n, mask.count_ones() as usize, Matrix::diag(&d)));
        }
    }
    out
}

fn gns_dimension_law() -> Outcome {
    for (n, k, rho) in densities() {
        let alg = Arc::new(matrix_algebra(n).map_err(err)?);
        let omega = density_functional(&alg, &rho).map_err(err)?;
        let g = gns(alg.clone(), &omega).map_err(err)?;
        let oracle = n * n - kernel_basis(&omega.gram(&alg)).len();
        ensure(g.representation.dim() == n * k && oracle == n * k, || {
            format!("n={n} rank {k}: dim {} (Gram oracle {oracle})", g.representation.dim())
        })?;
        let def = defining_representation(alg.clone()).map_err(err)?;
        let sum = direct_sum(&vec![&def; k]).map_err(err)?;
        let space = intertwiners(&g.representation, &sum, 0).map_err(err)?;
        ensure(space.unitary.found().is_some_and(|u| u.unitary), || {
            format!("n={n} rank {k}: no certified unitary ({:?})", space.unitary)
        })?;
    }
    Ok(format!("{} density matrices, dim H = n·rank", densities().len()))
}

fn gns_is_induction() -> Outcome {
    for (n, k, rho) in densities() {
        let alg = Arc::new(matrix_algebra(n).map_err(err)?);
        let omega = density_functional(&alg, &rho).map_err(err)?;
        let cmp = gns_via_induction_compare(alg, &omega).map_err(err)?;
        ensure(cmp.unitary.unitary && cmp.kernels_agree && cmp.vacuum_preserved == Some(true), || {
            format!("n={n} rank {k}: comparison map not a vacuum-preserving unitary")
        })?;
    }
    Ok(format!("{} functionals, unitary with vacuum preserved", densities().len()))
}

fn criterion_four_bimodules() -> Result<Vec<(String, Bimodule)>, String> {
    let mut out = Vec::new();
    for n in 1..=4 {
        out.push((format!("free(C,{n})"), free_module_bimodule(Arc::new(scalars()), n, None).map_err(err)?));
    }
    let m2 = Arc::new(matrix_algebra(2).map_err(err)?);
    out.push(("free(M2,2)".into(), free_module_bimodule(m2, 2, None).map_err(err)?));
    Ok(out)
}

const EQUIVALENCE_CHECKS: [&str; 19] = [
    "X1", "X2", "X3", "X4", "X5", "X6", "Y1", "Y2", "Y3", "Y4", "Y5", "Y6", "E3", "P1", "P2", "P3", "Q1", "Q2", "Q3",
];

fn all_axioms(name: &str, x: &Bimodule) -> Result<(), String> {
    let r = x.validate(&ValidationOptions::level(Level::Equivalence));
    for check in EQUIVALENCE_CHECKS {
        ensure(r.passed_check(check), || format!("{name}: {check} missing or failed: {:?}", r.get(check)))?;
    }
    ensure(r.passed(), || format!("{name}: {:?}", r.first_failure()))
}

fn free_module_equivalence() -> Outcome {
    let xs = criterion_four_bimodules()?;
    for (name, x) in &xs {
        all_axioms(name, x)?;
    }
    Ok(format!("{} bimodules, all {} axioms", xs.len(), EQUIVALENCE_CHECKS.len()))
}

fn sample_representations(a: &Arc<StarAlgebra>) -> Result<Vec<(String, Representation)>, String> {
    let mut reps = vec![("defining".to_string(), defining_representation(a.clone()).map_err(err)?)];
    if a.dim() == 1 {
        let omega = LinearFunctional::new(vec![FracScalar::one()]);
        reps.push(("gns(id)".into(), gns(a.clone(), &omega).map_err(err)?.representation));
    } else {
        let n = a.model().ok_or("no matrix model")?.size();
        let pure = Matrix::unit(n, n, 0, 0);
        for (label, rho) in [("gns(pure)", pure), ("gns(trace)", Matrix::identity(n))] {
            let omega = density_functional(a, &rho).map_err(err)?;
            reps.push((label.into(), gns(a.clone(), &omega).map_err(err)?.representation));
        }
    }
    Ok(reps)
}

fn round_trips() -> Outcome {
    let mut count = 0;
    for (name, x) in criterion_four_bimodules()? {
        for (label, rep) in sample_representations(&x.a)? {
            let rt = roundtrip_unitary(&x, &rep).map_err(|e| format!("{name}/{label}: {e}"))?;
            ensure(rt.unitary.unitary, || format!("{name}/{label}: round trip not unitary"))?;
            count += 1;
        }
    }
    Ok(format!("{count} bimodule/representation pairs"))
}

fn finite_rank_isomorphism() -> Outcome {
    for n in 1..=4 {
        let x = free_module_bimodule(Arc::new(scalars()), n, None).map_err(err)?;
        let k = finite_rank_algebra(&x).map_err(err)?;
        ensure(k.algebra.same_structure(&matrix_algebra(n).map_err(err)?), || format!("n={n}: 𝒦 is not M_n"))?;
        ensure(k.left_is_isomorphism(), || format!("n={n}: L_B is not a *-isomorphism onto 𝒦"))?;
    }
    Ok("n = 1..4, 𝒦 ≅ M_n via L_B".into())
}

fn full_corners() -> Outcome {
    let q = starmorita::algebra::builtin::matrix_element(&Matrix::diag(&[
        FracScalar::one(),
        FracScalar::one(),
        FracScalar::zero(),
    ]));
    let c = corner_bimodule(Arc::new(scalars()), 3, &q).map_err(err)?;
    ensure(c.corner.same_structure(&matrix_algebra(2).map_err(err)?), || "corner is not M2".into())?;
    ensure(c.bimodule.b.same_structure(&matrix_algebra(3).map_err(err)?), || "ambient is not M3".into())?;
    ensure(c.cyclic_seed.is_some(), || "no cyclic seed".into())?;
    all_axioms("corner", &c.bimodule)?;
    Ok(format!("M2 ↔ M3 on a {}-dimensional module", c.bimodule.dim))
}

fn grassmann_refusal() -> Outcome {
    for n in 1..=3 {
        let g = grassmann(n).map_err(err)?;
        let cert = nilpotent_normal_scan(&g).ok_or_else(|| format!("n={n}: no nilpotent certificate"))?;
        ensure(cert.element == basis_vector(g.dim(), 1) && cert.exponent == 2, || {
            format!("n={n}: expected h = e1, got {:?}", cert.element)
        })?;
        cert.replay(&g).map_err(err)?;
    }
    // every positive ω on Λ(ℂ) has ω(e₁) = 0
    let g = grassmann(1).map_err(err)?;
    let pattern = Matrix::diag(&(0..g.dim())
        .map(|i| {
            let sq = g.mul(&g.star(&g.basis(i)), &g.basis(i));
            if sq.iter().all(FracScalar::is_zero) { FracScalar::zero() } else { FracScalar::one() }
        })
        .collect::<Vec<_>>());
    let forced = forced_zero_entries(&pattern).map_err(err)?;
    let mut killed: Vec<usize> = forced
        .iter()
        .filter_map(|&(i, j)| {
            let prod = g.mul(&g.star(&g.basis(i)), &g.basis(j));
            let support: Vec<usize> = (0..g.dim()).filter(|&k| !prod[k].is_zero()).collect();
            (support.len() == 1).then(|| support[0])
        })
        .collect();
    killed.sort_unstable();
    killed.dedup();
    ensure(killed == vec![1], || format!("killed monomials {killed:?}, expected [e1]"))?;
    for t in [FracScalar::one(), FracScalar::from_ratio(-1, 2), FracScalar::lambda(), -&(&FracScalar::lambda() * &FracScalar::lambda())] {
        let omega = LinearFunctional::new(vec![FracScalar::one(), t.clone()]);
        ensure(!functional_positivity(&g, &omega).map_err(err)?.is_positive(), || {
            format!("ω(e1) = {t} accepted as positive")
        })?;
    }
    let mut candidates = 0;
    for n in 1..=3 {
        for (name, x, opts) in grassmann_candidates(n) {
            ensure(!x.validate(&opts).passed(), || format!("candidate {name} for Λ(ℂ^{n}) validated"))?;
            candidates += 1;
        }
    }
    Ok(format!("h = e1 for n = 1..3, odd monomials killed, {candidates} candidates refused"))
}

fn contexts_and_centers() -> Outcome {
    let xs = criterion_four_bimodules()?;
    for (name, x) in &xs {
        let r = morita_context_check(x).map_err(err)?;
        ensure(r.passed(), || format!("{name}: {:?}", r.first_failure()))?;
        let phi = center_isomorphism(x).map_err(|e| format!("{name}: {e}"))?;
        ensure(phi.map.is_bijective(), || format!("{name}: center map is not bijective"))?;
    }
    Ok(format!("{} bimodules, center maps are *-isomorphisms", xs.len()))
}

fn scalar_rep(gram: Matrix) -> Result<Representation, String> {
    let n = gram.rows();
    Representation::new(Arc::new(scalars()), InnerProductModule::new(gram).map_err(err)?, vec![Matrix::identity(n)])
        .map_err(err)
}

fn classical_naturality() -> Outcome {
    let lam = FracScalar::lambda();
    let one = FracScalar::one;
    let zero = FracScalar::zero;
    let c = Arc::new(scalars());
    let x2 = free_module_bimodule(c.clone(), 2, None).map_err(err)?;
    let x3 = free_module_bimodule(c, 3, None).map_err(err)?;
    let m2 = Arc::new(matrix_algebra(2).map_err(err)?);
    let y = free_module_bimodule(m2.clone(), 1, None).map_err(err)?;
    let deformed_m2 = {
        let def = defining_representation(m2.clone()).map_err(err)?;
        let g = Matrix::identity(2).scale(&(&one() + &lam));
        Representation::new(m2, InnerProductModule::new(g).map_err(err)?, def.ops).map_err(err)?
    };
    let mut cases: Vec<(String, Bimodule, Representation)> = vec![
        ("C^2, diag(1,1+λ)".into(), x2.clone(), scalar_rep(Matrix::diag(&[one(), &one() + &lam]))?),
        ("C^2, diag(1,λ)".into(), x2.clone(), scalar_rep(Matrix::diag(&[one(), lam.clone()]))?),
        ("C^2, diag(λ²,1)".into(), x2, scalar_rep(Matrix::diag(&[&lam * &lam, one()]))?),
        (
            "C^3, [[1,λ,0],[λ,1,0],[0,0,λ]]".into(),
            x3,
            scalar_rep(Matrix::from_rows(vec![
                vec![one(), lam.clone(), zero()],
                vec![lam.clone(), one(), zero()],
                vec![zero(), zero(), lam.clone()],
            ]).map_err(err)?)?,
        ),
        ("M2, (1+λ)·defining".into(), y, deformed_m2),
    ];
    let (alg, images) = rotation_conjugation().map_err(err)?;
    let cmp = deformed_homomorphism_bimodule(alg.clone(), alg.clone(), images).map_err(err)?;
    cases.push(("deformed homomorphism".into(), cmp.bimodule.clone(), defining_representation(alg).map_err(err)?));
    for (name, x, rep) in &cases {
        let nat = naturality_check(x, rep).map_err(|e| format!("{name}: {e}"))?;
        ensure(nat.unitary.unitary, || format!("{name}: comparison map not unitary"))?;
    }
    cmp.isomorphic.clone().map_err(|e| format!("limit differs from the classical homomorphism bimodule: {e}"))?;
    let limit = cl_bimodule(&cmp.bimodule).map_err(err)?;
    all_axioms("classical limit", &limit.bimodule)?;
    Ok(format!("{} deformed examples; limit bimodule is an equivalence bimodule", cases.len()))
}

const SUITE_CASES: u32 = 500;

fn property_suites() -> Outcome {
    let rings = suite(SUITE_CASES, (fraction(), fraction()), |(a, b)| {
        let (ra, rb) = (a.re(), b.re());
        let signs = [ra.sign() == Sign::Positive, ra.is_zero(), ra.sign() == Sign::Negative];
        proptest::prop_assert_eq!(signs.iter().filter(|&&s| s).count(), 1);
        proptest::prop_assert_eq!((&ra * &rb).sign(), ra.sign() * rb.sign());
        proptest::prop_assert!(a.norm_sq().sign().is_non_negative());
        Ok(())
    })?;
    let m2 = Arc::new(matrix_algebra(2).map_err(err)?);
    let functional_cs = suite(
        SUITE_CASES,
        (psd(2, scalar()), vector_of(4, scalar()), vector_of(4, scalar())),
        |(rho, a, b)| {
            let alg = &m2;
            let omega = density_functional(alg, &rho).unwrap();
            let ab = omega.eval(&alg.mul(&alg.star(&a), &b));
            let aa = omega.eval(&alg.mul(&alg.star(&a), &a));
            let bb = omega.eval(&alg.mul(&alg.star(&b), &b));
            proptest::prop_assert!((&(&aa * &bb) - &ab.norm_sq()).re().sign().is_non_negative());
            Ok(())
        },
    )?;
    let m2m2 = tensor_product(&m2, &m2);
    let tensor_positivity = suite(SUITE_CASES, (psd(2, gaussian_rational()), psd(2, scalar())), |(r1, r2)| {
        let omega = density_functional(&m2, &r1).unwrap().tensor(&density_functional(&m2, &r2).unwrap());
        proptest::prop_assert!(functional_positivity(&m2m2, &omega).unwrap().is_positive());
        Ok(())
    })?;
    let module_cs = suite(
        SUITE_CASES,
        (1usize..=3).prop_flat_map(|n| (psd(n, scalar()), vector_of(n, scalar()), vector_of(n, scalar()))),
        |(g, v, w)| {
            let h = InnerProductModule::new(g).unwrap();
            let vw = h.inner(&v, &w);
            let bound = &(&h.inner(&v, &v) * &h.inner(&w, &w)) - &(&vw * &vw.conj());
            proptest::prop_assert!(bound.im().is_zero() && bound.re().sign().is_non_negative());
            Ok(())
        },
    )?;
    let adjoints = suite(
        SUITE_CASES,
        (1usize..=2).prop_flat_map(|n| {
            (
                matrix_of(n, n, scalar())
                    .prop_filter("invertible", move |b| starmorita::linalg::rank(b) == n)
                    .prop_map(|b| &b.adjoint() * &b),
                matrix_of(n, n, small_int()),
                matrix_of(n, n, small_int()),
                small_int(),
                small_int(),
            )
        }),
        |(g, a, b, s, t)| {
            let h = InnerProductModule::new(g).unwrap();
            let (sa, tb) = (h.adjoint(&a).unwrap(), h.adjoint(&b).unwrap());
            let combo = &a.scale(&s) + &b.scale(&t);
            proptest::prop_assert_eq!(h.adjoint(&combo).unwrap(), &sa.scale(&s.conj()) + &tb.scale(&t.conj()));
            proptest::prop_assert_eq!(h.adjoint(&(&a * &b)).unwrap(), &tb * &sa);
            proptest::prop_assert_eq!(h.adjoint(&sa).unwrap(), a);
            Ok(())
        },
    )?;
    Ok(format!(
        "ordered ring {rings}, functional Cauchy-Schwarz {functional_cs}, tensor positivity {tensor_positivity}, \
         module Cauchy-Schwarz {module_cs}, adjoint calculus {adjoints}"
    ))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 11] = [
        ("psd decision against sampling", psd_suite),
        ("GNS dimension law", gns_dimension_law),
        ("GNS as induction", gns_is_induction),
        ("C ↔ M_n and A ↔ M_2(A) equivalence", free_module_equivalence),
        ("round-trip unitaries", round_trips),
        ("finite-rank operators", finite_rank_isomorphism),
        ("full corners", full_corners),
        ("Grassmann refusal", grassmann_refusal),
        ("Morita context and centers", contexts_and_centers),
        ("classical-limit naturality", classical_naturality),
        ("randomized property suites", property_suites),
    ];
    let mut failed = 0;
    for (k, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(run).unwrap_or_else(|p| {
            Err(p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_else(|| "panic".into()))
        });
        let elapsed = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS {name}: {detail} [{elapsed:.1}s]", k + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {:>2} FAIL {name}: {detail} [{elapsed:.1}s]", k + 1);
            }
        }
    }
    println!("acceptance: {}/{} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}

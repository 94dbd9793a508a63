//! Named verification suites. Each suite expands into independent cases that
//! are evaluated in parallel and reported in a fixed order.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::groupkit::{BetaSeq, BetaTower, SemidirectElt, Shift};
use crate::halgebra::{self, axioms, Element, Monomial, Window};
use crate::morphisms::{
    decompose, is_coalgebra_map, leading_coefficient, level_defect, Atom, DecompositionResult,
    Morphism, MonomialMap, TabulatedMorphism,
};
use crate::qscalar::Field;
use crate::sample::Sampler;

pub const SUITES: [&str; 10] = [
    "hopf-axioms",
    "primitives",
    "coalgebra-maps",
    "graded-iso",
    "filtration",
    "f-homomorphisms",
    "conjugation",
    "g-law",
    "tower-consistency",
    "decompose-roundtrip",
];

#[derive(Clone, Debug)]
pub struct SuiteParams {
    pub window: Window,
    pub seed: u64,
    /// Randomized draws per family.
    pub draws: usize,
    /// Largest tower depth used by the randomized group suites.
    pub depth: usize,
}

impl Default for SuiteParams {
    fn default() -> Self {
        SuiteParams {
            window: Window::new(-4, 4, 6).expect("valid window"),
            seed: 0,
            draws: 5,
            depth: 3,
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct Case {
    pub id: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub passed: bool,
    pub cases: Vec<Case>,
}

impl SuiteReport {
    pub fn failures(&self) -> impl Iterator<Item = &Case> {
        self.cases.iter().filter(|c| !c.passed)
    }
}

type Outcome = std::result::Result<(), String>;

/// A deferred check; labels are numbered in generation order to form ids.
struct Job<'a> {
    label: String,
    run: Box<dyn Fn() -> Outcome + Send + Sync + 'a>,
}

fn job<'a>(label: impl Into<String>, run: impl Fn() -> Outcome + Send + Sync + 'a) -> Job<'a> {
    Job {
        label: label.into(),
        run: Box::new(run),
    }
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Outcome {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn lift<T>(r: Result<T>) -> std::result::Result<T, String> {
    r.map_err(|e| e.to_string())
}

/// Evaluate `items` on up to `available_parallelism` threads, keeping order.
pub fn par_map<T: Sync, R: Send>(items: &[T], f: impl Fn(&T) -> R + Sync) -> Vec<R> {
    let workers = std::thread::available_parallelism().map_or(1, |n| n.get()).min(items.len().max(1));
    let chunk = items.len().div_ceil(workers).max(1);
    std::thread::scope(|scope| {
        let handles: Vec<_> = items
            .chunks(chunk)
            .map(|part| {
                let f = &f;
                scope.spawn(move || part.iter().map(f).collect::<Vec<R>>())
            })
            .collect();
        handles
            .into_iter()
            .flat_map(|h| h.join().expect("verification worker panicked"))
            .collect()
    })
}

fn run_jobs(name: &str, jobs: Vec<Job<'_>>) -> SuiteReport {
    let outcomes = par_map(&jobs, |j| (j.run)());
    let cases: Vec<Case> = jobs
        .iter()
        .zip(outcomes)
        .enumerate()
        .map(|(i, (j, out))| Case {
            id: format!("{i:04} {}", j.label),
            passed: out.is_ok(),
            detail: out.err(),
        })
        .collect();
    SuiteReport {
        suite: name.to_string(),
        passed: !cases.is_empty() && cases.iter().all(|c| c.passed),
        cases,
    }
}

/// Run one suite, or every suite for `"all"`.
pub fn run_suite(f: &Field, name: &str, p: &SuiteParams) -> Result<Vec<SuiteReport>> {
    if name == "all" {
        return SUITES.iter().map(|s| run_one(f, s, p)).collect();
    }
    Ok(vec![run_one(f, name, p)?])
}

fn run_one(f: &Field, name: &str, p: &SuiteParams) -> Result<SuiteReport> {
    let jobs = match name {
        "hopf-axioms" => hopf_axioms(f, p),
        "primitives" => primitives(f),
        "coalgebra-maps" => coalgebra_maps(f, p),
        "graded-iso" => graded_iso(f, p),
        "filtration" => filtration(f, p),
        "f-homomorphisms" => f_homomorphisms(f, p),
        "conjugation" => conjugation(f, p),
        "g-law" => g_law(f, p),
        "tower-consistency" => tower_consistency(f, p),
        "decompose-roundtrip" => decompose_roundtrip(f, p),
        other => {
            return Err(Error::InvalidArgument(format!(
                "unknown suite {other:?}; expected one of {} or all",
                SUITES.join(", ")
            )))
        }
    };
    Ok(run_jobs(name, jobs))
}

fn hopf_axioms<'a>(f: &'a Field, p: &SuiteParams) -> Vec<Job<'a>> {
    let w = p.window;
    let mut jobs: Vec<Job> = w
        .monomials()
        .map(|mono| {
            job(format!("axioms at {mono}"), move || {
                ensure(axioms::coassociative(f, mono), || "coassociativity".into())?;
                ensure(axioms::counital(f, mono), || "counit".into())?;
                ensure(axioms::antipodal(f, mono), || "antipode".into())?;
                ensure(axioms::graded(f, mono), || "grading".into())?;
                let e = Element::monomial(mono.n, mono.m);
                ensure(
                    halgebra::antipode(f, &e) == halgebra::antipode_by_extension(f, &e),
                    || "antipode closed form".into(),
                )?;
                for other in w.monomials() {
                    ensure(axioms::multiplicative(f, mono, other), || {
                        format!("multiplicativity with {other}")
                    })?;
                }
                Ok(())
            })
        })
        .collect();
    jobs.push(job("associativity", move || {
        let small = Window::new(-2, 2, 3).expect("valid window");
        let fails = axioms::associativity_failures(f, &small);
        ensure(fails.is_empty(), || fails.join("; "))
    }));
    jobs
}

/// Expected primitive bases on the window `n in [-3, 4]`, `m <= 5`.
pub fn primitive_expectations() -> Vec<(i64, Vec<Element>)> {
    let x_minus_1 = |m: i64| &Element::monomial(m, 0) - &Element::one();
    vec![
        (1, vec![Element::monomial(0, 1), x_minus_1(1)]),
        (-2, vec![x_minus_1(-2)]),
        (0, vec![]),
        (2, vec![x_minus_1(2)]),
        (3, vec![x_minus_1(3)]),
    ]
}

fn primitives(f: &Field) -> Vec<Job<'_>> {
    primitive_expectations()
        .into_iter()
        .map(|(m, expected)| {
            job(format!("primitives m={m}"), move || {
                let w = Window::new(-3, 4, 5).expect("valid window");
                let basis = lift(halgebra::primitive_space(f, m, &w))?;
                ensure(basis == expected, || format!("got {} basis vectors", basis.len()))
            })
        })
        .collect()
}

fn certify<'a>(f: &'a Field, label: String, phi: Morphism, w: Window) -> Job<'a> {
    job(label, move || {
        let rep = is_coalgebra_map(f, &phi, &w);
        ensure(rep.passed(), || format!("{rep:?}"))
    })
}

fn coalgebra_maps<'a>(f: &'a Field, p: &SuiteParams) -> Vec<Job<'a>> {
    let w = p.window;
    let mut rng = Sampler::new(p.seed);
    let mut jobs: Vec<Job> = (-3..=3)
        .map(|r| certify(f, format!("theta_{r}"), Morphism::theta(r), w))
        .collect();
    for d in 0..p.draws {
        let a = rng.alpha(-2, 2);
        jobs.push(certify(f, format!("phi_alpha draw {d}"), Morphism::phi_alpha(a), w));
        for s in 1..=3 {
            let b = rng.beta(-2, 2);
            jobs.push(certify(
                f,
                format!("phi_beta s={s} draw {d}"),
                Morphism::phi_beta(s, b).expect("s >= 1"),
                w,
            ));
        }
    }
    jobs.push(job("corrupted y -> y^2 is rejected", move || {
        let t = corrupted_map(&w);
        let rep = is_coalgebra_map(f, &t, &w);
        match rep.counterexample {
            Some(c) if (c.n, c.m) == (0, 1) => Ok(()),
            other => Err(format!("expected counterexample at y, got {other:?}")),
        }
    }));
    jobs
}

/// The identity table with `y` sent to `y^2`.
pub fn corrupted_map(w: &Window) -> TabulatedMorphism {
    TabulatedMorphism::from_fn(*w, |mono| {
        if mono == Monomial::new(0, 1) {
            Element::monomial(0, 2)
        } else {
            Element::monomial(mono.n, mono.m)
        }
    })
}

fn same_table(f: &Field, a: &Morphism, b: &Morphism, w: &Window) -> Outcome {
    let (ta, tb) = (a.tabulate(f, w), b.tabulate(f, w));
    match w.monomials().find(|m| ta.get(*m) != tb.get(*m)) {
        None => Ok(()),
        Some(m) => Err(format!("tables differ at {m}")),
    }
}

fn graded_iso<'a>(f: &'a Field, p: &SuiteParams) -> Vec<Job<'a>> {
    let w = p.window;
    let mut rng = Sampler::new(p.seed);
    let mut jobs = Vec::new();
    for d in 0..p.draws {
        let (a, b) = (rng.alpha(-2, 2), rng.alpha(-2, 2));
        jobs.push(job(format!("phi_alpha product draw {d}"), move || {
            let lhs = Morphism::phi_alpha(a.clone()).compose(&Morphism::phi_alpha(b.clone()));
            same_table(f, &lhs, &Morphism::phi_alpha(a.mul(&b)), &w)
        }));
        let (x, y) = (rng.semidirect(-2, 2, 2), rng.semidirect(-2, 2, 2));
        jobs.push(job(format!("semidirect law draw {d}"), move || {
            let lhs = x.to_morphism().compose(&y.to_morphism());
            same_table(f, &lhs, &x.mul(&y).to_morphism(), &w)?;
            let id = x.to_morphism().compose(&x.inverse().to_morphism());
            same_table(f, &id, &Morphism::identity(), &w)
        }));
    }
    jobs
}

/// A random word in the generators with no net shift.
fn random_aut0_word(rng: &mut Sampler) -> Morphism {
    let mut word = Vec::new();
    let r = rng.int(-2, 2);
    word.push(Atom::Theta(r));
    for _ in 0..3 {
        match rng.int(0, 3) {
            0 => word.push(Atom::PhiAlpha(rng.alpha(-2, 2))),
            s => word.push(Atom::PhiBeta {
                s: s as u32,
                beta: rng.beta(-2, 2),
            }),
        }
    }
    word.push(Atom::Theta(-r));
    Morphism::from_atoms(word).expect("levels are >= 1")
}

fn filtration<'a>(f: &'a Field, p: &SuiteParams) -> Vec<Job<'a>> {
    let w = p.window;
    let mut rng = Sampler::new(p.seed);
    (0..p.draws)
        .map(|d| {
            let phi = random_aut0_word(&mut rng);
            job(format!("aut0 word draw {d}"), move || {
                let t = phi.tabulate(f, &w);
                check_filtration(f, &t, &w)
            })
        })
        .collect()
}

/// Leading coefficients exist, are nonzero, and satisfy
/// `a(n, m) = a(n, i) a(n + i, m - i)` wherever all three are in the window.
pub fn check_filtration<M: MonomialMap>(f: &Field, map: &M, w: &Window) -> Outcome {
    let lead = |mono: Monomial| lift(leading_coefficient(f, map, mono));
    for mono in w.monomials() {
        let a = lead(mono)?;
        ensure(!a.is_zero(), || format!("zero leading coefficient at {mono}"))?;
        for i in 0..=mono.m {
            let tail = Monomial::new(mono.n + i as i64, mono.m - i);
            if !w.contains(tail) {
                continue;
            }
            let prod = &lead(Monomial::new(mono.n, i))? * &lead(tail)?;
            ensure(prod == a, || format!("leading coefficients not multiplicative at {mono}, i = {i}"))?;
        }
    }
    Ok(())
}

fn f_homomorphisms<'a>(f: &'a Field, p: &SuiteParams) -> Vec<Job<'a>> {
    let w = p.window;
    let mut rng = Sampler::new(p.seed);
    let mut jobs = Vec::new();
    for s in 1..=3u32.min(w.m_max) {
        for d in 0..p.draws {
            let (b, c) = (rng.beta(-2, 2), rng.beta(-2, 2));
            jobs.push(job(format!("f_{s} draw {d}"), move || {
                let phi = Morphism::phi_beta(s, b.clone())
                    .and_then(|x| Ok(x.compose(&Morphism::phi_beta(s, c.clone())?)));
                let phi = lift(phi)?;
                let defect = lift(level_defect(f, &phi, s, w.n_lo..=w.n_hi))?;
                ensure(defect == b.add(&c), || format!("defect {defect} != {}", b.add(&c)))
            }));
        }
    }
    jobs
}

/// `(phi_alpha theta_r) phi^(s)_beta (phi_alpha theta_r)^-1` against
/// `phi^(s)` of `alpha^-1<s> beta[-r]`.
pub fn conjugation_case(f: &Field, a: &SemidirectElt, s: u32, beta: &BetaSeq, w: &Window) -> Outcome {
    let psi = a.to_morphism();
    let inv = psi.inverse().expect("semidirect words are invertible");
    let lhs = psi.compose(&lift(Morphism::phi_beta(s, beta.clone()))?).compose(&inv);
    let closed = beta.shift(-a.r).scaled_by(&a.alpha.inverse().angle(s));
    same_table(f, &lhs, &lift(Morphism::phi_beta(s, closed))?, w)
}

fn conjugation<'a>(f: &'a Field, p: &SuiteParams) -> Vec<Job<'a>> {
    let w = p.window;
    let mut rng = Sampler::new(p.seed);
    let mut jobs = Vec::new();
    for s in 1..=3 {
        for d in 0..p.draws {
            let a = rng.semidirect(-2, 2, 2);
            let b = rng.beta(-2, 2);
            jobs.push(job(format!("conjugate phi^({s}) draw {d}"), move || {
                conjugation_case(f, &a, s, &b, &w)
            }));
        }
    }
    jobs
}

/// `g_mul` against the closed forms at levels 2 and 3.
pub fn closed_form_case(f: &Field, b: &BetaTower, c: &BetaTower) -> Outcome {
    let prod = lift(b.g_mul(f, c))?;
    for level in 2..=prod.depth().min(3) {
        let closed = lift(b.g_mul_closed(f, level, c))?;
        ensure(&closed == prod.level(level), || {
            format!("level {level}: recursion {} vs closed form {closed}", prod.level(level))
        })?;
    }
    Ok(())
}

pub fn associativity_case(f: &Field, a: &BetaTower, b: &BetaTower, c: &BetaTower) -> Outcome {
    let left = lift(a.g_mul(f, b).and_then(|ab| ab.g_mul(f, c)))?;
    let right = lift(b.g_mul(f, c).and_then(|bc| a.g_mul(f, &bc)))?;
    ensure(left == right, || "g_mul is not associative".into())
}

pub fn truncation_case(f: &Field, a: &BetaTower, b: &BetaTower) -> Outcome {
    let full = lift(a.g_mul(f, b))?;
    for j in 1..full.depth() {
        let lhs = lift(full.truncate(j))?;
        let rhs = lift(a.truncate(j).and_then(|x| x.g_mul(f, &b.truncate(j)?)))?;
        ensure(lhs == rhs, || format!("truncation to depth {j} is not a homomorphism"))?;
    }
    Ok(())
}

fn g_law<'a>(f: &'a Field, p: &SuiteParams) -> Vec<Job<'a>> {
    let mut rng = Sampler::new(p.seed);
    let mut jobs = Vec::new();
    for depth in [2usize, 3] {
        for d in 0..p.draws {
            let (b, c) = (rng.tower(depth, -3, 3), rng.tower(depth, -3, 3));
            jobs.push(job(format!("closed form depth {depth} draw {d}"), move || {
                closed_form_case(f, &b, &c)
            }));
        }
    }
    let depth = p.depth.max(2);
    for d in 0..p.draws {
        let (a, b, c) = (
            rng.tower(depth, -2, 2),
            rng.tower(depth, -2, 2),
            rng.tower(depth, -2, 2),
        );
        let (x, y) = (rng.semidirect(-2, 2, 2), rng.semidirect(-2, 2, 2));
        jobs.push(job(format!("group axioms depth {depth} draw {d}"), move || {
            associativity_case(f, &a, &b, &c)?;
            let zero = BetaTower::zero(depth);
            ensure(lift(a.g_mul(f, &zero))? == a, || "right identity".into())?;
            ensure(lift(zero.g_mul(f, &a))? == a, || "left identity".into())?;
            let inv = lift(a.g_inv(f))?;
            ensure(lift(a.g_mul(f, &inv))?.is_zero(), || "inverse".into())?;
            ensure(x.mul(&y).act(&a) == x.act(&y.act(&a)), || "action law".into())?;
            let lhs = x.act(&lift(a.g_mul(f, &b))?);
            let rhs = lift(x.act(&a).g_mul(f, &x.act(&b)))?;
            ensure(lhs == rhs, || "action is not by automorphisms".into())
        }));
    }
    jobs
}

fn tower_consistency<'a>(f: &'a Field, p: &SuiteParams) -> Vec<Job<'a>> {
    let mut rng = Sampler::new(p.seed);
    let depth = p.depth.max(2);
    (0..p.draws)
        .map(|d| {
            let (a, b) = (rng.tower(depth, -2, 2), rng.tower(depth, -2, 2));
            let x = rng.semidirect(-2, 2, 2);
            job(format!("towers depth {depth} draw {d}"), move || {
                truncation_case(f, &a, &b)?;
                let w = Window::new(-6, 6, depth as u32).expect("valid window");
                let prod = lift(a.g_mul(f, &b))?;
                same_table(f, &prod.to_morphism(), &a.to_morphism().compose(&b.to_morphism()), &w)?;
                let psi = x.to_morphism();
                let conj = psi
                    .compose(&a.to_morphism())
                    .compose(&psi.inverse().expect("invertible"));
                same_table(f, &conj, &x.act(&a).to_morphism(), &w)
            })
        })
        .collect()
}

/// Build `Phi(g) phi_alpha theta_r`, tabulate on a window wide enough for the
/// parameters, decompose, and compare.
pub fn roundtrip_case(f: &Field, expected: &DecompositionResult) -> Outcome {
    let depth = expected.tower.depth();
    let r = expected.r;
    let w = lift(Window::new(-4 - r, 3 + depth as i64 - r, depth as u32))?;
    let table = expected.reconstruct().tabulate(f, &w);
    let got = lift(decompose(f, &table, depth))?;
    ensure(&got == expected, || format!("recovered {got:?}"))
}

fn decompose_roundtrip<'a>(f: &'a Field, p: &SuiteParams) -> Vec<Job<'a>> {
    let mut rng = Sampler::new(p.seed);
    (0..p.draws)
        .map(|d| {
            let depth = rng.int(1, p.depth.max(1) as i64) as usize;
            let expected = DecompositionResult {
                r: rng.int(-2, 2),
                alpha: rng.alpha(-2, 2),
                tower: rng.tower(depth, -2, 2),
            };
            job(format!("roundtrip depth {depth} draw {d}"), move || roundtrip_case(f, &expected))
        })
        .collect()
}

//! Acceptance gate: seven criteria, one PASS/FAIL line each.
//!
//! Runs without the libtest harness so the summary lines are always shown.

use std::time::Instant;

use symconf::cases;
use symconf::extension::{self, SymmetricPair};
use symconf::flatmodel::{self, NullLine, Signature};
use symconf::io::WeylDto;
use symconf::liealg::{self, CoElement, GradedElement};
use symconf::linalg::{self, Matrix, Vector};
use symconf::sample::Sampler;
use symconf::symmetry;
use symconf::weyl;
use symconf::Scalar;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn sig(p: usize, q: usize) -> Signature {
    Signature::new(p, q).unwrap()
}

fn int(i: i64) -> Scalar {
    Scalar::from_int(i)
}

/// The ambient form written out by hand: corners 1, middle `diag(1.., -1..)`.
fn metric_oracle(p: usize, q: usize) -> Matrix {
    let n = p + q;
    let mut m = Matrix::zeros(n + 2, n + 2);
    m[(0, n + 1)] = int(1);
    m[(n + 1, 0)] = int(1);
    for i in 0..n {
        m[(i + 1, i + 1)] = int(if i < p { 1 } else { -1 });
    }
    m
}

/// `s_Z = [[-1, -Z, Z J Z^T / 2], [0, E, -J Z^T], [0, 0, -1]]`, entry by entry.
fn symmetry_oracle(p: usize, q: usize, z: &[Scalar]) -> Matrix {
    let n = p + q;
    let j = |i: usize| int(if i < p { 1 } else { -1 });
    let mut s = Matrix::identity(n + 2);
    s[(0, 0)] = int(-1);
    s[(n + 1, n + 1)] = int(-1);
    let mut zjz = Scalar::zero();
    for i in 0..n {
        s[(0, i + 1)] = -&z[i];
        s[(i + 1, n + 1)] = -(j(i) * &z[i]);
        zjz += &(j(i) * &z[i] * &z[i]);
    }
    s[(0, n + 1)] = Scalar::from_ratio(1, 2) * zjz;
    s
}

fn criterion_1() -> Outcome {
    let results = cases::reproduce_paper(2).map_err(|e| e.to_string())?;
    let mut bad = Vec::new();
    for r in &results {
        if !r.matched {
            bad.push(format!("{} {:?}", r.case_id, r.comparison));
            continue;
        }
        // every sampled Z really preserves or swaps the removed points
        let case = cases::paper_cases(2).unwrap().into_iter().find(|c| c.id == r.case_id).unwrap();
        let s = r.signature;
        let u = NullLine::new(&s, case.u.clone()).unwrap();
        let v = NullLine::new(&s, case.v.clone()).unwrap();
        let g = &r.report.witness;
        for (set, swap) in [(&r.report.preserving, false), (&r.report.swapping, true)] {
            for z in set.sample_points() {
                let sz = symmetry::conjugate_symmetry(&s, g, &z).unwrap();
                let (iu, iv) = (
                    symmetry::apply_to_line(&s, &sz, &u).unwrap(),
                    symmetry::apply_to_line(&s, &sz, &v).unwrap(),
                );
                let ok = if swap { iu == v && iv == u } else { iu == u && iv == v };
                if !ok {
                    bad.push(format!("{}: sample point {z:?} misbehaves", r.case_id));
                }
            }
        }
    }
    let matched = results.iter().filter(|r| r.matched).count();
    if bad.is_empty() && matched == 6 {
        Ok(format!("{matched}/6 cases match exactly"))
    } else {
        Err(format!("{matched}/6 match; {}", bad.join("; ")))
    }
}

fn criterion_2() -> Outcome {
    let mut total = 0;
    let mut failures = Vec::new();
    for (p, q) in [(2, 1), (2, 2), (3, 0)] {
        let s = sig(p, q);
        let n = p + q;
        let m = metric_oracle(p, q);
        let id = Matrix::identity(n + 2);
        let mut smp = Sampler::new(1000 + (10 * p + q) as u64, 2);
        for k in 0..200 {
            let z = smp.vector(n);
            let sz = symmetry::make_symmetry(&s, &z).unwrap();
            let mut ok = sz == symmetry_oracle(p, q, &z);
            ok &= sz.mul(&sz).unwrap() == id;
            ok &= sz.transpose().mul(&m).unwrap().mul(&sz).unwrap() == m;
            // differential at the origin: the X-block column of s N_X s^{-1} is -X
            let inv = sz.inverse().unwrap();
            for i in 0..n {
                let x = GradedElement::pure_x(s, linalg::unit_vector(n, i)).realize();
                let c = sz.mul(&x).unwrap().mul(&inv).unwrap();
                for r in 0..n {
                    let want = if r == i { int(-1) } else { Scalar::zero() };
                    ok &= c[(r + 1, 0)] == want;
                }
            }
            ok &= symmetry::is_involutive(&s, &z).unwrap();
            ok &= symmetry::tangent_is_minus_id(&s, &z).unwrap();
            total += 1;
            if !ok {
                failures.push(format!("({p},{q}) sample {k}"));
            }
        }
    }
    if failures.is_empty() {
        Ok(format!("{total}/{total} random Z pass all three checks"))
    } else {
        Err(format!("{} of {total} fail: {}", failures.len(), failures.join(", ")))
    }
}

fn criterion_3() -> Outcome {
    let mut lines = Vec::new();
    let mut ok = true;
    for n in 3..=6usize {
        let oracle = n * n * (n * n - 1) / 12 - n * (n + 1) / 2;
        for (p, q) in [(n, 0), (n - n / 2, n / 2)] {
            let dim = weyl::weyl_space_basis(p, q).map_err(|e| e.to_string())?.dim();
            ok &= dim == oracle;
            lines.push(format!("({p},{q})={dim}/{oracle}"));
        }
    }
    let text = lines.join(" ");
    if ok {
        Ok(text)
    } else {
        Err(text)
    }
}

fn criterion_4() -> Outcome {
    let mut failures = Vec::new();
    let mut checked = 0;
    for (p, q) in [(4, 0), (3, 1), (2, 2), (5, 0)] {
        let basis = weyl::weyl_space_basis(p, q).map_err(|e| e.to_string())?;
        let n = p + q;
        // the map must be able to detect a nonzero prolongation
        let zero = weyl::WeylTensor::zero(basis.signature());
        if weyl::prolongation(&zero).map_err(|e| e.to_string())?.len() != n {
            failures.push(format!("({p},{q}): zero tensor does not give the full space"));
        }
        let randoms = (0..100u64).map(|seed| basis.random_element(seed).unwrap());
        for w in randoms.chain(basis.elements().iter().cloned()) {
            if w.is_zero() {
                failures.push(format!("({p},{q}): zero sample"));
                continue;
            }
            let dim = weyl::prolongation(&w).map_err(|e| e.to_string())?.len();
            checked += 1;
            if dim != 0 {
                let json = WeylDto::from_tensor(&w, 2).to_json().unwrap_or_default();
                failures.push(format!("({p},{q}): prolongation dimension {dim} for {json}"));
            }
        }
    }
    if failures.is_empty() {
        Ok(format!("{checked} nonzero tensors, all prolongations zero"))
    } else {
        Err(failures.join("; "))
    }
}

fn criterion_5() -> Outcome {
    let mut notes = Vec::new();
    let mut constants = Vec::new();
    for (p, q) in [(2, 1), (3, 1), (2, 2)] {
        let s = sig(p, q);
        let n = p + q;
        let c = liealg::upsilon_bracket_constant(&s).map_err(|e| e.to_string())?;
        constants.push(c.clone());
        // stacked map Y -> (xi_i(Y))_i on the basis xi_i = e_i
        let dim = CoElement::dim(&s);
        let cols: Vec<Vector> = (0..n)
            .map(|j| {
                let y = linalg::unit_vector(n, j);
                (0..n)
                    .flat_map(|i| {
                        liealg::upsilon_action(&s, &y, &linalg::unit_vector(n, i))
                            .unwrap()
                            .to_coords()
                    })
                    .collect()
            })
            .collect();
        let kernel = linalg::kernel(&Matrix::from_columns(n * dim, &cols).unwrap());
        if !kernel.is_empty() {
            notes.push(format!("({p},{q}) kernel dimension {}", kernel.len()));
        }
    }
    let consistent = constants.windows(2).all(|w| w[0] == w[1]) && !constants[0].is_zero();
    if consistent && notes.is_empty() {
        Ok(format!("constant {} on all basis pairs in three signatures; injective", constants[0]))
    } else {
        Err(format!("constants {constants:?}; {}", notes.join(", ")))
    }
}

fn criterion_6() -> Outcome {
    let mut bad = Vec::new();
    for (p, q) in [(2, 1), (3, 0), (2, 2)] {
        let s = sig(p, q);
        let flat = extension::flat_extension(s).map_err(|e| e.to_string())?;
        let r = extension::validate_extension(&flat).map_err(|e| e.to_string())?;
        if !r.passed() {
            bad.push(format!("flat ({p},{q}) fails validation"));
        }
        let curv = extension::curvature_table(&flat).map_err(|e| e.to_string())?;
        if curv.iter().any(|(_, _, k)| !k.is_zero()) {
            bad.push(format!("flat ({p},{q}) has curvature"));
        }
        if !extension::symmetry_criterion(&flat, &linalg::zero_vector(p + q)).map_err(|e| e.to_string())? {
            bad.push(format!("flat ({p},{q}) fails the criterion at Y = 0"));
        }
        let r2 = extension::validate_extension(&extension::degenerate_translation_extension(s).unwrap()).unwrap();
        if !(r2.parabolic.passed && !r2.isomorphism.passed && r2.equivariance.passed && r2.x_rank == p + q - 1) {
            bad.push(format!("condition-2 fixture ({p},{q}) gives {r2:?}"));
        }
        let r3 = extension::validate_extension(&extension::skewed_flat_extension(s).unwrap()).unwrap();
        if !(r3.parabolic.passed && r3.isomorphism.passed && !r3.equivariance.passed) {
            bad.push(format!("condition-3 fixture ({p},{q}) gives {r3:?}"));
        }
    }
    let so3 = extension::so3_pair().map_err(|e| e.to_string())?;
    let so3_report = extension::metrizability_check(&so3).map_err(|e| e.to_string())?;
    if !(so3_report.passed && so3_report.m_trace_vanishes) {
        bad.push("so(3) metrizability".into());
    }
    let mut restricted = 0;
    let pairs: Vec<SymmetricPair> = (0..10)
        .map(|seed| extension::random_symmetric_pair(seed, 2, 1))
        .collect::<Result<_, _>>()
        .map_err(|e| e.to_string())?;
    for (seed, pair) in pairs.iter().enumerate() {
        let r = extension::metrizability_check(pair).map_err(|e| e.to_string())?;
        if !r.passed {
            bad.push(format!("random pair {seed} violates the trace identity"));
        }
        restricted += r.m_trace_vanishes as usize;
    }
    if bad.is_empty() {
        Ok(format!(
            "flat model valid, flat and symmetric; fixtures fail only their condition; \
             trace identity on so(3) and 10/10 random pairs (trace on m alone vanishes on {restricted}/10)"
        ))
    } else {
        Err(bad.join("; "))
    }
}

/// A random element of the stabilizer of the origin: a scaling, a
/// reflection of one middle coordinate, then a `g_1` exponential.
fn random_stabilizer(s: &Signature, smp: &mut Sampler) -> Matrix {
    let n = s.n();
    let mut k = Matrix::identity(n + 2);
    let lam = int(smp.int(3).abs() + 2);
    k[(0, 0)] = lam.clone();
    k[(n + 1, n + 1)] = lam.inv().unwrap();
    let flip = (smp.int(100).unsigned_abs() as usize) % n;
    k[(flip + 1, flip + 1)] = int(-1);
    k.mul(&flatmodel::exp_special(s, &smp.vector(n))).unwrap()
}

fn random_null_line(s: &Signature, smp: &mut Sampler) -> NullLine {
    let n = s.n();
    let g = flatmodel::exp_translation(s, &smp.vector(n));
    let g = if smp.int(1) == 0 { flatmodel::corner_swap(s).mul(&g).unwrap() } else { g };
    let g = flatmodel::exp_special(s, &smp.int_vector(n, 1)).mul(&g).unwrap();
    NullLine::new(s, g.column(0)).unwrap()
}

fn criterion_7() -> Outcome {
    let fixtures = cases::paper_cases(2).map_err(|e| e.to_string())?;
    let mut smp = Sampler::new(77, 2);
    let mut bad = Vec::new();
    let mut done = 0;
    for k in 0..20 {
        let case = &fixtures[k % fixtures.len()];
        let s = sig(case.p, case.q);
        let u = NullLine::new(&s, case.u.clone()).unwrap();
        let v = NullLine::new(&s, case.v.clone()).unwrap();
        let w = loop {
            let w = random_null_line(&s, &mut smp);
            if w != u && w != v {
                break w;
            }
        };
        let g1 = flatmodel::transitive_witness(&s, &w);
        let g2 = g1.mul(&random_stabilizer(&s, &mut smp)).unwrap();
        let r1 = symmetry::find_symmetries_with_witness(&s, &u, &v, &w, &g1).map_err(|e| e.to_string())?;
        let r2 = symmetry::find_symmetries_with_witness(&s, &u, &v, &w, &g2).map_err(|e| e.to_string())?;
        let moved = r1.reexpress(&s, &g2).map_err(|e| e.to_string())?;
        let same_kind = r1.preserving.dim() == r2.preserving.dim() && r1.swapping.dim() == r2.swapping.dim();
        if moved != r2 || !same_kind || r1.orbit != r2.orbit {
            bad.push(format!("base point {k} ({})", case.id));
        }
        done += 1;
    }
    if bad.is_empty() {
        Ok(format!("{done}/20 base points agree under two witnesses"))
    } else {
        Err(bad.join(", "))
    }
}

fn main() {
    let criteria: [Criterion; 7] = [
        ("reproduce-paper fixtures", criterion_1),
        ("involution suite", criterion_2),
        ("Weyl space dimension", criterion_3),
        ("prolongation vanishes", criterion_4),
        ("bracket coherence", criterion_5),
        ("extension suite", criterion_6),
        ("witness invariance", criterion_7),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(run).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {}: PASS [{name}] {detail} ({secs:.2}s)", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {}: FAIL [{name}] {detail} ({secs:.2}s)", i + 1);
            }
        }
    }
    println!("acceptance: {}/7 criteria pass", 7 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}

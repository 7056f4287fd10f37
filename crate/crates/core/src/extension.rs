//! Extensions of homogeneous pairs `(k, h)` to `(so(p+1,q+1), p)`.
//!
//! Everything lives at the Lie algebra level: `alpha` is a linear map from
//! `k` coordinates to [`GradedElement`] coordinates and the group morphism
//! `H -> P` is represented only through `alpha` restricted to `h`.

use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::flatmodel::Signature;
use crate::liealg::{self, GradedElement, StructureAlgebra};
use crate::linalg::{self, Matrix, RowReducer, Vector};
use crate::sample::Sampler;

/// Coordinates of `v` in the span of `basis`, if it lies there.
fn coords_in(ambient: usize, basis: &[Vector], v: &[Scalar]) -> Option<Vector> {
    if basis.is_empty() {
        return linalg::is_zero_vector(v).then(Vec::new);
    }
    let m = Matrix::from_columns(ambient, basis).ok()?;
    linalg::solve_affine(&m, v).ok()?.base_point().cloned()
}

fn in_span(ambient: usize, basis: &[Vector], v: &[Scalar]) -> bool {
    let mut r = RowReducer::new(ambient);
    for b in basis {
        r.insert_dense(b);
    }
    r.contains(v)
}

/// A Lie algebra `k` with a subalgebra `h` and a complement `m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomogeneousPair {
    alg: StructureAlgebra,
    h_basis: Vec<Vector>,
    m_basis: Vec<Vector>,
}

impl HomogeneousPair {
    pub fn new(alg: StructureAlgebra, h_basis: Vec<Vector>, m_basis: Vec<Vector>) -> Result<Self> {
        let dim = alg.dim();
        if let Some(v) = h_basis.iter().chain(&m_basis).find(|v| v.len() != dim) {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: v.len(),
            });
        }
        let all: Vec<Vector> = h_basis.iter().chain(&m_basis).cloned().collect();
        if all.len() != dim || linalg::rank_of_vectors(dim, &all) != dim {
            return Err(Error::InvalidStructure(
                "h and m bases must together form a basis of k".into(),
            ));
        }
        for (i, x) in h_basis.iter().enumerate() {
            for (j, y) in h_basis.iter().enumerate().skip(i + 1) {
                if !in_span(dim, &h_basis, &alg.bracket(x, y)) {
                    return Err(Error::ClosureViolation(format!("[h{i}, h{j}] is not in h")));
                }
            }
        }
        Ok(Self { alg, h_basis, m_basis })
    }

    /// Pair whose `h` and `m` are spanned by coordinate axes.
    pub fn from_indices(alg: StructureAlgebra, h: &[usize], m: &[usize]) -> Result<Self> {
        let dim = alg.dim();
        if let Some(&i) = h.iter().chain(m).find(|&&i| i >= dim) {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: i + 1,
            });
        }
        let unit = |i: &usize| linalg::unit_vector(dim, *i);
        let (hb, mb) = (h.iter().map(unit).collect(), m.iter().map(unit).collect());
        Self::new(alg, hb, mb)
    }

    pub fn algebra(&self) -> &StructureAlgebra {
        &self.alg
    }

    pub fn h_basis(&self) -> &[Vector] {
        &self.h_basis
    }

    pub fn m_basis(&self) -> &[Vector] {
        &self.m_basis
    }

    pub fn in_m(&self, v: &[Scalar]) -> bool {
        in_span(self.alg.dim(), &self.m_basis, v)
    }
}

/// A homogeneous pair with `[h,m] ⊆ m` and `[m,m] ⊆ h`; the involution is
/// `+1` on `h` and `-1` on `m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymmetricPair {
    pair: HomogeneousPair,
}

impl SymmetricPair {
    pub fn new(alg: StructureAlgebra, h_basis: Vec<Vector>, m_basis: Vec<Vector>) -> Result<Self> {
        Self::from_pair(HomogeneousPair::new(alg, h_basis, m_basis)?)
    }

    pub fn from_pair(pair: HomogeneousPair) -> Result<Self> {
        let dim = pair.alg.dim();
        for (i, x) in pair.h_basis.iter().enumerate() {
            for (j, y) in pair.m_basis.iter().enumerate() {
                if !in_span(dim, &pair.m_basis, &pair.alg.bracket(x, y)) {
                    return Err(Error::ClosureViolation(format!("[h{i}, m{j}] is not in m")));
                }
            }
        }
        for (i, x) in pair.m_basis.iter().enumerate() {
            for (j, y) in pair.m_basis.iter().enumerate().skip(i + 1) {
                if !in_span(dim, &pair.h_basis, &pair.alg.bracket(x, y)) {
                    return Err(Error::ClosureViolation(format!("[m{i}, m{j}] is not in h")));
                }
            }
        }
        Ok(Self { pair })
    }

    pub fn pair(&self) -> &HomogeneousPair {
        &self.pair
    }

    pub fn algebra(&self) -> &StructureAlgebra {
        &self.pair.alg
    }

    pub fn h_basis(&self) -> &[Vector] {
        &self.pair.h_basis
    }

    pub fn m_basis(&self) -> &[Vector] {
        &self.pair.m_basis
    }

    /// Matrix of the involution in the coordinates of `k`.
    pub fn sigma(&self) -> Result<Matrix> {
        let dim = self.pair.alg.dim();
        let cols: Vec<Vector> = self.h_basis().iter().chain(self.m_basis()).cloned().collect();
        let change = Matrix::from_columns(dim, &cols)?;
        let mut diag = Matrix::identity(dim);
        for i in self.h_basis().len()..dim {
            diag[(i, i)] = Scalar::from_int(-1);
        }
        change.mul(&diag)?.mul(&change.inverse()?)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Extension {
    sig: Signature,
    pair: HomogeneousPair,
    alpha: Matrix,
}

impl Extension {
    pub fn new(sig: Signature, pair: HomogeneousPair, alpha: Matrix) -> Result<Self> {
        let dim = pair.alg.dim();
        let target = GradedElement::algebra_dim(&sig);
        if alpha.rows() != target {
            return Err(Error::DimensionMismatch {
                expected: target,
                found: alpha.rows(),
            });
        }
        if alpha.cols() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: alpha.cols(),
            });
        }
        if pair.m_basis.len() != sig.n() {
            return Err(Error::DimensionMismatch {
                expected: sig.n(),
                found: pair.m_basis.len(),
            });
        }
        Ok(Self { sig, pair, alpha })
    }

    pub fn signature(&self) -> Signature {
        self.sig
    }

    pub fn pair(&self) -> &HomogeneousPair {
        &self.pair
    }

    pub fn alpha(&self) -> &Matrix {
        &self.alpha
    }

    pub fn apply_alpha(&self, x: &[Scalar]) -> Result<GradedElement> {
        GradedElement::from_coords(self.sig, &self.alpha.mul_vec(x)?)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConditionOutcome {
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    /// `alpha(h) ⊆ p`.
    pub parabolic: ConditionOutcome,
    /// `k/h -> g/p` is an isomorphism.
    pub isomorphism: ConditionOutcome,
    /// `alpha([H, Y]) = [alpha(H), alpha(Y)]` for `H` in `h`.
    pub equivariance: ConditionOutcome,
    pub x_rank: usize,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.conditions().iter().all(|c| c.passed)
    }

    pub fn conditions(&self) -> [&ConditionOutcome; 3] {
        [&self.parabolic, &self.isomorphism, &self.equivariance]
    }
}

pub fn validate_extension(e: &Extension) -> Result<ValidationReport> {
    let n = e.sig.n();
    let mut bad_h = Vec::new();
    for (i, h) in e.pair.h_basis.iter().enumerate() {
        if !linalg::is_zero_vector(&e.apply_alpha(h)?.x) {
            bad_h.push(format!("h{i}"));
        }
    }
    let parabolic = ConditionOutcome {
        passed: bad_h.is_empty(),
        detail: if bad_h.is_empty() {
            "alpha(h) has zero X-block".into()
        } else {
            format!("nonzero X-block on {}", bad_h.join(", "))
        },
    };

    let xs: Vec<Vector> = e
        .pair
        .m_basis
        .iter()
        .map(|m| e.apply_alpha(m).map(|g| g.x))
        .collect::<Result<_>>()?;
    let x_rank = linalg::rank_of_vectors(n, &xs);
    let isomorphism = ConditionOutcome {
        passed: x_rank == n,
        detail: format!("X-blocks of alpha(m) have rank {x_rank} of {n}"),
    };

    let dim = e.pair.alg.dim();
    let mut violations = Vec::new();
    for (i, h) in e.pair.h_basis.iter().enumerate() {
        let ah = e.apply_alpha(h)?;
        for j in 0..dim {
            let y = linalg::unit_vector(dim, j);
            let lhs = e.apply_alpha(&e.pair.alg.bracket(h, &y))?;
            let rhs = liealg::bracket(&ah, &e.apply_alpha(&y)?)?;
            if lhs != rhs {
                violations.push(format!("(h{i}, e{j})"));
            }
        }
    }
    let equivariance = ConditionOutcome {
        passed: violations.is_empty(),
        detail: if violations.is_empty() {
            "alpha intertwines ad(h)".into()
        } else {
            format!("violated on {}", violations.join(", "))
        },
    };
    Ok(ValidationReport {
        parabolic,
        isomorphism,
        equivariance,
        x_rank,
    })
}

/// `kappa(x, y) = [alpha x, alpha y] - alpha [x, y]` for `x, y` in `m`.
pub fn curvature(e: &Extension, x: &[Scalar], y: &[Scalar]) -> Result<GradedElement> {
    for v in [x, y] {
        if v.len() != e.pair.alg.dim() {
            return Err(Error::DimensionMismatch {
                expected: e.pair.alg.dim(),
                found: v.len(),
            });
        }
        if !e.pair.in_m(v) {
            return Err(Error::NotInSpan("curvature arguments must lie in m".into()));
        }
    }
    let br = liealg::bracket(&e.apply_alpha(x)?, &e.apply_alpha(y)?)?;
    let lin = e.apply_alpha(&e.pair.alg.bracket(x, y))?;
    let diff = linalg::sub_vectors(&br.to_coords(), &lin.to_coords());
    GradedElement::from_coords(e.sig, &diff)
}

/// Curvature on all pairs `i < j` of the `m` basis.
pub fn curvature_table(e: &Extension) -> Result<Vec<(usize, usize, GradedElement)>> {
    let m = &e.pair.m_basis;
    let mut out = Vec::new();
    for i in 0..m.len() {
        for j in i + 1..m.len() {
            out.push((i, j, curvature(e, &m[i], &m[j])?));
        }
    }
    Ok(out)
}

/// Whether `Ad_{exp Y} alpha(k)` is stable under `Ad_{s_0}`.
pub fn symmetry_criterion(e: &Extension, y: &[Scalar]) -> Result<bool> {
    let sig = &e.sig;
    let g = liealg::exp_nilpotent(sig, y)?;
    let g_inv = g.inverse()?;
    let len = sig.ambient() * sig.ambient();
    let dim = e.pair.alg.dim();
    let mut v = Vec::with_capacity(dim);
    for j in 0..dim {
        let img = e.apply_alpha(&linalg::unit_vector(dim, j))?.realize();
        v.push(g.mul(&img)?.mul(&g_inv)?);
    }
    let flat: Vec<Vector> = v.iter().map(Matrix::flatten).collect();
    let base = linalg::rank_of_vectors(len, &flat);
    let mut both = flat;
    for m in &v {
        both.push(liealg::ad_s0(sig, m)?.flatten());
    }
    Ok(linalg::rank_of_vectors(len, &both) == base)
}

/// First candidate passing [`symmetry_criterion`]; an incomplete search.
pub fn symmetry_criterion_search(e: &Extension, candidates: &[Vector]) -> Result<Option<Vector>> {
    for y in candidates {
        if symmetry_criterion(e, y)? {
            return Ok(Some(y.clone()));
        }
    }
    Ok(None)
}

/// All integer covectors with entries in `[-radius, radius]`, zero first.
pub fn covector_grid(n: usize, radius: i64) -> Vec<Vector> {
    let side = (2 * radius + 1) as usize;
    let mut out: Vec<Vector> = (0..side.pow(n as u32))
        .map(|mut t| {
            (0..n)
                .map(|_| {
                    let c = (t % side) as i64 - radius;
                    t /= side;
                    Scalar::from_int(c)
                })
                .collect()
        })
        .collect();
    out.sort_by_key(|v| v.iter().filter(|c| !c.is_zero()).count());
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TraceCheck {
    pub i: usize,
    pub j: usize,
    /// Trace of `ad([X,Y])` restricted to `m`.
    pub m_trace: Scalar,
    /// Trace of `ad([X,Y])` on all of `k`.
    pub full_trace: Scalar,
    /// `B(X,Y) - B(Y,X)` for the Killing form `B`.
    pub killing_difference: Scalar,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MetrizabilityReport {
    /// `tr ad([X,Y]) = B(X,Y) - B(Y,X) = 0` on every pair.
    pub passed: bool,
    /// Whether the trace restricted to `m` also vanishes. This is not implied
    /// by the identity above; it fails when `h` is not unimodular.
    pub m_trace_vanishes: bool,
    pub pairs: Vec<TraceCheck>,
}

pub fn metrizability_check(pair: &SymmetricPair) -> Result<MetrizabilityReport> {
    let alg = pair.algebra();
    let dim = alg.dim();
    let m = pair.m_basis();
    let mut pairs = Vec::new();
    for i in 0..m.len() {
        for j in i + 1..m.len() {
            let h = alg.bracket(&m[i], &m[j]);
            if !in_span(dim, pair.h_basis(), &h) {
                return Err(Error::ClosureViolation(format!("[m{i}, m{j}] is not in h")));
            }
            let mut m_trace = Scalar::zero();
            for (k, mk) in m.iter().enumerate() {
                let c = coords_in(dim, m, &alg.bracket(&h, mk))
                    .ok_or_else(|| Error::ClosureViolation(format!("[[m{i}, m{j}], m{k}] is not in m")))?;
                m_trace += &c[k];
            }
            let full_trace = alg.ad(&h).trace();
            let killing_difference =
                liealg::killing_form(alg, &m[i], &m[j]) - liealg::killing_form(alg, &m[j], &m[i]);
            pairs.push(TraceCheck {
                i,
                j,
                m_trace,
                full_trace,
                killing_difference,
            });
        }
    }
    let passed = pairs
        .iter()
        .all(|t| t.full_trace == t.killing_difference && t.full_trace.is_zero());
    let m_trace_vanishes = pairs.iter().all(|t| t.m_trace.is_zero());
    Ok(MetrizabilityReport {
        passed,
        m_trace_vanishes,
        pairs,
    })
}

/// The flat model: `k = so(p+1,q+1)`, `alpha = id`, `h = p`, `m = g_{-1}`.
pub fn flat_extension(sig: Signature) -> Result<Extension> {
    let alg = liealg::so_structure_algebra(sig);
    let blocks = GradedElement::coordinate_blocks(&sig);
    let h: Vec<usize> = std::iter::once(blocks.a).chain(blocks.so.clone()).chain(blocks.z.clone()).collect();
    let m: Vec<usize> = blocks.x.clone().collect();
    let dim = alg.dim();
    let pair = HomogeneousPair::from_indices(alg, &h, &m)?;
    Extension::new(sig, pair, Matrix::identity(dim))
}

/// Abelian `k = R^n` with `h = 0`, sent onto the translations.
pub fn translation_extension(sig: Signature) -> Result<Extension> {
    let n = sig.n();
    let alg = StructureAlgebra::from_triples(n, Vec::new())?;
    let m: Vec<usize> = (0..n).collect();
    let pair = HomogeneousPair::from_indices(alg, &[], &m)?;
    let blocks = GradedElement::coordinate_blocks(&sig);
    let mut alpha = Matrix::zeros(GradedElement::algebra_dim(&sig), n);
    for (i, row) in blocks.x.enumerate() {
        alpha[(row, i)] = Scalar::one();
    }
    Extension::new(sig, pair, alpha)
}

/// Translation extension with the last direction sent to zero.
pub fn degenerate_translation_extension(sig: Signature) -> Result<Extension> {
    let e = translation_extension(sig)?;
    let n = sig.n();
    let mut alpha = e.alpha.clone();
    let row = GradedElement::coordinate_blocks(&sig).x.start + n - 1;
    alpha[(row, n - 1)] = Scalar::zero();
    Extension::new(sig, e.pair, alpha)
}

/// Flat extension with `alpha` of the grading element shifted by an
/// element of `so(p,q)`, which breaks equivariance only.
pub fn skewed_flat_extension(sig: Signature) -> Result<Extension> {
    let e = flat_extension(sig)?;
    let blocks = GradedElement::coordinate_blocks(&sig);
    let mut alpha = e.alpha.clone();
    alpha[(blocks.so.start, blocks.a)] = Scalar::one();
    Extension::new(sig, e.pair, alpha)
}

/// `so(3)` with `[L1,L2] = L3` cyclically, `h = <L3>`, `m = <L1, L2>`.
pub fn so3_pair() -> Result<SymmetricPair> {
    let e = |i: usize| linalg::unit_vector(3, i);
    let alg = StructureAlgebra::from_triples(3, vec![(0, 1, e(2)), (1, 2, e(0)), (2, 0, e(1))])?;
    SymmetricPair::new(alg, vec![e(2)], vec![e(0), e(1)])
}

/// Random symmetric pair inside `gl(a+b)` for the involution `Ad_D`,
/// `D = diag(1 x a, -1 x b)`: the Lie algebra generated by sparse integer
/// matrices taken from the two eigenspaces.
pub fn random_symmetric_pair(seed: u64, a: usize, b: usize) -> Result<SymmetricPair> {
    let size = a + b;
    if a == 0 || b == 0 {
        return Err(Error::InvalidStructure("both eigenspaces of D must be nonzero".into()));
    }
    let mut smp = Sampler::new(seed, 2);
    let even = |r: usize, c: usize| (r < a) == (c < a);
    let draw = |smp: &mut Sampler, parity: bool| loop {
        let mut m = Matrix::zeros(size, size);
        for r in 0..size {
            for c in 0..size {
                if even(r, c) == parity && smp.rng().gen_bool(0.4) {
                    m[(r, c)] = Scalar::from_int(smp.int(2));
                }
            }
        }
        if !m.is_zero() {
            return m;
        }
    };
    let gens = [draw(&mut smp, true), draw(&mut smp, false), draw(&mut smp, false)];

    let len = size * size;
    let mut reducers = [RowReducer::new(len), RowReducer::new(len)];
    let mut parts: [Vec<Matrix>; 2] = [Vec::new(), Vec::new()];
    let push = |g: Matrix, parity: usize, reducers: &mut [RowReducer; 2], parts: &mut [Vec<Matrix>; 2]| {
        if reducers[parity].insert_dense(&g.flatten()) {
            parts[parity].push(g);
            true
        } else {
            false
        }
    };
    for (g, parity) in gens.into_iter().zip([0, 1, 1]) {
        push(g, parity, &mut reducers, &mut parts);
    }
    loop {
        let all: Vec<(Matrix, usize)> = parts
            .iter()
            .enumerate()
            .flat_map(|(p, v)| v.iter().map(move |m| (m.clone(), p)))
            .collect();
        let mut grew = false;
        for i in 0..all.len() {
            for j in i + 1..all.len() {
                let br = all[i].0.commutator(&all[j].0)?;
                grew |= push(br, all[i].1 ^ all[j].1, &mut reducers, &mut parts);
            }
        }
        if !grew {
            break;
        }
    }
    let [h, m] = parts;
    let (dh, dm) = (h.len(), m.len());
    let basis: Vec<Matrix> = h.into_iter().chain(m).collect();
    let alg = StructureAlgebra::from_matrix_basis(&basis)?;
    let dim = dh + dm;
    let unit = |i| linalg::unit_vector(dim, i);
    SymmetricPair::new(alg, (0..dh).map(unit).collect(), (dh..dim).map(unit).collect())
}

/// `Ad_{s_0}` in the coordinates of [`GradedElement::to_coords`].
pub fn ad_s0_coords(sig: &Signature) -> Result<Matrix> {
    let cols = GradedElement::basis(*sig)
        .iter()
        .map(|b| {
            let img = liealg::ad_s0(sig, &b.realize())?;
            Ok(GradedElement::degrade(*sig, &img)?.to_coords())
        })
        .collect::<Result<Vec<_>>>()?;
    Matrix::from_columns(GradedElement::algebra_dim(sig), &cols)
}

//! The Moebius space: null lines of `R^{p+q+2}` with the form
//!
//! ```text
//!     ( 0  0  1 )
//! m = ( 0  J  0 ),   J = diag(1 (p times), -1 (q times))
//!     ( 1  0  0 )
//! ```
//!
//! Coordinates are indexed `0..=n+1` with `n = p + q`; the origin is `<e_0>`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::linalg::{self, is_zero_vector, Matrix, Vector};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Signature {
    p: usize,
    q: usize,
}

impl Signature {
    /// Any `p, q` with `p + q >= 3`; the order of `p` and `q` is kept as given.
    pub fn new(p: usize, q: usize) -> Result<Self> {
        if p + q < 3 {
            return Err(Error::InvalidSignature { p, q });
        }
        Ok(Self { p, q })
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn q(&self) -> usize {
        self.q
    }

    /// Dimension of the conformal manifold.
    pub fn n(&self) -> usize {
        self.p + self.q
    }

    /// Dimension of the ambient space `R^{n+2}`.
    pub fn ambient(&self) -> usize {
        self.n() + 2
    }

    /// Index of the last ambient coordinate, `n + 1`.
    pub fn infinity(&self) -> usize {
        self.n() + 1
    }

    /// Diagonal entry `J_ii` for `0 <= i < n`.
    pub fn j_sign(&self, i: usize) -> i64 {
        if i < self.p {
            1
        } else {
            -1
        }
    }

    pub fn j_scalar(&self, i: usize) -> Scalar {
        Scalar::from_int(self.j_sign(i))
    }

    /// The matrix `J`.
    pub fn j_matrix(&self) -> Matrix {
        let n = self.n();
        let mut j = Matrix::zeros(n, n);
        for i in 0..n {
            j[(i, i)] = self.j_scalar(i);
        }
        j
    }

    /// `J v` for a vector of length `n`.
    pub fn apply_j(&self, v: &[Scalar]) -> Vector {
        v.iter()
            .enumerate()
            .map(|(i, x)| if self.j_sign(i) > 0 { x.clone() } else { -x })
            .collect()
    }

    /// `J(x, y) = x^T J y` on `R^n`.
    pub fn j_form(&self, x: &[Scalar], y: &[Scalar]) -> Scalar {
        linalg::dot(&self.apply_j(x), y)
    }

    /// The ambient form `m` as a matrix.
    pub fn metric(&self) -> Matrix {
        let n = self.n();
        let mut m = Matrix::zeros(n + 2, n + 2);
        m[(0, n + 1)] = Scalar::one();
        m[(n + 1, 0)] = Scalar::one();
        for i in 0..n {
            m[(i + 1, i + 1)] = self.j_scalar(i);
        }
        m
    }

    fn check_len(&self, v: &[Scalar]) -> Result<()> {
        if v.len() != self.ambient() {
            return Err(Error::DimensionMismatch {
                expected: self.ambient(),
                found: v.len(),
            });
        }
        Ok(())
    }

    /// `m(x, y) = x_0 y_{n+1} + x_{n+1} y_0 + sum_i J_ii x_i y_i`.
    pub fn pairing(&self, x: &[Scalar], y: &[Scalar]) -> Result<Scalar> {
        self.check_len(x)?;
        self.check_len(y)?;
        let inf = self.infinity();
        let mut acc = &x[0] * &y[inf] + &x[inf] * &y[0];
        acc += &self.j_form(&x[1..inf], &y[1..inf]);
        Ok(acc)
    }

    /// Whether `g^T m g = m` exactly.
    pub fn preserves_form(&self, g: &Matrix) -> bool {
        if g.rows() != self.ambient() || g.cols() != self.ambient() {
            return false;
        }
        let m = self.metric();
        g.transpose()
            .mul(&m)
            .and_then(|t| t.mul(g))
            .map(|r| r == m)
            .unwrap_or(false)
    }

    /// Whether `M^T m + m M = 0` exactly.
    pub fn in_algebra(&self, a: &Matrix) -> bool {
        if a.rows() != self.ambient() || a.cols() != self.ambient() {
            return false;
        }
        let m = self.metric();
        let lhs = a.transpose().mul(&m).expect("square");
        let rhs = m.mul(a).expect("square");
        lhs.add(&rhs).expect("same shape").is_zero()
    }
}

/// Projective class of a nonzero null vector, normalized so that its first
/// nonzero coordinate is 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct NullLine {
    rep: Vector,
}

impl NullLine {
    pub fn new(sig: &Signature, v: Vector) -> Result<Self> {
        sig.check_len(&v)?;
        let Some(lead) = v.iter().find(|x| !x.is_zero()).cloned() else {
            return Err(Error::ZeroVector);
        };
        if !sig.pairing(&v, &v)?.is_zero() {
            return Err(Error::NotNull);
        }
        let inv = lead.inv()?;
        Ok(Self {
            rep: v.iter().map(|x| x * &inv).collect(),
        })
    }

    /// The origin `<e_0>`.
    pub fn origin(sig: &Signature) -> Self {
        Self {
            rep: linalg::unit_vector(sig.ambient(), 0),
        }
    }

    /// `<e_i>` for an isotropic basis vector (`i = 0` or `i = n+1`).
    pub fn basis(sig: &Signature, i: usize) -> Result<Self> {
        Self::new(sig, linalg::unit_vector(sig.ambient(), i))
    }

    pub fn representative(&self) -> &Vector {
        &self.rep
    }

    pub fn into_representative(self) -> Vector {
        self.rep
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        v.len() == self.rep.len()
            && !is_zero_vector(v)
            && linalg::rank_of_vectors(v.len(), &[self.rep.clone(), v.to_vec()]) == 1
    }
}

/// Position of a point `<w>` relative to the removed points `<u>`, `<v>`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct OrbitLabel {
    /// `m(w, u) = 0`
    pub iso_u: bool,
    /// `m(w, v) = 0`
    pub iso_v: bool,
    /// `w` lies in `<u, v>`
    pub in_span: bool,
}

pub fn classify_orbit(sig: &Signature, w: &NullLine, u: &NullLine, v: &NullLine) -> Result<OrbitLabel> {
    if w == u || w == v {
        return Err(Error::RemovedPoint);
    }
    if u == v {
        return Err(Error::CoincidentLines);
    }
    let (wr, ur, vr) = (w.representative(), u.representative(), v.representative());
    let n = sig.ambient();
    let span = linalg::rank_of_vectors(n, &[ur.clone(), vr.clone()]);
    let with_w = linalg::rank_of_vectors(n, &[wr.clone(), ur.clone(), vr.clone()]);
    Ok(OrbitLabel {
        iso_u: sig.pairing(wr, ur)?.is_zero(),
        iso_v: sig.pairing(wr, vr)?.is_zero(),
        in_span: with_w == span,
    })
}

/// Matrix exchanging `e_0` and `e_{n+1}`; an isometry of `m`.
pub fn corner_swap(sig: &Signature) -> Matrix {
    let n = sig.ambient();
    let mut g = Matrix::identity(n);
    let inf = sig.infinity();
    g[(0, 0)] = Scalar::zero();
    g[(inf, inf)] = Scalar::zero();
    g[(0, inf)] = Scalar::one();
    g[(inf, 0)] = Scalar::one();
    g
}

/// `exp` of the pure `g_{-1}` element with block `x`:
/// `e_0 -> e_0 + x - (1/2) J(x,x) e_{n+1}`.
pub fn exp_translation(sig: &Signature, x: &[Scalar]) -> Matrix {
    let n = sig.n();
    let inf = sig.infinity();
    let jx = sig.apply_j(x);
    let mut g = Matrix::identity(n + 2);
    for i in 0..n {
        g[(i + 1, 0)] = x[i].clone();
        g[(inf, i + 1)] = -&jx[i];
    }
    g[(inf, 0)] = -(Scalar::from_ratio(1, 2) * sig.j_form(x, x));
    g
}

/// `exp` of the pure `g_1` element with block `z` (a row vector):
/// the transpose picture of [`exp_translation`].
pub fn exp_special(sig: &Signature, z: &[Scalar]) -> Matrix {
    let n = sig.n();
    let inf = sig.infinity();
    let jz = sig.apply_j(z);
    let mut g = Matrix::identity(n + 2);
    for i in 0..n {
        g[(0, i + 1)] = z[i].clone();
        g[(i + 1, inf)] = -&jz[i];
    }
    g[(0, inf)] = -(Scalar::from_ratio(1, 2) * sig.j_form(z, z));
    g
}

/// An isometry `g` of `m` with `g e_0` spanning `w`.
///
/// Built from translations, the corner swap and one `g_1` exponential:
/// `w_0 != 0` uses a translation; `w_{n+1} != 0` swaps corners first; a null
/// `w` inside the middle block is first pushed off it by `exp_special`.
pub fn transitive_witness(sig: &Signature, w: &NullLine) -> Matrix {
    let rep = w.representative();
    let inf = sig.infinity();
    let middle = |v: &[Scalar]| v[1..inf].to_vec();
    if !rep[0].is_zero() {
        // normalized: rep[0] == 1
        return exp_translation(sig, &middle(rep));
    }
    if !rep[inf].is_zero() {
        let swapped = corner_swap(sig).mul_vec(rep).expect("dimensions");
        let lead = swapped[0].inv().expect("nonzero");
        let x: Vector = middle(&swapped).iter().map(|c| c * &lead).collect();
        return corner_swap(sig).mul(&exp_translation(sig, &x)).expect("dimensions");
    }
    // w = (0, W, 0) with J(W, W) = 0 and W != 0
    let mid = middle(rep);
    let k = mid.iter().position(|x| !x.is_zero()).expect("nonzero null vector");
    let mut z = linalg::zero_vector(sig.n());
    z[k] = mid[k].inv().expect("nonzero");
    let pushed = exp_special(sig, &z).mul_vec(rep).expect("dimensions");
    // pushed[0] == z . W == 1
    let back = exp_special(sig, &linalg::scale_vector(&Scalar::from_int(-1), &z));
    back.mul(&exp_translation(sig, &middle(&pushed))).expect("dimensions")
}

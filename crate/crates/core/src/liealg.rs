//! The graded Lie algebra `so(p+1,q+1) = g_{-1} + g_0 + g_1` in block form
//!
//! ```text
//! ( a   Z    0     )
//! ( X   A   -J Z^T )
//! ( 0  -X^T J  -a  )
//! ```
//!
//! together with `co(p,q)`, the map `(Y, xi) -> xi(Y)` into `co(p,q)` and
//! abstract Lie algebras given by structure constants.

use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::flatmodel::Signature;
use crate::linalg::{self, Matrix, Vector};
use crate::symmetry;

/// Index pairs `(i, j)`, `i < j`, labelling the basis `J (E_ij - E_ji)` of `so(p,q)`.
pub fn so_pairs(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect()
}

/// Coordinates of `A` in `so(p,q)`: the upper triangle of `J A`.
fn so_coords(sig: &Signature, a: &Matrix) -> Vector {
    so_pairs(sig.n())
        .into_iter()
        .map(|(i, j)| &sig.j_scalar(i) * &a[(i, j)])
        .collect()
}

fn so_from_coords(sig: &Signature, coords: &[Scalar]) -> Matrix {
    let n = sig.n();
    let mut a = Matrix::zeros(n, n);
    for ((i, j), c) in so_pairs(n).into_iter().zip(coords) {
        // A = J M with M = c (E_ij - E_ji)
        a[(i, j)] = &sig.j_scalar(i) * c;
        a[(j, i)] = -(&sig.j_scalar(j) * c);
    }
    a
}

/// Whether `A^T J + J A = 0`.
pub fn in_so(sig: &Signature, a: &Matrix) -> bool {
    let j = sig.j_matrix();
    a.transpose()
        .mul(&j)
        .and_then(|l| l.add(&j.mul(a)?))
        .map(|m| m.is_zero())
        .unwrap_or(false)
}

/// Element of `so(p+1,q+1)` split into its graded blocks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedElement {
    pub sig: Signature,
    pub a: Scalar,
    pub x: Vector,
    pub a_block: Matrix,
    pub z: Vector,
}

impl GradedElement {
    pub fn zero(sig: Signature) -> Self {
        let n = sig.n();
        Self {
            sig,
            a: Scalar::zero(),
            x: linalg::zero_vector(n),
            a_block: Matrix::zeros(n, n),
            z: linalg::zero_vector(n),
        }
    }

    pub fn pure_x(sig: Signature, x: Vector) -> Self {
        Self { x, ..Self::zero(sig) }
    }

    pub fn pure_z(sig: Signature, z: Vector) -> Self {
        Self { z, ..Self::zero(sig) }
    }

    pub fn grading(sig: Signature) -> Self {
        Self {
            a: Scalar::one(),
            ..Self::zero(sig)
        }
    }

    /// Dimension of `so(p+1,q+1)`.
    pub fn algebra_dim(sig: &Signature) -> usize {
        let n = sig.n();
        1 + 2 * n + n * (n - 1) / 2
    }

    pub fn realize(&self) -> Matrix {
        let sig = &self.sig;
        let n = sig.n();
        let inf = sig.infinity();
        let jz = sig.apply_j(&self.z);
        let jx = sig.apply_j(&self.x);
        let mut m = Matrix::zeros(n + 2, n + 2);
        m[(0, 0)] = self.a.clone();
        m[(inf, inf)] = -&self.a;
        for i in 0..n {
            m[(0, i + 1)] = self.z[i].clone();
            m[(i + 1, 0)] = self.x[i].clone();
            m[(i + 1, inf)] = -&jz[i];
            m[(inf, i + 1)] = -&jx[i];
            for j in 0..n {
                m[(i + 1, j + 1)] = self.a_block[(i, j)].clone();
            }
        }
        m
    }

    pub fn degrade(sig: Signature, m: &Matrix) -> Result<Self> {
        if !sig.in_algebra(m) {
            return Err(Error::NotInAlgebra);
        }
        let n = sig.n();
        let mut a_block = Matrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                a_block[(i, j)] = m[(i + 1, j + 1)].clone();
            }
        }
        let e = Self {
            sig,
            a: m[(0, 0)].clone(),
            x: (0..n).map(|i| m[(i + 1, 0)].clone()).collect(),
            a_block,
            z: (0..n).map(|i| m[(0, i + 1)].clone()).collect(),
        };
        // membership in the algebra leaves no freedom in the remaining entries
        debug_assert_eq!(&e.realize(), m);
        Ok(e)
    }

    /// Coordinates `[a, X, so-part, Z]`.
    pub fn to_coords(&self) -> Vector {
        let mut c = vec![self.a.clone()];
        c.extend(self.x.iter().cloned());
        c.extend(so_coords(&self.sig, &self.a_block));
        c.extend(self.z.iter().cloned());
        c
    }

    pub fn from_coords(sig: Signature, c: &[Scalar]) -> Result<Self> {
        let n = sig.n();
        let dim = Self::algebra_dim(&sig);
        if c.len() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: c.len(),
            });
        }
        let so = n * (n - 1) / 2;
        Ok(Self {
            sig,
            a: c[0].clone(),
            x: c[1..=n].to_vec(),
            a_block: so_from_coords(&sig, &c[1 + n..1 + n + so]),
            z: c[1 + n + so..].to_vec(),
        })
    }

    /// Coordinate basis of `so(p+1,q+1)`.
    pub fn basis(sig: Signature) -> Vec<Self> {
        let dim = Self::algebra_dim(&sig);
        (0..dim)
            .map(|i| Self::from_coords(sig, &linalg::unit_vector(dim, i)).expect("dimension"))
            .collect()
    }

    /// Index ranges of the blocks within the coordinates.
    pub fn coordinate_blocks(sig: &Signature) -> CoordinateBlocks {
        let n = sig.n();
        let so = n * (n - 1) / 2;
        CoordinateBlocks {
            a: 0,
            x: 1..1 + n,
            so: 1 + n..1 + n + so,
            z: 1 + n + so..1 + 2 * n + so,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero()
            && linalg::is_zero_vector(&self.x)
            && self.a_block.is_zero()
            && linalg::is_zero_vector(&self.z)
    }

    /// The `g_0` part as the endomorphism of `g_{-1}` it induces under the
    /// bracket: `X -> (A - a) X`.
    pub fn co_element(&self) -> CoElement {
        CoElement {
            sig: self.sig,
            a: -&self.a,
            a_block: self.a_block.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoordinateBlocks {
    pub a: usize,
    pub x: std::ops::Range<usize>,
    pub so: std::ops::Range<usize>,
    pub z: std::ops::Range<usize>,
}

pub fn bracket(e1: &GradedElement, e2: &GradedElement) -> Result<GradedElement> {
    if e1.sig != e2.sig {
        return Err(Error::DimensionMismatch {
            expected: e1.sig.n(),
            found: e2.sig.n(),
        });
    }
    let c = e1.realize().commutator(&e2.realize())?;
    GradedElement::degrade(e1.sig, &c)
}

/// Element `a id + A` of `co(p,q)` with `A` in `so(p,q)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoElement {
    pub sig: Signature,
    pub a: Scalar,
    pub a_block: Matrix,
}

impl CoElement {
    pub fn new(sig: Signature, a: Scalar, a_block: Matrix) -> Result<Self> {
        if a_block.rows() != sig.n() || !in_so(&sig, &a_block) {
            return Err(Error::NotInAlgebra);
        }
        Ok(Self { sig, a, a_block })
    }

    pub fn zero(sig: Signature) -> Self {
        Self {
            sig,
            a: Scalar::zero(),
            a_block: Matrix::zeros(sig.n(), sig.n()),
        }
    }

    pub fn scaling(sig: Signature) -> Self {
        Self {
            a: Scalar::one(),
            ..Self::zero(sig)
        }
    }

    pub fn dim(sig: &Signature) -> usize {
        let n = sig.n();
        1 + n * (n - 1) / 2
    }

    /// Splits an endomorphism of `R^n` into scaling `trace/n` and trace-free part.
    pub fn from_endomorphism(sig: Signature, f: &Matrix) -> Result<Self> {
        let n = sig.n();
        if f.rows() != n || f.cols() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: f.rows(),
            });
        }
        let a = f.trace().checked_div(&Scalar::from_int(n as i64))?;
        let a_block = f.sub(&Matrix::identity(n).scale(&a))?;
        Self::new(sig, a, a_block)
    }

    pub fn endomorphism(&self) -> Matrix {
        let n = self.sig.n();
        Matrix::identity(n)
            .scale(&self.a)
            .add(&self.a_block)
            .expect("same shape")
    }

    pub fn to_coords(&self) -> Vector {
        let mut c = vec![self.a.clone()];
        c.extend(so_coords(&self.sig, &self.a_block));
        c
    }

    pub fn from_coords(sig: Signature, c: &[Scalar]) -> Result<Self> {
        let dim = Self::dim(&sig);
        if c.len() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: c.len(),
            });
        }
        Ok(Self {
            sig,
            a: c[0].clone(),
            a_block: so_from_coords(&sig, &c[1..]),
        })
    }

    pub fn basis(sig: Signature) -> Vec<Self> {
        let dim = Self::dim(&sig);
        (0..dim)
            .map(|i| Self::from_coords(sig, &linalg::unit_vector(dim, i)).expect("dimension"))
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.a_block.is_zero()
    }

    /// Commutator of the underlying endomorphisms.
    pub fn commutator(&self, other: &CoElement) -> Result<CoElement> {
        let c = self.endomorphism().commutator(&other.endomorphism())?;
        Self::from_endomorphism(self.sig, &c)
    }
}

/// The element `xi(Y)` of `co(p,q)`:
/// `eta -> Y(xi) eta + Y(eta) xi - J(xi, eta) J^{-1} Y^T`.
pub fn upsilon_action(sig: &Signature, y: &[Scalar], xi: &[Scalar]) -> Result<CoElement> {
    let n = sig.n();
    for v in [y, xi] {
        if v.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: v.len(),
            });
        }
    }
    let y_xi = linalg::dot(y, xi);
    let jy = sig.apply_j(y);
    let jxi = sig.apply_j(xi);
    let mut f = Matrix::zeros(n, n);
    for r in 0..n {
        for c in 0..n {
            let mut v = &xi[r] * &y[c] - &jy[r] * &jxi[c];
            if r == c {
                v += &y_xi;
            }
            f[(r, c)] = v;
        }
    }
    CoElement::from_endomorphism(*sig, &f)
}

/// Endomorphism of `g_{-1}` induced by `ad(e)`, read off from brackets with
/// the basis of `g_{-1}`. Fails if `e` does not preserve `g_{-1}`.
fn induced_on_minus_one(e: &GradedElement) -> Result<Matrix> {
    let sig = e.sig;
    let n = sig.n();
    let mut f = Matrix::zeros(n, n);
    for k in 0..n {
        let b = bracket(e, &GradedElement::pure_x(sig, linalg::unit_vector(n, k)))?;
        if !(b.a.is_zero() && b.a_block.is_zero() && linalg::is_zero_vector(&b.z)) {
            return Err(Error::Inconsistent("element does not preserve g_-1".into()));
        }
        for (i, x) in b.x.into_iter().enumerate() {
            f[(i, k)] = x;
        }
    }
    Ok(f)
}

/// The constant `c` with `[X_xi, Z_Y]_0 = c * xi(Y)` for all basis pairs,
/// where the `g_0` part of the bracket is compared with `xi(Y)` through the
/// endomorphism it induces on `g_{-1}`.
pub fn upsilon_bracket_constant(sig: &Signature) -> Result<Scalar> {
    let n = sig.n();
    let mut constant: Option<Scalar> = None;
    for i in 0..n {
        for j in 0..n {
            let xi = linalg::unit_vector(n, i);
            let y = linalg::unit_vector(n, j);
            let b = bracket(
                &GradedElement::pure_x(*sig, xi.clone()),
                &GradedElement::pure_z(*sig, y.clone()),
            )?;
            if !linalg::is_zero_vector(&b.x) || !linalg::is_zero_vector(&b.z) {
                return Err(Error::Inconsistent(format!("bracket of X_{i} and Z_{j} leaves g_0")));
            }
            let lhs = induced_on_minus_one(&b)?;
            let rhs = upsilon_action(sig, &y, &xi)?.endomorphism();
            let c = match (lhs.is_zero(), rhs.is_zero()) {
                (true, true) => continue,
                (false, false) => {
                    let pos = lhs.flatten().iter().position(|x| !x.is_zero()).expect("nonzero");
                    let r = &rhs.flatten()[pos];
                    if r.is_zero() {
                        return Err(Error::Inconsistent(format!("pair ({i},{j}) not proportional")));
                    }
                    lhs.flatten()[pos].checked_div(r)?
                }
                _ => return Err(Error::Inconsistent(format!("pair ({i},{j}) not proportional"))),
            };
            if lhs != rhs.scale(&c) {
                return Err(Error::Inconsistent(format!("pair ({i},{j}) not proportional")));
            }
            match &constant {
                Some(prev) if *prev != c => {
                    return Err(Error::Inconsistent(format!(
                        "pair ({i},{j}) gives {c}, earlier pairs gave {prev}"
                    )))
                }
                Some(_) => {}
                None => constant = Some(c),
            }
        }
    }
    constant.ok_or_else(|| Error::Inconsistent("all brackets vanish".into()))
}

/// `exp` of the pure `g_1` element with block `y`, computed as `I + N + N^2/2`.
pub fn exp_nilpotent(sig: &Signature, y: &[Scalar]) -> Result<Matrix> {
    if y.len() != sig.n() {
        return Err(Error::DimensionMismatch {
            expected: sig.n(),
            found: y.len(),
        });
    }
    let nmat = GradedElement::pure_z(*sig, y.to_vec()).realize();
    let n2 = nmat.mul(&nmat)?;
    if !n2.mul(&nmat)?.is_zero() {
        return Err(Error::Internal("g_1 element is not nilpotent of order 3".into()));
    }
    let dim = sig.ambient();
    Matrix::identity(dim)
        .add(&nmat)?
        .add(&n2.scale(&Scalar::from_ratio(1, 2)))
}

/// `Ad_{s_0}(M) = s_0 M s_0^{-1}`.
pub fn ad_s0(sig: &Signature, m: &Matrix) -> Result<Matrix> {
    if !sig.in_algebra(m) {
        return Err(Error::NotInAlgebra);
    }
    let s0 = symmetry::make_symmetry(sig, &linalg::zero_vector(sig.n()))?;
    s0.mul(m)?.mul(&s0.inverse()?)
}

/// Lie algebra given by structure constants `[e_i, e_j] = sum_k c[i][j][k] e_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureAlgebra {
    dim: usize,
    table: Vec<Vec<Vector>>,
}

impl StructureAlgebra {
    /// Validates antisymmetry and the Jacobi identity exactly.
    pub fn new(dim: usize, table: Vec<Vec<Vector>>) -> Result<Self> {
        if table.len() != dim || table.iter().any(|r| r.len() != dim || r.iter().any(|v| v.len() != dim)) {
            return Err(Error::InvalidStructure("table must be dim x dim x dim".into()));
        }
        let alg = Self { dim, table };
        for i in 0..dim {
            for j in 0..dim {
                let sum = linalg::add_vectors(&alg.table[i][j], &alg.table[j][i]);
                if !linalg::is_zero_vector(&sum) {
                    return Err(Error::InvalidStructure(format!("[e{i}, e{j}] is not antisymmetric")));
                }
            }
        }
        for i in 0..dim {
            for j in i + 1..dim {
                for k in j + 1..dim {
                    let t1 = alg.bracket_basis_vec(i, &alg.table[j][k]);
                    let t2 = alg.bracket_basis_vec(j, &alg.table[k][i]);
                    let t3 = alg.bracket_basis_vec(k, &alg.table[i][j]);
                    let s = linalg::add_vectors(&linalg::add_vectors(&t1, &t2), &t3);
                    if !linalg::is_zero_vector(&s) {
                        return Err(Error::InvalidStructure(format!(
                            "Jacobi identity fails on (e{i}, e{j}, e{k})"
                        )));
                    }
                }
            }
        }
        Ok(alg)
    }

    /// From sparse triples `(i, j, [e_i, e_j])`; the entries `(j, i)` follow
    /// by antisymmetry.
    pub fn from_triples(dim: usize, triples: Vec<(usize, usize, Vector)>) -> Result<Self> {
        let mut table = vec![vec![linalg::zero_vector(dim); dim]; dim];
        let mut seen = vec![vec![false; dim]; dim];
        for (i, j, v) in triples {
            if i >= dim || j >= dim || v.len() != dim {
                return Err(Error::InvalidStructure(format!("bad triple ({i}, {j})")));
            }
            let neg = linalg::scale_vector(&Scalar::from_int(-1), &v);
            for (a, b, w) in [(i, j, v), (j, i, neg)] {
                if seen[a][b] && table[a][b] != w {
                    return Err(Error::InvalidStructure(format!("conflicting entries for [e{a}, e{b}]")));
                }
                seen[a][b] = true;
                table[a][b] = w;
            }
        }
        Self::new(dim, table)
    }

    /// Structure constants of a matrix Lie algebra with the given basis.
    pub fn from_matrix_basis(basis: &[Matrix]) -> Result<Self> {
        let dim = basis.len();
        let flat: Vec<Vector> = basis.iter().map(Matrix::flatten).collect();
        let len = flat.first().map_or(0, Vec::len);
        if linalg::rank_of_vectors(len, &flat) != dim {
            return Err(Error::InvalidStructure("matrix basis is linearly dependent".into()));
        }
        let coords_matrix = Matrix::from_columns(len, &flat)?;
        let mut table = vec![vec![linalg::zero_vector(dim); dim]; dim];
        for i in 0..dim {
            for j in i + 1..dim {
                let c = basis[i].commutator(&basis[j])?.flatten();
                let sol = linalg::solve_affine(&coords_matrix, &c)?;
                let coords = sol
                    .base_point()
                    .cloned()
                    .ok_or_else(|| Error::ClosureViolation(format!("[b{i}, b{j}] leaves the span")))?;
                table[j][i] = linalg::scale_vector(&Scalar::from_int(-1), &coords);
                table[i][j] = coords;
            }
        }
        Self::new(dim, table)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn structure_constant(&self, i: usize, j: usize) -> &Vector {
        &self.table[i][j]
    }

    /// Nonzero `(i, j, [e_i, e_j])` with `i < j`.
    pub fn triples(&self) -> Vec<(usize, usize, Vector)> {
        let mut out = Vec::new();
        for i in 0..self.dim {
            for j in i + 1..self.dim {
                if !linalg::is_zero_vector(&self.table[i][j]) {
                    out.push((i, j, self.table[i][j].clone()));
                }
            }
        }
        out
    }

    fn bracket_basis_vec(&self, i: usize, v: &[Scalar]) -> Vector {
        let mut out = linalg::zero_vector(self.dim);
        for (l, c) in v.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (k, t) in self.table[i][l].iter().enumerate() {
                if !t.is_zero() {
                    out[k] += &(c * t);
                }
            }
        }
        out
    }

    pub fn bracket(&self, x: &[Scalar], y: &[Scalar]) -> Vector {
        let mut out = linalg::zero_vector(self.dim);
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            let part = self.bracket_basis_vec(i, y);
            for (o, p) in out.iter_mut().zip(&part) {
                if !p.is_zero() {
                    *o += &(xi * p);
                }
            }
        }
        out
    }

    /// Matrix of `ad_x` in the coordinate basis.
    pub fn ad(&self, x: &[Scalar]) -> Matrix {
        let cols: Vec<Vector> = (0..self.dim)
            .map(|j| self.bracket(x, &linalg::unit_vector(self.dim, j)))
            .collect();
        Matrix::from_columns(self.dim, &cols).expect("square")
    }

    pub fn is_abelian(&self) -> bool {
        self.table.iter().flatten().all(|v| linalg::is_zero_vector(v))
    }
}

/// `B(x, y) = tr(ad_x ad_y)`.
pub fn killing_form(alg: &StructureAlgebra, x: &[Scalar], y: &[Scalar]) -> Scalar {
    alg.ad(x).mul(&alg.ad(y)).expect("square").trace()
}

/// Structure constants of `so(p+1,q+1)` in the coordinates of
/// [`GradedElement::to_coords`].
pub fn so_structure_algebra(sig: Signature) -> StructureAlgebra {
    let basis = GradedElement::basis(sig);
    let dim = basis.len();
    let mut triples = Vec::new();
    for i in 0..dim {
        for j in i + 1..dim {
            let b = bracket(&basis[i], &basis[j]).expect("closed");
            if !b.is_zero() {
                triples.push((i, j, b.to_coords()));
            }
        }
    }
    StructureAlgebra::from_triples(dim, triples).expect("so(p+1,q+1) is a Lie algebra")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sample::Sampler;

    fn sig(p: usize, q: usize) -> Signature {
        Signature::new(p, q).unwrap()
    }

    #[test]
    fn zero_element_realizes_to_zero() {
        let s = sig(2, 1);
        assert!(GradedElement::zero(s).realize().is_zero());
        assert_eq!(GradedElement::degrade(s, &Matrix::zeros(5, 5)).unwrap(), GradedElement::zero(s));
    }

    #[test]
    fn pure_x_block_placement() {
        let s = sig(2, 1);
        let m = GradedElement::pure_x(s, linalg::unit_vector(3, 0)).realize();
        assert_eq!(m[(1, 0)], Scalar::one());
        assert_eq!(m[(4, 1)], Scalar::from_int(-1));
        let nonzero = m.flatten().iter().filter(|x| !x.is_zero()).count();
        assert_eq!(nonzero, 2);
    }

    #[test]
    fn degrade_rejects_non_algebra_matrices() {
        assert_eq!(
            GradedElement::degrade(sig(2, 1), &Matrix::identity(5)),
            Err(Error::NotInAlgebra)
        );
    }

    #[test]
    fn realize_degrade_round_trip() {
        let mut smp = Sampler::new(11, 2);
        for (p, q) in [(2, 1), (2, 2), (3, 0)] {
            let s = sig(p, q);
            for _ in 0..30 {
                let e = smp.graded_element(s);
                assert!(s.in_algebra(&e.realize()));
                assert_eq!(GradedElement::degrade(s, &e.realize()).unwrap(), e);
                assert_eq!(GradedElement::from_coords(s, &e.to_coords()).unwrap(), e);
            }
        }
    }

    #[test]
    fn bracket_of_minus_one_and_one_lands_in_zero_grade() {
        let s = sig(2, 2);
        let mut smp = Sampler::new(3, 2);
        let x = GradedElement::pure_x(s, smp.vector(4));
        let z = GradedElement::pure_z(s, smp.vector(4));
        let b = bracket(&x, &z).unwrap();
        assert!(linalg::is_zero_vector(&b.x));
        assert!(linalg::is_zero_vector(&b.z));
        assert!(bracket(&x, &x).unwrap().is_zero());
    }

    #[test]
    fn jacobi_on_random_triples() {
        let s = sig(2, 1);
        let mut smp = Sampler::new(5, 2);
        for _ in 0..20 {
            let (a, b, c) = (smp.graded_element(s), smp.graded_element(s), smp.graded_element(s));
            let t1 = bracket(&a, &bracket(&b, &c).unwrap()).unwrap().realize();
            let t2 = bracket(&b, &bracket(&c, &a).unwrap()).unwrap().realize();
            let t3 = bracket(&c, &bracket(&a, &b).unwrap()).unwrap().realize();
            assert!(t1.add(&t2).unwrap().add(&t3).unwrap().is_zero());
        }
    }

    #[test]
    fn upsilon_vanishes_when_either_argument_does() {
        let s = sig(3, 1);
        let mut smp = Sampler::new(8, 2);
        let v = smp.vector(4);
        assert!(upsilon_action(&s, &linalg::zero_vector(4), &v).unwrap().is_zero());
        assert!(upsilon_action(&s, &v, &linalg::zero_vector(4)).unwrap().is_zero());
    }

    #[test]
    fn upsilon_on_first_basis_vector() {
        // Y = e^1, xi = e_1: eta = e_1 goes to 2 e_1 - J(e_1, e_1) J^{-1} e^1 = e_1,
        // the scaling part is trace/n = Y(xi) = 1
        let s = sig(2, 1);
        let e1 = linalg::unit_vector(3, 0);
        let c = upsilon_action(&s, &e1, &e1).unwrap();
        let f = c.endomorphism();
        assert_eq!(f.mul_vec(&e1).unwrap(), e1);
        assert_eq!(c.a, Scalar::one());
        // eta = e_2: Y(e_2) = 0 so only the Y(xi) eta term survives
        let e2 = linalg::unit_vector(3, 1);
        assert_eq!(f.mul_vec(&e2).unwrap(), e2);
    }

    #[test]
    fn bracket_constant_is_one() {
        for (p, q) in [(3, 0), (2, 1), (2, 2)] {
            assert_eq!(upsilon_bracket_constant(&sig(p, q)).unwrap(), Scalar::one());
        }
    }

    #[test]
    fn co_element_matches_induced_action() {
        let s = sig(2, 2);
        let mut smp = Sampler::new(1, 2);
        let mut e = smp.graded_element(s);
        e.x = linalg::zero_vector(4);
        e.z = linalg::zero_vector(4);
        assert_eq!(induced_on_minus_one(&e).unwrap(), e.co_element().endomorphism());
    }

    #[test]
    fn exp_nilpotent_is_a_group_element() {
        let s = sig(2, 1);
        assert_eq!(exp_nilpotent(&s, &linalg::zero_vector(3)).unwrap(), Matrix::identity(5));
        let mut smp = Sampler::new(4, 2);
        let y = smp.vector(3);
        let g = exp_nilpotent(&s, &y).unwrap();
        assert!(s.preserves_form(&g));
        let minus = linalg::scale_vector(&Scalar::from_int(-1), &y);
        assert_eq!(g.mul(&exp_nilpotent(&s, &minus).unwrap()).unwrap(), Matrix::identity(5));
        assert_eq!(g, crate::flatmodel::exp_special(&s, &y));
    }

    #[test]
    fn ad_s0_acts_by_grading_parity() {
        let s = sig(2, 2);
        let mut smp = Sampler::new(9, 2);
        let e = smp.graded_element(s);
        let image = GradedElement::degrade(s, &ad_s0(&s, &e.realize()).unwrap()).unwrap();
        assert_eq!(image.a, e.a);
        assert_eq!(image.a_block, e.a_block);
        assert_eq!(image.x, linalg::scale_vector(&Scalar::from_int(-1), &e.x));
        assert_eq!(image.z, linalg::scale_vector(&Scalar::from_int(-1), &e.z));
        let twice = ad_s0(&s, &ad_s0(&s, &e.realize()).unwrap()).unwrap();
        assert_eq!(twice, e.realize());
    }

    fn so3() -> StructureAlgebra {
        let v = |a: i64, b: i64, c: i64| vec![Scalar::from_int(a), Scalar::from_int(b), Scalar::from_int(c)];
        StructureAlgebra::from_triples(3, vec![(0, 1, v(0, 0, 1)), (1, 2, v(1, 0, 0)), (2, 0, v(0, 1, 0))]).unwrap()
    }

    #[test]
    fn structure_constants_are_validated() {
        let bad = StructureAlgebra::from_triples(
            3,
            vec![(0, 1, vec![Scalar::one(), Scalar::zero(), Scalar::zero()]),
                 (0, 2, vec![Scalar::zero(), Scalar::zero(), Scalar::one()])],
        );
        // [e0,e1]=e0, [e0,e2]=e2: Jacobi on (e0,e1,e2) gives [e0,[e1,e2]] + [e1,[e2,e0]] + [e2,[e0,e1]] = 0 + [e1,-e2] + [e2,e0] = -e2 != 0
        assert!(matches!(bad, Err(Error::InvalidStructure(_))));
        assert!(so3().bracket(&linalg::unit_vector(3, 0), &linalg::unit_vector(3, 0)).iter().all(Scalar::is_zero));
    }

    #[test]
    fn killing_form_of_so3_is_minus_two_identity() {
        let alg = so3();
        for i in 0..3 {
            for j in 0..3 {
                let b = killing_form(&alg, &linalg::unit_vector(3, i), &linalg::unit_vector(3, j));
                assert_eq!(b, Scalar::from_int(if i == j { -2 } else { 0 }));
            }
        }
    }

    #[test]
    fn killing_form_of_abelian_algebra_vanishes() {
        let alg = StructureAlgebra::from_triples(4, vec![]).unwrap();
        assert!(alg.is_abelian());
        let mut smp = Sampler::new(2, 2);
        assert!(killing_form(&alg, &smp.vector(4), &smp.vector(4)).is_zero());
    }

    #[test]
    fn so_structure_constants_match_matrix_brackets() {
        let s = sig(2, 1);
        let alg = so_structure_algebra(s);
        let mut smp = Sampler::new(6, 2);
        let (x, y) = (smp.graded_element(s), smp.graded_element(s));
        let via_table = alg.bracket(&x.to_coords(), &y.to_coords());
        assert_eq!(via_table, bracket(&x, &y).unwrap().to_coords());
    }

    #[test]
    fn killing_form_of_so_is_proportional_to_trace_form() {
        // for so(N) the ratio B / tr(M_x M_y) is N - 2
        for (p, q) in [(2, 1), (3, 0)] {
            let s = sig(p, q);
            let alg = so_structure_algebra(s);
            let basis = GradedElement::basis(s);
            let mut ratio: Option<Scalar> = None;
            for x in &basis {
                for y in &basis {
                    let b = killing_form(&alg, &x.to_coords(), &y.to_coords());
                    let t = x.realize().mul(&y.realize()).unwrap().trace();
                    if t.is_zero() {
                        assert!(b.is_zero());
                        continue;
                    }
                    let r = b.checked_div(&t).unwrap();
                    assert_eq!(*ratio.get_or_insert(r.clone()), r);
                }
            }
            assert_eq!(ratio.unwrap(), Scalar::from_int(s.ambient() as i64 - 2));
        }
    }
}

//! Symmetries of the flat model at the origin and the removed-points solver.
//!
//! Every symmetry at `<e_0>` is left multiplication by
//!
//! ```text
//!       ( -1  -Z   (1/2) Z J Z^T )
//! s_Z = (  0   E   -J Z^T        )
//!       (  0   0   -1            )
//! ```
//!
//! for an arbitrary covector `Z`. For a null line `<u>` with representative
//! `(u_0, U, u_inf)` we have `s_Z u = (-u_0 - Z.U + (1/2) ZJZ^T u_inf, U - JZ^T u_inf, -u_inf)`,
//! so the conditions `s_Z <u> = <u>` and `s_Z <u> = <v>` are affine in `Z`
//! once the proportionality factor is eliminated from the last coordinate
//! or from the middle block.

use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::flatmodel::{self, NullLine, OrbitLabel, Signature};
use crate::liealg::GradedElement;
use crate::linalg::{self, AffineSubspace, Matrix, Vector};

fn check_covector(sig: &Signature, z: &[Scalar]) -> Result<()> {
    if z.len() != sig.n() {
        return Err(Error::DimensionMismatch {
            expected: sig.n(),
            found: z.len(),
        });
    }
    Ok(())
}

/// The matrix `s_Z`.
pub fn make_symmetry(sig: &Signature, z: &[Scalar]) -> Result<Matrix> {
    check_covector(sig, z)?;
    let n = sig.n();
    let inf = sig.infinity();
    let jz = sig.apply_j(z);
    let mut s = Matrix::identity(n + 2);
    s[(0, 0)] = Scalar::from_int(-1);
    s[(inf, inf)] = Scalar::from_int(-1);
    s[(0, inf)] = Scalar::from_ratio(1, 2) * sig.j_form(z, z);
    for i in 0..n {
        s[(0, i + 1)] = -&z[i];
        s[(i + 1, inf)] = -&jz[i];
    }
    Ok(s)
}

/// Whether `s_Z^2 = I` exactly.
pub fn is_involutive(sig: &Signature, z: &[Scalar]) -> Result<bool> {
    let s = make_symmetry(sig, z)?;
    Ok(s.mul(&s)? == Matrix::identity(sig.ambient()))
}

/// Whether `Ad_{s_Z}(X) + X` lies in the parabolic `p` for every basis
/// element `X` of `g_{-1}`, i.e. the differential at the origin is `-id`.
pub fn tangent_is_minus_id(sig: &Signature, z: &[Scalar]) -> Result<bool> {
    let s = make_symmetry(sig, z)?;
    let s_inv = s.inverse()?;
    let n = sig.n();
    for i in 0..n {
        let x = GradedElement::pure_x(*sig, linalg::unit_vector(n, i)).realize();
        let moved = s.mul(&x)?.mul(&s_inv)?.add(&x)?;
        let e = GradedElement::degrade(*sig, &moved)?;
        if !linalg::is_zero_vector(&e.x) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The line through `S` applied to a representative of `line`.
pub fn apply_to_line(sig: &Signature, s: &Matrix, line: &NullLine) -> Result<NullLine> {
    if !sig.preserves_form(s) {
        return Err(Error::NotInGroup);
    }
    NullLine::new(sig, s.mul_vec(line.representative())?)
}

/// `h s_Z h^{-1}`: the symmetry at `h<e_0>` corresponding to `Z`.
pub fn conjugate_symmetry(sig: &Signature, h: &Matrix, z: &[Scalar]) -> Result<Matrix> {
    if !sig.preserves_form(h) {
        return Err(Error::NotInGroup);
    }
    h.mul(&make_symmetry(sig, z)?)?.mul(&h.inverse()?)
}

/// The `Z` with `s == s_Z`, if `s` is a symmetry at the origin.
pub fn origin_parameter(sig: &Signature, s: &Matrix) -> Option<Vector> {
    if s.rows() != sig.ambient() || s.cols() != sig.ambient() {
        return None;
    }
    let z: Vector = (0..sig.n()).map(|i| -&s[(0, i + 1)]).collect();
    (make_symmetry(sig, &z).ok()? == *s).then_some(z)
}

struct Parts<'a> {
    first: &'a Scalar,
    middle: &'a [Scalar],
    last: &'a Scalar,
}

fn parts<'a>(sig: &Signature, line: &'a NullLine) -> Parts<'a> {
    let r = line.representative();
    let inf = sig.infinity();
    Parts {
        first: &r[0],
        middle: &r[1..inf],
        last: &r[inf],
    }
}

/// First coordinate of `s_Z u`.
fn image_first(sig: &Signature, z: &[Scalar], u: &Parts) -> Scalar {
    let quad = Scalar::from_ratio(1, 2) * sig.j_form(z, z) * u.last;
    -u.first - linalg::dot(z, u.middle) + quad
}

fn hyperplane(normal: &[Scalar], value: Scalar) -> Result<AffineSubspace> {
    let m = Matrix::from_rows(vec![normal.to_vec()])?;
    linalg::solve_affine(&m, &[value])
}

fn check_maps(sig: &Signature, set: &AffineSubspace, from: &NullLine, to: &NullLine) -> Result<()> {
    for z in set.sample_points() {
        let image = apply_to_line(sig, &make_symmetry(sig, &z)?, from)?;
        if image != *to {
            return Err(Error::Internal(format!(
                "s_Z for Z = {:?} does not map the line as solved",
                z.iter().map(Scalar::to_literal).collect::<Vec<_>>()
            )));
        }
    }
    Ok(())
}

/// All `Z` with `s_Z <L> = <L>`.
pub fn solve_preserve(sig: &Signature, line: &NullLine) -> Result<AffineSubspace> {
    let n = sig.n();
    let u = parts(sig, line);
    let set = if !u.last.is_zero() {
        // lambda = -1 from the last coordinate; the middle block pins Z
        let f = Scalar::from_int(2) * u.last.inv()?;
        let z: Vector = sig.apply_j(u.middle).iter().map(|x| &f * x).collect();
        if image_first(sig, &z, &u) == -u.first {
            AffineSubspace::point(z)
        } else {
            AffineSubspace::empty(n)
        }
    } else if !linalg::is_zero_vector(u.middle) {
        // lambda = 1 from the middle block; Z.U = -2 u_0
        hyperplane(u.middle, Scalar::from_int(-2) * u.first)?
    } else {
        AffineSubspace::whole(n)
    };
    check_maps(sig, &set, line, line)?;
    Ok(set)
}

/// All `Z` with `s_Z <L1> = <L2>`; every solution also maps `<L2>` to `<L1>`.
pub fn solve_swap(sig: &Signature, from: &NullLine, to: &NullLine) -> Result<AffineSubspace> {
    if from == to {
        return Err(Error::CoincidentLines);
    }
    let n = sig.n();
    let u = parts(sig, from);
    let v = parts(sig, to);
    let set = if !u.last.is_zero() {
        if v.last.is_zero() {
            AffineSubspace::empty(n)
        } else {
            // s_Z u = mu v with mu = -u_inf / v_inf
            let mu = -(u.last.checked_div(v.last)?);
            let diff = linalg::sub_vectors(u.middle, &linalg::scale_vector(&mu, v.middle));
            let inv = u.last.inv()?;
            let z: Vector = sig.apply_j(&diff).iter().map(|x| &inv * x).collect();
            if image_first(sig, &z, &u) == &mu * v.first {
                AffineSubspace::point(z)
            } else {
                AffineSubspace::empty(n)
            }
        }
    } else if !v.last.is_zero() || linalg::is_zero_vector(u.middle) {
        AffineSubspace::empty(n)
    } else {
        let k = u.middle.iter().position(|x| !x.is_zero()).expect("nonzero");
        if v.middle[k].is_zero() {
            AffineSubspace::empty(n)
        } else {
            let mu = u.middle[k].checked_div(&v.middle[k])?;
            if linalg::scale_vector(&mu, v.middle) != u.middle {
                AffineSubspace::empty(n)
            } else {
                hyperplane(u.middle, -u.first - &mu * v.first)?
            }
        }
    };
    check_maps(sig, &set, from, to)?;
    check_maps(sig, &set, to, from)?;
    Ok(set)
}

/// Symmetries at `<w>` on the flat model with `<u>` and `<v>` removed.
///
/// All solution sets are parameterized at the origin: `Z` stands for the
/// symmetry `g s_Z g^{-1}` at `<w>`, where `g` is the stored witness.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymmetryReport {
    pub orbit: OrbitLabel,
    pub base_point: NullLine,
    pub witness: Matrix,
    /// `Z` preserving both removed points.
    pub preserving: AffineSubspace,
    /// `Z` swapping the removed points.
    pub swapping: AffineSubspace,
    /// `Z` preserving `<u>`, ignoring `<v>`.
    pub preserving_u: AffineSubspace,
    /// `Z` preserving `<v>`, ignoring `<u>`.
    pub preserving_v: AffineSubspace,
}

impl SymmetryReport {
    /// Whether there is exactly one symmetry of the given kind.
    pub fn is_unique(set: &AffineSubspace) -> bool {
        set.dim() == Some(0)
    }

    /// The same sets re-parameterized for another witness `g2` of the same point.
    pub fn reexpress(&self, sig: &Signature, g2: &Matrix) -> Result<SymmetryReport> {
        check_witness(sig, &self.base_point, g2)?;
        // g1 s_Z g1^{-1} = g2 (k s_Z k^{-1}) g2^{-1} with k = g2^{-1} g1
        let k = g2.inverse()?.mul(&self.witness)?;
        Ok(SymmetryReport {
            orbit: self.orbit,
            base_point: self.base_point.clone(),
            witness: g2.clone(),
            preserving: transport(sig, &k, &self.preserving)?,
            swapping: transport(sig, &k, &self.swapping)?,
            preserving_u: transport(sig, &k, &self.preserving_u)?,
            preserving_v: transport(sig, &k, &self.preserving_v)?,
        })
    }
}

/// Image of a set of parameters under `Z -> Z'` with `k s_Z k^{-1} = s_{Z'}`,
/// for `k` stabilizing the origin. The map is affine in `Z`.
pub fn transport(sig: &Signature, k: &Matrix, set: &AffineSubspace) -> Result<AffineSubspace> {
    let k_inv = k.inverse()?;
    set.map_affine(|z| {
        let c = k.mul(&make_symmetry(sig, z)?)?.mul(&k_inv)?;
        origin_parameter(sig, &c).ok_or(Error::BadWitness)
    })
}

fn check_witness(sig: &Signature, w: &NullLine, g: &Matrix) -> Result<()> {
    if !sig.preserves_form(g) {
        return Err(Error::NotInGroup);
    }
    if !w.contains(&g.column(0)) {
        return Err(Error::BadWitness);
    }
    Ok(())
}

pub fn find_symmetries(sig: &Signature, u: &NullLine, v: &NullLine, w: &NullLine) -> Result<SymmetryReport> {
    let g = flatmodel::transitive_witness(sig, w);
    find_symmetries_with_witness(sig, u, v, w, &g)
}

/// [`find_symmetries`] with an explicit witness `g`, `g<e_0> = <w>`.
pub fn find_symmetries_with_witness(
    sig: &Signature,
    u: &NullLine,
    v: &NullLine,
    w: &NullLine,
    g: &Matrix,
) -> Result<SymmetryReport> {
    let orbit = flatmodel::classify_orbit(sig, w, u, v)?;
    check_witness(sig, w, g)?;
    let g_inv = g.inverse()?;
    let u0 = apply_to_line(sig, &g_inv, u)?;
    let v0 = apply_to_line(sig, &g_inv, v)?;
    let preserving_u = solve_preserve(sig, &u0)?;
    let preserving_v = solve_preserve(sig, &v0)?;
    let preserving = preserving_u.intersect(&preserving_v)?;
    let swapping = solve_swap(sig, &u0, &v0)?;
    for z in preserving.sample_points().iter().chain(&swapping.sample_points()) {
        let s = conjugate_symmetry(sig, g, z)?;
        if apply_to_line(sig, &s, w)? != *w {
            return Err(Error::Internal("conjugated symmetry moves its base point".into()));
        }
    }
    Ok(SymmetryReport {
        orbit,
        base_point: w.clone(),
        witness: g.clone(),
        preserving,
        swapping,
        preserving_u,
        preserving_v,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sample::Sampler;

    fn s(lit: &str) -> Scalar {
        Scalar::parse(lit, 2).unwrap()
    }

    fn vec_of(lits: &[&str]) -> Vector {
        lits.iter().map(|l| s(l)).collect()
    }

    fn sig(p: usize, q: usize) -> Signature {
        Signature::new(p, q).unwrap()
    }

    fn line(sg: &Signature, lits: &[&str]) -> NullLine {
        NullLine::new(sg, vec_of(lits)).unwrap()
    }

    #[test]
    fn zero_covector_gives_block_diagonal_symmetry() {
        let sg = sig(2, 1);
        let s0 = make_symmetry(&sg, &linalg::zero_vector(3)).unwrap();
        let mut expected = Matrix::identity(5);
        expected[(0, 0)] = Scalar::from_int(-1);
        expected[(4, 4)] = Scalar::from_int(-1);
        assert_eq!(s0, expected);
    }

    #[test]
    fn orbit_a_corner_entry_vanishes() {
        // (1/2)(z_1^2 - z_3^2) = (1/2)(2 - 2) = 0
        let sg = sig(2, 1);
        let m = make_symmetry(&sg, &vec_of(&["-1*r", "0", "r"])).unwrap();
        assert!(m[(0, 4)].is_zero());
        assert!(sg.preserves_form(&m));
    }

    #[test]
    fn symmetries_are_involutive_isometries_with_minus_id_differential() {
        let mut smp = Sampler::new(17, 2);
        for (p, q) in [(2, 1), (2, 2), (3, 0)] {
            let sg = sig(p, q);
            for _ in 0..20 {
                let z = smp.vector(sg.n());
                assert!(sg.preserves_form(&make_symmetry(&sg, &z).unwrap()));
                assert!(is_involutive(&sg, &z).unwrap());
                assert!(tangent_is_minus_id(&sg, &z).unwrap());
            }
        }
    }

    #[test]
    fn swap_on_orbit_a() {
        let sg = sig(2, 1);
        let u = line(&sg, &["1", "r", "0", "0", "-1"]);
        let v = line(&sg, &["1", "0", "0", "-1*r", "1"]);
        let z = vec_of(&["-1*r", "0", "r"]);
        let m = make_symmetry(&sg, &z).unwrap();
        assert_eq!(apply_to_line(&sg, &m, &u).unwrap(), v);
        let sol = solve_swap(&sg, &u, &v).unwrap();
        assert_eq!(sol, AffineSubspace::point(z));
    }

    #[test]
    fn s0_fixes_origin_and_middle_line() {
        let sg = sig(2, 1);
        let s0 = make_symmetry(&sg, &linalg::zero_vector(3)).unwrap();
        let o = NullLine::origin(&sg);
        assert_eq!(apply_to_line(&sg, &s0, &o).unwrap(), o);
        let m = line(&sg, &["0", "1", "0", "1", "0"]);
        assert_eq!(apply_to_line(&sg, &s0, &m).unwrap(), m);
        assert_eq!(apply_to_line(&sg, &Matrix::zeros(5, 5), &m), Err(Error::NotInGroup));
    }

    #[test]
    fn preserve_cases() {
        let sg = sig(2, 1);
        let inf = NullLine::basis(&sg, 4).unwrap();
        assert_eq!(solve_preserve(&sg, &inf).unwrap(), AffineSubspace::point(linalg::zero_vector(3)));
        let v = line(&sg, &["1", "1", "0", "1", "0"]);
        let expected = hyperplane(&vec_of(&["1", "0", "1"]), s("-2")).unwrap();
        assert_eq!(solve_preserve(&sg, &v).unwrap(), expected);
        assert_eq!(solve_preserve(&sg, &NullLine::origin(&sg)).unwrap(), AffineSubspace::whole(3));
    }

    #[test]
    fn swap_cases() {
        let sg = sig(2, 1);
        let u = line(&sg, &["0", "1", "0", "1", "0"]);
        let v = line(&sg, &["1", "1", "0", "1", "0"]);
        let expected = hyperplane(&vec_of(&["1", "0", "1"]), s("-1")).unwrap();
        assert_eq!(solve_swap(&sg, &u, &v).unwrap(), expected);
        let inf = NullLine::basis(&sg, 4).unwrap();
        assert!(solve_swap(&sg, &u, &inf).unwrap().is_empty());
        assert!(solve_swap(&sg, &inf, &u).unwrap().is_empty());
        assert_eq!(solve_swap(&sg, &u, &u), Err(Error::CoincidentLines));
    }

    #[test]
    fn conjugation_by_identity_and_witness() {
        let sg = sig(2, 2);
        let mut smp = Sampler::new(23, 2);
        let z = smp.vector(4);
        assert_eq!(
            conjugate_symmetry(&sg, &Matrix::identity(6), &z).unwrap(),
            make_symmetry(&sg, &z).unwrap()
        );
        let w = line(&sg, &["0", "1", "0", "0", "1", "0"]);
        let g = flatmodel::transitive_witness(&sg, &w);
        let c = conjugate_symmetry(&sg, &g, &z).unwrap();
        assert_eq!(c.mul(&c).unwrap(), Matrix::identity(6));
        assert_eq!(apply_to_line(&sg, &c, &w).unwrap(), w);
    }

    #[test]
    fn origin_parameter_recovers_z() {
        let sg = sig(3, 0);
        let z = vec_of(&["1", "-1/2*r", "3"]);
        let m = make_symmetry(&sg, &z).unwrap();
        assert_eq!(origin_parameter(&sg, &m), Some(z));
        assert_eq!(origin_parameter(&sg, &Matrix::identity(5)), None);
    }

    #[test]
    fn orbit_d_report() {
        let sg = sig(2, 2);
        let u = line(&sg, &["0", "1", "0", "0", "1", "0"]);
        let v = line(&sg, &["0", "0", "1", "1", "0", "0"]);
        let rep = find_symmetries(&sg, &u, &v, &NullLine::origin(&sg)).unwrap();
        let expected = linalg::solve_affine(
            &Matrix::from_int_rows(&[&[1, 0, 0, 1], &[0, 1, 1, 0]]),
            &[s("0"), s("0")],
        )
        .unwrap();
        assert_eq!(rep.preserving, expected);
        assert!(rep.swapping.is_empty());
    }

    #[test]
    fn report_at_a_point_away_from_the_origin() {
        let sg = sig(2, 1);
        let u = line(&sg, &["0", "1", "0", "1", "0"]);
        let v = line(&sg, &["0", "0", "0", "0", "1"]);
        let w = line(&sg, &["1", "1", "1", "0", "-1"]);
        let rep = find_symmetries(&sg, &u, &v, &w).unwrap();
        for z in rep.preserving.sample_points() {
            let m = conjugate_symmetry(&sg, &rep.witness, &z).unwrap();
            assert_eq!(apply_to_line(&sg, &m, &u).unwrap(), u);
            assert_eq!(apply_to_line(&sg, &m, &v).unwrap(), v);
        }
    }
}

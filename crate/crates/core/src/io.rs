//! JSON input files and machine-readable reports.
//!
//! Scalars are written with the literal grammar of [`Scalar::parse`]; input
//! files may also use plain JSON integers.

use serde::{Deserialize, Serialize};

use crate::cases::{PaperCaseResult, SetComparison};
use crate::error::{Error, Result};
use crate::extension::{Extension, HomogeneousPair};
use crate::field::{Scalar, DEFAULT_D};
use crate::flatmodel::{NullLine, OrbitLabel, Signature};
use crate::liealg::StructureAlgebra;
use crate::linalg::{AffineSubspace, Matrix, Vector};
use crate::symmetry::SymmetryReport;
use crate::weyl::WeylTensor;

fn default_d() -> u64 {
    DEFAULT_D
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Literal {
    Int(i64),
    Text(String),
}

impl Literal {
    pub fn of(s: &Scalar) -> Self {
        Literal::Text(s.to_literal())
    }

    pub fn parse(&self, d: u64) -> Result<Scalar> {
        match self {
            Literal::Int(i) => Ok(Scalar::from_int(*i)),
            Literal::Text(t) => Scalar::parse(t, d),
        }
    }
}

fn literals(v: &[Scalar]) -> Vec<Literal> {
    v.iter().map(Literal::of).collect()
}

fn strings(v: &[Scalar]) -> Vec<String> {
    v.iter().map(Scalar::to_literal).collect()
}

fn parse_literals(v: &[Literal], d: u64, what: &str) -> Result<Vector> {
    v.iter()
        .enumerate()
        .map(|(i, l)| {
            l.parse(d)
                .map_err(|e| Error::Format(format!("{what}[{i}]: {e}")))
        })
        .collect()
}

fn parse_strings(v: &[String], d: u64, what: &str) -> Result<Vector> {
    v.iter()
        .enumerate()
        .map(|(i, l)| Scalar::parse(l, d).map_err(|e| Error::Format(format!("{what}[{i}]: {e}"))))
        .collect()
}

/// Comma-separated literals, e.g. `1,r,0,0,-1`.
pub fn parse_vector(text: &str, d: u64) -> Result<Vector> {
    text.split(',').map(|t| Scalar::parse(t, d)).collect()
}

fn from_json<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Format(e.to_string()))
}

fn to_json<T: Serialize>(value: &T) -> Result<String> {
    serde_json::to_string_pretty(value).map_err(|e| Error::Format(e.to_string()))
}

/// Removed points `u`, `v` and base point `w` (default `e_0`).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProblemInput {
    pub p: usize,
    pub q: usize,
    #[serde(default = "default_d")]
    pub d: u64,
    pub u: Vec<Literal>,
    pub v: Vec<Literal>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub w: Option<Vec<Literal>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Problem {
    pub sig: Signature,
    pub d: u64,
    pub u: NullLine,
    pub v: NullLine,
    pub w: NullLine,
}

impl ProblemInput {
    pub fn from_json(text: &str) -> Result<Self> {
        from_json(text)
    }

    pub fn resolve(&self) -> Result<Problem> {
        let sig = Signature::new(self.p, self.q)?;
        let line = |v: &[Literal], what: &str| -> Result<NullLine> {
            NullLine::new(&sig, parse_literals(v, self.d, what)?).map_err(|e| Error::Format(format!("{what}: {e}")))
        };
        let w = match &self.w {
            Some(w) => line(w, "w")?,
            None => NullLine::origin(&sig),
        };
        Ok(Problem {
            sig,
            d: self.d,
            u: line(&self.u, "u")?,
            v: line(&self.v, "v")?,
            w,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubspaceDto {
    /// `null` for the empty set.
    pub dim: Option<usize>,
    pub base: Option<Vec<String>>,
    pub dirs: Vec<Vec<String>>,
}

impl SubspaceDto {
    pub fn from_subspace(s: &AffineSubspace) -> Self {
        Self {
            dim: s.dim(),
            base: s.base_point().map(|b| strings(b)),
            dirs: s.directions().iter().map(|v| strings(v)).collect(),
        }
    }

    pub fn to_subspace(&self, n: usize, d: u64) -> Result<AffineSubspace> {
        let Some(base) = &self.base else {
            return Ok(AffineSubspace::empty(n));
        };
        let base = parse_strings(base, d, "base")?;
        let dirs = self
            .dirs
            .iter()
            .map(|v| parse_strings(v, d, "dirs"))
            .collect::<Result<Vec<_>>>()?;
        let s = AffineSubspace::new(base, dirs)?;
        if s.ambient() != n || s.dim() != self.dim {
            return Err(Error::Format("subspace dimension does not match its data".into()));
        }
        Ok(s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComparisonDto {
    pub preserving: bool,
    pub swapping: bool,
    pub partial: Option<bool>,
    pub label: bool,
}

impl From<&SetComparison> for ComparisonDto {
    fn from(c: &SetComparison) -> Self {
        Self {
            preserving: c.preserving,
            swapping: c.swapping,
            partial: c.partial,
            label: c.label,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportDto {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub case_id: Option<String>,
    pub p: usize,
    pub q: usize,
    pub d: u64,
    pub orbit: OrbitLabel,
    pub base_point: Vec<String>,
    pub witness: Vec<Vec<String>>,
    pub preserving: SubspaceDto,
    pub swapping: SubspaceDto,
    pub preserving_u: SubspaceDto,
    pub preserving_v: SubspaceDto,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expected: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub comparison: Option<ComparisonDto>,
    #[serde(rename = "match", default, skip_serializing_if = "Option::is_none")]
    pub matched: Option<bool>,
}

impl ReportDto {
    pub fn from_report(sig: &Signature, d: u64, r: &SymmetryReport) -> Self {
        Self {
            case_id: None,
            p: sig.p(),
            q: sig.q(),
            d,
            orbit: r.orbit,
            base_point: strings(r.base_point.representative()),
            witness: r.witness.to_literal_rows(),
            preserving: SubspaceDto::from_subspace(&r.preserving),
            swapping: SubspaceDto::from_subspace(&r.swapping),
            preserving_u: SubspaceDto::from_subspace(&r.preserving_u),
            preserving_v: SubspaceDto::from_subspace(&r.preserving_v),
            expected: None,
            comparison: None,
            matched: None,
        }
    }

    pub fn from_case(r: &PaperCaseResult, d: u64) -> Self {
        Self {
            case_id: Some(r.case_id.clone()),
            expected: Some(r.expected.clone()),
            comparison: Some((&r.comparison).into()),
            matched: Some(r.matched),
            ..Self::from_report(&r.signature, d, &r.report)
        }
    }

    pub fn to_report(&self) -> Result<SymmetryReport> {
        let sig = Signature::new(self.p, self.q)?;
        let n = sig.n();
        let rows = self
            .witness
            .iter()
            .map(|r| parse_strings(r, self.d, "witness"))
            .collect::<Result<Vec<_>>>()?;
        Ok(SymmetryReport {
            orbit: self.orbit,
            base_point: NullLine::new(&sig, parse_strings(&self.base_point, self.d, "base_point")?)?,
            witness: Matrix::from_rows(rows)?,
            preserving: self.preserving.to_subspace(n, self.d)?,
            swapping: self.swapping.to_subspace(n, self.d)?,
            preserving_u: self.preserving_u.to_subspace(n, self.d)?,
            preserving_v: self.preserving_v.to_subspace(n, self.d)?,
        })
    }

    pub fn to_json(&self) -> Result<String> {
        to_json(self)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        from_json(text)
    }
}

/// Weyl tensor listed by its independent components (0-based indices).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeylDto {
    pub p: usize,
    pub q: usize,
    #[serde(default = "default_d")]
    pub d: u64,
    pub components: Vec<(usize, usize, usize, usize, Literal)>,
}

impl WeylDto {
    pub fn from_tensor(w: &WeylTensor, d: u64) -> Self {
        let sig = w.signature();
        Self {
            p: sig.p(),
            q: sig.q(),
            d,
            components: w
                .to_components()
                .into_iter()
                .map(|(i, j, k, l, v)| (i, j, k, l, Literal::of(&v)))
                .collect(),
        }
    }

    pub fn to_tensor(&self) -> Result<WeylTensor> {
        let sig = Signature::new(self.p, self.q)?;
        let entries = self
            .components
            .iter()
            .map(|(i, j, k, l, v)| Ok((*i, *j, *k, *l, v.parse(self.d)?)))
            .collect::<Result<Vec<_>>>()?;
        WeylTensor::from_components(sig, &entries)
    }

    pub fn to_json(&self) -> Result<String> {
        to_json(self)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        from_json(text)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraDto {
    pub dim: usize,
    /// `(i, j, [e_i, e_j])`; the pairs `(j, i)` follow by antisymmetry.
    pub brackets: Vec<(usize, usize, Vec<Literal>)>,
}

/// Extension file: structure constants of `k`, coordinate indices spanning
/// `h` and `m`, and `alpha` as a dense matrix from `k` coordinates to
/// `(a, X, A, Z)` coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtensionFile {
    pub p: usize,
    pub q: usize,
    #[serde(default = "default_d")]
    pub d: u64,
    pub algebra: AlgebraDto,
    pub h: Vec<usize>,
    pub m: Vec<usize>,
    pub alpha: Vec<Vec<Literal>>,
}

impl ExtensionFile {
    pub fn to_extension(&self) -> Result<Extension> {
        let sig = Signature::new(self.p, self.q)?;
        let triples = self
            .algebra
            .brackets
            .iter()
            .enumerate()
            .map(|(t, (i, j, v))| Ok((*i, *j, parse_literals(v, self.d, &format!("brackets[{t}]"))?)))
            .collect::<Result<Vec<_>>>()?;
        let alg = StructureAlgebra::from_triples(self.algebra.dim, triples)?;
        let pair = HomogeneousPair::from_indices(alg, &self.h, &self.m)?;
        let rows = self
            .alpha
            .iter()
            .enumerate()
            .map(|(r, row)| parse_literals(row, self.d, &format!("alpha[{r}]")))
            .collect::<Result<Vec<_>>>()?;
        Extension::new(sig, pair, Matrix::from_rows(rows)?)
    }

    /// Requires the `h` and `m` bases to be coordinate axes.
    pub fn from_extension(e: &Extension, d: u64) -> Result<Self> {
        let pair = e.pair();
        let axis = |v: &Vector| -> Result<usize> {
            let nz: Vec<usize> = (0..v.len()).filter(|&i| !v[i].is_zero()).collect();
            match nz.as_slice() {
                [i] if v[*i].is_one() => Ok(*i),
                _ => Err(Error::Format("pair bases must be coordinate axes to be written".into())),
            }
        };
        let alg = pair.algebra();
        let sig = e.signature();
        Ok(Self {
            p: sig.p(),
            q: sig.q(),
            d,
            algebra: AlgebraDto {
                dim: alg.dim(),
                brackets: alg
                    .triples()
                    .into_iter()
                    .map(|(i, j, v)| (i, j, literals(&v)))
                    .collect(),
            },
            h: pair.h_basis().iter().map(axis).collect::<Result<_>>()?,
            m: pair.m_basis().iter().map(axis).collect::<Result<_>>()?,
            alpha: e.alpha().row_vectors().iter().map(|r| literals(r)).collect(),
        })
    }

    pub fn to_json(&self) -> Result<String> {
        to_json(self)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        from_json(text)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cases;
    use crate::extension;
    use crate::weyl;

    #[test]
    fn inline_vectors_use_the_literal_grammar() {
        let v = parse_vector("1,r,0,-1/2*r,1-r", 2).unwrap();
        assert_eq!(v[1], Scalar::sqrt_d(2).unwrap());
        assert_eq!(v[4], Scalar::one() - Scalar::sqrt_d(2).unwrap());
        assert!(parse_vector("1,,2", 2).is_err());
    }

    #[test]
    fn problem_input_accepts_integers_and_defaults() {
        let p = ProblemInput::from_json(r#"{"p":2,"q":1,"u":[0,1,0,1,0],"v":["0","0","0","0","1"]}"#).unwrap();
        assert_eq!(p.d, 2);
        let r = p.resolve().unwrap();
        assert_eq!(r.w, NullLine::origin(&r.sig));
    }

    #[test]
    fn non_null_input_is_reported_with_its_field() {
        let p = ProblemInput::from_json(r#"{"p":2,"q":1,"u":[1,1,0,0,0],"v":[0,0,0,0,1]}"#).unwrap();
        let err = p.resolve().unwrap_err().to_string();
        assert!(err.starts_with("u:"), "{err}");
    }

    #[test]
    fn json_errors_carry_positions() {
        let err = ProblemInput::from_json("{\n\"p\": 2,\n\"q\": }").unwrap_err().to_string();
        assert!(err.contains("line 3"), "{err}");
    }

    #[test]
    fn machine_reports_round_trip() {
        for r in cases::reproduce_paper(2).unwrap() {
            let dto = ReportDto::from_case(&r, 2);
            let text = dto.to_json().unwrap();
            let back = ReportDto::from_json(&text).unwrap();
            assert_eq!(back, dto);
            assert_eq!(back.to_json().unwrap(), text);
            assert_eq!(back.to_report().unwrap(), r.report);
        }
    }

    #[test]
    fn empty_sets_serialize_with_null_dimension() {
        let dto = SubspaceDto::from_subspace(&AffineSubspace::empty(3));
        let v: serde_json::Value = serde_json::to_value(&dto).unwrap();
        assert!(v["dim"].is_null());
    }

    #[test]
    fn weyl_tensors_round_trip() {
        let w = weyl::random_weyl(4, 0, 7).unwrap();
        let dto = WeylDto::from_tensor(&w, 2);
        assert_eq!(WeylDto::from_json(&dto.to_json().unwrap()).unwrap().to_tensor().unwrap(), w);
    }

    #[test]
    fn extension_files_round_trip() {
        let e = extension::flat_extension(Signature::new(2, 1).unwrap()).unwrap();
        let file = ExtensionFile::from_extension(&e, 2).unwrap();
        let back = ExtensionFile::from_json(&file.to_json().unwrap()).unwrap();
        assert_eq!(back.to_extension().unwrap(), e);
    }
}

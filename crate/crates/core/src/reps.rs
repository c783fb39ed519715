//! Reflection representations of Coxeter groups over a [`TowerField`]:
//! the geometric representation, trivial extensions, subrepresentations,
//! and the reflection-faithfulness predicates used to certify good pairs.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use serde_json::Value;
use thiserror::Error;

use crate::coxeter::{CoxeterError, CoxeterMatrix, Elem, GroupTable, Label};
use crate::field::{parse_rational, FieldElement, FieldError, FieldSpec, TowerField};
use crate::linalg::Matrix;

#[derive(Debug, Error)]
pub enum RepError {
    #[error("matrix for `{0}` is not a square invertible matrix of the declared dimension")]
    BadMatrix(String),
    #[error("relation (M_{0} M_{1})^{2} = 1 fails")]
    Relation(String, String, u32),
    #[error("generator `{0}` has no matrix")]
    Missing(String),
    #[error("subspace is not stable under `{0}`")]
    NotStable(String),
    #[error("subspace basis vectors are linearly dependent")]
    DependentBasis,
    #[error("representation file: {0}")]
    Format(String),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Coxeter(#[from] CoxeterError),
}

#[derive(Debug, Clone)]
pub struct Representation {
    field: Arc<TowerField>,
    dim: usize,
    matrices: Vec<Matrix>,
}

impl Representation {
    pub fn new(field: &Arc<TowerField>, dim: usize, matrices: Vec<Matrix>) -> Result<Self, RepError> {
        for (i, m) in matrices.iter().enumerate() {
            if m.rows() != dim || m.cols() != dim || m.inverse().is_none() {
                return Err(RepError::BadMatrix(i.to_string()));
            }
        }
        Ok(Representation { field: field.clone(), dim, matrices })
    }

    pub fn field(&self) -> &Arc<TowerField> {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.matrices.len()
    }

    pub fn matrix(&self, s: usize) -> &Matrix {
        &self.matrices[s]
    }

    pub fn matrices(&self) -> &[Matrix] {
        &self.matrices
    }

    /// Checks `(M_s M_r)^{m(s,r)} = 1` for every finite label.
    pub fn verify_relations(&self, cm: &CoxeterMatrix) -> Result<(), RepError> {
        if cm.rank() != self.rank() {
            return Err(RepError::Missing(format!("{} generators expected", cm.rank())));
        }
        for s in 0..self.rank() {
            for r in 0..self.rank() {
                if let Label::Finite(m) = cm.m(s, r) {
                    if !(&self.matrices[s] * &self.matrices[r]).pow(m).is_identity() {
                        let l = cm.labels();
                        return Err(RepError::Relation(l[s].clone(), l[r].clone(), m));
                    }
                }
            }
        }
        Ok(())
    }

    /// `M_w = M_{s_1} ... M_{s_k}` along the canonical word.
    pub fn element_matrix(&self, g: &GroupTable, x: Elem) -> Matrix {
        g.word(x)
            .iter()
            .fold(Matrix::identity(&self.field, self.dim), |acc, &s| &acc * &self.matrices[s])
    }

    /// Matrices of every enumerated element.
    pub fn all_element_matrices(&self, g: &GroupTable) -> Vec<Matrix> {
        let mut out: Vec<Matrix> = Vec::with_capacity(g.len());
        for x in g.elements() {
            let m = match g.word(x).split_last() {
                None => Matrix::identity(&self.field, self.dim),
                Some((&s, prefix)) => {
                    let p = g.by_canonical_word(prefix).expect("prefixes are canonical");
                    &out[p.0] * &self.matrices[s]
                }
            };
            out.push(m);
        }
        out
    }

    pub fn from_json(text: &str, cm: &CoxeterMatrix) -> Result<(Self, Option<Matrix>), RepError> {
        let file: RepFile = serde_json::from_str(text).map_err(|e| RepError::Format(e.to_string()))?;
        let field = match &file.field {
            Some(spec) => TowerField::from_spec(spec)?,
            None => TowerField::rational(),
        };
        let entry = |v: &Value| parse_entry(&field, v);
        let parse_matrix = |rows: &Vec<Vec<Value>>| -> Result<Matrix, RepError> {
            let rows = rows
                .iter()
                .map(|r| r.iter().map(entry).collect::<Result<Vec<_>, _>>())
                .collect::<Result<Vec<_>, _>>()?;
            Ok(Matrix::from_rows_in(&field, rows, Some(file.dim)))
        };
        let mut mats = Vec::new();
        for label in cm.labels() {
            let rows = file.matrices.get(label).ok_or_else(|| RepError::Missing(label.clone()))?;
            let m = parse_matrix(rows)?;
            if m.rows() != file.dim || m.cols() != file.dim || m.inverse().is_none() {
                return Err(RepError::BadMatrix(label.clone()));
            }
            mats.push(m);
        }
        let rep = Representation::new(&field, file.dim, mats)?;
        rep.verify_relations(cm)?;
        let sub = match &file.subspace {
            None => None,
            Some(vectors) => {
                let rows = vectors
                    .iter()
                    .map(|r| r.iter().map(entry).collect::<Result<Vec<_>, _>>())
                    .collect::<Result<Vec<_>, _>>()?;
                if rows.iter().any(|r| r.len() != file.dim) {
                    return Err(RepError::Format("subspace vectors must have length dim".into()));
                }
                // basis vectors become columns
                Some(Matrix::from_rows_in(&field, rows, Some(file.dim)).transpose())
            }
        };
        Ok((rep, sub))
    }

    pub fn to_json(&self, cm: &CoxeterMatrix, subspace: Option<&Matrix>) -> Value {
        let enc = |m: &Matrix| -> Vec<Vec<Value>> {
            m.to_rows().iter().map(|r| r.iter().map(encode_entry).collect()).collect()
        };
        let matrices: BTreeMap<String, Vec<Vec<Value>>> =
            cm.labels().iter().cloned().zip(self.matrices.iter().map(enc)).collect();
        let mut out = serde_json::json!({
            "field": self.field.spec(),
            "dim": self.dim,
            "matrices": matrices,
        });
        if let Some(b) = subspace {
            out["subspace"] = Value::from(enc(&b.transpose()));
        }
        out
    }
}

#[derive(Serialize, Deserialize)]
struct RepFile {
    #[serde(default)]
    field: Option<FieldSpec>,
    dim: usize,
    matrices: BTreeMap<String, Vec<Vec<Value>>>,
    #[serde(default)]
    subspace: Option<Vec<Vec<Value>>>,
}

/// Entry: a rational (number or string such as `"-1/2"`) or an array of
/// rationals giving the coefficients in powers of the field generator.
fn parse_entry(field: &Arc<TowerField>, v: &Value) -> Result<FieldElement, RepError> {
    let scalar = |v: &Value| -> Result<crate::field::Rational, RepError> {
        match v {
            Value::Number(n) => Ok(parse_rational(&n.to_string())?),
            Value::String(s) => Ok(parse_rational(s)?),
            _ => Err(RepError::Format(format!("bad entry {v}"))),
        }
    };
    match v {
        Value::Array(cs) => {
            let coeffs = cs.iter().map(scalar).collect::<Result<Vec<_>, _>>()?;
            Ok(field.from_poly(&coeffs))
        }
        _ => Ok(field.from_rational(scalar(v)?)),
    }
}

fn encode_entry(x: &FieldElement) -> Value {
    match x.as_rational() {
        Some(r) => Value::from(crate::field::format_rational(r)),
        None => Value::from(x.to_strings()),
    }
}

/// Geometric representation in the basis of simple roots.
pub fn geometric_rep(cm: &CoxeterMatrix) -> Result<Representation, RepError> {
    let (field, mats) = cm.geometric_matrices()?;
    Representation::new(&field, cm.rank(), mats)
}

/// `rep ⊕ trivial^d`, with `rep` as the subrepresentation on the first
/// coordinates.
pub fn direct_sum_trivial(rep: &Representation, d: usize) -> (Representation, SubRep) {
    let n = rep.dim + d;
    let field = rep.field.clone();
    let mats = rep
        .matrices
        .iter()
        .map(|m| {
            let mut big = Matrix::identity(&field, n);
            for i in 0..rep.dim {
                for j in 0..rep.dim {
                    big[(i, j)] = m[(i, j)].clone();
                }
            }
            big
        })
        .collect();
    let ambient = Representation { field: field.clone(), dim: n, matrices: mats };
    let mut basis = Matrix::zeros(&field, n, rep.dim);
    for i in 0..rep.dim {
        basis[(i, i)] = field.one();
    }
    let sub = SubRep::new(ambient.clone(), basis).expect("coordinate subspace is stable");
    (ambient, sub)
}

/// A `W`-stable subspace `V' ⊂ V`, spanned by the columns of `basis`.
#[derive(Debug, Clone)]
pub struct SubRep {
    ambient: Representation,
    basis: Matrix,
    restricted: Representation,
}

impl SubRep {
    pub fn new(ambient: Representation, basis: Matrix) -> Result<Self, RepError> {
        if basis.rows() != ambient.dim {
            return Err(RepError::Format("subspace basis has the wrong length".into()));
        }
        if basis.rank() != basis.cols() {
            return Err(RepError::DependentBasis);
        }
        let mut restricted = Vec::new();
        for (s, m) in ambient.matrices.iter().enumerate() {
            // M_s B = B X_s
            let x = basis.solve(&(m * &basis)).ok_or_else(|| RepError::NotStable(s.to_string()))?;
            restricted.push(x);
        }
        let restricted = Representation { field: ambient.field.clone(), dim: basis.cols(), matrices: restricted };
        Ok(SubRep { ambient, basis, restricted })
    }

    /// `(V, V)`.
    pub fn full(ambient: Representation) -> Self {
        let basis = Matrix::identity(&ambient.field, ambient.dim);
        Self::new(ambient, basis).expect("whole space is stable")
    }

    pub fn ambient(&self) -> &Representation {
        &self.ambient
    }

    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    /// The action on `V'` in the coordinates given by `basis`.
    pub fn restricted(&self) -> &Representation {
        &self.restricted
    }

    /// Restriction of a linear form on `V` to `V'`.
    pub fn restrict_form(&self, form: &[FieldElement]) -> Vec<FieldElement> {
        self.basis.apply_left(form)
    }

    /// Basis of the annihilator `V'^⊥ ⊂ V*`.
    pub fn annihilator(&self) -> Vec<Vec<FieldElement>> {
        self.basis.left_kernel()
    }

    pub fn is_stable(&self) -> bool {
        self.ambient.matrices.iter().all(|m| self.basis.solve(&(m * &self.basis)).is_some())
    }

    /// `(M_s - 1) V ⊂ V'` for every generator, hence for all of `W`.
    pub fn quotient_is_trivial(&self) -> bool {
        let id = Matrix::identity(&self.ambient.field, self.ambient.dim);
        self.ambient.matrices.iter().all(|m| self.basis.solve(&m.sub(&id)).is_some())
    }
}

/// Hyperplane equations `x_s` and `-1`-eigenvectors `alpha_s`, normalized
/// by `x_s(alpha_s) = 2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReflectionData {
    pub covectors: Vec<Vec<FieldElement>>,
    pub roots: Vec<Vec<FieldElement>>,
}

impl ReflectionData {
    /// Verifies `x_s M_s = -x_s`, `M_s alpha_s = -alpha_s` and
    /// `M_s v = v - x_s(v) alpha_s`.
    pub fn is_consistent(&self, rep: &Representation) -> bool {
        (0..rep.rank()).all(|s| {
            let m = rep.matrix(s);
            let x = &self.covectors[s];
            let a = &self.roots[s];
            let xm = m.apply_left(x);
            let ma = m.apply(a);
            let pairing = dot(x, a);
            if pairing.is_zero() {
                return false;
            }
            let xs_ok = xm.iter().zip(x).all(|(p, q)| *p == -q);
            let as_ok = ma.iter().zip(a).all(|(p, q)| *p == -q);
            // reflection formula with the normalization c = 2 / x(alpha)
            let c = &rep.field.from_int(2) * &pairing.inv().expect("nonzero");
            let formula_ok = (0..rep.dim).all(|j| {
                (0..rep.dim).all(|i| {
                    let delta = if i == j { rep.field.one() } else { rep.field.zero() };
                    let expect = &delta - &(&(&a[i] * &x[j]) * &c);
                    m[(i, j)] == expect
                })
            });
            xs_ok && as_ok && formula_ok
        })
    }

    /// Rescales `x_s` by `c`, and `alpha_s` by `1/c`.
    pub fn rescaled(&self, s: usize, c: &FieldElement) -> ReflectionData {
        let mut out = self.clone();
        let ci = c.inv().expect("nonzero scale");
        out.covectors[s] = out.covectors[s].iter().map(|x| x * c).collect();
        out.roots[s] = out.roots[s].iter().map(|x| x * &ci).collect();
        out
    }
}

pub fn dot(a: &[FieldElement], b: &[FieldElement]) -> FieldElement {
    let mut acc = a.first().map(|x| x.field().zero()).unwrap_or_else(|| TowerField::rational().zero());
    for (x, y) in a.iter().zip(b) {
        acc = &acc + &(x * y);
    }
    acc
}

/// Eigenstructure of one matrix: `(-1)`-eigenvectors and fixed vectors.
fn eigen(m: &Matrix) -> (Vec<Vec<FieldElement>>, usize) {
    let field = m.field();
    let id = Matrix::identity(&field, m.rows());
    let minus = m.sub(&id.scale(&field.from_int(-1)));
    let fixed = m.sub(&id);
    (minus.kernel(), m.rows() - fixed.rank())
}

fn is_reflection_matrix(m: &Matrix) -> bool {
    let (neg, fixed) = eigen(m);
    m.rows() > 0 && neg.len() == 1 && fixed + 1 == m.rows()
}

/// Scales a nonzero vector so that its first nonzero entry is 1.
fn normalize_line(v: &[FieldElement]) -> Vec<FieldElement> {
    let lead = v.iter().find(|x| !x.is_zero()).expect("nonzero vector").inv().expect("nonzero");
    v.iter().map(|x| x * &lead).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReflectionFailure {
    /// Offending generators with a reason.
    pub offending: Vec<(String, String)>,
}

/// Eigen-data of every simple reflection, or the list of generators that do
/// not act as reflections.
pub fn check_reflections(rep: &Representation, names: &[String]) -> Result<ReflectionData, ReflectionFailure> {
    let mut offending = Vec::new();
    let mut covectors = Vec::new();
    let mut roots = Vec::new();
    let field = rep.field.clone();
    for s in 0..rep.rank() {
        let m = rep.matrix(s);
        let (neg, fixed) = eigen(m);
        let name = names.get(s).cloned().unwrap_or_else(|| s.to_string());
        if neg.len() != 1 {
            offending.push((name, format!("(-1)-eigenspace has dimension {}", neg.len())));
            continue;
        }
        if fixed + 1 != rep.dim {
            offending.push((name, format!("fixed space has dimension {fixed}")));
            continue;
        }
        let alpha = neg.into_iter().next().expect("one vector");
        let id = Matrix::identity(&field, rep.dim);
        let left = m.sub(&id.scale(&field.from_int(-1))).left_kernel();
        let x = left.into_iter().next().expect("left eigenvector exists");
        let pairing = dot(&x, &alpha);
        let Some(pi) = pairing.inv() else {
            offending.push((name, "x_s(alpha_s) = 0".to_string()));
            continue;
        };
        let scale = &field.from_int(2) * &pi;
        covectors.push(x.iter().map(|c| c * &scale).collect());
        roots.push(alpha);
    }
    if offending.is_empty() {
        Ok(ReflectionData { covectors, roots })
    } else {
        Err(ReflectionFailure { offending })
    }
}

/// Witness of a failed RVF check.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RvfWitness {
    NotAReflection(Elem),
    SameEigenline(Elem, Elem),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RvfReport {
    pub holds: bool,
    pub reflections_checked: usize,
    pub witness: Option<RvfWitness>,
}

/// Reflections act as reflections with pairwise distinct `(-1)`-eigenlines.
pub fn check_rvf(rep: &Representation, g: &GroupTable) -> RvfReport {
    let mats = rep.all_element_matrices(g);
    let refl = g.reflections();
    let mut lines: HashMap<Vec<FieldElement>, Elem> = HashMap::new();
    for &r in &refl {
        let m = &mats[r.0];
        if !is_reflection_matrix(m) {
            return RvfReport { holds: false, reflections_checked: refl.len(), witness: Some(RvfWitness::NotAReflection(r)) };
        }
        let line = normalize_line(&eigen(m).0[0]);
        if let Some(&other) = lines.get(&line) {
            return RvfReport {
                holds: false,
                reflections_checked: refl.len(),
                witness: Some(RvfWitness::SameEigenline(other, r)),
            };
        }
        lines.insert(line, r);
    }
    RvfReport { holds: true, reflections_checked: refl.len(), witness: None }
}

/// Witness of a failed RF check.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RfWitness {
    /// Two distinct elements with the same matrix.
    NotFaithful(Elem, Elem),
    /// Codimension-one fixed space, but not a reflection.
    FixedHyperplaneNotReflection(Elem),
    /// A reflection whose fixed space is not of codimension one.
    ReflectionWithoutHyperplane(Elem),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RfReport {
    pub holds: bool,
    pub faithful: bool,
    pub witness: Option<RfWitness>,
    /// The group was only enumerated up to a length bound and no witness
    /// was found inside it.
    pub inconclusive: bool,
}

/// Faithfulness, and elements with a fixed hyperplane are exactly the
/// reflections, over the enumerated range.
pub fn check_rf(rep: &Representation, g: &GroupTable) -> RfReport {
    let mats = rep.all_element_matrices(g);
    let mut seen: HashMap<&Matrix, Elem> = HashMap::new();
    let mut witness = None;
    let mut faithful = true;
    for x in g.elements() {
        if let Some(&y) = seen.get(&mats[x.0]) {
            faithful = false;
            witness = Some(RfWitness::NotFaithful(y, x));
            break;
        }
        seen.insert(&mats[x.0], x);
    }
    if witness.is_none() {
        let refl: std::collections::HashSet<Elem> = g.reflections().into_iter().collect();
        let id = Matrix::identity(&rep.field, rep.dim);
        for x in g.elements() {
            let codim_one = mats[x.0].sub(&id).rank() == 1;
            let is_refl = refl.contains(&x);
            if codim_one && !is_refl {
                witness = Some(RfWitness::FixedHyperplaneNotReflection(x));
                break;
            }
            if is_refl && !codim_one {
                witness = Some(RfWitness::ReflectionWithoutHyperplane(x));
                break;
            }
        }
    }
    let holds = witness.is_none();
    RfReport { holds, faithful, witness, inconclusive: holds && !g.is_complete() }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GoodPairReport {
    /// Simple reflections act as reflections on `V`.
    pub reflections_on_v: Result<(), ReflectionFailure>,
    /// Simple reflections act as reflections on `V'`.
    pub reflections_on_sub: Result<(), ReflectionFailure>,
    pub stable: bool,
    pub quotient_trivial: bool,
    /// RF for `V`, under which the graded Hom-rank property holds by theory;
    /// the bimodule layer verifies it on small words.
    pub rf: RfReport,
}

impl GoodPairReport {
    pub fn is_good_pair(&self) -> bool {
        self.reflections_on_v.is_ok() && self.reflections_on_sub.is_ok() && self.stable && self.quotient_trivial
    }
}

pub fn check_good_pair(sub: &SubRep, g: &GroupTable) -> GoodPairReport {
    let names = g.coxeter_matrix().labels();
    GoodPairReport {
        reflections_on_v: check_reflections(sub.ambient(), names).map(|_| ()),
        reflections_on_sub: check_reflections(sub.restricted(), names).map(|_| ()),
        stable: sub.is_stable(),
        quotient_trivial: sub.quotient_is_trivial(),
        rf: check_rf(sub.ambient(), g),
    }
}

/// Named pairs available without files.
pub fn builtin_pair(name: &str, cm: &CoxeterMatrix) -> Result<SubRep, RepError> {
    let geom = geometric_rep(cm)?;
    match name.trim_start_matches("builtin:") {
        "geom" => Ok(SubRep::full(geom)),
        "geom-plus-trivial" => Ok(direct_sum_trivial(&geom, 1).1),
        other => Err(RepError::Format(format!("unknown built-in pair `{other}`"))),
    }
}

//! Coxeter systems: matrices, enumerated group tables with ShortLex
//! canonical words, lengths, descents and the Bruhat order.
//!
//! Elements are identified through the geometric representation, which is
//! faithful; all arithmetic there is exact.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use serde_json::Value;
use thiserror::Error;

use crate::field::{field_for_cos, FieldElement, TowerField};
use crate::linalg::Matrix;

/// Default bound on the number of enumerated elements.
pub const DEFAULT_ELEMENT_CAP: usize = 50_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CoxeterError {
    #[error("invalid Coxeter matrix: {0}")]
    InvalidMatrix(String),
    #[error("group too large: more than {0} elements")]
    TooLarge(usize),
    #[error("product out of enumerated range")]
    OutOfRange,
    #[error("infinite labels are only supported for the infinite dihedral group")]
    UnsupportedInfinite,
    #[error("an enumeration bound (max length) is required for infinite groups")]
    NeedMaxLength,
    #[error("labels need more than one irrational cosine field ({0:?})")]
    MixedFields(Vec<u32>),
    #[error("unknown Coxeter type `{0}`")]
    UnknownType(String),
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
}

/// Entry of a Coxeter matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Label {
    Finite(u32),
    Infinite,
}

impl Label {
    pub fn finite(self) -> Option<u32> {
        match self {
            Label::Finite(m) => Some(m),
            Label::Infinite => None,
        }
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::Finite(m) => write!(f, "{m}"),
            Label::Infinite => write!(f, "inf"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoxeterMatrix {
    labels: Vec<String>,
    m: Vec<Vec<Label>>,
}

#[derive(Serialize, Deserialize)]
struct CoxeterMatrixFile {
    labels: Vec<String>,
    m: Vec<Vec<Value>>,
}

impl CoxeterMatrix {
    pub fn new(labels: Vec<String>, m: Vec<Vec<Label>>) -> Result<Self, CoxeterError> {
        let n = labels.len();
        let bad = |msg: &str| Err(CoxeterError::InvalidMatrix(msg.to_string()));
        if n == 0 {
            return bad("no generators");
        }
        if m.len() != n || m.iter().any(|r| r.len() != n) {
            return bad("matrix shape does not match the labels");
        }
        let mut seen = std::collections::HashSet::new();
        if !labels.iter().all(|l| !l.is_empty() && seen.insert(l.clone())) {
            return bad("generator names must be distinct and nonempty");
        }
        for (i, row) in m.iter().enumerate() {
            if row[i] != Label::Finite(1) {
                return bad("diagonal entries must be 1");
            }
            for (j, entry) in row.iter().enumerate() {
                if *entry != m[j][i] {
                    return bad("matrix must be symmetric");
                }
                if i != j && matches!(entry, Label::Finite(k) if *k < 2) {
                    return bad("off-diagonal entries must be at least 2");
                }
            }
        }
        Ok(CoxeterMatrix { labels, m })
    }

    /// Two generators `s, t` with `m(s,t) = m`.
    pub fn dihedral(m: Label) -> Self {
        Self::new(
            vec!["s".into(), "t".into()],
            vec![vec![Label::Finite(1), m], vec![m, Label::Finite(1)]],
        )
        .expect("valid dihedral matrix")
    }

    /// Built-in types: `A1`, `A2`, `A3`, `B2`, `H2`, `I2(m)` with `m <= 8`,
    /// `I2(inf)`.
    pub fn builtin(name: &str) -> Result<Self, CoxeterError> {
        let f = Label::Finite;
        let key = name.trim().to_ascii_uppercase().replace([' ', '_'], "");
        match key.as_str() {
            "A1" => Self::new(vec!["s".into()], vec![vec![f(1)]]),
            "A2" => Ok(Self::dihedral(f(3))),
            "B2" => Ok(Self::dihedral(f(4))),
            "H2" => Ok(Self::dihedral(f(5))),
            "A3" => Self::new(
                vec!["s".into(), "t".into(), "u".into()],
                vec![vec![f(1), f(3), f(2)], vec![f(3), f(1), f(3)], vec![f(2), f(3), f(1)]],
            ),
            _ => {
                let inner = key
                    .strip_prefix("I2(")
                    .and_then(|r| r.strip_suffix(')'))
                    .or_else(|| key.strip_prefix("I2"))
                    .ok_or_else(|| CoxeterError::UnknownType(name.to_string()))?;
                if inner == "INF" || inner == "∞" {
                    return Ok(Self::dihedral(Label::Infinite));
                }
                let m: u32 = inner.parse().map_err(|_| CoxeterError::UnknownType(name.to_string()))?;
                if !(2..=8).contains(&m) {
                    return Err(CoxeterError::UnknownType(name.to_string()));
                }
                Ok(Self::dihedral(f(m)))
            }
        }
    }

    pub fn rank(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn m(&self, i: usize, j: usize) -> Label {
        self.m[i][j]
    }

    pub fn generator(&self, name: &str) -> Result<usize, CoxeterError> {
        self.labels
            .iter()
            .position(|l| l == name)
            .ok_or_else(|| CoxeterError::UnknownGenerator(name.to_string()))
    }

    pub fn has_infinite(&self) -> bool {
        self.m.iter().flatten().any(|l| *l == Label::Infinite)
    }

    /// Parses a word: one character per generator when every name is a
    /// single character, otherwise names separated by commas or spaces.
    pub fn parse_word(&self, text: &str) -> Result<Vec<usize>, CoxeterError> {
        let t = text.trim();
        if t.is_empty() || t == "e" && self.generator("e").is_err() {
            return Ok(Vec::new());
        }
        if self.labels.iter().all(|l| l.chars().count() == 1) && !t.contains([',', ' ']) {
            t.chars().map(|c| self.generator(&c.to_string())).collect()
        } else {
            t.split([',', ' ']).filter(|p| !p.is_empty()).map(|p| self.generator(p)).collect()
        }
    }

    pub fn format_word(&self, word: &[usize]) -> String {
        if word.is_empty() {
            return "e".to_string();
        }
        let sep = if self.labels.iter().all(|l| l.chars().count() == 1) { "" } else { "," };
        word.iter().map(|&i| self.labels[i].as_str()).collect::<Vec<_>>().join(sep)
    }

    pub fn from_json(text: &str) -> Result<Self, CoxeterError> {
        let file: CoxeterMatrixFile =
            serde_json::from_str(text).map_err(|e| CoxeterError::InvalidMatrix(e.to_string()))?;
        let parse = |v: &Value| -> Result<Label, CoxeterError> {
            match v {
                Value::Number(n) => n
                    .as_u64()
                    .map(|k| Label::Finite(k as u32))
                    .ok_or_else(|| CoxeterError::InvalidMatrix(format!("bad entry {v}"))),
                Value::String(s) if s == "inf" || s == "∞" => Ok(Label::Infinite),
                _ => Err(CoxeterError::InvalidMatrix(format!("bad entry {v}"))),
            }
        };
        let m = file
            .m
            .iter()
            .map(|r| r.iter().map(parse).collect::<Result<Vec<_>, _>>())
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(file.labels, m)
    }

    pub fn to_json(&self) -> Value {
        let m: Vec<Vec<Value>> = self
            .m
            .iter()
            .map(|r| {
                r.iter()
                    .map(|l| match l {
                        Label::Finite(k) => Value::from(*k),
                        Label::Infinite => Value::from("inf"),
                    })
                    .collect()
            })
            .collect();
        serde_json::json!({ "labels": self.labels, "m": m })
    }

    /// Matrices of the geometric representation in the basis of simple
    /// roots: `s(a_r) = a_r + 2cos(pi/m(s,r)) a_s`, `s(a_s) = -a_s`.
    pub fn geometric_matrices(&self) -> Result<(Arc<TowerField>, Vec<Matrix>), CoxeterError> {
        let n = self.rank();
        let mut irrational: Vec<u32> = self
            .m
            .iter()
            .flatten()
            .filter_map(|l| l.finite())
            .filter(|&k| k > 3)
            .collect();
        irrational.sort_unstable();
        irrational.dedup();
        if irrational.len() > 1 {
            return Err(CoxeterError::MixedFields(irrational));
        }
        let field = match irrational.first() {
            Some(&k) => field_for_cos(Some(k)).0,
            None => TowerField::rational(),
        };
        let cos = |l: Label| -> FieldElement {
            match l {
                Label::Infinite => field.from_int(2),
                Label::Finite(2) => field.zero(),
                Label::Finite(3) => field.one(),
                Label::Finite(_) => field.generator(),
            }
        };
        let mats = (0..n)
            .map(|s| {
                let mut m = Matrix::identity(&field, n);
                for r in 0..n {
                    m[(s, r)] = if r == s { field.from_int(-1) } else { cos(self.m[s][r]) };
                }
                m
            })
            .collect();
        Ok((field, mats))
    }
}

/// Handle of an enumerated group element; `Elem(0)` is the identity and
/// handles are numbered in ShortLex order of canonical words.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Elem(pub usize);

/// Owned view of an element: canonical reduced word and length.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CoxeterElement {
    pub word: Vec<usize>,
    pub length: usize,
}

#[derive(Debug, Clone)]
pub struct GroupTable {
    matrix: CoxeterMatrix,
    /// `None` when the enumeration is the whole group.
    truncation: Option<usize>,
    words: Vec<Vec<usize>>,
    right: Vec<Vec<Option<Elem>>>,
    left: Vec<Vec<Option<Elem>>>,
    index: HashMap<Vec<usize>, Elem>,
}

impl GroupTable {
    pub fn build(cm: &CoxeterMatrix, max_length: Option<usize>) -> Result<Self, CoxeterError> {
        Self::build_capped(cm, max_length, DEFAULT_ELEMENT_CAP)
    }

    pub fn builtin(name: &str) -> Result<Self, CoxeterError> {
        let cm = CoxeterMatrix::builtin(name)?;
        let bound = if cm.has_infinite() { Some(10) } else { None };
        Self::build(&cm, bound)
    }

    /// Breadth-first enumeration. Level `l+1` is generated from level `l`
    /// in ShortLex order, appending generators in label order, so the first
    /// word reaching an element is its ShortLex-least reduced word.
    pub fn build_capped(cm: &CoxeterMatrix, max_length: Option<usize>, cap: usize) -> Result<Self, CoxeterError> {
        let n = cm.rank();
        let bound = if cm.has_infinite() {
            if n != 2 {
                return Err(CoxeterError::UnsupportedInfinite);
            }
            Some(max_length.ok_or(CoxeterError::NeedMaxLength)?)
        } else {
            None
        };
        let (field, gens) = cm.geometric_matrices()?;
        let mut mats = vec![Matrix::identity(&field, n)];
        let mut words: Vec<Vec<usize>> = vec![Vec::new()];
        let mut seen: HashMap<Matrix, Elem> = HashMap::new();
        seen.insert(mats[0].clone(), Elem(0));
        let mut right: Vec<Vec<Option<Elem>>> = vec![vec![None; n]];
        let mut frontier = vec![0usize];
        let mut level = 0usize;
        while !frontier.is_empty() {
            if bound.is_some_and(|b| level >= b) {
                break;
            }
            let mut next = Vec::new();
            for &x in &frontier {
                for (s, g) in gens.iter().enumerate() {
                    let prod = &mats[x] * g;
                    let id = match seen.get(&prod) {
                        Some(&id) => id,
                        None => {
                            let id = Elem(mats.len());
                            if id.0 >= cap {
                                return Err(CoxeterError::TooLarge(cap));
                            }
                            let mut w = words[x].clone();
                            w.push(s);
                            words.push(w);
                            seen.insert(prod.clone(), id);
                            mats.push(prod);
                            right.push(vec![None; n]);
                            next.push(id.0);
                            id
                        }
                    };
                    right[x][s] = Some(id);
                }
            }
            frontier = next;
            level += 1;
        }
        // elements on the boundary of a truncated ball may still have
        // products pointing back inside
        for x in 0..mats.len() {
            for (s, g) in gens.iter().enumerate() {
                if right[x][s].is_none() {
                    right[x][s] = seen.get(&(&mats[x] * g)).copied();
                }
            }
        }
        let left = (0..mats.len())
            .map(|x| gens.iter().map(|g| seen.get(&(g * &mats[x])).copied()).collect())
            .collect();
        let index = words.iter().enumerate().map(|(i, w)| (w.clone(), Elem(i))).collect();
        Ok(GroupTable { matrix: cm.clone(), truncation: bound, words, right, left, index })
    }

    pub fn coxeter_matrix(&self) -> &CoxeterMatrix {
        &self.matrix
    }

    pub fn rank(&self) -> usize {
        self.matrix.rank()
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn is_complete(&self) -> bool {
        self.truncation.is_none()
    }

    pub fn truncation(&self) -> Option<usize> {
        self.truncation
    }

    pub fn identity(&self) -> Elem {
        Elem(0)
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        (0..self.words.len()).map(Elem)
    }

    pub fn word(&self, x: Elem) -> &[usize] {
        &self.words[x.0]
    }

    pub fn length(&self, x: Elem) -> usize {
        self.words[x.0].len()
    }

    pub fn element(&self, x: Elem) -> CoxeterElement {
        CoxeterElement { word: self.words[x.0].clone(), length: self.length(x) }
    }

    pub fn generator(&self, s: usize) -> Elem {
        self.right[0][s].expect("generators are enumerated")
    }

    pub fn format(&self, x: Elem) -> String {
        self.matrix.format_word(self.word(x))
    }

    pub fn by_canonical_word(&self, word: &[usize]) -> Option<Elem> {
        self.index.get(word).copied()
    }

    pub fn longest_length(&self) -> usize {
        self.words.last().map_or(0, |w| w.len())
    }

    pub fn right_mul_gen(&self, x: Elem, s: usize) -> Option<Elem> {
        self.right[x.0][s]
    }

    pub fn left_mul_gen(&self, s: usize, x: Elem) -> Option<Elem> {
        self.left[x.0][s]
    }

    pub fn is_right_descent(&self, x: Elem, s: usize) -> bool {
        self.right[x.0][s].is_some_and(|y| self.length(y) < self.length(x))
    }

    pub fn is_left_descent(&self, s: usize, x: Elem) -> bool {
        self.left[x.0][s].is_some_and(|y| self.length(y) < self.length(x))
    }

    pub fn right_descents(&self, x: Elem) -> Vec<usize> {
        (0..self.rank()).filter(|&s| self.is_right_descent(x, s)).collect()
    }

    pub fn left_descents(&self, x: Elem) -> Vec<usize> {
        (0..self.rank()).filter(|&s| self.is_left_descent(s, x)).collect()
    }

    /// Product of an arbitrary (not necessarily reduced) word.
    pub fn from_word(&self, word: &[usize]) -> Result<Elem, CoxeterError> {
        word.iter().try_fold(Elem(0), |x, &s| self.right_mul_gen(x, s).ok_or(CoxeterError::OutOfRange))
    }

    pub fn parse(&self, text: &str) -> Result<Elem, CoxeterError> {
        self.from_word(&self.matrix.parse_word(text)?)
    }

    pub fn multiply(&self, x: Elem, y: Elem) -> Result<Elem, CoxeterError> {
        self.word(y)
            .iter()
            .try_fold(x, |acc, &s| self.right_mul_gen(acc, s).ok_or(CoxeterError::OutOfRange))
    }

    pub fn inverse(&self, x: Elem) -> Elem {
        let rev: Vec<usize> = self.word(x).iter().rev().copied().collect();
        self.from_word(&rev).expect("inverse has the same length")
    }

    /// Bruhat order by the descent recursion: with `s` a left descent of
    /// `w`, `x <= w` iff `sx <= sw` when `s` is a left descent of `x`, and
    /// iff `x <= sw` otherwise.
    pub fn bruhat_leq(&self, x: Elem, w: Elem) -> bool {
        let (mut x, mut w) = (x, w);
        loop {
            if self.length(x) > self.length(w) {
                return false;
            }
            if self.length(w) == 0 {
                return x == Elem(0);
            }
            if x == w {
                return true;
            }
            let s = self.word(w)[0];
            let sw = self.left_mul_gen(s, w).expect("left descent stays in range");
            if self.is_left_descent(s, x) {
                x = self.left_mul_gen(s, x).expect("left descent stays in range");
            }
            w = sw;
        }
    }

    /// Conjugates `w s w^-1` that fall inside the enumerated range.
    pub fn reflections(&self) -> Vec<Elem> {
        let mut out = std::collections::BTreeSet::new();
        for w in self.elements() {
            for s in 0..self.rank() {
                let mut word = self.word(w).to_vec();
                word.push(s);
                word.extend(self.word(w).iter().rev());
                if let Ok(r) = self.from_word(&word) {
                    out.insert(r);
                }
            }
        }
        out.into_iter().collect()
    }

    /// Number of elements of each length.
    pub fn length_histogram(&self) -> Vec<usize> {
        let mut h = vec![0; self.longest_length() + 1];
        for w in &self.words {
            h[w.len()] += 1;
        }
        h
    }
}

//! The symplectic module `H_1` of a once-punctured genus-`g` surface and
//! the twist action of the mapping class group on it.
//!
//! Basis order is `a_1, b_1, ..., a_g, b_g`, with intersection pairing
//! `w(a_j, b_k) = delta_jk` and `w(a_j, a_k) = w(b_j, b_k) = 0`. A Dehn
//! twist about a simple closed curve with homology class `c` acts by the
//! transvection `m -> m + w(m, c) c`; matrices act on column vectors, and a
//! word acts with its leftmost letter applied last (outermost).

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde_json::{json, Value};
use thiserror::Error;

use crate::intlinalg::IntMatrix;
use crate::jsonnum;
use crate::presentation::Word;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SymplecticError {
    #[error("genus/dimension mismatch between operands")]
    GenusMismatch,
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("invalid genus {0} (must be at least 1)")]
    InvalidGenus(usize),
    #[error("index {index} out of range 1..={max}")]
    IndexOutOfRange { index: usize, max: usize },
    #[error("matrix for generator `{0}` is not invertible over the integers")]
    NotInvertible(String),
    #[error("malformed representation JSON: {0}")]
    BadJson(String),
}

/// An element of the homology module, written over the ordered basis
/// `a_1, b_1, ..., a_g, b_g` (coordinate `2(j-1)` is `a_j`, coordinate
/// `2(j-1)+1` is `b_j`). General module elements of any dimension are
/// allowed; the symplectic operations require an even dimension.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct HomologyVector {
    coords: Vec<BigInt>,
}

impl HomologyVector {
    pub fn zero(dim: usize) -> Self {
        HomologyVector { coords: vec![BigInt::zero(); dim] }
    }

    pub fn from_coords(coords: Vec<BigInt>) -> Self {
        HomologyVector { coords }
    }

    pub fn from_i64(xs: &[i64]) -> Self {
        HomologyVector { coords: xs.iter().map(|&x| BigInt::from(x)).collect() }
    }

    /// `a_j` basis vector for genus `g` (1-based `j`).
    pub fn basis_a(genus: usize, j: usize) -> Self {
        assert!((1..=genus).contains(&j), "a_{j} does not exist at genus {genus}");
        let mut v = HomologyVector::zero(2 * genus);
        v.coords[2 * (j - 1)] = BigInt::one();
        v
    }

    /// `b_j` basis vector for genus `g` (1-based `j`).
    pub fn basis_b(genus: usize, j: usize) -> Self {
        assert!((1..=genus).contains(&j), "b_{j} does not exist at genus {genus}");
        let mut v = HomologyVector::zero(2 * genus);
        v.coords[2 * (j - 1) + 1] = BigInt::one();
        v
    }

    /// Class of the `j`-th chain curve: `c_1 = a_1`, and
    /// `c_j = a_(j-1) - a_j` for `j >= 2`.
    pub fn basis_c(genus: usize, j: usize) -> Self {
        if j == 1 {
            HomologyVector::basis_a(genus, 1)
        } else {
            HomologyVector::basis_a(genus, j - 1).sub(&HomologyVector::basis_a(genus, j))
        }
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    /// Genus of the ambient surface module; only meaningful when the
    /// dimension is even.
    pub fn genus(&self) -> usize {
        self.coords.len() / 2
    }

    pub fn coords(&self) -> &[BigInt] {
        &self.coords
    }

    pub fn coord(&self, i: usize) -> &BigInt {
        &self.coords[i]
    }

    /// Coefficient of `a_j` (1-based).
    pub fn coeff_a(&self, j: usize) -> &BigInt {
        &self.coords[2 * (j - 1)]
    }

    /// Coefficient of `b_j` (1-based).
    pub fn coeff_b(&self, j: usize) -> &BigInt {
        &self.coords[2 * (j - 1) + 1]
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    pub fn scaled(&self, k: &BigInt) -> Self {
        HomologyVector { coords: self.coords.iter().map(|x| x * k).collect() }
    }

    fn add(&self, other: &Self) -> Self {
        assert_eq!(self.dim(), other.dim());
        HomologyVector {
            coords: self.coords.iter().zip(&other.coords).map(|(x, y)| x + y).collect(),
        }
    }

    fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.dim(), other.dim());
        HomologyVector {
            coords: self.coords.iter().zip(&other.coords).map(|(x, y)| x - y).collect(),
        }
    }
}

impl Add for &HomologyVector {
    type Output = HomologyVector;
    fn add(self, rhs: &HomologyVector) -> HomologyVector {
        HomologyVector::add(self, rhs)
    }
}

impl Sub for &HomologyVector {
    type Output = HomologyVector;
    fn sub(self, rhs: &HomologyVector) -> HomologyVector {
        HomologyVector::sub(self, rhs)
    }
}

impl Neg for &HomologyVector {
    type Output = HomologyVector;
    fn neg(self) -> HomologyVector {
        HomologyVector { coords: self.coords.iter().map(|x| -x).collect() }
    }
}

impl fmt::Display for HomologyVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

/// Algebraic intersection pairing of two homology classes.
pub fn intersection_form(
    m1: &HomologyVector,
    m2: &HomologyVector,
) -> Result<BigInt, SymplecticError> {
    if m1.dim() != m2.dim() || m1.dim() % 2 != 0 {
        return Err(SymplecticError::GenusMismatch);
    }
    let mut acc = BigInt::zero();
    for j in 1..=m1.genus() {
        acc += m1.coeff_a(j) * m2.coeff_b(j) - m1.coeff_b(j) * m2.coeff_a(j);
    }
    Ok(acc)
}

/// Matrix of the transvection `m -> m + w(m, c) c` in the standard basis.
pub fn twist_matrix(c: &HomologyVector) -> IntMatrix {
    let dim = c.dim();
    assert!(dim % 2 == 0, "twists live on an even-dimensional module");
    let mut t = IntMatrix::identity(dim);
    for k in 0..dim {
        // w(e_k, c): pairs (a_j, b_j) sit at (2j-2, 2j-1).
        let omega = if k % 2 == 0 { c.coord(k + 1).clone() } else { -c.coord(k - 1) };
        if omega.is_zero() {
            continue;
        }
        for i in 0..dim {
            if !c.coord(i).is_zero() {
                let add = c.coord(i) * &omega;
                t[(i, k)] += add;
            }
        }
    }
    t
}

/// Component of `m` in the `j`-th handle summand `span(a_j, b_j)`,
/// returned in the ambient module.
pub fn projection(j: usize, m: &HomologyVector) -> Result<HomologyVector, SymplecticError> {
    let g = m.genus();
    if m.dim() % 2 != 0 {
        return Err(SymplecticError::GenusMismatch);
    }
    if j < 1 || j > g {
        return Err(SymplecticError::IndexOutOfRange { index: j, max: g });
    }
    let mut v = HomologyVector::zero(m.dim());
    v.coords[2 * (j - 1)] = m.coeff_a(j).clone();
    v.coords[2 * (j - 1) + 1] = m.coeff_b(j).clone();
    Ok(v)
}

/// The hyperelliptic-style coordinate swap `a_j <-> b_j`. Kept for test
/// authoring; no computation in the crate consumes it.
pub fn involution(m: &HomologyVector) -> Result<HomologyVector, SymplecticError> {
    if m.dim() % 2 != 0 {
        return Err(SymplecticError::GenusMismatch);
    }
    let mut coords = m.coords.clone();
    for j in 0..m.genus() {
        coords.swap(2 * j, 2 * j + 1);
    }
    Ok(HomologyVector { coords })
}

/// Named curves on the surface with their homology classes, plus the
/// geometric intersection table of the Humphries generator curves.
///
/// Curves: `a1..ag` (the standard `alpha` curves), `b1..bg` (`beta`),
/// `c2..cg` (chain curves between consecutive handles), with `c1` an alias
/// for `a1`. The Humphries generators are, in order,
/// `c1 b1 c2 b2 ... cg bg a2` (for genus 1 just `c1 b1`).
#[derive(Clone, Debug)]
pub struct CurveSystem {
    genus: usize,
    classes: Vec<(String, HomologyVector)>,
    humphries: Vec<String>,
    table: Vec<Vec<u8>>,
}

impl CurveSystem {
    pub fn new(genus: usize) -> Result<Self, SymplecticError> {
        if genus < 1 {
            return Err(SymplecticError::InvalidGenus(genus));
        }
        let mut classes = Vec::new();
        for j in 1..=genus {
            classes.push((format!("a{j}"), HomologyVector::basis_a(genus, j)));
            classes.push((format!("b{j}"), HomologyVector::basis_b(genus, j)));
            classes.push((format!("c{j}"), HomologyVector::basis_c(genus, j)));
        }
        let humphries = humphries_names(genus);
        let n = humphries.len();
        let mut table = vec![vec![0u8; n]; n];
        for (i, x) in humphries.iter().enumerate() {
            for (j, y) in humphries.iter().enumerate() {
                if i != j && curves_intersect_once(x, y) {
                    table[i][j] = 1;
                }
            }
        }
        Ok(CurveSystem { genus, classes, humphries, table })
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn curve_class(&self, name: &str) -> Option<&HomologyVector> {
        self.classes.iter().find(|(n, _)| n == name).map(|(_, v)| v)
    }

    /// Humphries generator names in presentation order.
    pub fn humphries_names(&self) -> &[String] {
        &self.humphries
    }

    /// Geometric intersection number (0 or 1) of two Humphries curves.
    pub fn intersection(&self, x: &str, y: &str) -> Option<u8> {
        let i = self.humphries.iter().position(|n| n == x)?;
        let j = self.humphries.iter().position(|n| n == y)?;
        Some(self.table[i][j])
    }
}

/// Humphries generator names for genus `g`: `c1 b1 c2 b2 ... cg bg a2`,
/// shrinking to `c1 b1` at genus 1.
pub fn humphries_names(genus: usize) -> Vec<String> {
    let mut names = Vec::with_capacity(2 * genus + 1);
    for j in 1..=genus {
        names.push(format!("c{j}"));
        names.push(format!("b{j}"));
    }
    if genus >= 2 {
        names.push("a2".to_string());
    }
    names
}

/// Pairs of Humphries curves meeting exactly once: each chain curve `c_j`
/// meets `b_j` and `b_(j-1)`, and the collar curve `a2` meets `b2`. All
/// other pairs are disjoint.
fn curves_intersect_once(x: &str, y: &str) -> bool {
    fn split(name: &str) -> (char, usize) {
        let kind = name.chars().next().unwrap();
        (kind, name[1..].parse().unwrap())
    }
    let (xa, xi) = split(x);
    let (ya, yi) = split(y);
    match ((xa, xi), (ya, yi)) {
        (('c', c), ('b', b)) | (('b', b), ('c', c)) => c == b || c == b + 1,
        (('a', 2), ('b', 2)) | (('b', 2), ('a', 2)) => true,
        _ => false,
    }
}

/// A representation of a finitely generated group on a free integer
/// module: one integer-invertible matrix per named generator, acting on
/// column vectors. Inverse matrices are precomputed.
#[derive(Clone, Debug)]
pub struct Representation {
    names: Vec<String>,
    dim: usize,
    mats: Vec<IntMatrix>,
    invs: Vec<IntMatrix>,
    by_name: HashMap<String, usize>,
}

impl Representation {
    pub fn new(names: Vec<String>, mats: Vec<IntMatrix>) -> Result<Self, SymplecticError> {
        assert_eq!(names.len(), mats.len(), "one matrix per generator");
        let dim = mats.first().map_or(0, IntMatrix::rows);
        let mut invs = Vec::with_capacity(mats.len());
        let mut by_name = HashMap::new();
        for (i, (name, m)) in names.iter().zip(&mats).enumerate() {
            if m.rows() != dim || m.cols() != dim {
                return Err(SymplecticError::GenusMismatch);
            }
            if by_name.insert(name.clone(), i).is_some() {
                return Err(SymplecticError::UnknownGenerator(format!(
                    "duplicate generator `{name}`"
                )));
            }
            invs.push(m.inverse().ok_or_else(|| SymplecticError::NotInvertible(name.clone()))?);
        }
        Ok(Representation { names, dim, mats, invs, by_name })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Genus when the module is the standard surface module.
    pub fn genus(&self) -> Option<usize> {
        (self.dim % 2 == 0).then_some(self.dim / 2)
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.by_name.get(name).copied()
    }

    pub fn matrix(&self, name: &str) -> Option<&IntMatrix> {
        self.index_of(name).map(|i| &self.mats[i])
    }

    pub fn matrix_at(&self, i: usize) -> &IntMatrix {
        &self.mats[i]
    }

    pub fn inverse_at(&self, i: usize) -> &IntMatrix {
        &self.invs[i]
    }

    /// Matrix of a word (letter indices refer to this representation's
    /// generator order, leftmost letter outermost).
    pub fn word_matrix(&self, w: &Word) -> Result<IntMatrix, SymplecticError> {
        let mut out = IntMatrix::identity(self.dim);
        for l in w.letters() {
            if l.gen >= self.names.len() {
                return Err(SymplecticError::UnknownGenerator(format!(
                    "letter index {} out of range",
                    l.gen
                )));
            }
            let m = if l.inverse { &self.invs[l.gen] } else { &self.mats[l.gen] };
            out = out.mul_mat(m);
        }
        Ok(out)
    }

    /// Apply a word to a module element.
    pub fn act(&self, w: &Word, m: &HomologyVector) -> Result<HomologyVector, SymplecticError> {
        if m.dim() != self.dim {
            return Err(SymplecticError::GenusMismatch);
        }
        let mut coords = m.coords().to_vec();
        for l in w.letters().iter().rev() {
            if l.gen >= self.names.len() {
                return Err(SymplecticError::UnknownGenerator(format!(
                    "letter index {} out of range",
                    l.gen
                )));
            }
            let mat = if l.inverse { &self.invs[l.gen] } else { &self.mats[l.gen] };
            coords = mat.mul_vec(&coords);
        }
        Ok(HomologyVector::from_coords(coords))
    }

    /// Export as JSON: `{"genus": g, "generators": [{"name", "matrix"}]}`
    /// (row-major matrices). Modules of odd dimension carry `"dim"` instead
    /// of `"genus"`.
    pub fn to_json(&self) -> Value {
        let generators: Vec<Value> = self
            .names
            .iter()
            .zip(&self.mats)
            .map(|(name, m)| {
                let rows: Vec<Value> =
                    (0..m.rows()).map(|i| jsonnum::vec_to_value(m.row(i))).collect();
                json!({ "name": name, "matrix": Value::Array(rows) })
            })
            .collect();
        let mut obj = serde_json::Map::new();
        match self.genus() {
            Some(g) => obj.insert("genus".into(), Value::from(g)),
            None => obj.insert("dim".into(), Value::from(self.dim)),
        };
        obj.insert("generators".into(), Value::Array(generators));
        Value::Object(obj)
    }

    pub fn from_json(v: &Value) -> Result<Self, SymplecticError> {
        let bad = |msg: &str| SymplecticError::BadJson(msg.to_string());
        let obj = v.as_object().ok_or_else(|| bad("expected an object"))?;
        let dim = match (obj.get("genus"), obj.get("dim")) {
            (Some(g), _) => {
                let g = g.as_u64().ok_or_else(|| bad("genus must be a nonnegative integer"))?;
                2 * g as usize
            }
            (None, Some(d)) => {
                d.as_u64().ok_or_else(|| bad("dim must be a nonnegative integer"))? as usize
            }
            (None, None) => return Err(bad("missing genus or dim")),
        };
        let gens = obj
            .get("generators")
            .and_then(Value::as_array)
            .ok_or_else(|| bad("missing generators array"))?;
        let mut names = Vec::new();
        let mut mats = Vec::new();
        for g in gens {
            let name = g
                .get("name")
                .and_then(Value::as_str)
                .ok_or_else(|| bad("generator entry missing name"))?;
            let rows = g
                .get("matrix")
                .and_then(Value::as_array)
                .ok_or_else(|| bad("generator entry missing matrix"))?;
            if rows.len() != dim {
                return Err(bad(&format!(
                    "matrix for `{name}` has {} rows, expected {dim}",
                    rows.len()
                )));
            }
            let mut parsed = Vec::with_capacity(dim);
            for row in rows {
                let r = jsonnum::value_to_vec(row)
                    .ok_or_else(|| bad("matrix rows must be arrays of integers"))?;
                if r.len() != dim {
                    return Err(bad(&format!("matrix for `{name}` is not {dim}x{dim}")));
                }
                parsed.push(r);
            }
            names.push(name.to_string());
            mats.push(IntMatrix::from_rows(parsed));
        }
        Representation::new(names, mats)
    }
}

/// The Humphries twist generators of the mapping class group together with
/// their transvection matrices on `H_1`.
pub fn humphries_representation(
    genus: usize,
) -> Result<(CurveSystem, Representation), SymplecticError> {
    let curves = CurveSystem::new(genus)?;
    let names = curves.humphries_names().to_vec();
    let mats = names
        .iter()
        .map(|n| twist_matrix(curves.curve_class(n).expect("humphries curve has a class")))
        .collect();
    let rep = Representation::new(names, mats)?;
    Ok((curves, rep))
}

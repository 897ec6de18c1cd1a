//! Twisted 1-cocycles and the computation of `H^1 = Z^1 / B^1`.
//!
//! A cocycle assigns a module element to every generator; the value on a
//! word follows from `u(gh) = u(g) + g u(h)` and `u(g^-1) = -g^-1 u(g)`,
//! so a relator `r` imposes the linear condition `u(r) = 0`. Expanding
//! every relator of a presentation yields one integer matrix whose kernel
//! is the cocycle lattice `Z^1`; coboundaries `g -> (1 - g) m` span `B^1`.
//!
//! For the Wajnryb presentation with the twist representation there are two
//! normalization passes. The first shifts a cocycle until it vanishes (in
//! the relevant coordinate) on the collar and beta twists; the second
//! shifts it until it vanishes on the chain twists as well, leaving all of
//! the class's content in the value on the one remaining generator `a2`.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde_json::{json, Value};
use thiserror::Error;

use crate::intlinalg::{
    kernel_basis, quotient_with_representatives, AbelianInvariants, IntMatrix, LinAlgError,
};
use crate::jsonnum;
use crate::presentation::{Presentation, Word};
use crate::symplectic::{
    humphries_names, humphries_representation, HomologyVector, Representation, SymplecticError,
};
use crate::wajnryb::{
    alpha_twist_word, wajnryb_presentation, RelationTag, WajnrybError, WajnrybPresentation,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CocycleError {
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("genus/dimension mismatch between cocycle and representation")]
    GenusMismatch,
    #[error("genus {0} is not supported here")]
    UnsupportedGenus(usize),
    #[error("assignment violates the cocycle condition")]
    NotACocycle,
    #[error("cocycle is not adapted to the standard basis")]
    NotAdaptedToS,
    #[error("value on `{0}` is not an integer multiple of the chain-curve class")]
    NotProportional(String),
    #[error("malformed cocycle JSON: {0}")]
    BadJson(String),
    #[error(transparent)]
    Lin(#[from] LinAlgError),
    #[error(transparent)]
    Sym(#[from] SymplecticError),
    #[error(transparent)]
    Wajnryb(#[from] WajnrybError),
}

/// A value for every generator of a presentation, in a fixed generator
/// order. All values share one module dimension.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CocycleAssignment {
    names: Vec<String>,
    values: Vec<HomologyVector>,
}

impl CocycleAssignment {
    pub fn new(names: Vec<String>, values: Vec<HomologyVector>) -> Self {
        assert_eq!(names.len(), values.len(), "one value per generator");
        if let Some(first) = values.first() {
            assert!(values.iter().all(|v| v.dim() == first.dim()), "mixed dimensions");
        }
        CocycleAssignment { names, values }
    }

    pub fn zero(names: Vec<String>, dim: usize) -> Self {
        let values = vec![HomologyVector::zero(dim); names.len()];
        CocycleAssignment { names, values }
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn values(&self) -> &[HomologyVector] {
        &self.values
    }

    pub fn dim(&self) -> usize {
        self.values.first().map_or(0, HomologyVector::dim)
    }

    pub fn get(&self, name: &str) -> Option<&HomologyVector> {
        self.names.iter().position(|n| n == name).map(|i| &self.values[i])
    }

    pub fn set(&mut self, name: &str, value: HomologyVector) {
        let i = self.names.iter().position(|n| n == name).expect("generator exists");
        assert_eq!(value.dim(), self.values[i].dim());
        self.values[i] = value;
    }

    /// Same data, reordered to the given generator list. The name sets must
    /// agree exactly.
    pub fn aligned_to(&self, names: &[String]) -> Result<Self, CocycleError> {
        if names.len() != self.names.len() {
            return Err(CocycleError::UnknownGenerator(format!(
                "expected {} generators, assignment has {}",
                names.len(),
                self.names.len()
            )));
        }
        let values = names
            .iter()
            .map(|n| {
                self.get(n)
                    .cloned()
                    .ok_or_else(|| CocycleError::UnknownGenerator(n.clone()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(CocycleAssignment { names: names.to_vec(), values })
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.names, other.names, "assignments over different generators");
        let values =
            self.values.iter().zip(&other.values).map(|(x, y)| x + y).collect();
        CocycleAssignment { names: self.names.clone(), values }
    }

    pub fn negated(&self) -> Self {
        CocycleAssignment {
            names: self.names.clone(),
            values: self.values.iter().map(|v| -v).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(HomologyVector::is_zero)
    }

    /// Concatenation of all values, generator-major; the coordinate order
    /// used by `relator_system` columns.
    pub fn to_flat(&self) -> Vec<BigInt> {
        self.values.iter().flat_map(|v| v.coords().iter().cloned()).collect()
    }

    pub fn from_flat(names: Vec<String>, dim: usize, flat: &[BigInt]) -> Self {
        assert_eq!(flat.len(), names.len() * dim);
        let values = flat
            .chunks(dim)
            .map(|c| HomologyVector::from_coords(c.to_vec()))
            .collect();
        CocycleAssignment { names, values }
    }

    /// `{"genus": g, "values": {name: [coords]}}`, falling back to `"dim"`
    /// for modules of odd dimension.
    pub fn to_json(&self) -> Value {
        let mut values = serde_json::Map::new();
        for (name, v) in self.names.iter().zip(&self.values) {
            values.insert(name.clone(), jsonnum::vec_to_value(v.coords()));
        }
        let mut obj = serde_json::Map::new();
        let dim = self.dim();
        if dim % 2 == 0 {
            obj.insert("genus".into(), Value::from(dim / 2));
        } else {
            obj.insert("dim".into(), Value::from(dim));
        }
        obj.insert("values".into(), Value::Object(values));
        Value::Object(obj)
    }

    pub fn from_json(v: &Value) -> Result<Self, CocycleError> {
        let bad = |msg: String| CocycleError::BadJson(msg);
        let obj = v.as_object().ok_or_else(|| bad("expected an object".into()))?;
        let dim = match (obj.get("genus"), obj.get("dim")) {
            (Some(g), _) => {
                2 * g.as_u64().ok_or_else(|| bad("genus must be an integer".into()))? as usize
            }
            (None, Some(d)) => {
                d.as_u64().ok_or_else(|| bad("dim must be an integer".into()))? as usize
            }
            (None, None) => return Err(bad("missing genus or dim".into())),
        };
        let values = obj
            .get("values")
            .and_then(Value::as_object)
            .ok_or_else(|| bad("missing values object".into()))?;
        let mut names = Vec::new();
        let mut vecs = Vec::new();
        for (name, coords) in values {
            let c = jsonnum::value_to_vec(coords)
                .ok_or_else(|| bad(format!("value for `{name}` must be an integer array")))?;
            if c.len() != dim {
                return Err(bad(format!(
                    "value for `{name}` has length {}, expected {dim}",
                    c.len()
                )));
            }
            names.push(name.clone());
            vecs.push(HomologyVector::from_coords(c));
        }
        Ok(CocycleAssignment::new(names, vecs))
    }
}

/// Generator indices of `u.names` resolved inside `rep`.
fn rep_indices(u_names: &[String], rep: &Representation) -> Result<Vec<usize>, CocycleError> {
    u_names
        .iter()
        .map(|n| {
            rep.index_of(n)
                .ok_or_else(|| CocycleError::UnknownGenerator(n.clone()))
        })
        .collect()
}

/// Value of the cocycle on a word. Letter indices refer to the
/// assignment's generator order; the fold applies
/// `u(gh) = u(g) + g u(h)` and `u(g^-1) = -g^-1 u(g)` letter by letter.
pub fn evaluate(
    u: &CocycleAssignment,
    rep: &Representation,
    w: &Word,
) -> Result<HomologyVector, CocycleError> {
    if u.dim() != rep.dim() && !u.values.is_empty() {
        return Err(CocycleError::GenusMismatch);
    }
    let map = rep_indices(&u.names, rep)?;
    let mut value = vec![BigInt::zero(); rep.dim()];
    let mut prefix = IntMatrix::identity(rep.dim());
    for l in w.letters() {
        if l.gen >= u.names.len() {
            return Err(CocycleError::UnknownGenerator(format!(
                "letter index {} out of range",
                l.gen
            )));
        }
        let ri = map[l.gen];
        if !l.inverse {
            for (acc, x) in value.iter_mut().zip(prefix.mul_vec(u.values[l.gen].coords())) {
                *acc += x;
            }
            prefix = prefix.mul_mat(rep.matrix_at(ri));
        } else {
            prefix = prefix.mul_mat(rep.inverse_at(ri));
            for (acc, x) in value.iter_mut().zip(prefix.mul_vec(u.values[l.gen].coords())) {
                *acc -= x;
            }
        }
    }
    Ok(HomologyVector::from_coords(value))
}

/// Value on the conjugate `g h g^-1` computed from the closed form
/// `u(g h g^-1) = (1 - g h g^-1) u(g) + g u(h)`.
pub fn conjugate_value(
    u: &CocycleAssignment,
    rep: &Representation,
    g: &Word,
    h: &Word,
) -> Result<HomologyVector, CocycleError> {
    let ug = evaluate(u, rep, g)?;
    let uh = evaluate(u, rep, h)?;
    let rho_g = rep.word_matrix(g)?;
    let conj = g.concat(h).concat(&g.inverse());
    let rho_conj = rep.word_matrix(&conj)?;
    let mut out = rho_g.mul_vec(uh.coords());
    let moved = rho_conj.mul_vec(ug.coords());
    for i in 0..out.len() {
        out[i] += ug.coords()[i].clone() - &moved[i];
    }
    Ok(HomologyVector::from_coords(out))
}

/// The linear system expressing `u(r) = 0` for every relator: a block
/// matrix with one block row per relator and one block column per
/// generator, acting on the generator-major coordinates of an assignment.
pub fn relator_system(
    p: &Presentation,
    rep: &Representation,
) -> Result<IntMatrix, CocycleError> {
    let n = rep.dim();
    let map = rep_indices(&p.generators, rep)?;
    let mut sys = IntMatrix::zeros(p.relators.len() * n, p.generators.len() * n);
    for (ri, rel) in p.relators.iter().enumerate() {
        let mut prefix = IntMatrix::identity(n);
        for l in rel.letters() {
            if l.gen >= p.generators.len() {
                return Err(CocycleError::UnknownGenerator(format!(
                    "letter index {} out of range",
                    l.gen
                )));
            }
            if !l.inverse {
                for i in 0..n {
                    for j in 0..n {
                        let x = prefix[(i, j)].clone();
                        sys[(ri * n + i, l.gen * n + j)] += x;
                    }
                }
                prefix = prefix.mul_mat(rep.matrix_at(map[l.gen]));
            } else {
                prefix = prefix.mul_mat(rep.inverse_at(map[l.gen]));
                for i in 0..n {
                    for j in 0..n {
                        let x = prefix[(i, j)].clone();
                        sys[(ri * n + i, l.gen * n + j)] -= x;
                    }
                }
            }
        }
    }
    Ok(sys)
}

/// The coboundary of a module element: `g -> (1 - g) m`, over the given
/// generator order.
fn coboundary_over(
    names: &[String],
    rep: &Representation,
    m: &HomologyVector,
) -> Result<CocycleAssignment, CocycleError> {
    if m.dim() != rep.dim() {
        return Err(CocycleError::GenusMismatch);
    }
    let map = rep_indices(names, rep)?;
    let values = map
        .iter()
        .map(|&ri| {
            let moved = rep.matrix_at(ri).mul_vec(m.coords());
            let coords = m
                .coords()
                .iter()
                .zip(moved)
                .map(|(x, y)| x - y)
                .collect();
            HomologyVector::from_coords(coords)
        })
        .collect();
    Ok(CocycleAssignment::new(names.to_vec(), values))
}

/// Coboundary over the representation's own generator order.
pub fn coboundary(
    rep: &Representation,
    m: &HomologyVector,
) -> Result<CocycleAssignment, CocycleError> {
    coboundary_over(rep.names(), rep, m)
}

/// Per-relator verification record.
#[derive(Clone, Debug)]
pub struct RelatorCheck {
    pub relator_index: usize,
    pub tag: Option<RelationTag>,
    pub ok: bool,
    pub residue: HomologyVector,
}

#[derive(Clone, Debug)]
pub struct VerificationReport {
    pub checks: Vec<RelatorCheck>,
}

impl VerificationReport {
    pub fn all_ok(&self) -> bool {
        self.checks.iter().all(|c| c.ok)
    }

    pub fn to_json(&self) -> Value {
        Value::Array(
            self.checks
                .iter()
                .map(|c| {
                    json!({
                        "relator_index": c.relator_index,
                        "tag": c.tag.map(RelationTag::as_str),
                        "ok": c.ok,
                        "residue": jsonnum::vec_to_value(c.residue.coords()),
                    })
                })
                .collect(),
        )
    }
}

/// Evaluate the assignment on every relator; a cocycle leaves no residue.
pub fn verify_cocycle(
    u: &CocycleAssignment,
    p: &Presentation,
    rep: &Representation,
) -> Result<VerificationReport, CocycleError> {
    let aligned = u.aligned_to(&p.generators)?;
    let checks = p
        .relators
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let residue = evaluate(&aligned, rep, r)?;
            Ok(RelatorCheck { relator_index: i, tag: None, ok: residue.is_zero(), residue })
        })
        .collect::<Result<Vec<_>, CocycleError>>()?;
    Ok(VerificationReport { checks })
}

/// `verify_cocycle` against a tagged presentation, with tags filled in.
pub fn verify_wajnryb(
    u: &CocycleAssignment,
    wp: &WajnrybPresentation,
    rep: &Representation,
) -> Result<VerificationReport, CocycleError> {
    let mut report = verify_cocycle(u, &wp.presentation, rep)?;
    for (check, tag) in report.checks.iter_mut().zip(&wp.tags) {
        check.tag = Some(*tag);
    }
    Ok(report)
}

/// The outcome of `compute_h1`: the isomorphism type of `H^1`, lattice
/// ranks, a basis of the cocycle lattice, and representative cocycles for
/// the free generators of `H^1`.
#[derive(Clone, Debug)]
pub struct CohomologyResult {
    pub h1: AbelianInvariants,
    pub z1_rank: usize,
    pub b1_rank: usize,
    pub z1_basis: Vec<CocycleAssignment>,
    pub generator_cocycles: Vec<CocycleAssignment>,
}

/// Compute `H^1 = Z^1 / B^1` for any presentation and integer
/// representation. Representatives are lifted from Smith normal form
/// coordinates of the quotient; no basis-specific normalization is applied
/// at this level.
pub fn compute_h1(
    p: &Presentation,
    rep: &Representation,
) -> Result<CohomologyResult, CocycleError> {
    let n = rep.dim();
    let sys = relator_system(p, rep)?;
    let kernel = kernel_basis(&sys);
    let z1_rank = kernel.len();

    let mut b1 = Vec::with_capacity(n);
    for i in 0..n {
        let mut e = HomologyVector::zero(n);
        let mut coords = e.coords().to_vec();
        coords[i] = BigInt::from(1);
        e = HomologyVector::from_coords(coords);
        b1.push(coboundary_over(&p.generators, rep, &e)?.to_flat());
    }

    let q = quotient_with_representatives(&kernel, &b1)?;

    let to_assignment = |flat: &[BigInt]| {
        CocycleAssignment::from_flat(p.generators.clone(), n, flat)
    };
    let z1_basis: Vec<CocycleAssignment> = kernel.iter().map(|k| to_assignment(k)).collect();
    let generator_cocycles = q
        .free_coeffs
        .iter()
        .map(|coeffs| {
            let mut flat = vec![BigInt::zero(); p.generators.len() * n];
            for (c, k) in coeffs.iter().zip(&kernel) {
                if c.is_zero() {
                    continue;
                }
                for (acc, x) in flat.iter_mut().zip(k) {
                    *acc += c * x;
                }
            }
            to_assignment(&flat)
        })
        .collect();

    Ok(CohomologyResult {
        h1: q.invariants,
        z1_rank,
        b1_rank: q.sub_rank,
        z1_basis,
        generator_cocycles,
    })
}

/// `compute_h1` for the Wajnryb presentation with the twist representation,
/// with representatives canonicalized by the two adaptation passes and a
/// final sign normalization.
pub fn compute_h1_wajnryb(genus: usize) -> Result<CohomologyResult, CocycleError> {
    let wp = wajnryb_presentation(genus)?;
    let (_, rep) = humphries_representation(genus)?;
    let mut result = compute_h1(&wp.presentation, &rep)?;
    result.generator_cocycles = result
        .generator_cocycles
        .iter()
        .map(|raw| {
            let s = adapt_to_s(raw, &rep)?;
            let sp = adapt_to_sprime(&s.adapted, &rep)?;
            Ok(normalize_sign(sp.adapted))
        })
        .collect::<Result<Vec<_>, CocycleError>>()?;
    Ok(result)
}

/// Flip the overall sign so the first nonzero coordinate (value on `a2`
/// first, then generator order) is positive.
fn normalize_sign(u: CocycleAssignment) -> CocycleAssignment {
    let lead = u
        .get("a2")
        .into_iter()
        .flat_map(|v| v.coords().iter())
        .chain(u.values().iter().flat_map(|v| v.coords().iter()))
        .find(|x| !x.is_zero());
    match lead {
        Some(x) if x.is_negative() => u.negated(),
        _ => u,
    }
}

/// The explicit generating cocycle of `H^1` for genus >= 3: zero on every
/// chain and beta twist, and the collar class `a_2` on the twist about the
/// second collar curve.
pub fn generator_cocycle(genus: usize) -> Result<CocycleAssignment, CocycleError> {
    if genus < 3 {
        return Err(CocycleError::UnsupportedGenus(genus));
    }
    let names = humphries_names(genus);
    let mut u = CocycleAssignment::zero(names, 2 * genus);
    u.set("a2", HomologyVector::basis_a(genus, 2));
    Ok(u)
}

/// An adaptation step: the shifted cocycle `u + d(shift)` and the shift.
#[derive(Clone, Debug)]
pub struct Adaptation {
    pub adapted: CocycleAssignment,
    pub shift: HomologyVector,
}

/// Humphries-context preamble shared by the adaptation passes: aligns the
/// assignment to the standard generator order and returns the genus.
fn humphries_context(
    u: &CocycleAssignment,
    rep: &Representation,
) -> Result<(CocycleAssignment, usize), CocycleError> {
    let Some(genus) = rep.genus() else {
        return Err(CocycleError::GenusMismatch);
    };
    if u.dim() != rep.dim() {
        return Err(CocycleError::GenusMismatch);
    }
    let names = humphries_names(genus);
    let aligned = u.aligned_to(&names)?;
    for n in &names {
        if rep.index_of(n).is_none() {
            return Err(CocycleError::UnknownGenerator(n.clone()));
        }
    }
    Ok((aligned, genus))
}

/// Reads used by both adaptation passes: `x_j` is the `a_j` coefficient of
/// the value on the `j`-th collar twist, `y_j` the `b_j` coefficient of the
/// value on the `j`-th beta twist.
fn adaptation_reads(
    u: &CocycleAssignment,
    rep: &Representation,
    genus: usize,
) -> Result<(Vec<BigInt>, Vec<BigInt>), CocycleError> {
    let mut xs = Vec::with_capacity(genus);
    let mut ys = Vec::with_capacity(genus);
    for j in 1..=genus {
        let word = alpha_twist_word(j, genus)?;
        xs.push(evaluate(u, rep, &word)?.coeff_a(j).clone());
        let b = u.get(&format!("b{j}")).expect("aligned assignment");
        ys.push(b.coeff_b(j).clone());
    }
    Ok((xs, ys))
}

/// First adaptation pass. Shifting by `m = sum_j (y_j a_j - x_j b_j)`
/// clears the `a_j` coefficient of the value on every collar twist and the
/// `b_j` coefficient of the value on every beta twist; for a genuine
/// cocycle the values on all collar and beta twists then vanish entirely.
/// The input must satisfy the cocycle condition (checked against the
/// relators whenever the genus admits a presentation).
pub fn adapt_to_s(
    u: &CocycleAssignment,
    rep: &Representation,
) -> Result<Adaptation, CocycleError> {
    let (u, genus) = humphries_context(u, rep)?;
    if genus != 2 {
        let wp = wajnryb_presentation(genus)?;
        if !verify_cocycle(&u, &wp.presentation, rep)?.all_ok() {
            return Err(CocycleError::NotACocycle);
        }
    }
    let (xs, ys) = adaptation_reads(&u, rep, genus)?;
    let mut coords = vec![BigInt::zero(); 2 * genus];
    for j in 1..=genus {
        coords[2 * (j - 1)] = ys[j - 1].clone();
        coords[2 * (j - 1) + 1] = -xs[j - 1].clone();
    }
    let shift = HomologyVector::from_coords(coords);
    let delta = coboundary_over(u.names(), rep, &shift)?;
    Ok(Adaptation { adapted: u.add(&delta), shift })
}

/// Second adaptation pass, for cocycles already adapted by `adapt_to_s`.
/// The value on each chain twist must be an integer multiple `q_j c_j` of
/// the chain-curve class; shifting by `sum_j r_j b_j` with the running sums
/// `r_1 = 0`, `r_j = r_(j-1) + q_j` clears all chain-twist values, moving
/// the class's content onto the generator `a2`.
pub fn adapt_to_sprime(
    u: &CocycleAssignment,
    rep: &Representation,
) -> Result<Adaptation, CocycleError> {
    let (u, genus) = humphries_context(u, rep)?;
    let (xs, ys) = adaptation_reads(&u, rep, genus)?;
    if xs.iter().any(|x| !x.is_zero()) || ys.iter().any(|y| !y.is_zero()) {
        return Err(CocycleError::NotAdaptedToS);
    }

    let mut q = Vec::with_capacity(genus);
    for j in 1..=genus {
        let name = format!("c{j}");
        let val = u.get(&name).expect("aligned assignment");
        let qj = if j == 1 { BigInt::zero() } else { val.coeff_a(j - 1).clone() };
        let expected = HomologyVector::basis_c(genus, j).scaled(&qj);
        if val != &expected {
            return Err(CocycleError::NotProportional(name));
        }
        q.push(qj);
    }

    let mut coords = vec![BigInt::zero(); 2 * genus];
    let mut r = BigInt::zero();
    for j in 2..=genus {
        r += &q[j - 1];
        coords[2 * (j - 1) + 1] = r.clone();
    }
    let shift = HomologyVector::from_coords(coords);
    let delta = coboundary_over(u.names(), rep, &shift)?;
    Ok(Adaptation { adapted: u.add(&delta), shift })
}

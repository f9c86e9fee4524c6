//! Structure-constant representation of finite-dimensional group-graded
//! associative algebras, plus the linear-algebraic structural analyses:
//! power chains, center, commutator ideal, Lie series and the Jacobson
//! radical.

use crate::group::{FiniteAbelianGroup, GroupElement};
use crate::scalar::{MultiPoly, Rat, Scalar};
use crate::subspace::{nullspace, Subspace};
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};
use thiserror::Error;

static NEXT_ALGEBRA_ID: AtomicU64 = AtomicU64::new(1);

#[derive(Debug, Error)]
pub enum AlgebraError {
    #[error("algebra mismatch: element belongs to a different algebra")]
    AlgebraMismatch,
    #[error("group mismatch: {0}")]
    GroupMismatch(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("inconsistency: {0}")]
    Inconsistency(String),
}

/// Sparse product row: `e_i * e_j = sum of coeff * e_k` entries.
pub type SparseProduct = Vec<(usize, Rat)>;

/// Extra structure carried by matrix algebras over twisted group algebras,
/// needed by the sigma-commutator operations.
#[derive(Clone, Debug)]
pub struct CanonicalMeta {
    /// Matrix size.
    pub k: usize,
    /// Subgroup element list, sorted; eta indices refer to this.
    pub subgroup: Vec<GroupElement>,
    /// Cocycle values on subgroup pairs.
    pub sigma: BTreeMap<(GroupElement, GroupElement), Rat>,
    /// Row degree tuple of the grading.
    pub theta: Vec<GroupElement>,
    /// For each basis index: (row, column, subgroup element).
    pub cells: Vec<(usize, usize, GroupElement)>,
}

impl CanonicalMeta {
    pub fn sigma_at(&self, a: &GroupElement, b: &GroupElement) -> &Rat {
        self.sigma
            .get(&(a.clone(), b.clone()))
            .expect("cocycle table is total on the subgroup")
    }
}

/// A finite-dimensional associative algebra with a grading by a finite
/// abelian group, given by basis labels, degree assignment and sparse
/// structure constants. Omitted products are zero.
#[derive(Clone, Debug)]
pub struct GradedAlgebra {
    id: u64,
    group: FiniteAbelianGroup,
    labels: Vec<String>,
    degrees: Vec<GroupElement>,
    products: Vec<Vec<SparseProduct>>,
    unit: Option<usize>,
    canonical: Option<CanonicalMeta>,
}

/// An element of a [`GradedAlgebra`], tagged with its owner's id.
#[derive(Clone, PartialEq, Debug)]
pub struct Element<S: Scalar> {
    algebra_id: u64,
    coeffs: Vec<S>,
}

pub type RatElement = Element<Rat>;

impl GradedAlgebra {
    /// Builds an algebra without validating the axioms; `validate` reports
    /// violations and the checked constructors below reject them.
    pub fn new_unchecked(
        group: FiniteAbelianGroup,
        labels: Vec<String>,
        degrees: Vec<GroupElement>,
        products_map: BTreeMap<(usize, usize), SparseProduct>,
        unit: Option<usize>,
    ) -> Self {
        let dim = labels.len();
        assert_eq!(degrees.len(), dim, "one degree per basis element");
        let mut products = vec![vec![Vec::new(); dim]; dim];
        for ((i, j), mut entries) in products_map {
            entries.retain(|(_, c)| !c.is_zero());
            entries.sort_by_key(|(k, _)| *k);
            products[i][j] = entries;
        }
        GradedAlgebra {
            id: NEXT_ALGEBRA_ID.fetch_add(1, Ordering::Relaxed),
            group,
            labels,
            degrees,
            products,
            unit,
            canonical: None,
        }
    }

    /// Builds and validates; any axiom violation is an error.
    pub fn new(
        group: FiniteAbelianGroup,
        labels: Vec<String>,
        degrees: Vec<GroupElement>,
        products_map: BTreeMap<(usize, usize), SparseProduct>,
        unit: Option<usize>,
    ) -> Result<Self, AlgebraError> {
        let alg = Self::new_unchecked(group, labels, degrees, products_map, unit);
        let report = alg.validate();
        if report.is_valid() {
            Ok(alg)
        } else {
            Err(AlgebraError::InvalidInput(report.to_string()))
        }
    }

    pub(crate) fn set_canonical_meta(&mut self, meta: CanonicalMeta) {
        self.canonical = Some(meta);
    }

    pub fn canonical_meta(&self) -> Option<&CanonicalMeta> {
        self.canonical.as_ref()
    }

    pub fn group(&self) -> &FiniteAbelianGroup {
        &self.group
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn degree(&self, i: usize) -> &GroupElement {
        &self.degrees[i]
    }

    pub fn degrees(&self) -> &[GroupElement] {
        &self.degrees
    }

    pub fn unit_index(&self) -> Option<usize> {
        self.unit
    }

    pub fn basis_product(&self, i: usize, j: usize) -> &SparseProduct {
        &self.products[i][j]
    }

    /// Degrees with a nonzero homogeneous component, sorted.
    pub fn support(&self) -> Vec<GroupElement> {
        let set: BTreeSet<GroupElement> = self.degrees.iter().cloned().collect();
        set.into_iter().collect()
    }

    /// Basis indices of the component of degree `xi`, ascending.
    pub fn component_basis(&self, xi: &GroupElement) -> Vec<usize> {
        (0..self.dim()).filter(|&i| &self.degrees[i] == xi).collect()
    }

    pub fn zero<S: Scalar>(&self) -> Element<S> {
        Element {
            algebra_id: self.id,
            coeffs: vec![S::zero(); self.dim()],
        }
    }

    pub fn basis_element<S: Scalar>(&self, i: usize) -> Element<S> {
        let mut e = self.zero();
        e.coeffs[i] = S::from_rat(&Rat::one());
        e
    }

    pub fn from_coeffs<S: Scalar>(&self, coeffs: Vec<S>) -> Result<Element<S>, AlgebraError> {
        if coeffs.len() != self.dim() {
            return Err(AlgebraError::InvalidInput(format!(
                "expected {} coefficients, got {}",
                self.dim(),
                coeffs.len()
            )));
        }
        Ok(Element {
            algebra_id: self.id,
            coeffs,
        })
    }

    /// Element by basis label, e.g. `"E12"`.
    pub fn element_by_label(&self, label: &str) -> Option<RatElement> {
        let i = self.labels.iter().position(|l| l == label)?;
        Some(self.basis_element(i))
    }

    fn check_owner<S: Scalar>(&self, a: &Element<S>) -> Result<(), AlgebraError> {
        if a.algebra_id != self.id {
            return Err(AlgebraError::AlgebraMismatch);
        }
        Ok(())
    }

    pub fn add<S: Scalar>(
        &self,
        a: &Element<S>,
        b: &Element<S>,
    ) -> Result<Element<S>, AlgebraError> {
        self.check_owner(a)?;
        self.check_owner(b)?;
        Ok(Element {
            algebra_id: self.id,
            coeffs: a
                .coeffs
                .iter()
                .zip(&b.coeffs)
                .map(|(x, y)| x.add(y))
                .collect(),
        })
    }

    pub fn sub<S: Scalar>(
        &self,
        a: &Element<S>,
        b: &Element<S>,
    ) -> Result<Element<S>, AlgebraError> {
        let nb = self.scale_element(b, &-Rat::one())?;
        self.add(a, &nb)
    }

    pub fn scale_element<S: Scalar>(
        &self,
        a: &Element<S>,
        c: &Rat,
    ) -> Result<Element<S>, AlgebraError> {
        self.check_owner(a)?;
        Ok(Element {
            algebra_id: self.id,
            coeffs: a.coeffs.iter().map(|x| x.scale(c)).collect(),
        })
    }

    /// Bilinear product from the structure constants.
    pub fn mul<S: Scalar>(
        &self,
        a: &Element<S>,
        b: &Element<S>,
    ) -> Result<Element<S>, AlgebraError> {
        self.check_owner(a)?;
        self.check_owner(b)?;
        let mut out = vec![S::zero(); self.dim()];
        for (i, ca) in a.coeffs.iter().enumerate() {
            if ca.is_zero() {
                continue;
            }
            for (j, cb) in b.coeffs.iter().enumerate() {
                if cb.is_zero() {
                    continue;
                }
                let cab = ca.mul(cb);
                for (k, c) in &self.products[i][j] {
                    out[*k] = out[*k].add(&cab.scale(c));
                }
            }
        }
        Ok(Element {
            algebra_id: self.id,
            coeffs: out,
        })
    }

    pub fn commutator<S: Scalar>(
        &self,
        a: &Element<S>,
        b: &Element<S>,
    ) -> Result<Element<S>, AlgebraError> {
        let ab = self.mul(a, b)?;
        let ba = self.mul(b, a)?;
        self.sub(&ab, &ba)
    }

    /// The part of `a` lying in the component of degree `xi`.
    pub fn homogeneous_component<S: Scalar>(
        &self,
        a: &Element<S>,
        xi: &GroupElement,
    ) -> Result<Element<S>, AlgebraError> {
        self.check_owner(a)?;
        let coeffs = a
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| if &self.degrees[i] == xi { c.clone() } else { S::zero() })
            .collect();
        Ok(Element {
            algebra_id: self.id,
            coeffs,
        })
    }

    /// True if `a` lies entirely in the component of degree `xi`.
    pub fn is_homogeneous_of_degree<S: Scalar>(&self, a: &Element<S>, xi: &GroupElement) -> bool {
        a.coeffs
            .iter()
            .enumerate()
            .all(|(i, c)| c.is_zero() || &self.degrees[i] == xi)
    }

    /// Checks the grading law, associativity on all basis triples and the
    /// unit axiom when a unit is declared. An empty report means valid.
    pub fn validate(&self) -> ValidationReport {
        let mut report = ValidationReport::default();
        let dim = self.dim();
        for i in 0..dim {
            for j in 0..dim {
                let expected = self
                    .group
                    .add(&self.degrees[i], &self.degrees[j])
                    .expect("degrees live in the grading group");
                for (k, c) in &self.products[i][j] {
                    if !c.is_zero() && self.degrees[*k] != expected {
                        report.grading_violations.push((i, j, *k));
                    }
                }
            }
        }
        for i in 0..dim {
            for j in 0..dim {
                for k in 0..dim {
                    let left = self.mul_basis_assoc(i, j, k, true);
                    let right = self.mul_basis_assoc(i, j, k, false);
                    if left != right {
                        report.associativity_violations.push((i, j, k));
                    }
                }
            }
        }
        if let Some(u) = self.unit {
            if !self.degrees[u].is_identity() {
                report.unit_violations.push(u);
            }
            for i in 0..dim {
                let ui = sparse_to_dense(dim, &self.products[u][i]);
                let iu = sparse_to_dense(dim, &self.products[i][u]);
                let mut expected = vec![Rat::zero(); dim];
                expected[i] = Rat::one();
                if ui != expected || iu != expected {
                    report.unit_violations.push(i);
                }
            }
        }
        report
    }

    fn mul_basis_assoc(&self, i: usize, j: usize, k: usize, left_first: bool) -> Vec<Rat> {
        let dim = self.dim();
        let mut out = vec![Rat::zero(); dim];
        if left_first {
            for (m, c) in &self.products[i][j] {
                for (n, d) in &self.products[*m][k] {
                    out[*n] += &(c * d);
                }
            }
        } else {
            for (m, c) in &self.products[j][k] {
                for (n, d) in &self.products[i][*m] {
                    out[*n] += &(c * d);
                }
            }
        }
        out
    }

    /// Componentwise direct product. Both factors must be graded by the
    /// same group.
    pub fn direct_product(&self, other: &GradedAlgebra) -> Result<GradedAlgebra, AlgebraError> {
        if self.group != other.group {
            return Err(AlgebraError::GroupMismatch(format!(
                "{} vs {}",
                self.group, other.group
            )));
        }
        let da = self.dim();
        let mut labels: Vec<String> = self.labels.iter().map(|l| format!("l.{l}")).collect();
        labels.extend(other.labels.iter().map(|l| format!("r.{l}")));
        let mut degrees = self.degrees.clone();
        degrees.extend(other.degrees.iter().cloned());
        let mut products = BTreeMap::new();
        for i in 0..da {
            for j in 0..da {
                if !self.products[i][j].is_empty() {
                    products.insert((i, j), self.products[i][j].clone());
                }
            }
        }
        for i in 0..other.dim() {
            for j in 0..other.dim() {
                if !other.products[i][j].is_empty() {
                    let shifted = other.products[i][j]
                        .iter()
                        .map(|(k, c)| (k + da, c.clone()))
                        .collect();
                    products.insert((i + da, j + da), shifted);
                }
            }
        }
        Ok(GradedAlgebra::new_unchecked(
            self.group.clone(),
            labels,
            degrees,
            products,
            None,
        ))
    }

    pub fn render_element<S: Scalar + fmt::Display>(&self, a: &Element<S>) -> String {
        let mut parts = Vec::new();
        for (i, c) in a.coeffs.iter().enumerate() {
            if !c.is_zero() {
                parts.push(format!("{c}*{}", self.labels[i]));
            }
        }
        if parts.is_empty() {
            "0".to_string()
        } else {
            parts.join(" + ")
        }
    }
}

fn sparse_to_dense(dim: usize, entries: &SparseProduct) -> Vec<Rat> {
    let mut out = vec![Rat::zero(); dim];
    for (k, c) in entries {
        out[*k] += c;
    }
    out
}

impl<S: Scalar> Element<S> {
    pub fn coeffs(&self) -> &[S] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(S::is_zero)
    }
}

pub type GenericElement = Element<MultiPoly>;

/// Validation outcome; empty means the axioms hold.
#[derive(Default, Debug, Clone)]
pub struct ValidationReport {
    /// Triples `(i, j, k)` where `e_k` appears in `e_i e_j` outside the
    /// component of degree `deg(i) + deg(j)`.
    pub grading_violations: Vec<(usize, usize, usize)>,
    /// Triples with `(e_i e_j) e_k != e_i (e_j e_k)`.
    pub associativity_violations: Vec<(usize, usize, usize)>,
    /// Basis indices on which the declared unit fails to act as identity.
    pub unit_violations: Vec<usize>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.grading_violations.is_empty()
            && self.associativity_violations.is_empty()
            && self.unit_violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_valid() {
            return write!(f, "valid");
        }
        for (i, j, k) in &self.grading_violations {
            writeln!(f, "grading law violated at ({i},{j}) -> {k}")?;
        }
        for (i, j, k) in &self.associativity_violations {
            writeln!(f, "associativity violated at ({i},{j},{k})")?;
        }
        for i in &self.unit_violations {
            writeln!(f, "unit axiom violated at basis {i}")?;
        }
        Ok(())
    }
}

/// Nilpotency verdict of a chain computation.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Nilpotency {
    /// Least `n` with the n-th power (or term) zero.
    Nilpotent(usize),
    NotNilpotent,
}

impl fmt::Display for Nilpotency {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Nilpotency::Nilpotent(n) => write!(f, "nilpotent of index {n}"),
            Nilpotency::NotNilpotent => write!(f, "not nilpotent"),
        }
    }
}

/// Span of pairwise products of two subspaces, `span{u v}`.
pub fn span_product(alg: &GradedAlgebra, u: &Subspace, v: &Subspace) -> Subspace {
    let mut out = Subspace::zero(alg.dim());
    for a in u.basis() {
        let ea = alg.from_coeffs(a.clone()).unwrap();
        for b in v.basis() {
            let eb = alg.from_coeffs(b.clone()).unwrap();
            let ab = alg.mul(&ea, &eb).unwrap();
            out.insert(ab.coeffs().to_vec());
        }
    }
    out
}

/// Span of pairwise commutators `span{[u, v]}`.
pub fn span_brackets(alg: &GradedAlgebra, u: &Subspace, v: &Subspace) -> Subspace {
    let mut out = Subspace::zero(alg.dim());
    for a in u.basis() {
        let ea = alg.from_coeffs(a.clone()).unwrap();
        for b in v.basis() {
            let eb = alg.from_coeffs(b.clone()).unwrap();
            let c = alg.commutator(&ea, &eb).unwrap();
            out.insert(c.coeffs().to_vec());
        }
    }
    out
}

/// The chain `A >= A^2 >= A^3 >= ...` up to and including the first stable
/// term. Strictly decreases until stabilization, so at most `dim + 1`
/// entries appear.
pub fn power_chain(alg: &GradedAlgebra) -> Vec<Subspace> {
    let full = Subspace::full(alg.dim());
    let mut chain = vec![full.clone()];
    loop {
        let prev = chain.last().unwrap();
        let next = span_product(alg, &full, prev);
        if &next == prev {
            break;
        }
        chain.push(next.clone());
        if next.is_zero() {
            break;
        }
    }
    chain
}

pub fn nilpotency_index(alg: &GradedAlgebra) -> Nilpotency {
    let chain = power_chain(alg);
    match chain.iter().position(Subspace::is_zero) {
        Some(p) => Nilpotency::Nilpotent(p + 1),
        None => Nilpotency::NotNilpotent,
    }
}

/// Power chain of a subspace viewed as a (non-unital) subalgebra; only
/// meaningful when `sub` is closed under products, as ideals are.
pub fn subalgebra_nilpotency(alg: &GradedAlgebra, sub: &Subspace) -> Nilpotency {
    let mut chain = vec![sub.clone()];
    loop {
        let prev = chain.last().unwrap();
        if prev.is_zero() {
            break;
        }
        let next = span_product(alg, sub, prev);
        if &next == prev {
            return Nilpotency::NotNilpotent;
        }
        chain.push(next);
    }
    Nilpotency::Nilpotent(chain.len())
}

/// Exact solution of `[z, e_i] = 0` for all basis elements.
pub fn center(alg: &GradedAlgebra) -> Subspace {
    let dim = alg.dim();
    let mut constraints = Vec::new();
    for i in 0..dim {
        // Row block for [z, e_i]: coordinate k of sum_j z_j (e_j e_i - e_i e_j).
        let mut rows = vec![vec![Rat::zero(); dim]; dim];
        for j in 0..dim {
            for (k, c) in alg.basis_product(j, i) {
                rows[*k][j] += c;
            }
            for (k, c) in alg.basis_product(i, j) {
                rows[*k][j] += &-c;
            }
        }
        constraints.extend(rows.into_iter().filter(|r| r.iter().any(|c| !c.is_zero())));
    }
    Subspace::from_vectors(dim, nullspace(dim, constraints))
}

/// True iff the component of the neutral degree commutes with everything.
pub fn is_neutral_central(alg: &GradedAlgebra) -> bool {
    let e = alg.group().identity();
    let neutral = alg.component_basis(&e);
    for &i in &neutral {
        for j in 0..alg.dim() {
            let a: RatElement = alg.basis_element(i);
            let b: RatElement = alg.basis_element(j);
            if !alg.commutator(&a, &b).unwrap().is_zero() {
                return false;
            }
        }
    }
    true
}

/// Closure of a seed subspace under left and right multiplication by basis
/// elements; terminates because the dimension is finite.
pub fn ideal_closure(alg: &GradedAlgebra, seed: &Subspace) -> Subspace {
    let mut current = seed.clone();
    loop {
        let mut next = current.clone();
        for v in current.basis() {
            let ev = alg.from_coeffs(v.clone()).unwrap();
            for i in 0..alg.dim() {
                let ei: RatElement = alg.basis_element(i);
                next.insert(alg.mul(&ei, &ev).unwrap().coeffs().to_vec());
                next.insert(alg.mul(&ev, &ei).unwrap().coeffs().to_vec());
            }
        }
        if next == current {
            return current;
        }
        current = next;
    }
}

/// The two-sided ideal generated by all commutators.
pub fn commutator_ideal(alg: &GradedAlgebra) -> Subspace {
    let full = Subspace::full(alg.dim());
    let seed = span_brackets(alg, &full, &full);
    ideal_closure(alg, &seed)
}

pub fn commutator_ideal_nilpotency(alg: &GradedAlgebra) -> Nilpotency {
    let ideal = commutator_ideal(alg);
    if ideal.is_zero() {
        return Nilpotency::Nilpotent(1);
    }
    subalgebra_nilpotency(alg, &ideal)
}

/// Lower central series `L_1 = [A,A]`, `L_{k+1} = [A, L_k]` and derived
/// series `D_1 = [A,A]`, `D_{k+1} = [D_k, D_k]`, both up to and including
/// the first stable term.
pub fn lie_series(alg: &GradedAlgebra) -> (Vec<Subspace>, Vec<Subspace>) {
    let full = Subspace::full(alg.dim());
    let first = span_brackets(alg, &full, &full);

    let mut lower = vec![first.clone()];
    loop {
        let prev = lower.last().unwrap();
        if prev.is_zero() {
            break;
        }
        let next = span_brackets(alg, &full, prev);
        if &next == prev {
            break;
        }
        lower.push(next);
    }

    let mut derived = vec![first];
    loop {
        let prev = derived.last().unwrap();
        if prev.is_zero() {
            break;
        }
        let next = span_brackets(alg, prev, prev);
        if &next == prev {
            break;
        }
        derived.push(next);
    }

    (lower, derived)
}

pub fn is_lie_nilpotent(alg: &GradedAlgebra) -> bool {
    let (lower, _) = lie_series(alg);
    lower.last().unwrap().is_zero()
}

pub fn is_lie_solvable(alg: &GradedAlgebra) -> bool {
    let (_, derived) = lie_series(alg);
    derived.last().unwrap().is_zero()
}

/// Jacobson radical over the rationals: kernel of the trace form
/// `(x, y) -> tr(L_x L_y)` shrunk to the largest two-sided ideal it
/// contains, then certified nilpotent. A certification failure signals an
/// invalid input algebra.
pub fn jacobson_radical(alg: &GradedAlgebra) -> Result<Subspace, AlgebraError> {
    let dim = alg.dim();
    let mut gram = vec![vec![Rat::zero(); dim]; dim];
    for i in 0..dim {
        for j in 0..dim {
            // tr(L_i L_j) = sum_k coefficient of e_k in e_i (e_j e_k).
            let mut tr = Rat::zero();
            for k in 0..dim {
                for (l, c) in alg.basis_product(j, k) {
                    for (m, d) in alg.basis_product(i, *l) {
                        if *m == k {
                            tr += &(c * d);
                        }
                    }
                }
            }
            gram[i][j] = tr;
        }
    }
    let kernel = Subspace::from_vectors(dim, nullspace(dim, gram));

    // Largest two-sided ideal inside the kernel.
    let mut current = kernel;
    loop {
        let mut constraints: Vec<Vec<Rat>> = Vec::new();
        // x stays, e_i x and x e_i must stay; express as linear constraints
        // on coordinates of x in the current space's coordinates. Work
        // directly: next = {x in current : e_i x in current and x e_i in current}.
        let mut next = Subspace::zero(dim);
        'vectors: for v in current.basis() {
            let ev = alg.from_coeffs(v.clone()).unwrap();
            for i in 0..dim {
                let ei: RatElement = alg.basis_element(i);
                let left = alg.mul(&ei, &ev).unwrap();
                let right = alg.mul(&ev, &ei).unwrap();
                if !current.contains(left.coeffs()) || !current.contains(right.coeffs()) {
                    continue 'vectors;
                }
            }
            next.insert(v.clone());
        }
        // Keeping only closed basis vectors may under-shoot; solve exactly
        // instead when the quick filter changed something.
        if next.dim() == current.dim() {
            break;
        }
        // Exact step: constraints say the coordinates of e_i x and x e_i in
        // the quotient by `current` vanish.
        let basis = current.basis().to_vec();
        let r = basis.len();
        for i in 0..dim {
            let ei: RatElement = alg.basis_element(i);
            for side in 0..2 {
                // Image of each basis vector under multiplication by e_i.
                let images: Vec<Vec<Rat>> = basis
                    .iter()
                    .map(|v| {
                        let ev = alg.from_coeffs(v.clone()).unwrap();
                        let w = if side == 0 {
                            alg.mul(&ei, &ev).unwrap()
                        } else {
                            alg.mul(&ev, &ei).unwrap()
                        };
                        w.coeffs().to_vec()
                    })
                    .collect();
                // Constraint rows: for each ambient coordinate direction not
                // explained by `current`, the combination must vanish.
                for coord in residual_functionals(&current) {
                    let row: Vec<Rat> = images
                        .iter()
                        .map(|img| {
                            img.iter()
                                .zip(&coord)
                                .map(|(a, b)| a * b)
                                .fold(Rat::zero(), |acc, t| &acc + &t)
                        })
                        .collect();
                    if row.iter().any(|c| !c.is_zero()) {
                        constraints.push(row);
                    }
                }
            }
        }
        let coeff_solutions = nullspace(r, constraints);
        let mut solved = Subspace::zero(dim);
        for sol in coeff_solutions {
            let mut vec = vec![Rat::zero(); dim];
            for (c, b) in sol.iter().zip(&basis) {
                for (slot, bv) in vec.iter_mut().zip(b) {
                    *slot = &*slot + &(c * bv);
                }
            }
            solved.insert(vec);
        }
        if solved == current {
            break;
        }
        current = solved;
    }

    match subalgebra_nilpotency(alg, &current) {
        Nilpotency::Nilpotent(_) => Ok(current),
        Nilpotency::NotNilpotent => Err(AlgebraError::Inconsistency(
            "radical candidate is not nilpotent".into(),
        )),
    }
}

/// Linear functionals vanishing on `space`, one per missing pivot
/// direction, used to express membership constraints.
fn residual_functionals(space: &Subspace) -> Vec<Vec<Rat>> {
    let n = space.ambient();
    let mut pivots = vec![false; n];
    for row in space.basis() {
        let p = row.iter().position(|c| !c.is_zero()).unwrap();
        pivots[p] = true;
    }
    // For each non-pivot coordinate f, the functional x -> (reduce x).f,
    // realized by reducing the standard dual basis against the rows.
    let mut out = Vec::new();
    for f in 0..n {
        if pivots[f] {
            continue;
        }
        let mut functional = vec![Rat::zero(); n];
        functional[f] = Rat::one();
        for row in space.basis() {
            let p = row.iter().position(|c| !c.is_zero()).unwrap();
            // subtract row[f] from the p-coordinate of the functional
            functional[p] = &functional[p] - &row[f];
        }
        out.push(functional);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{grassmann, nil_one_dim, pauli_m2, quaternions, witness_w3};

    fn m2_trivial() -> GradedAlgebra {
        // Full 2x2 matrix algebra, trivially graded.
        let g = FiniteAbelianGroup::trivial();
        let e = g.identity();
        let labels: Vec<String> = ["E11", "E12", "E21", "E22"]
            .iter()
            .map(|s| s.to_string())
            .collect();
        let idx = |r: usize, c: usize| (r - 1) * 2 + (c - 1);
        let mut products = BTreeMap::new();
        for r in 1..=2 {
            for c in 1..=2 {
                for r2 in 1..=2 {
                    for c2 in 1..=2 {
                        if c == r2 {
                            products.insert(
                                (idx(r, c), idx(r2, c2)),
                                vec![(idx(r, c2), Rat::one())],
                            );
                        }
                    }
                }
            }
        }
        GradedAlgebra::new(g, labels, vec![e.clone(); 4], products, None).unwrap()
    }

    #[test]
    fn validate_catches_corruption() {
        let mut alg = pauli_m2();
        assert!(alg.validate().is_valid());
        // Perturb one product constant: unit * unit gains a spurious term.
        alg.products[0][0].push((1, Rat::one()));
        let report = alg.validate();
        assert!(!report.grading_violations.is_empty());
    }

    #[test]
    fn support_and_components() {
        let alg = pauli_m2();
        assert_eq!(alg.support().len(), 4);
        let e = alg.group().identity();
        assert_eq!(alg.component_basis(&e), vec![0]);
    }

    #[test]
    fn homogeneous_component_of_basis_element() {
        let alg = quaternions();
        let i: RatElement = alg.basis_element(1);
        let d = alg.degree(1).clone();
        assert_eq!(alg.homogeneous_component(&i, &d).unwrap(), i);
        let e = alg.group().identity();
        assert!(alg.homogeneous_component(&i, &e).unwrap().is_zero());
    }

    #[test]
    fn owner_mismatch_is_an_error() {
        let a = pauli_m2();
        let b = pauli_m2();
        let x: RatElement = a.basis_element(0);
        let y: RatElement = b.basis_element(0);
        assert!(matches!(a.mul(&x, &y), Err(AlgebraError::AlgebraMismatch)));
    }

    #[test]
    fn nilpotency_of_fixtures() {
        assert_eq!(nilpotency_index(&nil_one_dim()), Nilpotency::Nilpotent(2));
        // Longest nonzero product in the rank-3 exterior algebra is e1 e2 e3.
        assert_eq!(nilpotency_index(&grassmann(3)), Nilpotency::Nilpotent(4));
        assert_eq!(nilpotency_index(&m2_trivial()), Nilpotency::NotNilpotent);
    }

    #[test]
    fn center_of_m2_is_scalar() {
        let alg = m2_trivial();
        let z = center(&alg);
        assert_eq!(z.dim(), 1);
        // E11 + E22 spans the center.
        let id = vec![Rat::one(), Rat::zero(), Rat::zero(), Rat::one()];
        assert!(z.contains(&id));
    }

    #[test]
    fn neutral_centrality() {
        assert!(is_neutral_central(&quaternions()));
        assert!(!is_neutral_central(&m2_trivial()));
    }

    #[test]
    fn commutator_ideal_of_fixtures() {
        // Commutative: zero ideal, index 1.
        let g = FiniteAbelianGroup::trivial();
        let e = g.identity();
        let mut products = BTreeMap::new();
        products.insert((0, 0), vec![(0, Rat::one())]);
        let comm =
            GradedAlgebra::new(g, vec!["u".into()], vec![e], products, Some(0)).unwrap();
        assert!(commutator_ideal(&comm).is_zero());
        assert_eq!(commutator_ideal_nilpotency(&comm), Nilpotency::Nilpotent(1));

        // Quaternions: [i, j] = 2k generates a unit; ideal is everything.
        let q = quaternions();
        assert_eq!(commutator_ideal(&q).dim(), 4);
        assert_eq!(commutator_ideal_nilpotency(&q), Nilpotency::NotNilpotent);

        // Witness algebra: the only commutator is [u, v] = w and w kills
        // everything on both sides.
        let w3 = witness_w3();
        let ideal = commutator_ideal(&w3);
        assert_eq!(ideal.dim(), 1);
        let w_vec = vec![Rat::zero(), Rat::zero(), Rat::one()];
        assert!(ideal.contains(&w_vec));
        assert_eq!(commutator_ideal_nilpotency(&w3), Nilpotency::Nilpotent(2));
    }

    #[test]
    fn lie_series_of_fixtures() {
        assert!(is_lie_nilpotent(&grassmann(3)));
        assert!(is_lie_solvable(&grassmann(3)));

        // Derived series of the quaternions stabilizes at span{i, j, k}.
        let q = quaternions();
        let (_, derived) = lie_series(&q);
        let last = derived.last().unwrap();
        assert_eq!(last.dim(), 3);
        assert!(!is_lie_solvable(&q));
        assert!(!is_lie_nilpotent(&q));

        // Commutative algebras vanish at the first step of both series.
        let g = FiniteAbelianGroup::trivial();
        let e = g.identity();
        let mut products = BTreeMap::new();
        products.insert((0, 0), vec![(0, Rat::one())]);
        let comm =
            GradedAlgebra::new(g, vec!["u".into()], vec![e], products, Some(0)).unwrap();
        let (lower, derived) = lie_series(&comm);
        assert_eq!(lower.len(), 1);
        assert!(lower[0].is_zero());
        assert!(derived[0].is_zero());
    }

    #[test]
    fn lie_nilpotent_implies_solvable_on_fixtures() {
        for alg in [pauli_m2(), quaternions(), grassmann(3), witness_w3(), nil_one_dim()] {
            if is_lie_nilpotent(&alg) {
                assert!(is_lie_solvable(&alg));
            }
        }
    }

    #[test]
    fn radical_of_simple_algebra_is_zero() {
        let rad = jacobson_radical(&m2_trivial()).unwrap();
        assert!(rad.is_zero());
    }

    #[test]
    fn radical_of_triangular_algebra() {
        // Oracle (by hand): on basis (E11, E12, E22) the trace form Gram
        // matrix is [[2,0,0],[0,0,0],[0,0,1]], so the kernel is span{E12}.
        let g = FiniteAbelianGroup::trivial();
        let e = g.identity();
        let labels: Vec<String> = ["E11", "E12", "E22"].iter().map(|s| s.to_string()).collect();
        let mut products = BTreeMap::new();
        products.insert((0, 0), vec![(0, Rat::one())]);
        products.insert((0, 1), vec![(1, Rat::one())]);
        products.insert((1, 2), vec![(1, Rat::one())]);
        products.insert((2, 2), vec![(2, Rat::one())]);
        let alg =
            GradedAlgebra::new(g, labels, vec![e.clone(), e.clone(), e], products, None).unwrap();
        let rad = jacobson_radical(&alg).unwrap();
        assert_eq!(rad.dim(), 1);
        assert!(rad.contains(&[Rat::zero(), Rat::one(), Rat::zero()]));
    }

    #[test]
    fn radical_of_nilpotent_algebra_is_everything() {
        let alg = nil_one_dim();
        let rad = jacobson_radical(&alg).unwrap();
        assert_eq!(rad.dim(), 1);
    }

    #[test]
    fn direct_product_shapes() {
        let q = quaternions();
        let h = pauli_m2();
        let prod = q.direct_product(&h).unwrap();
        assert_eq!(prod.dim(), 8);
        assert!(prod.validate().is_valid());
        let mut support = q.support();
        support.extend(h.support());
        support.sort();
        support.dedup();
        assert_eq!(prod.support(), support);
    }

    #[test]
    fn power_chain_is_decreasing() {
        for alg in [pauli_m2(), grassmann(4), witness_w3()] {
            let chain = power_chain(&alg);
            for w in chain.windows(2) {
                assert!(w[0].contains_subspace(&w[1]));
                assert!(w[0].dim() >= w[1].dim());
            }
            assert!(chain.len() <= alg.dim() + 1);
        }
    }

    #[test]
    fn center_contains_unit_and_commutes() {
        for alg in [pauli_m2(), quaternions()] {
            let z = center(&alg);
            if let Some(u) = alg.unit_index() {
                let unit: RatElement = alg.basis_element(u);
                assert!(z.contains(unit.coeffs()));
            }
            for zb in z.basis() {
                let ez = alg.from_coeffs(zb.clone()).unwrap();
                for i in 0..alg.dim() {
                    let ei: RatElement = alg.basis_element(i);
                    assert!(alg.commutator(&ez, &ei).unwrap().is_zero());
                }
            }
        }
    }
}

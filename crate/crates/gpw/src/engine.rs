//! Exact decision procedures for graded polynomial identities.
//!
//! The main pipeline splits a polynomial into homogeneous components
//! (total degree, then per-variable multiplicities), polarizes repeated
//! variables into fresh ones, and decides each multilinear piece by
//! evaluating it on every tuple of homogeneous basis elements with
//! matching degrees. A second, independent oracle substitutes generic
//! elements with indeterminate coordinates and tests the coordinate
//! polynomials for zero. Both are exact over the rationals; there is no
//! sampling and resource ceilings fail loudly.
//!
//! The basis-tuple loop is data-parallel: evaluations are independent and
//! the verdict aggregation is a first-in-order reduction, so the parallel
//! path reports the same witness as the sequential one.

use crate::algebra::{
    is_neutral_central as algebra_is_neutral_central, AlgebraError, GradedAlgebra, RatElement,
};
use crate::group::GroupElement;
use crate::poly::{
    fg_expand, FgTable, GradedMonomial, GradedPolynomial, GradedVariable, PolyError, VarDegree,
};
use crate::scalar::{MultiPoly, Rat};
use crate::subspace::{nullspace, Subspace};
use itertools::Itertools;
use std::collections::BTreeMap;
use std::fmt;
use thiserror::Error;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[derive(Debug, Error)]
pub enum EngineError {
    #[error("resource ceiling exceeded: needs {needed} evaluations, ceiling is {ceiling}")]
    Resource { needed: u128, ceiling: u64 },
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("contract violated: {0}")]
    Contract(String),
    #[error("not a graded identity; witness: {0}")]
    NotAnIdentity(Box<Witness>),
    #[error("unsupported operation: {0}")]
    Unsupported(String),
    #[error("internal inconsistency: {0}")]
    Inconsistency(String),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// Tuning knobs for the decision procedures. `max_evals` is the hard
/// ceiling on exact evaluations (the `GPW_MAX_EVALS` environment variable
/// configures it on the command line); exceeding it is an error, never a
/// sampled answer.
#[derive(Clone, Debug)]
pub struct EngineConfig {
    pub max_evals: u64,
    pub max_search_vars: usize,
    pub parallel: bool,
}

impl Default for EngineConfig {
    fn default() -> Self {
        EngineConfig {
            max_evals: 10_000_000,
            max_search_vars: 4,
            parallel: cfg!(feature = "parallel"),
        }
    }
}

/// A reproducible counterexample: the component that failed, one element
/// per variable, and the nonzero value of the evaluation.
#[derive(Clone, Debug, PartialEq)]
pub struct Witness {
    pub component: String,
    pub assignment: Vec<(GradedVariable, Vec<Rat>)>,
    pub value: Vec<Rat>,
}

impl Witness {
    /// Renders the assignment with basis labels where possible.
    pub fn describe(&self, alg: &GradedAlgebra) -> String {
        let mut parts = Vec::new();
        for (v, coeffs) in &self.assignment {
            let elem = alg.from_coeffs(coeffs.clone()).unwrap();
            parts.push(format!("{v} -> {}", alg.render_element(&elem)));
        }
        let value = alg.from_coeffs(self.value.clone()).unwrap();
        format!(
            "component {} with {} evaluates to {}",
            self.component,
            parts.join(", "),
            alg.render_element(&value)
        )
    }

    /// Re-evaluates the stored assignment against the component it was
    /// found for; sound witnesses return a nonzero element.
    pub fn reevaluate(&self, alg: &GradedAlgebra) -> Result<RatElement, EngineError> {
        let poly = crate::poly::parse(&self.component)?;
        let mut assignment = BTreeMap::new();
        for (v, coeffs) in &self.assignment {
            assignment.insert(v.clone(), alg.from_coeffs(coeffs.clone())?);
        }
        poly.evaluate(alg, &assignment).map_err(|e| match e {
            crate::poly::EvalError::Poly(p) => EngineError::Poly(p),
            crate::poly::EvalError::Algebra(a) => EngineError::Algebra(a),
        })
    }
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "component {}; ", self.component)?;
        for (v, coeffs) in &self.assignment {
            let rendered: Vec<String> = coeffs.iter().map(|c| c.to_string()).collect();
            write!(f, "{v} -> [{}]; ", rendered.join(","))?;
        }
        let value: Vec<String> = self.value.iter().map(|c| c.to_string()).collect();
        write!(f, "value [{}]", value.join(","))
    }
}

/// Outcome of an identity check.
#[derive(Clone, Debug, PartialEq)]
pub struct Verdict {
    pub holds: bool,
    pub witness: Option<Witness>,
}

impl Verdict {
    fn holds() -> Self {
        Verdict {
            holds: true,
            witness: None,
        }
    }

    fn fails(witness: Witness) -> Self {
        Verdict {
            holds: false,
            witness: Some(witness),
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.holds {
            write!(f, "HOLDS")
        } else {
            write!(f, "FAILS")
        }
    }
}

/// One multilinear component ready for tuple evaluation.
struct MultilinearTask {
    poly: GradedPolynomial,
    /// Sorted variable list.
    vars: Vec<GradedVariable>,
    /// Monomials as positions into `vars`, with coefficients.
    monomials: Vec<(Vec<usize>, Rat)>,
    /// Per-variable basis index domain.
    domains: Vec<Vec<usize>>,
}

impl MultilinearTask {
    fn build(alg: &GradedAlgebra, poly: GradedPolynomial) -> Result<Self, EngineError> {
        let vars: Vec<GradedVariable> = poly.variables().into_iter().collect();
        let mut monomials = Vec::new();
        for (m, c) in poly.terms() {
            let positions: Result<Vec<usize>, EngineError> = m
                .vars()
                .iter()
                .map(|v| {
                    vars.binary_search(v)
                        .map_err(|_| EngineError::Inconsistency("variable index".into()))
                })
                .collect();
            monomials.push((positions?, c.clone()));
        }
        let mut domains = Vec::with_capacity(vars.len());
        for v in &vars {
            let domain = match v.degree.resolve(alg.group())? {
                Some(d) => alg.component_basis(&d),
                None => (0..alg.dim()).collect(),
            };
            domains.push(domain);
        }
        Ok(MultilinearTask {
            poly,
            vars,
            monomials,
            domains,
        })
    }

    fn tuple_count(&self) -> u128 {
        self.domains.iter().map(|d| d.len() as u128).product()
    }

    fn decode(&self, mut t: u128) -> Vec<usize> {
        let mut picks = vec![0usize; self.domains.len()];
        for (slot, domain) in self.domains.iter().enumerate().rev() {
            let n = domain.len() as u128;
            picks[slot] = domain[(t % n) as usize];
            t /= n;
        }
        picks
    }

    /// Evaluates on the basis tuple; `Some(coords)` when nonzero.
    fn eval(&self, alg: &GradedAlgebra, picks: &[usize]) -> Option<Vec<Rat>> {
        let mut acc: BTreeMap<usize, Rat> = BTreeMap::new();
        for (positions, coeff) in &self.monomials {
            // Fold the sparse product of the chosen basis elements.
            let mut current: Vec<(usize, Rat)> = vec![(picks[positions[0]], Rat::one())];
            for &pos in &positions[1..] {
                let b = picks[pos];
                let mut next: Vec<(usize, Rat)> = Vec::new();
                for (k, c) in &current {
                    for (l, d) in alg.basis_product(*k, b) {
                        match next.binary_search_by_key(l, |(i, _)| *i) {
                            Ok(found) => {
                                let updated = &next[found].1 + &(c * d);
                                if updated.is_zero() {
                                    next.remove(found);
                                } else {
                                    next[found].1 = updated;
                                }
                            }
                            Err(insert_at) => next.insert(insert_at, (*l, c * d)),
                        }
                    }
                }
                current = next;
                if current.is_empty() {
                    break;
                }
            }
            for (k, c) in current {
                let entry = acc.entry(k).or_insert_with(Rat::zero);
                *entry += &(&c * coeff);
                if entry.is_zero() {
                    acc.remove(&k);
                }
            }
        }
        if acc.is_empty() {
            None
        } else {
            let mut out = vec![Rat::zero(); alg.dim()];
            for (k, c) in acc {
                out[k] = c;
            }
            Some(out)
        }
    }

    /// First failing tuple in lexicographic order, as a witness.
    fn first_failure(&self, alg: &GradedAlgebra, parallel: bool) -> Option<Witness> {
        let total = self.tuple_count();
        if total == 0 {
            return None;
        }
        let hit = if parallel {
            self.scan_parallel(alg, total)
        } else {
            self.scan_sequential(alg, total)
        };
        hit.map(|(t, value)| {
            let picks = self.decode(t);
            let assignment = self
                .vars
                .iter()
                .cloned()
                .zip(picks.iter().map(|&b| {
                    let mut coeffs = vec![Rat::zero(); alg.dim()];
                    coeffs[b] = Rat::one();
                    coeffs
                }))
                .collect();
            Witness {
                component: self.poly.to_string(),
                assignment,
                value,
            }
        })
    }

    fn scan_sequential(&self, alg: &GradedAlgebra, total: u128) -> Option<(u128, Vec<Rat>)> {
        (0..total).find_map(|t| self.eval(alg, &self.decode(t)).map(|v| (t, v)))
    }

    #[cfg(feature = "parallel")]
    fn scan_parallel(&self, alg: &GradedAlgebra, total: u128) -> Option<(u128, Vec<Rat>)> {
        (0..total as u64)
            .into_par_iter()
            .find_map_first(|t| self.eval(alg, &self.decode(t as u128)).map(|v| (t as u128, v)))
    }

    #[cfg(not(feature = "parallel"))]
    fn scan_parallel(&self, alg: &GradedAlgebra, total: u128) -> Option<(u128, Vec<Rat>)> {
        self.scan_sequential(alg, total)
    }
}

/// Splits `g` into its decidable multilinear components: total-degree
/// split (skipped when ungraded variables occur), multihomogeneous split,
/// then polarization.
fn multilinear_components(
    alg: &GradedAlgebra,
    g: &GradedPolynomial,
) -> Result<Vec<GradedPolynomial>, EngineError> {
    let bound = g.bind(alg.group())?;
    let top: Vec<GradedPolynomial> = if bound.has_unrestricted() {
        vec![bound]
    } else {
        bound
            .homogeneous_components(alg.group())?
            .into_values()
            .collect()
    };
    let mut out = Vec::new();
    for comp in top {
        out.extend(comp.multilinearize());
    }
    Ok(out)
}

/// Decides whether `g` vanishes under every degree-respecting substitution
/// of homogeneous elements. Exact; the verdict transfers to every
/// characteristic-zero scalar extension.
pub fn is_graded_identity(
    alg: &GradedAlgebra,
    g: &GradedPolynomial,
    config: &EngineConfig,
) -> Result<Verdict, EngineError> {
    let components = multilinear_components(alg, g)?;
    let tasks: Result<Vec<MultilinearTask>, EngineError> = components
        .into_iter()
        .map(|c| MultilinearTask::build(alg, c))
        .collect();
    let tasks = tasks?;
    let needed: u128 = tasks.iter().map(MultilinearTask::tuple_count).sum();
    if needed > config.max_evals as u128 {
        return Err(EngineError::Resource {
            needed,
            ceiling: config.max_evals,
        });
    }
    for task in &tasks {
        if let Some(witness) = task.first_failure(alg, config.parallel) {
            return Ok(Verdict::fails(witness));
        }
    }
    Ok(Verdict::holds())
}

/// Independent oracle: substitutes a generic element (indeterminate
/// coordinates) for every variable and tests whether all coordinate
/// polynomials vanish. No splitting or polarization is involved.
pub fn is_identity_generic(
    alg: &GradedAlgebra,
    g: &GradedPolynomial,
    config: &EngineConfig,
) -> Result<Verdict, EngineError> {
    let bound = g.bind(alg.group())?;
    let vars: Vec<GradedVariable> = bound.variables().into_iter().collect();
    let mut domains = Vec::with_capacity(vars.len());
    for v in &vars {
        let domain = match v.degree.resolve(alg.group())? {
            Some(d) => alg.component_basis(&d),
            None => (0..alg.dim()).collect(),
        };
        domains.push(domain);
    }
    // Expansion size guard: each monomial multiplies out to the product of
    // its slots' component dimensions.
    let mut needed: u128 = 0;
    for (m, _) in bound.terms() {
        let mut size: u128 = 1;
        for v in m.vars() {
            let slot = vars.binary_search(v).unwrap();
            size = size.saturating_mul(domains[slot].len().max(1) as u128);
        }
        needed = needed.saturating_add(size);
    }
    if needed > config.max_evals as u128 {
        return Err(EngineError::Resource {
            needed,
            ceiling: config.max_evals,
        });
    }

    let mut assignment: BTreeMap<GradedVariable, crate::algebra::Element<MultiPoly>> =
        BTreeMap::new();
    let mut counter: u32 = 0;
    let mut slot_vars: Vec<Vec<(usize, u32)>> = Vec::with_capacity(vars.len());
    for (v, domain) in vars.iter().zip(&domains) {
        let mut coeffs = vec![MultiPoly::zero(); alg.dim()];
        let mut used = Vec::new();
        for &b in domain {
            coeffs[b] = MultiPoly::var(counter);
            used.push((b, counter));
            counter += 1;
        }
        assignment.insert(v.clone(), alg.from_coeffs(coeffs)?);
        slot_vars.push(used);
    }
    let result = bound.evaluate(alg, &assignment).map_err(|e| match e {
        crate::poly::EvalError::Poly(p) => EngineError::Poly(p),
        crate::poly::EvalError::Algebra(a) => EngineError::Algebra(a),
    })?;
    if result.coeffs().iter().all(MultiPoly::is_zero) {
        return Ok(Verdict::holds());
    }

    // Extract a rational counterexample from the first nonzero coordinate
    // polynomial: substitute indeterminates one at a time, keeping the
    // polynomial nonzero; a degree-d univariate slice cannot vanish at
    // d + 1 points.
    let q0 = result
        .coeffs()
        .iter()
        .find(|p| !p.is_zero())
        .expect("nonzero coordinate exists");
    let mut q = q0.clone();
    let mut point: BTreeMap<u32, Rat> = BTreeMap::new();
    for t in q0.vars() {
        let d = q.degree_in(t);
        let mut chosen = None;
        for val in 0..=d as i64 {
            let candidate = q.substitute(t, &Rat::from_i64(val));
            if !candidate.is_zero() {
                chosen = Some((val, candidate));
                break;
            }
        }
        let (val, next) = chosen.expect("a nonzero slice exists");
        point.insert(t, Rat::from_i64(val));
        q = next;
    }

    let mut witness_assignment = Vec::new();
    let mut rat_assignment: BTreeMap<GradedVariable, RatElement> = BTreeMap::new();
    for (v, used) in vars.iter().zip(&slot_vars) {
        let mut coeffs = vec![Rat::zero(); alg.dim()];
        for (b, t) in used {
            coeffs[*b] = point.get(t).cloned().unwrap_or_else(Rat::zero);
        }
        witness_assignment.push((v.clone(), coeffs.clone()));
        rat_assignment.insert(v.clone(), alg.from_coeffs(coeffs)?);
    }
    let value = bound.evaluate(alg, &rat_assignment).map_err(|e| match e {
        crate::poly::EvalError::Poly(p) => EngineError::Poly(p),
        crate::poly::EvalError::Algebra(a) => EngineError::Algebra(a),
    })?;
    debug_assert!(!value.is_zero(), "witness point keeps a coordinate nonzero");
    Ok(Verdict::fails(Witness {
        component: bound.to_string(),
        assignment: witness_assignment,
        value: value.coeffs().to_vec(),
    }))
}

/// True iff the neutral component is central; brute force over component
/// bases.
pub fn is_neutral_central(alg: &GradedAlgebra) -> bool {
    algebra_is_neutral_central(alg)
}

/// Exact basis of the space of multilinear identities
/// `sum over permutations of c_perm x_{perm(1)} ... x_{perm(n)}` at the
/// given variable degrees.
pub fn find_multilinear_identities(
    alg: &GradedAlgebra,
    degrees: &[GroupElement],
    config: &EngineConfig,
) -> Result<Vec<GradedPolynomial>, EngineError> {
    let n = degrees.len();
    if n == 0 {
        return Err(EngineError::InvalidInput("need at least one degree".into()));
    }
    if n > config.max_search_vars {
        return Err(EngineError::Resource {
            needed: n as u128,
            ceiling: config.max_search_vars as u64,
        });
    }
    for d in degrees {
        if !alg.group().contains(d) {
            return Err(EngineError::InvalidInput(format!(
                "degree {d} is not in the grading group"
            )));
        }
    }
    let vars: Vec<GradedVariable> = degrees
        .iter()
        .enumerate()
        .map(|(i, d)| {
            GradedVariable::new(
                (i + 1) as u32,
                VarDegree::Coords(d.coords().iter().map(|&c| c as i64).collect()),
            )
        })
        .collect();
    let orderings: Vec<Vec<usize>> = (0..n).permutations(n).collect();
    let domains: Vec<Vec<usize>> = degrees.iter().map(|d| alg.component_basis(d)).collect();
    let tuple_count: u128 = domains.iter().map(|d| d.len() as u128).product();
    let needed = tuple_count.saturating_mul(orderings.len() as u128);
    if needed > config.max_evals as u128 {
        return Err(EngineError::Resource {
            needed,
            ceiling: config.max_evals,
        });
    }

    // Row space of the evaluation constraints on the ordering coefficients.
    let mut rows = Subspace::zero(orderings.len());
    let mut tuple = Vec::with_capacity(n);
    collect_rows(alg, &domains, &orderings, &mut tuple, 0, &mut rows);
    let kernel = nullspace(orderings.len(), rows.basis().iter().cloned());
    let mut out = Vec::new();
    for combo in kernel {
        let mut p = GradedPolynomial::zero();
        for (c, ordering) in combo.iter().zip(&orderings) {
            if c.is_zero() {
                continue;
            }
            let word: Vec<GradedVariable> = ordering.iter().map(|&i| vars[i].clone()).collect();
            p.add_term(GradedMonomial(word), c.clone());
        }
        out.push(p);
    }
    Ok(out)
}

fn collect_rows(
    alg: &GradedAlgebra,
    domains: &[Vec<usize>],
    orderings: &[Vec<usize>],
    tuple: &mut Vec<usize>,
    slot: usize,
    rows: &mut Subspace,
) {
    if slot == domains.len() {
        // One constraint row per ambient coordinate.
        let mut per_coord: Vec<Vec<Rat>> = vec![vec![Rat::zero(); orderings.len()]; alg.dim()];
        for (col, ordering) in orderings.iter().enumerate() {
            let mut current: Vec<(usize, Rat)> = vec![(tuple[ordering[0]], Rat::one())];
            for &slot_idx in &ordering[1..] {
                let b = tuple[slot_idx];
                let mut next: Vec<(usize, Rat)> = Vec::new();
                for (k, c) in &current {
                    for (l, d) in alg.basis_product(*k, b) {
                        match next.binary_search_by_key(l, |(i, _)| *i) {
                            Ok(found) => {
                                let updated = &next[found].1 + &(c * d);
                                if updated.is_zero() {
                                    next.remove(found);
                                } else {
                                    next[found].1 = updated;
                                }
                            }
                            Err(at) => next.insert(at, (*l, c * d)),
                        }
                    }
                }
                current = next;
                if current.is_empty() {
                    break;
                }
            }
            for (k, c) in current {
                per_coord[k][col] = c;
            }
        }
        for row in per_coord {
            if row.iter().any(|c| !c.is_zero()) {
                rows.insert(row);
            }
        }
        return;
    }
    for &b in &domains[slot] {
        tuple.push(b);
        collect_rows(alg, domains, orderings, tuple, slot + 1, rows);
        tuple.pop();
    }
}

/// The sigma-commutator of two elements of an elementary-canonical
/// algebra, extended bilinearly from
/// `(1/s(a,b)) (E_ij n_a)(E_rs n_b) - (1/s(b,a)) (E_rs n_b)(E_ij n_a)`.
pub fn sigma_bracket(
    alg: &GradedAlgebra,
    x: &RatElement,
    y: &RatElement,
) -> Result<RatElement, EngineError> {
    let meta = alg.canonical_meta().ok_or_else(|| {
        EngineError::Unsupported("algebra carries no cocycle metadata".into())
    })?;
    let mut out = alg.zero();
    for (p, cx) in x.coeffs().iter().enumerate() {
        if cx.is_zero() {
            continue;
        }
        for (q, cy) in y.coeffs().iter().enumerate() {
            if cy.is_zero() {
                continue;
            }
            let ha = &meta.cells[p].2;
            let hb = &meta.cells[q].2;
            let ep: RatElement = alg.basis_element(p);
            let eq: RatElement = alg.basis_element(q);
            let fwd = alg.scale_element(
                &alg.mul(&ep, &eq)?,
                &meta.sigma_at(ha, hb).inv().expect("cocycle values nonzero"),
            )?;
            let bwd = alg.scale_element(
                &alg.mul(&eq, &ep)?,
                &meta.sigma_at(hb, ha).inv().expect("cocycle values nonzero"),
            )?;
            let bracket = alg.sub(&fwd, &bwd)?;
            let scaled = alg.scale_element(&bracket, &(cx * cy))?;
            out = alg.add(&out, &scaled)?;
        }
    }
    Ok(out)
}

/// Checks `[x^(xi), y^(zeta)]_sigma = 0` on all pairs of basis elements of
/// the two components.
pub fn sigma_identity_check(
    alg: &GradedAlgebra,
    xi: &GroupElement,
    zeta: &GroupElement,
) -> Result<Verdict, EngineError> {
    if alg.canonical_meta().is_none() {
        return Err(EngineError::Unsupported(
            "algebra carries no cocycle metadata".into(),
        ));
    }
    for p in alg.component_basis(xi) {
        for q in alg.component_basis(zeta) {
            let x: RatElement = alg.basis_element(p);
            let y: RatElement = alg.basis_element(q);
            let bracket = sigma_bracket(alg, &x, &y)?;
            if !bracket.is_zero() {
                let var = |i: u32, d: &GroupElement| {
                    GradedVariable::new(
                        i,
                        VarDegree::Coords(d.coords().iter().map(|&c| c as i64).collect()),
                    )
                };
                return Ok(Verdict::fails(Witness {
                    component: format!("sigma-bracket@({xi},{zeta})"),
                    assignment: vec![
                        (var(1, xi), x.coeffs().to_vec()),
                        (var(2, zeta), y.coeffs().to_vec()),
                    ],
                    value: bracket.coeffs().to_vec(),
                }));
            }
        }
    }
    Ok(Verdict::holds())
}

/// Which argument of the proof forces a linear coefficient to vanish.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LinearZeroCase {
    /// The variable's degree is not neutral, so the linear and quadratic
    /// parts live in different components.
    DegreeSeparation,
    /// Neutral degree: scaling the substitution through infinitely many
    /// field elements forces the coefficient to zero.
    FieldScaling,
}

/// Canonical form data of a degree-2 graded identity: the commutator
/// coefficients, the square coefficients, the reconstructed scalar table
/// and the classification bookkeeping from the canonicalization run.
#[derive(Clone, Debug)]
pub struct Degree2Canonical {
    /// Variable list in canonical order; gamma/delta indices refer to it.
    pub variables: Vec<GradedVariable>,
    /// Bracket coefficient per position pair (r, s), r < s, 0-based.
    pub gamma: BTreeMap<(usize, usize), Rat>,
    /// Square coefficient per position.
    pub delta: BTreeMap<usize, Rat>,
    pub fg: FgTable,
    /// Set when a two-sided nonzero pair occurs at the neutral degree and
    /// the neutral component is not nil of index 2; the plain commutator
    /// `[x@e, y@e]` is then itself an identity.
    pub commutative_neutral: bool,
    /// Which proof case certified each linear coefficient zero.
    pub linear_cases: Vec<(usize, LinearZeroCase)>,
    /// For each degree shared by several variables with nonvanishing
    /// squares, the smallest pair chosen to populate the diagonal entry.
    pub diagonal_choices: Vec<(GroupElement, (usize, usize))>,
    /// The polynomial of the canonical shape, re-verified as an identity.
    pub reconstruction: GradedPolynomial,
}

/// Runs the degree-2 canonicalization: verifies the input is a graded
/// identity of degree exactly 2 with supported degrees, certifies the
/// linear part vanishes, extracts bracket and square coefficients, and
/// rebuilds the scalar table by the case analysis on the first-occurrence
/// representatives of each degree.
pub fn degree2_canonicalize(
    alg: &GradedAlgebra,
    g: &GradedPolynomial,
    config: &EngineConfig,
) -> Result<Degree2Canonical, EngineError> {
    let bound = g.bind(alg.group())?;
    if bound.has_unrestricted() {
        return Err(EngineError::Contract(
            "canonicalization needs graded variables".into(),
        ));
    }
    if bound.degree() != 2 {
        return Err(EngineError::Contract(format!(
            "polynomial degree is {}, need exactly 2",
            bound.degree()
        )));
    }
    let support = alg.support();
    let variables: Vec<GradedVariable> = bound.variables().into_iter().collect();
    let var_degree = |v: &GradedVariable| -> GroupElement {
        v.degree
            .resolve(alg.group())
            .expect("bound degrees resolve")
            .expect("no unrestricted variables")
    };
    for v in &variables {
        if !support.contains(&var_degree(v)) {
            return Err(EngineError::Contract(format!(
                "variable {v} has degree outside the support"
            )));
        }
    }

    let verdict = is_graded_identity(alg, &bound, config)?;
    if !verdict.holds {
        return Err(EngineError::NotAnIdentity(Box::new(
            verdict.witness.expect("failing verdicts carry witnesses"),
        )));
    }

    let position = |v: &GradedVariable| variables.binary_search(v).expect("known variable");
    let mut lambda: BTreeMap<(usize, usize), Rat> = BTreeMap::new();
    let mut linear: BTreeMap<usize, Rat> = BTreeMap::new();
    for (m, c) in bound.terms() {
        match m.vars() {
            [v] => {
                *linear.entry(position(v)).or_insert_with(Rat::zero) += c;
            }
            [v, w] => {
                *lambda
                    .entry((position(v), position(w)))
                    .or_insert_with(Rat::zero) += c;
            }
            _ => unreachable!("degree bounded by 2"),
        }
    }
    // An identity with supported degrees cannot carry linear terms; the
    // engine verdict above already excludes it, so a nonzero entry here
    // means the bookkeeping broke.
    if linear.values().any(|c| !c.is_zero()) {
        return Err(EngineError::Inconsistency(
            "identity with a nonvanishing linear part".into(),
        ));
    }
    let linear_cases = variables
        .iter()
        .enumerate()
        .map(|(k, v)| {
            let case = if var_degree(v).is_identity() {
                LinearZeroCase::FieldScaling
            } else {
                LinearZeroCase::DegreeSeparation
            };
            (k, case)
        })
        .collect();

    let n = variables.len();
    let at = |r: usize, s: usize| lambda.get(&(r, s)).cloned().unwrap_or_else(Rat::zero);

    let mut delta = BTreeMap::new();
    for k in 0..n {
        let d = at(k, k);
        if !d.is_zero() {
            delta.insert(k, d);
        }
    }

    // Squares-vanish test per degree, decided on basis pairs (valid in
    // characteristic zero via polarization).
    let mut squares_vanish: BTreeMap<GroupElement, bool> = BTreeMap::new();
    for v in &variables {
        let d = var_degree(v);
        if squares_vanish.contains_key(&d) {
            continue;
        }
        let comp = alg.component_basis(&d);
        let mut vanish = true;
        'outer: for &p in &comp {
            for &q in &comp {
                let a: RatElement = alg.basis_element(p);
                let b: RatElement = alg.basis_element(q);
                let anti = alg.add(&alg.mul(&a, &b)?, &alg.mul(&b, &a)?)?;
                if !anti.is_zero() {
                    vanish = false;
                    break 'outer;
                }
            }
        }
        squares_vanish.insert(d, vanish);
    }

    // First-occurrence representative of each distinct degree.
    let mut rep_of_degree: BTreeMap<GroupElement, usize> = BTreeMap::new();
    for (k, v) in variables.iter().enumerate() {
        rep_of_degree.entry(var_degree(v)).or_insert(k);
    }

    // For representative positions r < s the pair identity reads
    // `l_rs x_r x_s + l_sr x_s x_r = 0`, and the bracket shape forces
    // `f(d_r, d_s) = l_rs` together with `f(d_s, d_r) = -l_sr`.
    let mut fg = FgTable::new();
    for (da, &a) in &rep_of_degree {
        for (db, &b) in &rep_of_degree {
            if da == db {
                continue;
            }
            let value = if a < b { at(a, b) } else { -at(a, b) };
            fg.set(da.clone(), db.clone(), value);
        }
    }
    let mut diagonal_choices = Vec::new();
    for (d, _) in rep_of_degree.iter() {
        let sharing: Vec<usize> = variables
            .iter()
            .enumerate()
            .filter(|(_, v)| var_degree(v) == *d)
            .map(|(k, _)| k)
            .collect();
        if sharing.len() < 2 {
            continue;
        }
        let (r, s) = (sharing[0], sharing[1]);
        if !squares_vanish[d] {
            fg.set(d.clone(), d.clone(), at(r, s));
            diagonal_choices.push((d.clone(), (r, s)));
        } else {
            fg.set(d.clone(), d.clone(), Rat::zero());
        }
    }

    // Bracket multipliers: gamma_rs reproduces (lambda_rs, lambda_sr)
    // through the table when the pair is proportional to it; pairs the
    // table cannot carry are left out (their monomials vanish identically
    // on the components, which the pair check below certifies).
    let mut gamma = BTreeMap::new();
    for r in 0..n {
        for s in (r + 1)..n {
            let (dr, ds) = (var_degree(&variables[r]), var_degree(&variables[s]));
            let f1 = fg.get(&dr, &ds);
            let f2 = fg.get(&ds, &dr);
            let (l1, l2) = (at(r, s), at(s, r));
            if l1.is_zero() && l2.is_zero() {
                continue;
            }
            let candidate = if !f1.is_zero() {
                Some(l1.div_exact(&f1))
            } else if !f2.is_zero() {
                Some((-&l2).div_exact(&f2))
            } else {
                None
            };
            if let Some(c) = candidate {
                if !c.is_zero() {
                    gamma.insert((r, s), c);
                }
            }
        }
    }

    // Certify each pair contribution is an identity on its own, as the
    // proof's claim states.
    for r in 0..n {
        for s in (r + 1)..n {
            let (l1, l2) = (at(r, s), at(s, r));
            if l1.is_zero() && l2.is_zero() {
                continue;
            }
            let mut pair = GradedPolynomial::zero();
            pair.add_term(
                GradedMonomial(vec![variables[r].clone(), variables[s].clone()]),
                l1,
            );
            pair.add_term(
                GradedMonomial(vec![variables[s].clone(), variables[r].clone()]),
                l2,
            );
            let v = is_graded_identity(alg, &pair, config)?;
            if !v.holds {
                return Err(EngineError::Inconsistency(format!(
                    "pair ({r},{s}) does not vanish on its components"
                )));
            }
        }
    }

    // Reconstruction in the canonical shape, then re-verification.
    let mut reconstruction = GradedPolynomial::zero();
    for ((r, s), c) in &gamma {
        let dr = var_degree(&variables[*r]);
        let ds = var_degree(&variables[*s]);
        let bracket = fg_expand(&fg, &dr, &ds);
        // Rename the template variables x1, x2 to the pair's variables.
        let mut renamed = GradedPolynomial::zero();
        for (m, coeff) in bracket.terms() {
            let vars: Vec<GradedVariable> = m
                .vars()
                .iter()
                .map(|v| {
                    if v.index == 1 {
                        variables[*r].clone()
                    } else {
                        variables[*s].clone()
                    }
                })
                .collect();
            renamed.add_term(GradedMonomial(vars), coeff.clone());
        }
        reconstruction = reconstruction.add(&renamed.scale(c));
    }
    for (k, c) in &delta {
        reconstruction.add_term(
            GradedMonomial(vec![variables[*k].clone(), variables[*k].clone()]),
            c.clone(),
        );
    }
    if !reconstruction.is_zero() {
        let v = is_graded_identity(alg, &reconstruction, config)?;
        if !v.holds {
            return Err(EngineError::Inconsistency(
                "reconstructed canonical form is not an identity".into(),
            ));
        }
    }

    // Two-sided nonzero pair at the neutral degree with squares not
    // vanishing: the plain commutator at e is itself an identity.
    let e = alg.group().identity();
    let mut commutative_neutral = false;
    if support.contains(&e) && !squares_vanish.get(&e).copied().unwrap_or(true) {
        'pairs: for r in 0..n {
            for s in (r + 1)..n {
                if var_degree(&variables[r]) == e
                    && var_degree(&variables[s]) == e
                    && !at(r, s).is_zero()
                {
                    commutative_neutral = true;
                    break 'pairs;
                }
            }
        }
        if commutative_neutral {
            let comm = crate::poly::parse("[x1@e, x2@e]").expect("fixed text parses");
            let v = is_graded_identity(alg, &comm, config)?;
            if !v.holds {
                return Err(EngineError::Inconsistency(
                    "two-sided neutral pair without commutative neutral component".into(),
                ));
            }
        }
    }

    Ok(Degree2Canonical {
        variables,
        gamma,
        delta,
        fg,
        commutative_neutral,
        linear_cases,
        diagonal_choices,
        reconstruction,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{
        elementary_canonical, example_3_16, example_3_18, grassmann, nil_one_dim, pauli_m2,
        quaternions, Cocycle,
    };
    use crate::group::FiniteAbelianGroup;
    use crate::poly::parse;

    fn cfg() -> EngineConfig {
        EngineConfig::default()
    }

    fn check(alg: &GradedAlgebra, text: &str) -> Verdict {
        is_graded_identity(alg, &parse(text).unwrap(), &cfg()).unwrap()
    }

    fn check_generic(alg: &GradedAlgebra, text: &str) -> Verdict {
        is_identity_generic(alg, &parse(text).unwrap(), &cfg()).unwrap()
    }

    #[test]
    fn pauli_identities() {
        let alg = pauli_m2();
        assert!(check(&alg, "[x1@e, x2@(1,1)]").holds);
        assert!(check(&alg, "[x1@e, x2@e]").holds);
        assert!(check_generic(&alg, "[x1@e, x2@e]").holds);
        // Anticommutator of distinct nonzero degrees.
        assert!(check(&alg, "x1@(0,1)*x2@(1,0) + x2@(1,0)*x1@(0,1)").holds);
        // Squares do not vanish.
        let v = check(&alg, "x1@(1,1)*x1@(1,1)");
        assert!(!v.holds);
        let w = v.witness.unwrap();
        assert!(!w.reevaluate(&alg).unwrap().is_zero());
    }

    #[test]
    fn example_3_18_verdicts() {
        let alg = example_3_18();
        assert!(check(&alg, "x1@(1,0)*x2@(1,4)").holds);
        assert!(check(&alg, "x2@(1,4)*x1@(1,0)").holds);
        assert!(check(&alg, "x1@(1,4)*x1@(1,4)").holds);
        assert!(check(&alg, "x1@(1,0)*x1@(1,0)").holds);
        let v = check(&alg, "[x1@e, x2@e]");
        assert!(!v.holds);
        // The counterexample value lies in span{E34, E43} + diagonal parts;
        // the stored witness must re-evaluate to something nonzero.
        let w = v.witness.unwrap();
        assert!(!w.reevaluate(&alg).unwrap().is_zero());
    }

    #[test]
    fn generic_oracle_agrees_on_m2() {
        let g = FiniteAbelianGroup::trivial();
        let e = g.identity();
        let theta = vec![e.clone(), e.clone()];
        let alg = crate::constructions::elementary_matrix_grading(&g, 2, &theta).unwrap();
        let v1 = check(&alg, "[x1@e, x2@e]");
        let v2 = check_generic(&alg, "[x1@e, x2@e]");
        assert!(!v1.holds);
        assert!(!v2.holds);
        let w = v2.witness.unwrap();
        assert!(!w.reevaluate(&alg).unwrap().is_zero());
    }

    #[test]
    fn quaternion_neutral_pairs() {
        let alg = quaternions();
        assert!(check(&alg, "[x1@e, x2@(0,1)]").holds);
        assert!(check_generic(&alg, "[x1@e, x2@(0,1)]").holds);
        assert!(is_neutral_central(&alg));
        assert!(!is_neutral_central(&example_3_18()));
    }

    #[test]
    fn polarized_square_identities() {
        // Squares vanish identically on the odd part of the exterior
        // algebra; the pipeline needs polarization to decide this.
        let alg = grassmann(4);
        assert!(check(&alg, "x1@(1)*x1@(1)").holds);
        assert!(check_generic(&alg, "x1@(1)*x1@(1)").holds);
        // But not on the even part: g1_2 * g3_4 is a nonzero product of
        // even elements, and squares of even elements vanish... the square
        // of g1_2 + g3_4 is 2 g1_2 g3_4.
        let v = check(&alg, "x1@(0)*x1@(0)");
        assert!(!v.holds);
    }

    #[test]
    fn resource_ceiling_fails_loudly() {
        let alg = example_3_16();
        let config = EngineConfig {
            max_evals: 10,
            ..EngineConfig::default()
        };
        let err = is_graded_identity(&alg, &parse("[x1@e, x2@e]").unwrap(), &config);
        assert!(matches!(err, Err(EngineError::Resource { .. })));
    }

    #[test]
    fn multilinear_identity_space_of_pauli() {
        let alg = pauli_m2();
        let e = alg.group().identity();
        let space = find_multilinear_identities(&alg, &[e.clone(), e.clone()], &cfg()).unwrap();
        assert_eq!(space.len(), 1);
        let expected = parse("x1@(0,0)*x2@(0,0) - x2@(0,0)*x1@(0,0)").unwrap();
        let p = &space[0];
        // Up to scale.
        let first_coeff = p.terms().next().unwrap().1.clone();
        assert_eq!(p.scale(&first_coeff.inv().unwrap()), expected);
    }

    #[test]
    fn multilinear_identity_space_of_m2_is_zero() {
        let g = FiniteAbelianGroup::trivial();
        let e = g.identity();
        let alg =
            crate::constructions::elementary_matrix_grading(&g, 2, &[e.clone(), e.clone()])
                .unwrap();
        let space = find_multilinear_identities(&alg, &[e.clone(), e.clone()], &cfg()).unwrap();
        assert!(space.is_empty());
    }

    #[test]
    fn multilinear_identity_space_of_nil_algebra() {
        let alg = nil_one_dim();
        let one = alg.group().element(&[1]).unwrap();
        let space = find_multilinear_identities(&alg, &[one.clone(), one], &cfg()).unwrap();
        assert_eq!(space.len(), 2);
    }

    #[test]
    fn search_bound_enforced() {
        let alg = nil_one_dim();
        let one = alg.group().element(&[1]).unwrap();
        let degrees = vec![one; 5];
        assert!(matches!(
            find_multilinear_identities(&alg, &degrees, &cfg()),
            Err(EngineError::Resource { .. })
        ));
    }

    #[test]
    fn sigma_bracket_on_diagonal_cells() {
        // Commuting subgroup degrees with equal diagonal cells vanish.
        let group = FiniteAbelianGroup::new(&[2, 2]).unwrap();
        let sub = group.subgroup(&[group.element(&[1, 0]).unwrap()]).unwrap();
        let sigma = Cocycle::trivial(&sub);
        let theta = [group.identity(), group.element(&[0, 1]).unwrap()];
        let alg = elementary_canonical(&group, 2, &sigma, &theta).unwrap();
        for xi in sub.elements() {
            for zeta in sub.elements() {
                assert!(sigma_identity_check(&alg, xi, zeta).unwrap().holds);
            }
        }
        // Degrees outside the subgroup fail the check.
        let outside = group.element(&[0, 1]).unwrap();
        let v = sigma_identity_check(&alg, &outside, &group.identity()).unwrap();
        assert!(!v.holds);
    }

    #[test]
    fn sigma_bracket_needs_metadata() {
        let alg = pauli_m2();
        let e = alg.group().identity();
        assert!(matches!(
            sigma_identity_check(&alg, &e, &e),
            Err(EngineError::Unsupported(_))
        ));
    }

    #[test]
    fn canonicalize_pauli_commutator() {
        let alg = pauli_m2();
        let g = parse("x1@e*x2@e - x2@e*x1@e").unwrap();
        let canon = degree2_canonicalize(&alg, &g, &cfg()).unwrap();
        assert_eq!(canon.gamma.len(), 1);
        assert_eq!(canon.gamma[&(0, 1)], Rat::one());
        assert!(canon.delta.is_empty());
        let e = alg.group().identity();
        assert_eq!(canon.fg.get(&e, &e), Rat::one());
        assert!(canon.commutative_neutral);
        // Reconstruction re-verifies.
        assert!(is_graded_identity(&alg, &canon.reconstruction, &cfg())
            .unwrap()
            .holds);
    }

    #[test]
    fn canonicalize_nil_square_monomial() {
        let alg = nil_one_dim();
        let g = parse("x1@(1)*x2@(1)").unwrap();
        let canon = degree2_canonicalize(&alg, &g, &cfg()).unwrap();
        // Squares vanish at degree 1, so the diagonal entry is zero and no
        // gamma survives; the pair is certified by the vanishing products.
        let one = alg.group().element(&[1]).unwrap();
        assert!(canon.fg.get(&one, &one).is_zero());
        assert!(canon.delta.is_empty());
        assert!(canon.gamma.is_empty());
        assert!(!canon.commutative_neutral);
    }

    #[test]
    fn canonicalize_rejects_non_identities() {
        let alg = pauli_m2();
        let g = parse("x1@e*x2@e").unwrap();
        assert!(matches!(
            degree2_canonicalize(&alg, &g, &cfg()),
            Err(EngineError::NotAnIdentity(_))
        ));
        let linear = parse("x1@e").unwrap();
        assert!(matches!(
            degree2_canonicalize(&alg, &linear, &cfg()),
            Err(EngineError::Contract(_))
        ));
    }

    #[test]
    fn oracle_agreement_quick() {
        let fixtures = [pauli_m2(), quaternions(), nil_one_dim(), grassmann(3)];
        let polys = [
            "[x1@e, x2@e]",
            "x1@e*x1@e",
            "[x1@e, x2@e]*x3@e",
            "2*x1@e*x2@e - x2@e*x1@e",
        ];
        for alg in &fixtures {
            for text in &polys {
                // Degrees must exist in each group: map e only.
                let p = parse(text).unwrap();
                let a = is_graded_identity(alg, &p, &cfg()).unwrap();
                let b = is_identity_generic(alg, &p, &cfg()).unwrap();
                assert_eq!(a.holds, b.holds, "oracles disagree on {text}");
            }
        }
    }

    #[test]
    fn left_normed_on_quaternions_fails_with_powers_of_two() {
        let alg = quaternions();
        for m in 2..=5 {
            let p = crate::poly::left_normed(m);
            let v = is_graded_identity(&alg, &p, &cfg()).unwrap();
            assert!(!v.holds, "left-normed({m}) should fail on the quaternions");
        }
    }

    #[test]
    fn parallel_and_sequential_agree_on_witness() {
        let alg = example_3_18();
        let p = parse("[x1@e, x2@e]").unwrap();
        let seq = is_graded_identity(
            &alg,
            &p,
            &EngineConfig {
                parallel: false,
                ..cfg()
            },
        )
        .unwrap();
        let par = is_graded_identity(&alg, &p, &cfg()).unwrap();
        assert_eq!(seq, par);
    }
}

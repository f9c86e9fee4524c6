//! Free graded associative polynomials: parsing, canonical printing,
//! decomposition into homogeneous and multihomogeneous parts,
//! multilinearization by polarization, twisted-commutator expansion and
//! exact evaluation on algebra elements.
//!
//! Grammar (whitespace insignificant, `*` between factors optional):
//!
//! ```text
//! poly   := term (("+"|"-") term)*
//! term   := (rational "*")? factor+
//! factor := var | "[" poly "," poly "]" | "(" poly ")"
//! var    := "x" INT "@" degree
//! degree := "e" | "(" INT ("," INT)* ")"
//! ```

use crate::algebra::{AlgebraError, Element, GradedAlgebra};
use crate::group::{FiniteAbelianGroup, GroupElement};
use crate::scalar::{Rat, Scalar};
use itertools::Itertools;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PolyError {
    #[error("syntax error at byte {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error("degree {0} does not fit the group {1}")]
    DegreeMismatch(String, String),
    #[error("evaluation contract violated: {0}")]
    EvaluationContract(String),
    #[error("operation needs fully graded variables: {0}")]
    UngradedVariable(String),
}

impl PolyError {
    fn syntax(position: usize, message: impl Into<String>) -> Self {
        PolyError::Syntax {
            position,
            message: message.into(),
        }
    }
}

/// Degree tag of a graded variable. `Unrestricted` realizes ungraded
/// variables (all-at-e over the trivial group); on evaluation such a slot
/// accepts arbitrary elements.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug, Hash)]
pub enum VarDegree {
    Unrestricted,
    Neutral,
    Coords(Vec<i64>),
}

impl VarDegree {
    /// Resolves against a grading group; `None` means the variable ranges
    /// over the whole algebra.
    pub fn resolve(&self, group: &FiniteAbelianGroup) -> Result<Option<GroupElement>, PolyError> {
        match self {
            VarDegree::Unrestricted => Ok(None),
            VarDegree::Neutral => Ok(Some(group.identity())),
            VarDegree::Coords(coords) => group
                .element(coords)
                .map(Some)
                .map_err(|_| PolyError::DegreeMismatch(self.to_string(), group.to_string())),
        }
    }
}

impl fmt::Display for VarDegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VarDegree::Unrestricted | VarDegree::Neutral => write!(f, "e"),
            VarDegree::Coords(cs) => {
                let parts: Vec<String> = cs.iter().map(|c| c.to_string()).collect();
                write!(f, "({})", parts.join(","))
            }
        }
    }
}

/// A degree-tagged indeterminate; pairs with equal index but different
/// degree are distinct variables.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug, Hash)]
pub struct GradedVariable {
    pub index: u32,
    pub degree: VarDegree,
}

impl GradedVariable {
    pub fn new(index: u32, degree: VarDegree) -> Self {
        GradedVariable { index, degree }
    }
}

impl fmt::Display for GradedVariable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x{}@{}", self.index, self.degree)
    }
}

/// A nonempty word in graded variables. Ordered length-lexicographically,
/// which fixes the canonical term order of polynomials.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GradedMonomial(pub Vec<GradedVariable>);

impl PartialOrd for GradedMonomial {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for GradedMonomial {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.0.len(), &self.0).cmp(&(other.0.len(), &other.0))
    }
}

impl GradedMonomial {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn vars(&self) -> &[GradedVariable] {
        &self.0
    }

    /// Total G-degree, or an error when an unrestricted variable occurs.
    pub fn g_degree(&self, group: &FiniteAbelianGroup) -> Result<GroupElement, PolyError> {
        let mut acc = group.identity();
        for v in &self.0 {
            match v.degree.resolve(group)? {
                Some(d) => acc = group.add(&acc, &d).unwrap(),
                None => return Err(PolyError::UngradedVariable(v.to_string())),
            }
        }
        Ok(acc)
    }

    /// Multiplicities of each variable.
    pub fn multidegree(&self) -> BTreeMap<GradedVariable, u32> {
        let mut out = BTreeMap::new();
        for v in &self.0 {
            *out.entry(v.clone()).or_insert(0) += 1;
        }
        out
    }
}

impl fmt::Display for GradedMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|v| v.to_string()).collect();
        write!(f, "{}", parts.join("*"))
    }
}

/// A formal linear combination of graded monomials with nonzero rational
/// coefficients.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct GradedPolynomial {
    terms: BTreeMap<GradedMonomial, Rat>,
}

impl GradedPolynomial {
    pub fn zero() -> Self {
        GradedPolynomial::default()
    }

    pub fn monomial(vars: Vec<GradedVariable>, coeff: Rat) -> Self {
        let mut p = GradedPolynomial::zero();
        p.add_term(GradedMonomial(vars), coeff);
        p
    }

    pub fn add_term(&mut self, m: GradedMonomial, c: Rat) {
        assert!(!m.is_empty(), "monomials are nonempty words");
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += &c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&GradedMonomial, &Rat)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Maximal monomial length.
    pub fn degree(&self) -> usize {
        self.terms.keys().map(GradedMonomial::len).max().unwrap_or(0)
    }

    pub fn variables(&self) -> BTreeSet<GradedVariable> {
        self.terms
            .keys()
            .flat_map(|m| m.vars().iter().cloned())
            .collect()
    }

    pub fn add(&self, other: &GradedPolynomial) -> GradedPolynomial {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &GradedPolynomial) -> GradedPolynomial {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }

    pub fn scale(&self, c: &Rat) -> GradedPolynomial {
        if c.is_zero() {
            return GradedPolynomial::zero();
        }
        GradedPolynomial {
            terms: self
                .terms
                .iter()
                .map(|(m, v)| (m.clone(), v * c))
                .collect(),
        }
    }

    pub fn mul(&self, other: &GradedPolynomial) -> GradedPolynomial {
        let mut out = GradedPolynomial::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let mut vars = ma.vars().to_vec();
                vars.extend_from_slice(mb.vars());
                out.add_term(GradedMonomial(vars), ca * cb);
            }
        }
        out
    }

    pub fn commutator(p: &GradedPolynomial, q: &GradedPolynomial) -> GradedPolynomial {
        p.mul(q).sub(&q.mul(p))
    }

    /// True when some variable tag is [`VarDegree::Unrestricted`].
    pub fn has_unrestricted(&self) -> bool {
        self.variables()
            .iter()
            .any(|v| v.degree == VarDegree::Unrestricted)
    }

    /// Re-expresses all degrees as reduced coordinates of `group`, merging
    /// variables that coincide after resolution (`x1@e` and `x1@(0,0)`).
    /// Unrestricted tags are kept as they are.
    pub fn bind(&self, group: &FiniteAbelianGroup) -> Result<GradedPolynomial, PolyError> {
        let mut out = GradedPolynomial::zero();
        for (m, c) in &self.terms {
            let vars: Result<Vec<GradedVariable>, PolyError> = m
                .vars()
                .iter()
                .map(|v| {
                    Ok(match v.degree.resolve(group)? {
                        None => v.clone(),
                        Some(d) => GradedVariable::new(
                            v.index,
                            VarDegree::Coords(d.coords().iter().map(|&c| c as i64).collect()),
                        ),
                    })
                })
                .collect();
            out.add_term(GradedMonomial(vars?), c.clone());
        }
        Ok(out)
    }

    /// Splits into homogeneous parts by total G-degree. Fails on
    /// unrestricted variables, which carry no degree.
    pub fn homogeneous_components(
        &self,
        group: &FiniteAbelianGroup,
    ) -> Result<BTreeMap<GroupElement, GradedPolynomial>, PolyError> {
        let bound = self.bind(group)?;
        let mut out: BTreeMap<GroupElement, GradedPolynomial> = BTreeMap::new();
        for (m, c) in &bound.terms {
            let d = m.g_degree(group)?;
            out.entry(d).or_default().add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    /// Splits into parts on which every variable occurs with a fixed
    /// multiplicity, ordered by that multidegree.
    pub fn multihomogeneous_components(&self) -> Vec<GradedPolynomial> {
        let mut groups: BTreeMap<BTreeMap<GradedVariable, u32>, GradedPolynomial> = BTreeMap::new();
        for (m, c) in &self.terms {
            groups
                .entry(m.multidegree())
                .or_default()
                .add_term(m.clone(), c.clone());
        }
        groups.into_values().collect()
    }

    /// Every variable occurs exactly once in every monomial, with a common
    /// variable set across monomials.
    pub fn is_multilinear(&self) -> bool {
        let mut seen: Option<BTreeSet<GradedVariable>> = None;
        for m in self.terms.keys() {
            let md = m.multidegree();
            if md.values().any(|&k| k != 1) {
                return false;
            }
            let set: BTreeSet<GradedVariable> = md.into_keys().collect();
            match &seen {
                None => seen = Some(set),
                Some(prev) if *prev == set => {}
                Some(_) => return false,
            }
        }
        true
    }

    /// Multilinear polarizations of the multihomogeneous components,
    /// with the exact combinatorial constant relating each polarized form
    /// back to its component (the product of multiplicity factorials).
    pub fn multilinearize_with_factors(&self) -> Vec<(GradedPolynomial, Rat)> {
        self.multihomogeneous_components()
            .into_iter()
            .map(|comp| {
                let mut factor = Rat::one();
                let mut current = comp;
                loop {
                    let Some((var, mult)) = current
                        .terms
                        .keys()
                        .next()
                        .and_then(|m| m.multidegree().into_iter().find(|(_, k)| *k >= 2))
                    else {
                        break;
                    };
                    current = polarize(&current, &var, mult);
                    let mut fact = Rat::one();
                    for t in 2..=mult as i64 {
                        fact = &fact * &Rat::from_i64(t);
                    }
                    factor = &factor * &fact;
                }
                (current, factor)
            })
            .collect()
    }

    pub fn multilinearize(&self) -> Vec<GradedPolynomial> {
        self.multilinearize_with_factors()
            .into_iter()
            .map(|(p, _)| p)
            .collect()
    }

    /// Substitution homomorphism. Every assigned element must be
    /// homogeneous of the variable's degree; unrestricted variables accept
    /// arbitrary elements.
    pub fn evaluate<S: Scalar>(
        &self,
        alg: &GradedAlgebra,
        assignment: &BTreeMap<GradedVariable, Element<S>>,
    ) -> Result<Element<S>, EvalError> {
        for v in self.variables() {
            let Some(elem) = assignment.get(&v) else {
                return Err(PolyError::EvaluationContract(format!("{v} is unassigned")).into());
            };
            if let Some(d) = v.degree.resolve(alg.group())? {
                if !alg.is_homogeneous_of_degree(elem, &d) {
                    return Err(PolyError::EvaluationContract(format!(
                        "value assigned to {v} is not homogeneous of degree {d}"
                    ))
                    .into());
                }
            }
        }
        let mut acc = alg.zero::<S>();
        for (m, c) in &self.terms {
            let mut prod: Option<Element<S>> = None;
            for v in m.vars() {
                let elem = &assignment[v];
                prod = Some(match prod {
                    None => elem.clone(),
                    Some(p) => alg.mul(&p, elem)?,
                });
            }
            let term = alg.scale_element(&prod.expect("monomials are nonempty"), c)?;
            acc = alg.add(&acc, &term)?;
        }
        Ok(acc)
    }
}

#[derive(Debug, Error)]
pub enum EvalError {
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// Replaces the `mult` occurrences of `var` in each monomial by fresh
/// variables of the same degree (the original index plus new ones), summed
/// over all assignments; the multilinear polarization step.
fn polarize(p: &GradedPolynomial, var: &GradedVariable, mult: u32) -> GradedPolynomial {
    let max_index = p.variables().iter().map(|v| v.index).max().unwrap_or(0);
    let mut fresh = vec![var.clone()];
    for t in 1..mult {
        fresh.push(GradedVariable::new(max_index + t, var.degree.clone()));
    }
    let mut out = GradedPolynomial::zero();
    for (m, c) in p.terms() {
        let positions: Vec<usize> = m
            .vars()
            .iter()
            .enumerate()
            .filter(|(_, v)| *v == var)
            .map(|(i, _)| i)
            .collect();
        debug_assert_eq!(positions.len(), mult as usize, "multihomogeneous input");
        for perm in (0..mult as usize).permutations(mult as usize) {
            let mut vars = m.vars().to_vec();
            for (slot, &p_idx) in positions.iter().enumerate() {
                vars[p_idx] = fresh[perm[slot]].clone();
            }
            out.add_term(GradedMonomial(vars), c.clone());
        }
    }
    out
}

impl fmt::Display for GradedPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (n, (m, c)) in self.terms.iter().enumerate() {
            if n == 0 {
                if c.is_one() {
                    write!(f, "{m}")?;
                } else {
                    write!(f, "{c}*{m}")?;
                }
            } else if c.is_negative() {
                let a = c.abs();
                if a.is_one() {
                    write!(f, " - {m}")?;
                } else {
                    write!(f, " - {a}*{m}")?;
                }
            } else if c.is_one() {
                write!(f, " + {m}")?;
            } else {
                write!(f, " + {c}*{m}")?;
            }
        }
        Ok(())
    }
}

/// A scalar table on pairs of group elements; absent entries read as zero.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FgTable {
    entries: BTreeMap<(GroupElement, GroupElement), Rat>,
}

impl FgTable {
    pub fn new() -> Self {
        FgTable::default()
    }

    pub fn set(&mut self, a: GroupElement, b: GroupElement, value: Rat) {
        self.entries.insert((a, b), value);
    }

    pub fn get(&self, a: &GroupElement, b: &GroupElement) -> Rat {
        self.entries
            .get(&(a.clone(), b.clone()))
            .cloned()
            .unwrap_or_else(Rat::zero)
    }

    pub fn entries(&self) -> impl Iterator<Item = (&(GroupElement, GroupElement), &Rat)> {
        self.entries.iter()
    }
}

fn coords_degree(d: &GroupElement) -> VarDegree {
    VarDegree::Coords(d.coords().iter().map(|&c| c as i64).collect())
}

/// The twisted bracket `f(xi,zeta) x1 x2 - f(zeta,xi) x2 x1` on variables
/// `x1@xi`, `x2@zeta`; one-sided or zero entries drop the matching term.
pub fn fg_expand(table: &FgTable, xi: &GroupElement, zeta: &GroupElement) -> GradedPolynomial {
    let x1 = GradedVariable::new(1, coords_degree(xi));
    let x2 = GradedVariable::new(2, coords_degree(zeta));
    let mut p = GradedPolynomial::zero();
    p.add_term(GradedMonomial(vec![x1.clone(), x2.clone()]), table.get(xi, zeta));
    p.add_term(GradedMonomial(vec![x2, x1]), -table.get(zeta, xi));
    p
}

/// Left-normed commutator `[[..[x1,x2],x3..],xn]` on ungraded variables.
pub fn left_normed(n: usize) -> GradedPolynomial {
    assert!(n >= 2, "left-normed commutators start at length 2");
    let var = |i: u32| {
        GradedPolynomial::monomial(
            vec![GradedVariable::new(i, VarDegree::Unrestricted)],
            Rat::one(),
        )
    };
    let mut acc = GradedPolynomial::commutator(&var(1), &var(2));
    for i in 3..=n as u32 {
        acc = GradedPolynomial::commutator(&acc, &var(i));
    }
    acc
}

/// `[x1,x2][x3,x4]...[x_{2d-1},x_{2d}]` on ungraded variables.
pub fn product_of_commutators(d: usize) -> GradedPolynomial {
    assert!(d >= 1, "need at least one commutator factor");
    let var = |i: u32| {
        GradedPolynomial::monomial(
            vec![GradedVariable::new(i, VarDegree::Unrestricted)],
            Rat::one(),
        )
    };
    let mut acc: Option<GradedPolynomial> = None;
    for t in 0..d as u32 {
        let c = GradedPolynomial::commutator(&var(2 * t + 1), &var(2 * t + 2));
        acc = Some(match acc {
            None => c,
            Some(p) => p.mul(&c),
        });
    }
    acc.unwrap()
}

// ---- Parser ----

struct Parser<'a> {
    input: &'a [u8],
    pos: usize,
}

/// Parses the polynomial grammar; errors carry the byte position.
pub fn parse(text: &str) -> Result<GradedPolynomial, PolyError> {
    let mut p = Parser {
        input: text.as_bytes(),
        pos: 0,
    };
    let poly = p.poly()?;
    p.skip_ws();
    if p.pos != p.input.len() {
        return Err(PolyError::syntax(p.pos, "trailing input"));
    }
    Ok(poly)
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.input.len() && self.input[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.input.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<u8> {
        let c = self.peek()?;
        self.pos += 1;
        Some(c)
    }

    fn expect(&mut self, c: u8) -> Result<(), PolyError> {
        match self.bump() {
            Some(got) if got == c => Ok(()),
            _ => Err(PolyError::syntax(
                self.pos.saturating_sub(1),
                format!("expected `{}`", c as char),
            )),
        }
    }

    fn integer(&mut self) -> Result<i64, PolyError> {
        self.skip_ws();
        let start = self.pos;
        if self.input.get(self.pos) == Some(&b'-') {
            self.pos += 1;
        }
        let digits_start = self.pos;
        while self
            .input
            .get(self.pos)
            .is_some_and(u8::is_ascii_digit)
        {
            self.pos += 1;
        }
        if self.pos == digits_start {
            return Err(PolyError::syntax(start, "expected an integer"));
        }
        std::str::from_utf8(&self.input[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|_| PolyError::syntax(start, "integer out of range"))
    }

    fn rational(&mut self) -> Result<Rat, PolyError> {
        let num = self.integer()?;
        if self.peek() == Some(b'/') {
            self.bump();
            let start = self.pos;
            let den = self.integer()?;
            if den == 0 {
                return Err(PolyError::syntax(start, "zero denominator"));
            }
            Ok(Rat::new(num, den))
        } else {
            Ok(Rat::from_i64(num))
        }
    }

    fn poly(&mut self) -> Result<GradedPolynomial, PolyError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.bump();
                    acc = acc.add(&self.term()?);
                }
                Some(b'-') => {
                    self.bump();
                    acc = acc.sub(&self.term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<GradedPolynomial, PolyError> {
        let coeff = match self.peek() {
            Some(c) if c.is_ascii_digit() || c == b'-' => {
                let r = self.rational()?;
                self.expect(b'*')?;
                r
            }
            _ => Rat::one(),
        };
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                // `*` between factors is accepted; juxtaposition works too.
                Some(b'*') => {
                    self.bump();
                    acc = acc.mul(&self.factor()?);
                }
                Some(b'x') | Some(b'[') | Some(b'(') => {
                    acc = acc.mul(&self.factor()?);
                }
                _ => break,
            }
        }
        Ok(acc.scale(&coeff))
    }

    fn factor(&mut self) -> Result<GradedPolynomial, PolyError> {
        match self.peek() {
            Some(b'x') => self.variable(),
            Some(b'[') => {
                self.bump();
                let left = self.poly()?;
                self.expect(b',')?;
                let right = self.poly()?;
                self.expect(b']')?;
                Ok(GradedPolynomial::commutator(&left, &right))
            }
            Some(b'(') => {
                self.bump();
                let inner = self.poly()?;
                self.expect(b')')?;
                Ok(inner)
            }
            _ => Err(PolyError::syntax(self.pos, "expected a factor")),
        }
    }

    fn variable(&mut self) -> Result<GradedPolynomial, PolyError> {
        self.expect(b'x')?;
        let index = self.integer()?;
        if index < 1 {
            return Err(PolyError::syntax(self.pos, "variable indices start at 1"));
        }
        self.expect(b'@')?;
        let degree = self.degree()?;
        Ok(GradedPolynomial::monomial(
            vec![GradedVariable::new(index as u32, degree)],
            Rat::one(),
        ))
    }

    fn degree(&mut self) -> Result<VarDegree, PolyError> {
        match self.peek() {
            Some(b'e') => {
                self.bump();
                Ok(VarDegree::Neutral)
            }
            Some(b'(') => {
                self.bump();
                let mut coords = vec![self.integer()?];
                while self.peek() == Some(b',') {
                    self.bump();
                    coords.push(self.integer()?);
                }
                self.expect(b')')?;
                Ok(VarDegree::Coords(coords))
            }
            _ => Err(PolyError::syntax(self.pos, "expected a degree (`e` or tuple)")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{grassmann, quaternions};
    use proptest::prelude::*;

    fn var(i: u32, d: VarDegree) -> GradedVariable {
        GradedVariable::new(i, d)
    }

    fn deg(cs: &[i64]) -> VarDegree {
        VarDegree::Coords(cs.to_vec())
    }

    #[test]
    fn parse_commutator() {
        let p = parse("[x1@e, x2@e]").unwrap();
        assert_eq!(p.num_terms(), 2);
        assert_eq!(p.to_string(), "x1@e*x2@e - x2@e*x1@e");
    }

    #[test]
    fn parse_two_term_difference() {
        let p = parse("x1@(1,0)*x2@(0,2) - x2@(0,2)*x1@(1,0)").unwrap();
        assert_eq!(p.num_terms(), 2);
        assert_eq!(p.to_string(), "x1@(1,0)*x2@(0,2) - x2@(0,2)*x1@(1,0)");
    }

    #[test]
    fn parse_scaled_linear_term() {
        let p = parse("2/3*x1@e").unwrap();
        assert_eq!(p.num_terms(), 1);
        assert_eq!(p.degree(), 1);
        assert_eq!(p.to_string(), "2/3*x1@e");
    }

    #[test]
    fn parse_errors_carry_positions() {
        assert!(matches!(parse(""), Err(PolyError::Syntax { .. })));
        assert!(matches!(parse("x1@q"), Err(PolyError::Syntax { .. })));
        assert!(matches!(parse("x1@e +"), Err(PolyError::Syntax { .. })));
        assert!(matches!(parse("y1@e"), Err(PolyError::Syntax { .. })));
        assert!(matches!(parse("x1@e)"), Err(PolyError::Syntax { .. })));
    }

    #[test]
    fn juxtaposition_is_product() {
        let a = parse("x1@e x2@e").unwrap();
        let b = parse("x1@e*x2@e").unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn homogeneous_components_split_by_degree() {
        let g = FiniteAbelianGroup::new(&[2]).unwrap();
        let p = parse("x1@(1)*x2@(1) + x1@(1)").unwrap();
        let comps = p.homogeneous_components(&g).unwrap();
        assert_eq!(comps.len(), 2);
        let quad = &comps[&g.identity()];
        assert_eq!(quad.degree(), 2);
        let lin = &comps[&g.element(&[1]).unwrap()];
        assert_eq!(lin.degree(), 1);
        let total: GradedPolynomial = comps.values().fold(GradedPolynomial::zero(), |a, c| a.add(c));
        assert_eq!(total, p.bind(&g).unwrap());
    }

    #[test]
    fn monomial_is_neutral_iff_degrees_cancel() {
        let g = FiniteAbelianGroup::new(&[4]).unwrap();
        let m = GradedMonomial(vec![var(1, deg(&[1])), var(2, deg(&[3]))]);
        assert!(m.g_degree(&g).unwrap().is_identity());
        let m2 = GradedMonomial(vec![var(1, deg(&[1])), var(2, deg(&[1]))]);
        assert!(!m2.g_degree(&g).unwrap().is_identity());
    }

    #[test]
    fn polarization_of_a_square() {
        let p = parse("x1@e*x1@e").unwrap();
        let out = p.multilinearize_with_factors();
        assert_eq!(out.len(), 1);
        let (lin, factor) = &out[0];
        assert_eq!(factor, &Rat::from_i64(2));
        assert_eq!(lin.to_string(), "x1@e*x2@e + x2@e*x1@e");
    }

    #[test]
    fn multilinear_polynomials_are_fixed_points() {
        let p = parse("[x1@e, x2@(1)]").unwrap();
        assert!(p.is_multilinear());
        let out = p.multilinearize();
        assert_eq!(out, vec![p]);
    }

    #[test]
    fn polarization_of_square_times_variable() {
        // Oracle: substituting x -> t1 + t2 in x*x*y and keeping the part
        // linear in both t1 and t2 gives t1 t2 y + t2 t1 y.
        let p = parse("x1@e*x1@e*x2@e").unwrap();
        let out = p.multilinearize();
        assert_eq!(out.len(), 1);
        let lin = &out[0];
        assert_eq!(lin.num_terms(), 2);
        assert!(lin.is_multilinear());
        let sum = lin.terms().map(|(_, c)| c.clone()).sum::<Rat>();
        assert_eq!(sum, Rat::from_i64(2));
    }

    #[test]
    fn multihomogeneous_split_sums_back() {
        let p = parse("x1@e*x1@e + x1@e*x2@e + x2@e").unwrap();
        let comps = p.multihomogeneous_components();
        assert_eq!(comps.len(), 3);
        let total = comps.iter().fold(GradedPolynomial::zero(), |a, c| a.add(c));
        assert_eq!(total, p);
    }

    #[test]
    fn fg_expand_cases() {
        let g = FiniteAbelianGroup::new(&[3]).unwrap();
        let xi = g.element(&[1]).unwrap();
        let zeta = g.element(&[2]).unwrap();
        let mut t = FgTable::new();
        t.set(xi.clone(), zeta.clone(), Rat::one());
        // One-sided: only x1 x2 survives.
        let p = fg_expand(&t, &xi, &zeta);
        assert_eq!(p.num_terms(), 1);
        assert_eq!(p.to_string(), "x1@(1)*x2@(2)");
        // Symmetric nonzero: a multiple of the ordinary commutator.
        t.set(zeta.clone(), xi.clone(), Rat::one());
        let q = fg_expand(&t, &xi, &zeta);
        assert_eq!(q.to_string(), "x1@(1)*x2@(2) - x2@(2)*x1@(1)");
        // Zero case.
        let empty = FgTable::new();
        assert!(fg_expand(&empty, &xi, &zeta).is_zero());
    }

    #[test]
    fn fg_expand_antisymmetry() {
        let g = FiniteAbelianGroup::new(&[5]).unwrap();
        let xi = g.element(&[1]).unwrap();
        let zeta = g.element(&[3]).unwrap();
        let mut t = FgTable::new();
        t.set(xi.clone(), zeta.clone(), Rat::new(2, 3));
        t.set(zeta.clone(), xi.clone(), Rat::from_i64(-4));
        let p = fg_expand(&t, &xi, &zeta);
        let q = fg_expand(&t, &zeta, &xi);
        // Swap the variable indices of q and compare with -p.
        let mut swapped = GradedPolynomial::zero();
        for (m, c) in q.terms() {
            let vars: Vec<GradedVariable> = m
                .vars()
                .iter()
                .map(|v| GradedVariable::new(if v.index == 1 { 2 } else { 1 }, v.degree.clone()))
                .collect();
            swapped.add_term(GradedMonomial(vars), c.clone());
        }
        assert_eq!(swapped, p.scale(&-Rat::one()));
    }

    #[test]
    fn left_normed_shapes() {
        let c2 = left_normed(2);
        assert_eq!(c2.num_terms(), 2);
        let c3 = left_normed(3);
        assert_eq!(c3.num_terms(), 4);
        for (_, c) in c3.terms() {
            assert!(c.abs().is_one());
        }
        assert_eq!(left_normed(5).num_terms(), 16);
    }

    #[test]
    fn product_of_commutators_shapes() {
        let p = product_of_commutators(2);
        assert_eq!(p.num_terms(), 4);
        assert_eq!(p.degree(), 4);
        assert_eq!(p.variables().len(), 4);
    }

    #[test]
    fn evaluation_on_fixtures() {
        // Ordinary commutator on the quaternions: [i, j] = 2k.
        let q = quaternions();
        let p = left_normed(2);
        let vars: Vec<GradedVariable> = p.variables().into_iter().collect();
        let mut assignment = BTreeMap::new();
        assignment.insert(vars[0].clone(), q.element_by_label("i").unwrap());
        assignment.insert(vars[1].clone(), q.element_by_label("j").unwrap());
        let out = p.evaluate(&q, &assignment).unwrap();
        let k = q.element_by_label("k").unwrap();
        assert_eq!(out, q.scale_element(&k, &Rat::from_i64(2)).unwrap());

        // [e1, e2] = 2 e1e2 in the rank-3 exterior algebra.
        let gr = grassmann(3);
        let p = parse("[x1@(1), x2@(1)]").unwrap();
        let mut assignment = BTreeMap::new();
        assignment.insert(
            var(1, deg(&[1])),
            gr.element_by_label("g1").unwrap(),
        );
        assignment.insert(
            var(2, deg(&[1])),
            gr.element_by_label("g2").unwrap(),
        );
        let out = p.evaluate(&gr, &assignment).unwrap();
        let e12 = gr.element_by_label("g1_2").unwrap();
        assert_eq!(out, gr.scale_element(&e12, &Rat::from_i64(2)).unwrap());
    }

    #[test]
    fn evaluation_rejects_degree_mismatch() {
        let q = quaternions();
        let p = parse("x1@(0,1)").unwrap();
        let mut assignment = BTreeMap::new();
        assignment.insert(var(1, deg(&[0, 1])), q.element_by_label("j").unwrap());
        assert!(matches!(
            p.evaluate(&q, &assignment),
            Err(EvalError::Poly(PolyError::EvaluationContract(_)))
        ));
    }

    fn arb_degree() -> impl Strategy<Value = VarDegree> {
        prop_oneof![
            Just(VarDegree::Neutral),
            proptest::collection::vec(0i64..5, 1..3).prop_map(VarDegree::Coords),
        ]
    }

    fn arb_poly() -> impl Strategy<Value = GradedPolynomial> {
        proptest::collection::vec(
            (
                proptest::collection::vec((1u32..5, arb_degree()), 1..4),
                (-6i64..7).prop_filter("nonzero", |c| *c != 0),
            ),
            1..5,
        )
        .prop_map(|raw| {
            let mut p = GradedPolynomial::zero();
            for (vars, c) in raw {
                let vars = vars
                    .into_iter()
                    .map(|(i, d)| GradedVariable::new(i, d))
                    .collect();
                p.add_term(GradedMonomial(vars), Rat::from_i64(c));
            }
            p
        })
    }

    proptest! {
        #[test]
        fn print_parse_round_trip(p in arb_poly()) {
            prop_assume!(!p.is_zero());
            let text = p.to_string();
            let q = parse(&text).unwrap();
            prop_assert_eq!(p, q);
        }

        #[test]
        fn multihomogeneous_components_sum_to_input(p in arb_poly()) {
            let comps = p.multihomogeneous_components();
            let total = comps.iter().fold(GradedPolynomial::zero(), |a, c| a.add(c));
            prop_assert_eq!(total, p);
        }
    }
}

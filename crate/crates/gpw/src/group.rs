//! Finite abelian groups presented as products of cyclic factors, with
//! subgroups, cosets, quotients and the `Z2xZ3`-style literal syntax.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GroupError {
    #[error("invalid group: modulus {0} is not positive")]
    InvalidModulus(i64),
    #[error("group mismatch: expected {expected} coordinates, got {got}")]
    Mismatch { expected: usize, got: usize },
    #[error("element {0} does not belong to the group")]
    NotAMember(String),
    #[error("malformed literal `{0}`")]
    BadLiteral(String),
}

/// A finite abelian group `Z_{n_1} x ... x Z_{n_r}`. The empty factor list
/// is the trivial group.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FiniteAbelianGroup {
    factors: Vec<u64>,
}

/// An element of a [`FiniteAbelianGroup`]: one reduced residue per factor.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct GroupElement {
    coords: Vec<u64>,
}

impl FiniteAbelianGroup {
    pub fn new(factors: &[i64]) -> Result<Self, GroupError> {
        for &n in factors {
            if n < 1 {
                return Err(GroupError::InvalidModulus(n));
            }
        }
        Ok(FiniteAbelianGroup {
            factors: factors.iter().map(|&n| n as u64).collect(),
        })
    }

    pub fn trivial() -> Self {
        FiniteAbelianGroup { factors: vec![1] }
    }

    pub fn factors(&self) -> &[u64] {
        &self.factors
    }

    pub fn order(&self) -> u64 {
        self.factors.iter().product()
    }

    pub fn is_trivial(&self) -> bool {
        self.order() == 1
    }

    pub fn identity(&self) -> GroupElement {
        GroupElement {
            coords: vec![0; self.factors.len()],
        }
    }

    /// Builds the element with the given coordinates, reduced mod the factors.
    pub fn element(&self, coords: &[i64]) -> Result<GroupElement, GroupError> {
        if coords.len() != self.factors.len() {
            return Err(GroupError::Mismatch {
                expected: self.factors.len(),
                got: coords.len(),
            });
        }
        let coords = coords
            .iter()
            .zip(&self.factors)
            .map(|(&c, &n)| (c.rem_euclid(n as i64)) as u64)
            .collect();
        Ok(GroupElement { coords })
    }

    fn check(&self, a: &GroupElement) -> Result<(), GroupError> {
        if a.coords.len() != self.factors.len() {
            return Err(GroupError::Mismatch {
                expected: self.factors.len(),
                got: a.coords.len(),
            });
        }
        if a.coords.iter().zip(&self.factors).any(|(&c, &n)| c >= n) {
            return Err(GroupError::NotAMember(a.to_string()));
        }
        Ok(())
    }

    pub fn contains(&self, a: &GroupElement) -> bool {
        self.check(a).is_ok()
    }

    pub fn add(&self, a: &GroupElement, b: &GroupElement) -> Result<GroupElement, GroupError> {
        self.check(a)?;
        self.check(b)?;
        Ok(GroupElement {
            coords: a
                .coords
                .iter()
                .zip(&b.coords)
                .zip(&self.factors)
                .map(|((&x, &y), &n)| (x + y) % n)
                .collect(),
        })
    }

    pub fn inverse(&self, a: &GroupElement) -> Result<GroupElement, GroupError> {
        self.check(a)?;
        Ok(GroupElement {
            coords: a
                .coords
                .iter()
                .zip(&self.factors)
                .map(|(&x, &n)| (n - x) % n)
                .collect(),
        })
    }

    pub fn sub(&self, a: &GroupElement, b: &GroupElement) -> Result<GroupElement, GroupError> {
        let nb = self.inverse(b)?;
        self.add(a, &nb)
    }

    /// Least `m >= 1` with `m * a = e`.
    pub fn order_of(&self, a: &GroupElement) -> Result<u64, GroupError> {
        self.check(a)?;
        let mut m = 1;
        let mut acc = a.clone();
        while !acc.is_identity() {
            acc = self.add(&acc, a)?;
            m += 1;
        }
        Ok(m)
    }

    /// All elements in lexicographic coordinate order.
    pub fn elements(&self) -> Vec<GroupElement> {
        let mut out = vec![self.identity()];
        for (pos, &n) in self.factors.iter().enumerate() {
            let mut next = Vec::with_capacity(out.len() * n as usize);
            for prefix in &out {
                for c in 0..n {
                    let mut coords = prefix.coords.clone();
                    coords[pos] = c;
                    next.push(GroupElement { coords });
                }
            }
            out = next;
        }
        out.sort();
        out
    }

    /// Appends a `Z_2` factor; existing elements embed with a trailing zero.
    pub fn product_with_z2(&self) -> FiniteAbelianGroup {
        let mut factors = self.factors.clone();
        factors.push(2);
        FiniteAbelianGroup { factors }
    }

    /// Embeds an element of `self` into `self x Z_2` with the given parity.
    pub fn extend_with_parity(&self, a: &GroupElement, parity: u64) -> GroupElement {
        let mut coords = a.coords.clone();
        coords.push(parity % 2);
        GroupElement { coords }
    }

    /// Splits an element of a group whose last factor is `Z_2` into its
    /// leading part and the parity bit.
    pub fn split_last(a: &GroupElement) -> (GroupElement, u64) {
        let mut coords = a.coords.clone();
        let parity = coords.pop().unwrap_or(0);
        (GroupElement { coords }, parity)
    }

    /// Drops the last factor (used when regrading a `G x Z_2` algebra over `G`).
    pub fn drop_last_factor(&self) -> FiniteAbelianGroup {
        let mut factors = self.factors.clone();
        factors.pop();
        if factors.is_empty() {
            factors.push(1);
        }
        FiniteAbelianGroup { factors }
    }

    pub fn subgroup(&self, gens: &[GroupElement]) -> Result<Subgroup, GroupError> {
        for g in gens {
            self.check(g)?;
        }
        let mut elems: Vec<GroupElement> = vec![self.identity()];
        let mut frontier = vec![self.identity()];
        while let Some(x) = frontier.pop() {
            for g in gens {
                let y = self.add(&x, g)?;
                if !elems.contains(&y) {
                    elems.push(y.clone());
                    frontier.push(y);
                }
            }
        }
        elems.sort();
        Ok(Subgroup {
            parent: self.clone(),
            gens: gens.to_vec(),
            elems,
        })
    }
}

impl fmt::Display for FiniteAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "Z1");
        }
        let parts: Vec<String> = self.factors.iter().map(|n| format!("Z{n}")).collect();
        write!(f, "{}", parts.join("x"))
    }
}

impl FromStr for FiniteAbelianGroup {
    type Err = GroupError;

    /// Parses literals like `Z2xZ2`, `Z3xZ5`, `Z1`.
    fn from_str(s: &str) -> Result<Self, GroupError> {
        let bad = || GroupError::BadLiteral(s.to_string());
        let mut factors = Vec::new();
        for part in s.trim().split('x') {
            let part = part.trim();
            let digits = part.strip_prefix('Z').ok_or_else(bad)?;
            let n: i64 = digits.parse().map_err(|_| bad())?;
            if n < 1 {
                return Err(GroupError::InvalidModulus(n));
            }
            factors.push(n as u64);
        }
        if factors.is_empty() {
            return Err(bad());
        }
        Ok(FiniteAbelianGroup { factors })
    }
}

impl GroupElement {
    pub fn coords(&self) -> &[u64] {
        &self.coords
    }

    pub fn is_identity(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }

    /// Parses `(a,b,...)` or `e`; `e` needs the target group for its arity.
    pub fn parse(s: &str, group: &FiniteAbelianGroup) -> Result<GroupElement, GroupError> {
        let s = s.trim();
        if s == "e" {
            return Ok(group.identity());
        }
        let bad = || GroupError::BadLiteral(s.to_string());
        let inner = s
            .strip_prefix('(')
            .and_then(|t| t.strip_suffix(')'))
            .ok_or_else(bad)?;
        let coords: Result<Vec<i64>, _> = inner.split(',').map(|p| p.trim().parse()).collect();
        group.element(&coords.map_err(|_| bad())?)
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coords.is_empty() {
            return write!(f, "e");
        }
        let parts: Vec<String> = self.coords.iter().map(|c| c.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// A subgroup given by generators, with its element set cached.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Subgroup {
    parent: FiniteAbelianGroup,
    gens: Vec<GroupElement>,
    elems: Vec<GroupElement>,
}

impl Subgroup {
    pub fn parent(&self) -> &FiniteAbelianGroup {
        &self.parent
    }

    pub fn generators(&self) -> &[GroupElement] {
        &self.gens
    }

    /// Sorted element list.
    pub fn elements(&self) -> &[GroupElement] {
        &self.elems
    }

    pub fn order(&self) -> u64 {
        self.elems.len() as u64
    }

    pub fn index(&self) -> u64 {
        self.parent.order() / self.order()
    }

    pub fn contains(&self, a: &GroupElement) -> bool {
        self.elems.binary_search(a).is_ok()
    }

    /// The canonical (minimal) representative of `a`'s coset.
    pub fn coset_rep(&self, a: &GroupElement) -> Result<GroupElement, GroupError> {
        let mut best: Option<GroupElement> = None;
        for h in &self.elems {
            let c = self.parent.add(a, h)?;
            if best.as_ref().is_none_or(|b| c < *b) {
                best = Some(c);
            }
        }
        Ok(best.unwrap())
    }

    /// The coset partition of the parent group; cells are sorted element
    /// lists, ordered by their minimal representative.
    pub fn cosets(&self) -> Vec<Vec<GroupElement>> {
        let mut cells: BTreeMap<GroupElement, Vec<GroupElement>> = BTreeMap::new();
        for x in self.parent.elements() {
            let rep = self.coset_rep(&x).expect("member of parent");
            cells.entry(rep).or_default().push(x);
        }
        cells.into_values().collect()
    }
}

/// The result of forming `G / P`: a cyclic-product presentation of the
/// quotient together with the projection map.
#[derive(Clone, Debug)]
pub struct QuotientMap {
    parent: FiniteAbelianGroup,
    quotient: FiniteAbelianGroup,
    table: BTreeMap<GroupElement, GroupElement>,
    identity_on_parent: bool,
}

impl QuotientMap {
    pub fn quotient_group(&self) -> &FiniteAbelianGroup {
        &self.quotient
    }

    pub fn parent(&self) -> &FiniteAbelianGroup {
        &self.parent
    }

    pub fn project(&self, a: &GroupElement) -> Result<GroupElement, GroupError> {
        if self.identity_on_parent {
            if !self.parent.contains(a) {
                return Err(GroupError::NotAMember(a.to_string()));
            }
            return Ok(a.clone());
        }
        self.table
            .get(a)
            .cloned()
            .ok_or_else(|| GroupError::NotAMember(a.to_string()))
    }
}

/// Forms the quotient of `group` by `sub`.
///
/// The quotient is presented as a product of cyclic factors in decreasing
/// divisibility order. Factor sizes come from peeling maximal-order cosets;
/// a matching generator tuple is then found by backtracking. This covers
/// grading coarsening without any Smith normal form machinery.
pub fn quotient(
    group: &FiniteAbelianGroup,
    sub: &Subgroup,
) -> Result<(FiniteAbelianGroup, QuotientMap), GroupError> {
    assert_eq!(sub.parent(), group, "subgroup of a different group");
    if sub.order() == 1 {
        let map = QuotientMap {
            parent: group.clone(),
            quotient: group.clone(),
            table: BTreeMap::new(),
            identity_on_parent: true,
        };
        return Ok((group.clone(), map));
    }

    let elems = group.elements();

    // Invariant factors of G/sub: repeatedly take the maximal coset order
    // and enlarge the kernel by a witness of that order.
    let mut mods: Vec<u64> = Vec::new();
    let mut layer = sub.clone();
    while layer.order() < group.order() {
        let mut best: Option<(u64, GroupElement)> = None;
        for x in &elems {
            if layer.contains(x) {
                continue;
            }
            let ord = coset_order(group, &layer, x)?;
            if best.as_ref().is_none_or(|(b, _)| ord > *b) {
                best = Some((ord, x.clone()));
            }
        }
        let (ord, g) = best.expect("proper subgroup leaves elements");
        mods.push(ord);
        let mut new_gens = layer.generators().to_vec();
        new_gens.push(g);
        layer = group.subgroup(&new_gens)?;
    }

    // Generators h_i with coset order exactly mods[i] whose layers grow by
    // exactly mods[i] give an internal direct sum; such a tuple exists by
    // the basis theorem, and the search is cheap at these group sizes.
    let gens = find_basis(group, sub, &mods, &elems, &mut Vec::new())?
        .expect("invariant factor basis exists");

    let quotient_group = FiniteAbelianGroup {
        factors: mods.clone(),
    };
    let mut table = BTreeMap::new();
    for tuple in quotient_group.elements() {
        let mut x = group.identity();
        for (c, g) in tuple.coords().iter().zip(&gens) {
            for _ in 0..*c {
                x = group.add(&x, g)?;
            }
        }
        for h in sub.elements() {
            table.insert(group.add(&x, h)?, tuple.clone());
        }
    }
    debug_assert_eq!(table.len() as u64, group.order(), "cosets cover the group");

    let map = QuotientMap {
        parent: group.clone(),
        quotient: quotient_group.clone(),
        table,
        identity_on_parent: false,
    };
    Ok((quotient_group, map))
}

/// Order of `x + sub` in the quotient `group / sub`.
fn coset_order(
    group: &FiniteAbelianGroup,
    sub: &Subgroup,
    x: &GroupElement,
) -> Result<u64, GroupError> {
    let mut acc = x.clone();
    let mut m = 1;
    while !sub.contains(&acc) {
        acc = group.add(&acc, x)?;
        m += 1;
    }
    Ok(m)
}

/// Backtracking search for generators realizing the invariant factors
/// `mods` of `group / sub`. `chosen` accumulates the prefix.
fn find_basis(
    group: &FiniteAbelianGroup,
    sub: &Subgroup,
    mods: &[u64],
    elems: &[GroupElement],
    chosen: &mut Vec<GroupElement>,
) -> Result<Option<Vec<GroupElement>>, GroupError> {
    let i = chosen.len();
    if i == mods.len() {
        return Ok(Some(chosen.clone()));
    }
    let mut gens = sub.generators().to_vec();
    gens.extend_from_slice(chosen);
    let layer = group.subgroup(&gens)?;
    for x in elems {
        if layer.contains(x) {
            continue;
        }
        if coset_order(group, sub, x)? != mods[i] {
            continue;
        }
        let mut enlarged = gens.clone();
        enlarged.push(x.clone());
        if group.subgroup(&enlarged)?.order() != layer.order() * mods[i] {
            continue;
        }
        chosen.push(x.clone());
        if let Some(found) = find_basis(group, sub, mods, elems, chosen)? {
            return Ok(Some(found));
        }
        chosen.pop();
    }
    Ok(None)
}

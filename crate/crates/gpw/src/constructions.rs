//! Factory for every algebra the claim catalog names: elementary and
//! elementary-canonical matrix gradings, twisted group algebras, the
//! Klein-graded 2x2 matrix and quaternion fixtures, truncated exterior
//! algebras, envelopes, coarsenings and the growing central-neutral family.

use crate::algebra::{AlgebraError, CanonicalMeta, GradedAlgebra, SparseProduct};
use crate::group::{FiniteAbelianGroup, GroupElement, QuotientMap, Subgroup};
use crate::scalar::Rat;
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ConstructionError {
    #[error("invalid cocycle: {0}")]
    InvalidCocycle(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// A 2-cocycle table on a subgroup, with nonzero rational values.
#[derive(Clone, Debug)]
pub struct Cocycle {
    group: FiniteAbelianGroup,
    elements: Vec<GroupElement>,
    table: BTreeMap<(GroupElement, GroupElement), Rat>,
}

impl Cocycle {
    /// Validates totality, nonzero values and the cocycle identity
    /// `s(a,b) s(a+b,c) = s(b,c) s(a,b+c)` on all triples.
    pub fn new(
        group: FiniteAbelianGroup,
        elements: Vec<GroupElement>,
        table: BTreeMap<(GroupElement, GroupElement), Rat>,
    ) -> Result<Self, ConstructionError> {
        let mut elements = elements;
        elements.sort();
        elements.dedup();
        if !elements.iter().any(|e| e.is_identity()) {
            return Err(ConstructionError::InvalidCocycle(
                "subgroup must contain the identity".into(),
            ));
        }
        for a in &elements {
            for b in &elements {
                let sum = group
                    .add(a, b)
                    .map_err(|e| ConstructionError::InvalidInput(e.to_string()))?;
                if !elements.contains(&sum) {
                    return Err(ConstructionError::InvalidCocycle(format!(
                        "element list not closed: {a} + {b} = {sum} missing"
                    )));
                }
                match table.get(&(a.clone(), b.clone())) {
                    None => {
                        return Err(ConstructionError::InvalidCocycle(format!(
                            "missing entry at ({a}, {b})"
                        )))
                    }
                    Some(v) if v.is_zero() => {
                        return Err(ConstructionError::InvalidCocycle(format!(
                            "zero value at ({a}, {b})"
                        )))
                    }
                    _ => {}
                }
            }
        }
        let cocycle = Cocycle {
            group,
            elements,
            table,
        };
        for a in &cocycle.elements {
            for b in &cocycle.elements {
                for c in &cocycle.elements {
                    let ab = cocycle.group.add(a, b).unwrap();
                    let bc = cocycle.group.add(b, c).unwrap();
                    let lhs = cocycle.at(a, b) * cocycle.at(&ab, c);
                    let rhs = cocycle.at(b, c) * cocycle.at(a, &bc);
                    if lhs != rhs {
                        return Err(ConstructionError::InvalidCocycle(format!(
                            "cocycle identity fails at ({a}, {b}, {c})"
                        )));
                    }
                }
            }
        }
        Ok(cocycle)
    }

    /// The trivial cocycle on a subgroup.
    pub fn trivial(sub: &Subgroup) -> Self {
        let mut table = BTreeMap::new();
        for a in sub.elements() {
            for b in sub.elements() {
                table.insert((a.clone(), b.clone()), Rat::one());
            }
        }
        Cocycle {
            group: sub.parent().clone(),
            elements: sub.elements().to_vec(),
            table,
        }
    }

    /// The coboundary of `t`: `s(a, b) = t(a) t(b) / t(a+b)`. Always a
    /// symmetric cocycle.
    pub fn from_coboundary(
        sub: &Subgroup,
        t: impl Fn(&GroupElement) -> Rat,
    ) -> Result<Self, ConstructionError> {
        let group = sub.parent().clone();
        let mut table = BTreeMap::new();
        for a in sub.elements() {
            for b in sub.elements() {
                let ta = t(a);
                let tb = t(b);
                let tab = t(&group.add(a, b).unwrap());
                if ta.is_zero() || tb.is_zero() || tab.is_zero() {
                    return Err(ConstructionError::InvalidCocycle(
                        "coboundary function must be nonzero".into(),
                    ));
                }
                table.insert((a.clone(), b.clone()), (&ta * &tb).div_exact(&tab));
            }
        }
        Cocycle::new(group, sub.elements().to_vec(), table)
    }

    pub fn group(&self) -> &FiniteAbelianGroup {
        &self.group
    }

    pub fn elements(&self) -> &[GroupElement] {
        &self.elements
    }

    pub fn at(&self, a: &GroupElement, b: &GroupElement) -> &Rat {
        &self.table[&(a.clone(), b.clone())]
    }

    pub fn table(&self) -> &BTreeMap<(GroupElement, GroupElement), Rat> {
        &self.table
    }

    pub fn is_symmetric(&self) -> bool {
        self.elements.iter().all(|a| {
            self.elements
                .iter()
                .all(|b| self.at(a, b) == self.at(b, a))
        })
    }
}

fn matrix_label(i: usize, j: usize) -> String {
    format!("E{}{}", i + 1, j + 1)
}

/// The elementary grading on the k x k matrix algebra: `deg E_ij` is
/// `theta_j - theta_i` in additive notation.
pub fn elementary_matrix_grading(
    group: &FiniteAbelianGroup,
    k: usize,
    theta: &[GroupElement],
) -> Result<GradedAlgebra, ConstructionError> {
    if k == 0 || theta.len() != k {
        return Err(ConstructionError::InvalidInput(format!(
            "need a tuple of length k = {k}, got {}",
            theta.len()
        )));
    }
    let idx = |i: usize, j: usize| i * k + j;
    let mut labels = Vec::with_capacity(k * k);
    let mut degrees = Vec::with_capacity(k * k);
    for i in 0..k {
        for j in 0..k {
            labels.push(matrix_label(i, j));
            let d = group
                .sub(&theta[j], &theta[i])
                .map_err(|e| ConstructionError::InvalidInput(e.to_string()))?;
            degrees.push(d);
        }
    }
    let mut products = BTreeMap::new();
    for i in 0..k {
        for j in 0..k {
            for l in 0..k {
                products.insert((idx(i, j), idx(j, l)), vec![(idx(i, l), Rat::one())]);
            }
        }
    }
    // No single basis matrix is the unit for k > 1.
    let unit = if k == 1 { Some(0) } else { None };
    Ok(GradedAlgebra::new(
        group.clone(),
        labels,
        degrees,
        products,
        unit,
    )?)
}

/// The twisted group algebra of the cocycle's subgroup: basis `eta_h`,
/// `deg eta_h = h`, products `eta_a eta_b = s(a,b) eta_{a+b}`.
pub fn twisted_group_algebra(sigma: &Cocycle) -> Result<GradedAlgebra, ConstructionError> {
    elementary_canonical(sigma.group(), 1, sigma, &[sigma.group().identity()])
}

/// The k x k matrix algebra over a twisted group algebra with the grading
/// `deg(E_ij eta_h) = theta_j - theta_i + h` and products
/// `(E_ij eta_a)(E_rs eta_b) = delta_jr s(a,b) E_is eta_{a+b}`.
pub fn elementary_canonical(
    group: &FiniteAbelianGroup,
    k: usize,
    sigma: &Cocycle,
    theta: &[GroupElement],
) -> Result<GradedAlgebra, ConstructionError> {
    if k == 0 || theta.len() != k {
        return Err(ConstructionError::InvalidInput(format!(
            "need a tuple of length k = {k}, got {}",
            theta.len()
        )));
    }
    if sigma.group() != group {
        return Err(ConstructionError::InvalidInput(
            "cocycle subgroup lives in a different group".into(),
        ));
    }
    let h_elems = sigma.elements();
    let m = h_elems.len();
    let index = |i: usize, j: usize, h: usize| (i * k + j) * m + h;
    let mut labels = Vec::new();
    let mut degrees = Vec::new();
    let mut cells = Vec::new();
    for i in 0..k {
        for j in 0..k {
            for h in h_elems {
                labels.push(if k == 1 {
                    format!("eta{h}")
                } else {
                    format!("{}eta{h}", matrix_label(i, j))
                });
                let d = group
                    .sub(&theta[j], &theta[i])
                    .and_then(|d| group.add(&d, h))
                    .map_err(|e| ConstructionError::InvalidInput(e.to_string()))?;
                degrees.push(d);
                cells.push((i, j, h.clone()));
            }
        }
    }
    let mut products = BTreeMap::new();
    for i in 0..k {
        for j in 0..k {
            for (a_pos, a) in h_elems.iter().enumerate() {
                for s in 0..k {
                    for (b_pos, b) in h_elems.iter().enumerate() {
                        let ab = group.add(a, b).unwrap();
                        let ab_pos = h_elems.binary_search(&ab).expect("subgroup closed");
                        products.insert(
                            (index(i, j, a_pos), index(j, s, b_pos)),
                            vec![(index(i, s, ab_pos), sigma.at(a, b).clone())],
                        );
                    }
                }
            }
        }
    }
    // eta_e is the unit of the k = 1 case when the cocycle is normalized.
    let e = group.identity();
    let unit = if k == 1 && sigma.at(&e, &e).is_one() {
        Some(h_elems.binary_search(&e).unwrap())
    } else {
        None
    };
    let mut alg = GradedAlgebra::new(group.clone(), labels, degrees, products, unit)?;
    alg.set_canonical_meta(CanonicalMeta {
        k,
        subgroup: h_elems.to_vec(),
        sigma: sigma.table().clone(),
        theta: theta.to_vec(),
        cells,
    });
    Ok(alg)
}

/// 2x2 matrices with the Klein grading on the basis
/// `{I, E11-E22, E12+E21, E12-E21}`.
pub fn pauli_m2() -> GradedAlgebra {
    let group = FiniteAbelianGroup::new(&[2, 2]).unwrap();
    let el = |a: i64, b: i64| group.element(&[a, b]).unwrap();
    let labels: Vec<String> = ["I", "E11-E22", "E12+E21", "E12-E21"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    let degrees = vec![el(0, 0), el(1, 1), el(0, 1), el(1, 0)];
    let one = Rat::one;
    let neg = || -Rat::one();
    // Products computed from the matrix realization:
    //   D = E11-E22, P = E12+E21, M = E12-E21 (indices 1, 2, 3).
    let mut products = BTreeMap::new();
    for i in 0..4 {
        products.insert((0, i), vec![(i, one())]);
        products.insert((i, 0), vec![(i, one())]);
    }
    products.insert((1, 1), vec![(0, one())]); // D^2 = I
    products.insert((2, 2), vec![(0, one())]); // P^2 = I
    products.insert((3, 3), vec![(0, neg())]); // M^2 = -I
    products.insert((1, 2), vec![(3, one())]); // D P = M
    products.insert((2, 1), vec![(3, neg())]); // P D = -M
    products.insert((1, 3), vec![(2, one())]); // D M = P
    products.insert((3, 1), vec![(2, neg())]); // M D = -P
    products.insert((2, 3), vec![(1, neg())]); // P M = -D
    products.insert((3, 2), vec![(1, one())]); // M P = D
    GradedAlgebra::new(group, labels, degrees, products, Some(0)).unwrap()
}

/// The Klein-graded quaternion algebra on `{1, i, j, k}`.
pub fn quaternions() -> GradedAlgebra {
    let group = FiniteAbelianGroup::new(&[2, 2]).unwrap();
    let el = |a: i64, b: i64| group.element(&[a, b]).unwrap();
    let labels: Vec<String> = ["1", "i", "j", "k"].iter().map(|s| s.to_string()).collect();
    let degrees = vec![el(0, 0), el(0, 1), el(1, 0), el(1, 1)];
    let one = Rat::one;
    let neg = || -Rat::one();
    let mut products = BTreeMap::new();
    for i in 0..4 {
        products.insert((0, i), vec![(i, one())]);
        products.insert((i, 0), vec![(i, one())]);
    }
    products.insert((1, 1), vec![(0, neg())]); // i^2 = -1
    products.insert((2, 2), vec![(0, neg())]); // j^2 = -1
    products.insert((3, 3), vec![(0, neg())]); // k^2 = -1
    products.insert((1, 2), vec![(3, one())]); // i j = k
    products.insert((2, 1), vec![(3, neg())]); // j i = -k
    products.insert((2, 3), vec![(1, one())]); // j k = i
    products.insert((3, 2), vec![(1, neg())]); // k j = -i
    products.insert((3, 1), vec![(2, one())]); // k i = j
    products.insert((1, 3), vec![(2, neg())]); // i k = -j
    GradedAlgebra::new(group, labels, degrees, products, Some(0)).unwrap()
}

/// Three-dimensional Z3-graded span{u, v, w} with `u v = w` and all other
/// products zero; the minimal noncommutative algebra with central neutral
/// component and three-element support.
pub fn witness_w3() -> GradedAlgebra {
    let group = FiniteAbelianGroup::new(&[3]).unwrap();
    let el = |a: i64| group.element(&[a]).unwrap();
    let labels: Vec<String> = ["u", "v", "w"].iter().map(|s| s.to_string()).collect();
    let degrees = vec![el(1), el(2), el(0)];
    let mut products = BTreeMap::new();
    products.insert((0, 1), vec![(2, Rat::one())]);
    GradedAlgebra::new(group, labels, degrees, products, None).unwrap()
}

/// One-dimensional nil algebra span{x}, `x^2 = 0`, graded in degree 1 of Z2.
pub fn nil_one_dim() -> GradedAlgebra {
    let group = FiniteAbelianGroup::new(&[2]).unwrap();
    let degrees = vec![group.element(&[1]).unwrap()];
    GradedAlgebra::new(group, vec!["x".into()], degrees, BTreeMap::new(), None).unwrap()
}

/// Index sets `{1..n}` in (length, lexicographic) order; the basis of the
/// truncated exterior algebra.
fn grassmann_basis(n: usize) -> Vec<Vec<usize>> {
    let mut subsets: Vec<Vec<usize>> = Vec::new();
    for mask in 1u32..(1 << n) {
        let subset: Vec<usize> = (0..n).filter(|b| mask & (1 << b) != 0).map(|b| b + 1).collect();
        subsets.push(subset);
    }
    subsets.sort_by(|a, b| (a.len(), a.clone()).cmp(&(b.len(), b.clone())));
    subsets
}

/// Sign and union of the exterior product `e_S e_T`; `None` when the index
/// sets overlap.
fn exterior_product(s: &[usize], t: &[usize]) -> Option<(i64, Vec<usize>)> {
    if s.iter().any(|x| t.contains(x)) {
        return None;
    }
    // Count transpositions needed to interleave t into s.
    let mut inversions = 0;
    for &x in s {
        for &y in t {
            if x > y {
                inversions += 1;
            }
        }
    }
    let mut merged: Vec<usize> = s.iter().chain(t.iter()).copied().collect();
    merged.sort_unstable();
    let sign = if inversions % 2 == 0 { 1 } else { -1 };
    Some((sign, merged))
}

fn grassmann_label(subset: &[usize]) -> String {
    let digits: Vec<String> = subset.iter().map(|i| i.to_string()).collect();
    format!("g{}", digits.join("_"))
}

/// The non-unital exterior algebra on `n` generators with its parity
/// grading over Z2: `e_i e_j = -e_j e_i`, so repeated indices vanish.
pub fn grassmann(n: usize) -> GradedAlgebra {
    assert!(n >= 1, "truncation parameter must be at least 1");
    let group = FiniteAbelianGroup::new(&[2]).unwrap();
    let basis = grassmann_basis(n);
    let position: BTreeMap<Vec<usize>, usize> = basis
        .iter()
        .enumerate()
        .map(|(p, s)| (s.clone(), p))
        .collect();
    let labels = basis.iter().map(|s| grassmann_label(s)).collect();
    let degrees = basis
        .iter()
        .map(|s| group.element(&[s.len() as i64]).unwrap())
        .collect();
    let mut products = BTreeMap::new();
    for (p, s) in basis.iter().enumerate() {
        for (q, t) in basis.iter().enumerate() {
            if let Some((sign, merged)) = exterior_product(s, t) {
                products.insert((p, q), vec![(position[&merged], Rat::from_i64(sign))]);
            }
        }
    }
    GradedAlgebra::new(group, labels, degrees, products, None).unwrap()
}

/// The envelope of a `G x Z2`-graded algebra at exterior truncation `n`:
/// even components tensor even monomials, odd components tensor odd ones,
/// regraded over `G`.
pub fn grassmann_envelope(
    alg: &GradedAlgebra,
    n: usize,
) -> Result<GradedAlgebra, ConstructionError> {
    if alg.group().factors().last() != Some(&2) {
        return Err(ConstructionError::InvalidInput(
            "input must be graded by a group whose last factor is Z2".into(),
        ));
    }
    if n < 2 {
        return Err(ConstructionError::InvalidInput(
            "truncation must be at least 2".into(),
        ));
    }
    let target = alg.group().drop_last_factor();
    let monomials = grassmann_basis(n);
    let mono_pos: BTreeMap<Vec<usize>, usize> = monomials
        .iter()
        .enumerate()
        .map(|(p, s)| (s.clone(), p))
        .collect();

    // Pairs (algebra basis index, monomial index) with matching parity.
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    for a in 0..alg.dim() {
        let (_, parity) = FiniteAbelianGroup::split_last(alg.degree(a));
        for (m, subset) in monomials.iter().enumerate() {
            if subset.len() as u64 % 2 == parity {
                pairs.push((a, m));
            }
        }
    }
    let pair_pos: BTreeMap<(usize, usize), usize> = pairs
        .iter()
        .enumerate()
        .map(|(p, &s)| (s, p))
        .collect();

    let mut labels = Vec::with_capacity(pairs.len());
    let mut degrees = Vec::with_capacity(pairs.len());
    for &(a, m) in &pairs {
        labels.push(format!("{}.{}", alg.label(a), grassmann_label(&monomials[m])));
        let (g_part, _) = FiniteAbelianGroup::split_last(alg.degree(a));
        degrees.push(
            target
                .element(&g_part.coords().iter().map(|&c| c as i64).collect::<Vec<_>>())
                .unwrap(),
        );
    }
    let mut products = BTreeMap::new();
    for (p, &(a, ma)) in pairs.iter().enumerate() {
        for (q, &(b, mb)) in pairs.iter().enumerate() {
            let Some((sign, merged)) = exterior_product(&monomials[ma], &monomials[mb]) else {
                continue;
            };
            let mono = mono_pos[&merged];
            let mut entries: SparseProduct = Vec::new();
            for (k, c) in alg.basis_product(a, b) {
                let slot = pair_pos[&(*k, mono)];
                entries.push((slot, c * &Rat::from_i64(sign)));
            }
            if !entries.is_empty() {
                entries.sort_by_key(|(k, _)| *k);
                products.insert((p, q), entries);
            }
        }
    }
    Ok(GradedAlgebra::new(target, labels, degrees, products, None)?)
}

/// The family `quaternions x nil^n` over `(Z2)^(n+2)`: quaternion degrees
/// extended by zeros, each nil generator carrying the 1 of its own new Z2
/// factor. Central neutral component, support of size `n + 4`, and no
/// left-normed commutator identity of any length.
pub fn prop_3_28_family(n: usize) -> GradedAlgebra {
    assert!(n >= 1, "family parameter must be at least 1");
    let rank = n + 2;
    let factors: Vec<i64> = vec![2; rank];
    let group = FiniteAbelianGroup::new(&factors).unwrap();
    let q = quaternions();
    let mut labels: Vec<String> = q.labels().to_vec();
    let mut degrees: Vec<GroupElement> = q
        .degrees()
        .iter()
        .map(|d| {
            let mut coords: Vec<i64> = d.coords().iter().map(|&c| c as i64).collect();
            coords.resize(rank, 0);
            group.element(&coords).unwrap()
        })
        .collect();
    for t in 0..n {
        labels.push(format!("x{}", t + 1));
        let mut coords = vec![0i64; rank];
        coords[2 + t] = 1;
        degrees.push(group.element(&coords).unwrap());
    }
    let mut products = BTreeMap::new();
    for i in 0..4 {
        for j in 0..4 {
            products.insert((i, j), q.basis_product(i, j).clone());
        }
    }
    // Nil generators square to zero and kill everything else.
    GradedAlgebra::new(group, labels, degrees, products, None).unwrap()
}

/// Pushes the grading of `alg` through a quotient projection and
/// re-validates.
pub fn coarsen(
    alg: &GradedAlgebra,
    projection: &QuotientMap,
) -> Result<GradedAlgebra, ConstructionError> {
    if projection.parent() != alg.group() {
        return Err(ConstructionError::InvalidInput(
            "projection domain differs from the grading group".into(),
        ));
    }
    let target = projection.quotient_group().clone();
    let degrees: Result<Vec<GroupElement>, _> = alg
        .degrees()
        .iter()
        .map(|d| projection.project(d))
        .collect();
    let degrees = degrees.map_err(|e| ConstructionError::InvalidInput(e.to_string()))?;
    let mut products = BTreeMap::new();
    for i in 0..alg.dim() {
        for j in 0..alg.dim() {
            let row = alg.basis_product(i, j);
            if !row.is_empty() {
                products.insert((i, j), row.clone());
            }
        }
    }
    Ok(GradedAlgebra::new(
        target,
        alg.labels().to_vec(),
        degrees,
        products,
        alg.unit_index(),
    )?)
}

/// The 4x4 matrix algebra over Z3 x Z5 with the elementary grading by
/// `((0,0), (1,0), (0,1), (0,4))`.
pub fn example_3_16() -> GradedAlgebra {
    let group = FiniteAbelianGroup::new(&[3, 5]).unwrap();
    let el = |a: i64, b: i64| group.element(&[a, b]).unwrap();
    elementary_matrix_grading(&group, 4, &[el(0, 0), el(1, 0), el(0, 1), el(0, 4)]).unwrap()
}

/// The variant with `((0,0), (1,0), (0,1), (0,1))`: two equal row degrees,
/// so the neutral component picks up the off-diagonal cells E34 and E43.
pub fn example_3_18() -> GradedAlgebra {
    let group = FiniteAbelianGroup::new(&[3, 5]).unwrap();
    let el = |a: i64, b: i64| group.element(&[a, b]).unwrap();
    elementary_matrix_grading(&group, 4, &[el(0, 0), el(1, 0), el(0, 1), el(0, 1)]).unwrap()
}

/// The Klein-group cocycle realized by the graded matrix basis of
/// [`pauli_m2`]: `s(a, b) = (-1)^((a1 + a2) * b1)`.
pub fn pauli_cocycle() -> Cocycle {
    let group = FiniteAbelianGroup::new(&[2, 2]).unwrap();
    let sub = group.subgroup(&[
        group.element(&[1, 0]).unwrap(),
        group.element(&[0, 1]).unwrap(),
    ]);
    let sub = sub.unwrap();
    let mut table = BTreeMap::new();
    for a in sub.elements() {
        for b in sub.elements() {
            let exponent = (a.coords()[0] + a.coords()[1]) * b.coords()[0];
            let v = if exponent % 2 == 0 { Rat::one() } else { -Rat::one() };
            table.insert((a.clone(), b.clone()), v);
        }
    }
    Cocycle::new(group, sub.elements().to_vec(), table).unwrap()
}

/// Looks up a fixture by its command-line name, e.g. `pauli-m2`,
/// `grassmann:4` or `prop328:2`.
pub fn fixture_by_name(name: &str) -> Result<GradedAlgebra, ConstructionError> {
    if let Some(arg) = name.strip_prefix("grassmann:") {
        let n: usize = arg
            .parse()
            .map_err(|_| ConstructionError::InvalidInput(format!("bad truncation `{arg}`")))?;
        if n == 0 {
            return Err(ConstructionError::InvalidInput(
                "truncation must be at least 1".into(),
            ));
        }
        return Ok(grassmann(n));
    }
    if let Some(arg) = name.strip_prefix("prop328:") {
        let n: usize = arg
            .parse()
            .map_err(|_| ConstructionError::InvalidInput(format!("bad parameter `{arg}`")))?;
        if n == 0 {
            return Err(ConstructionError::InvalidInput(
                "family parameter must be at least 1".into(),
            ));
        }
        return Ok(prop_3_28_family(n));
    }
    match name {
        "pauli-m2" => Ok(pauli_m2()),
        "quaternion" => Ok(quaternions()),
        "example-3-16" => Ok(example_3_16()),
        "example-3-18" => Ok(example_3_18()),
        "w3" => Ok(witness_w3()),
        "nilspan" => Ok(nil_one_dim()),
        _ => Err(ConstructionError::InvalidInput(format!(
            "unknown fixture `{name}`"
        ))),
    }
}

pub fn fixture_names() -> &'static [&'static str] {
    &[
        "pauli-m2",
        "quaternion",
        "example-3-16",
        "example-3-18",
        "grassmann:<n>",
        "w3",
        "nilspan",
        "prop328:<n>",
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{nilpotency_index, Nilpotency, RatElement};

    #[test]
    fn constructors_validate() {
        for alg in [
            pauli_m2(),
            quaternions(),
            witness_w3(),
            nil_one_dim(),
            grassmann(3),
            example_3_16(),
            example_3_18(),
            prop_3_28_family(2),
        ] {
            assert!(alg.validate().is_valid(), "fixture failed validation");
        }
    }

    #[test]
    fn example_component_dimensions() {
        let alg = example_3_16();
        assert_eq!(alg.support().len(), 11);
        let g = alg.group();
        let acc = |a: i64, b: i64| g.element(&[a, b]).unwrap();
        // Component (2,0) is spanned by E21 alone.
        let comp = alg.component_basis(&acc(2, 0));
        assert_eq!(comp.len(), 1);
        assert_eq!(alg.label(comp[0]), "E21");
        // Component (0,4) = span{E14, E31}.
        let labels: Vec<&str> = alg
            .component_basis(&acc(0, 4))
            .into_iter()
            .map(|i| alg.label(i))
            .collect();
        assert_eq!(labels, vec!["E14", "E31"]);
    }

    #[test]
    fn example_3_18_component() {
        let alg = example_3_18();
        let g = alg.group();
        let labels: Vec<&str> = alg
            .component_basis(&g.element(&[1, 4]).unwrap())
            .into_iter()
            .map(|i| alg.label(i))
            .collect();
        assert_eq!(labels, vec!["E32", "E42"]);
    }

    #[test]
    fn all_equal_tuple_concentrates_at_identity() {
        let group = FiniteAbelianGroup::new(&[4]).unwrap();
        let t = group.element(&[3]).unwrap();
        let alg = elementary_matrix_grading(&group, 3, &[t.clone(), t.clone(), t]).unwrap();
        assert_eq!(alg.support(), vec![group.identity()]);
    }

    #[test]
    fn trivial_cocycle_gives_commutative_group_algebra() {
        let group = FiniteAbelianGroup::new(&[3]).unwrap();
        let sub = group.subgroup(&[group.element(&[1]).unwrap()]).unwrap();
        let sigma = Cocycle::trivial(&sub);
        let alg = twisted_group_algebra(&sigma).unwrap();
        assert_eq!(alg.dim(), 3);
        for i in 0..3 {
            for j in 0..3 {
                let a: RatElement = alg.basis_element(i);
                let b: RatElement = alg.basis_element(j);
                assert!(alg.commutator(&a, &b).unwrap().is_zero());
            }
        }
    }

    #[test]
    fn coboundary_cocycles_are_symmetric_and_commutative() {
        let group = FiniteAbelianGroup::new(&[6]).unwrap();
        let sub = group.subgroup(&[group.element(&[1]).unwrap()]).unwrap();
        let t = |h: &GroupElement| Rat::new(h.coords()[0] as i64 + 1, 2);
        let sigma = Cocycle::from_coboundary(&sub, t).unwrap();
        assert!(sigma.is_symmetric());
        let alg = twisted_group_algebra(&sigma).unwrap();
        for i in 0..alg.dim() {
            for j in 0..alg.dim() {
                let a: RatElement = alg.basis_element(i);
                let b: RatElement = alg.basis_element(j);
                assert!(alg.commutator(&a, &b).unwrap().is_zero());
            }
        }
    }

    #[test]
    fn spec_pauli_formula_anticommutes() {
        // Cocycle with s((i1,j1),(i2,j2)) = (-1)^(j1*i2); the generators
        // eta_(1,0) and eta_(0,1) anticommute.
        let group = FiniteAbelianGroup::new(&[2, 2]).unwrap();
        let sub = group
            .subgroup(&[
                group.element(&[1, 0]).unwrap(),
                group.element(&[0, 1]).unwrap(),
            ])
            .unwrap();
        let mut table = BTreeMap::new();
        for a in sub.elements() {
            for b in sub.elements() {
                let exp = a.coords()[1] * b.coords()[0];
                let v = if exp % 2 == 0 { Rat::one() } else { -Rat::one() };
                table.insert((a.clone(), b.clone()), v);
            }
        }
        let sigma = Cocycle::new(group.clone(), sub.elements().to_vec(), table).unwrap();
        let alg = twisted_group_algebra(&sigma).unwrap();
        let pos = |coords: &[i64]| {
            let target = group.element(coords).unwrap();
            (0..alg.dim()).find(|&i| alg.degree(i) == &target).unwrap()
        };
        let x: RatElement = alg.basis_element(pos(&[1, 0]));
        let y: RatElement = alg.basis_element(pos(&[0, 1]));
        let xy = alg.mul(&x, &y).unwrap();
        let yx = alg.mul(&y, &x).unwrap();
        assert_eq!(alg.scale_element(&xy, &-Rat::one()).unwrap(), yx);
        assert!(!xy.is_zero());
    }

    #[test]
    fn pauli_m2_matches_its_twisted_group_algebra() {
        // Change of basis I -> eta_e, E11-E22 -> eta_(1,1),
        // E12+E21 -> eta_(0,1), E12-E21 -> eta_(1,0); all structure
        // constants must agree entry for entry.
        let a = pauli_m2();
        let sigma = pauli_cocycle();
        let b = twisted_group_algebra(&sigma).unwrap();
        assert_eq!(a.dim(), b.dim());
        let map: Vec<usize> = (0..a.dim())
            .map(|i| {
                (0..b.dim())
                    .find(|&j| b.degree(j) == a.degree(i))
                    .expect("degrees pair up")
            })
            .collect();
        for i in 0..a.dim() {
            for j in 0..a.dim() {
                let mut lhs: Vec<(usize, Rat)> = a
                    .basis_product(i, j)
                    .iter()
                    .map(|(k, c)| (map[*k], c.clone()))
                    .collect();
                lhs.sort_by_key(|(k, _)| *k);
                assert_eq!(&lhs, b.basis_product(map[i], map[j]));
            }
        }
    }

    #[test]
    fn elementary_canonical_degenerate_cases() {
        let group = FiniteAbelianGroup::new(&[3]).unwrap();
        let sub = group.subgroup(&[group.element(&[1]).unwrap()]).unwrap();
        let sigma = Cocycle::trivial(&sub);
        // k = 1 equals the twisted group algebra constant for constant.
        let a = elementary_canonical(&group, 1, &sigma, &[group.identity()]).unwrap();
        let b = twisted_group_algebra(&sigma).unwrap();
        for i in 0..a.dim() {
            assert_eq!(a.degree(i), b.degree(i));
            for j in 0..a.dim() {
                assert_eq!(a.basis_product(i, j), b.basis_product(i, j));
            }
        }

        // H = {e} with the trivial cocycle equals the elementary grading.
        let trivial_sub = group.subgroup(&[]).unwrap();
        let sigma_e = Cocycle::trivial(&trivial_sub);
        let theta = [
            group.identity(),
            group.element(&[1]).unwrap(),
            group.element(&[2]).unwrap(),
        ];
        let c = elementary_canonical(&group, 3, &sigma_e, &theta).unwrap();
        let d = elementary_matrix_grading(&group, 3, &theta).unwrap();
        for i in 0..c.dim() {
            assert_eq!(c.degree(i), d.degree(i));
            for j in 0..c.dim() {
                assert_eq!(c.basis_product(i, j), d.basis_product(i, j));
            }
        }
    }

    #[test]
    fn support_bound_for_noncongruent_tuples() {
        // Z2 x Z2 with H = <(1,0)>, k = 2 and theta = ((0,0), (0,1)).
        let group = FiniteAbelianGroup::new(&[2, 2]).unwrap();
        let sub = group.subgroup(&[group.element(&[1, 0]).unwrap()]).unwrap();
        let sigma = Cocycle::trivial(&sub);
        let theta = [group.identity(), group.element(&[0, 1]).unwrap()];
        let alg = elementary_canonical(&group, 2, &sigma, &theta).unwrap();
        let k = 2u64;
        let h = sub.order();
        let supp = alg.support().len() as u64;
        assert!(k * h <= supp);
        assert!(supp <= (k * k - k + 1) * h);
    }

    #[test]
    fn grassmann_products() {
        let alg = grassmann(2);
        let e1: RatElement = alg.basis_element(0);
        let e2: RatElement = alg.basis_element(1);
        let e12: RatElement = alg.basis_element(2);
        assert_eq!(alg.mul(&e1, &e2).unwrap(), e12);
        assert_eq!(
            alg.mul(&e2, &e1).unwrap(),
            alg.scale_element(&e12, &-Rat::one()).unwrap()
        );
        assert!(alg.mul(&e1, &e1).unwrap().is_zero());
        assert_eq!(grassmann(4).dim(), 15);
    }

    #[test]
    fn grassmann_power_chain_index() {
        for n in 1..=5 {
            assert_eq!(nilpotency_index(&grassmann(n)), Nilpotency::Nilpotent(n + 1));
        }
    }

    #[test]
    fn grassmann_even_part_commutes() {
        // [e1, e2] = 2 e12 and e12 commutes with every generator.
        let alg = grassmann(3);
        let e1: RatElement = alg.basis_element(0);
        let e2: RatElement = alg.basis_element(1);
        let c = alg.commutator(&e1, &e2).unwrap();
        let e12: RatElement = alg.basis_element(3);
        assert_eq!(c, alg.scale_element(&e12, &Rat::from_i64(2)).unwrap());
        for i in 0..alg.dim() {
            let x: RatElement = alg.basis_element(i);
            assert!(alg.commutator(&e12, &x).unwrap().is_zero());
        }
    }

    #[test]
    fn envelope_of_even_concentrated_input() {
        // Quaternions regraded over Klein x Z2 with empty odd part.
        let q = quaternions();
        let big = q.group().product_with_z2();
        let degrees: Vec<GroupElement> = q
            .degrees()
            .iter()
            .map(|d| q.group().extend_with_parity(d, 0))
            .collect();
        let mut products = BTreeMap::new();
        for i in 0..4 {
            for j in 0..4 {
                products.insert((i, j), q.basis_product(i, j).clone());
            }
        }
        let regraded = GradedAlgebra::new(
            big,
            q.labels().to_vec(),
            degrees,
            products,
            q.unit_index(),
        )
        .unwrap();
        let env = grassmann_envelope(&regraded, 3).unwrap();
        assert!(env.validate().is_valid());
        // Even monomials on 3 generators: 2^2 - 1 = 3 of them per basis vector.
        assert_eq!(env.dim(), 4 * 3);
    }

    #[test]
    fn envelope_odd_slots_anticommute() {
        // One even element t and one odd s with s^2 = t: the envelope pairs
        // s.g1 and s.g2 multiply to opposite values in either order.
        let group = FiniteAbelianGroup::new(&[1, 2]).unwrap();
        let t_deg = group.element(&[0, 0]).unwrap();
        let s_deg = group.element(&[0, 1]).unwrap();
        let mut products = BTreeMap::new();
        products.insert((1, 1), vec![(0, Rat::one())]);
        let alg = GradedAlgebra::new(
            group,
            vec!["t".into(), "s".into()],
            vec![t_deg, s_deg],
            products,
            None,
        )
        .unwrap();
        let env = grassmann_envelope(&alg, 2).unwrap();
        let find = |label: &str| {
            (0..env.dim())
                .find(|&i| env.label(i) == label)
                .expect("envelope label")
        };
        let s1: RatElement = env.basis_element(find("s.g1"));
        let s2: RatElement = env.basis_element(find("s.g2"));
        let p = env.mul(&s1, &s2).unwrap();
        let q = env.mul(&s2, &s1).unwrap();
        assert!(!p.is_zero());
        assert_eq!(env.scale_element(&p, &-Rat::one()).unwrap(), q);
    }

    #[test]
    fn family_support_sizes() {
        assert_eq!(prop_3_28_family(1).support().len(), 5);
        assert_eq!(prop_3_28_family(2).support().len(), 6);
        assert_eq!(prop_3_28_family(4).support().len(), 8);
    }

    #[test]
    fn coarsen_to_trivial_group() {
        let alg = pauli_m2();
        let sub = alg
            .group()
            .subgroup(&[
                alg.group().element(&[1, 0]).unwrap(),
                alg.group().element(&[0, 1]).unwrap(),
            ])
            .unwrap();
        let (q, map) = crate::group::quotient(alg.group(), &sub).unwrap();
        assert!(q.is_trivial());
        let coarse = coarsen(&alg, &map).unwrap();
        assert_eq!(coarse.support().len(), 1);
        assert!(coarse.validate().is_valid());
    }

    #[test]
    fn invalid_cocycle_rejected() {
        let group = FiniteAbelianGroup::new(&[2]).unwrap();
        let sub = group.subgroup(&[group.element(&[1]).unwrap()]).unwrap();
        let mut table = BTreeMap::new();
        for a in sub.elements() {
            for b in sub.elements() {
                table.insert((a.clone(), b.clone()), Rat::one());
            }
        }
        // Break the identity at a single entry: s(e,1) != s(e,e) violates
        // the degenerate cocycle equations.
        table.insert(
            (group.identity(), group.element(&[1]).unwrap()),
            Rat::from_i64(3),
        );
        let err = Cocycle::new(group, sub.elements().to_vec(), table);
        assert!(matches!(err, Err(ConstructionError::InvalidCocycle(_))));
    }

    #[test]
    fn fixtures_by_name() {
        assert_eq!(fixture_by_name("pauli-m2").unwrap().dim(), 4);
        assert_eq!(fixture_by_name("grassmann:4").unwrap().dim(), 15);
        assert_eq!(fixture_by_name("prop328:3").unwrap().dim(), 7);
        assert!(fixture_by_name("nope").is_err());
    }
}
